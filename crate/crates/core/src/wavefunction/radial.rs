use super::quadrature::{integrate_adaptive, simpson};
use super::special::gauss_2f1_terminating;
use crate::closed_form::{EnergyLevel, QuantumNumbers};
use crate::potential::PotentialParams;
use crate::{Error, Result};

/// Coordinates of the hypergeometric reduction: `x = r - R`,
/// `z = exp(-nu x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialMap {
    radius: f64,
    nu: f64,
}

impl RadialMap {
    pub fn new(radius: f64, nu: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::invalid("R", "must be positive and finite"));
        }
        if !(nu > 0.0 && nu.is_finite()) {
            return Err(Error::invalid("nu", "must be positive and finite"));
        }
        Ok(Self { radius, nu })
    }

    pub fn from_params(p: &PotentialParams) -> Self {
        Self {
            radius: p.radius(),
            nu: p.nu(),
        }
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }
    pub fn nu(&self) -> f64 {
        self.nu
    }
    pub fn x(&self, r: f64) -> f64 {
        r - self.radius
    }
    pub fn z(&self, r: f64) -> f64 {
        (-self.nu * (r - self.radius)).exp()
    }
}

fn level_alpha(level: &EnergyLevel) -> Result<f64> {
    level.alpha.ok_or_else(|| {
        Error::NotNormalizable(format!(
            "alpha is complex for n = {}, l = {} at E = {} MeV",
            level.qn.n, level.qn.l, level.energy
        ))
    })
}

fn unnormalized(n: u32, alpha: f64, gamma: f64, map: &RadialMap, q: f64, r: f64) -> Result<f64> {
    let qz = q * map.z(r);
    let f = gauss_2f1_terminating(n, 2.0 * (alpha + gamma) + f64::from(n), 2.0 * alpha + 1.0, -qz)?;
    Ok((1.0 + qz).powf(gamma) * (-alpha * map.nu * map.x(r)).exp() * f)
}

/// `(1 + q e^{nu(R-r)})^γ e^{-α nu (r-R)} 2F1(-n, 2(α+γ)+n; 2α+1; -q e^{nu(R-r)})`,
/// without the `(-1)^n` sign and the normalization constant.
pub fn radial_wavefunction_unnormalized(level: &EnergyLevel, p: &PotentialParams, r: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(Error::Domain("radial coordinate must be non-negative"));
    }
    let alpha = level_alpha(level)?;
    unnormalized(level.qn.n, alpha, level.gamma, &RadialMap::from_params(p), p.q(), r)
}

/// A normalized closed-form radial function on `r ∈ [0, ∞)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialWavefunction {
    pub qn: QuantumNumbers,
    pub alpha: f64,
    pub gamma: f64,
    /// `N_{nl} > 0`
    pub norm_constant: f64,
    pub map: RadialMap,
    pub params: PotentialParams,
    /// Integration cut-off; the density beyond it is below 1e-16 of its peak.
    pub r_max: f64,
}

impl RadialWavefunction {
    /// `(-1)^n N R_unnorm(r)`.
    pub fn value(&self, r: f64) -> Result<f64> {
        if !(r >= 0.0) {
            return Err(Error::Domain("radial coordinate must be non-negative"));
        }
        let sign = if self.qn.n % 2 == 0 { 1.0 } else { -1.0 };
        let u = unnormalized(self.qn.n, self.alpha, self.gamma, &self.map, self.params.q(), r)?;
        Ok(sign * self.norm_constant * u)
    }

    /// `∫ |R|² dr` over `[0, r_max]` by composite Simpson with step `h`, an
    /// independent check of the adaptive normalization.
    pub fn simpson_norm(&self, h: f64) -> Result<f64> {
        let mut failure = None;
        let v = simpson(
            |r| match self.value(r) {
                Ok(v) => v * v,
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NAN
                }
            },
            0.0,
            self.r_max,
            h,
        )?;
        match failure {
            Some(e) => Err(e),
            None => Ok(v),
        }
    }
}

const MAX_CUTOFF_STEPS: u32 = 10_000;
const MAX_PANELS: usize = 20_000;

/// Normalizes the closed-form function of `level` so `∫_0^∞ |R|² dr = 1` to
/// `quad_tol` (relative).
///
/// The cut-off is the smallest `R + j a` at which the density has dropped
/// below 1e-16 of its largest value on `[0, R + j a]`.
pub fn normalize(level: &EnergyLevel, p: &PotentialParams, quad_tol: f64) -> Result<RadialWavefunction> {
    let alpha = level_alpha(level)?;
    if !(alpha > 0.0) {
        return Err(Error::NotNormalizable(format!("alpha = {alpha} does not decay")));
    }
    let map = RadialMap::from_params(p);
    let n = level.qn.n;
    let gamma = level.gamma;
    let q = p.q();
    let density = |r: f64| -> Result<f64> {
        let u = unnormalized(n, alpha, gamma, &map, q, r)?;
        Ok(u * u)
    };

    let a = p.a();
    let fine = a / 16.0;
    let mut peak = 0.0f64;
    let mut r_scan = 0.0;
    let mut r_max = None;
    for j in 1..=MAX_CUTOFF_STEPS {
        let edge = p.radius() + f64::from(j) * a;
        while r_scan < edge {
            peak = peak.max(density(r_scan)?);
            r_scan += fine;
        }
        let tail = density(edge)?;
        peak = peak.max(tail);
        if !peak.is_finite() {
            return Err(Error::Overflow("wavefunction density overflowed".into()));
        }
        if peak > 0.0 && tail < 1e-16 * peak {
            r_max = Some(edge);
            break;
        }
    }
    let r_max = r_max.ok_or_else(|| Error::NotNormalizable("density never falls below 1e-16 of its peak".into()))?;

    let mut failure = None;
    let integral = integrate_adaptive(
        |r| match density(r) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        0.0,
        r_max,
        quad_tol,
        MAX_PANELS,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let integral = integral?.value;
    if !(integral > 0.0) {
        return Err(Error::NotNormalizable(format!("norm integral {integral}")));
    }
    Ok(RadialWavefunction {
        qn: level.qn,
        alpha,
        gamma,
        norm_constant: integral.sqrt().recip(),
        map,
        params: *p,
        r_max,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShapeReport {
    /// `(r, R(r))` on the requested grid
    pub rows: Vec<(f64, f64)>,
    /// Strict sign changes between consecutive grid values (zeros skipped).
    pub sign_change_count: usize,
}

/// Tabulates `wf` on a strictly increasing grid inside `[0, r_max]`.
pub fn shape_report(wf: &RadialWavefunction, r_grid: &[f64]) -> Result<ShapeReport> {
    if r_grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if r_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::invalid("r_grid", "must be strictly increasing"));
    }
    if r_grid[0] < 0.0 || r_grid[r_grid.len() - 1] > wf.r_max {
        return Err(Error::invalid(
            "r_grid",
            format!("must lie inside [0, {}]", wf.r_max),
        ));
    }
    let rows = r_grid
        .iter()
        .map(|&r| wf.value(r).map(|v| (r, v)))
        .collect::<Result<Vec<_>>>()?;
    let mut last_sign = 0.0;
    let mut changes = 0;
    for &(_, v) in &rows {
        if v == 0.0 {
            continue;
        }
        let s = v.signum();
        if last_sign != 0.0 && s != last_sign {
            changes += 1;
        }
        last_sign = s;
    }
    Ok(ShapeReport {
        rows,
        sign_change_count: changes,
    })
}
