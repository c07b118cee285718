//! Analytic spectrum of the dWS well with the Pekeris barrier, the s-wave
//! reduction and the q-deformed Hulthén mapping.
//!
//! Two readings differ from the formulas as typeset and are used throughout:
//! `gamma = (1 + sqrt(1 + 4 l(l+1) D2 / (nu R q)²)) / 2`, so that
//! `chi = n + gamma`, and the quantization relation is written in the
//! dimensionless form `nu alpha = nu (n + gamma) + sqrt(-A)/q`.

use crate::potential::{pekeris_coefficients, MassParams, PekerisCoeffs, PotentialParams};
use crate::{Error, Result};

/// Relative tolerance on the quantization residual for a level to count as
/// self-consistent.
pub const CONSISTENCY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuantumNumbers {
    /// radial (vibrational) quantum number
    pub n: u32,
    /// orbital quantum number
    pub l: u32,
}

impl QuantumNumbers {
    pub fn new(n: u32, l: u32) -> Self {
        Self { n, l }
    }
}

/// One analytic level with the auxiliary quantities it was built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel {
    pub qn: QuantumNumbers,
    /// MeV
    pub energy: f64,
    /// `None` when the energy lies above `l(l+1) D0 / (2μ/ħ² R²)`.
    pub alpha: Option<f64>,
    pub gamma: f64,
    pub chi: f64,
    /// fm⁻²
    pub big_a: f64,
    pub is_negative: bool,
    pub is_consistent: bool,
}

fn l_factor(l: u32) -> f64 {
    let l = f64::from(l);
    l * (l + 1.0)
}

fn barrier_radicand(l: u32, p: &PotentialParams, d: &PekerisCoeffs) -> f64 {
    let nr_q = p.nu() * p.radius() * p.q();
    1.0 + 4.0 * l_factor(l) * d.d2 / (nr_q * nr_q)
}

pub fn gamma_param(l: u32, p: &PotentialParams, d: &PekerisCoeffs) -> Result<f64> {
    let rad = barrier_radicand(l, p, d);
    if rad < 0.0 {
        return Err(Error::NoRealSolution(format!(
            "gamma radicand {rad} < 0 for l = {l}"
        )));
    }
    Ok(0.5 * (1.0 + rad.sqrt()))
}

pub fn chi_param(n: u32, l: u32, p: &PotentialParams, d: &PekerisCoeffs) -> Result<f64> {
    let rad = barrier_radicand(l, p, d);
    if rad < 0.0 {
        return Err(Error::NoRealSolution(format!(
            "chi radicand {rad} < 0 for l = {l}"
        )));
    }
    Ok(f64::from(n) + 0.5 + 0.5 * rad.sqrt())
}

/// `A = (2μ/ħ²)(q² E + q V0) - l(l+1)/R² (q² D0 - q D1 + D2)` in fm⁻².
pub fn big_a(e: f64, l: u32, p: &PotentialParams, m: &MassParams, d: &PekerisCoeffs) -> f64 {
    let q = p.q();
    let r = p.radius();
    m.two_mu_over_hbar2() * (q * q * e + q * p.v0())
        - l_factor(l) / (r * r) * (q * q * d.d0 - q * d.d1 + d.d2)
}

/// `alpha = sqrt(l(l+1) D0 / R² - (2μ/ħ²) E) / nu`, the decay exponent in
/// `z = exp(-nu (r - R))`.
pub fn alpha_param(
    e: f64,
    l: u32,
    p: &PotentialParams,
    m: &MassParams,
    d: &PekerisCoeffs,
) -> Result<f64> {
    let rad = alpha_radicand(e, l, p, m, d);
    if rad < 0.0 {
        return Err(Error::NoRealSolution(format!(
            "E = {e} MeV lies above the threshold for a real alpha"
        )));
    }
    Ok(rad.sqrt() / p.nu())
}

pub(crate) fn alpha_radicand(
    e: f64,
    l: u32,
    p: &PotentialParams,
    m: &MassParams,
    d: &PekerisCoeffs,
) -> f64 {
    let r = p.radius();
    l_factor(l) * d.d0 / (r * r) - m.two_mu_over_hbar2() * e
}

/// Energy at which alpha vanishes; alpha is real below it.
pub fn alpha_threshold(l: u32, p: &PotentialParams, m: &MassParams, d: &PekerisCoeffs) -> f64 {
    let r = p.radius();
    l_factor(l) * d.d0 / (r * r) / m.two_mu_over_hbar2()
}

fn analytic_energy(chi: f64, l: u32, p: &PotentialParams, m: &MassParams, d: &PekerisCoeffs) -> f64 {
    let q = p.q();
    let nu = p.nu();
    let r = p.radius();
    let k = m.two_mu_over_hbar2();
    let lr = l_factor(l) / (r * r);
    let beta = (k * p.v0() + lr * (d.d1 - d.d2 / q)) / (q * nu * nu);
    let bracket = (beta - chi * chi) / chi;
    lr / k * (d.d0 - d.d1 / q + d.d2 / (q * q)) - p.v0() / q - nu * nu / (4.0 * k) * bracket * bracket
}

/// Closed-form level for `(n, l)`. Never fails on unbound or suspect states;
/// these are flagged instead.
pub fn energy(
    qn: QuantumNumbers,
    p: &PotentialParams,
    m: &MassParams,
    d: &PekerisCoeffs,
) -> Result<EnergyLevel> {
    let gamma = gamma_param(qn.l, p, d)?;
    let chi = chi_param(qn.n, qn.l, p, d)?;
    let e = analytic_energy(chi, qn.l, p, m, d);
    let alpha = alpha_param(e, qn.l, p, m, d).ok();
    let a = big_a(e, qn.l, p, m, d);

    let mut level = EnergyLevel {
        qn,
        energy: e,
        alpha,
        gamma,
        chi,
        big_a: a,
        is_negative: e < 0.0,
        is_consistent: false,
    };
    if let (Ok(res), Some(al)) = (quantization_residual(&level, p, m, d), alpha) {
        let scale = p.nu() * al;
        level.is_consistent = scale > 0.0 && res.abs() < CONSISTENCY_TOL * scale;
    }
    Ok(level)
}

/// s-wave energies, `-(ħ²/2μ) [V0 μ/(q ħ² nu (n+1)) + (n+1) nu/2]²`.
pub fn energy_l0(n: u32, p: &PotentialParams, m: &MassParams) -> f64 {
    let n1 = f64::from(n) + 1.0;
    let k = m.two_mu_over_hbar2();
    let nu = p.nu();
    let bracket = p.v0() * 0.5 * k / (p.q() * nu * n1) + n1 * nu / 2.0;
    -bracket * bracket / k
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HulthenLevel {
    pub n: u32,
    pub energy: f64,
    /// false once the bracket is no longer positive; the energy is still
    /// returned
    pub is_bound: bool,
}

/// Energies of the q-deformed Hulthén well obtained from [`energy_l0`] by
/// `q -> -q`, `nu -> delta`.
pub fn hulthen_energy(n: u32, v0: f64, delta: f64, q: f64, m: &MassParams) -> Result<HulthenLevel> {
    if !(delta > 0.0) {
        return Err(Error::invalid("delta", "must be > 0"));
    }
    if q == 0.0 || !q.is_finite() {
        return Err(Error::invalid("q", "must be finite and nonzero"));
    }
    let n1 = f64::from(n) + 1.0;
    let k = m.two_mu_over_hbar2();
    let bracket = v0 * 0.5 * k / (q * delta * n1) - n1 * delta / 2.0;
    Ok(HulthenLevel {
        n,
        energy: -bracket * bracket / k,
        is_bound: bracket > 0.0,
    })
}

/// All `(n, l)` with `n <= n_max`, `l <= l_max`, ordered by `(n, l)`.
pub fn spectrum(
    p: &PotentialParams,
    m: &MassParams,
    n_max: u32,
    l_max: u32,
) -> Result<Vec<EnergyLevel>> {
    let d = pekeris_coefficients(p)?;
    let mut out = Vec::with_capacity(((n_max + 1) * (l_max + 1)) as usize);
    for n in 0..=n_max {
        for l in 0..=l_max {
            out.push(energy(QuantumNumbers::new(n, l), p, m, &d)?);
        }
    }
    Ok(out)
}

/// `nu alpha - nu (n + gamma) - sqrt(-A)/q` evaluated at the level's energy.
/// Undefined over the reals unless `A < 0` and alpha is real.
pub fn quantization_residual(
    level: &EnergyLevel,
    p: &PotentialParams,
    m: &MassParams,
    d: &PekerisCoeffs,
) -> Result<f64> {
    let a = big_a(level.energy, level.qn.l, p, m, d);
    if !(a < 0.0) {
        return Err(Error::NotApplicable(format!("A = {a} is not negative")));
    }
    let alpha = alpha_param(level.energy, level.qn.l, p, m, d)
        .map_err(|e| Error::NotApplicable(e.to_string()))?;
    let gamma = gamma_param(level.qn.l, p, d)?;
    let nu = p.nu();
    Ok(nu * alpha - nu * (f64::from(level.qn.n) + gamma) - (-a).sqrt() / p.q())
}
