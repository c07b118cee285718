//! Adapter presenting the hypergeometric form of the dWS radial equation to
//! the AIM engine.
//!
//! After `R(z) = z^α (1 + qz)^γ F(z)` with `z = exp(-nu (r - R))`, `F` obeys
//! `F'' = λ0 F' + s0 F` with
//!
//! ```text
//! λ0(z) = -[(2α + 1) + q (2α + 2γ + 1) z] / (z (1 + qz))
//! s0(z) = -[A/(q nu²) + q (α + γ)²]     / (z (1 + qz))
//! ```
//!
//! where `α` and `A` depend on the trial energy. The `nu²` under `A` restores
//! the dimensionless form of the equation in `z`.

use twofloat::TwoFloat;

use super::engine::{aim_eigenvalue, bracket_near, delta_at, AimProblem, AimRoot, AimScalar, AimSettings};
use super::jet::{JetScalar, TaylorJet};
use crate::closed_form::{alpha_radicand, alpha_threshold, big_a, gamma_param, QuantumNumbers};
use crate::potential::{MassParams, PekerisCoeffs, PotentialParams};
use crate::roots::bisect_secant;
use crate::{Error, Result};

/// Which square root of the `α²` relation a trial energy is mapped to.
///
/// The closed-form energies are the terminating roots on the negative branch;
/// on the positive branch `F` never terminates for `q > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaBranch {
    Positive,
    Negative,
}

impl AlphaBranch {
    fn sign(self) -> f64 {
        match self {
            AlphaBranch::Positive => 1.0,
            AlphaBranch::Negative => -1.0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct DwsAimProblem {
    n_hint: u32,
    l: u32,
    params: PotentialParams,
    mass: MassParams,
    coeffs: PekerisCoeffs,
    gamma: f64,
    z0: f64,
    branch: AlphaBranch,
}

/// Builds the adapter expanded at `z0 = 1`, i.e. at `r = R`.
pub fn dws_aim_problem(
    n_hint: u32,
    l: u32,
    p: &PotentialParams,
    m: &MassParams,
    d: &PekerisCoeffs,
    branch: AlphaBranch,
) -> Result<DwsAimProblem> {
    let gamma = gamma_param(l, p, d)?;
    Ok(DwsAimProblem {
        n_hint,
        l,
        params: *p,
        mass: *m,
        coeffs: *d,
        gamma,
        z0: 1.0,
        branch,
    })
}

impl DwsAimProblem {
    /// Moves the expansion point. `z0` must be finite and avoid the singular
    /// points `0` and `-1/q`.
    pub fn with_expansion_point(mut self, z0: f64) -> Result<Self> {
        let q = self.params.q();
        if !z0.is_finite() || z0 == 0.0 || 1.0 + q * z0 == 0.0 {
            return Err(Error::invalid(
                "z0",
                format!("expansion point {z0} is a singular point of the equation"),
            ));
        }
        self.z0 = z0;
        Ok(self)
    }

    pub fn n_hint(&self) -> u32 {
        self.n_hint
    }
    pub fn l(&self) -> u32 {
        self.l
    }
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Branch value of `α` at trial energy `e`.
    pub fn alpha(&self, e: f64) -> Result<f64> {
        let rad = alpha_radicand(e, self.l, &self.params, &self.mass, &self.coeffs);
        if rad < 0.0 {
            return Err(Error::NoRealSolution(format!(
                "alpha is complex at E = {e} MeV"
            )));
        }
        Ok(self.branch.sign() * rad.sqrt() / self.params.nu())
    }

    /// Constant terms of the two factors of `λ0`, `s0` at `z0`.
    pub fn lambda0_at_expansion_point(&self, e: f64) -> Result<f64> {
        let (lam, _) = self.coefficient_jets(e, 0)?;
        Ok(lam.value().to_f64())
    }

    /// `(α, γ, A)` at energy `e`, evaluated in double-double from the `f64`
    /// parameters.
    fn exponents_ext(&self, e: f64) -> Result<(TwoFloat, TwoFloat, TwoFloat)> {
        let p = &self.params;
        let d = &self.coeffs;
        let x = TwoFloat::from;
        let l = f64::from(self.l);
        let big_l = x(l) * x(l + 1.0);
        let r2 = x(p.radius()) * x(p.radius());
        let k = x(self.mass.two_mu_over_hbar2());
        let q = x(p.q());
        let nu = x(p.nu());

        let rad = big_l * x(d.d0) / r2 - k * x(e);
        if rad.hi() < 0.0 {
            return Err(Error::NoRealSolution(format!("alpha is complex at E = {e} MeV")));
        }
        let alpha = x(self.branch.sign()) * rad.sqrt() / nu;

        let nrq = nu * x(p.radius()) * q;
        let grad = x(1.0) + x(4.0) * big_l * x(d.d2) / (nrq * nrq);
        let gamma = x(0.5) * (x(1.0) + grad.sqrt());

        let a = k * (q * q * x(e) + q * x(p.v0())) - big_l / r2 * (q * q * x(d.d0) - q * x(d.d1) + x(d.d2));
        Ok((alpha, gamma, a))
    }

    /// Degrees `n` at which `F` would terminate for the coefficients at
    /// energy `e`: the roots of `n² + 2(α+γ) n + (α+γ)² + A/(q nu)² = 0`.
    pub fn termination_indices(&self, e: f64) -> Option<(f64, f64)> {
        let alpha = self.alpha(e).ok()?;
        let a = big_a(e, self.l, &self.params, &self.mass, &self.coeffs);
        if a > 0.0 {
            return None;
        }
        let root = (-a).sqrt() / (self.params.q() * self.params.nu());
        let base = -(alpha + self.gamma);
        Some((base - root, base + root))
    }

    /// Energy range scanned for terminating roots: from the point where `α`
    /// becomes complex down to where `|α|` exceeds the largest value any
    /// root up to `n_max` can take.
    pub fn energy_window(&self, n_max: u32) -> (f64, f64) {
        let p = &self.params;
        let k = self.mass.two_mu_over_hbar2();
        let lr = {
            let l = f64::from(self.l);
            l * (l + 1.0) / (p.radius() * p.radius())
        };
        let q = p.q();
        let nu = p.nu();
        let b = k * p.v0() / q + lr * (self.coeffs.d1 / q - self.coeffs.d2 / (q * q));
        let kappa_max = b.abs() / nu + nu * (f64::from(n_max) + self.gamma + 1.0);
        let hi = alpha_threshold(self.l, p, &self.mass, &self.coeffs);
        let lo = hi - kappa_max * kappa_max / k;
        (lo, hi)
    }
}

impl AimProblem for DwsAimProblem {
    fn expansion_point(&self) -> f64 {
        self.z0
    }

    fn coefficient_jets(
        &self,
        e: f64,
        order: usize,
    ) -> Result<(TaylorJet<AimScalar>, TaylorJet<AimScalar>)> {
        let (alpha, g, a) = self.exponents_ext(e)?;
        let x = TwoFloat::from;
        let q = x(self.params.q());
        let nu = x(self.params.nu());
        let one = x(1.0);
        let two = x(2.0);

        let z = TaylorJet::<AimScalar>::variable(self.z0, order);
        let denom = z.mul_unchecked(&TaylorJet::polynomial_in(self.z0, &[one, q], order));
        let inv = denom.reciprocal()?;

        let num_lambda =
            TaylorJet::polynomial_in(self.z0, &[two * alpha + one, q * (two * alpha + two * g + one)], order);
        let lambda0 = num_lambda.mul_unchecked(&inv).scale(-1.0);
        let s_const = a / (q * nu * nu) + q * (alpha + g) * (alpha + g);
        let s0 = inv.scale_by(-s_const);
        Ok((lambda0, s0))
    }

    fn description(&self) -> String {
        format!(
            "dWS hypergeometric form, l = {}, z0 = {}, {:?} alpha branch",
            self.l, self.z0, self.branch
        )
    }
}

/// Default expansion point, `r = R - ln(4) a`, just inside the surface.
///
/// At `z0 = 1` the iteration for `q = 0.5` loses k-stability past `k ≈ 35`
/// even in double-double; from `z0 = 4` every tested case stays stable to
/// `k = 60`.
pub const DEFAULT_Z0: f64 = 4.0;

#[derive(Debug, Clone, PartialEq)]
pub struct DwsAimSettings {
    pub aim: AimSettings,
    pub z0: f64,
    pub branch: AlphaBranch,
    /// Energy grid spacing (MeV) of the bracketing scan.
    pub scan_step: f64,
}

impl Default for DwsAimSettings {
    fn default() -> Self {
        Self {
            aim: AimSettings::default(),
            z0: DEFAULT_Z0,
            branch: AlphaBranch::Negative,
            scan_step: 0.25,
        }
    }
}

/// Locates the `(n, l)` level by scanning `δ(n+2)` across the energy window,
/// keeping the sign change whose terminating degree is `n`, and confirming it
/// with the full k schedule.
pub fn dws_aim_energy(
    qn: QuantumNumbers,
    p: &PotentialParams,
    m: &MassParams,
    d: &PekerisCoeffs,
    settings: &DwsAimSettings,
) -> Result<AimRoot> {
    let problem = dws_aim_problem(qn.n, qn.l, p, m, d, settings.branch)?.with_expansion_point(settings.z0)?;
    let (lo, hi) = problem.energy_window(qn.n);
    let k_scan = qn.n as usize + 2;
    let rescale = settings.aim.rescale;

    let mut step = settings.scan_step;
    for _attempt in 0..2 {
        if let Some(seed) = scan_for_degree(&problem, qn.n, lo, hi, step, k_scan, rescale)? {
            let w = 1e-6 * seed.abs().max(1.0);
            let (a, b) = bracket_near(&problem, seed, settings.aim.k, rescale, w, (lo, hi))?;
            return aim_eigenvalue(&problem, a, b, &settings.aim);
        }
        step /= 8.0;
    }
    Err(Error::NoSignChange { lo, hi })
}

fn scan_for_degree(
    problem: &DwsAimProblem,
    n: u32,
    lo: f64,
    hi: f64,
    step: f64,
    k_scan: usize,
    rescale: bool,
) -> Result<Option<f64>> {
    let hi = hi - 1e-12 * hi.abs().max(1.0);
    let count = ((hi - lo) / step).ceil().max(1.0) as usize;
    let mut e_prev = hi;
    let mut f_prev = delta_at(problem, e_prev, k_scan, rescale)?;
    for i in 1..=count {
        let e = (hi - step * i as f64).max(lo);
        let f = delta_at(problem, e, k_scan, rescale)?;
        if f == 0.0 || f.signum() != f_prev.signum() {
            let root = bisect_secant(
                |x| delta_at(problem, x, k_scan, rescale),
                e,
                e_prev,
                1e-11 * e.abs().max(1.0),
            )?;
            if let Some((a, b)) = problem.termination_indices(root) {
                let target = f64::from(n);
                if (a - target).abs() < 1e-4 || (b - target).abs() < 1e-4 {
                    return Ok(Some(root));
                }
            }
        }
        e_prev = e;
        f_prev = f;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::energy;
    use crate::potential::pekeris_coefficients;

    fn setup(q: f64) -> (PotentialParams, MassParams, PekerisCoeffs) {
        let p = PotentialParams::nuclear_defaults(40).unwrap().with_q(q).unwrap();
        let d = pekeris_coefficients(&p).unwrap();
        (p, MassParams::nuclear_default(), d)
    }

    #[test]
    fn lambda0_at_surface() {
        let (p, m, d) = setup(1.0);
        let prob = dws_aim_problem(0, 1, &p, &m, &d, AlphaBranch::Positive).unwrap();
        let e = -30.0;
        let al = prob.alpha(e).unwrap();
        let g = prob.gamma();
        let expect = -((2.0 * al + 1.0) + (2.0 * al + 2.0 * g + 1.0)) / 2.0;
        let got = prob.lambda0_at_expansion_point(e).unwrap();
        assert!((got - expect).abs() < 1e-14 * expect.abs());
        assert!(got != 0.0);
    }

    #[test]
    fn singular_expansion_points_rejected() {
        let (p, m, d) = setup(1.5);
        let prob = dws_aim_problem(0, 0, &p, &m, &d, AlphaBranch::Negative).unwrap();
        assert!(prob.clone().with_expansion_point(0.0).is_err());
        assert!(prob.clone().with_expansion_point(-1.0 / 1.5).is_err());
        assert!(prob.with_expansion_point(0.5).is_ok());
    }

    #[test]
    fn complex_alpha_is_an_error() {
        let (p, m, d) = setup(1.0);
        let prob = dws_aim_problem(0, 0, &p, &m, &d, AlphaBranch::Negative).unwrap();
        assert!(prob.coefficient_jets(1.0, 5).is_err());
    }

    #[test]
    fn closed_form_energy_terminates() {
        let (p, m, d) = setup(1.0);
        for n in 0..3 {
            let lvl = energy(QuantumNumbers::new(n, 1), &p, &m, &d).unwrap();
            let prob = dws_aim_problem(n, 1, &p, &m, &d, AlphaBranch::Negative).unwrap();
            let (a, b) = prob.termination_indices(lvl.energy).unwrap();
            let t = f64::from(n);
            assert!((a - t).abs() < 1e-9 || (b - t).abs() < 1e-9, "{a} {b}");
        }
    }

    #[test]
    fn s_wave_levels_from_iteration() {
        let (p, m, d) = setup(1.0);
        for n in 0..3 {
            let root = dws_aim_energy(QuantumNumbers::new(n, 0), &p, &m, &d, &DwsAimSettings::default()).unwrap();
            let e = crate::closed_form::energy_l0(n, &p, &m);
            assert!((root.energy - e).abs() < 1e-8 * e.abs(), "n={n}: {} vs {e}", root.energy);
        }
    }

    #[test]
    fn positive_branch_has_no_terminating_root() {
        let (p, m, d) = setup(1.0);
        let settings = DwsAimSettings {
            branch: AlphaBranch::Positive,
            ..Default::default()
        };
        assert!(dws_aim_energy(QuantumNumbers::new(0, 0), &p, &m, &d, &settings).is_err());
    }
}
