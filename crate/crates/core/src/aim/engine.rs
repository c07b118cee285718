use twofloat::TwoFloat;

use super::jet::{JetScalar, TaylorJet};
use crate::roots::bisect_secant;
use crate::{Error, Result};

/// Scalar type of the iteration: double-double.
pub type AimScalar = TwoFloat;

/// A second-order equation `y'' = λ0(x) y' + s0(x) y` whose coefficients
/// depend on a spectral parameter `E`.
pub trait AimProblem {
    /// Expansion point of the coefficient jets.
    fn expansion_point(&self) -> f64;

    /// Jets of `(λ0, s0)` at [`AimProblem::expansion_point`], each of at least
    /// `order`.
    ///
    /// The coefficients should be formed in [`AimScalar`] precision. Deep
    /// iterations amplify any perturbation of the coefficients, so rounding
    /// them through `f64` first caps the attainable energy accuracy.
    fn coefficient_jets(&self, energy: f64, order: usize)
        -> Result<(TaylorJet<AimScalar>, TaylorJet<AimScalar>)>;

    fn description(&self) -> String;
}

/// Determinant history of one iteration run.
///
/// With rescaling on, each row `(λk, sk)` is multiplied by a power of two
/// after it is produced, so `delta_values` keep their signs and relative
/// pattern but not their raw magnitudes. Compare signs and ratios only.
#[derive(Debug, Clone, PartialEq)]
pub struct AimTrace {
    pub k_reached: usize,
    /// `δ1 .. δk` at the expansion point
    pub delta_values: Vec<f64>,
    /// Sum of the base-2 exponents divided out of the last row.
    pub rescale_log: i64,
}

impl AimTrace {
    pub fn last_delta(&self) -> f64 {
        *self.delta_values.last().expect("trace holds at least one value")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AimSettings {
    /// Iteration depth of the first root; later roots use `k + 5`, `k + 10`.
    pub k: usize,
    /// Absolute energy tolerance (MeV) of each root.
    pub tol: f64,
    pub rescale: bool,
}

impl Default for AimSettings {
    fn default() -> Self {
        Self {
            k: 40,
            tol: 1e-10,
            rescale: true,
        }
    }
}

impl AimSettings {
    pub fn schedule(&self) -> [usize; 3] {
        [self.k, self.k + 5, self.k + 10]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AimRoot {
    pub energy: f64,
    /// Depth at which `energy` was obtained.
    pub k: usize,
    /// `(k, root)` for every stage of the stabilization schedule.
    pub stages: Vec<(usize, f64)>,
    /// Largest change between successive stages.
    pub drift: f64,
    /// `|δk|` (rescaled) at the returned root.
    pub abs_delta: f64,
}

/// Jet order used for a depth-`k_max` run.
pub fn jet_order(k_max: usize) -> usize {
    k_max + 4
}

fn frexp_exponent(x: f64) -> i32 {
    // exponent e with |x| = m 2^e, m in [0.5, 1)
    if x == 0.0 || !x.is_finite() {
        return 0;
    }
    x.abs().log2().floor() as i32 + 1
}

/// Runs the recurrence to depth `k_max` at energy `e`.
///
/// The recurrence runs in double-double: `sk/λk` converges quickly, so `δk`
/// is a difference of nearly equal products and loses about as many digits
/// as the iteration is deep.
pub fn aim_iterate(problem: &dyn AimProblem, e: f64, k_max: usize, rescale: bool) -> Result<AimTrace> {
    if k_max < 1 {
        return Err(Error::invalid("k_max", "must be at least 1"));
    }
    let order = jet_order(k_max);
    let (lambda0, s0) = problem.coefficient_jets(e, order)?;
    let have = lambda0.order().min(s0.order());
    if have < k_max + 2 {
        return Err(Error::InsufficientOrder {
            have,
            need: k_max + 2,
        });
    }
    if lambda0.coeffs().iter().all(|&c| c.to_f64() == 0.0) {
        return Err(Error::ZeroConstantTerm);
    }
    if lambda0.x0() != s0.x0() {
        return Err(Error::JetMismatch(lambda0.x0(), s0.x0()));
    }

    let mut lam_prev = lambda0.clone();
    let mut s_prev = s0.clone();
    let mut deltas = Vec::with_capacity(k_max);
    let mut log = 0i64;
    for _ in 1..=k_max {
        let lam = lam_prev
            .diff()
            .add_unchecked(&s_prev)
            .add_unchecked(&lambda0.mul_unchecked(&lam_prev));
        let mut s = s_prev.diff().add_unchecked(&s0.mul_unchecked(&lam_prev));

        let delta = (lam.value() * s_prev.value() - lam_prev.value() * s.value()).to_f64();
        if !delta.is_finite() {
            return Err(Error::Overflow(format!(
                "δ{} is not finite at E = {e}",
                deltas.len() + 1
            )));
        }
        deltas.push(delta);

        let mut lam = lam;
        if rescale {
            let pivot = if lam.value().to_f64() != 0.0 {
                lam.value().to_f64()
            } else {
                s.value().to_f64()
            };
            let ex = frexp_exponent(pivot);
            if ex != 0 {
                let factor = 2f64.powi(-ex);
                lam.scale_in_place(factor);
                s.scale_in_place(factor);
                log += i64::from(ex);
            }
        }
        lam_prev = lam;
        s_prev = s;
    }
    Ok(AimTrace {
        k_reached: k_max,
        delta_values: deltas,
        rescale_log: log,
    })
}

pub(crate) fn delta_at(problem: &dyn AimProblem, e: f64, k: usize, rescale: bool) -> Result<f64> {
    Ok(aim_iterate(problem, e, k, rescale)?.last_delta())
}

/// Smallest bracket around `guess`, grown geometrically from `initial` up to
/// `limit`, in which `δk` changes sign.
pub(crate) fn bracket_near(
    problem: &dyn AimProblem,
    guess: f64,
    k: usize,
    rescale: bool,
    initial: f64,
    limit: (f64, f64),
) -> Result<(f64, f64)> {
    let mut w = initial;
    loop {
        let lo = (guess - w).max(limit.0);
        let hi = (guess + w).min(limit.1);
        let flo = delta_at(problem, lo, k, rescale)?;
        let fhi = delta_at(problem, hi, k, rescale)?;
        if flo == 0.0 || fhi == 0.0 || flo.signum() != fhi.signum() {
            return Ok((lo, hi));
        }
        if lo <= limit.0 && hi >= limit.1 {
            return Err(Error::NoSignChange { lo, hi });
        }
        w *= 4.0;
    }
}

/// Root of `E -> δk(x0; E)` inside `[e_lo, e_hi]`, confirmed at `k + 5` and
/// `k + 10`.
///
/// Each stage is solved to `settings.tol`; successive stages must agree to
/// `10 tol` or the result is rejected as not k-stable.
pub fn aim_eigenvalue(
    problem: &dyn AimProblem,
    e_lo: f64,
    e_hi: f64,
    settings: &AimSettings,
) -> Result<AimRoot> {
    if !(e_hi > e_lo) {
        return Err(Error::NoSignChange { lo: e_lo, hi: e_hi });
    }
    let schedule = settings.schedule();
    let mut stages = Vec::with_capacity(schedule.len());
    let mut drift: f64 = 0.0;
    let mut prev: Option<f64> = None;
    for &k in &schedule {
        let (lo, hi) = match prev {
            None => (e_lo, e_hi),
            Some(r) => {
                let w = (1e3 * settings.tol).max(1e-9 * r.abs());
                bracket_near(problem, r, k, settings.rescale, w, (e_lo, e_hi))?
            }
        };
        let root = bisect_secant(|e| delta_at(problem, e, k, settings.rescale), lo, hi, settings.tol)?;
        if let Some(p) = prev {
            let step = (root - p).abs();
            drift = drift.max(step);
            if step > 10.0 * settings.tol {
                return Err(Error::NonConvergence {
                    reason: format!("root moved between k = {} and k = {k}", k - 5),
                    drift: step,
                });
            }
        }
        stages.push((k, root));
        prev = Some(root);
    }
    let (k, energy) = *stages.last().expect("schedule is non-empty");
    let abs_delta = delta_at(problem, energy, k, settings.rescale)?.abs();
    Ok(AimRoot {
        energy,
        k,
        stages,
        drift,
        abs_delta,
    })
}
