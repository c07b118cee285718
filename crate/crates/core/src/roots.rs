//! Bracketed scalar root finding shared by the AIM engine and the shooting
//! oracle.

use crate::{Error, Result};

/// Root of `f` in `[lo, hi]` by bisection interleaved with secant steps.
///
/// Requires `f(lo)` and `f(hi)` of opposite sign. Stops once the bracket is
/// narrower than `tol` or an exact zero is hit. A secant proposal is taken
/// only while it keeps shrinking the bracket by at least half every two
/// steps; otherwise the step falls back to bisection.
pub(crate) fn bisect_secant<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    if !(b > a) {
        return Err(Error::NoSignChange { lo, hi });
    }
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if !(fa.is_finite() && fb.is_finite()) || fa.signum() == fb.signum() {
        return Err(Error::NoSignChange { lo: a, hi: b });
    }

    let mut width_two_ago = f64::INFINITY;
    let mut width_one_ago = b - a;
    for _ in 0..400 {
        let width = b - a;
        if width <= tol {
            break;
        }
        let secant = b - fb * (b - a) / (fb - fa);
        let use_secant =
            secant.is_finite() && secant > a && secant < b && width <= 0.5 * width_two_ago;
        let mid = if use_secant { secant } else { 0.5 * (a + b) };
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
            fb = fm;
        }
        width_two_ago = width_one_ago;
        width_one_ago = width;
        if (b - a) == width {
            // no representable progress left
            break;
        }
    }
    // the endpoint with the smaller residual is the better estimate
    Ok(if fa.abs() < fb.abs() { a } else { b })
}
