use super::grid::{GridMode, RadialGrid};
use super::operator::{Centrifugal, RadialOperator, RadialPotential};
use crate::potential::MassParams;
use crate::roots::bisect_secant;
use crate::{Error, Result};

const RENORM: f64 = 1e150;
/// `|match_residual|` below which a polished root counts as converged. The
/// residual is a normalized Wronskian in `[-1, 1]`.
pub const RESIDUAL_TOL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq)]
pub struct ShootingResult {
    /// MeV
    pub energy: f64,
    /// Sign changes of the matched solution.
    pub node_count: usize,
    pub match_residual: f64,
    pub converged: bool,
    pub grid: RadialGrid,
    /// fm
    pub matching_radius: f64,
}

/// `(b u_cur - a u_prev) / c` with the Numerov weights of the three nodes.
#[inline]
fn numerov_next(u_prev: f64, u_cur: f64, f_prev: f64, f_cur: f64, f_next: f64, h2: f64) -> f64 {
    let a = 1.0 - h2 * f_prev / 12.0;
    let b = 2.0 * (1.0 + 5.0 * h2 * f_cur / 12.0);
    let c = 1.0 - h2 * f_next / 12.0;
    (b * u_cur - a * u_prev) / c
}

fn sign_changes(u: &[f64]) -> usize {
    let mut last = 0.0;
    let mut n = 0;
    for &v in u {
        if v == 0.0 {
            continue;
        }
        let s = v.signum();
        if last != 0.0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

pub(crate) struct Shooter<'a> {
    op: RadialOperator<'a>,
    grid: RadialGrid,
}

struct Matched {
    residual: f64,
    nodes: usize,
}

impl<'a> Shooter<'a> {
    pub fn new(
        potential: &'a dyn RadialPotential,
        l: u32,
        mass: &MassParams,
        centrifugal: Centrifugal,
        grid: &RadialGrid,
    ) -> Result<Self> {
        if grid.mode() == GridMode::ExtendedLine && matches!(centrifugal, Centrifugal::Exact) {
            return Err(Error::invalid(
                "centrifugal",
                "the exact barrier is singular at r = 0; extended-line grids need the Pekeris form",
            ));
        }
        Ok(Self {
            op: RadialOperator::new(potential, l, mass, centrifugal),
            grid: *grid,
        })
    }

    /// Nodes at the start of the outward sweep that come from the series
    /// instead of the recurrence: enough that `h² f / 12 < 1/2` afterwards.
    fn series_nodes(&self) -> usize {
        let s = f64::from(self.op.origin_exponent());
        let lf = s * (s + 1.0);
        2.max((lf / 6.0).sqrt().ceil() as usize + 1)
    }

    /// `u = r^(s+1) (1 + a1 r + a2 r²)` about the origin, with the
    /// Coulomb-like and constant parts of `f` fitted from two samples.
    fn series_start(&self, e: f64, upto: usize) -> Result<Vec<f64>> {
        let h = self.grid.h();
        let s = f64::from(self.op.origin_exponent());
        let y = |r: f64| r * self.op.regular_part(r, e);
        let (y1, y2) = (y(h), y(2.0 * h));
        if !(y1.is_finite() && y2.is_finite()) {
            return Err(Error::Overflow("potential is not finite near the origin".into()));
        }
        let c = 2.0 * y1 - y2;
        let d = (y2 - y1) / h;
        let a1 = c / (2.0 * s + 2.0);
        let a2 = (c * a1 + d) / (2.0 * (2.0 * s + 3.0));
        Ok((0..=upto)
            .map(|i| {
                let r = self.grid.r(i);
                r.powf(s + 1.0) * (1.0 + r * (a1 + a2 * r))
            })
            .collect())
    }

    /// Outward solution on nodes `0..=end`, renormalized to stay finite.
    fn outward(&self, e: f64, end: usize) -> Result<Vec<f64>> {
        let h = self.grid.h();
        let h2 = h * h;
        let mut u = match self.grid.mode() {
            GridMode::HalfLine => {
                let j0 = self.series_nodes().min(end);
                self.series_start(e, j0)?
            }
            GridMode::ExtendedLine => {
                let r0 = self.grid.r_min();
                let f0 = self.op.f(r0 + 0.5 * h, e);
                if !(f0 > 0.0) {
                    return Err(Error::Domain(
                        "extended-line start is classically allowed; move r_min further out",
                    ));
                }
                vec![1.0, (h * f0.sqrt()).exp()]
            }
        };
        u.reserve(end + 1 - u.len().min(end + 1));
        let mut i = u.len() - 1;
        let mut f_prev = self.op.f_left(self.grid.r(i - 1), e);
        let mut f_cur = self.op.f_left(self.grid.r(i), e);
        while i < end {
            let f_next = self.op.f_left(self.grid.r(i + 1), e);
            let next = numerov_next(u[i - 1], u[i], f_prev, f_cur, f_next, h2);
            if !next.is_finite() {
                return Err(Error::Overflow(format!(
                    "outward sweep diverged at r = {} (step too large?)",
                    self.grid.r(i + 1)
                )));
            }
            u.push(next);
            if next.abs() > RENORM {
                for v in &mut u {
                    *v /= RENORM;
                }
            }
            f_prev = f_cur;
            f_cur = f_next;
            i += 1;
        }
        Ok(u)
    }

    /// Inward solution on nodes `start..=N`; entries below `start` are zero.
    fn inward(&self, e: f64, start: usize) -> Result<Vec<f64>> {
        let n = self.grid.steps();
        let h = self.grid.h();
        let h2 = h * h;
        let mut u = vec![0.0; n + 1];
        let f_end = self.op.f(self.grid.r(n) - 0.5 * h, e);
        u[n] = 1.0;
        u[n - 1] = if f_end > 0.0 { (h * f_end.sqrt()).exp() } else { 1.0 };
        let mut f_next = self.op.f(self.grid.r(n), e);
        let mut f_cur = self.op.f(self.grid.r(n - 1), e);
        let mut i = n - 1;
        while i > start {
            let f_prev = self.op.f(self.grid.r(i - 1), e);
            let prev = numerov_next(u[i + 1], u[i], f_next, f_cur, f_prev, h2);
            if !prev.is_finite() {
                return Err(Error::Overflow(format!(
                    "inward sweep diverged at r = {} (step too large?)",
                    self.grid.r(i - 1)
                )));
            }
            u[i - 1] = prev;
            if prev.abs() > RENORM {
                for v in &mut u[i - 1..] {
                    *v /= RENORM;
                }
            }
            f_next = f_cur;
            f_cur = f_prev;
            i -= 1;
        }
        Ok(u)
    }

    /// One node past the outermost classically allowed node, else the node
    /// nearest the potential's surface.
    pub fn matching_node(&self, e: f64) -> Result<usize> {
        let n = self.grid.steps();
        let allowed = (1..n).rev().find(|&i| self.op.f(self.grid.r(i), e) < 0.0);
        let m = match allowed {
            Some(i) => i + 1,
            None => {
                let r_s = self.op.potential.surface();
                self.grid.nearest_node(r_s).ok_or_else(|| {
                    Error::invalid(
                        "grid",
                        format!("no turning point at E = {e} and fallback r = {r_s} fm lies off the grid"),
                    )
                })?
            }
        };
        let lo = 5.max(self.series_nodes() + 4);
        Ok(m.clamp(lo, n - 5))
    }

    fn matched(&self, e: f64, m: usize) -> Result<Matched> {
        let h = self.grid.h();
        let out = self.outward(e, m)?;
        let inn = self.inward(e, m)?;
        let d_out = (25.0 * out[m] - 48.0 * out[m - 1] + 36.0 * out[m - 2] - 16.0 * out[m - 3] + 3.0 * out[m - 4])
            / (12.0 * h);
        let d_in = (-25.0 * inn[m] + 48.0 * inn[m + 1] - 36.0 * inn[m + 2] + 16.0 * inn[m + 3] - 3.0 * inn[m + 4])
            / (12.0 * h);
        let span = self.grid.r_max() - self.grid.r_min();
        let s = (self.op.k * e.abs()).sqrt().max(1.0 / span);
        let n_out = out[m].hypot(d_out / s);
        let n_in = inn[m].hypot(d_in / s);
        let residual = (d_out * inn[m] - out[m] * d_in) / (s * n_out * n_in);
        let nodes = sign_changes(&out[..=m]) + sign_changes(&inn[m..]);
        Ok(Matched { residual, nodes })
    }

    pub fn residual(&self, e: f64) -> Result<f64> {
        let m = self.matching_node(e)?;
        Ok(self.matched(e, m)?.residual)
    }

    /// Sign changes of the outward solution across the whole grid; by
    /// oscillation theory this is nondecreasing in `e`.
    pub fn outward_nodes(&self, e: f64) -> Result<usize> {
        Ok(sign_changes(&self.outward(e, self.grid.steps())?))
    }

    fn result(&self, e: f64, m: usize, polished: bool) -> Result<ShootingResult> {
        let mt = self.matched(e, m)?;
        Ok(ShootingResult {
            energy: e,
            node_count: mt.nodes,
            match_residual: mt.residual,
            converged: polished && mt.residual.abs() <= RESIDUAL_TOL,
            grid: self.grid,
            matching_radius: self.grid.r(m),
        })
    }

    /// Refines a node-count transition at `e0` (bracket width `w0`) to a zero
    /// of the matching residual.
    fn polish(&self, e0: f64, w0: f64, window: (f64, f64)) -> Result<ShootingResult> {
        let m = self.matching_node(e0)?;
        let g = |e: f64| -> Result<f64> { Ok(self.matched(e, m)?.residual) };
        let tol = 1e-13 * e0.abs().max(1.0);
        let mut w = w0.max(tol);
        loop {
            let lo = (e0 - w).max(window.0);
            let hi = (e0 + w).min(window.1);
            let (glo, ghi) = (g(lo)?, g(hi)?);
            if glo == 0.0 {
                return self.result(lo, m, true);
            }
            if ghi == 0.0 {
                return self.result(hi, m, true);
            }
            if glo.signum() != ghi.signum() {
                let root = bisect_secant(g, lo, hi, tol)?;
                return self.result(root, m, true);
            }
            if lo <= window.0 && hi >= window.1 {
                return self.result(e0, m, false);
            }
            w *= 4.0;
        }
    }
}

/// Log-derivative mismatch at the matching point for trial energy `e`,
/// expressed as the normalized Wronskian
/// `(u_out' u_in - u_out u_in') / (s |(u_out, u_out'/s)| |(u_in, u_in'/s)|)`
/// with `s = sqrt(2μ|E|/ħ²)`. It has the sign and zeros of the plain
/// log-derivative difference but no poles, so it is continuous in `e`.
pub fn numerov_shoot(
    e: f64,
    l: u32,
    potential: &dyn RadialPotential,
    mass: &MassParams,
    centrifugal: Centrifugal,
    grid: &RadialGrid,
) -> Result<f64> {
    Shooter::new(potential, l, mass, centrifugal, grid)?.residual(e)
}

/// Full shooting record at a fixed trial energy (no root search).
pub fn numerov_state(
    e: f64,
    l: u32,
    potential: &dyn RadialPotential,
    mass: &MassParams,
    centrifugal: Centrifugal,
    grid: &RadialGrid,
) -> Result<ShootingResult> {
    let sh = Shooter::new(potential, l, mass, centrifugal, grid)?;
    let m = sh.matching_node(e)?;
    sh.result(e, m, false)
}

/// Eigenvalues in `window` with node counts up to `n_max`, sorted by energy.
///
/// Each level is bracketed by bisecting on the outward node count, then
/// polished on the matching residual.
pub fn numerov_spectrum(
    l: u32,
    potential: &dyn RadialPotential,
    mass: &MassParams,
    centrifugal: Centrifugal,
    grid: &RadialGrid,
    window: (f64, f64),
    n_max: usize,
) -> Result<Vec<ShootingResult>> {
    let (lo, hi) = window;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::invalid("window", "need finite E_lo < E_hi"));
    }
    if hi > 0.0 {
        return Err(Error::invalid("window", "bound states need E_hi <= 0"));
    }
    let sh = Shooter::new(potential, l, mass, centrifugal, grid)?;
    let c_lo = sh.outward_nodes(lo)?;
    let c_hi = sh.outward_nodes(hi)?;
    let mut out = Vec::new();
    let mut a = lo;
    for n in c_lo..c_hi.min(n_max + 1) {
        let mut b = hi;
        let tol = 1e-12 * b.abs().max(1.0);
        for _ in 0..200 {
            if b - a <= tol {
                break;
            }
            let mid = 0.5 * (a + b);
            if sh.outward_nodes(mid)? > n {
                b = mid;
            } else {
                a = mid;
            }
        }
        let res = sh.polish(b, b - a, window)?;
        out.push(res);
        a = b;
    }
    out.sort_by(|x, y| x.energy.total_cmp(&y.energy));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::operator::{HulthenWell, SquareWell};
    use super::*;

    fn natural() -> MassParams {
        MassParams::new(1.0).unwrap()
    }

    #[test]
    fn hulthen_ground_state() {
        let w = HulthenWell::new(4.0, 1.0).unwrap();
        let grid = RadialGrid::half_line(40.0, 0.005).unwrap();
        let levels = numerov_spectrum(0, &w, &natural(), Centrifugal::Exact, &grid, (-20.0, -1e-3), 3).unwrap();
        assert_eq!(levels.len(), 1);
        assert!((levels[0].energy + 2.25).abs() < 1e-6 * 2.25, "{}", levels[0].energy);
        assert!(levels[0].converged);
        assert_eq!(levels[0].node_count, 0);
    }

    #[test]
    fn below_the_well_there_is_nothing() {
        let w = SquareWell::new(1.0, 10.0).unwrap();
        let grid = RadialGrid::half_line(40.0, 0.05).unwrap();
        let sh = Shooter::new(&w, 0, &natural(), Centrifugal::Exact, &grid).unwrap();
        assert_eq!(sh.outward_nodes(-1.5).unwrap(), 0);
        let r1 = sh.residual(-1.5).unwrap();
        let r2 = sh.residual(-1.2).unwrap();
        assert_eq!(r1.signum(), r2.signum());
    }

    #[test]
    fn exact_barrier_rejected_on_extended_grid() {
        let w = SquareWell::new(1.0, 10.0).unwrap();
        let grid = RadialGrid::new(-10.0, 40.0, 0.05, GridMode::ExtendedLine).unwrap();
        assert!(numerov_shoot(-0.5, 0, &w, &natural(), Centrifugal::Exact, &grid).is_err());
    }
}
