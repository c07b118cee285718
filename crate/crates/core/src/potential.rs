//! Deformed Woods-Saxon and Hulthén wells and the Pekeris replacement of the
//! centrifugal barrier.

use crate::{Error, Result};

/// Depth rule `V0 = 40.5 + 0.13 A0` (MeV).
pub fn default_depth(mass_number: u32) -> f64 {
    40.5 + 0.13 * f64::from(mass_number)
}

/// Surface thickness below which `R >> a` is considered violated.
pub const GEOMETRY_RATIO_THRESHOLD: f64 = 5.0;

/// Geometry and depth of the deformed Woods-Saxon well.
///
/// The radius `R = r0 A0^(1/3)` and `nu = 1/a` are derived on construction
/// and cannot be set independently.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialParams {
    v0: f64,
    q: f64,
    a: f64,
    r0: f64,
    mass_number: u32,
    radius: f64,
    nu: f64,
}

impl PotentialParams {
    pub fn new(v0: f64, q: f64, a: f64, r0: f64, mass_number: u32) -> Result<Self> {
        if !(v0.is_finite() && v0 > 0.0) {
            return Err(Error::invalid("v0", format!("must satisfy V0 > 0, got {v0}")));
        }
        if !(q.is_finite() && q > 0.0) {
            return Err(Error::invalid("q", format!("must satisfy q > 0, got {q}")));
        }
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::invalid("a", format!("must satisfy a > 0, got {a}")));
        }
        if !(r0.is_finite() && r0 > 0.0) {
            return Err(Error::invalid("r0", format!("must satisfy r0 > 0, got {r0}")));
        }
        if mass_number == 0 {
            return Err(Error::invalid("a0", "must satisfy A0 >= 1"));
        }
        let radius = r0 * f64::from(mass_number).cbrt();
        Ok(Self {
            v0,
            q,
            a,
            r0,
            mass_number,
            radius,
            nu: 1.0 / a,
        })
    }

    /// Nuclear defaults: `q = 1`, `a = 0.65 fm`, `r0 = 1.285 fm` and the
    /// depth rule of [`default_depth`].
    pub fn nuclear_defaults(mass_number: u32) -> Result<Self> {
        Self::new(default_depth(mass_number), 1.0, 0.65, 1.285, mass_number)
    }

    pub fn v0(&self) -> f64 {
        self.v0
    }
    pub fn q(&self) -> f64 {
        self.q
    }
    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn r0(&self) -> f64 {
        self.r0
    }
    pub fn mass_number(&self) -> u32 {
        self.mass_number
    }
    /// Well radius `R` in fm.
    pub fn radius(&self) -> f64 {
        self.radius
    }
    /// Inverse diffuseness `nu = 1/a` in fm⁻¹.
    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// True when `R/a` falls below [`GEOMETRY_RATIO_THRESHOLD`]. The Pekeris
    /// expansion assumes a thin surface; nothing refuses to run when this is
    /// set.
    pub fn geometry_warning(&self) -> bool {
        self.radius / self.a < GEOMETRY_RATIO_THRESHOLD
    }

    pub fn with_v0(&self, v0: f64) -> Result<Self> {
        Self::new(v0, self.q, self.a, self.r0, self.mass_number)
    }
    pub fn with_q(&self, q: f64) -> Result<Self> {
        Self::new(self.v0, q, self.a, self.r0, self.mass_number)
    }
    pub fn with_a(&self, a: f64) -> Result<Self> {
        Self::new(self.v0, self.q, a, self.r0, self.mass_number)
    }
}

/// The coupling `2μ/ħ²` in MeV⁻¹ fm⁻².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassParams {
    two_mu_over_hbar2: f64,
}

impl MassParams {
    pub fn new(two_mu_over_hbar2: f64) -> Result<Self> {
        if !(two_mu_over_hbar2.is_finite() && two_mu_over_hbar2 > 0.0) {
            return Err(Error::invalid(
                "two_mu_over_hbar2",
                format!("must be strictly positive, got {two_mu_over_hbar2}"),
            ));
        }
        Ok(Self { two_mu_over_hbar2 })
    }

    /// Units with `ħ = 1`, so the coupling is simply `2μ`.
    pub fn natural(mu: f64) -> Result<Self> {
        Self::new(2.0 * mu)
    }

    /// `2μ/ħ² = 0.4727 MeV⁻¹ fm⁻²`.
    pub fn nuclear_default() -> Self {
        Self {
            two_mu_over_hbar2: 0.4727,
        }
    }

    pub fn two_mu_over_hbar2(&self) -> f64 {
        self.two_mu_over_hbar2
    }

    pub fn hbar2_over_2mu(&self) -> f64 {
        1.0 / self.two_mu_over_hbar2
    }
}

/// Dimensionless coefficients of the three-term centrifugal replacement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PekerisCoeffs {
    pub d0: f64,
    pub d1: f64,
    pub d2: f64,
}

/// Taylor coefficients about `x = 0` of `1/(q + e^{nu x})` and its square.
struct SurfaceSeries {
    f: [f64; 3],
    g: [f64; 3],
}

impl SurfaceSeries {
    fn new(q: f64, nu: f64) -> Self {
        let c = q + 1.0;
        let f = [
            1.0 / c,
            -nu / (c * c),
            nu * nu * (1.0 - q) / (2.0 * c * c * c),
        ];
        let g = [
            1.0 / (c * c),
            -2.0 * nu / (c * c * c),
            nu * nu * (2.0 - q) / (c * c * c * c),
        ];
        Self { f, g }
    }
}

impl PekerisCoeffs {
    /// Residuals of the three matching equations, each divided by the size of
    /// its right-hand side.
    pub fn matching_residuals(&self, p: &PotentialParams) -> [f64; 3] {
        let s = SurfaceSeries::new(p.q, p.nu);
        let r = p.radius;
        let targets = [1.0, -2.0 / r, 3.0 / (r * r)];
        let lhs = [
            self.d0 - self.d1 * s.f[0] + self.d2 * s.g[0],
            -self.d1 * s.f[1] + self.d2 * s.g[1],
            -self.d1 * s.f[2] + self.d2 * s.g[2],
        ];
        let mut out = [0.0; 3];
        for i in 0..3 {
            out[i] = (lhs[i] - targets[i]) / targets[i].abs();
        }
        out
    }
}

/// `-V0 / (q + exp((r - R)/a))`.
pub fn dws_potential(r: f64, p: &PotentialParams) -> f64 {
    -p.v0 / (p.q + ((r - p.radius) * p.nu).exp())
}

/// `-V0 / (exp(delta r) - 1)`; singular at the origin.
pub fn hulthen_potential(r: f64, v0: f64, delta: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::Domain("hulthen_potential (r must be > 0)"));
    }
    if !(delta > 0.0) {
        return Err(Error::invalid("delta", "must be > 0"));
    }
    Ok(-v0 / (delta * r).exp_m1())
}

/// Coefficients that make the three-term form reproduce `1/r²` through second
/// order in `x = r - R`.
pub fn pekeris_coefficients(p: &PotentialParams) -> Result<PekerisCoeffs> {
    let s = SurfaceSeries::new(p.q, p.nu);
    let r = p.radius;
    // -D1 f1 + D2 g1 = -2/R
    // -D1 f2 + D2 g2 =  3/R²
    let (a11, a12, b1) = (-s.f[1], s.g[1], -2.0 / r);
    let (a21, a22, b2) = (-s.f[2], s.g[2], 3.0 / (r * r));
    let det = a11 * a22 - a12 * a21;
    let scale = (a11 * a22).abs().max((a12 * a21).abs());
    if !(det.abs() > 1e-14 * scale) {
        return Err(Error::Internal("singular Pekeris matching system".into()));
    }
    let d1 = (b1 * a22 - a12 * b2) / det;
    let d2 = (a11 * b2 - b1 * a21) / det;
    let d0 = 1.0 + d1 * s.f[0] - d2 * s.g[0];
    Ok(PekerisCoeffs { d0, d1, d2 })
}

/// The coefficient formulas as they were originally typeset, evaluated with
/// `R/a` substituted for the ambiguous `aR` product. They carry no `q`
/// dependence and do not satisfy the matching equations; kept only to make
/// the discrepancy with [`pekeris_coefficients`] inspectable.
pub fn typeset_coefficients(p: &PotentialParams) -> PekerisCoeffs {
    let y = p.radius * p.nu;
    let em = (-y).exp();
    let ep = y.exp();
    let w = (1.0 + em) / y;
    let d0 = 1.0 - w * w * (4.0 * y / (1.0 + em) - 3.0 - y);
    let d1 = 2.0 * (ep + 1.0) * (3.0 * w - (3.0 + y) * w);
    let d2 = (ep + 1.0).powi(2) * w * w * (3.0 + y - 2.0 * y / (1.0 + em));
    PekerisCoeffs { d0, d1, d2 }
}

fn l_factor(l: u32) -> f64 {
    let l = f64::from(l);
    l * (l + 1.0)
}

/// `l(l+1)/r²` in fm⁻².
pub fn centrifugal_exact(r: f64, l: u32) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::Domain("centrifugal_exact (r must be > 0)"));
    }
    Ok(l_factor(l) / (r * r))
}

/// Pekeris form of `l(l+1)/r²`. Defined for every real `r`.
pub fn centrifugal_pekeris(r: f64, l: u32, p: &PotentialParams, d: &PekerisCoeffs) -> f64 {
    let lf = l_factor(l);
    if lf == 0.0 {
        return 0.0;
    }
    let u = 1.0 / (p.q + ((r - p.radius) * p.nu).exp());
    lf / (p.radius * p.radius) * (d.d0 - d.d1 * u + d.d2 * u * u)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PekerisErrorRow {
    pub r: f64,
    pub exact: f64,
    pub approx: f64,
    pub abs_err: f64,
}

/// Exact and approximated barrier on `samples` evenly spaced radii spanning
/// `[r_lo, r_hi]` inclusive.
pub fn pekeris_error_report(
    l: u32,
    p: &PotentialParams,
    d: &PekerisCoeffs,
    r_lo: f64,
    r_hi: f64,
    samples: usize,
) -> Result<Vec<PekerisErrorRow>> {
    if samples < 2 {
        return Err(Error::invalid("samples", "need at least 2 samples"));
    }
    if !(r_lo > 0.0 && r_hi > r_lo) {
        return Err(Error::invalid("r_lo/r_hi", "require 0 < r_lo < r_hi"));
    }
    let step = (r_hi - r_lo) / (samples - 1) as f64;
    (0..samples)
        .map(|i| {
            let r = if i + 1 == samples {
                r_hi
            } else {
                r_lo + step * i as f64
            };
            let exact = centrifugal_exact(r, l)?;
            let approx = centrifugal_pekeris(r, l, p, d);
            Ok(PekerisErrorRow {
                r,
                exact,
                approx,
                abs_err: (exact - approx).abs(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn a40() -> PotentialParams {
        PotentialParams::nuclear_defaults(40).unwrap()
    }

    #[test]
    fn derived_geometry() {
        let p = a40();
        assert_relative_eq!(p.radius(), 1.285 * 40f64.cbrt(), max_relative = 1e-15);
        assert_relative_eq!(p.nu(), 1.0 / 0.65, max_relative = 1e-15);
        assert_relative_eq!(p.v0(), 45.7, max_relative = 1e-15);
        assert!(!p.geometry_warning());
        let thick = PotentialParams::new(45.7, 1.0, 2.0, 1.285, 40).unwrap();
        assert!(thick.geometry_warning());
    }

    #[test]
    fn rejects_invalid_parameters() {
        assert!(PotentialParams::new(45.7, 0.0, 0.65, 1.285, 40).is_err());
        assert!(PotentialParams::new(45.7, -1.0, 0.65, 1.285, 40).is_err());
        assert!(PotentialParams::new(-1.0, 1.0, 0.65, 1.285, 40).is_err());
        assert!(PotentialParams::new(45.7, 1.0, 0.0, 1.285, 40).is_err());
        assert!(PotentialParams::new(45.7, 1.0, 0.65, 1.285, 0).is_err());
        assert!(MassParams::new(0.0).is_err());
        assert_eq!(MassParams::natural(1.0).unwrap().two_mu_over_hbar2(), 2.0);
    }

    #[test]
    fn dws_values() {
        let p = a40();
        assert_relative_eq!(dws_potential(p.radius(), &p), -45.7 / 2.0, max_relative = 1e-15);
        // far tail: -V0 exp(-(r - R)/a) to within the neglected q term
        let tail = -45.7 * (-(100.0 - p.radius()) / 0.65).exp();
        assert_relative_eq!(dws_potential(100.0, &p), tail, max_relative = 1e-12);
        assert!(dws_potential(100.0, &p) < 0.0);
        let at0 = -45.7 / (1.0 + (-p.radius() / 0.65).exp());
        assert_relative_eq!(dws_potential(0.0, &p), at0, max_relative = 1e-15);
        assert!((dws_potential(0.0, &p) + 45.647).abs() < 1e-3);
    }

    #[test]
    fn dws_is_strictly_increasing() {
        let p = a40();
        let mut prev = dws_potential(0.0, &p);
        for i in 1..1000 {
            let v = dws_potential(i as f64 * 0.03, &p);
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn hulthen_values() {
        let v = hulthen_potential(2f64.ln(), 3.0, 1.0).unwrap();
        assert_relative_eq!(v, -3.0, max_relative = 1e-14);
        let v = hulthen_potential(1.0, 4.0, 1.0).unwrap();
        assert_relative_eq!(v, -4.0 / (std::f64::consts::E - 1.0), max_relative = 1e-14);
        assert!((v + 2.3280).abs() < 1e-4);
        assert!(hulthen_potential(0.0, 4.0, 1.0).is_err());
    }

    #[test]
    fn centrifugal_exact_values() {
        assert_eq!(centrifugal_exact(1.0, 0).unwrap(), 0.0);
        assert_eq!(centrifugal_exact(1.0, 1).unwrap(), 2.0);
        assert_relative_eq!(centrifugal_exact(2.5, 3).unwrap(), 1.92, max_relative = 1e-15);
        assert!(centrifugal_exact(0.0, 1).is_err());
    }

    #[test]
    fn q1_coefficients_match_symbolic_solution() {
        let p = a40();
        let d = pekeris_coefficients(&p).unwrap();
        let y = p.nu() * p.radius();
        assert_relative_eq!(d.d2, 48.0 / (y * y), max_relative = 1e-12);
        assert_relative_eq!(d.d1, 48.0 / (y * y) - 8.0 / y, max_relative = 1e-12);
        assert_relative_eq!(d.d0, 1.0 - 4.0 / y + 12.0 / (y * y), max_relative = 1e-12);
        assert!((y - 6.76098).abs() < 1e-5);
        assert!((d.d0 - 0.67092).abs() < 5e-4);
        assert!((d.d1 + 0.13324).abs() < 5e-4);
        assert!((d.d2 - 1.05013).abs() < 5e-4);
    }

    #[test]
    fn typeset_coefficients_disagree_with_matching() {
        let p = a40();
        let y = p.nu() * p.radius();
        let t = typeset_coefficients(&p);
        let d = pekeris_coefficients(&p).unwrap();
        let em = (-y).exp();
        let w = (1.0 + em) / y;
        // leading behaviour 1 - 3/y + 3/y² once e^{-y} is dropped
        assert!((t.d0 - (1.0 - 3.0 / y + 3.0 / (y * y))).abs() < 10.0 * em);
        assert!((t.d0 - d.d0).abs() > 0.04);
        assert!(t.matching_residuals(&p).iter().any(|r| r.abs() > 1e-3));
        assert!(w > 0.0);
    }

    #[test]
    fn pekeris_l0_vanishes() {
        let p = a40();
        let d = pekeris_coefficients(&p).unwrap();
        for r in [-3.0, 0.0, 1.0, 10.0] {
            assert_eq!(centrifugal_pekeris(r, 0, &p, &d), 0.0);
        }
    }

    #[test]
    fn pekeris_matches_barrier_at_surface() {
        let p = a40();
        let d = pekeris_coefficients(&p).unwrap();
        let r = p.radius();
        for l in 0..=10u32 {
            let exact = centrifugal_exact(r, l).unwrap();
            let approx = centrifugal_pekeris(r, l, &p, &d);
            let scale = l_factor(l) / (r * r);
            assert!((exact - approx).abs() <= 1e-12 * scale.max(1e-300));
        }
    }

    #[test]
    fn pekeris_agrees_to_third_order_near_surface() {
        // finite-difference first and second derivatives at r = R
        let p = a40();
        let d = pekeris_coefficients(&p).unwrap();
        let r = p.radius();
        let h = 1e-3;
        let fd = |f: &dyn Fn(f64) -> f64| {
            (
                (f(r + h) - f(r - h)) / (2.0 * h),
                (f(r + h) - 2.0 * f(r) + f(r - h)) / (h * h),
            )
        };
        let exact = |x: f64| centrifugal_exact(x, 1).unwrap();
        let approx = |x: f64| centrifugal_pekeris(x, 1, &p, &d);
        let (e1, e2) = fd(&exact);
        let (a1, a2) = fd(&approx);
        assert_relative_eq!(e1, a1, max_relative = 1e-5);
        assert_relative_eq!(e2, a2, max_relative = 1e-5);
        for dx in [-0.01, 0.01] {
            let e = exact(r + dx);
            let a = approx(r + dx);
            assert_relative_eq!(e, a, max_relative = 1e-5);
        }
    }

    #[test]
    fn error_report_shape() {
        let p = a40();
        let d = pekeris_coefficients(&p).unwrap();
        let rows = pekeris_error_report(0, &p, &d, 1.0, 8.0, 11).unwrap();
        assert_eq!(rows.len(), 11);
        assert!(rows.iter().all(|r| r.exact == 0.0 && r.approx == 0.0));
        assert_eq!(rows[10].r, 8.0);
        assert!(pekeris_error_report(1, &p, &d, 1.0, 8.0, 1).is_err());
        assert!(pekeris_error_report(1, &p, &d, 0.0, 8.0, 5).is_err());

        let r = p.radius();
        let rows = pekeris_error_report(1, &p, &d, r - 1.0, r + 1.0, 3).unwrap();
        assert!(rows[1].abs_err < 1e-12 * 2.0 / (r * r));
    }
}
