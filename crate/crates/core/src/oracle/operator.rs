use crate::potential::{centrifugal_pekeris, dws_potential, MassParams, PekerisCoeffs, PotentialParams};
use crate::{Error, Result};

/// A central potential in MeV as a function of `r` in fm.
pub trait RadialPotential {
    fn value(&self, r: f64) -> f64;

    /// Limit from below. Differs from [`RadialPotential::value`] only at a
    /// jump, where the outward sweep must keep using the inner branch.
    fn left_limit(&self, r: f64) -> f64 {
        self.value(r)
    }

    /// Greatest lower bound of the potential on `[r_min, ∞)`.
    fn infimum(&self, r_min: f64) -> f64;

    /// Characteristic radius used as the matching point when the trial
    /// energy has no classically allowed region.
    fn surface(&self) -> f64;

    fn describe(&self) -> String;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DwsWell(pub PotentialParams);

impl RadialPotential for DwsWell {
    fn value(&self, r: f64) -> f64 {
        dws_potential(r, &self.0)
    }
    fn infimum(&self, r_min: f64) -> f64 {
        // increasing in r
        dws_potential(r_min, &self.0)
    }
    fn surface(&self) -> f64 {
        self.0.radius()
    }
    fn describe(&self) -> String {
        format!(
            "dWS V0={} q={} a={} R={}",
            self.0.v0(),
            self.0.q(),
            self.0.a(),
            self.0.radius()
        )
    }
}

/// `-V0 / (exp(delta r) - 1)`, Coulomb-like at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HulthenWell {
    v0: f64,
    delta: f64,
}

impl HulthenWell {
    pub fn new(v0: f64, delta: f64) -> Result<Self> {
        if !(v0 > 0.0 && v0.is_finite()) {
            return Err(Error::invalid("V0", "must be positive"));
        }
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::invalid("delta", "must be positive"));
        }
        Ok(Self { v0, delta })
    }
}

impl RadialPotential for HulthenWell {
    fn value(&self, r: f64) -> f64 {
        if r <= 0.0 {
            return f64::NEG_INFINITY;
        }
        -self.v0 / (self.delta * r).exp_m1()
    }
    fn infimum(&self, _r_min: f64) -> f64 {
        f64::NEG_INFINITY
    }
    fn surface(&self) -> f64 {
        1.0 / self.delta
    }
    fn describe(&self) -> String {
        format!("Hulthen V0={} delta={}", self.v0, self.delta)
    }
}

/// `-V0` for `r < R`, zero outside.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquareWell {
    v0: f64,
    radius: f64,
}

impl SquareWell {
    pub fn new(v0: f64, radius: f64) -> Result<Self> {
        if !(v0 > 0.0 && v0.is_finite() && radius > 0.0 && radius.is_finite()) {
            return Err(Error::invalid("square well", "V0 and R must be positive"));
        }
        Ok(Self { v0, radius })
    }
}

impl RadialPotential for SquareWell {
    fn value(&self, r: f64) -> f64 {
        if r < self.radius {
            -self.v0
        } else {
            0.0
        }
    }
    fn left_limit(&self, r: f64) -> f64 {
        // tolerate a grid node that lands a rounding error past R
        if r <= self.radius * (1.0 + 1e-12) {
            -self.v0
        } else {
            0.0
        }
    }
    fn infimum(&self, _r_min: f64) -> f64 {
        -self.v0
    }
    fn surface(&self) -> f64 {
        self.radius
    }
    fn describe(&self) -> String {
        format!("square well V0={} R={}", self.v0, self.radius)
    }
}

/// Which barrier the radial operator carries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Centrifugal {
    /// `l(l+1)/r²`
    Exact,
    /// Three-term surface approximation; finite at `r = 0`.
    Pekeris { params: PotentialParams, coeffs: PekerisCoeffs },
}

impl Centrifugal {
    pub fn label(&self) -> &'static str {
        match self {
            Centrifugal::Exact => "exact",
            Centrifugal::Pekeris { .. } => "pekeris",
        }
    }
}

/// `u'' = f(r) u` with `f = (2μ/ħ²)(V - E) + barrier`.
pub(crate) struct RadialOperator<'a> {
    pub potential: &'a dyn RadialPotential,
    pub l: u32,
    pub k: f64,
    pub centrifugal: Centrifugal,
}

impl<'a> RadialOperator<'a> {
    pub fn new(potential: &'a dyn RadialPotential, l: u32, mass: &MassParams, centrifugal: Centrifugal) -> Self {
        Self {
            potential,
            l,
            k: mass.two_mu_over_hbar2(),
            centrifugal,
        }
    }

    fn l_factor(&self) -> f64 {
        let l = f64::from(self.l);
        l * (l + 1.0)
    }

    /// Exponent of the regular solution `u ~ r^(s+1)` at the origin.
    pub fn origin_exponent(&self) -> u32 {
        match self.centrifugal {
            Centrifugal::Exact => self.l,
            Centrifugal::Pekeris { .. } => 0,
        }
    }

    /// The part of `f` without the `s(s+1)/r²` origin singularity.
    pub fn regular_part(&self, r: f64, e: f64) -> f64 {
        let v = self.k * (self.potential.value(r) - e);
        match self.centrifugal {
            Centrifugal::Exact => v,
            Centrifugal::Pekeris { params, coeffs } => v + centrifugal_pekeris(r, self.l, &params, &coeffs),
        }
    }

    fn barrier(&self, r: f64) -> f64 {
        match self.centrifugal {
            Centrifugal::Exact => {
                let lf = self.l_factor();
                if lf == 0.0 {
                    0.0
                } else {
                    lf / (r * r)
                }
            }
            Centrifugal::Pekeris { params, coeffs } => centrifugal_pekeris(r, self.l, &params, &coeffs),
        }
    }

    pub fn f(&self, r: f64, e: f64) -> f64 {
        self.k * (self.potential.value(r) - e) + self.barrier(r)
    }

    pub fn f_left(&self, r: f64, e: f64) -> f64 {
        self.k * (self.potential.left_limit(r) - e) + self.barrier(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_well_limits() {
        let w = SquareWell::new(1.0, 10.0).unwrap();
        assert_eq!(w.value(10.0), 0.0);
        assert_eq!(w.left_limit(10.0), -1.0);
        assert_eq!(w.value(9.99), -1.0);
        assert_eq!(w.infimum(0.0), -1.0);
    }

    #[test]
    fn hulthen_is_coulomb_like() {
        let w = HulthenWell::new(4.0, 1.0).unwrap();
        let r = 1e-6;
        assert!((w.value(r) * r + 4.0).abs() < 1e-5);
        assert!(HulthenWell::new(-1.0, 1.0).is_err());
    }

    #[test]
    fn operator_barriers() {
        let p = PotentialParams::nuclear_defaults(40).unwrap();
        let d = crate::potential::pekeris_coefficients(&p).unwrap();
        let w = DwsWell(p);
        let m = MassParams::nuclear_default();
        let ex = RadialOperator::new(&w, 2, &m, Centrifugal::Exact);
        let pk = RadialOperator::new(&w, 2, &m, Centrifugal::Pekeris { params: p, coeffs: d });
        let r = p.radius();
        assert!((ex.f(r, -10.0) - pk.f(r, -10.0)).abs() < 1e-12);
        assert_eq!(ex.origin_exponent(), 2);
        assert_eq!(pk.origin_exponent(), 0);
        assert!(pk.f(0.0, -10.0).is_finite());
    }
}
