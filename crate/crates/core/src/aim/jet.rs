use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use twofloat::TwoFloat;

use crate::{Error, Result};

/// Coefficient type of a [`TaylorJet`].
pub trait JetScalar:
    Copy
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
    fn div(self, rhs: Self) -> Self;
}

impl JetScalar for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn div(self, rhs: Self) -> Self {
        self / rhs
    }
}

/// Double-double; carries roughly 32 significant digits.
impl JetScalar for TwoFloat {
    fn from_f64(x: f64) -> Self {
        TwoFloat::from(x)
    }
    fn to_f64(self) -> f64 {
        self.hi() + self.lo()
    }
    fn div(self, rhs: Self) -> Self {
        self / rhs
    }
}

/// Taylor coefficients `c0..cK` of a function about `x0`, so that
/// `f(x0 + t) = Σ ck t^k + O(t^(K+1))`.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorJet<T: JetScalar = f64> {
    x0: f64,
    coeffs: Vec<T>,
}

impl<T: JetScalar> TaylorJet<T> {
    pub fn new(x0: f64, coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InsufficientOrder { have: 0, need: 1 });
        }
        Ok(Self { x0, coeffs })
    }

    pub fn constant(x0: f64, value: f64, order: usize) -> Self {
        let mut coeffs = vec![T::from_f64(0.0); order + 1];
        coeffs[0] = T::from_f64(value);
        Self { x0, coeffs }
    }

    /// The identity function `x` expanded at `x0`.
    pub fn variable(x0: f64, order: usize) -> Self {
        let mut coeffs = vec![T::from_f64(0.0); order + 1];
        coeffs[0] = T::from_f64(x0);
        if order >= 1 {
            coeffs[1] = T::from_f64(1.0);
        }
        Self { x0, coeffs }
    }

    /// Jet of the polynomial `Σ p[i] x^i` at `x0`.
    pub fn polynomial(x0: f64, p: &[f64], order: usize) -> Self {
        let mut acc = Self::constant(x0, 0.0, order);
        // Horner in jet arithmetic
        let x = Self::variable(x0, order);
        for &c in p.iter().rev() {
            acc = acc.mul_unchecked(&x);
            acc.coeffs[0] = acc.coeffs[0] + T::from_f64(c);
        }
        acc
    }

    /// Jet of `Σ p[i] x^i` with coefficients already in `T`.
    pub fn polynomial_in(x0: f64, p: &[T], order: usize) -> Self {
        let mut acc = Self::constant(x0, 0.0, order);
        let x = Self::variable(x0, order);
        for &c in p.iter().rev() {
            acc = acc.mul_unchecked(&x);
            acc.coeffs[0] = acc.coeffs[0] + c;
        }
        acc
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }
    pub fn value(&self) -> T {
        self.coeffs[0]
    }

    /// Evaluates the truncated series at `x`.
    pub fn eval(&self, x: f64) -> f64 {
        let t = x - self.x0;
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c.to_f64())
    }

    /// Same jet with coefficients converted to another scalar type.
    pub fn convert<U: JetScalar>(&self) -> TaylorJet<U> {
        TaylorJet {
            x0: self.x0,
            coeffs: self.coeffs.iter().map(|c| U::from_f64(c.to_f64())).collect(),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.x0 != other.x0 {
            return Err(Error::JetMismatch(self.x0, other.x0));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let k = self.order().min(other.order());
        let coeffs = (0..=k).map(|i| self.coeffs[i] - other.coeffs[i]).collect();
        Ok(Self { x0: self.x0, coeffs })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn scale(&self, factor: f64) -> Self {
        let f = T::from_f64(factor);
        Self {
            x0: self.x0,
            coeffs: self.coeffs.iter().map(|&c| c * f).collect(),
        }
    }

    pub fn scale_by(&self, factor: T) -> Self {
        Self {
            x0: self.x0,
            coeffs: self.coeffs.iter().map(|&c| c * factor).collect(),
        }
    }

    /// `c_k <- (k+1) c_(k+1)`; the order drops by one. The derivative of an
    /// order-0 jet is the order-0 zero jet.
    pub fn diff(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::constant(self.x0, 0.0, 0);
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(k, &c)| T::from_f64((k + 1) as f64) * c)
            .collect();
        Self { x0: self.x0, coeffs }
    }

    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = self.coeffs[0];
        if a0.to_f64() == 0.0 {
            return Err(Error::ZeroConstantTerm);
        }
        let k = self.order();
        let mut out = vec![T::from_f64(0.0); k + 1];
        out[0] = T::from_f64(1.0).div(a0);
        for i in 1..=k {
            let mut s = T::from_f64(0.0);
            for j in 1..=i {
                s = s + self.coeffs[j] * out[i - j];
            }
            out[i] = (-s).div(a0);
        }
        Ok(Self {
            x0: self.x0,
            coeffs: out,
        })
    }

    pub fn truncate(&self, order: usize) -> Self {
        let k = order.min(self.order());
        Self {
            x0: self.x0,
            coeffs: self.coeffs[..=k].to_vec(),
        }
    }

    pub(crate) fn add_unchecked(&self, other: &Self) -> Self {
        let k = self.order().min(other.order());
        let coeffs = (0..=k).map(|i| self.coeffs[i] + other.coeffs[i]).collect();
        Self { x0: self.x0, coeffs }
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let k = self.order().min(other.order());
        let a = &self.coeffs;
        let b = &other.coeffs;
        let coeffs = (0..=k)
            .map(|i| {
                let mut s = T::from_f64(0.0);
                for j in 0..=i {
                    s = s + a[j] * b[i - j];
                }
                s
            })
            .collect();
        Self { x0: self.x0, coeffs }
    }

    /// Multiplies every coefficient by `factor`, which callers keep to powers
    /// of two so the operation is exact.
    pub(crate) fn scale_in_place(&mut self, factor: f64) {
        let f = T::from_f64(factor);
        for c in &mut self.coeffs {
            *c = *c * f;
        }
    }
}
