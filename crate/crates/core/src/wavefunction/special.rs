use crate::{Error, Result};

/// Rising factorial `(σ)_n = σ (σ+1) ... (σ+n-1)`, with `(σ)_0 = 1`.
///
/// Fails if a factor vanishes, i.e. `σ` is a non-positive integer `> -n`;
/// the Gamma-ratio form is then a pole, not zero.
pub fn pochhammer(sigma: f64, n: u32) -> Result<f64> {
    let mut acc = 1.0;
    for k in 0..n {
        let f = sigma + f64::from(k);
        if f == 0.0 {
            return Err(Error::PochhammerPole(sigma));
        }
        acc *= f;
    }
    Ok(acc)
}

/// `2F1(-n, b2; c; w)` as the finite sum `Σ_{k<=n} (-n)_k (b2)_k / ((c)_k k!) w^k`.
pub fn gauss_2f1_terminating(n: u32, b2: f64, c: f64, w: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..n {
        let kf = f64::from(k);
        let ck = c + kf;
        if ck == 0.0 {
            return Err(Error::PochhammerPole(c));
        }
        term *= (kf - f64::from(n)) * (b2 + kf) / (ck * (kf + 1.0)) * w;
        sum += term;
    }
    Ok(sum)
}

/// Parameters of the equation
/// `y'' = 2 (t x^(N+1) / (1 - b x^(N+2)) - (m+1)/x) y' - W x^N / (1 - b x^(N+2)) y`
/// whose polynomial solutions are Gauss hypergeometric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralFormParams {
    pub t: f64,
    pub b: f64,
    pub w: f64,
    pub big_n: i32,
    pub m: f64,
    pub sigma: f64,
    pub rho: f64,
}

impl GeneralFormParams {
    /// Derives `σ = (2m+N+3)/(N+2)` and `ρ = ((2m+1)b + 2t)/((N+2)b)`.
    pub fn new(t: f64, b: f64, w: f64, big_n: i32, m: f64) -> Result<Self> {
        if big_n == -2 {
            return Err(Error::invalid("N", "N = -2 makes σ and ρ singular"));
        }
        if b == 0.0 {
            return Err(Error::invalid("b", "must be nonzero"));
        }
        let n2 = f64::from(big_n + 2);
        Ok(Self {
            t,
            b,
            w,
            big_n,
            m,
            sigma: (2.0 * m + f64::from(big_n) + 3.0) / n2,
            rho: ((2.0 * m + 1.0) * b + 2.0 * t) / (n2 * b),
        })
    }

    /// The dWS hypergeometric equation in this form: `t = -qγ`, `b = -q`,
    /// `N = -1`, `m = α - 1/2`. `W` does not enter the solution and is set
    /// to zero.
    pub fn dws(alpha: f64, gamma: f64, q: f64) -> Result<Self> {
        Self::new(-q * gamma, -q, 0.0, -1, alpha - 0.5)
    }
}

/// `y_n(x) = (-1)^n (N+2)^n (σ)_n 2F1(-n, ρ+n; σ; b x^(N+2))` with `C2 = 1`.
pub fn general_form_solution(n: u32, gp: &GeneralFormParams, x: f64) -> Result<f64> {
    let arg = gp.b * x.powi(gp.big_n + 2);
    if !arg.is_finite() {
        return Err(Error::Domain("b x^(N+2) is not finite"));
    }
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let scale = f64::from(gp.big_n + 2).powi(n as i32);
    let f = gauss_2f1_terminating(n, gp.rho + f64::from(n), gp.sigma, arg)?;
    Ok(sign * scale * pochhammer(gp.sigma, n)? * f)
}

/// `F(z) = (-1)^n (2α+1)_n 2F1(-n, 2(α+γ)+n; 2α+1; -qz)`, the polynomial
/// factor of the dWS solution with `C2 = 1`.
pub fn dws_polynomial(n: u32, alpha: f64, gamma: f64, q: f64, z: f64) -> Result<f64> {
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let c = 2.0 * alpha + 1.0;
    let f = gauss_2f1_terminating(n, 2.0 * (alpha + gamma) + f64::from(n), c, -q * z)?;
    Ok(sign * pochhammer(c, n)? * f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(-3.7, 0).unwrap(), 1.0);
        assert_eq!(pochhammer(1.0, 5).unwrap(), 120.0);
        assert_eq!(pochhammer(2.5, 3).unwrap(), 39.375);
        assert!(matches!(pochhammer(-2.0, 3), Err(Error::PochhammerPole(_))));
        // the pole sits beyond the product
        assert_eq!(pochhammer(-2.0, 2).unwrap(), 2.0);
    }

    #[test]
    fn hypergeometric_small_cases() {
        assert_eq!(gauss_2f1_terminating(0, 9.0, -0.5, 3.0).unwrap(), 1.0);
        let one = gauss_2f1_terminating(1, 3.0, 2.0, 0.7).unwrap();
        assert!((one - (1.0 - 1.5 * 0.7)).abs() < 1e-15);
        let two = gauss_2f1_terminating(2, 3.0, 2.0, -0.5).unwrap();
        assert!((two - 3.0).abs() < 1e-15);
        assert!(gauss_2f1_terminating(3, 1.0, -1.0, 0.5).is_err());
    }

    #[test]
    fn dws_mapping_identities() {
        let gp = GeneralFormParams::dws(1.3, 2.1, 0.8).unwrap();
        assert!((gp.sigma - 3.6).abs() < 1e-12);
        assert!((gp.rho - 6.8).abs() < 1e-12);
        assert!(GeneralFormParams::new(1.0, 1.0, 0.0, -2, 0.0).is_err());
    }

    #[test]
    fn general_form_ground_is_one() {
        let gp = GeneralFormParams::new(0.4, -1.2, 3.0, 1, 0.3).unwrap();
        assert_eq!(general_form_solution(0, &gp, 0.9).unwrap(), 1.0);
    }
}
