//! Adaptive Gauss-Kronrod (7/15) and composite Simpson integration.

use crate::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for the odd Kronrod nodes 1, 3, 5 and the center
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// `(kronrod, |kronrod - gauss|)` on one panel.
fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error_estimate: f64,
    pub panels: usize,
}

/// Integrates `f` over `[a, b]`, bisecting the worst panel until the summed
/// error estimate is below `tol · max(|I|, tiny)` or `max_panels` is hit.
pub fn integrate_adaptive<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    tol: f64,
    max_panels: usize,
) -> Result<Quadrature> {
    if !(a.is_finite() && b.is_finite()) || b <= a {
        return Err(Error::Quadrature(format!("invalid interval [{a}, {b}]")));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("tol", "must be positive"));
    }
    let (v, e) = gk15(&mut f, a, b);
    let mut panels = vec![(a, b, v, e)];
    loop {
        let value: f64 = panels.iter().map(|p| p.2).sum();
        let err: f64 = panels.iter().map(|p| p.3).sum();
        if !value.is_finite() {
            return Err(Error::Quadrature("integrand is not finite".into()));
        }
        if err <= tol * value.abs().max(f64::MIN_POSITIVE) {
            return Ok(Quadrature {
                value,
                error_estimate: err,
                panels: panels.len(),
            });
        }
        if panels.len() >= max_panels {
            return Err(Error::Quadrature(format!(
                "no convergence after {} panels (error {err:e}, value {value:e})",
                panels.len()
            )));
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .expect("at least one panel");
        let (lo, hi, _, _) = panels.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = gk15(&mut f, lo, mid);
        let (v2, e2) = gk15(&mut f, mid, hi);
        panels.push((lo, mid, v1, e1));
        panels.push((mid, hi, v2, e2));
    }
}

/// Composite Simpson rule with step close to `h` (rounded so the panel count
/// is even).
pub fn simpson<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, h: f64) -> Result<f64> {
    if !(b > a) || !(h > 0.0) {
        return Err(Error::Quadrature(format!("invalid Simpson setup [{a}, {b}], h = {h}")));
    }
    let mut n = ((b - a) / h).ceil() as usize;
    n += n % 2;
    let n = n.max(2);
    let step = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(a + step * i as f64);
    }
    Ok(sum * step / 3.0)
}
