use crate::{Error, Result};

/// Largest `r_min` accepted for a half-line grid, fm.
pub const HALF_LINE_MAX_START: f64 = 1e-4;
pub const MIN_STEPS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridMode {
    /// `r ∈ [~0, r_max]` with `u(0) = 0`.
    HalfLine,
    /// `r_min < 0`; the solution must decay towards `r_min`. Only operators
    /// regular at the origin qualify.
    ExtendedLine,
}

/// Uniform Numerov grid. Node `i` sits at `r_min + i h`, `i = 0..=steps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    r_min: f64,
    r_max: f64,
    h: f64,
    steps: usize,
    mode: GridMode,
}

impl RadialGrid {
    pub fn new(r_min: f64, r_max: f64, h: f64, mode: GridMode) -> Result<Self> {
        if !(r_min.is_finite() && r_max.is_finite() && h > 0.0 && h.is_finite()) {
            return Err(Error::invalid("grid", "bounds and step must be finite, h > 0"));
        }
        let span = r_max - r_min;
        if !(span > 0.0) {
            return Err(Error::invalid("grid", "r_max must exceed r_min"));
        }
        let steps_f = (span / h).round();
        if (steps_f * h - span).abs() > 1e-9 * span {
            return Err(Error::invalid(
                "grid",
                format!("(r_max - r_min)/h = {} is not an integer", span / h),
            ));
        }
        let steps = steps_f as usize;
        if steps < MIN_STEPS {
            return Err(Error::invalid("grid", format!("{steps} steps; need at least {MIN_STEPS}")));
        }
        match mode {
            GridMode::HalfLine if !(0.0..=HALF_LINE_MAX_START).contains(&r_min) => {
                return Err(Error::invalid(
                    "grid",
                    format!("half-line grids start in [0, {HALF_LINE_MAX_START}] fm"),
                ))
            }
            GridMode::ExtendedLine if r_min >= 0.0 => {
                return Err(Error::invalid("grid", "extended-line grids need r_min < 0"))
            }
            _ => {}
        }
        Ok(Self {
            r_min,
            r_max,
            h: span / steps_f,
            steps,
            mode,
        })
    }

    pub fn half_line(r_max: f64, h: f64) -> Result<Self> {
        Self::new(0.0, r_max, h, GridMode::HalfLine)
    }

    pub fn r_min(&self) -> f64 {
        self.r_min
    }
    pub fn r_max(&self) -> f64 {
        self.r_max
    }
    pub fn h(&self) -> f64 {
        self.h
    }
    /// Number of intervals; there are `steps + 1` nodes.
    pub fn steps(&self) -> usize {
        self.steps
    }
    pub fn mode(&self) -> GridMode {
        self.mode
    }

    pub fn r(&self, i: usize) -> f64 {
        if i == self.steps {
            self.r_max
        } else {
            self.r_min + self.h * i as f64
        }
    }

    /// Node closest to `r`, if `r` lies on the grid.
    pub fn nearest_node(&self, r: f64) -> Option<usize> {
        if r < self.r_min || r > self.r_max {
            return None;
        }
        Some((((r - self.r_min) / self.h).round() as usize).min(self.steps))
    }

    /// Same span with the step divided by `factor`.
    pub fn refined(&self, factor: usize) -> Result<Self> {
        Self::new(self.r_min, self.r_max, self.h / factor as f64, self.mode)
    }
}
