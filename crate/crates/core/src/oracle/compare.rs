use std::collections::BTreeMap;
use std::fmt;

use super::grid::RadialGrid;
use super::numerov::{numerov_spectrum, ShootingResult};
use super::operator::{Centrifugal, DwsWell, RadialPotential};
use crate::aim::{dws_aim_energy, DwsAimSettings};
use crate::closed_form::{energy, QuantumNumbers};
use crate::potential::{pekeris_coefficients, MassParams, PotentialParams};
use crate::Result;

/// One route's energy for one state, or why it is missing.
#[derive(Debug, Clone, PartialEq)]
pub enum RouteCell {
    Value(f64),
    Missing(String),
}

impl RouteCell {
    pub fn value(&self) -> Option<f64> {
        match self {
            RouteCell::Value(v) => Some(*v),
            RouteCell::Missing(_) => None,
        }
    }

    fn from_result(r: Result<f64>) -> Self {
        match r {
            Ok(v) => RouteCell::Value(v),
            Err(e) => RouteCell::Missing(e.to_string()),
        }
    }
}

impl fmt::Display for RouteCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RouteCell::Value(v) => write!(f, "{v}"),
            RouteCell::Missing(why) => write!(f, "missing ({why})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RouteRow {
    pub qn: QuantumNumbers,
    pub closed_form: RouteCell,
    pub aim: RouteCell,
    pub numerov_pekeris: RouteCell,
    pub numerov_exact: RouteCell,
}

impl RouteRow {
    /// `(route - closed_form) / |closed_form|`, when both exist.
    pub fn relative_deviation(&self, route: &RouteCell) -> Option<f64> {
        let base = self.closed_form.value()?;
        let v = route.value()?;
        Some((v - base) / base.abs())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RouteOptions {
    /// Numerov step, fm.
    pub h: f64,
    /// Grid extent beyond `R`, fm.
    pub r_margin: f64,
    pub aim: DwsAimSettings,
    /// Skip the iteration route (it dominates the run time).
    pub with_aim: bool,
}

impl Default for RouteOptions {
    fn default() -> Self {
        Self {
            h: 0.01,
            r_margin: 40.0,
            aim: DwsAimSettings::default(),
            with_aim: true,
        }
    }
}

impl RouteOptions {
    /// Half-line grid `[0, R + r_margin]` rounded up to a whole number of
    /// steps.
    pub fn grid(&self, p: &PotentialParams) -> Result<RadialGrid> {
        let steps = ((p.radius() + self.r_margin) / self.h).ceil();
        RadialGrid::half_line(steps * self.h, self.h)
    }
}

type Spectra = BTreeMap<u32, std::result::Result<Vec<ShootingResult>, String>>;

fn numerov_by_l(
    qns: &[QuantumNumbers],
    well: &DwsWell,
    m: &MassParams,
    centrifugal: Centrifugal,
    grid: &RadialGrid,
) -> Spectra {
    let mut n_max: BTreeMap<u32, u32> = BTreeMap::new();
    for qn in qns {
        let e = n_max.entry(qn.l).or_insert(0);
        *e = (*e).max(qn.n);
    }
    let floor = well.infimum(grid.r_min());
    let window = (floor + 1e-9 * floor.abs(), -1e-9);
    n_max
        .into_iter()
        .map(|(l, n)| {
            let res = numerov_spectrum(l, well, m, centrifugal, grid, window, n as usize).map_err(|e| e.to_string());
            (l, res)
        })
        .collect()
}

fn pick(spectra: &Spectra, qn: QuantumNumbers) -> RouteCell {
    match spectra.get(&qn.l) {
        Some(Ok(levels)) => match levels.iter().find(|s| s.node_count == qn.n as usize) {
            Some(s) if s.converged => RouteCell::Value(s.energy),
            Some(s) => RouteCell::Missing(format!("not converged (residual {:e})", s.match_residual)),
            None => RouteCell::Missing(format!("no level with {} nodes below threshold", qn.n)),
        },
        Some(Err(e)) => RouteCell::Missing(e.clone()),
        None => RouteCell::Missing("not computed".into()),
    }
}

/// Energies of every requested state by each route, in request order.
/// Failures become [`RouteCell::Missing`]; no row is dropped.
pub fn compare_routes(
    qns: &[QuantumNumbers],
    p: &PotentialParams,
    m: &MassParams,
    options: &RouteOptions,
) -> Result<Vec<RouteRow>> {
    let d = pekeris_coefficients(p)?;
    let grid = options.grid(p)?;
    let well = DwsWell(*p);
    let exact = numerov_by_l(qns, &well, m, Centrifugal::Exact, &grid);
    let pekeris = numerov_by_l(qns, &well, m, Centrifugal::Pekeris { params: *p, coeffs: d }, &grid);

    Ok(qns
        .iter()
        .map(|&qn| {
            let closed_form = RouteCell::from_result(energy(qn, p, m, &d).map(|l| l.energy));
            let aim = if options.with_aim {
                RouteCell::from_result(dws_aim_energy(qn, p, m, &d, &options.aim).map(|r| r.energy))
            } else {
                RouteCell::Missing("skipped".into())
            };
            RouteRow {
                qn,
                closed_form,
                aim,
                numerov_pekeris: pick(&pekeris, qn),
                numerov_exact: pick(&exact, qn),
            }
        })
        .collect())
}
