//! One function per subcommand. Each resolves its settings, computes, and
//! returns the finished text; nothing is written until the whole output
//! exists.

use std::collections::BTreeMap;

use dws_core::aim::{dws_aim_energy, DwsAimSettings, DEFAULT_Z0};
use dws_core::closed_form::{energy, spectrum, QuantumNumbers};
use dws_core::oracle::{compare_routes, RouteOptions};
use dws_core::potential::{default_depth, pekeris_coefficients, MassParams, PotentialParams};
use dws_core::wavefunction::{normalize, shape_report};

use crate::cli::{AimTuning, Cli, Command, NumerovArgs, ScanParam};
use crate::config::{parse_config_str, parse_index_list, ConfigMap, Resolver};
use crate::error::CliError;
use crate::output::{fmt_float, fmt_opt, Format, Table};
use crate::reference::{reference_entries, REFERENCE_CSV, REFERENCE_VERSION};

pub const DEFAULT_MASS_NUMBER: u32 = 40;
pub const DEFAULT_Q: f64 = 1.0;
pub const DEFAULT_A: f64 = 0.65;
pub const DEFAULT_R0: f64 = 1.285;
pub const DEFAULT_TWO_MU_OVER_HBAR2: f64 = 0.4727;
pub const DEFAULT_MU: f64 = 1.0;

/// Everything every command needs once flags and file are merged.
struct Setup {
    a0: u32,
    v0: Option<f64>,
    q: f64,
    a: f64,
    r0: f64,
    mass: MassParams,
    natural: bool,
    format: Format,
}

impl Setup {
    fn params(&self) -> Result<PotentialParams, CliError> {
        self.params_for(self.a0)
    }

    fn params_for(&self, a0: u32) -> Result<PotentialParams, CliError> {
        let v0 = self.v0.unwrap_or_else(|| default_depth(a0));
        Ok(PotentialParams::new(v0, self.q, self.a, self.r0, a0)?)
    }
}

fn load_config(cli: &Cli) -> Result<ConfigMap, CliError> {
    match &cli.common.config {
        None => Ok(ConfigMap::new()),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
            parse_config_str(&text).map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))
        }
    }
}

fn setup(cli: &Cli, res: &mut Resolver) -> Result<Setup, CliError> {
    let c = &cli.common;
    let a0 = res.get("mass-number", c.mass_number, DEFAULT_MASS_NUMBER)?;
    let v0 = res.get_opt("v0", c.v0)?;
    let q = res.get("q", c.q, DEFAULT_Q)?;
    let a = res.get("a", c.a, DEFAULT_A)?;
    let r0 = res.get("r0", c.r0, DEFAULT_R0)?;
    let natural = res.switch("natural-units", c.natural_units, false)?;
    let mass = if natural {
        let mu = res.get("mu", c.mu, DEFAULT_MU)?;
        let m = MassParams::natural(mu)?;
        res.record("two-mu-over-hbar2", &m.two_mu_over_hbar2());
        m
    } else {
        MassParams::new(res.get("two-mu-over-hbar2", c.two_mu_over_hbar2, DEFAULT_TWO_MU_OVER_HBAR2)?)?
    };
    let format = res.get("format", c.format, Format::Csv)?;
    Ok(Setup {
        a0,
        v0,
        q,
        a,
        r0,
        mass,
        natural,
        format,
    })
}

/// Records the derived geometry of `p` and its depth when defaulted.
fn record_params(res: &mut Resolver, s: &Setup, p: &PotentialParams) {
    if s.v0.is_none() {
        res.record("v0", &p.v0());
    }
    res.record("radius", &p.radius());
    if p.geometry_warning() {
        res.record("warning", &"R/a below 5, the Pekeris expansion is unreliable");
    }
}

fn render(command: &str, table: &Table, res: Resolver, extra: Vec<(String, String)>, format: Format) -> Result<String, CliError> {
    let mut echo: BTreeMap<String, String> = BTreeMap::new();
    for (k, v) in res.into_echo() {
        // later records (derived values) win over an earlier `none`
        echo.insert(k, v);
    }
    let mut meta = vec![
        ("version".to_string(), format!("dws-cli {}", env!("CARGO_PKG_VERSION"))),
        ("command".to_string(), command.to_string()),
    ];
    meta.extend(echo);
    meta.extend(extra);
    table.render(&meta, format)
}

fn aim_settings(res: &mut Resolver, t: &AimTuning) -> Result<DwsAimSettings, CliError> {
    let mut s = DwsAimSettings::default();
    s.aim.k = res.get("k", t.k, s.aim.k)?;
    s.aim.tol = res.get("tol", t.tol, s.aim.tol)?;
    s.aim.rescale = res.get("rescale", t.rescale, s.aim.rescale)?;
    s.z0 = res.get("z0", t.z0, DEFAULT_Z0)?;
    s.scan_step = res.get("scan-step", t.scan_step, s.scan_step)?;
    if s.aim.k < 1 {
        return Err(CliError::Usage("k must be at least 1".into()));
    }
    if !(s.aim.tol > 0.0 && s.aim.tol.is_finite()) {
        return Err(CliError::Usage("tol must be positive".into()));
    }
    if !(s.z0 > 0.0 && s.z0.is_finite()) {
        return Err(CliError::Usage("z0 must be positive".into()));
    }
    if !(s.scan_step > 0.0 && s.scan_step.is_finite()) {
        return Err(CliError::Usage("scan-step must be positive".into()));
    }
    Ok(s)
}

fn route_options(res: &mut Resolver, n: &NumerovArgs) -> Result<RouteOptions, CliError> {
    let d = RouteOptions::default();
    let h = res.get("numerov-h", n.numerov_h, d.h)?;
    let r_margin = res.get("r-margin", n.r_margin, d.r_margin)?;
    if !(h > 0.0 && h.is_finite()) {
        return Err(CliError::Usage("numerov-h must be positive".into()));
    }
    if !(r_margin > 0.0 && r_margin.is_finite()) {
        return Err(CliError::Usage("r-margin must be positive".into()));
    }
    Ok(RouteOptions { h, r_margin, ..d })
}

pub fn dispatch(cli: Cli) -> Result<String, CliError> {
    let file = load_config(&cli)?;
    let mut res = Resolver::new(&file);
    let s = setup(&cli, &mut res)?;
    match &cli.command {
        Command::Coeffs => coeffs(&s, res),
        Command::Spectrum(a) => {
            let n_max = res.get("n-max", a.n_max, 3)?;
            let l_max = res.get("l-max", a.l_max, 8)?;
            spectrum_cmd(&s, res, n_max, l_max)
        }
        Command::TableReport(a) => {
            if a.dump_ref {
                res.record("dump-ref", &true);
                dump_ref(&s, res)
            } else {
                let opts = route_options(&mut res, &a.numerov)?;
                table_report(&s, res, &opts)
            }
        }
        Command::Scan(a) => {
            let param = res.get("param", a.param, ScanParam::Q)?;
            let (lo, hi) = match param {
                ScanParam::Q => (0.2, 2.0),
                ScanParam::A => (0.3, 1.0),
                ScanParam::V0 => (20.0, 80.0),
                ScanParam::Mu => (0.5, 2.0),
            };
            let from = res.get("from", a.from, lo)?;
            let to = res.get("to", a.to, hi)?;
            let steps = res.get("steps", a.steps, 100)?;
            let ns = res.get("n", a.n.clone(), "0".to_string())?;
            let ls = res.get("l", a.l.clone(), "0-4".to_string())?;
            let ns = parse_index_list(&ns)?;
            let ls = parse_index_list(&ls)?;
            scan(&s, res, param, (from, to, steps), &ns, &ls)
        }
        Command::Aim(a) => {
            let n = res.get("n", a.n, 0)?;
            let l = res.get("l", a.l, 0)?;
            let settings = aim_settings(&mut res, &a.tuning)?;
            aim(&s, res, QuantumNumbers::new(n, l), &settings)
        }
        Command::Verify(a) => {
            let n_max = res.get("n-max", a.n_max, 2)?;
            let l_max = res.get("l-max", a.l_max, 2)?;
            let with_aim = res.get("with-aim", a.with_aim, true)?;
            let mut opts = route_options(&mut res, &a.numerov)?;
            opts.with_aim = with_aim;
            opts.aim = aim_settings(&mut res, &a.tuning)?;
            verify(&s, res, n_max, l_max, &opts)
        }
        Command::Wf(a) => {
            let n = res.get("n", a.n, 0)?;
            let l = res.get("l", a.l, 0)?;
            let samples = res.get("samples", a.samples, 2001)?;
            let quad_tol = res.get("quad-tol", a.quad_tol, 1e-8)?;
            wf(&s, res, QuantumNumbers::new(n, l), samples, quad_tol)
        }
    }
}

fn coeffs(s: &Setup, mut res: Resolver) -> Result<String, CliError> {
    let p = s.params()?;
    record_params(&mut res, s, &p);
    let d = pekeris_coefficients(&p)?;
    let mut t = Table::new(&["q", "a", "R", "D0", "D1", "D2"]);
    t.push(
        [p.q(), p.a(), p.radius(), d.d0, d.d1, d.d2]
            .into_iter()
            .map(fmt_float)
            .collect(),
    );
    render("coeffs", &t, res, vec![], s.format)
}

fn spectrum_cmd(s: &Setup, mut res: Resolver, n_max: u32, l_max: u32) -> Result<String, CliError> {
    let p = s.params()?;
    record_params(&mut res, s, &p);
    let levels = spectrum(&p, &s.mass, n_max, l_max)?;
    let mut t = Table::new(&["n", "l", "E", "alpha", "gamma", "chi", "A", "is_negative", "is_consistent"]);
    for lv in levels {
        t.push(vec![
            lv.qn.n.to_string(),
            lv.qn.l.to_string(),
            fmt_float(lv.energy),
            fmt_opt(lv.alpha),
            fmt_float(lv.gamma),
            fmt_float(lv.chi),
            fmt_float(lv.big_a),
            lv.is_negative.to_string(),
            lv.is_consistent.to_string(),
        ]);
    }
    render("spectrum", &t, res, vec![], s.format)
}

fn reference_meta() -> Vec<(String, String)> {
    vec![("reference-set-version".to_string(), REFERENCE_VERSION.to_string())]
}

fn dump_ref(s: &Setup, res: Resolver) -> Result<String, CliError> {
    let mut t = Table::new(&["n", "l", "A0", "E_ref"]);
    let mut body = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(REFERENCE_CSV.as_bytes());
    for row in body.records() {
        // copied as text so the published digits survive untouched
        t.push(row?.iter().map(str::to_string).collect());
    }
    render("table-report", &t, res, reference_meta(), s.format)
}

fn table_report(s: &Setup, mut res: Resolver, opts: &RouteOptions) -> Result<String, CliError> {
    let entries = reference_entries();
    res.record("mass-number", &"per reference row");
    if s.v0.is_none() {
        res.record("v0", &"40.5 + 0.13 A0");
    }
    let mut by_a0: BTreeMap<u32, Vec<QuantumNumbers>> = BTreeMap::new();
    for e in &entries {
        by_a0.entry(e.a0).or_default().push(QuantumNumbers::new(e.n, e.l));
    }
    let mut computed: BTreeMap<(u32, u32, u32), (Option<f64>, Option<f64>)> = BTreeMap::new();
    for (&a0, qns) in &by_a0 {
        let p = s.params_for(a0)?;
        res.record(&format!("v0[A0={a0}]"), &p.v0());
        res.record(&format!("radius[A0={a0}]"), &p.radius());
        let rows = compare_routes(qns, &p, &s.mass, &RouteOptions { with_aim: false, ..opts.clone() })?;
        for r in rows {
            computed.insert((r.qn.n, r.qn.l, a0), (r.closed_form.value(), r.numerov_exact.value()));
        }
    }
    let mut t = Table::new(&["n", "l", "A0", "E_ref", "E_closed_form", "E_numerov_exact", "dev_cf", "dev_num"]);
    for e in &entries {
        let (cf, num) = computed.get(&(e.n, e.l, e.a0)).copied().unwrap_or((None, None));
        t.push(vec![
            e.n.to_string(),
            e.l.to_string(),
            e.a0.to_string(),
            fmt_float(e.e_ref),
            fmt_opt(cf),
            fmt_opt(num),
            fmt_opt(cf.map(|v| v - e.e_ref)),
            fmt_opt(num.map(|v| v - e.e_ref)),
        ]);
    }
    let mut meta = reference_meta();
    meta.push(("deviation".into(), "E_route - E_ref in MeV".into()));
    render("table-report", &t, res, meta, s.format)
}

fn scan(
    s: &Setup,
    mut res: Resolver,
    param: ScanParam,
    (from, to, steps): (f64, f64, usize),
    ns: &[u32],
    ls: &[u32],
) -> Result<String, CliError> {
    if steps < 2 {
        return Err(CliError::Usage("steps must be at least 2 (both endpoints are included)".into()));
    }
    if !(from.is_finite() && to.is_finite()) || from == to {
        return Err(CliError::Usage("from and to must be finite and distinct".into()));
    }
    if param == ScanParam::Mu && !s.natural {
        return Err(CliError::Usage("--param mu needs --natural-units".into()));
    }
    let base = s.params()?;
    record_params(&mut res, s, &base);
    let mut t = Table::new(&["param_value", "n", "l", "E"]);
    let last = (steps - 1) as f64;
    for i in 0..steps {
        let x = if i == steps - 1 {
            to
        } else {
            from + (to - from) * (i as f64 / last)
        };
        let (p, m) = match param {
            ScanParam::Q => (base.with_q(x)?, s.mass),
            ScanParam::A => (base.with_a(x)?, s.mass),
            ScanParam::V0 => (base.with_v0(x)?, s.mass),
            ScanParam::Mu => (base, MassParams::natural(x)?),
        };
        let d = pekeris_coefficients(&p)?;
        for &n in ns {
            for &l in ls {
                let e = energy(QuantumNumbers::new(n, l), &p, &m, &d).ok().map(|lv| lv.energy);
                t.push(vec![fmt_float(x), n.to_string(), l.to_string(), fmt_opt(e)]);
            }
        }
    }
    render("scan", &t, res, vec![], s.format)
}

fn aim(s: &Setup, mut res: Resolver, qn: QuantumNumbers, settings: &DwsAimSettings) -> Result<String, CliError> {
    let p = s.params()?;
    record_params(&mut res, s, &p);
    let d = pekeris_coefficients(&p)?;
    let root = dws_aim_energy(qn, &p, &s.mass, &d, settings)?;
    let mut t = Table::new(&["k", "energy", "step"]);
    let mut prev: Option<f64> = None;
    for &(k, e) in &root.stages {
        t.push(vec![k.to_string(), fmt_float(e), fmt_opt(prev.map(|p| e - p))]);
        prev = Some(e);
    }
    let meta = vec![
        ("k_reached".to_string(), root.k.to_string()),
        ("abs_delta".to_string(), fmt_float(root.abs_delta)),
        ("drift".to_string(), fmt_float(root.drift)),
    ];
    render("aim", &t, res, meta, s.format)
}

fn verify(s: &Setup, mut res: Resolver, n_max: u32, l_max: u32, opts: &RouteOptions) -> Result<String, CliError> {
    let p = s.params()?;
    record_params(&mut res, s, &p);
    let qns: Vec<_> = (0..=n_max)
        .flat_map(|n| (0..=l_max).map(move |l| QuantumNumbers::new(n, l)))
        .collect();
    let rows = compare_routes(&qns, &p, &s.mass, opts)?;
    let mut t = Table::new(&[
        "n",
        "l",
        "E_closed_form",
        "E_aim",
        "E_numerov_pekeris",
        "E_numerov_exact",
        "rel_dev_aim",
        "rel_dev_numerov_pekeris",
        "rel_dev_numerov_exact",
    ]);
    for r in &rows {
        t.push(vec![
            r.qn.n.to_string(),
            r.qn.l.to_string(),
            fmt_opt(r.closed_form.value()),
            fmt_opt(r.aim.value()),
            fmt_opt(r.numerov_pekeris.value()),
            fmt_opt(r.numerov_exact.value()),
            fmt_opt(r.relative_deviation(&r.aim)),
            fmt_opt(r.relative_deviation(&r.numerov_pekeris)),
            fmt_opt(r.relative_deviation(&r.numerov_exact)),
        ]);
    }
    let meta = vec![("deviation".to_string(), "(E_route - E_closed_form) / |E_closed_form|".to_string())];
    render("verify", &t, res, meta, s.format)
}

fn wf(s: &Setup, mut res: Resolver, qn: QuantumNumbers, samples: usize, quad_tol: f64) -> Result<String, CliError> {
    if samples < 2 {
        return Err(CliError::Usage("samples must be at least 2".into()));
    }
    if !(quad_tol > 0.0 && quad_tol.is_finite()) {
        return Err(CliError::Usage("quad-tol must be positive".into()));
    }
    let p = s.params()?;
    record_params(&mut res, s, &p);
    let d = pekeris_coefficients(&p)?;
    let level = energy(qn, &p, &s.mass, &d)?;
    let wf = normalize(&level, &p, quad_tol)?;
    let last = (samples - 1) as f64;
    let grid: Vec<f64> = (0..samples)
        .map(|i| if i == samples - 1 { wf.r_max } else { wf.r_max * (i as f64 / last) })
        .collect();
    let report = shape_report(&wf, &grid)?;
    let mut t = Table::new(&["r", "R"]);
    for (r, v) in &report.rows {
        t.push(vec![fmt_float(*r), fmt_float(*v)]);
    }
    let meta = vec![
        ("energy".to_string(), fmt_float(level.energy)),
        ("norm_constant".to_string(), fmt_float(wf.norm_constant)),
        ("r_max".to_string(), fmt_float(wf.r_max)),
        ("sign_change_count".to_string(), report.sign_change_count.to_string()),
    ];
    render("wf", &t, res, meta, s.format)
}
