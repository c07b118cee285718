//! Acceptance checks 1 to 10. Runs without the libtest harness so every
//! criterion prints its own PASS/FAIL line; exits non-zero if any fails.

use std::process::Command as Process;
use std::time::{Duration, Instant};

use dws_core::aim::{dws_aim_energy, DwsAimSettings};
use dws_core::closed_form::{energy, energy_l0, hulthen_energy, quantization_residual, QuantumNumbers};
use dws_core::oracle::{numerov_spectrum, Centrifugal, DwsWell, HulthenWell, RadialGrid, RadialPotential, SquareWell};
use dws_core::potential::{
    centrifugal_exact, centrifugal_pekeris, pekeris_coefficients, MassParams, PotentialParams,
};
use dws_core::wavefunction::{dws_polynomial, gauss_2f1_terminating, general_form_solution, normalize, GeneralFormParams};
use dws_cli::reference::reference_entries;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn random_params(rng: &mut ChaCha8Rng) -> PotentialParams {
    PotentialParams::new(
        rng.gen_range(30.0..60.0),
        rng.gen_range(0.3..3.0),
        rng.gen_range(0.4..0.9),
        rng.gen_range(1.1..1.4),
        rng.gen_range(10..240),
    )
    .unwrap()
}

fn nuclear(a0: u32) -> (PotentialParams, MassParams) {
    (PotentialParams::nuclear_defaults(a0).unwrap(), MassParams::nuclear_default())
}

fn dws() -> std::path::PathBuf {
    env!("CARGO_BIN_EXE_dws").into()
}

fn run_dws(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Process::new(dws()).args(args).output().expect("spawn dws");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn pekeris_matching() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let p = random_params(&mut rng);
        let d = pekeris_coefficients(&p).unwrap();
        for r in d.matching_residuals(&p) {
            worst = worst.max(r.abs());
        }
    }
    let mut worst_q1: f64 = 0.0;
    for _ in 0..20 {
        let p = random_params(&mut rng).with_q(1.0).unwrap();
        let d = pekeris_coefficients(&p).unwrap();
        let y = p.nu() * p.radius();
        let d2 = 48.0 / (y * y);
        let d1 = d2 - 8.0 / y;
        let d0 = 1.0 - 4.0 / y + 12.0 / (y * y);
        worst_q1 = worst_q1.max(rel(d.d0, d0)).max(rel(d.d1, d1)).max(rel(d.d2, d2));
    }
    outcome(
        worst < 1e-12 && worst_q1 < 1e-12,
        format!("max matching residual {worst:.2e}, max q=1 closed-form deviation {worst_q1:.2e}"),
    )
}

fn l0_reduction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let p = random_params(&mut rng);
        let m = MassParams::new(rng.gen_range(0.1..1.0)).unwrap();
        let d = pekeris_coefficients(&p).unwrap();
        for n in 0..=10 {
            let e = energy(QuantumNumbers::new(n, 0), &p, &m, &d).unwrap().energy;
            worst = worst.max(rel(e, energy_l0(n, &p, &m)));
        }
    }
    outcome(worst < 1e-12, format!("max relative deviation {worst:.2e} over 20 sets, n = 0..10"))
}

fn quantization_self_consistency() -> Outcome {
    let mut checked = 0;
    let mut failures = Vec::new();
    for a0 in [40, 56] {
        let (p, m) = nuclear(a0);
        let d = pekeris_coefficients(&p).unwrap();
        for n in 0..=3 {
            for l in 0..=8 {
                let level = energy(QuantumNumbers::new(n, l), &p, &m, &d).unwrap();
                let Some(alpha) = level.alpha else { continue };
                if !(level.big_a < 0.0) {
                    continue;
                }
                checked += 1;
                let res = quantization_residual(&level, &p, &m, &d).unwrap();
                let bound = 1e-9 * p.nu() * alpha;
                if res.abs() >= bound {
                    failures.push(format!("({n},{l},{a0}) residual {res:.3e} alpha {alpha:.4} < n+gamma {:.4}", f64::from(n) + level.gamma));
                }
            }
        }
    }
    let detail = if failures.is_empty() {
        format!("{checked} states, all residuals below 1e-9 nu alpha")
    } else {
        format!(
            "{} of {checked} states violate it; each has alpha < n + gamma, a root of the squared relation only. First: {}",
            failures.len(),
            failures[0]
        )
    };
    outcome(failures.is_empty(), detail)
}

fn aim_agreement() -> Outcome {
    let settings = DwsAimSettings::default();
    let mut worst: f64 = 0.0;
    let mut worst_drift: f64 = 0.0;
    let mut k_max = 0;
    let mut errors = Vec::new();
    for q in [0.5, 1.0, 1.5] {
        let p = PotentialParams::nuclear_defaults(40).unwrap().with_q(q).unwrap();
        let m = MassParams::nuclear_default();
        let d = pekeris_coefficients(&p).unwrap();
        for n in 0..=2 {
            for l in 0..=2 {
                let qn = QuantumNumbers::new(n, l);
                let cf = energy(qn, &p, &m, &d).unwrap().energy;
                match dws_aim_energy(qn, &p, &m, &d, &settings) {
                    Ok(root) => {
                        worst = worst.max(rel(root.energy, cf));
                        worst_drift = worst_drift.max(root.drift / cf.abs());
                        k_max = k_max.max(root.k);
                    }
                    Err(e) => errors.push(format!("q={q} ({n},{l}): {e}")),
                }
            }
        }
    }
    let pass = errors.is_empty() && worst < 1e-8 && worst_drift < 1e-8 && k_max <= 60;
    let mut detail = format!("27 states, max relative deviation {worst:.2e}, max k-drift {worst_drift:.2e}, k <= {k_max}");
    if !errors.is_empty() {
        detail.push_str(&format!("; failures: {}", errors.join("; ")));
    }
    outcome(pass, detail)
}

fn hulthen_numerov(v0: f64, delta: f64, m: &MassParams) -> f64 {
    let h = 0.0025;
    let exact = hulthen_energy(0, v0, delta, 1.0, m).unwrap().energy;
    // decay length 1/sqrt(k|E|); 30 of them is plenty
    let span = (30.0 / (m.two_mu_over_hbar2() * exact.abs()).sqrt()).max(40.0);
    let grid = RadialGrid::half_line((span / h).ceil() * h, h).unwrap();
    // Hulthén >= -V0/(delta r): the Coulomb ground state bounds E0 from below
    let g = v0 / delta;
    let lo = -m.two_mu_over_hbar2() * g * g / 4.0 - 1.0;
    let well = HulthenWell::new(v0, delta).unwrap();
    let levels = numerov_spectrum(0, &well, m, Centrifugal::Exact, &grid, (lo, -1e-9), 0).unwrap();
    assert!(levels[0].converged);
    levels[0].energy
}

fn hulthen_two_route() -> Outcome {
    let m = MassParams::new(1.0).unwrap();
    let mut worst = rel(hulthen_numerov(4.0, 1.0, &m), -2.25);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut sampled = 0;
    while sampled < 10 {
        let v0 = rng.gen_range(1.0..10.0);
        let delta = rng.gen_range(0.3..1.5);
        let level = hulthen_energy(0, v0, delta, 1.0, &m).unwrap();
        if !level.is_bound || level.energy > -0.05 {
            continue;
        }
        sampled += 1;
        worst = worst.max(rel(hulthen_numerov(v0, delta, &m), level.energy));
    }
    outcome(worst < 1e-5, format!("V0=4, delta=1 plus 10 sampled pairs, max relative deviation {worst:.2e}"))
}

/// Ground state of the finite square well from `k cot(kR) = -κ`, by
/// bisection on the first branch `kR ∈ (π/2, π)`.
fn square_well_oracle(v0: f64, radius: f64, c: f64) -> f64 {
    let f = |e: f64| {
        let k = (c * (e + v0)).sqrt();
        let kappa = (-c * e).sqrt();
        k / (k * radius).tan() + kappa
    };
    let e_of = |kr: f64| (kr / radius).powi(2) / c - v0;
    let (mut a, mut b) = (e_of(std::f64::consts::FRAC_PI_2 + 1e-12), e_of(std::f64::consts::PI - 1e-12).min(-1e-14));
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if f(mid).signum() == f(a).signum() {
            a = mid;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

fn numerov_integrity() -> Outcome {
    let m = MassParams::new(1.0).unwrap();
    let well = SquareWell::new(1.0, 10.0).unwrap();
    let e: Vec<f64> = [0.1, 0.05, 0.025]
        .iter()
        .map(|&h| {
            let grid = RadialGrid::half_line(40.0, h).unwrap();
            numerov_spectrum(0, &well, &m, Centrifugal::Exact, &grid, (-0.999999, -1e-6), 0).unwrap()[0].energy
        })
        .collect();
    let ratio = (e[0] - e[1]) / (e[1] - e[2]);
    let oracle = square_well_oracle(1.0, 10.0, 1.0);
    let oracle_dev = rel(e[2], oracle);

    let mut below = Vec::new();
    let mut disorder = Vec::new();
    let mut levels_seen = 0;
    for a0 in [40, 56] {
        let (p, mass) = nuclear(a0);
        let d = pekeris_coefficients(&p).unwrap();
        let h = 0.01;
        let grid = RadialGrid::half_line(((p.radius() + 40.0) / h).ceil() * h, h).unwrap();
        let well = DwsWell(p);
        for l in 0..=8 {
            for (label, cent) in [
                ("exact", Centrifugal::Exact),
                ("pekeris", Centrifugal::Pekeris { params: p, coeffs: d }),
            ] {
                // minimum of V + barrier/k over the grid, r > 0
                let floor = (1..=grid.steps())
                    .map(|i| {
                        let r = grid.r(i);
                        let b = match cent {
                            Centrifugal::Exact => centrifugal_exact(r, l).unwrap(),
                            Centrifugal::Pekeris { .. } => centrifugal_pekeris(r, l, &p, &d),
                        };
                        well.value(r) + b / mass.two_mu_over_hbar2()
                    })
                    .fold(f64::INFINITY, f64::min);
                let inf = well.infimum(0.0);
                let levels =
                    numerov_spectrum(l, &well, &mass, cent, &grid, (inf + 1e-9 * inf.abs(), -1e-9), 10).unwrap();
                levels_seen += levels.len();
                for s in &levels {
                    if s.energy <= floor {
                        below.push(format!("A0={a0} l={l} {label} E={}", s.energy));
                    }
                }
                for w in levels.windows(2) {
                    if !(w[1].node_count > w[0].node_count && w[1].energy > w[0].energy) {
                        disorder.push(format!("A0={a0} l={l} {label}"));
                    }
                }
            }
        }
    }
    let pass = (12.0..=20.0).contains(&ratio) && oracle_dev < 1e-6 && below.is_empty() && disorder.is_empty();
    outcome(
        pass,
        format!(
            "square-well Richardson ratio {ratio:.2}, h=0.025 vs transcendental root {oracle_dev:.1e}; {levels_seen} dWS levels, {} below the operator minimum, {} out of order",
            below.len(),
            disorder.len()
        ),
    )
}

fn figure_trend() -> Outcome {
    let mut violations = 0;
    let sets = [
        (PotentialParams::nuclear_defaults(40).unwrap(), MassParams::nuclear_default()),
        (PotentialParams::nuclear_defaults(56).unwrap(), MassParams::nuclear_default()),
        (PotentialParams::nuclear_defaults(40).unwrap(), MassParams::natural(1.0).unwrap()),
    ];
    for (base, m) in sets {
        let mut prev = f64::NEG_INFINITY;
        for i in 0..200 {
            let q = 0.3 + 2.7 * f64::from(i) / 199.0;
            let p = base.with_q(q).unwrap();
            let d = pekeris_coefficients(&p).unwrap();
            let e = energy(QuantumNumbers::new(0, 0), &p, &m, &d).unwrap().energy;
            if !(e > prev) {
                violations += 1;
            }
            prev = e;
        }
    }
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("figure_trend_q.csv");
    let (code, _) = run_dws(&[
        "scan", "--param", "q", "--from", "0.3", "--to", "3", "--steps", "200", "--l", "1-4", "--out",
        path.to_str().unwrap(),
    ]);
    outcome(
        violations == 0 && code == 0,
        format!(
            "l=0 strictly increasing in q on 3 parameter sets x 200 points ({violations} violations); l=1..4 trends written to {}",
            path.display()
        ),
    )
}

fn table_report() -> Outcome {
    let (code, out) = run_dws(&["table-report"]);
    let text = String::from_utf8(out).unwrap();
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().unwrap_or_default();
    let expected_header = "n,l,A0,E_ref,E_closed_form,E_numerov_exact,dev_cf,dev_num";
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    let entries = reference_entries();
    let mut missing = 0;
    let mut numerov_na = 0;
    for (e, r) in entries.iter().zip(&rows) {
        let key = [e.n.to_string(), e.l.to_string(), e.a0.to_string()];
        if r.len() != 8 || r[..3] != key.iter().map(String::as_str).collect::<Vec<_>>()[..] || r[4] == "NA" || r[6] == "NA" {
            missing += 1;
        }
        if r.get(5) == Some(&"NA") {
            numerov_na += 1;
        }
    }
    let pass = code == 0 && header == expected_header && rows.len() == entries.len() && missing == 0;
    outcome(
        pass,
        format!(
            "{} of {} reference rows emitted (the published table holds {} numeric entries), {missing} incomplete, {numerov_na} Numerov cells NA (no such bound level)",
            rows.len(),
            entries.len(),
            entries.len()
        ),
    )
}

/// Term-by-term sum with every Pochhammer ratio formed from scratch.
fn brute_2f1(n: u32, b: f64, c: f64, w: f64) -> f64 {
    (0..=n)
        .map(|k| {
            let mut t = 1.0;
            for j in 0..k {
                let j = f64::from(j);
                t *= (j - f64::from(n)) * (b + j) / ((c + j) * (j + 1.0));
            }
            t * w.powi(k as i32)
        })
        .sum()
}

fn wavefunctions() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst_2f1: f64 = 0.0;
    for _ in 0..100 {
        let n = rng.gen_range(0..=10);
        let b = rng.gen_range(0.5..20.0);
        let c = rng.gen_range(0.5..12.0);
        let w = -rng.gen_range(0.0..5.0);
        worst_2f1 = worst_2f1.max(rel(gauss_2f1_terminating(n, b, c, w).unwrap(), brute_2f1(n, b, c, w)));
    }

    let mut worst_norm: f64 = 0.0;
    let mut normalized = 0;
    for a0 in [40, 56] {
        let (p, m) = nuclear(a0);
        let d = pekeris_coefficients(&p).unwrap();
        for n in 0..=2 {
            for l in 0..=2 {
                let level = energy(QuantumNumbers::new(n, l), &p, &m, &d).unwrap();
                let Ok(wf) = normalize(&level, &p, 1e-10) else { continue };
                normalized += 1;
                // independent composite Simpson on a fine grid
                let steps = 20_000;
                let h = wf.r_max / steps as f64;
                let f = |i: usize| wf.value(h * i as f64).unwrap().powi(2);
                let mut s = f(0) + f(steps);
                for i in 1..steps {
                    s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i);
                }
                worst_norm = worst_norm.max((s * h / 3.0 - 1.0).abs());
            }
        }
    }

    let mut worst_var: f64 = 0.0;
    for _ in 0..10 {
        let alpha = rng.gen_range(0.5..6.0);
        let gamma = rng.gen_range(1.0..3.0);
        let q = rng.gen_range(0.3..2.0);
        let n = rng.gen_range(0..=6);
        let gp = GeneralFormParams::dws(alpha, gamma, q).unwrap();
        let ratios: Vec<f64> = (0..20)
            .map(|i| {
                let z = 0.05 + 0.25 * f64::from(i);
                general_form_solution(n, &gp, z).unwrap() / dws_polynomial(n, alpha, gamma, q, z).unwrap()
            })
            .collect();
        let mean = ratios.iter().sum::<f64>() / 20.0;
        let var = ratios.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / 20.0;
        worst_var = worst_var.max(var);
    }
    let pass = worst_2f1 < 1e-13 && normalized >= 9 && worst_norm < 1e-6 && worst_var < 1e-20;
    outcome(
        pass,
        format!(
            "2F1 brute-force max deviation {worst_2f1:.1e}; {normalized} states normalized, max |norm-1| {worst_norm:.1e}; general-form ratio variance {worst_var:.1e}"
        ),
    )
}

fn determinism() -> Outcome {
    let commands: [&[&str]; 9] = [
        &["coeffs"],
        &["spectrum"],
        &["spectrum", "--format", "tsv", "--mass-number", "56"],
        &["table-report"],
        &["table-report", "--dump-ref"],
        &["scan"],
        &["aim", "--n", "2", "--l", "1"],
        &["verify"],
        &["wf", "--n", "1", "--l", "1"],
    ];
    let mut differing = Vec::new();
    for args in commands {
        let (c1, o1) = run_dws(args);
        let (c2, o2) = run_dws(args);
        if c1 != 0 || c2 != 0 || o1 != o2 || o1.is_empty() {
            differing.push(args.join(" "));
        }
    }
    outcome(
        differing.is_empty(),
        if differing.is_empty() {
            format!("{} commands, byte-identical across two runs", commands.len())
        } else {
            format!("not reproducible: {}", differing.join("; "))
        },
    )
}

fn main() {
    let criteria: [(u32, &str, Duration, fn() -> Outcome); 10] = [
        (1, "Pekeris matching", Duration::from_secs(1), pekeris_matching),
        (2, "l=0 reduction", Duration::from_secs(1), l0_reduction),
        (3, "quantization self-consistency", Duration::from_secs(1), quantization_self_consistency),
        (4, "AIM / closed-form agreement", Duration::from_secs(30), aim_agreement),
        (5, "Hulthen two-route check", Duration::from_secs(60), hulthen_two_route),
        (6, "Numerov integrity", Duration::from_secs(60), numerov_integrity),
        (7, "figure trend in q", Duration::from_secs(5), figure_trend),
        (8, "reference-table report", Duration::from_secs(120), table_report),
        (9, "wavefunctions", Duration::from_secs(30), wavefunctions),
        (10, "determinism", Duration::from_secs(300), determinism),
    ];
    let mut failed = 0;
    for (id, name, budget, check) in criteria {
        let start = Instant::now();
        let out = check();
        let took = start.elapsed();
        let pass = out.pass && took <= budget;
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {id:>2} {}: {name}: {} ({:.2} s of {} s)",
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            took.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
