//! Acceptance suite. Each criterion prints one `PASS` / `FAIL` line; run with
//! `cargo test -p gtransform --test acceptance -- --nocapture --test-threads=1`
//! to see them all.

use std::f64::consts::{FRAC_PI_2, PI};
use std::time::{Duration, Instant};

use gtransform::bench::{bench_method, compare_ratio, BenchMethod};
use gtransform::check::{run_check, CheckKind};
use gtransform::quad::{g_transform, simpson, GTransformResult, Integrand, IntegrandSpec, QuadratureConfig};
use gtransform::Method;

const SEED: u64 = 20240917;

struct Outcome {
    criterion: &'static str,
    details: Vec<(bool, String)>,
    elapsed: Duration,
    limit: Duration,
}

impl Outcome {
    fn new(criterion: &'static str, limit_ms: u64) -> Self {
        Outcome { criterion, details: Vec::new(), elapsed: Duration::ZERO, limit: Duration::from_millis(limit_ms) }
    }

    fn check(&mut self, ok: bool, detail: String) {
        self.details.push((ok, detail));
    }

    /// Prints the summary line and the sub-checks, then fails the test if
    /// anything did not pass.
    fn finish(mut self, started: Instant) {
        self.elapsed = started.elapsed();
        let in_time = self.elapsed <= self.limit;
        let ok = in_time && self.details.iter().all(|(ok, _)| *ok);
        println!(
            "criterion {}: {} ({:.3} s, limit {:.0} s)",
            self.criterion,
            if ok { "PASS" } else { "FAIL" },
            self.elapsed.as_secs_f64(),
            self.limit.as_secs_f64()
        );
        for (ok, detail) in &self.details {
            println!("    [{}] {detail}", if *ok { "ok" } else { "FAIL" });
        }
        assert!(in_time, "criterion {} exceeded its runtime limit", self.criterion);
        let failed: Vec<&String> = self.details.iter().filter(|(ok, _)| !ok).map(|(_, d)| d).collect();
        assert!(failed.is_empty(), "criterion {} failed: {failed:#?}", self.criterion);
    }
}

fn equivalence(kind: CheckKind, cases: usize, out: &mut Outcome) {
    match run_check(kind, 4, cases, SEED) {
        Ok(s) => out.check(
            s.comparisons > 0,
            format!("{}: {} cases, {} exact comparisons, {} redraws", kind.name(), s.cases, s.comparisons, s.redraws),
        ),
        Err(ce) => out.check(false, ce.to_string()),
    }
}

#[test]
fn criterion_1_exact_engine_equivalence() {
    let started = Instant::now();
    let mut out = Outcome::new("1 (fsqd = rs = direct solve, L = 4, 20 cases)", 5_000);
    equivalence(CheckKind::Engines, 20, &mut out);
    out.finish(started);
}

#[test]
fn criterion_2_shanks_epsilon_identity() {
    let started = Instant::now();
    let mut out = Outcome::new("2 (even epsilon columns = fsqd on differences, length 9, 20 cases)", 2_000);
    equivalence(CheckKind::Epsilon, 20, &mut out);
    out.finish(started);
}

#[test]
fn criterion_3_determinantal_identities() {
    let started = Instant::now();
    let mut out = Outcome::new("3 (q, e and r, s against determinant ratios, L = 4, 10 cases each)", 5_000);
    equivalence(CheckKind::Qd, 10, &mut out);
    equivalence(CheckKind::Rs, 10, &mut out);
    out.finish(started);
}

const XS: [f64; 3] = [0.0, 0.5, 1.0];
const HS: [f64; 3] = [0.5, 1.0, 2.0];

fn kernel_run(integrand: Integrand, x: f64, h: f64, n_max: usize) -> Result<GTransformResult, String> {
    let spec = IntegrandSpec::new(integrand, 0.0);
    g_transform(&spec, x, h, n_max, Method::FsQd, &QuadratureConfig::analytic()).map_err(|e| e.to_string())
}

/// Worst `|G_n(x;h) - 1|` over `points` for each `n` in `orders`; `None`
/// when some entry is not valid.
fn worst_error(
    integrand: &Integrand,
    points: &[(f64, f64)],
    orders: std::ops::RangeInclusive<usize>,
) -> Vec<(usize, Result<f64, String>)> {
    orders
        .clone()
        .map(|n| {
            let mut worst = 0.0f64;
            for &(x, h) in points {
                let res = match kernel_run(integrand.clone(), x, h, *orders.end()) {
                    Ok(r) => r,
                    Err(e) => return (n, Err(format!("x = {x}, h = {h}: {e}"))),
                };
                match res.error(0, n) {
                    Some(e) => worst = worst.max(e),
                    None => {
                        let status = res.table.get(0, n).map_or("absent", |e| e.status().name());
                        return (n, Err(format!("G_{n}({x}; {h}) is {status}")));
                    }
                }
            }
            (n, Ok(worst))
        })
        .collect()
}

#[test]
fn criterion_4_kernel_exactness() {
    let started = Instant::now();
    let mut out = Outcome::new("4 (kernel exactness for exp_decay and t_exp)", 1_000);
    let grid: Vec<(f64, f64)> = XS.iter().flat_map(|&x| HS.iter().map(move |&h| (x, h))).collect();

    for (n, worst) in worst_error(&Integrand::ExpDecay, &grid, 1..=3) {
        match worst {
            Ok(e) => out.check(e <= 1e-12, format!("exp_decay n = {n}: max |G_n - 1| = {e:.3e} over 9 points (tol 1e-12)")),
            Err(e) => out.check(false, format!("exp_decay n = {n}: {e}")),
        }
    }

    // t e^{-t} vanishes at t = 0, so x = 0 is not an admissible starting node.
    let t_grid: Vec<(f64, f64)> = grid.iter().copied().filter(|&(x, _)| x > 0.0).chain([(1.0, 0.7)]).collect();
    for (n, worst) in worst_error(&Integrand::TExp, &t_grid, 2..=4) {
        match worst {
            Ok(e) => out.check(
                e <= 1e-10,
                format!("t_exp n = {n}: max |G_n - 1| = {e:.3e} over {} points (tol 1e-10)", t_grid.len()),
            ),
            Err(e) => out.check(false, format!("t_exp n = {n}: {e}")),
        }
    }
    let mut least = f64::INFINITY;
    let mut problem = None;
    for &(x, h) in &t_grid {
        match kernel_run(Integrand::TExp, x, h, 1).map(|r| r.error(0, 1)) {
            Ok(Some(e)) => least = least.min(e),
            Ok(None) => problem = Some(format!("G_1({x}; {h}) not valid")),
            Err(e) => problem = Some(e),
        }
    }
    match problem {
        None => out.check(least >= 1e-3, format!("t_exp n = 1: min |G_1 - 1| = {least:.3e} (must be >= 1e-3)")),
        Some(p) => out.check(false, format!("t_exp n = 1: {p}")),
    }
    out.finish(started);
}

fn within(value: f64, target: f64, rel: f64) -> bool {
    (value - target).abs() <= rel * target
}

#[test]
fn criterion_5_operation_counts() {
    let started = Instant::now();
    let mut out = Outcome::new("5 (normalized operation counts at L = 100, within 10%)", 2_000);
    let targets: [(BenchMethod, Option<f64>, Option<f64>, f64); 4] = [
        (BenchMethod::Fsqd, Some(1.0), Some(3.0), 2.5),
        (BenchMethod::FsqdDiag, None, None, 2.0),
        (BenchMethod::Rs, Some(3.0), Some(3.0), 2.5),
        (BenchMethod::Eps, Some(0.0), Some(4.0), 2.0),
    ];
    for (method, mul, add, div) in targets {
        let r = bench_method(method, 100, SEED).expect("L = 100 is admissible");
        out.check(r.valid, format!("{method}: run free of breakdown"));
        let nm = r.normalized;
        if let Some(t) = mul {
            let ok = if t == 0.0 { r.counts.multiplications == 0 } else { within(nm.mul, t, 0.1) };
            out.check(ok, format!("{method}: mul/L^2 = {:.4} (target {t})", nm.mul));
        }
        if let Some(t) = add {
            out.check(within(nm.add, t, 0.1), format!("{method}: add/L^2 = {:.4} (target {t})", nm.add));
        }
        out.check(within(nm.div, div, 0.1), format!("{method}: div/L^2 = {:.4} (target {div})", nm.div));
    }
    out.finish(started);
}

#[test]
fn criterion_6_rs_costs_about_thirty_percent_more() {
    let started = Instant::now();
    let mut out = Outcome::new("6 (total ops rs / fsqd at L = 100 in [1.20, 1.40])", 1_000);
    let ratio = compare_ratio(100, SEED).expect("L = 100 is admissible");
    out.check((1.20..=1.40).contains(&ratio), format!("ratio = {ratio:.4}"));
    out.finish(started);
}

/// `∫_0^∞ sin(t)/t dt` as Simpson on `[0, X]` plus the asymptotic expansion
/// of the tail `∫_X^∞`.
fn sinc_integral_reference() -> f64 {
    let x_end = 64.0 * PI;
    let panels = 256;
    let width = x_end / panels as f64;
    let sinc = |t: f64| Integrand::Sinc.eval(t).unwrap();
    let body: f64 = (0..panels).map(|p| simpson(sinc, p as f64 * width, (p + 1) as f64 * width, 256)).sum();
    let (s, c) = x_end.sin_cos();
    let mut cos_series = 0.0;
    let mut sin_series = 0.0;
    let mut term = 1.0 / x_end;
    for k in 0..6 {
        // term = (2k)! / X^{2k+1}
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        cos_series += sign * term;
        sin_series += sign * term * (2 * k + 1) as f64 / x_end;
        term *= ((2 * k + 1) * (2 * k + 2)) as f64 / (x_end * x_end);
    }
    body + c * cos_series + s * sin_series
}

#[test]
fn criterion_7_sinc_integral() {
    let started = Instant::now();
    let mut out = Outcome::new("7 (sinc: |G_10(0;1) - I| <= 0.01 |G_1(0;1) - I|)", 1_000);
    let reference = sinc_integral_reference();
    out.check((reference - FRAC_PI_2).abs() < 1e-10, format!("quadrature reference {reference:.15} vs pi/2"));
    let spec = IntegrandSpec { integrand: Integrand::Sinc, lower: 0.0, reference: Some(reference) };
    match g_transform(&spec, 0.0, 1.0, 10, Method::FsQd, &QuadratureConfig::default()) {
        Ok(res) => match (res.error(0, 1), res.error(0, 10)) {
            (Some(e1), Some(e10)) => {
                out.check(e10 <= 0.01 * e1, format!("|G_1 - I| = {e1:.3e}, |G_10 - I| = {e10:.3e}, ratio {:.3e}", e10 / e1))
            }
            other => out.check(false, format!("G_1 or G_10 not valid: {other:?}")),
        },
        Err(e) => out.check(false, e.to_string()),
    }
    out.finish(started);
}

#[test]
fn criterion_8_simpson_order() {
    let started = Instant::now();
    let mut out = Outcome::new("8 (Simpson panel error shrinks >= 8x per doubling)", 1_000);
    let exact = Integrand::ExpDecay.closed_form(0.0, 1.0).unwrap();
    let errors: Vec<(usize, f64)> = [4, 8, 16, 32]
        .into_iter()
        .map(|m| (m, (simpson(|t| (-t).exp(), 0.0, 1.0, m) - exact).abs()))
        .collect();
    for w in errors.windows(2) {
        let factor = w[0].1 / w[1].1;
        out.check(
            factor >= 8.0,
            format!("m = {} -> {}: error {:.3e} -> {:.3e}, factor {factor:.2}", w[0].0, w[1].0, w[0].1, w[1].1),
        );
    }
    out.finish(started);
}
