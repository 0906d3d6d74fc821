//! Infinite-range integrals `I[f] = ∫_a^∞ f(t) dt` by the G-transformation.
//!
//! With `F(x) = ∫_a^x f`, the samples `A_i = F(x+ih)` and `u_i = f(x+ih)`
//! make `A_n^(j)` of the engines equal to `G_n(x+jh; h)`.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::accel::{run_epsilon, run_fs_qd, run_rs, AccelError, ExtrapolationTable, Method, SequencePair};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("step h must be positive and finite, got {0}")]
    BadStep(f64),
    #[error("x = {x} lies below the lower limit a = {a}")]
    BelowLowerLimit { x: f64, a: f64 },
    #[error("n_max must be at least 1")]
    BadOrder,
    #[error("subdivisions per panel must be even and at least 2, got {0}")]
    BadSubdivisions(usize),
    #[error("f(x + {index}h) = f({t}) is zero; fsqd and rs divide by every sampled f")]
    ZeroIntegrand { index: usize, t: f64 },
    #[error("{what}: need {needed} samples, table has {found}")]
    NotEnoughSamples { what: &'static str, needed: usize, found: usize },
    #[error("unknown integrand `{0}` (expected one of: exp_decay, t_exp, sinc, table)")]
    UnknownIntegrand(String),
    #[error(transparent)]
    Accel(#[from] AccelError),
}

/// User-supplied samples `F(x+ih)` and `f(x+ih)` for the `table` integrand.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SampleTable {
    pub big_f: Vec<f64>,
    pub f: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Integrand {
    /// `e^{-t}`
    ExpDecay,
    /// `t e^{-t}`
    TExp,
    /// `sin(t)/t`, equal to 1 at `t = 0`
    Sinc,
    Table(SampleTable),
}

impl Integrand {
    pub const CATALOG: [&'static str; 4] = ["exp_decay", "t_exp", "sinc", "table"];

    pub fn id(&self) -> &'static str {
        match self {
            Integrand::ExpDecay => "exp_decay",
            Integrand::TExp => "t_exp",
            Integrand::Sinc => "sinc",
            Integrand::Table(_) => "table",
        }
    }

    /// `f(t)`; `None` for tabulated integrands.
    pub fn eval(&self, t: f64) -> Option<f64> {
        match self {
            Integrand::ExpDecay => Some((-t).exp()),
            Integrand::TExp => Some(t * (-t).exp()),
            Integrand::Sinc => Some(if t == 0.0 { 1.0 } else { t.sin() / t }),
            Integrand::Table(_) => None,
        }
    }

    /// Closed-form `∫_a^x f`, where one exists.
    pub fn closed_form(&self, a: f64, x: f64) -> Option<f64> {
        match self {
            Integrand::ExpDecay => Some(if x == a { 0.0 } else { -(-a).exp() * (a - x).exp_m1() }),
            Integrand::TExp => Some((1.0 + a) * (-a).exp() - (1.0 + x) * (-x).exp()),
            _ => None,
        }
    }

    /// `∫_a^∞ f`, where known.
    pub fn reference(&self, a: f64) -> Option<f64> {
        match self {
            Integrand::ExpDecay => Some((-a).exp()),
            Integrand::TExp => Some((1.0 + a) * (-a).exp()),
            Integrand::Sinc => Some(FRAC_PI_2 - sine_integral(a)),
            Integrand::Table(_) => None,
        }
    }
}

impl FromStr for Integrand {
    type Err = QuadError;

    /// Catalog ids; `table` parses to an empty sample table.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exp_decay" => Ok(Integrand::ExpDecay),
            "t_exp" => Ok(Integrand::TExp),
            "sinc" => Ok(Integrand::Sinc),
            "table" => Ok(Integrand::Table(SampleTable::default())),
            other => Err(QuadError::UnknownIntegrand(other.to_string())),
        }
    }
}

impl fmt::Display for Integrand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// `Si(x) = ∫_0^x sin(t)/t dt` by fine composite Simpson on unit panels.
fn sine_integral(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let panels = x.abs().ceil().max(1.0) as usize;
    let width = x / panels as f64;
    (0..panels)
        .map(|p| simpson(|t| Integrand::Sinc.eval(t).unwrap(), p as f64 * width, (p + 1) as f64 * width, 512))
        .sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntegrandSpec {
    pub integrand: Integrand,
    /// Lower limit `a`.
    pub lower: f64,
    /// `I[f]`, when known.
    pub reference: Option<f64>,
}

impl IntegrandSpec {
    /// A catalog integrand with its known reference value attached.
    pub fn new(integrand: Integrand, lower: f64) -> Self {
        let reference = integrand.reference(lower);
        IntegrandSpec { integrand, lower, reference }
    }

    pub fn table(samples: SampleTable, reference: Option<f64>) -> Self {
        IntegrandSpec { integrand: Integrand::Table(samples), lower: 0.0, reference }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Composite Simpson intervals per panel; even, at least 2.
    pub subdivisions: usize,
    /// Use the closed-form `F` when the integrand has one.
    pub analytic: bool,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { subdivisions: 64, analytic: false }
    }
}

impl QuadratureConfig {
    pub fn analytic() -> Self {
        QuadratureConfig { analytic: true, ..Default::default() }
    }

    fn validate(&self) -> Result<(), QuadError> {
        if self.subdivisions < 2 || !self.subdivisions.is_multiple_of(2) {
            return Err(QuadError::BadSubdivisions(self.subdivisions));
        }
        Ok(())
    }
}

/// Composite Simpson rule with `m` (even) intervals on `[lo, hi]`.
pub fn simpson(f: impl Fn(f64) -> f64, lo: f64, hi: f64, m: usize) -> f64 {
    debug_assert!(m >= 2 && m.is_multiple_of(2));
    let h = (hi - lo) / m as f64;
    let mut odd = 0.0;
    let mut even = 0.0;
    for i in 1..m {
        let v = f(lo + i as f64 * h);
        if i % 2 == 1 {
            odd += v;
        } else {
            even += v;
        }
    }
    h / 3.0 * (f(lo) + 4.0 * odd + 2.0 * even + f(hi))
}

fn check_grid(spec: &IntegrandSpec, x: f64, h: f64) -> Result<(), QuadError> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(QuadError::BadStep(h));
    }
    if !matches!(spec.integrand, Integrand::Table(_)) && x < spec.lower {
        return Err(QuadError::BelowLowerLimit { x, a: spec.lower });
    }
    Ok(())
}

/// `F(x), F(x+h), ..., F(x+(count-1)h)`.
///
/// Without a closed form the values are accumulated panel by panel: `[a, x]`
/// first (split into panels no wider than `h`), then each `[x+(i-1)h, x+ih]`
/// once.
pub fn sample_big_f(
    spec: &IntegrandSpec,
    x: f64,
    h: f64,
    count: usize,
    cfg: &QuadratureConfig,
) -> Result<Vec<f64>, QuadError> {
    check_grid(spec, x, h)?;
    cfg.validate()?;
    let integrand = &spec.integrand;
    if let Integrand::Table(t) = integrand {
        if t.big_f.len() < count {
            return Err(QuadError::NotEnoughSamples { what: "F", needed: count, found: t.big_f.len() });
        }
        return Ok(t.big_f[..count].to_vec());
    }
    let a = spec.lower;
    if cfg.analytic {
        if let Some(first) = integrand.closed_form(a, x) {
            let mut out = vec![first];
            out.extend((1..count).map(|i| integrand.closed_form(a, x + i as f64 * h).unwrap()));
            return Ok(out);
        }
    }
    let f = |t: f64| integrand.eval(t).expect("catalog integrand");
    let panels = ((x - a) / h).ceil() as usize;
    let width = if panels > 0 { (x - a) / panels as f64 } else { 0.0 };
    let mut acc = (0..panels)
        .map(|p| simpson(f, a + p as f64 * width, a + (p + 1) as f64 * width, cfg.subdivisions))
        .fold(0.0, |acc, v| acc + v);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        if i > 0 {
            let lo = x + (i - 1) as f64 * h;
            acc += simpson(f, lo, x + i as f64 * h, cfg.subdivisions);
        }
        out.push(acc);
    }
    Ok(out)
}

/// `f(x), f(x+h), ..., f(x+(count-1)h)`; tables may return fewer.
pub fn sample_f(spec: &IntegrandSpec, x: f64, h: f64, count: usize) -> Result<Vec<f64>, QuadError> {
    check_grid(spec, x, h)?;
    Ok(match &spec.integrand {
        Integrand::Table(t) => t.f.iter().take(count).copied().collect(),
        other => (0..count).map(|i| other.eval(x + i as f64 * h).unwrap()).collect(),
    })
}

/// Table of `G_n(x+jh; h)` with the error against `I[f]` when known.
#[derive(Debug, Clone, PartialEq)]
pub struct GTransformResult {
    pub table: ExtrapolationTable<f64>,
    pub x: f64,
    pub h: f64,
    pub reference: Option<f64>,
}

impl GTransformResult {
    /// `|G - I[f]|` at `(j, n)`, when the entry is valid and `I[f]` known.
    pub fn error(&self, j: usize, n: usize) -> Option<f64> {
        Some((self.table.value(j, n)? - self.reference?).abs())
    }

    /// `(j, n, |G - I[f]|)` for every valid entry.
    pub fn errors(&self) -> Vec<(usize, usize, f64)> {
        self.table.iter().filter_map(|(j, n, _)| self.error(j, n).map(|e| (j, n, e))).collect()
    }

    /// `G_n(x; h)` for `n = 0..`, `None` where not valid.
    pub fn diagonal(&self) -> Vec<Option<f64>> {
        self.table.diagonal().into_iter().map(|e| e.value().copied()).collect()
    }

    /// `|G_n(x;h) - G_{n-1}(x;h)|` for `n >= 1`; an error proxy when `I[f]`
    /// is unknown.
    pub fn diagonal_differences(&self) -> Vec<Option<f64>> {
        let d = self.diagonal();
        d.windows(2).map(|w| Some((w[1]? - w[0]?).abs())).collect()
    }
}

/// Runs the G-transformation of order up to `n_max` at `(x, h)`.
///
/// `fsqd` and `rs` use `A_i = F(x+ih)`, `i <= n_max`, and `u_i = f(x+ih)`,
/// `i <= 2 n_max`. `eps` ignores `f` and applies the ε-algorithm to
/// `F(x+ih)`, `i <= 2 n_max` (the Shanks transformation of the partial
/// integrals), so its column `n` is comparable with `G_n`.
pub fn g_transform(
    spec: &IntegrandSpec,
    x: f64,
    h: f64,
    n_max: usize,
    engine: Method,
    cfg: &QuadratureConfig,
) -> Result<GTransformResult, QuadError> {
    if n_max == 0 {
        return Err(QuadError::BadOrder);
    }
    let table = match engine {
        Method::Eps => run_epsilon(&sample_big_f(spec, x, h, 2 * n_max + 1, cfg)?)?,
        Method::FsQd | Method::Rs => {
            let a = sample_big_f(spec, x, h, n_max + 1, cfg)?;
            let u = sample_f(spec, x, h, 2 * n_max + 1)?;
            if let Some(index) = u.iter().position(|&v| v == 0.0) {
                return Err(QuadError::ZeroIntegrand { index, t: x + index as f64 * h });
            }
            let seq = SequencePair::new(a, u)?;
            if engine == Method::FsQd {
                run_fs_qd(&seq, false)?.table
            } else {
                run_rs(&seq)?.1
            }
        }
    };
    Ok(GTransformResult { table, x, h, reference: spec.reference })
}
