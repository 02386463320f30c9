//! Density evolution for non-systematic IRA ensembles on the BEC.
//!
//! Message classes follow the Tanner graph: `x0` information to check, `x1`
//! check to code bit, `x2` code bit to check, `x3` check to information.

use alloc::vec::Vec;

use crate::ensembles::{
    bit_regular_node_at, bit_regular_rho_at, check_regular_lambda_closed_form, edge_to_node,
    DegreeDistribution, EnsembleSpec, Family,
};
use crate::error::{Error, Result};
use crate::series::horner;

/// Erasure probabilities of the four message classes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeState {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl DeState {
    pub const ZERO: DeState = DeState { x0: 0.0, x1: 0.0, x2: 0.0, x3: 0.0 };
    pub const ONE: DeState = DeState { x0: 1.0, x1: 1.0, x2: 1.0, x3: 1.0 };
}

/// Tail of the untruncated bit distribution of a pilot-truncated
/// check-regular pair, `λ_n` for `n > M`.
///
/// At the design erasure probability the untruncated `λ` inverts the
/// fixed-point map `g`, so `x - λ_M(g(x)) = Σ_{n>M} λ_n g(x)^{n-1}` exactly.
/// The sum is evaluated in the log domain; it is positive and far below
/// double-precision resolution of `x` near the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct PilotTail {
    pub design_p: f64,
    /// Degree of `coeffs[0]`.
    pub first_degree: usize,
    pub coeffs: Vec<f64>,
}

impl PilotTail {
    /// The stored coefficients capture the sum to well below double
    /// precision when `y^{last degree} < e^{-69}`.
    pub fn resolves(&self, y: f64) -> bool {
        let last = (self.first_degree + self.coeffs.len()) as f64;
        y > 0.0 && last * y.ln() < -69.0
    }

    /// `ln Σ λ_n y^{n-1}`; `-∞` when the sum vanishes.
    pub fn ln_sum(&self, y: f64) -> f64 {
        if y <= 0.0 {
            return f64::NEG_INFINITY;
        }
        let ly = y.ln();
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0.0)
            .map(|(i, &c)| c.ln() + (self.first_degree + i - 1) as f64 * ly);
        let peak = terms.clone().fold(f64::NEG_INFINITY, f64::max);
        if peak == f64::NEG_INFINITY {
            return peak;
        }
        peak + terms.map(|t| (t - peak).exp()).sum::<f64>().ln()
    }
}

/// Degree-distribution pair in the form density evolution consumes.
#[derive(Debug, Clone, PartialEq)]
pub enum DePair {
    /// Polynomial `λ`, `ρ`, with `R` derived from `ρ`. `λ` may carry total
    /// mass below one (pilot bits contribute erasure-free edges).
    Polynomial {
        lambda: Vec<f64>,
        rho: Vec<f64>,
        node: Vec<f64>,
        tail: Option<PilotTail>,
    },
    /// Untruncated bit-regular pair: `λ = x^{q-1}`, `ρ` in closed form and
    /// `R` by quadrature.
    BitRegularExact { q: usize, p: f64 },
    /// Untruncated check-regular pair: `λ` in closed form, `ρ = x^2`.
    CheckRegularExact { p: f64 },
}

impl DePair {
    pub fn polynomial(lambda: &DegreeDistribution, rho: &DegreeDistribution) -> Self {
        DePair::Polynomial {
            lambda: lambda.coeffs().to_vec(),
            rho: rho.coeffs().to_vec(),
            node: edge_to_node(rho).coeffs().to_vec(),
            tail: None,
        }
    }

    /// The pair a finite graph of `spec` realises. For the check-regular
    /// family the pilot edges are erasure-free, so `λ` keeps its retained
    /// mass `1 - pilot_edge_fraction`.
    pub fn from_spec(spec: &EnsembleSpec) -> Result<Self> {
        match spec.family {
            Family::BitRegular => Ok(DePair::polynomial(&spec.lambda, &spec.rho)),
            Family::CheckRegular => {
                let mass = 1.0 - spec.pilot_edge_fraction;
                let lambda = spec.lambda.coeffs().iter().map(|c| c * mass).collect();
                let tail = spec.source.as_ref().map(|s| PilotTail {
                    design_p: spec.p,
                    first_degree: spec.max_degree + 1,
                    coeffs: s.coeffs()[spec.max_degree.min(s.order())..].to_vec(),
                });
                Ok(DePair::Polynomial {
                    lambda,
                    rho: alloc::vec![0.0, 0.0, 1.0],
                    node: alloc::vec![0.0, 0.0, 1.0],
                    tail,
                })
            }
            Family::Ldpc => Err(Error::InvalidParameter("density evolution covers IRA ensembles only")),
        }
    }

    pub fn lambda(&self, x: f64) -> f64 {
        match self {
            DePair::Polynomial { lambda, .. } => horner(lambda, x),
            DePair::BitRegularExact { q, .. } => x.powi(*q as i32 - 1),
            DePair::CheckRegularExact { p } => {
                if x >= 1.0 {
                    1.0
                } else {
                    check_regular_lambda_closed_form(*p, x.max(0.0)).unwrap_or(f64::NAN)
                }
            }
        }
    }

    pub fn rho(&self, x: f64) -> f64 {
        match self {
            DePair::Polynomial { rho, .. } => horner(rho, x),
            DePair::BitRegularExact { q, p } => bit_regular_rho_at(*q, *p, x),
            DePair::CheckRegularExact { .. } => x * x,
        }
    }

    /// `R(x)`.
    pub fn node(&self, x: f64) -> f64 {
        match self {
            DePair::Polynomial { node, .. } => x * horner(node, x),
            DePair::BitRegularExact { q, p } => bit_regular_node_at(*q, *p, x).unwrap_or(f64::NAN),
            DePair::CheckRegularExact { .. } => x * x * x,
        }
    }

    fn tail(&self) -> Option<&PilotTail> {
        match self {
            DePair::Polynomial { tail, .. } => tail.as_ref(),
            _ => None,
        }
    }
}

/// Channel parameter, pair, and grid settings.
#[derive(Debug, Clone, PartialEq)]
pub struct DeConfig {
    pub p: f64,
    pub pair: DePair,
    pub grid_size: usize,
    pub max_iters: usize,
    pub tol: f64,
}

impl DeConfig {
    pub fn new(pair: DePair, p: f64) -> Self {
        DeConfig { p, pair, grid_size: 10_000, max_iters: 100_000, tol: 1e-10 }
    }

    pub fn with_p(&self, p: f64) -> Self {
        DeConfig { p, ..self.clone() }
    }
}

/// One iteration, updating `x1`, `x2`, `x3`, `x0` in that order.
pub fn de_step(state: DeState, cfg: &DeConfig) -> DeState {
    let pair = &cfg.pair;
    let u = 1.0 - state.x0;
    let x1 = 1.0 - (1.0 - state.x2) * pair.node(u);
    let x2 = cfg.p * x1;
    let x3 = 1.0 - (1.0 - x2) * (1.0 - x2) * pair.rho(u);
    let x0 = pair.lambda(x3);
    DeState { x0: clamp01(x0), x1: clamp01(x1), x2: clamp01(x2), x3: clamp01(x3) }
}

fn clamp01(v: f64) -> f64 {
    v.clamp(0.0, 1.0)
}

/// Outcome of iterating [`de_step`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeRun {
    pub state: DeState,
    pub iterations: usize,
    /// `x0` dropped below `1e-10`.
    pub converged: bool,
}

/// Iterates from `start` until `x0 < 1e-10`, a fixed point, or `max_iters`.
pub fn de_iterate(start: DeState, cfg: &DeConfig) -> DeRun {
    let mut state = start;
    for it in 1..=cfg.max_iters {
        let next = de_step(state, cfg);
        if next.x0 < 1e-10 {
            return DeRun { state: next, iterations: it, converged: true };
        }
        if next == state {
            return DeRun { state: next, iterations: it, converged: false };
        }
        state = next;
    }
    DeRun { state, iterations: cfg.max_iters, converged: false }
}

/// Argument of `λ` in the fixed-point equation.
fn lambda_argument(x: f64, cfg: &DeConfig) -> f64 {
    let u = 1.0 - x;
    let r = (1.0 - cfg.p) / (1.0 - cfg.p * cfg.pair.node(u));
    1.0 - r * r * cfg.pair.rho(u)
}

/// `λ(1 - [(1-p)/(1 - p R(1-x))]^2 ρ(1-x))`.
pub fn de_rhs(x: f64, cfg: &DeConfig) -> f64 {
    cfg.pair.lambda(lambda_argument(x, cfg))
}

/// `x - de_rhs(x)` as `(value, ln value)`; the log is finite only when the
/// margin is positive.
pub fn de_margin(x: f64, cfg: &DeConfig) -> (f64, f64) {
    if let Some(tail) = cfg.pair.tail() {
        let y = lambda_argument(x, cfg);
        if tail.design_p == cfg.p && tail.resolves(y) {
            let ln = tail.ln_sum(y);
            return (ln.exp(), ln);
        }
    }
    let m = x - de_rhs(x, cfg);
    (m, if m > 0.0 { m.ln() } else { f64::NEG_INFINITY })
}

/// Grid check of the success condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuccessReport {
    pub success: bool,
    /// Smallest `x - de_rhs(x)` over the grid.
    pub margin_min: f64,
    /// Natural log of the smallest margin (meaningful when it underflows).
    pub log_margin_min: f64,
    pub argmin_x: f64,
    /// `de_rhs(1)`.
    pub rhs_at_one: f64,
    pub points: usize,
}

/// Checks `de_rhs(x) < x` on `x = k / grid_size`, `k = 1..=grid_size`, plus a
/// ten-fold refinement around every point whose margin is below `10 tol`,
/// and `de_rhs(1) < 1`.
pub fn check_success(cfg: &DeConfig) -> SuccessReport {
    let n = cfg.grid_size.max(2);
    let h = 1.0 / n as f64;
    let mut report = SuccessReport {
        success: true,
        margin_min: f64::INFINITY,
        log_margin_min: f64::INFINITY,
        argmin_x: 1.0,
        rhs_at_one: de_rhs(1.0, cfg),
        points: 0,
    };
    let visit = |x: f64, report: &mut SuccessReport| -> f64 {
        let (m, ln) = de_margin(x, cfg);
        report.points += 1;
        if ln < report.log_margin_min || (ln == f64::NEG_INFINITY && m < report.margin_min) {
            report.log_margin_min = ln;
            report.margin_min = m;
            report.argmin_x = x;
        }
        if !(ln > f64::NEG_INFINITY) {
            report.success = false;
        }
        m
    };
    let mut near = Vec::new();
    for k in 1..=n {
        let x = k as f64 * h;
        let m = visit(x, &mut report);
        if m < 10.0 * cfg.tol {
            near.push(x);
        }
    }
    for x in near {
        for j in 1..10 {
            let xr = x - h + j as f64 * h / 10.0;
            if xr > 0.0 {
                visit(xr, &mut report);
            }
        }
    }
    if !(report.rhs_at_one < 1.0) {
        report.success = false;
    }
    report
}

/// Largest `sup |de_rhs(x) - x|` over `points` equally spaced `x ∈ [0, hi]`.
pub fn equality_residual(cfg: &DeConfig, points: usize, hi: f64) -> f64 {
    (0..points)
        .map(|k| {
            let x = hi * k as f64 / (points - 1).max(1) as f64;
            (de_rhs(x, cfg) - x).abs()
        })
        .fold(0.0, f64::max)
}

/// Bisection result over the channel erasure probability.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdReport {
    pub threshold: f64,
    /// A coarse scan found success and failure interleaved in `p`.
    pub non_monotone: bool,
    /// Channel values of the coarse scan where success followed a failure.
    pub violations: Vec<f64>,
}

/// Largest channel `p` (within `tol`) at which [`check_success`] holds.
pub fn de_threshold(cfg: &DeConfig, tol: f64) -> Result<ThresholdReport> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("threshold tolerance must be positive"));
    }
    if !check_success(&cfg.with_p(0.0)).success {
        return Err(Error::NoSuccessRegion);
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if check_success(&cfg.with_p(mid)).success {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut violations = Vec::new();
    let mut failed = false;
    let coarse = cfg.grid_size.min(1000);
    for k in 1..20 {
        let p = k as f64 / 20.0;
        let ok = check_success(&DeConfig { grid_size: coarse, ..cfg.with_p(p) }).success;
        if ok && failed {
            violations.push(p);
        }
        failed |= !ok;
    }
    Ok(ThresholdReport { threshold: lo, non_monotone: !violations.is_empty(), violations })
}
