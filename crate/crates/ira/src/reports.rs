//! JSON reports emitted by the command-line tool.

use serde::{Deserialize, Serialize};

use ira_core::bounds::{BoundInputs, BoundResult, PuncturingRow};
use ira_core::de::{SuccessReport, ThresholdReport};
use ira_core::ensembles::EnsembleSpec;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSummary {
    pub family: String,
    pub q: usize,
    pub p_design: f64,
    pub epsilon: Option<f64>,
    #[serde(rename = "M")]
    pub max_degree: usize,
}

impl EnsembleSummary {
    pub fn new(spec: &EnsembleSpec) -> Self {
        EnsembleSummary {
            family: spec.family.name().to_string(),
            q: spec.q,
            p_design: spec.p,
            epsilon: spec.epsilon,
            max_degree: spec.max_degree,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdJson {
    pub threshold: f64,
    pub tol: f64,
    pub non_monotone: bool,
    pub violations: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeReport {
    pub ensemble: EnsembleSummary,
    pub p: f64,
    pub grid_size: usize,
    pub success: bool,
    pub margin_min: f64,
    /// Absent when the margin is not positive.
    pub log_margin_min: Option<f64>,
    pub argmin_x: f64,
    pub rhs_at_one: f64,
    pub points: usize,
    pub threshold: Option<ThresholdJson>,
}

impl DeReport {
    pub fn new(ensemble: EnsembleSummary, p: f64, grid_size: usize, s: &SuccessReport) -> Self {
        DeReport {
            ensemble,
            p,
            grid_size,
            success: s.success,
            margin_min: s.margin_min,
            log_margin_min: s.log_margin_min.is_finite().then_some(s.log_margin_min),
            argmin_x: s.argmin_x,
            rhs_at_one: s.rhs_at_one,
            points: s.points,
            threshold: None,
        }
    }

    pub fn with_threshold(mut self, t: &ThresholdReport, tol: f64) -> Self {
        self.threshold = Some(ThresholdJson {
            threshold: t.threshold,
            tol,
            non_monotone: t.non_monotone,
            violations: t.violations.clone(),
        });
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundInputsJson {
    pub channel: String,
    pub parameter: f64,
    pub p_pct: f64,
    pub epsilon: f64,
    pub l_min: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    /// `bec` or `mbios`.
    pub bound_kind: String,
    pub inputs: BoundInputsJson,
    pub bound: f64,
    pub warnings: Vec<String>,
}

impl BoundReport {
    pub fn new(kind: &str, inputs: &BoundInputs, result: &BoundResult) -> Self {
        BoundReport {
            bound_kind: kind.to_string(),
            inputs: BoundInputsJson {
                channel: inputs.channel.name().to_string(),
                parameter: inputs.channel.parameter(),
                p_pct: inputs.p_pct,
                epsilon: inputs.epsilon,
                l_min: inputs.l_min,
            },
            bound: result.value,
            warnings: result.warnings.iter().map(|w| w.message().to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PuncturingJson {
    pub epsilon: f64,
    pub p_pct: Option<f64>,
    /// `(1 - P_pct) / ε`; bounded when the puncturing rate is `1 - O(ε)`.
    pub gap_over_epsilon: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PuncturingReport {
    pub p: f64,
    pub l_min: u32,
    pub budget: f64,
    /// `(p / (1 - p)) l_min`, the bound at full puncturing.
    pub limit: f64,
    pub rows: Vec<PuncturingJson>,
}

impl PuncturingReport {
    pub fn new(p: f64, l_min: u32, budget: f64, rows: &[PuncturingRow]) -> Self {
        PuncturingReport {
            p,
            l_min,
            budget,
            limit: p / (1.0 - p) * l_min as f64,
            rows: rows
                .iter()
                .map(|r| PuncturingJson {
                    epsilon: r.epsilon,
                    p_pct: r.p_pct,
                    gap_over_epsilon: r.p_pct.map(|x| (1.0 - x) / r.epsilon),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateReport {
    pub ensemble: EnsembleSummary,
    pub design_rate: f64,
    pub untruncated_rate: Option<f64>,
    pub effective_epsilon: f64,
    pub pilot_edge_fraction: f64,
    pub mean_info_degree: f64,
    pub complexity: f64,
    pub complexity_bound: Option<f64>,
    pub conjecture: bool,
}

impl RateReport {
    pub fn new(spec: &EnsembleSpec) -> Self {
        RateReport {
            ensemble: EnsembleSummary::new(spec),
            design_rate: spec.design_rate(),
            untruncated_rate: spec.untruncated_rate(),
            effective_epsilon: spec.effective_epsilon(),
            pilot_edge_fraction: spec.pilot_edge_fraction,
            mean_info_degree: spec.mean_info_degree(),
            complexity: spec.complexity(),
            complexity_bound: spec.complexity_bound(),
            conjecture: spec.conjecture,
        }
    }
}

/// Bit vectors as strings of `0` and `1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodewordReport {
    pub info: String,
    pub parity: String,
    pub transmitted: String,
}

pub fn bits_to_string(bits: &[u8]) -> String {
    bits.iter().map(|&b| if b == 0 { '0' } else { '1' }).collect()
}

pub fn bits_from_str(s: &str) -> Result<Vec<u8>, String> {
    s.trim()
        .chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(format!("`{c}` is not a bit")),
        })
        .collect()
}
