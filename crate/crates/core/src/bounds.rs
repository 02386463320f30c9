//! Lower bounds on the decoding complexity of codes whose information bits
//! are randomly punctured.

use alloc::vec::Vec;

use crate::channel::ChannelModel;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundInputs {
    pub channel: ChannelModel,
    /// Fraction of information bits not transmitted.
    pub p_pct: f64,
    /// Multiplicative gap to capacity.
    pub epsilon: f64,
    /// Minimum number of code-bit edges at a check.
    pub l_min: u32,
}

/// Why a bound degraded to its trivial value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundWarning {
    /// `ε ≥ P_eff`: the logarithm is not positive.
    EpsilonAtLeastEffectiveErasure,
    /// The argument of the numerator logarithm is at most one.
    NonPositiveNumerator,
    /// `P_pct = 1`: the denominator diverges and the bound vanishes.
    FullPuncturing,
}

impl BoundWarning {
    pub fn message(self) -> &'static str {
        match self {
            BoundWarning::EpsilonAtLeastEffectiveErasure => "epsilon >= P_eff: bound is trivial",
            BoundWarning::NonPositiveNumerator => "numerator logarithm is not positive: bound is trivial",
            BoundWarning::FullPuncturing => "P_pct = 1: the bound vanishes in the limit",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundResult {
    pub value: f64,
    pub warnings: Vec<BoundWarning>,
}

fn check_common(inputs: &BoundInputs) -> Result<()> {
    inputs.channel.validate()?;
    if !(0.0..=1.0).contains(&inputs.p_pct) {
        return Err(Error::InvalidParameter("puncturing rate must lie in [0, 1]"));
    }
    if !(inputs.epsilon > 0.0 && inputs.epsilon < 1.0) {
        return Err(Error::InvalidParameter("epsilon must lie in (0, 1)"));
    }
    if inputs.l_min == 0 {
        return Err(Error::InvalidParameter("l_min must be at least 1"));
    }
    Ok(())
}

/// `P_eff = 1 - (1 - P_pct)(1 - p)`.
pub fn effective_erasure(p: f64, p_pct: f64) -> f64 {
    1.0 - (1.0 - p_pct) * (1.0 - p)
}

/// BEC bound on the complexity per information bit:
/// `(p/(1-p)) [ln(P_eff/ε) / ln(1/(1-P_eff)) + l_min]`.
pub fn bec_bound(inputs: &BoundInputs) -> Result<BoundResult> {
    check_common(inputs)?;
    let p = match inputs.channel {
        ChannelModel::Bec(p) if p > 0.0 && p < 1.0 => p,
        ChannelModel::Bec(_) => return Err(Error::InvalidParameter("erasure probability must lie in (0, 1)")),
        _ => return Err(Error::InvalidParameter("the erasure bound needs a BEC")),
    };
    let scale = p / (1.0 - p);
    let l_min = inputs.l_min as f64;
    if inputs.p_pct == 1.0 {
        return Ok(BoundResult { value: scale * l_min, warnings: Vec::new() });
    }
    let p_eff = effective_erasure(p, inputs.p_pct);
    if inputs.epsilon >= p_eff {
        return Ok(BoundResult { value: 0.0, warnings: alloc::vec![BoundWarning::EpsilonAtLeastEffectiveErasure] });
    }
    let ratio = (p_eff / inputs.epsilon).ln() / -((1.0 - inputs.p_pct) * (1.0 - p)).ln();
    Ok(BoundResult { value: scale * (ratio + l_min), warnings: Vec::new() })
}

/// Bound per iteration for a general MBIOS channel:
/// `((1-C)/(2C)) ln((1/ε)(1-(1-P_pct)C)/(2C ln 2)) / ln(1/((1-P_pct)(1-2w)))`.
pub fn mbios_bound(inputs: &BoundInputs) -> Result<BoundResult> {
    check_common(inputs)?;
    let c = inputs.channel.capacity()?;
    let w = inputs.channel.w()?;
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::InvalidParameter("capacity must lie in (0, 1)"));
    }
    if !(w > 0.0 && w < 0.5) {
        return Err(Error::InvalidParameter("w must lie in (0, 1/2)"));
    }
    if inputs.p_pct == 1.0 {
        return Ok(BoundResult { value: 0.0, warnings: alloc::vec![BoundWarning::FullPuncturing] });
    }
    let arg = (1.0 - (1.0 - inputs.p_pct) * c) / (inputs.epsilon * 2.0 * c * core::f64::consts::LN_2);
    if arg <= 1.0 {
        return Ok(BoundResult { value: 0.0, warnings: alloc::vec![BoundWarning::NonPositiveNumerator] });
    }
    let denom = -((1.0 - inputs.p_pct) * (1.0 - 2.0 * w)).ln();
    Ok(BoundResult { value: (1.0 - c) / (2.0 * c) * arg.ln() / denom, warnings: Vec::new() })
}

/// One row of the puncturing scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PuncturingRow {
    pub epsilon: f64,
    /// Smallest `P_pct` keeping the BEC bound within budget; `None` when even
    /// full puncturing exceeds it.
    pub p_pct: Option<f64>,
}

/// For each `ε`, the smallest puncturing rate at which the BEC bound does not
/// exceed `budget`, by bisection (the bound decreases in `P_pct`).
pub fn necessary_puncturing(epsilons: &[f64], p: f64, l_min: u32, budget: f64) -> Result<Vec<PuncturingRow>> {
    let bound = |p_pct: f64, epsilon: f64| -> Result<f64> {
        let inputs = BoundInputs { channel: ChannelModel::Bec(p), p_pct, epsilon, l_min };
        Ok(bec_bound(&inputs)?.value)
    };
    epsilons
        .iter()
        .map(|&epsilon| {
            if bound(1.0, epsilon)? > budget {
                return Ok(PuncturingRow { epsilon, p_pct: None });
            }
            if bound(0.0, epsilon)? <= budget && epsilon < p {
                return Ok(PuncturingRow { epsilon, p_pct: Some(0.0) });
            }
            let (mut lo, mut hi) = (0.0, 1.0);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid == lo || mid == hi {
                    break;
                }
                let v = bound(mid, epsilon)?;
                // Below ε ≥ P_eff the bound is trivial, so only the regime
                // ε < P_eff can bind.
                if v <= budget && epsilon < effective_erasure(p, mid) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            Ok(PuncturingRow { epsilon, p_pct: Some(hi) })
        })
        .collect()
}
