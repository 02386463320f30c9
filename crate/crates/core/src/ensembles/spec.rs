//! Complete ensemble recipes.

use super::bit_regular::{bit_regular_rho, truncate_check_dd, truncate_check_dd_at};
use super::check_regular::{check_regular_lambda, truncate_bit_dd, truncate_bit_dd_at};
use super::ldpc::ldpc_baseline;
use super::scan::conjecture_region;
use super::{DegreeDistribution, Side};
use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

/// Largest `p` of the proven bit-regular region at `q = 3`.
pub const BIT_REGULAR_PROVEN_P: f64 = 1.0 / 13.0;
/// Largest `p` of the proven check-regular region.
pub const CHECK_REGULAR_PROVEN_P: f64 = 0.95;

const REGION_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Every information bit has degree `q`.
    BitRegular,
    /// Every check has three information edges; bits above `M` become pilots.
    CheckRegular,
    /// Check-regular LDPC baseline with check degree `d`.
    Ldpc,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::BitRegular => "bit-regular",
            Family::CheckRegular => "check-regular",
            Family::Ldpc => "ldpc",
        }
    }

    pub fn from_name(name: &str) -> Option<Family> {
        match name {
            "bit-regular" => Some(Family::BitRegular),
            "check-regular" => Some(Family::CheckRegular),
            "ldpc" => Some(Family::Ldpc),
            _ => None,
        }
    }
}

/// How the infinite distribution is cut.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Truncation {
    /// Minimal `M(ε)` for the capacity gap `ε`.
    Epsilon(f64),
    /// Fixed maximum degree.
    MaxDegree(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleOptions {
    /// Number of series coefficients computed.
    pub order: usize,
    /// Admit parameters covered only by the non-negativity conjectures.
    pub conjecture: bool,
    /// An `ε`-truncation whose tail does not close at `order` doubles the
    /// order up to this limit before giving up.
    pub max_order: usize,
}

impl Default for EnsembleOptions {
    fn default() -> Self {
        EnsembleOptions { order: 4096, conjecture: false, max_order: 1 << 15 }
    }
}

/// One ensemble: family parameters and its truncated degree distributions.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleSpec {
    pub family: Family,
    /// Repetition degree (bit-regular), check degree (LDPC), or 3.
    pub q: usize,
    /// Design erasure probability.
    pub p: f64,
    pub epsilon: Option<f64>,
    /// Truncation degree `M`.
    pub max_degree: usize,
    pub lambda: DegreeDistribution,
    pub rho: DegreeDistribution,
    /// Edge fraction of `λ` above `M` (pilot bits); zero for other families.
    pub pilot_edge_fraction: f64,
    /// Parameters lie outside the proven region but inside a conjectured one.
    pub conjecture: bool,
    /// Untruncated `ρ` (bit-regular) or `λ` (check-regular), when available.
    pub source: Option<TruncatedSeries>,
}

impl EnsembleSpec {
    pub fn bit_regular(q: usize, p: f64, truncation: Truncation, opts: EnsembleOptions) -> Result<Self> {
        if q < 3 {
            return Err(Error::InvalidParameter("repetition degree q must be at least 3"));
        }
        let conjecture = if q == 3 {
            if p > BIT_REGULAR_PROVEN_P + REGION_SLACK {
                return Err(Error::OutsideProvenRegion { family: "bit-regular", p });
            }
            false
        } else {
            if !opts.conjecture || p > conjecture_region(q)? + REGION_SLACK {
                return Err(Error::OutsideProvenRegion { family: "bit-regular", p });
            }
            true
        };
        let (rho, cut, epsilon) = match truncation {
            Truncation::Epsilon(e) => {
                let (rho, cut) = grow_order(opts, |n| {
                    let rho = bit_regular_rho(q, p, n)?;
                    let cut = truncate_check_dd(&rho, q, p, e)?;
                    Ok((rho, cut))
                })?;
                (rho, cut, Some(e))
            }
            Truncation::MaxDegree(m) => {
                let rho = bit_regular_rho(q, p, opts.order.max(m))?;
                let cut = truncate_check_dd_at(&rho, m)?;
                (rho, cut, None)
            }
        };
        Ok(EnsembleSpec {
            family: Family::BitRegular,
            q,
            p,
            epsilon,
            max_degree: cut.max_degree,
            lambda: DegreeDistribution::regular(Side::Bit, q),
            rho: cut.distribution,
            pilot_edge_fraction: 0.0,
            conjecture,
            source: Some(rho),
        })
    }

    pub fn check_regular(p: f64, truncation: Truncation, opts: EnsembleOptions) -> Result<Self> {
        let conjecture = p > CHECK_REGULAR_PROVEN_P + REGION_SLACK;
        if conjecture && !opts.conjecture {
            return Err(Error::OutsideProvenRegion { family: "check-regular", p });
        }
        let (lambda, cut, epsilon) = match truncation {
            Truncation::Epsilon(e) => {
                let (lambda, cut) = grow_order(opts, |n| {
                    let lambda = check_regular_lambda(p, n)?;
                    let cut = truncate_bit_dd(&lambda, p, e)?;
                    Ok((lambda, cut))
                })?;
                (lambda, cut, Some(e))
            }
            Truncation::MaxDegree(m) => {
                let lambda = check_regular_lambda(p, opts.order.max(m))?;
                let cut = truncate_bit_dd_at(&lambda, p, m)?;
                (lambda, cut, None)
            }
        };
        Ok(EnsembleSpec {
            family: Family::CheckRegular,
            q: 3,
            p,
            epsilon,
            max_degree: cut.max_degree,
            lambda: cut.distribution,
            rho: DegreeDistribution::regular(Side::Check, 3),
            pilot_edge_fraction: cut.pilot_edge_fraction,
            conjecture,
            source: Some(lambda),
        })
    }

    /// Check-regular ensemble with maximum bit degree `max_degree` whose
    /// design `p` is chosen by bisection so the design rate equals `rate`.
    pub fn check_regular_for_rate(rate: f64, max_degree: usize, opts: EnsembleOptions) -> Result<Self> {
        if !(rate > 0.0 && rate < 1.0) || max_degree < 2 {
            return Err(Error::InvalidParameter("rate must lie in (0, 1) and M >= 2"));
        }
        let rate_at = |p: f64| -> Result<f64> {
            let lambda = check_regular_lambda(p, max_degree)?;
            let partial: f64 = lambda.coeffs().iter().enumerate().map(|(i, c)| c / (i + 1) as f64).sum();
            Ok(3.0 * partial)
        };
        let (mut lo, mut hi) = (0.0, CHECK_REGULAR_PROVEN_P);
        if rate_at(lo)? < rate || rate_at(hi)? > rate {
            return Err(Error::InvalidParameter("rate not reachable at this maximum degree"));
        }
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if rate_at(mid)? >= rate {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Self::check_regular(lo, Truncation::MaxDegree(max_degree), opts)
    }

    /// LDPC baseline; `max_degree = None` picks the rate-1/2 default.
    pub fn ldpc(d: usize, max_degree: Option<usize>, opts: EnsembleOptions) -> Result<Self> {
        let b = ldpc_baseline(d, max_degree, opts.order)?;
        let p = 1.0 - b.design_rate();
        Ok(EnsembleSpec {
            family: Family::Ldpc,
            q: d,
            p,
            epsilon: None,
            max_degree: b.max_degree,
            lambda: b.lambda,
            rho: b.rho,
            pilot_edge_fraction: 0.0,
            conjecture: false,
            source: None,
        })
    }

    /// Rate of the truncated ensemble. For the check-regular family the pilot
    /// bits carry no information, which scales the rate by the retained mass.
    pub fn design_rate(&self) -> f64 {
        match self.family {
            Family::Ldpc => 1.0 - self.rho.integral() / self.lambda.integral(),
            _ => (1.0 - self.pilot_edge_fraction) * self.lambda.integral() / self.rho.integral(),
        }
    }

    /// Rate of the untruncated pair, from the stored series.
    pub fn untruncated_rate(&self) -> Option<f64> {
        let source = self.source.as_ref()?;
        let integral = DegreeDistribution::from_series(Side::Bit, source).integral();
        match self.family {
            Family::BitRegular => Some(1.0 / (self.q as f64 * integral)),
            Family::CheckRegular => Some(3.0 * integral),
            Family::Ldpc => None,
        }
    }

    /// Average information-node degree of the graph actually used.
    pub fn mean_info_degree(&self) -> f64 {
        1.0 / self.lambda.integral()
    }

    /// Predicted edges per information bit, accumulator edges included.
    pub fn complexity(&self) -> f64 {
        match self.family {
            Family::Ldpc => self.mean_info_degree() / self.design_rate(),
            _ => self.mean_info_degree() + 2.0 / self.design_rate(),
        }
    }

    /// Gap to capacity: the given `ε`, or `1 - rate / (1 - p)` when the
    /// truncation degree was fixed directly.
    pub fn effective_epsilon(&self) -> f64 {
        self.epsilon.unwrap_or_else(|| 1.0 - self.design_rate() / (1.0 - self.p))
    }

    /// Upper bound on the complexity promised for the IRA families.
    pub fn complexity_bound(&self) -> Option<f64> {
        let scale = (1.0 - self.p) * (1.0 - self.effective_epsilon());
        match self.family {
            Family::BitRegular => Some(self.q as f64 + 2.0 / scale),
            Family::CheckRegular => Some(5.0 / scale),
            Family::Ldpc => None,
        }
    }
}

fn grow_order<T>(opts: EnsembleOptions, mut attempt: impl FnMut(usize) -> Result<T>) -> Result<T> {
    let mut n = opts.order.max(2);
    loop {
        match attempt(n) {
            Err(Error::TruncationOrderTooSmall { .. }) if n < opts.max_order => {
                n = (2 * n).min(opts.max_order);
            }
            other => return other,
        }
    }
}
