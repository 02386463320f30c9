//! Check-regular LDPC baseline: `ρ(x) = x^{d-1}` with the bit distribution
//! taken from `1 - (1-x)^{1/(d-1)}`, truncated at `M` and rescaled.

use alloc::vec::Vec;

use super::{DegreeDistribution, Side};
use crate::error::{Error, Result};
use crate::series::binomial_series;

/// Degree distributions of the baseline ensemble.
#[derive(Debug, Clone, PartialEq)]
pub struct LdpcBaseline {
    pub lambda: DegreeDistribution,
    pub rho: DegreeDistribution,
    pub max_degree: usize,
}

impl LdpcBaseline {
    /// `1 - ∫ρ / ∫λ`.
    pub fn design_rate(&self) -> f64 {
        1.0 - self.rho.integral() / self.lambda.integral()
    }
}

/// Builds the baseline. Without an explicit `max_degree`, `M` is the smallest
/// degree at which the design rate drops to one half.
pub fn ldpc_baseline(d: usize, max_degree: Option<usize>, order: usize) -> Result<LdpcBaseline> {
    if d < 3 {
        return Err(Error::InvalidParameter("check degree d must be at least 3"));
    }
    let series = binomial_series(1.0 / (d as f64 - 1.0), order);
    let raw: Vec<f64> = series.coeffs().iter().enumerate().map(|(i, &c)| if i == 0 { 0.0 } else { -c }).collect();
    let rho = DegreeDistribution::regular(Side::Check, d);
    let m = match max_degree {
        Some(m) => {
            if m < 2 || m > order {
                return Err(Error::InvalidParameter("maximum bit degree outside the computed order"));
            }
            m
        }
        None => {
            let rho_int = 1.0 / d as f64;
            let mut mass = 0.0;
            let mut partial = 0.0;
            let mut found = None;
            for n in 2..=order {
                mass += raw[n - 1];
                partial += raw[n - 1] / n as f64;
                if 1.0 - rho_int * mass / partial <= 0.5 {
                    found = Some(n);
                    break;
                }
            }
            found.ok_or(Error::TruncationOrderTooSmall { order, tail: f64::NAN, threshold: 0.5 })?
        }
    };
    let mass: f64 = raw[..m].iter().sum();
    let coeffs = raw[..m].iter().map(|c| c / mass).collect();
    Ok(LdpcBaseline { lambda: DegreeDistribution::new(Side::Bit, coeffs)?, rho, max_degree: m })
}
