//! Degree distributions of the capacity-achieving IRA ensembles and of the
//! check-regular LDPC baseline.
//!
//! Edge-perspective distributions are stored degree-first: entry `i` of
//! [`DegreeDistribution::coeffs`] is the fraction of edges attached to nodes of
//! degree `i + 1`, which is also the coefficient of `x^i` in `λ(x)` or `ρ(x)`.
//! For IRA check nodes the degree counts only edges to information nodes; the
//! two accumulator edges of every check are not part of `ρ`.

mod bit_regular;
mod check_regular;
mod ldpc;
mod scan;
mod spec;

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::series::{horner, TruncatedSeries};

pub use bit_regular::{
    bit_regular_node_at, bit_regular_node_closed_form, bit_regular_rho, bit_regular_rho_at,
    truncate_check_dd, CheckTruncation,
};
pub use check_regular::{
    check_regular_de_map, check_regular_de_map_at, check_regular_lambda,
    check_regular_lambda_closed_form, truncate_bit_dd, truncate_bit_dd_at, BitTruncation,
    CheckRegularDeMap,
};
pub use ldpc::{ldpc_baseline, LdpcBaseline};
pub use scan::{conjecture_region, fit_decay_exponent, nonneg_scan, NonNegReport, DEAD_BAND};
pub use spec::{
    EnsembleOptions, EnsembleSpec, Family, Truncation, BIT_REGULAR_PROVEN_P, CHECK_REGULAR_PROVEN_P,
};

/// Which side of the Tanner graph a distribution describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Bit,
    Check,
}

/// Edge-perspective degree distribution (`λ` or `ρ`).
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeDistribution {
    side: Side,
    coeffs: Vec<f64>,
}

impl DegreeDistribution {
    pub fn new(side: Side, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        if let Some(index) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFiniteCoefficient { index });
        }
        Ok(DegreeDistribution { side, coeffs })
    }

    /// Reads the distribution off a series: coefficient of `x^i` is the edge
    /// fraction of degree `i + 1`.
    pub fn from_series(side: Side, series: &TruncatedSeries) -> Self {
        DegreeDistribution { side, coeffs: series.coeffs().to_vec() }
    }

    /// Single-degree distribution, e.g. `ρ(x) = x^2` is `regular(Check, 3)`.
    pub fn regular(side: Side, degree: usize) -> Self {
        assert!(degree >= 1);
        let mut coeffs = alloc::vec![0.0; degree];
        coeffs[degree - 1] = 1.0;
        DegreeDistribution { side, coeffs }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Edge fraction of degree `degree` (1-based).
    pub fn fraction(&self, degree: usize) -> f64 {
        if degree == 0 {
            return 0.0;
        }
        self.coeffs.get(degree - 1).copied().unwrap_or(0.0)
    }

    /// Largest degree carrying nonzero mass.
    pub fn max_degree(&self) -> usize {
        self.coeffs.iter().rposition(|&c| c != 0.0).map_or(0, |i| i + 1)
    }

    pub fn total(&self) -> f64 {
        self.coeffs.iter().sum()
    }

    /// `∫_0^1` of the polynomial, i.e. `Σ c_n / n`.
    pub fn integral(&self) -> f64 {
        self.coeffs.iter().enumerate().map(|(i, c)| c / (i + 1) as f64).sum()
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        horner(&self.coeffs, x)
    }

    /// Non-negative and summing to one within `1e-9`.
    pub fn is_realizable(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0.0) && (self.total() - 1.0).abs() <= 1e-9
    }

    pub fn to_node(&self) -> NodeDistribution {
        edge_to_node(self)
    }
}

/// Node-perspective distribution: entry `i` is the fraction of nodes with
/// degree `i + 1`, so `R(x) = Σ_i coeffs[i] x^(i+1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeDistribution {
    coeffs: Vec<f64>,
}

impl NodeDistribution {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if let Some(index) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFiniteCoefficient { index });
        }
        Ok(NodeDistribution { coeffs })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn fraction(&self, degree: usize) -> f64 {
        if degree == 0 {
            return 0.0;
        }
        self.coeffs.get(degree - 1).copied().unwrap_or(0.0)
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        x * horner(&self.coeffs, x)
    }

    /// Average node degree `Σ i R_i`.
    pub fn mean_degree(&self) -> f64 {
        self.coeffs.iter().enumerate().map(|(i, c)| (i + 1) as f64 * c).sum()
    }

    /// Back to the edge perspective: `ρ_i = i R_i / Σ_j j R_j`.
    pub fn to_edge(&self, side: Side) -> DegreeDistribution {
        let mean = self.mean_degree();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if mean > 0.0 { (i + 1) as f64 * c / mean } else { 0.0 })
            .collect();
        DegreeDistribution { side, coeffs }
    }
}

/// `R_i = (ρ_i / i) / Σ_j (ρ_j / j)`, the node view of `R(x) = ∫_0^x ρ / ∫_0^1 ρ`.
pub fn edge_to_node(rho: &DegreeDistribution) -> NodeDistribution {
    let norm = rho.integral();
    let coeffs = rho
        .coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| if norm > 0.0 { c / (i + 1) as f64 / norm } else { 0.0 })
        .collect();
    NodeDistribution { coeffs }
}

/// Design rate `∫λ / ∫ρ` of a non-systematic IRA pair.
pub fn design_rate(lambda: &DegreeDistribution, rho: &DegreeDistribution) -> f64 {
    lambda.integral() / rho.integral()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn edge_to_node_cases() {
        let rho = DegreeDistribution::regular(Side::Check, 3);
        assert_eq!(edge_to_node(&rho).coeffs(), &[0.0, 0.0, 1.0]);
        let rho = DegreeDistribution::regular(Side::Check, 1);
        assert_eq!(edge_to_node(&rho).coeffs(), &[1.0]);
        // R(x) = x^3 for ρ(x) = x^2.
        assert!((edge_to_node(&DegreeDistribution::regular(Side::Check, 3)).evaluate(0.5) - 0.125).abs() < 1e-16);
    }

    #[test]
    fn node_round_trip() {
        let rho = DegreeDistribution::new(Side::Check, vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        let back = edge_to_node(&rho).to_edge(Side::Check);
        for (a, b) in rho.coeffs().iter().zip(back.coeffs()) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!((back.integral() - rho.integral()).abs() < 1e-12);
    }

    #[test]
    fn rate_of_regular_pair() {
        // λ = x^2, ρ = x^2: both integrals 1/3.
        let l = DegreeDistribution::regular(Side::Bit, 3);
        let r = DegreeDistribution::regular(Side::Check, 3);
        assert!((design_rate(&l, &r) - 1.0).abs() < 1e-15);
    }
}
