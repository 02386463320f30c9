//! JSON degree-distribution files.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use ira_core::ensembles::{
    bit_regular_rho, check_regular_lambda, DegreeDistribution, EnsembleOptions, EnsembleSpec, Family, Side,
};

/// A truncated ensemble as stored on disk. Distributions are lists of
/// `[degree, edge fraction]` pairs with zero entries omitted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DdFile {
    pub family: String,
    /// Repetition degree (bit-regular), check degree (LDPC), or 3.
    pub q: usize,
    pub p: f64,
    pub epsilon: Option<f64>,
    #[serde(rename = "M")]
    pub max_degree: usize,
    pub lambda: Vec<(usize, f64)>,
    pub rho: Vec<(usize, f64)>,
    pub pilot_edge_fraction: f64,
    pub design_rate: f64,
    #[serde(default)]
    pub conjecture: bool,
}

fn sparse(d: &DegreeDistribution) -> Vec<(usize, f64)> {
    d.coeffs().iter().enumerate().filter(|(_, &c)| c != 0.0).map(|(i, &c)| (i + 1, c)).collect()
}

fn dense(side: Side, pairs: &[(usize, f64)]) -> ira_core::Result<DegreeDistribution> {
    let max = pairs.iter().map(|&(d, _)| d).max().unwrap_or(1);
    let mut coeffs = vec![0.0; max];
    for &(d, c) in pairs {
        if d == 0 {
            return Err(ira_core::Error::InvalidParameter("degree 0 in a distribution file"));
        }
        coeffs[d - 1] += c;
    }
    DegreeDistribution::new(side, coeffs)
}

impl DdFile {
    pub fn from_spec(spec: &EnsembleSpec) -> Self {
        DdFile {
            family: spec.family.name().to_string(),
            q: spec.q,
            p: spec.p,
            epsilon: spec.epsilon,
            max_degree: spec.max_degree,
            lambda: sparse(&spec.lambda),
            rho: sparse(&spec.rho),
            pilot_edge_fraction: spec.pilot_edge_fraction,
            design_rate: spec.design_rate(),
            conjecture: spec.conjecture,
        }
    }

    pub fn family(&self) -> Option<Family> {
        Family::from_name(&self.family)
    }

    /// `(λ, ρ)` as dense distributions.
    pub fn distributions(&self) -> ira_core::Result<(DegreeDistribution, DegreeDistribution)> {
        Ok((dense(Side::Bit, &self.lambda)?, dense(Side::Check, &self.rho)?))
    }

    /// Rebuilds a spec; the untruncated series is recomputed from `q` and `p`.
    pub fn to_spec(&self) -> ira_core::Result<EnsembleSpec> {
        let family = self.family().ok_or(ira_core::Error::InvalidParameter("unknown family"))?;
        let (lambda, rho) = self.distributions()?;
        let order = EnsembleOptions::default().order.max(self.max_degree + 1);
        let source = match family {
            Family::BitRegular => Some(bit_regular_rho(self.q, self.p, order)?),
            Family::CheckRegular => Some(check_regular_lambda(self.p, order)?),
            Family::Ldpc => None,
        };
        Ok(EnsembleSpec {
            family,
            q: self.q,
            p: self.p,
            epsilon: self.epsilon,
            max_degree: self.max_degree,
            lambda,
            rho,
            pilot_edge_fraction: self.pilot_edge_fraction,
            conjecture: self.conjecture,
            source,
        })
    }

    pub fn write<W: Write>(&self, w: W) -> serde_json::Result<()> {
        serde_json::to_writer_pretty(w, self)
    }

    pub fn read<R: Read>(r: R) -> serde_json::Result<Self> {
        serde_json::from_reader(r)
    }
}
