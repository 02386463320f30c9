//! Memoryless binary-input output-symmetric channels.

use core::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};
use crate::quad;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelModel {
    /// Erasure probability `p`.
    Bec(f64),
    /// Crossover probability `δ`.
    Bsc(f64),
    /// BPSK over Gaussian noise with standard deviation `σ`.
    BiAwgn(f64),
}

const QUAD_TOL: f64 = 1e-12;

fn gaussian(y: f64, mean: f64, sigma: f64) -> f64 {
    let z = (y - mean) / sigma;
    (-0.5 * z * z).exp() / (sigma * (2.0 * PI).sqrt())
}

/// Binary entropy in bits.
pub fn binary_entropy(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    -(x * x.log2() + (1.0 - x) * (1.0 - x).log2())
}

impl ChannelModel {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            ChannelModel::Bec(p) => (0.0..=1.0).contains(&p),
            ChannelModel::Bsc(d) => (0.0..=0.5).contains(&d),
            ChannelModel::BiAwgn(s) => s > 0.0 && s.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter("channel parameter out of range"))
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ChannelModel::Bec(_) => "bec",
            ChannelModel::Bsc(_) => "bsc",
            ChannelModel::BiAwgn(_) => "biawgn",
        }
    }

    pub fn parameter(&self) -> f64 {
        match *self {
            ChannelModel::Bec(x) | ChannelModel::Bsc(x) | ChannelModel::BiAwgn(x) => x,
        }
    }

    /// Capacity in bits per channel use.
    pub fn capacity(&self) -> Result<f64> {
        self.validate()?;
        match *self {
            ChannelModel::Bec(p) => Ok(1.0 - p),
            ChannelModel::Bsc(d) => Ok(1.0 - binary_entropy(d)),
            ChannelModel::BiAwgn(s) => {
                // C = 1 - E[log2(1 + exp(-2Y/σ^2))], Y ~ N(1, σ^2).
                let s2 = s * s;
                let f = |y: f64| {
                    let t = -2.0 * y / s2;
                    let softplus = if t > 0.0 { t + (-t).exp().ln_1p() } else { t.exp().ln_1p() };
                    gaussian(y, 1.0, s) * softplus / LN_2
                };
                let half = 1.0 + 40.0 * s;
                let lo = quad::integrate(f, 1.0 - half, 0.0, QUAD_TOL)?;
                let hi = quad::integrate(f, 0.0, 1.0 + half, QUAD_TOL)?;
                Ok((1.0 - lo - hi).clamp(0.0, 1.0))
            }
        }
    }

    /// `w = ½ ∫ min(f(y), f(-y)) dy` with `f` the output density given input +1.
    pub fn w(&self) -> Result<f64> {
        self.validate()?;
        match *self {
            ChannelModel::Bec(p) => Ok(p / 2.0),
            ChannelModel::Bsc(d) => Ok(d),
            ChannelModel::BiAwgn(s) => {
                // The densities cross at 0; on y > 0 the minimum is f(-y).
                let upper = 40.0 * s + 1.0;
                quad::integrate(|y| gaussian(-y, 1.0, s), 0.0, upper, QUAD_TOL)
            }
        }
    }
}
