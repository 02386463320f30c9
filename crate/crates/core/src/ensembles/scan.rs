//! Numeric scans: coefficient signs, decay exponents, conjectured regions.

use alloc::vec::Vec;


use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

/// Coefficients in `(-DEAD_BAND, 0)` count as round-off zeros.
pub const DEAD_BAND: f64 = 1e-12;

/// Outcome of a non-negativity scan over degrees `1..=n_max`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NonNegReport {
    pub n_max: usize,
    /// `(degree, value)` of every coefficient below `-DEAD_BAND`.
    pub negatives: Vec<(usize, f64)>,
    /// Smallest coefficient seen.
    pub min_value: f64,
    /// Number of coefficients inside the dead band.
    pub dead_band_hits: usize,
}

impl NonNegReport {
    pub fn is_nonnegative(&self) -> bool {
        self.negatives.is_empty()
    }
}

/// Scans the coefficients of degrees `1..=n_max` (coefficient of `x^{n-1}`).
pub fn nonneg_scan(series: &TruncatedSeries, n_max: usize) -> Result<NonNegReport> {
    if n_max > series.order() {
        return Err(Error::TruncationOrderTooSmall {
            order: series.order(),
            tail: f64::NAN,
            threshold: f64::NAN,
        });
    }
    let mut report = NonNegReport { n_max, min_value: f64::INFINITY, ..Default::default() };
    for (i, &c) in series.coeffs()[..n_max].iter().enumerate() {
        report.min_value = report.min_value.min(c);
        if c < -DEAD_BAND {
            report.negatives.push((i + 1, c));
        } else if c < 0.0 {
            report.dead_band_hits += 1;
        }
    }
    Ok(report)
}

/// Least-squares slope of `ln c_n` against `ln n` over degrees `lo..=hi`,
/// where `c_n = coeffs[n - 1]`. Non-positive coefficients are skipped.
pub fn fit_decay_exponent(coeffs: &[f64], lo: usize, hi: usize) -> Result<f64> {
    if lo == 0 || hi <= lo || hi > coeffs.len() {
        return Err(Error::InvalidParameter("fit range must satisfy 1 <= lo < hi <= len"));
    }
    let (mut n, mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for d in lo..=hi {
        let c = coeffs[d - 1];
        if c <= 0.0 {
            continue;
        }
        let x = (d as f64).ln();
        let y = c.ln();
        n += 1.0;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let denom = n * sxx - sx * sx;
    if n < 2.0 || denom == 0.0 {
        return Err(Error::InvalidParameter("too few positive coefficients to fit"));
    }
    Ok((n * sxy - sx * sy) / denom)
}

/// Largest `p` for which the bit-regular ensemble with repetition `q >= 4`
/// is conjectured to have a non-negative check distribution.
pub fn conjecture_region(q: usize) -> Result<f64> {
    if q < 4 {
        return Err(Error::InvalidParameter("conjectured region is defined for q >= 4"));
    }
    let q = q as f64;
    Ok(if q <= 8.0 {
        (6.0 - 7.0 * q + 2.0 * q * q) / (6.0 - 13.0 * q + 8.0 * q * q)
    } else {
        (12.0 - 17.0 * q + 6.0 * q * q) / (12.0 - 37.0 * q + 26.0 * q * q)
    })
}
