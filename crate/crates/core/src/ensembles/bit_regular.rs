//! Bit-regular ensemble: every information bit repeated `q` times, check
//! distribution
//! `ρ(x) = [1 - (1-x)^{1/(q-1)}] / [1 - p(1 - qx + (q-1)[1 - (1-x)^{q/(q-1)}])]^2`.

use alloc::vec::Vec;


use super::scan::DEAD_BAND;
use super::{DegreeDistribution, Side};
use crate::error::{Error, Result};
use crate::quad;
use crate::series::{binomial_series, TruncatedSeries};

fn validate(q: usize, p: f64) -> Result<()> {
    if q < 3 {
        return Err(Error::InvalidParameter("repetition degree q must be at least 3"));
    }
    if !(0.0..1.0).contains(&p) {
        return Err(Error::InvalidParameter("erasure probability must lie in [0, 1)"));
    }
    Ok(())
}

/// First `order` Taylor coefficients of the bit-regular check distribution.
pub fn bit_regular_rho(q: usize, p: f64, order: usize) -> Result<TruncatedSeries> {
    validate(q, p)?;
    let qf = q as f64;
    let numerator = binomial_series(1.0 / (qf - 1.0), order).rsub_scalar(1.0);
    // D(x) = 1 - p [1 - q x + (q-1)(1 - (1-x)^{q/(q-1)})]
    let b = binomial_series(qf / (qf - 1.0), order);
    let denom: Vec<f64> = (0..b.order())
        .map(|k| {
            let mut inner = -(qf - 1.0) * b.coeff(k);
            match k {
                0 => inner += qf,
                1 => inner -= qf,
                _ => {}
            }
            if k == 0 {
                1.0 - p * inner
            } else {
                -p * inner
            }
        })
        .collect();
    let denom = TruncatedSeries::from_vec(denom);
    numerator.div(&denom.mul(&denom)?)
}

fn denominator_at(q: f64, p: f64, x: f64) -> f64 {
    1.0 - p * (1.0 - q * x + (q - 1.0) * (1.0 - (1.0 - x).powf(q / (q - 1.0))))
}

/// Pointwise closed form of `ρ(x)` for `x ∈ [0, 1]`.
pub fn bit_regular_rho_at(q: usize, p: f64, x: f64) -> f64 {
    let qf = q as f64;
    let d = denominator_at(qf, p, x);
    (1.0 - (1.0 - x).powf(1.0 / (qf - 1.0))) / (d * d)
}

/// `R(z) = ∫_0^z ρ / ∫_0^1 ρ`, integrated numerically.
///
/// The substitution `t = 1 - s^{q-1}` turns the integrand into a rational
/// function of `s`, so adaptive Simpson converges quickly on `[s_z, 1]`.
pub fn bit_regular_node_at(q: usize, p: f64, z: f64) -> Result<f64> {
    validate(q, p)?;
    let qf = q as f64;
    let integrand = |s: f64| {
        let t = 1.0 - s.powi(q as i32 - 1);
        let d = 1.0 - p * (1.0 - qf * t + (qf - 1.0) * (1.0 - s.powi(q as i32)));
        (1.0 - s) / (d * d) * (qf - 1.0) * s.powi(q as i32 - 2)
    };
    let total = quad::integrate(integrand, 0.0, 1.0, 1e-15)?;
    if z <= 0.0 {
        return Ok(0.0);
    }
    let s_z = (1.0 - z.min(1.0)).powf(1.0 / (qf - 1.0));
    let part = quad::integrate(integrand, s_z, 1.0, 1e-15)?;
    Ok(part / total)
}

/// `R(z) = (1 - A(z)) / (1 - p A(z))` with `A` the bracket in the denominator
/// of `ρ`; the form the node distribution takes when the pair meets the
/// fixed-point equation with equality.
pub fn bit_regular_node_closed_form(q: usize, p: f64, z: f64) -> f64 {
    let qf = q as f64;
    let a = 1.0 - qf * z + (qf - 1.0) * (1.0 - (1.0 - z).powf(qf / (qf - 1.0)));
    (1.0 - a) / (1.0 - p * a)
}

/// Result of the `ε`-truncation of the check distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckTruncation {
    /// `ρ_ε`: the tail mass moved onto degree-1 checks.
    pub distribution: DegreeDistribution,
    /// `M(ε)`.
    pub max_degree: usize,
    /// `1 - Σ_{n=2}^{M} ρ_n`, the degree-1 edge fraction.
    pub tail: f64,
}

/// Smallest `M` with `Σ_{n>M} ρ_n < ε / (q (1-p))`, the tail taken as one
/// minus the retained partial sum (`ρ(1) = 1`).
pub fn truncate_check_dd(rho: &TruncatedSeries, q: usize, p: f64, epsilon: f64) -> Result<CheckTruncation> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter("epsilon must lie in (0, 1)"));
    }
    let threshold = epsilon / (q as f64 * (1.0 - p));
    let m = find_check_truncation(rho, threshold)?;
    truncate_check_dd_at(rho, m)
}

fn find_check_truncation(rho: &TruncatedSeries, threshold: f64) -> Result<usize> {
    let mut partial = 0.0;
    let mut tail = 1.0;
    for m in 1..=rho.order() {
        if m >= 2 {
            let c = rho.coeff(m - 1);
            if c < -DEAD_BAND {
                return Err(Error::NegativeCoefficient { degree: m, value: c });
            }
            partial += c.max(0.0);
        }
        tail = 1.0 - partial;
        if tail < threshold {
            return Ok(m);
        }
    }
    Err(Error::TruncationOrderTooSmall { order: rho.order(), tail, threshold })
}

/// Truncation at a given maximum check degree `M`.
pub(crate) fn truncate_check_dd_at(rho: &TruncatedSeries, m: usize) -> Result<CheckTruncation> {
    if m == 0 || m > rho.order() {
        return Err(Error::InvalidParameter("truncation degree outside the computed order"));
    }
    let mut coeffs = Vec::with_capacity(m);
    coeffs.push(0.0);
    let mut partial = 0.0;
    for n in 2..=m {
        let c = rho.coeff(n - 1);
        if c < -DEAD_BAND {
            return Err(Error::NegativeCoefficient { degree: n, value: c });
        }
        let c = c.max(0.0);
        partial += c;
        coeffs.push(c);
    }
    let tail = 1.0 - partial;
    coeffs[0] = tail;
    Ok(CheckTruncation {
        distribution: DegreeDistribution::new(Side::Check, coeffs)?,
        max_degree: m,
        tail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_zero_is_one_minus_sqrt() {
        let rho = bit_regular_rho(3, 0.0, 8).unwrap();
        assert_eq!(rho.coeff(0), 0.0);
        assert!((rho.coeff(1) - 0.5).abs() < 1e-16);
        assert!((rho.coeff(2) - 0.125).abs() < 1e-16);
        assert!((rho.coeff(3) - 0.0625).abs() < 1e-16);
    }

    #[test]
    fn series_matches_closed_form_inside_disc() {
        let rho = bit_regular_rho(4, 0.1, 512).unwrap();
        for &x in &[0.1, 0.3, 0.5] {
            assert!((rho.evaluate(x) - bit_regular_rho_at(4, 0.1, x)).abs() < 1e-13);
        }
        assert!((bit_regular_rho_at(3, 0.05, 1.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn node_quadrature_matches_closed_form() {
        for &z in &[0.05, 0.4, 0.9, 1.0] {
            let a = bit_regular_node_at(3, 1.0 / 13.0, z).unwrap();
            let b = bit_regular_node_closed_form(3, 1.0 / 13.0, z);
            assert!((a - b).abs() < 1e-12, "z={z}: {a} vs {b}");
        }
    }

    #[test]
    fn truncation_at_p_zero_matches_exact_scan() {
        // Tails of 1 - sqrt(1-x): 1/2, 3/8, 5/16, 35/128 < 0.3 first at M = 5.
        let rho = bit_regular_rho(3, 0.0, 64).unwrap();
        let t = truncate_check_dd(&rho, 3, 0.0, 0.9).unwrap();
        assert_eq!(t.max_degree, 5);
        assert!((t.tail - 35.0 / 128.0).abs() < 1e-15);
        assert!((t.distribution.total() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn too_short_series_is_reported() {
        let rho = bit_regular_rho(3, 0.05, 16).unwrap();
        assert!(matches!(
            truncate_check_dd(&rho, 3, 0.05, 0.01),
            Err(Error::TruncationOrderTooSmall { order: 16, .. })
        ));
    }

    #[test]
    fn rejects_small_q() {
        assert!(bit_regular_rho(2, 0.1, 8).is_err());
    }
}
