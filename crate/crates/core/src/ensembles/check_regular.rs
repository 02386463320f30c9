//! Check-regular ensemble: `ρ(x) = x^2`, `R(x) = x^3`, and `λ` the functional
//! inverse of the fixed-point map
//! `g(x) = 1 - (1-p)^2 (1-x)^2 / (1 - p(1-x)^3)^2`.

use alloc::vec::Vec;

use num_complex::Complex;
use num_traits::Float;

use super::scan::DEAD_BAND;
use super::{DegreeDistribution, Side};
use crate::error::{Error, Result};
use crate::series::{div_trunc, mul_trunc, reverse_with, SeriesMap, TruncatedSeries};

const BRANCH_TOLERANCE: f64 = 1e-9;

fn validate(p: f64) -> Result<()> {
    if !(0.0..1.0).contains(&p) {
        return Err(Error::InvalidParameter("erasure probability must lie in [0, 1)"));
    }
    Ok(())
}

/// The map `g` with its derivative in closed form, so reversion avoids
/// generic series composition.
#[derive(Debug, Clone, Copy)]
pub struct CheckRegularDeMap {
    p: f64,
}

impl CheckRegularDeMap {
    pub fn new(p: f64) -> Result<Self> {
        validate(p)?;
        Ok(CheckRegularDeMap { p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Returns `(u, u^2, D)` with `u = 1 - f`, `D = 1 - p u^3`, all mod `x^n`.
    fn parts(&self, f: &[f64], n: usize) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        let mut u: Vec<f64> = (0..n).map(|k| -f.get(k).copied().unwrap_or(0.0)).collect();
        u[0] += 1.0;
        let u2 = mul_trunc(&u, &u, n);
        let u3 = mul_trunc(&u2, &u, n);
        let mut d: Vec<f64> = u3.iter().map(|c| -self.p * c).collect();
        d[0] += 1.0;
        (u, u2, d)
    }
}

impl SeriesMap for CheckRegularDeMap {
    fn linear_coefficient(&self) -> f64 {
        (2.0 + 4.0 * self.p) / (1.0 - self.p)
    }

    fn apply_with_derivative(&self, f: &[f64], n: usize) -> (Vec<f64>, Vec<f64>) {
        let p = self.p;
        let s = (1.0 - p) * (1.0 - p);
        let (u, u2, d) = self.parts(f, n);
        let d2 = mul_trunc(&d, &d, n);
        let d3 = mul_trunc(&d2, &d, n);
        // D(0) = 1 - p u(0)^3 > 0 for p < 1, so the divisions below are safe.
        let ratio = div_trunc(&u2, &d2, n).expect("D has a nonzero constant term");
        let mut g: Vec<f64> = ratio.iter().map(|c| -s * c).collect();
        g[0] += 1.0;
        // g' = (1-p)^2 (2 u D + 6 p u^4) / D^3
        let ud = mul_trunc(&u, &d, n);
        let u4 = mul_trunc(&u2, &u2, n);
        let num: Vec<f64> = ud.iter().zip(&u4).map(|(a, b)| s * (2.0 * a + 6.0 * p * b)).collect();
        let dg = div_trunc(&num, &d3, n).expect("D has a nonzero constant term");
        (g, dg)
    }
}

/// Taylor coefficients of `g` to order `order`.
pub fn check_regular_de_map(p: f64, order: usize) -> Result<TruncatedSeries> {
    let map = CheckRegularDeMap::new(p)?;
    let n = order.max(1);
    let mut x = alloc::vec![0.0; n];
    if n > 1 {
        x[1] = 1.0;
    }
    let (g, _) = map.apply_with_derivative(&x, n);
    TruncatedSeries::new(g)
}

/// `g(x)` evaluated directly.
pub fn check_regular_de_map_at(p: f64, x: f64) -> f64 {
    let u = 1.0 - x;
    let d = 1.0 - p * u * u * u;
    let r = (1.0 - p) * u / d;
    1.0 - r * r
}

/// `λ = g^{-1}` by Newton series reversion.
pub fn check_regular_lambda(p: f64, order: usize) -> Result<TruncatedSeries> {
    let map = CheckRegularDeMap::new(p)?;
    let mut lambda = reverse_with(&map, order)?;
    if lambda.order() > 0 {
        // λ(0) = 0 exactly; clear the reversion residue.
        let mut c = lambda.into_coeffs();
        c[0] = 0.0;
        lambda = TruncatedSeries::from_vec(c);
    }
    Ok(lambda)
}

/// Pointwise `λ(x)` from the closed form with complex intermediates:
///
/// `λ(x) = 1 + 2p(1-x)^2 sin(⅓ asin √(-27p(1-x)^{3/2} / (4(1-p)^3)))
///         / (√3 (1-p)^4 (-p(1-x)^{3/2}/(1-p)^3)^{3/2})`
///
/// with principal branches throughout; a negative real argument carries a
/// `+0` imaginary part so its argument is `π`.
pub fn check_regular_lambda_closed_form(p: f64, x: f64) -> Result<f64> {
    validate(p)?;
    if !(0.0..1.0).contains(&x) {
        return Err(Error::InvalidParameter("closed form needs x in [0, 1)"));
    }
    if p == 0.0 {
        return Ok(1.0 - (1.0 - x).sqrt());
    }
    let one_m_p = 1.0 - p;
    let t = (1.0 - x).powf(1.5);
    let c3 = one_m_p * one_m_p * one_m_p;
    let radicand = Complex::new(-27.0 * p * t / (4.0 * c3), 0.0);
    let inner = radicand.sqrt();
    let num = inner.asin().scale(1.0 / 3.0).sin().scale(2.0 * p * (1.0 - x) * (1.0 - x));
    let base = Complex::new(-p * t / c3, 0.0);
    let den = base.powf(1.5).scale(3.0.sqrt() * c3 * one_m_p);
    let value = Complex::new(1.0, 0.0) + num / den;
    if !value.re.is_finite() || value.im.abs() > BRANCH_TOLERANCE {
        return Err(Error::BranchSelection { x, imaginary: value.im });
    }
    Ok(value.re)
}

/// Result of the pilot-bit truncation of the bit distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct BitTruncation {
    /// `λ_2..λ_M` rescaled to sum to one.
    pub distribution: DegreeDistribution,
    /// `M(ε)`.
    pub max_degree: usize,
    /// `1 - Σ_{n≤M} λ_n`: edge fraction of the bits turned into pilots.
    pub pilot_edge_fraction: f64,
    /// `Σ_{n>M} λ_n / n`, computed as `(1-p)/3` minus the retained sum.
    pub tail: f64,
}

/// Smallest `M` with `Σ_{n>M} λ_n / n < (1-p) ε / 3`.
pub fn truncate_bit_dd(lambda: &TruncatedSeries, p: f64, epsilon: f64) -> Result<BitTruncation> {
    validate(p)?;
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter("epsilon must lie in (0, 1)"));
    }
    let total = (1.0 - p) / 3.0;
    let threshold = total * epsilon;
    let mut partial = 0.0;
    let mut tail = total;
    for m in 1..=lambda.order() {
        let c = lambda.coeff(m - 1);
        if c < -DEAD_BAND {
            return Err(Error::NegativeCoefficient { degree: m, value: c });
        }
        partial += c.max(0.0) / m as f64;
        tail = total - partial;
        if m >= 2 && tail < threshold {
            return truncate_bit_dd_at(lambda, p, m);
        }
    }
    Err(Error::TruncationOrderTooSmall { order: lambda.order(), tail, threshold })
}

/// Truncation at a given maximum bit degree `M`.
pub fn truncate_bit_dd_at(lambda: &TruncatedSeries, p: f64, m: usize) -> Result<BitTruncation> {
    validate(p)?;
    if m < 2 || m > lambda.order() {
        return Err(Error::InvalidParameter("truncation degree outside the computed order"));
    }
    let mut coeffs = Vec::with_capacity(m);
    let mut mass = 0.0;
    let mut partial = 0.0;
    for n in 1..=m {
        let c = lambda.coeff(n - 1);
        if c < -DEAD_BAND {
            return Err(Error::NegativeCoefficient { degree: n, value: c });
        }
        let c = c.max(0.0);
        mass += c;
        partial += c / n as f64;
        coeffs.push(c);
    }
    for c in coeffs.iter_mut() {
        *c /= mass;
    }
    Ok(BitTruncation {
        distribution: DegreeDistribution::new(Side::Bit, coeffs)?,
        max_degree: m,
        pilot_edge_fraction: 1.0 - mass,
        tail: (1.0 - p) / 3.0 - partial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::binomial_series;

    #[test]
    fn map_at_p_zero() {
        let g = check_regular_de_map(0.0, 6).unwrap();
        assert_eq!(g.coeffs(), &[0.0, 2.0, -1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn map_boundary_values() {
        for &p in &[0.1, 0.5, 0.9] {
            assert!(check_regular_de_map_at(p, 0.0).abs() < 1e-15);
            assert!((check_regular_de_map_at(p, 1.0) - 1.0).abs() < 1e-15);
        }
        // The pole of g nearest the origin sits at 1 - p^{-1/3}.
        let g = check_regular_de_map(0.1, 128).unwrap();
        assert!((g.evaluate(0.3) - check_regular_de_map_at(0.1, 0.3)).abs() < 1e-12);
    }

    #[test]
    fn map_matches_independent_expansion() {
        // (1-x)^2 / (1 - p(1-x)^3)^2 = Σ_k (k+1) p^k (1-x)^{3k+2}
        let p = 0.5;
        let n = 20;
        let mut ratio = alloc::vec![0.0; n];
        for k in 0..600 {
            let term = binomial_series((3 * k + 2) as f64, n);
            let w = (k + 1) as f64 * p.powi(k as i32);
            for (r, c) in ratio.iter_mut().zip(term.coeffs()) {
                *r += w * c;
            }
        }
        let g = check_regular_de_map(p, n).unwrap();
        for k in 0..n {
            let expect = if k == 0 { 1.0 } else { 0.0 } - 0.25 * ratio[k];
            assert!((g.coeff(k) - expect).abs() <= 1e-10 * expect.abs().max(1.0), "k={k}");
        }
    }

    #[test]
    fn lambda_at_p_zero() {
        let l = check_regular_lambda(0.0, 16).unwrap();
        let b = binomial_series(0.5, 16);
        assert_eq!(l.coeff(0), 0.0);
        for k in 1..16 {
            assert!((l.coeff(k) + b.coeff(k)).abs() < 1e-15);
        }
    }

    #[test]
    fn closed_map_reversion_matches_generic() {
        // Generic composition loses digits once the coefficients of g grow
        // like |1 - p^{-1/3}|^{-k}, so compare at moderate order only.
        let p = 0.3;
        let fast = check_regular_lambda(p, 30).unwrap();
        let slow = check_regular_de_map(p, 30).unwrap().reverse().unwrap();
        for k in 0..30 {
            let (a, b) = (fast.coeff(k), slow.coeff(k));
            assert!((a - b).abs() < 1e-13, "k={k}: {a} vs {b}");
        }
    }

    #[test]
    fn reversion_matches_lagrange_inversion() {
        // [x^59] λ at p = 0.3 from 80-digit Lagrange inversion.
        let l = check_regular_lambda(0.3, 64).unwrap();
        assert!((l.coeff(59) - 8.948_532_625_986_034_5e-4).abs() < 1e-17);
    }

    #[test]
    fn closed_form_inverts_map() {
        let p = 0.5;
        assert!(check_regular_lambda_closed_form(p, 0.0).unwrap().abs() < 1e-12);
        for i in 0..100 {
            let x = 0.0099 * i as f64;
            let l = check_regular_lambda_closed_form(p, x).unwrap();
            assert!((check_regular_de_map_at(p, l) - x).abs() < 1e-8, "x={x}");
        }
    }

    #[test]
    fn truncation_at_p_zero() {
        // λ_n / n from 1 - sqrt(1-x); total mass 1/3.
        let l = check_regular_lambda(0.0, 256).unwrap();
        let t = truncate_bit_dd(&l, 0.0, 0.5).unwrap();
        let b = binomial_series(0.5, 256);
        let tail_after = |m: usize| 1.0 / 3.0 - (2..=m).map(|n| -b.coeff(n - 1) / n as f64).sum::<f64>();
        assert!(tail_after(t.max_degree) < 1.0 / 6.0);
        assert!(tail_after(t.max_degree - 1) >= 1.0 / 6.0);
        assert!((t.distribution.total() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn truncation_minimality_at_half() {
        let l = check_regular_lambda(0.5, 4096).unwrap();
        let t = truncate_bit_dd(&l, 0.5, 0.1).unwrap();
        let below = truncate_bit_dd_at(&l, 0.5, t.max_degree - 1).unwrap();
        let threshold = 0.5 / 3.0 * 0.1;
        assert!(t.tail < threshold && below.tail >= threshold);
    }
}
