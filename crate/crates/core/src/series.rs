//! Truncated power series over `f64`.
//!
//! A [`TruncatedSeries`] of order `N` holds the coefficients `c_0 .. c_{N-1}`
//! of a formal power series; every operation works modulo `x^N`. Products and
//! quotients are the schoolbook `O(N^2)` algorithms, composition uses the
//! baby-step/giant-step scheme of Brent and Kung, and reversion is a
//! precision-doubling Newton iteration.

use alloc::vec;
use alloc::vec::Vec;


use crate::error::{Error, Result};

/// Coefficients `c_0 .. c_{N-1}` of a power series truncated at order `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<f64>,
}

impl TruncatedSeries {
    /// Builds a series from its coefficients; rejects empty or non-finite input.
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        if let Some(index) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFiniteCoefficient { index });
        }
        Ok(TruncatedSeries { coeffs })
    }

    pub(crate) fn from_vec(coeffs: Vec<f64>) -> Self {
        debug_assert!(!coeffs.is_empty());
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_vec(vec![0.0; order.max(1)])
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = 1.0;
        s
    }

    /// The series `x` (just `0` at order 1).
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order);
        if s.order() > 1 {
            s.coeffs[1] = 1.0;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the retained order.
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    /// Truncates or zero-pads to `order` terms.
    pub fn with_order(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order.max(1), 0.0);
        Self::from_vec(coeffs)
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self::from_vec(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self::from_vec(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect()))
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::from_vec(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// `c - self` for a scalar `c`.
    pub(crate) fn rsub_scalar(&self, c: f64) -> Self {
        let mut out: Vec<f64> = self.coeffs.iter().map(|v| -v).collect();
        out[0] += c;
        Self::from_vec(out)
    }

    /// Cauchy product truncated to the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self::from_vec(mul_trunc(&self.coeffs, &other.coeffs, self.order())))
    }

    /// Quotient `q` with `q * other = self`, by the long-division recurrence.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        div_trunc(&self.coeffs, &other.coeffs, self.order()).map(Self::from_vec)
    }

    /// `self(inner(x))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check_order(inner)?;
        if inner.coeffs[0] != 0.0 {
            return Err(Error::NonZeroInnerConstant);
        }
        let n = self.order();
        let mut out = compose_many(&[&self.coeffs], &inner.coeffs, n);
        Ok(Self::from_vec(out.pop().unwrap()))
    }

    /// Compositional inverse: the series `f` with `f(self(x)) = x`.
    pub fn reverse(&self) -> Result<Self> {
        if self.coeff(0) != 0.0 || self.coeff(1) == 0.0 {
            return Err(Error::NotReversible);
        }
        reverse_with(self, self.order())
    }

    /// Antiderivative with zero constant term; the order grows by one.
    pub fn integrate(&self) -> Self {
        let mut out = Vec::with_capacity(self.order() + 1);
        out.push(0.0);
        out.extend(self.coeffs.iter().enumerate().map(|(k, c)| c / (k + 1) as f64));
        Self::from_vec(out)
    }

    /// Term-wise derivative at the same order (the top coefficient is unknown
    /// and set to zero).
    pub fn derivative(&self) -> Self {
        let n = self.order();
        let mut out = vec![0.0; n];
        for k in 1..n {
            out[k - 1] = k as f64 * self.coeffs[k];
        }
        Self::from_vec(out)
    }

    /// Horner evaluation of the retained polynomial.
    pub fn evaluate(&self, x: f64) -> f64 {
        horner(&self.coeffs, x)
    }
}

pub(crate) fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// Taylor coefficients of `(1 - x)^alpha` about zero.
pub fn binomial_series(alpha: f64, order: usize) -> TruncatedSeries {
    let n = order.max(1);
    let mut coeffs = Vec::with_capacity(n);
    let mut c = 1.0;
    coeffs.push(c);
    for k in 0..n - 1 {
        c *= (k as f64 - alpha) / (k + 1) as f64;
        coeffs.push(c);
    }
    TruncatedSeries::from_vec(coeffs)
}

fn valuation(a: &[f64]) -> usize {
    a.iter().position(|&c| c != 0.0).unwrap_or(a.len())
}

/// Product of two coefficient slices modulo `x^n`.
pub(crate) fn mul_trunc(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n];
    let vb = valuation(b);
    let b_len = b.len().min(n);
    for (i, &ai) in a.iter().enumerate().take(n).skip(valuation(a)) {
        if ai == 0.0 || i + vb >= n {
            continue;
        }
        let lim = b_len.min(n - i);
        for (o, &bj) in out[i + vb..i + lim].iter_mut().zip(&b[vb..lim]) {
            *o += ai * bj;
        }
    }
    out
}

/// Quotient `a / b` modulo `x^n`.
pub(crate) fn div_trunc(a: &[f64], b: &[f64], n: usize) -> Result<Vec<f64>> {
    let b0 = b.first().copied().unwrap_or(0.0);
    if b0 == 0.0 {
        return Err(Error::NonInvertibleSeries);
    }
    let inv = 1.0 / b0;
    let mut q = vec![0.0; n];
    let b_len = b.len().min(n);
    for k in 0..n {
        let mut acc = a.get(k).copied().unwrap_or(0.0);
        let hi = k.min(b_len - 1);
        for j in 1..=hi {
            acc -= b[j] * q[k - j];
        }
        q[k] = acc * inv;
    }
    Ok(q)
}

/// Composes every `outer` with the same `inner` (zero constant term), sharing
/// the baby-step powers of `inner`.
pub(crate) fn compose_many(outers: &[&[f64]], inner: &[f64], n: usize) -> Vec<Vec<f64>> {
    debug_assert!(inner.first().is_none_or(|&c| c == 0.0));
    let k = ((n as f64).sqrt().ceil() as usize).max(1);
    let mut pows: Vec<Vec<f64>> = Vec::with_capacity(k + 1);
    let mut one = vec![0.0; n];
    one[0] = 1.0;
    pows.push(one);
    for i in 1..=k {
        let next = mul_trunc(&pows[i - 1], inner, n);
        pows.push(next);
    }
    let giant = &pows[k];
    let chunks = n.div_ceil(k);

    outers
        .iter()
        .map(|outer| {
            // H_j = A_j + giant * H_{j+1}, only needed modulo x^(n - j k).
            let mut acc: Vec<f64> = Vec::new();
            for j in (0..chunks).rev() {
                let prec = n - j * k;
                let mut h = if acc.is_empty() {
                    vec![0.0; prec]
                } else {
                    mul_trunc(&acc, giant, prec)
                };
                for (i, pow) in pows.iter().take(k).enumerate() {
                    let c = outer.get(j * k + i).copied().unwrap_or(0.0);
                    if c == 0.0 {
                        continue;
                    }
                    for (hv, pv) in h.iter_mut().zip(&pow[..prec]) {
                        *hv += c * pv;
                    }
                }
                acc = h;
            }
            acc.resize(n, 0.0);
            acc
        })
        .collect()
}

/// A map `g` with `g(0) = 0` that can be applied to a series.
///
/// Implementors return `(g(f), g'(f))` modulo `x^n` for a series `f` with zero
/// constant term. [`reverse_with`] only touches `g` through this trait, so maps
/// with a closed form avoid the cost of generic composition.
pub trait SeriesMap {
    /// `g'(0)`; must be nonzero for the map to be reversible.
    fn linear_coefficient(&self) -> f64;

    fn apply_with_derivative(&self, f: &[f64], n: usize) -> (Vec<f64>, Vec<f64>);
}

impl SeriesMap for TruncatedSeries {
    fn linear_coefficient(&self) -> f64 {
        self.coeff(1)
    }

    fn apply_with_derivative(&self, f: &[f64], n: usize) -> (Vec<f64>, Vec<f64>) {
        let g = self.with_order(n);
        let dg = g.derivative();
        let mut both = compose_many(&[g.coeffs(), dg.coeffs()], f, n);
        let dgf = both.pop().unwrap();
        let gf = both.pop().unwrap();
        (gf, dgf)
    }
}

/// Series reversion by Newton iteration, doubling the precision each step:
/// `f <- f - (g(f) - x) / g'(f)`.
pub fn reverse_with<M: SeriesMap + ?Sized>(map: &M, order: usize) -> Result<TruncatedSeries> {
    let g1 = map.linear_coefficient();
    if g1 == 0.0 || !g1.is_finite() {
        return Err(Error::NotReversible);
    }
    let n = order.max(1);
    let mut f = vec![0.0; n.min(2)];
    if n > 1 {
        f[1] = 1.0 / g1;
    }
    let mut prec = f.len();
    while prec < n {
        prec = (2 * prec).min(n);
        f.resize(prec, 0.0);
        let (mut resid, dgf) = map.apply_with_derivative(&f, prec);
        resid[1] -= 1.0;
        let corr = div_trunc(&resid, &dgf, prec)?;
        for (fv, cv) in f.iter_mut().zip(&corr) {
            *fv -= cv;
        }
    }
    TruncatedSeries::new(f)
}

/// Largest absolute coefficient, used by tests and scans.
pub fn max_abs(coeffs: &[f64]) -> f64 {
    coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
}
