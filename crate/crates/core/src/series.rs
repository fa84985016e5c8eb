//! Exact-integer truncated power series.
//!
//! Coefficients are `i128` with overflow detection; there is no floating
//! point anywhere in this module. Series are truncated to a fixed number of
//! retained terms, and binary operations truncate to the shorter operand.

use crate::error::{Error, Result};
use crate::paths;

/// Default number of retained terms for the identity checks.
pub const DEFAULT_ORDER: usize = 25;

/// A truncated formal power series: `coefficients[k]` is the coefficient of
/// `x^k`, and the order is the number of retained terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coefficients: Vec<i128>,
}

fn checked_add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b)
        .ok_or_else(|| Error::Arithmetic(format!("overflow computing {a} + {b}")))
}

fn checked_mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b)
        .ok_or_else(|| Error::Arithmetic(format!("overflow computing {a} * {b}")))
}

impl PowerSeries {
    /// Builds a series from its coefficients; the order is their count.
    pub fn new(coefficients: Vec<i128>) -> Self {
        PowerSeries { coefficients }
    }

    /// The zero series with `terms` retained terms.
    pub fn zero(terms: usize) -> Self {
        PowerSeries { coefficients: vec![0; terms] }
    }

    /// The series `x`, with `terms` retained terms.
    pub fn x(terms: usize) -> Self {
        let mut s = Self::zero(terms);
        if terms > 1 {
            s.coefficients[1] = 1;
        }
        s
    }

    /// Number of retained terms.
    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    /// The coefficient of `x^k` (zero beyond the retained order).
    pub fn coeff(&self, k: usize) -> i128 {
        self.coefficients.get(k).copied().unwrap_or(0)
    }

    pub fn coefficients(&self) -> &[i128] {
        &self.coefficients
    }

    /// Drops terms of exponent `terms` and above.
    pub fn truncate(mut self, terms: usize) -> Self {
        self.coefficients.truncate(terms);
        self
    }

    /// Coefficientwise sum, truncated to the shorter operand.
    pub fn add(&self, other: &PowerSeries) -> Result<PowerSeries> {
        let order = self.order().min(other.order());
        let mut out = vec![0; order];
        for (k, c) in out.iter_mut().enumerate() {
            *c = checked_add(self.coeff(k), other.coeff(k))?;
        }
        Ok(PowerSeries::new(out))
    }

    /// Cauchy product, truncated to the shorter operand.
    pub fn multiply(&self, other: &PowerSeries) -> Result<PowerSeries> {
        let order = self.order().min(other.order());
        let mut out = vec![0; order];
        for i in 0..order {
            if self.coeff(i) == 0 {
                continue;
            }
            for j in 0..order - i {
                let term = checked_mul(self.coeff(i), other.coeff(j))?;
                out[i + j] = checked_add(out[i + j], term)?;
            }
        }
        Ok(PowerSeries::new(out))
    }

    /// Composition `self(inner)` by Horner evaluation, truncated to the
    /// shorter operand. `inner` must have constant term zero.
    pub fn compose(&self, inner: &PowerSeries) -> Result<PowerSeries> {
        if inner.coeff(0) != 0 {
            return Err(Error::InvalidInput(format!(
                "composition requires a zero constant term, got {}",
                inner.coeff(0)
            )));
        }
        let order = self.order().min(inner.order());
        let mut out = PowerSeries::zero(order);
        for k in (0..order).rev() {
            out = out.multiply(inner)?;
            out.coefficients[0] = checked_add(out.coefficients[0], self.coeff(k))?;
        }
        Ok(out)
    }

    /// The series `self(x²)`: coefficient `c_k` moves to exponent `2k`. The
    /// result retains `2·order − 1` terms so no input coefficient is lost.
    pub fn substitute_x_squared(&self) -> PowerSeries {
        let order = 2 * self.order().saturating_sub(1) + 1;
        let mut out = vec![0; order];
        for (k, &c) in self.coefficients.iter().enumerate() {
            out[2 * k] = c;
        }
        PowerSeries::new(out)
    }
}

/// The Catalan generating function `C(x)` to `terms` terms.
pub fn catalan_series(terms: usize) -> Result<PowerSeries> {
    let mut coefficients = Vec::with_capacity(terms);
    for k in 0..terms {
        coefficients.push(paths::catalan(k)?);
    }
    Ok(PowerSeries::new(coefficients))
}

/// The series `B(x) = C(xC(x))` to `terms` terms; its coefficients begin
/// 1, 1, 3, 11, 44.
pub fn b_series(terms: usize) -> Result<PowerSeries> {
    let c = catalan_series(terms)?;
    let xc = PowerSeries::x(terms).multiply(&c)?;
    c.compose(&xc)
}

/// The odd-index embedding `B̃(x) = x·B(x²)` to `terms` terms.
pub fn btilde_series(terms: usize) -> Result<PowerSeries> {
    let b = b_series(terms.div_ceil(2))?;
    let mut coefficients = vec![0; terms];
    for (k, &c) in b.coefficients().iter().enumerate() {
        if 2 * k + 1 < terms {
            coefficients[2 * k + 1] = c;
        }
    }
    Ok(PowerSeries::new(coefficients))
}

/// Verifies `Σ_{j=1}^{k} j·C_{j−1}·C_{k−j} = C(2k−1, k)` exactly at `k`.
pub fn check_sum_identity(k: usize) -> Result<bool> {
    if k < 1 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    let mut sum: i128 = 0;
    for j in 1..=k {
        let term = checked_mul(j as i128, paths::catalan(j - 1)?)?;
        sum = checked_add(sum, checked_mul(term, paths::catalan(k - j)?)?)?;
    }
    Ok(sum == paths::binomial(2 * k as i64 - 1, k as i64)?)
}

/// Verifies `B̃(x) = x + x·C(x²)·B̃(x)²` coefficientwise to `terms` terms.
pub fn check_btilde_identity(terms: usize) -> Result<bool> {
    if terms < 2 {
        return Err(Error::InvalidInput("need at least 2 terms".into()));
    }
    let btilde = btilde_series(terms)?;
    btilde_satisfies_identity(&btilde, terms)
}

fn btilde_satisfies_identity(btilde: &PowerSeries, terms: usize) -> Result<bool> {
    let c_sq = catalan_series(terms)?.substitute_x_squared().truncate(terms);
    let square = btilde.multiply(btilde)?;
    let rhs = PowerSeries::x(terms)
        .multiply(&c_sq)?
        .multiply(&square)?
        .add(&PowerSeries::x(terms))?;
    Ok(*btilde == rhs.truncate(btilde.order()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_coefficients() {
        let c = catalan_series(6).unwrap();
        assert_eq!(c.coefficients(), &[1, 1, 2, 5, 14, 42]);
    }

    #[test]
    fn arithmetic_basics() {
        let c = catalan_series(5).unwrap();
        let two_c = c.add(&c).unwrap();
        assert_eq!(two_c.coefficients(), &[2, 2, 4, 10, 28]);
        let x = PowerSeries::x(5);
        assert_eq!(x.multiply(&c).unwrap().coefficients(), &[0, 1, 1, 2, 5]);
        let sq = PowerSeries::new(vec![1, 2, 3]).substitute_x_squared();
        assert_eq!(sq.coefficients(), &[1, 0, 2, 0, 3]);
    }

    #[test]
    fn compose_examples() {
        let c = catalan_series(5).unwrap();
        // C(0) is the constant series 1
        let at_zero = c.compose(&PowerSeries::zero(5)).unwrap();
        assert_eq!(at_zero.coefficients(), &[1, 0, 0, 0, 0]);
        // composing with x is the identity
        assert_eq!(c.compose(&PowerSeries::x(5)).unwrap(), c);
        // nonzero constant term is rejected
        let one = PowerSeries::new(vec![1, 0, 0]);
        assert!(matches!(c.compose(&one), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn b_series_coefficients() {
        let b = b_series(5).unwrap();
        assert_eq!(b.coefficients(), &[1, 1, 3, 11, 44]);
        // agrees term-for-term with an independently built composition
        let c = catalan_series(10).unwrap();
        let xc = PowerSeries::x(10).multiply(&c).unwrap();
        assert_eq!(c.compose(&xc).unwrap().truncate(5), b_series(5).unwrap());
    }

    #[test]
    fn btilde_embedding() {
        let bt = btilde_series(8).unwrap();
        assert_eq!(bt.coefficients(), &[0, 1, 0, 1, 0, 3, 0, 11]);
    }

    #[test]
    fn sum_identity() {
        assert!(check_sum_identity(1).unwrap());
        assert!(check_sum_identity(2).unwrap());
        for k in 1..=12 {
            assert!(check_sum_identity(k).unwrap(), "fails at k={k}");
        }
        assert!(check_sum_identity(0).is_err());
    }

    #[test]
    fn btilde_identity() {
        assert!(check_btilde_identity(2).unwrap());
        assert!(check_btilde_identity(25).unwrap());
        assert!(check_btilde_identity(1).is_err());
        // corrupting a single coefficient breaks the functional equation
        let mut bad = btilde_series(25).unwrap();
        bad.coefficients[7] += 1;
        assert!(!btilde_satisfies_identity(&bad, 25).unwrap());
    }
}
