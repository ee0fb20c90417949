//! Truncated power series of rational functions.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::Rational;

/// Coefficients `0..=T` of a formal power series, explicit zeros retained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    /// The first `order + 1` coefficients of `poly`, zero padded.
    pub fn from_polynomial(poly: &Polynomial, order: usize) -> Self {
        PowerSeries { coeffs: (0..=order).map(|k| poly.coeff(k)).collect() }
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Domain("a power series needs at least one coefficient".into()));
        }
        Ok(PowerSeries { coeffs })
    }

    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    /// `numerator / denominator` to the given order. The denominator must have
    /// a nonzero constant term.
    pub fn from_rational(numerator: &Polynomial, denominator: &Polynomial, order: usize) -> Result<Self> {
        let d0 = denominator.coeff(0);
        if d0.is_zero() {
            return Err(Error::Domain("series denominator vanishes at q = 0".into()));
        }
        let inv = d0.recip();
        let den = denominator.coeffs();
        let mut out: Vec<Rational> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = numerator.coeff(n);
            for (j, d) in den.iter().enumerate().skip(1).take(n) {
                if !d.is_zero() {
                    acc -= d * &out[n - j];
                }
            }
            out.push(acc * &inv);
        }
        Ok(PowerSeries { coeffs: out })
    }

    pub fn add(&self, other: &PowerSeries) -> Result<PowerSeries> {
        if self.coeffs.len() != other.coeffs.len() {
            return Err(Error::Domain("series truncation orders differ".into()));
        }
        Ok(PowerSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }
}

/// Coefficients `0..=order` of `numerator(q) / Π_{s∈S} (1 - q^s)`.
///
/// Each factor `1/(1 - q^s)` is applied as a running sum with stride `s`,
/// which is the classical coin-change recurrence. The work is done over a
/// common denominator in integer arithmetic.
pub fn series_expand(numerator: &Polynomial, parts: &[u64], order: usize) -> Result<PowerSeries> {
    if parts.contains(&0) {
        return Err(Error::Domain("parts must be positive".into()));
    }
    let den = numerator.common_denominator();
    let mut acc: Vec<BigInt> = vec![BigInt::zero(); order + 1];
    for (k, c) in numerator.coeffs().iter().enumerate().take(order + 1) {
        acc[k] = c.numer() * (&den / c.denom());
    }
    for &s in parts {
        let s = s as usize;
        for n in s..=order {
            let prev = acc[n - s].clone();
            acc[n] += prev;
        }
    }
    Ok(PowerSeries { coeffs: acc.into_iter().map(|a| Rational::new(a, den.clone())).collect() })
}

/// Integer-only variant of [`series_expand`] for the numerator `1`.
pub fn count_series(parts: &[u64], order: usize) -> Vec<BigInt> {
    let mut acc: Vec<BigInt> = vec![BigInt::zero(); order + 1];
    acc[0] = BigInt::from(1);
    for &s in parts {
        let s = s as usize;
        if s == 0 {
            continue;
        }
        for n in s..=order {
            let prev = acc[n - s].clone();
            acc[n] += prev;
        }
    }
    acc
}
