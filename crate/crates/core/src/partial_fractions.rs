//! Partial fractions over normalized cyclotomic bases.
//!
//! For `N / Π_d C_d^{e_d}` the block belonging to `d` is
//! `B_d / C_d^{e_d}` with `B_d ≡ N · (D / C_d^{e_d})^{-1} (mod C_d^{e_d})`,
//! and expanding `B_d` in powers of `C_d` splits the block into
//! `Σ_j A_{d,j} / C_d^j` with `deg A_{d,j} < deg C_d`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cyclotomic::{cyclotomic_normalized, CyclotomicFactorization};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::series::{series_expand, PowerSeries};
use crate::Rational;

/// `numerator / C_period^power`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFractionTerm {
    pub period: u64,
    pub power: u32,
    pub numerator: Polynomial,
}

impl PartialFractionTerm {
    /// Maclaurin coefficients `0..=order` of this single term.
    pub fn series(&self, order: usize) -> Result<PowerSeries> {
        // A / C_d^j = A · (Π_{e|d, e<d} C_e)^j / (1 - q^d)^j
        let cofactor = cyclotomic_cofactor(self.period)?.pow(self.power);
        let parts = vec![self.period; self.power as usize];
        series_expand(&(&self.numerator * &cofactor), &parts, order)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFractionDecomposition {
    pub polynomial_part: Polynomial,
    /// Sorted by period, then by power.
    pub terms: Vec<PartialFractionTerm>,
}

impl PartialFractionDecomposition {
    pub fn terms_for_period(&self, period: u64) -> impl Iterator<Item = &PartialFractionTerm> + '_ {
        self.terms.iter().filter(move |t| t.period == period)
    }

    /// Series of the sum of all terms with base `C_period`.
    pub fn block_series(&self, period: u64, order: usize) -> Result<PowerSeries> {
        let mut acc = PowerSeries::from_polynomial(&Polynomial::zero(), order);
        for term in self.terms_for_period(period) {
            acc = acc.add(&term.series(order)?)?;
        }
        Ok(acc)
    }

    /// Series of the whole decomposition, polynomial part included.
    pub fn series(&self, order: usize) -> Result<PowerSeries> {
        let mut acc = PowerSeries::from_polynomial(&self.polynomial_part, order);
        for term in &self.terms {
            acc = acc.add(&term.series(order)?)?;
        }
        Ok(acc)
    }
}

/// `(1 - q^d) / C_d = Π_{e | d, e < d} C_e`
fn cyclotomic_cofactor(d: u64) -> Result<Polynomial> {
    let mut one_minus = vec![Rational::zero(); d as usize + 1];
    one_minus[0] = Rational::one();
    one_minus[d as usize] = -Rational::one();
    Polynomial::from_coeffs(one_minus).div_exact(&cyclotomic_normalized(d)?)
}

/// Decomposes the proper rational function `numerator / Π_d C_d^{e_d}`.
pub fn partial_fractions(
    numerator: &Polynomial,
    factorization: &CyclotomicFactorization,
) -> Result<PartialFractionDecomposition> {
    let total = factorization.degree() as usize;
    if numerator.degree().is_some_and(|d| d >= total) {
        return Err(Error::Domain(
            "numerator degree must be below the denominator degree; split off the polynomial part first".into(),
        ));
    }
    let bases: Vec<(u64, u32, Polynomial)> = factorization
        .iter()
        .map(|(d, e)| Ok((d, e, cyclotomic_normalized(d)?)))
        .collect::<Result<_>>()?;
    let int_bases: Vec<Vec<BigInt>> = bases.iter().map(|(_, _, c)| to_int_coeffs(c)).collect();

    let mut terms = Vec::new();
    for (idx, (d, e, base)) in bases.iter().enumerate() {
        let modulus = base.pow(*e);
        let int_modulus = to_int_coeffs(&modulus);

        // Cofactor D / C_d^{e_d} reduced modulo C_d^{e_d}, in integers: every
        // C_d has unit leading coefficient so the reduction never divides.
        let mut cof = vec![BigInt::one()];
        for (jdx, (_, ej, _)) in bases.iter().enumerate() {
            if jdx == idx {
                continue;
            }
            for _ in 0..*ej {
                cof = int_mulmod(&cof, &int_bases[jdx], &int_modulus);
            }
        }
        let cof = from_int_coeffs(cof);

        let inv = inverse_mod_power(&cof, base, *e)?;
        let mut block = (numerator * &inv).rem(&modulus)?;

        // C_d-adic digits: block = Σ_i a_i C_d^i gives a_i / C_d^{e-i}.
        for i in 0..*e {
            let (q, digit) = block.div_rem(base)?;
            if !digit.is_zero() {
                terms.push(PartialFractionTerm { period: *d, power: e - i, numerator: digit });
            }
            block = q;
        }
        debug_assert!(block.is_zero());
    }
    terms.sort_by_key(|t| (t.period, t.power));
    Ok(PartialFractionDecomposition { polynomial_part: Polynomial::zero(), terms })
}

/// Inverse of `a` modulo `base^power` by Newton lifting from an inverse
/// modulo `base`.
fn inverse_mod_power(a: &Polynomial, base: &Polynomial, power: u32) -> Result<Polynomial> {
    let mut inv = a.inverse_mod(base)?;
    let two = Polynomial::constant(Rational::from_integer(2.into()));
    let mut reached = 1u32;
    while reached < power {
        reached = (2 * reached).min(power);
        let modulus = base.pow(reached);
        let correction = &two - &(a * &inv).rem(&modulus)?;
        inv = (&inv * &correction).rem(&modulus)?;
    }
    Ok(inv)
}

fn to_int_coeffs(p: &Polynomial) -> Vec<BigInt> {
    p.coeffs()
        .iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            c.to_integer()
        })
        .collect()
}

fn from_int_coeffs(c: Vec<BigInt>) -> Polynomial {
    Polynomial::from_coeffs(c.into_iter().map(Rational::from_integer).collect())
}

/// `a · b mod m` for integer polynomials with `m` having leading coefficient ±1.
fn int_mulmod(a: &[BigInt], b: &[BigInt], m: &[BigInt]) -> Vec<BigInt> {
    let mut prod = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                prod[i + j] += x * y;
            }
        }
    }
    let dm = m.len() - 1;
    let lead = &m[dm];
    debug_assert!(lead.magnitude().is_one());
    for top in (dm..prod.len()).rev() {
        if prod[top].is_zero() {
            continue;
        }
        let c = if lead.is_one() { prod[top].clone() } else { -prod[top].clone() };
        let shift = top - dm;
        for (k, mk) in m.iter().enumerate() {
            if !mk.is_zero() {
                prod[shift + k] -= &c * mk;
            }
        }
    }
    prod.truncate(dm.max(1));
    while prod.len() > 1 && prod.last().is_some_and(Zero::is_zero) {
        prod.pop();
    }
    prod
}
