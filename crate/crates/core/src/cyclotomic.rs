//! Cyclotomic factors of `1 - q^s` and the factorization of
//! `Π_{s∈S} (1 - q^s)`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::Rational;

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn mobius(mut n: u64) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

pub fn euler_phi(n: u64) -> u64 {
    let (mut m, mut phi) = (n, n);
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if m > 1 {
        phi -= phi / m;
    }
    phi
}

/// The `d`-th cyclotomic polynomial normalized to constant term 1:
/// `C_1 = 1 - q` and `C_d = Φ_d` otherwise, so that
/// `1 - q^s = Π_{d | s} C_d(q)`.
pub fn cyclotomic_normalized(d: u64) -> Result<Polynomial> {
    if d == 0 {
        return Err(Error::Domain("cyclotomic index must be at least 1".into()));
    }
    // C_d = Π_{e | d} (1 - q^e)^{μ(d/e)}; multiply the numerator factors
    // first so every division below is exact on a polynomial.
    let len = d as usize + 1;
    let mut c = vec![BigInt::zero(); len];
    c[0] = BigInt::one();
    let divs = divisors(d);
    for &e in &divs {
        if mobius(d / e) == 1 {
            let e = e as usize;
            for i in (e..len).rev() {
                let t = c[i - e].clone();
                c[i] -= t;
            }
        }
    }
    for &e in &divs {
        if mobius(d / e) == -1 {
            let e = e as usize;
            for i in e..len {
                let t = c[i - e].clone();
                c[i] += t;
            }
        }
    }
    c.truncate(euler_phi(d) as usize + 1);
    Ok(Polynomial::from_coeffs(c.into_iter().map(Rational::from_integer).collect()))
}

/// Multiplicity of each normalized cyclotomic factor in `Π_{s∈S} (1 - q^s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicFactorization {
    multiplicities: BTreeMap<u64, u32>,
}

impl CyclotomicFactorization {
    pub fn from_multiplicities(multiplicities: BTreeMap<u64, u32>) -> Self {
        let multiplicities = multiplicities.into_iter().filter(|&(_, e)| e > 0).collect();
        CyclotomicFactorization { multiplicities }
    }

    pub fn multiplicities(&self) -> &BTreeMap<u64, u32> {
        &self.multiplicities
    }

    pub fn multiplicity(&self, d: u64) -> u32 {
        self.multiplicities.get(&d).copied().unwrap_or(0)
    }

    /// `(d, e_d)` pairs in increasing period order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.multiplicities.iter().map(|(&d, &e)| (d, e))
    }

    /// Degree of the product `Π C_d^{e_d}`.
    pub fn degree(&self) -> u64 {
        self.iter().map(|(d, e)| euler_phi(d) * u64::from(e)).sum()
    }

    /// Expands `Π C_d^{e_d}` back into a polynomial.
    pub fn product(&self) -> Polynomial {
        self.iter().fold(Polynomial::one(), |acc, (d, e)| {
            let c = cyclotomic_normalized(d).expect("periods are positive");
            &acc * &c.pow(e)
        })
    }
}

/// `e_d = |{ s ∈ S : d | s }|` for every `d` that divides some element.
pub fn factor_denominator(parts: &[u64]) -> Result<CyclotomicFactorization> {
    if parts.is_empty() {
        return Err(Error::Domain("part multiset must be nonempty".into()));
    }
    if parts.contains(&0) {
        return Err(Error::Domain("parts must be positive".into()));
    }
    let mut multiplicities = BTreeMap::new();
    for &s in parts {
        for d in divisors(s) {
            *multiplicities.entry(d).or_insert(0u32) += 1;
        }
    }
    Ok(CyclotomicFactorization { multiplicities })
}
