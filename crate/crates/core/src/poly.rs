//! Dense univariate polynomials over the rationals.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write};
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// Coefficients in ascending degree; never carries a trailing zero, so the
/// zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `x^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Scale to a monic polynomial. The zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lead) => {
                let inv = lead.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Horner evaluation at an integer, carried out over a common denominator
    /// so the inner loop stays in integer arithmetic.
    pub fn eval_int(&self, x: &BigInt) -> Rational {
        let den = self.common_denominator();
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.numer() * (&den / c.denom());
        }
        Rational::new(acc, den)
    }

    /// Least common multiple of the coefficient denominators (1 for zero).
    pub fn common_denominator(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::Domain("polynomial division by zero".into()))?;
        let lead_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    pub fn rem(&self, divisor: &Polynomial) -> Result<Polynomial> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Exact quotient; errors when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Polynomial> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Domain("polynomial division is not exact".into()));
        }
        Ok(q)
    }

    /// Extended Euclid: returns `(g, u, v)` with `g` monic and
    /// `u*a + v*b = g`.
    pub fn xgcd(a: &Polynomial, b: &Polynomial) -> Result<(Polynomial, Polynomial, Polynomial)> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::Domain("gcd of two zero polynomials".into()));
        }
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s);
            t0 = core::mem::replace(&mut t1, t);
        }
        let inv = r0.leading().expect("nonzero gcd").recip();
        Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    /// Inverse of `self` modulo `modulus`, when they are coprime.
    pub fn inverse_mod(&self, modulus: &Polynomial) -> Result<Polynomial> {
        let reduced = self.rem(modulus)?;
        let (g, u, _) = Self::xgcd(&reduced, modulus)?;
        if g.degree() != Some(0) {
            return Err(Error::Domain("polynomial is not invertible modulo the given modulus".into()));
        }
        u.rem(modulus)
    }

    /// Render in descending degree with `var` as the indeterminate, e.g.
    /// `5*n^2/48 - n/32 + 1`.
    pub fn render(&self, var: &str) -> String {
        let mut out = String::new();
        if self.is_zero() {
            out.push('0');
            return out;
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            first = false;
            write_term(&mut out, &c.abs(), var, k);
        }
        out
    }
}

/// Writes `|c| * var^k` as `p*var^k/q`, dropping unit factors.
fn write_term(out: &mut String, c: &Rational, var: &str, k: usize) {
    let (p, q) = (c.numer(), c.denom());
    if k == 0 {
        let _ = write!(out, "{p}");
    } else {
        if !p.is_one() {
            let _ = write!(out, "{p}*");
        }
        out.push_str(var);
        if k > 1 {
            let _ = write!(out, "^{k}");
        }
    }
    if !q.is_one() {
        let _ = write!(out, "/{q}");
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("q"))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, Rational::zero());
        for (a, b) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);
