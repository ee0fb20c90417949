//! Binary fixed-point reals on top of `BigInt`.
//!
//! A value is `mant / 2^bits`, where `bits` comes from an explicit
//! [`Precision`]. Nothing here reads ambient precision state: every
//! constructor takes the precision, and binary operations require both
//! operands to share it.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt::Write;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Working precision: a decimal digit count and the matching number of
/// fractional bits (with a fixed guard margin).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Precision {
    digits: u32,
    bits: u32,
}

const GUARD_BITS: u32 = 16;

impl Precision {
    pub fn digits(digits: u32) -> Self {
        // log2(10) < 3.3220
        let bits = (u64::from(digits) * 33_220).div_ceil(10_000) as u32 + GUARD_BITS;
        Precision { digits, bits }
    }

    pub fn decimal_digits(self) -> u32 {
        self.digits
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    fn with_extra_bits(self, extra: u32) -> Self {
        Precision { digits: self.digits, bits: self.bits + extra }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigReal {
    mant: BigInt,
    prec: Precision,
}

/// `x / 2^s` rounded to nearest.
fn shr_round(x: &BigInt, s: u32) -> BigInt {
    if s == 0 {
        return x.clone();
    }
    let half = BigInt::one() << (s - 1);
    (x + half) >> s
}

impl BigReal {
    pub fn zero(prec: Precision) -> Self {
        BigReal { mant: BigInt::zero(), prec }
    }

    pub fn from_int(v: impl Into<BigInt>, prec: Precision) -> Self {
        BigReal { mant: v.into() << prec.bits, prec }
    }

    /// `num / den`, rounded to nearest.
    pub fn from_ratio(num: impl Into<BigInt>, den: impl Into<BigInt>, prec: Precision) -> Self {
        let (num, den) = (num.into(), den.into());
        assert!(!den.is_zero(), "zero denominator");
        let scaled = num << (prec.bits + 1);
        let q = scaled.div_floor(&den);
        BigReal { mant: shr_round(&q, 1), prec }
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    fn same(&self, other: &BigReal) {
        debug_assert_eq!(self.prec, other.prec, "mixed precisions");
    }

    pub fn add(&self, other: &BigReal) -> BigReal {
        self.same(other);
        BigReal { mant: &self.mant + &other.mant, prec: self.prec }
    }

    pub fn sub(&self, other: &BigReal) -> BigReal {
        self.same(other);
        BigReal { mant: &self.mant - &other.mant, prec: self.prec }
    }

    pub fn neg(&self) -> BigReal {
        BigReal { mant: -&self.mant, prec: self.prec }
    }

    pub fn abs(&self) -> BigReal {
        BigReal { mant: self.mant.abs(), prec: self.prec }
    }

    pub fn mul(&self, other: &BigReal) -> BigReal {
        self.same(other);
        BigReal { mant: shr_round(&(&self.mant * &other.mant), self.prec.bits), prec: self.prec }
    }

    pub fn mul_int(&self, k: impl Into<BigInt>) -> BigReal {
        BigReal { mant: &self.mant * k.into(), prec: self.prec }
    }

    /// Division by an integer, rounded to nearest.
    pub fn div_int(&self, k: impl Into<BigInt>) -> BigReal {
        let k = k.into();
        let q = (&self.mant << 1u32).div_floor(&k);
        BigReal { mant: shr_round(&q, 1), prec: self.prec }
    }

    pub fn div(&self, other: &BigReal) -> BigReal {
        self.same(other);
        assert!(!other.mant.is_zero(), "division by zero");
        let q = (&self.mant << (self.prec.bits + 1)).div_floor(&other.mant);
        BigReal { mant: shr_round(&q, 1), prec: self.prec }
    }

    pub fn sqrt(&self) -> BigReal {
        assert!(!self.mant.is_negative(), "square root of a negative number");
        BigReal { mant: (&self.mant << self.prec.bits).sqrt(), prec: self.prec }
    }

    /// The same value on another precision grid (rounded when coarser).
    pub fn with_precision(&self, prec: Precision) -> BigReal {
        let mant = match prec.bits.cmp(&self.prec.bits) {
            Ordering::Greater => &self.mant << (prec.bits - self.prec.bits),
            Ordering::Less => shr_round(&self.mant, self.prec.bits - prec.bits),
            Ordering::Equal => self.mant.clone(),
        };
        BigReal { mant, prec }
    }

    /// Nearest integer (ties away from zero are irrelevant at this scale).
    pub fn round(&self) -> BigInt {
        shr_round(&self.mant, self.prec.bits)
    }

    /// `|x - round(x)|`
    pub fn distance_to_integer(&self) -> BigReal {
        let nearest = BigReal::from_int(self.round(), self.prec);
        self.sub(&nearest).abs()
    }

    /// Number of bits in the integer part.
    pub fn integer_bits(&self) -> u64 {
        (self.mant.abs() >> self.prec.bits).bits()
    }

    /// Decimal rendering with `places` digits after the point (truncated).
    pub fn to_decimal(&self, places: u32) -> String {
        let scaled = (self.mant.abs() * BigInt::from(10u32).pow(places)) >> self.prec.bits;
        let mut digits = scaled.to_str_radix(10);
        let p = places as usize;
        if digits.len() <= p {
            let pad = p + 1 - digits.len();
            let mut z = String::new();
            for _ in 0..pad {
                z.push('0');
            }
            z.push_str(&digits);
            digits = z;
        }
        let (int, frac) = digits.split_at(digits.len() - p);
        let mut out = String::new();
        if self.mant.sign() == Sign::Minus {
            out.push('-');
        }
        let _ = write!(out, "{int}");
        if p > 0 {
            let _ = write!(out, ".{frac}");
        }
        out
    }

    /// π by Machin's formula.
    pub fn pi(prec: Precision) -> BigReal {
        let work = prec.bits + 16;
        let atan_inv = |m: u32| -> BigInt {
            let m = BigInt::from(m);
            let m2 = &m * &m;
            let mut power = (BigInt::one() << work) / &m;
            let mut acc = BigInt::zero();
            let mut j = 0u32;
            while !power.is_zero() {
                let t = &power / BigInt::from(2 * j + 1);
                if j % 2 == 0 {
                    acc += t;
                } else {
                    acc -= t;
                }
                power /= &m2;
                j += 1;
            }
            acc
        };
        let v = atan_inv(5) * 16 - atan_inv(239) * 4;
        BigReal { mant: shr_round(&v, 16), prec }
    }

    /// `e^x` with relative accuracy close to the working precision.
    pub fn exp(&self) -> BigReal {
        if self.mant.is_negative() {
            let one = BigReal::from_int(1, self.prec);
            return one.div(&self.neg().exp());
        }
        // Halve the argument until it is below 2^-8, sum the Taylor series,
        // then square back up; each squaring costs a bit, so carry extra.
        let int_bits = self.integer_bits() as u32;
        let halvings = int_bits + 8;
        let work = self.prec.with_extra_bits(halvings + 32);
        let r = BigReal { mant: self.with_precision(work).mant >> halvings, prec: work };
        let mut sum = BigReal::from_int(1, work);
        let mut term = BigReal::from_int(1, work);
        let mut j = 1u32;
        loop {
            term = term.mul(&r).div_int(j);
            if term.is_zero() {
                break;
            }
            sum = sum.add(&term);
            j += 1;
        }
        for _ in 0..halvings {
            sum = sum.mul(&sum);
        }
        sum.with_precision(self.prec)
    }

    /// `(cos x, sin x)` by Taylor series; meant for `|x| ≤ 1`.
    pub fn cos_sin(&self) -> (BigReal, BigReal) {
        let work = self.prec.with_extra_bits(16);
        let x = self.with_precision(work);
        let x2 = x.mul(&x);
        let mut cos = BigReal::from_int(1, work);
        let mut sin = x.clone();
        let mut ct = cos.clone();
        let mut st = x;
        let mut j = 1u32;
        loop {
            ct = ct.mul(&x2).div_int(-i64::from((2 * j - 1) * (2 * j)));
            st = st.mul(&x2).div_int(-i64::from((2 * j) * (2 * j + 1)));
            if ct.is_zero() && st.is_zero() {
                break;
            }
            cos = cos.add(&ct);
            sin = sin.add(&st);
            j += 1;
        }
        (cos.with_precision(self.prec), sin.with_precision(self.prec))
    }

    /// `x·cosh x - sinh x`, summed as a series for small `x` where the
    /// direct form cancels.
    pub fn x_cosh_minus_sinh(&self) -> BigReal {
        let one = BigReal::from_int(1, self.prec);
        if self.abs().mant >= one.mant {
            let e = self.exp();
            let ei = one.div(&e);
            let cosh = e.add(&ei).div_int(2);
            let sinh = e.sub(&ei).div_int(2);
            return self.mul(&cosh).sub(&sinh);
        }
        // Σ_{j≥1} x^{2j+1} · 2j / (2j+1)!
        let work = self.prec.with_extra_bits(16);
        let x = self.with_precision(work);
        let x2 = x.mul(&x);
        let mut power_over_fact = x; // x^{2j+1} / (2j+1)!
        let mut sum = BigReal::zero(work);
        let mut j = 1u32;
        loop {
            power_over_fact = power_over_fact.mul(&x2).div_int((2 * j) * (2 * j + 1));
            if power_over_fact.is_zero() {
                break;
            }
            sum = sum.add(&power_over_fact.mul_int(2 * j));
            j += 1;
        }
        sum.with_precision(self.prec)
    }

    pub fn cmp_abs(&self, other: &BigReal) -> Ordering {
        self.same(other);
        self.mant.abs().cmp(&other.mant.abs())
    }

    pub fn lt(&self, other: &BigReal) -> bool {
        self.same(other);
        self.mant < other.mant
    }
}
