//! The Hardy–Ramanujan–Rademacher series for `p(n)`:
//!
//! ```text
//! p(n) = 1/(π√2) Σ_{k≥1} √k · A_k(n) · d/dn [ sinh(c_k √λ) / √λ ],
//! λ = n - 1/24,  c_k = (π/k)·√(2/3),
//! A_k(n) = Σ_{0≤h<k, gcd(h,k)=1} cos(π (s(h,k) - 2nh/k)).
//! ```
//!
//! The derivative is expanded analytically,
//! `(x cosh x - sinh x) / (2 λ^{3/2})` with `x = c_k √λ`, and the cosine
//! sum is used directly because the imaginary parts of the exponential form
//! cancel in conjugate pairs.

pub mod bigreal;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::Rational;
pub use bigreal::{BigReal, Precision};

/// `12k² · s(h, k)`, an exact integer numerator.
fn dedekind_numerator(h: u64, k: u64) -> BigInt {
    // (j/k - 1/2)((hj mod k)/k - 1/2) = (2j - k)(2·(hj mod k) - k) / (4k²)
    let (h, k) = (i128::from(h), i128::from(k));
    let mut acc: i128 = 0;
    for j in 1..k {
        let r = (h * j).rem_euclid(k);
        acc += (2 * j - k) * (2 * r - k);
    }
    BigInt::from(acc) * 3
}

/// The Dedekind sum `s(h, k)`, summed directly in exact arithmetic.
pub fn dedekind_sum(h: u64, k: u64) -> Result<Rational> {
    if k == 0 {
        return Err(Error::Domain("Dedekind sum needs k >= 1".into()));
    }
    if h.gcd(&k) != 1 {
        return Err(Error::Domain(alloc::format!("Dedekind sum needs gcd(h, k) = 1, got gcd({h}, {k}) > 1")));
    }
    Ok(Rational::new(dedekind_numerator(h, k), BigInt::from(12u64 * k * k)))
}

/// Tunables for [`hrr_certified`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertifyConfig {
    /// Initial term count is `max(min_terms, ⌈terms_per_sqrt · √n⌉)`.
    pub terms_per_sqrt: u64,
    pub min_terms: u64,
    /// Second evaluation runs at this many more decimal digits.
    pub extra_digits: u32,
    pub max_attempts: u32,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig { terms_per_sqrt: 2, min_terms: 10, extra_digits: 10, max_attempts: 8 }
    }
}

/// Outcome of a certified evaluation, with the parameters that succeeded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certified {
    pub value: BigInt,
    pub terms: u64,
    pub digits: u32,
    pub attempts: u32,
}

/// Rademacher evaluator with caches for Dedekind data and cosine tables, so
/// repeated evaluations share work.
#[derive(Debug, Default)]
pub struct Rademacher {
    config: CertifyConfig,
    /// k → [(h, 6k·s(h,k) mod 12k)]
    phases: BTreeMap<u64, Vec<(u64, u64)>>,
    /// (k, bits) → cos(π j / 6k) for j = 0..=3k
    cos_tables: BTreeMap<(u64, u32), Vec<BigReal>>,
}

impl Rademacher {
    pub fn new(config: CertifyConfig) -> Self {
        Rademacher { config, ..Default::default() }
    }

    pub fn config(&self) -> CertifyConfig {
        self.config
    }

    fn phases(&mut self, k: u64) -> Result<&[(u64, u64)]> {
        if !self.phases.contains_key(&k) {
            let mut out = Vec::new();
            for h in 0..k {
                if h.gcd(&k) != 1 {
                    continue;
                }
                // 6k·s(h,k) = numerator / (2k)
                let num = dedekind_numerator(h, k);
                let (q, r) = num.div_rem(&BigInt::from(2 * k));
                if !r.is_zero() {
                    return Err(Error::Integrity(alloc::format!("6k·s({h},{k}) is not an integer")));
                }
                let m = q.mod_floor(&BigInt::from(12 * k));
                out.push((h, u64::try_from(m).expect("phase fits")));
            }
            self.phases.insert(k, out);
        }
        Ok(&self.phases[&k])
    }

    fn cos_table(&mut self, k: u64, prec: Precision, pi: &BigReal) -> &[BigReal] {
        self.cos_tables.entry((k, prec.bits())).or_insert_with(|| {
            // rotate by e^{iπ/6k}; carry guard bits for the accumulated error
            let theta = pi.div_int(6 * k);
            let (c1, s1) = theta.cos_sin();
            let mut table = Vec::with_capacity(3 * k as usize + 1);
            let (mut c, mut s) = (BigReal::from_int(1, prec), BigReal::zero(prec));
            for _ in 0..=3 * k {
                table.push(c.clone());
                let nc = c.mul(&c1).sub(&s.mul(&s1));
                let ns = s.mul(&c1).add(&c.mul(&s1));
                c = nc;
                s = ns;
            }
            table
        })
    }

    /// `A_k(n)` at the given precision.
    pub fn a_k(&mut self, n: u64, k: u64, prec: Precision, pi: &BigReal) -> Result<BigReal> {
        let phases = self.phases(k)?.to_vec();
        let period = 12 * k;
        let table = self.cos_table(k, prec, pi);
        let n_mod = n % k;
        let mut acc = BigReal::zero(prec);
        for (h, six_ks) in phases {
            // angle / π = (6k·s(h,k) - 12nh) / 6k
            let j = (six_ks + period - (12 * ((n_mod * h) % k)) % period) % period;
            let (idx, neg) = match j {
                j if j <= 3 * k => (j, false),
                j if j <= 6 * k => (6 * k - j, true),
                j if j <= 9 * k => (j - 6 * k, true),
                j => (12 * k - j, false),
            };
            let c = &table[idx as usize];
            acc = if neg { acc.sub(c) } else { acc.add(c) };
        }
        Ok(acc)
    }

    /// Sum of the first `terms` terms at `digits` decimal digits.
    pub fn partial_sum(&mut self, n: u64, terms: u64, digits: u32) -> Result<BigReal> {
        if n == 0 {
            return Err(Error::Domain("the Rademacher series is evaluated at n >= 1".into()));
        }
        if terms == 0 {
            return Err(Error::Domain("need at least one term".into()));
        }
        if digits < 15 {
            return Err(Error::Precision(alloc::format!("{digits} digits is below the 15-digit minimum")));
        }
        let prec = Precision::digits(digits);
        let pi = BigReal::pi(prec);
        let lambda = BigReal::from_ratio(24 * BigInt::from(n) - 1, 24, prec);
        let sqrt_lambda = lambda.sqrt();
        let two_lambda_32 = lambda.mul(&sqrt_lambda).mul_int(2);
        let c1 = pi.mul(&BigReal::from_ratio(2, 3, prec).sqrt());
        let prefactor = BigReal::from_int(1, prec).div(&pi.mul(&BigReal::from_int(2, prec).sqrt()));

        let mut sum = BigReal::zero(prec);
        for k in 1..=terms {
            let a = self.a_k(n, k, prec, &pi)?;
            if a.is_zero() {
                continue;
            }
            let x = c1.div_int(k).mul(&sqrt_lambda);
            let psi_prime = x.x_cosh_minus_sinh().div(&two_lambda_32);
            let term = prefactor.mul(&BigReal::from_int(k, prec).sqrt()).mul(&a).mul(&psi_prime);
            if k == 1 {
                let int_digits = decimal_digits_of_bits(term.integer_bits());
                if u64::from(digits) < int_digits + 5 {
                    return Err(Error::Precision(alloc::format!(
                        "{digits} digits cannot resolve the leading term of p({n}), which has {int_digits} integer digits"
                    )));
                }
            }
            sum = sum.add(&term);
        }
        Ok(sum)
    }

    /// Exact `p(n)` from the truncated series, or a certification error.
    ///
    /// The sum is evaluated at two precisions. It is accepted when both
    /// round to the same integer and
    /// `|x - round(x)| + tail(n, T) + numerical slack < 1/2`, where the
    /// truncation tail is bounded elementarily: `|A_k| ≤ k` and
    /// `ψ'_k ≤ (c_k³/6)·e^{c_k² λ}` give
    /// `|term_k| ≤ 0.6331·k^{-3/2}·e^{c_1² λ / k²}`, and summing over `k > T`
    /// yields `tail ≤ 1.27·e^{6.58·n/T²} / √T`.
    pub fn certified(&mut self, n: u64) -> Result<Certified> {
        if n == 0 {
            return Err(Error::Domain("the Rademacher series is evaluated at n >= 1".into()));
        }
        let cfg = self.config;
        let mut terms = cfg.min_terms.max((cfg.terms_per_sqrt * n.sqrt()) + 1).max(1);
        let mut digits = working_digits(n, terms);
        for attempt in 1..=cfg.max_attempts {
            let low = self.partial_sum(n, terms, digits)?;
            let high = self.partial_sum(n, terms, digits + cfg.extra_digits)?;
            let (r_low, r_high) = (low.round(), high.round());
            if r_low == r_high && self.margin_ok(n, terms, &low, &high) {
                return Ok(Certified { value: r_high, terms, digits, attempts: attempt });
            }
            terms = terms + terms.div_ceil(2);
            digits = working_digits(n, terms).max(digits + cfg.extra_digits);
        }
        Err(Error::Certification { n: alloc::format!("{n}"), attempts: cfg.max_attempts })
    }

    fn margin_ok(&self, n: u64, terms: u64, low: &BigReal, high: &BigReal) -> bool {
        let check = Precision::digits(30);
        let dist = high.distance_to_integer().with_precision(check);
        let drift = high.sub(&low.with_precision(high.precision())).abs().with_precision(check);
        let slack = drift.mul_int(10).add(&BigReal::from_ratio(1, BigInt::from(10u64).pow(10), check));
        let t = BigInt::from(terms);
        let exponent = BigReal::from_ratio(BigInt::from(658u64) * n, BigInt::from(100u64) * &t * &t, check);
        let tail = BigReal::from_ratio(127, 100, check)
            .mul(&exponent.exp())
            .div(&BigReal::from_int(t, check).sqrt())
            .mul(&BigReal::from_ratio(101, 100, check));
        dist.add(&tail).add(&slack).lt(&BigReal::from_ratio(1, 2, check))
    }
}

/// Upper estimate of the decimal digits in an integer of `bits` bits.
fn decimal_digits_of_bits(bits: u64) -> u64 {
    // log10(2) < 0.30103
    (bits * 30_103).div_ceil(100_000)
}

/// Working precision: digits of `p(n)` (≈ π√(2n/3)/ln 10 ≤ 1.1141·√n) plus
/// room for `terms` summands and a fixed margin, rounded up to a multiple
/// of 10 so nearby `n` share cosine tables.
fn working_digits(n: u64, terms: u64) -> u32 {
    let int_digits = (11_141 * (n.sqrt() + 1)).div_ceil(10_000);
    let term_digits = u64::from(terms.ilog10()) + 1;
    let raw = int_digits + term_digits + 20;
    (raw.div_ceil(10) * 10) as u32
}

/// `HRR(n, T)` at `digits` decimal digits.
pub fn hrr_partial_sum(n: u64, terms: u64, digits: u32) -> Result<BigReal> {
    Rademacher::default().partial_sum(n, terms, digits)
}

/// Certified `p(n)` with the default configuration.
pub fn hrr_certified(n: u64) -> Result<BigInt> {
    Ok(Rademacher::default().certified(n)?.value)
}
