//! Quasi-polynomials and sums of quasi-polynomials of distinct periods.
//!
//! A period-`r` quasi-polynomial is stored as `[P_1, …, P_r]` and takes the
//! value `P_i(n)` when `n ≡ i (mod r)`, with `i = r` for `n ≡ 0`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cyclotomic::{divisors, mobius};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuasiPolynomial {
    period: u64,
    pieces: Vec<Polynomial>,
}

impl QuasiPolynomial {
    pub fn new(pieces: Vec<Polynomial>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::Domain("a quasi-polynomial needs at least one piece".into()));
        }
        Ok(QuasiPolynomial { period: pieces.len() as u64, pieces })
    }

    pub fn constant(c: Rational) -> Self {
        QuasiPolynomial { period: 1, pieces: vec![Polynomial::constant(c)] }
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    /// `[P_1, …, P_r]`
    pub fn pieces(&self) -> &[Polynomial] {
        &self.pieces
    }

    /// The piece used for residue `i ∈ 1..=r`.
    pub fn piece(&self, residue: u64) -> &Polynomial {
        &self.pieces[(residue as usize + self.pieces.len() - 1) % self.pieces.len()]
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.iter().all(Polynomial::is_zero)
    }

    /// Largest piece degree; `None` when every piece vanishes.
    pub fn degree(&self) -> Option<usize> {
        self.pieces.iter().filter_map(Polynomial::degree).max()
    }

    fn piece_index(&self, n: &BigInt) -> usize {
        let r = BigInt::from(self.period);
        let t = n.mod_floor(&r).to_usize().expect("residue fits");
        (t + self.pieces.len() - 1) % self.pieces.len()
    }

    /// Value at `n ≥ 0`.
    pub fn eval(&self, n: &BigInt) -> Result<Rational> {
        if n.is_negative() {
            return Err(Error::Domain("quasi-polynomials are evaluated at n >= 0".into()));
        }
        Ok(self.pieces[self.piece_index(n)].eval_int(n))
    }

    pub fn render(&self) -> String {
        let mut out = String::from("[");
        for (i, p) in self.pieces.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            out.push_str(&p.render("n"));
        }
        out.push(']');
        out
    }
}

/// The value of a single quasi-polynomial.
pub fn qp_eval(qp: &QuasiPolynomial, n: &BigInt) -> Result<Rational> {
    qp.eval(n)
}

/// A formula: zero below `shift`, and `Σ_c c(n - shift)` from there on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuasiPolynomialSum {
    shift: u64,
    components: Vec<QuasiPolynomial>,
}

impl QuasiPolynomialSum {
    /// Components must have strictly increasing periods.
    pub fn new(shift: u64, components: Vec<QuasiPolynomial>) -> Result<Self> {
        if components.windows(2).any(|w| w[0].period >= w[1].period) {
            return Err(Error::Domain("component periods must be strictly increasing".into()));
        }
        Ok(QuasiPolynomialSum { shift, components })
    }

    pub fn shift(&self) -> u64 {
        self.shift
    }

    pub fn with_shift(mut self, shift: u64) -> Self {
        self.shift = shift;
        self
    }

    pub fn components(&self) -> &[QuasiPolynomial] {
        &self.components
    }

    pub fn component(&self, period: u64) -> Option<&QuasiPolynomial> {
        self.components.iter().find(|c| c.period == period)
    }

    pub fn eval(&self, n: &BigInt) -> Result<BigInt> {
        qps_eval(self, n)
    }

    /// One line per component, `period r: [P_1, …, P_r]`, preceded by a
    /// `shift k` line when the shift is nonzero.
    pub fn render(&self) -> String {
        let mut out = String::new();
        if self.shift > 0 {
            let _ = writeln!(out, "shift {}", self.shift);
        }
        for c in &self.components {
            let _ = writeln!(out, "period {}: {}", c.period, c.render());
        }
        out
    }

    /// Precomputes an integer-only evaluator.
    pub fn compile(&self) -> CompiledFormula {
        CompiledFormula::new(self)
    }
}

impl fmt::Display for QuasiPolynomialSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Exact integer value of the formula at `n ≥ 0`.
///
/// A non-integer total means the stored formula is corrupt and is reported
/// as an integrity error rather than rounded.
pub fn qps_eval(f: &QuasiPolynomialSum, n: &BigInt) -> Result<BigInt> {
    if n.is_negative() {
        return Err(Error::Domain("formulae are evaluated at n >= 0".into()));
    }
    let shift = BigInt::from(f.shift);
    if *n < shift {
        return Ok(BigInt::zero());
    }
    let m = n - shift;
    let mut total = Rational::zero();
    for c in &f.components {
        total += c.eval(&m)?;
    }
    if !total.is_integer() {
        return Err(Error::Integrity(alloc::format!("formula value {total} at n = {n} is not an integer")));
    }
    Ok(total.to_integer())
}

/// Evaluation plan with every coefficient scaled to one common denominator,
/// so each evaluation is integer Horner plus one exact division.
#[derive(Clone, Debug)]
pub struct CompiledFormula {
    shift: u64,
    denominator: BigInt,
    components: Vec<(u64, Vec<Vec<BigInt>>)>,
}

impl CompiledFormula {
    fn new(f: &QuasiPolynomialSum) -> Self {
        let denominator = f
            .components
            .iter()
            .flat_map(|c| c.pieces.iter())
            .fold(BigInt::one(), |acc, p| acc.lcm(&p.common_denominator()));
        let components = f
            .components
            .iter()
            .map(|c| {
                let pieces = c
                    .pieces
                    .iter()
                    .map(|p| p.coeffs().iter().map(|a| a.numer() * (&denominator / a.denom())).collect())
                    .collect();
                (c.period, pieces)
            })
            .collect();
        CompiledFormula { shift: f.shift, denominator, components }
    }

    pub fn eval(&self, n: &BigInt) -> Result<BigInt> {
        if n.is_negative() {
            return Err(Error::Domain("formulae are evaluated at n >= 0".into()));
        }
        let shift = BigInt::from(self.shift);
        if *n < shift {
            return Ok(BigInt::zero());
        }
        let m = n - shift;
        let mut total = BigInt::zero();
        for (period, pieces) in &self.components {
            let t = m.mod_floor(&BigInt::from(*period)).to_usize().expect("residue fits");
            let piece = &pieces[(t + pieces.len() - 1) % pieces.len()];
            let mut acc = BigInt::zero();
            for c in piece.iter().rev() {
                acc = acc * &m + c;
            }
            total += acc;
        }
        let (q, r) = total.div_rem(&self.denominator);
        if !r.is_zero() {
            return Err(Error::Integrity(alloc::format!("formula value at n = {n} is not an integer")));
        }
        Ok(q)
    }

    /// Values at `n = start, start+1, …` for `count` points, for `n` within
    /// machine range.
    pub fn eval_range(&self, start: u64, count: usize) -> Result<Vec<BigInt>> {
        (0..count as u64).map(|i| self.eval(&BigInt::from(start + i))).collect()
    }
}

/// Canonical form: every component is split into its primitive parts (the
/// content that is genuinely of period `d` and of no proper divisor of `d`),
/// parts of equal period are merged, and vanishing components are dropped.
///
/// Two sums are equal as functions on `n ≥ shift` iff their normal forms are
/// identical.
pub fn normalize_qps(f: &QuasiPolynomialSum) -> QuasiPolynomialSum {
    let mut merged: BTreeMap<u64, Vec<Polynomial>> = BTreeMap::new();
    for c in &f.components {
        for (d, pieces) in primitive_parts(c) {
            let slot = merged.entry(d).or_insert_with(|| vec![Polynomial::zero(); d as usize]);
            for (acc, p) in slot.iter_mut().zip(pieces) {
                *acc = &*acc + &p;
            }
        }
    }
    let components = merged
        .into_iter()
        .filter(|(_, pieces)| pieces.iter().any(|p| !p.is_zero()))
        .map(|(period, pieces)| QuasiPolynomial { period, pieces })
        .collect();
    QuasiPolynomialSum { shift: f.shift, components }
}

/// Splits a period-`r` quasi-polynomial into primitive period-`d` parts for
/// each `d | r`, via Möbius inversion of the residue-averaging projections.
fn primitive_parts(qp: &QuasiPolynomial) -> Vec<(u64, Vec<Polynomial>)> {
    let r = qp.period as usize;
    // by_residue[t] is the polynomial used when n ≡ t (mod r), t ∈ 0..r
    let by_residue: Vec<&Polynomial> = (0..r).map(|t| &qp.pieces[(t + r - 1) % r]).collect();

    // Projection onto period-e functions: average over the residues mod r
    // that agree mod e.
    let averaged = |e: usize| -> Vec<Polynomial> {
        let scale = Rational::new(BigInt::from(e), BigInt::from(r));
        (0..e)
            .map(|t| {
                let sum = (t..r).step_by(e).fold(Polynomial::zero(), |acc, u| &acc + by_residue[u]);
                sum.scale(&scale)
            })
            .collect()
    };
    let projections: BTreeMap<u64, Vec<Polynomial>> =
        divisors(r as u64).into_iter().map(|e| (e, averaged(e as usize))).collect();

    let mut out = Vec::new();
    for d in divisors(r as u64) {
        let mut by_t = vec![Polynomial::zero(); d as usize];
        for e in divisors(d) {
            let mu = mobius(d / e);
            if mu == 0 {
                continue;
            }
            let proj = &projections[&e];
            for (t, acc) in by_t.iter_mut().enumerate() {
                let p = &proj[t % e as usize];
                *acc = if mu > 0 { &*acc + p } else { &*acc - p };
            }
        }
        if by_t.iter().all(Polynomial::is_zero) {
            continue;
        }
        let du = d as usize;
        let pieces = (1..=du).map(|i| by_t[i % du].clone()).collect();
        out.push((d, pieces));
    }
    out
}
