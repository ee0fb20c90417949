//! Floor-function form of a formula.
//!
//! Each period-`r` component `[P_1, …, P_r]` becomes a single bivariate
//! polynomial `Q_r(n, ρ)` with `ρ = n - r·⌊n/r⌋`: the pieces are glued
//! together with the Lagrange basis on the nodes `0, …, r-1`, so
//! `Q_r(n, t) = P_t(n)` (and `P_r` at node 0). The result uses only
//! polynomials and the integer-part function.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::quasipoly::QuasiPolynomialSum;
use crate::Rational;

/// `Q_r(n, ρ) = Σ_j ρ^j · coeffs[j](n)`, with fewer than `r` powers of `ρ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FloorTerm {
    pub period: u64,
    pub rho_coeffs: Vec<Polynomial>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FloorExpression {
    pub terms: Vec<FloorTerm>,
}

impl FloorExpression {
    pub fn eval(&self, n: &BigInt) -> Result<BigInt> {
        eval_floor_form(self, n)
    }

    /// One line per period, e.g. `period 2: 1/4 + (-1/2)*rho_2`, followed by
    /// the definition of each `rho_r`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for t in &self.terms {
            let _ = write!(out, "period {}: ", t.period);
            let mut first = true;
            for (j, a) in t.rho_coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                if !first {
                    out.push_str(" + ");
                }
                first = false;
                match j {
                    0 => out.push_str(&a.render("n")),
                    1 => {
                        let _ = write!(out, "({})*rho_{}", a.render("n"), t.period);
                    }
                    _ => {
                        let _ = write!(out, "({})*rho_{}^{}", a.render("n"), t.period, j);
                    }
                }
            }
            if first {
                out.push('0');
            }
            out.push('\n');
        }
        for t in self.terms.iter().filter(|t| t.period > 1) {
            let _ = writeln!(out, "rho_{0} = n - {0}*floor(n/{0})", t.period);
        }
        out
    }
}

/// Lagrange basis polynomial on nodes `0..r` that is 1 at `node`.
fn lagrange_basis(r: u64, node: u64) -> Polynomial {
    let mut num = Polynomial::one();
    let mut den = Rational::from_integer(1.into());
    for s in 0..r {
        if s == node {
            continue;
        }
        num = &num * &Polynomial::from_ints(&[-(s as i64), 1]);
        den *= Rational::from_integer(BigInt::from(node as i64 - s as i64));
    }
    num.scale(&den.recip())
}

/// Andrews-style rewriting of an unshifted formula with `⌊·⌋`.
pub fn to_floor_form(f: &QuasiPolynomialSum) -> Result<FloorExpression> {
    if f.shift() != 0 {
        return Err(Error::Unsupported("floor form is only defined for unshifted formulae".into()));
    }
    let mut terms = Vec::new();
    for c in f.components() {
        let r = c.period();
        let mut rho_coeffs = vec![Polynomial::zero(); r as usize];
        for node in 0..r {
            let piece = c.piece(if node == 0 { r } else { node });
            if piece.is_zero() {
                continue;
            }
            for (j, l) in lagrange_basis(r, node).coeffs().iter().enumerate() {
                rho_coeffs[j] = &rho_coeffs[j] + &piece.scale(l);
            }
        }
        while rho_coeffs.last().is_some_and(Polynomial::is_zero) {
            rho_coeffs.pop();
        }
        terms.push(FloorTerm { period: r, rho_coeffs });
    }
    Ok(FloorExpression { terms })
}

pub fn eval_floor_form(fe: &FloorExpression, n: &BigInt) -> Result<BigInt> {
    if n.is_negative() {
        return Err(Error::Domain("formulae are evaluated at n >= 0".into()));
    }
    let mut total = Rational::zero();
    for t in &fe.terms {
        let r = BigInt::from(t.period);
        let rho = Rational::from_integer(n - &r * n.div_floor(&r));
        let mut acc = Rational::zero();
        for a in t.rho_coeffs.iter().rev() {
            acc = acc * &rho + a.eval_int(n);
        }
        total += acc;
    }
    if !total.is_integer() {
        return Err(Error::Integrity(alloc::format!("floor form value {total} at n = {n} is not an integer")));
    }
    Ok(total.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasipoly::{qps_eval, QuasiPolynomial};

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p.into(), q.into())
    }

    fn eq2() -> QuasiPolynomialSum {
        QuasiPolynomialSum::new(
            0,
            vec![
                QuasiPolynomial::new(vec![Polynomial::from_coeffs(vec![r(3, 4), r(1, 2)])]).unwrap(),
                QuasiPolynomial::new(vec![Polynomial::constant(r(-1, 4)), Polynomial::constant(r(1, 4))]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn period_two_is_floor_half_plus_one() {
        let fe = to_floor_form(&eq2()).unwrap();
        // 1/4 - ρ/2
        assert_eq!(fe.terms[1].rho_coeffs, vec![Polynomial::constant(r(1, 4)), Polynomial::constant(r(-1, 2))]);
        for n in 0..=100i64 {
            let n = BigInt::from(n);
            assert_eq!(eval_floor_form(&fe, &n).unwrap(), n.div_floor(&BigInt::from(2)) + 1);
        }
        assert_eq!(eval_floor_form(&fe, &BigInt::from(7)).unwrap(), BigInt::from(4));
    }

    #[test]
    fn lagrange_basis_is_indicator() {
        for rr in 1..7u64 {
            for node in 0..rr {
                let l = lagrange_basis(rr, node);
                for t in 0..rr {
                    let v = l.eval(&Rational::from_integer(BigInt::from(t)));
                    assert_eq!(v, if t == node { r(1, 1) } else { r(0, 1) });
                }
            }
        }
    }

    #[test]
    fn agrees_with_quasi_polynomial_evaluation() {
        let f = eq2();
        let fe = to_floor_form(&f).unwrap();
        for n in 0..200i64 {
            let n = BigInt::from(n);
            assert_eq!(eval_floor_form(&fe, &n).unwrap(), qps_eval(&f, &n).unwrap());
        }
    }

    #[test]
    fn shifted_formula_is_unsupported() {
        let f = eq2().with_shift(1);
        assert!(matches!(to_floor_form(&f), Err(Error::Unsupported(_))));
    }
}
