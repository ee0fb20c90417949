//! Exact linear solving over the rationals.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// Solves the square system `a · x = b` exactly.
///
/// Each row is cleared of denominators, then reduced by fraction-free
/// (Bareiss) elimination so every intermediate entry is an integer minor.
/// Among the candidate pivots in a column the one with the fewest bits is
/// taken, which keeps the minors small on Vandermonde-like inputs.
pub fn solve_linear_exact(a: &[Vec<Rational>], b: &[Rational]) -> Result<Vec<Rational>> {
    let n = a.len();
    if a.iter().any(|row| row.len() != n) {
        return Err(Error::Domain("coefficient matrix is not square".into()));
    }
    if b.len() != n {
        return Err(Error::Domain("right-hand side length does not match the matrix".into()));
    }
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let den = row.iter().chain(core::iter::once(rhs)).fold(BigInt::one(), |l, c| l.lcm(c.denom()));
            row.iter()
                .chain(core::iter::once(rhs))
                .map(|c| c.numer() * (&den / c.denom()))
                .collect()
        })
        .collect();

    let width = n + 1;
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..n {
        let pivot = (rank..n)
            .filter(|&i| !m[i][col].is_zero())
            .min_by_key(|&i| m[i][col].bits());
        let Some(p) = pivot else { continue };
        m.swap(rank, p);
        let (top, rest) = m.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            let factor = core::mem::take(&mut row[col]);
            for j in col + 1..width {
                let v = &prow[col] * &row[j] - &factor * &prow[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = prow[col].clone();
        rank += 1;
    }
    if rank < n {
        return Err(Error::Singular { size: n, rank });
    }

    let mut x: Vec<Rational> = alloc::vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(m[i][n].clone());
        for j in i + 1..n {
            if !m[i][j].is_zero() {
                acc -= &x[j] * Rational::from_integer(m[i][j].clone());
            }
        }
        x[i] = acc / Rational::from_integer(m[i][i].clone());
    }
    Ok(x)
}

/// `a · x - b`, for checking solutions.
pub fn residual(a: &[Vec<Rational>], x: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter()
        .zip(b)
        .map(|(row, rhs)| row.iter().zip(x).fold(-rhs.clone(), |acc, (c, v)| acc + c * v))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p.into(), q.into())
    }

    fn ri(p: i64) -> Rational {
        r(p, 1)
    }

    #[test]
    fn worked_vandermonde_period_one() {
        let a: Vec<Vec<Rational>> = (0..4i64).map(|n| (0..4u32).map(|k| ri(n.pow(k))).collect()).collect();
        let b = vec![r(175, 288), r(19, 16), r(581, 288), r(113, 36)];
        let x = solve_linear_exact(&a, &b).unwrap();
        assert_eq!(x, vec![r(175, 288), r(15, 32), r(5, 48), r(1, 144)]);
        assert!(residual(&a, &x, &b).iter().all(Zero::is_zero));
    }

    #[test]
    fn worked_even_residue_system() {
        let a = vec![vec![ri(1), ri(0)], vec![ri(1), ri(2)]];
        let x = solve_linear_exact(&a, &[r(5, 32), r(7, 32)]).unwrap();
        assert_eq!(x, vec![r(5, 32), r(1, 32)]);
    }

    #[test]
    fn identity_returns_rhs() {
        let n = 5;
        let a: Vec<Vec<Rational>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { ri(1) } else { ri(0) }).collect()).collect();
        let b: Vec<Rational> = (0..n as i64).map(|i| r(2 * i - 3, i + 7)).collect();
        assert_eq!(solve_linear_exact(&a, &b).unwrap(), b);
    }

    #[test]
    fn singular_reports_rank() {
        let a = vec![
            vec![ri(1), ri(2), ri(3)],
            vec![ri(2), ri(4), ri(6)],
            vec![ri(0), ri(1), ri(1)],
        ];
        let err = solve_linear_exact(&a, &[ri(1), ri(2), ri(3)]).unwrap_err();
        assert_eq!(err, Error::Singular { size: 3, rank: 2 });
    }

    #[test]
    fn needs_row_exchange() {
        let a = vec![vec![ri(0), r(1, 2)], vec![r(3, 4), ri(1)]];
        let b = vec![ri(1), ri(2)];
        let x = solve_linear_exact(&a, &b).unwrap();
        assert!(residual(&a, &x, &b).iter().all(Zero::is_zero));
    }
}
