//! Ground-truth counters that share no code path with formula discovery:
//! Euler's pentagonal recurrence, the coin-change table and brute-force
//! partition enumeration.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::count_series;

/// Largest `n` the enumerators accept unless told otherwise.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 80;

/// A non-increasing sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    pub fn new(mut parts: Vec<u64>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Domain("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn total(&self) -> u64 {
        self.parts.iter().sum()
    }
}

/// `p(0..=N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionTable {
    values: Vec<BigInt>,
}

impl PartitionTable {
    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn get(&self, n: usize) -> Option<&BigInt> {
        self.values.get(n)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `p(0), …, p(N)` by the pentagonal number recurrence.
pub fn euler_partition_series(max_n: usize) -> PartitionTable {
    let mut p: Vec<BigInt> = Vec::with_capacity(max_n + 1);
    p.push(BigInt::one());
    for n in 1..=max_n {
        let mut acc = BigInt::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let mut term = p[n - g1].clone();
            if g2 <= n {
                term += &p[n - g2];
            }
            if k % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        p.push(acc);
    }
    PartitionTable { values: p }
}

/// A single `p(n)`.
pub fn partition_count(n: usize) -> BigInt {
    euler_partition_series(n).values.pop().expect("table is nonempty")
}

/// Partitions of `n` into at most `m` parts, counted through the conjugate
/// description (parts of size at most `m`) with the coin-change table.
pub fn pmn_oracle(m: u64, n: u64) -> Result<BigInt> {
    if m == 0 {
        return Err(Error::Domain("m must be at least 1".into()));
    }
    let parts: Vec<u64> = (1..=m.min(n.max(1))).collect();
    Ok(count_series(&parts, n as usize).swap_remove(n as usize))
}

/// Calls `visit` on every partition of `n` (as a non-increasing slice), in
/// lexicographically decreasing order.
pub fn for_each_partition<F: FnMut(&[u64])>(n: u64, bound: u64, mut visit: F) -> Result<()> {
    if n > bound {
        return Err(Error::Resource(alloc::format!("enumeration of partitions of {n} exceeds the bound {bound}")));
    }
    let mut buf = Vec::with_capacity(n as usize);
    fill(n, n, &mut buf, &mut visit);
    Ok(())
}

fn fill<F: FnMut(&[u64])>(remaining: u64, max_part: u64, buf: &mut Vec<u64>, visit: &mut F) {
    if remaining == 0 {
        visit(buf);
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        buf.push(part);
        fill(remaining - part, part, buf, visit);
        buf.pop();
    }
}

pub fn enumerate_partitions(n: u64) -> Result<Vec<Partition>> {
    enumerate_partitions_bounded(n, DEFAULT_ENUMERATION_BOUND)
}

pub fn enumerate_partitions_bounded(n: u64, bound: u64) -> Result<Vec<Partition>> {
    let mut out = Vec::new();
    for_each_partition(n, bound, |p| out.push(Partition { parts: p.to_vec() }))?;
    Ok(out)
}

/// Side of the Durfee square: the largest `k` with `λ_k ≥ k`.
pub fn durfee_size(parts: &[u64]) -> u64 {
    parts.iter().enumerate().take_while(|&(i, &p)| p > i as u64).count() as u64
}

/// `histogram[k]` = number of partitions of `n` with Durfee square `k`.
pub fn durfee_histogram(n: u64, bound: u64) -> Result<Vec<u64>> {
    let mut hist = vec![0u64; num_integer::Roots::sqrt(&n) as usize + 2];
    for_each_partition(n, bound, |p| hist[durfee_size(p) as usize] += 1)?;
    while hist.len() > 1 && hist.last() == Some(&0) {
        hist.pop();
    }
    Ok(hist)
}

/// `D_k(n)` by brute-force enumeration.
pub fn durfee_count_oracle(k: u64, n: u64) -> Result<u64> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    let hist = durfee_histogram(n, DEFAULT_ENUMERATION_BOUND)?;
    Ok(hist.get(k as usize).copied().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;
    use crate::series::series_expand;

    #[test]
    fn small_table() {
        let t = euler_partition_series(5);
        let want: Vec<BigInt> = [1, 1, 2, 3, 5, 7].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(t.values(), &want[..]);
        assert_eq!(euler_partition_series(0).values(), &[BigInt::one()]);
        assert_eq!(partition_count(100), BigInt::from(190_569_292u64));
    }

    #[test]
    fn pmn_small() {
        assert_eq!(pmn_oracle(4, 5).unwrap(), BigInt::from(6));
        assert_eq!(pmn_oracle(1, 17).unwrap(), BigInt::one());
        for m in 1..6 {
            assert_eq!(pmn_oracle(m, 0).unwrap(), BigInt::one());
        }
        assert!(pmn_oracle(0, 3).is_err());
    }

    #[test]
    fn partitions_of_five_in_order() {
        let got: Vec<Vec<u64>> = enumerate_partitions(5).unwrap().into_iter().map(|p| p.parts).collect();
        let want: Vec<Vec<u64>> = vec![
            vec![5],
            vec![4, 1],
            vec![3, 2],
            vec![3, 1, 1],
            vec![2, 2, 1],
            vec![2, 1, 1, 1],
            vec![1, 1, 1, 1, 1],
        ];
        assert_eq!(got, want);
        assert_eq!(enumerate_partitions(0).unwrap(), vec![Partition { parts: vec![] }]);
        assert_eq!(enumerate_partitions(6).unwrap().len(), 11);
        assert!(matches!(enumerate_partitions(81), Err(Error::Resource(_))));
    }

    #[test]
    fn durfee_sizes() {
        assert_eq!(durfee_size(&[4, 1]), 1);
        assert_eq!(durfee_size(&[2, 2, 1]), 2);
        assert_eq!(durfee_size(&[]), 0);
        assert_eq!(durfee_count_oracle(1, 5).unwrap(), 5);
        assert_eq!(durfee_count_oracle(2, 5).unwrap(), 2);
        assert_eq!(durfee_count_oracle(3, 5).unwrap(), 0);
    }

    #[test]
    fn durfee_classes_cover_all_partitions() {
        let table = euler_partition_series(60);
        for n in 0..=60u64 {
            let total: u64 = durfee_histogram(n, DEFAULT_ENUMERATION_BOUND).unwrap().iter().sum();
            assert_eq!(BigInt::from(total), table.values()[n as usize], "n = {n}");
        }
    }

    #[test]
    fn conjugation_consistency() {
        for n in 0..=40u64 {
            let parts = enumerate_partitions(n).unwrap();
            for m in 1..=n.max(1) {
                let direct = parts.iter().filter(|p| p.parts().len() as u64 <= m).count();
                assert_eq!(pmn_oracle(m, n).unwrap(), BigInt::from(direct), "m = {m}, n = {n}");
            }
        }
    }

    #[test]
    fn diagonal_and_pentagonal_agree_with_dp() {
        let table = euler_partition_series(500);
        let parts: Vec<u64> = (1..=500).collect();
        let dp = series_expand(&Polynomial::one(), &parts, 500).unwrap();
        for n in 0..=500usize {
            assert_eq!(dp.coeff(n).to_integer(), table.values()[n]);
        }
        for n in [0u64, 1, 7, 100, 250, 500] {
            assert_eq!(pmn_oracle(n.max(1), n).unwrap(), table.values()[n as usize]);
        }
    }
}
