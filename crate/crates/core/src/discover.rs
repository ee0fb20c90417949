//! Rigorous guessing of quasi-polynomial formulae.
//!
//! For a part multiset `S` the counting function `p_S(n)` is known in
//! advance to be a sum of quasi-polynomials, one for every period `d` that
//! divides some part, with the period-`d` piece of degree `e_d - 1`. Fitting
//! that shape with undetermined coefficients against exact series data, and
//! then confirming agreement on further points, therefore proves the result:
//! the ansatz space is a solution space of a linear recurrence, and a
//! determining set of values pins the member down.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cyclotomic::{cyclotomic_normalized, euler_phi, factor_denominator, CyclotomicFactorization};
use crate::error::{Error, Result};
use crate::linalg::solve_linear_exact;
use crate::partial_fractions::partial_fractions;
use crate::poly::Polynomial;
use crate::quasipoly::{normalize_qps, QuasiPolynomial, QuasiPolynomialSum};
use crate::series::{count_series, PowerSeries};
use crate::Rational;

/// Shape of the quasi-polynomial ansatz for one part multiset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnsatzShape {
    /// `(period d, degree e_d - 1)` in increasing period order.
    pub entries: Vec<(u64, u32)>,
    /// `Σ d·e_d`: unknowns when each period carries `d` free pieces.
    pub total_dimension: u64,
    /// `Σ φ(d)·e_d`: the true dimension of the solution space, equal to the
    /// degree of the denominator.
    pub primitive_dimension: u64,
}

pub fn ansatz_shape(parts: &[u64]) -> Result<AnsatzShape> {
    Ok(shape_of(&factor_denominator(parts)?))
}

fn shape_of(f: &CyclotomicFactorization) -> AnsatzShape {
    AnsatzShape {
        entries: f.iter().map(|(d, e)| (d, e - 1)).collect(),
        total_dimension: f.iter().map(|(d, e)| d * u64::from(e)).sum(),
        primitive_dimension: f.degree(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Strategy {
    /// Fit each partial-fraction block separately.
    #[default]
    PerComponent,
    /// One linear system for the whole generating function.
    GlobalFit,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::PerComponent => "per_component",
            Strategy::GlobalFit => "global_fit",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "per_component" => Ok(Strategy::PerComponent),
            "global_fit" => Ok(Strategy::GlobalFit),
            other => Err(Error::Parse(alloc::format!("unknown strategy `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormulaKind {
    /// Parts drawn from an explicit multiset.
    PS,
    /// At most `m` parts.
    Pmn,
    /// Durfee square of side `k`.
    Durfee,
}

impl FormulaKind {
    pub fn name(self) -> &'static str {
        match self {
            FormulaKind::PS => "pS",
            FormulaKind::Pmn => "pmn",
            FormulaKind::Durfee => "durfee",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "pS" | "ps" => Ok(FormulaKind::PS),
            "pmn" => Ok(FormulaKind::Pmn),
            "durfee" => Ok(FormulaKind::Durfee),
            other => Err(Error::Parse(alloc::format!("unknown formula kind `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub strategy: Strategy,
    /// Number of consecutive `n` (from 0) at which the formula was checked
    /// against the generating function.
    pub verified_points: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaRecord {
    pub kind: FormulaKind,
    /// `m` for `pmn`, `k` for `durfee`, `None` for `pS`.
    pub parameter: Option<u64>,
    /// The multiset whose generating function was fitted.
    pub parts: Vec<u64>,
    pub formula: QuasiPolynomialSum,
    pub provenance: Provenance,
}

impl FormulaRecord {
    pub fn shift(&self) -> u64 {
        self.formula.shift()
    }

    pub fn eval(&self, n: &BigInt) -> Result<BigInt> {
        self.formula.eval(n)
    }

    /// Human-readable parameter label, e.g. `m=4` or `S={1,2,2}`.
    pub fn label(&self) -> String {
        match (self.kind, self.parameter) {
            (FormulaKind::Pmn, Some(m)) => alloc::format!("m={m}"),
            (FormulaKind::Durfee, Some(k)) => alloc::format!("k={k}"),
            _ => {
                let mut s = String::from("S={");
                for (i, p) in self.parts.iter().enumerate() {
                    if i > 0 {
                        s.push(',');
                    }
                    s.push_str(&alloc::format!("{p}"));
                }
                s.push('}');
                s
            }
        }
    }
}

/// Fits a period-`period` quasi-polynomial whose pieces have degree at most
/// `degree`, residue class by residue class, using the sample points
/// `n ≡ i (mod period)` in increasing order starting from 0.
pub fn fit_component(series: &PowerSeries, period: u64, degree: u32) -> Result<QuasiPolynomial> {
    if period == 0 {
        return Err(Error::Domain("period must be at least 1".into()));
    }
    let per_class = degree as usize + 1;
    let needed = period as usize * per_class;
    if series.coeffs().len() < needed {
        return Err(Error::Domain(alloc::format!(
            "fitting period {period}, degree {degree} needs {needed} series terms, got {}",
            series.coeffs().len()
        )));
    }
    let mut pieces = Vec::with_capacity(period as usize);
    for residue in 1..=period {
        let start = residue % period;
        let points: Vec<u64> = (0..per_class as u64).map(|j| start + j * period).collect();
        let matrix: Vec<Vec<Rational>> = points.iter().map(|&n| powers(n, per_class)).collect();
        let rhs: Vec<Rational> = points.iter().map(|&n| series.coeff(n as usize).clone()).collect();
        let coeffs = solve_linear_exact(&matrix, &rhs).map_err(|e| match e {
            Error::Singular { .. } => Error::Integrity(alloc::format!("sample system for period {period} is singular")),
            other => other,
        })?;
        pieces.push(Polynomial::from_coeffs(coeffs));
    }
    QuasiPolynomial::new(pieces)
}

/// `[1, n, n², …]` with `count` entries.
fn powers(n: u64, count: usize) -> Vec<Rational> {
    let base = BigInt::from(n);
    let mut out = Vec::with_capacity(count);
    let mut acc = BigInt::one();
    for _ in 0..count {
        out.push(Rational::from_integer(acc.clone()));
        acc *= &base;
    }
    out
}

/// The proven formula for partitions with parts from `parts`.
pub fn discover_ps(parts: &[u64], strategy: Strategy) -> Result<FormulaRecord> {
    let factorization = factor_denominator(parts)?;
    let shape = shape_of(&factorization);
    let raw = match strategy {
        Strategy::PerComponent => fit_per_component(&factorization)?,
        Strategy::GlobalFit => fit_global(parts, &factorization)?,
    };
    let formula = normalize_qps(&raw);
    let verified_points = verify(&formula, parts, &shape)?;
    let mut sorted = parts.to_vec();
    sorted.sort_unstable();
    Ok(FormulaRecord {
        kind: FormulaKind::PS,
        parameter: None,
        parts: sorted,
        formula,
        provenance: Provenance { strategy, verified_points },
    })
}

fn fit_per_component(factorization: &CyclotomicFactorization) -> Result<QuasiPolynomialSum> {
    let pf = partial_fractions(&Polynomial::one(), factorization)?;
    let mut components = Vec::new();
    for (d, e) in factorization.iter() {
        let len = (d * u64::from(e)) as usize;
        let block = pf.block_series(d, len - 1)?;
        let qp = fit_component(&block, d, e - 1)?;
        if !qp.is_zero() {
            components.push(qp);
        }
    }
    QuasiPolynomialSum::new(0, components)
}

/// Solves for all periods at once in a basis of primitive functions: for
/// period `d` the functions `n^j · h_d(n - a)`, `j < e_d`, `a < φ(d)`,
/// where `h_d` is the (purely periodic) coefficient sequence of `1/C_d`.
fn fit_global(parts: &[u64], factorization: &CyclotomicFactorization) -> Result<QuasiPolynomialSum> {
    struct Block {
        period: u64,
        mult: u32,
        phi: u64,
        wave: Vec<Rational>,
    }
    let blocks: Vec<Block> = factorization
        .iter()
        .map(|(d, e)| {
            let c = cyclotomic_normalized(d)?;
            let wave = PowerSeries::from_rational(&Polynomial::one(), &c, d as usize - 1)?.coeffs().to_vec();
            Ok(Block { period: d, mult: e, phi: euler_phi(d), wave })
        })
        .collect::<Result<_>>()?;
    let dim = factorization.degree() as usize;

    let data = count_series(parts, dim.saturating_sub(1));
    let mut matrix = Vec::with_capacity(dim);
    for n in 0..dim as u64 {
        let pw = powers(n, blocks.iter().map(|b| b.mult as usize).max().unwrap_or(1));
        let mut row = Vec::with_capacity(dim);
        for b in &blocks {
            for a in 0..b.phi {
                let h = &b.wave[((n + b.period - a % b.period) % b.period) as usize];
                for j in 0..b.mult as usize {
                    row.push(h * &pw[j]);
                }
            }
        }
        matrix.push(row);
    }
    let rhs: Vec<Rational> = data.into_iter().map(Rational::from_integer).collect();
    let x = solve_linear_exact(&matrix, &rhs)?;

    let mut components = Vec::new();
    let mut offset = 0;
    for b in &blocks {
        let mut pieces = Vec::with_capacity(b.period as usize);
        for residue in 1..=b.period {
            let mut coeffs = vec![Rational::zero(); b.mult as usize];
            for a in 0..b.phi {
                let h = &b.wave[((residue + b.period - a % b.period) % b.period) as usize];
                if h.is_zero() {
                    continue;
                }
                for (j, c) in coeffs.iter_mut().enumerate() {
                    *c += h * &x[offset + (a as usize) * b.mult as usize + j];
                }
            }
            pieces.push(Polynomial::from_coeffs(coeffs));
        }
        offset += (b.phi * u64::from(b.mult)) as usize;
        let qp = QuasiPolynomial::new(pieces)?;
        if !qp.is_zero() {
            components.push(qp);
        }
    }
    QuasiPolynomialSum::new(0, components)
}

/// Checks the formula against the generating function at
/// `n = 0, …, 2·total_dimension - 1`, which covers every fitting point plus
/// `total_dimension` further ones.
fn verify(formula: &QuasiPolynomialSum, parts: &[u64], shape: &AnsatzShape) -> Result<u64> {
    let points = 2 * shape.total_dimension.max(shape.primitive_dimension);
    let expected = count_series(parts, points as usize - 1);
    let compiled = formula.compile();
    for (n, want) in expected.iter().enumerate() {
        let got = compiled.eval(&BigInt::from(n))?;
        if &got != want {
            return Err(Error::Integrity(alloc::format!(
                "discovered formula gives {got} at n = {n}, generating function gives {want}"
            )));
        }
    }
    Ok(points)
}

/// Partitions of `n` into at most `m` parts.
pub fn discover_pmn(m: u64, strategy: Strategy) -> Result<FormulaRecord> {
    if m == 0 {
        return Err(Error::Domain("m must be at least 1".into()));
    }
    let parts: Vec<u64> = (1..=m).collect();
    let mut rec = discover_ps(&parts, strategy)?;
    rec.kind = FormulaKind::Pmn;
    rec.parameter = Some(m);
    Ok(rec)
}

/// Multiset `{1,1,2,2,…,k,k}` whose generating function, shifted by `k²`,
/// counts partitions with Durfee square `k`.
pub fn durfee_parts(k: u64) -> Vec<u64> {
    (1..=k).flat_map(|i| [i, i]).collect()
}

/// `D_k(n)`, from `Σ D_k(n) qⁿ = q^{k²} / Π_{i≤k} (1 - q^i)²`.
pub fn discover_durfee(k: u64, strategy: Strategy) -> Result<FormulaRecord> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    let mut rec = discover_ps(&durfee_parts(k), strategy)?;
    rec.kind = FormulaKind::Durfee;
    rec.parameter = Some(k);
    rec.formula = rec.formula.with_shift(k * k);
    Ok(rec)
}

/// Top monomial of the period-1 component: `(degree, coefficient)`.
pub fn leading_term(formula: &QuasiPolynomialSum) -> Option<(usize, Rational)> {
    let p = formula.component(1)?.piece(1);
    Some((p.degree()?, p.leading()?.clone()))
}

/// Dominant term of `p_m(n)`; always `n^{m-1} / (m!·(m-1)!)`.
pub fn leading_asymptotic(m: u64) -> Result<(usize, Rational)> {
    let rec = discover_pmn(m, Strategy::PerComponent)?;
    let (degree, coeff) = leading_term(&rec.formula)
        .ok_or_else(|| Error::Integrity("p_m formula has no period-1 component".into()))?;
    let expected = (1..=m).chain(1..m).fold(BigInt::one(), |acc, i| acc * BigInt::from(i));
    if degree as u64 != m - 1 || coeff != Rational::new(BigInt::one(), expected) {
        return Err(Error::Integrity(alloc::format!("unexpected leading term {coeff}·n^{degree} for m = {m}")));
    }
    Ok((degree, coeff))
}
