//! JSON shapes shared by the database file and `--format json` output.
//!
//! Rationals are always strings `"p/q"` in lowest terms with `q > 0`; a
//! polynomial is its coefficient list in ascending degree with no trailing
//! zeros, so the zero polynomial is `[]`.

use std::collections::BTreeMap;

use partitions_core::discover::{FormulaKind, FormulaRecord, Provenance, Strategy};
use partitions_core::floor_form::FloorExpression;
use partitions_core::{BigInt, Polynomial, QuasiPolynomial, QuasiPolynomialSum, Rational};
use serde::{Deserialize, Serialize};

pub fn rational_to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let (p, q) = s.split_once('/').ok_or_else(|| format!("rational `{s}` is not of the form p/q"))?;
    let p: BigInt = p.parse().map_err(|_| format!("bad numerator in `{s}`"))?;
    let q: BigInt = q.parse().map_err(|_| format!("bad denominator in `{s}`"))?;
    if q <= BigInt::from(0) {
        return Err(format!("denominator of `{s}` must be positive"));
    }
    let r = Rational::new(p.clone(), q.clone());
    if r.numer() != &p || r.denom() != &q {
        return Err(format!("rational `{s}` is not in lowest terms"));
    }
    Ok(r)
}

fn poly_to_json(p: &Polynomial) -> Vec<String> {
    p.coeffs().iter().map(rational_to_string).collect()
}

fn poly_from_json(c: &[String]) -> Result<Polynomial, String> {
    let coeffs: Vec<Rational> = c.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?;
    if coeffs.last().is_some_and(|c| c == &Rational::from_integer(0.into())) {
        return Err("polynomial has a trailing zero coefficient".into());
    }
    Ok(Polynomial::from_coeffs(coeffs))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormulaJson {
    pub shift: u64,
    /// Period `r` to its pieces `[P_1, …, P_r]`; `P_r` serves `n ≡ 0`.
    pub components: BTreeMap<u64, Vec<Vec<String>>>,
}

impl FormulaJson {
    pub fn from_formula(f: &QuasiPolynomialSum) -> Self {
        let components = f
            .components()
            .iter()
            .map(|c| (c.period(), c.pieces().iter().map(poly_to_json).collect()))
            .collect();
        FormulaJson { shift: f.shift(), components }
    }

    pub fn to_formula(&self) -> Result<QuasiPolynomialSum, String> {
        let mut comps = Vec::with_capacity(self.components.len());
        for (&period, pieces) in &self.components {
            if pieces.len() as u64 != period {
                return Err(format!("period {period} component has {} pieces", pieces.len()));
            }
            let pieces = pieces.iter().map(|p| poly_from_json(p)).collect::<Result<_, _>>()?;
            comps.push(QuasiPolynomial::new(pieces).map_err(|e| e.to_string())?);
        }
        QuasiPolynomialSum::new(self.shift, comps).map_err(|e| e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecordJson {
    pub kind: String,
    pub parameter: Option<u64>,
    pub parts: Vec<u64>,
    pub strategy: String,
    pub verified_points: u64,
    pub formula: FormulaJson,
}

impl RecordJson {
    pub fn from_record(r: &FormulaRecord) -> Self {
        RecordJson {
            kind: r.kind.name().into(),
            parameter: r.parameter,
            parts: r.parts.clone(),
            strategy: r.provenance.strategy.name().into(),
            verified_points: r.provenance.verified_points,
            formula: FormulaJson::from_formula(&r.formula),
        }
    }

    pub fn to_record(&self) -> Result<FormulaRecord, String> {
        let kind = FormulaKind::parse(&self.kind).map_err(|e| e.to_string())?;
        let strategy = Strategy::parse(&self.strategy).map_err(|e| e.to_string())?;
        if (kind == FormulaKind::PS) != self.parameter.is_none() {
            return Err(format!("{} record has an inconsistent parameter", self.kind));
        }
        Ok(FormulaRecord {
            kind,
            parameter: self.parameter,
            parts: self.parts.clone(),
            formula: self.formula.to_formula()?,
            provenance: Provenance { strategy, verified_points: self.verified_points },
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FloorTermJson {
    pub period: u64,
    /// Coefficient polynomials in `n` of `rho^0, rho^1, …`.
    pub rho_coeffs: Vec<Vec<String>>,
}

pub fn floor_form_json(fe: &FloorExpression) -> Vec<FloorTermJson> {
    fe.terms
        .iter()
        .map(|t| FloorTermJson { period: t.period, rho_coeffs: t.rho_coeffs.iter().map(poly_to_json).collect() })
        .collect()
}
