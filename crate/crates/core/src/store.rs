//! In-memory formula database: building, lookup and evaluation. The file
//! format lives in the CLI crate.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Num, Signed};

use crate::discover::{discover_durfee, discover_pmn, FormulaKind, FormulaRecord, Strategy};
use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaDatabase {
    pub version: u32,
    records: Vec<FormulaRecord>,
}

impl Default for FormulaDatabase {
    fn default() -> Self {
        FormulaDatabase { version: FORMAT_VERSION, records: Vec::new() }
    }
}

impl FormulaDatabase {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a database from records, rejecting duplicate keys.
    pub fn from_records(version: u32, records: Vec<FormulaRecord>) -> Result<Self> {
        let mut db = FormulaDatabase { version, records: Vec::with_capacity(records.len()) };
        for r in records {
            if db.position(r.kind, r.parameter, &r.parts).is_some() {
                return Err(Error::Domain(alloc::format!("duplicate {} record {}", r.kind.name(), r.label())));
            }
            db.records.push(r);
        }
        Ok(db)
    }

    pub fn records(&self) -> &[FormulaRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    fn position(&self, kind: FormulaKind, parameter: Option<u64>, parts: &[u64]) -> Option<usize> {
        self.records.iter().position(|r| {
            r.kind == kind
                && r.parameter == parameter
                && (parameter.is_some() || r.parts == parts)
        })
    }

    /// Adds a record, replacing any record with the same key. Records are
    /// kept ordered by kind, then parameter, then parts.
    pub fn insert(&mut self, record: FormulaRecord) {
        match self.position(record.kind, record.parameter, &record.parts) {
            Some(i) => self.records[i] = record,
            None => {
                let key = (record.kind, record.parameter, record.parts.clone());
                let at = self.records.partition_point(|r| (r.kind, r.parameter, r.parts.clone()) < key);
                self.records.insert(at, record);
            }
        }
    }

    pub fn get(&self, kind: FormulaKind, parameter: u64) -> Option<&FormulaRecord> {
        self.records.iter().find(|r| r.kind == kind && r.parameter == Some(parameter))
    }

    /// Parameters stored for `kind`, ascending.
    pub fn parameters(&self, kind: FormulaKind) -> Vec<u64> {
        let mut out: Vec<u64> =
            self.records.iter().filter(|r| r.kind == kind).filter_map(|r| r.parameter).collect();
        out.sort_unstable();
        out
    }
}

/// Discovers the database record for one parameter of `kind`.
pub fn discover_record(kind: FormulaKind, parameter: u64) -> Result<FormulaRecord> {
    match kind {
        FormulaKind::Pmn => discover_pmn(parameter, Strategy::PerComponent),
        FormulaKind::Durfee => discover_durfee(parameter, Strategy::PerComponent),
        FormulaKind::PS => Err(Error::Unsupported("databases are built for pmn or durfee".into())),
    }
}

/// Discovers parameters `1..=max` of `kind`, calling
/// `on_record` after each so callers can persist incrementally. Parameters
/// already present in `db` are skipped, which makes builds resumable.
pub fn build_database_into<F>(db: &mut FormulaDatabase, kind: FormulaKind, max: u64, mut on_record: F) -> Result<()>
where
    F: FnMut(&FormulaDatabase, &FormulaRecord) -> Result<()>,
{
    if max == 0 {
        return Err(Error::Domain("database size must be at least 1".into()));
    }
    if kind == FormulaKind::PS {
        return Err(Error::Unsupported("databases are built for pmn or durfee".into()));
    }
    for p in 1..=max {
        if db.get(kind, p).is_some() {
            continue;
        }
        let rec = discover_record(kind, p)?;
        db.insert(rec.clone());
        on_record(db, &rec)?;
    }
    Ok(())
}

pub fn build_database(kind: FormulaKind, max: u64) -> Result<FormulaDatabase> {
    let mut db = FormulaDatabase::new();
    build_database_into(&mut db, kind, max, |_, _| Ok(()))?;
    Ok(db)
}

/// Evaluates a stored formula at `n`.
pub fn eval_from_db(db: &FormulaDatabase, kind: FormulaKind, parameter: u64, n: &BigInt) -> Result<BigInt> {
    let rec = db.get(kind, parameter).ok_or_else(|| Error::NotFound {
        kind: String::from(kind.name()),
        parameter,
        available: db.parameters(kind),
    })?;
    rec.formula.compile().eval(n)
}

/// Parses a non-negative integer written in decimal or as `10^K`.
pub fn parse_big_n(text: &str) -> Result<BigInt> {
    let t = text.trim();
    let value = if let Some(exp) = t.strip_prefix("10^").or_else(|| t.strip_prefix("10**")) {
        let k: u32 = exp.parse().map_err(|_| Error::Parse(alloc::format!("bad exponent in `{t}`")))?;
        num_traits::pow(BigInt::from(10u32), k as usize)
    } else {
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(alloc::format!("`{t}` is not a non-negative integer")));
        }
        BigInt::from_str_radix(t, 10).map_err(|_| Error::Parse(alloc::format!("`{t}` is not an integer")))?
    };
    debug_assert!(!value.is_negative());
    Ok(value)
}
