//! Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero if any
//! criterion fails. Time budgets and expected values are pinned below.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use partitions_cli::build::build_incremental;
use partitions_cli::dbfile::{from_json_str, load_database, save_database, to_json_string, DbError};
use partitions_core::cyclotomic::factor_denominator;
use partitions_core::discover::{
    discover_durfee, discover_pmn, fit_component, leading_asymptotic, FormulaKind, Strategy,
};
use partitions_core::floor_form::{eval_floor_form, to_floor_form};
use partitions_core::hrr::Rademacher;
use partitions_core::oracles::{durfee_histogram, euler_partition_series, DEFAULT_ENUMERATION_BOUND};
use partitions_core::partial_fractions::{partial_fractions, PartialFractionTerm};
use partitions_core::quasipoly::qps_eval;
use partitions_core::series::{count_series, series_expand};
use partitions_core::store::{eval_from_db, parse_big_n, FormulaDatabase};
use partitions_core::{BigInt, Polynomial, QuasiPolynomial, QuasiPolynomialSum, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GOLDEN_BUDGET: Duration = Duration::from_secs(5);
const WORKED_BUDGET: Duration = Duration::from_secs(1);
const ORACLE_BUDGET: Duration = Duration::from_secs(600);
const BUILD_BUDGET: Duration = Duration::from_secs(3600);
const EVAL_BUDGET: Duration = Duration::from_secs(1);
const HRR_BUDGET: Duration = Duration::from_secs(300);

const DB_MAX_M: u64 = 60;
const CHALLENGE_DIGITS: usize = 5783;
const HRR_SEED: u64 = 20_260_101;
const HRR_SAMPLES: usize = 200;
const HRR_MAX_N: u64 = 5000;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(label: &str, elapsed: Duration, budget: Duration) -> Result<(), String> {
    check(elapsed <= budget, || format!("{label} took {:.2?}, budget {budget:?}", elapsed))
}

fn r(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

fn poly(c: &[(i64, i64)]) -> Polynomial {
    Polynomial::from_coeffs(c.iter().map(|&(p, q)| r(p, q)).collect())
}

fn qp(pieces: &[&[(i64, i64)]]) -> QuasiPolynomial {
    QuasiPolynomial::new(pieces.iter().map(|p| poly(p)).collect()).unwrap()
}

fn golden(m: u64) -> QuasiPolynomialSum {
    let comps = match m {
        1 => vec![qp(&[&[(1, 1)]])],
        2 => vec![qp(&[&[(3, 4), (1, 2)]]), qp(&[&[(-1, 4)], &[(1, 4)]])],
        3 => vec![
            qp(&[&[(47, 72), (1, 2), (1, 12)]]),
            qp(&[&[(-1, 8)], &[(1, 8)]]),
            qp(&[&[(-1, 9)], &[(-1, 9)], &[(2, 9)]]),
        ],
        4 => vec![
            qp(&[&[(175, 288), (15, 32), (5, 48), (1, 144)]]),
            qp(&[&[(-5, 32), (-1, 32)], &[(5, 32), (1, 32)]]),
            qp(&[&[(0, 1)], &[(-1, 9)], &[(1, 9)]]),
            qp(&[&[(0, 1)], &[(-1, 8)], &[(0, 1)], &[(1, 8)]]),
        ],
        5 => vec![
            qp(&[&[(50651, 86400), (85, 192), (31, 288), (1, 96), (1, 2880)]]),
            qp(&[&[(-15, 128), (-1, 64)], &[(15, 128), (1, 64)]]),
            qp(&[&[(-1, 27)], &[(-1, 27)], &[(2, 27)]]),
            qp(&[&[(1, 16)], &[(-1, 16)], &[(-1, 16)], &[(1, 16)]]),
            qp(&[&[(-1, 25)], &[(-1, 25)], &[(-1, 25)], &[(-1, 25)], &[(4, 25)]]),
        ],
        _ => unreachable!(),
    };
    QuasiPolynomialSum::new(0, comps).unwrap()
}

fn golden_formulae() -> Outcome {
    let start = Instant::now();
    for m in 1..=5 {
        let got = discover_pmn(m, Strategy::PerComponent).map_err(|e| e.to_string())?;
        check(got.formula == golden(m), || format!("m = {m}: got\n{}", got.formula))?;
    }
    let t = start.elapsed();
    within("discovery", t, GOLDEN_BUDGET)?;
    Ok(format!("m = 1..5 digit-exact in {t:.2?}"))
}

fn worked_example() -> Outcome {
    let start = Instant::now();
    let f = factor_denominator(&[1, 2, 3, 4]).map_err(|e| e.to_string())?;
    let pf = partial_fractions(&Polynomial::one(), &f).map_err(|e| e.to_string())?;
    let term = |period, power, c: &[(i64, i64)]| PartialFractionTerm { period, power, numerator: poly(c) };
    let mut want = vec![
        term(1, 1, &[(17, 72)]),
        term(1, 2, &[(59, 288)]),
        term(1, 3, &[(1, 8)]),
        term(1, 4, &[(1, 24)]),
        term(2, 1, &[(1, 8)]),
        term(2, 2, &[(1, 32)]),
        term(3, 1, &[(1, 9), (1, 9)]),
        term(4, 1, &[(1, 8)]),
    ];
    let key = |t: &PartialFractionTerm| (t.period, t.power);
    let mut got: Vec<_> = pf.terms.iter().filter(|t| !t.numerator.is_zero()).cloned().collect();
    got.sort_by_key(key);
    want.sort_by_key(key);
    check(pf.polynomial_part.is_zero() && got == want, || format!("decomposition {got:?}"))?;

    let full = pf.series(50).map_err(|e| e.to_string())?;
    check(full == series_expand(&Polynomial::one(), &[1, 2, 3, 4], 50).unwrap(), || {
        "reconstruction to order 50 differs".into()
    })?;

    let w1 = pf.block_series(1, 3).unwrap();
    check(w1.coeffs() == [r(175, 288), r(19, 16), r(581, 288), r(113, 36)], || {
        format!("W_1 series {:?}", w1.coeffs())
    })?;
    let w2 = pf.block_series(2, 3).unwrap();
    check(w2.coeffs() == [r(5, 32), r(-3, 16), r(7, 32), r(-1, 4)], || format!("W_2 series {:?}", w2.coeffs()))?;

    let expected = golden(4);
    for (d, deg) in [(1u64, 3u32), (2, 1), (3, 0), (4, 0)] {
        let series = pf.block_series(d, d as usize * (deg as usize + 1)).unwrap();
        let fitted = fit_component(&series, d, deg).map_err(|e| e.to_string())?;
        check(Some(&fitted) == expected.component(d), || format!("W_{d} = {}", fitted.render()))?;
    }
    let t = start.elapsed();
    within("worked example", t, WORKED_BUDGET)?;
    Ok(format!("8 terms, order-50 reconstruction, W_1..W_4 exact in {t:.2?}"))
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    for m in 1..=25u64 {
        let rec = discover_pmn(m, Strategy::PerComponent).map_err(|e| e.to_string())?;
        let parts: Vec<u64> = (1..=m).collect();
        let oracle = count_series(&parts, 2000);
        let values = rec.formula.compile().eval_range(0, 2001).map_err(|e| e.to_string())?;
        if let Some(n) = (0..=2000).find(|&n| values[n] != oracle[n]) {
            return Err(format!("m = {m}, n = {n}: formula {} vs oracle {}", values[n], oracle[n]));
        }
        if m <= 12 {
            let global = discover_pmn(m, Strategy::GlobalFit).map_err(|e| e.to_string())?;
            check(global.formula == rec.formula, || format!("strategies differ at m = {m}"))?;
        }
    }
    let t = start.elapsed();
    within("oracle sweep", t, ORACLE_BUDGET)?;
    Ok(format!("m <= 25, n <= 2000; strategies agree for m <= 12; {t:.2?}"))
}

struct Built {
    db: FormulaDatabase,
    elapsed: Duration,
}

static DATABASE: OnceLock<Result<Built, String>> = OnceLock::new();

fn database() -> Result<&'static Built, String> {
    DATABASE
        .get_or_init(|| {
            let start = Instant::now();
            let mut db = FormulaDatabase::new();
            let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
            build_incremental(&mut db, FormulaKind::Pmn, DB_MAX_M, jobs, |_, _| Ok(()))
                .map_err(|e| e.to_string())?;
            Ok(Built { db, elapsed: start.elapsed() })
        })
        .as_ref()
        .map_err(Clone::clone)
}

fn challenge_integer() -> Outcome {
    let built = database()?;
    within("database build", built.elapsed, BUILD_BUDGET)?;
    let n = parse_big_n("10^100").unwrap();
    let start = Instant::now();
    let value = eval_from_db(&built.db, FormulaKind::Pmn, DB_MAX_M, &n).map_err(|e| e.to_string())?;
    let t = start.elapsed();
    within("evaluation", t, EVAL_BUDGET)?;
    let digits = value.magnitude().to_string().len();
    check(digits == CHALLENGE_DIGITS, || {
        format!(
            "p_60(10^100) has {digits} digits, expected {CHALLENGE_DIGITS} (build {:.1?}, eval {t:.2?})",
            built.elapsed
        )
    })?;
    Ok(format!("{digits} digits; build {:.1?}, eval {t:.2?}", built.elapsed))
}

fn diagonal_identity() -> Outcome {
    let built = database()?;
    let p = euler_partition_series(DB_MAX_M as usize);
    for n in 1..=DB_MAX_M {
        let v = eval_from_db(&built.db, FormulaKind::Pmn, n, &BigInt::from(n)).map_err(|e| e.to_string())?;
        check(&v == p.get(n as usize).unwrap(), || format!("p_{n}({n}) = {v}, p({n}) = {}", p.values()[n as usize]))?;
    }
    Ok(format!("p_n(n) = p(n) for 1 <= n <= {DB_MAX_M}"))
}

fn durfee_suite() -> Outcome {
    const N: u64 = 60;
    let p = euler_partition_series(N as usize);
    let max_k = 7; // 7² ≤ 60 < 8²
    let recs: Vec<_> = (1..=max_k)
        .map(|k| discover_durfee(k, Strategy::PerComponent))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    for n in 0..=N {
        let hist = durfee_histogram(n, DEFAULT_ENUMERATION_BOUND).map_err(|e| e.to_string())?;
        let mut total = BigInt::from(0);
        for (i, rec) in recs.iter().enumerate() {
            let k = i + 1;
            let v = rec.eval(&BigInt::from(n)).map_err(|e| e.to_string())?;
            if k <= 4 {
                let brute = BigInt::from(hist.get(k).copied().unwrap_or(0));
                check(v == brute, || format!("D_{k}({n}) = {v}, enumeration gives {brute}"))?;
            }
            total += v;
        }
        if n > 0 {
            check(&total == p.get(n as usize).unwrap(), || format!("sum of D_k({n}) = {total}"))?;
            let d1 = recs[0].eval(&BigInt::from(n)).unwrap();
            check(d1 == BigInt::from(n), || format!("D_1({n}) = {d1}"))?;
        }
    }
    Ok(format!("k <= 4 vs enumeration, sum over k <= {max_k} = p(n), D_1(n) = n, n <= {N}"))
}

fn hrr_certification() -> Outcome {
    let start = Instant::now();
    let p = euler_partition_series(HRR_MAX_N as usize);
    let mut rng = ChaCha8Rng::seed_from_u64(HRR_SEED);
    let mut engine = Rademacher::default();
    let mut failures = Vec::new();
    for _ in 0..HRR_SAMPLES {
        let n = rng.gen_range(1..=HRR_MAX_N);
        match engine.certified(n) {
            Ok(c) if &c.value == p.get(n as usize).unwrap() => {}
            Ok(c) => failures.push(format!("n = {n}: {}", c.value)),
            Err(e) => failures.push(format!("n = {n}: {e}")),
        }
    }
    check(failures.is_empty(), || failures.join("; "))?;
    let t = start.elapsed();
    within("certification", t, HRR_BUDGET)?;
    Ok(format!("{HRR_SAMPLES} samples (seed {HRR_SEED}), 0 failures, {t:.2?}"))
}

fn floor_form_equivalence() -> Outcome {
    for m in 1..=10 {
        let f = discover_pmn(m, Strategy::PerComponent).map_err(|e| e.to_string())?.formula;
        let fe = to_floor_form(&f).map_err(|e| e.to_string())?;
        for n in 0..=500u64 {
            let n = BigInt::from(n);
            let (a, b) = (eval_floor_form(&fe, &n).unwrap(), qps_eval(&f, &n).unwrap());
            check(a == b, || format!("m = {m}, n = {n}: floor form {a}, formula {b}"))?;
            if m == 2 {
                let want = &n / 2u32 + 1u32;
                check(a == want, || format!("m = 2, n = {n}: {a}"))?;
            }
        }
    }
    Ok("m <= 10, n <= 500; m = 2 is floor(n/2) + 1".into())
}

fn leading_coefficients() -> Outcome {
    let mut fact = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for m in 1..=12u64 {
        fact *= m;
        let want = (m as usize - 1, Rational::new(1.into(), &fact * &prev));
        let got = leading_asymptotic(m).map_err(|e| e.to_string())?;
        check(got == want, || format!("m = {m}: {got:?}"))?;
        prev = fact.clone();
    }
    for (m, deg, den) in [(3u64, 2usize, 12i64), (4, 3, 144), (5, 4, 2880)] {
        check(leading_asymptotic(m).unwrap() == (deg, r(1, den)), || format!("m = {m}"))?;
    }
    Ok("(m-1, 1/(m!(m-1)!)) for m <= 12".into())
}

fn persistence() -> Outcome {
    let built = database()?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("formulas.json");
    save_database(&built.db, &path).map_err(|e| e.to_string())?;
    let loaded = load_database(&path).map_err(|e| e.to_string())?;
    check(loaded == built.db, || "loaded database differs".into())?;
    let bytes = std::fs::read(&path).map_err(|e| e.to_string())?;
    check(to_json_string(&loaded).as_bytes() == bytes.as_slice(), || "re-serialization differs".into())?;

    let text = String::from_utf8(bytes).unwrap();
    let truncated = from_json_str(&text[..text.len() * 2 / 3]);
    check(matches!(truncated, Err(DbError::Parse(_))), || format!("truncated file gave {truncated:?}"))?;
    let version = from_json_str(&text.replacen("\"version\": 1", "\"version\": 7", 1));
    check(matches!(version, Err(DbError::Version { found: 7 })), || format!("version bump gave {version:?}"))?;
    let tampered = from_json_str(&text.replacen("\"1/144\"", "\"1/145\"", 1));
    check(matches!(tampered, Err(DbError::Checksum { .. })), || format!("tampered file gave {tampered:?}"))?;
    Ok(format!("{} records, {} bytes round-trip exactly; parse/version/checksum errors distinct", loaded.len(), text.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("golden formulae", golden_formulae),
        ("worked example m = 4", worked_example),
        ("oracle equivalence", oracle_equivalence),
        ("challenge integer p_60(10^100)", challenge_integer),
        ("diagonal identity", diagonal_identity),
        ("Durfee suite", durfee_suite),
        ("HRR certification", hrr_certification),
        ("floor-form equivalence", floor_form_equivalence),
        ("leading coefficients", leading_coefficients),
        ("persistence", persistence),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
