//! Resumable database builds, optionally spread over worker threads.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::mpsc;
use std::thread;

use partitions_core::discover::{FormulaKind, FormulaRecord};
use partitions_core::store::{discover_record, FormulaDatabase};

use crate::error::CliError;

/// Fills in parameters `1..=max` of `kind` that `db` lacks. `on_record` runs
/// on the calling thread after each insertion (in completion order when
/// `jobs > 1`). Returns the number of new records.
pub fn build_incremental<F>(
    db: &mut FormulaDatabase,
    kind: FormulaKind,
    max: u64,
    jobs: usize,
    mut on_record: F,
) -> Result<usize, CliError>
where
    F: FnMut(&FormulaDatabase, &FormulaRecord) -> Result<(), CliError>,
{
    let missing: Vec<u64> = (1..=max).filter(|&p| db.get(kind, p).is_none()).collect();
    if jobs <= 1 || missing.len() <= 1 {
        for &p in &missing {
            let rec = discover_record(kind, p)?;
            db.insert(rec.clone());
            on_record(db, &rec)?;
        }
        return Ok(missing.len());
    }

    let next = AtomicUsize::new(0);
    let stop = AtomicBool::new(false);
    let (tx, rx) = mpsc::channel();
    let mut count = 0;
    let mut first_err = None;
    thread::scope(|s| {
        for _ in 0..jobs.min(missing.len()) {
            let tx = tx.clone();
            let (next, stop, missing) = (&next, &stop, &missing);
            s.spawn(move || loop {
                if stop.load(Ordering::Relaxed) {
                    break;
                }
                let Some(&p) = missing.get(next.fetch_add(1, Ordering::Relaxed)) else { break };
                if tx.send(discover_record(kind, p)).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        for res in rx {
            if first_err.is_some() {
                continue;
            }
            let step = res.map_err(CliError::from).and_then(|rec| {
                db.insert(rec.clone());
                on_record(db, &rec)
            });
            match step {
                Ok(()) => count += 1,
                Err(e) => {
                    stop.store(true, Ordering::Relaxed);
                    first_err = Some(e);
                }
            }
        }
    });
    match first_err {
        Some(e) => Err(e),
        None => Ok(count),
    }
}
