use std::path::Path;
use std::sync::mpsc;
use std::time::Instant;

use rayon::prelude::*;

use super::checkpoint::{Checkpoint, CheckpointError, CheckpointRecord};
use crate::obstruct::{quotient_dim, ObstructError};
use crate::ENGINE_VERSION;

#[derive(Debug, thiserror::Error)]
pub enum SweepError {
    #[error(transparent)]
    Checkpoint(#[from] CheckpointError),
    #[error(transparent)]
    Engine(#[from] ObstructError),
    #[error("worker pool: {0}")]
    Pool(String),
}

/// Grid points `(n, k)` with `n_min <= n <= n_max`, `k` from `ks`, `k < n`.
pub fn grid(n_min: usize, n_max: usize, ks: &[usize]) -> Vec<(usize, usize)> {
    (n_min.max(2)..=n_max).flat_map(|n| ks.iter().filter(move |&&k| k < n).map(move |&k| (n, k))).collect()
}

fn compute(n: usize, k: usize) -> Result<CheckpointRecord, ObstructError> {
    let t = Instant::now();
    let r = quotient_dim(n, k)?;
    Ok(CheckpointRecord {
        n,
        k,
        quotient_dim: r.quotient_dim,
        complement: r.complement,
        elapsed_ms: t.elapsed().as_millis() as u64,
        engine_version: ENGINE_VERSION.to_string(),
    })
}

/// Run the grid on `jobs` workers. Completed points already in the checkpoint
/// are skipped; new ones are persisted as they arrive by a single writer.
/// Returns every record of the grid sorted by `(n, k)`, and how many were computed.
pub fn run_sweep(
    points: &[(usize, usize)],
    jobs: usize,
    checkpoint: Option<&Path>,
    warn: &mut dyn FnMut(String),
) -> Result<(Vec<CheckpointRecord>, usize), SweepError> {
    let mut cp = match checkpoint {
        Some(p) => Some(Checkpoint::open(p, warn)?),
        None => None,
    };
    let pending: Vec<(usize, usize)> =
        points.iter().copied().filter(|&(n, k)| !cp.as_ref().is_some_and(|c| c.is_done(n, k))).collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(|e| SweepError::Pool(e.to_string()))?;

    let (tx, rx) = mpsc::channel::<Result<CheckpointRecord, ObstructError>>();
    let (fresh, failure) = std::thread::scope(|s| {
        let cp = &mut cp;
        let writer = s.spawn(move || {
            let mut fresh = Vec::new();
            let mut failure: Option<SweepError> = None;
            while let Ok(first) = rx.recv() {
                // drain whatever else is ready so one rewrite covers the batch
                let batch: Vec<_> = std::iter::once(first).chain(rx.try_iter()).collect();
                let mut ok = Vec::new();
                for r in batch {
                    match r {
                        Ok(rec) => ok.push(rec),
                        Err(e) => {
                            failure.get_or_insert(e.into());
                        }
                    }
                }
                if let Some(c) = cp.as_mut() {
                    if let Err(e) = c.append(&ok) {
                        failure.get_or_insert(e.into());
                    }
                }
                fresh.extend(ok);
            }
            (fresh, failure)
        });
        pool.install(|| {
            pending.par_iter().for_each_with(tx, |tx, &(n, k)| {
                let _ = tx.send(compute(n, k));
            });
        });
        writer.join().expect("writer thread")
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let computed = fresh.len();
    let mut all: Vec<CheckpointRecord> = match &cp {
        Some(c) => {
            let want: std::collections::BTreeSet<_> = points.iter().copied().collect();
            c.records().filter(|r| want.contains(&(r.n, r.k))).cloned().collect()
        }
        None => fresh,
    };
    all.sort_by_key(|r| (r.n, r.k));
    Ok((all, computed))
}
