//! Threaded drivers over the single-threaded core engines.

use std::num::NonZeroUsize;
use std::thread;

use rqcodes_core::analysis::{ExhaustiveScan, ScanBest};
use rqcodes_core::{catalog, AuditReport, Budget, CodeOverRq, CoveringRadiusResult, Limits, Result, SymbolWeights};

pub fn default_workers() -> usize {
    thread::available_parallelism().map_or(1, NonZeroUsize::get)
}

/// Exhaustive covering radius with the ambient space split into `workers` ranges.
///
/// Each range reports its first maximiser and the merge keeps the largest
/// value with the smallest index, so the result does not depend on `workers`.
pub fn exhaustive(
    code: &CodeOverRq,
    weights: &SymbolWeights,
    limits: &Limits,
    workers: usize,
) -> Result<CoveringRadiusResult> {
    let scan = ExhaustiveScan::new(code, weights.clone(), limits)?;
    let total = scan.total();
    let workers = (workers.max(1) as u64).min(total.max(1));
    // Small chunks keep threads busy when pruning makes some ranges cheap.
    let chunks = (workers * 16).min(total.max(1));
    let step = total.div_ceil(chunks);
    let best = thread::scope(|s| {
        let scan = &scan;
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                s.spawn(move || {
                    let mut best = None;
                    let mut c = w;
                    while c < chunks {
                        let start = c * step;
                        best = ScanBest::merge(best, scan.scan(start..(start + step).min(total)));
                        c += workers;
                    }
                    best
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("scan worker panicked")).fold(None, ScanBest::merge)
    });
    Ok(scan.finish(best))
}

/// Runs the claim catalog across `workers` threads; the report is sorted, so
/// its content is independent of scheduling.
pub fn audit(budget: &Budget, workers: usize) -> AuditReport {
    let claims = catalog();
    let workers = workers.clamp(1, claims.len().max(1));
    let entries = thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                s.spawn(move || {
                    claims.iter().skip(w).step_by(workers).flat_map(|c| c.evaluate(budget)).collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("audit worker panicked")).collect()
    });
    AuditReport::from_entries(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rqcodes_core::constructions::repetition_generator;
    use rqcodes_core::{analysis, Metric, RingSpec};

    #[test]
    fn worker_count_does_not_change_result() {
        let lim = Limits::default();
        let ring = RingSpec::new(1, None).unwrap();
        let g = repetition_generator(ring.theta(), 4, &lim).unwrap();
        let code = CodeOverRq::enumerate(&g, &lim).unwrap();
        let w = SymbolWeights::new(code.ring(), Metric::Lee);
        let single = analysis::exhaustive(&code, &w, &lim).unwrap();
        for workers in [1, 2, 3, 7] {
            assert_eq!(exhaustive(&code, &w, &lim, workers).unwrap(), single);
        }
    }

    #[test]
    fn parallel_audit_matches_sequential() {
        let b = Budget { max_q: 1, max_k: 2, max_n: 2, ..Budget::default() };
        assert_eq!(audit(&b, 3), rqcodes_core::run_audit(&b));
    }
}
