//! Deterministic search over an indexed candidate space, optionally
//! split across worker threads.
//!
//! Workers scan disjoint ascending ranges and report the first hit in
//! their own range; the coordinator takes the hit with the smallest
//! index. The result is therefore identical for every worker count.

use std::sync::atomic::{AtomicU64, Ordering};

/// Probe candidates `0..total` in order and return the first hit.
pub fn first_hit<T, F>(total: u64, jobs: usize, probe: F) -> Option<(u64, T)>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync,
{
    if total == 0 {
        return None;
    }
    if jobs <= 1 || total < 4096 {
        for i in 0..total {
            if let Some(t) = probe(i) {
                return Some((i, t));
            }
        }
        return None;
    }

    let workers = (jobs as u64).min(total);
    let chunk = total.div_ceil(workers);
    let best = AtomicU64::new(u64::MAX);
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let lo = w * chunk;
                let hi = ((w + 1) * chunk).min(total);
                let best = &best;
                let probe = &probe;
                scope.spawn(move || {
                    for i in lo..hi {
                        // a hit strictly below i always wins; stop scanning
                        if i % 1024 == 0 && best.load(Ordering::Relaxed) < i {
                            return None;
                        }
                        if let Some(t) = probe(i) {
                            best.fetch_min(i, Ordering::Relaxed);
                            return Some((i, t));
                        }
                    }
                    None
                })
            })
            .collect();
        handles
            .into_iter()
            .filter_map(|h| h.join().expect("search worker panicked"))
            .min_by_key(|(i, _)| *i)
    })
}
