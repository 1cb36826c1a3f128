//! Per-object parallelism on scoped threads.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use eqnielsen_core::analysis::{Executor, ObjectJob};
use eqnielsen_core::lefschetz::ObjectLefschetz;
use eqnielsen_core::Result;

/// Runs jobs on up to `threads` threads; results keep job order.
pub struct Threaded {
    pub threads: usize,
}

impl Threaded {
    /// Thread count from `NF_THREADS`, else the available parallelism.
    pub fn from_env() -> Self {
        let threads = std::env::var("NF_THREADS")
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&n| n > 0)
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        Threaded { threads }
    }
}

impl Executor for Threaded {
    fn run(&self, count: usize, job: &ObjectJob<'_>) -> Vec<Result<Option<ObjectLefschetz>>> {
        let workers = self.threads.min(count);
        if workers <= 1 {
            return (0..count).map(job).collect();
        }
        let next = AtomicUsize::new(0);
        let slots: Vec<Mutex<Option<Result<Option<ObjectLefschetz>>>>> = (0..count).map(|_| Mutex::new(None)).collect();
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= count {
                        break;
                    }
                    let r = job(i);
                    *slots[i].lock().expect("no poisoned slots") = Some(r);
                });
            }
        });
        slots
            .into_iter()
            .map(|m| m.into_inner().expect("no poisoned slots").expect("every job ran"))
            .collect()
    }
}
