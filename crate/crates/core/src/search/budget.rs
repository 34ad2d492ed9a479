use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Arc;

use super::{Progress, ProgressHook};

/// Why a subtree stopped before completing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Abort {
    Budget,
    Cancelled,
    /// Another subtree made this one irrelevant.
    Superseded,
}

/// State shared by all workers of one search.
pub(crate) struct Shared {
    pub node_limit: Option<u64>,
    /// Global node counter; used for the budget only in non-deterministic mode.
    pub nodes: AtomicU64,
    pub deterministic: bool,
    pub cancel: Option<Arc<AtomicBool>>,
    /// Lowest task index that settled the search so far (found, out of budget or cancelled).
    pub best_task: AtomicUsize,
    pub progress: Option<ProgressHook>,
    pub progress_interval: u64,
}

impl Shared {
    pub fn new(
        node_limit: Option<u64>,
        deterministic: bool,
        cancel: Option<Arc<AtomicBool>>,
        progress: Option<ProgressHook>,
        progress_interval: u64,
    ) -> Self {
        Shared {
            node_limit,
            nodes: AtomicU64::new(0),
            deterministic,
            cancel,
            best_task: AtomicUsize::new(usize::MAX),
            progress,
            progress_interval: progress_interval.max(1),
        }
    }
}

/// Per-task node meter.
pub(crate) struct Meter<'a> {
    shared: &'a Shared,
    task: usize,
    pub nodes: u64,
    /// Nodes already spent before this task started (candidate generation).
    base: u64,
}

impl<'a> Meter<'a> {
    pub fn new(shared: &'a Shared, task: usize, base: u64) -> Self {
        Meter {
            shared,
            task,
            nodes: 0,
            base,
        }
    }

    /// Counts one node; fails when the search must stop.
    #[inline]
    pub fn tick(&mut self, depth: usize, candidates_remaining: usize) -> Result<(), Abort> {
        let shared = self.shared;
        let total = if shared.deterministic {
            self.base + self.nodes + 1
        } else {
            shared.nodes.fetch_add(1, Ordering::Relaxed) + 1 + self.base
        };
        if let Some(limit) = shared.node_limit {
            if total > limit {
                return Err(Abort::Budget);
            }
        }
        self.nodes += 1;
        if let Some(cancel) = &shared.cancel {
            if cancel.load(Ordering::Relaxed) {
                return Err(Abort::Cancelled);
            }
        }
        let best = shared.best_task.load(Ordering::Relaxed);
        if best < self.task || (!shared.deterministic && best != usize::MAX) {
            return Err(Abort::Superseded);
        }
        if self.nodes.is_multiple_of(shared.progress_interval) {
            if let Some(hook) = &shared.progress {
                hook(&Progress {
                    nodes: total,
                    depth,
                    candidates_remaining,
                });
            }
        }
        Ok(())
    }
}
