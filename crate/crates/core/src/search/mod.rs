//! Exhaustive search for unbiased mates and classification at tiny orders.
//!
//! A mate of `H` (order `m`) is a complex Hadamard `K` with every entry of
//! `H·K*` of squared modulus `m`. Every row of such a `K` is an admissible
//! row: a unit vector whose inner product with each row of `H` lies on the
//! circle of squared radius `m`. Mates are therefore cliques of size `m` in
//! the orthogonality graph on admissible rows.
//!
//! Rows are only determined up to a unit scalar, so by default the first
//! entry of every row is fixed to `1`; this loses nothing up to left
//! multiplication by a unit diagonal.

mod budget;
mod classify;
mod engine;
mod targets;

use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use itertools::Itertools;

use crate::algebra::{GaussInt, UnitEntry, UnitMatrix};
use crate::error::{Error, Result};
use crate::hadamard::is_complex_hadamard;
use crate::relations::{
    are_unbiased, decompose_two_squares, special_factor, special_factor_candidates,
};

use budget::{Abort, Meter, Shared};
use engine::{admissible_rows, row_prefixes, CliqueGraph, RowProblem, StreamSearch};
use targets::{norm_circle, rotations};

pub use classify::{
    classify_much, enumerate_complex_hadamard, MuchClassification, MAX_ENUMERATION_ORDER,
};

/// Largest order for which admissible rows are materialized.
pub const MAX_MATERIALIZED_ORDER: usize = 12;

/// Every vector of length `len` over `alphabet`, in lexicographic order.
pub fn unit_vectors(
    len: usize,
    alphabet: &[UnitEntry],
) -> Box<dyn Iterator<Item = Vec<UnitEntry>> + '_> {
    if len == 0 {
        return Box::new(std::iter::once(Vec::new()));
    }
    Box::new(
        (0..len)
            .map(|_| alphabet.iter().copied())
            .multi_cartesian_product(),
    )
}

/// Snapshot handed to a progress hook.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Progress {
    pub nodes: u64,
    pub depth: usize,
    pub candidates_remaining: usize,
}

pub type ProgressHook = Arc<dyn Fn(&Progress) + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Materialize up to [`MAX_MATERIALIZED_ORDER`], stream above.
    #[default]
    Auto,
    Materialize,
    Stream,
}

#[derive(Clone)]
pub struct SearchConfig {
    pub fix_first_entry: bool,
    pub node_limit: Option<u64>,
    /// Maximum number of mates collected by [`enumerate_mates`].
    pub mate_limit: Option<usize>,
    pub worker_count: usize,
    /// Output independent of `worker_count` and scheduling.
    pub deterministic: bool,
    pub strategy: Strategy,
    pub cancel: Option<Arc<AtomicBool>>,
    pub progress: Option<ProgressHook>,
    /// Nodes between progress reports, per worker.
    pub progress_interval: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            fix_first_entry: true,
            node_limit: None,
            mate_limit: None,
            worker_count: 1,
            deterministic: true,
            strategy: Strategy::Auto,
            cancel: None,
            progress: None,
            progress_interval: 1 << 16,
        }
    }
}

impl fmt::Debug for SearchConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SearchConfig")
            .field("fix_first_entry", &self.fix_first_entry)
            .field("node_limit", &self.node_limit)
            .field("mate_limit", &self.mate_limit)
            .field("worker_count", &self.worker_count)
            .field("deterministic", &self.deterministic)
            .field("strategy", &self.strategy)
            .field("cancel", &self.cancel.is_some())
            .field("progress", &self.progress.is_some())
            .finish()
    }
}

impl SearchConfig {
    fn shared(&self) -> Shared {
        Shared::new(
            self.node_limit,
            self.deterministic,
            self.cancel.clone(),
            self.progress.clone(),
            self.progress_interval,
        )
    }

    fn materialize(&self, order: usize) -> bool {
        match self.strategy {
            Strategy::Auto => order <= MAX_MATERIALIZED_ORDER,
            Strategy::Materialize => true,
            Strategy::Stream => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(UnitMatrix),
    /// The search space was exhausted without a result.
    ProvenNone,
    /// The node limit was hit first; nothing can be concluded.
    BudgetExhausted,
    Cancelled,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub outcome: SearchOutcome,
    pub nodes: u64,
}

impl SearchResult {
    pub fn mate(&self) -> Option<&UnitMatrix> {
        match &self.outcome {
            SearchOutcome::Found(m) => Some(m),
            _ => None,
        }
    }

    fn none(nodes: u64) -> Self {
        SearchResult {
            outcome: SearchOutcome::ProvenNone,
            nodes,
        }
    }
}

/// Whether a mate of the given even order can exist at all: the order must be
/// a sum of two positive squares.
pub fn check_necessary_condition(order: usize) -> Result<bool> {
    if order % 2 == 1 {
        return Err(Error::OddOrder(order));
    }
    Ok(!decompose_two_squares(order as u64).is_empty())
}

/// Admissible rows of a complex Hadamard matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateRowSet {
    pub order: usize,
    pub rows: Vec<Vec<UnitEntry>>,
}

fn check_input(h: &UnitMatrix) -> Result<()> {
    if !is_complex_hadamard(h) {
        return Err(Error::NotHadamard);
    }
    if h.order() > crate::algebra::MAX_PACKED_LEN {
        return Err(Error::OrderTooLarge {
            order: h.order(),
            max: crate::algebra::MAX_PACKED_LEN,
        });
    }
    Ok(())
}

/// Every unit vector (first entry `1` when configured) whose inner product
/// with each row of `h` has squared modulus equal to the order.
pub fn candidate_rows(h: &UnitMatrix, cfg: &SearchConfig) -> Result<CandidateRowSet> {
    check_input(h)?;
    if h.order() > MAX_MATERIALIZED_ORDER {
        return Err(Error::OrderTooLarge {
            order: h.order(),
            max: MAX_MATERIALIZED_ORDER,
        });
    }
    let problem = RowProblem::new(h, &norm_circle(h.order() as i64), cfg.fix_first_entry);
    let shared = Shared::new(None, true, None, None, u64::MAX);
    let rows =
        admissible_rows(&problem, &mut Meter::new(&shared, 0, 0)).expect("unbounded enumeration");
    Ok(CandidateRowSet {
        order: h.order(),
        rows,
    })
}

/// Finds an unbiased mate of `h`. In deterministic mode the result is the
/// least mate with rows in increasing order under the entry order `1, i, −1, −i`.
pub fn find_mate(h: &UnitMatrix, cfg: &SearchConfig) -> Result<SearchResult> {
    check_input(h)?;
    if !check_necessary_condition_any(h.order()) {
        return Ok(SearchResult::none(0));
    }
    let result = search_targets(h, &norm_circle(h.order() as i64), cfg);
    if let Some(k) = result.mate() {
        assert!(
            is_complex_hadamard(k),
            "search returned a non-Hadamard mate"
        );
        assert!(
            are_unbiased(h, k) == Ok(true),
            "search returned a biased mate"
        );
    }
    Ok(result)
}

fn check_necessary_condition_any(order: usize) -> bool {
    order == 1 || check_necessary_condition(order).unwrap_or(false)
}

/// Finds a mate `K` with `H·K* = c·L` for a complex Hadamard `L`, trying each
/// factor orientation `a+ib`, `b+ia` in turn.
pub fn find_special_mate(h: &UnitMatrix, cfg: &SearchConfig) -> Result<SearchResult> {
    check_input(h)?;
    let mut nodes = 0;
    // rotations of a factor give the same target set
    let orientations: Vec<GaussInt> = special_factor_candidates(h.order())
        .into_iter()
        .step_by(4)
        .collect();
    let mut last_limit = cfg.node_limit;
    for c in orientations {
        let mut sub = cfg.clone();
        sub.node_limit = last_limit;
        let r = search_targets(h, &rotations(c), &sub);
        nodes += r.nodes;
        match r.outcome {
            SearchOutcome::ProvenNone => {
                last_limit = cfg.node_limit.map(|l| l.saturating_sub(nodes));
            }
            SearchOutcome::Found(k) => {
                assert!(
                    is_complex_hadamard(&k),
                    "search returned a non-Hadamard mate"
                );
                assert!(
                    matches!(special_factor(h, &k), Ok(Some(_))),
                    "search returned a mate that is not special"
                );
                return Ok(SearchResult {
                    outcome: SearchOutcome::Found(k),
                    nodes,
                });
            }
            outcome => return Ok(SearchResult { outcome, nodes }),
        }
    }
    Ok(SearchResult::none(nodes))
}

/// All mates, up to `cfg.mate_limit`, in increasing order. Single-threaded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MateEnumeration {
    pub mates: Vec<UnitMatrix>,
    /// `false` when a limit or cancellation cut the enumeration short.
    pub complete: bool,
    pub nodes: u64,
}

pub fn enumerate_mates(h: &UnitMatrix, cfg: &SearchConfig) -> Result<MateEnumeration> {
    check_input(h)?;
    let n = h.order();
    let problem = RowProblem::new(h, &norm_circle(n as i64), cfg.fix_first_entry);
    let shared = cfg.shared();
    let mut meter = Meter::new(&shared, 0, 0);
    let mut mates = Vec::new();
    let limit = cfg.mate_limit.unwrap_or(usize::MAX);
    let run =
        |meter: &mut Meter, mates: &mut Vec<UnitMatrix>| -> std::result::Result<bool, Abort> {
            if limit == 0 {
                return Ok(true);
            }
            if cfg.materialize(n) {
                let graph = CliqueGraph::new(admissible_rows(&problem, meter)?);
                for root in 0..graph.len() {
                    let stop = graph.extend_from(root, n, meter, &mut |clique| {
                        mates.push(graph.matrix(clique));
                        mates.len() >= limit
                    })?;
                    if stop {
                        return Ok(true);
                    }
                }
                Ok(false)
            } else {
                StreamSearch::new(&problem).run(&[], meter, &mut |m| {
                    mates.push(m.clone());
                    mates.len() >= limit
                })
            }
        };
    let complete = match run(&mut meter, &mut mates) {
        Ok(stopped) => !stopped,
        Err(_) => false,
    };
    Ok(MateEnumeration {
        mates,
        complete,
        nodes: meter.nodes,
    })
}

enum TaskOutcome {
    Found(UnitMatrix),
    Exhausted,
    Aborted(Abort),
}

struct TaskResult {
    nodes: u64,
    outcome: TaskOutcome,
}

/// Searches for a mate whose gram entries against `h` all lie in `targets`.
fn search_targets(h: &UnitMatrix, targets: &[GaussInt], cfg: &SearchConfig) -> SearchResult {
    let n = h.order();
    let problem = RowProblem::new(h, targets, cfg.fix_first_entry);
    let shared = cfg.shared();
    let mut meter = Meter::new(&shared, 0, 0);

    // split the first row: by admissible row (materialized) or by a short prefix (streaming)
    if cfg.materialize(n) {
        let rows = match admissible_rows(&problem, &mut meter) {
            Ok(rows) => rows,
            Err(abort) => return aborted(abort, meter.nodes),
        };
        let base = meter.nodes;
        let graph = CliqueGraph::new(rows);
        let tasks: Vec<usize> = (0..graph.len()).collect();
        run_tasks(&tasks, cfg, &shared, base, |&root, meter| {
            let mut found = None;
            graph.extend_from(root, n, meter, &mut |clique| {
                found = Some(graph.matrix(clique));
                true
            })?;
            Ok(found)
        })
    } else {
        let depth = n.min(4);
        let prefixes = match row_prefixes(&problem, depth, &mut meter) {
            Ok(p) => p,
            Err(abort) => return aborted(abort, meter.nodes),
        };
        let base = meter.nodes;
        run_tasks(&prefixes, cfg, &shared, base, |prefix, meter| {
            let mut found = None;
            StreamSearch::new(&problem).run(prefix, meter, &mut |m| {
                found = Some(m.clone());
                true
            })?;
            Ok(found)
        })
    }
}

fn aborted(abort: Abort, nodes: u64) -> SearchResult {
    let outcome = match abort {
        Abort::Cancelled => SearchOutcome::Cancelled,
        Abort::Budget | Abort::Superseded => SearchOutcome::BudgetExhausted,
    };
    SearchResult { outcome, nodes }
}

/// Runs independent subtrees on `cfg.worker_count` threads. Workers take tasks
/// in ascending order; results are merged as if the tasks had run one after
/// another, which makes deterministic output independent of the thread count.
fn run_tasks<T, F>(
    tasks: &[T],
    cfg: &SearchConfig,
    shared: &Shared,
    base: u64,
    run: F,
) -> SearchResult
where
    T: Sync,
    F: Fn(&T, &mut Meter) -> std::result::Result<Option<UnitMatrix>, Abort> + Sync,
{
    let results: Vec<Mutex<Option<TaskResult>>> = tasks.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let settled = |i: usize| {
        let best = shared.best_task.load(Ordering::Relaxed);
        best < i || (!cfg.deterministic && best != usize::MAX)
    };
    let worker = || loop {
        let i = next.fetch_add(1, Ordering::Relaxed);
        if i >= tasks.len() || settled(i) {
            return;
        }
        let mut meter = Meter::new(shared, i, base);
        let outcome = match run(&tasks[i], &mut meter) {
            Ok(Some(m)) => TaskOutcome::Found(m),
            Ok(None) => TaskOutcome::Exhausted,
            Err(abort) => TaskOutcome::Aborted(abort),
        };
        if matches!(
            outcome,
            TaskOutcome::Found(_) | TaskOutcome::Aborted(Abort::Budget | Abort::Cancelled)
        ) {
            shared.best_task.fetch_min(i, Ordering::Relaxed);
        }
        *results[i].lock().expect("result slot") = Some(TaskResult {
            nodes: meter.nodes,
            outcome,
        });
    };
    let workers = cfg.worker_count.max(1);
    if workers == 1 {
        worker();
    } else {
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(worker);
            }
        });
    }
    let results: Vec<Option<TaskResult>> = results
        .into_iter()
        .map(|m| m.into_inner().expect("result slot"))
        .collect();
    if cfg.deterministic {
        merge_sequential(results, base, cfg.node_limit)
    } else {
        merge_any(results, base)
    }
}

fn merge_sequential(
    results: Vec<Option<TaskResult>>,
    base: u64,
    limit: Option<u64>,
) -> SearchResult {
    let mut nodes = base;
    for r in results {
        let Some(r) = r else { break };
        if limit.is_some_and(|l| nodes + r.nodes > l) {
            return SearchResult {
                outcome: SearchOutcome::BudgetExhausted,
                nodes: limit.unwrap_or(nodes),
            };
        }
        nodes += r.nodes;
        match r.outcome {
            TaskOutcome::Found(m) => {
                return SearchResult {
                    outcome: SearchOutcome::Found(m),
                    nodes,
                }
            }
            TaskOutcome::Exhausted => {}
            TaskOutcome::Aborted(abort) => return aborted(abort, nodes),
        }
    }
    SearchResult::none(nodes)
}

fn merge_any(results: Vec<Option<TaskResult>>, base: u64) -> SearchResult {
    let nodes = base + results.iter().flatten().map(|r| r.nodes).sum::<u64>();
    let mut aborted_with = None;
    let mut incomplete = false;
    for r in results {
        match r.map(|r| r.outcome) {
            Some(TaskOutcome::Found(m)) => {
                return SearchResult {
                    outcome: SearchOutcome::Found(m),
                    nodes,
                }
            }
            Some(TaskOutcome::Exhausted) => {}
            Some(TaskOutcome::Aborted(a)) => aborted_with = aborted_with.or(Some(a)),
            None => incomplete = true,
        }
    }
    match aborted_with {
        Some(a) => aborted(a, nodes),
        None if incomplete => SearchResult {
            outcome: SearchOutcome::BudgetExhausted,
            nodes,
        },
        None => SearchResult::none(nodes),
    }
}
