//! Backtracking over unit rows with exact partial-sum pruning.
//!
//! Two strategies share one problem description:
//!
//! * materialized: enumerate every admissible row once, then extend cliques
//!   in the orthogonality graph using bitsets;
//! * streaming: build the mate row by row and entry by entry, pruning against
//!   both the rows of `H` and the mate rows already placed.
//!
//! Both visit mates with rows in strictly increasing lexicographic order
//! (entry order `1, i, −1, −i`), so the first mate found is the least one.

use crate::algebra::{GaussInt, PackedRow, UnitEntry, UnitMatrix};

use super::budget::{Abort, Meter};
use super::targets::TargetTable;

const UNITS: [GaussInt; 4] = [
    GaussInt::new(1, 0),
    GaussInt::new(0, 1),
    GaussInt::new(-1, 0),
    GaussInt::new(0, -1),
];

/// `i^(a − b)`, i.e. `i^a · conj(i^b)`.
#[inline]
fn contribution(a: u8, b: u8) -> GaussInt {
    UNITS[(a.wrapping_sub(b) & 3) as usize]
}

/// Rows of `H` and the values their inner products with a mate row may take.
pub(crate) struct RowProblem {
    pub n: usize,
    h: Vec<Vec<u8>>,
    table: TargetTable,
    pub fix_first: bool,
}

impl RowProblem {
    pub fn new(h: &UnitMatrix, targets: &[GaussInt], fix_first: bool) -> Self {
        RowProblem {
            n: h.order(),
            h: h.rows()
                .map(|r| r.iter().map(|e| e.exponent()).collect())
                .collect(),
            table: TargetTable::new(h.order(), targets),
            fix_first,
        }
    }

    fn choices(&self, position: usize) -> std::ops::Range<u8> {
        if position == 0 && self.fix_first {
            0..1
        } else {
            0..4
        }
    }

    /// Adds entry `e` at `position` to the running inner products; returns
    /// whether every row of `H` can still reach a target.
    #[inline]
    fn push(&self, acc: &mut [GaussInt], position: usize, e: u8) -> bool {
        let remaining = self.n - position - 1;
        let mut ok = true;
        for (a, row) in acc.iter_mut().zip(&self.h) {
            *a += contribution(row[position], e);
            ok &= self.table.can_reach(*a, remaining);
        }
        ok
    }

    #[inline]
    fn pop(&self, acc: &mut [GaussInt], position: usize, e: u8) {
        for (a, row) in acc.iter_mut().zip(&self.h) {
            *a = *a - contribution(row[position], e);
        }
    }
}

fn to_entries(row: &[u8]) -> Vec<UnitEntry> {
    row.iter().map(|&e| UnitEntry::from_exponent(e)).collect()
}

/// Prefixes of length `depth` that can still be completed, in lexicographic order.
pub(crate) fn row_prefixes(
    p: &RowProblem,
    depth: usize,
    meter: &mut Meter,
) -> Result<Vec<Vec<u8>>, Abort> {
    let mut out = Vec::new();
    let mut acc = vec![GaussInt::ZERO; p.n];
    let mut prefix = Vec::with_capacity(depth);
    walk_row(p, depth, &mut acc, &mut prefix, meter, &mut |row| {
        out.push(row.to_vec())
    })?;
    Ok(out)
}

/// Every admissible full row, in lexicographic order.
pub(crate) fn admissible_rows(
    p: &RowProblem,
    meter: &mut Meter,
) -> Result<Vec<Vec<UnitEntry>>, Abort> {
    Ok(row_prefixes(p, p.n, meter)?
        .iter()
        .map(|r| to_entries(r))
        .collect())
}

fn walk_row(
    p: &RowProblem,
    depth: usize,
    acc: &mut [GaussInt],
    prefix: &mut Vec<u8>,
    meter: &mut Meter,
    emit: &mut dyn FnMut(&[u8]),
) -> Result<(), Abort> {
    let k = prefix.len();
    if k == depth {
        emit(prefix);
        return Ok(());
    }
    for e in p.choices(k) {
        meter.tick(k, depth - k)?;
        let ok = p.push(acc, k, e);
        if ok {
            prefix.push(e);
            walk_row(p, depth, acc, prefix, meter, emit)?;
            prefix.pop();
        }
        p.pop(acc, k, e);
    }
    Ok(())
}

/// Orthogonality graph over materialized rows, forward edges only.
pub(crate) struct CliqueGraph {
    pub rows: Vec<Vec<UnitEntry>>,
    words: usize,
    forward: Vec<Vec<u64>>,
}

impl CliqueGraph {
    pub fn new(rows: Vec<Vec<UnitEntry>>) -> Self {
        let packed: Vec<PackedRow> = rows.iter().map(|r| PackedRow::new(r)).collect();
        let words = rows.len().div_ceil(64).max(1);
        let forward = (0..rows.len())
            .map(|i| {
                let mut bits = vec![0u64; words];
                for j in i + 1..rows.len() {
                    if packed[i].inner(&packed[j]).is_zero() {
                        bits[j / 64] |= 1 << (j % 64);
                    }
                }
                bits
            })
            .collect();
        CliqueGraph {
            rows,
            words,
            forward,
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    /// Extends the clique `[root]` to `size` vertices; `visit` returns `true` to stop.
    pub fn extend_from(
        &self,
        root: usize,
        size: usize,
        meter: &mut Meter,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Result<bool, Abort> {
        meter.tick(0, self.len() - root)?;
        let mut chosen = vec![root];
        if size == 1 {
            return Ok(visit(&chosen));
        }
        let candidates = self.forward[root].clone();
        self.extend(&candidates, &mut chosen, size, meter, visit)
    }

    fn extend(
        &self,
        candidates: &[u64],
        chosen: &mut Vec<usize>,
        size: usize,
        meter: &mut Meter,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Result<bool, Abort> {
        let available: usize = candidates.iter().map(|w| w.count_ones() as usize).sum();
        if chosen.len() + available < size {
            return Ok(false);
        }
        let mut rest = candidates.to_vec();
        for w in 0..self.words {
            while rest[w] != 0 {
                let bit = rest[w].trailing_zeros() as usize;
                rest[w] &= rest[w] - 1;
                let v = w * 64 + bit;
                meter.tick(chosen.len(), available)?;
                chosen.push(v);
                let stop = if chosen.len() == size {
                    visit(chosen)
                } else {
                    let next: Vec<u64> = rest
                        .iter()
                        .zip(&self.forward[v])
                        .map(|(a, b)| a & b)
                        .collect();
                    self.extend(&next, chosen, size, meter, visit)?
                };
                chosen.pop();
                if stop {
                    return Ok(true);
                }
                let left: usize = rest.iter().map(|w| w.count_ones() as usize).sum();
                if chosen.len() + left < size {
                    return Ok(false);
                }
            }
        }
        Ok(false)
    }

    pub fn matrix(&self, clique: &[usize]) -> UnitMatrix {
        UnitMatrix::from_rows(clique.iter().map(|&v| self.rows[v].clone()).collect())
            .expect("clique of full size")
    }
}

/// Row-by-row construction of a mate with orthogonality pruning against the
/// rows already placed.
pub(crate) struct StreamSearch<'p> {
    p: &'p RowProblem,
    zero: TargetTable,
    rows: Vec<Vec<u8>>,
    /// Inner products of the row under construction with the rows of `H`, per level.
    acc_h: Vec<Vec<GaussInt>>,
    /// Inner products with the mate rows already placed, per level.
    acc_k: Vec<Vec<GaussInt>>,
}

impl<'p> StreamSearch<'p> {
    pub fn new(p: &'p RowProblem) -> Self {
        let n = p.n;
        StreamSearch {
            p,
            zero: TargetTable::new(n, &[GaussInt::ZERO]),
            rows: vec![Vec::with_capacity(n); n],
            acc_h: vec![vec![GaussInt::ZERO; n]; n],
            acc_k: (0..n).map(|t| vec![GaussInt::ZERO; t]).collect(),
        }
    }

    /// Runs the subtree whose first row starts with `prefix`; `visit` returns
    /// `true` to stop.
    pub fn run(
        &mut self,
        prefix: &[u8],
        meter: &mut Meter,
        visit: &mut dyn FnMut(&UnitMatrix) -> bool,
    ) -> Result<bool, Abort> {
        for row in &mut self.rows {
            row.clear();
        }
        self.acc_h[0].iter_mut().for_each(|a| *a = GaussInt::ZERO);
        for (k, &e) in prefix.iter().enumerate() {
            if !self.p.push(&mut self.acc_h[0], k, e) {
                return Ok(false);
            }
            self.rows[0].push(e);
        }
        self.step(0, false, meter, visit)
    }

    fn step(
        &mut self,
        t: usize,
        greater: bool,
        meter: &mut Meter,
        visit: &mut dyn FnMut(&UnitMatrix) -> bool,
    ) -> Result<bool, Abort> {
        let n = self.p.n;
        let k = self.rows[t].len();
        if k == n {
            if t + 1 == n {
                let m = UnitMatrix::from_rows(self.rows.iter().map(|r| to_entries(r)).collect())
                    .expect("square by construction");
                return Ok(visit(&m));
            }
            self.acc_h[t + 1]
                .iter_mut()
                .for_each(|a| *a = GaussInt::ZERO);
            self.acc_k[t + 1]
                .iter_mut()
                .for_each(|a| *a = GaussInt::ZERO);
            let stop = self.step(t + 1, false, meter, visit)?;
            self.rows[t + 1].clear();
            return Ok(stop);
        }
        let lower = if t > 0 && !greater {
            self.rows[t - 1][k]
        } else {
            0
        };
        let remaining = n - k - 1;
        for e in self.p.choices(k).filter(|&e| e >= lower) {
            meter.tick(t * n + k, n - t)?;
            let mut ok = self.p.push(&mut self.acc_h[t], k, e);
            for s in 0..t {
                let a = &mut self.acc_k[t][s];
                *a += contribution(self.rows[s][k], e);
                ok &= self.zero.can_reach(*a, remaining);
            }
            if ok {
                self.rows[t].push(e);
                let stop = self.step(t, greater || (t > 0 && e > lower), meter, visit)?;
                self.rows[t].pop();
                if stop {
                    self.undo(t, k, e);
                    return Ok(true);
                }
            }
            self.undo(t, k, e);
        }
        Ok(false)
    }

    fn undo(&mut self, t: usize, k: usize, e: u8) {
        self.p.pop(&mut self.acc_h[t], k, e);
        for s in 0..t {
            let a = &mut self.acc_k[t][s];
            *a = *a - contribution(self.rows[s][k], e);
        }
    }
}
