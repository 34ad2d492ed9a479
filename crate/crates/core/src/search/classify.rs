use crate::algebra::{UnitEntry, UnitMatrix};
use crate::error::{Error, Result};
use crate::hadamard::is_complex_hadamard;
use crate::relations::are_unbiased;

use super::unit_vectors;

/// Largest order [`enumerate_complex_hadamard`] accepts (`4^(n²)` matrices).
pub const MAX_ENUMERATION_ORDER: usize = 3;

/// Largest set of pairwise unbiased complex Hadamard matrices of one order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuchClassification {
    pub order: usize,
    pub max_set_size: usize,
    /// Least maximum set, in increasing order.
    pub witness: Vec<UnitMatrix>,
    /// The enumerated matrices (row-normalized).
    pub hadamards: Vec<UnitMatrix>,
}

/// Every complex Hadamard matrix of the given order, optionally with each
/// row scaled so its first entry is `1` (duplicates removed). Sorted.
pub fn enumerate_complex_hadamard(order: usize, normalize_rows: bool) -> Result<Vec<UnitMatrix>> {
    if order == 0 || order > MAX_ENUMERATION_ORDER {
        return Err(Error::UnsupportedOrder(order));
    }
    let mut out: Vec<UnitMatrix> = unit_vectors(order * order, &UnitEntry::ALL)
        .map(|v| UnitMatrix::from_fn(order, |r, c| v[r * order + c]))
        .filter(is_complex_hadamard)
        .map(|m| {
            if normalize_rows {
                let scale: Vec<UnitEntry> = (0..order).map(|r| m.get(r, 0).conj()).collect();
                m.scale_rows(&scale)
            } else {
                m
            }
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Exhaustive maximum unbiased set at order 2.
pub fn classify_much(order: usize) -> Result<MuchClassification> {
    if order != 2 {
        return Err(Error::UnsupportedOrder(order));
    }
    let hadamards = enumerate_complex_hadamard(order, true)?;
    let m = hadamards.len();
    let unbiased: Vec<Vec<bool>> = (0..m)
        .map(|a| {
            (0..m)
                .map(|b| a != b && are_unbiased(&hadamards[a], &hadamards[b]) == Ok(true))
                .collect()
        })
        .collect();
    let mut best: Vec<usize> = Vec::new();
    let mut current = Vec::new();
    max_clique(&unbiased, 0, &mut current, &mut best);
    Ok(MuchClassification {
        order,
        max_set_size: best.len(),
        witness: best.iter().map(|&i| hadamards[i].clone()).collect(),
        hadamards,
    })
}

/// Plain branch and bound; keeps the first maximum clique in lexicographic order.
fn max_clique(adj: &[Vec<bool>], from: usize, current: &mut Vec<usize>, best: &mut Vec<usize>) {
    if current.len() > best.len() {
        *best = current.clone();
    }
    for v in from..adj.len() {
        if current.len() + (adj.len() - v) <= best.len() {
            return;
        }
        if current.iter().all(|&u| adj[u][v]) {
            current.push(v);
            max_clique(adj, v + 1, current, best);
            current.pop();
        }
    }
}
