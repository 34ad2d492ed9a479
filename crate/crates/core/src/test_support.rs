//! Shared fixtures for unit tests.

use proptest::prelude::*;

use crate::algebra::{UnitEntry, UnitMatrix};
use crate::format::{parse_matrix, MatrixDocument};
use crate::search::unit_vectors;

pub const CORPUS_IDS: [&str; 10] = [
    "t1_h", "t1_k", "t2_h", "t2_k", "t3_h", "t3_k", "t4", "t5", "t6_h", "t6_k",
];

pub fn mat(rows: &[&str]) -> UnitMatrix {
    parse_matrix(&rows.join("\n")).expect("fixture parses")
}

pub fn corpus_matrix(id: &str) -> UnitMatrix {
    let entry = crate::corpus::bundled_entry(id).expect("known corpus id");
    MatrixDocument::parse(&entry.text)
        .expect("corpus parses")
        .matrix
}

fn unit() -> impl Strategy<Value = UnitEntry> {
    (0u8..4).prop_map(UnitEntry::from_exponent)
}

pub fn unit_matrix_of(n: usize) -> impl Strategy<Value = UnitMatrix> {
    proptest::collection::vec(unit(), n * n)
        .prop_map(move |v| UnitMatrix::from_fn(n, |r, c| v[r * n + c]))
}

pub fn unit_matrix(orders: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = UnitMatrix> {
    orders.prop_flat_map(unit_matrix_of)
}

pub fn unit_matrix_pair(
    orders: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = (UnitMatrix, UnitMatrix)> {
    orders.prop_flat_map(|n| (unit_matrix_of(n), unit_matrix_of(n)))
}

/// A unit diagonal and a permutation of `0..n`.
pub fn monomial(n: usize) -> impl Strategy<Value = (Vec<UnitEntry>, Vec<usize>)> {
    (
        proptest::collection::vec(unit(), n),
        Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
    )
}

pub fn corpus_with_monomial() -> impl Strategy<Value = (&'static str, (Vec<UnitEntry>, Vec<usize>))>
{
    proptest::sample::select(&CORPUS_IDS[..])
        .prop_flat_map(|id| (Just(id), monomial(corpus_matrix(id).order())))
}

/// Every unit matrix of order `n` (4^(n²) of them).
pub fn all_unit_matrices(n: usize) -> Vec<UnitMatrix> {
    unit_vectors(n * n, &UnitEntry::ALL)
        .map(|v| UnitMatrix::from_fn(n, |r, c| v[r * n + c]))
        .collect()
}

/// Every `±1` matrix of order `n`.
pub fn all_sign_matrices(n: usize) -> Vec<UnitMatrix> {
    unit_vectors(n * n, &[UnitEntry::One, UnitEntry::MinusOne])
        .map(|v| UnitMatrix::from_fn(n, |r, c| v[r * n + c]))
        .collect()
}
