#![allow(dead_code)]

use muchkit::format::{parse_matrix, MatrixDocument};
use muchkit::{UnitEntry, UnitMatrix};
use proptest::prelude::*;

pub fn mat(rows: &[&str]) -> UnitMatrix {
    parse_matrix(&rows.join("\n")).expect("fixture parses")
}

pub fn corpus(id: &str) -> UnitMatrix {
    let entry = muchkit::corpus::bundled_entry(id).expect("known corpus id");
    MatrixDocument::parse(&entry.text)
        .expect("corpus parses")
        .matrix
}

pub fn unit() -> impl Strategy<Value = UnitEntry> {
    (0u8..4).prop_map(UnitEntry::from_exponent)
}

pub fn sign() -> impl Strategy<Value = UnitEntry> {
    prop_oneof![Just(UnitEntry::One), Just(UnitEntry::MinusOne)]
}

pub fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

/// A monomial transform: unit diagonal followed by a permutation.
#[derive(Debug, Clone)]
pub struct Monomial {
    pub scale: Vec<UnitEntry>,
    pub perm: Vec<usize>,
}

impl Monomial {
    pub fn on_columns(&self, m: &UnitMatrix) -> UnitMatrix {
        m.scale_columns(&self.scale).permute_columns(&self.perm)
    }

    pub fn on_rows(&self, m: &UnitMatrix) -> UnitMatrix {
        m.scale_rows(&self.scale).permute_rows(&self.perm)
    }
}

pub fn monomial(n: usize) -> impl Strategy<Value = Monomial> {
    (proptest::collection::vec(unit(), n), permutation(n))
        .prop_map(|(scale, perm)| Monomial { scale, perm })
}

pub fn signed_monomial(n: usize) -> impl Strategy<Value = Monomial> {
    (proptest::collection::vec(sign(), n), permutation(n))
        .prop_map(|(scale, perm)| Monomial { scale, perm })
}
