//! The bundled reference matrices and their machine-checkable claims.

use std::fmt;

use serde::Serialize;

use crate::algebra::{GaussInt, UnitMatrix};
use crate::bases::{bases_from_pair_complex, bases_from_pair_real, verify_mucb, verify_murb};
use crate::doubling::{double_pair, PairKind};
use crate::format::{MatrixDocument, ParseError};
use crate::hadamard::{is_complex_hadamard, is_real_hadamard};
use crate::relations::{
    abs_value_histogram, are_modularly_homogeneous, are_unbiased, are_weakly_unbiased,
    gram_in_class, special_factor, GaussianClass,
};

/// `sha256sum`-format pins of the bundled files.
pub const CHECKSUMS: &str = include_str!("../corpus/SHA256SUMS");

const FILES: [(&str, &str); 10] = [
    ("t1_h", include_str!("../corpus/t1_h.txt")),
    ("t1_k", include_str!("../corpus/t1_k.txt")),
    ("t2_h", include_str!("../corpus/t2_h.txt")),
    ("t2_k", include_str!("../corpus/t2_k.txt")),
    ("t3_h", include_str!("../corpus/t3_h.txt")),
    ("t3_k", include_str!("../corpus/t3_k.txt")),
    ("t4", include_str!("../corpus/t4.txt")),
    ("t5", include_str!("../corpus/t5.txt")),
    ("t6_h", include_str!("../corpus/t6_h.txt")),
    ("t6_k", include_str!("../corpus/t6_k.txt")),
];

/// A property a corpus matrix is expected to have, alone or with a partner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Claim {
    ComplexHadamard,
    RealHadamard,
    UnbiasedWith(&'static str),
    GramInClass {
        with: &'static str,
        a: i64,
        b: i64,
    },
    SpecialWith {
        with: &'static str,
        factor: GaussInt,
    },
    NotSpecialWith(&'static str),
    WeaklyUnbiasedWith(&'static str),
    NotModularlyHomogeneousWith(&'static str),
    /// More `|2|` than `|6|` entries in `H·Kᵗ`.
    MoreTwosThanSixesWith(&'static str),
    DoublesTo {
        with: &'static str,
        kind: PairKind,
    },
    ComplexBasesWith(&'static str),
    RealBasesWith(&'static str),
}

impl Claim {
    fn partner(&self) -> Option<&'static str> {
        match *self {
            Claim::ComplexHadamard | Claim::RealHadamard => None,
            Claim::UnbiasedWith(w)
            | Claim::GramInClass { with: w, .. }
            | Claim::SpecialWith { with: w, .. }
            | Claim::NotSpecialWith(w)
            | Claim::WeaklyUnbiasedWith(w)
            | Claim::NotModularlyHomogeneousWith(w)
            | Claim::MoreTwosThanSixesWith(w)
            | Claim::DoublesTo { with: w, .. }
            | Claim::ComplexBasesWith(w)
            | Claim::RealBasesWith(w) => Some(w),
        }
    }

    fn check(&self, m: &UnitMatrix, partner: Option<&UnitMatrix>) -> bool {
        let k = partner;
        match (self, k) {
            (Claim::ComplexHadamard, _) => is_complex_hadamard(m),
            (Claim::RealHadamard, _) => is_real_hadamard(m),
            (Claim::UnbiasedWith(_), Some(k)) => are_unbiased(m, k) == Ok(true),
            (Claim::GramInClass { a, b, .. }, Some(k)) => {
                GaussianClass::new(*a, *b).is_some_and(|c| gram_in_class(m, k, c) == Ok(true))
            }
            (Claim::SpecialWith { factor, .. }, Some(k)) => match special_factor(m, k) {
                Ok(Some(s)) => s.factor == *factor && is_complex_hadamard(&s.quotient),
                _ => false,
            },
            (Claim::NotSpecialWith(_), Some(k)) => special_factor(m, k) == Ok(None),
            (Claim::WeaklyUnbiasedWith(_), Some(k)) => are_weakly_unbiased(m, k) == Ok(true),
            (Claim::NotModularlyHomogeneousWith(_), Some(k)) => {
                are_modularly_homogeneous(m, k) == Ok(false)
            }
            (Claim::MoreTwosThanSixesWith(_), Some(k)) => {
                abs_value_histogram(m, k).is_ok_and(|h| {
                    h.keys().all(|v| *v == 2 || *v == 6)
                        && h.get(&2).unwrap_or(&0) > h.get(&6).unwrap_or(&0)
                })
            }
            (Claim::DoublesTo { kind, .. }, Some(k)) => {
                double_pair(m, k).is_ok_and(|p| p.kind == *kind)
            }
            (Claim::ComplexBasesWith(_), Some(k)) => {
                bases_from_pair_complex(m, k).is_ok_and(|b| verify_mucb(&b) == Ok(true))
            }
            (Claim::RealBasesWith(_), Some(k)) => {
                bases_from_pair_real(m, k).is_ok_and(|b| verify_murb(&b) == Ok(true))
            }
            (_, None) => false,
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::ComplexHadamard => write!(f, "complex Hadamard"),
            Claim::RealHadamard => write!(f, "real Hadamard"),
            Claim::UnbiasedWith(w) => write!(f, "unbiased with {w}"),
            Claim::GramInClass { with, a, b } => write!(f, "gram with {with} in G({a},{b})"),
            Claim::SpecialWith { with, factor } => {
                write!(f, "special with {with}, factor {factor}")
            }
            Claim::NotSpecialWith(w) => write!(f, "not special with {w}"),
            Claim::WeaklyUnbiasedWith(w) => write!(f, "weakly unbiased with {w}"),
            Claim::NotModularlyHomogeneousWith(w) => {
                write!(f, "not modularly homogeneous with {w}")
            }
            Claim::MoreTwosThanSixesWith(w) => write!(f, "more |2| than |6| gram entries with {w}"),
            Claim::DoublesTo { with, kind } => {
                write!(f, "doubles with {with} to a {} pair", kind.as_str())
            }
            Claim::ComplexBasesWith(w) => write!(f, "three unbiased complex bases with {w}"),
            Claim::RealBasesWith(w) => write!(f, "three unbiased real bases with {w}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub id: &'static str,
    /// File contents, header included.
    pub text: String,
    pub claims: Vec<Claim>,
}

impl CorpusEntry {
    pub fn document(&self) -> Result<MatrixDocument, ParseError> {
        MatrixDocument::parse(&self.text)
    }
}

fn claims_for(id: &str) -> Vec<Claim> {
    use Claim::*;
    match id {
        "t1_h" => vec![
            ComplexHadamard,
            UnbiasedWith("t1_k"),
            GramInClass {
                with: "t1_k",
                a: 1,
                b: 3,
            },
            NotSpecialWith("t1_k"),
            DoublesTo {
                with: "t1_k",
                kind: PairKind::WeaklyUnbiased,
            },
        ],
        "t2_h" => vec![
            ComplexHadamard,
            UnbiasedWith("t2_k"),
            GramInClass {
                with: "t2_k",
                a: 3,
                b: 3,
            },
            SpecialWith {
                with: "t2_k",
                factor: GaussInt::new(3, 3),
            },
            DoublesTo {
                with: "t2_k",
                kind: PairKind::Unbiased,
            },
            ComplexBasesWith("t2_k"),
        ],
        "t1_k" | "t2_k" => vec![ComplexHadamard],
        "t3_h" => vec![
            RealHadamard,
            WeaklyUnbiasedWith("t3_k"),
            NotModularlyHomogeneousWith("t3_k"),
            MoreTwosThanSixesWith("t3_k"),
        ],
        "t4" => vec![
            RealHadamard,
            UnbiasedWith("t5"),
            WeaklyUnbiasedWith("t5"),
            RealBasesWith("t5"),
        ],
        "t6_h" => vec![RealHadamard, WeaklyUnbiasedWith("t6_k")],
        _ => vec![RealHadamard],
    }
}

/// The ten bundled matrices with their claims.
pub fn bundled() -> Vec<CorpusEntry> {
    FILES
        .iter()
        .map(|&(id, text)| CorpusEntry {
            id,
            text: text.to_string(),
            claims: claims_for(id),
        })
        .collect()
}

pub fn bundled_entry(id: &str) -> Option<CorpusEntry> {
    bundled().into_iter().find(|e| e.id == id)
}

pub fn ids() -> impl Iterator<Item = &'static str> {
    FILES.iter().map(|(id, _)| *id)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimResult {
    pub id: String,
    pub claim: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct CorpusReport {
    pub results: Vec<ClaimResult>,
}

impl CorpusReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClaimResult> {
        self.results.iter().filter(|r| !r.pass)
    }
}

impl fmt::Display for CorpusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            writeln!(
                f,
                "{} {}: {}",
                if r.pass { "PASS" } else { "FAIL" },
                r.id,
                r.claim
            )?;
        }
        Ok(())
    }
}

/// Checks every claim of every entry. Unparseable entries fail a `parses` claim;
/// claims against a missing or unparseable partner fail.
pub fn corpus_verify_all(entries: &[CorpusEntry]) -> CorpusReport {
    let parsed: Vec<Option<UnitMatrix>> = entries
        .iter()
        .map(|e| e.document().ok().map(|d| d.matrix))
        .collect();
    let lookup = |id: &str| {
        entries
            .iter()
            .position(|e| e.id == id)
            .and_then(|i| parsed[i].as_ref())
    };
    let mut results = Vec::new();
    for (entry, matrix) in entries.iter().zip(&parsed) {
        let Some(m) = matrix else {
            results.push(ClaimResult {
                id: entry.id.to_string(),
                claim: "parses".into(),
                pass: false,
            });
            continue;
        };
        for claim in &entry.claims {
            let partner = claim.partner().and_then(lookup);
            results.push(ClaimResult {
                id: entry.id.to_string(),
                claim: claim.to_string(),
                pass: claim.check(m, partner),
            });
        }
    }
    CorpusReport { results }
}
