//! Doubling a complex Hadamard pair of order `m` into a real pair of order `2m`.
//!
//! Writing `H = A + iB`, the double is
//!
//! ```text
//! H' = [[1, 1], [1, −1]] ⊗ A + [[−1, 1], [1, 1]] ⊗ B = [[A − B, A + B], [A + B, B − A]]
//! ```
//!
//! with the 2×2 pattern as the outer factor. For a second matrix `K = C + iD`
//! and `H·K* = E + iF`, the real gram matrix is exactly `[[2E, −2F], [2F, 2E]]`.

use serde::Serialize;

use crate::algebra::{gram_unchecked, GaussInt, IntMatrix, UnitEntry, UnitMatrix};
use crate::error::{Error, Result};
use crate::relations::{are_unbiased, is_weak_gram, real_abs_histogram};

/// `H = A + iB` with `A`, `B` over `{−1, 0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealImagSplit {
    pub real: IntMatrix,
    pub imag: IntMatrix,
}

pub fn split(h: &UnitMatrix) -> RealImagSplit {
    let n = h.order();
    RealImagSplit {
        real: IntMatrix::from_fn(n, |r, c| GaussInt::real(h.get(r, c).to_gauss().re)),
        imag: IntMatrix::from_fn(n, |r, c| GaussInt::real(h.get(r, c).to_gauss().im)),
    }
}

fn sign(x: i64) -> UnitEntry {
    match x {
        1 => UnitEntry::One,
        -1 => UnitEntry::MinusOne,
        _ => unreachable!("A ± B has ±1 entries for unit matrices"),
    }
}

/// The real matrix `[[A − B, A + B], [A + B, B − A]]` of twice the order.
pub fn double(h: &UnitMatrix) -> UnitMatrix {
    let n = h.order();
    UnitMatrix::from_fn(2 * n, |r, c| {
        let g = h.get(r % n, c % n).to_gauss();
        let (a, b) = (g.re, g.im);
        sign(match (r < n, c < n) {
            (true, true) => a - b,
            (true, false) | (false, true) => a + b,
            (false, false) => b - a,
        })
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairKind {
    Unbiased,
    WeaklyUnbiased,
    Neither,
}

impl PairKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PairKind::Unbiased => "unbiased",
            PairKind::WeaklyUnbiased => "weakly_unbiased",
            PairKind::Neither => "neither",
        }
    }
}

/// Classifies a real gram matrix of order `n` by its `|entry|` histogram.
pub fn classify_real_gram(g: &IntMatrix) -> PairKind {
    let hist = real_abs_histogram(g);
    let n = g.order() as i64;
    match hist.keys().copied().collect::<Vec<_>>()[..] {
        [v] if v * v == n => PairKind::Unbiased,
        _ if is_weak_gram(g) => PairKind::WeaklyUnbiased,
        _ => PairKind::Neither,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubledPair {
    pub h: UnitMatrix,
    pub k: UnitMatrix,
    /// Real part of the source gram `H·K*`.
    pub e: IntMatrix,
    /// Imaginary part of the source gram `H·K*`.
    pub f: IntMatrix,
    pub kind: PairKind,
}

impl DoubledPair {
    /// `[[2E, −2F], [2F, 2E]]`.
    pub fn expected_gram(&self) -> IntMatrix {
        let two = GaussInt::real(2);
        let e2 = self.e.scale(two);
        let f2 = self.f.scale(two);
        IntMatrix::block(&e2, &f2.scale(GaussInt::real(-1)), &f2, &e2)
    }
}

/// Doubles an unbiased complex pair; the kind is read off the resulting real gram.
pub fn double_pair(h: &UnitMatrix, k: &UnitMatrix) -> Result<DoubledPair> {
    if !are_unbiased(h, k)? {
        return Err(Error::NotUnbiased);
    }
    let g = gram_unchecked(h, k);
    let hp = double(h);
    let kp = double(k);
    let kind = classify_real_gram(&gram_unchecked(&hp, &kp));
    Ok(DoubledPair {
        e: g.map(|x| GaussInt::real(x.re)),
        f: g.map(|x| GaussInt::real(x.im)),
        h: hp,
        k: kp,
        kind,
    })
}
