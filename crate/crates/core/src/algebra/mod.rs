//! Exact Gaussian-integer scalars and dense matrix algebra.
//!
//! Every predicate in the crate is decided on these types; no floating point
//! is involved anywhere.

mod gauss;
mod int_matrix;
mod packed;
mod unit;

pub use gauss::GaussInt;
pub use int_matrix::IntMatrix;
pub use packed::{PackedRow, MAX_PACKED_LEN};
pub use unit::{UnitEntry, UnitMatrix};

use crate::error::{Error, Result};

/// Hermitian transpose, `result[i][j] = conj(m[j][i])`.
pub trait ConjTranspose {
    fn conj_transpose(&self) -> Self;
}

impl ConjTranspose for UnitMatrix {
    fn conj_transpose(&self) -> Self {
        UnitMatrix::conj_transpose(self)
    }
}

impl ConjTranspose for IntMatrix {
    fn conj_transpose(&self) -> Self {
        IntMatrix::conj_transpose(self)
    }
}

pub fn conj_transpose<M: ConjTranspose>(m: &M) -> M {
    m.conj_transpose()
}

pub(crate) fn check_same_order(h: &UnitMatrix, k: &UnitMatrix) -> Result<()> {
    if h.order() != k.order() {
        return Err(Error::OrderMismatch {
            left: h.order(),
            right: k.order(),
        });
    }
    Ok(())
}

/// The exact product `H·K*`.
pub fn gram(h: &UnitMatrix, k: &UnitMatrix) -> Result<IntMatrix> {
    check_same_order(h, k)?;
    Ok(gram_unchecked(h, k))
}

pub(crate) fn gram_unchecked(h: &UnitMatrix, k: &UnitMatrix) -> IntMatrix {
    let n = h.order();
    if n <= MAX_PACKED_LEN {
        let hp: Vec<PackedRow> = h.rows().map(PackedRow::new).collect();
        let kp: Vec<PackedRow> = k.rows().map(PackedRow::new).collect();
        IntMatrix::from_fn(n, |r, c| hp[r].inner(&kp[c]))
    } else {
        IntMatrix::from_fn(n, |r, c| {
            h.row(r)
                .iter()
                .zip(k.row(c))
                .map(|(a, b)| (*a * b.conj()).to_gauss())
                .sum()
        })
    }
}

/// The integer product `H·Kᵗ` of two `±1` matrices.
pub fn gram_real(h: &UnitMatrix, k: &UnitMatrix) -> Result<IntMatrix> {
    if !h.is_real() || !k.is_real() {
        return Err(Error::NotReal);
    }
    gram(h, k)
}

/// Componentwise row sums `rᵢ = Σⱼ mᵢⱼ`.
pub fn row_sums(m: &UnitMatrix) -> Vec<GaussInt> {
    m.rows()
        .map(|r| r.iter().map(|e| e.to_gauss()).sum())
        .collect()
}
