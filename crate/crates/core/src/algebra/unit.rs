use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use super::{GaussInt, IntMatrix};
use crate::error::{Error, Result};

/// A fourth root of unity, stored as the exponent `k` in `iᵏ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[repr(u8)]
pub enum UnitEntry {
    One = 0,
    I = 1,
    MinusOne = 2,
    MinusI = 3,
}

impl UnitEntry {
    /// All units in search order `1, i, -1, -i`.
    pub const ALL: [UnitEntry; 4] = [
        UnitEntry::One,
        UnitEntry::I,
        UnitEntry::MinusOne,
        UnitEntry::MinusI,
    ];

    pub const fn from_exponent(k: u8) -> UnitEntry {
        match k & 3 {
            0 => UnitEntry::One,
            1 => UnitEntry::I,
            2 => UnitEntry::MinusOne,
            _ => UnitEntry::MinusI,
        }
    }

    pub const fn exponent(self) -> u8 {
        self as u8
    }

    pub const fn conj(self) -> UnitEntry {
        UnitEntry::from_exponent(4 - self.exponent())
    }

    pub const fn neg(self) -> UnitEntry {
        UnitEntry::from_exponent(self.exponent() + 2)
    }

    pub const fn is_real(self) -> bool {
        matches!(self, UnitEntry::One | UnitEntry::MinusOne)
    }

    pub const fn to_gauss(self) -> GaussInt {
        match self {
            UnitEntry::One => GaussInt::new(1, 0),
            UnitEntry::I => GaussInt::new(0, 1),
            UnitEntry::MinusOne => GaussInt::new(-1, 0),
            UnitEntry::MinusI => GaussInt::new(0, -1),
        }
    }

    pub fn from_gauss(g: GaussInt) -> Option<UnitEntry> {
        match (g.re, g.im) {
            (1, 0) => Some(UnitEntry::One),
            (0, 1) => Some(UnitEntry::I),
            (-1, 0) => Some(UnitEntry::MinusOne),
            (0, -1) => Some(UnitEntry::MinusI),
            _ => None,
        }
    }

    /// Compact symbol: `1`, `-`, `i`, `j` (where `j = -i`).
    pub const fn symbol(self) -> char {
        match self {
            UnitEntry::One => '1',
            UnitEntry::I => 'i',
            UnitEntry::MinusOne => '-',
            UnitEntry::MinusI => 'j',
        }
    }

    pub const fn from_symbol(c: char) -> Option<UnitEntry> {
        match c {
            '1' => Some(UnitEntry::One),
            'i' => Some(UnitEntry::I),
            '-' => Some(UnitEntry::MinusOne),
            'j' => Some(UnitEntry::MinusI),
            _ => None,
        }
    }
}

impl Mul for UnitEntry {
    type Output = UnitEntry;
    // exponents add under multiplication
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: UnitEntry) -> UnitEntry {
        UnitEntry::from_exponent(self.exponent() + rhs.exponent())
    }
}

impl From<UnitEntry> for GaussInt {
    fn from(u: UnitEntry) -> GaussInt {
        u.to_gauss()
    }
}

impl fmt::Display for UnitEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A square matrix over `{1, -1, i, -i}`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitMatrix {
    order: usize,
    entries: Vec<UnitEntry>,
}

impl UnitMatrix {
    pub fn from_rows(rows: Vec<Vec<UnitEntry>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::EmptyMatrix);
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != order) {
            return Err(Error::OrderMismatch {
                left: order,
                right: bad.len(),
            });
        }
        Ok(UnitMatrix {
            order,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Panics on `order == 0`.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> UnitEntry) -> Self {
        assert!(order > 0, "matrix order must be positive");
        let entries = (0..order * order)
            .map(|k| f(k / order, k % order))
            .collect();
        UnitMatrix { order, entries }
    }

    /// Builds from `±1` integers; any other value is rejected.
    pub fn from_signs(rows: &[&[i8]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&s| match s {
                        1 => Ok(UnitEntry::One),
                        -1 => Ok(UnitEntry::MinusOne),
                        _ => Err(Error::NotReal),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        UnitMatrix::from_rows(rows)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> UnitEntry {
        self.entries[row * self.order + col]
    }

    pub fn row(&self, row: usize) -> &[UnitEntry] {
        &self.entries[row * self.order..(row + 1) * self.order]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[UnitEntry]> + '_ {
        self.entries.chunks(self.order)
    }

    pub fn entries(&self) -> &[UnitEntry] {
        &self.entries
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|e| e.is_real())
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(self.order, |r, c| self.get(r, c).to_gauss())
    }

    pub fn conj_transpose(&self) -> UnitMatrix {
        UnitMatrix::from_fn(self.order, |r, c| self.get(c, r).conj())
    }

    pub fn transpose(&self) -> UnitMatrix {
        UnitMatrix::from_fn(self.order, |r, c| self.get(c, r))
    }

    pub fn negate(&self) -> UnitMatrix {
        self.map(UnitEntry::neg)
    }

    pub fn map(&self, f: impl Fn(UnitEntry) -> UnitEntry) -> UnitMatrix {
        UnitMatrix {
            order: self.order,
            entries: self.entries.iter().map(|&e| f(e)).collect(),
        }
    }

    /// `M·D` for the unit diagonal `D = diag(scale)`.
    pub fn scale_columns(&self, scale: &[UnitEntry]) -> UnitMatrix {
        assert_eq!(scale.len(), self.order);
        UnitMatrix::from_fn(self.order, |r, c| self.get(r, c) * scale[c])
    }

    /// `D·M` for the unit diagonal `D = diag(scale)`.
    pub fn scale_rows(&self, scale: &[UnitEntry]) -> UnitMatrix {
        assert_eq!(scale.len(), self.order);
        UnitMatrix::from_fn(self.order, |r, c| scale[r] * self.get(r, c))
    }

    /// Row `r` of the result is row `perm[r]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> UnitMatrix {
        assert_eq!(perm.len(), self.order);
        UnitMatrix::from_fn(self.order, |r, c| self.get(perm[r], c))
    }

    /// Column `c` of the result is column `perm[c]` of `self`.
    pub fn permute_columns(&self, perm: &[usize]) -> UnitMatrix {
        assert_eq!(perm.len(), self.order);
        UnitMatrix::from_fn(self.order, |r, c| self.get(r, perm[c]))
    }
}

impl fmt::Display for UnitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, row) in self.rows().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            for e in row {
                write!(f, "{}", e.symbol())?;
            }
        }
        Ok(())
    }
}
