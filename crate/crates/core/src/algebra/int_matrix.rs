use std::fmt;

use super::GaussInt;

/// A square matrix of Gaussian integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    order: usize,
    entries: Vec<GaussInt>,
}

impl IntMatrix {
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> GaussInt) -> Self {
        let entries = (0..order * order)
            .map(|k| f(k / order, k % order))
            .collect();
        IntMatrix { order, entries }
    }

    /// `None` unless `rows` is square.
    pub fn from_rows(rows: Vec<Vec<GaussInt>>) -> Option<Self> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return None;
        }
        Some(IntMatrix {
            order,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_real_rows(rows: &[&[i64]]) -> Option<Self> {
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| GaussInt::real(x)).collect())
                .collect(),
        )
    }

    pub fn zero(order: usize) -> Self {
        IntMatrix {
            order,
            entries: vec![GaussInt::ZERO; order * order],
        }
    }

    pub fn scalar(order: usize, value: GaussInt) -> Self {
        IntMatrix::from_fn(order, |r, c| if r == c { value } else { GaussInt::ZERO })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> GaussInt {
        self.entries[row * self.order + col]
    }

    pub fn row(&self, row: usize) -> &[GaussInt] {
        &self.entries[row * self.order..(row + 1) * self.order]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[GaussInt]> + '_ {
        self.entries.chunks(self.order.max(1))
    }

    pub fn entries(&self) -> &[GaussInt] {
        &self.entries
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|g| g.im == 0)
    }

    pub fn conj_transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.order, |r, c| self.get(c, r).conj())
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.order, |r, c| self.get(c, r))
    }

    pub fn map(&self, f: impl Fn(GaussInt) -> GaussInt) -> IntMatrix {
        IntMatrix {
            order: self.order,
            entries: self.entries.iter().map(|&g| f(g)).collect(),
        }
    }

    pub fn scale(&self, k: GaussInt) -> IntMatrix {
        self.map(|g| g * k)
    }

    /// Plain matrix product `self · rhs`.
    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.order, rhs.order, "order mismatch in product");
        let n = self.order;
        IntMatrix::from_fn(n, |r, c| {
            (0..n).map(|k| self.get(r, k) * rhs.get(k, c)).sum()
        })
    }

    pub fn add(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.order, rhs.order, "order mismatch in sum");
        IntMatrix {
            order: self.order,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    /// The 2×2 block matrix `[[tl, tr], [bl, br]]`.
    pub fn block(tl: &IntMatrix, tr: &IntMatrix, bl: &IntMatrix, br: &IntMatrix) -> IntMatrix {
        let n = tl.order;
        assert!(
            [tr.order, bl.order, br.order].iter().all(|&o| o == n),
            "block order mismatch"
        );
        IntMatrix::from_fn(2 * n, |r, c| {
            let src = match (r < n, c < n) {
                (true, true) => tl,
                (true, false) => tr,
                (false, true) => bl,
                (false, false) => br,
            };
            src.get(r % n, c % n)
        })
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, row) in self.rows().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|g| g.to_string()).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
