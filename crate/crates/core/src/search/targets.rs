use crate::algebra::{GaussInt, UnitEntry};

/// Exact reachability of a target set from a partial inner product.
///
/// A sum of `r` units reaches exactly the points `(x, y)` with `|x| + |y| ≤ r`
/// and `x + y ≡ r (mod 2)`, so a prefix value `p` can still end in the target
/// set iff some target lies within that diamond around `p`.
#[derive(Debug, Clone)]
pub(crate) struct TargetTable {
    len: usize,
    span: usize,
    /// Indexed by `[remaining][re + len][im + len]`.
    table: Vec<bool>,
}

impl TargetTable {
    pub fn new(len: usize, targets: &[GaussInt]) -> Self {
        let span = 2 * len + 1;
        let mut table = vec![false; (len + 1) * span * span];
        for remaining in 0..=len {
            for re in -(len as i64)..=len as i64 {
                for im in -(len as i64)..=len as i64 {
                    let p = GaussInt::new(re, im);
                    table[Self::index(len, span, remaining, p)] =
                        targets.iter().any(|&t| reachable(p, remaining, t));
                }
            }
        }
        TargetTable { len, span, table }
    }

    fn index(len: usize, span: usize, remaining: usize, p: GaussInt) -> usize {
        (remaining * span + (p.re + len as i64) as usize) * span + (p.im + len as i64) as usize
    }

    #[inline]
    pub fn can_reach(&self, p: GaussInt, remaining: usize) -> bool {
        self.table[Self::index(self.len, self.span, remaining, p)]
    }
}

#[inline]
pub(crate) fn reachable(p: GaussInt, remaining: usize, target: GaussInt) -> bool {
    let dist = (target.re - p.re).abs() + (target.im - p.im).abs();
    dist <= remaining as i64 && (remaining as i64 - dist) % 2 == 0
}

/// All lattice points of squared modulus `norm`.
pub(crate) fn norm_circle(norm: i64) -> Vec<GaussInt> {
    let r = (norm as u64).isqrt() as i64;
    let mut out = Vec::new();
    for x in -r..=r {
        for y in -r..=r {
            if x * x + y * y == norm {
                out.push(GaussInt::new(x, y));
            }
        }
    }
    out
}

/// The four unit multiples of `c`.
pub(crate) fn rotations(c: GaussInt) -> Vec<GaussInt> {
    UnitEntry::ALL.iter().map(|u| u.to_gauss() * c).collect()
}
