use super::{GaussInt, UnitEntry};

/// Maximum vector length a [`PackedRow`] can hold.
pub const MAX_PACKED_LEN: usize = 64;

/// A unit vector of length ≤ 64 stored as two bit planes of the exponent `k` in `iᵏ`.
///
/// Hermitian inner products reduce to a borrow-propagating subtraction of the
/// exponents followed by four popcounts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PackedRow {
    lo: u64,
    hi: u64,
    len: u8,
}

impl PackedRow {
    pub fn new(entries: &[UnitEntry]) -> Self {
        assert!(entries.len() <= MAX_PACKED_LEN, "vector too long to pack");
        let (mut lo, mut hi) = (0u64, 0u64);
        for (k, e) in entries.iter().enumerate() {
            let x = e.exponent() as u64;
            lo |= (x & 1) << k;
            hi |= (x >> 1) << k;
        }
        PackedRow {
            lo,
            hi,
            len: entries.len() as u8,
        }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, k: usize) -> UnitEntry {
        UnitEntry::from_exponent((((self.hi >> k) & 1) << 1 | ((self.lo >> k) & 1)) as u8)
    }

    pub fn to_entries(&self) -> Vec<UnitEntry> {
        (0..self.len()).map(|k| self.get(k)).collect()
    }

    fn mask(&self) -> u64 {
        if self.len as usize == MAX_PACKED_LEN {
            u64::MAX
        } else {
            (1u64 << self.len) - 1
        }
    }

    /// `Σₖ self[k]·conj(other[k])`.
    pub fn inner(&self, other: &PackedRow) -> GaussInt {
        debug_assert_eq!(self.len, other.len);
        let mask = self.mask();
        // d = a - b (mod 4), bitwise over both planes
        let d0 = self.lo ^ other.lo;
        let borrow = other.lo & !self.lo;
        let d1 = self.hi ^ other.hi ^ borrow;
        let count = |bits: u64| (bits & mask).count_ones() as i64;
        let c0 = count(!d1 & !d0);
        let c1 = count(!d1 & d0);
        let c2 = count(d1 & !d0);
        let c3 = count(d1 & d0);
        GaussInt::new(c0 - c2, c1 - c3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn unit_vec(len: usize) -> impl Strategy<Value = Vec<UnitEntry>> {
        proptest::collection::vec((0u8..4).prop_map(UnitEntry::from_exponent), len)
    }

    proptest! {
        #[test]
        fn packed_inner_matches_direct(
            (a, b) in (1usize..=64).prop_flat_map(|n| (unit_vec(n), unit_vec(n)))
        ) {
            let direct: GaussInt = a.iter().zip(&b).map(|(x, y)| x.to_gauss() * y.to_gauss().conj()).sum();
            prop_assert_eq!(PackedRow::new(&a).inner(&PackedRow::new(&b)), direct);
            prop_assert_eq!(PackedRow::new(&a).to_entries(), a);
        }
    }
}
