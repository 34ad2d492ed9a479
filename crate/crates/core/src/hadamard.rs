//! Hadamard predicates, row-regularity and dephasing.

use crate::algebra::{gram_unchecked, row_sums, GaussInt, IntMatrix, UnitEntry, UnitMatrix};
use crate::error::{Error, Result};

/// Row sums of a complex Hadamard matrix together with their regularity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowProfile {
    pub sums: Vec<GaussInt>,
    pub regular: bool,
    /// The common `|rᵢ|²` when `regular`.
    pub modulus_sq: Option<i64>,
}

/// `M·M* = n·I`.
pub fn is_complex_hadamard(m: &UnitMatrix) -> bool {
    gram_unchecked(m, m) == IntMatrix::scalar(m.order(), GaussInt::real(m.order() as i64))
}

/// All entries `±1` and `M·Mᵗ = n·I`.
pub fn is_real_hadamard(m: &UnitMatrix) -> bool {
    m.is_real() && is_complex_hadamard(m)
}

/// Row profile of a complex Hadamard matrix. Regular means every `|rᵢ|²` equals
/// the order, the only common value a Hadamard matrix admits.
pub fn is_row_regular(m: &UnitMatrix) -> Result<RowProfile> {
    if !is_complex_hadamard(m) {
        return Err(Error::NotHadamard);
    }
    let sums = row_sums(m);
    let n = m.order() as i64;
    let regular = sums.iter().all(|s| s.norm() == n);
    Ok(RowProfile {
        modulus_sq: regular.then_some(n),
        sums,
        regular,
    })
}

/// Scales columns by the conjugate of the first row, making that row all ones.
pub fn dephase(m: &UnitMatrix) -> Result<UnitMatrix> {
    if !is_complex_hadamard(m) {
        return Err(Error::NotHadamard);
    }
    let scale: Vec<UnitEntry> = m.row(0).iter().map(|e| e.conj()).collect();
    Ok(m.scale_columns(&scale))
}

/// Largest `k` accepted by [`sylvester`].
pub const MAX_SYLVESTER_POWER: u32 = 6;

/// Real Hadamard matrix of order `2ᵏ` built by repeated `[[S, S], [S, −S]]` doubling.
pub fn sylvester(k: u32) -> Result<UnitMatrix> {
    if k > MAX_SYLVESTER_POWER {
        return Err(Error::OrderTooLarge {
            order: 1 << k.min(63),
            max: 1 << MAX_SYLVESTER_POWER,
        });
    }
    let n = 1usize << k;
    Ok(UnitMatrix::from_fn(n, |r, c| {
        if (r & c).count_ones() % 2 == 0 {
            UnitEntry::One
        } else {
            UnitEntry::MinusOne
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_support::*;
    use proptest::prelude::*;

    #[test]
    fn complex_hadamard_cases() {
        assert!(is_complex_hadamard(&mat(&["11", "1-"])));
        assert!(is_complex_hadamard(&corpus_matrix("t2_k")));
        assert!(!is_complex_hadamard(&mat(&["11", "11"])));
    }

    #[test]
    fn real_hadamard_cases() {
        assert!(is_real_hadamard(&corpus_matrix("t4")));
        assert!(!is_real_hadamard(&mat(&["1i", "i1"])));
        assert!(is_real_hadamard(&mat(&["1"])));
    }

    #[test]
    fn row_regularity() {
        let p = is_row_regular(&mat(&["1i", "i1"])).unwrap();
        assert!(p.regular);
        assert_eq!(p.modulus_sq, Some(2));
        let p = is_row_regular(&mat(&["11", "1-"])).unwrap();
        assert!(!p.regular);
        assert_eq!(p.sums, vec![GaussInt::real(2), GaussInt::ZERO]);
        let p = is_row_regular(&corpus_matrix("t2_h")).unwrap();
        assert!(!p.regular);
        assert_eq!(p.sums[0].norm(), 324);
        assert_eq!(is_row_regular(&mat(&["11", "11"])), Err(Error::NotHadamard));
    }

    #[test]
    fn dephasing() {
        assert_eq!(dephase(&mat(&["1i", "i1"])).unwrap(), mat(&["11", "ij"]));
        let h = corpus_matrix("t2_h");
        assert_eq!(dephase(&h).unwrap(), h);
        let k = corpus_matrix("t1_k");
        let once = dephase(&k).unwrap();
        assert!(once.row(0).iter().all(|&e| e == UnitEntry::One));
        assert!(is_complex_hadamard(&once));
        assert_eq!(dephase(&once).unwrap(), once);
        assert_eq!(dephase(&mat(&["11", "11"])), Err(Error::NotHadamard));
    }

    #[test]
    fn sylvester_orders() {
        assert_eq!(sylvester(0).unwrap(), mat(&["1"]));
        assert_eq!(sylvester(1).unwrap(), mat(&["11", "1-"]));
        let s2 = sylvester(2).unwrap();
        assert_eq!(s2, mat(&["1111", "1-1-", "11--", "1--1"]));
        for k in 0..=MAX_SYLVESTER_POWER {
            assert!(is_real_hadamard(&sylvester(k).unwrap()));
        }
        assert!(sylvester(7).is_err());
    }

    #[test]
    fn row_regular_profiles_have_modulus_equal_to_order() {
        for id in CORPUS_IDS {
            let m = corpus_matrix(id);
            let p = is_row_regular(&m).unwrap();
            if p.regular {
                assert_eq!(p.modulus_sq, Some(m.order() as i64));
            }
        }
        // the only common row-sum modulus a Hadamard matrix can have is its order
        for m in all_unit_matrices(2).into_iter().filter(is_complex_hadamard) {
            let sums = row_sums(&m);
            if sums.iter().all(|s| s.norm() == sums[0].norm()) {
                assert_eq!(sums[0].norm(), 2);
            }
        }
    }

    #[test]
    fn real_hadamard_orders_are_one_two_or_multiples_of_four() {
        for n in 3..=4 {
            let found = all_sign_matrices(n)
                .into_iter()
                .any(|m| is_real_hadamard(&m));
            assert_eq!(found, n % 4 == 0, "order {n}");
        }
    }

    proptest! {
        #[test]
        fn hadamardness_invariant_under_monomial_action(
            (id, (diag, perm)) in corpus_with_monomial(),
        ) {
            let m = corpus_matrix(id);
            let moved = m.scale_columns(&diag).permute_columns(&perm);
            prop_assert!(is_complex_hadamard(&moved));
            let broken = {
                let mut rows: Vec<Vec<UnitEntry>> = moved.rows().map(<[_]>::to_vec).collect();
                rows[1] = rows[0].clone();
                UnitMatrix::from_rows(rows).unwrap()
            };
            prop_assert!(!is_complex_hadamard(&broken.scale_columns(&diag)));
        }
    }
}
