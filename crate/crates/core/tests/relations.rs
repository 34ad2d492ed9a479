mod common;

use common::{corpus, mat, monomial, signed_monomial};
use muchkit::algebra::{gram, gram_real, row_sums};
use muchkit::doubling::{double_pair, PairKind};
use muchkit::hadamard::{dephase, is_real_hadamard, sylvester};
use muchkit::relations::{
    are_modularly_homogeneous, are_unbiased, are_weakly_unbiased, gram_in_class,
    unbiased_sign_matrix, GaussianClass,
};
use muchkit::search::{enumerate_complex_hadamard, unit_vectors};
use muchkit::{GaussInt, UnitEntry, UnitMatrix};
use proptest::prelude::*;

const COMPLEX_PAIRS: [(&str, &str); 2] = [("t1_h", "t1_k"), ("t2_h", "t2_k")];

fn odd_odd(g: GaussInt) -> bool {
    g.re % 2 != 0 && g.im % 2 != 0
}

fn all_rows_odd_odd(m: &UnitMatrix) -> bool {
    row_sums(m).into_iter().all(odd_odd)
}

/// Real Hadamard pairs of order 4m with known gram structure.
fn real_fixtures() -> Vec<(UnitMatrix, UnitMatrix)> {
    let mut out = vec![
        (corpus("t3_h"), corpus("t3_k")),
        (corpus("t4"), corpus("t5")),
        (corpus("t6_h"), corpus("t6_k")),
        (sylvester(2).unwrap(), sylvester(2).unwrap()),
        (sylvester(3).unwrap(), sylvester(3).unwrap()),
    ];
    let ex4 = (mat(&["11", "1-"]), mat(&["1i", "1j"]));
    for (h, k) in [ex4, (corpus("t1_h"), corpus("t1_k"))] {
        let d = double_pair(&h, &k).unwrap();
        out.push((d.h, d.k));
    }
    out
}

/// Negates columns so that the first row becomes all ones.
fn normalize_first_row(m: &UnitMatrix) -> (UnitMatrix, Vec<UnitEntry>) {
    let scale: Vec<UnitEntry> = m.row(0).iter().map(|e| e.conj()).collect();
    (m.scale_columns(&scale), scale)
}

#[test]
fn odd_odd_row_sums_exclude_unbiasedness_at_order_two() {
    let hs = enumerate_complex_hadamard(2, false).unwrap();
    let odd: Vec<_> = hs.iter().filter(|m| all_rows_odd_odd(m)).collect();
    assert!(!odd.is_empty());
    for h in &odd {
        for k in &odd {
            assert_eq!(are_unbiased(h, k), Ok(false), "{h}\n{k}");
        }
    }
}

#[test]
fn odd_odd_row_sums_exclude_unbiasedness_at_order_ten() {
    // column scalings D with H·D odd-odd; a shared D keeps a pair unbiased,
    // so no D may make both members of an unbiased pair odd-odd
    for (hid, kid) in [("t1_h", "t1_k")] {
        let (h, k) = (corpus(hid), corpus(kid));
        let mut for_h = Vec::new();
        let mut for_k = Vec::new();
        for tail in unit_vectors(9, &UnitEntry::ALL) {
            let mut d = vec![UnitEntry::One];
            d.extend(tail);
            let hd = all_rows_odd_odd(&h.scale_columns(&d));
            let kd = all_rows_odd_odd(&k.scale_columns(&d));
            assert!(!(hd && kd), "shared scaling {d:?} makes both odd-odd");
            if hd && for_h.len() < 4 {
                for_h.push(h.scale_columns(&d));
            }
            if kd && for_k.len() < 4 {
                for_k.push(k.scale_columns(&d));
            }
        }
        assert!(!for_h.is_empty() && !for_k.is_empty());
        for a in &for_h {
            for b in &for_k {
                assert_eq!(are_unbiased(a, b), Ok(false));
            }
        }
    }
}

#[test]
fn unbiased_real_pairs_give_hadamard_sign_matrices() {
    let (h, k) = (corpus("t4"), corpus("t5"));
    let s = unbiased_sign_matrix(&h, &k).unwrap();
    assert!(is_real_hadamard(&s));
    for (h, k) in real_fixtures() {
        if are_unbiased(&h, &k) == Ok(true) && h != k {
            assert!(is_real_hadamard(&unbiased_sign_matrix(&h, &k).unwrap()));
        }
    }
}

#[test]
fn doubling_triggers() {
    let ex4 = double_pair(&mat(&["11", "1-"]), &mat(&["1i", "1j"])).unwrap();
    assert_eq!(ex4.kind, PairKind::Unbiased);
    for (hid, kid) in COMPLEX_PAIRS {
        let (h, k) = (corpus(hid), corpus(kid));
        let d = double_pair(&h, &k).unwrap();
        let a = gram(&h, &k).unwrap().entries()[0].abs_parts();
        let class = GaussianClass::new(a.0, a.1).unwrap();
        assert!(gram_in_class(&h, &k, class).unwrap());
        if class.a() == class.b() {
            assert_eq!(d.kind, PairKind::Unbiased, "{hid}");
        } else {
            assert_eq!(d.kind, PairKind::WeaklyUnbiased, "{hid}");
            // as many 2a entries as 2b entries
            let g = gram_real(&d.h, &d.k).unwrap();
            let count = |v: i64| g.entries().iter().filter(|e| e.re.abs() == v).count();
            assert_eq!(count(2 * class.a()), count(2 * class.b()));
            assert_eq!(count(2 * class.a()) * 2, g.entries().len());
        }
    }
}

#[test]
fn normalizing_a_weak_pair_forces_rows_to_two_mod_four() {
    // after making row 0 of H all ones, every row sum of H is 0 mod 4 and
    // every row sum of K is 2 mod 4; a third matrix cannot match both
    let mut checked = 0;
    for (h, k) in real_fixtures() {
        if are_weakly_unbiased(&h, &k) != Ok(true) || are_unbiased(&h, &k) == Ok(true) {
            continue;
        }
        let (hn, d) = normalize_first_row(&h);
        let kn = k.scale_columns(&d);
        assert_eq!(are_weakly_unbiased(&hn, &kn), Ok(true));
        assert!(row_sums(&hn).iter().all(|s| s.re.rem_euclid(4) == 0));
        assert!(row_sums(&kn).iter().all(|s| s.re.rem_euclid(4) == 2));
        assert_eq!(are_modularly_homogeneous(&hn, &kn), Ok(false));
        checked += 1;
    }
    assert_eq!(checked, 3);
}

#[test]
fn dephased_fixtures_are_modularly_homogeneous() {
    for (h, k) in real_fixtures() {
        let (h, k) = (dephase(&h).unwrap(), dephase(&k).unwrap());
        assert_eq!(are_modularly_homogeneous(&h, &k), Ok(true));
        let g = gram_real(&h, &k).unwrap();
        assert!(g.entries().iter().all(|e| e.re.rem_euclid(4) != 2));
    }
}

fn modhom_fixture() -> impl Strategy<Value = (UnitMatrix, UnitMatrix)> {
    proptest::sample::select(real_fixtures())
        .prop_flat_map(|(h, k)| {
            let n = h.order();
            (
                Just(h),
                Just(k),
                signed_monomial(n),
                signed_monomial(n),
                proptest::collection::vec(any::<bool>(), 2),
            )
        })
        .prop_map(|(h, k, rows_h, rows_k, normalize)| {
            let h = if normalize[0] {
                normalize_first_row(&h).0
            } else {
                h
            };
            let k = if normalize[1] {
                normalize_first_row(&k).0
            } else {
                k
            };
            // row negations and permutations keep every row sum class mod 4
            (rows_h.on_rows(&h), rows_k.on_rows(&k))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn unbiasedness_is_monomially_invariant(m in monomial(10), u in monomial(10)) {
        let (h, k) = (corpus("t1_h"), corpus("t1_k"));
        prop_assert_eq!(are_unbiased(&m.on_columns(&h), &m.on_columns(&k)), Ok(true));
        prop_assert_eq!(are_unbiased(&u.on_rows(&h), &k), Ok(true));
        prop_assert_eq!(are_unbiased(&h, &u.on_rows(&k)), Ok(true));
        // a biased pair stays biased
        prop_assert_eq!(are_unbiased(&m.on_columns(&h), &m.on_columns(&h)), Ok(false));
    }

    #[test]
    fn order_eighteen_pair_is_monomially_invariant(m in monomial(18), u in monomial(18)) {
        let (h, k) = (corpus("t2_h"), corpus("t2_k"));
        prop_assert_eq!(are_unbiased(&u.on_rows(&m.on_columns(&h)), &m.on_columns(&k)), Ok(true));
    }

    #[test]
    fn modular_homogeneity_forbids_two_mod_four((h, k) in modhom_fixture()) {
        if are_modularly_homogeneous(&h, &k).unwrap() {
            let g = gram_real(&h, &k).unwrap();
            prop_assert!(g.entries().iter().all(|e| e.re.rem_euclid(4) != 2));
        }
    }
}
