//! Pairwise relations between Hadamard matrices: unbiasedness, membership of the
//! gram entries in a class `G(a,b)`, weak unbiasedness, modular homogeneity and
//! special pairs, plus the two-squares decomposition behind all of them.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{
    check_same_order, gram_unchecked, row_sums, GaussInt, IntMatrix, UnitEntry, UnitMatrix,
};
use crate::error::{Error, Result};
use crate::hadamard::{is_complex_hadamard, is_real_hadamard};

/// The eight Gaussian integers `{a±ib, −a±ib, ia±b, −ia±b}` (four when `a = b`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GaussianClass {
    a: i64,
    b: i64,
}

impl GaussianClass {
    /// `None` unless both parts are positive. The pair is stored with `a ≤ b`.
    pub fn new(a: i64, b: i64) -> Option<Self> {
        (a > 0 && b > 0).then(|| GaussianClass {
            a: a.min(b),
            b: a.max(b),
        })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn norm(&self) -> i64 {
        self.a * self.a + self.b * self.b
    }

    pub fn contains(&self, g: GaussInt) -> bool {
        g.abs_parts() == (self.a, self.b)
    }

    /// Distinct members in ascending order.
    pub fn members(&self) -> Vec<GaussInt> {
        let (a, b) = (self.a, self.b);
        let mut out: Vec<GaussInt> = [(a, b), (b, a)]
            .into_iter()
            .flat_map(|(x, y)| [(x, y), (x, -y), (-x, y), (-x, -y)])
            .map(|(x, y)| GaussInt::new(x, y))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SquarePair {
    pub a: i64,
    pub b: i64,
    /// Both `a` and `b` odd.
    pub odd_odd: bool,
}

/// All representations `m = a² + b²` with `0 < a ≤ b`, ascending in `a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub m: u64,
    pub pairs: Vec<SquarePair>,
}

impl Decomposition {
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

pub fn decompose_two_squares(m: u64) -> Decomposition {
    let pairs = (1u64..)
        .take_while(|a| 2 * a * a <= m)
        .filter_map(|a| {
            let rest = m - a * a;
            let b = rest.isqrt();
            (b * b == rest).then_some(SquarePair {
                a: a as i64,
                b: b as i64,
                odd_odd: a % 2 == 1 && b % 2 == 1,
            })
        })
        .collect();
    Decomposition { m, pairs }
}

fn check_hadamard_pair(h: &UnitMatrix, k: &UnitMatrix) -> Result<()> {
    check_same_order(h, k)?;
    if !is_complex_hadamard(h) || !is_complex_hadamard(k) {
        return Err(Error::NotHadamard);
    }
    Ok(())
}

fn check_real_hadamard_pair(h: &UnitMatrix, k: &UnitMatrix) -> Result<()> {
    check_same_order(h, k)?;
    if !h.is_real() || !k.is_real() {
        return Err(Error::NotReal);
    }
    if !is_real_hadamard(h) || !is_real_hadamard(k) {
        return Err(Error::NotHadamard);
    }
    Ok(())
}

/// Every entry of `H·K*` has squared modulus equal to the order.
pub fn are_unbiased(h: &UnitMatrix, k: &UnitMatrix) -> Result<bool> {
    check_hadamard_pair(h, k)?;
    Ok(entries_have_norm(&gram_unchecked(h, k), h.order() as i64))
}

fn entries_have_norm(g: &IntMatrix, n: i64) -> bool {
    g.entries().iter().all(|e| e.norm() == n)
}

pub fn gram_in_class(h: &UnitMatrix, k: &UnitMatrix, class: GaussianClass) -> Result<bool> {
    check_same_order(h, k)?;
    Ok(gram_unchecked(h, k)
        .entries()
        .iter()
        .all(|&e| class.contains(e)))
}

/// Counts of `|entry|` over `H·Kᵗ`.
pub fn abs_value_histogram(h: &UnitMatrix, k: &UnitMatrix) -> Result<BTreeMap<i64, usize>> {
    check_same_order(h, k)?;
    if !h.is_real() || !k.is_real() {
        return Err(Error::NotReal);
    }
    Ok(real_abs_histogram(&gram_unchecked(h, k)))
}

pub(crate) fn real_abs_histogram(g: &IntMatrix) -> BTreeMap<i64, usize> {
    let mut hist = BTreeMap::new();
    for e in g.entries() {
        *hist.entry(e.re.abs()).or_insert(0) += 1;
    }
    hist
}

/// At most two distinct `|entry|` values in `H·Kᵗ`, every entry `≡ 2 (mod 4)`.
pub fn are_weakly_unbiased(h: &UnitMatrix, k: &UnitMatrix) -> Result<bool> {
    check_real_hadamard_pair(h, k)?;
    Ok(is_weak_gram(&gram_unchecked(h, k)))
}

pub(crate) fn is_weak_gram(g: &IntMatrix) -> bool {
    real_abs_histogram(g).len() <= 2 && g.entries().iter().all(|e| e.re.rem_euclid(4) == 2)
}

/// `H·J + J·Kᵗ ≡ 0 (mod 4)`; entry `(i, j)` is `rowsum_i(H) + rowsum_j(K)`.
pub fn are_modularly_homogeneous(h: &UnitMatrix, k: &UnitMatrix) -> Result<bool> {
    check_real_hadamard_pair(h, k)?;
    let hs = row_sums(h);
    let ks = row_sums(k);
    Ok(hs
        .iter()
        .all(|x| ks.iter().all(|y| (x.re + y.re).rem_euclid(4) == 0)))
}

/// Factor `c` and Hadamard matrix `L` with `H·K* = c·L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialFactor {
    pub factor: GaussInt,
    pub quotient: UnitMatrix,
}

/// Candidate factors `u·(a+ib)` for every decomposition of `order`, both
/// orientations `a+ib` and `b+ia`, and every unit `u`, in trial order.
pub fn special_factor_candidates(order: usize) -> Vec<GaussInt> {
    let mut out = Vec::new();
    for p in decompose_two_squares(order as u64).pairs {
        let orientations = if p.a == p.b {
            vec![(p.a, p.b)]
        } else {
            vec![(p.a, p.b), (p.b, p.a)]
        };
        for (x, y) in orientations {
            for u in UnitEntry::ALL {
                out.push(u.to_gauss() * GaussInt::new(x, y));
            }
        }
    }
    out
}

/// Divides the gram matrix by `factor`, succeeding when every quotient is a unit.
pub(crate) fn divide_to_units(g: &IntMatrix, factor: GaussInt) -> Option<UnitMatrix> {
    let units = g
        .entries()
        .iter()
        .map(|&e| e.div_exact(factor).and_then(UnitEntry::from_gauss))
        .collect::<Option<Vec<_>>>()?;
    let n = g.order();
    Some(UnitMatrix::from_fn(n, |r, c| units[r * n + c]))
}

/// Finds `c` and a complex Hadamard `L` with `H·K* = c·L`, if the pair is special.
pub fn special_factor(h: &UnitMatrix, k: &UnitMatrix) -> Result<Option<SpecialFactor>> {
    if !are_unbiased(h, k)? {
        return Err(Error::NotUnbiased);
    }
    let g = gram_unchecked(h, k);
    Ok(special_factor_candidates(h.order())
        .into_iter()
        .find_map(|factor| {
            divide_to_units(&g, factor)
                .filter(is_complex_hadamard)
                .map(|quotient| SpecialFactor { factor, quotient })
        }))
}

/// `H·Kᵗ / √n` for an unbiased real pair: the sign pattern of the gram matrix.
pub fn unbiased_sign_matrix(h: &UnitMatrix, k: &UnitMatrix) -> Result<UnitMatrix> {
    check_real_hadamard_pair(h, k)?;
    if !are_unbiased(h, k)? {
        return Err(Error::NotUnbiased);
    }
    let g = gram_unchecked(h, k);
    Ok(UnitMatrix::from_fn(h.order(), |r, c| {
        if g.get(r, c).re > 0 {
            UnitEntry::One
        } else {
            UnitEntry::MinusOne
        }
    }))
}

/// Summary of every relation between two matrices of the same order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairReport {
    pub unbiased: bool,
    pub weakly_unbiased: bool,
    pub mod_homogeneous: bool,
    pub special_factor: Option<GaussInt>,
    /// Counts of `|entry|²` over `H·K*`.
    pub norm_histogram: BTreeMap<i64, usize>,
    /// Counts of `|entry|` over `H·Kᵗ`; real pairs only.
    pub abs_histogram: Option<BTreeMap<i64, usize>>,
}

pub fn pair_report(h: &UnitMatrix, k: &UnitMatrix) -> Result<PairReport> {
    check_hadamard_pair(h, k)?;
    let g = gram_unchecked(h, k);
    let mut norm_histogram = BTreeMap::new();
    for e in g.entries() {
        *norm_histogram.entry(e.norm()).or_insert(0) += 1;
    }
    let unbiased = entries_have_norm(&g, h.order() as i64);
    let real = h.is_real() && k.is_real();
    Ok(PairReport {
        unbiased,
        weakly_unbiased: real && is_weak_gram(&g),
        mod_homogeneous: real && are_modularly_homogeneous(h, k)?,
        special_factor: if unbiased {
            special_factor(h, k)?.map(|s| s.factor)
        } else {
            None
        },
        norm_histogram,
        abs_histogram: real.then(|| real_abs_histogram(&g)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gram;
    use crate::hadamard::sylvester;
    use crate::test_support::*;

    fn pair(id: &str) -> (UnitMatrix, UnitMatrix) {
        match id {
            "ex4" => (mat(&["11", "1-"]), mat(&["1i", "i1"])),
            "t4" => (corpus_matrix("t4"), corpus_matrix("t5")),
            _ => (
                corpus_matrix(&format!("{id}_h")),
                corpus_matrix(&format!("{id}_k")),
            ),
        }
    }

    fn class(a: i64, b: i64) -> GaussianClass {
        GaussianClass::new(a, b).unwrap()
    }

    /// Brute-force oracle: every `(a, b)` in `1..=m` with `a ≤ b`.
    fn two_squares_oracle(m: u64) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for a in 1..=m as i64 {
            for b in a..=m as i64 {
                if (a * a + b * b) as u64 == m {
                    out.push((a, b));
                }
            }
        }
        out
    }

    #[test]
    fn decompositions() {
        let d = decompose_two_squares(10);
        assert_eq!(
            d.pairs,
            vec![SquarePair {
                a: 1,
                b: 3,
                odd_odd: true
            }]
        );
        assert_eq!(
            decompose_two_squares(18).pairs,
            vec![SquarePair {
                a: 3,
                b: 3,
                odd_odd: true
            }]
        );
        assert!(decompose_two_squares(6).is_empty());
        let fifty: Vec<_> = decompose_two_squares(50)
            .pairs
            .iter()
            .map(|p| (p.a, p.b))
            .collect();
        assert_eq!(fifty, vec![(1, 7), (5, 5)]);
        assert_eq!(
            decompose_two_squares(20).pairs,
            vec![SquarePair {
                a: 2,
                b: 4,
                odd_odd: false
            }]
        );
        for m in 1..=300 {
            let got: Vec<_> = decompose_two_squares(m)
                .pairs
                .iter()
                .map(|p| (p.a, p.b))
                .collect();
            assert_eq!(got, two_squares_oracle(m), "m = {m}");
        }
    }

    #[test]
    fn class_membership() {
        let c = class(3, 1);
        assert_eq!((c.a(), c.b()), (1, 3));
        assert_eq!(c.members().len(), 8);
        assert!(c.members().iter().all(|g| g.norm() == 10 && c.contains(*g)));
        assert!(c.contains(GaussInt::new(-3, 1)));
        assert!(!c.contains(GaussInt::new(3, 3)));
        assert_eq!(class(2, 2).members().len(), 4);
        assert!(GaussianClass::new(0, 3).is_none());
    }

    #[test]
    fn unbiased_pairs() {
        for id in ["ex4", "t1", "t2", "t4"] {
            let (h, k) = pair(id);
            assert!(are_unbiased(&h, &k).unwrap(), "{id}");
        }
        let (h, _) = pair("ex4");
        assert!(!are_unbiased(&h, &h).unwrap());
        assert_eq!(
            are_unbiased(&h, &mat(&["11", "11"])),
            Err(Error::NotHadamard)
        );
        assert!(matches!(
            are_unbiased(&h, &mat(&["1"])),
            Err(Error::OrderMismatch { .. })
        ));
    }

    #[test]
    fn class_of_gram_entries() {
        let (h, k) = pair("t1");
        assert!(gram_in_class(&h, &k, class(1, 3)).unwrap());
        let (h, k) = pair("t2");
        assert!(gram_in_class(&h, &k, class(3, 3)).unwrap());
        let (h, k) = pair("ex4");
        assert!(gram_in_class(&h, &k, class(1, 1)).unwrap());
        assert!(!gram_in_class(&h, &h, class(1, 1)).unwrap());
    }

    #[test]
    fn weak_unbiasedness() {
        let (h, k) = pair("t3");
        assert!(are_weakly_unbiased(&h, &k).unwrap());
        let (h, k) = pair("t4");
        assert!(are_weakly_unbiased(&h, &k).unwrap());
        assert!(!are_weakly_unbiased(&h, &h).unwrap());
        let (h, k) = pair("ex4");
        assert_eq!(are_weakly_unbiased(&h, &k), Err(Error::NotReal));
    }

    #[test]
    fn modular_homogeneity() {
        let (h, k) = pair("t3");
        assert!(!are_modularly_homogeneous(&h, &k).unwrap());
        let s = sylvester(2).unwrap();
        assert!(are_modularly_homogeneous(&s, &s).unwrap());
        assert!(are_modularly_homogeneous(&s, &s.negate()).unwrap());
        assert_eq!(
            are_modularly_homogeneous(&mat(&["1i", "i1"]), &mat(&["11", "1-"])),
            Err(Error::NotReal)
        );
    }

    #[test]
    fn special_factors() {
        let (h, k) = pair("ex4");
        let s = special_factor(&h, &k).unwrap().unwrap();
        assert_eq!(s.factor, GaussInt::new(1, 1));
        assert_eq!(s.quotient, mat(&["jj", "1-"]));
        let (h, k) = pair("t2");
        let s = special_factor(&h, &k).unwrap().unwrap();
        assert_eq!(s.factor, GaussInt::new(3, 3));
        assert!(is_complex_hadamard(&s.quotient));
        assert_eq!(
            gram(&h, &k).unwrap(),
            s.quotient.to_int_matrix().scale(s.factor)
        );
        let (h, k) = pair("t1");
        assert_eq!(special_factor(&h, &k).unwrap(), None);
        assert_eq!(special_factor(&h, &h), Err(Error::NotUnbiased));
    }

    #[test]
    fn special_factor_candidates_cover_both_orientations() {
        let c = special_factor_candidates(10);
        assert_eq!(c.len(), 8);
        assert_eq!(c[0], GaussInt::new(1, 3));
        assert_eq!(c[4], GaussInt::new(3, 1));
        assert_eq!(special_factor_candidates(18).len(), 4);
        assert!(special_factor_candidates(6).is_empty());
    }

    #[test]
    fn histograms() {
        let (h, k) = pair("t3");
        let hist = abs_value_histogram(&h, &k).unwrap();
        assert!(hist[&2] > hist[&6]);
        // regression constants, computed by direct evaluation of H·Kᵗ
        assert_eq!(hist, BTreeMap::from([(2, 108), (6, 36)]));
        let (h, k) = pair("t4");
        assert_eq!(
            abs_value_histogram(&h, &k).unwrap(),
            BTreeMap::from([(6, 1296)])
        );
        let s = sylvester(1).unwrap();
        assert_eq!(
            abs_value_histogram(&s, &s).unwrap(),
            BTreeMap::from([(0, 2), (2, 2)])
        );
        assert_eq!(
            abs_value_histogram(&mat(&["i"]), &mat(&["1"])),
            Err(Error::NotReal)
        );
    }

    #[test]
    fn reports() {
        let (h, k) = pair("t4");
        let r = pair_report(&h, &k).unwrap();
        assert!(r.unbiased && r.weakly_unbiased);
        assert_eq!(r.abs_histogram, Some(BTreeMap::from([(6, 1296)])));
        assert_eq!(r.norm_histogram, BTreeMap::from([(36, 1296)]));
        let (h, k) = pair("t2");
        let r = pair_report(&h, &k).unwrap();
        assert_eq!(r.special_factor, Some(GaussInt::new(3, 3)));
        assert!(r.abs_histogram.is_none() && !r.weakly_unbiased);
        for id in ["ex4", "t1", "t2", "t3", "t4", "t6"] {
            let (h, k) = pair(id);
            let r = pair_report(&h, &k).unwrap();
            if r.unbiased {
                assert_eq!(
                    r.norm_histogram.keys().copied().collect::<Vec<_>>(),
                    vec![h.order() as i64]
                );
                if let Some(abs) = r.abs_histogram {
                    let keys: Vec<_> = abs.keys().copied().collect();
                    assert_eq!(keys.len(), 1);
                    assert_eq!(keys[0] * keys[0], h.order() as i64);
                }
            }
        }
    }

    #[test]
    fn unbiased_real_gram_is_scaled_hadamard() {
        let (h, k) = pair("t4");
        let a = unbiased_sign_matrix(&h, &k).unwrap();
        assert!(is_real_hadamard(&a));
        assert_eq!(
            gram(&h, &k).unwrap(),
            a.to_int_matrix().scale(GaussInt::real(6))
        );
        let (h, k) = pair("t3");
        assert_eq!(unbiased_sign_matrix(&h, &k), Err(Error::NotUnbiased));
    }
}
