//! Unbiased complex and real bases built from Hadamard pairs.
//!
//! Bases are kept unnormalized: integer vectors plus the common squared norm
//! of every vector. A normalized inner product `⟨u, v⟩ / √(s_u·s_v)` is then
//! compared against its allowed values by exact integer identities.

use crate::algebra::{GaussInt, IntMatrix, UnitEntry, UnitMatrix};
use crate::error::{Error, Result};
use crate::hadamard::is_real_hadamard;
use crate::relations::{are_unbiased, gram_in_class, GaussianClass};

/// Rows of `vectors`, each of squared norm `scale_sq`, pairwise orthogonal when valid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledBasis {
    pub vectors: IntMatrix,
    pub scale_sq: i64,
}

impl ScaledBasis {
    pub fn new(vectors: IntMatrix, scale_sq: i64) -> Self {
        ScaledBasis { vectors, scale_sq }
    }

    /// Rows of a Hadamard matrix, squared norm equal to the order.
    pub fn from_rows(m: &UnitMatrix) -> Self {
        ScaledBasis::new(m.to_int_matrix(), m.order() as i64)
    }

    pub fn standard(dimension: usize) -> Self {
        ScaledBasis::new(IntMatrix::scalar(dimension, GaussInt::ONE), 1)
    }

    /// `{(1+i)·e_k}` with squared norm 2.
    pub fn rotated_standard(dimension: usize) -> Self {
        ScaledBasis::new(IntMatrix::scalar(dimension, GaussInt::new(1, 1)), 2)
    }

    pub fn dimension(&self) -> usize {
        self.vectors.order()
    }

    pub fn is_real(&self) -> bool {
        self.vectors.is_real()
    }

    /// Pairwise orthogonal rows, each of squared norm `scale_sq`.
    pub fn is_orthonormal(&self) -> bool {
        let g = self.products(self);
        (0..self.dimension()).all(|r| {
            (0..self.dimension()).all(|c| {
                g.get(r, c)
                    == if r == c {
                        GaussInt::real(self.scale_sq)
                    } else {
                        GaussInt::ZERO
                    }
            })
        })
    }

    /// `⟨u_r, v_c⟩ = Σ u_r[k]·conj(v_c[k])` for rows of `self` and `other`.
    pub fn products(&self, other: &ScaledBasis) -> IntMatrix {
        self.vectors.mul(&other.vectors.conj_transpose())
    }
}

/// Exact square root of a perfect square.
fn exact_sqrt(x: i64) -> Option<i64> {
    let r = (x.max(0) as u64).isqrt() as i64;
    (r * r == x).then_some(r)
}

/// The allowed cross products `{±(1+i)/(2n), ±(1−i)/(2n)}` in dimension `2n²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InnerProductClass {
    n: i64,
}

impl InnerProductClass {
    /// `dimension` must be `2n²` with `n` odd.
    pub fn for_dimension(dimension: usize) -> Result<Self> {
        let d = dimension as i64;
        match exact_sqrt(d / 2) {
            Some(n) if d % 2 == 0 && n % 2 == 1 => Ok(InnerProductClass { n }),
            _ => Err(Error::InvalidDimension(dimension)),
        }
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    /// Whether `product / √(s_u·s_v)` lies in the class.
    pub fn contains(&self, product: GaussInt, s_u: i64, s_v: i64) -> bool {
        let Some(q) = exact_sqrt(s_u * s_v) else {
            return false;
        };
        let lhs = product.scale(2 * self.n);
        lhs.re.abs() == q && lhs.im.abs() == q
    }
}

fn check_dimensions(bases: &[ScaledBasis]) -> Result<usize> {
    let Some(first) = bases.first() else {
        return Ok(0);
    };
    let d = first.dimension();
    if let Some(b) = bases.iter().find(|b| b.dimension() != d) {
        return Err(Error::DimensionMismatch(d, b.dimension()));
    }
    Ok(d)
}

fn all_cross_pairs(
    bases: &[ScaledBasis],
    ok: impl Fn(&ScaledBasis, &ScaledBasis, GaussInt) -> bool,
) -> bool {
    bases.iter().enumerate().all(|(i, u)| {
        bases[i + 1..]
            .iter()
            .all(|v| u.products(v).entries().iter().all(|&p| ok(u, v, p)))
    })
}

/// Orthonormal bases, pairwise unbiased with cross products in `±(1±i)/(2n)`.
pub fn verify_mucb(bases: &[ScaledBasis]) -> Result<bool> {
    let d = check_dimensions(bases)?;
    if bases.is_empty() {
        return Ok(true);
    }
    let class = InnerProductClass::for_dimension(d)?;
    Ok(bases.iter().all(ScaledBasis::is_orthonormal)
        && all_cross_pairs(bases, |u, v, p| class.contains(p, u.scale_sq, v.scale_sq)))
}

/// Orthonormal real bases with every cross product exactly `±1/√d`.
pub fn verify_murb(bases: &[ScaledBasis]) -> Result<bool> {
    if bases.iter().any(|b| !b.is_real()) {
        return Err(Error::ComplexEntry);
    }
    let d = check_dimensions(bases)? as i64;
    Ok(bases.iter().all(ScaledBasis::is_orthonormal)
        && all_cross_pairs(bases, |u, v, p| d * p.re * p.re == u.scale_sq * v.scale_sq))
}

/// Rows of `H`, rows of `K`, and `{(1+i)·e_k}`, for a special pair of order `2n²`
/// whose gram entries are all of the form `±n ± in`.
pub fn bases_from_pair_complex(h: &UnitMatrix, k: &UnitMatrix) -> Result<[ScaledBasis; 3]> {
    let class = InnerProductClass::for_dimension(h.order())?;
    let n = class.n();
    if !are_unbiased(h, k)? {
        return Err(Error::NotUnbiased);
    }
    let g_class = GaussianClass::new(n, n).expect("n is positive");
    if !gram_in_class(h, k, g_class)? {
        return Err(Error::NotSpecial(GaussInt::new(n, n).to_string()));
    }
    Ok([
        ScaledBasis::from_rows(h),
        ScaledBasis::from_rows(k),
        ScaledBasis::rotated_standard(h.order()),
    ])
}

/// Standard basis, rows of `H`, rows of `K`, for an unbiased real pair.
pub fn bases_from_pair_real(h: &UnitMatrix, k: &UnitMatrix) -> Result<[ScaledBasis; 3]> {
    if !h.is_real() || !k.is_real() {
        return Err(Error::NotReal);
    }
    if !is_real_hadamard(h) || !is_real_hadamard(k) {
        return Err(Error::NotHadamard);
    }
    if !are_unbiased(h, k)? {
        return Err(Error::NotUnbiased);
    }
    Ok([
        ScaledBasis::standard(h.order()),
        ScaledBasis::from_rows(h),
        ScaledBasis::from_rows(k),
    ])
}

/// Recovers the unbiased complex Hadamard pair `(2n/(1+i))·B₂B₁*`,
/// `(2n/(1+i))·B₃B₁*` from three mutually unbiased complex bases.
pub fn extract_much(bases: &[ScaledBasis; 3]) -> Result<(UnitMatrix, UnitMatrix)> {
    if !verify_mucb(bases)? {
        return Err(Error::NotUnbiased);
    }
    let n = InnerProductClass::for_dimension(bases[0].dimension())?.n();
    let to_units = |b: &ScaledBasis| -> Result<UnitMatrix> {
        let q = exact_sqrt(b.scale_sq * bases[0].scale_sq).ok_or(Error::NotUnbiased)?;
        let p = b.products(&bases[0]);
        let divisor = GaussInt::new(1, 1).scale(q);
        let units = p
            .entries()
            .iter()
            .map(|&x| {
                x.scale(2 * n)
                    .div_exact(divisor)
                    .and_then(UnitEntry::from_gauss)
            })
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::NotUnbiased)?;
        let d = p.order();
        Ok(UnitMatrix::from_fn(d, |r, c| units[r * d + c]))
    };
    Ok((to_units(&bases[1])?, to_units(&bases[2])?))
}

/// Cross products of two bases as a gram matrix, for reporting.
pub fn cross_products(u: &ScaledBasis, v: &ScaledBasis) -> IntMatrix {
    u.products(v)
}
