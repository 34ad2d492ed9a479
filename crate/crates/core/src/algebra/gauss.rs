use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A Gaussian integer `re + i·im`.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
pub struct GaussInt {
    pub re: i64,
    pub im: i64,
}

impl GaussInt {
    pub const ZERO: GaussInt = GaussInt::new(0, 0);
    pub const ONE: GaussInt = GaussInt::new(1, 0);
    pub const I: GaussInt = GaussInt::new(0, 1);

    pub const fn new(re: i64, im: i64) -> Self {
        GaussInt { re, im }
    }

    pub const fn real(re: i64) -> Self {
        GaussInt { re, im: 0 }
    }

    pub const fn conj(self) -> Self {
        GaussInt::new(self.re, -self.im)
    }

    /// Squared modulus `re² + im²`.
    pub const fn norm(self) -> i64 {
        self.re * self.re + self.im * self.im
    }

    pub const fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn scale(self, k: i64) -> Self {
        GaussInt::new(self.re * k, self.im * k)
    }

    /// Exact quotient `self / divisor`, or `None` when it is not a Gaussian integer.
    pub fn div_exact(self, divisor: GaussInt) -> Option<GaussInt> {
        let d = divisor.norm();
        if d == 0 {
            return None;
        }
        let num = self * divisor.conj();
        if num.re % d == 0 && num.im % d == 0 {
            Some(GaussInt::new(num.re / d, num.im / d))
        } else {
            None
        }
    }

    /// `{|re|, |im|}` as an ordered pair `(min, max)`.
    pub fn abs_parts(self) -> (i64, i64) {
        let (a, b) = (self.re.abs(), self.im.abs());
        (a.min(b), a.max(b))
    }
}

impl From<i64> for GaussInt {
    fn from(re: i64) -> Self {
        GaussInt::real(re)
    }
}

impl Add for GaussInt {
    type Output = GaussInt;
    fn add(self, rhs: GaussInt) -> GaussInt {
        GaussInt::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl AddAssign for GaussInt {
    fn add_assign(&mut self, rhs: GaussInt) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl Sub for GaussInt {
    type Output = GaussInt;
    fn sub(self, rhs: GaussInt) -> GaussInt {
        GaussInt::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt::new(-self.re, -self.im)
    }
}

impl Mul for GaussInt {
    type Output = GaussInt;
    fn mul(self, rhs: GaussInt) -> GaussInt {
        GaussInt::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl Sum for GaussInt {
    fn sum<I: Iterator<Item = GaussInt>>(iter: I) -> GaussInt {
        iter.fold(GaussInt::ZERO, |acc, g| acc + g)
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = |f: &mut fmt::Formatter<'_>, v: i64| match v.abs() {
            1 => write!(f, "i"),
            k => write!(f, "{k}i"),
        };
        match (self.re, self.im) {
            (re, 0) => write!(f, "{re}"),
            (0, im) => {
                if im < 0 {
                    write!(f, "-")?;
                }
                imag(f, im)
            }
            (re, im) => {
                write!(f, "{re}{}", if im < 0 { "-" } else { "+" })?;
                imag(f, im)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_is_product_with_conjugate() {
        let g = GaussInt::new(3, -7);
        let p = g * g.conj();
        assert_eq!(p, GaussInt::real(g.norm()));
    }

    #[test]
    fn exact_division() {
        let g = GaussInt::new(1, -1);
        assert_eq!(g.div_exact(GaussInt::new(1, 1)), Some(GaussInt::new(0, -1)));
        assert_eq!(GaussInt::new(1, 0).div_exact(GaussInt::new(1, 1)), None);
        assert_eq!(GaussInt::ONE.div_exact(GaussInt::ZERO), None);
    }

    #[test]
    fn display() {
        assert_eq!(GaussInt::new(1, -1).to_string(), "1-i");
        assert_eq!(GaussInt::new(3, 3).to_string(), "3+3i");
        assert_eq!(GaussInt::new(0, -1).to_string(), "-i");
        assert_eq!(GaussInt::new(-2, 0).to_string(), "-2");
        assert_eq!(GaussInt::new(0, 5).to_string(), "5i");
    }
}
