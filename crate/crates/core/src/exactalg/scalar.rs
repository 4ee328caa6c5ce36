//! Coefficient traits shared by matrices, polynomials and the Gröbner engine.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number, always kept in lowest terms.
pub type Rational = BigRational;

/// Commutative ring element used as a coefficient.
///
/// Zero and one come from `num_traits`; the by-reference arithmetic is
/// suffixed `_ref` so it never collides with the `std::ops` traits.
pub trait Scalar:
    Clone + PartialEq + Zero + One + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_i64(v: i64) -> Self;
}

/// Exact division, used by fraction-free (Bareiss) elimination.
pub trait ExactDiv: Scalar {
    /// `self / rhs`, where the caller guarantees the quotient exists.
    fn div_exact(&self, rhs: &Self) -> Self;
}

/// Integral domain with gcds; the Gröbner engine works fraction-free over these.
pub trait GcdDomain: ExactDiv {
    /// A normalized gcd (positive leading part).
    fn gcd(&self, rhs: &Self) -> Self;
    /// True when the canonical associate of `self` is `-self`.
    fn is_neg_associate(&self) -> bool;
    /// Rough bit size, used to decide when to strip contents.
    fn size_bits(&self) -> u64;
}

/// Coefficient field: the public polynomial type uses these.
pub trait Field: ExactDiv {
    /// The integral domain whose fraction field this is.
    type Integral: GcdDomain;

    fn inv(&self) -> Self;
    fn div(&self, rhs: &Self) -> Self {
        self.mul_ref(&rhs.inv())
    }
    /// Scale `coeffs` by a common nonzero factor so all entries are integral
    /// and their gcd is one.
    fn to_integral(coeffs: &[Self]) -> Vec<Self::Integral>;
    fn from_integral(c: &Self::Integral) -> Self;
}

impl Scalar for BigInt {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

impl ExactDiv for BigInt {
    fn div_exact(&self, rhs: &Self) -> Self {
        debug_assert!((self % rhs).is_zero(), "inexact integer division");
        self / rhs
    }
}

impl GcdDomain for BigInt {
    fn gcd(&self, rhs: &Self) -> Self {
        Integer::gcd(self, rhs)
    }
    fn is_neg_associate(&self) -> bool {
        Signed::is_negative(self)
    }
    fn size_bits(&self) -> u64 {
        BigInt::bits(self)
    }
}

impl Scalar for Rational {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
}

impl ExactDiv for Rational {
    fn div_exact(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

impl Field for Rational {
    type Integral = BigInt;

    fn inv(&self) -> Self {
        self.recip()
    }

    fn to_integral(coeffs: &[Self]) -> Vec<BigInt> {
        let lcm = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let g = scaled
            .iter()
            .fold(BigInt::zero(), |acc, c| Integer::gcd(&acc, c));
        if g.is_zero() || g.is_one() {
            scaled
        } else {
            scaled.into_iter().map(|c| c / &g).collect()
        }
    }

    fn from_integral(c: &BigInt) -> Self {
        Rational::from_integer(c.clone())
    }
}

/// Implements the by-value `std::ops` arithmetic (needed for `Zero`/`One`)
/// on top of the `_ref` methods of [`Scalar`].
#[macro_export]
macro_rules! impl_ops_via_scalar {
    ($t:ty) => {
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                $crate::exactalg::Scalar::add_ref(&self, &rhs)
            }
        }
        impl std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                $crate::exactalg::Scalar::sub_ref(&self, &rhs)
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                $crate::exactalg::Scalar::mul_ref(&self, &rhs)
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::exactalg::Scalar::neg_ref(&self)
            }
        }
    };
}

/// Parse a rational written as `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        Some(Rational::new(p, q))
    } else {
        let p: BigInt = s.parse().ok()?;
        Some(Rational::from_integer(p))
    }
}

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn to_integral_clears_and_makes_primitive() {
        let v = vec![rat(1, 2), rat(-3, 4), int(0)];
        let w = Rational::to_integral(&v);
        assert_eq!(w, vec![BigInt::from(2), BigInt::from(-3), BigInt::from(0)]);
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("-3/6"), Some(rat(-1, 2)));
        assert_eq!(parse_rational(" 7 "), Some(int(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
