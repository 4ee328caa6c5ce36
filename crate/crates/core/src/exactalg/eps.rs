//! Rational functions in one parameter `eps`, with the eps-adic valuation.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::intpoly::IntPoly;
use super::scalar::{ExactDiv, Field, GcdDomain, Rational, Scalar};

/// Element of Q(eps) stored as a reduced fraction of integer polynomials.
///
/// The denominator has positive leading coefficient and is coprime to the
/// numerator; integer denominators are kept as constant polynomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EpsRational {
    num: IntPoly,
    den: IntPoly,
}

impl EpsRational {
    pub fn new(num: IntPoly, den: IntPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator in Q(eps)");
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.is_one() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            let (mut n, mut d) = (num.div_exact(&g), den.div_exact(&g));
            if d.is_neg_associate() {
                n = n.neg_ref();
                d = d.neg_ref();
            }
            (n, d)
        };
        EpsRational { num, den }
    }

    pub fn from_poly(p: IntPoly) -> Self {
        EpsRational {
            num: p,
            den: IntPoly::one(),
        }
    }

    /// The parameter itself.
    pub fn eps() -> Self {
        Self::from_poly(IntPoly::eps_pow(1))
    }

    pub fn eps_pow(k: usize) -> Self {
        Self::from_poly(IntPoly::eps_pow(k))
    }

    pub fn from_rational(r: &Rational) -> Self {
        Self::new(
            IntPoly::constant(r.numer().clone()),
            IntPoly::constant(r.denom().clone()),
        )
    }

    pub fn numer(&self) -> &IntPoly {
        &self.num
    }

    pub fn denom(&self) -> &IntPoly {
        &self.den
    }

    /// eps-adic valuation `ord(num) - ord(den)`; `None` for zero.
    pub fn val(&self) -> Option<i64> {
        Some(self.num.ord()? as i64 - self.den.ord().unwrap() as i64)
    }

    /// Multiply by `eps^k` (k may be negative).
    pub fn mul_eps_pow(&self, k: i64) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        if k > 0 {
            let k = k as usize;
            // cancel against eps-powers in the denominator first
            let d0 = self.den.ord().unwrap().min(k);
            Self::new(self.num.shift_up(k - d0), self.den.shift_down(d0))
        } else {
            let k = (-k) as usize;
            let n0 = self.num.ord().unwrap().min(k);
            Self::new(self.num.shift_down(n0), self.den.shift_up(k - n0))
        }
    }

    /// Residue at eps = 0 of an element of valuation >= 0.
    pub fn eval_at_zero(&self) -> Option<Rational> {
        match self.val() {
            None => Some(Rational::zero()),
            Some(v) if v > 0 => Some(Rational::zero()),
            Some(0) => {
                let a = &self.num.coeffs()[self.num.ord().unwrap()];
                let b = &self.den.coeffs()[self.den.ord().unwrap()];
                Some(Rational::new(a.clone(), b.clone()))
            }
            Some(_) => None,
        }
    }

    /// Evaluate at a rational point; `None` where the denominator vanishes.
    pub fn eval(&self, r: &Rational) -> Option<Rational> {
        let d = self.den.eval(r);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(r) / d)
    }
}

impl Zero for EpsRational {
    fn zero() -> Self {
        EpsRational {
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for EpsRational {
    fn one() -> Self {
        EpsRational {
            num: IntPoly::one(),
            den: IntPoly::one(),
        }
    }
}

crate::impl_ops_via_scalar!(EpsRational);

impl Scalar for EpsRational {
    fn add_ref(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Self::new(self.num.add_ref(&rhs.num), self.den.clone());
        }
        Self::new(
            self.num.mul_ref(&rhs.den).add_ref(&rhs.num.mul_ref(&self.den)),
            self.den.mul_ref(&rhs.den),
        )
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(self.num.mul_ref(&rhs.num));
        }
        Self::new(self.num.mul_ref(&rhs.num), self.den.mul_ref(&rhs.den))
    }
    fn neg_ref(&self) -> Self {
        EpsRational {
            num: self.num.neg_ref(),
            den: self.den.clone(),
        }
    }
    fn from_i64(v: i64) -> Self {
        Self::from_poly(IntPoly::from_i64(v))
    }
}

impl ExactDiv for EpsRational {
    fn div_exact(&self, rhs: &Self) -> Self {
        self.div(rhs)
    }
}

impl Field for EpsRational {
    type Integral = IntPoly;

    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverting zero in Q(eps)");
        Self::new(self.den.clone(), self.num.clone())
    }

    fn to_integral(coeffs: &[Self]) -> Vec<IntPoly> {
        let mut lcm = IntPoly::one();
        for c in coeffs {
            if !c.den.is_one() {
                let g = lcm.gcd(&c.den);
                lcm = lcm.mul_ref(&c.den.div_exact(&g));
            }
        }
        let scaled: Vec<IntPoly> = coeffs
            .iter()
            .map(|c| {
                if c.is_zero() {
                    IntPoly::zero()
                } else {
                    c.num.mul_ref(&lcm.div_exact(&c.den))
                }
            })
            .collect();
        let mut g = IntPoly::zero();
        for c in &scaled {
            g = g.gcd(c);
            if g.is_one() {
                return scaled;
            }
        }
        if g.is_zero() {
            return scaled;
        }
        scaled.into_iter().map(|c| c.div_exact(&g)).collect()
    }

    fn from_integral(c: &IntPoly) -> Self {
        Self::from_poly(c.clone())
    }
}

impl fmt::Display for EpsRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let simple = |p: &IntPoly| p.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1;
        let wrap = |p: &IntPoly| {
            if simple(p) {
                p.to_string()
            } else {
                format!("({p})")
            }
        };
        if self.den.is_one() {
            write!(f, "{}", wrap(&self.num))
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl fmt::Debug for EpsRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<i64> for EpsRational {
    fn from(v: i64) -> Self {
        Self::from_i64(v)
    }
}

/// `eps^a - eps^b`
pub fn eps_diff(a: usize, b: usize) -> EpsRational {
    EpsRational::eps_pow(a).sub_ref(&EpsRational::eps_pow(b))
}

impl EpsRational {
    /// The value as a rational number if it does not depend on eps.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.num.is_constant() && self.den.is_constant() {
            let n = self.num.coeffs().first().cloned().unwrap_or_else(BigInt::zero);
            Some(Rational::new(n, self.den.coeffs()[0].clone()))
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::rat;

    #[test]
    fn valuation_and_normalization() {
        let a = eps_diff(2, 4); // eps^2 - eps^4
        assert_eq!(a.val(), Some(2));
        let b = a.inv();
        assert_eq!(b.val(), Some(-2));
        assert!(a.mul_ref(&b).is_one());
        let c = EpsRational::new(IntPoly::eps_pow(3), IntPoly::eps_pow(1));
        assert_eq!(c, EpsRational::eps_pow(2));
    }

    #[test]
    fn residue_after_scaling() {
        // (eps - eps^2) * eps^-1 at eps = 0 is 1
        let c = eps_diff(1, 2).mul_eps_pow(-1);
        assert_eq!(c.eval_at_zero(), Some(rat(1, 1)));
        assert_eq!(eps_diff(1, 2).eval_at_zero(), Some(rat(0, 1)));
        assert_eq!(eps_diff(1, 2).inv().eval_at_zero(), None);
    }

    #[test]
    fn to_integral_is_primitive() {
        let v = vec![
            EpsRational::new(IntPoly::one(), IntPoly::eps_pow(1)),
            EpsRational::from_i64(2),
        ];
        let w = EpsRational::to_integral(&v);
        assert_eq!(w[0], IntPoly::one());
        assert_eq!(w[1], IntPoly::eps_pow(1).mul_ref(&IntPoly::from_i64(2)));
    }
}
