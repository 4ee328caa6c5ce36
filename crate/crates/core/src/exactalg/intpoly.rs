//! Univariate integer polynomials in the deformation parameter `eps`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::scalar::{ExactDiv, GcdDomain, Rational, Scalar};

/// Element of Z[eps]; coefficients stored from the constant term upwards,
/// with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `eps^k`
    pub fn eps_pow(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        IntPoly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Order of vanishing at eps = 0; `None` for zero.
    pub fn ord(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| Integer::gcd(&acc, c))
    }

    fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::default();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    fn div_scalar(&self, c: &BigInt) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a / c).collect(),
        }
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading().unwrap().is_negative() {
            c = -c;
        }
        self.div_scalar(&c)
    }

    /// Divide by `eps^k`; the caller guarantees divisibility.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(Zero::is_zero));
        IntPoly::new(self.coeffs[k.min(self.coeffs.len())..].to_vec())
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs: c }
    }

    pub fn eval(&self, r: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * r + Rational::from_integer(c.clone());
        }
        acc
    }

    /// Pseudo-remainder of `self` by `d` (`d` nonzero).
    fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("pseudo_rem by zero");
        let lc = d.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let top = r.last().unwrap().clone();
            for c in r.iter_mut() {
                *c *= &lc;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= &top * dc;
            }
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        IntPoly::new(r)
    }

    /// Exact quotient over Z; `None` if `d` does not divide `self`.
    pub fn checked_div(&self, d: &IntPoly) -> Option<IntPoly> {
        let dd = d.degree()?;
        if self.coeffs.is_empty() {
            return Some(IntPoly::default());
        }
        if d.is_constant() {
            let c = &d.coeffs[0];
            if self.coeffs.iter().all(|a| (a % c).is_zero()) {
                return Some(self.div_scalar(c));
            }
            return None;
        }
        let sd = self.degree().unwrap();
        if sd < dd {
            return None;
        }
        let lc = d.leading().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let (qk, rem) = top.div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= &qk * dc;
            }
            q[k] = qk;
        }
        if r.iter().all(Zero::is_zero) {
            Some(IntPoly::new(q))
        } else {
            None
        }
    }
}

impl Zero for IntPoly {
    fn zero() -> Self {
        IntPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for IntPoly {
    fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }
}

crate::impl_ops_via_scalar!(IntPoly);

impl Scalar for IntPoly {
    fn add_ref(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = BigInt::zero();
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) + rhs.coeffs.get(i).unwrap_or(&z))
            .collect();
        IntPoly::new(c)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = BigInt::zero();
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) - rhs.coeffs.get(i).unwrap_or(&z))
            .collect();
        IntPoly::new(c)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::default();
        }
        if rhs.is_constant() {
            return self.scale(&rhs.coeffs[0]);
        }
        if self.is_constant() {
            return rhs.scale(&self.coeffs[0]);
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPoly::new(c)
    }
    fn neg_ref(&self) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
    fn from_i64(v: i64) -> Self {
        IntPoly::constant(BigInt::from(v))
    }
}

impl ExactDiv for IntPoly {
    fn div_exact(&self, rhs: &Self) -> Self {
        self.checked_div(rhs)
            .unwrap_or_else(|| panic!("inexact division {self} / {rhs}"))
    }
}

impl GcdDomain for IntPoly {
    fn gcd(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.primitive_with_content();
        }
        if rhs.is_zero() {
            return self.primitive_with_content();
        }
        let cg = Integer::gcd(&self.content(), &rhs.content());
        if self.is_constant() || rhs.is_constant() {
            return IntPoly::constant(cg);
        }
        let (mut a, mut b) = (self.primitive(), rhs.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = if r.is_zero() { r } else { r.primitive() };
        }
        a.primitive().scale(&cg)
    }
    fn is_neg_associate(&self) -> bool {
        self.leading().is_some_and(Signed::is_negative)
    }
    fn size_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0) + self.coeffs.len() as u64
    }
}

impl IntPoly {
    fn primitive_with_content(&self) -> Self {
        if self.is_neg_associate() {
            self.neg_ref()
        } else {
            self.clone()
        }
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => {}
                (_, false) => write!(f, "{a}*")?,
            }
            match k {
                0 => {}
                1 => write!(f, "eps")?,
                _ => write!(f, "eps^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    #[test]
    fn gcd_of_products() {
        // (e - 1)(e + 2) and (e - 1)(2e + 3)
        let a = p(&[-1, 1]).mul_ref(&p(&[2, 1]));
        let b = p(&[-1, 1]).mul_ref(&p(&[3, 2]));
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        let c = a.scale(&BigInt::from(6));
        let d = b.scale(&BigInt::from(4));
        assert_eq!(c.gcd(&d), p(&[-2, 2]));
    }

    #[test]
    fn exact_division() {
        let a = p(&[0, 0, 1]).sub_ref(&p(&[0, 0, 0, 0, 1])); // e^2 - e^4
        let d = p(&[0, 0, 1]);
        assert_eq!(a.div_exact(&d), p(&[1, 0, -1]));
        assert!(p(&[1, 1]).checked_div(&p(&[0, 1])).is_none());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -1, 0, 3]).to_string(), "3*eps^3 - eps + 1");
        assert_eq!(p(&[]).to_string(), "0");
    }
}
