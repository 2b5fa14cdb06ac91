//! Dense univariate polynomials over the integers.
//!
//! This is the workhorse behind [`RatFunc`](super::RatFunc) canonicalization:
//! content extraction, exact division and primitive GCD. Coefficients are
//! stored in ascending degree order with no trailing zeros.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct ZPoly(pub(crate) Vec<BigInt>);

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly(Vec::new())
    }

    pub fn one() -> Self {
        ZPoly(vec![BigInt::one()])
    }

    pub fn from_coeffs(mut c: Vec<BigInt>) -> Self {
        while c.last().map_or(false, |x| x.is_zero()) {
            c.pop();
        }
        ZPoly(c)
    }

    /// x^k - 1
    pub fn x_pow_minus_one(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[0] = -BigInt::one();
        c[k] += BigInt::one();
        ZPoly::from_coeffs(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> &BigInt {
        self.0.last().expect("leading coefficient of zero polynomial")
    }

    /// Number of leading zero coefficients at the low end (the q-adic valuation).
    pub fn low_zeros(&self) -> usize {
        self.0.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn shift_down(&self, k: usize) -> Self {
        ZPoly(self.0[k..].to_vec())
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.0.iter().cloned());
        ZPoly(c)
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.0 {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Splits off the content so that the remaining part is primitive with a
    /// positive leading coefficient. Returns `(content, primitive)`; the content
    /// carries the sign.
    pub fn primitive_split(&self) -> (BigInt, ZPoly) {
        if self.is_zero() {
            return (BigInt::zero(), ZPoly::zero());
        }
        let mut g = self.content();
        if self.lead().is_negative() {
            g = -g;
        }
        if g.is_one() {
            return (g, self.clone());
        }
        (g.clone(), ZPoly(self.0.iter().map(|c| c / &g).collect()))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return ZPoly::zero();
        }
        ZPoly(self.0.iter().map(|c| c * k).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i);
            let b = other.0.get(i);
            c.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        ZPoly::from_coeffs(c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return ZPoly::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut c = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        ZPoly::from_coeffs(c)
    }

    /// Exact division. Returns `None` if `other` does not divide `self` in Z[x].
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        assert!(!other.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(ZPoly::zero());
        }
        if other.is_one() {
            return Some(self.clone());
        }
        let dn = self.0.len();
        let dd = other.0.len();
        if dn < dd {
            return None;
        }
        let mut rem = self.0.clone();
        let mut quo = vec![BigInt::zero(); dn - dd + 1];
        let lead = other.lead();
        for k in (0..quo.len()).rev() {
            let top = &rem[k + dd - 1];
            if top.is_zero() {
                continue;
            }
            let (qk, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, b) in other.0.iter().enumerate() {
                rem[k + j] -= &qk * b;
            }
            quo[k] = qk;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(ZPoly::from_coeffs(quo))
    }

    /// Pseudo-remainder of `self` by `other`.
    fn pseudo_rem(&self, other: &Self) -> Self {
        let dd = other.0.len();
        let mut rem = self.0.clone();
        let lead = other.lead().clone();
        while rem.len() >= dd {
            let top = rem.last().unwrap().clone();
            if top.is_zero() {
                rem.pop();
                continue;
            }
            let shift = rem.len() - dd;
            for c in rem.iter_mut() {
                *c *= &lead;
            }
            for (j, b) in other.0.iter().enumerate() {
                rem[shift + j] -= &top * b;
            }
            rem.pop();
        }
        ZPoly::from_coeffs(rem)
    }

    /// Primitive GCD (content 1, positive leading coefficient). Both inputs are
    /// expected to be nonzero; a zero input returns the primitive part of the other.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_split().1;
        }
        if other.is_zero() {
            return self.primitive_split().1;
        }
        if self.degree() == Some(0) || other.degree() == Some(0) {
            return ZPoly::one();
        }
        if self == other {
            return self.primitive_split().1;
        }
        let (mut a, mut b) = if self.0.len() >= other.0.len() {
            (self.primitive_split().1, other.primitive_split().1)
        } else {
            (other.primitive_split().1, self.primitive_split().1)
        };
        loop {
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                return b;
            }
            if r.degree() == Some(0) {
                return ZPoly::one();
            }
            a = b;
            b = r.primitive_split().1;
        }
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.0.iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> ZPoly {
        ZPoly::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (x+1)(x-2) and (x+1)(x+3)
        let a = p(&[-2, -1, 1]);
        let b = p(&[3, 4, 1]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
    }

    #[test]
    fn gcd_coprime_is_one() {
        assert_eq!(p(&[1, 1]).gcd(&p(&[-1, 1])), ZPoly::one());
    }

    #[test]
    fn exact_division() {
        let a = p(&[-1, 0, 1]);
        assert_eq!(a.div_exact(&p(&[-1, 1])), Some(p(&[1, 1])));
        assert_eq!(a.div_exact(&p(&[2, 1])), None);
    }

    #[test]
    fn primitive_split_sign() {
        let (c, q) = p(&[4, -6]).primitive_split();
        assert_eq!(c, BigInt::from(-2));
        assert_eq!(q, p(&[-2, 3]));
    }
}
