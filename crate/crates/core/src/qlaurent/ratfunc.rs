use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::dense::ZPoly;
use super::{LaurentPoly, QError};

/// An element of Q(q) in canonical form.
///
/// The value is `scale * q^shift * num(q) / den(q)` where `num` and `den` are
/// coprime primitive integer polynomials with positive leading coefficients
/// and nonzero constant terms. Two values are equal iff their canonical
/// fields are identical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    scale: BigRational,
    shift: i64,
    num: ZPoly,
    den: ZPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            scale: BigRational::zero(),
            shift: 0,
            num: ZPoly::one(),
            den: ZPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc::from_rational(BigRational::one())
    }

    pub fn q() -> Self {
        RatFunc::q_pow(1)
    }

    pub fn q_pow(e: i64) -> Self {
        RatFunc {
            scale: BigRational::one(),
            shift: e,
            num: ZPoly::one(),
            den: ZPoly::one(),
        }
    }

    pub fn from_int<T: Into<BigInt>>(c: T) -> Self {
        RatFunc::from_rational(BigRational::from_integer(c.into()))
    }

    pub fn from_rational(c: BigRational) -> Self {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            scale: c,
            shift: 0,
            num: ZPoly::one(),
            den: ZPoly::one(),
        }
    }

    pub fn from_laurent(p: &LaurentPoly) -> Self {
        let (scale, low, z) = p.to_zpoly();
        if scale.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            scale,
            shift: low,
            num: z,
            den: ZPoly::one(),
        }
    }

    /// `num / den`, reduced to canonical form.
    pub fn new(num: &LaurentPoly, den: &LaurentPoly) -> Result<Self, QError> {
        if den.is_zero() {
            return Err(QError::DivisionByZero);
        }
        RatFunc::from_laurent(num).checked_div(&RatFunc::from_laurent(den))
    }

    fn build(scale: BigRational, shift: i64, num: ZPoly, den: ZPoly) -> Self {
        if scale.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { scale, shift, num, den }
    }

    /// Canonicalizes `scale * q^shift * num / den` where `num`, `den` are
    /// arbitrary nonzero integer polynomials known to be coprime.
    fn normalize_coprime(mut scale: BigRational, mut shift: i64, num: ZPoly, den: ZPoly) -> Self {
        let nz = num.low_zeros();
        let dz = den.low_zeros();
        shift += nz as i64 - dz as i64;
        let (cn, num) = num.shift_down(nz).primitive_split();
        let (cd, den) = den.shift_down(dz).primitive_split();
        scale = scale * BigRational::new(cn, cd);
        RatFunc::build(scale, shift, num, den)
    }

    pub fn is_zero(&self) -> bool {
        self.scale.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.scale.is_one() && self.shift == 0 && self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is a unit of Z[q, q^{-1}] up to the rational scale,
    /// i.e. the value is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_laurent(&self) -> Option<LaurentPoly> {
        self.is_laurent().then(|| self.numer())
    }

    /// Returns the rational constant if this value does not depend on `q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        (self.shift == 0 && self.num.is_one() && self.den.is_one()).then(|| self.scale.clone())
    }

    /// Returns `(c, e)` when the value is `c q^e`.
    pub fn as_monomial(&self) -> Option<(BigRational, i64)> {
        (!self.is_zero() && self.num.is_one() && self.den.is_one())
            .then(|| (self.scale.clone(), self.shift))
    }

    /// Canonical numerator as a Laurent polynomial (carries the rational scale
    /// and the power of `q`).
    pub fn numer(&self) -> LaurentPoly {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly::from_zpoly(&self.scale, self.shift, &self.num)
    }

    /// Canonical denominator: primitive, positive leading coefficient, minimal
    /// exponent zero.
    pub fn denom(&self) -> LaurentPoly {
        LaurentPoly::from_zpoly(&BigRational::one(), 0, &self.den)
    }

    pub(crate) fn den_zpoly(&self) -> &ZPoly {
        &self.den
    }

    pub fn scale_rational(&self, k: &BigRational) -> Self {
        if k.is_zero() || self.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            scale: &self.scale * k,
            ..self.clone()
        }
    }

    pub fn mul_q_pow(&self, e: i64) -> Self {
        if self.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            shift: self.shift + e,
            ..self.clone()
        }
    }

    pub fn inv(&self) -> Result<Self, QError> {
        if self.is_zero() {
            return Err(QError::DivisionByZero);
        }
        Ok(RatFunc {
            scale: self.scale.recip(),
            shift: -self.shift,
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<Self, QError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, n: i64) -> Result<Self, QError> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut n = n.unsigned_abs();
        let mut out = RatFunc::one();
        let mut b = base;
        while n > 0 {
            if n & 1 == 1 {
                out = &out * &b;
            }
            n >>= 1;
            if n > 0 {
                b = &b * &b;
            }
        }
        Ok(out)
    }

    /// Substitutes `q -> q^k`, `k != 0`.
    pub fn subs_q_pow(&self, k: i64) -> Self {
        if self.is_zero() {
            return RatFunc::zero();
        }
        let n = RatFunc::from_laurent(&self.numer().subs_q_pow(k));
        let d = RatFunc::from_laurent(&self.denom().subs_q_pow(k));
        n.checked_div(&d).expect("substitution keeps the denominator nonzero")
    }

    /// The bar involution `q -> q^{-1}` applied to the whole function.
    pub fn bar(&self) -> Self {
        self.subs_q_pow(-1)
    }

    /// Exact value at `q = 1`.
    pub fn specialize_q1(&self) -> Result<BigRational, QError> {
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        let d1 = self.den.eval_at_one();
        if d1.is_zero() {
            let mut mult = 0;
            let mut d = self.den.clone();
            let phi1 = ZPoly::x_pow_minus_one(1);
            while let Some(next) = d.div_exact(&phi1) {
                mult += 1;
                d = next;
            }
            return Err(QError::PoleAtOne {
                denominator: self.denom().to_string(),
                multiplicity: mult,
            });
        }
        let n1 = self.num.eval_at_one();
        Ok(&self.scale * BigRational::new(n1, d1))
    }
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.shift.min(rhs.shift);
        let (a1, b1) = (self.scale.numer(), self.scale.denom());
        let (a2, b2) = (rhs.scale.numer(), rhs.scale.denom());
        let k1 = a1 * b2;
        let k2 = a2 * b1;
        let scale_den = BigRational::new(BigInt::one(), b1 * b2);
        if self.den == rhs.den {
            let t1 = self.num.shift_up((self.shift - e) as usize).scale(&k1);
            let t2 = rhs.num.shift_up((rhs.shift - e) as usize).scale(&k2);
            let n = t1.add(&t2);
            if n.is_zero() {
                return RatFunc::zero();
            }
            let g = n.gcd(&self.den);
            let n = n.div_exact(&g).unwrap();
            let d = self.den.div_exact(&g).unwrap();
            return RatFunc::normalize_coprime(scale_den, e, n, d);
        }
        let g = self.den.gcd(&rhs.den);
        let d1 = self.den.div_exact(&g).unwrap();
        let d2 = rhs.den.div_exact(&g).unwrap();
        let t1 = self.num.shift_up((self.shift - e) as usize).mul(&d2).scale(&k1);
        let t2 = rhs.num.shift_up((rhs.shift - e) as usize).mul(&d1).scale(&k2);
        let n = t1.add(&t2);
        if n.is_zero() {
            return RatFunc::zero();
        }
        let h = n.gcd(&g);
        let n = n.div_exact(&h).unwrap();
        let g = g.div_exact(&h).unwrap();
        let d = g.mul(&d1).mul(&d2);
        RatFunc::normalize_coprime(scale_den, e, n, d)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            scale: -self.scale.clone(),
            ..self.clone()
        }
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        let scale = &self.scale * &rhs.scale;
        let shift = self.shift + rhs.shift;
        if self.den.is_one() && rhs.den.is_one() {
            let (c, n) = self.num.mul(&rhs.num).primitive_split();
            return RatFunc::build(scale * BigRational::from_integer(c), shift, n, ZPoly::one());
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n = self
            .num
            .div_exact(&g1)
            .unwrap()
            .mul(&rhs.num.div_exact(&g2).unwrap());
        let d = self
            .den
            .div_exact(&g2)
            .unwrap()
            .mul(&rhs.den.div_exact(&g1).unwrap());
        // products of primitive polynomials stay primitive; only signs can move
        RatFunc::normalize_coprime(scale, shift, n, d)
    }
}

/// Panics on division by zero; use [`RatFunc::checked_div`] to handle it.
impl Div<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        RatFunc::from_laurent(&p)
    }
}

impl From<&LaurentPoly> for RatFunc {
    fn from(p: &LaurentPoly) -> Self {
        RatFunc::from_laurent(p)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.numer();
        if self.den.is_one() {
            return write!(f, "{}", n);
        }
        let d = self.denom();
        let wrap = |p: &LaurentPoly| {
            if p.num_terms() > 1 {
                format!("({})", p)
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&n), wrap(&d))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({})", self)
    }
}

#[derive(Serialize, Deserialize)]
struct RatFuncRepr {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RatFuncRepr {
            num: self.numer(),
            den: self.denom(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = RatFuncRepr::deserialize(d)?;
        RatFunc::new(&r.num, &r.den).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(low: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_int_coeffs(low, c)
    }

    #[test]
    fn common_factor_cancels() {
        let f = RatFunc::new(&lp(0, &[-1, 0, 1]), &lp(0, &[-1, 1])).unwrap();
        assert_eq!(f, RatFunc::from_laurent(&lp(0, &[1, 1])));
        assert!(f.is_laurent());
    }

    #[test]
    fn self_quotient_is_one() {
        let f = RatFunc::new(&lp(-2, &[3, 0, 1, 5]), &lp(1, &[2, 7])).unwrap();
        assert!((&f / &f).is_one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(RatFunc::zero().inv(), Err(QError::DivisionByZero));
        assert!(RatFunc::new(&lp(0, &[1]), &LaurentPoly::zero()).is_err());
    }

    #[test]
    fn canonical_denominator_shape() {
        // (2q) / (-4q^3 + 2q^2) = 1/(q - 2q^2) = -1/(2q^2 - q) ... denominator primitive, positive lead, min exp 0
        let f = RatFunc::new(&lp(1, &[2]), &lp(2, &[2, -4])).unwrap();
        let d = f.denom();
        assert_eq!(d.min_exp(), Some(0));
        assert!(d.coeff(d.max_exp().unwrap()) > BigRational::zero());
        assert_eq!(d, lp(0, &[-1, 2]));
        assert_eq!(f.numer(), LaurentPoly::monomial(BigRational::from_integer((-1).into()), -1));
    }

    #[test]
    fn addition_with_shared_denominator_factor() {
        // 1/(q^2-1) + 1/(q-1) = (q+2)/(q^2-1)
        let a = RatFunc::new(&lp(0, &[1]), &lp(0, &[-1, 0, 1])).unwrap();
        let b = RatFunc::new(&lp(0, &[1]), &lp(0, &[-1, 1])).unwrap();
        let expect = RatFunc::new(&lp(0, &[2, 1]), &lp(0, &[-1, 0, 1])).unwrap();
        assert_eq!(&a + &b, expect);
        // and cancellation down to a Laurent polynomial: q/(q-1) - 1/(q-1) = 1
        let c = RatFunc::new(&lp(1, &[1]), &lp(0, &[-1, 1])).unwrap();
        assert!((&c - &b).is_one());
    }

    #[test]
    fn pole_at_one_is_reported() {
        let f = RatFunc::new(&lp(0, &[1]), &lp(0, &[1, -2, 1])).unwrap();
        match f.specialize_q1() {
            Err(QError::PoleAtOne { multiplicity, .. }) => assert_eq!(multiplicity, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bar_involution() {
        let f = RatFunc::new(&lp(0, &[1, 2]), &lp(0, &[3, 0, 1])).unwrap();
        assert_eq!(f.bar().bar(), f);
        assert_eq!(RatFunc::q().bar(), RatFunc::q_pow(-1));
    }

    #[test]
    fn json_roundtrip() {
        let f = RatFunc::new(&lp(-1, &[1, 0, 1]), &lp(0, &[1, 1])).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        let back: RatFunc = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }
}
