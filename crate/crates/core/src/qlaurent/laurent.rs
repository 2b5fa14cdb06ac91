use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::dense::ZPoly;

/// An exact Laurent polynomial in `q` with rational coefficients.
///
/// Stored sparsely; no zero coefficient is ever kept.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(BigRational::one(), 0)
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        LaurentPoly::q_pow(1)
    }

    pub fn q_pow(e: i64) -> Self {
        LaurentPoly::monomial(BigRational::one(), e)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        LaurentPoly::monomial(BigRational::from_integer(c.into()), 0)
    }

    pub fn rational(c: BigRational) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    pub fn monomial(c: BigRational, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeated exponents.
    pub fn from_terms<I: IntoIterator<Item = (i64, BigRational)>>(it: I) -> Self {
        let mut out = LaurentPoly::zero();
        for (e, c) in it {
            out.add_term(e, c);
        }
        out
    }

    /// Integer coefficients, lowest exponent first.
    pub fn from_int_coeffs(low: i64, coeffs: &[i64]) -> Self {
        LaurentPoly::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| (low + k as i64, BigRational::from_integer(c.into()))),
        )
    }

    fn add_term(&mut self, e: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map_or(false, |c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> BigRational {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Returns `(c, e)` if this is a single term `c q^e`.
    pub fn as_monomial(&self) -> Option<(&BigRational, i64)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((c, *e))
        } else {
            None
        }
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Substitutes `q -> q^k` for a nonzero integer `k`.
    pub fn subs_q_pow(&self, k: i64) -> Self {
        assert!(k != 0, "substitution q -> q^0 is not invertible");
        LaurentPoly::from_terms(self.terms.iter().map(|(e, c)| (e * k, c.clone())))
    }

    /// The bar involution `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        self.subs_q_pow(-1)
    }

    /// Nonnegative integer power. Negative powers are only defined for
    /// single-term polynomials.
    pub fn pow(&self, n: i64) -> Option<Self> {
        if n < 0 {
            let (c, e) = self.as_monomial()?;
            let inv = c.recip();
            return LaurentPoly::monomial(inv, -e).pow(-n);
        }
        let mut out = LaurentPoly::one();
        let mut base = self.clone();
        let mut n = n as u64;
        while n > 0 {
            if n & 1 == 1 {
                out = &out * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        Some(out)
    }

    /// Exact value at `q = 1`.
    pub fn eval_at_one(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |acc, c| acc + c)
    }

    /// Exact quotient, if `divisor` divides `self` in Q[q, q^{-1}].
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let (ds, dlow, dz) = divisor.to_zpoly();
        let (ns, nlow, nz) = self.to_zpoly();
        let qz = nz.div_exact(&dz)?;
        Some(LaurentPoly::from_zpoly(&(ns / ds), nlow - dlow, &qz))
    }

    /// Writes `self = scale * q^low * p(q)` with `p` a primitive integer polynomial
    /// with positive leading coefficient and nonzero constant term.
    pub(crate) fn to_zpoly(&self) -> (BigRational, i64, ZPoly) {
        let Some(low) = self.min_exp() else {
            return (BigRational::zero(), 0, ZPoly::zero());
        };
        let high = self.max_exp().unwrap();
        let lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()));
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (e, c) in &self.terms {
            coeffs[(e - low) as usize] = (c * BigRational::from_integer(lcm.clone())).to_integer();
        }
        let (content, prim) = ZPoly::from_coeffs(coeffs).primitive_split();
        (BigRational::new(content, lcm), low, prim)
    }

    pub(crate) fn from_zpoly(scale: &BigRational, low: i64, p: &ZPoly) -> Self {
        LaurentPoly::from_terms(
            p.0.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (low + k as i64, BigRational::from_integer(c.clone()) * scale)),
        )
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // highest exponent first, the way these are usually written
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let show_coeff = !a.is_one() || *e == 0;
            if show_coeff {
                if a.is_integer() {
                    write!(f, "{}", a)?;
                } else {
                    write!(f, "({})", a)?;
                }
            }
            match *e {
                0 => {}
                1 => write!(f, "{}q", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}q^{}", if show_coeff { "*" } else { "" }, fmt_exp(*e))?,
            }
        }
        Ok(())
    }
}

fn fmt_exp(e: i64) -> String {
    if e < 0 {
        format!("({})", e)
    } else {
        e.to_string()
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self)
    }
}

#[derive(Serialize, Deserialize)]
struct LaurentRepr {
    terms: Vec<(i64, String, String)>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LaurentRepr {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, c.numer().to_string(), c.denom().to_string()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = LaurentRepr::deserialize(d)?;
        let mut out = LaurentPoly::zero();
        for (e, n, dn) in repr.terms {
            let n: BigInt = n.parse().map_err(D::Error::custom)?;
            let dn: BigInt = dn.parse().map_err(D::Error::custom)?;
            if dn.is_zero() {
                return Err(D::Error::custom("zero denominator in coefficient"));
            }
            out.add_term(e, BigRational::new(n, dn));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn difference_of_squares() {
        let a = LaurentPoly::q() + LaurentPoly::q_pow(-1);
        let b = LaurentPoly::q() - LaurentPoly::q_pow(-1);
        assert_eq!(&a * &b, LaurentPoly::q_pow(2) - LaurentPoly::q_pow(-2));
    }

    #[test]
    fn no_zero_coefficients_kept() {
        let a = LaurentPoly::q() - LaurentPoly::q();
        assert!(a.is_zero());
        assert_eq!(a.num_terms(), 0);
    }

    #[test]
    fn exact_division_by_laurent() {
        let num = LaurentPoly::q_pow(3) - LaurentPoly::q_pow(-3);
        let den = LaurentPoly::q() - LaurentPoly::q_pow(-1);
        let expect = LaurentPoly::q_pow(2) + LaurentPoly::one() + LaurentPoly::q_pow(-2);
        assert_eq!(num.div_exact(&den), Some(expect));
        assert_eq!(den.div_exact(&num), None);
    }

    #[test]
    fn negative_power_of_monomial_only() {
        let q2 = LaurentPoly::monomial(BigRational::from_integer(2.into()), 1);
        assert_eq!(
            q2.pow(-2).unwrap(),
            LaurentPoly::monomial(BigRational::new(1.into(), 4.into()), -2)
        );
        assert!((LaurentPoly::q() + LaurentPoly::one()).pow(-1).is_none());
    }

    #[test]
    fn json_shape() {
        let p = LaurentPoly::from_int_coeffs(-1, &[1, 0, 2]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"terms":[[-1,"1","1"],[1,"2","1"]]}"#);
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn display_reads_naturally() {
        let p = LaurentPoly::from_int_coeffs(-2, &[1, 0, -1, 0, 3]);
        assert_eq!(p.to_string(), "3*q^2 - 1 + q^(-2)");
    }
}
