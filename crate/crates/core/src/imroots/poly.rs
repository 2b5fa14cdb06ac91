use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use serde::ser::{Serialize, SerializeMap, SerializeSeq, Serializer};

use crate::qlaurent::{QError, RatFunc};
use crate::ring::{QAlgebra, Ring};

/// A monomial `Π x_s^{e_s}`, stored as `(s, e_s)` pairs with increasing `s`
/// and positive `e_s`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(s: u32) -> Self {
        Monomial(vec![(s, 1)])
    }

    /// From `(symbol, exponent)` pairs in any order; zero exponents dropped.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut m: BTreeMap<u32, u32> = BTreeMap::new();
        for (s, e) in pairs {
            *m.entry(s).or_default() += e;
        }
        Monomial(m.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.0
    }

    /// δ-degree `Σ s·e_s`.
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&(s, e)| u64::from(s) * u64::from(e)).sum()
    }

    pub fn exponent(&self, s: u32) -> u32 {
        self.0.iter().find(|p| p.0 == s).map_or(0, |p| p.1)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }
}

/// Commutative polynomials over `C` in symbols `x_1, x_2, …` where `x_s`
/// has δ-degree `s`. No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly<C> {
    terms: BTreeMap<Monomial, C>,
}

/// The model of imaginary root vectors: polynomials in the `Ẽ_s` over Q(q).
pub type ImPoly = Poly<RatFunc>;

/// Classical counterpart in the symbols `ẽ_s` over Q.
pub type ClassicalPoly = Poly<BigRational>;

impl<C: Ring> Poly<C> {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    /// The symbol `x_s`.
    pub fn var(s: u32) -> Self {
        Self::term(Monomial::var(s), C::one())
    }

    pub fn term(m: Monomial, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// The common δ-degree of all terms, or `None` if the polynomial is
    /// zero or not homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn try_map_coeffs<D: Ring, E>(&self, f: impl Fn(&C) -> Result<D, E>) -> Result<Poly<D>, E> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn scale_by(&self, c: &C) -> Self {
        self.map_coeffs(|a| a.clone() * c.clone())
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl ImPoly {
    /// Applies `q ↦ q^{-1}` to every coefficient.
    pub fn bar(&self) -> Self {
        self.map_coeffs(RatFunc::bar)
    }

    /// Coefficientwise `q = 1`.
    pub fn specialize_q1(&self) -> Result<ClassicalPoly, QError> {
        self.try_map_coeffs(RatFunc::specialize_q1)
    }

    /// True if every coefficient lies in `Z[q, q^{-1}]`.
    pub fn has_integral_coeffs(&self) -> bool {
        self.terms
            .values()
            .all(|c| c.as_laurent().is_some_and(|l| l.has_integer_coeffs()))
    }

    pub fn coeffs(&self) -> impl Iterator<Item = &RatFunc> {
        self.terms.values()
    }
}

impl<'a, C: Ring> Add<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a, C: Ring> Sub<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a, C: Ring> Mul<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        let mut acc: BTreeMap<Monomial, C> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let c = ca.clone() * cb.clone();
                match acc.get_mut(&m) {
                    Some(v) => *v = v.clone() + c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Poly { terms: acc }
    }
}

impl<C: Ring> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        self.map_coeffs(|c| -c.clone())
    }
}

impl<C: Ring> Add for Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: Poly<C>) -> Poly<C> {
        &self + &rhs
    }
}

impl<C: Ring> Sub for Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: Poly<C>) -> Poly<C> {
        &self - &rhs
    }
}

impl<C: Ring> Mul for Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: Poly<C>) -> Poly<C> {
        &self * &rhs
    }
}

impl<C: Ring> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -&self
    }
}

impl<C: Ring> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// Writes `(c) e1^2 e3 + …`, with `e_s` for the generator of δ-degree `s`.
impl<C: Ring + fmt::Display> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            if m.pairs().is_empty() {
                write!(f, "({c})")?;
                continue;
            }
            if !c.is_one() {
                write!(f, "({c}) ")?;
            }
            let vars: Vec<String> = m
                .pairs()
                .iter()
                .map(|&(s, e)| if e == 1 { format!("e{s}") } else { format!("e{s}^{e}") })
                .collect();
            f.write_str(&vars.join(" "))?;
        }
        Ok(())
    }
}

impl<C: Ring> Ring for Poly<C> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_rational(c: &BigRational) -> Self {
        Poly::constant(C::from_rational(c))
    }
    fn scale(&self, c: &BigRational) -> Self {
        self.map_coeffs(|a| a.scale(c))
    }
}

impl QAlgebra for ImPoly {
    fn scale_q(&self, c: &RatFunc) -> Self {
        self.map_coeffs(|a| a * c)
    }
}

/// Coefficients that know their own JSON form.
pub trait JsonCoeff {
    fn to_json(&self) -> serde_json::Value;
}

impl JsonCoeff for RatFunc {
    fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("RatFunc serializes")
    }
}

impl JsonCoeff for BigRational {
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }
}

struct Exps<'a>(&'a Monomial);

impl Serialize for Exps<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0 .0.len()))?;
        for (sym, e) in &self.0 .0 {
            m.serialize_entry(&sym.to_string(), e)?;
        }
        m.end()
    }
}

struct TermRepr<'a, C>(&'a Monomial, &'a C);

impl<C: JsonCoeff> Serialize for TermRepr<'_, C> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("exps", &Exps(self.0))?;
        m.serialize_entry("coeff", &self.1.to_json())?;
        m.end()
    }
}

struct TermsRepr<'a, C>(&'a BTreeMap<Monomial, C>);

impl<C: JsonCoeff> Serialize for TermsRepr<'_, C> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for (m, c) in self.0 {
            seq.serialize_element(&TermRepr(m, c))?;
        }
        seq.end()
    }
}

impl<C: JsonCoeff> Serialize for Poly<C> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(1))?;
        m.serialize_entry("terms", &TermsRepr(&self.terms))?;
        m.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn monomial_product_merges() {
        let a = Monomial::from_pairs([(1, 2), (3, 1)]);
        let b = Monomial::from_pairs([(2, 1), (3, 2)]);
        assert_eq!(a.mul(&b), Monomial::from_pairs([(1, 2), (2, 1), (3, 3)]));
        assert_eq!(a.mul(&b).degree(), 2 + 2 + 9);
    }

    #[test]
    fn ring_laws_on_small_inputs() {
        let x = ClassicalPoly::var(1);
        let y = ClassicalPoly::var(2);
        let s = &x + &y;
        let sq = &s * &s;
        let expect = &(&(&x * &x) + &(&(&x * &y).scale(&r(2, 1)))) + &(&y * &y);
        assert_eq!(sq, expect);
        assert!((&sq - &sq).is_zero());
        assert_eq!(sq.homogeneous_degree(), None);
        assert_eq!((&x * &y).homogeneous_degree(), Some(3));
    }

    #[test]
    fn json_shape() {
        let p = ImPoly::term(Monomial::from_pairs([(1, 2)]), RatFunc::q());
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(v["terms"][0]["exps"], serde_json::json!({"1": 2}));
        assert!(v["terms"][0]["coeff"]["num"].is_object());
        let c = ClassicalPoly::term(Monomial::var(3), r(-1, 2));
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v, serde_json::json!({"terms": [{"exps": {"3": 1}, "coeff": "-1/2"}]}));
    }
}
