//! Evaluation at primitive roots of unity, exactly.
//!
//! An element of Q(ε), ε a primitive ℓ-th root of unity, is kept as a
//! residue of degree < φ(ℓ) modulo the ℓ-th cyclotomic polynomial Φ_ℓ.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::dense::ZPoly;
use super::{LaurentPoly, QError, RatFunc};

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub(crate) fn cyclotomic_zpoly(m: u64) -> ZPoly {
    assert!(m >= 1);
    static CACHE: OnceLock<Mutex<HashMap<u64, ZPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    let mut p = ZPoly::x_pow_minus_one(m as usize);
    for d in 1..m {
        if m % d == 0 {
            p = p
                .div_exact(&cyclotomic_zpoly(d))
                .expect("Φ_d divides x^m - 1 for d | m");
        }
    }
    cache.lock().unwrap().insert(m, p.clone());
    p
}

/// The m-th cyclotomic polynomial Φ_m(q).
pub fn cyclotomic(m: u64) -> LaurentPoly {
    LaurentPoly::from_zpoly(&BigRational::one(), 0, &cyclotomic_zpoly(m))
}

/// Cyclotomic factors `(m, multiplicity)` of a Laurent polynomial, ignoring
/// powers of `q` and constants. Only indices with φ(m) ≤ degree can occur, and
/// φ(m) ≥ sqrt(m/2), which bounds the search.
pub fn cyclotomic_factors(p: &LaurentPoly) -> Vec<(u64, u32)> {
    let (_, _, z) = p.to_zpoly();
    cyclotomic_factors_z(&z)
}

pub(crate) fn cyclotomic_factors_z(z: &ZPoly) -> Vec<(u64, u32)> {
    let mut rest = z.clone();
    let mut out = Vec::new();
    let Some(deg) = rest.degree() else {
        return out;
    };
    let bound = 2 * (deg as u64) * (deg as u64) + 2;
    for m in 1..=bound {
        if rest.degree().unwrap_or(0) == 0 {
            break;
        }
        if euler_phi(m) as usize > rest.degree().unwrap() {
            continue;
        }
        let phi = cyclotomic_zpoly(m);
        let mut mult = 0;
        while let Some(next) = rest.div_exact(&phi) {
            rest = next;
            mult += 1;
        }
        if mult > 0 {
            out.push((m, mult));
        }
    }
    out
}

/// An element of Q[q]/(Φ_ℓ), i.e. a value f(ε) at a primitive ℓ-th root of unity.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CycloElement {
    order: u64,
    /// coefficients of 1, ε, ε², …; length < φ(ℓ), no trailing zeros
    #[serde(serialize_with = "ser_residue")]
    residue: Vec<BigRational>,
}

fn ser_residue<S: serde::Serializer>(r: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(r.len()))?;
    for c in r {
        seq.serialize_element(&c.to_string())?;
    }
    seq.end()
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Reduces a dense polynomial (ascending coefficients) modulo the monic Φ_ℓ.
fn reduce_mod(mut v: Vec<BigRational>, phi: &ZPoly) -> Vec<BigRational> {
    let dp = phi.degree().unwrap();
    while v.len() > dp {
        let top = v.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let shift = v.len() - dp;
        for (j, c) in phi.0.iter().take(dp).enumerate() {
            v[shift + j] -= &top * BigRational::from_integer(c.clone());
        }
    }
    trim(v)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Division with remainder over Q.
fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if rem.len() <= db {
        return (Vec::new(), trim(rem));
    }
    let mut quo = vec![BigRational::zero(); rem.len() - db];
    let lead = b.last().unwrap().clone();
    for k in (0..quo.len()).rev() {
        let c = &rem[k + db] / &lead;
        if !c.is_zero() {
            for (j, y) in b.iter().enumerate() {
                rem[k + j] -= &c * y;
            }
        }
        quo[k] = c;
    }
    (trim(quo), trim(rem))
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim((0..n)
        .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
        .collect())
}

impl CycloElement {
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn residue(&self) -> &[BigRational] {
        &self.residue
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_empty()
    }

    pub fn from_rational(order: u64, c: BigRational) -> Self {
        CycloElement {
            order,
            residue: trim(vec![c]),
        }
    }

    /// Reduces a Laurent polynomial using ε^ℓ = 1, then modulo Φ_ℓ.
    pub fn from_laurent(p: &LaurentPoly, order: u64) -> Self {
        assert!(order >= 1, "root of unity order must be positive");
        let l = order as i64;
        let mut v = vec![BigRational::zero(); order as usize];
        for (e, c) in p.terms() {
            v[e.rem_euclid(l) as usize] += c;
        }
        CycloElement {
            order,
            residue: reduce_mod(v, &cyclotomic_zpoly(order)),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order);
        let n = self.residue.len().max(other.residue.len());
        let z = BigRational::zero();
        CycloElement {
            order: self.order,
            residue: trim(
                (0..n)
                    .map(|i| self.residue.get(i).unwrap_or(&z) + other.residue.get(i).unwrap_or(&z))
                    .collect(),
            ),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order);
        CycloElement {
            order: self.order,
            residue: reduce_mod(
                poly_mul(&self.residue, &other.residue),
                &cyclotomic_zpoly(self.order),
            ),
        }
    }

    /// Multiplicative inverse in the field Q(ε).
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let phi: Vec<BigRational> = cyclotomic_zpoly(self.order)
            .0
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        // extended Euclid: track s with s*self ≡ r (mod Φ)
        let (mut r0, mut r1) = (phi, self.residue.clone());
        let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) =
            (Vec::new(), vec![BigRational::one()]);
        while r1.len() > 1 {
            let (quo, rem) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&quo, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant since Φ is irreducible
        let c = r1[0].recip();
        let s: Vec<BigRational> = s1.iter().map(|x| x * &c).collect();
        Some(CycloElement {
            order: self.order,
            residue: reduce_mod(s, &cyclotomic_zpoly(self.order)),
        })
    }
}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.residue.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match k {
                0 => format!("{}", c),
                1 => format!("{}*e", c),
                _ => format!("{}*e^{}", c, k),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl fmt::Debug for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloElement[ℓ={}]({})", self.order, self)
    }
}

/// True iff `f` has no pole at a primitive ℓ-th root of unity, i.e. Φ_ℓ does not
/// divide the canonical denominator.
pub fn is_regular_at(f: &RatFunc, order: u64) -> bool {
    f.den_zpoly().div_exact(&cyclotomic_zpoly(order)).is_none()
}

/// `f(ε)` for ε a primitive ℓ-th root of unity.
pub fn eval_at_root_of_unity(f: &RatFunc, order: u64) -> Result<CycloElement, QError> {
    if order == 0 {
        return Err(QError::BadOrder);
    }
    if !is_regular_at(f, order) {
        return Err(QError::PoleAtRootOfUnity {
            order,
            denominator: f.denom().to_string(),
        });
    }
    let num = CycloElement::from_laurent(&f.numer(), order);
    let den = CycloElement::from_laurent(&f.denom(), order);
    let inv = den.inv().expect("denominator is nonzero at a regular point");
    Ok(num.mul(&inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlaurent::q_int;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic(1), LaurentPoly::from_int_coeffs(0, &[-1, 1]));
        assert_eq!(cyclotomic(3), LaurentPoly::from_int_coeffs(0, &[1, 1, 1]));
        assert_eq!(cyclotomic(12), LaurentPoly::from_int_coeffs(0, &[1, 0, -1, 0, 1]));
        assert_eq!(euler_phi(24), 8);
    }

    #[test]
    fn q_two_at_cube_root_is_minus_one() {
        let v = eval_at_root_of_unity(&RatFunc::from_laurent(&q_int(2, 1)), 3).unwrap();
        assert_eq!(v, CycloElement::from_rational(3, BigRational::from_integer((-1).into())));
    }

    #[test]
    fn q_ell_vanishes_at_odd_ell() {
        for l in [3u64, 5, 7, 9, 15] {
            let v = eval_at_root_of_unity(&RatFunc::from_laurent(&q_int(l as i64, 1)), l).unwrap();
            assert!(v.is_zero(), "[{l}]_q at ε_{l}");
        }
    }

    #[test]
    fn order_one_substitutes_one() {
        let f = RatFunc::from_laurent(&LaurentPoly::from_int_coeffs(-2, &[3, 0, 5, 1]));
        let v = eval_at_root_of_unity(&f, 1).unwrap();
        assert_eq!(v, CycloElement::from_rational(1, BigRational::from_integer(9.into())));
    }

    #[test]
    fn pole_detection() {
        let f = RatFunc::new(&LaurentPoly::one(), &cyclotomic(5)).unwrap();
        assert!(!is_regular_at(&f, 5));
        assert!(is_regular_at(&f, 3));
        assert!(matches!(
            eval_at_root_of_unity(&f, 5),
            Err(QError::PoleAtRootOfUnity { order: 5, .. })
        ));
    }

    #[test]
    fn inverse_in_cyclotomic_field() {
        let f = CycloElement::from_laurent(&LaurentPoly::from_int_coeffs(0, &[2, 1]), 7);
        let g = f.inv().unwrap();
        assert_eq!(f.mul(&g), CycloElement::from_rational(7, BigRational::one()));
    }

    #[test]
    fn factor_detection() {
        // q^4 - 1 = Φ1 Φ2 Φ4, times Φ3 squared
        let p = &(LaurentPoly::q_pow(4) - LaurentPoly::one()) * &(&cyclotomic(3) * &cyclotomic(3));
        assert_eq!(cyclotomic_factors(&p), vec![(1, 1), (2, 1), (3, 2), (4, 1)]);
        let non = LaurentPoly::from_int_coeffs(0, &[2, 1]);
        assert!(cyclotomic_factors(&non).is_empty());
    }
}
