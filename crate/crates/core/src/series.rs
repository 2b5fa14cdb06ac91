//! Truncated generating series and the exp/log change of variables.
//!
//! `Ψ` sends `X = (1, X_1, X_2, …)` to the coefficients `Y` of
//! `exp(Σ_{r≥1} X_r ζ^r)`; `Φ` is its inverse. Both are computed through the
//! derivative recursions
//!
//! ```text
//! r Y_r = Σ_{s=1}^{r} s X_s Y_{r-s}
//! r X_r = r Y_r − Σ_{s=1}^{r-1} (r−s) Y_s X_{r-s}
//! ```
//!
//! which only ever divide by the integers `r`. The truncated exponential and
//! logarithm compositions in [`oracle`] compute the same maps by a different
//! route and are used for cross-checks only.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::qlaurent::{paren_q, RatFunc};
use crate::ring::{QAlgebra, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("constant term must be 1 for this transform")]
    ConstantTermNotOne,
    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
}

/// Coefficients `c_0, …, c_T` of a series truncated after `ζ^T`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesVec<C> {
    coeffs: Vec<C>,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl<C: Ring> SeriesVec<C> {
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least its constant term");
        SeriesVec { coeffs }
    }

    /// `1 + 0ζ + … + 0ζ^T`.
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![C::zero(); order + 1];
        coeffs[0] = C::one();
        SeriesVec { coeffs }
    }

    /// A series with unit constant term followed by `tail` (`tail[0]` is the
    /// coefficient of ζ).
    pub fn with_unit_constant(tail: Vec<C>) -> Self {
        let mut coeffs = Vec::with_capacity(tail.len() + 1);
        coeffs.push(C::one());
        coeffs.extend(tail);
        SeriesVec { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn get(&self, r: usize) -> &C {
        &self.coeffs[r]
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> SeriesVec<D> {
        SeriesVec {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        Ok(SeriesVec {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let t = self.order();
        let coeffs = (0..=t)
            .map(|n| {
                (0..=n).fold(C::zero(), |acc, k| {
                    if self.coeffs[k].is_zero() || other.coeffs[n - k].is_zero() {
                        acc
                    } else {
                        acc + self.coeffs[k].clone() * other.coeffs[n - k].clone()
                    }
                })
            })
            .collect();
        Ok(SeriesVec { coeffs })
    }

    fn check_order(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }
}

impl<C: QAlgebra> SeriesVec<C> {
    /// `f(cζ)`: multiplies the coefficient of `ζ^r` by `c^r`.
    pub fn subs_scaled(&self, c: &RatFunc) -> Self {
        let mut p = RatFunc::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(a.scale_q(&p));
            p = &p * c;
        }
        SeriesVec { coeffs }
    }
}

/// `Y = Ψ(X)`, the coefficients of `exp(Σ_{r≥1} X_r ζ^r)`.
pub fn psi_transform<C: Ring>(x: &SeriesVec<C>) -> Result<SeriesVec<C>, SeriesError> {
    if !x.coeffs[0].is_one() {
        return Err(SeriesError::ConstantTermNotOne);
    }
    let t = x.order();
    let mut y: Vec<C> = Vec::with_capacity(t + 1);
    y.push(C::one());
    for r in 1..=t {
        let mut acc = C::zero();
        for s in 1..=r {
            if x.coeffs[s].is_zero() || y[r - s].is_zero() {
                continue;
            }
            acc = acc + (x.coeffs[s].clone() * y[r - s].clone()).scale(&rat(s as i64, 1));
        }
        y.push(acc.scale(&rat(1, r as i64)));
    }
    Ok(SeriesVec { coeffs: y })
}

/// `X = Φ(Y)`, the inverse of [`psi_transform`]: `Σ_{r≥1} X_r ζ^r = log(Σ Y_s ζ^s)`.
/// The returned constant term is 1 by convention.
pub fn phi_transform<C: Ring>(y: &SeriesVec<C>) -> Result<SeriesVec<C>, SeriesError> {
    if !y.coeffs[0].is_one() {
        return Err(SeriesError::ConstantTermNotOne);
    }
    let t = y.order();
    let mut x: Vec<C> = Vec::with_capacity(t + 1);
    x.push(C::one());
    for r in 1..=t {
        let mut acc = y.coeffs[r].scale(&rat(r as i64, 1));
        for s in 1..r {
            if y.coeffs[s].is_zero() || x[r - s].is_zero() {
                continue;
            }
            acc = acc - (y.coeffs[s].clone() * x[r - s].clone()).scale(&rat((r - s) as i64, 1));
        }
        x.push(acc.scale(&rat(1, r as i64)));
    }
    Ok(SeriesVec { coeffs: x })
}

/// The skew derivation `D_x f = (f(xζ) − f(ζ)) / ((x − 1) ζ)`, acting by
/// `ζ^n ↦ (n)_x ζ^{n−1}`. At `x = 1` this is the ordinary derivative. The
/// result has order `T − 1` (order 0 input gives the zero constant).
pub fn skew_derive<C: QAlgebra>(f: &SeriesVec<C>, base: &RatFunc) -> SeriesVec<C> {
    let t = f.order();
    if t == 0 {
        return SeriesVec {
            coeffs: vec![C::zero()],
        };
    }
    SeriesVec {
        coeffs: (1..=t)
            .map(|n| f.coeffs[n].scale_q(&paren_q(n as u32, base)))
            .collect(),
    }
}

/// Truncated exp/log composition, independent of the recursions above.
pub mod oracle {
    use super::*;

    /// `exp(Σ_{r≥1} X_r ζ^r)` by summing powers of the argument series.
    pub fn exp_composition<C: Ring>(x: &SeriesVec<C>) -> SeriesVec<C> {
        let t = x.order();
        let mut arg = x.clone();
        arg.coeffs[0] = C::zero();
        let mut out = SeriesVec::one(t);
        let mut power = SeriesVec::one(t);
        let mut fact = BigInt::from(1);
        for m in 1..=t {
            power = power.mul(&arg).expect("same order");
            fact *= m;
            let inv = BigRational::new(BigInt::from(1), fact.clone());
            let term = power.map(|c| c.scale(&inv));
            out = out.add(&term).expect("same order");
        }
        out
    }

    /// `log(Σ Y_s ζ^s)` with `Y_0 = 1`, via `log(1 + U) = Σ (−1)^{m+1} U^m / m`.
    /// The constant term of the result is set to 1 to match [`phi_transform`].
    pub fn log_composition<C: Ring>(y: &SeriesVec<C>) -> SeriesVec<C> {
        let t = y.order();
        let mut u = y.clone();
        u.coeffs[0] = C::zero();
        let mut out = SeriesVec {
            coeffs: vec![C::zero(); t + 1],
        };
        let mut power = SeriesVec::one(t);
        for m in 1..=t {
            power = power.mul(&u).expect("same order");
            let sign = if m % 2 == 1 { 1 } else { -1 };
            let term = power.map(|c| c.scale(&rat(sign, m as i64)));
            out = out.add(&term).expect("same order");
        }
        out.coeffs[0] = C::one();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlaurent::LaurentPoly;

    fn r(n: i64, d: i64) -> BigRational {
        rat(n, d)
    }

    fn rs(v: &[(i64, i64)]) -> SeriesVec<BigRational> {
        SeriesVec::new(v.iter().map(|&(n, d)| r(n, d)).collect())
    }

    #[test]
    fn psi_of_linear_is_exponential() {
        let y = psi_transform(&rs(&[(1, 1), (1, 1), (0, 1), (0, 1), (0, 1)])).unwrap();
        assert_eq!(y, rs(&[(1, 1), (1, 1), (1, 2), (1, 6), (1, 24)]));
    }

    #[test]
    fn psi_of_trivial_is_trivial() {
        let one = SeriesVec::<BigRational>::one(5);
        assert_eq!(psi_transform(&one).unwrap(), one);
    }

    #[test]
    fn psi_second_coefficient() {
        // X = (1, a, b): Y_2 = b + a^2/2, with a = 3, b = 5
        let y = psi_transform(&rs(&[(1, 1), (3, 1), (5, 1)])).unwrap();
        assert_eq!(y.get(2), &r(19, 2));
    }

    #[test]
    fn phi_of_exponential_is_linear() {
        let x = phi_transform(&rs(&[(1, 1), (2, 1), (2, 1), (4, 3)])).unwrap();
        assert_eq!(x, rs(&[(1, 1), (2, 1), (0, 1), (0, 1)]));
    }

    #[test]
    fn phi_even_series() {
        // Y = 1 + c ζ^2 with c = 3: log gives X_2 = c, X_3 = 0, X_4 = -c^2/2
        let x = phi_transform(&rs(&[(1, 1), (0, 1), (3, 1), (0, 1), (0, 1)])).unwrap();
        assert_eq!(x.get(2), &r(3, 1));
        assert_eq!(x.get(3), &r(0, 1));
        assert_eq!(x.get(4), &r(-9, 2));
        // and the log oracle agrees
        assert_eq!(oracle::log_composition(&rs(&[(1, 1), (0, 1), (3, 1), (0, 1), (0, 1)])), x);
    }

    #[test]
    fn constant_term_is_checked() {
        let bad = rs(&[(2, 1), (1, 1)]);
        assert_eq!(psi_transform(&bad), Err(SeriesError::ConstantTermNotOne));
        assert_eq!(phi_transform(&bad), Err(SeriesError::ConstantTermNotOne));
    }

    #[test]
    fn mismatched_orders_rejected() {
        let a = SeriesVec::<BigRational>::one(2);
        let b = SeriesVec::<BigRational>::one(3);
        assert_eq!(a.mul(&b), Err(SeriesError::OrderMismatch(2, 3)));
    }

    #[test]
    fn skew_derivative_of_monomials() {
        let x = RatFunc::q_pow(-2);
        for n in 0..5usize {
            let mut c = vec![RatFunc::zero(); 6];
            c[n] = RatFunc::one();
            let d = skew_derive(&SeriesVec::new(c), &x);
            for (k, v) in d.coeffs().iter().enumerate() {
                if n >= 1 && k == n - 1 {
                    assert_eq!(v, &paren_q(n as u32, &x));
                } else {
                    assert!(v.is_zero());
                }
            }
        }
    }

    #[test]
    fn skew_derivative_is_linear() {
        let x = RatFunc::q();
        let f = SeriesVec::new(vec![RatFunc::one(), RatFunc::q(), RatFunc::from_int(3), RatFunc::q_pow(-1)]);
        let g = SeriesVec::new(vec![RatFunc::from_int(5), RatFunc::zero(), RatFunc::q_pow(2), RatFunc::one()]);
        let lhs = skew_derive(&f.add(&g).unwrap(), &x);
        let rhs = skew_derive(&f, &x).add(&skew_derive(&g, &x)).unwrap();
        assert_eq!(lhs, rhs);
        let c = RatFunc::from_laurent(&LaurentPoly::from_int_coeffs(0, &[1, 1]));
        let scaled = skew_derive(&SeriesVec::new(f.coeffs().iter().map(|a| a * &c).collect()), &x);
        assert_eq!(
            scaled,
            SeriesVec::new(skew_derive(&f, &x).coeffs().iter().map(|a| a * &c).collect())
        );
    }

    #[test]
    fn substitution_scales_by_powers() {
        let f = SeriesVec::new(vec![RatFunc::one(), RatFunc::one(), RatFunc::one()]);
        let g = f.subs_scaled(&RatFunc::q_pow(-2));
        assert_eq!(g.coeffs(), &[RatFunc::one(), RatFunc::q_pow(-2), RatFunc::q_pow(-4)]);
    }
}
