//! q-integers, q-factorials, Gaussian binomials and the `(n)_x` geometric sums.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::One;

use super::{LaurentPoly, QError, RatFunc};

/// `[s]_{q^d} = (q^{ds} - q^{-ds}) / (q^d - q^{-d})`, expanded.
///
/// For `s >= 0` this is `q^{d(s-1)} + q^{d(s-3)} + ... + q^{-d(s-1)}`;
/// negative `s` uses `[-s] = -[s]`.
pub fn q_int(s: i64, d: u32) -> LaurentPoly {
    assert!(d > 0, "q_int: d must be positive");
    let d = d as i64;
    if s < 0 {
        return -q_int(-s, d as u32);
    }
    LaurentPoly::from_terms((0..s).map(|k| (d * (s - 1 - 2 * k), BigRational::one())))
}

/// `[m]_{q^d}! = [1][2]...[m]`.
pub fn q_factorial(m: u32, d: u32) -> LaurentPoly {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), LaurentPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&(m, d)) {
        return v.clone();
    }
    let v = (1..=m as i64).fold(LaurentPoly::one(), |acc, s| &acc * &q_int(s, d));
    cache.lock().unwrap().insert((m, d), v.clone());
    v
}

/// Gaussian binomial `[m choose n]_{q^d}`, computed by exact division of
/// q-factorials.
pub fn q_binom(m: u32, n: u32, d: u32) -> Result<LaurentPoly, QError> {
    if n > m {
        return Err(QError::BinomialRange { m, n });
    }
    let num = q_factorial(m, d);
    let den = &q_factorial(m - n, d) * &q_factorial(n, d);
    Ok(num
        .div_exact(&den)
        .expect("q-factorial quotient is a Laurent polynomial"))
}

/// `(n)_x = 1 + x + ... + x^{n-1}` at `x = base`. For `n = 0` the sum is empty.
pub fn paren_q(n: u32, base: &RatFunc) -> RatFunc {
    let mut acc = RatFunc::zero();
    let mut p = RatFunc::one();
    for _ in 0..n {
        acc = &acc + &p;
        p = &p * base;
    }
    acc
}

/// `q^d - q^{-d}`, the ubiquitous denominator.
pub fn q_diff(d: u32) -> LaurentPoly {
    LaurentPoly::q_pow(d as i64) - LaurentPoly::q_pow(-(d as i64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(low: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_int_coeffs(low, c)
    }

    #[test]
    fn small_q_integers() {
        assert!(q_int(1, 1).is_one());
        assert_eq!(q_int(2, 1), lp(-1, &[1, 0, 1]));
        assert_eq!(q_int(-1, 1), LaurentPoly::constant(-1));
        assert!(q_int(0, 3).is_zero());
    }

    #[test]
    fn q_int_three_at_q_squared_by_division() {
        // oracle: divide q^6 - q^-6 by q^2 - q^-2
        let num = LaurentPoly::q_pow(6) - LaurentPoly::q_pow(-6);
        let expect = num.div_exact(&q_diff(2)).unwrap();
        assert_eq!(expect, lp(-4, &[1, 0, 0, 0, 1, 0, 0, 0, 1]));
        assert_eq!(q_int(3, 2), expect);
    }

    #[test]
    fn binomials() {
        assert!(q_binom(7, 0, 2).unwrap().is_one());
        assert_eq!(q_binom(2, 1, 1).unwrap(), q_int(2, 1));
        assert_eq!(q_binom(4, 2, 1).unwrap(), lp(-4, &[1, 0, 1, 0, 2, 0, 1, 0, 1]));
        assert_eq!(q_binom(2, 3, 1), Err(QError::BinomialRange { m: 2, n: 3 }));
    }

    #[test]
    fn paren_sums() {
        let x = RatFunc::q_pow(-2);
        assert!(paren_q(1, &RatFunc::from_int(17)).is_one());
        assert_eq!(paren_q(3, &RatFunc::q()), RatFunc::from_laurent(&lp(0, &[1, 1, 1])));
        assert_eq!(paren_q(2, &x), RatFunc::from_laurent(&lp(-2, &[1, 0, 1])));
        // the q -> 1 convention (n)_1 = n falls out of the sum
        assert_eq!(paren_q(5, &RatFunc::one()), RatFunc::from_int(5));
    }
}
