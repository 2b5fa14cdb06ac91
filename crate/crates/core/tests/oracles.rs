//! Values checked against independent tables (OEIS, standard references).

use affine_pbw::imroots::Monomial;
use affine_pbw::pbw::partitions;
use affine_pbw::qlaurent::{cyclotomic, q_binom, LaurentPoly, RatFunc};
use affine_pbw::rootsys::CartanData;
use affine_pbw::series::{psi_transform, SeriesVec};
use num_bigint::BigInt;
use num_rational::BigRational;

fn rat(n: i64, d: i64) -> RatFunc {
    RatFunc::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn factorial(n: i64) -> i64 {
    (1..=n).product()
}

#[test]
fn bell_numbers_from_exp_of_exp() {
    // exp(e^z - 1) = Σ B_n z^n / n!, B = A000110
    let bell = [1, 1, 2, 5, 15, 52, 203, 877, 4140];
    let x = SeriesVec::with_unit_constant((1..=8).map(|r| rat(1, factorial(r))).collect());
    let y = psi_transform(&x).unwrap();
    for (n, b) in bell.iter().enumerate() {
        assert_eq!(*y.get(n), rat(*b, factorial(n as i64)), "n = {n}");
    }
}

#[test]
fn partition_numbers_from_divisor_sums() {
    // Π (1 - z^k)^{-1} = exp(Σ σ(r) z^r / r), p(n) = A000041
    let p = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
    let sigma = |r: i64| (1..=r).filter(|d| r % d == 0).sum::<i64>();
    let x = SeriesVec::with_unit_constant((1..=10).map(|r| rat(sigma(r), r)).collect());
    let y = psi_transform(&x).unwrap();
    for (n, v) in p.iter().enumerate() {
        assert_eq!(*y.get(n), rat(*v, 1));
        let count = partitions(n as u32).len();
        assert_eq!(count as i64, *v);
    }
    assert!(partitions(3).contains(&Monomial::from_pairs([(1, 1), (2, 1)])));
}

#[test]
fn gaussian_binomial_4_2() {
    // balanced form of 1 + q + 2q^2 + q^3 + q^4 in q^2
    let expect = LaurentPoly::from_int_coeffs(-4, &[1, 0, 1, 0, 2, 0, 1, 0, 1]);
    assert_eq!(q_binom(4, 2, 1).unwrap(), expect);
}

#[test]
fn cyclotomic_polynomials() {
    assert_eq!(cyclotomic(1), LaurentPoly::from_int_coeffs(0, &[-1, 1]));
    assert_eq!(cyclotomic(12), LaurentPoly::from_int_coeffs(0, &[1, 0, -1, 0, 1]));
    assert_eq!(cyclotomic(15), LaurentPoly::from_int_coeffs(0, &[1, -1, 0, 1, -1, 1, 0, -1, 1]));
}

#[test]
fn positive_root_counts() {
    for (t, n) in [("A4", 10), ("B3", 9), ("C2", 4), ("D4", 12), ("E6", 36), ("E7", 63), ("E8", 120), ("F4", 24), ("G2", 6)] {
        let c = CartanData::new(t.parse().unwrap()).unwrap();
        assert_eq!(c.finite_positive_roots().len(), n, "{t}");
    }
}
