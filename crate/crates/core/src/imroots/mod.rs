//! Imaginary root vectors for one fixed index `i ∈ I_0`, modelled in the
//! free commutative algebra on the symbols `Ẽ_s = Ẽ_{(sδ,i)}`.
//!
//! Imaginary root vectors attached to the same index commute, so every
//! identity among them can be checked inside this model. Only the integer
//! `d_i` enters, through `q_i = q^{d_i}`.
//!
//! Each family is returned as a vector indexed by `r = 0, …, T`, whose entry
//! 0 is `1`.

mod poly;

pub use poly::{ClassicalPoly, ImPoly, JsonCoeff, Monomial, Poly};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::qlaurent::{paren_q, q_int, QError, RatFunc};
use crate::ring::Ring;
use crate::series::{phi_transform, psi_transform, SeriesVec};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn qi(d: u32) -> RatFunc {
    RatFunc::q_pow(d as i64)
}

/// `q_i − q_i^{-1}`.
fn qi_diff(d: u32) -> RatFunc {
    &qi(d) - &RatFunc::q_pow(-(d as i64))
}

/// `[s]_{q_i}` as a rational function.
fn qint(s: u64, d: u32) -> RatFunc {
    RatFunc::from_laurent(&q_int(s as i64, d))
}

/// `Ẽ_s` (and `Ẽ_0 = 1`).
pub fn generator(s: u32) -> ImPoly {
    if s == 0 {
        ImPoly::one()
    } else {
        ImPoly::var(s)
    }
}

/// `E_r` for `r ≤ T`, from
/// `(q_i − q_i^{-1}) Σ_r E_r ζ^r = log(1 − (q_i − q_i^{-1}) Σ_s Ẽ_s ζ^s)`.
///
/// The defining series is written with `ζ^r` inside the sum over `s`; it is
/// read here as `ζ^s`, the only reading that respects the δ-grading.
pub fn family_e(d: u32, t: usize) -> Vec<ImPoly> {
    let c = qi_diff(d);
    let y = SeriesVec::with_unit_constant((1..=t as u32).map(|s| generator(s).scale_by(&-c.clone())).collect());
    let x = phi_transform(&y).expect("unit constant term");
    let inv = c.inv().expect("q_i − q_i^{-1} is nonzero");
    let mut out = x.into_coeffs();
    for e in out.iter_mut().skip(1) {
        *e = e.scale_by(&inv);
    }
    out
}

/// `Ė_r` by `Ė_r = (q_i^r / [r]_{q_i}) Σ_{s=1}^r Ẽ_s Ė_{r−s}`.
pub fn family_edot(d: u32, t: usize) -> Vec<ImPoly> {
    let mut out = vec![ImPoly::one()];
    for r in 1..=t {
        let sum = (1..=r).fold(ImPoly::zero(), |acc, s| &acc + &(&generator(s as u32) * &out[r - s]));
        let c = &RatFunc::q_pow((d as usize * r) as i64) * &qint(r as u64, d).inv().expect("nonzero");
        out.push(sum.scale_by(&c));
    }
    out
}

/// `Ė_r` by the second recursion
/// `Ė_r = −(1/r) Σ_{s=1}^r q_i^s (s/[s]_{q_i}) E_s Ė_{r−s}`.
pub fn family_edot_from_e(d: u32, t: usize) -> Vec<ImPoly> {
    family_edot_bracket(d, 1, t)
}

/// `Ê_r = (r / [r]_{q_i}) E_r`.
pub fn family_ehat(d: u32, t: usize) -> Vec<ImPoly> {
    let mut out = family_e(d, t);
    for (r, e) in out.iter_mut().enumerate().skip(1) {
        *e = e.scale_by(&hat_factor(r as u64, d));
    }
    out
}

fn hat_factor(r: u64, d: u32) -> RatFunc {
    qint(r, d).inv().expect("nonzero").scale_rational(&rat(r as i64, 1))
}

/// `Ê_r^k / k!` with the ordinary factorial.
pub fn divided_power_hat(ehat_r: &ImPoly, k: u32) -> ImPoly {
    let fact: BigInt = (1..=k).map(BigInt::from).product();
    ehat_r.pow(k).scale(&BigRational::new(BigInt::from(1), fact))
}

/// `Ė^{[k]}_{[r]}` for `r ≤ T` by
/// `Ė^{[k]}_{[r]} = −(1/r) Σ_{s=1}^r q_i^{ks} (sk/[sk]_{q_i}) E_{(skδ)} Ė^{[k]}_{[r−s]}`.
/// Uses the symbols up to `Ẽ_{kT}`.
pub fn family_edot_bracket(d: u32, k: u32, t: usize) -> Vec<ImPoly> {
    let k = k as usize;
    let e = family_e(d, k * t);
    let terms: Vec<ImPoly> = (0..=t)
        .map(|s| {
            if s == 0 {
                return ImPoly::zero();
            }
            let c = &RatFunc::q_pow((d as usize * k * s) as i64) * &hat_factor((s * k) as u64, d);
            e[s * k].scale_by(&c)
        })
        .collect();
    let mut out = vec![ImPoly::one()];
    for r in 1..=t {
        let sum = (1..=r).fold(ImPoly::zero(), |acc, s| &acc + &(&terms[s] * &out[r - s]));
        out.push(sum.scale(&rat(-1, r as i64)));
    }
    out
}

/// `Ė^{[k]}` as `Ψ({−(q_i^{kr}/r) Ê_{(rkδ)}})`.
pub fn family_edot_bracket_psi(d: u32, k: u32, t: usize) -> Vec<ImPoly> {
    let k = k as usize;
    let ehat = family_ehat(d, k * t);
    let x = SeriesVec::with_unit_constant(
        (1..=t)
            .map(|r| {
                ehat[r * k]
                    .scale_by(&RatFunc::q_pow((d as usize * k * r) as i64))
                    .scale(&rat(-1, r as i64))
            })
            .collect(),
    );
    psi_transform(&x).expect("unit constant term").into_coeffs()
}

/// `Ė^{⟨k⟩}_{[r]}` by `(r)_{q_i^{-2}} Ė^{⟨k⟩}_{[r]} = Σ_{s=1}^r q_i Ẽ_{(skδ)} Ė^{⟨k⟩}_{[r−s]}`.
pub fn family_edot_angle(d: u32, k: u32, t: usize) -> Vec<ImPoly> {
    let base = RatFunc::q_pow(-2 * d as i64);
    let mut out = vec![ImPoly::one()];
    for r in 1..=t {
        let sum = (1..=r).fold(ImPoly::zero(), |acc, s| {
            &acc + &(&generator(s as u32 * k) * &out[r - s])
        });
        let c = &qi(d) * &paren_q(r as u32, &base).inv().expect("nonzero");
        out.push(sum.scale_by(&c));
    }
    out
}

/// `Λ^{⟨k⟩} = Ψ({ẽ_{rk}/r})` over Q.
pub fn classical_lambda(k: u32, t: usize) -> Vec<ClassicalPoly> {
    let x = SeriesVec::with_unit_constant(
        (1..=t)
            .map(|r| ClassicalPoly::var(r as u32 * k).scale(&rat(1, r as i64)))
            .collect(),
    );
    psi_transform(&x).expect("unit constant term").into_coeffs()
}

/// Specializes a whole family at `q = 1`.
pub fn specialize_family(family: &[ImPoly]) -> Result<Vec<ClassicalPoly>, QError> {
    family.iter().map(ImPoly::specialize_q1).collect()
}

/// Outcome of checking
/// `Ė^{⟨k⟩}(q_i^{-2}ζ) = (1 − (q_i − q_i^{-1}) Σ_r Ẽ_{(rkδ)} ζ^r) · Ė^{⟨k⟩}(ζ)` up to `ζ^T`.
#[derive(Clone, Debug, Serialize)]
pub struct SeriesRelationReport {
    pub d: u32,
    pub k: u32,
    pub order: usize,
    pub holds: bool,
    /// First ζ-degree at which the two sides differ, with both sides.
    pub first_failure: Option<(usize, ImPoly, ImPoly)>,
}

pub fn check_series_relation(d: u32, k: u32, t: usize) -> SeriesRelationReport {
    let f = SeriesVec::new(family_edot_angle(d, k, t));
    let lhs = f.subs_scaled(&RatFunc::q_pow(-2 * d as i64));
    let c = qi_diff(d);
    let g = SeriesVec::with_unit_constant(
        (1..=t as u32)
            .map(|r| generator(r * k).scale_by(&-c.clone()))
            .collect(),
    );
    let rhs = g.mul(&f).expect("same order");
    let first_failure = (0..=t)
        .find(|&r| lhs.get(r) != rhs.get(r))
        .map(|r| (r, lhs.get(r).clone(), rhs.get(r).clone()));
    SeriesRelationReport {
        d,
        k,
        order: t,
        holds: first_failure.is_none(),
        first_failure,
    }
}

/// Applies `Ẽ_s ↦ ẽ_s` and `q ↦ 1` to a family and compares with a
/// classical family.
pub fn specializes_to(family: &[ImPoly], classical: &[ClassicalPoly]) -> bool {
    specialize_family(family).is_ok_and(|s| s == classical)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlaurent::parse_ratfunc;

    fn rf(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    fn m(pairs: &[(u32, u32)]) -> Monomial {
        Monomial::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn first_members_of_e() {
        let e = family_e(1, 3);
        assert_eq!(e[1], -&ImPoly::var(1));
        let expect = &(-&ImPoly::var(2)) - &ImPoly::term(m(&[(1, 2)]), rf("(q - q^-1)/2"));
        assert_eq!(e[2], expect);
        for (r, p) in e.iter().enumerate().skip(1) {
            assert_eq!(p.homogeneous_degree(), Some(r as u64));
        }
    }

    #[test]
    fn e_specializes_to_minus_generator() {
        for d in 1..=3 {
            let e = family_e(d, 5);
            let s = specialize_family(&e).unwrap();
            for r in 1..=5u32 {
                assert_eq!(s[r as usize], -&ClassicalPoly::var(r));
            }
        }
    }

    #[test]
    fn edot_first_terms_and_two_recursions() {
        for d in 1..=3 {
            let a = family_edot(d, 5);
            assert!(a[0] == ImPoly::one());
            assert_eq!(a[1], ImPoly::var(1).scale_by(&qi(d)));
            assert_eq!(a, family_edot_from_e(d, 5));
        }
    }

    #[test]
    fn edot_second_term_by_hand() {
        // Ė_2 = (q^2/[2]) (Ẽ_2 + q Ẽ_1^2)
        let a = family_edot(1, 2);
        let c = rf("q^2/(q + q^-1)");
        let expect = &ImPoly::var(2).scale_by(&c) + &ImPoly::term(m(&[(1, 2)]), &c * &RatFunc::q());
        assert_eq!(a[2], expect);
    }

    #[test]
    fn ehat_values() {
        let h = family_ehat(2, 4);
        assert_eq!(h[1], -&ImPoly::var(1));
        assert!(divided_power_hat(&h[3], 0) == ImPoly::one());
        let s = specialize_family(&h).unwrap();
        assert_eq!(s[4], -&ClassicalPoly::var(4));
        let dp = divided_power_hat(&h[1], 3);
        assert_eq!(dp, ImPoly::term(m(&[(1, 3)]), RatFunc::from_rational(rat(-1, 6))));
    }

    #[test]
    fn bracket_routes_agree() {
        for d in 1..=2 {
            for k in 1..=3 {
                let a = family_edot_bracket(d, k, 3);
                assert_eq!(a, family_edot_bracket_psi(d, k, 3), "d={d} k={k}");
                let h = family_ehat(d, k as usize);
                assert_eq!(a[1], -&h[k as usize].scale_by(&RatFunc::q_pow((d * k) as i64)));
                for (r, p) in a.iter().enumerate().skip(1) {
                    assert_eq!(p.homogeneous_degree(), Some(r as u64 * k as u64));
                }
            }
        }
    }

    #[test]
    fn angle_family() {
        for d in 1..=3 {
            assert_eq!(family_edot_angle(d, 1, 5), family_edot(d, 5));
            let a = family_edot_angle(d, 2, 3);
            assert_eq!(a[1], ImPoly::var(2).scale_by(&qi(d)));
        }
    }

    #[test]
    fn angle_and_bracket_differ_at_k2() {
        let a = family_edot_angle(1, 2, 2);
        let b = family_edot_bracket(1, 2, 2);
        assert_ne!(a[2], b[2]);
    }

    #[test]
    fn classical_lambda_values() {
        let l = classical_lambda(1, 2);
        assert!(l[0] == ClassicalPoly::one());
        assert_eq!(l[1], ClassicalPoly::var(1));
        let expect = &ClassicalPoly::var(2).scale(&rat(1, 2)) + &ClassicalPoly::term(m(&[(1, 2)]), rat(1, 2));
        assert_eq!(l[2], expect);
        assert_eq!(classical_lambda(3, 1)[1], ClassicalPoly::var(3));
    }

    #[test]
    fn specialization_square() {
        for k in 1..=2 {
            let lam = classical_lambda(k, 3);
            assert!(specializes_to(&family_edot_angle(2, k, 3), &lam));
            assert!(specializes_to(&family_edot_bracket(2, k, 3), &lam));
        }
    }

    #[test]
    fn series_relation_small() {
        let r = check_series_relation(1, 1, 1);
        assert!(r.holds);
        for d in 1..=2 {
            for k in 1..=2 {
                assert!(check_series_relation(d, k, 4).holds);
            }
        }
    }

    #[test]
    fn bar_is_an_involution() {
        let e = family_e(2, 3);
        assert_eq!(e[3].bar().bar(), e[3]);
        assert_ne!(e[2].bar(), e[2]);
    }
}
