//! The determinants `Δ_r`, Gram matrices of the pairing on imaginary root
//! vectors, the matrix `M_r` and its inverse, the pairing of PBW monomials
//! and root-of-unity admissibility.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::pbw::{ExpVec, Normalization};
use crate::qlaurent::{
    cyclotomic_factors, eval_at_root_of_unity, is_regular_at, q_factorial, q_int, LaurentPoly, RatFunc,
};
use crate::rootsys::{CartanData, Root, RootKind, TypeLabel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairingError {
    #[error("matrix M_{r} is singular")]
    Singular { r: u32 },
    #[error("inverse check failed for M_{r}: M·μ differs from the identity at ({row}, {col})")]
    NotInverse { r: u32, row: usize, col: usize },
}

/// `[n]_x` as a Laurent polynomial in `x = q^e`.
fn qint_at(n: i64, e: i64) -> LaurentPoly {
    if e >= 0 {
        q_int(n, e as u32)
    } else {
        q_int(n, (-e) as u32).bar()
    }
}

/// The closed form of `Δ_r` listed for each type.
pub fn delta_closed(data: &CartanData, r: u32) -> LaurentPoly {
    let r = r as i64;
    let n = data.rank() as i64;
    let two = |e: i64| qint_at(2, e * r);
    let one = LaurentPoly::one();
    match data.cartan_type.label {
        TypeLabel::A => qint_at(n + 1, r),
        TypeLabel::B => two(2 * n - 1),
        TypeLabel::C => two(n + 1),
        TypeLabel::D => &two(n - 1) * &two(1),
        TypeLabel::E6 => &qint_at(3, r) * &(two(4) - one),
        TypeLabel::E7 => &two(1) * &(two(6) - one),
        TypeLabel::E8 => two(8) + two(6) - two(2) - one,
        TypeLabel::F4 => two(6) - one,
        TypeLabel::G2 => &qint_at(3, r) * &(two(10) + two(8) - two(2) - one),
    }
}

/// The matrix `([a_ij]_{q_i^r})_{i,j ∈ I_0}`.
pub fn q_cartan_matrix(data: &CartanData, r: u32) -> Vec<Vec<LaurentPoly>> {
    let n = data.rank();
    (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| qint_at(data.a[i][j], data.d[i] * r as i64))
                .collect()
        })
        .collect()
}

/// Fraction-free (Bareiss) determinant over `Z[q, q^{-1}]`.
pub fn bareiss_det(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut a: Vec<Vec<LaurentPoly>> = m.to_vec();
    let mut prev = LaurentPoly::one();
    let mut sign = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    sign = !sign;
                }
                None => return LaurentPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss step divides exactly");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// `Δ_r = det([a_ij]_{q_i^r})`.
pub fn delta_det(data: &CartanData, r: u32) -> LaurentPoly {
    bareiss_det(&q_cartan_matrix(data, r))
}

/// `+1` or `-1` if `det = ±closed`, `None` otherwise.
pub fn delta_sign(data: &CartanData, r: u32) -> Option<i8> {
    let det = delta_det(data, r);
    let closed = delta_closed(data, r);
    if det == closed {
        Some(1)
    } else if det == -closed {
        Some(-1)
    } else {
        None
    }
}

/// Which formula a Gram matrix was built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GramKind {
    /// `π(E_{(rδ,i)}, F_{(sδ,j)})`.
    Imaginary,
    /// `M_r = ((o(i)o(j))^r [a_ij]_{q_i^r})`.
    MMatrix,
    /// `μ = M_r^{-1}`.
    Dual,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GramMatrix {
    pub r: u32,
    #[serde(skip)]
    pub kind: GramKind,
    pub entries: Vec<Vec<RatFunc>>,
}

fn o_pow(data: &CartanData, i: usize, j: usize, r: u32) -> i64 {
    let s = i64::from(data.o_sign(i) * data.o_sign(j));
    if s < 0 && r % 2 == 1 {
        -1
    } else {
        1
    }
}

/// `π(E_{(rδ,i)}, F_{(sδ,j)}) = δ_{rs} (o(i)o(j))^r [r a_ij]_{q_i} / (r (q_j^{-1} − q_j))`.
pub fn gram_imaginary(data: &CartanData, r: u32, s: u32) -> GramMatrix {
    let n = data.rank();
    let entries = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| {
                    if r != s {
                        return RatFunc::zero();
                    }
                    let num = qint_at(r as i64 * data.a[i][j], data.d[i]).scale(&BigRational::from_integer(
                        BigInt::from(o_pow(data, i, j, r)),
                    ));
                    let dj = data.d[j];
                    let den = (LaurentPoly::q_pow(-dj) - LaurentPoly::q_pow(dj))
                        .scale(&BigRational::from_integer(BigInt::from(r)));
                    RatFunc::new(&num, &den).expect("nonzero denominator")
                })
                .collect()
        })
        .collect();
    GramMatrix {
        r,
        kind: GramKind::Imaginary,
        entries,
    }
}

/// `M_r`.
pub fn m_matrix(data: &CartanData, r: u32) -> GramMatrix {
    let qc = q_cartan_matrix(data, r);
    let n = data.rank();
    let entries = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let v = qc[i][j].scale(&BigRational::from_integer(BigInt::from(o_pow(data, i + 1, j + 1, r))));
                    RatFunc::from_laurent(&v)
                })
                .collect()
        })
        .collect();
    GramMatrix {
        r,
        kind: GramKind::MMatrix,
        entries,
    }
}

/// Inverse of a square Laurent-polynomial matrix by fraction-free
/// Gauss–Jordan elimination: the augmented matrix is reduced keeping all
/// entries in `Z[q, q^{-1}]`, which leaves `det · I | ±adj`.
pub fn fraction_free_inverse(m: &[Vec<LaurentPoly>]) -> Option<(LaurentPoly, Vec<Vec<RatFunc>>)> {
    let n = m.len();
    let mut a: Vec<Vec<LaurentPoly>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { LaurentPoly::one() } else { LaurentPoly::zero() }));
            r
        })
        .collect();
    let mut prev = LaurentPoly::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let p = (k + 1..n).find(|&i| !a[i][k].is_zero())?;
            a.swap(k, p);
        }
        for i in 0..n {
            if i == k {
                continue;
            }
            for j in 0..2 * n {
                if j == k {
                    continue;
                }
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev)?;
            }
            a[i][k] = LaurentPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let det = prev;
    let inv = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| RatFunc::new(&a[i][n + j], &a[i][i]).expect("nonzero pivot"))
                .collect()
        })
        .collect();
    Some((det, inv))
}

pub fn mat_mul(a: &[Vec<RatFunc>], b: &[Vec<RatFunc>]) -> Vec<Vec<RatFunc>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    (0..b.len()).fold(RatFunc::zero(), |acc, k| {
                        if a[i][k].is_zero() || b[k][j].is_zero() {
                            acc
                        } else {
                            &acc + &(&a[i][k] * &b[k][j])
                        }
                    })
                })
                .collect()
        })
        .collect()
}

pub fn is_identity(m: &[Vec<RatFunc>]) -> Option<(usize, usize)> {
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let ok = if i == j { x.is_one() } else { x.is_zero() };
            if !ok {
                return Some((i, j));
            }
        }
    }
    None
}

/// `M_r`, its inverse `μ`, and the checks performed on them.
#[derive(Clone, Debug, Serialize)]
pub struct DualReport {
    pub m: GramMatrix,
    pub mu: GramMatrix,
    pub det: LaurentPoly,
    /// `det M_r = sign · Δ_r` (determinant form of `Δ_r`).
    pub det_sign: Option<i8>,
    pub orthonormal: bool,
    /// Orders `ℓ` at which some entry of `μ` has a pole.
    pub irregular_orders: Vec<u64>,
    /// Every cyclotomic factor of a denominator of `μ` divides `Δ_r`.
    pub denominators_divide_delta: bool,
}

pub fn m_matrix_and_dual(data: &CartanData, r: u32, sample_orders: &[u64]) -> Result<DualReport, PairingError> {
    let m = m_matrix(data, r);
    let n = data.rank();
    let lp: Vec<Vec<LaurentPoly>> = m
        .entries
        .iter()
        .map(|row| row.iter().map(|x| x.as_laurent().expect("Laurent entries")).collect())
        .collect();
    let (det, mu) = fraction_free_inverse(&lp).ok_or(PairingError::Singular { r })?;
    if det.is_zero() {
        return Err(PairingError::Singular { r });
    }
    let prod = mat_mul(&m.entries, &mu);
    if let Some((row, col)) = is_identity(&prod) {
        return Err(PairingError::NotInverse { r, row, col });
    }
    let delta = delta_det(data, r);
    let det_sign = if det == delta {
        Some(1)
    } else if det == -delta.clone() {
        Some(-1)
    } else {
        None
    };
    let delta_factors: BTreeMap<u64, u32> = cyclotomic_factors(&delta).into_iter().collect();
    let mut denominators_divide_delta = true;
    let mut irregular_orders = Vec::new();
    for row in &mu {
        for x in row {
            for (order, mult) in cyclotomic_factors(&x.denom()) {
                if delta_factors.get(&order).map_or(true, |&d| d < mult) {
                    denominators_divide_delta = false;
                }
            }
            for &l in sample_orders {
                if !is_regular_at(x, l) && !irregular_orders.contains(&l) {
                    irregular_orders.push(l);
                }
            }
        }
    }
    let _ = n;
    Ok(DualReport {
        m,
        mu: GramMatrix {
            r,
            kind: GramKind::Dual,
            entries: mu,
        },
        det,
        det_sign,
        orthonormal: true,
        irregular_orders,
        denominators_divide_delta,
    })
}

/// `π(K_λ, K_μ) = q^{−(λ|μ)}`.
pub fn pair_toral(data: &CartanData, lambda: &[i64], mu: &[i64]) -> RatFunc {
    RatFunc::q_pow(-data.bilinear(lambda, mu))
}

fn plain_factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn q_alpha_exp(data: &CartanData, root: &Root) -> i64 {
    match root.kind {
        RootKind::Real => data.d_alpha(&root.coords),
        RootKind::Imaginary => data.d[root.mult_index.expect("index")],
    }
}

fn normalization_factor(norm: Normalization, n: u32, d: i64) -> RatFunc {
    match norm {
        Normalization::Bare => RatFunc::one(),
        Normalization::QDivided => RatFunc::from_laurent(&q_factorial(n, d as u32))
            .inv()
            .expect("nonzero"),
        Normalization::PlainDivided => RatFunc::from_rational(BigRational::new(BigInt::from(1), plain_factorial(n))),
        Normalization::Rescaled => RatFunc::from_laurent(&(LaurentPoly::q_pow(d) - LaurentPoly::q_pow(-d)))
            .pow(n as i64)
            .expect("nonnegative power"),
    }
}

/// Pairing of two ordered monomials: the real factor
/// `q_α^{C(n,2)} [n]_{q_α}! / (q_α^{-1} − q_α)^n`, the imaginary factor
/// `n! · imdiag(r, i)^n`, Kronecker deltas on the exponents, and the
/// normalization of each side applied per factor.
pub fn pair_monomials(
    data: &CartanData,
    n: &ExpVec,
    m: &ExpVec,
    imdiag: &dyn Fn(i64, usize) -> RatFunc,
) -> RatFunc {
    let left: BTreeMap<&Root, (u32, Normalization)> = n.iter().map(|e| (&e.root, (e.exp, e.normalization))).collect();
    let right: BTreeMap<&Root, (u32, Normalization)> = m.iter().map(|e| (&e.root, (e.exp, e.normalization))).collect();
    let mut value = RatFunc::one();
    let roots: std::collections::BTreeSet<&Root> = left.keys().chain(right.keys()).copied().collect();
    for root in roots {
        let (a, na) = left.get(root).copied().unwrap_or((0, Normalization::Bare));
        let (b, nb) = right.get(root).copied().unwrap_or((0, Normalization::Bare));
        if a != b {
            return RatFunc::zero();
        }
        if a == 0 {
            continue;
        }
        let d = q_alpha_exp(data, root);
        let base = match root.kind {
            RootKind::Real => {
                let binom = i64::from(a) * (i64::from(a) - 1) / 2;
                let num = q_factorial(a, d as u32).shift(d * binom);
                let den = (LaurentPoly::q_pow(-d) - LaurentPoly::q_pow(d))
                    .pow(i64::from(a))
                    .expect("nonnegative power");
                RatFunc::new(&num, &den).expect("nonzero")
            }
            RootKind::Imaginary => {
                let diag = imdiag(root.level() / data.marks[0], root.mult_index.expect("index"));
                diag.pow(i64::from(a))
                    .expect("nonnegative power")
                    .scale_rational(&BigRational::from_integer(plain_factorial(a)))
            }
        };
        value = &(&(&value * &base) * &normalization_factor(na, a, d)) * &normalization_factor(nb, a, d);
    }
    value
}

/// The admissible orders `ℓ ≤ bound`: `ℓ = 1`, or `ℓ` odd with
/// `gcd(ℓ, n+1) = 1` for `A_n` and `3 ∤ ℓ` for `E_6` and `G_2`.
pub fn is_admissible(data: &CartanData, ell: u64) -> bool {
    if ell == 1 {
        return true;
    }
    if ell == 0 || ell % 2 == 0 {
        return false;
    }
    match data.cartan_type.label {
        TypeLabel::A => ell.gcd(&(data.rank() as u64 + 1)) == 1,
        TypeLabel::E6 | TypeLabel::G2 => ell % 3 != 0,
        _ => true,
    }
}

pub fn admissible_orders(data: &CartanData, bound: u64) -> Vec<u64> {
    (1..=bound).filter(|&l| is_admissible(data, l)).collect()
}

/// The first `count` admissible orders.
pub fn first_admissible(data: &CartanData, count: usize) -> Vec<u64> {
    (1..).filter(|&l| is_admissible(data, l)).take(count).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct NonvanishingReport {
    #[serde(rename = "type")]
    pub type_name: String,
    pub ell: u64,
    pub admissible: bool,
    pub checked_r: u32,
    pub all_nonzero: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample_r: Option<u32>,
}

/// Evaluates `Δ_r` (determinant form) at a primitive `ℓ`-th root of unity
/// for `1 ≤ r ≤ r_max`.
pub fn check_delta_nonvanishing(data: &CartanData, ell: u64, r_max: u32) -> NonvanishingReport {
    let counterexample_r = (1..=r_max).find(|&r| {
        let v = eval_at_root_of_unity(&RatFunc::from_laurent(&delta_det(data, r)), ell).expect("polynomial");
        v.is_zero()
    });
    NonvanishingReport {
        type_name: data.cartan_type.to_string(),
        ell,
        admissible: is_admissible(data, ell),
        checked_r: r_max,
        all_nonzero: counterexample_r.is_none(),
        counterexample_r,
    }
}

/// Same evaluation applied to the closed form instead of the determinant.
pub fn closed_form_vanishes_at(data: &CartanData, ell: u64, r_max: u32) -> Option<u32> {
    (1..=r_max).find(|&r| {
        eval_at_root_of_unity(&RatFunc::from_laurent(&delta_closed(data, r)), ell)
            .expect("polynomial")
            .is_zero()
    })
}
