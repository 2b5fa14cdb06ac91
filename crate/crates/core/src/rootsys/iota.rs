use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{CartanData, RootError, TypeLabel};

/// The function `ι : Z → I`, given by two periods. `ι(k)` for `k ≥ 1` is
/// `period_pos[(k − 1) mod p]`; `ι(−j)` for `j ≥ 0` is
/// `period_nonpos[j mod p']`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IotaWord {
    pub period_pos: Vec<usize>,
    pub period_nonpos: Vec<usize>,
}

/// Linear map on the affine root lattice, stored by the images of the
/// simple roots.
#[derive(Clone)]
struct Element {
    cols: Vec<Vec<i64>>,
}

impl Element {
    fn identity(m: usize) -> Self {
        Element {
            cols: (0..m)
                .map(|j| {
                    let mut e = vec![0; m];
                    e[j] = 1;
                    e
                })
                .collect(),
        }
    }

    /// `w ↦ w s_i`.
    fn mul_simple(&mut self, data: &CartanData, i: usize) {
        let ci = self.cols[i].clone();
        for j in 0..self.cols.len() {
            let a = data.a[i][j];
            if a != 0 {
                for (x, y) in self.cols[j].iter_mut().zip(&ci) {
                    *x -= a * y;
                }
            }
        }
    }

    fn is_identity(&self) -> bool {
        self.cols
            .iter()
            .enumerate()
            .all(|(j, c)| c.iter().enumerate().all(|(i, &x)| x == i64::from(i == j)))
    }
}

fn is_negative(v: &[i64]) -> bool {
    v.iter().all(|&x| x <= 0) && v.iter().any(|&x| x < 0)
}

/// `⟨λ, α_j⟩` for `λ = Σ c_i α_i^∨` (indices over `I_0`, 0-based).
fn pairings(data: &CartanData, c: &[i64]) -> Vec<i64> {
    let n = data.rank();
    (1..=n)
        .map(|j| (1..=n).map(|i| c[i - 1] * data.a[i][j]).sum())
        .collect()
}

fn translation(data: &CartanData, c: &[i64]) -> Element {
    let m = data.size();
    let p = pairings(data, c);
    let theta_pair: i64 = (1..m).map(|j| data.theta[j] * p[j - 1]).sum();
    let mut w = Element::identity(m);
    for j in 1..m {
        for (x, mk) in w.cols[j].iter_mut().zip(&data.marks) {
            *x -= p[j - 1] * mk;
        }
    }
    for (x, mk) in w.cols[0].iter_mut().zip(&data.marks) {
        *x += theta_pair * mk;
    }
    w
}

/// Reduced word of the translation `t_λ`, `λ = Σ c_i α_i^∨`, by repeatedly
/// splitting off right descents.
pub fn reduced_word_of_translation(data: &CartanData, c: &[i64]) -> Result<Vec<usize>, RootError> {
    if c.len() != data.rank() {
        return Err(RootError::BadIndex(c.len()));
    }
    let mut w = translation(data, c);
    let mut word = Vec::new();
    while let Some(i) = (0..data.size()).find(|&i| is_negative(&w.cols[i])) {
        w.mul_simple(data, i);
        word.push(i);
    }
    if !w.is_identity() {
        return Err(RootError::IotaValidation {
            k: 0,
            message: "translation did not reduce to the identity".into(),
        });
    }
    word.reverse();
    Ok(word)
}

/// A strictly dominant element of the coroot lattice of minimal length,
/// in the basis of simple coroots.
pub fn default_translation(data: &CartanData) -> Vec<i64> {
    let n = data.rank();
    let fa = data.finite_matrix();
    // ⟨λ, α_j⟩ = m_j  ⇔  Σ_i c_i a_ij = m_j
    let height_sums: Vec<i64> = (1..=n)
        .map(|j| data.finite_positive_roots().iter().map(|r| r[j]).sum())
        .collect();
    let mut best: Option<(i64, Vec<i64>)> = None;
    for mask in 0..(1u32 << n) {
        let m: Vec<i64> = (0..n).map(|j| 1 + i64::from((mask >> j) & 1 == 1)).collect();
        let cost: i64 = m.iter().zip(&height_sums).map(|(a, b)| a * b).sum();
        if best.as_ref().is_some_and(|(b, _)| *b <= cost) {
            continue;
        }
        if let Some(c) = solve_transposed(&fa, &m) {
            best = Some((cost, c));
        }
    }
    best.expect("2ρ^∨ always lies in the coroot lattice").1
}

/// Integer solution of `Aᵀ c = m`, if any.
fn solve_transposed(a: &[Vec<i64>], m: &[i64]) -> Option<Vec<i64>> {
    let n = a.len();
    let mut rows: Vec<Vec<BigRational>> = (0..n)
        .map(|j| {
            let mut r: Vec<BigRational> = (0..n).map(|i| BigRational::from_integer(BigInt::from(a[i][j]))).collect();
            r.push(BigRational::from_integer(BigInt::from(m[j])));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(col, piv);
        let inv = rows[col][col].recip();
        for x in rows[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for k in col..=n {
                    let v = &rows[col][k] * &f;
                    rows[r][k] = &rows[r][k] - v;
                }
            }
        }
    }
    rows.iter()
        .map(|r| {
            let v = &r[n];
            if v.is_integer() && v.is_positive() {
                v.to_integer().to_i64()
            } else {
                None
            }
        })
        .collect()
}

/// Period words shipped for small ranks; each is the reduced word of the
/// minimal strictly dominant translation and its inverse.
fn shipped(data: &CartanData) -> Option<IotaWord> {
    let (pos, nonpos): (&[usize], &[usize]) = match (data.cartan_type.label, data.rank()) {
        (TypeLabel::A, 1) => (&[0, 1], &[1, 0]),
        (TypeLabel::A, 2) => (&[0, 1, 2, 1], &[1, 2, 1, 0]),
        (TypeLabel::C, 2) => (&[0, 1, 2, 0, 1, 2, 0, 1, 2, 1], &[2, 1, 2, 1, 0, 1, 2, 0, 1, 0]),
        (TypeLabel::G2, 2) => (
            &[0, 2, 1, 2, 1, 0, 2, 1, 0, 2, 1, 0, 2, 1, 2, 1],
            &[1, 2, 1, 2, 1, 0, 2, 1, 0, 2, 1, 0, 2, 1, 2, 0],
        ),
        (TypeLabel::B, 3) => (
            &[0, 2, 3, 1, 2, 3, 0, 2, 3, 1, 2, 3, 0, 2, 3, 1, 0, 2, 3, 1, 2, 1],
            &[3, 2, 3, 1, 2, 3, 1, 0, 2, 3, 1, 0, 2, 3, 2, 1, 0, 2, 3, 1, 2, 0],
        ),
        (TypeLabel::D, 4) => (
            &[0, 2, 3, 1, 2, 4, 0, 2, 3, 1, 0, 2, 4, 1, 0, 2, 3, 2, 1, 0, 2, 4, 1, 2, 3, 1, 2, 1],
            &[3, 1, 2, 4, 1, 2, 3, 2, 1, 0, 2, 4, 2, 1, 0, 2, 3, 2, 1, 0, 2, 4, 0, 2, 3, 1, 2, 0],
        ),
        _ => return None,
    };
    Some(IotaWord {
        period_pos: pos.to_vec(),
        period_nonpos: nonpos.to_vec(),
    })
}

/// Returns a validated ι-word for the type, checked up to δ-level `level`.
pub fn build_iota(data: &CartanData, level: i64) -> Result<IotaWord, RootError> {
    let word = match shipped(data) {
        Some(w) => w,
        None => {
            let c = default_translation(data);
            let neg: Vec<i64> = c.iter().map(|x| -x).collect();
            IotaWord {
                period_pos: reduced_word_of_translation(data, &c)?,
                period_nonpos: reduced_word_of_translation(data, &neg)?,
            }
        }
    };
    validate_iota(data, &word, level)?;
    Ok(word)
}

impl IotaWord {
    /// `ι(k)`.
    pub fn iota(&self, k: i64) -> usize {
        if k >= 1 {
            self.period_pos[((k - 1) as usize) % self.period_pos.len()]
        } else {
            self.period_nonpos[((-k) as usize) % self.period_nonpos.len()]
        }
    }

    /// `β_1, …, β_count` with `β_k = s_{ι(1)} ⋯ s_{ι(k−1)}(α_{ι(k)})`.
    pub fn betas_pos(&self, data: &CartanData, count: usize) -> Vec<Vec<i64>> {
        self.walk(data, count, |k| self.iota(k as i64 + 1))
    }

    /// `β_0, β_{−1}, …, β_{−(count−1)}` with
    /// `β_{−j} = s_{ι(0)} ⋯ s_{ι(−j+1)}(α_{ι(−j)})`.
    pub fn betas_nonpos(&self, data: &CartanData, count: usize) -> Vec<Vec<i64>> {
        self.walk(data, count, |j| self.iota(-(j as i64)))
    }

    fn walk(&self, data: &CartanData, count: usize, index: impl Fn(usize) -> usize) -> Vec<Vec<i64>> {
        let mut u = Element::identity(data.size());
        let mut out = Vec::with_capacity(count);
        for t in 0..count {
            let i = index(t);
            out.push(u.cols[i].clone());
            u.mul_simple(data, i);
        }
        out
    }
}

/// Checks that the word gives distinct positive real roots of the right
/// shape on both sides and covers every root up to δ-level `level`.
pub fn validate_iota(data: &CartanData, word: &IotaWord, level: i64) -> Result<(), RootError> {
    let m = data.size();
    for (side, p) in [(1i64, &word.period_pos), (0, &word.period_nonpos)] {
        if p.is_empty() {
            return Err(RootError::IotaValidation {
                k: side,
                message: "empty period".into(),
            });
        }
        if let Some(pos) = p.iter().position(|&i| i >= m) {
            let k = if side == 1 { pos as i64 + 1 } else { -(pos as i64) };
            return Err(RootError::IotaValidation {
                k,
                message: format!("index {} outside 0..{}", p[pos], m - 1),
            });
        }
    }
    let level = level.max(1) as usize;
    let fin = data.finite_positive_roots();
    let shape = |beta: &[i64], sign: i64| -> bool {
        // β = rδ + sign·α with α finite positive
        let r = beta[0];
        let alpha: Vec<i64> = beta
            .iter()
            .zip(&data.marks)
            .map(|(b, mk)| sign * (b - r * mk))
            .collect();
        fin.iter().any(|f| *f == alpha) && (if sign < 0 { r >= 1 } else { r >= 0 })
    };

    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let pos = word.betas_pos(data, level * word.period_pos.len());
    for (t, b) in pos.iter().enumerate() {
        let k = t as i64 + 1;
        check_one(data, b, k, &mut seen)?;
        if !shape(b, -1) {
            return Err(RootError::IotaValidation {
                k,
                message: format!("{b:?} is not of the form rδ − α with r ≥ 1"),
            });
        }
    }
    let nonpos = word.betas_nonpos(data, level * word.period_nonpos.len());
    for (j, b) in nonpos.iter().enumerate() {
        let k = -(j as i64);
        check_one(data, b, k, &mut seen)?;
        if !shape(b, 1) {
            return Err(RootError::IotaValidation {
                k,
                message: format!("{b:?} is not of the form rδ + α with r ≥ 0"),
            });
        }
    }
    let covered = |list: &[Vec<i64>], lo: i64, sign: i64| -> Option<Vec<i64>> {
        let have: HashSet<&Vec<i64>> = list.iter().collect();
        for r in lo..lo + level as i64 {
            for f in fin {
                let v: Vec<i64> = f.iter().zip(&data.marks).map(|(a, mk)| r * mk + sign * a).collect();
                if !have.contains(&v) {
                    return Some(v);
                }
            }
        }
        None
    };
    if let Some(v) = covered(&pos, 1, -1) {
        return Err(RootError::IotaValidation {
            k: pos.len() as i64,
            message: format!("root {v:?} not reached by positive side"),
        });
    }
    if let Some(v) = covered(&nonpos, 0, 1) {
        return Err(RootError::IotaValidation {
            k: 1 - nonpos.len() as i64,
            message: format!("root {v:?} not reached by nonpositive side"),
        });
    }
    Ok(())
}

fn check_one(data: &CartanData, b: &[i64], k: i64, seen: &mut HashSet<Vec<i64>>) -> Result<(), RootError> {
    if !b.iter().all(|&x| x >= 0) || !data.is_real_root(b) {
        return Err(RootError::IotaValidation {
            k,
            message: format!("{b:?} is not a positive real root"),
        });
    }
    if !seen.insert(b.to_vec()) {
        return Err(RootError::IotaValidation {
            k,
            message: format!("{b:?} repeats"),
        });
    }
    Ok(())
}
