//! PBW monomial indices, toral basis elements and the transition between
//! divided powers of `Ê` and monomials in `Ė^{[k]}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::imroots::{classical_lambda, family_edot_bracket, family_ehat, ClassicalPoly, ImPoly, Monomial, Poly};
use crate::qlaurent::{is_regular_at, LaurentPoly, RatFunc};
use crate::ring::{Field, Ring};
use crate::rootsys::{CartanData, OrderedRoots, Root};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PbwError {
    #[error("root {0:?} is not in the enumerated range")]
    UnknownRoot(Vec<i64>),
    #[error("root {0:?} appears twice")]
    Duplicate(Vec<i64>),
    #[error("block of degree {m} is not invertible")]
    Singular { m: usize },
}

/// How a factor `x^n` of a monomial is normalized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// `x^n`.
    Bare,
    /// `x^n / [n]_{q_α}!`.
    QDivided,
    /// `x^n / n!`.
    PlainDivided,
    /// `((q_α − q_α^{-1}) x)^n`.
    Rescaled,
}

impl Normalization {
    /// The divided-power convention: q-factorials on real roots, plain
    /// factorials on imaginary ones.
    pub fn divided_for(root: &Root) -> Self {
        match root.kind {
            crate::rootsys::RootKind::Real => Normalization::QDivided,
            crate::rootsys::RootKind::Imaginary => Normalization::PlainDivided,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpEntry {
    pub root: Root,
    pub exp: u32,
    pub normalization: Normalization,
}

/// Exponents `(n_α)` of an ordered monomial, kept in `≼`-order.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExpVec {
    entries: Vec<ExpEntry>,
}

impl ExpVec {
    pub fn empty() -> Self {
        ExpVec::default()
    }

    /// Sorts the entries into `≼`-order, dropping zero exponents.
    pub fn ordered(order: &OrderedRoots, entries: Vec<ExpEntry>) -> Result<Self, PbwError> {
        let mut keyed = Vec::with_capacity(entries.len());
        for e in entries.into_iter().filter(|e| e.exp > 0) {
            let key = order
                .key_of(&e.root)
                .ok_or_else(|| PbwError::UnknownRoot(e.root.coords.clone()))?;
            keyed.push((key, e));
        }
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        for w in keyed.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(PbwError::Duplicate(w[0].1.root.coords.clone()));
            }
        }
        Ok(ExpVec {
            entries: keyed.into_iter().map(|(_, e)| e).collect(),
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = &ExpEntry> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `Σ n_α p(α)`.
    pub fn weight(&self, data: &CartanData) -> Vec<i64> {
        let mut w = vec![0i64; data.size()];
        for e in &self.entries {
            for (x, c) in w.iter_mut().zip(&e.root.coords) {
                *x += i64::from(e.exp) * c;
            }
        }
        w
    }

    /// Union of supports, adding exponents.
    pub fn merge(&self, other: &ExpVec, order: &OrderedRoots) -> Result<ExpVec, PbwError> {
        let mut map: BTreeMap<Root, ExpEntry> = BTreeMap::new();
        for e in self.entries.iter().chain(&other.entries) {
            map.entry(e.root.clone())
                .and_modify(|x| x.exp += e.exp)
                .or_insert_with(|| e.clone());
        }
        ExpVec::ordered(order, map.into_values().collect())
    }
}

/// Which simple indices carry toral generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ToralIndexSet {
    /// `I_0 = {1, …, n}`.
    Finite,
    /// `I = {0, …, n}`.
    #[default]
    Affine,
    /// `I ∪ {∞}`; `K_∞` uses `q_∞ = q`.
    Extended,
}

impl ToralIndexSet {
    /// Indices with their `d_i`; `∞` is reported as `n + 1`.
    pub fn indices(self, data: &CartanData) -> Vec<(usize, u32)> {
        let n = data.rank();
        let mut out: Vec<(usize, u32)> = match self {
            ToralIndexSet::Finite => (1..=n).collect::<Vec<_>>(),
            _ => (0..=n).collect(),
        }
        .into_iter()
        .map(|i| (i, data.d[i] as u32))
        .collect();
        if self == ToralIndexSet::Extended {
            out.push((n + 1, 1));
        }
        out
    }
}

/// A Laurent polynomial in a single `K_i` with coefficients in Q(q).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ToralElement {
    pub index: usize,
    pub d: u32,
    /// `K_i`-degree ↦ coefficient.
    pub terms: BTreeMap<i64, RatFunc>,
}

impl ToralElement {
    fn one(index: usize, d: u32) -> Self {
        ToralElement {
            index,
            d,
            terms: BTreeMap::from([(0, RatFunc::one())]),
        }
    }

    fn mul_binomial(&self, a: (i64, RatFunc), b: (i64, RatFunc)) -> Self {
        let mut terms: BTreeMap<i64, RatFunc> = BTreeMap::new();
        for (&e, c) in &self.terms {
            for (de, dc) in [&a, &b] {
                let v = c * dc;
                let slot = terms.entry(e + de).or_insert_with(RatFunc::zero);
                *slot = &*slot + &v;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        ToralElement { terms, ..*self }
    }

    /// Multiplies by `K_i^e`.
    pub fn shift(&self, e: i64) -> Self {
        ToralElement {
            terms: self.terms.iter().map(|(k, c)| (k + e, c.clone())).collect(),
            ..*self
        }
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.terms.keys().copied().collect()
    }
}

/// `[K_i; c, t] = Π_{s=1}^t (q_i^{c−s+1} K_i − q_i^{−(c−s+1)} K_i^{-1}) / (q_i^s − q_i^{−s})`.
pub fn toral_element(index: usize, c: i64, t: u32, d: u32) -> ToralElement {
    let d = d as i64;
    let mut out = ToralElement::one(index, d as u32);
    for s in 1..=t as i64 {
        let den = RatFunc::from_laurent(&(LaurentPoly::q_pow(d * s) - LaurentPoly::q_pow(-d * s)))
            .inv()
            .expect("nonzero");
        let e = c - s + 1;
        let plus = &RatFunc::q_pow(d * e) * &den;
        let minus = -(&RatFunc::q_pow(-d * e) * &den);
        out = out.mul_binomial((1, plus), (-1, minus));
    }
    out
}

/// `K_i^{−⌊t/2⌋} [K_i; 0, t]`.
pub fn basis_toral(index: usize, t: u32, d: u32) -> ToralElement {
    toral_element(index, 0, t, d).shift(-i64::from(t / 2))
}

#[derive(Clone, Debug, Serialize)]
pub struct ToralRegularityReport {
    pub index: usize,
    pub d: u32,
    pub t_max: u32,
    pub orders: Vec<u64>,
    pub regular: bool,
    /// `(t, K-degree, ℓ)` of the first pole found.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_pole: Option<(u32, i64, u64)>,
}

pub fn toral_regularity_report(index: usize, t_max: u32, d: u32, orders: &[u64]) -> ToralRegularityReport {
    let mut first_pole = None;
    'outer: for t in 0..=t_max {
        let b = basis_toral(index, t, d);
        for (&deg, c) in &b.terms {
            for &l in orders {
                if !is_regular_at(c, l) {
                    first_pole = Some((t, deg, l));
                    break 'outer;
                }
            }
        }
    }
    ToralRegularityReport {
        index,
        d,
        t_max,
        orders: orders.to_vec(),
        regular: first_pole.is_none(),
        first_pole,
    }
}

/// Multiplicity vectors `(n_1, n_2, …)` with `Σ r·n_r = m`, as monomials
/// in symbols `1, 2, …`.
pub fn partitions(m: u32) -> Vec<Monomial> {
    fn go(rem: u32, max: u32, cur: &mut Vec<(u32, u32)>, out: &mut Vec<Monomial>) {
        if rem == 0 {
            out.push(Monomial::from_pairs(cur.iter().copied()));
            return;
        }
        for part in (1..=max.min(rem)).rev() {
            for mult in (1..=rem / part).rev() {
                cur.push((part, mult));
                go(rem - part * mult, part - 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), &mut out);
    out
}

fn eval_monomial<C: Ring>(m: &Monomial, vars: &[Poly<C>]) -> Poly<C> {
    m.pairs()
        .iter()
        .fold(Poly::one(), |acc, &(s, e)| &acc * &vars[s as usize].pow(e))
}

fn divided(m: &Monomial) -> BigRational {
    let f: BigInt = m
        .pairs()
        .iter()
        .map(|&(_, e)| (1..=e).map(BigInt::from).product::<BigInt>())
        .product();
    BigRational::new(BigInt::from(1), f)
}

/// Coordinates of `target` in the span of `basis`, by elimination over the
/// monomial coefficients. `None` if `target` is not in the span or the basis
/// is dependent.
pub fn solve_in_span<C: Field>(basis: &[Poly<C>], target: &Poly<C>) -> Option<Vec<C>> {
    let mut rows_idx: BTreeMap<Monomial, usize> = BTreeMap::new();
    for p in basis.iter().chain(std::iter::once(target)) {
        for (m, _) in p.terms() {
            let len = rows_idx.len();
            rows_idx.entry(m.clone()).or_insert(len);
        }
    }
    let nb = basis.len();
    let mut rows: Vec<Vec<C>> = vec![vec![C::zero(); nb + 1]; rows_idx.len()];
    for (j, p) in basis.iter().chain(std::iter::once(target)).enumerate() {
        for (m, c) in p.terms() {
            rows[rows_idx[m]][j] = c.clone();
        }
    }
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(nb);
    for col in 0..nb {
        let p = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(pivot_row, p);
        let inv = rows[pivot_row][col].inv()?;
        for x in rows[pivot_row].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for r in 0..rows.len() {
            if r != pivot_row && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for k in 0..=nb {
                    let v = rows[pivot_row][k].clone() * f.clone();
                    rows[r][k] = rows[r][k].clone() - v;
                }
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|r| !r[nb].is_zero()) {
        return None;
    }
    Some(pivots.iter().map(|&r| rows[r][nb].clone()).collect())
}

fn mat_mul<C: Ring>(a: &[Vec<C>], b: &[Vec<C>]) -> Vec<Vec<C>> {
    (0..a.len())
        .map(|i| {
            (0..b[0].len())
                .map(|j| (0..b.len()).fold(C::zero(), |acc, k| acc + a[i][k].clone() * b[k][j].clone()))
                .collect()
        })
        .collect()
}

fn is_identity<C: Ring>(m: &[Vec<C>]) -> bool {
    m.iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() }))
}

/// Transition data for one block of δ-degree `m·k`.
#[derive(Clone, Debug, Serialize)]
pub struct Block {
    pub m: u32,
    pub size: usize,
    /// Row `a` holds the coordinates of the `a`-th `Ė^{[k]}`-monomial in the
    /// divided powers of the `Ê_{(rkδ)}`.
    pub forward: Vec<Vec<RatFunc>>,
    /// Row `b` holds the coordinates of the `b`-th divided-power monomial in
    /// the `Ė^{[k]}`-monomials.
    pub backward: Vec<Vec<RatFunc>>,
    pub inverse_ok: bool,
    pub classical_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockTransitionReport {
    pub d: u32,
    pub k: u32,
    pub max_degree: u32,
    pub blocks: Vec<Block>,
    pub all_ok: bool,
}

/// For each `m` with `m·k ≤ max_degree`, expands the monomials
/// `Π_r (Ė^{[k]}_{[r]})^{n_r}` (with `Σ r n_r = m`) in the basis
/// `Π_r Ê_{(rkδ)}^{n_r} / n_r!`, expands that basis back, and checks the two
/// matrices are inverse. The forward matrix is compared at `q = 1` with the
/// expansion of `Λ^{⟨k⟩}`-monomials in the divided powers of `−ẽ_{rk}`.
pub fn block_transition_roundtrip(d: u32, k: u32, max_degree: u32) -> Result<BlockTransitionReport, PbwError> {
    let t = (max_degree / k) as usize;
    let edot = family_edot_bracket(d, k, t);
    let ehat = family_ehat(d, k as usize * t);
    let z: Vec<ImPoly> = (0..=t).map(|r| ehat[r * k as usize].clone()).collect();
    let lam = classical_lambda(k, t);
    let w: Vec<ClassicalPoly> = (0..=t)
        .map(|r| {
            if r == 0 {
                ClassicalPoly::one()
            } else {
                -&ClassicalPoly::var(r as u32 * k)
            }
        })
        .collect();

    let mut blocks = Vec::new();
    for m in 0..=t as u32 {
        let idx = partitions(m);
        let dp: Vec<ImPoly> = idx.iter().map(|p| eval_monomial(p, &z).scale(&divided(p))).collect();
        let em: Vec<ImPoly> = idx.iter().map(|p| eval_monomial(p, &edot)).collect();
        let forward: Vec<Vec<RatFunc>> = em
            .iter()
            .map(|e| solve_in_span(&dp, e))
            .collect::<Option<_>>()
            .ok_or(PbwError::Singular { m: m as usize })?;
        let backward: Vec<Vec<RatFunc>> = dp
            .iter()
            .map(|e| solve_in_span(&em, e))
            .collect::<Option<_>>()
            .ok_or(PbwError::Singular { m: m as usize })?;
        let inverse_ok = is_identity(&mat_mul(&forward, &backward)) && is_identity(&mat_mul(&backward, &forward));

        let cdp: Vec<ClassicalPoly> = idx.iter().map(|p| eval_monomial(p, &w).scale(&divided(p))).collect();
        let cem: Vec<ClassicalPoly> = idx.iter().map(|p| eval_monomial(p, &lam)).collect();
        let classical: Option<Vec<Vec<BigRational>>> = cem.iter().map(|e| solve_in_span(&cdp, e)).collect();
        let specialized: Option<Vec<Vec<BigRational>>> = forward
            .iter()
            .map(|row| row.iter().map(|x| x.specialize_q1().ok()).collect())
            .collect();
        let classical_ok = classical.is_some() && classical == specialized;
        blocks.push(Block {
            m,
            size: idx.len(),
            forward,
            backward,
            inverse_ok,
            classical_ok,
        });
    }
    let all_ok = blocks.iter().all(|b| b.inverse_ok && b.classical_ok);
    Ok(BlockTransitionReport {
        d,
        k,
        max_degree,
        blocks,
        all_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlaurent::parse_ratfunc;
    use crate::rootsys::{build_iota, cartan_affine, enumerate_ordered_roots, TypeLabel};

    #[test]
    fn weights() {
        let c = cartan_affine(TypeLabel::A, 1).unwrap();
        let iota = build_iota(&c, 3).unwrap();
        let order = enumerate_ordered_roots(&c, &iota, 3);
        assert_eq!(ExpVec::empty().weight(&c), vec![0, 0]);
        let v = ExpVec::ordered(
            &order,
            vec![
                ExpEntry {
                    root: Root::real(vec![2, 1]),
                    exp: 1,
                    normalization: Normalization::QDivided,
                },
                ExpEntry {
                    root: Root::real(vec![1, 0]),
                    exp: 1,
                    normalization: Normalization::QDivided,
                },
            ],
        )
        .unwrap();
        // 3δ − 2α_1 = 3α_0 + α_1
        assert_eq!(v.weight(&c), vec![3, 1]);
        assert_eq!(v.iter().next().unwrap().root, Root::real(vec![1, 0]));
        let im = ExpVec::ordered(
            &order,
            vec![ExpEntry {
                root: c.imaginary(2, 1),
                exp: 3,
                normalization: Normalization::PlainDivided,
            }],
        )
        .unwrap();
        assert_eq!(im.weight(&c), vec![6, 6]);
    }

    #[test]
    fn toral_small_cases() {
        assert_eq!(toral_element(1, 5, 0, 2).degrees(), vec![0]);
        let t1 = toral_element(1, 0, 1, 1);
        assert_eq!(t1.terms[&1], parse_ratfunc("1/(q - q^-1)").unwrap());
        assert_eq!(t1.terms[&-1], parse_ratfunc("-1/(q - q^-1)").unwrap());
        assert_eq!(basis_toral(1, 1, 1), t1);
        for t in 0..=8 {
            let e = toral_element(0, 3, t, 2);
            let expect: Vec<i64> = (0..=t as i64).map(|j| -(t as i64) + 2 * j).collect();
            assert_eq!(e.degrees(), expect, "t = {t}");
        }
    }

    #[test]
    fn toral_poles_follow_the_denominators() {
        // denominators Π_{s≤t} (q_i^s − q_i^{-s}) vanish at odd ℓ iff ℓ | d_i s
        for d in 1..=3 {
            assert!(toral_regularity_report(1, 4, d, &[5, 7]).regular);
            let rep = toral_regularity_report(1, 6, d, &[5, 7]);
            assert_eq!(rep.first_pole.map(|p| (p.0, p.2)), Some((5, 5)));
        }
        assert_eq!(toral_regularity_report(1, 6, 1, &[1]).first_pole, Some((1, -1, 1)));
        assert!(!toral_regularity_report(1, 1, 1, &[2]).regular);
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=6).map(|m| partitions(m).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11]);
    }

    #[test]
    fn first_block_is_minus_q_power() {
        let rep = block_transition_roundtrip(2, 3, 3).unwrap();
        assert_eq!(rep.blocks[1].forward, vec![vec![-RatFunc::q_pow(6)]]);
        assert_eq!(rep.blocks[1].backward, vec![vec![-RatFunc::q_pow(-6)]]);
        assert!(rep.blocks[0].forward[0][0].is_one());
        assert!(rep.all_ok);
    }

    #[test]
    fn small_roundtrips() {
        for d in 1..=2 {
            for k in 1..=2 {
                assert!(block_transition_roundtrip(d, k, 4).unwrap().all_ok);
            }
        }
    }
}
