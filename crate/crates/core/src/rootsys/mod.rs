//! Cartan data for the untwisted affine types, the invariant form, Weyl
//! reflections, the ι-word and the convex order on positive roots.
//!
//! Roots are integer vectors over `(α_0, …, α_n)`. Vectors of length `n + 2`
//! carry an extra `α_∞` coordinate, used only by [`CartanData::bilinear`].

mod cartan;
mod iota;
mod order;

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qlaurent::LaurentPoly;

pub use cartan::{finite_cartan, CartanType, TypeLabel};
pub use iota::{build_iota, default_translation, reduced_word_of_translation, validate_iota, IotaWord};
pub use order::{enumerate_ordered_roots, OrderKey, OrderedRoots};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("invalid affine type {label} with rank {rank}")]
    InvalidType { label: String, rank: usize },
    #[error("index {0} is out of range")]
    BadIndex(usize),
    #[error("iota word rejected at k = {k}: {message}")]
    IotaValidation { k: i64, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootKind {
    Real,
    Imaginary,
}

/// A root in the simple-root basis. Imaginary roots `rδ` carry a
/// multiplicity index in `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    pub coords: Vec<i64>,
    pub kind: RootKind,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mult_index: Option<usize>,
}

impl Root {
    pub fn real(coords: Vec<i64>) -> Self {
        Root {
            coords,
            kind: RootKind::Real,
            mult_index: None,
        }
    }

    /// The δ-level: for `rδ ± α` with `α` finite this is `r`.
    pub fn level(&self) -> i64 {
        self.coords[0]
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0) && self.coords.iter().any(|&c| c > 0)
    }
}

/// Affine Cartan data. Index 0 is the affine node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanData {
    pub cartan_type: CartanType,
    /// Affine Cartan matrix, `(n+1) × (n+1)`.
    pub a: Vec<Vec<i64>>,
    /// Symmetrizers `d_i = (α_i|α_i)/2`, short roots at 1.
    pub d: Vec<i64>,
    /// Sign function on `I_0`; `o[i - 1]` is `o(i)`.
    pub o: Vec<i8>,
    /// Coefficients of `δ` over `α_0, …, α_n`.
    pub marks: Vec<i64>,
    /// The highest root `θ`, as an affine vector with zero `α_0` coordinate.
    pub theta: Vec<i64>,
    finite_positive: Vec<Vec<i64>>,
}

/// Builds the affine Cartan data of the given type and rank.
pub fn cartan_affine(label: TypeLabel, rank: usize) -> Result<CartanData, RootError> {
    CartanData::new(CartanType::new(label, rank)?)
}

fn finite_orbit(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(mu) = queue.pop_front() {
        for i in 0..n {
            let c: i64 = (0..n).map(|j| a[i][j] * mu[j]).sum();
            if c == 0 {
                continue;
            }
            let mut nu = mu.clone();
            nu[i] -= c;
            if seen.insert(nu.clone()) {
                queue.push_back(nu);
            }
        }
    }
    let mut pos: Vec<Vec<i64>> = seen.into_iter().filter(|v| v.iter().all(|&c| c >= 0)).collect();
    pos.sort_by(|x, y| {
        let (hx, hy) = (x.iter().sum::<i64>(), y.iter().sum::<i64>());
        hx.cmp(&hy).then_with(|| y.cmp(x))
    });
    pos
}

impl CartanData {
    pub fn new(cartan_type: CartanType) -> Result<Self, RootError> {
        let n = cartan_type.rank;
        let af = finite_cartan(cartan_type.label, n);
        let df = cartan::symmetrizer(&af);
        let fin_pos = finite_orbit(&af);
        let theta_f = fin_pos.last().expect("nonempty root system").clone();
        let form_f = |x: &[i64], y: &[i64]| -> i64 {
            let mut s = 0;
            for i in 0..n {
                for j in 0..n {
                    s += x[i] * df[i] * af[i][j] * y[j];
                }
            }
            s
        };
        let tt = form_f(&theta_f, &theta_f);
        let mut a = vec![vec![0i64; n + 1]; n + 1];
        a[0][0] = 2;
        for j in 1..=n {
            let mut e = vec![0i64; n];
            e[j - 1] = 1;
            let te = form_f(&theta_f, &e);
            a[0][j] = -2 * te / tt;
            a[j][0] = -te / df[j - 1];
            for i in 1..=n {
                a[i][j] = af[i - 1][j - 1];
            }
        }
        let mut d = vec![tt / 2];
        d.extend(&df);
        let o = cartan::two_colouring(&af, 0);
        let mut marks = vec![1];
        marks.extend(&theta_f);
        let lift = |v: &Vec<i64>| {
            let mut w = vec![0];
            w.extend(v);
            w
        };
        Ok(CartanData {
            cartan_type,
            a,
            d,
            o,
            marks,
            theta: lift(&theta_f),
            finite_positive: fin_pos.iter().map(lift).collect(),
        })
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    /// Size of the affine index set `I = {0, …, n}`.
    pub fn size(&self) -> usize {
        self.cartan_type.rank + 1
    }

    /// `o(i)` for `i ∈ I_0`.
    pub fn o_sign(&self, i: usize) -> i8 {
        self.o[i - 1]
    }

    /// The finite Cartan block `(a_ij)_{i,j ∈ I_0}`.
    pub fn finite_matrix(&self) -> Vec<Vec<i64>> {
        self.a[1..].iter().map(|row| row[1..].to_vec()).collect()
    }

    /// `(α_i|α_j) = d_i a_ij`.
    pub fn form_entry(&self, i: usize, j: usize) -> i64 {
        self.d[i] * self.a[i][j]
    }

    /// The invariant form. Either argument may carry an `α_∞` coordinate in
    /// position `n + 1`; `(α_∞|α_∞) = 0`, `(α_∞|α_i) = 0` for `i ≠ 0` and
    /// `(α_∞|α_0) = 1`, so that `(α_∞|δ) = 1`.
    pub fn bilinear(&self, mu: &[i64], nu: &[i64]) -> i64 {
        let m = self.size();
        assert!(mu.len() == m || mu.len() == m + 1, "bad vector length");
        assert!(nu.len() == m || nu.len() == m + 1, "bad vector length");
        let mut s = 0;
        for i in 0..m {
            if mu[i] == 0 {
                continue;
            }
            for j in 0..m {
                s += mu[i] * self.form_entry(i, j) * nu[j];
            }
        }
        let inf = |v: &[i64]| v.get(m).copied().unwrap_or(0);
        s + inf(mu) * nu[0] + mu[0] * inf(nu)
    }

    pub fn simple_root(&self, i: usize) -> Vec<i64> {
        let mut e = vec![0i64; self.size()];
        e[i] = 1;
        e
    }

    /// `⟨μ, α_i^∨⟩ = Σ_j a_ij μ_j`.
    pub fn coroot_pairing(&self, i: usize, mu: &[i64]) -> i64 {
        (0..self.size()).map(|j| self.a[i][j] * mu[j]).sum()
    }

    /// `s_i(μ) = μ − ⟨μ, α_i^∨⟩ α_i` on the root lattice.
    pub fn reflect(&self, i: usize, mu: &[i64]) -> Vec<i64> {
        let c = self.coroot_pairing(i, mu);
        let mut out = mu.to_vec();
        out[i] -= c;
        out
    }

    /// Positive roots of the finite root system, as affine vectors with zero
    /// `α_0` coordinate, sorted by height.
    pub fn finite_positive_roots(&self) -> &[Vec<i64>] {
        &self.finite_positive
    }

    pub fn is_real_root(&self, v: &[i64]) -> bool {
        let k = v[0];
        let mut fin = v.to_vec();
        for (x, m) in fin.iter_mut().zip(&self.marks) {
            *x -= k * m;
        }
        let neg: Vec<i64> = fin.iter().map(|x| -x).collect();
        self.finite_positive.iter().any(|r| *r == fin || *r == neg)
    }

    /// `q_α = q^{(α|α)/2}` for real roots and `q^{d_i}` for `(rδ, i)`.
    pub fn q_alpha(&self, root: &Root) -> LaurentPoly {
        match root.kind {
            RootKind::Real => LaurentPoly::q_pow(self.bilinear(&root.coords, &root.coords) / 2),
            RootKind::Imaginary => {
                LaurentPoly::q_pow(self.d[root.mult_index.expect("imaginary root carries an index")])
            }
        }
    }

    /// `d_α = (α|α)/2` for a real root.
    pub fn d_alpha(&self, coords: &[i64]) -> i64 {
        self.bilinear(coords, coords) / 2
    }

    /// The imaginary root `(rδ, i)`.
    pub fn imaginary(&self, r: i64, i: usize) -> Root {
        Root {
            coords: self.marks.iter().map(|m| r * m).collect(),
            kind: RootKind::Imaginary,
            mult_index: Some(i),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "type": self.cartan_type.to_string(),
            "rank": self.rank(),
            "matrix": self.a,
            "d": self.d,
            "o": self.o,
            "delta": self.marks,
            "theta": self.theta,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_types() -> Vec<CartanData> {
        [
            "A1", "A2", "A3", "A4", "B3", "B4", "C2", "C3", "D4", "D5", "E6", "E7", "E8", "F4", "G2",
        ]
        .iter()
        .map(|s| CartanData::new(s.parse().unwrap()).unwrap())
        .collect()
    }

    #[test]
    fn affine_a1_and_a2() {
        let c = cartan_affine(TypeLabel::A, 1).unwrap();
        assert_eq!(c.a, vec![vec![2, -2], vec![-2, 2]]);
        assert_eq!(c.d, vec![1, 1]);
        let c = cartan_affine(TypeLabel::A, 2).unwrap();
        assert_eq!(c.a, vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]);
        assert_eq!(c.d, vec![1, 1, 1]);
    }

    #[test]
    fn g2_symmetrizer() {
        let c = cartan_affine(TypeLabel::G2, 2).unwrap();
        assert_eq!(c.d, vec![3, 1, 3]);
        assert_eq!(c.theta, vec![0, 3, 2]);
    }

    #[test]
    fn invalid_types() {
        assert!(cartan_affine(TypeLabel::B, 2).is_err());
        assert!(cartan_affine(TypeLabel::D, 3).is_err());
        assert!(cartan_affine(TypeLabel::E6, 7).is_err());
        assert!("X3".parse::<CartanType>().is_err());
        assert!("A0".parse::<CartanType>().is_err());
    }

    #[test]
    fn structural_invariants() {
        for c in all_types() {
            let m = c.size();
            for i in 0..m {
                assert_eq!(c.a[i][i], 2);
                for j in 0..m {
                    if i != j {
                        assert!(c.a[i][j] <= 0);
                        assert_eq!(c.a[i][j] == 0, c.a[j][i] == 0);
                    }
                    assert_eq!(c.form_entry(i, j), c.form_entry(j, i), "{}", c.cartan_type);
                }
                assert_eq!(c.coroot_pairing(i, &c.marks), 0, "{}", c.cartan_type);
            }
            assert_eq!(c.d[0], c.d_alpha(&c.theta));
            if c.cartan_type.label.is_simply_laced() {
                assert_eq!(c.d[0], 1);
            }
            assert_eq!(*c.d[1..].iter().min().unwrap(), 1);
            let fa = c.finite_matrix();
            for i in 0..c.rank() {
                for j in 0..c.rank() {
                    if fa[i][j] < 0 {
                        assert_eq!(c.o[i] * c.o[j], -1);
                    }
                }
            }
            assert_eq!(c.o[0], 1);
        }
    }

    #[test]
    fn root_counts() {
        let expect = [
            ("A1", 1),
            ("A4", 10),
            ("B3", 9),
            ("C3", 9),
            ("D4", 12),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
            ("F4", 24),
            ("G2", 6),
        ];
        for (t, count) in expect {
            let c = CartanData::new(t.parse().unwrap()).unwrap();
            assert_eq!(c.finite_positive_roots().len(), count, "{t}");
        }
    }

    #[test]
    fn highest_roots() {
        let e8 = cartan_affine(TypeLabel::E8, 8).unwrap();
        assert_eq!(e8.marks, vec![1, 2, 3, 4, 6, 5, 4, 3, 2]);
        let f4 = cartan_affine(TypeLabel::F4, 4).unwrap();
        assert_eq!(f4.marks, vec![1, 2, 3, 4, 2]);
        let b3 = cartan_affine(TypeLabel::B, 3).unwrap();
        assert_eq!(b3.marks, vec![1, 1, 2, 2]);
        let c3 = cartan_affine(TypeLabel::C, 3).unwrap();
        assert_eq!(c3.marks, vec![1, 2, 2, 1]);
    }

    #[test]
    fn signs_on_paths() {
        assert_eq!(cartan_affine(TypeLabel::A, 1).unwrap().o, vec![1]);
        assert_eq!(cartan_affine(TypeLabel::A, 2).unwrap().o, vec![1, -1]);
        assert_eq!(cartan_affine(TypeLabel::A, 3).unwrap().o, vec![1, -1, 1]);
    }

    #[test]
    fn form_values() {
        let c = cartan_affine(TypeLabel::C, 3).unwrap();
        for i in 0..c.size() {
            let e = c.simple_root(i);
            assert_eq!(c.bilinear(&e, &e), 2 * c.d[i]);
        }
        let mut inf = vec![0; c.size() + 1];
        inf[c.size()] = 1;
        let mut delta = c.marks.clone();
        assert_eq!(c.bilinear(&inf, &delta), 1);
        assert_eq!(c.bilinear(&delta, &delta), 0);
        assert_eq!(c.bilinear(&inf, &inf), 0);
        delta.push(0);
        assert_eq!(c.bilinear(&delta, &inf), 1);
        for i in 1..c.size() {
            assert_eq!(c.bilinear(&inf, &c.simple_root(i)), 0);
        }
    }

    #[test]
    fn reflections() {
        let c = cartan_affine(TypeLabel::A, 1).unwrap();
        assert_eq!(c.reflect(0, &[0, 1]), vec![2, 1]);
        assert_eq!(c.reflect(1, &[0, 1]), vec![0, -1]);
        assert_eq!(c.reflect(0, &c.marks), c.marks);
    }

    #[test]
    fn q_alpha_values() {
        let c = cartan_affine(TypeLabel::A, 1).unwrap();
        assert_eq!(c.q_alpha(&Root::real(vec![2, 1])), LaurentPoly::q());
        let g = cartan_affine(TypeLabel::G2, 2).unwrap();
        assert_eq!(g.q_alpha(&Root::real(g.simple_root(2))), LaurentPoly::q_pow(3));
        assert_eq!(g.q_alpha(&g.imaginary(4, 2)), LaurentPoly::q_pow(3));
        assert_eq!(g.q_alpha(&g.imaginary(1, 1)), LaurentPoly::q());
    }

    #[test]
    fn root_json() {
        let c = cartan_affine(TypeLabel::A, 2).unwrap();
        let v = serde_json::to_value(c.imaginary(2, 1)).unwrap();
        assert_eq!(v, serde_json::json!({"coords": [2, 2, 2], "kind": "imaginary", "mult_index": 1}));
        let v = serde_json::to_value(Root::real(vec![1, 0, 1])).unwrap();
        assert_eq!(v, serde_json::json!({"coords": [1, 0, 1], "kind": "real"}));
        let back: Root = serde_json::from_value(v).unwrap();
        assert_eq!(back, Root::real(vec![1, 0, 1]));
    }
}
