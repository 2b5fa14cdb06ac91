use std::cmp::Ordering;
use std::collections::HashMap;

use serde::Serialize;

use super::{CartanData, IotaWord, Root};

/// Position of a positive root (with multiplicity) in the order `≼`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum OrderKey {
    /// `β_k`, `k ≥ 1`.
    Pos(i64),
    /// `(rδ, i)`.
    Im(i64, usize),
    /// `β_k`, `k ≤ 0`.
    NonPos(i64),
}

impl OrderKey {
    fn rank(&self) -> (u8, i64, i64) {
        match *self {
            OrderKey::Pos(k) => (0, k, 0),
            OrderKey::Im(r, i) => (1, -r, i as i64),
            OrderKey::NonPos(k) => (2, k, 0),
        }
    }
}

impl Ord for OrderKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl PartialOrd for OrderKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The positive roots with multiplicity up to a δ-level, listed in `≼`-order.
#[derive(Clone, Debug)]
pub struct OrderedRoots {
    pub level: i64,
    pub entries: Vec<(OrderKey, Root)>,
    index: HashMap<Root, OrderKey>,
}

impl OrderedRoots {
    pub fn key_of(&self, root: &Root) -> Option<OrderKey> {
        self.index.get(root).copied()
    }

    /// Compares two enumerated roots; `None` if either is not in the list.
    pub fn compare(&self, a: &Root, b: &Root) -> Option<Ordering> {
        Some(self.key_of(a)?.cmp(&self.key_of(b)?))
    }

    pub fn roots(&self) -> impl Iterator<Item = &Root> {
        self.entries.iter().map(|(_, r)| r)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Lists `β_1, β_2, …`, then `(rδ, i)` for `r = N, …, 1` and `i = 1, …, n`,
/// then `…, β_{−1}, β_0`, keeping roots of δ-level at most `N`.
pub fn enumerate_ordered_roots(data: &CartanData, iota: &IotaWord, level: i64) -> OrderedRoots {
    let lv = level.max(0) as usize;
    let mut entries = Vec::new();
    for (t, b) in iota.betas_pos(data, lv * iota.period_pos.len()).into_iter().enumerate() {
        if b[0] <= level {
            entries.push((OrderKey::Pos(t as i64 + 1), Root::real(b)));
        }
    }
    for r in (1..=level).rev() {
        for i in 1..=data.rank() {
            entries.push((OrderKey::Im(r, i), data.imaginary(r, i)));
        }
    }
    let mut tail: Vec<(OrderKey, Root)> = iota
        .betas_nonpos(data, lv * iota.period_nonpos.len())
        .into_iter()
        .enumerate()
        .filter(|(_, b)| b[0] < level)
        .map(|(j, b)| (OrderKey::NonPos(-(j as i64)), Root::real(b)))
        .collect();
    tail.reverse();
    entries.extend(tail);
    let index = entries.iter().map(|(k, r)| (r.clone(), *k)).collect();
    OrderedRoots { level, entries, index }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_iota, cartan_affine, TypeLabel};

    #[test]
    fn a1_order() {
        let c = cartan_affine(TypeLabel::A, 1).unwrap();
        let w = build_iota(&c, 2).unwrap();
        let o = enumerate_ordered_roots(&c, &w, 2);
        let keys: Vec<OrderKey> = o.entries.iter().map(|(k, _)| *k).collect();
        assert_eq!(
            keys,
            vec![
                OrderKey::Pos(1),
                OrderKey::Pos(2),
                OrderKey::Im(2, 1),
                OrderKey::Im(1, 1),
                OrderKey::NonPos(-1),
                OrderKey::NonPos(0),
            ]
        );
        let b1 = Root::real(vec![1, 0]);
        let b0 = Root::real(vec![0, 1]);
        assert_eq!(o.compare(&b1, &b0), Some(Ordering::Less));
        assert_eq!(o.compare(&c.imaginary(2, 1), &c.imaginary(1, 1)), Some(Ordering::Less));
        assert_eq!(o.compare(&c.imaginary(1, 1), &b0), Some(Ordering::Less));
    }

    #[test]
    fn imaginary_block_order() {
        assert!(OrderKey::Im(2, 3) < OrderKey::Im(1, 1));
        assert!(OrderKey::Im(1, 1) < OrderKey::Im(1, 2));
        assert!(OrderKey::Pos(100) < OrderKey::Im(9, 1));
        assert!(OrderKey::NonPos(-5) < OrderKey::NonPos(0));
    }
}
