use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::RootError;

/// Untwisted affine types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl TypeLabel {
    pub const ALL: [TypeLabel; 9] = [
        TypeLabel::A,
        TypeLabel::B,
        TypeLabel::C,
        TypeLabel::D,
        TypeLabel::E6,
        TypeLabel::E7,
        TypeLabel::E8,
        TypeLabel::F4,
        TypeLabel::G2,
    ];

    /// The series letter, e.g. `'E'` for `E6`.
    pub fn letter(self) -> char {
        match self {
            TypeLabel::A => 'A',
            TypeLabel::B => 'B',
            TypeLabel::C => 'C',
            TypeLabel::D => 'D',
            TypeLabel::E6 | TypeLabel::E7 | TypeLabel::E8 => 'E',
            TypeLabel::F4 => 'F',
            TypeLabel::G2 => 'G',
        }
    }

    /// The forced rank of an exceptional type.
    pub fn fixed_rank(self) -> Option<usize> {
        match self {
            TypeLabel::E6 => Some(6),
            TypeLabel::E7 => Some(7),
            TypeLabel::E8 => Some(8),
            TypeLabel::F4 => Some(4),
            TypeLabel::G2 => Some(2),
            _ => None,
        }
    }

    fn min_rank(self) -> usize {
        match self {
            TypeLabel::A => 1,
            TypeLabel::B => 3,
            TypeLabel::C => 2,
            TypeLabel::D => 4,
            other => other.fixed_rank().unwrap(),
        }
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(
            self,
            TypeLabel::A | TypeLabel::D | TypeLabel::E6 | TypeLabel::E7 | TypeLabel::E8
        )
    }

    /// Parses a letter plus rank, e.g. `("E", 6)` or `("A", 3)`.
    pub fn from_parts(letter: &str, rank: usize) -> Result<TypeLabel, RootError> {
        let t = match (letter.to_ascii_uppercase().as_str(), rank) {
            ("A", _) => TypeLabel::A,
            ("B", _) => TypeLabel::B,
            ("C", _) => TypeLabel::C,
            ("D", _) => TypeLabel::D,
            ("E", 6) | ("E6", _) => TypeLabel::E6,
            ("E", 7) | ("E7", _) => TypeLabel::E7,
            ("E", 8) | ("E8", _) => TypeLabel::E8,
            ("F", 4) | ("F4", _) => TypeLabel::F4,
            ("G", 2) | ("G2", _) => TypeLabel::G2,
            _ => {
                return Err(RootError::InvalidType {
                    label: letter.to_string(),
                    rank,
                })
            }
        };
        Ok(t)
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TypeLabel::E6 => "E6",
            TypeLabel::E7 => "E7",
            TypeLabel::E8 => "E8",
            TypeLabel::F4 => "F4",
            TypeLabel::G2 => "G2",
            other => return write!(f, "{}", other.letter()),
        };
        f.write_str(s)
    }
}

/// A type with its rank, written `A3`, `E6`, `G2`, ...
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CartanType {
    pub label: TypeLabel,
    pub rank: usize,
}

impl CartanType {
    pub fn new(label: TypeLabel, rank: usize) -> Result<Self, RootError> {
        let bad = || RootError::InvalidType {
            label: label.to_string(),
            rank,
        };
        if let Some(r) = label.fixed_rank() {
            if r != rank {
                return Err(bad());
            }
        } else if rank < label.min_rank() {
            return Err(bad());
        }
        Ok(CartanType { label, rank })
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.label.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = RootError;

    fn from_str(s: &str) -> Result<Self, RootError> {
        let s = s.trim();
        let split = s
            .find(|c: char| c.is_ascii_digit())
            .ok_or_else(|| RootError::InvalidType {
                label: s.to_string(),
                rank: 0,
            })?;
        let (letter, digits) = s.split_at(split);
        let rank: usize = digits.parse().map_err(|_| RootError::InvalidType {
            label: s.to_string(),
            rank: 0,
        })?;
        if letter.len() != 1 {
            return Err(RootError::InvalidType {
                label: s.to_string(),
                rank,
            });
        }
        CartanType::new(TypeLabel::from_parts(letter, rank)?, rank)
    }
}

/// Finite Cartan matrix in Bourbaki numbering, as 0-based `n × n`.
/// Entry `[i][j]` is `2(α_i|α_j)/(α_i|α_i)`.
pub fn finite_cartan(label: TypeLabel, n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, a_ij: i64, a_ji: i64| {
        a[i - 1][j - 1] = a_ij;
        a[j - 1][i - 1] = a_ji;
    };
    match label {
        TypeLabel::A => (1..n).for_each(|i| link(i, i + 1, -1, -1)),
        TypeLabel::B => {
            (1..n - 1).for_each(|i| link(i, i + 1, -1, -1));
            // α_n short
            link(n - 1, n, -1, -2);
        }
        TypeLabel::C => {
            (1..n - 1).for_each(|i| link(i, i + 1, -1, -1));
            // α_n long
            link(n - 1, n, -2, -1);
        }
        TypeLabel::D => {
            (1..n - 1).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 2, n, -1, -1);
        }
        TypeLabel::E6 | TypeLabel::E7 | TypeLabel::E8 => {
            link(1, 3, -1, -1);
            link(2, 4, -1, -1);
            (3..n).for_each(|i| link(i, i + 1, -1, -1));
        }
        TypeLabel::F4 => {
            link(1, 2, -1, -1);
            link(2, 3, -1, -2);
            link(3, 4, -1, -1);
        }
        TypeLabel::G2 => link(1, 2, -3, -1),
    }
    a
}

/// Symmetrizer of a connected Cartan matrix with the short roots at 1.
pub(crate) fn symmetrizer(a: &[Vec<i64>]) -> Vec<i64> {
    let n = a.len();
    // d_j / d_i = a_ij / a_ji along edges; track as fractions over a common scale
    let mut num = vec![0i64; n];
    let mut den = vec![1i64; n];
    num[0] = 1;
    let mut queue = VecDeque::from([0usize]);
    let mut seen = vec![false; n];
    seen[0] = true;
    while let Some(i) = queue.pop_front() {
        for j in 0..n {
            if i != j && a[i][j] != 0 && !seen[j] {
                seen[j] = true;
                let (p, r) = (num[i] * a[i][j], den[i] * a[j][i]);
                let g = p.gcd(&r);
                num[j] = p / g;
                den[j] = r / g;
                if den[j] < 0 {
                    num[j] = -num[j];
                    den[j] = -den[j];
                }
                queue.push_back(j);
            }
        }
    }
    let l = den.iter().fold(1i64, |acc, &x| acc.lcm(&x));
    let ints: Vec<i64> = (0..n).map(|i| num[i] * (l / den[i])).collect();
    let g = ints.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    ints.into_iter().map(|x| x / g).collect()
}

/// Proper 2-colouring of a Dynkin tree with the given node fixed at `+1`.
pub(crate) fn two_colouring(a: &[Vec<i64>], start: usize) -> Vec<i8> {
    let n = a.len();
    let mut o = vec![0i8; n];
    o[start] = 1;
    let mut queue = VecDeque::from([start]);
    while let Some(i) = queue.pop_front() {
        for j in 0..n {
            if i != j && a[i][j] < 0 && o[j] == 0 {
                o[j] = -o[i];
                queue.push_back(j);
            }
        }
    }
    o
}
