use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest ambient rank supported by the bitmask representation.
pub const MAX_RANK: usize = 16;

/// A sorted, duplicate-free index set `{i_1 < ... < i_r}` naming the
/// monomial `e_{i_1} ∧ ... ∧ e_{i_r}`. Bit `i` stands for the 1-based index
/// `i + 1`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(u32);

impl Monomial {
    pub const UNIT: Monomial = Monomial(0);

    pub fn from_bits(bits: u32) -> Self {
        Monomial(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Builds a monomial from 1-based indices, which must be strictly
    /// ascending and at most `d`.
    pub fn from_indices(indices: &[usize], d: usize) -> Result<Self> {
        let mut bits = 0u32;
        let mut last = 0usize;
        for &i in indices {
            if i == 0 || i > d {
                return Err(Error::Spec(format!("index {i} outside 1..={d}")));
            }
            if i <= last {
                return Err(Error::Spec(format!(
                    "index set {indices:?} is not strictly ascending"
                )));
            }
            last = i;
            bits |= 1 << (i - 1);
        }
        Ok(Monomial(bits))
    }

    /// Builds a monomial from 0-based positions in any order, ignoring
    /// duplicates.
    pub fn from_positions<I: IntoIterator<Item = usize>>(positions: I) -> Self {
        Monomial(positions.into_iter().fold(0, |acc, p| acc | (1 << p)))
    }

    /// The full index set `{1, ..., d}`.
    pub fn top(d: usize) -> Self {
        Monomial(((1u64 << d) - 1) as u32)
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    /// 0-based positions in ascending order.
    pub fn positions(self) -> Vec<usize> {
        (0..32).filter(|&p| self.0 & (1 << p) != 0).collect()
    }

    /// 1-based indices in ascending order.
    pub fn indices(self) -> Vec<usize> {
        self.positions().into_iter().map(|p| p + 1).collect()
    }

    pub fn complement(self, d: usize) -> Self {
        Monomial(Self::top(d).0 & !self.0)
    }

    pub fn is_disjoint(self, other: Monomial) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: Monomial) -> Self {
        Monomial(self.0 | other.0)
    }

    pub fn fits(self, d: usize) -> bool {
        self.0 & !Self::top(d).0 == 0
    }

    /// `Some(±1)` with `e_I ∧ e_J = sign · e_{I∪J}`, or `None` if the sets
    /// meet. The sign is that of the permutation sorting the concatenation
    /// `I, J`, i.e. the parity of pairs `i ∈ I, j ∈ J` with `i > j`.
    pub fn wedge_sign(self, other: Monomial) -> Option<i32> {
        if !self.is_disjoint(other) {
            return None;
        }
        let inversions: u32 = other
            .positions()
            .into_iter()
            .map(|j| (self.0 >> (j + 1)).count_ones())
            .sum();
        Some(if inversions.is_multiple_of(2) { 1 } else { -1 })
    }
}

/// Grade first, then lexicographic on the ascending index lists.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade()
            .cmp(&other.grade())
            .then_with(|| self.positions().cmp(&other.positions()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices().iter().map(ToString::to_string).collect();
        write!(f, "[{}]", idx.join(","))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{self}")
    }
}

/// The `2^d` monomials of `Λ*(Z^d)` in canonical order.
pub fn monomial_basis(d: usize) -> Vec<Monomial> {
    assert!(d <= MAX_RANK, "rank {d} exceeds {MAX_RANK}");
    let mut all: Vec<Monomial> = (0..1u32 << d).map(Monomial).collect();
    all.sort();
    all
}
