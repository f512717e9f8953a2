//! Finite preorders and their upsets.
//!
//! World sets are bitmasks over at most [`MAX_WORLDS`] worlds, so every
//! Boolean operation on sets is a single machine instruction.

use std::fmt;
use std::ops::{BitAnd, BitOr, Not};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub const MAX_WORLDS: usize = 20;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WorldSet(u32);

impl WorldSet {
    pub const EMPTY: WorldSet = WorldSet(0);

    pub fn from_bits(bits: u32) -> WorldSet {
        WorldSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn full(n: usize) -> WorldSet {
        if n >= 32 {
            WorldSet(u32::MAX)
        } else {
            WorldSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(x: usize) -> WorldSet {
        WorldSet(1 << x)
    }

    pub fn from_worlds<I: IntoIterator<Item = usize>>(worlds: I) -> WorldSet {
        worlds.into_iter().fold(WorldSet::EMPTY, |s, x| s.with(x))
    }

    pub fn with(self, x: usize) -> WorldSet {
        WorldSet(self.0 | (1 << x))
    }

    pub fn contains(self, x: usize) -> bool {
        self.0 >> x & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: WorldSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn difference(self, other: WorldSet) -> WorldSet {
        WorldSet(self.0 & !other.0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let x = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(x)
        })
    }

    /// Comma-joined ascending world list; the empty set is `""`.
    pub fn key(self) -> String {
        let parts: Vec<String> = self.iter().map(|x| x.to_string()).collect();
        parts.join(",")
    }

    pub fn from_key(key: &str) -> Option<WorldSet> {
        if key.is_empty() {
            return Some(WorldSet::EMPTY);
        }
        let mut s = WorldSet::EMPTY;
        for part in key.split(',') {
            let x: usize = part.trim().parse().ok()?;
            if x >= MAX_WORLDS {
                return None;
            }
            s = s.with(x);
        }
        Some(s)
    }
}

impl BitOr for WorldSet {
    type Output = WorldSet;
    fn bitor(self, rhs: WorldSet) -> WorldSet {
        WorldSet(self.0 | rhs.0)
    }
}

impl BitAnd for WorldSet {
    type Output = WorldSet;
    fn bitand(self, rhs: WorldSet) -> WorldSet {
        WorldSet(self.0 & rhs.0)
    }
}

/// Complement relative to all 32 bit positions; mask with [`WorldSet::full`].
impl Not for WorldSet {
    type Output = WorldSet;
    fn not(self) -> WorldSet {
        WorldSet(!self.0)
    }
}

impl fmt::Display for WorldSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.key())
    }
}

impl Serialize for WorldSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for WorldSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let worlds = Vec::<usize>::deserialize(d)?;
        if let Some(&x) = worlds.iter().find(|&&x| x >= MAX_WORLDS) {
            return Err(serde::de::Error::custom(format!(
                "world {x} exceeds the {MAX_WORLDS}-world cap"
            )));
        }
        Ok(WorldSet::from_worlds(worlds))
    }
}

/// Upsets share the representation of arbitrary world sets; constructors that
/// hand out an `Upset` guarantee upward closure for the order they came from.
pub type Upset = WorldSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("a frame needs at least one world")]
    Empty,
    #[error("{n} worlds exceed the cap of {MAX_WORLDS}")]
    TooManyWorlds { n: usize },
    #[error("world {world} out of range for {n} worlds")]
    OutOfRange { world: usize, n: usize },
    #[error("order is not reflexive at world {0}")]
    NotReflexive(usize),
    #[error("order is not transitive: {0} <= {1} <= {2} but not {0} <= {2}")]
    NotTransitive(usize, usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinitePreorder {
    up: Vec<WorldSet>,
    down: Vec<WorldSet>,
}

fn check_size(n: usize) -> Result<(), OrderError> {
    if n == 0 {
        Err(OrderError::Empty)
    } else if n > MAX_WORLDS {
        Err(OrderError::TooManyWorlds { n })
    } else {
        Ok(())
    }
}

impl FinitePreorder {
    /// The reflexive-transitive closure of `pairs` on worlds `0..n`.
    pub fn generated(n: usize, pairs: &[(usize, usize)]) -> Result<FinitePreorder, OrderError> {
        check_size(n)?;
        let mut up: Vec<WorldSet> = (0..n).map(WorldSet::singleton).collect();
        for &(x, y) in pairs {
            for w in [x, y] {
                if w >= n {
                    return Err(OrderError::OutOfRange { world: w, n });
                }
            }
            up[x] = up[x].with(y);
        }
        for k in 0..n {
            for x in 0..n {
                if up[x].contains(k) {
                    up[x] = up[x] | up[k];
                }
            }
        }
        Ok(Self::from_up_sets(up))
    }

    /// Build from an explicit matrix, which must already be reflexive and transitive.
    pub fn from_matrix(leq: &[Vec<bool>]) -> Result<FinitePreorder, OrderError> {
        let n = leq.len();
        check_size(n)?;
        let mut up = vec![WorldSet::EMPTY; n];
        for (x, row) in leq.iter().enumerate() {
            if row.len() != n {
                return Err(OrderError::OutOfRange { world: row.len(), n });
            }
            for (y, &b) in row.iter().enumerate() {
                if b {
                    up[x] = up[x].with(y);
                }
            }
        }
        for x in 0..n {
            if !up[x].contains(x) {
                return Err(OrderError::NotReflexive(x));
            }
            for y in up[x].iter() {
                if let Some(z) = up[y].difference(up[x]).min() {
                    return Err(OrderError::NotTransitive(x, y, z));
                }
            }
        }
        Ok(Self::from_up_sets(up))
    }

    fn from_up_sets(up: Vec<WorldSet>) -> FinitePreorder {
        let n = up.len();
        let mut down = vec![WorldSet::EMPTY; n];
        for (x, ux) in up.iter().enumerate() {
            for y in ux.iter() {
                down[y] = down[y].with(x);
            }
        }
        FinitePreorder { up, down }
    }

    pub fn discrete(n: usize) -> Result<FinitePreorder, OrderError> {
        Self::generated(n, &[])
    }

    pub fn chain(n: usize) -> Result<FinitePreorder, OrderError> {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::generated(n, &pairs)
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn worlds(&self) -> WorldSet {
        WorldSet::full(self.len())
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    /// `↑x`
    pub fn up(&self, x: usize) -> WorldSet {
        self.up[x]
    }

    /// `↓x`
    pub fn down(&self, x: usize) -> WorldSet {
        self.down[x]
    }

    /// All pairs `(x, y)` with `x <= y`, in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|x| self.up[x].iter().map(move |y| (x, y)))
            .collect()
    }

    pub fn is_poset(&self) -> bool {
        (0..self.len()).all(|x| (self.up[x] & self.down[x]) == WorldSet::singleton(x))
    }

    pub fn up_closure(&self, s: WorldSet) -> WorldSet {
        s.iter().fold(WorldSet::EMPTY, |acc, x| acc | self.up[x])
    }

    pub fn down_closure(&self, s: WorldSet) -> WorldSet {
        s.iter().fold(WorldSet::EMPTY, |acc, x| acc | self.down[x])
    }

    pub fn is_upset(&self, s: WorldSet) -> bool {
        s.is_subset(self.worlds()) && s.iter().all(|x| self.up[x].is_subset(s))
    }

    /// Every upset, by scanning all `2^n` subsets in ascending integer order.
    pub fn all_upsets(&self) -> Vec<Upset> {
        let full = self.worlds().bits();
        (0..=full)
            .map(WorldSet::from_bits)
            .filter(|&s| self.is_upset(s))
            .collect()
    }

    /// `a -> b = {x | ↑x ∩ a ⊆ b}`.
    pub fn heyting_imp(&self, a: Upset, b: Upset) -> Upset {
        let out = (0..self.len())
            .filter(|&x| (self.up[x] & a).is_subset(b))
            .fold(WorldSet::EMPTY, WorldSet::with);
        debug_assert_eq!(out, self.heyting_imp_by_complement(a, b));
        out
    }

    /// `a -> b = X \ ↓(a \ b)`.
    pub fn heyting_imp_by_complement(&self, a: Upset, b: Upset) -> Upset {
        self.worlds()
            .difference(self.down_closure(a.difference(b)))
    }

    /// `¬a = a -> ∅`.
    pub fn pseudo_complement(&self, a: Upset) -> Upset {
        self.heyting_imp(a, WorldSet::EMPTY)
    }
}
