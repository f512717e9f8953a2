//! Exhaustive enumeration of small frames.
//!
//! Frames are addressed by a global index so that searches can run in
//! parallel and still report the first hit in a fixed order: worlds
//! ascending, then preorder (by the bitmask of its off-diagonal pairs), then
//! admissible family, then the relation assignment read as a big-endian
//! integer. The relation of the least admissible upset is the most
//! significant chunk; inside a relation the pair `(0, 0)` is the most
//! significant bit and pairs follow in row-major order.

use thiserror::Error;

use crate::frames::{GeneralFrame, Relation};
use crate::order::{FinitePreorder, Upset, WorldSet};

/// Largest enumeration we are willing to walk.
pub const MAX_ENUMERATION: u128 = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("exhaustive enumeration up to {max_worlds} worlds needs {count} candidates, more than {cap}")]
pub struct Infeasible {
    pub max_worlds: usize,
    pub count: u128,
    pub cap: u128,
}

/// All preorders on `n` worlds, ordered by the bitmask of their off-diagonal pairs.
pub fn preorders(n: usize) -> Vec<FinitePreorder> {
    let off: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << off.len()) {
        let pairs: Vec<(usize, usize)> = off
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, p)| *p)
            .collect();
        let o = FinitePreorder::generated(n, &pairs).expect("n is small");
        if o.pairs().len() == pairs.len() + n {
            out.push(o);
        }
    }
    out
}

#[derive(Clone, Debug)]
struct Block {
    order: FinitePreorder,
    family: Vec<Upset>,
    start: u128,
    count: u128,
}

/// An indexed space of candidate frames; [`FrameSpace::get`] returns only
/// valid general frames.
#[derive(Clone, Debug)]
pub struct FrameSpace {
    blocks: Vec<Block>,
    total: u128,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Families {
    /// Every upset admissible: full conditional frames.
    Full,
    /// Every family containing `∅` and `X`.
    All,
}

impl FrameSpace {
    pub fn new(max_worlds: usize, families: Families) -> Result<FrameSpace, Infeasible> {
        let mut blocks = Vec::new();
        let mut total: u128 = 0;
        let infeasible = |count| Infeasible { max_worlds, count, cap: MAX_ENUMERATION };
        for n in 1..=max_worlds {
            for order in preorders(n) {
                let ups = order.all_upsets();
                let fams: Vec<Vec<Upset>> = match families {
                    Families::Full => vec![ups.clone()],
                    Families::All => {
                        let inner: Vec<Upset> = ups[1..ups.len() - 1].to_vec();
                        (0u64..(1 << inner.len()))
                            .map(|m| {
                                let mut fam = vec![WorldSet::EMPTY];
                                fam.extend(
                                    inner
                                        .iter()
                                        .enumerate()
                                        .filter(|(i, _)| m >> i & 1 == 1)
                                        .map(|(_, u)| *u),
                                );
                                fam.push(order.worlds());
                                fam.dedup();
                                fam
                            })
                            .collect()
                    }
                };
                for family in fams {
                    let bits = (n * n * family.len()) as u32;
                    if bits >= 100 {
                        return Err(infeasible(u128::MAX));
                    }
                    let count = 1u128 << bits;
                    total = total.saturating_add(count);
                    if total > MAX_ENUMERATION {
                        return Err(infeasible(total));
                    }
                    blocks.push(Block { order: order.clone(), family, start: total - count, count });
                }
            }
        }
        Ok(FrameSpace { blocks, total })
    }

    pub fn len(&self) -> u64 {
        self.total as u64
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// Candidate `i`, if it is a valid general frame.
    pub fn get(&self, i: u64) -> Option<GeneralFrame> {
        let i = i as u128;
        let bi = self.blocks.partition_point(|b| b.start + b.count <= i);
        let b = self.blocks.get(bi)?;
        let mut code = i - b.start;
        let n = b.order.len();
        let width = n * n;
        let mut rels = vec![Relation::empty(n); b.family.len()];
        for slot in rels.iter_mut().rev() {
            let chunk = (code & ((1u128 << width) - 1)) as u64;
            code >>= width;
            *slot = Relation::from_fn(n, |x| {
                WorldSet::from_worlds((0..n).filter(|&y| chunk >> (width - 1 - (x * n + y)) & 1 == 1))
            });
        }
        let g = GeneralFrame::new(b.order.clone(), b.family.iter().copied().zip(rels)).ok()?;
        g.validate().is_valid().then_some(g)
    }
}
