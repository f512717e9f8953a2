//! Fill-ins: extending a general frame to a full conditional frame by
//! choosing relations for the non-admissible upsets. Admissible relations are
//! never changed.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frames::{ConditionalFrame, FrameError, GeneralFrame, Relation, ValidationReport};
use crate::order::{Upset, WorldSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FillInKind {
    Empty,
    Reflexive,
    Principal,
    Total,
    Union,
    Transitive,
    Squeeze,
}

impl FillInKind {
    pub const ALL: [FillInKind; 7] = [
        FillInKind::Empty,
        FillInKind::Reflexive,
        FillInKind::Principal,
        FillInKind::Total,
        FillInKind::Union,
        FillInKind::Transitive,
        FillInKind::Squeeze,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FillInKind::Empty => "empty",
            FillInKind::Reflexive => "reflexive",
            FillInKind::Principal => "principal",
            FillInKind::Total => "total",
            FillInKind::Union => "union",
            FillInKind::Transitive => "transitive",
            FillInKind::Squeeze => "squeeze",
        }
    }

    pub fn from_name(s: &str) -> Option<FillInKind> {
        FillInKind::ALL.into_iter().find(|k| k.name() == s)
    }
}

impl fmt::Display for FillInKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Why a frame fails the squeeze precondition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum PreconditionWitness {
    /// `R_a[x] ⊄ a`
    Id { a: Upset, x: usize },
    /// `R_a[x] ⊆ b ⊆ a` but `↑R_a[x] ≠ ↑R_b[x]`
    Icc { a: Upset, b: Upset, x: usize },
}

impl fmt::Display for PreconditionWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PreconditionWitness::Id { a, x } => write!(f, "R_{a}[{x}] is not inside {a}"),
            PreconditionWitness::Icc { a, b, x } => write!(
                f,
                "R_{a}[{x}] ⊆ {b} ⊆ {a} but the upward closures of R_{a}[{x}] and R_{b}[{x}] differ"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FillError {
    #[error("not a valid general frame: {0}")]
    InvalidFrame(ValidationReport),
    #[error("squeeze precondition fails: {0}")]
    Precondition(PreconditionWitness),
    #[error("squeezers {first} and {second} disagree on {upset} at world {x}")]
    Ambiguous { upset: Upset, x: usize, first: Upset, second: Upset },
    #[error("filled frame is invalid: {0}")]
    Frame(#[from] FrameError),
}

/// The reflexivity and cautious-monotonicity correspondents on admissible upsets.
pub fn check_squeeze_precondition(g: &GeneralFrame) -> Result<(), PreconditionWitness> {
    let o = g.order();
    for (a, ra) in g.entries() {
        for x in 0..g.len() {
            if !ra.image(x).is_subset(a) {
                return Err(PreconditionWitness::Id { a, x });
            }
        }
    }
    for (a, ra) in g.entries() {
        for (b, rb) in g.entries() {
            if !b.is_subset(a) {
                continue;
            }
            for x in 0..g.len() {
                if ra.image(x).is_subset(b)
                    && o.up_closure(ra.image(x)) != o.up_closure(rb.image(x))
                {
                    return Err(PreconditionWitness::Icc { a, b, x });
                }
            }
        }
    }
    Ok(())
}

/// Rows for a non-admissible upset `c`.
fn fill_rows(g: &GeneralFrame, kind: FillInKind, c: Upset) -> Result<Relation, FillError> {
    let o = g.order();
    let n = g.len();
    Ok(match kind {
        FillInKind::Empty => Relation::empty(n),
        FillInKind::Reflexive => Relation::from_fn(n, |_| c),
        FillInKind::Principal => Relation::of_order(o),
        FillInKind::Total => g
            .relation(g.worlds())
            .cloned()
            .unwrap_or_else(|| Relation::empty(n)),
        FillInKind::Union => Relation::from_fn(n, |x| {
            g.entries()
                .filter(|(a, _)| a.is_subset(c))
                .fold(WorldSet::EMPTY, |acc, (_, r)| acc | r.image(x))
        }),
        FillInKind::Transitive => Relation::from_fn(n, |x| {
            let mut acc = WorldSet::EMPTY;
            for (_, r) in g.entries() {
                for y in o.up(x).iter() {
                    if r.image(y).is_subset(c) {
                        acc = acc | r.image(y);
                    }
                }
            }
            acc
        }),
        FillInKind::Squeeze => {
            let mut rows = Vec::with_capacity(n);
            for x in 0..n {
                let mut chosen: Option<(Upset, WorldSet)> = None;
                for (a, r) in g.entries() {
                    if !(r.image(x).is_subset(c) && c.is_subset(a)) {
                        continue;
                    }
                    match chosen {
                        None => chosen = Some((a, r.image(x))),
                        Some((first, row)) => {
                            if o.up_closure(row) != o.up_closure(r.image(x)) {
                                return Err(FillError::Ambiguous { upset: c, x, first, second: a });
                            }
                        }
                    }
                }
                rows.push(chosen.map_or(c, |(_, row)| row));
            }
            Relation::from_rows(rows)
        }
    })
}

/// Extend `g` to a full conditional frame.
///
/// For [`FillInKind::Squeeze`] the frame must satisfy
/// [`check_squeeze_precondition`]; when several admissible upsets squeeze the
/// same world the first in ascending order is used (they agree up to upward
/// closure, which is all the semantics can see).
pub fn fill(g: &GeneralFrame, kind: FillInKind) -> Result<ConditionalFrame, FillError> {
    let report = g.validate();
    if !report.is_valid() {
        return Err(FillError::InvalidFrame(report));
    }
    if kind == FillInKind::Squeeze {
        check_squeeze_precondition(g).map_err(FillError::Precondition)?;
    }
    let mut entries = Vec::new();
    for c in g.order().all_upsets() {
        let rel = match g.relation(c) {
            Some(r) => r.clone(),
            None => fill_rows(g, kind, c)?,
        };
        entries.push((c, rel));
    }
    Ok(ConditionalFrame::new(g.order().clone(), entries)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::FinitePreorder;

    // Two incomparable worlds, A = {∅, X}, R_∅ = ∅, R_X = identity.
    fn antichain_frame() -> GeneralFrame {
        let o = FinitePreorder::discrete(2).unwrap();
        GeneralFrame::new(
            o,
            [
                (WorldSet::EMPTY, Relation::empty(2)),
                (WorldSet::full(2), Relation::identity(2)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn union_and_squeeze_on_the_antichain() {
        let g = antichain_frame();
        assert!(g.validate().is_valid());
        let c = WorldSet::singleton(0);
        let u = fill(&g, FillInKind::Union).unwrap();
        assert_eq!(u.relation(c).unwrap().rows(), &[WorldSet::EMPTY, WorldSet::EMPTY]);
        let s = fill(&g, FillInKind::Squeeze).unwrap();
        assert_eq!(s.relation(c).unwrap().rows(), &[c, c]);
    }

    #[test]
    fn every_kind_yields_a_conditional_frame() {
        let g = antichain_frame();
        for kind in FillInKind::ALL {
            let f = fill(&g, kind).unwrap();
            assert!(f.is_full());
            assert_eq!(f.relation(WorldSet::full(2)), g.relation(WorldSet::full(2)));
        }
    }

    #[test]
    fn squeeze_rejects_frames_without_the_precondition() {
        let o = FinitePreorder::discrete(2).unwrap();
        let g = GeneralFrame::new(
            o,
            [
                (WorldSet::EMPTY, Relation::identity(2)),
                (WorldSet::full(2), Relation::identity(2)),
            ],
        )
        .unwrap();
        assert!(g.validate().is_valid());
        assert_eq!(
            fill(&g, FillInKind::Squeeze),
            Err(FillError::Precondition(PreconditionWitness::Id { a: WorldSet::EMPTY, x: 0 }))
        );
    }

    #[test]
    fn names_round_trip() {
        for k in FillInKind::ALL {
            assert_eq!(FillInKind::from_name(k.name()), Some(k));
        }
        assert_eq!(FillInKind::from_name("bogus"), None);
    }
}
