//! Conditional Kripke frames, general frames and modal frames.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::order::{FinitePreorder, OrderError, Upset, WorldSet};

/// A binary relation on `0..n`, stored as successor sets `R[x]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    rows: Vec<WorldSet>,
}

impl Relation {
    pub fn empty(n: usize) -> Relation {
        Relation {
            rows: vec![WorldSet::EMPTY; n],
        }
    }

    pub fn identity(n: usize) -> Relation {
        Relation {
            rows: (0..n).map(WorldSet::singleton).collect(),
        }
    }

    pub fn from_rows(rows: Vec<WorldSet>) -> Relation {
        Relation { rows }
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize) -> WorldSet) -> Relation {
        Relation {
            rows: (0..n).map(f).collect(),
        }
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Option<Relation> {
        let mut rows = vec![WorldSet::EMPTY; n];
        for &(x, y) in pairs {
            if x >= n || y >= n {
                return None;
            }
            rows[x] = rows[x].with(y);
        }
        Some(Relation { rows })
    }

    /// The order relation itself, viewed as a relation.
    pub fn of_order(order: &FinitePreorder) -> Relation {
        Relation::from_fn(order.len(), |x| order.up(x))
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn rows(&self) -> &[WorldSet] {
        &self.rows
    }

    /// `R[x]`
    pub fn image(&self, x: usize) -> WorldSet {
        self.rows[x]
    }

    pub fn image_of(&self, s: WorldSet) -> WorldSet {
        s.iter().fold(WorldSet::EMPTY, |acc, x| acc | self.rows[x])
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.rows[x].contains(y)
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(x, r)| r.iter().map(move |y| (x, y)))
            .collect()
    }

    /// `self ∘ other`, read left to right: `x (R∘S) z` iff `x R y S z` for some `y`.
    pub fn then(&self, other: &Relation) -> Relation {
        Relation::from_fn(self.len(), |x| other.image_of(self.rows[x]))
    }

    /// `R ∘ ≤`: each row closed upwards.
    pub fn then_order(&self, order: &FinitePreorder) -> Relation {
        Relation::from_fn(self.len(), |x| order.up_closure(self.rows[x]))
    }

    /// `≤ ∘ R`
    pub fn after_order(&self, order: &FinitePreorder) -> Relation {
        Relation::from_fn(self.len(), |x| self.image_of(order.up(x)))
    }

    pub fn union(&self, other: &Relation) -> Relation {
        Relation::from_fn(self.len(), |x| self.rows[x] | other.rows[x])
    }

    pub fn is_subrelation(&self, other: &Relation) -> bool {
        self.rows
            .iter()
            .zip(&other.rows)
            .all(|(a, b)| a.is_subset(*b))
    }

    /// `{x | R[x] ⊆ b}`
    pub fn box_of(&self, b: WorldSet) -> WorldSet {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, r)| r.is_subset(b))
            .fold(WorldSet::EMPTY, |acc, (x, _)| acc.with(x))
    }
}

/// First witness `(x, y, z)` against `(≤∘R) ⊆ (R∘≤)`: `x ≤ y`, `z ∈ R[y]`, `z ∉ ↑R[x]`.
pub fn coherence_witness(order: &FinitePreorder, rel: &Relation) -> Option<(usize, usize, usize)> {
    for x in 0..order.len() {
        let allowed = order.up_closure(rel.image(x));
        for y in order.up(x).iter() {
            if let Some(z) = rel.image(y).difference(allowed).min() {
                return Some((x, y, z));
            }
        }
    }
    None
}

/// `≤ ∘ R ∘ ≤ = R`
pub fn is_strongly_coherent(order: &FinitePreorder, rel: &Relation) -> bool {
    rel.after_order(order).then_order(order) == *rel
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureOp {
    Meet,
    Join,
    Imp,
    CondImp,
}

impl fmt::Display for ClosureOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClosureOp::Meet => "∩",
            ClosureOp::Join => "∪",
            ClosureOp::Imp => "→",
            ClosureOp::CondImp => "⊳→",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NotUpset { set: WorldSet },
    MissingEmpty,
    MissingTop,
    MissingRelation { upset: Upset },
    NotClosed { op: ClosureOp, a: Upset, b: Upset, result: WorldSet },
    Incoherent { upset: Upset, x: usize, y: usize, z: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotUpset { set } => write!(f, "admissible set {set} is not an upset"),
            Violation::MissingEmpty => write!(f, "the empty set is not admissible"),
            Violation::MissingTop => write!(f, "the full world set is not admissible"),
            Violation::MissingRelation { upset } => write!(f, "no relation for upset {upset}"),
            Violation::NotClosed { op, a, b, result } => {
                write!(f, "{a} {op} {b} = {result} is not admissible")
            }
            Violation::Incoherent { upset, x, y, z } => write!(
                f,
                "relation for {upset} is incoherent: {x} <= {y}, {y} R {z}, but {z} is not above R[{x}]"
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("set {0} mentions worlds outside the frame")]
    OutOfRange(WorldSet),
    #[error("relation for {upset} has {found} rows, expected {expected}")]
    RelationSize { upset: Upset, expected: usize, found: usize },
    #[error("upset {0} listed twice")]
    Duplicate(Upset),
    #[error("{0} is not admissible")]
    NotAdmissible(Upset),
    #[error("invalid frame: {0}")]
    Invalid(ValidationReport),
    #[error("relation is incoherent: {x} <= {y}, {y} R {z}, but {z} is not above R[{x}]")]
    Incoherent { x: usize, y: usize, z: usize },
}

const DENSE_LOOKUP_MAX: usize = 10;

/// A general conditional frame: an order, an admissible family `A` of upsets and
/// one relation per admissible upset. Construction only checks shapes;
/// [`GeneralFrame::validate`] checks the frame conditions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneralFrame {
    order: FinitePreorder,
    admissible: Vec<Upset>,
    relations: Vec<Relation>,
    lookup: Vec<u16>,
}

impl GeneralFrame {
    pub fn new(
        order: FinitePreorder,
        entries: impl IntoIterator<Item = (Upset, Relation)>,
    ) -> Result<GeneralFrame, FrameError> {
        let n = order.len();
        let mut entries: Vec<(Upset, Relation)> = entries.into_iter().collect();
        entries.sort_by_key(|(a, _)| *a);
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(FrameError::Duplicate(w[0].0));
            }
        }
        for (a, r) in &entries {
            if !a.is_subset(order.worlds()) {
                return Err(FrameError::OutOfRange(*a));
            }
            if r.len() != n {
                return Err(FrameError::RelationSize {
                    upset: *a,
                    expected: n,
                    found: r.len(),
                });
            }
            if let Some(bad) = r.rows().iter().find(|s| !s.is_subset(order.worlds())) {
                return Err(FrameError::OutOfRange(*bad));
            }
        }
        let (admissible, relations): (Vec<_>, Vec<_>) = entries.into_iter().unzip();
        let lookup = if n <= DENSE_LOOKUP_MAX {
            let mut t = vec![0u16; 1 << n];
            for (i, a) in admissible.iter().enumerate() {
                t[a.bits() as usize] = i as u16 + 1;
            }
            t
        } else {
            Vec::new()
        };
        Ok(GeneralFrame {
            order,
            admissible,
            relations,
            lookup,
        })
    }

    pub fn order(&self) -> &FinitePreorder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn worlds(&self) -> WorldSet {
        self.order.worlds()
    }

    /// The admissible upsets in ascending order.
    pub fn admissible(&self) -> &[Upset] {
        &self.admissible
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn entries(&self) -> impl Iterator<Item = (Upset, &Relation)> {
        self.admissible.iter().copied().zip(self.relations.iter())
    }

    pub fn index_of(&self, a: WorldSet) -> Option<usize> {
        if self.lookup.is_empty() {
            self.admissible.binary_search(&a).ok()
        } else {
            match self.lookup.get(a.bits() as usize) {
                Some(&i) if i > 0 => Some(i as usize - 1),
                _ => None,
            }
        }
    }

    pub fn is_admissible(&self, a: WorldSet) -> bool {
        self.index_of(a).is_some()
    }

    pub fn relation(&self, a: WorldSet) -> Option<&Relation> {
        self.index_of(a).map(|i| &self.relations[i])
    }

    /// `a ⊳→ b = {x | R_a[x] ⊆ b}`, if `a` is admissible.
    pub fn cond_imp(&self, a: WorldSet, b: WorldSet) -> Option<WorldSet> {
        self.relation(a).map(|r| r.box_of(b))
    }

    /// True when every upset of the order is admissible.
    pub fn is_full(&self) -> bool {
        self.admissible == self.order.all_upsets()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let o = &self.order;
        for &a in &self.admissible {
            if !o.is_upset(a) {
                violations.push(Violation::NotUpset { set: a });
            }
        }
        if !self.is_admissible(WorldSet::EMPTY) {
            violations.push(Violation::MissingEmpty);
        }
        if !self.is_admissible(self.worlds()) {
            violations.push(Violation::MissingTop);
        }
        for (i, &a) in self.admissible.iter().enumerate() {
            for &b in &self.admissible {
                let results = [
                    (ClosureOp::Meet, a & b),
                    (ClosureOp::Join, a | b),
                    (ClosureOp::Imp, o.heyting_imp(a, b)),
                    (ClosureOp::CondImp, self.relations[i].box_of(b)),
                ];
                for (op, result) in results {
                    if !self.is_admissible(result) {
                        violations.push(Violation::NotClosed { op, a, b, result });
                    }
                }
            }
        }
        for (a, r) in self.entries() {
            if let Some((x, y, z)) = coherence_witness(o, r) {
                violations.push(Violation::Incoherent { upset: a, x, y, z });
            }
        }
        ValidationReport { violations }
    }

    /// Validation as a full conditional frame: the general checks plus one
    /// relation for every upset.
    pub fn validate_conditional(&self) -> ValidationReport {
        let mut report = self.validate();
        for a in self.order.all_upsets() {
            if !self.is_admissible(a) {
                report.violations.push(Violation::MissingRelation { upset: a });
            }
        }
        report
    }

    /// Strong coherence of each admissible relation, in admissible order.
    pub fn strong_coherence(&self) -> Vec<(Upset, bool)> {
        self.entries()
            .map(|(a, r)| (a, is_strongly_coherent(&self.order, r)))
            .collect()
    }

    pub fn is_strongly_coherent(&self) -> bool {
        self.strong_coherence().iter().all(|(_, ok)| *ok)
    }

    /// The modal frame `(X, ≤, R_a)` for an admissible `a`.
    pub fn restrict(&self, a: Upset) -> Result<ModalFrame, FrameError> {
        let rel = self.relation(a).ok_or(FrameError::NotAdmissible(a))?;
        ModalFrame::new(self.order.clone(), rel.clone())
    }
}

/// A general frame whose admissible family is every upset and which satisfies
/// coherence for every relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConditionalFrame(GeneralFrame);

impl ConditionalFrame {
    pub fn new(
        order: FinitePreorder,
        entries: impl IntoIterator<Item = (Upset, Relation)>,
    ) -> Result<ConditionalFrame, FrameError> {
        ConditionalFrame::try_from(GeneralFrame::new(order, entries)?)
    }

    /// Relations produced by `f` for each upset, in ascending order.
    pub fn from_fn(
        order: FinitePreorder,
        mut f: impl FnMut(Upset) -> Relation,
    ) -> Result<ConditionalFrame, FrameError> {
        let ups = order.all_upsets();
        let entries: Vec<_> = ups.into_iter().map(|a| (a, f(a))).collect();
        ConditionalFrame::new(order, entries)
    }

    pub fn general(&self) -> &GeneralFrame {
        &self.0
    }

    pub fn into_general(self) -> GeneralFrame {
        self.0
    }
}

impl TryFrom<GeneralFrame> for ConditionalFrame {
    type Error = FrameError;

    fn try_from(g: GeneralFrame) -> Result<ConditionalFrame, FrameError> {
        let report = g.validate_conditional();
        if report.is_valid() {
            Ok(ConditionalFrame(g))
        } else {
            Err(FrameError::Invalid(report))
        }
    }
}

impl std::ops::Deref for ConditionalFrame {
    type Target = GeneralFrame;

    fn deref(&self) -> &GeneralFrame {
        &self.0
    }
}

/// An intuitionistic modal frame `(X, ≤, R)` with `(≤∘R) ⊆ (R∘≤)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModalFrame {
    order: FinitePreorder,
    rel: Relation,
}

impl ModalFrame {
    pub fn new(order: FinitePreorder, rel: Relation) -> Result<ModalFrame, FrameError> {
        if rel.len() != order.len() {
            return Err(FrameError::RelationSize {
                upset: order.worlds(),
                expected: order.len(),
                found: rel.len(),
            });
        }
        if let Some((x, y, z)) = coherence_witness(&order, &rel) {
            return Err(FrameError::Incoherent { x, y, z });
        }
        Ok(ModalFrame { order, rel })
    }

    pub fn order(&self) -> &FinitePreorder {
        &self.order
    }

    pub fn relation(&self) -> &Relation {
        &self.rel
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}
