//! Finite conditional Heyting algebras, complex algebras of general frames and
//! the prime-filter duality.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::frames::{ConditionalFrame, FrameError, GeneralFrame, Relation};
use crate::order::{FinitePreorder, Upset, WorldSet};
use crate::syntax::{Formula, Language, Node};

/// Carrier cap for the prime-filter subset scan.
pub const MAX_FILTER_CARRIER: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("an algebra needs at least one element")]
    Empty,
    #[error("element {0} out of range")]
    OutOfRange(usize),
    #[error("table `{0}` has the wrong shape")]
    TableShape(&'static str),
    #[error("order is not antisymmetric: {0} <= {1} <= {0}")]
    NotAntisymmetric(usize, usize),
    #[error("elements {0} and {1} have no meet")]
    NoMeet(usize, usize),
    #[error("elements {0} and {1} have no join")]
    NoJoin(usize, usize),
    #[error("carrier of size {size} exceeds the cap of {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("frame is not a valid general frame: {0}")]
    Frame(#[from] FrameError),
    #[error("upset {0} of the dual poset is not the image of any element")]
    NotSurjective(Upset),
    #[error("elements {0} and {1} have the same image")]
    NotInjective(usize, usize),
    #[error("assignment does not cover letter `{0}`")]
    MissingLetter(String),
    #[error("{formula} formulas cannot be evaluated in a conditional algebra")]
    LanguageMismatch { formula: Language },
    #[error("assignment enumeration needs {required} checks, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
}

/// A finite conditional Heyting algebra on elements `0..size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCha {
    size: usize,
    leq: Vec<bool>,
    meet: Vec<usize>,
    join: Vec<usize>,
    imp: Vec<usize>,
    cond: Vec<usize>,
    top: usize,
    bot: usize,
}

fn square(size: usize, rows: Vec<Vec<usize>>, name: &'static str) -> Result<Vec<usize>, AlgebraError> {
    if rows.len() != size || rows.iter().any(|r| r.len() != size) {
        return Err(AlgebraError::TableShape(name));
    }
    let flat: Vec<usize> = rows.into_iter().flatten().collect();
    if let Some(&bad) = flat.iter().find(|&&v| v >= size) {
        return Err(AlgebraError::OutOfRange(bad));
    }
    Ok(flat)
}

impl FiniteCha {
    /// Builds the algebra; `leq` is closed reflexively and transitively and must
    /// then be a lattice order. The remaining laws are checked by [`FiniteCha::validate`].
    pub fn new(
        size: usize,
        leq: &[(usize, usize)],
        imp: Vec<Vec<usize>>,
        cond: Vec<Vec<usize>>,
        top: usize,
        bot: usize,
    ) -> Result<FiniteCha, AlgebraError> {
        if size == 0 {
            return Err(AlgebraError::Empty);
        }
        for &w in [top, bot].iter().chain(leq.iter().flat_map(|(a, b)| [a, b])) {
            if w >= size {
                return Err(AlgebraError::OutOfRange(w));
            }
        }
        let mut m = vec![false; size * size];
        for i in 0..size {
            m[i * size + i] = true;
        }
        for &(a, b) in leq {
            m[a * size + b] = true;
        }
        for k in 0..size {
            for i in 0..size {
                if m[i * size + k] {
                    for j in 0..size {
                        if m[k * size + j] {
                            m[i * size + j] = true;
                        }
                    }
                }
            }
        }
        for a in 0..size {
            for b in a + 1..size {
                if m[a * size + b] && m[b * size + a] {
                    return Err(AlgebraError::NotAntisymmetric(a, b));
                }
            }
        }
        let imp = square(size, imp, "imp")?;
        let cond = square(size, cond, "cond")?;
        let le = |a: usize, b: usize| m[a * size + b];
        let mut meet = vec![0; size * size];
        let mut join = vec![0; size * size];
        for a in 0..size {
            for b in 0..size {
                let lower: Vec<usize> = (0..size).filter(|&c| le(c, a) && le(c, b)).collect();
                let glb = lower.iter().copied().find(|&c| lower.iter().all(|&d| le(d, c)));
                meet[a * size + b] = glb.ok_or(AlgebraError::NoMeet(a, b))?;
                let upper: Vec<usize> = (0..size).filter(|&c| le(a, c) && le(b, c)).collect();
                let lub = upper.iter().copied().find(|&c| upper.iter().all(|&d| le(c, d)));
                join[a * size + b] = lub.ok_or(AlgebraError::NoJoin(a, b))?;
            }
        }
        Ok(FiniteCha {
            size,
            leq: m,
            meet,
            join,
            imp,
            cond,
            top,
            bot,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bot(&self) -> usize {
        self.bot
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.size + b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size + b]
    }

    pub fn imp(&self, a: usize, b: usize) -> usize {
        self.imp[a * self.size + b]
    }

    pub fn cond(&self, a: usize, b: usize) -> usize {
        self.cond[a * self.size + b]
    }

    /// Non-reflexive order pairs are enough to regenerate the order.
    pub fn leq_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.size;
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.leq(a, b))
            .collect()
    }

    pub fn imp_table(&self) -> Vec<Vec<usize>> {
        self.imp.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    pub fn cond_table(&self) -> Vec<Vec<usize>> {
        self.cond.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    /// The greatest `c` with `a ∧ c ≤ b`, if it exists.
    pub fn relative_pseudo_complement(&self, a: usize, b: usize) -> Option<usize> {
        let cands: Vec<usize> = (0..self.size).filter(|&c| self.leq(self.meet(a, c), b)).collect();
        cands.iter().copied().find(|&c| cands.iter().all(|&d| self.leq(d, c)))
    }

    pub fn validate(&self) -> AlgebraReport {
        let n = self.size;
        let mut v = Vec::new();
        if !(0..n).all(|a| self.leq(a, self.top)) {
            v.push(AlgebraViolation::BadTop);
        }
        if !(0..n).all(|a| self.leq(self.bot, a)) {
            v.push(AlgebraViolation::BadBot);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(self.meet(a, b), self.meet(a, c));
                    if lhs != rhs {
                        v.push(AlgebraViolation::NotDistributive { a, b, c });
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let given = self.imp(a, b);
                let expected = self.relative_pseudo_complement(a, b);
                if expected != Some(given) {
                    v.push(AlgebraViolation::ImpMismatch { a, b, given, expected });
                }
            }
        }
        for a in 0..n {
            if self.cond(a, self.top) != self.top {
                v.push(AlgebraViolation::NcLaw { a });
            }
            for b in 0..n {
                for c in 0..n {
                    let lhs = self.cond(a, self.meet(b, c));
                    let rhs = self.meet(self.cond(a, b), self.cond(a, c));
                    if lhs != rhs {
                        v.push(AlgebraViolation::KcLaw { a, b, c });
                    }
                    if self.leq(b, c) && !self.leq(self.cond(a, b), self.cond(a, c)) {
                        v.push(AlgebraViolation::CondNotMonotone { a, b, c });
                    }
                }
            }
        }
        AlgebraReport { violations: v }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlgebraViolation {
    BadTop,
    BadBot,
    NotDistributive { a: usize, b: usize, c: usize },
    ImpMismatch { a: usize, b: usize, given: usize, expected: Option<usize> },
    KcLaw { a: usize, b: usize, c: usize },
    NcLaw { a: usize },
    CondNotMonotone { a: usize, b: usize, c: usize },
}

impl fmt::Display for AlgebraViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraViolation::BadTop => write!(f, "top is not the greatest element"),
            AlgebraViolation::BadBot => write!(f, "bottom is not the least element"),
            AlgebraViolation::NotDistributive { a, b, c } => {
                write!(f, "{a} ∧ ({b} ∨ {c}) differs from ({a} ∧ {b}) ∨ ({a} ∧ {c})")
            }
            AlgebraViolation::ImpMismatch { a, b, given, expected } => match expected {
                Some(e) => write!(f, "{a} → {b} is {given}, the lattice gives {e}"),
                None => write!(f, "{a} → {b} has no relative pseudo-complement"),
            },
            AlgebraViolation::KcLaw { a, b, c } => {
                write!(f, "{a} ⊳ ({b} ∧ {c}) differs from ({a} ⊳ {b}) ∧ ({a} ⊳ {c})")
            }
            AlgebraViolation::NcLaw { a } => write!(f, "{a} ⊳ ⊤ is not ⊤"),
            AlgebraViolation::CondNotMonotone { a, b, c } => {
                write!(f, "{b} ≤ {c} but {a} ⊳ {b} is not below {a} ⊳ {c}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AlgebraReport {
    pub violations: Vec<AlgebraViolation>,
}

impl AlgebraReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for AlgebraReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}

/// The algebra of admissible upsets; element `i` is `g.admissible()[i]`.
pub fn complex_algebra(g: &GeneralFrame) -> Result<FiniteCha, AlgebraError> {
    let report = g.validate();
    if !report.is_valid() {
        return Err(FrameError::Invalid(report).into());
    }
    let carrier = g.admissible();
    let k = carrier.len();
    let o = g.order();
    let idx = |s: WorldSet| g.index_of(s).expect("closed under the operations");
    let mut leq = Vec::new();
    for (i, a) in carrier.iter().enumerate() {
        for (j, b) in carrier.iter().enumerate() {
            if a.is_subset(*b) {
                leq.push((i, j));
            }
        }
    }
    let imp = carrier
        .iter()
        .map(|&a| carrier.iter().map(|&b| idx(o.heyting_imp(a, b))).collect())
        .collect();
    let cond = g
        .relations()
        .iter()
        .map(|r| carrier.iter().map(|&b| idx(r.box_of(b))).collect())
        .collect();
    FiniteCha::new(k, &leq, imp, cond, idx(g.worlds()), idx(WorldSet::EMPTY))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgVerdict {
    Satisfied,
    /// Letter to element assignment under which the formula is not `⊤`.
    Refuted(BTreeMap<String, usize>),
}

impl AlgVerdict {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, AlgVerdict::Satisfied)
    }
}

fn alg_eval(alg: &FiniteCha, node: &Node, letters: &[String], values: &[usize]) -> usize {
    let rec = |n: &Node| alg_eval(alg, n, letters, values);
    match node {
        Node::Var(v) => values[letters.binary_search(v).expect("letter collected")],
        Node::Bot => alg.bot,
        Node::And(a, b) => alg.meet(rec(a), rec(b)),
        Node::Or(a, b) => alg.join(rec(a), rec(b)),
        Node::Imp(a, b) => alg.imp(rec(a), rec(b)),
        Node::Cond(a, b) => alg.cond(rec(a), rec(b)),
        Node::Box(_) | Node::BoxI(_) | Node::BoxM(_) => unreachable!("language checked"),
    }
}

/// Value of `f` under a letter assignment.
pub fn alg_value(alg: &FiniteCha, f: &Formula, assignment: &BTreeMap<String, usize>) -> Result<usize, AlgebraError> {
    if f.language() != Language::Cond {
        return Err(AlgebraError::LanguageMismatch { formula: f.language() });
    }
    let letters: Vec<String> = f.proposition_letters().into_iter().collect();
    let mut values = Vec::with_capacity(letters.len());
    for l in &letters {
        let v = *assignment
            .get(l)
            .ok_or_else(|| AlgebraError::MissingLetter(l.clone()))?;
        if v >= alg.size {
            return Err(AlgebraError::OutOfRange(v));
        }
        values.push(v);
    }
    Ok(alg_eval(alg, f.root(), &letters, &values))
}

/// Whether `f` evaluates to `⊤` under every assignment, enumerated with the
/// first letter most significant.
pub fn alg_satisfies(alg: &FiniteCha, f: &Formula, budget: u64) -> Result<AlgVerdict, AlgebraError> {
    if f.language() != Language::Cond {
        return Err(AlgebraError::LanguageMismatch { formula: f.language() });
    }
    let letters: Vec<String> = f.proposition_letters().into_iter().collect();
    let k = letters.len();
    let m = alg.size as u128;
    let required = m.saturating_pow(k as u32);
    if required > budget as u128 {
        return Err(AlgebraError::BudgetExceeded { required, budget });
    }
    let mut values = vec![0usize; k];
    for i in 0..required as u64 {
        let mut rest = i;
        for slot in values.iter_mut().rev() {
            *slot = (rest % alg.size as u64) as usize;
            rest /= alg.size as u64;
        }
        if alg_eval(alg, f.root(), &letters, &values) != alg.top {
            return Ok(AlgVerdict::Refuted(letters.iter().cloned().zip(values).collect()));
        }
    }
    Ok(AlgVerdict::Satisfied)
}

/// A set of algebra elements, as a bitmask.
pub type ElemSet = u32;

/// All prime filters, found by scanning every subset of the carrier.
pub fn prime_filters(alg: &FiniteCha) -> Result<Vec<ElemSet>, AlgebraError> {
    let k = alg.size;
    if k > MAX_FILTER_CARRIER {
        return Err(AlgebraError::TooLarge { size: k, cap: MAX_FILTER_CARRIER });
    }
    let has = |s: ElemSet, a: usize| s >> a & 1 == 1;
    let up: Vec<ElemSet> = (0..k)
        .map(|a| (0..k).filter(|&b| alg.leq(a, b)).fold(0, |s, b| s | 1 << b))
        .collect();
    let mut out = Vec::new();
    'subsets: for s in 0..(1u32 << k) {
        if !has(s, alg.top) || has(s, alg.bot) {
            continue;
        }
        for a in (0..k).filter(|&a| has(s, a)) {
            if up[a] & !s != 0 {
                continue 'subsets;
            }
            for b in (0..k).filter(|&b| has(s, b)) {
                if !has(s, alg.meet(a, b)) {
                    continue 'subsets;
                }
            }
        }
        for a in 0..k {
            for b in a + 1..k {
                if has(s, alg.join(a, b)) && !has(s, a) && !has(s, b) {
                    continue 'subsets;
                }
            }
        }
        out.push(s);
    }
    Ok(out)
}

/// The dual frame together with the map `θ(a) = {p | a ∈ p}`.
#[derive(Clone, Debug)]
pub struct Dual {
    pub frame: ConditionalFrame,
    /// Prime filters in world order.
    pub filters: Vec<ElemSet>,
    /// `theta[a]` is `θ(a)` as a set of worlds.
    pub theta: Vec<Upset>,
}

/// Prime filters ordered by inclusion, with `p R_{θ(a)} q` iff `{b | a ⊳ b ∈ p} ⊆ q`.
pub fn dual(alg: &FiniteCha) -> Result<Dual, AlgebraError> {
    let filters = prime_filters(alg)?;
    let n = filters.len();
    let mut pairs = Vec::new();
    for (i, p) in filters.iter().enumerate() {
        for (j, q) in filters.iter().enumerate() {
            if p & !q == 0 {
                pairs.push((i, j));
            }
        }
    }
    let order = FinitePreorder::generated(n, &pairs).map_err(FrameError::from)?;
    let theta: Vec<Upset> = (0..alg.size)
        .map(|a| {
            WorldSet::from_worlds((0..n).filter(|&i| filters[i] >> a & 1 == 1))
        })
        .collect();
    for a in 0..alg.size {
        for b in a + 1..alg.size {
            if theta[a] == theta[b] {
                return Err(AlgebraError::NotInjective(a, b));
            }
        }
    }
    let mut entries = Vec::new();
    for u in order.all_upsets() {
        let a = theta
            .iter()
            .position(|&t| t == u)
            .ok_or(AlgebraError::NotSurjective(u))?;
        let rel = Relation::from_fn(n, |i| {
            let needed: ElemSet = (0..alg.size)
                .filter(|&b| filters[i] >> alg.cond(a, b) & 1 == 1)
                .fold(0, |s, b| s | 1 << b);
            WorldSet::from_worlds((0..n).filter(|&j| needed & !filters[j] == 0))
        });
        entries.push((u, rel));
    }
    let frame = ConditionalFrame::new(order, entries)?;
    Ok(Dual { frame, filters, theta })
}

pub fn dual_frame(alg: &FiniteCha) -> Result<ConditionalFrame, AlgebraError> {
    dual(alg).map(|d| d.frame)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualityError {
    #[error("not a valid conditional Heyting algebra: {0}")]
    InvalidAlgebra(AlgebraReport),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("frame order is not a partial order")]
    NotPoset,
    #[error("relation for {0} is not strongly coherent")]
    NotStronglyCoherent(Upset),
    #[error("θ does not preserve {op} at ({a}, {b})")]
    NotPreserved { op: &'static str, a: usize, b: usize },
    #[error("η({0}) is not a prime filter")]
    EtaNotPrime(usize),
    #[error("η is not a bijection onto the prime filters")]
    EtaNotBijective,
    #[error("η does not reflect the order at ({0}, {1})")]
    OrderMismatch(usize, usize),
    #[error("relation for {upset} differs from its double dual at ({x}, {y})")]
    RelationMismatch { upset: Upset, x: usize, y: usize },
}

/// `A ≅ AUp(A_*)`: θ is a bijection onto the upsets of the dual frame
/// preserving the lattice operations, `→` and `⊳`.
pub fn check_duality_roundtrip(alg: &FiniteCha) -> Result<(), DualityError> {
    let report = alg.validate();
    if !report.is_valid() {
        return Err(DualityError::InvalidAlgebra(report));
    }
    let d = dual(alg)?;
    let f = &d.frame;
    let o = f.order();
    let th = &d.theta;
    if th[alg.top] != f.worlds() {
        return Err(DualityError::NotPreserved { op: "⊤", a: alg.top, b: alg.top });
    }
    if th[alg.bot] != WorldSet::EMPTY {
        return Err(DualityError::NotPreserved { op: "⊥", a: alg.bot, b: alg.bot });
    }
    for a in 0..alg.size {
        for b in 0..alg.size {
            let checks: [(&'static str, usize, WorldSet); 4] = [
                ("∧", alg.meet(a, b), th[a] & th[b]),
                ("∨", alg.join(a, b), th[a] | th[b]),
                ("→", alg.imp(a, b), o.heyting_imp(th[a], th[b])),
                (
                    "⊳",
                    alg.cond(a, b),
                    f.cond_imp(th[a], th[b]).expect("dual frame is full"),
                ),
            ];
            for (op, image_of, expected) in checks {
                if th[image_of] != expected {
                    return Err(DualityError::NotPreserved { op, a, b });
                }
            }
        }
    }
    Ok(())
}

/// `F ≅ (AUp F)_*` via `η(x) = {a | x ∈ a}`, for strongly coherent frames on a poset.
pub fn frame_roundtrip(f: &ConditionalFrame) -> Result<(), DualityError> {
    if !f.order().is_poset() {
        return Err(DualityError::NotPoset);
    }
    if let Some((a, _)) = f.strong_coherence().into_iter().find(|(_, ok)| !ok) {
        return Err(DualityError::NotStronglyCoherent(a));
    }
    let alg = complex_algebra(f)?;
    let d = dual(&alg)?;
    let ups = f.admissible();
    let n = f.len();
    let mut eta = Vec::with_capacity(n);
    for x in 0..n {
        let set: ElemSet = (0..ups.len())
            .filter(|&i| ups[i].contains(x))
            .fold(0, |s, i| s | 1 << i);
        let idx = d
            .filters
            .iter()
            .position(|&p| p == set)
            .ok_or(DualityError::EtaNotPrime(x))?;
        eta.push(idx);
    }
    let mut seen = eta.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != n || d.filters.len() != n {
        return Err(DualityError::EtaNotBijective);
    }
    let dual_order = d.frame.order();
    for x in 0..n {
        for y in 0..n {
            if f.order().leq(x, y) != dual_order.leq(eta[x], eta[y]) {
                return Err(DualityError::OrderMismatch(x, y));
            }
        }
    }
    for (i, (a, r)) in f.entries().enumerate() {
        let dr = d.frame.relation(d.theta[i]).expect("dual frame is full");
        for x in 0..n {
            for y in 0..n {
                if r.contains(x, y) != dr.contains(eta[x], eta[y]) {
                    return Err(DualityError::RelationMismatch { upset: a, x, y });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_element(cond_bot_bot: usize) -> FiniteCha {
        // 0 = ⊥, 1 = ⊤
        FiniteCha::new(
            2,
            &[(0, 1)],
            vec![vec![1, 1], vec![0, 1]],
            vec![vec![cond_bot_bot, 1], vec![cond_bot_bot, 1]],
            1,
            0,
        )
        .unwrap()
    }

    #[test]
    fn two_element_algebra() {
        let a = two_element(1);
        assert!(a.validate().is_valid());
        assert_eq!(prime_filters(&a).unwrap(), vec![0b10]);
        let d = dual(&a).unwrap();
        assert_eq!(d.frame.len(), 1);
        assert!(check_duality_roundtrip(&a).is_ok());
    }

    #[test]
    fn kc_violation_is_refused() {
        let a = FiniteCha::new(
            2,
            &[(0, 1)],
            vec![vec![1, 1], vec![0, 1]],
            vec![vec![1, 0], vec![1, 0]],
            1,
            0,
        )
        .unwrap();
        let report = a.validate();
        assert!(report.violations.contains(&AlgebraViolation::NcLaw { a: 0 }));
        assert!(matches!(check_duality_roundtrip(&a), Err(DualityError::InvalidAlgebra(_))));
    }

    #[test]
    fn wrong_implication_is_reported() {
        let a = FiniteCha::new(
            2,
            &[(0, 1)],
            vec![vec![1, 1], vec![1, 1]],
            vec![vec![1, 1], vec![1, 1]],
            1,
            0,
        )
        .unwrap();
        assert!(a
            .validate()
            .violations
            .contains(&AlgebraViolation::ImpMismatch { a: 1, b: 0, given: 1, expected: Some(0) }));
    }

    #[test]
    fn non_lattice_is_rejected() {
        // Two incomparable maximal elements without a top.
        let r = FiniteCha::new(3, &[(0, 1), (0, 2)], vec![vec![0; 3]; 3], vec![vec![0; 3]; 3], 1, 0);
        assert_eq!(r, Err(AlgebraError::NoJoin(1, 2)));
    }

    // Four-element Boolean algebra: prime filters are the two principal
    // filters of the atoms.
    #[test]
    fn boolean_square_has_two_prime_filters() {
        let o = FinitePreorder::discrete(2).unwrap();
        let f = ConditionalFrame::from_fn(o, |_| Relation::empty(2)).unwrap();
        let alg = complex_algebra(&f).unwrap();
        assert_eq!(alg.size(), 4);
        assert_eq!(prime_filters(&alg).unwrap().len(), 2);
        assert!(frame_roundtrip(&f).is_ok());
    }

    #[test]
    fn chain_with_order_relation_round_trips() {
        let o = FinitePreorder::chain(2).unwrap();
        let f = ConditionalFrame::from_fn(o.clone(), |_| Relation::of_order(&o)).unwrap();
        assert!(frame_roundtrip(&f).is_ok());
        let alg = complex_algebra(&f).unwrap();
        assert!(check_duality_roundtrip(&alg).is_ok());
    }

    #[test]
    fn non_strong_frame_is_refused() {
        let o = FinitePreorder::chain(2).unwrap();
        let r = Relation::from_rows(vec![WorldSet::singleton(0), WorldSet::EMPTY]);
        let f = ConditionalFrame::from_fn(o, |_| r.clone()).unwrap();
        assert!(matches!(frame_roundtrip(&f), Err(DualityError::NotStronglyCoherent(_))));
        let cluster = FinitePreorder::generated(2, &[(0, 1), (1, 0)]).unwrap();
        let g = ConditionalFrame::from_fn(cluster, |_| Relation::empty(2)).unwrap();
        assert_eq!(frame_roundtrip(&g), Err(DualityError::NotPoset));
    }
}
