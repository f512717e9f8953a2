//! Truth sets, local truth and validity on finite frames.

use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frames::{ConditionalFrame, GeneralFrame, ModalFrame};
use crate::order::{FinitePreorder, Upset, WorldSet};
use crate::par;
use crate::syntax::{Formula, Language, Node};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Below this many valuations a validity check runs on the calling thread.
const PARALLEL_THRESHOLD: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("valuation does not assign letter `{0}`")]
    MissingLetter(String),
    #[error("{formula} formula cannot be evaluated on a {frame} frame")]
    LanguageMismatch { formula: Language, frame: Language },
    #[error("value {set} of `{letter}` is not an admissible upset")]
    BadValue { letter: String, set: WorldSet },
    #[error("antecedent truth set {0} is not admissible")]
    NotAdmissible(WorldSet),
    #[error("world {world} out of range for {n} worlds")]
    WorldOutOfRange { world: usize, n: usize },
    #[error("validity check needs {required} (valuation, world) checks, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
}

/// An assignment of upsets to proposition letters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Valuation(BTreeMap<String, WorldSet>);

impl Valuation {
    pub fn new() -> Valuation {
        Valuation::default()
    }

    pub fn with(mut self, letter: &str, set: WorldSet) -> Valuation {
        self.0.insert(letter.to_string(), set);
        self
    }

    pub fn insert(&mut self, letter: &str, set: WorldSet) {
        self.0.insert(letter.to_string(), set);
    }

    pub fn get(&self, letter: &str) -> Option<WorldSet> {
        self.0.get(letter).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, WorldSet)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

impl FromIterator<(String, WorldSet)> for Valuation {
    fn from_iter<I: IntoIterator<Item = (String, WorldSet)>>(iter: I) -> Valuation {
        Valuation(iter.into_iter().collect())
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// What a frame offers to the evaluator.
pub trait Structure: Sync {
    fn order(&self) -> &FinitePreorder;

    fn language(&self) -> Language;

    /// The sets a letter may denote; validity quantifies over exactly these.
    fn value_range(&self) -> Cow<'_, [Upset]>;

    fn admits_value(&self, s: WorldSet) -> bool;

    /// `{x | R_a[x] ⊆ b}`
    fn cond(&self, a: WorldSet, _b: WorldSet) -> Result<WorldSet, EvalError> {
        Err(EvalError::NotAdmissible(a))
    }

    /// `{x | R[x] ⊆ b}`
    fn boxed(&self, b: WorldSet) -> Result<WorldSet, EvalError> {
        Err(EvalError::NotAdmissible(b))
    }
}

impl Structure for GeneralFrame {
    fn order(&self) -> &FinitePreorder {
        GeneralFrame::order(self)
    }

    fn language(&self) -> Language {
        Language::Cond
    }

    fn value_range(&self) -> Cow<'_, [Upset]> {
        Cow::Borrowed(self.admissible())
    }

    fn admits_value(&self, s: WorldSet) -> bool {
        self.is_admissible(s)
    }

    fn cond(&self, a: WorldSet, b: WorldSet) -> Result<WorldSet, EvalError> {
        self.cond_imp(a, b).ok_or(EvalError::NotAdmissible(a))
    }
}

impl Structure for ConditionalFrame {
    fn order(&self) -> &FinitePreorder {
        self.general().order()
    }

    fn language(&self) -> Language {
        Language::Cond
    }

    fn value_range(&self) -> Cow<'_, [Upset]> {
        Cow::Borrowed(self.admissible())
    }

    fn admits_value(&self, s: WorldSet) -> bool {
        self.is_admissible(s)
    }

    fn cond(&self, a: WorldSet, b: WorldSet) -> Result<WorldSet, EvalError> {
        self.general().cond(a, b)
    }
}

impl Structure for ModalFrame {
    fn order(&self) -> &FinitePreorder {
        ModalFrame::order(self)
    }

    fn language(&self) -> Language {
        Language::Modal
    }

    fn value_range(&self) -> Cow<'_, [Upset]> {
        Cow::Owned(ModalFrame::order(self).all_upsets())
    }

    fn admits_value(&self, s: WorldSet) -> bool {
        ModalFrame::order(self).is_upset(s)
    }

    fn boxed(&self, b: WorldSet) -> Result<WorldSet, EvalError> {
        Ok(self.relation().box_of(b))
    }
}

#[derive(Clone, Debug)]
enum Code {
    Var(usize),
    Bot,
    And(Box<Code>, Box<Code>),
    Or(Box<Code>, Box<Code>),
    Imp(Box<Code>, Box<Code>),
    Cond(Box<Code>, Box<Code>),
    Box(Box<Code>),
    Bimodal,
}

/// A formula with its letters replaced by indices into a value slice.
#[derive(Clone, Debug)]
pub struct Compiled {
    code: Code,
    letters: Vec<String>,
    language: Language,
}

impl Compiled {
    /// Letters are indexed in lexicographic order.
    pub fn new(f: &Formula) -> Compiled {
        let letters: Vec<String> = f.proposition_letters().into_iter().collect();
        let code = compile(f.root(), &letters);
        Compiled {
            code,
            letters,
            language: f.language(),
        }
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn language(&self) -> Language {
        self.language
    }

    pub fn check_language<S: Structure + ?Sized>(&self, frame: &S) -> Result<(), EvalError> {
        if self.language != frame.language() {
            return Err(EvalError::LanguageMismatch {
                formula: self.language,
                frame: frame.language(),
            });
        }
        Ok(())
    }

    /// Truth set under `values[i]` for the `i`-th letter. The caller is
    /// responsible for the language and value checks.
    pub fn eval<S: Structure + ?Sized>(&self, frame: &S, values: &[WorldSet]) -> Result<WorldSet, EvalError> {
        eval(&self.code, frame.order(), frame, values)
    }
}

fn compile(node: &Node, letters: &[String]) -> Code {
    let bin = |a: &Node, b: &Node| (Box::new(compile(a, letters)), Box::new(compile(b, letters)));
    match node {
        Node::Var(v) => Code::Var(letters.binary_search(v).expect("letter collected")),
        Node::Bot => Code::Bot,
        Node::And(a, b) => {
            let (a, b) = bin(a, b);
            Code::And(a, b)
        }
        Node::Or(a, b) => {
            let (a, b) = bin(a, b);
            Code::Or(a, b)
        }
        Node::Imp(a, b) => {
            let (a, b) = bin(a, b);
            Code::Imp(a, b)
        }
        Node::Cond(a, b) => {
            let (a, b) = bin(a, b);
            Code::Cond(a, b)
        }
        Node::Box(a) => Code::Box(Box::new(compile(a, letters))),
        Node::BoxI(_) | Node::BoxM(_) => Code::Bimodal,
    }
}

fn eval<S: Structure + ?Sized>(
    code: &Code,
    order: &FinitePreorder,
    frame: &S,
    values: &[WorldSet],
) -> Result<WorldSet, EvalError> {
    Ok(match code {
        Code::Var(i) => values[*i],
        Code::Bot => WorldSet::EMPTY,
        Code::And(a, b) => eval(a, order, frame, values)? & eval(b, order, frame, values)?,
        Code::Or(a, b) => eval(a, order, frame, values)? | eval(b, order, frame, values)?,
        Code::Imp(a, b) => {
            let a = eval(a, order, frame, values)?;
            let b = eval(b, order, frame, values)?;
            order.heyting_imp(a, b)
        }
        Code::Cond(a, b) => {
            let a = eval(a, order, frame, values)?;
            let b = eval(b, order, frame, values)?;
            frame.cond(a, b)?
        }
        Code::Box(a) => {
            let a = eval(a, order, frame, values)?;
            frame.boxed(a)?
        }
        Code::Bimodal => {
            return Err(EvalError::LanguageMismatch {
                formula: Language::Bimodal,
                frame: frame.language(),
            })
        }
    })
}

fn check_formula_language<S: Structure + ?Sized>(frame: &S, f: &Formula) -> Result<(), EvalError> {
    if f.language() != frame.language() {
        return Err(EvalError::LanguageMismatch {
            formula: f.language(),
            frame: frame.language(),
        });
    }
    Ok(())
}

/// `⟦f⟧` under `val`.
pub fn truth_set<S: Structure + ?Sized>(frame: &S, val: &Valuation, f: &Formula) -> Result<Upset, EvalError> {
    check_formula_language(frame, f)?;
    let c = Compiled::new(f);
    let mut values = Vec::with_capacity(c.letters.len());
    for letter in &c.letters {
        let s = val
            .get(letter)
            .ok_or_else(|| EvalError::MissingLetter(letter.clone()))?;
        if !frame.admits_value(s) {
            return Err(EvalError::BadValue {
                letter: letter.clone(),
                set: s,
            });
        }
        values.push(s);
    }
    c.eval(frame, &values)
}

/// `x ⊨ f` under `val`.
pub fn check<S: Structure + ?Sized>(frame: &S, val: &Valuation, f: &Formula, x: usize) -> Result<bool, EvalError> {
    let n = frame.order().len();
    if x >= n {
        return Err(EvalError::WorldOutOfRange { world: x, n });
    }
    Ok(truth_set(frame, val, f)?.contains(x))
}

/// A valuation and a world where a formula fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Countermodel {
    pub valuation: Valuation,
    pub world: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Refuted(Countermodel),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn countermodel(&self) -> Option<&Countermodel> {
        match self {
            Verdict::Valid => None,
            Verdict::Refuted(c) => Some(c),
        }
    }
}

/// Number of (valuation, world) checks a validity test of `c` needs.
pub fn required_checks<S: Structure + ?Sized>(frame: &S, letters: usize) -> u128 {
    let m = frame.value_range().len() as u128;
    let n = frame.order().len() as u128;
    let mut total = n;
    for _ in 0..letters {
        total = total.saturating_mul(m);
    }
    total
}

/// Validity over every valuation in the frame's value range.
///
/// Valuations are enumerated in lexicographic order of (letter, upset), with
/// the first letter most significant; the countermodel returned is the first
/// one in that order together with the least failing world.
pub fn valid<S: Structure + ?Sized>(frame: &S, f: &Formula, budget: u64) -> Result<Verdict, EvalError> {
    check_formula_language(frame, f)?;
    let c = Compiled::new(f);
    let required = required_checks(frame, c.letters.len());
    if required > budget as u128 {
        return Err(EvalError::BudgetExceeded { required, budget });
    }
    valid_compiled(frame, &c)
}

/// [`valid`] without the language and budget checks, for callers that have
/// already done them.
pub fn valid_compiled<S: Structure + ?Sized>(frame: &S, c: &Compiled) -> Result<Verdict, EvalError> {
    let range = frame.value_range();
    let range: &[Upset] = &range;
    let m = range.len() as u64;
    let k = c.letters.len();
    let total = m.checked_pow(k as u32).unwrap_or(u64::MAX);
    let worlds = frame.order().worlds();
    let decode = |mut i: u64, values: &mut [WorldSet]| {
        for slot in values.iter_mut().rev() {
            *slot = range[(i % m) as usize];
            i /= m;
        }
    };
    let probe = |i: u64| -> Option<Result<Countermodel, EvalError>> {
        let mut values = vec![WorldSet::EMPTY; k];
        decode(i, &mut values);
        match c.eval(frame, &values) {
            Err(e) => Some(Err(e)),
            Ok(t) if t == worlds => None,
            Ok(t) => {
                let world = worlds.difference(t).min().expect("non-full truth set");
                let valuation = c
                    .letters
                    .iter()
                    .cloned()
                    .zip(values.iter().copied())
                    .collect();
                Some(Ok(Countermodel { valuation, world }))
            }
        }
    };
    let hit = if total >= PARALLEL_THRESHOLD {
        par::find_first(total, probe)
    } else {
        (0..total).find_map(|i| probe(i).map(|r| (i, r)))
    };
    match hit {
        None => Ok(Verdict::Valid),
        Some((_, Ok(cm))) => Ok(Verdict::Refuted(cm)),
        Some((_, Err(e))) => Err(e),
    }
}

/// Shorthand for validity without a countermodel.
pub fn is_valid<S: Structure + ?Sized>(frame: &S, f: &Formula) -> Result<bool, EvalError> {
    Ok(valid(frame, f, u64::MAX)?.is_valid())
}

pub fn check_modal(frame: &ModalFrame, val: &Valuation, f: &Formula, x: usize) -> Result<bool, EvalError> {
    check(frame, val, f, x)
}

pub fn valid_modal(frame: &ModalFrame, f: &Formula, budget: u64) -> Result<Verdict, EvalError> {
    valid(frame, f, budget)
}
