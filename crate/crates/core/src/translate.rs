//! Translations from the modal languages: the `p`-translation into the
//! conditional language and the Gödel–McKinsey–Tarski style translation into
//! the bimodal language.

use serde::Serialize;
use thiserror::Error;

use crate::frames::{FrameError, GeneralFrame};
use crate::semantics::{check, valid, EvalError, Valuation, Verdict};
use crate::syntax::{Formula, Language, Node};

/// The mix axiom as usually printed. It contains a bare `[]` inside a bimodal
/// formula, so it is kept as text and never parsed.
pub const MIX_AXIOM: &str = "[I][M][]q <-> [M]q";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("expected a {expected} formula, got {found}")]
    Language { expected: Language, found: Language },
    #[error("letter `{0}` occurs in the formula")]
    LetterOccurs(String),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

fn expect(f: &Formula, lang: Language) -> Result<(), TranslateError> {
    if f.language() != lang {
        return Err(TranslateError::Language { expected: lang, found: f.language() });
    }
    Ok(())
}

fn p_node(n: &Node, p: &Node) -> Node {
    let rec = |m: &Node| p_node(m, p);
    match n {
        Node::Var(_) | Node::Bot => n.clone(),
        Node::And(a, b) => Node::and(rec(a), rec(b)),
        Node::Or(a, b) => Node::or(rec(a), rec(b)),
        Node::Imp(a, b) => Node::imp(rec(a), rec(b)),
        Node::Box(a) => Node::cond(p.clone(), rec(a)),
        Node::Cond(..) | Node::BoxI(_) | Node::BoxM(_) => unreachable!("modal formula"),
    }
}

/// `(□ψ)^p = p ⊳ ψ^p`, homomorphic on the other connectives.
pub fn p_translate(f: &Formula, letter: &str) -> Result<Formula, TranslateError> {
    expect(f, Language::Modal)?;
    let node = p_node(f.root(), &Node::var(letter));
    Ok(Formula::new(Language::Cond, node).expect("only conditional connectives produced"))
}

fn gmt_node(n: &Node) -> Node {
    match n {
        Node::Var(_) | Node::Bot => Node::box_i(n.clone()),
        Node::And(a, b) => Node::box_i(Node::and(gmt_node(a), gmt_node(b))),
        Node::Or(a, b) => Node::box_i(Node::or(gmt_node(a), gmt_node(b))),
        Node::Imp(a, b) => Node::box_i(Node::imp(gmt_node(a), gmt_node(b))),
        Node::Box(a) => Node::box_i(Node::box_m(gmt_node(a))),
        Node::Cond(..) | Node::BoxI(_) | Node::BoxM(_) => unreachable!("modal formula"),
    }
}

fn collapse(n: &Node) -> Node {
    match n {
        Node::Var(_) | Node::Bot => n.clone(),
        Node::And(a, b) => Node::and(collapse(a), collapse(b)),
        Node::Or(a, b) => Node::or(collapse(a), collapse(b)),
        Node::Imp(a, b) => Node::imp(collapse(a), collapse(b)),
        Node::Cond(a, b) => Node::cond(collapse(a), collapse(b)),
        Node::Box(a) => Node::boxed(collapse(a)),
        Node::BoxM(a) => Node::box_m(collapse(a)),
        Node::BoxI(a) => match collapse(a) {
            inner @ Node::BoxI(_) => inner,
            inner => Node::box_i(inner),
        },
    }
}

/// `t(q) = □_I q`, `t(φ ⋆ ψ) = □_I(tφ ⋆ tψ)`, `t(□φ) = □_I □_M tφ`. With
/// `normalize`, nested `□_I □_I` is collapsed to `□_I`.
pub fn gmt_translate(f: &Formula, normalize: bool) -> Result<Formula, TranslateError> {
    expect(f, Language::Modal)?;
    let mut node = gmt_node(f.root());
    if normalize {
        node = collapse(&node);
    }
    Ok(Formula::new(Language::Bimodal, node).expect("only bimodal connectives produced"))
}

/// Both sides of `x ⊨ φ^p` iff `x ⊨ φ` in the restriction to `V(p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictionCheck {
    pub conditional: bool,
    pub restricted: bool,
}

impl RestrictionCheck {
    pub fn agrees(&self) -> bool {
        self.conditional == self.restricted
    }
}

pub fn check_restriction_lemma(
    g: &GeneralFrame,
    val: &Valuation,
    f: &Formula,
    letter: &str,
    x: usize,
) -> Result<RestrictionCheck, TranslateError> {
    expect(f, Language::Modal)?;
    let a = val.get(letter).ok_or_else(|| EvalError::MissingLetter(letter.to_string()))?;
    let conditional = check(g, val, &p_translate(f, letter)?, x)?;
    let restricted = check(&g.restrict(a)?, val, f, x)?;
    Ok(RestrictionCheck { conditional, restricted })
}

/// Both sides of `F ⊨ φ^p` iff every restriction `F↾a` validates `φ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct T2Check {
    pub conditional: bool,
    pub all_restrictions: bool,
}

impl T2Check {
    pub fn agrees(&self) -> bool {
        self.conditional == self.all_restrictions
    }
}

pub fn check_t2(g: &GeneralFrame, f: &Formula, letter: &str, budget: u64) -> Result<T2Check, TranslateError> {
    expect(f, Language::Modal)?;
    if f.proposition_letters().contains(letter) {
        return Err(TranslateError::LetterOccurs(letter.to_string()));
    }
    let conditional = valid(g, &p_translate(f, letter)?, budget)?.is_valid();
    let mut all_restrictions = true;
    for &a in g.admissible() {
        if let Verdict::Refuted(_) = valid(&g.restrict(a)?, f, budget)? {
            all_restrictions = false;
            break;
        }
    }
    Ok(T2Check { conditional, all_restrictions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn modal(s: &str) -> Formula {
        parse(s, Language::Modal).unwrap()
    }

    #[test]
    fn p_translation() {
        let t = p_translate(&modal("[](q -> []r) | q"), "p").unwrap();
        assert_eq!(t.to_string(), "(p ~> (q -> p ~> r)) | q");
    }

    #[test]
    fn p_translation_of_small_formulas() {
        let cond = |s: &str| parse(s, Language::Cond).unwrap();
        assert_eq!(p_translate(&modal("[]q"), "p").unwrap(), cond("p ~> q"));
        assert_eq!(p_translate(&modal("q -> []q"), "p").unwrap(), cond("q -> (p ~> q)"));
        assert_eq!(p_translate(&modal("q"), "p").unwrap(), cond("q"));
    }

    #[test]
    fn t2_on_box_bottom() {
        use crate::frames::{ConditionalFrame, Relation};
        use crate::order::FinitePreorder;
        let o = FinitePreorder::chain(2).unwrap();
        let bb = modal("[]false");
        let empty = ConditionalFrame::from_fn(o.clone(), |_| Relation::empty(2)).unwrap();
        let r = check_t2(&empty, &bb, "p", 1000).unwrap();
        assert_eq!(r, T2Check { conditional: true, all_restrictions: true });
        let total = ConditionalFrame::from_fn(o.clone(), |a| {
            if a == crate::order::WorldSet::full(2) {
                Relation::from_fn(2, |_| crate::order::WorldSet::full(2))
            } else {
                Relation::empty(2)
            }
        })
        .unwrap();
        let r = check_t2(&total, &bb, "p", 1000).unwrap();
        assert_eq!(r, T2Check { conditional: false, all_restrictions: false });
        assert_eq!(
            check_t2(&empty, &modal("[]p"), "p", 1000),
            Err(TranslateError::LetterOccurs("p".into()))
        );
    }

    #[test]
    fn gmt_translation() {
        let t = gmt_translate(&modal("q -> []q"), false).unwrap();
        assert_eq!(t.to_string(), "[I]([I]q -> [I][M][I]q)");
        assert_eq!(gmt_translate(&modal("false"), false).unwrap().to_string(), "[I]false");
        assert_eq!(
            gmt_translate(&modal("q & r"), false).unwrap().to_string(),
            "[I]([I]q & [I]r)"
        );
    }

    #[test]
    fn normalisation_collapses_repeated_inner_box() {
        let raw = Formula::new(Language::Bimodal, Node::box_i(Node::box_i(Node::box_m(Node::box_i(Node::var("q")))))).unwrap();
        assert_eq!(collapse(raw.root()).to_string(), "[I][M][I]q");
        let t = gmt_translate(&modal("q -> []q"), true).unwrap();
        assert_eq!(t.to_string(), "[I]([I]q -> [I][M][I]q)");
    }

    #[test]
    fn wrong_language_is_rejected() {
        let c = parse("p ~> q", Language::Cond).unwrap();
        assert!(p_translate(&c, "p").is_err());
        assert!(gmt_translate(&c, false).is_err());
    }
}
