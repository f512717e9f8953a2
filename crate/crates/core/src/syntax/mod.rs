//! Formulas of the three object languages.
//!
//! `L_cond` has the binary conditional `~>`, `L_box` a single box `[]`, and
//! `L_bimodal` the pair `[I]`, `[M]` used as the target of the
//! Gödel–McKinsey–Tarski style translation. Negation, truth and the
//! biconditional are abbreviations and never appear in the tree.

mod parser;
mod print;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use parser::parse;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Language {
    Cond,
    Modal,
    Bimodal,
}

impl Language {
    pub fn name(self) -> &'static str {
        match self {
            Language::Cond => "cond",
            Language::Modal => "modal",
            Language::Bimodal => "bimodal",
        }
    }

    pub fn from_name(name: &str) -> Option<Language> {
        match name {
            "cond" => Some(Language::Cond),
            "modal" => Some(Language::Modal),
            "bimodal" => Some(Language::Bimodal),
            _ => None,
        }
    }

    pub fn admits(self, c: Connective) -> bool {
        match c {
            Connective::Cond => self == Language::Cond,
            Connective::Box => self == Language::Modal,
            Connective::BoxI | Connective::BoxM => self == Language::Bimodal,
        }
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The language-specific connectives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Connective {
    Cond,
    Box,
    BoxI,
    BoxM,
}

impl fmt::Display for Connective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Connective::Cond => "~>",
            Connective::Box => "[]",
            Connective::BoxI => "[I]",
            Connective::BoxM => "[M]",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Var(String),
    Bot,
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Imp(Box<Node>, Box<Node>),
    Cond(Box<Node>, Box<Node>),
    Box(Box<Node>),
    BoxI(Box<Node>),
    BoxM(Box<Node>),
}

impl Node {
    pub fn var(name: &str) -> Node {
        Node::Var(name.to_string())
    }

    pub fn and(a: Node, b: Node) -> Node {
        Node::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Node, b: Node) -> Node {
        Node::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Node, b: Node) -> Node {
        Node::Imp(Box::new(a), Box::new(b))
    }

    pub fn cond(a: Node, b: Node) -> Node {
        Node::Cond(Box::new(a), Box::new(b))
    }

    pub fn boxed(a: Node) -> Node {
        Node::Box(Box::new(a))
    }

    pub fn box_i(a: Node) -> Node {
        Node::BoxI(Box::new(a))
    }

    pub fn box_m(a: Node) -> Node {
        Node::BoxM(Box::new(a))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: Node) -> Node {
        Node::imp(a, Node::Bot)
    }

    pub fn top() -> Node {
        Node::neg(Node::Bot)
    }

    pub fn iff(a: Node, b: Node) -> Node {
        Node::and(Node::imp(a.clone(), b.clone()), Node::imp(b, a))
    }

    /// First connective (in pre-order) that `lang` does not admit.
    pub fn foreign_connective(&self, lang: Language) -> Option<Connective> {
        let own = match self {
            Node::Cond(..) => Some(Connective::Cond),
            Node::Box(_) => Some(Connective::Box),
            Node::BoxI(_) => Some(Connective::BoxI),
            Node::BoxM(_) => Some(Connective::BoxM),
            _ => None,
        };
        if let Some(c) = own.filter(|c| !lang.admits(*c)) {
            return Some(c);
        }
        match self {
            Node::Var(_) | Node::Bot => None,
            Node::And(a, b) | Node::Or(a, b) | Node::Imp(a, b) | Node::Cond(a, b) => a
                .foreign_connective(lang)
                .or_else(|| b.foreign_connective(lang)),
            Node::Box(a) | Node::BoxI(a) | Node::BoxM(a) => a.foreign_connective(lang),
        }
    }

    pub fn collect_letters(&self, out: &mut BTreeSet<String>) {
        match self {
            Node::Var(v) => {
                out.insert(v.clone());
            }
            Node::Bot => {}
            Node::And(a, b) | Node::Or(a, b) | Node::Imp(a, b) | Node::Cond(a, b) => {
                a.collect_letters(out);
                b.collect_letters(out);
            }
            Node::Box(a) | Node::BoxI(a) | Node::BoxM(a) => a.collect_letters(out),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Node::Var(_) | Node::Bot => 0,
            Node::And(a, b) | Node::Or(a, b) | Node::Imp(a, b) | Node::Cond(a, b) => {
                1 + a.depth().max(b.depth())
            }
            Node::Box(a) | Node::BoxI(a) | Node::BoxM(a) => 1 + a.depth(),
        }
    }

    /// Nesting depth of modal operators (`[]`, `[I]`, `[M]`) and conditionals.
    pub fn modal_depth(&self) -> usize {
        match self {
            Node::Var(_) | Node::Bot => 0,
            Node::And(a, b) | Node::Or(a, b) | Node::Imp(a, b) => {
                a.modal_depth().max(b.modal_depth())
            }
            Node::Cond(a, b) => 1 + a.modal_depth().max(b.modal_depth()),
            Node::Box(a) | Node::BoxI(a) | Node::BoxM(a) => 1 + a.modal_depth(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Node::Var(_) | Node::Bot => 1,
            Node::And(a, b) | Node::Or(a, b) | Node::Imp(a, b) | Node::Cond(a, b) => {
                1 + a.size() + b.size()
            }
            Node::Box(a) | Node::BoxI(a) | Node::BoxM(a) => 1 + a.size(),
        }
    }

    fn substitute(&self, map: &BTreeMap<String, Node>) -> Node {
        match self {
            Node::Var(v) => map.get(v).cloned().unwrap_or_else(|| self.clone()),
            Node::Bot => Node::Bot,
            Node::And(a, b) => Node::and(a.substitute(map), b.substitute(map)),
            Node::Or(a, b) => Node::or(a.substitute(map), b.substitute(map)),
            Node::Imp(a, b) => Node::imp(a.substitute(map), b.substitute(map)),
            Node::Cond(a, b) => Node::cond(a.substitute(map), b.substitute(map)),
            Node::Box(a) => Node::boxed(a.substitute(map)),
            Node::BoxI(a) => Node::box_i(a.substitute(map)),
            Node::BoxM(a) => Node::box_m(a.substitute(map)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("connective {connective} is not part of language {language}")]
pub struct LanguageError {
    pub connective: Connective,
    pub language: Language,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstitutionError {
    #[error("replacement for `{letter}` is a {found} formula, expected {expected}")]
    LanguageMismatch {
        letter: String,
        expected: Language,
        found: Language,
    },
}

/// A formula tagged with the language it belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Formula {
    language: Language,
    root: Node,
}

impl Formula {
    pub fn new(language: Language, root: Node) -> Result<Formula, LanguageError> {
        match root.foreign_connective(language) {
            Some(connective) => Err(LanguageError {
                connective,
                language,
            }),
            None => Ok(Formula { language, root }),
        }
    }

    pub fn language(&self) -> Language {
        self.language
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn into_root(self) -> Node {
        self.root
    }

    pub fn proposition_letters(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.root.collect_letters(&mut out);
        out
    }

    /// Simultaneous substitution. Every replacement must share the language of `self`.
    pub fn substitute(
        &self,
        map: &BTreeMap<String, Formula>,
    ) -> Result<Formula, SubstitutionError> {
        let mut nodes = BTreeMap::new();
        for (letter, f) in map {
            if f.language != self.language {
                return Err(SubstitutionError::LanguageMismatch {
                    letter: letter.clone(),
                    expected: self.language,
                    found: f.language,
                });
            }
            nodes.insert(letter.clone(), f.root.clone());
        }
        Ok(Formula {
            language: self.language,
            root: self.root.substitute(&nodes),
        })
    }

    /// Rename letters; targets are plain letters so the language is preserved.
    pub fn rename(&self, map: &BTreeMap<String, String>) -> Formula {
        let nodes = map
            .iter()
            .map(|(k, v)| (k.clone(), Node::Var(v.clone())))
            .collect();
        Formula {
            language: self.language,
            root: self.root.substitute(&nodes),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::print_node(&self.root))
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::print_node(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abbreviations_expand() {
        let f = parse("p <-> q", Language::Cond).unwrap();
        assert_eq!(
            f.root(),
            &Node::and(
                Node::imp(Node::var("p"), Node::var("q")),
                Node::imp(Node::var("q"), Node::var("p"))
            )
        );
        assert_eq!(parse("true", Language::Cond).unwrap().root(), &Node::top());
    }

    #[test]
    fn substitution_is_simultaneous() {
        let f = parse("p ~> q", Language::Cond).unwrap();
        let mut map = BTreeMap::new();
        map.insert("p".to_string(), parse("q", Language::Cond).unwrap());
        map.insert("q".to_string(), parse("p & q", Language::Cond).unwrap());
        assert_eq!(f.substitute(&map).unwrap().to_string(), "q ~> p & q");
    }

    #[test]
    fn substitution_rejects_foreign_language() {
        let f = parse("p ~> q", Language::Cond).unwrap();
        let mut map = BTreeMap::new();
        map.insert("p".to_string(), parse("[]q", Language::Modal).unwrap());
        assert!(f.substitute(&map).is_err());
    }

    #[test]
    fn letters_are_sorted() {
        let f = parse("(z ~> a) | m", Language::Cond).unwrap();
        let v: Vec<_> = f.proposition_letters().into_iter().collect();
        assert_eq!(v, ["a", "m", "z"]);
    }
}
