//! Axiom catalogue: schemas, frame correspondents, persistence cells and
//! named logics, plus the experiments that test them.

mod conditions;
mod experiments;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::fillins::FillInKind;
use crate::syntax::{parse, Formula, Language};

pub use conditions::{Condition, Witness};
pub use experiments::*;

/// Expected outcome of a persistence cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Persistence {
    Persistent,
    RefutedByExample,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomEntry {
    pub key: &'static str,
    /// Schema in concrete syntax of the conditional language.
    pub schema: &'static str,
    /// Modal formula whose `p`-translation is the schema.
    pub modal_source: Option<&'static str>,
    pub correspondent: Option<Condition>,
    pub cells: &'static [(FillInKind, Persistence)],
}

impl AxiomEntry {
    pub fn formula(&self) -> Formula {
        parse(self.schema, Language::Cond).expect("catalogue schemas parse")
    }

    pub fn cell(&self, kind: FillInKind) -> Option<Persistence> {
        self.cells.iter().find(|(k, _)| *k == kind).map(|(_, p)| *p)
    }

    /// Squeeze cells are stated relative to reflexivity and cautious monotonicity.
    pub fn needs_icc(kind: FillInKind) -> bool {
        kind == FillInKind::Squeeze
    }
}

use FillInKind::{Empty as E, Principal as P, Reflexive as Rf, Squeeze as S, Total as T, Transitive as Tr, Union as U};
use Persistence::{Persistent as Y, RefutedByExample as N};

const EVERY_KIND: &[(FillInKind, Persistence)] = &[(E, Y), (Rf, Y), (P, Y), (T, Y), (U, Y), (Tr, Y), (S, Y)];

macro_rules! entry {
    ($key:literal, $schema:literal, $src:expr, $corr:expr, $cells:expr) => {
        AxiomEntry { key: $key, schema: $schema, modal_source: $src, correspondent: $corr, cells: $cells }
    };
}

pub static CATALOG: &[AxiomEntry] = &[
    entry!("id", "p ~> p", None, Some(Condition::Id), &[(E, Y), (Rf, Y), (Tr, Y), (U, Y)]),
    entry!("mp", "p & (p ~> q) -> q", None, Some(Condition::Mp), &[(P, Y), (Rf, Y), (T, Y), (S, Y), (E, N)]),
    entry!("mpp", "(p ~> q) -> p -> q", None, Some(Condition::Mp), &[(P, Y), (Rf, Y), (T, Y)]),
    entry!("str", "(p -> q) -> p ~> q", None, Some(Condition::Str), &[(E, Y), (Tr, Y), (Rf, N)]),
    entry!("unit", "p -> q ~> p", None, Some(Condition::Unit), &[(E, Y), (P, Y), (U, Y)]),
    entry!("exf", "~p -> p ~> q", None, Some(Condition::Exf), &[(E, Y), (U, Y)]),
    entry!("tc", "(p ~> q) -> q", None, Some(Condition::Tc), &[(P, Y), (T, Y), (U, Y)]),
    entry!("cs", "p & q -> p ~> q", None, Some(Condition::Cs), &[(E, Y), (P, Y)]),
    entry!("lin", "(p ~> q) | (q ~> p)", None, Some(Condition::Lin), &[(E, Y)]),
    entry!("tr", "(p ~> q) & (q ~> r) -> p ~> r", None, Some(Condition::Tr), &[(T, Y), (Tr, Y)]),
    entry!("mon", "(p ~> r) -> p & q ~> r", None, Some(Condition::Mon), &[(U, Y), (S, N)]),
    entry!("ex", "(p & q ~> r) -> p ~> q ~> r", None, Some(Condition::Ex), &[(E, Y)]),
    entry!("red", "(true ~> p) -> p", None, Some(Condition::Red), EVERY_KIND),
    entry!("vec_top", "p -> true ~> p", None, Some(Condition::VecTop), EVERY_KIND),
    entry!("expl", "false ~> p", None, Some(Condition::Expl), EVERY_KIND),
    entry!("ct", "(p ~> q) & (p & q ~> r) -> p ~> r", None, None, &[]),
    entry!("cm", "(p ~> q) & (p ~> r) -> p & q ~> r", None, None, &[]),
    entry!("ca", "(p ~> q) -> p ~> p & q", None, None, &[]),
    entry!("re", "(p ~> q) & (q ~> p) & (p ~> r) -> q ~> r", None, Some(Condition::Re), &[(S, Y)]),
    entry!("four_c", "(p ~> q) -> p ~> p ~> q", Some("[]q -> [][]q"), Some(Condition::FourC), &[(S, Y), (E, Y)]),
    entry!("c4_c", "(p ~> p ~> q) -> p ~> q", Some("[][]q -> []q"), Some(Condition::C4c), &[(E, Y)]),
    entry!("box_tc", "p ~> ((p ~> q) -> q)", Some("[]([]q -> q)"), Some(Condition::BoxTc), &[(E, Y)]),
    entry!("bt", "p ~> ((p ~> q) -> q)", Some("[]([]q -> q)"), Some(Condition::BoxTc), &[(E, Y)]),
    entry!("cem1", "(p ~> q) | (p ~> ~q)", Some("[]q | []~q"), Some(Condition::Cem1), &[(E, Y)]),
    entry!("cem2", "p ~> q | ~q", Some("[](q | ~q)"), Some(Condition::Cem2), &[(E, Y)]),
    entry!("cem3", "q | (p ~> ~(p ~> q))", Some("q | []~[]q"), Some(Condition::Cem3), &[(E, Y)]),
    entry!("ecm1", "(p ~> q) | ~(p ~> q)", Some("[]q | ~[]q"), Some(Condition::Ecm1), &[(E, Y)]),
    entry!("ecm2", "(p ~> q) | (p ~> ~(p ~> q))", Some("[]q | []~[]q"), Some(Condition::Ecm2), &[(E, Y)]),
    entry!("clin1", "p ~> (q -> r) | (r -> q)", Some("[]((q -> r) | (r -> q))"), None, &[]),
    entry!("clin2", "(p ~> (q -> r)) | (p ~> (r -> q))", Some("[](q -> r) | [](r -> q)"), None, &[]),
    entry!("clin3", "(p ~> ((p ~> q) -> r)) | (p ~> ((p ~> r) -> q))", Some("[]([]q -> r) | []([]r -> q)"), None, &[]),
    entry!("in1", "~(p ~> q) -> p ~> ~q", Some("~[]q -> []~q"), None, &[]),
    entry!("in2", "~(p ~> ~q) -> p ~> q", Some("~[]~q -> []q"), None, &[]),
    entry!("or", "(p ~> r) & (q ~> r) -> p | q ~> r", None, None, &[]),
    entry!("k_c", "(p ~> q & r) <-> (p ~> q) & (p ~> r)", None, None, &[]),
    entry!("n_c", "(p ~> true) <-> true", None, None, &[]),
    entry!("simp", "(p ~> q & r) -> p ~> q", None, None, &[]),
    entry!("adj", "(p ~> q) & (p ~> r) -> p ~> q & r", None, None, &[]),
    entry!("unit_says", "q -> p ~> q", Some("q -> []q"), Some(Condition::Unit), &[(E, Y), (P, Y), (U, Y)]),
    entry!("ck", "(p ~> (q -> r)) -> (p ~> q) -> p ~> r", Some("[](q -> r) -> []q -> []r"), None, &[]),
];

pub fn entry(key: &str) -> Option<&'static AxiomEntry> {
    CATALOG.iter().find(|e| e.key == key)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown axiom `{0}`")]
    UnknownAxiom(String),
    #[error("unknown logic `{0}`")]
    UnknownLogic(String),
    #[error("axiom `{0}` has no frame correspondent")]
    NoCorrespondent(String),
}

pub fn lookup(key: &str) -> Result<&'static AxiomEntry, CatalogError> {
    entry(key).ok_or_else(|| CatalogError::UnknownAxiom(key.to_string()))
}

/// A named logic: the base logic plus a set of catalogue axioms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Preset {
    pub name: &'static str,
    pub axioms: &'static [&'static str],
}

pub static PRESETS: &[Preset] = &[
    Preset { name: "ICK", axioms: &[] },
    Preset { name: "iKRI", axioms: &["mp", "tr"] },
    Preset { name: "iCC", axioms: &["id", "ct", "cm"] },
    Preset { name: "iCB", axioms: &["id", "ct", "cm", "re", "four_c"] },
    Preset { name: "HLCflat", axioms: &["id", "tr"] },
    Preset { name: "HLCsharp", axioms: &["id", "tr", "or"] },
    Preset { name: "HLCflat_str", axioms: &["id", "tr", "str"] },
    Preset { name: "sICL", axioms: &["unit", "c4_c"] },
    Preset { name: "sCondACL", axioms: &["unit", "bt"] },
];

pub fn preset(name: &str) -> Result<&'static Preset, CatalogError> {
    PRESETS
        .iter()
        .find(|p| p.name == name)
        .ok_or_else(|| CatalogError::UnknownLogic(name.to_string()))
}

/// Frame conditions characterising a preset. `ct` and `cm` only have a joint
/// correspondent, so they must appear together.
pub fn logic_frame_conditions(p: &Preset) -> Result<Vec<Condition>, CatalogError> {
    let has = |k: &str| p.axioms.contains(&k);
    let mut out = Vec::new();
    for &key in p.axioms {
        let e = lookup(key)?;
        match (key, e.correspondent) {
            ("ct" | "cm", _) => {
                if !(has("ct") && has("cm")) {
                    return Err(CatalogError::NoCorrespondent(key.to_string()));
                }
                out.push(Condition::Icc);
            }
            (_, Some(c)) => out.push(c),
            (_, None) => return Err(CatalogError::NoCorrespondent(key.to_string())),
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::translate::p_translate;

    #[test]
    fn schemas_parse_and_keys_are_unique() {
        let mut keys: Vec<_> = CATALOG.iter().map(|e| e.key).collect();
        for e in CATALOG {
            e.formula();
        }
        keys.sort();
        let before = keys.len();
        keys.dedup();
        assert_eq!(keys.len(), before);
    }

    #[test]
    fn modal_sources_translate_to_schemas() {
        for e in CATALOG {
            if let Some(src) = e.modal_source {
                let m = parse(src, Language::Modal).unwrap();
                assert_eq!(p_translate(&m, "p").unwrap(), e.formula(), "{}", e.key);
            }
        }
    }

    #[test]
    fn presets() {
        assert_eq!(logic_frame_conditions(preset("ICK").unwrap()).unwrap(), vec![]);
        assert_eq!(
            logic_frame_conditions(preset("iCC").unwrap()).unwrap(),
            vec![Condition::Id, Condition::Icc]
        );
        assert_eq!(
            logic_frame_conditions(preset("HLCsharp").unwrap()),
            Err(CatalogError::NoCorrespondent("or".into()))
        );
        assert!(preset("nope").is_err());
    }
}
