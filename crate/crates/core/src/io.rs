//! JSON file formats.
//!
//! Frames:
//! `{ "worlds": n, "leq": [[i,j],...], "admissible": [[w,...],...] | "all",
//!    "relations": { "<upset-key>": [[i,j],...] } }`
//! where an upset key is the comma-joined ascending world list (`""` for the
//! empty set). `leq` is closed reflexively and transitively on load. A modal
//! frame replaces `admissible` and `relations` by a single `"rel"`.
//!
//! Valuations: `{ "<letter>": [w,...] }`.
//!
//! Algebras: `{ "size": k, "leq": [[i,j],...], "imp": k×k, "cond": k×k,
//! "top": i, "bot": j }`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{AlgebraError, FiniteCha};
use crate::frames::{ConditionalFrame, FrameError, GeneralFrame, ModalFrame, Relation};
use crate::order::{FinitePreorder, WorldSet, MAX_WORLDS};
use crate::semantics::Valuation;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("bad upset key `{0}`")]
    BadKey(String),
    #[error("relation given for {0}, which is not admissible")]
    UnknownUpset(WorldSet),
    #[error("frame file needs either `admissible` with `relations`, or `rel`")]
    Shape,
    #[error("`admissible` must be a list of world lists or the string \"all\"")]
    BadAdmissible,
    #[error("world {0} out of range")]
    BadWorld(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum AdmissibleRepr {
    Word(String),
    List(Vec<WorldSet>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FrameFile {
    worlds: usize,
    leq: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    admissible: Option<AdmissibleRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    relations: Option<BTreeMap<String, Vec<(usize, usize)>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rel: Option<Vec<(usize, usize)>>,
}

/// A frame read from a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LoadedFrame {
    Conditional(ConditionalFrame),
    General(GeneralFrame),
    Modal(ModalFrame),
}

impl LoadedFrame {
    pub fn general(&self) -> Option<&GeneralFrame> {
        match self {
            LoadedFrame::Conditional(f) => Some(f.general()),
            LoadedFrame::General(g) => Some(g),
            LoadedFrame::Modal(_) => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            LoadedFrame::Conditional(_) => "conditional",
            LoadedFrame::General(_) => "general",
            LoadedFrame::Modal(_) => "modal",
        }
    }
}

fn relation(n: usize, pairs: &[(usize, usize)]) -> Result<Relation, IoError> {
    Relation::from_pairs(n, pairs).ok_or_else(|| {
        let bad = pairs.iter().flat_map(|&(a, b)| [a, b]).find(|&w| w >= n).unwrap_or(n);
        IoError::BadWorld(bad)
    })
}

/// Read and validate a frame.
pub fn parse_frame(json: &str) -> Result<LoadedFrame, IoError> {
    let file: FrameFile = serde_json::from_str(json)?;
    let n = file.worlds;
    if n > MAX_WORLDS {
        return Err(FrameError::Order(crate::order::OrderError::TooManyWorlds { n }).into());
    }
    let order = FinitePreorder::generated(n, &file.leq).map_err(FrameError::from)?;
    match (file.admissible, file.relations, file.rel) {
        (None, None, Some(rel)) => {
            let r = relation(n, &rel)?;
            Ok(LoadedFrame::Modal(ModalFrame::new(order, r)?))
        }
        (Some(adm), Some(rels), None) => {
            let mut entries = BTreeMap::new();
            for (key, pairs) in &rels {
                let a = WorldSet::from_key(key).ok_or_else(|| IoError::BadKey(key.clone()))?;
                entries.insert(a, relation(n, pairs)?);
            }
            let full = match &adm {
                AdmissibleRepr::Word(w) if w == "all" => true,
                AdmissibleRepr::Word(_) => return Err(IoError::BadAdmissible),
                AdmissibleRepr::List(_) => false,
            };
            if let AdmissibleRepr::List(list) = &adm {
                for a in entries.keys() {
                    if !list.contains(a) {
                        return Err(IoError::UnknownUpset(*a));
                    }
                }
                for a in list {
                    if !entries.contains_key(a) {
                        entries.insert(*a, Relation::empty(0));
                    }
                }
            }
            let g = GeneralFrame::new(order, entries)?;
            if full {
                Ok(LoadedFrame::Conditional(ConditionalFrame::try_from(g)?))
            } else {
                let report = g.validate();
                if !report.is_valid() {
                    return Err(FrameError::Invalid(report).into());
                }
                Ok(LoadedFrame::General(g))
            }
        }
        _ => Err(IoError::Shape),
    }
}

fn general_file(g: &GeneralFrame, all: bool) -> FrameFile {
    FrameFile {
        worlds: g.len(),
        leq: g.order().pairs(),
        admissible: Some(if all {
            AdmissibleRepr::Word("all".into())
        } else {
            AdmissibleRepr::List(g.admissible().to_vec())
        }),
        relations: Some(g.entries().map(|(a, r)| (a.key(), r.pairs())).collect()),
        rel: None,
    }
}

impl Serialize for GeneralFrame {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        general_file(self, false).serialize(s)
    }
}

impl Serialize for ConditionalFrame {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        general_file(self.general(), true).serialize(s)
    }
}

impl Serialize for ModalFrame {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FrameFile {
            worlds: self.len(),
            leq: self.order().pairs(),
            admissible: None,
            relations: None,
            rel: Some(self.relation().pairs()),
        }
        .serialize(s)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serialises")
}

pub fn parse_valuation(json: &str) -> Result<Valuation, IoError> {
    Ok(serde_json::from_str(json)?)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    size: usize,
    leq: Vec<(usize, usize)>,
    imp: Vec<Vec<usize>>,
    cond: Vec<Vec<usize>>,
    top: usize,
    bot: usize,
}

/// Read an algebra; the lattice structure is checked, the remaining laws are
/// left to [`FiniteCha::validate`].
pub fn parse_algebra(json: &str) -> Result<FiniteCha, IoError> {
    let f: AlgebraFile = serde_json::from_str(json)?;
    Ok(FiniteCha::new(f.size, &f.leq, f.imp, f.cond, f.top, f.bot)?)
}

impl Serialize for FiniteCha {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        AlgebraFile {
            size: self.size(),
            leq: self.leq_pairs(),
            imp: self.imp_table(),
            cond: self.cond_table(),
            top: self.top(),
            bot: self.bot(),
        }
        .serialize(s)
    }
}
