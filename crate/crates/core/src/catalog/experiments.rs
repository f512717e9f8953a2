//! Correspondence, persistence and countermodel-search experiments.

use rand::Rng;
use serde::Serialize;

use super::{logic_frame_conditions, lookup, CatalogError, Condition, Preset, Witness};
use crate::enumerate::{Families, FrameSpace, Infeasible};
use crate::fillins::{fill, FillInKind};
use crate::frames::{ConditionalFrame, GeneralFrame};
use crate::gen::{random_full_frame, random_general_frame, rng_for, GenOptions};
use crate::par::{self, Step};
use crate::semantics::{valid_compiled, Compiled, Countermodel, EvalError, Verdict};
use crate::syntax::Formula;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Infeasible(#[from] Infeasible),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("sample sizes must satisfy 1 <= min <= max <= 20, got {0}..={1}")]
    BadRange(usize, usize),
}

/// Where and how random frames are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Sampling {
    pub samples: u64,
    pub seed: u64,
    pub min_worlds: usize,
    pub max_worlds: usize,
    pub strong: bool,
}

impl Sampling {
    pub fn new(samples: u64, seed: u64) -> Sampling {
        Sampling { samples, seed, min_worlds: 3, max_worlds: 6, strong: false }
    }

    pub fn worlds(mut self, min: usize, max: usize) -> Sampling {
        self.min_worlds = min;
        self.max_worlds = max;
        self
    }

    pub fn strong(mut self, strong: bool) -> Sampling {
        self.strong = strong;
        self
    }

    fn check(&self) -> Result<(), ExperimentError> {
        if self.min_worlds == 0 || self.min_worlds > self.max_worlds || self.max_worlds > crate::order::MAX_WORLDS {
            return Err(ExperimentError::BadRange(self.min_worlds, self.max_worlds));
        }
        Ok(())
    }

    fn size<R: Rng>(&self, rng: &mut R) -> usize {
        rng.gen_range(self.min_worlds..=self.max_worlds)
    }
}

/// Check a catalogue correspondent on `g`.
pub fn correspondent_holds(g: &GeneralFrame, key: &str) -> Result<Result<(), Witness>, CatalogError> {
    let e = lookup(key)?;
    let c = e.correspondent.ok_or_else(|| CatalogError::NoCorrespondent(key.to_string()))?;
    Ok(c.check(g))
}

/// A frame on which validity and the correspondent disagree.
#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    pub frame: GeneralFrame,
    pub countermodel: Option<Countermodel>,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorrespondenceReport {
    pub axiom: String,
    pub conditions: Vec<Condition>,
    pub exhaustive_frames: u64,
    pub sampled_frames: u64,
    pub mismatches: u64,
    pub first_mismatch: Option<Mismatch>,
}

impl CorrespondenceReport {
    pub fn agrees(&self) -> bool {
        self.mismatches == 0
    }
}

fn agreement(frame: &GeneralFrame, schemas: &[Compiled], conds: &[Condition]) -> Result<Option<Mismatch>, EvalError> {
    let mut countermodel = None;
    for c in schemas {
        if let Verdict::Refuted(cm) = valid_compiled(frame, c)? {
            countermodel = Some(cm);
            break;
        }
    }
    let witness = conds.iter().find_map(|c| c.check(frame).err());
    let valid = countermodel.is_none();
    let holds = witness.is_none();
    if valid == holds {
        return Ok(None);
    }
    Ok(Some(Mismatch { frame: frame.clone(), countermodel, witness }))
}

/// Frame validity of the schemas versus the conjunction of the conditions,
/// exhaustively on full frames up to `max_worlds` worlds and on random full
/// frames.
pub fn verify_conditions(
    label: &str,
    schemas: &[Formula],
    conds: &[Condition],
    max_worlds: usize,
    sampling: Sampling,
) -> Result<CorrespondenceReport, ExperimentError> {
    sampling.check()?;
    let compiled: Vec<Compiled> = schemas.iter().map(Compiled::new).collect();
    let space = FrameSpace::new(max_worlds, Families::Full)?;
    let first_err = std::sync::Mutex::new(None);
    let record = |e: EvalError| {
        first_err.lock().unwrap().get_or_insert(e);
        Step::Skip
    };
    let ex = par::scan(space.len(), |i| match space.get(i) {
        None => Step::Skip,
        Some(g) => match agreement(&g, &compiled, conds) {
            Ok(None) => Step::Pass,
            Ok(Some(m)) => Step::Hit(m),
            Err(e) => record(e),
        },
    });
    let sm = par::scan(sampling.samples, |i| {
        let mut rng = rng_for(sampling.seed, i);
        let n = sampling.size(&mut rng);
        let opts = GenOptions { strong: sampling.strong, posets_only: false };
        let f = random_full_frame(&mut rng, n, opts);
        match agreement(f.general(), &compiled, conds) {
            Ok(None) => Step::Pass,
            Ok(Some(m)) => Step::Hit(m),
            Err(e) => record(e),
        }
    });
    if let Some(e) = first_err.into_inner().unwrap() {
        return Err(e.into());
    }
    Ok(CorrespondenceReport {
        axiom: label.to_string(),
        conditions: conds.to_vec(),
        exhaustive_frames: ex.tested,
        sampled_frames: sm.tested,
        mismatches: ex.hits + sm.hits,
        first_mismatch: ex.first.or(sm.first).map(|(_, m)| m),
    })
}

/// [`verify_conditions`] for one catalogue axiom and its correspondent.
pub fn verify_correspondence(
    key: &str,
    max_worlds: usize,
    sampling: Sampling,
) -> Result<CorrespondenceReport, ExperimentError> {
    let e = lookup(key)?;
    let c = e.correspondent.ok_or_else(|| CatalogError::NoCorrespondent(key.to_string()))?;
    verify_conditions(key, &[e.formula()], &[c], max_worlds, sampling)
}

/// A general frame meeting the precondition whose fill-in does not.
#[derive(Clone, Debug, Serialize)]
pub struct PersistenceCounterexample {
    pub general: GeneralFrame,
    pub filled: Option<ConditionalFrame>,
    pub failure: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PersistenceReport {
    pub axiom: String,
    pub kind: FillInKind,
    pub conditions: Vec<Condition>,
    pub strong: bool,
    pub exhaustive_frames: u64,
    pub sampled_frames: u64,
    /// Samples for which no frame meeting the precondition was found.
    pub unmatched_samples: u64,
    pub failures: u64,
    pub counterexample: Option<PersistenceCounterexample>,
}

impl PersistenceReport {
    pub fn persists(&self) -> bool {
        self.failures == 0
    }

    pub fn tested(&self) -> u64 {
        self.exhaustive_frames + self.sampled_frames
    }
}

/// Attempts per sample to draw a frame that meets the precondition.
pub const MAX_ATTEMPTS: usize = 400;

/// Exhaustive search over general frames up to this many worlds precedes sampling.
pub const PERSISTENCE_EXHAUSTIVE_WORLDS: usize = 2;

/// Conditions required of the general frame and checked on its fill-in.
pub fn persistence_conditions(key: &str, kind: FillInKind) -> Result<Vec<Condition>, CatalogError> {
    let e = lookup(key)?;
    let c = e.correspondent.ok_or_else(|| CatalogError::NoCorrespondent(key.to_string()))?;
    let mut conds = vec![c];
    if kind == FillInKind::Squeeze {
        conds.extend([Condition::Id, Condition::Icc]);
    }
    conds.sort();
    conds.dedup();
    Ok(conds)
}

fn meets(g: &GeneralFrame, conds: &[Condition], strong: bool) -> bool {
    (!strong || (g.order().is_poset() && g.is_strongly_coherent())) && conds.iter().all(|c| c.holds(g))
}

fn persistence_step(g: GeneralFrame, kind: FillInKind, conds: &[Condition]) -> Step<PersistenceCounterexample> {
    match fill(&g, kind) {
        Err(e) => Step::Hit(PersistenceCounterexample { general: g, filled: None, failure: e.to_string() }),
        Ok(f) => match conds.iter().find_map(|c| c.check(&f).err().map(|w| (c, w))) {
            None => Step::Pass,
            Some((c, w)) => Step::Hit(PersistenceCounterexample {
                general: g,
                filled: Some(f),
                failure: format!("{c} fails at {w}"),
            }),
        },
    }
}

/// Correspondent-level persistence: every general frame satisfying the
/// correspondent on its admissible upsets (and, for squeeze, reflexivity and
/// cautious monotonicity) is filled and the conditions are re-checked on the
/// result. Frames with at most two worlds are enumerated exhaustively before
/// random sampling. With `strong`, only strongly coherent posets are used.
pub fn persistence_experiment(
    key: &str,
    kind: FillInKind,
    sampling: Sampling,
) -> Result<PersistenceReport, ExperimentError> {
    sampling.check()?;
    let conds = persistence_conditions(key, kind)?;
    let strong = sampling.strong;
    let space = FrameSpace::new(PERSISTENCE_EXHAUSTIVE_WORLDS, Families::All)?;
    let ex = par::scan(space.len(), |i| match space.get(i) {
        Some(g) if meets(&g, &conds, strong) => persistence_step(g, kind, &conds),
        _ => Step::Skip,
    });
    let opts = GenOptions { strong, posets_only: strong };
    let unmatched = std::sync::atomic::AtomicU64::new(0);
    let sm = par::scan(sampling.samples, |i| {
        let mut rng = rng_for(sampling.seed, i);
        for _ in 0..MAX_ATTEMPTS {
            let n = sampling.size(&mut rng);
            let g = random_general_frame(&mut rng, n, opts);
            if meets(&g, &conds, strong) {
                return persistence_step(g, kind, &conds);
            }
        }
        unmatched.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        Step::Skip
    });
    Ok(PersistenceReport {
        axiom: key.to_string(),
        kind,
        conditions: conds,
        strong,
        exhaustive_frames: ex.tested,
        sampled_frames: sm.tested,
        unmatched_samples: unmatched.into_inner(),
        failures: ex.hits + sm.hits,
        counterexample: ex.first.or(sm.first).map(|(_, c)| c),
    })
}

/// A frame of the logic together with a countermodel for the target.
#[derive(Clone, Debug, Serialize)]
pub struct SearchHit {
    pub frame: ConditionalFrame,
    pub countermodel: Countermodel,
}

/// Largest frame size searched exhaustively.
pub const SEARCH_EXHAUSTIVE_WORLDS: usize = 2;

/// Look for a full frame satisfying the preset's frame conditions on which
/// `target` is not valid: first every frame with at most two worlds in
/// enumeration order, then random frames with up to `max_worlds` worlds.
pub fn search_countermodel(
    p: &Preset,
    target: &Formula,
    max_worlds: usize,
    sampling: Sampling,
) -> Result<Option<SearchHit>, ExperimentError> {
    let conds = logic_frame_conditions(p)?;
    let compiled = Compiled::new(target);
    let probe = |g: &GeneralFrame| -> Option<Result<Countermodel, EvalError>> {
        if !conds.iter().all(|c| c.holds(g)) {
            return None;
        }
        if let Err(e) = compiled.check_language(g) {
            return Some(Err(e));
        }
        match valid_compiled(g, &compiled) {
            Ok(Verdict::Valid) => None,
            Ok(Verdict::Refuted(cm)) => Some(Ok(cm)),
            Err(e) => Some(Err(e)),
        }
    };
    let space = FrameSpace::new(max_worlds.min(SEARCH_EXHAUSTIVE_WORLDS), Families::Full)?;
    let hit = par::find_first(space.len(), |i| {
        let g = space.get(i)?;
        probe(&g).map(|r| r.map(|cm| (g, cm)))
    });
    let hit = match hit {
        Some(h) => Some(h),
        None if max_worlds > SEARCH_EXHAUSTIVE_WORLDS => {
            let s = Sampling { min_worlds: SEARCH_EXHAUSTIVE_WORLDS + 1, max_worlds, ..sampling };
            s.check()?;
            par::find_first(s.samples, |i| {
                let mut rng = rng_for(s.seed, i);
                let n = s.size(&mut rng);
                let strong = rng.gen_bool(0.5);
                let f = random_full_frame(&mut rng, n, GenOptions { strong, posets_only: false });
                probe(f.general()).map(|r| r.map(|cm| (f.into_general(), cm)))
            })
        }
        None => None,
    };
    match hit {
        None => Ok(None),
        Some((_, Err(e))) => Err(e.into()),
        Some((_, Ok((g, countermodel)))) => Ok(Some(SearchHit {
            frame: ConditionalFrame::try_from(g).expect("enumerated frames are full"),
            countermodel,
        })),
    }
}
