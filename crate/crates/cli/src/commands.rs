use std::fs;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::json;

use clc_core::algebra::{check_duality_roundtrip, dual_frame, frame_roundtrip, DualityError};
use clc_core::catalog::{
    correspondent_holds, lookup, persistence_experiment, preset, search_countermodel, verify_correspondence, Sampling,
};
use clc_core::fillins::{fill, FillInKind};
use clc_core::io::{parse_algebra, parse_frame, parse_valuation, to_json, LoadedFrame};
use clc_core::semantics::{check, truth_set, valid, Countermodel, Structure, Verdict};
use clc_core::translate::{gmt_translate, p_translate};
use clc_core::{parse, Formula, Language, WorldSet};

use crate::report::{Inputs, Outcome};
use crate::{Command, Expect, Lang, Mode};

fn read(inputs: &mut Inputs, name: &str, path: &str) -> Result<String> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    inputs.record(name, text.as_bytes());
    Ok(text)
}

fn write(path: &str, text: &str) -> Result<()> {
    fs::write(path, format!("{text}\n")).with_context(|| format!("writing {path}"))
}

fn load_frame(inputs: &mut Inputs, path: &str) -> Result<LoadedFrame> {
    let text = read(inputs, "frame", path)?;
    parse_frame(&text).with_context(|| format!("loading frame {path}"))
}

fn formula(inputs: &mut Inputs, text: &str, lang: Language) -> Result<Formula> {
    inputs.record("formula", text.as_bytes());
    parse(text, lang).map_err(|e| anyhow!("{e}"))
}

fn structure(frame: &LoadedFrame) -> (&dyn Structure, Language) {
    match frame {
        LoadedFrame::Conditional(f) => (f, Language::Cond),
        LoadedFrame::General(g) => (g, Language::Cond),
        LoadedFrame::Modal(m) => (m, Language::Modal),
    }
}

fn describe(cm: &Countermodel) -> String {
    let vals: Vec<String> = cm.valuation.iter().map(|(l, s)| format!("{l} = {s}")).collect();
    if vals.is_empty() {
        format!("world {}", cm.world)
    } else {
        format!("world {} with {}", cm.world, vals.join(", "))
    }
}

fn fill_kind(name: &str) -> Result<FillInKind> {
    FillInKind::from_name(name).ok_or_else(|| {
        let names: Vec<&str> = FillInKind::ALL.iter().map(|k| k.name()).collect();
        anyhow!("unknown fill-in `{name}` (expected one of {})", names.join(", "))
    })
}

pub fn run(cmd: &Command, inputs: &mut Inputs) -> Result<Outcome> {
    match cmd {
        Command::Parse { formula: text, lang } => {
            let lang = match lang {
                Lang::Cond => Language::Cond,
                Lang::Modal => Language::Modal,
                Lang::Bimodal => Language::Bimodal,
            };
            let f = formula(inputs, text, lang)?;
            let printed = f.to_string();
            let letters: Vec<String> = f.proposition_letters().into_iter().collect();
            Ok(Outcome::new(
                0,
                &printed,
                json!({
                    "language": lang.name(),
                    "printed": printed,
                    "letters": letters,
                    "size": f.root().size(),
                    "depth": f.root().depth(),
                }),
            ))
        }

        Command::Mc { frame, val, formula: text, world } => {
            let lf = load_frame(inputs, frame)?;
            let v = parse_valuation(&read(inputs, "val", val)?).with_context(|| format!("loading valuation {val}"))?;
            let (s, lang) = structure(&lf);
            let f = formula(inputs, text, lang)?;
            match world {
                Some(x) => {
                    let holds = check(s, &v, &f, *x)?;
                    let text = format!("{} at world {x}", if holds { "true" } else { "false" });
                    Ok(Outcome::new(if holds { 0 } else { 1 }, text, json!({ "world": x, "holds": holds })))
                }
                None => {
                    let set = truth_set(s, &v, &f)?;
                    let everywhere = set == WorldSet::full(s.order().len());
                    let text = format!("truth set {set}");
                    Ok(Outcome::new(if everywhere { 0 } else { 1 }, text, json!({ "truth_set": set, "everywhere": everywhere })))
                }
            }
        }

        Command::Valid { frame, formula: text, admissible, budget, out } => {
            let lf = load_frame(inputs, frame)?;
            if matches!(lf, LoadedFrame::General(_)) && !admissible {
                bail!("{frame} is a general frame; pass --admissible to quantify over admissible valuations");
            }
            let (s, lang) = structure(&lf);
            let f = formula(inputs, text, lang)?;
            match valid(s, &f, *budget)? {
                Verdict::Valid => Ok(Outcome::new(0, "valid", json!({ "verdict": "valid" }))),
                Verdict::Refuted(cm) => {
                    if let Some(path) = out {
                        write(path, &to_json(&cm.valuation))?;
                    }
                    let text = format!("refuted at {}", describe(&cm));
                    Ok(Outcome::new(1, text, json!({ "verdict": "refuted", "countermodel": cm })))
                }
            }
        }

        Command::Correspond { frame, axiom } => {
            let lf = load_frame(inputs, frame)?;
            let g = lf.general().ok_or_else(|| anyhow!("correspondents are stated for conditional frames"))?;
            let cond = lookup(axiom)?.correspondent.map(|c| c.name()).unwrap_or_default();
            match correspondent_holds(g, axiom)? {
                Ok(()) => Ok(Outcome::new(0, format!("{cond} holds"), json!({ "condition": cond, "holds": true }))),
                Err(w) => Ok(Outcome::new(
                    1,
                    format!("{cond} fails at {w}"),
                    json!({ "condition": cond, "holds": false, "witness": w }),
                )),
            }
        }

        Command::VerifyCorrespondence { axiom, max_worlds, samples, seed, sample_min_worlds, sample_max_worlds, strong } => {
            let sampling = Sampling::new(*samples, *seed).worlds(*sample_min_worlds, *sample_max_worlds).strong(*strong);
            let r = verify_correspondence(axiom, *max_worlds, sampling)?;
            let text = format!(
                "{axiom}: {} exhaustive and {} sampled frames, {} mismatches",
                r.exhaustive_frames, r.sampled_frames, r.mismatches
            );
            Ok(Outcome::new(if r.agrees() { 0 } else { 1 }, text, json!({ "sampling": sampling, "report": r })))
        }

        Command::Fillin { frame, kind, out } => {
            let kind = fill_kind(kind)?;
            let lf = load_frame(inputs, frame)?;
            let g = lf.general().ok_or_else(|| anyhow!("fill-ins apply to general frames"))?;
            let f = fill(g, kind)?;
            write(out, &to_json(&f))?;
            let text = format!("{} fill-in written to {out} ({} relations)", kind, f.admissible().len());
            Ok(Outcome::new(0, text, json!({ "kind": kind, "frame": f })))
        }

        Command::Persist { axiom, fillin, samples, seed, strong, expect, min_worlds, max_worlds, out } => {
            let kind = fill_kind(fillin)?;
            let sampling = Sampling::new(*samples, *seed).worlds(*min_worlds, *max_worlds).strong(*strong);
            let r = persistence_experiment(axiom, kind, sampling)?;
            if let (Some(path), Some(c)) = (out, &r.counterexample) {
                write(path, &to_json(&c.general))?;
            }
            let passed = r.persists();
            let code = match expect {
                None => u8::from(!passed),
                Some(Expect::Pass) => u8::from(!passed),
                Some(Expect::Fail) => u8::from(passed),
            };
            let mut text = format!(
                "{axiom} under {kind}: {} of {} frames failed ({} exhaustive, {} sampled, {} samples unmatched)",
                r.failures,
                r.tested(),
                r.exhaustive_frames,
                r.sampled_frames,
                r.unmatched_samples
            );
            if let Some(c) = &r.counterexample {
                text.push_str(&format!("\nfirst counterexample: {}", c.failure));
            }
            Ok(Outcome::new(code, text, json!({ "sampling": sampling, "passed": passed, "report": r })))
        }

        Command::Dualize { algebra, out } => {
            let alg = parse_algebra(&read(inputs, "algebra", algebra)?)?;
            let report = alg.validate();
            if !report.is_valid() {
                bail!("not a conditional Heyting algebra: {report:?}");
            }
            let f = dual_frame(&alg)?;
            write(out, &to_json(&f))?;
            let text = format!("dual frame with {} prime filters written to {out}", f.len());
            Ok(Outcome::new(0, text, json!({ "frame": f })))
        }

        Command::Roundtrip { frame, algebra } => {
            let (what, res) = if let Some(path) = frame {
                match load_frame(inputs, path)? {
                    LoadedFrame::Conditional(f) => ("frame", frame_roundtrip(&f)),
                    other => bail!("round trips need a full conditional frame, got a {} frame", other.kind()),
                }
            } else {
                let path = algebra.as_deref().expect("clap requires one input");
                ("algebra", check_duality_roundtrip(&parse_algebra(&read(inputs, "algebra", path)?)?))
            };
            match res {
                Ok(()) => Ok(Outcome::new(0, format!("{what} round trip succeeds"), json!({ "roundtrip": true }))),
                Err(
                    e @ (DualityError::InvalidAlgebra(_)
                    | DualityError::Algebra(_)
                    | DualityError::NotPoset
                    | DualityError::NotStronglyCoherent(_)),
                ) => Err(e.into()),
                Err(e) => Ok(Outcome::new(
                    1,
                    format!("{what} round trip fails: {e}"),
                    json!({ "roundtrip": false, "failure": e.to_string() }),
                )),
            }
        }

        Command::Translate { formula: text, mode, letter, normalize } => {
            let f = formula(inputs, text, Language::Modal)?;
            let t = match mode {
                Mode::P => p_translate(&f, letter)?,
                Mode::Gmt => gmt_translate(&f, *normalize)?,
            };
            let printed = t.to_string();
            Ok(Outcome::new(0, &printed, json!({ "source": f.to_string(), "target": printed })))
        }

        Command::Search { logic, refute, max_worlds, samples, seed, out_frame, out_val } => {
            let p = preset(logic)?;
            let f = formula(inputs, refute, Language::Cond)?;
            match search_countermodel(p, &f, *max_worlds, Sampling::new(*samples, *seed))? {
                None => Ok(Outcome::new(
                    0,
                    "exhausted: no countermodel found (inconclusive)",
                    json!({ "found": false }),
                )),
                Some(hit) => {
                    if let Some(path) = out_frame {
                        write(path, &to_json(&hit.frame))?;
                    }
                    if let Some(path) = out_val {
                        write(path, &to_json(&hit.countermodel.valuation))?;
                    }
                    let text = format!(
                        "countermodel: {}-world frame, refuted at {}",
                        hit.frame.len(),
                        describe(&hit.countermodel)
                    );
                    Ok(Outcome::new(1, text, json!({ "found": true, "hit": hit })))
                }
            }
        }
    }
}
