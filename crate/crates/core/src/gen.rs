//! Seeded random frames and formulas.
//!
//! Every sample is drawn from its own ChaCha stream (`seed`, `index`), so a
//! batch gives the same frames whether it runs sequentially or in parallel.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::frames::{coherence_witness, ConditionalFrame, GeneralFrame, Relation};
use crate::order::{FinitePreorder, Upset, WorldSet};
use crate::syntax::{Formula, Language, Node};

pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GenOptions {
    /// Repair relations to `≤∘R∘≤ = R` instead of plain coherence.
    pub strong: bool,
    /// Only antisymmetric orders.
    pub posets_only: bool,
}

/// Reflexive-transitive closure of a random DAG, occasionally with a cycle
/// merged in when preorders are allowed.
pub fn random_preorder<R: Rng>(rng: &mut R, n: usize, posets_only: bool) -> FinitePreorder {
    let density = rng.gen_range(0.0..0.7);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((perm[i], perm[j]));
            }
        }
    }
    if !posets_only && n >= 2 && rng.gen_bool(0.2) {
        let x = rng.gen_range(0..n);
        let y = (x + rng.gen_range(1..n)) % n;
        pairs.push((x, y));
        pairs.push((y, x));
    }
    FinitePreorder::generated(n, &pairs).expect("n within cap")
}

fn random_subset<R: Rng>(rng: &mut R, within: WorldSet) -> WorldSet {
    within
        .iter()
        .filter(|_| rng.gen_bool(0.5))
        .fold(WorldSet::EMPTY, WorldSet::with)
}

/// A relation built from one of a few row templates, with some rows
/// randomised. Not yet coherent.
pub fn raw_relation<R: Rng>(rng: &mut R, order: &FinitePreorder, a: Upset) -> Relation {
    let all = order.worlds();
    let template = rng.gen_range(0..9);
    let noise = if rng.gen_bool(0.5) { 0.0 } else { rng.gen_range(0.0..0.4) };
    Relation::from_fn(order.len(), |x| {
        if rng.gen_bool(noise) {
            return random_subset(rng, all);
        }
        match template {
            0 => WorldSet::EMPTY,
            1 => a,
            2 => order.up(x),
            3 => order.up(x) & a,
            4 => all,
            5 => random_subset(rng, a),
            6 => random_subset(rng, order.up(x)),
            7 => {
                if a.contains(x) {
                    WorldSet::singleton(x)
                } else {
                    WorldSet::EMPTY
                }
            }
            _ => random_subset(rng, all),
        }
    })
}

/// Make `rel` coherent. The strong repair is `≤∘R∘≤`; otherwise missing
/// successors are either added below or removed above until `(≤∘R) ⊆ (R∘≤)`.
pub fn repair<R: Rng>(rng: &mut R, order: &FinitePreorder, rel: Relation, strong: bool) -> Relation {
    if strong {
        return rel.after_order(order).then_order(order);
    }
    let mut rows = rel.rows().to_vec();
    let add = rng.gen_bool(0.5);
    loop {
        let r = Relation::from_rows(rows.clone());
        let Some((x, y, z)) = coherence_witness(order, &r) else {
            return r;
        };
        if add {
            rows[x] = rows[x].with(z);
        } else {
            rows[y] = rows[y].difference(WorldSet::singleton(z));
        }
    }
}

pub fn random_relation<R: Rng>(rng: &mut R, order: &FinitePreorder, a: Upset, strong: bool) -> Relation {
    let raw = raw_relation(rng, order, a);
    repair(rng, order, raw, strong)
}

pub fn random_full_frame<R: Rng>(rng: &mut R, n: usize, opts: GenOptions) -> ConditionalFrame {
    let order = random_preorder(rng, n, opts.posets_only);
    ConditionalFrame::from_fn(order.clone(), |a| random_relation(rng, &order, a, opts.strong))
        .expect("repaired relations are coherent")
}

fn heyting_closure(order: &FinitePreorder, seeds: &[Upset]) -> BTreeSet<Upset> {
    let mut fam: BTreeSet<Upset> = seeds.iter().copied().collect();
    fam.insert(WorldSet::EMPTY);
    fam.insert(order.worlds());
    loop {
        let cur: Vec<Upset> = fam.iter().copied().collect();
        let before = fam.len();
        for &a in &cur {
            for &b in &cur {
                fam.insert(a & b);
                fam.insert(a | b);
                fam.insert(order.heyting_imp(a, b));
            }
        }
        if fam.len() == before {
            return fam;
        }
    }
}

/// Seeds plus relations, closed under the four operations by fixpoint
/// iteration; relations are drawn when an upset first enters the family.
fn closure_frame<R: Rng>(rng: &mut R, order: &FinitePreorder, seeds: &[Upset], strong: bool) -> GeneralFrame {
    let mut fam: Vec<(Upset, Relation)> = Vec::new();
    let mut pending: BTreeSet<Upset> = heyting_closure(order, seeds);
    while !pending.is_empty() {
        for a in std::mem::take(&mut pending) {
            fam.push((a, random_relation(rng, order, a, strong)));
        }
        let known: BTreeSet<Upset> = fam.iter().map(|(a, _)| *a).collect();
        for (a, ra) in &fam {
            for (b, _) in &fam {
                for s in [*a & *b, *a | *b, order.heyting_imp(*a, *b), ra.box_of(*b)] {
                    if !known.contains(&s) {
                        pending.insert(s);
                    }
                }
            }
        }
    }
    GeneralFrame::new(order.clone(), fam).expect("shapes agree")
}

/// Relations pulled back from a coherent relation on the points of the
/// Heyting algebra generated by the seeds; the family stays exactly that
/// algebra, and every relation is strongly coherent.
fn pullback_frame<R: Rng>(rng: &mut R, order: &FinitePreorder, seeds: &[Upset]) -> GeneralFrame {
    let fam: Vec<Upset> = heyting_closure(order, seeds).into_iter().collect();
    let n = order.len();
    let sig: Vec<u64> = (0..n)
        .map(|x| fam.iter().enumerate().filter(|(_, a)| a.contains(x)).fold(0u64, |s, (i, _)| s | 1 << i))
        .collect();
    let mut points: Vec<u64> = sig.clone();
    points.sort_unstable();
    points.dedup();
    let class: Vec<usize> = sig.iter().map(|s| points.binary_search(s).unwrap()).collect();
    let m = points.len();
    let mut pairs = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if points[i] & !points[j] == 0 {
                pairs.push((i, j));
            }
        }
    }
    let porder = FinitePreorder::generated(m, &pairs).expect("fewer points than worlds");
    let members = |ps: WorldSet| WorldSet::from_worlds((0..n).filter(|&x| ps.contains(class[x])));
    let entries: Vec<(Upset, Relation)> = fam
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let theta = WorldSet::from_worlds((0..m).filter(|&p| points[p] >> i & 1 == 1));
            let t = random_relation(rng, &porder, theta, true);
            (a, Relation::from_fn(n, |x| members(t.image(class[x]))))
        })
        .collect();
    GeneralFrame::new(order.clone(), entries).expect("shapes agree")
}

/// A valid general frame on `n` worlds.
pub fn random_general_frame<R: Rng>(rng: &mut R, n: usize, opts: GenOptions) -> GeneralFrame {
    let order = random_preorder(rng, n, opts.posets_only);
    let ups = order.all_upsets();
    loop {
        let k = rng.gen_range(0..=2);
        let seeds: Vec<Upset> = (0..k).map(|_| *ups.choose(rng).unwrap()).collect();
        let g = if rng.gen_bool(0.5) {
            pullback_frame(rng, &order, &seeds)
        } else {
            closure_frame(rng, &order, &seeds, opts.strong)
        };
        if g.validate().is_valid() {
            return g;
        }
    }
}

/// Random formula of depth at most `depth` over `letters`.
pub fn random_formula<R: Rng>(rng: &mut R, lang: Language, depth: usize, letters: &[&str]) -> Formula {
    let node = random_node(rng, lang, depth, letters);
    Formula::new(lang, node).expect("only admitted connectives are generated")
}

pub fn random_node<R: Rng>(rng: &mut R, lang: Language, depth: usize, letters: &[&str]) -> Node {
    if depth == 0 || rng.gen_bool(0.25) {
        return if rng.gen_bool(0.1) {
            Node::Bot
        } else {
            Node::var(letters.choose(rng).unwrap())
        };
    }
    let sub = |rng: &mut R| random_node(rng, lang, depth - 1, letters);
    let unary_choices: &[u8] = match lang {
        Language::Cond => &[],
        Language::Modal => &[0],
        Language::Bimodal => &[1, 2],
    };
    let pick = rng.gen_range(0..4 + unary_choices.len() as u8 + u8::from(lang == Language::Cond));
    match pick {
        0 => Node::and(sub(rng), sub(rng)),
        1 => Node::or(sub(rng), sub(rng)),
        2 | 3 => Node::imp(sub(rng), sub(rng)),
        4 if lang == Language::Cond => Node::cond(sub(rng), sub(rng)),
        p => match unary_choices[(p - 4) as usize] {
            0 => Node::boxed(sub(rng)),
            1 => Node::box_i(sub(rng)),
            _ => Node::box_m(sub(rng)),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_frames_are_valid() {
        for i in 0..200 {
            let mut rng = rng_for(7, i);
            let n = 1 + (i as usize % 5);
            let g = random_general_frame(&mut rng, n, GenOptions::default());
            assert!(g.validate().is_valid());
            let s = random_general_frame(&mut rng, n, GenOptions { strong: true, posets_only: true });
            assert!(s.validate().is_valid());
            assert!(s.is_strongly_coherent());
            assert!(s.order().is_poset());
            let f = random_full_frame(&mut rng, n, GenOptions::default());
            assert!(f.validate_conditional().is_valid());
        }
    }

    #[test]
    fn streams_are_reproducible() {
        let a = random_general_frame(&mut rng_for(3, 11), 4, GenOptions::default());
        let b = random_general_frame(&mut rng_for(3, 11), 4, GenOptions::default());
        assert_eq!(a, b);
    }

    #[test]
    fn formulas_respect_depth_and_language() {
        for i in 0..100 {
            let mut rng = rng_for(1, i);
            for lang in [Language::Cond, Language::Modal, Language::Bimodal] {
                let f = random_formula(&mut rng, lang, 4, &["p", "q"]);
                assert!(f.root().depth() <= 4);
                assert_eq!(f.language(), lang);
            }
        }
    }
}
