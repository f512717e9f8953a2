//! Small worked values, each recomputed by a brute-force oracle and frozen.

mod common;

use std::collections::BTreeMap;

use clc_core::algebra::{
    alg_satisfies, check_duality_roundtrip, complex_algebra, dual_frame, frame_roundtrip, prime_filters, AlgVerdict,
    FiniteCha,
};
use clc_core::catalog::{correspondent_holds, preset, search_countermodel, Sampling};
use clc_core::enumerate::{preorders, Families, FrameSpace};
use clc_core::fillins::{check_squeeze_precondition, fill, FillInKind};
use clc_core::frames::{coherence_witness, is_strongly_coherent};
use clc_core::semantics::{truth_set, valid, valid_modal, Valuation, Verdict};
use clc_core::{parse, ConditionalFrame, FinitePreorder, GeneralFrame, Language, ModalFrame, Relation, WorldSet};

use common::*;

fn ws<const N: usize>(w: [usize; N]) -> WorldSet {
    WorldSet::from_worlds(w)
}

fn cond(s: &str) -> clc_core::Formula {
    parse(s, Language::Cond).unwrap()
}

fn rel(n: usize, pairs: &[(usize, usize)]) -> Relation {
    Relation::from_pairs(n, pairs).unwrap()
}

fn matrix(n: usize, pairs: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut m = vec![vec![false; n]; n];
    for &(a, b) in pairs {
        m[a][b] = true;
    }
    m
}

/// 2-antichain with A = {∅, X}, R_∅ = ∅, R_X = identity.
fn antichain_frame() -> GeneralFrame {
    let o = FinitePreorder::discrete(2).unwrap();
    GeneralFrame::new(o, [(WorldSet::EMPTY, Relation::empty(2)), (WorldSet::full(2), Relation::identity(2))]).unwrap()
}

fn one_world(r_empty: bool, r_full: bool) -> ConditionalFrame {
    let o = FinitePreorder::discrete(1).unwrap();
    ConditionalFrame::from_fn(o, |a| {
        let on = if a.is_empty() { r_empty } else { r_full };
        if on {
            Relation::identity(1)
        } else {
            Relation::empty(1)
        }
    })
    .unwrap()
}

#[test]
fn preorder_counts() {
    let count = |n: usize| {
        let off: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
        (0u32..1 << off.len())
            .filter(|bits| {
                let pairs: Vec<_> = off.iter().enumerate().filter(|(k, _)| bits >> k & 1 == 1).map(|(_, p)| *p).collect();
                let m = matrix(n, &pairs);
                closure(n, &pairs) == (0..n).map(|i| (0..n).map(|j| i == j || m[i][j]).collect::<Vec<_>>()).collect::<Vec<_>>()
            })
            .count()
    };
    assert_eq!((count(2), count(3)), (4, 29));
    assert_eq!(preorders(2).len(), 4);
    assert_eq!(preorders(3).len(), 29);
}

#[test]
fn number_of_full_two_world_frames() {
    // Σ over preorders of (#coherent relations)^(#upsets).
    let mut total = 0u64;
    for n in 1..=2 {
        let off: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
        let mut seen = Vec::new();
        for bits in 0u32..1 << off.len() {
            let pairs: Vec<_> = off.iter().enumerate().filter(|(k, _)| bits >> k & 1 == 1).map(|(_, p)| *p).collect();
            let leq = closure(n, &pairs);
            if seen.contains(&leq) {
                continue;
            }
            seen.push(leq.clone());
            let coherent = (0u32..1 << (n * n))
                .filter(|rb| {
                    let r: Vec<Vec<bool>> = (0..n).map(|x| (0..n).map(|y| rb >> (x * n + y) & 1 == 1).collect()).collect();
                    subrelation(&compose(&leq, &r), &compose(&r, &leq))
                })
                .count() as u64;
            total += coherent.pow(upsets(&leq).len() as u32);
        }
    }
    assert_eq!(total, 68302);
    let space = FrameSpace::new(2, Families::Full).unwrap();
    let valid = (0..space.len()).filter(|&i| space.get(i).is_some()).count();
    assert_eq!(valid, 68302);
}

#[test]
fn heyting_on_two_chain() {
    let leq = closure(2, &[(0, 1)]);
    let got = heyting(&leq, &vec![false, true], &vec![false, false]);
    assert_eq!(got, vec![false, false]);
    let o = FinitePreorder::chain(2).unwrap();
    assert_eq!(o.heyting_imp(ws([1]), WorldSet::EMPTY), WorldSet::EMPTY);
}

#[test]
fn antichain_general_frame_is_closed() {
    let g = antichain_frame();
    let leq = leq_matrix(&g);
    let adm: Vec<Set> = g.admissible().iter().map(|&a| to_set(2, a)).collect();
    for a in &adm {
        for b in &adm {
            let meet: Set = a.iter().zip(b).map(|(x, y)| *x && *y).collect();
            let join: Set = a.iter().zip(b).map(|(x, y)| *x || *y).collect();
            let r = rel_matrix(&g, from_set(a)).unwrap();
            let box_: Set = (0..2).map(|x| (0..2).all(|y| !r[x][y] || b[y])).collect();
            for s in [meet, join, heyting(&leq, a, b), box_] {
                assert!(adm.contains(&s));
            }
        }
    }
    assert!(g.validate().is_valid());
}

#[test]
fn coherence_examples_on_two_chain() {
    let leq = closure(2, &[(0, 1)]);
    let o = FinitePreorder::chain(2).unwrap();

    let back = matrix(2, &[(1, 0)]);
    assert!(!subrelation(&compose(&leq, &back), &compose(&back, &leq)));
    assert!(coherence_witness(&o, &rel(2, &[(1, 0)])).is_some());
    let bad = ConditionalFrame::from_fn(o.clone(), |a| if a == ws([1]) { rel(2, &[(1, 0)]) } else { Relation::empty(2) });
    assert!(bad.is_err());

    let strong = |pairs: &[(usize, usize)]| compose(&compose(&leq, &matrix(2, pairs)), &leq) == matrix(2, pairs);
    assert!(strong(&[(0, 1)]));
    assert!(!strong(&[(1, 1)]));
    assert!(is_strongly_coherent(&o, &rel(2, &[(0, 1)])));
    assert!(!is_strongly_coherent(&o, &rel(2, &[(1, 1)])));
}

#[test]
fn negation_truth_sets_on_two_chain() {
    let f = ConditionalFrame::from_fn(FinitePreorder::chain(2).unwrap(), |_| Relation::empty(2)).unwrap();
    let val: BTreeMap<String, WorldSet> = [("p".to_string(), ws([1]))].into();
    let v: Valuation = val.clone().into_iter().collect();
    for (s, expect) in [("~p", vec![false, false]), ("~~p", vec![true, true])] {
        let phi = cond(s);
        assert_eq!(eval(f.general(), &val, phi.root()).unwrap(), expect);
        assert_eq!(truth_set(&f, &v, &phi).unwrap(), from_set(&expect));
    }
}

#[test]
fn one_world_refutations() {
    let empty = one_world(false, false);
    let mpp = cond("(p ~> q) -> (p -> q)");
    let (val, x) = refute(empty.general(), mpp.root()).unwrap();
    let frozen: BTreeMap<String, WorldSet> = [("p".into(), ws([0])), ("q".into(), WorldSet::EMPTY)].into();
    assert_eq!((val.clone(), x), (frozen, 0));
    match valid(&empty, &mpp, 1000).unwrap() {
        Verdict::Refuted(cm) => {
            assert_eq!(cm.world, 0);
            assert_eq!(cm.valuation.iter().map(|(l, s)| (l.to_string(), s)).collect::<BTreeMap<_, _>>(), val);
        }
        Verdict::Valid => panic!("expected a countermodel"),
    }

    let loop_at_empty = one_world(true, false);
    let id = cond("p ~> p");
    let (val, x) = refute(loop_at_empty.general(), id.root()).unwrap();
    assert_eq!((val["p"], x), (WorldSet::EMPTY, 0));
    let cm = valid(&loop_at_empty, &id, 1000).unwrap();
    assert_eq!(cm.countermodel().map(|c| (c.valuation.get("p"), c.world)), Some((Some(WorldSet::EMPTY), 0)));
}

#[test]
fn modal_chain_with_loop_at_bottom_validates_p_to_box_p() {
    // Oracle: x ⊨ p → □p iff every y ≥ x in V(p) has R[y] ⊆ V(p).
    let leq = closure(2, &[(0, 1)]);
    let r = matrix(2, &[(0, 0)]);
    let oracle = upsets(&leq).iter().all(|p| {
        (0..2).all(|x| (0..2).all(|y| !leq[x][y] || !p[y] || (0..2).all(|z| !r[y][z] || p[z])))
    });
    assert!(oracle);
    let m = ModalFrame::new(FinitePreorder::chain(2).unwrap(), rel(2, &[(0, 0)])).unwrap();
    let phi = parse("p -> []p", Language::Modal).unwrap();
    assert_eq!(valid_modal(&m, &phi, 1000).unwrap(), Verdict::Valid);
}

fn two_element(cond: [[usize; 2]; 2]) -> FiniteCha {
    FiniteCha::new(2, &[(0, 1)], vec![vec![1, 1], vec![0, 1]], cond.iter().map(|r| r.to_vec()).collect(), 1, 0)
        .unwrap()
}

/// ⊤⊳⊥ = ⊥, ⊤⊳⊤ = ⊤, ⊥⊳x = ⊤ (element 0 is ⊥).
fn identity_cond() -> FiniteCha {
    two_element([[1, 1], [0, 1]])
}

#[test]
fn two_element_algebra_laws() {
    let a = identity_cond();
    let meet = |x: usize, y: usize| x.min(y);
    let laws = (0..2).all(|x| {
        a.cond(x, 1) == 1 && (0..2).all(|y| (0..2).all(|z| a.cond(x, meet(y, z)) == meet(a.cond(x, y), a.cond(x, z))))
    });
    assert!(laws);
    assert!(a.validate().is_valid());
}

#[test]
fn excluded_middle_under_conditional_on_two_elements() {
    // (p⊳q) ∨ (p⊳¬q) over all four assignments.
    let a = identity_cond();
    let oracle = (0..2).all(|p| (0..2).all(|q| a.cond(p, q).max(a.cond(p, 1 - q)) == 1));
    assert!(oracle);
    let f = cond("(p ~> q) | (p ~> ~q)");
    assert_eq!(alg_satisfies(&a, &f, 1000).unwrap(), AlgVerdict::Satisfied);
}

#[test]
fn complex_algebra_of_one_world_empty_frame() {
    let f = one_world(false, false);
    let alg = complex_algebra(f.general()).unwrap();
    let g = f.general();
    let oracle: Vec<Vec<usize>> = g
        .admissible()
        .iter()
        .map(|&a| {
            let r = rel_matrix(g, a).unwrap();
            g.admissible()
                .iter()
                .map(|&b| {
                    let s: Set = (0..1).map(|x| (0..1).all(|y| !r[x][y] || b.contains(y))).collect();
                    g.admissible().iter().position(|&c| c == from_set(&s)).unwrap()
                })
                .collect()
        })
        .collect();
    assert_eq!(oracle, vec![vec![1, 1], vec![1, 1]]);
    assert_eq!(alg.cond_table(), oracle);
    assert_eq!(alg.top(), 1);
}

#[test]
fn prime_filter_counts() {
    let chain3 = FiniteCha::new(
        3,
        &[(0, 1), (1, 2)],
        (0..3).map(|a| (0..3).map(|b| if a <= b { 2 } else { b }).collect()).collect(),
        vec![vec![2; 3]; 3],
        2,
        0,
    )
    .unwrap();
    let boolean = FiniteCha::new(
        4,
        &[(0, 1), (0, 2), (1, 3), (2, 3)],
        (0..4).map(|a: usize| (0..4).map(|b: usize| (!a | b) & 3).collect()).collect(),
        vec![vec![3; 4]; 4],
        3,
        0,
    )
    .unwrap();
    let two = two_element([[1, 1], [1, 1]]);
    assert_eq!(common::prime_filters(&two), vec![vec![1]]);
    assert_eq!(common::prime_filters(&chain3), vec![vec![2], vec![1, 2]]);
    assert_eq!(common::prime_filters(&boolean).len(), 2);
    let lib = |a: &FiniteCha| -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> =
            prime_filters(a).unwrap().iter().map(|&p| (0..a.size()).filter(|&i| p >> i & 1 == 1).collect()).collect();
        v.sort_by_key(|p| (p.len(), p.clone()));
        v
    };
    assert_eq!(lib(&two), vec![vec![1]]);
    assert_eq!(lib(&chain3), vec![vec![2], vec![1, 2]]);
    assert_eq!(lib(&boolean), vec![vec![1, 3], vec![2, 3]]);
}

#[test]
fn dual_of_constant_top_algebra() {
    let a = two_element([[1, 1], [1, 1]]);
    // One prime filter {⊤}; a⊳⊥ = ⊤ lies in it, so ⊥ would have to lie in any successor.
    let pf = common::prime_filters(&a);
    assert_eq!(pf, vec![vec![1]]);
    let related = |x: usize| (0..2).filter(|&b| pf[0].contains(&a.cond(x, b))).all(|b| pf[0].contains(&b));
    assert!(!related(0) && !related(1));
    let f = dual_frame(&a).unwrap();
    assert_eq!(f.len(), 1);
    assert!(f.relations().iter().all(|r| r.pairs().is_empty()));
    assert_eq!(f, one_world(false, false));
    assert_eq!(check_duality_roundtrip(&a), Ok(()));
}

#[test]
fn frame_round_trips() {
    let f1 = one_world(false, false);
    assert_eq!(dual_frame(&complex_algebra(f1.general()).unwrap()).unwrap(), f1);
    assert_eq!(frame_roundtrip(&f1), Ok(()));
    let o = FinitePreorder::chain(2).unwrap();
    let le = ConditionalFrame::from_fn(o.clone(), |_| Relation::of_order(&o)).unwrap();
    assert_eq!(frame_roundtrip(&le), Ok(()));
}

#[test]
fn union_and_squeeze_on_antichain() {
    let g = antichain_frame();
    let c = ws([0]);
    let union_oracle: Vec<WorldSet> = (0..2)
        .map(|x| {
            g.admissible()
                .iter()
                .filter(|a| a.is_subset(c))
                .fold(WorldSet::EMPTY, |acc, &a| acc | g.relation(a).unwrap().image(x))
        })
        .collect();
    let squeeze_oracle: Vec<WorldSet> = (0..2)
        .map(|x| {
            g.admissible()
                .iter()
                .find(|&&a| {
                    let r = g.relation(a).unwrap().image(x);
                    r.is_subset(c) && c.is_subset(a)
                })
                .map_or(c, |&a| g.relation(a).unwrap().image(x))
        })
        .collect();
    assert_eq!(union_oracle, vec![WorldSet::EMPTY, WorldSet::EMPTY]);
    assert_eq!(squeeze_oracle, vec![ws([0]), ws([0])]);
    assert_eq!(check_squeeze_precondition(&g), Ok(()));
    let u = fill(&g, FillInKind::Union).unwrap();
    let s = fill(&g, FillInKind::Squeeze).unwrap();
    assert_eq!(u.relation(c).unwrap().rows(), &union_oracle[..]);
    assert_eq!(s.relation(c).unwrap().rows(), &squeeze_oracle[..]);
}

#[test]
fn correspondent_witnesses() {
    let f = one_world(true, false);
    let w = correspondent_holds(f.general(), "id").unwrap().unwrap_err();
    assert_eq!((w.a, w.x), (WorldSet::EMPTY, 0));
    let o = FinitePreorder::chain(2).unwrap();
    let ident = ConditionalFrame::from_fn(o, |_| Relation::identity(2)).unwrap();
    assert_eq!(correspondent_holds(ident.general(), "mp").unwrap(), Ok(()));
}

#[test]
fn ick_search_hits() {
    // One-world frames in enumeration order: R_∅ is the more significant bit.
    let order = [(false, false), (false, true), (true, false), (true, true)];
    let first = |s: &str| {
        order.iter().find_map(|&(e, f)| {
            let fr = one_world(e, f);
            refute(fr.general(), cond(s).root()).map(|(v, x)| (fr, v, x))
        })
    };
    let ick = preset("ICK").unwrap();
    for (s, frame) in [("(p ~> q) -> p -> q", one_world(false, false)), ("p ~> p", one_world(true, false))] {
        let (fr, v, x) = first(s).unwrap();
        assert_eq!(fr, frame);
        let hit = search_countermodel(ick, &cond(s), 2, Sampling::new(0, 0)).unwrap().unwrap();
        assert_eq!(hit.frame, frame);
        assert_eq!(hit.countermodel.world, x);
        assert_eq!(hit.countermodel.valuation.iter().map(|(l, s)| (l.to_string(), s)).collect::<BTreeMap<_, _>>(), v);
    }
}
