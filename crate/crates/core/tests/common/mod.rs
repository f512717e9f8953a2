//! Brute-force reference implementations. They read frames only through
//! `leq` and relation membership and work on plain boolean vectors, so they
//! share no set or closure code with the library.

#![allow(dead_code)]

use std::collections::BTreeMap;

use clc_core::algebra::FiniteCha;
use clc_core::{GeneralFrame, Node, WorldSet};

pub type Set = Vec<bool>;

pub fn to_set(n: usize, s: WorldSet) -> Set {
    (0..n).map(|x| s.contains(x)).collect()
}

pub fn from_set(s: &Set) -> WorldSet {
    WorldSet::from_worlds(s.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i))
}

/// Reflexive-transitive closure by repeated squaring of the boolean matrix.
pub fn closure(n: usize, pairs: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut m = vec![vec![false; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in pairs {
        m[a][b] = true;
    }
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                if !m[i][j] && (0..n).any(|k| m[i][k] && m[k][j]) {
                    m[i][j] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            return m;
        }
    }
}

pub fn is_upset(leq: &[Vec<bool>], s: &Set) -> bool {
    let n = s.len();
    (0..n).all(|x| !s[x] || (0..n).all(|y| !leq[x][y] || s[y]))
}

/// Every subset of the worlds that is upward closed, by scanning all `2^n`.
pub fn upsets(leq: &[Vec<bool>]) -> Vec<Set> {
    let n = leq.len();
    (0u32..1 << n)
        .map(|bits| (0..n).map(|i| bits >> i & 1 == 1).collect::<Set>())
        .filter(|s| is_upset(leq, s))
        .collect()
}

/// `a → b = {x | ∀y ≥ x. y ∈ a ⇒ y ∈ b}`.
pub fn heyting(leq: &[Vec<bool>], a: &Set, b: &Set) -> Set {
    let n = a.len();
    (0..n).map(|x| (0..n).all(|y| !leq[x][y] || !a[y] || b[y])).collect()
}

pub fn leq_matrix(g: &GeneralFrame) -> Vec<Vec<bool>> {
    let n = g.len();
    (0..n).map(|x| (0..n).map(|y| g.order().leq(x, y)).collect()).collect()
}

pub fn rel_matrix(g: &GeneralFrame, a: WorldSet) -> Option<Vec<Vec<bool>>> {
    let r = g.relation(a)?;
    let n = g.len();
    Some((0..n).map(|x| (0..n).map(|y| r.contains(x, y)).collect()).collect())
}

/// `R ∘ S` as boolean matrices: x (R∘S) z iff ∃y. x R y ∧ y S z.
pub fn compose(r: &[Vec<bool>], s: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = r.len();
    (0..n).map(|x| (0..n).map(|z| (0..n).any(|y| r[x][y] && s[y][z])).collect()).collect()
}

pub fn subrelation(r: &[Vec<bool>], s: &[Vec<bool>]) -> bool {
    r.iter().zip(s).all(|(a, b)| a.iter().zip(b).all(|(&x, &y)| !x || y))
}

/// Clause-by-clause truth set; `None` when an antecedent is not admissible.
pub fn eval(g: &GeneralFrame, val: &BTreeMap<String, WorldSet>, f: &Node) -> Option<Set> {
    let n = g.len();
    let leq = leq_matrix(g);
    Some(match f {
        Node::Var(v) => to_set(n, *val.get(v)?),
        Node::Bot => vec![false; n],
        Node::And(a, b) => {
            let (a, b) = (eval(g, val, a)?, eval(g, val, b)?);
            (0..n).map(|x| a[x] && b[x]).collect()
        }
        Node::Or(a, b) => {
            let (a, b) = (eval(g, val, a)?, eval(g, val, b)?);
            (0..n).map(|x| a[x] || b[x]).collect()
        }
        Node::Imp(a, b) => heyting(&leq, &eval(g, val, a)?, &eval(g, val, b)?),
        Node::Cond(a, b) => {
            let r = rel_matrix(g, from_set(&eval(g, val, a)?))?;
            let b = eval(g, val, b)?;
            (0..n).map(|x| (0..n).all(|y| !r[x][y] || b[y])).collect()
        }
        Node::Box(_) | Node::BoxI(_) | Node::BoxM(_) => return None,
    })
}

/// First refuting `(valuation, world)` over admissible valuations, letters
/// in sorted order with the first letter varying slowest.
pub fn refute(g: &GeneralFrame, f: &Node) -> Option<(BTreeMap<String, WorldSet>, usize)> {
    let mut letters = Vec::new();
    collect(f, &mut letters);
    letters.sort();
    letters.dedup();
    let adm = g.admissible();
    let m = adm.len();
    let total = m.pow(letters.len() as u32);
    for code in 0..total {
        let mut rest = code;
        let mut val = BTreeMap::new();
        for l in letters.iter().rev() {
            val.insert(l.clone(), adm[rest % m]);
            rest /= m;
        }
        let t = eval(g, &val, f).expect("admissible frame");
        if let Some(x) = (0..g.len()).find(|&x| !t[x]) {
            return Some((val, x));
        }
    }
    None
}

fn collect(f: &Node, out: &mut Vec<String>) {
    match f {
        Node::Var(v) => out.push(v.clone()),
        Node::Bot => {}
        Node::And(a, b) | Node::Or(a, b) | Node::Imp(a, b) | Node::Cond(a, b) => {
            collect(a, out);
            collect(b, out);
        }
        Node::Box(a) | Node::BoxI(a) | Node::BoxM(a) => collect(a, out),
    }
}

/// Prime filters by scanning every subset of the carrier.
pub fn prime_filters(alg: &FiniteCha) -> Vec<Vec<usize>> {
    let k = alg.size();
    let mut out = Vec::new();
    for bits in 0u32..1 << k {
        let has = |a: usize| bits >> a & 1 == 1;
        let proper = !has(alg.bot()) && has(alg.top());
        let up = (0..k).all(|a| !has(a) || (0..k).all(|b| !alg.leq(a, b) || has(b)));
        let meets = (0..k).all(|a| (0..k).all(|b| !(has(a) && has(b)) || has(alg.meet(a, b))));
        let prime = (0..k).all(|a| (0..k).all(|b| !has(alg.join(a, b)) || has(a) || has(b)));
        if proper && up && meets && prime {
            out.push((0..k).filter(|&a| has(a)).collect());
        }
    }
    out
}
