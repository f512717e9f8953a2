//! First-order frame conditions, quantified over admissible upsets.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::frames::{GeneralFrame, Relation};
use crate::order::{Upset, WorldSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    Id,
    Mp,
    Str,
    Unit,
    Exf,
    Tc,
    Cs,
    Lin,
    Tr,
    Mon,
    Ex,
    Red,
    VecTop,
    Expl,
    Icc,
    Re,
    FourC,
    C4c,
    BoxTc,
    Cem1,
    Cem2,
    Cem3,
    Ecm1,
    Ecm2,
}

/// A point where a condition fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub a: Upset,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<Upset>,
    pub x: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<usize>,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a = {}", self.a)?;
        if let Some(b) = self.b {
            write!(f, ", b = {b}")?;
        }
        write!(f, ", x = {}", self.x)?;
        if let Some(y) = self.y {
            write!(f, ", y = {y}")?;
        }
        Ok(())
    }
}

fn w(a: Upset, x: usize) -> Witness {
    Witness { a, b: None, x, y: None }
}

fn wy(a: Upset, x: usize, y: usize) -> Witness {
    Witness { a, b: None, x, y: Some(y) }
}

fn wb(a: Upset, b: Upset, x: usize) -> Witness {
    Witness { a, b: Some(b), x, y: None }
}

type Check = Result<(), Witness>;

impl Condition {
    pub const ALL: [Condition; 24] = [
        Condition::Id,
        Condition::Mp,
        Condition::Str,
        Condition::Unit,
        Condition::Exf,
        Condition::Tc,
        Condition::Cs,
        Condition::Lin,
        Condition::Tr,
        Condition::Mon,
        Condition::Ex,
        Condition::Red,
        Condition::VecTop,
        Condition::Expl,
        Condition::Icc,
        Condition::Re,
        Condition::FourC,
        Condition::C4c,
        Condition::BoxTc,
        Condition::Cem1,
        Condition::Cem2,
        Condition::Cem3,
        Condition::Ecm1,
        Condition::Ecm2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Condition::Id => "id-corr",
            Condition::Mp => "mp-corr",
            Condition::Str => "str-corr",
            Condition::Unit => "unit-corr",
            Condition::Exf => "exf-corr",
            Condition::Tc => "tc-corr",
            Condition::Cs => "cs-corr",
            Condition::Lin => "lin-corr",
            Condition::Tr => "tr-corr",
            Condition::Mon => "mon-corr",
            Condition::Ex => "ex-corr",
            Condition::Red => "red-corr",
            Condition::VecTop => "vec_top-corr",
            Condition::Expl => "expl-corr",
            Condition::Icc => "icc-corr",
            Condition::Re => "re-corr",
            Condition::FourC => "four_c-corr",
            Condition::C4c => "c4_c-corr",
            Condition::BoxTc => "box_tc-corr",
            Condition::Cem1 => "cem1-corr",
            Condition::Cem2 => "cem2-corr",
            Condition::Cem3 => "cem3-corr",
            Condition::Ecm1 => "ecm1-corr",
            Condition::Ecm2 => "ecm2-corr",
        }
    }

    /// The condition in words; `a`, `b` range over admissible upsets.
    pub fn statement(self) -> &'static str {
        match self {
            Condition::Id => "R_a[x] ⊆ a",
            Condition::Mp => "x ∈ a implies x ∈ ↑R_a[x]",
            Condition::Str => "R_a[x] ⊆ ↑x ∩ a",
            Condition::Unit => "R_a[x] ⊆ ↑x",
            Condition::Exf => "↑x ∩ a = ∅ implies R_a[x] = ∅",
            Condition::Tc => "x ∈ ↑R_a[x]",
            Condition::Cs => "x ∈ a implies R_a[x] ⊆ ↑x",
            Condition::Lin => "R_a[x] ⊆ b or R_b[x] ⊆ a",
            Condition::Tr => "R_a[x] ⊆ b implies R_a[x] ⊆ ↑R_b[x]",
            Condition::Mon => "a ⊆ b implies R_a[x] ⊆ ↑R_b[x]",
            Condition::Ex => "R_b[R_a[x]] ⊆ ↑R_(a∩b)[x]",
            Condition::Red => "x ∈ ↑R_X[x]",
            Condition::VecTop => "R_X[x] ⊆ ↑x",
            Condition::Expl => "R_∅[x] = ∅",
            Condition::Icc => "R_a[x] ⊆ b ⊆ a implies ↑R_a[x] = ↑R_b[x]",
            Condition::Re => "R_a[x] ⊆ b and R_b[x] ⊆ a imply ↑R_a[x] = ↑R_b[x]",
            Condition::FourC => "y ∈ R_a[x] implies R_a[y] ⊆ ↑R_a[x]",
            Condition::C4c => "R_a[x] ⊆ ↑R_a[R_a[x]]",
            Condition::BoxTc => "y ∈ ↑R_a[x] implies y ∈ ↑R_a[y]",
            Condition::Cem1 => "any two y, z ∈ ↑R_a[x] satisfy y ≤ z",
            Condition::Cem2 => "y ∈ R_a[x] and y ≤ z imply z ≤ y",
            Condition::Cem3 => "y ∈ ↑R_a[x] implies x ∈ ↑R_a[y]",
            Condition::Ecm1 => "x' ≤ x implies R_a[x'] ⊆ ↑R_a[x]",
            Condition::Ecm2 => "y ∈ R_a[x] and z ∈ ↑R_a[x] imply y ∈ ↑R_a[z]",
        }
    }

    /// First violation, scanning upsets in ascending order and then worlds.
    pub fn check(self, g: &GeneralFrame) -> Check {
        let o = g.order();
        let n = g.len();
        let up = |s: WorldSet| o.up_closure(s);
        match self {
            Condition::Id => each(g, |a, r| rows(n, |x| r.image(x).difference(a).min().map(|y| wy(a, x, y)))),
            Condition::Mp => each(g, |a, r| {
                rows(n, |x| (a.contains(x) && !up(r.image(x)).contains(x)).then(|| w(a, x)))
            }),
            Condition::Str => each(g, |a, r| {
                rows(n, |x| r.image(x).difference(o.up(x) & a).min().map(|y| wy(a, x, y)))
            }),
            Condition::Unit => each(g, |a, r| rows(n, |x| r.image(x).difference(o.up(x)).min().map(|y| wy(a, x, y)))),
            Condition::Exf => each(g, |a, r| {
                rows(n, |x| ((o.up(x) & a).is_empty() && !r.image(x).is_empty()).then(|| w(a, x)))
            }),
            Condition::Tc => each(g, |a, r| rows(n, |x| (!up(r.image(x)).contains(x)).then(|| w(a, x)))),
            Condition::Cs => each(g, |a, r| {
                rows(n, |x| {
                    if a.contains(x) {
                        r.image(x).difference(o.up(x)).min().map(|y| wy(a, x, y))
                    } else {
                        None
                    }
                })
            }),
            Condition::Lin => pairs(g, |a, ra, b, rb| {
                rows(n, |x| (!ra.image(x).is_subset(b) && !rb.image(x).is_subset(a)).then(|| wb(a, b, x)))
            }),
            Condition::Tr => pairs(g, |a, ra, b, rb| {
                rows(n, |x| {
                    (ra.image(x).is_subset(b) && !ra.image(x).is_subset(up(rb.image(x)))).then(|| wb(a, b, x))
                })
            }),
            Condition::Mon => pairs(g, |a, ra, b, rb| {
                rows(n, |x| {
                    (a.is_subset(b) && !ra.image(x).is_subset(up(rb.image(x)))).then(|| wb(a, b, x))
                })
            }),
            Condition::Ex => pairs(g, |a, ra, b, rb| {
                let Some(rab) = g.relation(a & b) else {
                    return Err(wb(a, b, 0));
                };
                rows(n, |x| {
                    (!rb.image_of(ra.image(x)).is_subset(up(rab.image(x)))).then(|| wb(a, b, x))
                })
            }),
            Condition::Red => at(g, g.worlds(), |a, r| rows(n, |x| (!up(r.image(x)).contains(x)).then(|| w(a, x)))),
            Condition::VecTop => at(g, g.worlds(), |a, r| {
                rows(n, |x| r.image(x).difference(o.up(x)).min().map(|y| wy(a, x, y)))
            }),
            Condition::Expl => at(g, WorldSet::EMPTY, |a, r| {
                rows(n, |x| r.image(x).min().map(|y| wy(a, x, y)))
            }),
            Condition::Icc => pairs(g, |a, ra, b, rb| {
                rows(n, |x| {
                    (b.is_subset(a) && ra.image(x).is_subset(b) && up(ra.image(x)) != up(rb.image(x)))
                        .then(|| wb(a, b, x))
                })
            }),
            Condition::Re => pairs(g, |a, ra, b, rb| {
                rows(n, |x| {
                    (ra.image(x).is_subset(b) && rb.image(x).is_subset(a) && up(ra.image(x)) != up(rb.image(x)))
                        .then(|| wb(a, b, x))
                })
            }),
            Condition::FourC => each(g, |a, r| {
                rows(n, |x| {
                    let bound = up(r.image(x));
                    r.image(x).iter().find(|&y| !r.image(y).is_subset(bound)).map(|y| wy(a, x, y))
                })
            }),
            Condition::C4c => each(g, |a, r| {
                rows(n, |x| {
                    let two = up(r.image_of(r.image(x)));
                    r.image(x).difference(two).min().map(|y| wy(a, x, y))
                })
            }),
            Condition::BoxTc => each(g, |a, r| {
                rows(n, |x| up(r.image(x)).iter().find(|&y| !up(r.image(y)).contains(y)).map(|y| wy(a, x, y)))
            }),
            Condition::Cem1 => each(g, |a, r| {
                rows(n, |x| {
                    let s = up(r.image(x));
                    s.iter().find(|&y| !s.is_subset(o.up(y))).map(|y| wy(a, x, y))
                })
            }),
            Condition::Cem2 => each(g, |a, r| {
                rows(n, |x| r.image(x).iter().find(|&y| !o.up(y).is_subset(o.down(y))).map(|y| wy(a, x, y)))
            }),
            Condition::Cem3 => each(g, |a, r| {
                rows(n, |x| up(r.image(x)).iter().find(|&y| !up(r.image(y)).contains(x)).map(|y| wy(a, x, y)))
            }),
            Condition::Ecm1 => each(g, |a, r| {
                rows(n, |x| {
                    let bound = up(r.image(x));
                    o.down(x).iter().find(|&x0| !r.image(x0).is_subset(bound)).map(|x0| wy(a, x, x0))
                })
            }),
            Condition::Ecm2 => each(g, |a, r| {
                rows(n, |x| {
                    let s = up(r.image(x));
                    s.iter().find(|&z| !r.image(x).is_subset(up(r.image(z)))).map(|z| wy(a, x, z))
                })
            }),
        }
    }

    pub fn holds(self, g: &GeneralFrame) -> bool {
        self.check(g).is_ok()
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn rows(n: usize, mut f: impl FnMut(usize) -> Option<Witness>) -> Check {
    (0..n).find_map(&mut f).map_or(Ok(()), Err)
}

fn each(g: &GeneralFrame, mut f: impl FnMut(Upset, &Relation) -> Check) -> Check {
    for (a, r) in g.entries() {
        f(a, r)?;
    }
    Ok(())
}

fn pairs(g: &GeneralFrame, mut f: impl FnMut(Upset, &Relation, Upset, &Relation) -> Check) -> Check {
    for (a, ra) in g.entries() {
        for (b, rb) in g.entries() {
            f(a, ra, b, rb)?;
        }
    }
    Ok(())
}

fn at(g: &GeneralFrame, a: Upset, f: impl FnOnce(Upset, &Relation) -> Check) -> Check {
    match g.relation(a) {
        Some(r) => f(a, r),
        None => Ok(()),
    }
}
