//! Index ranges, side conditions and builders for the coefficient-form
//! relations.

use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::grading::Composition;

use super::expr::{Expr, Symbols};
use super::identities;
use super::{Form, RelationId, RelationInstance};

pub(crate) type Assign = Vec<(&'static str, usize)>;

pub(crate) fn value(a: &Assign, name: &str) -> usize {
    a.iter().find(|(n, _)| *n == name).map(|&(_, v)| v).expect("variable bound earlier")
}

/// Cartesian product built one variable at a time; later ranges may depend
/// on earlier values.
pub(crate) struct Grid(Vec<Assign>);

impl Grid {
    pub(crate) fn new() -> Self {
        Grid(vec![Vec::new()])
    }

    pub(crate) fn var(self, name: &'static str, range: impl Fn(&Assign) -> RangeInclusive<usize>) -> Self {
        let mut out = Vec::new();
        for a in self.0 {
            for v in range(&a) {
                let mut b = a.clone();
                b.push((name, v));
                out.push(b);
            }
        }
        Grid(out)
    }

    pub(crate) fn filter(self, keep: impl Fn(&Assign) -> bool) -> Self {
        Grid(self.0.into_iter().filter(|a| keep(a)).collect())
    }

    pub(crate) fn rows(self) -> Vec<Assign> {
        self.0
    }
}

const DEGREE_NAMES: [&str; 3] = ["r", "s", "l"];

fn split(a: Assign) -> (Assign, Assign) {
    a.into_iter().partition(|(n, _)| !DEGREE_NAMES.contains(n))
}

/// Every admissible instance of `id` on `mu` with all free degrees at most
/// `max_degree`. Series identities get the certified window `max_degree`.
pub fn enumerate_instances(id: RelationId, mu: &Composition, max_degree: usize) -> Result<Vec<RelationInstance>> {
    if id.form() == Form::Series {
        return identities::enumerate(id, mu, max_degree);
    }
    let n = mu.len();
    let m = |a: usize| mu.size(a);
    let dmax = max_degree;
    let blocks = move |_: &Assign| 1..=n;
    let lower = move |_: &Assign| 1..=n.saturating_sub(1);
    let d0 = move |_: &Assign| 0..=dmax;
    let d1 = move |_: &Assign| 1..=dmax;
    let v = value;
    use RelationId::*;
    let grid = match id {
        R7_1 => Grid::new().var("a", blocks).var("i", |x| 1..=m(v(x, "a"))).var("j", |x| 1..=m(v(x, "a"))),
        R7_2 => Grid::new().var("a", blocks).var("i", |x| 1..=m(v(x, "a"))).var("j", |x| 1..=m(v(x, "a"))).var("r", d0),
        R7_3 => Grid::new()
            .var("a", blocks)
            .var("b", blocks)
            .var("i", |x| 1..=m(v(x, "a")))
            .var("j", |x| 1..=m(v(x, "a")))
            .var("h", |x| 1..=m(v(x, "b")))
            .var("k", |x| 1..=m(v(x, "b")))
            .var("r", d0)
            .var("s", d0),
        R7_4 => Grid::new()
            .var("a", blocks)
            .var("b", lower)
            .var("i", |x| 1..=m(v(x, "a")))
            .var("j", |x| 1..=m(v(x, "a")))
            .var("h", |x| 1..=m(v(x, "b")))
            .var("k", |x| 1..=m(v(x, "b") + 1))
            .var("r", d0)
            .var("s", d1),
        R7_5 => Grid::new()
            .var("a", blocks)
            .var("b", lower)
            .var("i", |x| 1..=m(v(x, "a")))
            .var("j", |x| 1..=m(v(x, "a")))
            .var("h", |x| 1..=m(v(x, "b") + 1))
            .var("k", |x| 1..=m(v(x, "b")))
            .var("r", d0)
            .var("s", d1),
        R7_6 => Grid::new()
            .var("a", lower)
            .var("b", lower)
            .var("i", |x| 1..=m(v(x, "a")))
            .var("j", |x| 1..=m(v(x, "a") + 1))
            .var("h", |x| 1..=m(v(x, "b") + 1))
            .var("k", |x| 1..=m(v(x, "b")))
            .var("r", d1)
            .var("s", d1),
        R7_7 => Grid::new()
            .var("a", lower)
            .var("i", |x| 1..=m(v(x, "a")))
            .var("j", |x| 1..=m(v(x, "a") + 1))
            .var("h", |x| 1..=m(v(x, "a")))
            .var("k", |x| 1..=m(v(x, "a") + 1))
            .var("r", d1)
            .var("s", d1),
        R7_8 => Grid::new()
            .var("a", lower)
            .var("i", |x| 1..=m(v(x, "a") + 1))
            .var("j", |x| 1..=m(v(x, "a")))
            .var("h", |x| 1..=m(v(x, "a") + 1))
            .var("k", |x| 1..=m(v(x, "a")))
            .var("r", d1)
            .var("s", d1),
        R7_9 => Grid::new()
            .var("a", move |_| 1..=n.saturating_sub(2))
            .var("i", |x| 1..=m(v(x, "a")))
            .var("j", |x| 1..=m(v(x, "a") + 1))
            .var("h", |x| 1..=m(v(x, "a") + 1))
            .var("k", |x| 1..=m(v(x, "a") + 2))
            .var("r", d1)
            .var("s", d1),
        R7_10 => Grid::new()
            .var("a", move |_| 1..=n.saturating_sub(2))
            .var("i", |x| 1..=m(v(x, "a") + 1))
            .var("j", |x| 1..=m(v(x, "a")))
            .var("h", |x| 1..=m(v(x, "a") + 2))
            .var("k", |x| 1..=m(v(x, "a") + 1))
            .var("r", d1)
            .var("s", d1),
        R7_11 => Grid::new()
            .var("a", lower)
            .var("b", lower)
            .var("i", |x| 1..=m(v(x, "a")))
            .var("j", |x| 1..=m(v(x, "a") + 1))
            .var("h", |x| 1..=m(v(x, "b")))
            .var("k", |x| 1..=m(v(x, "b") + 1))
            .filter(|x| {
                let (a, b) = (v(x, "a"), v(x, "b"));
                a.abs_diff(b) > 1 || (b == a + 1 && v(x, "h") != v(x, "j"))
            })
            .var("r", d1)
            .var("s", d1),
        R7_12 => Grid::new()
            .var("a", lower)
            .var("b", lower)
            .var("i", |x| 1..=m(v(x, "a") + 1))
            .var("j", |x| 1..=m(v(x, "a")))
            .var("h", |x| 1..=m(v(x, "b") + 1))
            .var("k", |x| 1..=m(v(x, "b")))
            .filter(|x| {
                let (a, b) = (v(x, "a"), v(x, "b"));
                a.abs_diff(b) > 1 || (b == a + 1 && v(x, "i") != v(x, "k"))
            })
            .var("r", d1)
            .var("s", d1),
        R7_13 => Grid::new()
            .var("a", lower)
            .var("b", lower)
            .filter(|x| v(x, "a") != v(x, "b"))
            .var("i", |x| 1..=m(v(x, "a")))
            .var("j", |x| 1..=m(v(x, "a") + 1))
            .var("h", |x| 1..=m(v(x, "a")))
            .var("k", |x| 1..=m(v(x, "a") + 1))
            .var("f", |x| 1..=m(v(x, "b")))
            .var("g", |x| 1..=m(v(x, "b") + 1))
            .var("r", d1)
            .var("s", d1)
            .var("l", d1),
        R7_14 => Grid::new()
            .var("a", lower)
            .var("b", lower)
            .filter(|x| v(x, "a") != v(x, "b"))
            .var("i", |x| 1..=m(v(x, "a") + 1))
            .var("j", |x| 1..=m(v(x, "a")))
            .var("h", |x| 1..=m(v(x, "a") + 1))
            .var("k", |x| 1..=m(v(x, "a")))
            .var("f", |x| 1..=m(v(x, "b") + 1))
            .var("g", |x| 1..=m(v(x, "b")))
            .var("r", d1)
            .var("s", d1)
            .var("l", d1),
        R7_15 | R7_16 | SerreE | SerreF => {
            let grid = Grid::new()
                .var("a", move |_| 1..=n.saturating_sub(3))
                .var("i", |x| 1..=m(v(x, "a")))
                .var("f1", |x| 1..=m(v(x, "a") + 1))
                .var("f2", |x| 1..=m(v(x, "a") + 1))
                .var("h", |x| 1..=m(v(x, "a") + 1))
                .var("g1", |x| 1..=m(v(x, "a") + 2))
                .var("g2", |x| 1..=m(v(x, "a") + 2))
                .var("j", |x| 1..=m(v(x, "a") + 2))
                .var("k", |x| 1..=m(v(x, "a") + 3));
            let grid = if matches!(id, R7_15 | R7_16) {
                grid.filter(|x| {
                    let a = v(x, "a");
                    mu.restricted_parity(a + 1, v(x, "h")) + mu.restricted_parity(a + 2, v(x, "j")) == 1
                })
            } else {
                grid
            };
            grid.var("r", d1).var("s", d1)
        }
        _ => unreachable!("series identities handled above"),
    };
    Ok(grid
        .rows()
        .into_iter()
        .map(|row| {
            let (indices, degrees) = split(row);
            RelationInstance { id, config: mu.clone(), indices, degrees, form: Form::Coefficient, window: None }
        })
        .collect())
}

fn kron(x: usize, y: usize) -> bool {
    x == y
}

/// The residual `LHS − RHS` of a coefficient-form instance as a formal
/// expression; it must vanish under Γ.
pub fn build_relation(inst: &RelationInstance) -> Result<Expr> {
    if inst.form != Form::Coefficient {
        return Err(Error::Domain(format!("{} is a series identity", inst.id)));
    }
    let mu = &inst.config;
    let s = Symbols::new(mu);
    let p = |a: usize, i: usize| s.p(a, i);
    let g = |name: &str| inst.get(name);
    use RelationId::*;
    let out = match inst.id {
        R7_1 => {
            let (a, i, j) = (g("a"), g("i"), g("j"));
            s.d(a, i, j, 0).minus(Expr::delta(kron(i, j)))
        }
        R7_2 => {
            let (a, i, j, r) = (g("a"), g("i"), g("j"), g("r"));
            let mut terms = Vec::new();
            for q in 1..=mu.size(a) {
                for t in 0..=r {
                    terms.push(s.d(a, i, q, t).times(s.dp(a, q, j, r - t)));
                }
            }
            Expr::sum_of(terms).minus(Expr::delta(r == 0 && i == j))
        }
        R7_3 => {
            let (a, b, i, j, h, k, r, t_s) = (g("a"), g("b"), g("i"), g("j"), g("h"), g("k"), g("r"), g("s"));
            let lhs = Expr::bracket(s.d(a, i, j, r), s.d(b, h, k, t_s));
            let rhs = if a == b {
                let mut terms = Vec::new();
                for t in 0..r.min(t_s) {
                    let hi = r + t_s - 1 - t;
                    terms.push(s.d(a, h, j, t).times(s.d(a, i, k, hi)));
                    terms.push(s.d(a, h, j, hi).times(s.d(a, i, k, t)).signed(1));
                }
                Expr::sum_of(terms).signed(p(a, i) * p(a, j) + p(a, i) * p(a, h) + p(a, j) * p(a, h))
            } else {
                Expr::zero()
            };
            lhs.minus(rhs)
        }
        R7_4 => {
            let (a, b, i, j, h, k, r, t_s) = (g("a"), g("b"), g("i"), g("j"), g("h"), g("k"), g("r"), g("s"));
            let lhs = Expr::bracket(s.d(a, i, j, r), s.e(b, h, k, t_s));
            let mut rhs = Expr::zero();
            if a == b && h == j {
                let mut terms = Vec::new();
                for q in 1..=mu.size(a) {
                    for t in 0..r {
                        terms.push(s.d(a, i, q, t).times(s.e(b, q, k, r + t_s - 1 - t)));
                    }
                }
                rhs = rhs.plus(Expr::sum_of(terms).signed(p(a, h) * p(a, j)));
            }
            if a == b + 1 {
                let terms = (0..r).map(|t| s.d(a, i, k, t).times(s.e(b, h, j, r + t_s - 1 - t)));
                let sign = p(b, h) * p(a, k) + p(b, h) * p(a, j) + p(a, j) * p(a, k) + 1;
                rhs = rhs.plus(Expr::sum_of(terms).signed(sign));
            }
            lhs.minus(rhs)
        }
        R7_5 => {
            // The a = b term carries δ_ik and a minus sign, as forced by the
            // series identity for [D_1(u), F_1(v)].
            let (a, b, i, j, h, k, r, t_s) = (g("a"), g("b"), g("i"), g("j"), g("h"), g("k"), g("r"), g("s"));
            let lhs = Expr::bracket(s.d(a, i, j, r), s.f(b, h, k, t_s));
            let mut rhs = Expr::zero();
            if a == b && i == k {
                let mut terms = Vec::new();
                for q in 1..=mu.size(a) {
                    for t in 0..r {
                        terms.push(s.f(b, h, q, r + t_s - 1 - t).times(s.d(a, q, j, t)));
                    }
                }
                let sign = p(a, i) * p(a, j) + p(a + 1, h) * p(a, i) + p(a + 1, h) * p(a, j) + 1;
                rhs = rhs.plus(Expr::sum_of(terms).signed(sign));
            }
            if a == b + 1 {
                let terms = (0..r).map(|t| s.f(b, i, k, r + t_s - 1 - t).times(s.d(a, h, j, t)));
                let sign = p(a, h) * p(b, k) + p(a, h) * p(a, j) + p(a, j) * p(b, k);
                rhs = rhs.plus(Expr::sum_of(terms).signed(sign));
            }
            lhs.minus(rhs)
        }
        R7_6 => {
            let (a, b, i, j, h, k, r, t_s) = (g("a"), g("b"), g("i"), g("j"), g("h"), g("k"), g("r"), g("s"));
            let lhs = Expr::bracket(s.e(a, i, j, r), s.f(b, h, k, t_s));
            let rhs = if a == b {
                let top = r + t_s - 1;
                let terms = (0..=top).map(|t| s.dp(a, i, k, top - t).times(s.d(a + 1, h, j, t)));
                let sign = p(a + 1, h) * p(a, k) + p(a + 1, j) * p(a, k) + p(a + 1, h) * p(a + 1, j) + 1;
                Expr::sum_of(terms).signed(sign)
            } else {
                Expr::zero()
            };
            lhs.minus(rhs)
        }
        R7_7 => {
            let (a, i, j, h, k, r, t_s) = (g("a"), g("i"), g("j"), g("h"), g("k"), g("r"), g("s"));
            let lhs = Expr::bracket(s.e(a, i, j, r), s.e(a, h, k, t_s));
            let top = r + t_s - 1;
            let mut terms = Vec::new();
            for t in 1..t_s {
                terms.push(s.e(a, i, k, top - t).times(s.e(a, h, j, t)));
            }
            for t in 1..r {
                terms.push(s.e(a, i, k, top - t).times(s.e(a, h, j, t)).signed(1));
            }
            let sign = p(a, h) * p(a + 1, j) + p(a + 1, j) * p(a + 1, k) + p(a, h) * p(a + 1, k);
            lhs.minus(Expr::sum_of(terms).signed(sign))
        }
        R7_8 => {
            let (a, i, j, h, k, r, t_s) = (g("a"), g("i"), g("j"), g("h"), g("k"), g("r"), g("s"));
            let lhs = Expr::bracket(s.f(a, i, j, r), s.f(a, h, k, t_s));
            let top = r + t_s - 1;
            let mut terms = Vec::new();
            for t in 1..r {
                terms.push(s.f(a, i, k, top - t).times(s.f(a, h, j, t)));
            }
            for t in 1..t_s {
                terms.push(s.f(a, i, k, top - t).times(s.f(a, h, j, t)).signed(1));
            }
            let sign = p(a + 1, h) * p(a, j) + p(a, j) * p(a, k) + p(a + 1, h) * p(a, k);
            lhs.minus(Expr::sum_of(terms).signed(sign))
        }
        R7_9 => {
            let (a, i, j, h, k, r, t_s) = (g("a"), g("i"), g("j"), g("h"), g("k"), g("r"), g("s"));
            let lhs = Expr::bracket(s.e(a, i, j, r + 1), s.e(a + 1, h, k, t_s))
                .minus(Expr::bracket(s.e(a, i, j, r), s.e(a + 1, h, k, t_s + 1)));
            let rhs = if h == j {
                let terms = (1..=mu.size(a + 1)).map(|q| s.e(a, i, q, r).times(s.e(a + 1, q, k, t_s)));
                Expr::sum_of(terms).signed(p(a + 1, j) * p(a + 1, h))
            } else {
                Expr::zero()
            };
            lhs.minus(rhs)
        }
        R7_10 => {
            let (a, i, j, h, k, r, t_s) = (g("a"), g("i"), g("j"), g("h"), g("k"), g("r"), g("s"));
            let lhs = Expr::bracket(s.f(a, i, j, r + 1), s.f(a + 1, h, k, t_s))
                .minus(Expr::bracket(s.f(a, i, j, r), s.f(a + 1, h, k, t_s + 1)));
            let rhs = if i == k {
                let terms = (1..=mu.size(a + 1)).map(|q| s.f(a + 1, h, q, t_s).times(s.f(a, q, j, r)));
                let sign = p(a + 1, i) * (p(a, j) + p(a + 2, h)) + p(a, j) * p(a + 2, h) + 1;
                Expr::sum_of(terms).signed(sign)
            } else {
                Expr::zero()
            };
            lhs.minus(rhs)
        }
        R7_11 => Expr::bracket(s.e(g("a"), g("i"), g("j"), g("r")), s.e(g("b"), g("h"), g("k"), g("s"))),
        R7_12 => Expr::bracket(s.f(g("a"), g("i"), g("j"), g("r")), s.f(g("b"), g("h"), g("k"), g("s"))),
        R7_13 => {
            let (a, b, i, j, h, k, f, gg) = (g("a"), g("b"), g("i"), g("j"), g("h"), g("k"), g("f"), g("g"));
            let (r, t_s, l) = (g("r"), g("s"), g("l"));
            let one = Expr::bracket(s.e(a, i, j, r), Expr::bracket(s.e(a, h, k, t_s), s.e(b, f, gg, l)));
            let two = Expr::bracket(s.e(a, i, j, t_s), Expr::bracket(s.e(a, h, k, r), s.e(b, f, gg, l)));
            one.plus(two)
        }
        R7_14 => {
            let (a, b, i, j, h, k, f, gg) = (g("a"), g("b"), g("i"), g("j"), g("h"), g("k"), g("f"), g("g"));
            let (r, t_s, l) = (g("r"), g("s"), g("l"));
            let one = Expr::bracket(s.f(a, i, j, r), Expr::bracket(s.f(a, h, k, t_s), s.f(b, f, gg, l)));
            let two = Expr::bracket(s.f(a, i, j, t_s), Expr::bracket(s.f(a, h, k, r), s.f(b, f, gg, l)));
            one.plus(two)
        }
        R7_15 | SerreE => {
            let (a, i, j, h, k) = (g("a"), g("i"), g("j"), g("h"), g("k"));
            let (f1, f2, g1, g2, r, t_s) = (g("f1"), g("f2"), g("g1"), g("g2"), g("r"), g("s"));
            Expr::bracket(
                Expr::bracket(s.e(a, i, f1, r), s.e(a + 1, f2, j, 1)),
                Expr::bracket(s.e(a + 1, h, g1, 1), s.e(a + 2, g2, k, t_s)),
            )
        }
        R7_16 | SerreF => {
            let (a, i, j, h, k) = (g("a"), g("i"), g("j"), g("h"), g("k"));
            let (f1, f2, g1, g2, r, t_s) = (g("f1"), g("f2"), g("g1"), g("g2"), g("r"), g("s"));
            Expr::bracket(
                Expr::bracket(s.f(a, f1, i, r), s.f(a + 1, j, f2, 1)),
                Expr::bracket(s.f(a + 1, g1, h, 1), s.f(a + 2, k, g2, t_s)),
            )
        }
        _ => unreachable!("coefficient form checked above"),
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mu(s: &str, parts: &str) -> Composition {
        Composition::parse(s.parse().unwrap(), parts).unwrap()
    }

    #[test]
    fn counts_and_side_conditions() {
        assert_eq!(enumerate_instances(RelationId::R7_1, &mu("001", "2,1"), 3).unwrap().len(), 5);
        assert!(enumerate_instances(RelationId::R7_15, &mu("010", "1,1,1"), 3).unwrap().is_empty());
        let inst = enumerate_instances(RelationId::R7_11, &mu("0101", "1,2,1"), 1).unwrap();
        assert!(inst.iter().all(|x| !(x.get("b") == x.get("a") + 1 && x.get("h") == x.get("j"))));
        assert!(!inst.is_empty());
        // 0110 with singleton blocks has |h|_2 + |j|_3 = 1 + 1: nothing admissible.
        assert!(enumerate_instances(RelationId::R7_15, &mu("0110", "1,1,1,1"), 3).unwrap().is_empty());
        assert_eq!(enumerate_instances(RelationId::SerreE, &mu("0110", "1,1,1,1"), 3).unwrap().len(), 9);
        assert_eq!(enumerate_instances(RelationId::R7_15, &mu("0101", "1,1,1,1"), 3).unwrap().len(), 9);
    }

    #[test]
    fn zero_degree_collapses() {
        let m = mu("01", "1,1");
        let inst = &enumerate_instances(RelationId::R7_1, &m, 1).unwrap()[0];
        assert!(build_relation(inst).unwrap().is_zero());
    }
}
