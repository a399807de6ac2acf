//! Generating-series identities in two or three spectral variables,
//! checked coefficientwise on a certified window.

use std::sync::OnceLock;

use serde::Serialize;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::freealg::{koszul, AlgebraElement};
use crate::gauss::{decompose, t_inverse, Block, GaussFactors};
use crate::grading::Composition;
use crate::rtt::YangianContext;
use crate::series::{Exponents, MatrixSeries, TruncatedSeries};

use super::catalog::Grid;
use super::{Form, RelationId, RelationInstance};

const UV: [char; 2] = ['u', 'v'];
const UVW: [char; 3] = ['u', 'v', 'w'];

/// Series arithmetic in the RTT realization over a fixed variable set.
pub struct SeriesEnv<'a> {
    ctx: &'a YangianContext,
    factors: &'a GaussFactors,
    vars: Vec<char>,
    cap: u8,
    tp: OnceLock<MatrixSeries>,
}

impl<'a> SeriesEnv<'a> {
    pub fn new(ctx: &'a YangianContext, factors: &'a GaussFactors, vars: &[char], cap: u8) -> Result<Self> {
        if factors.cap() < cap {
            return Err(Error::CapTooSmall { given: factors.cap(), required: cap });
        }
        Ok(Self { ctx, factors, vars: vars.to_vec(), cap, tp: OnceLock::new() })
    }

    pub fn cap(&self) -> u8 {
        self.cap
    }

    fn place(&self, s: &TruncatedSeries, var: char) -> Result<TruncatedSeries> {
        s.truncate(self.cap).rename(var).embed(&self.vars)
    }

    /// Entry `(i, j)` of a Gauss block in variable `var`.
    pub fn block(&self, which: Block, i: usize, j: usize, var: char) -> Result<TruncatedSeries> {
        let m = self.factors.block(which)?;
        self.place(m.entry(i, j), var)
    }

    pub fn t(&self, i: usize, j: usize, var: char) -> Result<TruncatedSeries> {
        let s = TruncatedSeries::univariate(var, self.cap, (0..=self.cap as usize).map(|r| self.ctx.t(i, j, r)));
        s.embed(&self.vars)
    }

    pub fn tp(&self, i: usize, j: usize, var: char) -> Result<TruncatedSeries> {
        let m = self.tp.get_or_init(|| t_inverse(self.ctx, self.cap));
        self.place(m.entry(i, j), var)
    }

    pub fn zero(&self) -> TruncatedSeries {
        TruncatedSeries::zero(&self.vars, self.cap)
    }

    pub fn mul(&self, x: &TruncatedSeries, y: &TruncatedSeries) -> Result<TruncatedSeries> {
        let mul = |a: &AlgebraElement, b: &AlgebraElement| self.ctx.product_unchecked(a, b);
        x.mul_with(y, &mul)
    }

    /// `[X, Y]` for parity-homogeneous series.
    pub fn bracket(&self, x: &TruncatedSeries, y: &TruncatedSeries) -> Result<TruncatedSeries> {
        if x.is_zero() || y.is_zero() {
            return Ok(self.zero());
        }
        let (p, q) = (series_parity(x)?, series_parity(y)?);
        let xy = self.mul(x, y)?;
        let yx = self.mul(y, x)?;
        xy.sub(&yx.scale(&Coeff::sign(koszul(p, q))))
    }

    pub fn sum(&self, items: impl IntoIterator<Item = Result<TruncatedSeries>>) -> Result<TruncatedSeries> {
        let mut acc = self.zero();
        for s in items {
            acc = acc.add(&s?)?;
        }
        Ok(acc)
    }
}

fn series_parity(s: &TruncatedSeries) -> Result<u8> {
    let mut parities = s.terms().filter(|(_, c)| !c.is_empty()).map(|(_, c)| c.parity());
    let first = parities.next().flatten().ok_or(Error::Inhomogeneous)?;
    if parities.all(|p| p == Some(first)) {
        Ok(first)
    } else {
        Err(Error::Inhomogeneous)
    }
}

fn sgn(s: TruncatedSeries, exponent: u32) -> TruncatedSeries {
    if exponent % 2 == 1 {
        s.neg()
    } else {
        s
    }
}

/// Number of blocks an identity is stated for; `None` for any.
fn required_blocks(id: RelationId) -> Option<usize> {
    use RelationId::*;
    match id {
        R3_11 => None,
        R5_1 | R5_2 | R5_3 | R5_4 | R5_5 | R5_6 | R5_7 | R5_8 | R5_9 => Some(2),
        _ => Some(3),
    }
}

/// Identities stated as `(u - v)·LHS = RHS`.
fn has_difference_factor(id: RelationId) -> bool {
    use RelationId::*;
    matches!(id, R3_11 | R5_1 | R5_2 | R5_3 | R5_4 | R5_5 | R5_6 | R5_7 | R5_8 | R5_9 | R6_1b | R6_2b)
}

fn trivariate(id: RelationId) -> bool {
    use RelationId::*;
    matches!(id, R6_3c | R6_3d | R6_3g | R6_3h)
}

pub(crate) fn enumerate(id: RelationId, mu: &Composition, window: usize) -> Result<Vec<RelationInstance>> {
    if let Some(n) = required_blocks(id) {
        if mu.len() != n {
            return Err(Error::Config(format!("{id} is stated for {n} blocks, got mu=({})", mu.parts_string())));
        }
    }
    let m = |a: usize| mu.size(a);
    let all = |_: &Vec<(&'static str, usize)>| 1..=mu.seq().len();
    use RelationId::*;
    let (e1, e2, e13) = ((1, 2), (2, 3), (1, 3));
    let (f1, f2, f31) = ((2, 1), (3, 2), (3, 1));
    let sized = |grid: Grid, name: &'static str, a: usize| grid.var(name, move |_| 1..=m(a));
    // (rows, cols) of each series, named by their entry indices.
    let pair =
        |grid: Grid, (x, y): (&'static str, &'static str), (a, b): (usize, usize)| sized(sized(grid, x, a), y, b);
    let g = Grid::new();
    let grid = match id {
        R3_11 => g.var("i", all).var("j", all).var("h", all).var("k", all),
        R5_1 => pair(pair(g, ("i", "j"), (1, 1)), ("h", "k"), e1),
        R5_2 => pair(pair(g, ("i", "j"), e1), ("h", "k"), (2, 2)),
        R5_3 => pair(pair(g, ("i", "j"), (2, 2)), ("h", "k"), e1),
        R5_4 => pair(pair(g, ("i", "j"), (1, 1)), ("h", "k"), f1),
        R5_5 => pair(pair(g, ("i", "j"), f1), ("h", "k"), (2, 2)),
        R5_6 => pair(pair(g, ("i", "j"), (2, 2)), ("h", "k"), f1),
        R5_7 => pair(pair(g, ("i", "j"), e1), ("h", "k"), f1),
        R5_8 => pair(pair(g, ("i", "j"), e1), ("h", "k"), e1),
        R5_9 => pair(pair(g, ("i", "j"), f1), ("h", "k"), f1),
        R6_1a => pair(pair(g, ("i", "j"), e1), ("h", "k"), f2),
        R6_1b => pair(pair(g, ("i", "j"), e1), ("h", "k"), e2),
        R6_1c => sized(pair(pair(g, ("i", "j"), e13), ("h", "k"), e2), "g", 2),
        R6_1d => sized(pair(pair(g, ("i", "j"), e1), ("h", "k"), e13), "g", 2),
        R6_2a => pair(pair(g, ("i", "j"), f1), ("h", "k"), e2),
        R6_2b => pair(pair(g, ("i", "j"), f1), ("h", "k"), f2),
        R6_2c => sized(pair(pair(g, ("i", "j"), f31), ("h", "k"), f2), "g", 2),
        R6_2d => sized(pair(pair(g, ("i", "j"), f1), ("h", "k"), f31), "g", 2),
        R6_3a | R6_3c => pair(pair(pair(g, ("i", "j"), e1), ("h", "k"), e2), ("f", "g"), e2),
        R6_3b | R6_3d => pair(pair(pair(g, ("i", "j"), e1), ("h", "k"), e1), ("f", "g"), e2),
        R6_3e | R6_3g => pair(pair(pair(g, ("i", "j"), f1), ("h", "k"), f2), ("f", "g"), f2),
        R6_3f | R6_3h => pair(pair(pair(g, ("i", "j"), f1), ("h", "k"), f1), ("f", "g"), f2),
        _ => return Err(Error::Domain(format!("{id} is not a series identity"))),
    };
    let window = u8::try_from(window).map_err(|_| Error::Config("window too large".into()))?;
    Ok(grid
        .rows()
        .into_iter()
        .map(|indices| RelationInstance {
            id,
            config: mu.clone(),
            indices,
            degrees: Vec::new(),
            form: Form::Series,
            window: Some(window),
        })
        .collect())
}

/// The variables and internal cap used to certify `window`.
pub(crate) fn env_shape(id: RelationId, window: u8) -> (&'static [char], u8) {
    let vars: &'static [char] = if trivariate(id) { &UVW } else { &UV };
    let cap = if has_difference_factor(id) { window + 1 } else { window };
    (vars, cap)
}

/// Nonzero coefficients of `(u - v)·LHS - RHS` (or `LHS - RHS`) on the
/// window, computed with `factors`, which must reach the internal cap.
pub fn evaluate_series_instance(
    inst: &RelationInstance,
    ctx: &YangianContext,
    factors: &GaussFactors,
) -> Result<Vec<(Exponents, AlgebraElement)>> {
    let window = inst.window.ok_or_else(|| Error::Domain(format!("{} has no series window", inst.id)))?;
    let (vars, cap) = env_shape(inst.id, window);
    let env = SeriesEnv::new(ctx, factors, vars, cap)?;
    let (lhs, rhs) = sides(inst, &env)?;
    let lhs = if has_difference_factor(inst.id) { lhs.mul_by_difference('u', 'v')? } else { lhs };
    let residual = lhs.sub(&rhs.truncate(window))?;
    Ok(residual.terms().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (e.clone(), c.clone())).collect())
}

/// Entry `(i, j)` of a block series in the given variable.
type BlockSeries<'a> = dyn Fn(usize, usize, char) -> Result<TruncatedSeries> + 'a;

fn sides(inst: &RelationInstance, env: &SeriesEnv<'_>) -> Result<(TruncatedSeries, TruncatedSeries)> {
    let mu = &inst.config;
    let p = |a: usize, i: usize| mu.restricted_parity(a, i) as u32;
    let x = |name: &str| inst.get(name);
    let (u, w2, w3) = ('u', 'v', 'w');
    use Block::{DPrime as Dp, D, E, F};
    use RelationId::*;
    let e1 = |i, j, var| env.block(E(1, 2), i, j, var);
    let e2 = |i, j, var| env.block(E(2, 3), i, j, var);
    let e13 = |i, j, var| env.block(E(1, 3), i, j, var);
    let f1 = |i, j, var| env.block(F(2, 1), i, j, var);
    let f2 = |i, j, var| env.block(F(3, 2), i, j, var);
    let f31 = |i, j, var| env.block(F(3, 1), i, j, var);
    let mu1 = mu.size(1);
    let mu2 = if mu.len() > 1 { mu.size(2) } else { 0 };
    let (i, j) = (x("i"), x("j"));
    let (h, k) = (x("h"), x("k"));
    let zero = env.zero();
    let out = match inst.id {
        R3_11 => {
            let seq = mu.seq();
            let q = |a: usize| seq.parity(a) as u32;
            let lhs = env.bracket(&env.t(i, j, u)?, &env.tp(h, k, w2)?)?;
            let mut rhs = zero.clone();
            let n = seq.len();
            if h == j {
                rhs = rhs.add(&env.sum((1..=n).map(|g| env.mul(&env.t(i, g, u)?, &env.tp(g, k, w2)?)))?)?;
            }
            if i == k {
                rhs = rhs.sub(&env.sum((1..=n).map(|g| env.mul(&env.tp(h, g, w2)?, &env.t(g, j, u)?)))?)?;
            }
            (lhs, sgn(rhs, q(i) * q(j) + q(i) * q(h) + q(j) * q(h)))
        }
        R5_1 => {
            let lhs = env.bracket(&env.block(D(1), i, j, u)?, &e1(h, k, w2)?)?;
            let rhs = if h == j {
                let terms = (1..=mu1).map(|q| env.mul(&env.block(D(1), i, q, u)?, &e1(q, k, w2)?.sub(&e1(q, k, u)?)?));
                sgn(env.sum(terms)?, p(1, h) * p(1, j))
            } else {
                zero
            };
            (lhs, rhs)
        }
        R5_2 => {
            let lhs = env.bracket(&e1(i, j, u)?, &env.block(Dp(2), h, k, w2)?)?;
            let rhs = if h == j {
                let terms =
                    (1..=mu2).map(|q| env.mul(&e1(i, q, u)?.sub(&e1(i, q, w2)?)?, &env.block(Dp(2), q, k, w2)?));
                sgn(env.sum(terms)?, p(2, h) * p(2, j))
            } else {
                zero
            };
            (lhs, rhs)
        }
        R5_3 => {
            let lhs = env.bracket(&env.block(D(2), i, j, u)?, &e1(h, k, w2)?)?;
            let rhs = env.mul(&env.block(D(2), i, k, u)?, &e1(h, j, u)?.sub(&e1(h, j, w2)?)?)?;
            (lhs, sgn(rhs, p(1, h) * p(2, k) + p(1, h) * p(2, j) + p(2, j) * p(2, k)))
        }
        R5_4 => {
            let lhs = env.bracket(&env.block(D(1), i, j, u)?, &f1(h, k, w2)?)?;
            let rhs = if i == k {
                let terms = (1..=mu1).map(|q| env.mul(&f1(h, q, u)?.sub(&f1(h, q, w2)?)?, &env.block(D(1), q, j, u)?));
                sgn(env.sum(terms)?, p(1, i) * p(1, j) + p(2, h) * p(1, i) + p(2, h) * p(1, j))
            } else {
                zero
            };
            (lhs, rhs)
        }
        R5_5 => {
            let lhs = env.bracket(&f1(i, j, u)?, &env.block(Dp(2), h, k, w2)?)?;
            let rhs = if i == k {
                let terms =
                    (1..=mu2).map(|q| env.mul(&env.block(Dp(2), h, q, w2)?, &f1(q, j, w2)?.sub(&f1(q, j, u)?)?));
                sgn(env.sum(terms)?, p(2, h) * p(2, i) + p(2, h) * p(1, j) + p(1, j) * p(2, k))
            } else {
                zero
            };
            (lhs, rhs)
        }
        R5_6 => {
            let lhs = env.bracket(&env.block(D(2), i, j, u)?, &f1(h, k, w2)?)?;
            let rhs = env.mul(&f1(i, k, w2)?.sub(&f1(i, k, u)?)?, &env.block(D(2), h, j, u)?)?;
            (lhs, sgn(rhs, p(2, h) * p(1, k) + p(2, h) * p(2, j) + p(2, j) * p(1, k)))
        }
        R5_7 => {
            let lhs = env.bracket(&e1(i, j, u)?, &f1(h, k, w2)?)?;
            let one = env.mul(&env.block(D(2), h, j, u)?, &env.block(Dp(1), i, k, u)?)?;
            let two = env.mul(&env.block(Dp(1), i, k, w2)?, &env.block(D(2), h, j, w2)?)?;
            let rhs = sgn(one, p(2, h) * p(1, i) + p(1, i) * p(2, j) + p(2, h) * p(2, j))
                .sub(&sgn(two, p(2, h) * p(1, k) + p(2, j) * p(1, k) + p(2, h) * p(2, j)))?;
            (lhs, rhs)
        }
        R5_8 => {
            let lhs = env.bracket(&e1(i, j, u)?, &e1(h, k, w2)?)?;
            let rhs = env.mul(&e1(i, k, u)?.sub(&e1(i, k, w2)?)?, &e1(h, j, u)?.sub(&e1(h, j, w2)?)?)?;
            (lhs, sgn(rhs, p(1, h) * p(2, j) + p(2, j) * p(2, k) + p(1, h) * p(2, k)))
        }
        R5_9 => {
            let lhs = env.bracket(&f1(i, j, u)?, &f1(h, k, w2)?)?;
            let rhs = env.mul(&f1(h, j, w2)?.sub(&f1(h, j, u)?)?, &f1(i, k, u)?.sub(&f1(i, k, w2)?)?)?;
            (lhs, sgn(rhs, p(2, i) * p(1, j) + p(2, h) * p(2, i) + p(2, h) * p(1, j)))
        }
        R6_1a => (env.bracket(&e1(i, j, u)?, &f2(h, k, w2)?)?, zero),
        R6_1b => {
            let lhs = env.bracket(&e1(i, j, u)?, &e2(h, k, w2)?)?;
            let rhs = if h == j {
                let terms = (1..=mu2).map(|q| env.mul(&e1(i, q, u)?.sub(&e1(i, q, w2)?)?, &e2(q, k, w2)?));
                let body = env.sum(terms)?.add(&e13(i, k, w2)?)?.sub(&e13(i, k, u)?)?;
                sgn(body, p(2, j) * p(2, h))
            } else {
                zero
            };
            (lhs, rhs)
        }
        R6_1c => {
            let g = x("g");
            let lhs = env.bracket(&e13(i, j, u)?, &e2(h, k, w2)?)?;
            let inner = env.bracket(&e1(i, g, u)?, &e2(g, k, w2)?)?;
            let rhs = env.mul(&e2(h, j, w2)?, &inner)?;
            (lhs, sgn(rhs, p(1, i) * p(3, j) + p(1, i) * p(2, h) + p(2, h) * p(3, j) + p(2, g)))
        }
        R6_1d => {
            let g = x("g");
            let prod = env.sum((1..=mu2).map(|q| env.mul(&e1(h, q, w2)?, &e2(q, k, w2)?)))?;
            let lhs = env.bracket(&e1(i, j, u)?, &e13(h, k, w2)?.sub(&prod)?)?;
            let inner = env.bracket(&e1(i, g, u)?, &e2(g, k, w2)?)?;
            let rhs = env.mul(&inner, &e1(h, j, u)?)?;
            (lhs, sgn(rhs, p(1, h) * p(2, j) + p(2, j) * p(3, k) + p(1, h) * p(3, k) + p(2, g) + 1))
        }
        R6_2a => (env.bracket(&f1(i, j, u)?, &e2(h, k, w2)?)?, zero),
        R6_2b => {
            let lhs = env.bracket(&f1(i, j, u)?, &f2(h, k, w2)?)?;
            let rhs = if i == k {
                let terms = (1..=mu2).map(|q| env.mul(&f2(h, q, w2)?, &f1(q, j, w2)?.sub(&f1(q, j, u)?)?));
                let body = env.sum(terms)?.sub(&f31(h, j, w2)?)?.add(&f31(h, j, u)?)?;
                sgn(body, p(2, i) * p(1, j) + p(2, i) * p(3, h) + p(1, j) * p(3, h))
            } else {
                zero
            };
            (lhs, rhs)
        }
        R6_2c => {
            let g = x("g");
            let lhs = env.bracket(&f31(i, j, u)?, &f2(h, k, w2)?)?;
            let inner = env.bracket(&f2(h, g, w2)?, &f1(g, j, u)?)?;
            let rhs = env.mul(&inner, &f2(i, k, w2)?)?;
            (lhs, sgn(rhs, p(3, i) * p(1, j) + p(3, i) * p(3, h) + p(1, j) * p(3, h) + p(2, g) + 1))
        }
        R6_2d => {
            let g = x("g");
            let prod = env.sum((1..=mu2).map(|q| env.mul(&f2(h, q, w2)?, &f1(q, k, w2)?)))?;
            let lhs = env.bracket(&f1(i, j, u)?, &prod.sub(&f31(h, k, w2)?)?)?;
            let inner = env.bracket(&f1(g, j, u)?, &f2(h, g, w2)?)?;
            let rhs = env.mul(&f1(i, k, u)?, &inner)?;
            (lhs, sgn(rhs, (p(3, h) + p(1, j)) * (p(1, k) + p(2, g))))
        }
        R6_3a | R6_3b | R6_3c | R6_3d | R6_3e | R6_3f | R6_3g | R6_3h => {
            let (f, g) = (x("f"), x("g"));
            let (lower, upper): (&BlockSeries<'_>, &BlockSeries<'_>) =
                if matches!(inst.id, R6_3a | R6_3b | R6_3c | R6_3d) { (&e1, &e2) } else { (&f1, &f2) };
            let lhs = match inst.id {
                R6_3a | R6_3e => env.bracket(&env.bracket(&lower(i, j, u)?, &upper(h, k, w2)?)?, &upper(f, g, w2)?)?,
                R6_3b | R6_3f => env.bracket(&lower(i, j, u)?, &env.bracket(&lower(h, k, u)?, &upper(f, g, w2)?)?)?,
                R6_3c | R6_3g => {
                    let one = env.bracket(&env.bracket(&lower(i, j, u)?, &upper(h, k, w2)?)?, &upper(f, g, w3)?)?;
                    let two = env.bracket(&env.bracket(&lower(i, j, u)?, &upper(h, k, w3)?)?, &upper(f, g, w2)?)?;
                    one.add(&two)?
                }
                _ => {
                    let one = env.bracket(&lower(i, j, u)?, &env.bracket(&lower(h, k, w2)?, &upper(f, g, w3)?)?)?;
                    let two = env.bracket(&lower(i, j, w2)?, &env.bracket(&lower(h, k, u)?, &upper(f, g, w3)?)?)?;
                    one.add(&two)?
                }
            };
            (lhs, zero)
        }
        other => return Err(Error::Domain(format!("{other} is not a series identity"))),
    };
    Ok(out)
}

/// Aggregate result of checking one identity over all its index choices.
#[derive(Debug, Clone, Serialize)]
pub struct SeriesReport {
    pub relation: String,
    pub config: String,
    pub window: u8,
    pub instances: usize,
    pub coefficients_checked: usize,
    pub failures: usize,
    pub first_counterexample: Option<String>,
}

impl SeriesReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Checks one identity on every index choice with per-variable cap
/// `window`, decomposing at the cap the identity needs.
pub fn evaluate_series_identity(
    id: RelationId,
    ctx: &YangianContext,
    mu: &Composition,
    window: u8,
) -> Result<SeriesReport> {
    let instances = enumerate(id, mu, window as usize)?;
    let (vars, cap) = env_shape(id, window);
    let factors = decompose(ctx, mu, cap)?;
    let mut report = SeriesReport {
        relation: id.to_string(),
        config: mu.to_string(),
        window,
        instances: instances.len(),
        coefficients_checked: 0,
        failures: 0,
        first_counterexample: None,
    };
    let per_instance = (window as usize + 1).pow(vars.len() as u32);
    for inst in &instances {
        let bad = evaluate_series_instance(inst, ctx, &factors)?;
        report.coefficients_checked += per_instance;
        if let Some((e, c)) = bad.first() {
            report.failures += 1;
            if report.first_counterexample.is_none() {
                report.first_counterexample = Some(format!("{inst} at exponents {e:?}: {c}"));
            }
        }
    }
    Ok(report)
}
