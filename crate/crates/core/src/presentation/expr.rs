//! Formal expressions in the parabolic symbols and their evaluation under Γ.

use std::fmt;

use dashmap::DashMap;
use rustc_hash::FxBuildHasher;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::freealg::{koszul, AlgebraElement, Family, Generator};
use crate::gauss::{Block, GaussFactors};
use crate::grading::Composition;
use crate::rtt::YangianContext;

/// An unevaluated expression tree. Brackets are kept structural so that
/// nested brackets are evaluated bottom-up on normal forms.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Scalar(Coeff),
    Symbol(Generator),
    Sum(Vec<(Coeff, Expr)>),
    Product(Vec<Expr>),
    Bracket(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn zero() -> Self {
        Expr::Scalar(Coeff::zero())
    }

    pub fn one() -> Self {
        Expr::Scalar(Coeff::one())
    }

    pub fn delta(cond: bool) -> Self {
        if cond {
            Self::one()
        } else {
            Self::zero()
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Expr::Scalar(c) => c.is_zero(),
            Expr::Sum(v) => v.is_empty(),
            _ => false,
        }
    }

    pub fn sum(terms: impl IntoIterator<Item = (Coeff, Expr)>) -> Self {
        let mut out = Vec::new();
        let mut constant = Coeff::zero();
        let mut push = |c: Coeff, e: Expr, constant: &mut Coeff| match e {
            Expr::Scalar(d) => constant.add_assign_ref(&c.mul_ref(&d)),
            e => out.push((c, e)),
        };
        for (c, e) in terms {
            if c.is_zero() || e.is_zero() {
                continue;
            }
            match e {
                Expr::Sum(inner) => {
                    for (d, x) in inner {
                        push(c.mul_ref(&d), x, &mut constant);
                    }
                }
                e => push(c, e, &mut constant),
            }
        }
        if out.is_empty() {
            return Expr::Scalar(constant);
        }
        if !constant.is_zero() {
            out.push((constant, Expr::one()));
        }
        Expr::Sum(out)
    }

    pub fn sum_of(items: impl IntoIterator<Item = Expr>) -> Self {
        Self::sum(items.into_iter().map(|e| (Coeff::one(), e)))
    }

    pub fn scaled(self, c: Coeff) -> Self {
        Self::sum([(c, self)])
    }

    pub fn signed(self, exponent: u32) -> Self {
        self.scaled(Coeff::sign(exponent))
    }

    pub fn plus(self, other: Expr) -> Self {
        Self::sum([(Coeff::one(), self), (Coeff::one(), other)])
    }

    pub fn minus(self, other: Expr) -> Self {
        Self::sum([(Coeff::one(), self), (Coeff::from_int(-1), other)])
    }

    pub fn times(self, other: Expr) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        match (self, other) {
            (Expr::Scalar(c), e) | (e, Expr::Scalar(c)) => e.scaled(c),
            (Expr::Product(mut a), Expr::Product(b)) => {
                a.extend(b);
                Expr::Product(a)
            }
            (Expr::Product(mut a), b) => {
                a.push(b);
                Expr::Product(a)
            }
            (a, Expr::Product(mut b)) => {
                b.insert(0, a);
                Expr::Product(b)
            }
            (a, b) => Expr::Product(vec![a, b]),
        }
    }

    pub fn bracket(x: Expr, y: Expr) -> Self {
        if x.is_zero() || y.is_zero() || matches!(x, Expr::Scalar(_)) || matches!(y, Expr::Scalar(_)) {
            return Self::zero();
        }
        Expr::Bracket(Box::new(x), Box::new(y))
    }

    /// Largest series index among the symbols.
    pub fn max_degree(&self) -> usize {
        match self {
            Expr::Scalar(_) => 0,
            Expr::Symbol(g) => g.r as usize,
            Expr::Sum(v) => v.iter().map(|(_, e)| e.max_degree()).max().unwrap_or(0),
            Expr::Product(v) => v.iter().map(Expr::max_degree).max().unwrap_or(0),
            Expr::Bracket(x, y) => x.max_degree().max(y.max_degree()),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Scalar(c) => write!(f, "{c}"),
            Expr::Symbol(g) => write!(f, "{g}"),
            Expr::Sum(v) if v.is_empty() => write!(f, "0"),
            Expr::Sum(v) => {
                for (n, (c, e)) in v.iter().enumerate() {
                    let neg = c.is_negative();
                    match (n, neg) {
                        (0, true) => write!(f, "-")?,
                        (0, false) => {}
                        (_, true) => write!(f, " - ")?,
                        (_, false) => write!(f, " + ")?,
                    }
                    let a = c.abs();
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if matches!(e, Expr::Sum(_)) {
                        write!(f, "({e})")?;
                    } else {
                        write!(f, "{e}")?;
                    }
                }
                Ok(())
            }
            Expr::Product(v) => {
                for (n, e) in v.iter().enumerate() {
                    if n > 0 {
                        write!(f, "*")?;
                    }
                    if matches!(e, Expr::Sum(_)) {
                        write!(f, "({e})")?;
                    } else {
                        write!(f, "{e}")?;
                    }
                }
                Ok(())
            }
            Expr::Bracket(x, y) => write!(f, "[{x}, {y}]"),
        }
    }
}

/// Symbol constructors for one composition, with the block conventions
/// `E_a = E_{a,a+1}`, `F_a = F_{a+1,a}`, and zeroth coefficients collapsed:
/// `D^{(0)} = D'^{(0)} = δ`, `E^{(0)} = F^{(0)} = 0`.
#[derive(Clone, Copy)]
pub struct Symbols<'a> {
    pub mu: &'a Composition,
}

impl<'a> Symbols<'a> {
    pub fn new(mu: &'a Composition) -> Self {
        Self { mu }
    }

    /// `|i|_a`.
    pub fn p(&self, a: usize, i: usize) -> u32 {
        self.mu.restricted_parity(a, i) as u32
    }

    pub fn d(&self, a: usize, i: usize, j: usize, r: usize) -> Expr {
        if r == 0 {
            return Expr::delta(i == j);
        }
        Expr::Symbol(Generator::d(self.mu, a, i, j, r))
    }

    pub fn dp(&self, a: usize, i: usize, j: usize, r: usize) -> Expr {
        if r == 0 {
            return Expr::delta(i == j);
        }
        Expr::Symbol(Generator::dp(self.mu, a, i, j, r))
    }

    pub fn e(&self, a: usize, i: usize, j: usize, r: usize) -> Expr {
        self.e_ab(a, a + 1, i, j, r)
    }

    pub fn f(&self, a: usize, i: usize, j: usize, r: usize) -> Expr {
        self.f_ba(a + 1, a, i, j, r)
    }

    pub fn e_ab(&self, a: usize, b: usize, i: usize, j: usize, r: usize) -> Expr {
        if r == 0 {
            return Expr::zero();
        }
        Expr::Symbol(Generator::e_block(self.mu, a, b, i, j, r))
    }

    pub fn f_ba(&self, b: usize, a: usize, i: usize, j: usize, r: usize) -> Expr {
        if r == 0 {
            return Expr::zero();
        }
        Expr::Symbol(Generator::f_block(self.mu, b, a, i, j, r))
    }
}

/// Γ: replaces each parabolic symbol by its Gauss coefficient and normalizes.
/// Products of two symbols are cached.
pub struct Gamma<'a> {
    ctx: &'a YangianContext,
    factors: &'a GaussFactors,
    pairs: DashMap<(Generator, Generator), AlgebraElement, FxBuildHasher>,
}

pub fn block_of(g: &Generator) -> Result<Block> {
    let (a, b) = (g.a as usize, g.b as usize);
    Ok(match g.family {
        Family::D => Block::D(a),
        Family::DPrime => Block::DPrime(a),
        Family::E => Block::E(a, b),
        Family::F => Block::F(a, b),
        _ => return Err(Error::Alphabet(format!("{g} is not a parabolic symbol"))),
    })
}

impl<'a> Gamma<'a> {
    pub fn new(ctx: &'a YangianContext, factors: &'a GaussFactors) -> Self {
        Self { ctx, factors, pairs: DashMap::default() }
    }

    pub fn ctx(&self) -> &YangianContext {
        self.ctx
    }

    pub fn factors(&self) -> &GaussFactors {
        self.factors
    }

    pub fn symbol(&self, g: &Generator) -> Result<AlgebraElement> {
        match g.family {
            Family::T => Ok(self.ctx.t(g.i as usize, g.j as usize, g.r as usize)),
            _ => self.factors.coefficient(block_of(g)?, g.i as usize, g.j as usize, g.r as usize),
        }
    }

    fn pair(&self, x: &Generator, y: &Generator) -> Result<AlgebraElement> {
        if let Some(v) = self.pairs.get(&(*x, *y)) {
            return Ok(v.clone());
        }
        let v = self.ctx.product_unchecked(&self.symbol(x)?, &self.symbol(y)?);
        self.pairs.insert((*x, *y), v.clone());
        Ok(v)
    }

    fn product_of(&self, x: &Expr, y: &Expr) -> Result<AlgebraElement> {
        if let (Expr::Symbol(a), Expr::Symbol(b)) = (x, y) {
            return self.pair(a, b);
        }
        Ok(self.ctx.product_unchecked(&self.eval(x)?, &self.eval(y)?))
    }

    /// Normal form of `Γ(e)`. Refuses when a symbol needs a coefficient
    /// beyond the factors' cap.
    pub fn eval(&self, e: &Expr) -> Result<AlgebraElement> {
        let need = e.max_degree();
        if need > self.factors.cap() as usize {
            return Err(Error::CapTooSmall { given: self.factors.cap(), required: need as u8 });
        }
        self.eval_inner(e)
    }

    fn eval_inner(&self, e: &Expr) -> Result<AlgebraElement> {
        match e {
            Expr::Scalar(c) => Ok(AlgebraElement::scalar(c.clone())),
            Expr::Symbol(g) => self.symbol(g),
            Expr::Sum(v) => {
                let mut out = AlgebraElement::zero();
                for (c, x) in v {
                    out.add_scaled(&self.eval_inner(x)?, c);
                }
                Ok(out)
            }
            Expr::Product(v) => match v.as_slice() {
                [] => Ok(AlgebraElement::one()),
                [x] => self.eval_inner(x),
                [x, y] => self.product_of(x, y),
                [x, rest @ ..] => {
                    let mut acc = self.eval_inner(x)?;
                    for y in rest {
                        if acc.is_zero() {
                            break;
                        }
                        acc = self.ctx.product_unchecked(&acc, &self.eval_inner(y)?);
                    }
                    Ok(acc)
                }
            },
            Expr::Bracket(x, y) => {
                if let (Expr::Symbol(a), Expr::Symbol(b)) = (x.as_ref(), y.as_ref()) {
                    let mut out = self.pair(a, b)?;
                    out.add_scaled(&self.pair(b, a)?, &-Coeff::sign(koszul(a.parity, b.parity)));
                    return Ok(out);
                }
                let xv = self.eval_inner(x)?;
                let yv = self.eval_inner(y)?;
                if xv.is_zero() || yv.is_zero() {
                    return Ok(AlgebraElement::zero());
                }
                let p = xv.parity().ok_or(Error::Inhomogeneous)?;
                let q = yv.parity().ok_or(Error::Inhomogeneous)?;
                let mut out = self.ctx.product_unchecked(&xv, &yv);
                out.add_scaled(&self.ctx.product_unchecked(&yv, &xv), &-Coeff::sign(koszul(p, q)));
                Ok(out)
            }
        }
    }
}
