//! The standard maps between super Yangians: `ρ`, `ω`, `ζ`, the index
//! shift `φ`, its twisted version `ψ = ω ∘ φ ∘ ω`, the evaluation map into
//! `U(gl_{M|N})` and the comultiplication into the tensor square.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use dashmap::DashMap;
use rustc_hash::FxBuildHasher;
use serde::Serialize;

use crate::coeff::Coeff;
use crate::envelope::LieContext;
use crate::error::{Error, Result};
use crate::freealg::{is_normal_word, koszul, render_word, word_parity, AlgebraElement, Family, Generator, Word};
use crate::gauss::{decompose, parabolic_series_by_quasidet, t_inverse, t_matrix, Block, GaussFactors, U};
use crate::grading::{Composition, ZeroOneSequence};
use crate::rtt::YangianContext;
use crate::series::{MatrixSeries, TruncatedSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MorphismKind {
    Rho,
    Omega,
    Zeta,
    Phi,
    Psi,
    Ev,
    Delta,
}

impl std::str::FromStr for MorphismKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "rho" => Self::Rho,
            "omega" => Self::Omega,
            "zeta" => Self::Zeta,
            "phi" => Self::Phi,
            "psi" => Self::Psi,
            "ev" => Self::Ev,
            "delta" => Self::Delta,
            other => return Err(Error::Config(format!("unknown morphism `{other}`"))),
        })
    }
}

#[derive(Clone)]
pub enum Target {
    Yangian(YangianContext),
    Lie(LieContext),
    TensorSquare(YangianContext),
}

/// Elements of `Y ⊗ Y` as combinations of pairs of words.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct TensorElement {
    terms: BTreeMap<(Word, Word), Coeff>,
}

impl TensorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::pure(&AlgebraElement::one(), &AlgebraElement::one())
    }

    /// `x ⊗ y`.
    pub fn pure(x: &AlgebraElement, y: &AlgebraElement) -> Self {
        let mut out = Self::zero();
        for (wx, cx) in x.terms() {
            for (wy, cy) in y.terms() {
                out.add_term(wx.clone(), wy.clone(), cx.mul_ref(cy));
            }
        }
        out
    }

    pub fn add_term(&mut self, left: Word, right: Word, c: Coeff) {
        if c.is_zero() {
            return;
        }
        let key = (left, right);
        let slot = self.terms.entry(key.clone()).or_default();
        slot.add_assign_ref(&c);
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &TensorElement, c: &Coeff) {
        for ((l, r), d) in &other.terms {
            self.add_term(l.clone(), r.clone(), d.mul_ref(c));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn parity(&self) -> Option<u8> {
        let mut it = self.terms.keys().map(|(l, r)| word_parity(l) ^ word_parity(r));
        let first = it.next().unwrap_or(0);
        it.all(|p| p == first).then_some(first)
    }

    /// `(a ⊗ b)(c ⊗ d) = (-1)^{|b||c|} ac ⊗ bd`, normal-ordered on both sides.
    pub fn product(&self, other: &TensorElement, ctx: &YangianContext) -> TensorElement {
        let mut out = TensorElement::zero();
        for ((a, b), c1) in &self.terms {
            for ((c, d), c2) in &other.terms {
                let sign = Coeff::sign(koszul(word_parity(b), word_parity(c)));
                let coeff = c1.mul_ref(c2).mul_ref(&sign);
                let left = ctx.product_unchecked(
                    &AlgebraElement::monomial(a.clone(), Coeff::one()),
                    &AlgebraElement::monomial(c.clone(), Coeff::one()),
                );
                let right = ctx.product_unchecked(
                    &AlgebraElement::monomial(b.clone(), Coeff::one()),
                    &AlgebraElement::monomial(d.clone(), Coeff::one()),
                );
                for (wl, cl) in left.terms() {
                    for (wr, cr) in right.terms() {
                        out.add_term(wl.clone(), wr.clone(), coeff.mul_ref(cl).mul_ref(cr));
                    }
                }
            }
        }
        out
    }

    pub fn is_normal(&self) -> bool {
        self.terms.keys().all(|(l, r)| is_normal_word(l) && is_normal_word(r))
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let side = |w: &Word| if w.is_empty() { "1".to_string() } else { render_word(w) };
        for (n, ((l, r), c)) in self.terms.iter().rev().enumerate() {
            let sep = match (n, c.is_negative()) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let mag = c.abs();
            let scale = if mag.is_one() { String::new() } else { format!("{mag}*") };
            write!(f, "{sep}{scale}({} ⊗ {})", side(l), side(r))?;
        }
        Ok(())
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Image {
    Element(AlgebraElement),
    Tensor(TensorElement),
}

impl fmt::Display for Image {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Image::Element(e) => write!(f, "{e}"),
            Image::Tensor(t) => write!(f, "{t}"),
        }
    }
}

/// A map out of `Y(s)` given on generators and extended multiplicatively.
/// Maps involving `T(u)^{-1}` need a cap bounding the series index of the
/// generators they are applied to.
pub struct Morphism {
    kind: MorphismKind,
    source: YangianContext,
    target: Target,
    cap: Option<u8>,
    /// Length of the prefix sequence for `φ` and `ψ`.
    shift: usize,
    inner: Option<Box<Morphism>>,
    images: DashMap<Generator, Image, FxBuildHasher>,
    target_inverse: OnceLock<MatrixSeries>,
}

impl Morphism {
    fn build(kind: MorphismKind, source: YangianContext, target: Target, cap: Option<u8>, shift: usize) -> Self {
        Self {
            kind,
            source,
            target,
            cap,
            shift,
            inner: None,
            images: DashMap::with_hasher(FxBuildHasher),
            target_inverse: OnceLock::new(),
        }
    }

    /// `ρ: Y(s) → Y(s†)`, `t_ij(u) ↦ t_{M+N+1-i,M+N+1-j}(-u)`.
    pub fn rho(source: &YangianContext) -> Self {
        let target = YangianContext::new(source.seq().dagger());
        Self::build(MorphismKind::Rho, source.clone(), Target::Yangian(target), None, 0)
    }

    /// `ω: T(u) ↦ T(-u)^{-1}`.
    pub fn omega(source: &YangianContext, cap: u8) -> Self {
        Self::build(MorphismKind::Omega, source.clone(), Target::Yangian(source.clone()), Some(cap), 0)
    }

    /// `ζ: Y(s) → Y(s†)`, `t_ij(u) ↦ t'_{M+N+1-i,M+N+1-j}(u)`.
    pub fn zeta(source: &YangianContext, cap: u8) -> Self {
        let target = YangianContext::new(source.seq().dagger());
        Self::build(MorphismKind::Zeta, source.clone(), Target::Yangian(target), Some(cap), 0)
    }

    /// `φ: Y(s) → Y(s₁s)`, `t_ij^{(r)} ↦ t_{L+i,L+j}^{(r)}` with `L = |s₁|`.
    pub fn phi(source: &YangianContext, prefix: &ZeroOneSequence) -> Self {
        let target = YangianContext::new(prefix.concat(source.seq()));
        Self::build(MorphismKind::Phi, source.clone(), Target::Yangian(target), None, prefix.len())
    }

    /// `ψ = ω ∘ φ ∘ ω: Y(s) → Y(s₁s)`.
    pub fn psi(source: &YangianContext, prefix: &ZeroOneSequence, cap: u8) -> Self {
        Self::psi_into(source, &YangianContext::new(prefix.concat(source.seq())), prefix.len(), cap)
    }

    /// `ψ` into an existing context for `s₁s`, sharing its memo table.
    pub fn psi_into(source: &YangianContext, target: &YangianContext, shift: usize, cap: u8) -> Self {
        let mut m = Self::build(MorphismKind::Psi, source.clone(), Target::Yangian(target.clone()), Some(cap), shift);
        m.inner = Some(Box::new(Self::omega(source, cap)));
        m
    }

    /// `ev: Y(s) → U(gl_{M|N})`.
    pub fn ev(source: &YangianContext) -> Self {
        let target = LieContext::new(source.seq().clone(), false);
        Self::build(MorphismKind::Ev, source.clone(), Target::Lie(target), None, 0)
    }

    /// `Δ: Y(s) → Y(s) ⊗ Y(s)`.
    pub fn delta(source: &YangianContext) -> Self {
        Self::build(MorphismKind::Delta, source.clone(), Target::TensorSquare(source.clone()), None, 0)
    }

    pub fn kind(&self) -> MorphismKind {
        self.kind
    }

    pub fn source(&self) -> &YangianContext {
        &self.source
    }

    pub fn target(&self) -> &Target {
        &self.target
    }

    pub fn cap(&self) -> Option<u8> {
        self.cap
    }

    fn target_yangian(&self) -> &YangianContext {
        match &self.target {
            Target::Yangian(y) | Target::TensorSquare(y) => y,
            Target::Lie(_) => unreachable!("ev has a Lie target"),
        }
    }

    fn target_tprime(&self, i: usize, j: usize, r: usize) -> AlgebraElement {
        let y = self.target_yangian();
        let cap = self.cap.expect("maps through T^{-1} carry a cap");
        self.target_inverse.get_or_init(|| t_inverse(y, cap)).coefficient(i, j, r as u8).expect("within cap")
    }

    fn unit(&self) -> Image {
        match &self.target {
            Target::TensorSquare(_) => Image::Tensor(TensorElement::one()),
            _ => Image::Element(AlgebraElement::one()),
        }
    }

    fn generator_image(&self, g: &Generator) -> Result<Image> {
        if let Some(hit) = self.images.get(g) {
            return Ok(hit.clone());
        }
        if g.family != Family::T {
            return Err(Error::Alphabet(format!("{g} is not an RTT generator")));
        }
        let (i, j, r) = (g.i as usize, g.j as usize, g.r as usize);
        let n = self.source.dim();
        if i == 0 || j == 0 || i > n || j > n || r == 0 {
            return Err(Error::Index(format!("{g} outside the source alphabet")));
        }
        if let Some(cap) = self.cap {
            if r > cap as usize {
                return Err(Error::CapTooSmall { given: cap, required: r as u8 });
            }
        }
        let sign = Coeff::sign(r as u32);
        let image = match self.kind {
            MorphismKind::Rho => Image::Element(self.target_yangian().t(n + 1 - i, n + 1 - j, r).scale(&sign)),
            MorphismKind::Omega => Image::Element(self.target_tprime(i, j, r).scale(&sign)),
            MorphismKind::Zeta => Image::Element(self.target_tprime(n + 1 - i, n + 1 - j, r)),
            MorphismKind::Phi => Image::Element(self.target_yangian().t(self.shift + i, self.shift + j, r)),
            MorphismKind::Psi => {
                let inner = self.inner.as_ref().expect("psi carries omega");
                let Image::Element(w) = inner.apply(&AlgebraElement::generator(*g))? else {
                    unreachable!("omega has an algebra target")
                };
                let mut acc = AlgebraElement::zero();
                for (word, c) in w.terms() {
                    let mut prod = AlgebraElement::one();
                    for h in word {
                        let (a, b, s) = (h.i as usize, h.j as usize, h.r as usize);
                        let img = self.target_tprime(self.shift + a, self.shift + b, s).scale(&Coeff::sign(s as u32));
                        prod = self.target_yangian().product_unchecked(&prod, &img);
                    }
                    acc.add_scaled(&prod, c);
                }
                Image::Element(acc)
            }
            MorphismKind::Ev => {
                let Target::Lie(lie) = &self.target else { unreachable!() };
                if r == 1 {
                    let s = Coeff::sign(self.source.seq().parity(i) as u32);
                    Image::Element(lie.e(i, j).scale(&s))
                } else {
                    Image::Element(AlgebraElement::zero())
                }
            }
            MorphismKind::Delta => {
                let y = &self.source;
                let mut out = TensorElement::zero();
                for s in 0..=r {
                    for k in 1..=n {
                        out.add_scaled(&TensorElement::pure(&y.t(i, k, r - s), &y.t(k, j, s)), &Coeff::one());
                    }
                }
                Image::Tensor(out)
            }
        };
        self.images.insert(*g, image.clone());
        Ok(image)
    }

    fn product(&self, x: &Image, y: &Image) -> Image {
        match (x, y, &self.target) {
            (Image::Element(a), Image::Element(b), Target::Yangian(ctx)) => Image::Element(ctx.product_unchecked(a, b)),
            (Image::Element(a), Image::Element(b), Target::Lie(lie)) => {
                Image::Element(lie.product(a, b).expect("loop-free gl symbols"))
            }
            (Image::Tensor(a), Image::Tensor(b), Target::TensorSquare(ctx)) => Image::Tensor(a.product(b, ctx)),
            _ => unreachable!("image kinds follow the target"),
        }
    }

    /// Image of a word, normal-ordered in the target.
    pub fn apply_word(&self, w: &[Generator]) -> Result<Image> {
        let mut acc = self.unit();
        for g in w {
            let img = self.generator_image(g)?;
            acc = self.product(&acc, &img);
        }
        Ok(acc)
    }

    /// Image of an element over the source `t`-alphabet.
    pub fn apply(&self, x: &AlgebraElement) -> Result<Image> {
        let mut elem = AlgebraElement::zero();
        let mut tensor = TensorElement::zero();
        for (w, c) in x.terms() {
            match self.apply_word(w)? {
                Image::Element(e) => elem.add_scaled(&e, c),
                Image::Tensor(t) => tensor.add_scaled(&t, c),
            }
        }
        Ok(match self.target {
            Target::TensorSquare(_) => Image::Tensor(tensor),
            _ => Image::Element(elem),
        })
    }

    /// Image of an element, for maps with an algebra (not tensor) target.
    pub fn apply_element(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        match self.apply(x)? {
            Image::Element(e) => Ok(e),
            Image::Tensor(_) => Err(Error::Domain("comultiplication lands in the tensor square".into())),
        }
    }

    /// Coefficient-wise image of a series.
    pub fn apply_series(&self, s: &TruncatedSeries) -> Result<TruncatedSeries> {
        let mut out = TruncatedSeries::zero(s.vars(), s.cap());
        for (e, c) in s.terms() {
            out.set(e.clone(), self.apply_element(c)?);
        }
        Ok(out)
    }

    pub fn apply_matrix(&self, m: &MatrixSeries) -> Result<MatrixSeries> {
        let mut out = MatrixSeries::zeros(m.rows(), m.cols(), m.vars(), m.cap());
        for (i, j, e) in m.entries() {
            *out.entry_mut(i, j) = self.apply_series(e)?;
        }
        Ok(out)
    }
}

/// `ψ_L(t_ij(u))` through the quasideterminant of the leading `L × L`
/// corner of `T(u)` in `Y(s₁s)`, with row `L+i` and column `L+j` appended.
pub fn psi_by_quasideterminant(big: &YangianContext, shift: usize, cap: u8) -> Result<MatrixSeries> {
    let n = big.dim() - shift;
    let t = t_matrix(big, cap);
    if shift == 0 {
        return Ok(t);
    }
    let a = t.submatrix(0, 0, shift, shift);
    let mut out = MatrixSeries::zeros(n, n, &[U], cap);
    for i in 1..=n {
        for j in 1..=n {
            let b = t.submatrix(0, shift + j - 1, shift, 1);
            let c = t.submatrix(shift + i - 1, 0, 1, shift);
            let d = t.submatrix(shift + i - 1, shift + j - 1, 1, 1);
            let q = crate::gauss::quasideterminant(big, &a, &b, &c, &d)?;
            *out.entry_mut(i, j) = q.entry(1, 1).clone();
        }
    }
    Ok(out)
}

/// Outcome of a structural check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub claim: String,
    pub config: String,
    pub window: String,
    pub checked: usize,
    pub skipped: usize,
    pub failures: usize,
    pub first_counterexample: Option<String>,
}

impl CheckReport {
    fn new(claim: &str, config: String, window: String) -> Self {
        Self { claim: claim.into(), config, window, checked: 0, skipped: 0, failures: 0, first_counterexample: None }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.first_counterexample.is_none() {
                self.first_counterexample = Some(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn status(&self) -> &'static str {
        if self.passed() {
            "pass"
        } else {
            "fail"
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}] window {}: {} checked, {} skipped, {} failed",
            self.claim, self.config, self.window, self.checked, self.skipped, self.failures
        )?;
        if let Some(c) = &self.first_counterexample {
            write!(f, "; first counterexample: {c}")?;
        }
        Ok(())
    }
}

fn compare_blocks(report: &mut CheckReport, label: &str, got: &MatrixSeries, want: &MatrixSeries, cap: u8) {
    for i in 1..=want.rows() {
        for j in 1..=want.cols() {
            for r in 1..=cap {
                let g = got.coefficient(i, j, r).unwrap_or_default();
                let w = want.coefficient(i, j, r).unwrap_or_default();
                report.record(g == w, || format!("{label} entry ({i},{j}) r={r}: {} vs {}", g, w));
            }
        }
    }
}

/// `D_a = ψ_{n_{a-1}}(D_1)`, `E_a = ψ_{n_{a-1}}(E_1)`, `F_a = ψ_{n_{a-1}}(F_1)`
/// where the right-hand sides are computed for the tail composition
/// `(μ_a, …, μ_n)`.
pub fn check_psi_transport(ctx: &YangianContext, mu: &Composition, cap: u8) -> Result<CheckReport> {
    if mu.len() < 2 {
        return Err(Error::Domain("psi transport needs at least two blocks".into()));
    }
    let full = decompose(ctx, mu, cap)?;
    let mut report = CheckReport::new("psi-transport", mu.to_string(), format!("r<={cap}"));
    for a in 1..=mu.len() {
        let tail = mu.tail(a);
        let small = YangianContext::new(tail.seq().clone());
        let part = decompose(&small, &tail, cap)?;
        let shift = mu.block_start(a);
        let psi = Morphism::psi_into(&small, ctx, shift, cap);
        compare_blocks(&mut report, &format!("D_{a}"), &psi.apply_matrix(part.d(1))?, full.d(a), cap);
        if a < mu.len() {
            compare_blocks(&mut report, &format!("E_{a}"), &psi.apply_matrix(part.e(1, 2))?, full.e(a, a + 1), cap);
            compare_blocks(&mut report, &format!("F_{a}"), &psi.apply_matrix(part.f(2, 1))?, full.f(a + 1, a), cap);
        }
    }
    Ok(report)
}

/// `ζ(D_{a;i,j}) = ←D'_{n+1-a;μ_a+1-i,μ_a+1-j}`,
/// `ζ(E_{a;h,k}) = -←F_{n-a;μ_a+1-h,μ_{a+1}+1-k}`,
/// `ζ(F_{a;k,h}) = -←E_{n-a;μ_{a+1}+1-k,μ_a+1-h}`, where the arrowed
/// generators belong to `(s†, μ reversed)`.
pub fn check_zeta_flip(ctx: &YangianContext, mu: &Composition, cap: u8) -> Result<CheckReport> {
    let zeta = Morphism::zeta(ctx, cap);
    let Target::Yangian(target) = zeta.target() else { unreachable!() };
    let flipped = mu.flipped();
    let ours = decompose(ctx, mu, cap)?;
    let theirs = decompose(target, &flipped, cap)?;
    let n = mu.len();
    let mut report = CheckReport::new("zeta-flip", mu.to_string(), format!("r<={cap}"));
    for a in 1..=n {
        let m = mu.size(a);
        let img = zeta.apply_matrix(ours.d(a))?;
        let want =
            MatrixSeries::from_fn(m, m, &[U], cap, |i, j| theirs.dp(n + 1 - a).entry(m + 1 - i, m + 1 - j).clone());
        compare_blocks(&mut report, &format!("D_{a}"), &img, &want, cap);
    }
    for a in 1..n {
        let (ma, mb) = (mu.size(a), mu.size(a + 1));
        let img = zeta.apply_matrix(ours.e(a, a + 1))?;
        let want = MatrixSeries::from_fn(ma, mb, &[U], cap, |h, k| {
            theirs.f(n - a + 1, n - a).entry(ma + 1 - h, mb + 1 - k).neg()
        });
        compare_blocks(&mut report, &format!("E_{a}"), &img, &want, cap);
        let img = zeta.apply_matrix(ours.f(a + 1, a))?;
        let want = MatrixSeries::from_fn(mb, ma, &[U], cap, |k, h| {
            theirs.e(n - a, n - a + 1).entry(mb + 1 - k, ma + 1 - h).neg()
        });
        compare_blocks(&mut report, &format!("F_{a}"), &img, &want, cap);
    }
    Ok(report)
}

/// In `Y(s₁s)` with `L = |s₁|`, every `t_{ij}^{(r)}` with `i, j ≤ L`
/// supercommutes with every generator `t'^{(s)}_{L+h,L+k}` of
/// `ψ_L(Y(s))`. Pairs with `r` or `s` above `cap` are counted as skipped.
pub fn check_commuting_subalgebras(big: &YangianContext, shift: usize, max_degree: u8, cap: u8) -> Result<CheckReport> {
    let total = big.dim();
    if shift == 0 || shift >= total {
        return Err(Error::Domain(format!("prefix length {shift} must lie strictly between 0 and {total}")));
    }
    let tinv = t_inverse(big, cap.min(max_degree));
    let mut report = CheckReport::new(
        "commuting-subalgebras",
        format!("s={} L={shift}", big.seq()),
        format!("r,s<={}", cap.min(max_degree)),
    );
    for r in 1..=max_degree {
        for s in 1..=max_degree {
            if r > cap || s > cap {
                report.skipped += shift * shift * (total - shift) * (total - shift);
                continue;
            }
            for i in 1..=shift {
                for j in 1..=shift {
                    for h in shift + 1..=total {
                        for k in shift + 1..=total {
                            let x = big.t(i, j, r as usize);
                            let y = tinv.coefficient(h, k, s).expect("within cap");
                            let b = big.bracket_normalized(&x, &y)?;
                            report.record(b.is_zero(), || format!("[t[{i},{j},{r}], tp[{h},{k},{s}]] = {b}"));
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// `[t_ij^{(r)}, t_hk^{(s)}] - RHS` as an un-normalized element of the free
/// algebra on the `t`-alphabet, with `t^{(0)}` collapsed to `δ`.
pub fn rtt_relation(
    ctx: &YangianContext,
    (i, j, r): (usize, usize, usize),
    (h, k, s): (usize, usize, usize),
) -> AlgebraElement {
    let p = |n| ctx.seq().parity(n) as u32;
    let sign = Coeff::sign(p(i) * p(j) + p(i) * p(h) + p(j) * p(h));
    let (x, y) = (ctx.t(i, j, r), ctx.t(h, k, s));
    let mut rel = x.supercommutator(&y).expect("generators are homogeneous");
    for g in 0..r.min(s) {
        let a = ctx.t(h, j, g).multiply(&ctx.t(i, k, r + s - 1 - g)).expect("same alphabet");
        let b = ctx.t(h, j, r + s - 1 - g).multiply(&ctx.t(i, k, g)).expect("same alphabet");
        rel.add_scaled(&a.sub(&b), &-sign.clone());
    }
    rel
}

/// Applies `m` to every instance of the defining relation with series
/// indices up to `max_r`; every image must vanish.
pub fn check_relation_images(m: &Morphism, max_r: usize) -> Result<CheckReport> {
    let ctx = m.source();
    let n = ctx.dim();
    let mut report = CheckReport::new(
        &format!("{:?}-kills-rtt", m.kind()).to_lowercase(),
        format!("s={}", ctx.seq()),
        format!("r,s<={max_r}"),
    );
    for i in 1..=n {
        for j in 1..=n {
            for h in 1..=n {
                for k in 1..=n {
                    for r in 1..=max_r {
                        for s in 1..=max_r {
                            let rel = rtt_relation(ctx, (i, j, r), (h, k, s));
                            let img = m.apply(&rel)?;
                            let zero = match &img {
                                Image::Element(e) => e.is_zero(),
                                Image::Tensor(t) => t.is_zero(),
                            };
                            report.record(zero, || format!("t[{i},{j},{r}], t[{h},{k},{s}] -> {img}"));
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// The bracket-recursion and quasideterminant audits of every `E_{a,b}`,
/// `F_{b,a}` block against elimination, over all pivots.
pub fn check_gauss_audits(ctx: &YangianContext, mu: &Composition, cap: u8) -> Result<CheckReport> {
    let factors = decompose(ctx, mu, cap)?;
    audit_factors(ctx, &factors)
}

pub fn audit_factors(ctx: &YangianContext, factors: &GaussFactors) -> Result<CheckReport> {
    let mu = factors.config();
    let cap = factors.cap();
    let n = mu.len();
    let mut report = CheckReport::new("gauss-audit", mu.to_string(), format!("r<={cap}"));
    let mut blocks = Vec::new();
    for a in 1..=n {
        blocks.push(Block::D(a));
        blocks.push(Block::DPrime(a));
        for b in a + 1..=n {
            blocks.push(Block::E(a, b));
            blocks.push(Block::F(b, a));
        }
    }
    for which in blocks {
        let q = parabolic_series_by_quasidet(ctx, mu, cap, which)?;
        let label = format!("{which:?} quasideterminant");
        compare_blocks(&mut report, &label, &q, factors.block(which)?, cap);
        let (a, b) = match which {
            Block::E(a, b) | Block::F(b, a) => (a, b),
            _ => continue,
        };
        if b > a + 1 {
            for k in 1..=mu.size(b - 1) {
                let rec = crate::gauss::higher_ef_via_bracket(ctx, factors, which, k)?;
                compare_blocks(&mut report, &format!("{which:?} pivot {k}"), &rec, factors.block(which)?, cap);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(s: &str) -> YangianContext {
        YangianContext::new(s.parse().unwrap())
    }

    #[test]
    fn ev_on_generators() {
        let y = ctx("01");
        let ev = Morphism::ev(&y);
        let Target::Lie(lie) = ev.target() else { panic!() };
        assert_eq!(ev.apply_element(&y.t(1, 2, 1)).unwrap(), lie.e(1, 2));
        assert_eq!(ev.apply_element(&y.t(2, 2, 1)).unwrap(), lie.e(2, 2).neg());
        assert!(ev.apply_element(&y.t(2, 2, 2)).unwrap().is_zero());
    }

    #[test]
    fn ev_and_delta_kill_relations() {
        for s in ["01", "001"] {
            let y = ctx(s);
            assert!(check_relation_images(&Morphism::ev(&y), 2).unwrap().passed());
        }
        let y = ctx("01");
        assert!(check_relation_images(&Morphism::delta(&y), 2).unwrap().passed());
    }

    #[test]
    fn delta_of_first_generators_is_primitive() {
        let y = ctx("01");
        let d = Morphism::delta(&y);
        let Image::Tensor(t) = d.apply(&y.t(1, 2, 1)).unwrap() else { panic!() };
        let mut want = TensorElement::pure(&y.t(1, 2, 1), &AlgebraElement::one());
        want.add_scaled(&TensorElement::pure(&AlgebraElement::one(), &y.t(1, 2, 1)), &Coeff::one());
        assert_eq!(t, want);
    }

    #[test]
    fn rho_omega_zeta() {
        let y = ctx("01");
        for m in [Morphism::rho(&y), Morphism::omega(&y, 3), Morphism::zeta(&y, 3)] {
            let rep = check_relation_images_in_target(&m, 2);
            assert!(rep.passed(), "{rep}");
        }
        let zeta = Morphism::zeta(&y, 3);
        let Target::Yangian(target) = zeta.target() else { panic!() };
        // Lowest order: t'^{(1)} = -t^{(1)}.
        assert_eq!(zeta.apply_element(&y.t(1, 1, 1)).unwrap(), target.t(2, 2, 1).neg());
        let rho = Morphism::rho(&y);
        let omega = Morphism::omega(&y, 3);
        for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            for r in 1..=3 {
                let direct = zeta.apply_element(&y.t(i, j, r)).unwrap();
                let composed = rho.apply_element(&omega.apply_element(&y.t(i, j, r)).unwrap()).unwrap();
                assert_eq!(direct, composed, "t[{i},{j},{r}]");
                let twice = omega.apply_element(&omega.apply_element(&y.t(i, j, r)).unwrap()).unwrap();
                assert_eq!(twice, y.t(i, j, r));
            }
        }
    }

    fn check_relation_images_in_target(m: &Morphism, max_r: usize) -> CheckReport {
        check_relation_images(m, max_r).unwrap()
    }

    #[test]
    fn psi_agrees_with_quasideterminant_and_shifts_inverse() {
        let small = ctx("01");
        let prefix: ZeroOneSequence = "0".parse().unwrap();
        let cap = 3;
        let psi = Morphism::psi(&small, &prefix, cap);
        let Target::Yangian(big) = psi.target() else { panic!() };
        let quasi = psi_by_quasideterminant(big, 1, cap).unwrap();
        assert_eq!(psi.apply_matrix(&t_matrix(&small, cap)).unwrap(), quasi);
        let img = psi.apply_matrix(&t_inverse(&small, cap)).unwrap();
        assert_eq!(img, t_inverse(big, cap).submatrix(1, 1, 2, 2));
    }

    #[test]
    fn transport_flip_commuting() {
        let y = ctx("010");
        let mu = Composition::parse(y.seq().clone(), "1,1,1").unwrap();
        let rep = check_psi_transport(&y, &mu, 3).unwrap();
        assert!(rep.passed(), "{rep}");
        let rep = check_zeta_flip(&y, &mu, 2).unwrap();
        assert!(rep.passed(), "{rep}");
        let y2 = ctx("001");
        let mu2 = Composition::parse(y2.seq().clone(), "2,1").unwrap();
        assert!(check_zeta_flip(&y2, &mu2, 2).unwrap().passed());
        let y1 = ctx("01");
        let mu1 = Composition::parse(y1.seq().clone(), "2").unwrap();
        assert!(check_zeta_flip(&y1, &mu1, 2).unwrap().passed());
        let rep = check_commuting_subalgebras(&y, 1, 3, 2).unwrap();
        assert!(rep.passed(), "{rep}");
        assert!(rep.skipped > 0);
    }

    #[test]
    fn audits_pass() {
        let y = ctx("0101");
        let mu = Composition::parse(y.seq().clone(), "1,1,1,1").unwrap();
        let rep = check_gauss_audits(&y, &mu, 2).unwrap();
        assert!(rep.passed(), "{rep}");
    }
}
