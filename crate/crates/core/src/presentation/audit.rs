//! PBW/gr audit of the parabolic generators and the Levi subalgebra audit.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::coeff::Coeff;
use crate::envelope::{gr_image, LieContext};
use crate::error::{Error, Result};
use crate::freealg::{AlgebraElement, Generator, Word};
use crate::gauss::decompose;
use crate::grading::Composition;
use crate::rtt::YangianContext;

use super::catalog::enumerate_instances;
use super::expr::{Expr, Gamma};
use super::verify::evaluate_under_gamma;
use super::RelationId;

/// Nondecreasing in the generator order with no odd symbol repeated.
pub fn is_supermonomial(w: &[Generator]) -> bool {
    w.windows(2).all(|p| p[0] < p[1] || (p[0] == p[1] && !p[0].is_odd()))
}

/// All supermonomials of length `1..=max_length` in `gens` (sorted) with
/// total loop degree at most `degree_bound`.
fn supermonomials(gens: &[Generator], degree_bound: usize, max_length: usize) -> Vec<Word> {
    fn go(gens: &[Generator], from: usize, budget: usize, left: usize, cur: &mut Word, out: &mut Vec<Word>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if left == 0 {
            return;
        }
        for (k, g) in gens.iter().enumerate().skip(from) {
            let d = g.loop_degree();
            if d > budget {
                continue;
            }
            let next = if g.is_odd() { k + 1 } else { k };
            cur.push(*g);
            go(gens, next, budget - d, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(gens, 0, degree_bound, max_length, &mut Word::new(), &mut out);
    out
}

/// The parabolic generators `F_{b,a}`, `D_a`, `E_{a,b}` with `r ≤ degree_bound + 1`.
fn parabolic_generators(mu: &Composition, degree_bound: usize) -> Vec<Generator> {
    let n = mu.len();
    let mut gens = Vec::new();
    for r in 1..=degree_bound + 1 {
        for a in 1..=n {
            for i in 1..=mu.size(a) {
                for j in 1..=mu.size(a) {
                    gens.push(Generator::d(mu, a, i, j, r));
                }
            }
            for b in a + 1..=n {
                for i in 1..=mu.size(a) {
                    for j in 1..=mu.size(b) {
                        gens.push(Generator::e_block(mu, a, b, i, j, r));
                    }
                }
                for i in 1..=mu.size(b) {
                    for j in 1..=mu.size(a) {
                        gens.push(Generator::f_block(mu, b, a, i, j, r));
                    }
                }
            }
        }
    }
    gens.sort();
    gens
}

/// `(-1)^{|i|_a} x[n_a + i, n_b + j, r - 1]`, the predicted gr image.
fn predicted_symbol(mu: &Composition, loops: &LieContext, g: &Generator) -> AlgebraElement {
    let (row_block, col_block) = match g.family {
        crate::freealg::Family::D => (g.a as usize, g.a as usize),
        _ => (g.a as usize, g.b as usize),
    };
    let (i, j) = (mu.global(row_block, g.i as usize), mu.global(col_block, g.j as usize));
    let sign = Coeff::sign(mu.restricted_parity(row_block, g.i as usize) as u32);
    loops.x(i, j, g.r as usize - 1).scale(&sign)
}

fn leading_word(x: &AlgebraElement) -> Option<Word> {
    x.terms().map(|(w, _)| w).max_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b))).cloned()
}

#[derive(Debug, Clone, Serialize)]
pub struct PbwReport {
    pub config: String,
    pub degree_bound: usize,
    pub max_length: usize,
    pub generators: usize,
    pub supermonomials: usize,
    pub loop_monomials: usize,
    /// Supermonomials whose gr image differs from the predicted product.
    pub mismatches: usize,
    /// Supermonomials sharing a gr leading word with an earlier one.
    pub duplicate_leading: usize,
    pub first_issue: Option<String>,
}

impl PbwReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0 && self.duplicate_leading == 0 && self.supermonomials == self.loop_monomials
    }
}

/// Maps every ordered supermonomial in the parabolic generators (loop degree
/// at most `degree_bound`, length at most `max_length`) through Γ, takes the
/// top loop-degree part into `U(gl[x])`, and checks it against the product of
/// the predicted generator images. Distinct leading words give linear
/// independence of the images; the count is compared with the supermonomial
/// count of `U(gl[x])` in the same window.
pub fn pbw_audit(ctx: &YangianContext, mu: &Composition, degree_bound: usize, max_length: usize) -> Result<PbwReport> {
    let loops = LieContext::new(ctx.seq().clone(), true);
    let gens = parabolic_generators(mu, degree_bound);
    let monos = supermonomials(&gens, degree_bound, max_length);
    let size = ctx.dim();
    let mut loop_gens: Vec<Generator> = (1..=size)
        .flat_map(|i| (1..=size).flat_map(move |j| (0..=degree_bound).map(move |r| (i, j, r))))
        .map(|(i, j, r)| Generator::x(ctx.seq(), i, j, r))
        .collect();
    loop_gens.sort();
    let loop_count = supermonomials(&loop_gens, degree_bound, max_length).len();

    let cap = u8::try_from(degree_bound + 1).map_err(|_| Error::Config("degree bound too large".into()))?;
    let factors = decompose(ctx, mu, cap)?;
    let gamma = Gamma::new(ctx, &factors);
    let mut report = PbwReport {
        config: mu.to_string(),
        degree_bound,
        max_length,
        generators: gens.len(),
        supermonomials: monos.len(),
        loop_monomials: loop_count,
        mismatches: 0,
        duplicate_leading: 0,
        first_issue: None,
    };
    let mut seen: BTreeMap<Word, Word> = BTreeMap::new();
    for w in &monos {
        let image = gamma.eval(&Expr::Product(w.iter().map(|g| Expr::Symbol(*g)).collect()))?;
        let top: usize = w.iter().map(Generator::loop_degree).sum();
        let gr = gr_image(ctx, &image, top, &loops)?;
        let mut predicted = AlgebraElement::one();
        for g in w {
            predicted = loops.product(&predicted, &predicted_symbol(mu, &loops, g))?;
        }
        let rendered = || crate::freealg::render_word(w);
        if gr != predicted {
            report.mismatches += 1;
            if report.first_issue.is_none() {
                report.first_issue = Some(format!("{}: gr image {gr}, predicted {predicted}", rendered()));
            }
        }
        match leading_word(&gr) {
            Some(lead) => {
                if let Some(prev) = seen.insert(lead.clone(), w.clone()) {
                    report.duplicate_leading += 1;
                    if report.first_issue.is_none() {
                        report.first_issue = Some(format!(
                            "{} and {} share leading word {}",
                            crate::freealg::render_word(&prev),
                            rendered(),
                            crate::freealg::render_word(&lead)
                        ));
                    }
                }
            }
            None => {
                report.mismatches += 1;
                if report.first_issue.is_none() {
                    report.first_issue = Some(format!("{}: gr image vanishes", rendered()));
                }
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct LeviReport {
    pub config: String,
    pub cap: u8,
    /// `[D_a, D_a]` brackets compared with the RTT-shaped right-hand side.
    pub same_block: usize,
    pub same_block_failures: usize,
    /// `[D_a, D_b]`, `a ≠ b`, required to vanish.
    pub cross_block: usize,
    pub cross_block_failures: usize,
    /// Brackets inside singleton blocks, required to vanish.
    pub singleton: usize,
    pub singleton_failures: usize,
    pub first_counterexample: Option<String>,
}

impl LeviReport {
    pub fn passed(&self) -> bool {
        self.same_block_failures == 0 && self.cross_block_failures == 0 && self.singleton_failures == 0
    }
}

/// Checks the relations among the `D` generators with degrees `1..=cap`.
pub fn levi_audit(ctx: &YangianContext, mu: &Composition, cap: u8) -> Result<LeviReport> {
    if mu.len() < 2 {
        return Err(Error::Config("the Levi audit needs at least two blocks".into()));
    }
    let instances: Vec<_> = enumerate_instances(RelationId::R7_3, mu, cap as usize)?
        .into_iter()
        .filter(|x| x.get("r") > 0 && x.get("s") > 0)
        .collect();
    let top = 2 * cap as usize - 1;
    let factors = decompose(ctx, mu, u8::try_from(top).map_err(|_| Error::Config("cap too large".into()))?)?;
    let gamma = Gamma::new(ctx, &factors);
    let mut report = LeviReport {
        config: mu.to_string(),
        cap,
        same_block: 0,
        same_block_failures: 0,
        cross_block: 0,
        cross_block_failures: 0,
        singleton: 0,
        singleton_failures: 0,
        first_counterexample: None,
    };
    let s = super::expr::Symbols::new(mu);
    for inst in &instances {
        let (a, b) = (inst.get("a"), inst.get("b"));
        let residual = evaluate_under_gamma(inst, &gamma)?;
        let bad = !residual.is_zero();
        if a == b {
            report.same_block += 1;
            report.same_block_failures += bad as usize;
        } else {
            report.cross_block += 1;
            report.cross_block_failures += bad as usize;
        }
        if a == b && mu.size(a) == 1 {
            let bracket = Expr::bracket(s.d(a, 1, 1, inst.get("r")), s.d(a, 1, 1, inst.get("s")));
            let value = gamma.eval(&bracket)?;
            report.singleton += 1;
            if !value.is_zero() {
                report.singleton_failures += 1;
                if report.first_counterexample.is_none() {
                    report.first_counterexample = Some(format!("{bracket} = {value}"));
                }
            }
        }
        if bad && report.first_counterexample.is_none() {
            report.first_counterexample = Some(format!("{inst}: residual {residual}"));
        }
    }
    Ok(report)
}
