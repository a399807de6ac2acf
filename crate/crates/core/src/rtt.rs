//! The super Yangian `Y_{M|N}(s)` on the RTT generators `t[i,j,r]`.

use std::sync::Arc;

use smallvec::smallvec;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::freealg::{koszul, AlgebraElement, Family, Generator, Word};
use crate::grading::ZeroOneSequence;
use crate::rewrite::{Normalizer, RewriteRules};

pub struct RttRules {
    seq: ZeroOneSequence,
}

impl RttRules {
    fn t(&self, i: u8, j: u8, r: usize) -> Generator {
        Generator::t(&self.seq, i as usize, j as usize, r)
    }

    /// Appends `c · t_{ij}^{(r)}` to a word, collapsing `t^{(0)}` to `δ_{ij}`.
    fn push(&self, w: &mut Word, i: u8, j: u8, r: usize) -> bool {
        if r == 0 {
            return i == j;
        }
        w.push(self.t(i, j, r));
        true
    }
}

impl RewriteRules for RttRules {
    fn bracket(&self, x: Generator, y: Generator) -> Vec<(Word, Coeff)> {
        let (i, j, r) = (x.i, x.j, x.r as usize);
        let (h, k, s) = (y.i, y.j, y.r as usize);
        let p = |n: u8| self.seq.parity(n as usize);
        let sign = Coeff::sign((p(i) * p(j) + p(i) * p(h) + p(j) * p(h)) as u32);
        let neg = -sign.clone();
        let mut out = Vec::with_capacity(2 * r.min(s));
        for g in 0..r.min(s) {
            let top = r + s - 1 - g;
            let mut w = Word::new();
            if self.push(&mut w, h, j, g) && self.push(&mut w, i, k, top) {
                out.push((w, sign.clone()));
            }
            let mut w = Word::new();
            if self.push(&mut w, h, j, top) && self.push(&mut w, i, k, g) {
                out.push((w, neg.clone()));
            }
        }
        out
    }

    fn validate(&self, g: &Generator) -> Result<()> {
        if g.family != Family::T {
            return Err(Error::Alphabet(format!("{g} is not an RTT generator")));
        }
        if g.r == 0 {
            return Err(Error::ZeroIndex(g.to_string()));
        }
        let n = self.seq.len();
        if g.i == 0 || g.j == 0 || g.i as usize > n || g.j as usize > n {
            return Err(Error::Index(format!("{g} outside 1..={n}")));
        }
        Ok(())
    }
}

/// Normal-ordering context for `Y_{M|N}(s)`. Cloning shares the memo table.
#[derive(Clone)]
pub struct YangianContext {
    seq: ZeroOneSequence,
    truncation: Option<u8>,
    normalizer: Arc<Normalizer<RttRules>>,
}

impl YangianContext {
    pub fn new(seq: ZeroOneSequence) -> Self {
        let normalizer = Arc::new(Normalizer::new(RttRules { seq: seq.clone() }));
        Self { seq, truncation: None, normalizer }
    }

    /// Records the largest series index the caller intends to use.
    pub fn with_truncation(mut self, cap: u8) -> Self {
        self.truncation = Some(cap);
        self
    }

    pub fn seq(&self) -> &ZeroOneSequence {
        &self.seq
    }

    pub fn truncation(&self) -> Option<u8> {
        self.truncation
    }

    pub fn dim(&self) -> usize {
        self.seq.len()
    }

    pub fn generator(&self, i: usize, j: usize, r: usize) -> Generator {
        Generator::t(&self.seq, i, j, r)
    }

    /// `t_{ij}^{(r)}` as an element; `r = 0` gives `δ_{ij}`.
    pub fn t(&self, i: usize, j: usize, r: usize) -> AlgebraElement {
        if r == 0 {
            return if i == j { AlgebraElement::one() } else { AlgebraElement::zero() };
        }
        AlgebraElement::generator(self.generator(i, j, r))
    }

    /// One rewriting step for the product `a · b`:
    /// `(-1)^{|a||b|} b·a + [a, b]`, or `½[a, a]` for odd `a = b`.
    pub fn rewrite_pair(&self, a: Generator, b: Generator) -> Result<AlgebraElement> {
        let rules = self.normalizer.rules();
        rules.validate(&a)?;
        rules.validate(&b)?;
        if a == b && a.is_odd() {
            let half = Coeff::frac(1, 2);
            return Ok(AlgebraElement::from_terms(rules.bracket(a, a).into_iter().map(|(w, c)| (w, c.mul_ref(&half)))));
        }
        let mut out = AlgebraElement::from_terms(rules.bracket(a, b));
        out.add_term(smallvec![b, a], Coeff::sign(koszul(a.parity, b.parity)));
        Ok(out)
    }

    pub fn normalize(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        self.normalizer.normalize(x)
    }

    /// `N(x · y)`.
    pub fn product(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.normalizer.product(x, y)
    }

    pub(crate) fn product_unchecked(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        self.normalizer.product_unchecked(x, y)
    }

    /// `N([x, y])`.
    pub fn bracket_normalized(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        let x = self.normalize(x)?;
        let y = self.normalize(y)?;
        self.normalizer.bracket(&x, &y)
    }

    pub fn clear_memo(&self) {
        self.normalizer.clear_memo();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(s: &str) -> YangianContext {
        YangianContext::new(s.parse().unwrap())
    }

    /// Expands the defining relation directly, as an independent oracle for
    /// `[t_{ij}^{(r)}, t_{hk}^{(s)}]`.
    fn oracle_bracket(
        y: &YangianContext,
        (i, j, r): (usize, usize, usize),
        (h, k, s): (usize, usize, usize),
    ) -> AlgebraElement {
        let p = |n| y.seq().parity(n) as u32;
        let sign = Coeff::sign(p(i) * p(j) + p(i) * p(h) + p(j) * p(h));
        let mut out = AlgebraElement::zero();
        for g in 0..r.min(s) {
            let a = y.t(h, j, g).multiply(&y.t(i, k, r + s - 1 - g)).unwrap();
            let b = y.t(h, j, r + s - 1 - g).multiply(&y.t(i, k, g)).unwrap();
            out.add_scaled(&a.sub(&b), &sign);
        }
        out
    }

    #[test]
    fn rewrite_pair_swaps_odd_generators() {
        let y = ctx("01");
        let out = y.rewrite_pair(y.generator(2, 1, 1), y.generator(1, 2, 1)).unwrap();
        assert_eq!(out.to_string(), "-t[1,2,1]*t[2,1,1] + t[2,2,1] - t[1,1,1]");
    }

    #[test]
    fn rewrite_pair_even_block() {
        let y = ctx("00");
        let out = y.rewrite_pair(y.generator(2, 2, 1), y.generator(1, 1, 1)).unwrap();
        let mut expected = y.t(1, 1, 1).multiply(&y.t(2, 2, 1)).unwrap();
        expected = expected.add(&oracle_bracket(&y, (2, 2, 1), (1, 1, 1)));
        assert_eq!(out, expected);
        assert_eq!(out.to_string(), "t[1,1,1]*t[2,2,1]");
    }

    #[test]
    fn odd_square_is_half_bracket() {
        let y = ctx("01");
        let g = y.generator(1, 2, 1);
        let out = y.rewrite_pair(g, g).unwrap();
        let expected = oracle_bracket(&y, (1, 2, 1), (1, 2, 1)).scale(&Coeff::frac(1, 2));
        assert_eq!(out, expected);
        let sq = y.t(1, 2, 1).multiply(&y.t(1, 2, 1)).unwrap();
        assert_eq!(y.normalize(&sq).unwrap(), y.normalize(&expected).unwrap());
    }

    #[test]
    fn normalize_examples() {
        let y = ctx("01");
        let normal = y.t(1, 2, 1).multiply(&y.t(2, 1, 1)).unwrap();
        assert_eq!(y.normalize(&normal).unwrap(), normal);
        let w = y.t(2, 1, 1).multiply(&y.t(1, 2, 1)).unwrap();
        assert_eq!(y.normalize(&w).unwrap().to_string(), "-t[1,2,1]*t[2,1,1] + t[2,2,1] - t[1,1,1]");

        let y = ctx("0");
        let w = y.t(1, 1, 2).multiply(&y.t(1, 1, 1)).unwrap();
        let expected = y.t(1, 1, 1).multiply(&y.t(1, 1, 2)).unwrap().add(&oracle_bracket(&y, (1, 1, 2), (1, 1, 1)));
        assert_eq!(y.normalize(&w).unwrap(), y.normalize(&expected).unwrap());
    }

    #[test]
    fn bracket_examples() {
        let y = ctx("01");
        let b = y.bracket_normalized(&y.t(1, 2, 1), &y.t(2, 1, 1)).unwrap();
        assert_eq!(b.to_string(), "t[2,2,1] - t[1,1,1]");
        assert!(y.bracket_normalized(&y.t(1, 1, 2), &y.t(1, 1, 2)).unwrap().is_zero());
        let y = ctx("00");
        assert!(y.bracket_normalized(&y.t(1, 1, 1), &y.t(2, 2, 1)).unwrap().is_zero());
    }

    #[test]
    fn bracket_matches_oracle_on_generators() {
        for s in ["01", "10", "001", "010"] {
            let y = ctx(s);
            let n = y.dim();
            for (i, j, h, k) in itertools(n) {
                for r in 1..=2 {
                    for q in 1..=2 {
                        let got = y.bracket_normalized(&y.t(i, j, r), &y.t(h, k, q)).unwrap();
                        let want = y.normalize(&oracle_bracket(&y, (i, j, r), (h, k, q))).unwrap();
                        assert_eq!(got, want, "{s}: [t{i}{j}{r}, t{h}{k}{q}]");
                    }
                }
            }
        }
    }

    fn itertools(n: usize) -> Vec<(usize, usize, usize, usize)> {
        let mut v = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                for h in 1..=n {
                    for k in 1..=n {
                        v.push((i, j, h, k));
                    }
                }
            }
        }
        v
    }

    #[test]
    fn rejects_foreign_symbols() {
        let y = ctx("01");
        assert!(matches!(y.rewrite_pair(y.generator(1, 1, 0), y.generator(1, 1, 1)), Err(Error::ZeroIndex(_))));
        let e = AlgebraElement::generator(Generator::e(y.seq(), 1, 1));
        assert!(y.normalize(&e).is_err());
        let out_of_range = AlgebraElement::generator(Generator::t(&"011".parse().unwrap(), 3, 1, 1));
        assert!(matches!(y.normalize(&out_of_range), Err(Error::Index(_))));
    }
}
