//! Enveloping superalgebras of `gl_{M|N}` and of the loop superalgebra
//! `gl_{M|N}[x]`, plus the associated-graded map from the Yangian.

use std::sync::Arc;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::freealg::{is_normal_word, word_loop_degree, AlgebraElement, Family, Generator, Word};
use crate::grading::ZeroOneSequence;
use crate::rewrite::{Normalizer, RewriteRules};
use crate::rtt::YangianContext;

pub struct LieRules {
    seq: ZeroOneSequence,
    looped: bool,
}

impl LieRules {
    fn symbol(&self, i: u8, j: u8, r: u8) -> Generator {
        if self.looped {
            Generator::x(&self.seq, i as usize, j as usize, r as usize)
        } else {
            Generator::e(&self.seq, i as usize, j as usize)
        }
    }

    /// `[e_ij x^r, e_hk x^s] = δ_jh e_ik x^{r+s} - (-1)^{(|i|+|j|)(|h|+|k|)} δ_ki e_hj x^{r+s}`.
    pub fn bracket_symbols(&self, x: Generator, y: Generator) -> Vec<(Generator, Coeff)> {
        let (i, j, h, k) = (x.i, x.j, y.i, y.j);
        let r = x.r + y.r;
        let mut out = Vec::with_capacity(2);
        if j == h {
            out.push((self.symbol(i, k, r), Coeff::one()));
        }
        if k == i {
            out.push((self.symbol(h, j, r), -Coeff::sign((x.parity * y.parity) as u32)));
        }
        if out.len() == 2 && out[0].0 == out[1].0 {
            let c = out[0].1.add_ref(&out[1].1);
            let g = out[0].0;
            out.clear();
            if !c.is_zero() {
                out.push((g, c));
            }
        }
        out
    }
}

impl RewriteRules for LieRules {
    fn bracket(&self, x: Generator, y: Generator) -> Vec<(Word, Coeff)> {
        self.bracket_symbols(x, y).into_iter().map(|(g, c)| (smallvec::smallvec![g], c)).collect()
    }

    fn validate(&self, g: &Generator) -> Result<()> {
        let want = if self.looped { Family::XLoop } else { Family::ELie };
        if g.family != want {
            return Err(Error::Alphabet(format!(
                "{g} is not in the {} alphabet",
                if self.looped { "loop" } else { "gl" }
            )));
        }
        let n = self.seq.len();
        if g.i == 0 || g.j == 0 || g.i as usize > n || g.j as usize > n {
            return Err(Error::Index(format!("{g} outside 1..={n}")));
        }
        Ok(())
    }
}

/// Normal ordering in `U(gl_{M|N})` (`looped = false`, symbols `e[i,j]`) or
/// `U(gl_{M|N}[x])` (`looped = true`, symbols `x[i,j,r]`).
#[derive(Clone)]
pub struct LieContext {
    seq: ZeroOneSequence,
    looped: bool,
    normalizer: Arc<Normalizer<LieRules>>,
}

impl LieContext {
    pub fn new(seq: ZeroOneSequence, looped: bool) -> Self {
        let normalizer = Arc::new(Normalizer::new(LieRules { seq: seq.clone(), looped }));
        Self { seq, looped, normalizer }
    }

    pub fn seq(&self) -> &ZeroOneSequence {
        &self.seq
    }

    pub fn is_loop(&self) -> bool {
        self.looped
    }

    pub fn e(&self, i: usize, j: usize) -> AlgebraElement {
        AlgebraElement::generator(Generator::e(&self.seq, i, j))
    }

    pub fn x(&self, i: usize, j: usize, r: usize) -> AlgebraElement {
        AlgebraElement::generator(Generator::x(&self.seq, i, j, r))
    }

    pub fn lie_bracket(&self, a: Generator, b: Generator) -> Result<AlgebraElement> {
        let rules = self.normalizer.rules();
        rules.validate(&a)?;
        rules.validate(&b)?;
        Ok(AlgebraElement::from_terms(rules.bracket(a, b)))
    }

    pub fn normalize(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        self.normalizer.normalize(x)
    }

    pub fn product(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.normalizer.product(x, y)
    }

    pub fn bracket_normalized(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        let x = self.normalize(x)?;
        let y = self.normalize(y)?;
        self.normalizer.bracket(&x, &y)
    }
}

/// The degree-`k` part of a normalized Yangian element, mapped by
/// `t[i,j,r] ↦ (-1)^{|i|} x[i,j,r-1]` into `U(gl[x])` and normalized there.
pub fn gr_image(y: &YangianContext, x: &AlgebraElement, k: usize, target: &LieContext) -> Result<AlgebraElement> {
    if !target.is_loop() || target.seq() != y.seq() {
        return Err(Error::Alphabet("gr image needs the loop context of the same sequence".into()));
    }
    if !x.terms().all(|(w, _)| is_normal_word(w)) {
        return Err(Error::NotNormal);
    }
    let seq = y.seq();
    let mut image = AlgebraElement::zero();
    for (w, c) in x.terms() {
        if word_loop_degree(w) != k {
            continue;
        }
        let mut sign = 0u32;
        let mut out = Word::new();
        for g in w {
            if g.family != Family::T {
                return Err(Error::Alphabet(format!("{g} is not an RTT generator")));
            }
            sign += seq.parity(g.i as usize) as u32;
            out.push(Generator::x(seq, g.i as usize, g.j as usize, g.r as usize - 1));
        }
        image.add_term(out, c.mul_ref(&Coeff::sign(sign)));
    }
    target.normalize(&image)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> ZeroOneSequence {
        s.parse().unwrap()
    }

    #[test]
    fn structure_constants() {
        let s = seq("01");
        let gl = LieContext::new(s.clone(), false);
        let b = gl.lie_bracket(Generator::e(&s, 1, 2), Generator::e(&s, 2, 1)).unwrap();
        assert_eq!(b, gl.e(1, 1).add(&gl.e(2, 2)));
        assert!(gl.lie_bracket(Generator::e(&s, 1, 1), Generator::e(&s, 1, 1)).unwrap().is_zero());

        let s = seq("001");
        let lp = LieContext::new(s.clone(), true);
        let b = lp.lie_bracket(Generator::x(&s, 1, 2, 1), Generator::x(&s, 2, 3, 2)).unwrap();
        assert_eq!(b, lp.x(1, 3, 3));
    }

    #[test]
    fn normalize_u_examples() {
        let s = seq("01");
        let gl = LieContext::new(s, false);
        let w = gl.e(2, 1).multiply(&gl.e(1, 2)).unwrap();
        assert_eq!(gl.normalize(&w).unwrap().to_string(), "-e[1,2]*e[2,1] + e[2,2] + e[1,1]");
        let sq = gl.e(1, 2).multiply(&gl.e(1, 2)).unwrap();
        assert!(gl.normalize(&sq).unwrap().is_zero());
        let normal = gl.e(1, 1).multiply(&gl.e(2, 2)).unwrap();
        assert_eq!(gl.normalize(&normal).unwrap(), normal);
    }

    #[test]
    fn gr_examples() {
        let s = seq("01");
        let y = YangianContext::new(s.clone());
        let lp = LieContext::new(s, true);
        assert_eq!(gr_image(&y, &y.t(1, 2, 3), 2, &lp).unwrap(), lp.x(1, 2, 2));
        assert_eq!(gr_image(&y, &y.t(2, 1, 1), 0, &lp).unwrap(), lp.x(2, 1, 0).neg());
        let mixed = y.t(1, 1, 3).add(&y.t(2, 2, 1));
        assert_eq!(gr_image(&y, &mixed, 2, &lp).unwrap(), lp.x(1, 1, 2));
        let unnormal = y.t(2, 1, 1).multiply(&y.t(1, 2, 1)).unwrap();
        assert_eq!(gr_image(&y, &unnormal, 0, &lp), Err(Error::NotNormal));
    }
}
