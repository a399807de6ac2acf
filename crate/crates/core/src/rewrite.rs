//! Normal ordering for algebras presented by supercommutation rules.
//!
//! An algebra plugs in the bracket `[x, y]` of two generators with `x > y`
//! (and `[x, x]` for odd `x`); the normalizer then rewrites
//! `x y = (-1)^{|x||y|} y x + [x, y]` and `x x = ½[x, x]` until every word is
//! nondecreasing with no repeated odd letter. Products of a normal monomial
//! with one generator are memoized, which makes repeated normalization of
//! related expressions cheap.

use std::sync::Arc;

use dashmap::DashMap;
use rustc_hash::{FxBuildHasher, FxHashMap};

use crate::coeff::Coeff;
use crate::error::Result;
use crate::freealg::{is_normal_word, koszul, AlgebraElement, Generator, Word};

pub trait RewriteRules: Send + Sync {
    /// `[x, y]` as a linear combination of (not necessarily normal) words.
    /// Called only with `x > y`, or `x == y` odd.
    fn bracket(&self, x: Generator, y: Generator) -> Vec<(Word, Coeff)>;

    /// Rejects generators outside the alphabet.
    fn validate(&self, g: &Generator) -> Result<()>;
}

type Expansion = Arc<Vec<(Word, Coeff)>>;
type Acc = FxHashMap<Word, Coeff>;

const DEFAULT_MEMO_LIMIT: usize = 1 << 20;

pub struct Normalizer<R> {
    rules: R,
    memo: DashMap<(Word, Generator), Expansion, FxBuildHasher>,
    limit: usize,
}

fn accumulate(acc: &mut Acc, w: Word, c: Coeff) {
    if c.is_zero() {
        return;
    }
    match acc.entry(w) {
        std::collections::hash_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::hash_map::Entry::Occupied(mut o) => {
            o.get_mut().add_assign_ref(&c);
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl<R: RewriteRules> Normalizer<R> {
    pub fn new(rules: R) -> Self {
        Self::with_memo_limit(rules, DEFAULT_MEMO_LIMIT)
    }

    pub fn with_memo_limit(rules: R, limit: usize) -> Self {
        Self { rules, memo: DashMap::with_hasher(FxBuildHasher), limit }
    }

    pub fn rules(&self) -> &R {
        &self.rules
    }

    pub fn clear_memo(&self) {
        self.memo.clear();
    }

    /// Normal form of `m · g` for a normal monomial `m`.
    fn mono_times_gen(&self, m: &[Generator], g: Generator) -> Expansion {
        let y = match m.last() {
            Some(&y) if y > g || (y == g && g.is_odd()) => y,
            _ => {
                let mut w = Word::from_slice(m);
                w.push(g);
                return Arc::new(vec![(w, Coeff::one())]);
            }
        };
        let key = (Word::from_slice(m), g);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let prefix = &m[..m.len() - 1];
        let mut acc = Acc::default();
        if y == g {
            let half = Coeff::frac(1, 2);
            for (u, c) in self.rules.bracket(g, g) {
                self.extend_into(&mut acc, prefix, &u, &c.mul_ref(&half));
            }
        } else {
            let sign = Coeff::sign(koszul(y.parity, g.parity));
            for (w2, c2) in self.mono_times_gen(prefix, g).iter() {
                let c = c2.mul_ref(&sign);
                for (w3, c3) in self.mono_times_gen(w2, y).iter() {
                    accumulate(&mut acc, w3.clone(), c3.mul_ref(&c));
                }
            }
            for (u, c) in self.rules.bracket(y, g) {
                self.extend_into(&mut acc, prefix, &u, &c);
            }
        }
        let out: Expansion = Arc::new(acc.into_iter().collect());
        if self.memo.len() >= self.limit {
            self.memo.clear();
        }
        self.memo.insert(key, out.clone());
        out
    }

    /// Adds `c · N(start · u)` to `acc` for a normal `start`.
    fn extend_into(&self, acc: &mut Acc, start: &[Generator], u: &[Generator], c: &Coeff) {
        if c.is_zero() {
            return;
        }
        let mut cur: Acc = Acc::default();
        cur.insert(Word::from_slice(start), c.clone());
        for &h in u {
            let mut next = Acc::default();
            for (w, cw) in cur {
                for (w2, c2) in self.mono_times_gen(&w, h).iter() {
                    accumulate(&mut next, w2.clone(), c2.mul_ref(&cw));
                }
            }
            cur = next;
        }
        for (w, cw) in cur {
            accumulate(acc, w, cw);
        }
    }

    fn validate(&self, x: &AlgebraElement) -> Result<()> {
        for (w, _) in x.terms() {
            for g in w {
                self.rules.validate(g)?;
            }
        }
        Ok(())
    }

    pub fn normalize(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        self.validate(x)?;
        Ok(self.normalize_unchecked(x))
    }

    pub(crate) fn normalize_unchecked(&self, x: &AlgebraElement) -> AlgebraElement {
        let mut acc = Acc::default();
        for (w, c) in x.terms() {
            if is_normal_word(w) {
                accumulate(&mut acc, w.clone(), c.clone());
            } else {
                self.extend_into(&mut acc, &[], w, c);
            }
        }
        AlgebraElement::from_terms(acc)
    }

    /// `N(x · y)` for normal `x`; `y` need not be normal.
    pub fn product(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.validate(x)?;
        self.validate(y)?;
        x.multiply(y)?;
        Ok(self.product_unchecked(x, y))
    }

    pub(crate) fn product_unchecked(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut acc = Acc::default();
        for (wx, cx) in x.terms() {
            let start_normal = is_normal_word(wx);
            for (wy, cy) in y.terms() {
                let c = cx.mul_ref(cy);
                if start_normal {
                    self.extend_into(&mut acc, wx, wy, &c);
                } else {
                    let mut w = wx.clone();
                    w.extend_from_slice(wy);
                    self.extend_into(&mut acc, &[], &w, &c);
                }
            }
        }
        AlgebraElement::from_terms(acc)
    }

    /// `N([x, y])` for normal homogeneous `x`, `y`.
    pub fn bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        let p = x.parity().ok_or(crate::error::Error::Inhomogeneous)?;
        let q = y.parity().ok_or(crate::error::Error::Inhomogeneous)?;
        let xy = self.product(x, y)?;
        let yx = self.product_unchecked(y, x);
        let mut out = xy;
        out.add_scaled(&yx, &-Coeff::sign(koszul(p, q)));
        Ok(out)
    }
}
