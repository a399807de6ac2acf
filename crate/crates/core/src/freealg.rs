//! The free Z2-graded associative algebra over a generator alphabet.
//!
//! Elements are finite linear combinations of words with exact rational
//! coefficients. Products here are plain concatenation; normal ordering is
//! installed by [`crate::rewrite`].

use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::grading::{Composition, ZeroOneSequence};

/// Generator families. The declaration order is the family rank used by the
/// monomial order, so that `F < D < D' < E` among parabolic symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    T,
    TPrime,
    ELie,
    XLoop,
    F,
    D,
    DPrime,
    E,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlphabetClass {
    /// `t[i,j,r]` and `tp[i,j,r]`.
    Rtt,
    /// `e[i,j]`.
    Lie,
    /// `x[i,j,r]`.
    Loop,
    /// `D`, `Dp`, `E`, `F`.
    Parabolic,
}

impl Family {
    pub fn class(self) -> AlphabetClass {
        match self {
            Family::T | Family::TPrime => AlphabetClass::Rtt,
            Family::ELie => AlphabetClass::Lie,
            Family::XLoop => AlphabetClass::Loop,
            Family::F | Family::D | Family::DPrime | Family::E => AlphabetClass::Parabolic,
        }
    }
}

/// One symbol. `a`, `b` are the block indices in the order they are written
/// (`E[a,b,..]`, `F[b,a,..]`, `D[a,..]` with `b = 0`); they are zero for the
/// non-parabolic families. The derived order is lexicographic on
/// `(family, a, b, i, j, r)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub family: Family,
    pub a: u8,
    pub b: u8,
    pub i: u8,
    pub j: u8,
    pub r: u8,
    pub parity: u8,
}

fn small(n: usize) -> u8 {
    u8::try_from(n).expect("index fits in u8")
}

impl Generator {
    pub fn t(seq: &ZeroOneSequence, i: usize, j: usize, r: usize) -> Self {
        Self::plain(Family::T, i, j, r, (seq.parity(i) + seq.parity(j)) % 2)
    }

    pub fn tp(seq: &ZeroOneSequence, i: usize, j: usize, r: usize) -> Self {
        Self::plain(Family::TPrime, i, j, r, (seq.parity(i) + seq.parity(j)) % 2)
    }

    pub fn e(seq: &ZeroOneSequence, i: usize, j: usize) -> Self {
        Self::plain(Family::ELie, i, j, 0, (seq.parity(i) + seq.parity(j)) % 2)
    }

    pub fn x(seq: &ZeroOneSequence, i: usize, j: usize, r: usize) -> Self {
        Self::plain(Family::XLoop, i, j, r, (seq.parity(i) + seq.parity(j)) % 2)
    }

    fn plain(family: Family, i: usize, j: usize, r: usize, parity: u8) -> Self {
        Self { family, a: 0, b: 0, i: small(i), j: small(j), r: small(r), parity }
    }

    /// `D_{a;i,j}^{(r)}`, parity `|i|_a + |j|_a`.
    pub fn d(mu: &Composition, a: usize, i: usize, j: usize, r: usize) -> Self {
        let parity = (mu.restricted_parity(a, i) + mu.restricted_parity(a, j)) % 2;
        Self { family: Family::D, a: small(a), b: 0, i: small(i), j: small(j), r: small(r), parity }
    }

    /// `D'_{a;i,j}^{(r)}`.
    pub fn dp(mu: &Composition, a: usize, i: usize, j: usize, r: usize) -> Self {
        Self { family: Family::DPrime, ..Self::d(mu, a, i, j, r) }
    }

    /// `E_{a,b;i,j}^{(r)}`, parity `|i|_a + |j|_b`.
    pub fn e_block(mu: &Composition, a: usize, b: usize, i: usize, j: usize, r: usize) -> Self {
        let parity = (mu.restricted_parity(a, i) + mu.restricted_parity(b, j)) % 2;
        Self { family: Family::E, a: small(a), b: small(b), i: small(i), j: small(j), r: small(r), parity }
    }

    /// `F_{b,a;i,j}^{(r)}`, parity `|i|_b + |j|_a`.
    pub fn f_block(mu: &Composition, b: usize, a: usize, i: usize, j: usize, r: usize) -> Self {
        let parity = (mu.restricted_parity(b, i) + mu.restricted_parity(a, j)) % 2;
        Self { family: Family::F, a: small(b), b: small(a), i: small(i), j: small(j), r: small(r), parity }
    }

    pub fn is_odd(&self) -> bool {
        self.parity == 1
    }

    /// Degree in the loop filtration.
    pub fn loop_degree(&self) -> usize {
        match self.family {
            Family::ELie => 0,
            Family::XLoop => self.r as usize,
            _ => (self.r as usize).saturating_sub(1),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Generator { a, b, i, j, r, .. } = *self;
        match self.family {
            Family::T => write!(f, "t[{i},{j},{r}]"),
            Family::TPrime => write!(f, "tp[{i},{j},{r}]"),
            Family::ELie => write!(f, "e[{i},{j}]"),
            Family::XLoop => write!(f, "x[{i},{j},{r}]"),
            Family::D => write!(f, "D[{a},{i},{j},{r}]"),
            Family::DPrime => write!(f, "Dp[{a},{i},{j},{r}]"),
            Family::E => write!(f, "E[{a},{b},{i},{j},{r}]"),
            Family::F => write!(f, "F[{a},{b},{i},{j},{r}]"),
        }
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub type Word = SmallVec<[Generator; 6]>;

pub fn word_parity(w: &[Generator]) -> u8 {
    w.iter().fold(0, |p, g| p ^ g.parity)
}

pub fn word_loop_degree(w: &[Generator]) -> usize {
    w.iter().map(Generator::loop_degree).sum()
}

/// Nondecreasing with no adjacent repeated odd symbol.
pub fn is_normal_word(w: &[Generator]) -> bool {
    w.windows(2).all(|p| p[0] < p[1] || (p[0] == p[1] && !p[0].is_odd()))
}

fn word_class(w: &[Generator]) -> Option<AlphabetClass> {
    w.first().map(|g| g.family.class())
}

/// Number of sign flips `(-1)^{…}` produced by super-permuting; helper for
/// callers that move one factor past another.
#[inline]
pub fn koszul(p: u8, q: u8) -> u32 {
    (p & q) as u32
}

/// A finite linear combination of words with nonzero rational coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    terms: BTreeMap<Word, Coeff>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(Coeff::one())
    }

    pub fn scalar(c: Coeff) -> Self {
        let mut e = Self::zero();
        e.add_term(Word::new(), c);
        e
    }

    pub fn generator(g: Generator) -> Self {
        Self::monomial(smallvec::smallvec![g], Coeff::one())
    }

    pub fn monomial(w: Word, c: Coeff) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Coeff)>>(terms: I) -> Self {
        let mut e = Self::zero();
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Coeff)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, Coeff)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, w: &[Generator]) -> Coeff {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// The constant term.
    pub fn scalar_part(&self) -> Coeff {
        self.coefficient(&[])
    }

    pub fn add_term(&mut self, w: Word, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(&c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &AlgebraElement, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        for (w, d) in &other.terms {
            self.add_term(w.clone(), d.mul_ref(c));
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_scaled(other, &Coeff::one());
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_scaled(other, &Coeff::from_int(-1));
        out
    }

    pub fn scale(&self, c: &Coeff) -> AlgebraElement {
        if c.is_zero() {
            return Self::zero();
        }
        AlgebraElement { terms: self.terms.iter().map(|(w, d)| (w.clone(), d.mul_ref(c))).collect() }
    }

    pub fn neg(&self) -> AlgebraElement {
        self.scale(&Coeff::from_int(-1))
    }

    /// The alphabet class of the symbols present, or `None` for scalars.
    pub fn alphabet(&self) -> Option<AlphabetClass> {
        self.terms.keys().find_map(|w| word_class(w))
    }

    /// Parity of a homogeneous element; `None` when terms disagree. Zero and
    /// scalars report parity 0.
    pub fn parity(&self) -> Option<u8> {
        let mut it = self.terms.keys().map(|w| word_parity(w));
        let first = it.next().unwrap_or(0);
        it.all(|p| p == first).then_some(first)
    }

    pub fn max_loop_degree(&self) -> Option<usize> {
        self.terms.keys().map(|w| word_loop_degree(w)).max()
    }

    pub fn is_normal(&self) -> bool {
        self.terms.keys().all(|w| is_normal_word(w))
    }

    /// Terms of loop degree exactly `k`.
    pub fn degree_part(&self, k: usize) -> AlgebraElement {
        AlgebraElement {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| word_loop_degree(w) == k)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    fn check_alphabets(&self, other: &AlgebraElement) -> Result<()> {
        match (self.alphabet(), other.alphabet()) {
            (Some(x), Some(y)) if x != y => {
                Err(Error::Alphabet(format!("cannot multiply {x:?} symbols with {y:?} symbols")))
            }
            _ => Ok(()),
        }
    }

    /// Concatenation product, extended bilinearly. Not normal-ordered.
    pub fn multiply(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_alphabets(other)?;
        let mut out = AlgebraElement::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, c1.mul_ref(c2));
            }
        }
        Ok(out)
    }

    /// `xy - (-1)^{|x||y|} yx`, un-normalized.
    pub fn supercommutator(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        let p = self.parity().ok_or(Error::Inhomogeneous)?;
        let q = other.parity().ok_or(Error::Inhomogeneous)?;
        let mut out = self.multiply(other)?;
        let yx = other.multiply(self)?;
        out.add_scaled(&yx, &-Coeff::sign(koszul(p, q)));
        Ok(out)
    }

    /// Applies `f` to every generator and re-collects.
    pub fn map_words<F: FnMut(&Word) -> Word>(&self, mut f: F) -> AlgebraElement {
        AlgebraElement::from_terms(self.terms.iter().map(|(w, c)| (f(w), c.clone())))
    }
}

/// Rendering order: higher loop degree first, then longer words, then words
/// in descending lexicographic order.
fn render_key(w: &Word) -> (std::cmp::Reverse<usize>, std::cmp::Reverse<usize>, std::cmp::Reverse<&Word>) {
    use std::cmp::Reverse;
    (Reverse(word_loop_degree(w)), Reverse(w.len()), Reverse(w))
}

pub fn render_word(w: &[Generator]) -> String {
    w.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("*")
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Word, &Coeff)> = self.terms.iter().collect();
        terms.sort_by(|x, y| render_key(x.0).cmp(&render_key(y.0)));
        for (n, (w, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            if w.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", render_word(w))?;
            } else {
                write!(f, "{mag}*{}", render_word(w))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> ZeroOneSequence {
        s.parse().unwrap()
    }

    #[test]
    fn multiply_concatenates() {
        let s = seq("01");
        let a = AlgebraElement::generator(Generator::t(&s, 1, 2, 1));
        let b = AlgebraElement::generator(Generator::t(&s, 2, 1, 1));
        assert_eq!(AlgebraElement::one().multiply(&a).unwrap(), a);
        assert_eq!(a.multiply(&b).unwrap().to_string(), "t[1,2,1]*t[2,1,1]");
        let c = AlgebraElement::generator(Generator::t(&s, 1, 1, 1));
        let left = a.add(&b).multiply(&c).unwrap();
        let right = a.multiply(&c).unwrap().add(&b.multiply(&c).unwrap());
        assert_eq!(left, right);
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let s = seq("01");
        let a = AlgebraElement::generator(Generator::t(&s, 1, 2, 1));
        let e = AlgebraElement::generator(Generator::e(&s, 1, 2));
        assert!(matches!(a.multiply(&e), Err(Error::Alphabet(_))));
        assert!(a.multiply(&AlgebraElement::scalar(Coeff::from_int(3))).is_ok());
    }

    #[test]
    fn supercommutator_signs() {
        let s = seq("01");
        let odd = AlgebraElement::generator(Generator::t(&s, 1, 2, 1));
        let sq = odd.multiply(&odd).unwrap();
        assert_eq!(odd.supercommutator(&odd).unwrap(), sq.scale(&Coeff::from_int(2)));
        let x = AlgebraElement::generator(Generator::t(&s, 1, 1, 1));
        let y = AlgebraElement::generator(Generator::t(&s, 2, 2, 1));
        let expected = x.multiply(&y).unwrap().sub(&y.multiply(&x).unwrap());
        assert_eq!(x.supercommutator(&y).unwrap(), expected);
        assert!(x.supercommutator(&x).unwrap().is_zero());
        let mixed = x.add(&odd);
        assert_eq!(mixed.supercommutator(&x), Err(Error::Inhomogeneous));
    }

    #[test]
    fn arithmetic() {
        let s = seq("01");
        let x = AlgebraElement::generator(Generator::t(&s, 1, 1, 1));
        assert_eq!(x.scale(&Coeff::from_int(2)).to_string(), "2*t[1,1,1]");
        assert!(x.add(&x.neg()).is_zero());
        assert_eq!(x.add(&x).scale(&Coeff::frac(1, 2)), x);
        assert_eq!(AlgebraElement::zero().to_string(), "0");
    }

    #[test]
    fn parabolic_order_and_parity() {
        let mu = Composition::parse(seq("01"), "1,1").unwrap();
        let f = Generator::f_block(&mu, 2, 1, 1, 1, 1);
        let d = Generator::d(&mu, 2, 1, 1, 1);
        let e = Generator::e_block(&mu, 1, 2, 1, 1, 1);
        assert!(f < d && d < e);
        assert_eq!((f.parity, d.parity, e.parity), (1, 0, 1));
        assert_eq!(e.to_string(), "E[1,2,1,1,1]");
        assert_eq!(f.to_string(), "F[2,1,1,1,1]");
    }
}
