//! 01-sequences, compositions and parity bookkeeping.
//!
//! Every public index is 1-based.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An arrangement of `M` zeros and `N` ones. Digit `i` is the parity of
/// row/column index `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ZeroOneSequence {
    digits: Vec<u8>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transform {
    Check,
    Reverse,
    Dagger,
}

impl ZeroOneSequence {
    pub fn new(digits: Vec<u8>) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::Config("empty 01-sequence".into()));
        }
        if digits.len() > 64 {
            return Err(Error::Config("01-sequence longer than 64 digits".into()));
        }
        if let Some(d) = digits.iter().find(|&&d| d > 1) {
            return Err(Error::Config(format!("digit {d} is not 0 or 1")));
        }
        Ok(Self { digits })
    }

    /// The standard sequence `0^M 1^N`.
    pub fn standard(m: usize, n: usize) -> Result<Self> {
        let mut digits = vec![0u8; m];
        digits.extend(std::iter::repeat_n(1u8, n));
        Self::new(digits)
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn m(&self) -> usize {
        self.digits.iter().filter(|&&d| d == 0).count()
    }

    pub fn n(&self) -> usize {
        self.digits.iter().filter(|&&d| d == 1).count()
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    /// `|i|`. Panics when `i` is out of range; see [`Self::try_parity`].
    #[inline]
    pub fn parity(&self, i: usize) -> u8 {
        self.digits[i - 1]
    }

    pub fn try_parity(&self, i: usize) -> Result<u8> {
        if i == 0 || i > self.len() {
            return Err(Error::Index(format!("index {i} outside 1..={} for sequence {self}", self.len())));
        }
        Ok(self.parity(i))
    }

    pub fn transform(&self, kind: Transform) -> Self {
        let digits = match kind {
            Transform::Check => self.digits.iter().map(|d| 1 - d).collect(),
            Transform::Reverse => self.digits.iter().rev().copied().collect(),
            Transform::Dagger => self.digits.iter().rev().map(|d| 1 - d).collect(),
        };
        Self { digits }
    }

    pub fn check(&self) -> Self {
        self.transform(Transform::Check)
    }

    pub fn reverse(&self) -> Self {
        self.transform(Transform::Reverse)
    }

    pub fn dagger(&self) -> Self {
        self.transform(Transform::Dagger)
    }

    /// `self` followed by `tail`.
    pub fn concat(&self, tail: &ZeroOneSequence) -> Self {
        let mut digits = self.digits.clone();
        digits.extend_from_slice(&tail.digits);
        Self { digits }
    }

    pub fn slice(&self, start: usize, len: usize) -> Self {
        Self { digits: self.digits[start..start + len].to_vec() }
    }
}

impl fmt::Display for ZeroOneSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.digits {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ZeroOneSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZeroOneSequence({self})")
    }
}

impl FromStr for ZeroOneSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::Config(format!("invalid character `{other}` in 01-sequence"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::new(digits)
    }
}

impl TryFrom<String> for ZeroOneSequence {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<ZeroOneSequence> for String {
    fn from(s: ZeroOneSequence) -> String {
        s.to_string()
    }
}

/// A composition `μ = (μ_1, …, μ_n)` of `M+N`, always paired with the
/// sequence it partitions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Composition {
    seq: ZeroOneSequence,
    parts: Vec<usize>,
    /// `starts[a-1] = n_{a-1}`.
    #[serde(skip)]
    starts: Vec<usize>,
}

impl Composition {
    pub fn new(seq: ZeroOneSequence, parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::Config(format!("composition {parts:?} must have positive parts")));
        }
        let total: usize = parts.iter().sum();
        if total != seq.len() {
            return Err(Error::Config(format!(
                "composition {} sums to {total}, sequence {seq} has length {}",
                join(&parts),
                seq.len()
            )));
        }
        let mut starts = Vec::with_capacity(parts.len());
        let mut acc = 0;
        for &p in &parts {
            starts.push(acc);
            acc += p;
        }
        Ok(Self { seq, parts, starts })
    }

    /// The one-block composition `(M+N)`.
    pub fn trivial(seq: ZeroOneSequence) -> Self {
        let len = seq.len();
        Self::new(seq, vec![len]).expect("single block always partitions")
    }

    pub fn parse(seq: ZeroOneSequence, text: &str) -> Result<Self> {
        let parts = text
            .split(',')
            .map(|p| {
                p.trim().parse::<usize>().map_err(|_| Error::Config(format!("invalid composition part `{}`", p.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(seq, parts)
    }

    pub fn seq(&self) -> &ZeroOneSequence {
        &self.seq
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of blocks `n`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `μ_a`.
    #[inline]
    pub fn size(&self, a: usize) -> usize {
        self.parts[a - 1]
    }

    /// `n_{a-1} = μ_1 + … + μ_{a-1}`.
    #[inline]
    pub fn block_start(&self, a: usize) -> usize {
        self.starts[a - 1]
    }

    /// `|i|_a`, the parity of global index `n_{a-1} + i`.
    #[inline]
    pub fn restricted_parity(&self, a: usize, i: usize) -> u8 {
        self.seq.parity(self.block_start(a) + i)
    }

    /// Global index of entry `i` of block `a`.
    #[inline]
    pub fn global(&self, a: usize, i: usize) -> usize {
        self.block_start(a) + i
    }

    pub fn split(&self) -> Vec<ZeroOneSequence> {
        (1..=self.len()).map(|a| self.seq.slice(self.block_start(a), self.size(a))).collect()
    }

    /// `(s†, μ reversed)`.
    pub fn flipped(&self) -> Composition {
        let parts: Vec<usize> = self.parts.iter().rev().copied().collect();
        Composition::new(self.seq.dagger(), parts).expect("reversal keeps the total")
    }

    /// The composition `(μ_a, …, μ_n)` of the trailing subsequence.
    pub fn tail(&self, a: usize) -> Composition {
        let start = self.block_start(a);
        let seq = self.seq.slice(start, self.seq.len() - start);
        Composition::new(seq, self.parts[a - 1..].to_vec()).expect("tail partitions its suffix")
    }

    pub fn parts_string(&self) -> String {
        join(&self.parts)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s={} mu=({})", self.seq, self.parts_string())
    }
}

/// Splits `seq` into consecutive blocks of lengths `mu`.
pub fn split_sequence(seq: &ZeroOneSequence, mu: &[usize]) -> Result<Vec<ZeroOneSequence>> {
    Ok(Composition::new(seq.clone(), mu.to_vec())?.split())
}

fn join(parts: &[usize]) -> String {
    parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> ZeroOneSequence {
        text.parse().unwrap()
    }

    #[test]
    fn parity_reads_digits() {
        assert_eq!(s("011").parity(2), 1);
        assert_eq!(s("0011010").parity(1), 0);
        assert_eq!(ZeroOneSequence::standard(2, 1).unwrap().parity(3), 1);
        assert!(s("01").try_parity(3).is_err());
        assert!(s("01").try_parity(0).is_err());
    }

    #[test]
    fn transforms() {
        let seq = s("0011010");
        assert_eq!(seq.check(), s("1100101"));
        assert_eq!(seq.reverse(), s("0101100"));
        assert_eq!(seq.dagger(), s("1010011"));
        assert_eq!(seq.check().m(), seq.n());
    }

    #[test]
    fn splitting() {
        let blocks = split_sequence(&s("011100011"), &[2, 4, 3]).unwrap();
        assert_eq!(blocks, vec![s("01"), s("1100"), s("011")]);
        assert_eq!(split_sequence(&s("01"), &[2]).unwrap(), vec![s("01")]);
        assert_eq!(split_sequence(&s("0101"), &[1, 2, 1]).unwrap(), vec![s("0"), s("10"), s("1")]);
        assert!(split_sequence(&s("0101"), &[1, 2]).is_err());
    }

    #[test]
    fn composition_bookkeeping() {
        let mu = Composition::parse(s("011100011"), "2,4,3").unwrap();
        assert_eq!(mu.block_start(1), 0);
        assert_eq!(mu.block_start(3), 6);
        assert_eq!(mu.block_start(3) + mu.size(3), 9);
        assert_eq!(mu.restricted_parity(2, 4), 0);
        assert_eq!(mu.flipped().parts(), &[3, 4, 2]);
        assert_eq!(mu.tail(2).seq(), &s("1100011"));
    }

    #[test]
    fn rejects_bad_input() {
        assert!("012".parse::<ZeroOneSequence>().is_err());
        assert!("".parse::<ZeroOneSequence>().is_err());
        assert!(Composition::parse(s("01"), "1,0,1").is_err());
        assert!(Composition::parse(s("01"), "x").is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn seq_strategy() -> impl Strategy<Value = ZeroOneSequence> {
            prop::collection::vec(0u8..2, 1..12).prop_map(|d| ZeroOneSequence::new(d).unwrap())
        }

        proptest! {
            #[test]
            fn involutions(seq in seq_strategy()) {
                prop_assert_eq!(seq.reverse().reverse(), seq.clone());
                prop_assert_eq!(seq.dagger().dagger(), seq.clone());
                prop_assert_eq!(seq.check().m(), seq.n());
                let len = seq.len();
                for k in 1..=len {
                    prop_assert_eq!(seq.dagger().parity(k), 1 - seq.parity(len + 1 - k));
                }
            }

            #[test]
            fn split_counts(seq in seq_strategy(), cuts in prop::collection::vec(any::<bool>(), 11)) {
                let mut parts = vec![1usize];
                for k in 1..seq.len() {
                    if cuts[k - 1] { parts.push(1) } else { *parts.last_mut().unwrap() += 1 }
                }
                let mu = Composition::new(seq.clone(), parts).unwrap();
                let blocks = mu.split();
                let joined: Vec<u8> = blocks.iter().flat_map(|b| b.digits().to_vec()).collect();
                prop_assert_eq!(joined.as_slice(), seq.digits());
                prop_assert_eq!(blocks.iter().map(|b| b.m()).sum::<usize>(), seq.m());
                prop_assert_eq!(blocks.iter().map(|b| b.n()).sum::<usize>(), seq.n());
                for a in 1..=mu.len() {
                    for i in 1..=mu.size(a) {
                        prop_assert_eq!(mu.restricted_parity(a, i), seq.parity(mu.block_start(a) + i));
                    }
                }
            }
        }
    }
}
