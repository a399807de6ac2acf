//! Exact rational scalars.
//!
//! Almost every coefficient produced by normal ordering fits comfortably in a
//! machine word, so values are kept as `Ratio<i64>` and promoted to
//! arbitrary precision only when an operation would overflow. The
//! representation is canonical: a value that fits is always stored small,
//! which keeps derived equality and hashing structural.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Small(Ratio<i64>),
    Big(Box<BigRational>),
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff::Small(Ratio::zero())
    }

    pub fn one() -> Self {
        Coeff::Small(Ratio::one())
    }

    pub fn from_int(n: i64) -> Self {
        Coeff::Small(Ratio::from_integer(n))
    }

    /// `num / den`. Panics if `den == 0`.
    pub fn frac(num: i64, den: i64) -> Self {
        Coeff::Small(Ratio::new(num, den))
    }

    /// `(-1)^e` for a parity bit or any exponent.
    pub fn sign(e: u32) -> Self {
        if e.is_multiple_of(2) {
            Self::one()
        } else {
            Self::from_int(-1)
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Small(r) => r.is_zero(),
            Coeff::Big(b) => b.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Coeff::Small(r) if r.is_one())
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Coeff::Small(r) => r.is_negative(),
            Coeff::Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Coeff::Small(r) => Ratio::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom())),
            Coeff::Big(b) => (**b).clone(),
        }
    }

    fn from_big(b: BigRational) -> Self {
        match (b.numer().to_i64(), b.denom().to_i64()) {
            (Some(n), Some(d)) => Coeff::Small(Ratio::new_raw(n, d)),
            _ => Coeff::Big(Box::new(b)),
        }
    }

    pub fn add_ref(&self, other: &Coeff) -> Coeff {
        if let (Coeff::Small(a), Coeff::Small(b)) = (self, other) {
            if let Some(c) = a.checked_add(b) {
                return Coeff::Small(c);
            }
        }
        Self::from_big(self.to_big() + other.to_big())
    }

    pub fn sub_ref(&self, other: &Coeff) -> Coeff {
        if let (Coeff::Small(a), Coeff::Small(b)) = (self, other) {
            if let Some(c) = a.checked_sub(b) {
                return Coeff::Small(c);
            }
        }
        Self::from_big(self.to_big() - other.to_big())
    }

    pub fn mul_ref(&self, other: &Coeff) -> Coeff {
        if let (Coeff::Small(a), Coeff::Small(b)) = (self, other) {
            if let Some(c) = a.checked_mul(b) {
                return Coeff::Small(c);
            }
        }
        Self::from_big(self.to_big() * other.to_big())
    }

    /// In-place `self += other`.
    pub fn add_assign_ref(&mut self, other: &Coeff) {
        if let (Coeff::Small(a), Coeff::Small(b)) = (&*self, other) {
            if let Some(c) = a.checked_add(b) {
                *self = Coeff::Small(c);
                return;
            }
        }
        *self = Self::from_big(self.to_big() + other.to_big());
    }

    /// Reciprocal. Panics on zero.
    pub fn recip(&self) -> Coeff {
        assert!(!self.is_zero(), "reciprocal of zero");
        match self {
            Coeff::Small(r) if *r.numer() != i64::MIN => Coeff::Small(r.recip()),
            _ => Self::from_big(self.to_big().recip()),
        }
    }
}

impl Default for Coeff {
    fn default() -> Self {
        Coeff::zero()
    }
}

impl std::ops::Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self {
            Coeff::Small(r) if *r.numer() != i64::MIN => Coeff::Small(-r),
            other => Coeff::from_big(-other.to_big()),
        }
    }
}

impl From<i64> for Coeff {
    fn from(n: i64) -> Self {
        Coeff::from_int(n)
    }
}

impl PartialOrd for Coeff {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Coeff {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Coeff::Small(a), Coeff::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Small(r) => write!(f, "{r}"),
            Coeff::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseCoeffError(pub String);

impl FromStr for Coeff {
    type Err = ParseCoeffError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseCoeffError(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let num: BigInt = num.parse().map_err(|_| err())?;
        let den: BigInt = den.parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        Ok(Coeff::from_big(BigRational::new(num, den)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_arithmetic() {
        let half = Coeff::frac(1, 2);
        assert_eq!(half.add_ref(&half), Coeff::one());
        assert_eq!(half.mul_ref(&Coeff::from_int(4)), Coeff::from_int(2));
        assert!(half.sub_ref(&half).is_zero());
        assert_eq!(Coeff::sign(3), Coeff::from_int(-1));
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Coeff::from_int(i64::MAX);
        let sum = big.add_ref(&Coeff::one());
        assert!(matches!(sum, Coeff::Big(_)));
        let back = sum.sub_ref(&Coeff::one());
        assert_eq!(back, Coeff::from_int(i64::MAX));
        assert!(matches!(back, Coeff::Small(_)));
        let sq = big.mul_ref(&big);
        assert_eq!(sq.mul_ref(&big.recip()), big);
    }

    #[test]
    fn parse_and_display() {
        let c: Coeff = "-6/4".parse().unwrap();
        assert_eq!(c.to_string(), "-3/2");
        assert!("1/0".parse::<Coeff>().is_err());
        assert!("x".parse::<Coeff>().is_err());
        let huge: Coeff = "123456789012345678901234567890".parse().unwrap();
        assert!(matches!(huge, Coeff::Big(_)));
    }
}
