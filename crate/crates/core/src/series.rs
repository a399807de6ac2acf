//! Truncated series in one or more inverse variables with algebra-valued
//! coefficients, and matrices of such series.
//!
//! A series in variables `(u, v, …)` with cap `L` stores the coefficient of
//! `u^{-a} v^{-b} …` for every exponent `a, b, … ≤ L`. Products drop
//! anything beyond the cap.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use smallvec::SmallVec;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::freealg::AlgebraElement;

pub type Exponents = SmallVec<[u8; 3]>;

/// Coefficient multiplication used by series products: either plain
/// concatenation or a normal-ordered product in some algebra.
pub type CoeffProduct<'a> = &'a (dyn Fn(&AlgebraElement, &AlgebraElement) -> AlgebraElement + Sync);

/// Concatenation product, for when normalization is deferred.
pub fn free_product(a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
    a.multiply(b).expect("series coefficients share an alphabet")
}

#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    vars: Vec<char>,
    cap: u8,
    coeffs: BTreeMap<Exponents, AlgebraElement>,
}

impl TruncatedSeries {
    pub fn zero(vars: &[char], cap: u8) -> Self {
        Self { vars: vars.to_vec(), cap, coeffs: BTreeMap::new() }
    }

    pub fn constant(vars: &[char], cap: u8, c: AlgebraElement) -> Self {
        let mut s = Self::zero(vars, cap);
        s.set(Exponents::from_elem(0, vars.len()), c);
        s
    }

    pub fn one(vars: &[char], cap: u8) -> Self {
        Self::constant(vars, cap, AlgebraElement::one())
    }

    /// `Σ_r coeffs[r] u^{-r}`, truncated at `cap`.
    pub fn univariate(var: char, cap: u8, coeffs: impl IntoIterator<Item = AlgebraElement>) -> Self {
        let mut s = Self::zero(&[var], cap);
        for (r, c) in coeffs.into_iter().enumerate() {
            if r <= cap as usize {
                s.set(smallvec::smallvec![r as u8], c);
            }
        }
        s
    }

    pub fn vars(&self) -> &[char] {
        &self.vars
    }

    pub fn cap(&self) -> u8 {
        self.cap
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &AlgebraElement)> {
        self.coeffs.iter()
    }

    /// Stores `c` at `e`, silently dropping it if `e` exceeds the cap.
    pub fn set(&mut self, e: Exponents, c: AlgebraElement) {
        assert_eq!(e.len(), self.vars.len(), "exponent arity");
        if e.iter().any(|&x| x > self.cap) {
            return;
        }
        if c.is_zero() {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, c);
        }
    }

    pub fn add_at(&mut self, e: Exponents, c: &AlgebraElement) {
        if c.is_zero() || e.iter().any(|&x| x > self.cap) {
            return;
        }
        let slot = self.coeffs.entry(e.clone()).or_default();
        slot.add_scaled(c, &Coeff::one());
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    /// The coefficient at `e`. Errors outside the cap.
    pub fn coefficient(&self, e: &[u8]) -> Result<AlgebraElement> {
        if e.len() != self.vars.len() {
            return Err(Error::Series(format!("expected {} exponents, got {}", self.vars.len(), e.len())));
        }
        if e.iter().any(|&x| x > self.cap) {
            return Err(Error::OutOfCap(e.to_vec(), self.cap));
        }
        Ok(self.coeffs.get(e).cloned().unwrap_or_default())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars || self.cap != other.cap {
            return Err(Error::Series(format!(
                "vars {:?} cap {} vs vars {:?} cap {}",
                self.vars, self.cap, other.vars, other.cap
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.add_at(e.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let mut out = Self::zero(&self.vars, self.cap);
        for (e, x) in &self.coeffs {
            out.set(e.clone(), x.scale(c));
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&Coeff::from_int(-1))
    }

    /// Applies `f` to every coefficient.
    pub fn map(&self, f: impl Fn(&AlgebraElement) -> AlgebraElement) -> Self {
        let mut out = Self::zero(&self.vars, self.cap);
        for (e, x) in &self.coeffs {
            out.set(e.clone(), f(x));
        }
        out
    }

    /// Cauchy product with coefficient product `mul`.
    pub fn mul_with(&self, other: &Self, mul: CoeffProduct<'_>) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(&self.vars, self.cap);
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                if e.iter().all(|&x| x <= self.cap) {
                    out.add_at(e, &mul(c1, c2));
                }
            }
        }
        Ok(out)
    }

    /// Concatenation product of coefficients.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.mul_with(other, &free_product)
    }

    /// Re-expresses a series in `self.vars` as one in `vars`, which must
    /// contain every variable of `self`.
    pub fn embed(&self, vars: &[char]) -> Result<Self> {
        let pos: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                vars.iter()
                    .position(|w| w == v)
                    .ok_or_else(|| Error::Series(format!("variable {v} missing from {vars:?}")))
            })
            .collect::<Result<_>>()?;
        let mut out = Self::zero(vars, self.cap);
        for (e, c) in &self.coeffs {
            let mut f = Exponents::from_elem(0, vars.len());
            for (k, &p) in pos.iter().enumerate() {
                f[p] = e[k];
            }
            out.set(f, c.clone());
        }
        Ok(out)
    }

    /// Renames a univariate series' variable.
    pub fn rename(&self, var: char) -> Self {
        assert_eq!(self.vars.len(), 1, "rename applies to univariate series");
        Self { vars: vec![var], cap: self.cap, coeffs: self.coeffs.clone() }
    }

    /// Lowers the cap, discarding higher coefficients.
    pub fn truncate(&self, cap: u8) -> Self {
        let mut out = Self::zero(&self.vars, cap.min(self.cap));
        for (e, c) in &self.coeffs {
            out.set(e.clone(), c.clone());
        }
        out
    }

    /// `S(-u)`: flips the sign of odd-degree coefficients in every variable.
    pub fn negate_variable(&self) -> Self {
        let mut out = Self::zero(&self.vars, self.cap);
        for (e, c) in &self.coeffs {
            let deg: u32 = e.iter().map(|&x| x as u32).sum();
            out.set(e.clone(), c.scale(&Coeff::sign(deg)));
        }
        out
    }

    fn var_index(&self, var: char) -> Result<usize> {
        self.vars.iter().position(|&v| v == var).ok_or_else(|| Error::Series(format!("no variable {var}")))
    }

    /// `(x - y) · S` for variables `x`, `y` of `S`. The coefficient at an
    /// exponent tuple `e` is `S[e + 1_x] - S[e + 1_y]`, so the result is
    /// exact on exponents `≤ cap - 1` in `x` and `y` and has cap `cap - 1`.
    /// Errors if `S` has a term with zero exponent in `x` or `y`, since the
    /// product would then contain nonnegative powers.
    pub fn mul_by_difference(&self, x: char, y: char) -> Result<Self> {
        let (px, py) = (self.var_index(x)?, self.var_index(y)?);
        if self.cap == 0 {
            return Err(Error::Series("cap 0 leaves no certified window".into()));
        }
        if let Some((e, _)) = self.coeffs.iter().find(|(e, _)| e[px] == 0 || e[py] == 0) {
            return Err(Error::Series(format!(
                "({x}-{y}) times a series with coefficient at {e:?} has nonnegative powers"
            )));
        }
        let mut out = Self::zero(&self.vars, self.cap - 1);
        for (e, c) in &self.coeffs {
            let mut f = e.clone();
            f[px] -= 1;
            out.add_at(f, c);
            let mut f = e.clone();
            f[py] -= 1;
            out.add_at(f, &c.neg());
        }
        Ok(out)
    }

    /// Solves `(x - y) · Q = S`. Requires `S` to vanish on `x = y`: for every
    /// fixed value of the other exponents and every total degree `d`,
    /// `Σ_{m=0}^{d} S[d-m, m] = 0`. The returned `Q` is certified on
    /// exponents with `e_x + e_y ≤ cap + 1`, and only those are stored.
    pub fn divide_by_difference(&self, x: char, y: char) -> Result<Self> {
        let (px, py) = (self.var_index(x)?, self.var_index(y)?);
        let cap = self.cap as usize;
        let get = |base: &Exponents, a: usize, b: usize| -> Option<&AlgebraElement> {
            if a > cap || b > cap {
                return None;
            }
            let mut e = base.clone();
            e[px] = a as u8;
            e[py] = b as u8;
            self.coeffs.get(&e)
        };
        let mut slices: Vec<Exponents> = self
            .coeffs
            .keys()
            .map(|e| {
                let mut b = e.clone();
                b[px] = 0;
                b[py] = 0;
                b
            })
            .collect();
        slices.sort();
        slices.dedup();
        let mut out = Self::zero(&self.vars, self.cap);
        for base in &slices {
            for d in 0..=cap {
                let mut diag = AlgebraElement::zero();
                for m in 0..=d {
                    if let Some(c) = get(base, d - m, m) {
                        diag.add_scaled(c, &Coeff::one());
                    }
                }
                if !diag.is_zero() {
                    return Err(Error::NotDivisible { degree: d, coefficient: diag.to_string() });
                }
            }
            for r in 1..=cap {
                for s in 1..=cap {
                    if r + s > cap + 1 {
                        continue;
                    }
                    let mut q = AlgebraElement::zero();
                    for m in 0..r {
                        if let Some(c) = get(base, r - 1 - m, s + m) {
                            q.add_scaled(c, &Coeff::one());
                        }
                    }
                    let mut e = base.clone();
                    e[px] = r as u8;
                    e[py] = s as u8;
                    out.set(e, q);
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> =
                self.vars.iter().zip(e).filter(|(_, &x)| x > 0).map(|(v, x)| format!("{v}^-{x}")).collect();
            if mono.is_empty() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{}", mono.join("*"))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        let tail: Vec<String> = self.vars.iter().map(|v| format!("{v}^-{}", self.cap as usize + 1)).collect();
        write!(f, " + O({})", tail.join(", "))
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A dense matrix of series sharing variables and cap. Entry indices are
/// 1-based; block offsets are 0-based.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixSeries {
    rows: usize,
    cols: usize,
    vars: Vec<char>,
    cap: u8,
    entries: Vec<TruncatedSeries>,
}

impl MatrixSeries {
    pub fn zeros(rows: usize, cols: usize, vars: &[char], cap: u8) -> Self {
        Self { rows, cols, vars: vars.to_vec(), cap, entries: vec![TruncatedSeries::zero(vars, cap); rows * cols] }
    }

    pub fn identity(n: usize, vars: &[char], cap: u8) -> Self {
        let mut m = Self::zeros(n, n, vars, cap);
        for i in 1..=n {
            *m.entry_mut(i, i) = TruncatedSeries::one(vars, cap);
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        vars: &[char],
        cap: u8,
        mut f: impl FnMut(usize, usize) -> TruncatedSeries,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 1..=rows {
            for j in 1..=cols {
                let e = f(i, j);
                assert!(e.vars == vars && e.cap == cap, "entry ({i},{j}) has mismatched vars/cap");
                entries.push(e);
            }
        }
        Self { rows, cols, vars: vars.to_vec(), cap, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cap(&self) -> u8 {
        self.cap
    }

    pub fn vars(&self) -> &[char] {
        &self.vars
    }

    pub fn entry(&self, i: usize, j: usize) -> &TruncatedSeries {
        &self.entries[(i - 1) * self.cols + (j - 1)]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut TruncatedSeries {
        &mut self.entries[(i - 1) * self.cols + (j - 1)]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &TruncatedSeries)> {
        self.entries.iter().enumerate().map(move |(n, e)| (n / self.cols + 1, n % self.cols + 1, e))
    }

    /// The coefficient matrix at a univariate exponent `r`, entry `(i, j)`.
    pub fn coefficient(&self, i: usize, j: usize, r: u8) -> Result<AlgebraElement> {
        self.entry(i, j).coefficient(&[r])
    }

    pub fn submatrix(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, &self.vars, self.cap, |i, j| self.entry(row0 + i, col0 + j).clone())
    }

    pub fn set_submatrix(&mut self, row0: usize, col0: usize, m: &MatrixSeries) {
        for (i, j, e) in m.entries() {
            *self.entry_mut(row0 + i, col0 + j) = e.clone();
        }
    }

    fn check_shape(&self, other: &Self, same: bool) -> Result<()> {
        let ok = if same { self.rows == other.rows && self.cols == other.cols } else { self.cols == other.rows };
        if !ok || self.vars != other.vars || self.cap != other.cap {
            return Err(Error::Series(format!(
                "{}x{} {:?}/{} vs {}x{} {:?}/{}",
                self.rows, self.cols, self.vars, self.cap, other.rows, other.cols, other.vars, other.cap
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other, true)?;
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(&other.entries) {
            *e = e.add(o)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|e| e.neg())
    }

    pub fn map(&self, f: impl Fn(&TruncatedSeries) -> TruncatedSeries) -> Self {
        Self { entries: self.entries.iter().map(f).collect(), ..self.clone() }
    }

    pub fn map_coefficients(&self, f: impl Fn(&AlgebraElement) -> AlgebraElement + Sync) -> Self {
        Self { entries: self.entries.par_iter().map(|e| e.map(&f)).collect(), ..self.clone() }
    }

    pub fn mul_with(&self, other: &Self, mul: CoeffProduct<'_>) -> Result<Self> {
        self.check_shape(other, false)?;
        let (rows, cols, inner) = (self.rows, other.cols, self.cols);
        let entries = (0..rows * cols)
            .into_par_iter()
            .map(|n| {
                let (i, j) = (n / cols + 1, n % cols + 1);
                let mut acc = TruncatedSeries::zero(&self.vars, self.cap);
                for k in 1..=inner {
                    let (a, b) = (self.entry(i, k), other.entry(k, j));
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul_with(b, mul)?)?;
                }
                Ok(acc)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { rows, cols, vars: self.vars.clone(), cap: self.cap, entries })
    }

    /// Constant term is the identity matrix over scalars.
    pub fn is_monic(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let zero = Exponents::from_elem(0, self.vars.len());
        self.entries().all(|(i, j, e)| {
            let c = e.coefficient(&zero).unwrap_or_default();
            if i == j {
                c == AlgebraElement::one()
            } else {
                c.is_zero()
            }
        })
    }

    /// Inverse of a monic univariate matrix series: `Y_0 = I`,
    /// `Y_r = -Σ_{s=1}^{r} X_s Y_{r-s}` where `X_s` are the coefficients of `self`.
    pub fn invert(&self, mul: CoeffProduct<'_>) -> Result<Self> {
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        if self.vars.len() != 1 {
            return Err(Error::Series("inversion is implemented for univariate series".into()));
        }
        let n = self.rows;
        let cap = self.cap as usize;
        let coeff_matrix = |m: &MatrixSeries, r: usize| -> Vec<AlgebraElement> {
            m.entries.iter().map(|e| e.coefficient(&[r as u8]).unwrap_or_default()).collect()
        };
        let xs: Vec<Vec<AlgebraElement>> = (0..=cap).map(|r| coeff_matrix(self, r)).collect();
        let mut ys: Vec<Vec<AlgebraElement>> = Vec::with_capacity(cap + 1);
        ys.push(
            (0..n * n).map(|k| if k / n == k % n { AlgebraElement::one() } else { AlgebraElement::zero() }).collect(),
        );
        for r in 1..=cap {
            let next: Vec<AlgebraElement> = (0..n * n)
                .into_par_iter()
                .map(|idx| {
                    let (i, j) = (idx / n, idx % n);
                    let mut acc = AlgebraElement::zero();
                    for s in 1..=r {
                        for k in 0..n {
                            let (x, y) = (&xs[s][i * n + k], &ys[r - s][k * n + j]);
                            if x.is_zero() || y.is_zero() {
                                continue;
                            }
                            acc.add_scaled(&mul(x, y), &Coeff::from_int(-1));
                        }
                    }
                    acc
                })
                .collect();
            ys.push(next);
        }
        let var = self.vars[0];
        Ok(Self::from_fn(n, n, &self.vars, self.cap, |i, j| {
            TruncatedSeries::univariate(var, self.cap, (0..=cap).map(|r| ys[r][(i - 1) * n + (j - 1)].clone()))
        }))
    }

    pub fn truncate(&self, cap: u8) -> Self {
        let cap = cap.min(self.cap);
        Self { cap, entries: self.entries.iter().map(|e| e.truncate(cap)).collect(), ..self.clone() }
    }

    pub fn negate_variable(&self) -> Self {
        self.map(|e| e.negate_variable())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(TruncatedSeries::is_zero)
    }
}

impl fmt::Debug for MatrixSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, j, e) in self.entries() {
            writeln!(f, "[{i},{j}] {e}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::Generator;
    use crate::grading::ZeroOneSequence;
    use crate::rtt::YangianContext;

    fn seq(s: &str) -> ZeroOneSequence {
        s.parse().unwrap()
    }

    fn gen(s: &ZeroOneSequence, i: usize, j: usize, r: usize) -> AlgebraElement {
        AlgebraElement::generator(Generator::t(s, i, j, r))
    }

    #[test]
    fn arithmetic_and_truncation() {
        let s = seq("0");
        let a = gen(&s, 1, 1, 1);
        let plus = TruncatedSeries::univariate('u', 2, [AlgebraElement::one(), a.clone()]);
        let minus = TruncatedSeries::univariate('u', 2, [AlgebraElement::one(), a.neg()]);
        let prod = plus.mul(&minus).unwrap();
        let sq = a.multiply(&a).unwrap();
        assert_eq!(
            prod,
            TruncatedSeries::univariate('u', 2, [AlgebraElement::one(), AlgebraElement::zero(), sq.neg()])
        );
        assert_eq!(plus.add(&TruncatedSeries::zero(&['u'], 2)).unwrap(), plus);

        let b = gen(&s, 1, 1, 2);
        let x = TruncatedSeries::univariate('u', 1, [AlgebraElement::one(), a.clone()]);
        let y = TruncatedSeries::univariate('u', 1, [AlgebraElement::one(), b.clone()]);
        assert_eq!(x.mul(&y).unwrap(), TruncatedSeries::univariate('u', 1, [AlgebraElement::one(), a.add(&b)]));
        assert!(x.add(&plus).is_err());
    }

    #[test]
    fn coefficient_extraction() {
        let s = seq("01");
        let t = TruncatedSeries::univariate(
            'u',
            3,
            (0..=3).map(|r| if r == 0 { AlgebraElement::one() } else { gen(&s, 1, 2, r) }),
        );
        assert_eq!(t.coefficient(&[2]).unwrap(), gen(&s, 1, 2, 2));
        assert_eq!(TruncatedSeries::one(&['u'], 3).coefficient(&[0]).unwrap(), AlgebraElement::one());
        assert!(matches!(t.coefficient(&[4]), Err(Error::OutOfCap(..))));
    }

    #[test]
    fn inversion_examples() {
        let y = YangianContext::new(seq("0"));
        let mul = |a: &AlgebraElement, b: &AlgebraElement| y.product(a, b).unwrap();
        let t = MatrixSeries::from_fn(1, 1, &['u'], 2, |_, _| {
            TruncatedSeries::univariate('u', 2, [AlgebraElement::one(), y.t(1, 1, 1)])
        });
        let inv = t.invert(&mul).unwrap();
        let sq = y.product(&y.t(1, 1, 1), &y.t(1, 1, 1)).unwrap();
        assert_eq!(inv.coefficient(1, 1, 1).unwrap(), y.t(1, 1, 1).neg());
        assert_eq!(inv.coefficient(1, 1, 2).unwrap(), sq);
        let id = MatrixSeries::identity(3, &['u'], 2);
        assert_eq!(id.invert(&mul).unwrap(), id);
        let mut bad = id.clone();
        *bad.entry_mut(1, 1) = TruncatedSeries::zero(&['u'], 2);
        assert_eq!(bad.invert(&mul), Err(Error::NotMonic));
    }

    #[test]
    fn two_by_two_inverse() {
        let y = YangianContext::new(seq("01"));
        let mul = |a: &AlgebraElement, b: &AlgebraElement| y.product(a, b).unwrap();
        let t = MatrixSeries::from_fn(2, 2, &['u'], 2, |i, j| {
            TruncatedSeries::univariate('u', 2, (0..=2).map(|r| y.t(i, j, r)))
        });
        let inv = t.invert(&mul).unwrap();
        assert_eq!(inv.coefficient(1, 2, 1).unwrap(), y.t(1, 2, 1).neg());
        // Second order of the Neumann series: -t_12^(2) + Σ_k t_1k^(1) t_k2^(1).
        let mut want = y.t(1, 2, 2).neg();
        for k in 1..=2 {
            want = want.add(&y.product(&y.t(1, k, 1), &y.t(k, 2, 1)).unwrap());
        }
        assert_eq!(inv.coefficient(1, 2, 2).unwrap(), want);
        assert!(t.mul_with(&inv, &mul).unwrap() == MatrixSeries::identity(2, &['u'], 2));
        assert!(inv.mul_with(&t, &mul).unwrap() == MatrixSeries::identity(2, &['u'], 2));
    }

    fn scalar(n: i64) -> AlgebraElement {
        AlgebraElement::scalar(Coeff::from_int(n))
    }

    #[test]
    fn divide_by_difference_examples() {
        let vars = ['u', 'v'];
        let mut s = TruncatedSeries::zero(&vars, 3);
        s.set(smallvec::smallvec![0, 1], scalar(1));
        s.set(smallvec::smallvec![1, 0], scalar(-1));
        let q = s.divide_by_difference('u', 'v').unwrap();
        let mut want = TruncatedSeries::zero(&vars, 3);
        want.set(smallvec::smallvec![1, 1], scalar(1));
        assert_eq!(q, want);
        assert!(TruncatedSeries::zero(&vars, 3).divide_by_difference('u', 'v').unwrap().is_zero());

        // S0(v) - S0(u) with S0 = Σ_{r≤3} c_r u^{-r}: Q(r,s) = c_{r+s-1}.
        let seq = seq("0");
        let c: Vec<AlgebraElement> = (0..=3).map(|r| if r == 0 { scalar(5) } else { gen(&seq, 1, 1, r) }).collect();
        let s0 = TruncatedSeries::univariate('u', 3, c.clone());
        let diff = s0.rename('v').embed(&vars).unwrap().sub(&s0.embed(&vars).unwrap()).unwrap();
        let q = diff.divide_by_difference('u', 'v').unwrap();
        for r in 1..=3u8 {
            for t in 1..=3u8 {
                if r + t <= 4 {
                    assert_eq!(q.coefficient(&[r, t]).unwrap(), c[(r + t - 1) as usize]);
                }
            }
        }
        let mut bad = TruncatedSeries::zero(&vars, 3);
        bad.set(smallvec::smallvec![1, 0], scalar(1));
        assert!(matches!(bad.divide_by_difference('u', 'v'), Err(Error::NotDivisible { degree: 1, .. })));
    }

    #[test]
    fn multiplying_back_recovers_the_series() {
        let vars = ['u', 'v'];
        let seq = seq("0");
        let mut q = TruncatedSeries::zero(&vars, 4);
        for r in 1..=4u8 {
            for t in 1..=4u8 {
                if r + t <= 5 {
                    q.set(smallvec::smallvec![r, t], gen(&seq, 1, 1, (r + 2 * t) as usize));
                }
            }
        }
        let s = q.mul_by_difference('u', 'v').unwrap();
        let back = s.divide_by_difference('u', 'v').unwrap();
        for (e, c) in back.terms() {
            if (e[0] + e[1]) as usize <= s.cap() as usize + 1 {
                assert_eq!(c, &q.coefficient(e).unwrap(), "at {e:?}");
            }
        }
        let constant = TruncatedSeries::one(&vars, 2);
        assert!(constant.mul_by_difference('u', 'v').is_err());
    }
}
