//! Block Gauss decomposition `T(u) = F(u) D(u) E(u)` of the generating
//! matrix relative to a composition, by elimination and by
//! quasideterminants.

use std::collections::BTreeMap;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::freealg::AlgebraElement;
use crate::grading::Composition;
use crate::rtt::YangianContext;
use crate::series::{MatrixSeries, TruncatedSeries};

pub const U: char = 'u';

/// `T(u) = (t_ij(u))` truncated at `cap`.
pub fn t_matrix(ctx: &YangianContext, cap: u8) -> MatrixSeries {
    let n = ctx.dim();
    MatrixSeries::from_fn(n, n, &[U], cap, |i, j| {
        TruncatedSeries::univariate(U, cap, (0..=cap as usize).map(|r| ctx.t(i, j, r)))
    })
}

/// `T(u)^{-1} = (t'_ij(u))`.
pub fn t_inverse(ctx: &YangianContext, cap: u8) -> MatrixSeries {
    let mul = |a: &AlgebraElement, b: &AlgebraElement| ctx.product_unchecked(a, b);
    t_matrix(ctx, cap).invert(&mul).expect("T(u) is monic")
}

/// The blocks `D_a`, `D'_a`, `E_{a,b}`, `F_{b,a}` of the Gauss decomposition.
#[derive(Clone)]
pub struct GaussFactors {
    config: Composition,
    cap: u8,
    d: Vec<MatrixSeries>,
    dp: Vec<MatrixSeries>,
    e: BTreeMap<(usize, usize), MatrixSeries>,
    f: BTreeMap<(usize, usize), MatrixSeries>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Block {
    D(usize),
    DPrime(usize),
    E(usize, usize),
    F(usize, usize),
}

fn block_of(m: &MatrixSeries, mu: &Composition, a: usize, b: usize) -> MatrixSeries {
    m.submatrix(mu.block_start(a), mu.block_start(b), mu.size(a), mu.size(b))
}

/// Block elimination on `T(u)`.
pub fn decompose(ctx: &YangianContext, mu: &Composition, cap: u8) -> Result<GaussFactors> {
    if mu.seq() != ctx.seq() {
        return Err(Error::Config(format!("composition over {} used with Y({})", mu.seq(), ctx.seq())));
    }
    let mul = |a: &AlgebraElement, b: &AlgebraElement| ctx.product_unchecked(a, b);
    let n = mu.len();
    let t = t_matrix(ctx, cap);
    let mut s: BTreeMap<(usize, usize), MatrixSeries> = BTreeMap::new();
    for a in 1..=n {
        for b in 1..=n {
            s.insert((a, b), block_of(&t, mu, a, b));
        }
    }
    let mut factors = GaussFactors {
        config: mu.clone(),
        cap,
        d: Vec::with_capacity(n),
        dp: Vec::with_capacity(n),
        e: BTreeMap::new(),
        f: BTreeMap::new(),
    };
    for a in 1..=n {
        let d = s[&(a, a)].clone();
        let dp = d.invert(&mul)?;
        for b in a + 1..=n {
            factors.e.insert((a, b), dp.mul_with(&s[&(a, b)], &mul)?);
            factors.f.insert((b, a), s[&(b, a)].mul_with(&dp, &mul)?);
        }
        for b in a + 1..=n {
            for c in a + 1..=n {
                let update = factors.f[&(b, a)].mul_with(&s[&(a, c)], &mul)?;
                let cur = s.get_mut(&(b, c)).expect("block present");
                *cur = cur.sub(&update)?;
            }
        }
        factors.d.push(d);
        factors.dp.push(dp);
    }
    Ok(factors)
}

impl GaussFactors {
    pub fn config(&self) -> &Composition {
        &self.config
    }

    pub fn cap(&self) -> u8 {
        self.cap
    }

    pub fn n(&self) -> usize {
        self.config.len()
    }

    pub fn d(&self, a: usize) -> &MatrixSeries {
        &self.d[a - 1]
    }

    pub fn dp(&self, a: usize) -> &MatrixSeries {
        &self.dp[a - 1]
    }

    pub fn e(&self, a: usize, b: usize) -> &MatrixSeries {
        &self.e[&(a, b)]
    }

    pub fn f(&self, b: usize, a: usize) -> &MatrixSeries {
        &self.f[&(b, a)]
    }

    pub fn block(&self, which: Block) -> Result<&MatrixSeries> {
        let n = self.n();
        let bad = || Error::Index(format!("block {which:?} for n = {n}"));
        match which {
            Block::D(a) | Block::DPrime(a) if a == 0 || a > n => Err(bad()),
            Block::D(a) => Ok(self.d(a)),
            Block::DPrime(a) => Ok(self.dp(a)),
            Block::E(a, b) => self.e.get(&(a, b)).ok_or_else(bad),
            Block::F(b, a) => self.f.get(&(b, a)).ok_or_else(bad),
        }
    }

    /// Coefficient `r` of entry `(i, j)` of a block. `D^{(0)} = δ`,
    /// `E^{(0)} = F^{(0)} = 0`. Errors beyond the cap or outside the block.
    pub fn coefficient(&self, which: Block, i: usize, j: usize, r: usize) -> Result<AlgebraElement> {
        let m = self.block(which)?;
        if i == 0 || j == 0 || i > m.rows() || j > m.cols() {
            return Err(Error::Index(format!("entry ({i},{j}) of {which:?}")));
        }
        if r > self.cap as usize {
            return Err(Error::CapTooSmall { given: self.cap, required: r as u8 });
        }
        m.coefficient(i, j, r as u8)
    }

    /// The full block-diagonal / unipotent matrices `(F, D, E)`.
    pub fn assemble(&self) -> (MatrixSeries, MatrixSeries, MatrixSeries) {
        let mu = &self.config;
        let size = mu.seq().len();
        let mut f = MatrixSeries::identity(size, &[U], self.cap);
        let mut d = MatrixSeries::zeros(size, size, &[U], self.cap);
        let mut e = MatrixSeries::identity(size, &[U], self.cap);
        for a in 1..=self.n() {
            d.set_submatrix(mu.block_start(a), mu.block_start(a), self.d(a));
        }
        for (&(a, b), m) in &self.e {
            e.set_submatrix(mu.block_start(a), mu.block_start(b), m);
        }
        for (&(b, a), m) in &self.f {
            f.set_submatrix(mu.block_start(b), mu.block_start(a), m);
        }
        (f, d, e)
    }

    /// `F · D · E`, which must equal `T(u)`.
    pub fn reconstruct(&self, ctx: &YangianContext) -> Result<MatrixSeries> {
        let mul = |a: &AlgebraElement, b: &AlgebraElement| ctx.product_unchecked(a, b);
        let (f, d, e) = self.assemble();
        f.mul_with(&d, &mul)?.mul_with(&e, &mul)
    }

    /// `E^{-1} D^{-1} F^{-1}`, which must equal `T(u)^{-1}`.
    pub fn inverse_from_factors(&self, ctx: &YangianContext) -> Result<MatrixSeries> {
        let mul = |a: &AlgebraElement, b: &AlgebraElement| ctx.product_unchecked(a, b);
        let (f, _, e) = self.assemble();
        let mu = &self.config;
        let size = mu.seq().len();
        let mut dinv = MatrixSeries::zeros(size, size, &[U], self.cap);
        for a in 1..=self.n() {
            dinv.set_submatrix(mu.block_start(a), mu.block_start(a), self.dp(a));
        }
        e.invert(&mul)?.mul_with(&dinv, &mul)?.mul_with(&f.invert(&mul)?, &mul)
    }

    /// Block-entry table `(block, i, j, r) → coefficient` for display.
    pub fn table(&self) -> Vec<(Block, usize, usize, usize, AlgebraElement)> {
        let mut rows = Vec::new();
        let mut push = |which: Block, m: &MatrixSeries, skip_zero_r: bool| {
            for (i, j, e) in m.entries() {
                for r in 0..=self.cap {
                    if r == 0 && skip_zero_r {
                        continue;
                    }
                    let c = e.coefficient(&[r]).unwrap_or_default();
                    rows.push((which, i, j, r as usize, c));
                }
            }
        };
        for a in 1..=self.n() {
            push(Block::D(a), self.d(a), true);
        }
        for a in 1..=self.n() {
            push(Block::DPrime(a), self.dp(a), true);
        }
        for (&(a, b), m) in &self.e {
            push(Block::E(a, b), m, true);
        }
        for (&(b, a), m) in &self.f {
            push(Block::F(b, a), m, true);
        }
        rows
    }
}

/// `D - C A^{-1} B`.
pub fn quasideterminant(
    ctx: &YangianContext,
    a: &MatrixSeries,
    b: &MatrixSeries,
    c: &MatrixSeries,
    d: &MatrixSeries,
) -> Result<MatrixSeries> {
    let mul = |x: &AlgebraElement, y: &AlgebraElement| ctx.product_unchecked(x, y);
    let ainv = a.invert(&mul)?;
    d.sub(&c.mul_with(&ainv, &mul)?.mul_with(b, &mul)?)
}

/// One parabolic block computed directly from blocks of `T(u)`:
/// `D_a = T_aa - T_{a,<a} A^{-1} T_{<a,a}`,
/// `E_ab = D'_a (T_ab - T_{a,<a} A^{-1} T_{<a,b})`,
/// `F_ba = (T_ba - T_{b,<a} A^{-1} T_{<a,a}) D'_a`,
/// where `A` is the leading `n_{a-1} × n_{a-1}` corner.
pub fn parabolic_series_by_quasidet(
    ctx: &YangianContext,
    mu: &Composition,
    cap: u8,
    which: Block,
) -> Result<MatrixSeries> {
    let n = mu.len();
    let mul = |x: &AlgebraElement, y: &AlgebraElement| ctx.product_unchecked(x, y);
    let t = t_matrix(ctx, cap);
    let lead = |a: usize| mu.block_start(a);
    // Rows of block p against columns of block q, corrected through the leading corner of size n_{a-1}.
    let corrected = |a: usize, p: usize, q: usize| -> Result<MatrixSeries> {
        let tpq = block_of(&t, mu, p, q);
        let k = lead(a);
        if k == 0 {
            return Ok(tpq);
        }
        let corner = t.submatrix(0, 0, k, k);
        let c = t.submatrix(mu.block_start(p), 0, mu.size(p), k);
        let b = t.submatrix(0, mu.block_start(q), k, mu.size(q));
        quasideterminant(ctx, &corner, &b, &c, &tpq)
    };
    let valid = |a: usize| a >= 1 && a <= n;
    match which {
        Block::D(a) if valid(a) => corrected(a, a, a),
        Block::DPrime(a) if valid(a) => corrected(a, a, a)?.invert(&mul),
        Block::E(a, b) if valid(a) && valid(b) && a < b => {
            let dp = corrected(a, a, a)?.invert(&mul)?;
            dp.mul_with(&corrected(a, a, b)?, &mul)
        }
        Block::F(b, a) if valid(a) && valid(b) && a < b => {
            let dp = corrected(a, a, a)?.invert(&mul)?;
            corrected(a, b, a)?.mul_with(&dp, &mul)
        }
        _ => Err(Error::Index(format!("block {which:?} for n = {n}"))),
    }
}

/// `E_{a,b}` (or `F_{b,a}`) from the bracket recursion
/// `E_{a,b;i,j}^{(r)} = (-1)^{|k|_{b-1}} [E_{a,b-1;i,k}^{(r)}, E_{b-1;k,j}^{(1)}]`,
/// `F_{b,a;j,i}^{(r)} = (-1)^{|k|_{b-1}} [F_{b-1;j,k}^{(1)}, F_{b-1,a;k,i}^{(r)}]`,
/// for `b > a + 1` and pivot `1 ≤ k ≤ μ_{b-1}`.
pub fn higher_ef_via_bracket(
    ctx: &YangianContext,
    factors: &GaussFactors,
    which: Block,
    k: usize,
) -> Result<MatrixSeries> {
    let mu = factors.config();
    let cap = factors.cap();
    let (a, b, upper) = match which {
        Block::E(a, b) => (a, b, true),
        Block::F(b, a) => (a, b, false),
        _ => return Err(Error::Domain("bracket recursion applies to E and F blocks".into())),
    };
    if a == 0 || b > mu.len() || b <= a + 1 {
        return Err(Error::Domain(format!("bracket recursion needs b > a + 1, got a = {a}, b = {b}")));
    }
    if k == 0 || k > mu.size(b - 1) {
        return Err(Error::Index(format!("pivot {k} outside 1..={}", mu.size(b - 1))));
    }
    let sign = Coeff::sign(mu.restricted_parity(b - 1, k) as u32);
    let (rows, cols) = if upper { (mu.size(a), mu.size(b)) } else { (mu.size(b), mu.size(a)) };
    let mut entries: Vec<Vec<TruncatedSeries>> = Vec::new();
    for i in 1..=rows {
        let mut row = Vec::new();
        for j in 1..=cols {
            let mut coeffs = vec![AlgebraElement::zero()];
            for r in 1..=cap as usize {
                let (x, y) = if upper {
                    (
                        factors.coefficient(Block::E(a, b - 1), i, k, r)?,
                        factors.coefficient(Block::E(b - 1, b), k, j, 1)?,
                    )
                } else {
                    (
                        factors.coefficient(Block::F(b, b - 1), i, k, 1)?,
                        factors.coefficient(Block::F(b - 1, a), k, j, r)?,
                    )
                };
                coeffs.push(ctx.bracket_normalized(&x, &y)?.scale(&sign));
            }
            row.push(TruncatedSeries::univariate(U, cap, coeffs));
        }
        entries.push(row);
    }
    Ok(MatrixSeries::from_fn(rows, cols, &[U], cap, |i, j| entries[i - 1][j - 1].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::ZeroOneSequence;

    fn setup(s: &str, mu: &str) -> (YangianContext, Composition) {
        let seq: ZeroOneSequence = s.parse().unwrap();
        (YangianContext::new(seq.clone()), Composition::parse(seq, mu).unwrap())
    }

    #[test]
    fn single_block_is_t() {
        let (y, mu) = setup("01", "2");
        let g = decompose(&y, &mu, 2).unwrap();
        assert_eq!(g.d(1), &t_matrix(&y, 2));
        assert!(g.e.is_empty() && g.f.is_empty());
    }

    #[test]
    fn two_blocks_low_order() {
        let (y, mu) = setup("01", "1,1");
        let g = decompose(&y, &mu, 2).unwrap();
        assert_eq!(g.coefficient(Block::E(1, 2), 1, 1, 1).unwrap(), y.t(1, 2, 1));
        let want = y.t(2, 2, 2).sub(&y.t(2, 1, 1).multiply(&y.t(1, 2, 1)).unwrap());
        let got = g.coefficient(Block::D(2), 1, 1, 2).unwrap();
        assert_eq!(got, y.normalize(&want).unwrap());
        assert_eq!(got.to_string(), "t[2,2,2] + t[1,2,1]*t[2,1,1] - t[2,2,1] + t[1,1,1]");
        assert_eq!(g.coefficient(Block::E(1, 2), 1, 1, 0).unwrap(), AlgebraElement::zero());
        assert_eq!(g.coefficient(Block::D(1), 1, 1, 0).unwrap(), AlgebraElement::one());
        assert!(matches!(g.coefficient(Block::D(1), 1, 1, 3), Err(Error::CapTooSmall { .. })));
    }

    #[test]
    fn reconstruction_and_inverse() {
        for (s, m) in [("01", "1,1"), ("010", "1,1,1"), ("001", "2,1"), ("010", "1,2")] {
            let (y, mu) = setup(s, m);
            let g = decompose(&y, &mu, 3).unwrap();
            assert_eq!(g.reconstruct(&y).unwrap(), t_matrix(&y, 3), "{s} {m}");
            assert_eq!(g.inverse_from_factors(&y).unwrap(), t_inverse(&y, 3), "{s} {m}");
            for a in 1..=mu.len() {
                let mul = |x: &AlgebraElement, z: &AlgebraElement| y.product(x, z).unwrap();
                let prod = g.d(a).mul_with(g.dp(a), &mul).unwrap();
                assert_eq!(prod, MatrixSeries::identity(mu.size(a), &[U], 3));
            }
        }
    }

    #[test]
    fn quasideterminant_trivial_cases() {
        let (y, _) = setup("0", "1");
        let one = MatrixSeries::identity(1, &[U], 2);
        let zero = MatrixSeries::zeros(1, 1, &[U], 2);
        let d = t_matrix(&y, 2);
        assert_eq!(quasideterminant(&y, &one, &d, &zero, &d).unwrap(), d);
        assert_eq!(quasideterminant(&y, &one, &zero, &d, &d).unwrap(), d);
        let scalar = |n: i64| {
            MatrixSeries::from_fn(1, 1, &[U], 2, |_, _| {
                TruncatedSeries::constant(&[U], 2, AlgebraElement::scalar(Coeff::from_int(n)))
            })
        };
        assert_eq!(quasideterminant(&y, &one, &scalar(3), &scalar(5), &scalar(7)).unwrap(), scalar(7 - 15));
    }

    #[test]
    fn quasideterminants_agree_with_elimination() {
        let (y, mu) = setup("010", "1,1,1");
        let g = decompose(&y, &mu, 3).unwrap();
        assert_eq!(
            parabolic_series_by_quasidet(&y, &mu, 3, Block::D(1)).unwrap(),
            block_of(&t_matrix(&y, 3), &mu, 1, 1)
        );
        for which in [
            Block::D(2),
            Block::D(3),
            Block::DPrime(3),
            Block::E(1, 2),
            Block::E(1, 3),
            Block::E(2, 3),
            Block::F(3, 1),
            Block::F(2, 1),
        ] {
            assert_eq!(&parabolic_series_by_quasidet(&y, &mu, 3, which).unwrap(), g.block(which).unwrap(), "{which:?}");
        }
        assert!(parabolic_series_by_quasidet(&y, &mu, 3, Block::E(2, 1)).is_err());
    }

    #[test]
    fn bracket_recursion() {
        let (y, mu) = setup("0101", "1,2,1");
        let g = decompose(&y, &mu, 3).unwrap();
        for k in 1..=2 {
            assert_eq!(&higher_ef_via_bracket(&y, &g, Block::E(1, 3), k).unwrap(), g.e(1, 3), "pivot {k}");
            assert_eq!(&higher_ef_via_bracket(&y, &g, Block::F(3, 1), k).unwrap(), g.f(3, 1), "pivot {k}");
        }
        assert!(higher_ef_via_bracket(&y, &g, Block::E(1, 2), 1).is_err());
        assert!(higher_ef_via_bracket(&y, &g, Block::E(1, 3), 3).is_err());
    }

    #[test]
    fn coefficient_parities() {
        let (y, mu) = setup("0110", "1,2,1");
        let g = decompose(&y, &mu, 2).unwrap();
        let rp = |a, i| mu.restricted_parity(a, i);
        for (which, i, j, r, c) in g.table() {
            if c.is_zero() {
                continue;
            }
            let want = match which {
                Block::D(a) | Block::DPrime(a) => rp(a, i) ^ rp(a, j),
                Block::E(a, b) => rp(a, i) ^ rp(b, j),
                Block::F(b, a) => rp(b, i) ^ rp(a, j),
            };
            assert_eq!(c.parity(), Some(want), "{which:?} ({i},{j}) r={r}");
        }
        let _ = y;
    }
}
