//! Evaluation of parsed expressions to normal form.

use anyhow::{anyhow, bail, Result};
use superyangian::gauss::t_inverse;
use superyangian::{
    decompose, AlgebraElement, Block, Composition, GaussFactors, LieContext, MatrixSeries, YangianContext,
    ZeroOneSequence,
};

use crate::parse::{Ast, Atom, Symbol};

enum Algebra {
    Yangian { ctx: YangianContext, factors: Option<Box<GaussFactors>>, inverse: Option<MatrixSeries> },
    Lie(LieContext),
}

/// Which normal-ordering context an expression lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Alphabet {
    Yangian,
    Gl,
    Loop,
}

pub fn alphabet(ast: &Ast) -> Result<Alphabet> {
    let mut found: Option<(Alphabet, &Atom)> = None;
    for atom in ast.atoms() {
        let kind = match atom.symbol {
            Symbol::Lie => Alphabet::Gl,
            Symbol::Loop => Alphabet::Loop,
            _ => Alphabet::Yangian,
        };
        match found {
            Some((k, first)) if k != kind => {
                bail!("{}: `{atom}` cannot be combined with `{first}` in one expression", atom.at)
            }
            _ => found = Some((kind, atom)),
        }
    }
    Ok(found.map_or(Alphabet::Yangian, |(k, _)| k))
}

/// Largest series index among symbols that need `T(u)^{-1}` or the Gauss factors.
pub fn required_cap(ast: &Ast) -> usize {
    ast.atoms()
        .into_iter()
        .filter(|a| !matches!(a.symbol, Symbol::T | Symbol::Lie | Symbol::Loop))
        .map(|a| *a.args.last().expect("nonempty"))
        .max()
        .unwrap_or(0)
}

pub struct Evaluator<'a> {
    seq: &'a ZeroOneSequence,
    mu: Option<&'a Composition>,
    cap: Option<u8>,
    algebra: Algebra,
}

impl<'a> Evaluator<'a> {
    /// Sets up the context for `ast`. Gauss factors and `T(u)^{-1}` are
    /// computed only when the expression uses them, at `cap` if given and
    /// otherwise at the largest index the expression needs.
    pub fn new(ast: &Ast, seq: &'a ZeroOneSequence, mu: Option<&'a Composition>, cap: Option<u8>) -> Result<Self> {
        let needed = required_cap(ast);
        if let Some(c) = cap {
            if (c as usize) < needed {
                bail!("cap {c} too small; {needed} required");
            }
        }
        let top = match cap {
            Some(c) => c,
            None => u8::try_from(needed.max(1)).map_err(|_| anyhow!("series index {needed} too large"))?,
        };
        let algebra = match alphabet(ast)? {
            Alphabet::Gl => Algebra::Lie(LieContext::new(seq.clone(), false)),
            Alphabet::Loop => Algebra::Lie(LieContext::new(seq.clone(), true)),
            Alphabet::Yangian => {
                let ctx = YangianContext::new(seq.clone());
                let atoms = ast.atoms();
                let uses = |s: &[Symbol]| atoms.iter().any(|a| s.contains(&a.symbol));
                let factors = if uses(&[Symbol::D, Symbol::DPrime, Symbol::E, Symbol::F]) {
                    let mu = mu.ok_or_else(|| anyhow!("D, Dp, E and F symbols need --mu"))?;
                    Some(Box::new(decompose(&ctx, mu, top)?))
                } else {
                    None
                };
                let inverse = uses(&[Symbol::TPrime]).then(|| t_inverse(&ctx, top));
                Algebra::Yangian { ctx, factors, inverse }
            }
        };
        Ok(Self { seq, mu, cap, algebra })
    }

    pub fn yangian(&self) -> Option<&YangianContext> {
        match &self.algebra {
            Algebra::Yangian { ctx, .. } => Some(ctx),
            Algebra::Lie(_) => None,
        }
    }

    fn check(&self, atom: &Atom) -> Result<()> {
        let n = self.seq.len();
        let in_range = |x: usize, hi: usize| (1..=hi).contains(&x);
        let bad = |why: String| Err(anyhow!("{}: `{atom}` {why}", atom.at));
        let args = &atom.args;
        if let Some(cap) = self.cap {
            let r = *args.last().expect("nonempty");
            if atom.symbol != Symbol::Lie && atom.symbol != Symbol::Loop && r > cap as usize {
                return bad(format!("exceeds the cap {cap}"));
            }
        }
        match atom.symbol {
            Symbol::T | Symbol::TPrime | Symbol::Lie | Symbol::Loop => {
                if !in_range(args[0], n) || !in_range(args[1], n) {
                    return bad(format!("has indices outside 1..={n}"));
                }
            }
            Symbol::D | Symbol::DPrime | Symbol::E | Symbol::F => {
                let mu = self.mu.ok_or_else(|| anyhow!("{}: `{atom}` needs --mu", atom.at))?;
                let blocks = mu.len();
                let (row, col, i, j) = match atom.symbol {
                    Symbol::D | Symbol::DPrime => (args[0], args[0], args[1], args[2]),
                    _ => (args[0], args[1], args[2], args[3]),
                };
                if !in_range(row, blocks) || !in_range(col, blocks) {
                    return bad(format!("has block indices outside 1..={blocks}"));
                }
                if atom.symbol == Symbol::E && row >= col {
                    return bad("needs a < b".into());
                }
                if atom.symbol == Symbol::F && row <= col {
                    return bad("needs b > a".into());
                }
                if !in_range(i, mu.size(row)) || !in_range(j, mu.size(col)) {
                    return bad(format!("has entry indices outside the {}×{} block", mu.size(row), mu.size(col)));
                }
            }
        }
        Ok(())
    }

    fn atom(&self, atom: &Atom) -> Result<AlgebraElement> {
        self.check(atom)?;
        let a = &atom.args;
        match (&self.algebra, atom.symbol) {
            (Algebra::Lie(lie), Symbol::Lie) => Ok(lie.e(a[0], a[1])),
            (Algebra::Lie(lie), Symbol::Loop) => Ok(lie.x(a[0], a[1], a[2])),
            (Algebra::Yangian { ctx, .. }, Symbol::T) => Ok(ctx.t(a[0], a[1], a[2])),
            (Algebra::Yangian { inverse: Some(inv), .. }, Symbol::TPrime) => {
                Ok(inv.coefficient(a[0], a[1], a[2] as u8)?)
            }
            (Algebra::Yangian { factors: Some(f), .. }, s) => {
                let (block, i, j, r) = match s {
                    Symbol::D => (Block::D(a[0]), a[1], a[2], a[3]),
                    Symbol::DPrime => (Block::DPrime(a[0]), a[1], a[2], a[3]),
                    Symbol::E => (Block::E(a[0], a[1]), a[2], a[3], a[4]),
                    Symbol::F => (Block::F(a[0], a[1]), a[2], a[3], a[4]),
                    _ => unreachable!("context built for every symbol present"),
                };
                Ok(f.coefficient(block, i, j, r)?)
            }
            _ => unreachable!("context built for every symbol present"),
        }
    }

    fn product(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        Ok(match &self.algebra {
            Algebra::Yangian { ctx, .. } => ctx.product(x, y)?,
            Algebra::Lie(lie) => lie.product(x, y)?,
        })
    }

    fn bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        Ok(match &self.algebra {
            Algebra::Yangian { ctx, .. } => ctx.bracket_normalized(x, y)?,
            Algebra::Lie(lie) => lie.bracket_normalized(x, y)?,
        })
    }

    /// Normal form of `ast`.
    pub fn eval(&self, ast: &Ast) -> Result<AlgebraElement> {
        Ok(match ast {
            Ast::Number(c) => AlgebraElement::scalar(c.clone()),
            Ast::Atom(a) => self.atom(a)?,
            Ast::Neg(x) => self.eval(x)?.neg(),
            Ast::Add(x, y) => self.eval(x)?.add(&self.eval(y)?),
            Ast::Sub(x, y) => self.eval(x)?.sub(&self.eval(y)?),
            Ast::Mul(x, y) => self.product(&self.eval(x)?, &self.eval(y)?)?,
            Ast::Bracket(x, y) => self.bracket(&self.eval(x)?, &self.eval(y)?)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn normal(text: &str, seq: &str, mu: Option<&str>, cap: Option<u8>) -> Result<String> {
        let seq: ZeroOneSequence = seq.parse()?;
        let mu = mu.map(|m| Composition::parse(seq.clone(), m)).transpose()?;
        let ast = parse(text)?;
        let ev = Evaluator::new(&ast, &seq, mu.as_ref(), cap)?;
        Ok(ev.eval(&ast)?.to_string())
    }

    #[test]
    fn rtt_bracket() {
        assert_eq!(normal("[t[1,2,1], t[2,1,1]]", "01", None, Some(4)).unwrap(), "t[2,2,1] - t[1,1,1]");
    }

    #[test]
    fn parabolic_symbols() {
        let d2 = normal("D[2,1,1,2] - (t[2,2,2] - t[2,1,1]*t[1,2,1])", "01", Some("1,1"), Some(2)).unwrap();
        assert_eq!(d2, "0");
        assert_eq!(normal("E[1,2,1,1,1] - t[1,2,1]", "01", Some("1,1"), None).unwrap(), "0");
    }

    #[test]
    fn inverse_and_lie() {
        assert_eq!(normal("tp[1,2,1] + t[1,2,1]", "01", None, None).unwrap(), "0");
        assert_eq!(normal("[e[1,2], e[2,1]]", "01", None, None).unwrap(), "e[2,2] + e[1,1]");
    }

    #[test]
    fn rejects_bad_references() {
        let msg = |r: Result<String>| r.unwrap_err().to_string();
        assert!(msg(normal("t[3,1,1]", "01", None, None)).contains("1:1"));
        assert!(msg(normal("D[1,1,1,1]", "01", None, None)).contains("--mu"));
        assert!(msg(normal("F[1,2,1,1,1]", "01", Some("1,1"), None)).contains("b > a"));
        assert!(msg(normal("t[1,1,1] + e[1,1]", "01", None, None)).contains("cannot be combined"));
        assert!(msg(normal("D[1,1,1,3]", "01", Some("1,1"), Some(2))).contains("too small"));
        assert!(msg(normal("t[1,1,5]", "01", None, Some(4))).contains("exceeds the cap"));
    }
}
