//! Expression grammar:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | primary
//! primary := number | atom | '[' expr ',' expr ']' | '(' expr ')'
//! number  := digits ('/' digits)?
//! atom    := t[i,j,r] | tp[i,j,r] | D[a,i,j,r] | Dp[a,i,j,r]
//!          | E[a,b,i,j,r] | F[b,a,i,j,r] | e[i,j] | x[i,j,r]
//! ```

use std::fmt;
use std::str::FromStr;

use superyangian::Coeff;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub at: Position,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.at.line, self.at.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symbol {
    T,
    TPrime,
    D,
    DPrime,
    E,
    F,
    Lie,
    Loop,
}

impl Symbol {
    const ALL: [(&'static str, Symbol); 8] = [
        ("t", Symbol::T),
        ("tp", Symbol::TPrime),
        ("D", Symbol::D),
        ("Dp", Symbol::DPrime),
        ("E", Symbol::E),
        ("F", Symbol::F),
        ("e", Symbol::Lie),
        ("x", Symbol::Loop),
    ];

    pub fn name(self) -> &'static str {
        Self::ALL.iter().find(|(_, s)| *s == self).map(|(n, _)| *n).expect("listed")
    }

    pub fn arity(self) -> usize {
        match self {
            Symbol::Lie => 2,
            Symbol::T | Symbol::TPrime | Symbol::Loop => 3,
            Symbol::D | Symbol::DPrime => 4,
            Symbol::E | Symbol::F => 5,
        }
    }
}

/// A generator reference. The position is kept for diagnostics and ignored
/// by equality.
#[derive(Debug, Clone)]
pub struct Atom {
    pub symbol: Symbol,
    pub args: Vec<usize>,
    pub at: Position,
}

impl PartialEq for Atom {
    fn eq(&self, other: &Self) -> bool {
        self.symbol == other.symbol && self.args == other.args
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = self.args.iter().map(usize::to_string).collect();
        write!(f, "{}[{}]", self.symbol.name(), args.join(","))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Ast {
    /// Nonnegative literal; signs are `Neg` nodes.
    Number(Coeff),
    Atom(Atom),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Bracket(Box<Ast>, Box<Ast>),
}

impl Ast {
    fn precedence(&self) -> u8 {
        match self {
            Ast::Add(..) | Ast::Sub(..) => 1,
            Ast::Mul(..) => 2,
            Ast::Neg(_) => 3,
            Ast::Number(_) | Ast::Atom(_) | Ast::Bracket(..) => 4,
        }
    }

    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a Atom>) {
        match self {
            Ast::Number(_) => {}
            Ast::Atom(a) => out.push(a),
            Ast::Neg(x) => x.collect_atoms(out),
            Ast::Add(x, y) | Ast::Sub(x, y) | Ast::Mul(x, y) | Ast::Bracket(x, y) => {
                x.collect_atoms(out);
                y.collect_atoms(out);
            }
        }
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, x: &Ast, min: u8) -> fmt::Result {
    if x.precedence() < min {
        write!(f, "({x})")
    } else {
        write!(f, "{x}")
    }
}

impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ast::Number(c) => write!(f, "{c}"),
            Ast::Atom(a) => write!(f, "{a}"),
            Ast::Neg(x) => {
                write!(f, "-")?;
                write_at(f, x, 3)
            }
            Ast::Add(x, y) | Ast::Sub(x, y) => {
                write_at(f, x, 1)?;
                write!(f, "{}", if matches!(self, Ast::Add(..)) { " + " } else { " - " })?;
                write_at(f, y, 2)
            }
            Ast::Mul(x, y) => {
                write_at(f, x, 2)?;
                write!(f, "*")?;
                write_at(f, y, 3)
            }
            Ast::Bracket(x, y) => write!(f, "[{x}, {y}]"),
        }
    }
}

impl FromStr for Ast {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Number(Coeff),
    Ident(String),
    Plus,
    Minus,
    Star,
    Comma,
    LBracket,
    RBracket,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Number(c) => write!(f, "number `{c}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::LBracket => write!(f, "`[`"),
            Tok::RBracket => write!(f, "`]`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Position)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut column) = (1, 1);
    let mut k = 0;
    while k < chars.len() {
        let at = Position { line, column };
        let c = chars[k];
        let start = k;
        let tok = match c {
            '\n' => {
                line += 1;
                column = 1;
                k += 1;
                continue;
            }
            c if c.is_whitespace() => {
                column += 1;
                k += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            ',' => Tok::Comma,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if c.is_ascii_digit() => {
                let mut end = k;
                while end < chars.len() && chars[end].is_ascii_digit() {
                    end += 1;
                }
                if end + 1 < chars.len() && chars[end] == '/' && chars[end + 1].is_ascii_digit() {
                    end += 1;
                    while end < chars.len() && chars[end].is_ascii_digit() {
                        end += 1;
                    }
                }
                let lit: String = chars[k..end].iter().collect();
                if lit.split('/').nth(1).is_some_and(|d| d.bytes().all(|b| b == b'0')) {
                    return Err(ParseError { at, message: format!("zero denominator in `{lit}`") });
                }
                let value =
                    Coeff::from_str(&lit).map_err(|_| ParseError { at, message: format!("invalid number `{lit}`") })?;
                k = end - 1;
                Tok::Number(value)
            }
            c if c.is_ascii_alphabetic() => {
                let mut end = k;
                while end < chars.len() && chars[end].is_ascii_alphanumeric() {
                    end += 1;
                }
                let word: String = chars[k..end].iter().collect();
                k = end - 1;
                Tok::Ident(word)
            }
            other => return Err(ParseError { at, message: format!("unexpected character `{other}`") }),
        };
        k += 1;
        column += k - start;
        out.push((tok, at));
    }
    out.push((Tok::End, Position { line, column }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Position)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn at(&self) -> Position {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, Position) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { at: self.at(), message: message.into() })
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {want}, found {}", self.peek()))
        }
    }

    fn expr(&mut self) -> Result<Ast, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = Ast::Add(Box::new(acc), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    acc = Ast::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Ast, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = Ast::Mul(Box::new(acc), Box::new(self.unary()?));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Ast, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Ast, ParseError> {
        let (tok, at) = self.bump();
        match tok {
            Tok::Number(c) => Ok(Ast::Number(c)),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::LBracket => {
                let x = self.expr()?;
                self.expect(Tok::Comma)?;
                let y = self.expr()?;
                self.expect(Tok::RBracket)?;
                Ok(Ast::Bracket(Box::new(x), Box::new(y)))
            }
            Tok::Ident(name) => self.atom(&name, at),
            other => Err(ParseError { at, message: format!("expected an operand, found {other}") }),
        }
    }

    fn atom(&mut self, name: &str, at: Position) -> Result<Ast, ParseError> {
        let Some(&(_, symbol)) = Symbol::ALL.iter().find(|(n, _)| *n == name) else {
            return Err(ParseError {
                at,
                message: format!("unknown generator family `{name}` (expected t, tp, D, Dp, E, F, e or x)"),
            });
        };
        self.expect(Tok::LBracket)?;
        let mut args = Vec::new();
        loop {
            let (tok, pos) = self.bump();
            match tok {
                Tok::Number(Coeff::Small(r)) if r.is_integer() && *r.numer() >= 0 => args.push(*r.numer() as usize),
                other => {
                    return Err(ParseError { at: pos, message: format!("expected an index, found {other}") });
                }
            }
            match self.bump() {
                (Tok::Comma, _) => {}
                (Tok::RBracket, _) => break,
                (other, pos) => {
                    return Err(ParseError { at: pos, message: format!("expected `,` or `]`, found {other}") });
                }
            }
        }
        if args.len() != symbol.arity() {
            return Err(ParseError {
                at,
                message: format!("`{name}` takes {} indices, found {}", symbol.arity(), args.len()),
            });
        }
        Ok(Ast::Atom(Atom { symbol, args, at }))
    }
}

pub fn parse(text: &str) -> Result<Ast, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let ast = p.expr()?;
    if *p.peek() != Tok::End {
        return p.error(format!("unexpected {} after expression", p.peek()));
    }
    Ok(ast)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(symbol: Symbol, args: &[usize]) -> Ast {
        Ast::Atom(Atom { symbol, args: args.to_vec(), at: Position { line: 1, column: 1 } })
    }

    #[test]
    fn bracket_of_atoms() {
        let ast = parse("[t[1,2,1], t[2,1,1]]").unwrap();
        assert_eq!(ast, Ast::Bracket(Box::new(atom(Symbol::T, &[1, 2, 1])), Box::new(atom(Symbol::T, &[2, 1, 1]))));
    }

    #[test]
    fn rational_coefficient() {
        let ast = parse("1/2*t[1,2,1]*t[1,2,1]").unwrap();
        let half = Ast::Number(Coeff::frac(1, 2));
        let t = atom(Symbol::T, &[1, 2, 1]);
        let want = Ast::Mul(Box::new(Ast::Mul(Box::new(half), Box::new(t.clone()))), Box::new(t));
        assert_eq!(ast, want);
    }

    #[test]
    fn arity_is_checked() {
        let err = parse("t[1,2]").unwrap_err();
        assert_eq!(err.at, Position { line: 1, column: 1 });
        assert!(err.message.contains("3 indices"), "{err}");
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse("t[1,2,1] +\n  q[1,1]").unwrap_err();
        assert_eq!(err.at, Position { line: 2, column: 3 });
        assert!(err.message.contains("unknown generator family"));
        let err = parse("(t[1,1,1]").unwrap_err();
        assert_eq!(err.at.column, 10);
        assert!(parse("1/0").is_err());
        assert!(parse("t[1,2,1] t[1,1,1]").is_err());
    }

    #[test]
    fn precedence_and_rendering() {
        let cases = [
            ("t[1,1,1] - (t[1,2,1] - t[2,1,1])", "t[1,1,1] - (t[1,2,1] - t[2,1,1])"),
            ("-t[1,1,1]*x[1,2,0]", "-t[1,1,1]*x[1,2,0]"),
            ("-(t[1,1,1]*t[1,1,2])", "-(t[1,1,1]*t[1,1,2])"),
            ("2*(e[1,2] + e[2,1])", "2*(e[1,2] + e[2,1])"),
            ("[D[1,1,1,2], F[2,1,1,1,1]]*3/4", "[D[1,1,1,2], F[2,1,1,1,1]]*3/4"),
        ];
        for (text, want) in cases {
            let ast = parse(text).unwrap();
            assert_eq!(ast.to_string(), want);
            assert_eq!(parse(&ast.to_string()).unwrap(), ast);
        }
    }
}
