//! Command-line front end for the `superyangian` engine.

pub mod eval;
pub mod parse;

use std::ffi::OsString;
use std::io::Write;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use superyangian::presentation::{pbw_audit, verify, InstanceRecord, Summary};
use superyangian::{
    decompose, AlgebraElement, Block, Composition, Generator, Image, Morphism, MorphismKind, RelationId,
    YangianContext, ZeroOneSequence,
};

use crate::eval::Evaluator;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILED: i32 = 2;

const SCHEMA: &str = "1";

fn verdict(passed: bool) -> i32 {
    if passed {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

const GRAMMAR: &str = "\
Expressions:
  atoms      t[i,j,r]  tp[i,j,r]  D[a,i,j,r]  Dp[a,i,j,r]
             E[a,b,i,j,r] (a < b)  F[b,a,i,j,r] (b > a)  e[i,j]  x[i,j,r]
  operators  x*y  x + y  x - y  -x  [x, y] (supercommutator)  ( )
  numbers    p or p/q
tp is a coefficient of T(u)^{-1}; D, Dp, E, F are Gauss coefficients for --mu.
t, tp, D, Dp, E and F evaluate in the super Yangian, e in U(gl), x in U(gl[x]).

Exit status: 0 success, 1 usage or input error, 2 verification failure.";

#[derive(Parser, Debug)]
#[command(name = "superyangian", version, about = "Exact computation in super Yangians of gl(M|N)", after_help = GRAMMAR)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// 01-sequence fixing the parity of each index, e.g. 0101.
    #[arg(long, global = true)]
    seq: Option<String>,
    /// Composition of M+N into block sizes, e.g. 1,2,1.
    #[arg(long, global = true)]
    mu: Option<String>,
    /// Largest series index used for truncated series.
    #[arg(long, global = true)]
    cap: Option<u8>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for instance evaluation.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed recorded in JSON output. Every command is deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normal form of an expression.
    Normalize { expr: String },
    /// Table of Gauss coefficients of T(u) for --mu up to --cap.
    Gauss,
    /// Image of an expression under one of the standard maps.
    Morphism {
        #[arg(long, value_parser = ["rho", "omega", "zeta", "phi", "psi", "ev", "delta"])]
        apply: String,
        /// For phi and psi: the prefix sequence, as `p,q` (standard prefix
        /// 0^p 1^q), `p,q,digits`, or just `digits`.
        #[arg(long)]
        params: Option<String>,
        expr: String,
    },
    /// Checks the parabolic relations under the Gauss map.
    Verify {
        /// Comma-separated relation ids, or `all`.
        #[arg(long, default_value = "all")]
        relations: String,
        /// Largest degree (or series window) enumerated.
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
    /// Associated-graded audit of ordered supermonomials in the parabolic generators.
    PbwAudit {
        /// Largest total loop degree of a supermonomial.
        #[arg(long, default_value_t = 1)]
        max_degree: usize,
        /// Largest number of factors in a supermonomial.
        #[arg(long, default_value_t = 3)]
        max_length: usize,
    },
}

/// Runs one invocation and returns its exit status. Output goes to `out`,
/// diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind::{DisplayHelp, DisplayVersion};
            let rendered = e.render().to_string();
            return if matches!(e.kind(), DisplayHelp | DisplayVersion) {
                let _ = write!(out, "{rendered}");
                EXIT_OK
            } else {
                let _ = write!(err, "{rendered}");
                EXIT_USAGE
            };
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: &Cli, out: &mut (dyn Write + Send)) -> Result<i32> {
    let c = &cli.common;
    let seq: ZeroOneSequence = c.seq.as_deref().ok_or_else(|| anyhow!("--seq is required"))?.parse()?;
    let mu = c.mu.as_deref().map(|m| Composition::parse(seq.clone(), m)).transpose()?;
    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(k) = c.jobs {
            if k == 0 {
                bail!("--jobs must be at least 1");
            }
            b = b.num_threads(k);
        }
        b.build().context("starting worker threads")?
    };
    pool.install(|| match &cli.command {
        Command::Normalize { expr } => normalize(c, &seq, mu.as_ref(), expr, out),
        Command::Gauss => gauss(c, &seq, mu.as_ref(), out),
        Command::Morphism { apply, params, expr } => {
            morphism(c, &seq, mu.as_ref(), apply, params.as_deref(), expr, out)
        }
        Command::Verify { relations, max_degree } => run_verify(c, &seq, mu, relations, *max_degree, out),
        Command::PbwAudit { max_degree, max_length } => run_pbw(c, &seq, mu, *max_degree, *max_length, out),
    })
}

fn header(c: &Common, command: &str, seq: &ZeroOneSequence) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("command".into(), json!(command));
    m.insert("seq".into(), json!(seq.to_string()));
    m.insert("seed".into(), json!(c.seed));
    m
}

fn emit(out: &mut (dyn Write + Send), value: &Map<String, Value>) -> Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn parse_expr(text: &str) -> Result<parse::Ast> {
    parse::parse(text).map_err(|e| anyhow!("cannot parse expression: {e}"))
}

fn normalize(
    c: &Common,
    seq: &ZeroOneSequence,
    mu: Option<&Composition>,
    text: &str,
    out: &mut (dyn Write + Send),
) -> Result<i32> {
    let ast = parse_expr(text)?;
    let value = Evaluator::new(&ast, seq, mu, c.cap)?.eval(&ast)?;
    match c.format {
        Format::Text => writeln!(out, "{value}")?,
        Format::Json => {
            let mut m = header(c, "normalize", seq);
            m.insert("input".into(), json!(ast.to_string()));
            m.insert("result".into(), json!(value.to_string()));
            emit(out, &m)?;
        }
    }
    Ok(EXIT_OK)
}

fn gauss(c: &Common, seq: &ZeroOneSequence, mu: Option<&Composition>, out: &mut (dyn Write + Send)) -> Result<i32> {
    let mu = mu.cloned().unwrap_or_else(|| Composition::trivial(seq.clone()));
    let cap = c.cap.ok_or_else(|| anyhow!("gauss needs --cap"))?;
    let ctx = YangianContext::new(seq.clone());
    let factors = decompose(&ctx, &mu, cap)?;
    let rows: Vec<(String, AlgebraElement)> = factors
        .table()
        .into_iter()
        .map(|(block, i, j, r, value)| {
            let symbol = match block {
                Block::D(a) => Generator::d(&mu, a, i, j, r),
                Block::DPrime(a) => Generator::dp(&mu, a, i, j, r),
                Block::E(a, b) => Generator::e_block(&mu, a, b, i, j, r),
                Block::F(b, a) => Generator::f_block(&mu, b, a, i, j, r),
            };
            (symbol.to_string(), value)
        })
        .collect();
    match c.format {
        Format::Text => {
            for (symbol, value) in &rows {
                writeln!(out, "{symbol} = {value}")?;
            }
        }
        Format::Json => {
            let mut m = header(c, "gauss", seq);
            m.insert("mu".into(), json!(mu.parts_string()));
            m.insert("cap".into(), json!(cap));
            let entries: Vec<Value> =
                rows.iter().map(|(s, v)| json!({ "symbol": s, "value": v.to_string() })).collect();
            m.insert("entries".into(), Value::Array(entries));
            emit(out, &m)?;
        }
    }
    Ok(EXIT_OK)
}

/// Prefix sequence for `φ`/`ψ` from `p,q`, `p,q,digits` or `digits`.
fn prefix(params: Option<&str>) -> Result<ZeroOneSequence> {
    let text = params.ok_or_else(|| anyhow!("phi and psi need --params"))?;
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let sized = |p: &str, q: &str| -> Result<ZeroOneSequence> {
        let (p, q): (usize, usize) = (p.parse()?, q.parse()?);
        Ok(ZeroOneSequence::standard(p, q)?)
    };
    match parts.as_slice() {
        [digits] => Ok(digits.parse()?),
        [p, q] => sized(p, q),
        [p, q, digits] => {
            let s: ZeroOneSequence = digits.parse()?;
            let std = sized(p, q)?;
            if (s.m(), s.n()) != (std.m(), std.n()) {
                bail!("prefix {s} does not have {} zeros and {} ones", std.m(), std.n());
            }
            Ok(s)
        }
        _ => bail!("--params expects p,q, p,q,digits or digits"),
    }
}

fn morphism(
    c: &Common,
    seq: &ZeroOneSequence,
    mu: Option<&Composition>,
    apply: &str,
    params: Option<&str>,
    text: &str,
    out: &mut (dyn Write + Send),
) -> Result<i32> {
    let ast = parse_expr(text)?;
    let ev = Evaluator::new(&ast, seq, mu, c.cap)?;
    let source = ev.yangian().ok_or_else(|| anyhow!("morphisms act on t-alphabet expressions"))?.clone();
    let value = ev.eval(&ast)?;
    let top = value.terms().flat_map(|(w, _)| w.iter().map(|g| g.r)).max().unwrap_or(1);
    let cap = c.cap.unwrap_or(top.max(1));
    let kind: MorphismKind = apply.parse()?;
    let map = match kind {
        MorphismKind::Rho => Morphism::rho(&source),
        MorphismKind::Omega => Morphism::omega(&source, cap),
        MorphismKind::Zeta => Morphism::zeta(&source, cap),
        MorphismKind::Phi => Morphism::phi(&source, &prefix(params)?),
        MorphismKind::Psi => Morphism::psi(&source, &prefix(params)?, cap),
        MorphismKind::Ev => Morphism::ev(&source),
        MorphismKind::Delta => Morphism::delta(&source),
    };
    let target = match map.target() {
        superyangian::morphisms::Target::Yangian(y) => y.seq().to_string(),
        superyangian::morphisms::Target::Lie(_) => format!("gl({seq})"),
        superyangian::morphisms::Target::TensorSquare(_) => format!("{seq} (x) {seq}"),
    };
    let image = map.apply(&value)?;
    let rendered = match &image {
        Image::Element(e) => e.to_string(),
        Image::Tensor(t) => t.to_string(),
    };
    match c.format {
        Format::Text => writeln!(out, "{rendered}")?,
        Format::Json => {
            let mut m = header(c, "morphism", seq);
            m.insert("map".into(), json!(apply));
            m.insert("target".into(), json!(target));
            m.insert("input".into(), json!(ast.to_string()));
            m.insert("result".into(), json!(rendered));
            emit(out, &m)?;
        }
    }
    Ok(EXIT_OK)
}

fn record_line(rec: &InstanceRecord) -> String {
    let mut line = rec.relation.clone();
    for (k, v) in rec.indices.iter().chain(&rec.degrees) {
        line.push_str(&format!(" {k}={v}"));
    }
    if let Some(w) = rec.window {
        line.push_str(&format!(" window={w}"));
    }
    match &rec.residual {
        None => line.push_str(" ok"),
        Some(r) => line.push_str(&format!(" FAIL residual {r}")),
    }
    line
}

fn summary_text(s: &Summary, out: &mut (dyn Write + Send)) -> Result<()> {
    for (id, t) in &s.relations {
        match &t.skipped {
            Some(why) => writeln!(out, "{id}: skipped ({why})")?,
            None => writeln!(out, "{id}: {} instances, {} failures", t.instances, t.failures)?,
        }
    }
    writeln!(
        out,
        "summary: seq {} mu {} max degree {} cap {}: {} instances, {} failures",
        s.seq, s.mu, s.max_degree, s.cap, s.instances, s.failures
    )?;
    Ok(())
}

fn run_verify(
    c: &Common,
    seq: &ZeroOneSequence,
    mu: Option<Composition>,
    relations: &str,
    max_degree: usize,
    out: &mut (dyn Write + Send),
) -> Result<i32> {
    let mu = mu.unwrap_or_else(|| Composition::trivial(seq.clone()));
    let ids = RelationId::parse_list(relations)?;
    let ctx = YangianContext::new(seq.clone());
    let mut write_error = None;
    let summary = verify(&ctx, &mu, &ids, max_degree, |rec| {
        if write_error.is_some() {
            return;
        }
        let res = match c.format {
            Format::Text => writeln!(out, "{}", record_line(rec)).map_err(anyhow::Error::from),
            Format::Json => {
                let mut m = Map::new();
                m.insert("schema".into(), json!(SCHEMA));
                m.insert("kind".into(), json!("instance"));
                if let Value::Object(fields) = serde_json::to_value(rec).expect("records serialize") {
                    m.extend(fields);
                }
                emit(out, &m)
            }
        };
        write_error = res.err();
    })?;
    if let Some(e) = write_error {
        return Err(e);
    }
    match c.format {
        Format::Text => summary_text(&summary, out)?,
        Format::Json => {
            let mut m = header(c, "verify", seq);
            m.insert("kind".into(), json!("summary"));
            if let Value::Object(fields) = serde_json::to_value(&summary)? {
                m.extend(fields);
            }
            emit(out, &m)?;
        }
    }
    Ok(verdict(summary.passed()))
}

fn run_pbw(
    c: &Common,
    seq: &ZeroOneSequence,
    mu: Option<Composition>,
    max_degree: usize,
    max_length: usize,
    out: &mut (dyn Write + Send),
) -> Result<i32> {
    let mu = mu.unwrap_or_else(|| Composition::trivial(seq.clone()));
    let ctx = YangianContext::new(seq.clone());
    let report = pbw_audit(&ctx, &mu, max_degree, max_length)?;
    match c.format {
        Format::Text => {
            writeln!(out, "configuration {}", report.config)?;
            writeln!(out, "loop degree <= {}, length <= {}", report.degree_bound, report.max_length)?;
            writeln!(out, "parabolic generators: {}", report.generators)?;
            writeln!(out, "supermonomials: {}", report.supermonomials)?;
            writeln!(out, "loop-algebra supermonomials: {}", report.loop_monomials)?;
            writeln!(out, "gr mismatches: {}", report.mismatches)?;
            writeln!(out, "repeated leading words: {}", report.duplicate_leading)?;
            if let Some(issue) = &report.first_issue {
                writeln!(out, "first issue: {issue}")?;
            }
            writeln!(out, "{}", if report.passed() { "PASS" } else { "FAIL" })?;
        }
        Format::Json => {
            let mut m = header(c, "pbw-audit", seq);
            m.insert("passed".into(), json!(report.passed()));
            if let Value::Object(fields) = serde_json::to_value(&report)? {
                m.extend(fields);
            }
            emit(out, &m)?;
        }
    }
    Ok(verdict(report.passed()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn invoke(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("superyangian").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn exit_codes() {
        assert_eq!(verdict(true), EXIT_OK);
        assert_eq!(verdict(false), EXIT_FAILED);
        assert_eq!(invoke(&["normalize", "--seq", "01", "t[1,1,1]*t[1,1,1]"]).0, EXIT_OK);
        let (code, _, err) = invoke(&["normalize", "--seq", "01", "--jobs", "0", "1"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("--jobs"));
    }

    #[test]
    fn prefix_params() {
        assert_eq!(prefix(Some("2,1")).unwrap().to_string(), "001");
        assert_eq!(prefix(Some("1,1,10")).unwrap().to_string(), "10");
        assert_eq!(prefix(Some("0110")).unwrap().to_string(), "0110");
        assert!(prefix(Some("1,1,00")).is_err());
        assert!(prefix(None).is_err());
    }
}
