//! Text syntax for finitely described points.
//!
//! Expressions (whitespace separated; `-` is the empty word):
//!
//! ```text
//! periodic <transient> (<period>)          10 (0)      = 1 0 0 0 ...
//! sched <transient> [<tokens>]             - [1 0^n]   = 1 0 1 0^2 1 0^3 ...
//! two [<left tokens>] <center> [<right tokens>]
//! ```
//!
//! Tokens are literal words (`101`) or parameterised runs: `0^4`, `0^n`,
//! `0^{2n+1}`. Left tokens describe stage n of the left tail in reading
//! order; the whole left word is `... W2 W1 <center>`.

use limset::error::{Error, Result};
use limset::symbolic::{Alphabet, Growth, LeftTail, Ray, SeqPoint, Template, TwoSidedPoint, Word};
use std::sync::Arc;

fn parse_word(ab: &Alphabet, s: &str) -> Result<Word> {
    if s == "-" {
        Ok(Word::empty())
    } else {
        ab.parse_word(s)
    }
}

fn parse_growth(s: &str) -> Result<Growth> {
    let bad = || Error::Invalid(format!("bad run exponent `{s}`"));
    let s = s.trim_start_matches('{').trim_end_matches('}');
    if let Ok(b) = s.parse::<u64>() {
        return Ok(Growth {
            per_stage: 0,
            base: b,
        });
    }
    let (head, base) = match s.split_once('+') {
        Some((h, b)) => (h, b.parse::<u64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    if !head.ends_with('n') {
        return Err(bad());
    }
    let coeff = &head[..head.len() - 1];
    let per_stage = if coeff.is_empty() {
        1
    } else {
        coeff.parse::<u64>().map_err(|_| bad())?
    };
    Ok(Growth { per_stage, base })
}

fn parse_token(ab: &Alphabet, tok: &str) -> Result<Template> {
    match tok.split_once('^') {
        None => Ok(Template::Lit(ab.parse_word(tok)?)),
        Some((sym, exp)) => {
            let w = ab.parse_word(sym)?;
            if w.len() != 1 {
                return Err(Error::Invalid(format!(
                    "run base `{sym}` must be one symbol"
                )));
            }
            Ok(Template::Run {
                sym: w.symbols()[0],
                len: parse_growth(exp)?,
            })
        }
    }
}

fn parse_bracketed(ab: &Alphabet, toks: &[&str]) -> Result<Vec<Template>> {
    if toks.len() < 2 || !toks[0].starts_with('[') || !toks[toks.len() - 1].ends_with(']') {
        return Err(Error::Invalid("expected a [ ... ] stage template".into()));
    }
    let mut inner: Vec<String> = toks.iter().map(|s| s.to_string()).collect();
    inner[0] = inner[0][1..].to_string();
    let last = inner.len() - 1;
    inner[last] = inner[last][..inner[last].len() - 1].to_string();
    inner
        .iter()
        .filter(|s| !s.is_empty())
        .map(|s| parse_token(ab, s))
        .collect()
}

fn split_brackets<'a>(toks: &'a [&'a str]) -> Result<(usize, usize)> {
    // span of the first [ ... ] group
    let open = toks
        .iter()
        .position(|t| t.starts_with('['))
        .ok_or_else(|| Error::Invalid("expected a [ ... ] stage template".into()))?;
    let close = toks
        .iter()
        .position(|t| t.ends_with(']'))
        .ok_or_else(|| Error::Invalid("unclosed stage template".into()))?;
    if close < open {
        return Err(Error::Invalid("malformed stage template".into()));
    }
    Ok((open, close))
}

/// Parse a left-tail description: the same `periodic`/`sched` forms, read
/// as the backward coordinate stream (stages march leftward, the transient
/// sits at the recent end).
pub fn parse_left_tail(ab: &Arc<Alphabet>, text: &str) -> Result<LeftTail> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    match toks.first() {
        Some(&"periodic") => {
            if toks.len() != 3 || !toks[2].starts_with('(') || !toks[2].ends_with(')') {
                return Err(Error::Invalid(
                    "usage: periodic <transient> (<period>)".into(),
                ));
            }
            let transient = parse_word(ab, toks[1])?;
            let period = parse_word(ab, &toks[2][1..toks[2].len() - 1])?;
            LeftTail::periodic(period, transient)
        }
        Some(&"sched") => {
            let transient = parse_word(ab, toks.get(1).copied().unwrap_or("-"))?;
            let stages = parse_bracketed(ab, &toks[2..])?;
            LeftTail::scheduled(stages, transient)
        }
        _ => Err(Error::Invalid(format!(
            "unknown left-tail expression `{text}`; expected periodic/sched"
        ))),
    }
}

/// A parsed point of either sidedness.
pub enum PointExpr {
    OneSided(SeqPoint),
    TwoSided(TwoSidedPoint),
}

pub fn parse_point(ab: &Arc<Alphabet>, text: &str) -> Result<PointExpr> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    match toks.first() {
        Some(&"periodic") => {
            if toks.len() != 3 || !toks[2].starts_with('(') || !toks[2].ends_with(')') {
                return Err(Error::Invalid(
                    "usage: periodic <transient> (<period>)".into(),
                ));
            }
            let transient = parse_word(ab, toks[1])?;
            let period = parse_word(ab, &toks[2][1..toks[2].len() - 1])?;
            Ok(PointExpr::OneSided(SeqPoint::periodic(transient, period)?))
        }
        Some(&"sched") => {
            let transient = parse_word(ab, toks.get(1).copied().unwrap_or("-"))?;
            let stages = parse_bracketed(ab, &toks[2..])?;
            Ok(PointExpr::OneSided(SeqPoint::scheduled(transient, stages)?))
        }
        Some(&"two") => {
            let rest = &toks[1..];
            let (lo, lc) = split_brackets(rest)?;
            if lo != 0 {
                return Err(Error::Invalid("usage: two [left] <center> [right]".into()));
            }
            let left_stages = parse_bracketed(ab, &rest[lo..=lc])?;
            let center = parse_word(
                ab,
                rest.get(lc + 1)
                    .copied()
                    .ok_or_else(|| Error::Invalid("missing center word".into()))?,
            )?;
            let right = &rest[lc + 2..];
            let point = if right.first().is_some_and(|t| t.starts_with('(')) {
                // periodic right tail: ( period )
                let joined = right.join(" ");
                let inner = joined.trim_start_matches('(').trim_end_matches(')').trim();
                let ray = Ray::periodic(Word::empty(), parse_word(ab, inner)?)?;
                TwoSidedPoint::new(
                    LeftTail::scheduled(left_stages, Word::empty())?,
                    center,
                    ray,
                )
            } else {
                let right_stages = parse_bracketed(ab, right)?;
                TwoSidedPoint::new(
                    LeftTail::scheduled(left_stages, Word::empty())?,
                    center,
                    Ray::staged(Word::empty(), right_stages)?,
                )
            };
            Ok(PointExpr::TwoSided(point))
        }
        _ => Err(Error::Invalid(format!(
            "unknown point expression `{text}`; expected periodic/sched/two"
        ))),
    }
}

/// Parse a point library: lines `name = <expr>`, `#` comments.
pub fn parse_library(ab: &Arc<Alphabet>, text: &str) -> Result<Vec<(String, PointExpr)>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (name, expr) = line.split_once('=').ok_or(Error::Parse {
            line: idx + 1,
            msg: "expected `name = expression`".into(),
        })?;
        let point = parse_point(ab, expr.trim()).map_err(|e| Error::Parse {
            line: idx + 1,
            msg: e.to_string(),
        })?;
        out.push((name.trim().to_string(), point));
    }
    Ok(out)
}
