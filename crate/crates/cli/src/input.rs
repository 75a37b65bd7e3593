use std::io::Read;

use ore_algebra::arith::{RatFun, Rational};
use ore_algebra::ore::{Algebra, AlgebraSpec, OreKind, OrePoly};
use ore_algebra::OreError;

use crate::Failure;

/// Reads a file, or stdin for `-`.
pub fn read_source(path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure::input(format!("{path}: {e}")))?;
    Ok(text)
}

/// Rationals separated by newlines, commas or whitespace; `#` starts a comment.
pub fn parse_sequence(text: &str) -> Result<Vec<Rational>, Failure> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        for tok in line.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            out.push(parse_rational(tok).map_err(|e| Failure::input(format!("line {}: {}", lineno + 1, e.msg)))?);
        }
    }
    Ok(out)
}

pub fn parse_rational(tok: &str) -> Result<Rational, Failure> {
    let tok = tok.trim();
    let tok = tok.strip_prefix('+').unwrap_or(tok);
    tok.parse::<Rational>()
        .map_err(|_| Failure::input(format!("`{tok}` is not a rational number")))
}

pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>, Failure> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(parse_rational).collect()
}

fn identifiers(text: &str) -> impl Iterator<Item = &str> {
    text.split(|c: char| !(c.is_alphanumeric() || c == '_'))
        .filter(|t| t.chars().next().is_some_and(|c| c.is_alphabetic()))
}

/// The algebra named by `gen` (e.g. `Dx`), or the first generator-like
/// identifier found in `texts`.
pub fn algebra(gen: Option<&str>, q: Option<&str>, texts: &[&str]) -> Result<Algebra, Failure> {
    let gen = match gen {
        Some(g) => g.to_string(),
        None => texts
            .iter()
            .flat_map(|t| identifiers(t))
            .find(|id| id.len() > 1 && id.chars().next().and_then(OreKind::from_prefix).is_some())
            .map(str::to_string)
            .ok_or_else(|| Failure::input("cannot infer the algebra; pass --alg, e.g. --alg Dx"))?,
    };
    let mut chars = gen.chars();
    let kind = chars
        .next()
        .and_then(OreKind::from_prefix)
        .filter(|k| *k != OreKind::Custom)
        .ok_or_else(|| Failure::input(format!("`{gen}` does not name a generator")))?;
    let base: String = chars.collect();
    let mut spec = AlgebraSpec::new(&base, &gen, kind);
    if kind.is_q_kind() {
        let q = q.ok_or_else(|| Failure::input(format!("{gen} needs --q")))?;
        spec = spec.q(parse_rational(q)?);
    }
    Ok(spec.build()?)
}

/// Parses over polynomial coefficients when possible, else over fractions.
pub fn operator(text: &str, alg: &Algebra) -> Result<OrePoly, Failure> {
    let l = ore_algebra::ore::parse(text, &alg.over_fractions())?;
    Ok(l.convert(alg).unwrap_or(l))
}

/// A rational function of the base variable.
pub fn function(text: &str, alg: &Algebra) -> Result<RatFun<Rational>, Failure> {
    let l = operator(text, alg)?;
    match l.order() {
        None => Ok(RatFun::zero()),
        Some(0) => Ok(l.coeff(0)),
        Some(_) => Err(OreError::Domain(format!("`{text}` is not a function of {}", alg.base_var())).into()),
    }
}
