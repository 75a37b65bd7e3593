//! Three library operations exported to JavaScript. Errors come back as
//! strings so the page can show them verbatim.

use wasm_bindgen::prelude::*;

use ore_algebra::arith::Rational;
use ore_algebra::guessing::{guess_report, GuessOptions};
use ore_algebra::ore::{parse, Algebra, OreAlgebra, OreKind, OrePoly};

fn rationals(text: &str) -> Result<Vec<Rational>, String> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<Rational>().map_err(|_| format!("`{t}` is not a rational number")))
        .collect()
}

fn algebra_of(text: &str) -> Result<Algebra, String> {
    let gen = text
        .split(|c: char| !c.is_alphanumeric())
        .find(|t| t.len() > 1 && t.starts_with(['D', 'S', 'T', 'F']))
        .ok_or("no generator such as Dx or Sn in the input")?;
    OreAlgebra::from_gen_name(gen, ore_algebra::ore::CoeffDomain::Poly).map_err(|e| e.to_string())
}

fn operator(text: &str, alg: &Algebra) -> Result<OrePoly, String> {
    let l = parse(text, &alg.over_fractions()).map_err(|e| e.to_string())?;
    Ok(l.convert(alg).unwrap_or(l))
}

/// Guesses an operator of kind `S` or `D` for comma or space separated data.
#[wasm_bindgen]
pub fn guess(data: &str, kind: &str) -> Result<String, String> {
    let data = rationals(data)?;
    let alg = match kind {
        "S" => OreAlgebra::shift("n"),
        "D" => OreAlgebra::differential("x"),
        _ => return Err(format!("unknown kind `{kind}`")),
    };
    let g = guess_report(&data, &alg, &GuessOptions::default()).map_err(|e| e.to_string())?;
    Ok(format!("{}\n(order {}, margin {})", g.operator, g.operator.order().unwrap_or(0), g.margin))
}

/// The first `count` terms of a recurrence, one per line.
#[wasm_bindgen]
pub fn terms(operator_text: &str, initial: &str, count: usize) -> Result<String, String> {
    let alg = algebra_of(operator_text)?;
    if alg.kind() != OreKind::S {
        return Err("terms needs a recurrence in a shift algebra".into());
    }
    let l = operator(operator_text, &alg)?;
    let list = l.to_list(&rationals(initial)?, count).map_err(|e| e.to_string())?;
    Ok(list.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n"))
}

/// `mul`, `lclm` or `gcrd` of two operators in the same algebra.
#[wasm_bindgen]
pub fn algebra(verb: &str, a: &str, b: &str) -> Result<String, String> {
    let alg = algebra_of(&format!("{a} {b}"))?;
    let (a, b) = (operator(a, &alg)?, operator(b, &alg)?);
    let out = match verb {
        "mul" => a.try_mul(&b),
        "lclm" => a.lclm(&b),
        "gcrd" => a.gcrd(&b),
        _ => return Err(format!("unknown operation `{verb}`")),
    };
    out.map(|l| l.to_string()).map_err(|e| e.to_string())
}
