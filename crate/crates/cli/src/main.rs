//! `ore`: guessing, term generation, solving and operator arithmetic from
//! the command line.

mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ore_algebra::arith::{RatFun, Rational};
use ore_algebra::euclid::PrsStrategy;
use ore_algebra::guessing::{guess_report, GuessOptions};
use ore_algebra::ore::{Algebra, OreAlgebra, OreKind, OrePoly};
use ore_algebra::sequences::to_decimal;
use ore_algebra::OreError;

pub struct Failure {
    pub code: u8,
    pub msg: String,
}

impl Failure {
    pub fn input(msg: impl Into<String>) -> Self {
        Failure { code: 2, msg: msg.into() }
    }
}

impl From<OreError> for Failure {
    fn from(e: OreError) -> Self {
        let code = match e {
            OreError::NoRelation(_) => 3,
            OreError::SingularIndex { .. } => 4,
            _ => 2,
        };
        Failure { code, msg: e.to_string() }
    }
}

type Res<T> = Result<T, Failure>;

#[derive(Parser)]
#[command(name = "ore", version, about = "Ore operators: guessing, terms, solving and arithmetic")]
struct Cli {
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct AlgArgs {
    /// Generator of the algebra, e.g. `Dx` or `Sn`; inferred from the operands if omitted.
    #[arg(long)]
    alg: Option<String>,
    /// Value of q for Q and J algebras.
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Guess a recurrence or differential equation for a sequence file (`-` for stdin).
    Guess {
        input: String,
        #[arg(long, value_enum, default_value = "s")]
        kind: GuessKind,
        /// Name of the variable, `n` for S and `x` for D by default.
        #[arg(long)]
        var: Option<String>,
        #[arg(long, default_value_t = 0)]
        min_order: usize,
        #[arg(long)]
        max_order: Option<usize>,
        #[arg(long, default_value_t = 0)]
        min_degree: usize,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long, default_value_t = 0)]
        ensure: usize,
        #[arg(long)]
        cut: Option<usize>,
        /// Search path as `order:degree` pairs, e.g. `1:0,2:3,4:6`.
        #[arg(long)]
        path: Option<String>,
    },
    /// First terms of the sequence defined by a recurrence and initial values.
    Terms {
        operator: String,
        /// Comma separated initial values.
        #[arg(long, allow_hyphen_values = true)]
        initial: String,
        #[arg(long)]
        count: usize,
        #[command(flatten)]
        alg: AlgArgs,
    },
    /// Term `n` of a recurrence via binary splitting.
    Bsplit {
        operator: String,
        #[arg(long, allow_hyphen_values = true)]
        initial: String,
        #[arg(long)]
        n: usize,
        /// Print a decimal expansion with this many digits instead of the exact value.
        #[arg(long)]
        digits: Option<usize>,
        #[command(flatten)]
        alg: AlgArgs,
    },
    /// Operator arithmetic, Euclidean algorithms and transformations.
    Algebra {
        #[arg(value_enum)]
        verb: Verb,
        /// Operators; for `compose` the second operand is a function of the base variable.
        #[arg(required = true, allow_hyphen_values = true)]
        operands: Vec<String>,
        /// Target variable for to-s, to-d, to-f and to-t.
        #[arg(long)]
        var: Option<String>,
        /// Remainder sequence used by gcrd.
        #[arg(long, default_value = "improved")]
        prs: String,
        #[command(flatten)]
        alg: AlgArgs,
    },
    /// Polynomial, rational or power series solutions.
    Solve {
        operator: String,
        #[arg(long, value_enum, default_value = "poly")]
        what: What,
        /// Right-hand side; repeat for several.
        #[arg(long, allow_hyphen_values = true)]
        rhs: Vec<String>,
        /// Number of series terms.
        #[arg(long, default_value_t = 10)]
        order: usize,
        #[command(flatten)]
        alg: AlgArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GuessKind {
    #[value(alias = "S")]
    S,
    #[value(alias = "D")]
    D,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Poly,
    Rational,
    Series,
}

#[derive(Clone, Copy, ValueEnum)]
enum Verb {
    Mul,
    Add,
    Gcrd,
    Lclm,
    Quorem,
    Normalize,
    ToS,
    ToD,
    ToF,
    ToT,
    Sum,
    Integral,
    Compose,
}

/// Operator text, or stdin for `-`.
fn text(arg: &str) -> Res<String> {
    if arg == "-" {
        Ok(input::read_source("-")?.trim().to_string())
    } else {
        Ok(arg.to_string())
    }
}

fn setup(arg: &str, alg: &AlgArgs) -> Res<(String, Algebra)> {
    let t = text(arg)?;
    let a = input::algebra(alg.alg.as_deref(), alg.q.as_deref(), &[&t])?;
    Ok((t, a))
}

fn rationals(v: &[Rational]) -> Value {
    v.iter().map(|x| Value::String(x.to_string())).collect()
}

fn exactly(n: usize, ops: &[OrePoly], verb: &str) -> Res<()> {
    if ops.len() == n {
        Ok(())
    } else {
        Err(Failure::input(format!("{verb} takes {n} operand(s), {} given", ops.len())))
    }
}

fn fold(ops: &[OrePoly], f: impl Fn(&OrePoly, &OrePoly) -> ore_algebra::Result<OrePoly>) -> Res<OrePoly> {
    let mut it = ops.iter();
    let first = it.next().cloned().ok_or_else(|| Failure::input("no operands"))?;
    Ok(it.try_fold(first, |acc, l| f(&acc, l))?)
}

fn algebra_cmd(verb: Verb, operands: &[String], var: Option<&str>, prs: &str, alg: &AlgArgs) -> Res<Vec<OrePoly>> {
    let texts: Vec<String> = operands.iter().map(|s| text(s)).collect::<Res<_>>()?;
    let refs: Vec<&str> = texts.iter().map(String::as_str).collect();
    let a = input::algebra(alg.alg.as_deref(), alg.q.as_deref(), &refs)?;
    if let Verb::Compose = verb {
        if texts.len() != 2 {
            return Err(Failure::input("compose takes an operator and a function"));
        }
        let l = input::operator(&texts[0], &a)?;
        let f = input::function(&texts[1], &a)?;
        let out = match a.kind() {
            OreKind::S => {
                let p = f.is_polynomial().then(|| f.num().clone()).filter(|p| p.degree().unwrap_or(0) <= 1);
                let p = p.ok_or_else(|| Failure::input("compose in a shift algebra takes `u*n + v`"))?;
                l.annihilator_of_composition_s(&p.coeff(1), &p.coeff(0))?
            }
            _ => l.annihilator_of_composition_d(&f)?,
        };
        return Ok(vec![out]);
    }
    let ops: Vec<OrePoly> = texts.iter().map(|t| input::operator(t, &a)).collect::<Res<_>>()?;
    let var = |default: &str| var.unwrap_or(default).to_string();
    let one = |ops: &[OrePoly], name: &str| -> Res<OrePoly> {
        exactly(1, ops, name)?;
        Ok(ops[0].clone())
    };
    Ok(match verb {
        Verb::Mul => vec![fold(&ops, OrePoly::try_mul)?],
        Verb::Add => vec![fold(&ops, OrePoly::try_add)?],
        Verb::Gcrd => {
            let prs: PrsStrategy = prs.parse()?;
            vec![fold(&ops, |x, y| x.gcrd_with(y, prs))?]
        }
        Verb::Lclm => vec![OrePoly::lclm_all(&ops)?],
        Verb::Quorem => {
            exactly(2, &ops, "quorem")?;
            let (q, r) = ops[0].quo_rem(&ops[1])?;
            vec![q, r]
        }
        Verb::Normalize => vec![one(&ops, "normalize")?.normalize()],
        Verb::ToS => vec![one(&ops, "to-s")?.to_s(&var("n"))?],
        Verb::ToD => vec![one(&ops, "to-d")?.to_d(&var("x"))?],
        Verb::ToF => vec![one(&ops, "to-f")?.to_f(&var("n"))?],
        Verb::ToT => vec![one(&ops, "to-t")?.to_t(&var("x"))?],
        Verb::Sum => vec![one(&ops, "sum")?.annihilator_of_sum()?],
        Verb::Integral => vec![one(&ops, "integral")?.annihilator_of_integral()?],
        Verb::Compose => unreachable!(),
    })
}

fn parse_path(s: &str) -> Res<Vec<(usize, usize)>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (r, d) = p.split_once(':').ok_or_else(|| Failure::input(format!("path point `{p}` is not order:degree")))?;
            let num = |x: &str| x.trim().parse::<usize>().map_err(|_| Failure::input(format!("bad path point `{p}`")));
            Ok((num(r)?, num(d)?))
        })
        .collect()
}

fn run(cli: Cli, out: &mut impl Write) -> Res<()> {
    let json = cli.json;
    let mut emit = |plain: Vec<String>, value: Value| -> Res<()> {
        let res = if json {
            writeln!(out, "{value}")
        } else {
            plain.iter().try_for_each(|l| writeln!(out, "{l}"))
        };
        res.map_err(|e| Failure::input(e.to_string()))
    };
    match cli.cmd {
        Cmd::Guess { input, kind, var, min_order, max_order, min_degree, max_degree, ensure, cut, path } => {
            let data = input::parse_sequence(&input::read_source(&input)?)?;
            if data.is_empty() {
                return Err(Failure::input("no data"));
            }
            let (kind, default) = match kind {
                GuessKind::S => (OreKind::S, "n"),
                GuessKind::D => (OreKind::D, "x"),
            };
            let alg = OreAlgebra::standard(var.as_deref().unwrap_or(default), kind);
            let opts = GuessOptions {
                path: path.as_deref().map(parse_path).transpose()?,
                min_order,
                max_order,
                min_degree,
                max_degree,
                ensure,
                cut,
            };
            let g = guess_report(&data, &alg, &opts)?;
            let l = &g.operator;
            emit(
                vec![l.to_string()],
                json!({
                    "operator": l.to_string(),
                    "order": l.order(),
                    "degree": l.degree(),
                    "found_at": [g.found_at.0, g.found_at.1],
                    "point": [g.point.0, g.point.1],
                    "margin": g.margin,
                }),
            )
        }
        Cmd::Terms { operator, initial, count, alg } => {
            let (t, a) = setup(&operator, &alg)?;
            let l = input::operator(&t, &a)?;
            let terms = l.to_list(&input::parse_rational_list(&initial)?, count)?;
            emit(terms.iter().map(ToString::to_string).collect(), json!({ "terms": rationals(&terms) }))
        }
        Cmd::Bsplit { operator, initial, n, digits, alg } => {
            let (t, a) = setup(&operator, &alg)?;
            let l = input::operator(&t, &a)?;
            let initial = input::parse_rational_list(&initial)?;
            let r = l.order().unwrap_or(0);
            if initial.len() < r.max(1) {
                return Err(Failure::input(format!("{} initial values needed", r.max(1))));
            }
            let value = if r == 0 {
                Rational::from_integer(0.into())
            } else {
                let m = l.forward_matrix_bsplit(n)?;
                m.apply(&initial[..r])[0].clone()
            };
            let shown = match digits {
                Some(d) => to_decimal(&value, d),
                None => value.to_string(),
            };
            emit(vec![shown.clone()], json!({ "n": n, "value": shown }))
        }
        Cmd::Algebra { verb, operands, var, prs, alg } => {
            let res = algebra_cmd(verb, &operands, var.as_deref(), &prs, &alg)?;
            let lines: Vec<String> = res.iter().map(ToString::to_string).collect();
            let value = json!({ "operators": lines });
            emit(lines, value)
        }
        Cmd::Solve { operator, what, rhs, order, alg } => {
            let (t, a) = setup(&operator, &alg)?;
            let l = input::operator(&t, &a)?;
            let var = a.base_var().to_string();
            if let What::Series = what {
                if !rhs.is_empty() {
                    return Err(Failure::input("series solutions take no right-hand side"));
                }
                let sols = l.power_series_solutions(order)?;
                let lines: Vec<String> = sols.iter().map(|s| s.render(&var)).collect();
                let value = json!({ "solutions": lines });
                return emit(lines, value);
            }
            let rhs: Vec<RatFun<Rational>> = rhs.iter().map(|f| input::function(f, &a)).collect::<Res<_>>()?;
            let sols = match what {
                What::Poly => l.polynomial_solutions(&rhs)?,
                _ => l.rational_solutions(&rhs)?,
            };
            let mut lines = Vec::new();
            let mut values = Vec::new();
            for s in &sols {
                let g = s.g.render(&var);
                let c: Vec<String> = s.c.iter().map(ToString::to_string).collect();
                lines.push(if c.is_empty() { g.clone() } else { format!("{g} ; {}", c.join(", ")) });
                values.push(json!({ "g": g, "c": c }));
            }
            emit(lines, json!({ "solutions": values }))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = std::io::stdout().lock();
    match run(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let _ = out.flush();
            eprintln!("ore: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
