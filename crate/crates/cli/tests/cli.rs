use std::io::Write;
use std::process::{Command, Output, Stdio};

use ore_algebra::arith::Rational;
use ore_algebra::ore::{parse, OreAlgebra, Series};

fn ore(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ore"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str]) -> Vec<String> {
    let out = ore(args, "");
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().lines().map(str::to_string).collect()
}

fn code(args: &[&str], stdin: &str) -> i32 {
    ore(args, stdin).status.code().unwrap()
}

const FIB: &str = "# fibonacci\n0, 1, 1\n2 3 5\n8\n13\n21\n34\n55\n";

#[test]
fn guess_fibonacci_from_stdin() {
    let out = ore(&["guess", "--kind", "S", "-"], FIB);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let alg = OreAlgebra::shift("n");
    assert_eq!(parse(text.trim(), &alg).unwrap(), parse("Sn^2 - Sn - 1", &alg).unwrap());
}

#[test]
fn guess_differential_passes_series_check() {
    let path = std::env::temp_dir().join(format!("ore-fib-{}.txt", std::process::id()));
    std::fs::write(&path, FIB).unwrap();
    let lines = ok(&["guess", "--kind", "D", "--max-order", "2", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    let alg = OreAlgebra::differential("x");
    let m = parse(&lines[0], &alg).unwrap();
    assert_eq!(m.order(), Some(1));
    let f = parse("x/(1-x-x^2)", &alg.over_fractions()).unwrap().coeff(0);
    assert!(m.apply_series(&Series::from_ratfun(&f, 31).unwrap()).unwrap().is_zero());
}

#[test]
fn guess_json_report() {
    let out = ore(&["--json", "guess", "-"], FIB);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["operator"], "Sn^2 - Sn - 1");
    assert_eq!(v["order"], 2);
    assert!(v["margin"].as_i64().unwrap() > 0);
}

#[test]
fn guess_exit_codes() {
    assert_eq!(code(&["guess", "-"], ""), 2);
    assert_eq!(code(&["guess", "-"], "1 2 x"), 2);
    assert_eq!(code(&["guess", "-"], "1 5 2 7 1 9 3 3 8 1"), 3);
    assert_eq!(code(&["guess", "-"], "0 0 0 0 0"), 3);
}

#[test]
fn terms_of_partial_sums() {
    let lines = ok(&["terms", "(n+2)*Sn^2 - (n+3)*Sn + 1", "--initial", "1,2", "--count", "8"]);
    assert_eq!(lines, ["1", "2", "5/2", "8/3", "65/24", "163/60", "1957/720", "685/252"]);
    assert!(ok(&["terms", "Sn - 1", "--initial", "1", "--count", "0"]).is_empty());
}

#[test]
fn singular_index_exits_4() {
    let out = ore(&["terms", "(n-3)*Sn - 1", "--initial", "1", "--count", "8"], "");
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("index 3"));
    assert_eq!(code(&["bsplit", "(n-3)*Sn - 1", "--initial", "1", "--n", "8"], ""), 4);
}

#[test]
fn bsplit_fibonacci_and_digits() {
    assert_eq!(ok(&["bsplit", "Sn^2 - Sn - 1", "--initial", "0,1", "--n", "50"]), ["12586269025"]);
    let e = ok(&["bsplit", "(n+2)*Sn^2 - (n+3)*Sn + 1", "--initial", "1,2", "--n", "100", "--digits", "30"]);
    assert_eq!(e, ["2.718281828459045235360287471353"]);
}

#[test]
fn algebra_verbs() {
    assert_eq!(ok(&["algebra", "mul", "Dx", "x"]), ["x*Dx + 1"]);
    assert_eq!(ok(&["algebra", "normalize", "(2*x+2)*Dx + 2"]), ["(x+1)*Dx + 1"]);
    assert_eq!(ok(&["algebra", "compose", "Dx - 1", "-x^2"]), ["Dx + 2*x"]);
    assert_eq!(ok(&["algebra", "gcrd", "--prs", "subresultant", "Dx^2 - 1", "Dx^2 - 2*Dx + 1"]), ["Dx - 1"]);

    let alg = OreAlgebra::differential("x");
    let lines = ok(&["algebra", "lclm", "Dx - 1", "x*Dx - 5"]);
    let l = parse(&lines[0], &alg).unwrap();
    assert_eq!(l.order(), Some(2));
    let x5 = parse("x^5", &alg).unwrap().coeff(0);
    assert!(l.apply_function(&x5).unwrap().is_zero());
    let exp = Series::new((0..12).map(|k| Rational::new(1.into(), (1..=k).product::<i64>().max(1).into())).collect(), 12);
    assert!(l.apply_series(&exp).unwrap().is_zero());

    let qr = ok(&["algebra", "quorem", "Dx^2", "x*Dx + 1"]);
    assert_eq!(qr.len(), 2);
    let alg = alg.over_fractions();
    let (q, r) = (parse(&qr[0], &alg).unwrap(), parse(&qr[1], &alg).unwrap());
    let b = parse("x*Dx + 1", &alg).unwrap();
    assert_eq!(q.try_mul(&b).unwrap().try_add(&r).unwrap(), parse("Dx^2", &alg).unwrap());
}

#[test]
fn algebra_input_errors() {
    assert_eq!(code(&["algebra", "add", "Dx", "Sx"], ""), 2);
    assert_eq!(code(&["algebra", "sum", "Dx - 1"], ""), 2);
    assert_eq!(code(&["algebra", "frobnicate", "Dx"], ""), 2);
}

#[test]
fn output_round_trips() {
    let alg = OreAlgebra::shift("n");
    let l = parse("(n+1)*Sn - 1", &alg).unwrap().annihilator_of_sum().unwrap();
    assert_eq!(parse(&ok(&["algebra", "sum", "(n+1)*Sn - 1"])[0], &alg).unwrap(), l);
}

#[test]
fn solve_modes() {
    assert_eq!(code(&["solve", "Dx**?"], ""), 2);
    let series = ok(&["solve", "Dx^2 + 2*x*Dx", "--what", "series", "--order", "10"]);
    assert_eq!(series.len(), 2);
    assert!(series.contains(&"1 + O(x^10)".to_string()));
    let p = ok(&["solve", "(x^2+1)*Dx^2 - 2"]);
    assert!(!p.is_empty());
    let rhs = ok(&["--json", "solve", "(2*x+3)*Dx^2 + (4*x+5)*Dx + (6*x+7)", "--rhs", "1", "--rhs", "x"]);
    let v: serde_json::Value = serde_json::from_str(&rhs[0]).unwrap();
    assert!(!v["solutions"].as_array().unwrap().is_empty());
}
