mod common;

const CASES: u32 = 128;

fn check(name: &str) {
    let suite = common::suites().into_iter().find(|s| s.name == name).unwrap();
    if let Err(e) = (suite.run)(CASES) {
        panic!("{name}: {e}");
    }
}

#[test]
fn ring_axioms() {
    check("ring axioms");
}

#[test]
fn apply_composition() {
    check("apply composition");
}

#[test]
fn parse_format_round_trip() {
    check("parse/format round trip");
}

#[test]
fn nullspace_exactness() {
    check("nullspace exactness");
}

#[test]
fn to_s_to_d_duality() {
    check("to_S/to_D duality");
}

#[test]
fn bsplit_equals_to_list() {
    check("bsplit equals to_list");
}

#[test]
fn solver_degree_bounds() {
    check("solver degree bounds");
}
