use ore_web::{algebra, guess, terms};

#[test]
fn guess_fibonacci() {
    let out = guess("0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55", "S").unwrap();
    assert!(out.starts_with("Sn^2 - Sn - 1\n"), "{out}");
    assert!(guess("1 2 x", "S").is_err());
    assert!(guess("0 0 0 0", "S").unwrap_err().contains("no relation"));
}

#[test]
fn terms_of_partial_sums() {
    let out = terms("(n+2)*Sn^2 - (n+3)*Sn + 1", "1, 2", 5).unwrap();
    assert_eq!(out, "1\n2\n5/2\n8/3\n65/24");
    assert!(terms("Dx - 1", "1", 3).is_err());
}

#[test]
fn algebra_verbs() {
    assert_eq!(algebra("mul", "Dx", "x").unwrap(), "x*Dx + 1");
    assert_eq!(algebra("gcrd", "Dx^2 - 1", "Dx^2 - 2*Dx + 1").unwrap(), "Dx - 1");
    assert_eq!(algebra("lclm", "Sn - 2", "Sn - 3").unwrap(), "Sn^2 - 5*Sn + 6");
    assert!(algebra("pow", "Dx", "x").is_err());
}
