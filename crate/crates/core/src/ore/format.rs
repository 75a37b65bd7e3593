//! Operator printing: highest power first, composite coefficients in
//! parentheses, unit coefficients elided.

use std::fmt;

use super::operator::OrePoly;
use crate::arith::{ConstField, Field, RatFun};

fn gen_power(name: &str, i: usize) -> String {
    match i {
        0 => String::new(),
        1 => name.to_string(),
        _ => format!("{name}^{i}"),
    }
}

fn is_simple<K: ConstField>(c: &RatFun<K>) -> bool {
    c.is_polynomial() && c.num().term_count() == 1
}

/// Sign and unsigned text of one term `c X^i`.
fn term<K: ConstField>(c: &RatFun<K>, var: &str, gen: &str, i: usize) -> (bool, String) {
    let (neg, c) = if is_simple(c) && c.render(var).starts_with('-') {
        (true, -c)
    } else {
        (false, c.clone())
    };
    let g = gen_power(gen, i);
    let text = if i > 0 && c.is_one() {
        g
    } else {
        let s = c.render(var);
        let s = if is_simple(&c) { s } else { format!("({s})") };
        if i == 0 {
            s
        } else {
            format!("{s}*{g}")
        }
    };
    (neg, text)
}

pub fn format<K: ConstField>(l: &OrePoly<K>) -> String {
    let alg = l.algebra();
    let mut out = String::new();
    for (i, c) in l.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let (neg, t) = term(c, alg.base_var(), alg.gen_name(), i);
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&t);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<K: ConstField> fmt::Display for OrePoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format(self))
    }
}

impl<K: ConstField> fmt::Debug for OrePoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", format(self), self.algebra())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Poly, Rational};
    use crate::ore::OreAlgebra;

    #[test]
    fn printed_forms() {
        let d = OreAlgebra::<Rational>::differential("x");
        let dx = OrePoly::gen(&d);
        let x = OrePoly::var(&d);
        assert_eq!(format(&(&dx * &x)), "x*Dx + 1");
        let l = OrePoly::from_polys(&d, vec![Poly::one(), Poly::from_i64s(&[1, 1])]);
        assert_eq!(format(&l), "(x+1)*Dx + 1");
        let s = OreAlgebra::<Rational>::shift("n");
        let fib = OrePoly::from_polys(&s, vec![Poly::from_i64s(&[-1]), Poly::from_i64s(&[-1]), Poly::one()]);
        assert_eq!(format(&fib), "Sn^2 - Sn - 1");
        let m = OrePoly::from_polys(&s, vec![Poly::from_i64s(&[0, -2]), Poly::zero(), Poly::from_i64s(&[0, 0, -3])]);
        assert_eq!(format(&m), "-3*n^2*Sn^2 - 2*n");
        assert_eq!(format(&OrePoly::zero(&s)), "0");
    }
}
