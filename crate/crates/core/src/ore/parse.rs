//! Operator text parser.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' INTEGER)?
//! atom   := INTEGER | NAME | '(' expr ')'
//! ```
//!
//! Names are the base variable, the generator and `q`. There is no implicit
//! multiplication. Division is by base-ring elements only, and by
//! non-constants only when the algebra has rational-function coefficients.

use num_bigint::BigInt;

use super::algebra::{Algebra, CoeffDomain};
use super::operator::OrePoly;
use crate::arith::{ConstField, RatFun};
use crate::error::{OreError, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Sym(char),
    End,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push((start, Tok::Int(text.parse().unwrap())));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Name(chars[start..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(OreError::Syntax {
                pos: i,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    out.push((chars.len(), Tok::End));
    Ok(out)
}

struct Parser<'a, K: ConstField> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    alg: &'a Algebra<K>,
}

impl<K: ConstField> Parser<'_, K> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self) -> OreError {
        let msg = match self.peek() {
            Tok::End => "unexpected end of input".to_string(),
            Tok::Int(n) => format!("unexpected number `{n}`"),
            Tok::Name(n) => format!("unexpected name `{n}`"),
            Tok::Sym(c) => format!("unexpected `{c}`"),
        };
        OreError::Syntax {
            pos: self.pos(),
            msg,
        }
    }

    fn expr(&mut self) -> Result<OrePoly<K>> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Sym('-') => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<OrePoly<K>> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Sym('/') => {
                    self.bump();
                    let pos = self.pos();
                    let d = self.unary()?;
                    acc = acc.rmul(&self.divisor(d, pos)?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn divisor(&self, d: OrePoly<K>, pos: usize) -> Result<RatFun<K>> {
        let err = |msg: &str| OreError::Syntax {
            pos,
            msg: msg.to_string(),
        };
        if d.is_zero() {
            return Err(err("division by zero"));
        }
        if d.order() != Some(0) {
            return Err(err("division by an operator"));
        }
        let c = d.coeff(0);
        if !c.is_constant() && self.alg.domain() == CoeffDomain::Poly {
            return Err(err(
                "division by a non-constant needs rational-function coefficients",
            ));
        }
        Ok(c.inv())
    }

    fn unary(&mut self) -> Result<OrePoly<K>> {
        match self.peek() {
            Tok::Sym('-') => {
                self.bump();
                Ok(-self.unary()?)
            }
            Tok::Sym('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<OrePoly<K>> {
        let base = self.atom()?;
        if self.peek() != &Tok::Sym('^') {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => {
                let e: u32 = n.try_into().map_err(|_| OreError::Syntax {
                    pos,
                    msg: "exponent too large".into(),
                })?;
                Ok(base.pow(e))
            }
            _ => {
                self.at -= 1;
                Err(OreError::Syntax {
                    pos,
                    msg: "expected a nonnegative integer exponent".into(),
                })
            }
        }
    }

    fn atom(&mut self) -> Result<OrePoly<K>> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(OrePoly::constant(self.alg, RatFun::constant(K::from_bigint(&n))))
            }
            Tok::Name(name) => {
                self.bump();
                if name == self.alg.base_var() {
                    Ok(OrePoly::var(self.alg))
                } else if name == self.alg.gen_name() {
                    Ok(OrePoly::gen(self.alg))
                } else if name == "q" {
                    let q = self
                        .alg
                        .q()
                        .cloned()
                        .or_else(K::q_symbol)
                        .ok_or(OreError::UnknownSymbol { pos, name })?;
                    Ok(OrePoly::constant(self.alg, RatFun::constant(q)))
                } else {
                    Err(OreError::UnknownSymbol { pos, name })
                }
            }
            Tok::Sym('(') => {
                self.bump();
                let v = self.expr()?;
                if self.peek() != &Tok::Sym(')') {
                    return Err(self.unexpected());
                }
                self.bump();
                Ok(v)
            }
            _ => Err(self.unexpected()),
        }
    }
}

/// Parses operator text in the given algebra.
pub fn parse<K: ConstField>(s: &str, alg: &Algebra<K>) -> Result<OrePoly<K>> {
    let mut p = Parser {
        toks: tokenize(s)?,
        at: 0,
        alg,
    };
    let v = p.expr()?;
    if p.peek() != &Tok::End {
        return Err(p.unexpected());
    }
    v.convert(alg)
}

impl<K: ConstField> OrePoly<K> {
    pub fn parse(s: &str, alg: &Algebra<K>) -> Result<Self> {
        parse(s, alg)
    }
}
