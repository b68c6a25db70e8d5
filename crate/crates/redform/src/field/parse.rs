//! Parser for rational-function strings such as `(2*x^2 + t1)/(x - 1)`.

use num_bigint::BigInt;

use super::{Const, Field, RatFunc, Ring, Q};
use crate::Error;

pub type ParseError = Error;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, Error> {
    let mut out = Vec::new();
    let b: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let txt: String = b[st..i].iter().collect();
            out.push((st, Tok::Int(txt.parse().unwrap())));
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            while i < b.len() && (b[i].is_alphanumeric() || b[i] == '_') {
                i += 1;
            }
            out.push((st, Tok::Ident(b[st..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(Error::Parse {
                pos: i,
                msg: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
    var: &'a str,
    params: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, Error> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<RatFunc, Error> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek() {
            let c = *c;
            self.i += 1;
            let t = self.term()?;
            acc = if c == '+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc, Error> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.i += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Op('/')) => {
                    self.i += 1;
                    let p = self.pos();
                    let d = self.unary()?;
                    if d.is_zero() {
                        return Err(Error::Parse {
                            pos: p,
                            msg: "division by zero".into(),
                        });
                    }
                    acc = acc.div(&d);
                }
                Some(Tok::Int(_) | Tok::Ident(_) | Tok::Op('(')) => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc, Error> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.i += 1;
                Ok(self.unary()?.neg())
            }
            Some(Tok::Op('+')) => {
                self.i += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc, Error> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.i += 1;
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    let e: usize = match n.try_into() {
                        Ok(e) if e <= 10_000 => e,
                        _ => return self.err("exponent too large"),
                    };
                    self.i += 1;
                    let mut acc = RatFunc::one();
                    for _ in 0..e {
                        acc = acc.mul(&base);
                    }
                    Ok(acc)
                }
                _ => self.err("expected a nonnegative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<RatFunc, Error> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.i += 1;
                Ok(RatFunc::constant(Const::rat(Q::from(n))))
            }
            Some(Tok::Ident(name)) => {
                if name == self.var {
                    self.i += 1;
                    return Ok(RatFunc::x());
                }
                match self.params.iter().position(|p| *p == name) {
                    Some(k) => {
                        self.i += 1;
                        Ok(RatFunc::constant(Const::param(k)))
                    }
                    None => self.err(format!("unknown symbol '{name}'")),
                }
            }
            Some(Tok::Op('(')) => {
                self.i += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.i += 1;
                        Ok(e)
                    }
                    _ => self.err("expected ')'"),
                }
            }
            Some(Tok::Op(c)) => self.err(format!("unexpected '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a rational function in `var`; parameter names map to `t_k` by index.
pub fn parse_ratfunc(s: &str, var: &str, params: &[String]) -> Result<RatFunc, Error> {
    let toks = lex(s)?;
    let mut p = Parser {
        toks,
        i: 0,
        end: s.chars().count(),
        var,
        params,
    };
    if p.toks.is_empty() {
        return p.err("empty expression");
    }
    let r = p.expr()?;
    if p.i < p.toks.len() {
        return p.err("trailing input");
    }
    Ok(r)
}

/// Parses a constant (no indeterminate allowed).
pub fn parse_const(s: &str, params: &[String]) -> Result<Const, Error> {
    let r = parse_ratfunc(s, "\u{0}", params)?;
    r.as_const().ok_or_else(|| Error::Parse {
        pos: 0,
        msg: "expected a constant".into(),
    })
}
