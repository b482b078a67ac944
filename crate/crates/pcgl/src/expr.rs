//! A small expression language for ring elements, e.g. `t11*t22 - t12*t21`,
//! `x1 + 1` or `y4^-1`.
//!
//! Atoms are rational constants (`3`, `3/2`), generators `x1, x2, ...`,
//! prime elements `y1, y2, ...` and generator names from the presentation.
//! Operators are `+`, `-`, `*` and `^` with an integer (possibly negative)
//! exponent; parentheses group.

use crate::arith::{parse_rational, Laurent, Q};
use crate::error::{PcglError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    /// Generator `x_{i+1}`.
    X(usize),
    /// Prime element `y_{i+1}`.
    Y(usize),
    Name(String),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(Q),
    Atom(Atom),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i64),
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        let tokens = tokenize(src)?;
        let mut p = Parser { tokens, pos: 0 };
        let e = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(PcglError::Input(format!(
                "unexpected {:?} in element expression",
                p.tokens[p.pos]
            )));
        }
        Ok(e)
    }

    /// Evaluates in a Laurent ring with `n` variables; `atom` supplies the
    /// value of each atom. Negative powers require single-term values.
    pub fn eval(&self, n: usize, atom: &dyn Fn(&Atom) -> Result<Laurent>) -> Result<Laurent> {
        Ok(match self {
            Expr::Const(c) => Laurent::constant(n, c.clone()),
            Expr::Atom(a) => atom(a)?,
            Expr::Add(a, b) => &a.eval(n, atom)? + &b.eval(n, atom)?,
            Expr::Sub(a, b) => &a.eval(n, atom)? - &b.eval(n, atom)?,
            Expr::Mul(a, b) => &a.eval(n, atom)? * &b.eval(n, atom)?,
            Expr::Neg(a) => -&a.eval(n, atom)?,
            Expr::Pow(a, k) => a.eval(n, atom)?.pow(*k)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
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
            out.push(Tok::Num(chars[start..i].iter().collect()));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*^/()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(PcglError::Input(format!(
                "unexpected character {c:?} in element expression"
            )));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek_op(&self, c: char) -> bool {
        self.tokens.get(self.pos) == Some(&Tok::Op(c))
    }

    fn expect_op(&mut self, c: char) -> Result<()> {
        if self.peek_op(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(PcglError::Input(format!("expected {c:?} in element expression")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.peek_op('+') {
                self.pos += 1;
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.peek_op('-') {
                self.pos += 1;
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.peek_op('*') {
            self.pos += 1;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek_op('-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.peek_op('^') {
            return Ok(base);
        }
        self.pos += 1;
        let paren = self.peek_op('(');
        if paren {
            self.pos += 1;
        }
        let neg = self.peek_op('-');
        if neg {
            self.pos += 1;
        }
        let k: i64 = match self.tokens.get(self.pos) {
            Some(Tok::Num(s)) => s
                .parse()
                .map_err(|_| PcglError::Input(format!("exponent {s} is too large")))?,
            _ => return Err(PcglError::Input("expected an integer exponent".into())),
        };
        self.pos += 1;
        if paren {
            self.expect_op(')')?;
        }
        Ok(Expr::Pow(Box::new(base), if neg { -k } else { k }))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.tokens.get(self.pos).cloned() {
            Some(Tok::Num(s)) => {
                self.pos += 1;
                if self.peek_op('/') {
                    self.pos += 1;
                    let Some(Tok::Num(d)) = self.tokens.get(self.pos).cloned() else {
                        return Err(PcglError::Input("expected a denominator after '/'".into()));
                    };
                    self.pos += 1;
                    return Ok(Expr::Const(parse_rational(&format!("{s}/{d}"))?));
                }
                Ok(Expr::Const(parse_rational(&s)?))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Expr::Atom(classify(&name)))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect_op(')')?;
                Ok(e)
            }
            other => Err(PcglError::Input(format!(
                "unexpected {other:?} in element expression"
            ))),
        }
    }
}

fn classify(name: &str) -> Atom {
    let indexed = |prefix: char| -> Option<usize> {
        let rest = name.strip_prefix(prefix)?;
        let i: usize = rest.parse().ok()?;
        (i >= 1 && !rest.starts_with('0')).then(|| i - 1)
    };
    if let Some(i) = indexed('x') {
        Atom::X(i)
    } else if let Some(i) = indexed('y') {
        Atom::Y(i)
    } else {
        Atom::Name(name.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;

    fn eval_plain(s: &str) -> Laurent {
        Expr::parse(s)
            .unwrap()
            .eval(3, &|a| match a {
                Atom::X(i) => Ok(Laurent::var(3, *i)),
                _ => Err(PcglError::Input("no".into())),
            })
            .unwrap()
    }

    #[test]
    fn parses_and_evaluates() {
        let x = |i| Laurent::var(3, i);
        assert_eq!(eval_plain("x1 + 1"), &x(0) + &Laurent::one(3));
        assert_eq!(
            eval_plain("x1*x2 - 3/2*x3"),
            &(&x(0) * &x(1)) - &x(2).scale(&q(3, 2))
        );
        assert_eq!(eval_plain("(x1 + x2)^2"), &(&x(0) + &x(1)) * &(&x(0) + &x(1)));
        assert_eq!(eval_plain("x2^-1"), x(1).inverse_monomial().unwrap());
        assert_eq!(eval_plain("-x3^(-2)"), -&x(2).pow(-2).unwrap());
    }

    #[test]
    fn names_and_errors() {
        assert_eq!(Expr::parse("t11").unwrap(), Expr::Atom(Atom::Name("t11".into())));
        assert_eq!(Expr::parse("y4").unwrap(), Expr::Atom(Atom::Y(3)));
        assert!(Expr::parse("x1 +").is_err());
        assert!(Expr::parse("1.5").is_err());
        assert!(Expr::parse("x1 ^ y").is_err());
    }
}
