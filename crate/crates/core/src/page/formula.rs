//! Integer-valued expressions in `n`: `binom(n-1,3)`, `n*(n-1)/2`, `gcd(5,n)`, …

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Expr {
    Num(BigInt),
    N,
    Neg(Box<Expr>),
    Bin(char, Box<Expr>, Box<Expr>),
    Call(String, Vec<Expr>),
}

/// A parsed formula that keeps its source text for faithful serialization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Formula {
    text: String,
    expr: Expr,
}

impl Formula {
    pub fn text(&self) -> &str {
        &self.text
    }

    /// Exact value at `n`; an error if the value is not an integer.
    pub fn eval(&self, n: u32) -> Result<BigInt> {
        let v = eval(&self.expr, &BigRational::from_integer(BigInt::from(n)))?;
        if !v.is_integer() {
            return Err(Error::parse(
                "formula",
                format!("{} is {v} at n={n}, not an integer", self.text),
            ));
        }
        Ok(v.to_integer())
    }
}

impl FromStr for Formula {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let tokens = tokenize(s)?;
        let mut p = Parser { tokens, pos: 0 };
        let expr = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(Error::parse("formula", format!("trailing input in {s:?}")));
        }
        Ok(Self {
            text: s.to_string(),
            expr,
        })
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.text)
    }
}

impl TryFrom<String> for Formula {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Formula> for String {
    fn from(f: Formula) -> String {
        f.text
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
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
            out.push(Token::Num(text.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/(),".contains(c) {
            out.push(Token::Sym(c));
            i += 1;
        } else {
            return Err(Error::parse("formula", format!("unexpected {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek_sym(&self, c: char) -> bool {
        matches!(self.tokens.get(self.pos), Some(Token::Sym(x)) if *x == c)
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.peek_sym(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::parse("formula", format!("expected {c:?}")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while self.peek_sym('+') || self.peek_sym('-') {
            let Token::Sym(op) = self.tokens[self.pos].clone() else { unreachable!() };
            self.pos += 1;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.term()?));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.peek_sym('*') || self.peek_sym('/') {
            let Token::Sym(op) = self.tokens[self.pos].clone() else { unreachable!() };
            self.pos += 1;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let tok = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| Error::parse("formula", "unexpected end"))?;
        self.pos += 1;
        match tok {
            Token::Sym('-') => Ok(Expr::Neg(Box::new(self.factor()?))),
            Token::Sym('(') => {
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Token::Num(v) => Ok(Expr::Num(v)),
            Token::Ident(name) if name == "n" => Ok(Expr::N),
            Token::Ident(name) => {
                if !matches!(name.as_str(), "binom" | "gcd") {
                    return Err(Error::parse("formula", format!("unknown function {name}")));
                }
                self.expect_sym('(')?;
                let mut args = vec![self.expr()?];
                while self.peek_sym(',') {
                    self.pos += 1;
                    args.push(self.expr()?);
                }
                self.expect_sym(')')?;
                if args.len() != 2 {
                    return Err(Error::parse("formula", format!("{name} takes two arguments")));
                }
                Ok(Expr::Call(name, args))
            }
            Token::Sym(c) => Err(Error::parse("formula", format!("unexpected {c:?}"))),
        }
    }
}

fn integer_arg(name: &str, v: &BigRational) -> Result<BigInt> {
    if !v.is_integer() {
        return Err(Error::parse("formula", format!("{name} needs integer arguments")));
    }
    Ok(v.to_integer())
}

/// `a(a-1)…(a-b+1)/b!`, zero for `b < 0`.
pub fn binomial(a: &BigInt, b: &BigInt) -> BigInt {
    if b.is_negative() {
        return BigInt::zero();
    }
    if !a.is_negative() && b > a {
        return BigInt::zero();
    }
    let k = b.to_u64().expect("small lower index");
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= a - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

fn eval(e: &Expr, n: &BigRational) -> Result<BigRational> {
    Ok(match e {
        Expr::Num(v) => BigRational::from_integer(v.clone()),
        Expr::N => n.clone(),
        Expr::Neg(x) => -eval(x, n)?,
        Expr::Bin(op, a, b) => {
            let (a, b) = (eval(a, n)?, eval(b, n)?);
            match op {
                '+' => a + b,
                '-' => a - b,
                '*' => a * b,
                _ => {
                    if b.is_zero() {
                        return Err(Error::parse("formula", "division by zero"));
                    }
                    a / b
                }
            }
        }
        Expr::Call(name, args) => {
            let a = integer_arg(name, &eval(&args[0], n)?)?;
            let b = integer_arg(name, &eval(&args[1], n)?)?;
            let v = if name == "binom" { binomial(&a, &b) } else { a.gcd(&b) };
            BigRational::from_integer(v)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        s.parse().unwrap()
    }

    #[test]
    fn evaluation() {
        assert_eq!(f("binom(n-1,3)").eval(8).unwrap(), BigInt::from(35));
        assert_eq!(f("binom(n,2)").eval(6).unwrap(), BigInt::from(15));
        assert_eq!(f("n*(n-1)/2").eval(6).unwrap(), BigInt::from(15));
        assert_eq!(f("gcd(5,n) - -1").eval(10).unwrap(), BigInt::from(6));
        assert_eq!(f("0").eval(3).unwrap(), BigInt::zero());
        assert!(f("n/2").eval(3).is_err());
        assert!("binom(n)".parse::<Formula>().is_err());
        assert!("n +".parse::<Formula>().is_err());
        assert!("m".parse::<Formula>().is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(&BigInt::from(1), &BigInt::from(3)), BigInt::zero());
        assert_eq!(binomial(&BigInt::from(-1), &BigInt::from(3)), BigInt::from(-1));
        assert_eq!(binomial(&BigInt::from(5), &BigInt::from(0)), BigInt::one());
    }
}
