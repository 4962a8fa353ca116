//! Expression grammar shared by the command line and the verification suite.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary (('*' | '/') unary)*
//! unary    := '-' unary | power
//! power    := atom ('^' exponent)?
//! exponent := int | '-' int | '(' ['-'] int ['/' int] ')'
//! atom     := int | 'i' | 'q' | generator | 'star' '(' expr ')' | '(' expr ')'
//! ```
//!
//! Generators are `a as b bs` (and the sphere aliases `A = b*bs`,
//! `B = a*b`, `Bs = bs*as`) for `Fun_q(SU(2))`, or `k kinv e es` for
//! `U_q(su(2))`. Fractional exponents are only allowed on `q`; negative
//! exponents on scalars and on invertible generators.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::coeff::{GaussianRational, Scalar};
use crate::ncpoly::{funq, Element, Presentation, PresentationKind, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown generator '{name}' at position {pos}{}", suggestion.as_ref().map(|s| format!(" (did you mean '{s}'?)")).unwrap_or_default())]
    UnknownGenerator { name: String, pos: usize, suggestion: Option<String> },
    #[error("expression mixes generators of U_q(su(2)) and Fun_q(SU(2))")]
    MixedAlgebras,
    #[error("expression uses {found} generators but {expected} was requested")]
    WrongAlgebra { expected: PresentationKind, found: PresentationKind },
    #[error("{0}")]
    Invalid(String),
}

const FUN_NAMES: [&str; 7] = ["a", "as", "b", "bs", "A", "B", "Bs"];
const U_NAMES: [&str; 4] = ["k", "kinv", "e", "es"];
const RESERVED: [&str; 3] = ["q", "i", "star"];

#[derive(Clone, Debug, PartialEq)]
enum Expr {
    Int(BigInt),
    I,
    Q,
    Gen(String),
    Star(Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    /// Base raised to `num/den`.
    Pow(Box<Expr>, i64, i64, usize),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(input: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = input.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].1.is_ascii_digit() {
                j += 1;
            }
            let end = chars.get(j).map_or(input.len(), |x| x.0);
            out.push((Tok::Int(input[pos..end].parse().unwrap()), pos));
            i = j;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].1.is_ascii_alphanumeric() || chars[j].1 == '_') {
                j += 1;
            }
            let end = chars.get(j).map_or(input.len(), |x| x.0);
            out.push((Tok::Ident(input[pos..end].to_string()), pos));
            i = j;
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), pos));
            i += 1;
        } else {
            return Err(ParseError::Syntax { pos, message: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.1)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos(), message: message.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let pos = self.pos();
                self.at += 1;
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), pos);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let v = i64::try_from(n.clone()).or_else(|_| self.err("exponent too large"))?;
                self.at += 1;
                Ok(v)
            }
            _ => self.err("expected an integer exponent"),
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Sym('^')) {
            return Ok(base);
        }
        let pos = self.pos();
        self.at += 1;
        let (num, den) = if self.eat('(') {
            let sign = if self.eat('-') { -1 } else { 1 };
            let n = self.int()?;
            let d = if self.eat('/') { self.int()? } else { 1 };
            self.expect(')')?;
            if d == 0 {
                return Err(ParseError::Syntax { pos, message: "zero denominator in exponent".into() });
            }
            (sign * n, d)
        } else {
            let sign = if self.eat('-') { -1 } else { 1 };
            (sign * self.int()?, 1)
        };
        Ok(Expr::Pow(Box::new(base), num, den, pos))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                match name.as_str() {
                    "i" => Ok(Expr::I),
                    "q" => Ok(Expr::Q),
                    "star" => {
                        self.expect('(')?;
                        let e = self.expr()?;
                        self.expect(')')?;
                        Ok(Expr::Star(Box::new(e)))
                    }
                    n if FUN_NAMES.contains(&n) || U_NAMES.contains(&n) => Ok(Expr::Gen(name)),
                    _ => Err(ParseError::UnknownGenerator { suggestion: suggest(&name), name, pos }),
                }
            }
            Some(Tok::Sym(c)) => self.err(format!("unexpected '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }
}

fn suggest(name: &str) -> Option<String> {
    FUN_NAMES
        .iter()
        .chain(U_NAMES.iter())
        .chain(RESERVED.iter())
        .map(|c| (strsim::levenshtein(name, c), *c))
        .filter(|(d, _)| *d <= 2)
        .min()
        .map(|(_, c)| c.to_string())
}

fn collect_kinds(e: &Expr, out: &mut Vec<PresentationKind>) {
    match e {
        Expr::Gen(n) => out.push(if U_NAMES.contains(&n.as_str()) { PresentationKind::UQ } else { PresentationKind::FunQ }),
        Expr::Star(x) | Expr::Neg(x) | Expr::Pow(x, ..) => collect_kinds(x, out),
        Expr::Add(x, y) | Expr::Sub(x, y) | Expr::Mul(x, y) | Expr::Div(x, y, _) => {
            collect_kinds(x, out);
            collect_kinds(y, out);
        }
        Expr::Int(_) | Expr::I | Expr::Q => {}
    }
}

/// A parsed expression together with the algebra its generators belong to
/// (`None` for pure scalars).
#[derive(Clone, Debug, PartialEq)]
pub struct Parsed {
    expr: Expr,
    kind: Option<PresentationKind>,
}

/// The value of an expression: a scalar or an algebra element.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Scalar(Scalar),
    Element(Element),
}

impl Value {
    pub fn into_element(self) -> Element {
        match self {
            Value::Scalar(c) => Element::scalar(c),
            Value::Element(x) => x,
        }
    }
}

pub fn parse(input: &str) -> Result<Parsed, ParseError> {
    let toks = lex(input)?;
    let mut p = Parser { toks, at: 0, end: input.len() };
    let expr = p.expr()?;
    if p.at < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    let mut kinds = Vec::new();
    collect_kinds(&expr, &mut kinds);
    kinds.sort_by_key(|k| k.name());
    kinds.dedup();
    let kind = match kinds.as_slice() {
        [] => None,
        [k] => Some(*k),
        _ => return Err(ParseError::MixedAlgebras),
    };
    Ok(Parsed { expr, kind })
}

impl Parsed {
    pub fn kind(&self) -> Option<PresentationKind> {
        self.kind
    }

    /// Evaluates in `p`; errors if the expression uses the other algebra.
    pub fn eval(&self, p: &Presentation) -> Result<Value, ParseError> {
        if let Some(k) = self.kind {
            if k != p.kind() {
                return Err(ParseError::WrongAlgebra { expected: p.kind(), found: k });
            }
        }
        eval(&self.expr, p)
    }

    pub fn eval_element(&self, p: &Presentation) -> Result<Element, ParseError> {
        Ok(self.eval(p)?.into_element())
    }

    /// Evaluates an expression without generators.
    pub fn eval_scalar(&self) -> Result<Scalar, ParseError> {
        eval_scalar(&self.expr)
    }
}

fn gaussian_int(n: &BigInt) -> Scalar {
    Scalar::from_gaussian(GaussianRational::real(BigRational::from_integer(n.clone())))
}

fn eval_scalar(e: &Expr) -> Result<Scalar, ParseError> {
    match e {
        Expr::Int(n) => Ok(gaussian_int(n)),
        Expr::I => Ok(Scalar::i()),
        Expr::Q => Ok(Scalar::q()),
        Expr::Gen(n) => Err(ParseError::Invalid(format!("'{n}' is not a scalar"))),
        Expr::Star(x) => Ok(eval_scalar(x)?.conjugate()),
        Expr::Neg(x) => Ok(eval_scalar(x)?.neg()),
        Expr::Add(x, y) => Ok(eval_scalar(x)?.add(&eval_scalar(y)?)),
        Expr::Sub(x, y) => Ok(eval_scalar(x)?.sub(&eval_scalar(y)?)),
        Expr::Mul(x, y) => Ok(eval_scalar(x)?.mul(&eval_scalar(y)?)),
        Expr::Div(x, y, pos) => eval_scalar(x)?
            .div(&eval_scalar(y)?)
            .map_err(|_| ParseError::Syntax { pos: *pos, message: "division by zero".into() }),
        Expr::Pow(x, num, den, pos) => scalar_pow(x, *num, *den, *pos),
    }
}

fn scalar_pow(base: &Expr, num: i64, den: i64, pos: usize) -> Result<Scalar, ParseError> {
    let bad = |m: &str| ParseError::Syntax { pos, message: m.to_string() };
    if den != 1 {
        if *base != Expr::Q || den != 2 {
            return Err(bad("fractional exponents are only allowed on q, with denominator 2"));
        }
        return Ok(Scalar::s_pow(i32::try_from(num).map_err(|_| bad("exponent too large"))?));
    }
    let n = i32::try_from(num).map_err(|_| bad("exponent too large"))?;
    eval_scalar(base)?.pow(n).map_err(|_| bad("zero raised to a negative power"))
}

fn eval(e: &Expr, p: &Presentation) -> Result<Value, ParseError> {
    use Value::*;
    Ok(match e {
        Expr::Gen(name) => Element(generator(name, p)),
        Expr::Star(x) => match eval(x, p)? {
            Scalar(c) => Scalar(c.conjugate()),
            Element(y) => Element(p.star(&y)),
        },
        Expr::Neg(x) => match eval(x, p)? {
            Scalar(c) => Scalar(c.neg()),
            Element(y) => Element(-&y),
        },
        Expr::Add(x, y) => match (eval(x, p)?, eval(y, p)?) {
            (Scalar(c), Scalar(d)) => Scalar(c.add(&d)),
            (u, v) => Element(&u.into_element() + &v.into_element()),
        },
        Expr::Sub(x, y) => match (eval(x, p)?, eval(y, p)?) {
            (Scalar(c), Scalar(d)) => Scalar(c.sub(&d)),
            (u, v) => Element(&u.into_element() - &v.into_element()),
        },
        Expr::Mul(x, y) => match (eval(x, p)?, eval(y, p)?) {
            (Scalar(c), Scalar(d)) => Scalar(c.mul(&d)),
            (Scalar(c), Element(v)) | (Element(v), Scalar(c)) => Element(v.scale(&c)),
            (Element(u), Element(v)) => Element(p.mul(&u, &v)),
        },
        Expr::Div(x, y, pos) => {
            let d = match eval(y, p)? {
                Scalar(d) => d,
                Element(v) => v.as_scalar().ok_or_else(|| ParseError::Syntax {
                    pos: *pos,
                    message: "can only divide by a scalar".into(),
                })?,
            };
            let inv = d.inv().map_err(|_| ParseError::Syntax { pos: *pos, message: "division by zero".into() })?;
            match eval(x, p)? {
                Scalar(c) => Scalar(c.mul(&inv)),
                Element(v) => Element(v.scale(&inv)),
            }
        }
        Expr::Pow(x, num, den, pos) => match eval(x, p)? {
            Scalar(_) => Scalar(scalar_pow(x, *num, *den, *pos)?),
            Element(v) => {
                let bad = |m: &str| ParseError::Syntax { pos: *pos, message: m.to_string() };
                if *den != 1 {
                    return Err(bad("fractional exponents are only allowed on q"));
                }
                let n = u32::try_from(num.unsigned_abs()).map_err(|_| bad("exponent too large"))?;
                let base = if *num >= 0 { v } else { invert_generator(&v, p).ok_or_else(|| bad("negative powers are only allowed on invertible generators"))? };
                Element(p.pow(&base, n))
            }
        },
        Expr::Int(_) | Expr::I | Expr::Q => Scalar(eval_scalar(e)?),
    })
}

fn invert_generator(v: &Element, p: &Presentation) -> Option<Element> {
    let mut it = v.terms();
    let (w, c) = match (it.next(), it.next()) {
        (Some(t), None) => t,
        _ => return None,
    };
    if w.len() != 1 {
        return None;
    }
    let inv = p.generators()[w.gens()[0] as usize].inverse?;
    Some(Element::term(c.inv().ok()?, Word::gen(inv)))
}

fn generator(name: &str, p: &Presentation) -> Element {
    use funq::*;
    match name {
        "A" => p.monomial(&[B, BS]),
        "B" => p.monomial(&[A, B]),
        "Bs" => p.monomial(&[BS, AS]),
        _ => Element::gen(p.generator_by_token(name).expect("validated generator name")),
    }
}

impl FromStr for Scalar {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let parsed = parse(s)?;
        if parsed.kind.is_some() {
            return Err(ParseError::Invalid(format!("'{s}' contains generators")));
        }
        parsed.eval_scalar()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::uq;

    #[test]
    fn scalars_round_trip() {
        let samples = [
            Scalar::q(),
            Scalar::s_pow(-3).neg(),
            Scalar::q().sub(&Scalar::q_pow(-1)),
            Scalar::q().div(&Scalar::q_pow(2).sub(&Scalar::one())).unwrap(),
            Scalar::from_ratio(3, 2).mul(&Scalar::i()),
            Scalar::from_gaussian(GaussianRational::new(BigRational::from_integer(1.into()), BigRational::from_integer((-2).into()))),
            Scalar::zero(),
        ];
        for c in samples {
            assert_eq!(c.to_string().parse::<Scalar>().unwrap(), c, "{c}");
        }
    }

    #[test]
    fn elements() {
        let p = Presentation::fun_q().unwrap();
        let x = parse("q*a*b - b*bs").unwrap();
        assert_eq!(x.kind(), Some(PresentationKind::FunQ));
        let v = x.eval_element(&p).unwrap();
        assert_eq!(p.render(&v), "q*a*b - b*bs");
        let a = parse("A").unwrap().eval_element(&p).unwrap();
        assert_eq!(a, p.monomial(&[funq::B, funq::BS]));
        let s = parse("star(i*a)").unwrap().eval_element(&p).unwrap();
        assert_eq!(s, Element::gen(funq::AS).scale(&Scalar::i().neg()));
        let u = Presentation::u_q().unwrap();
        let y = parse("e*k").unwrap().eval_element(&u).unwrap();
        assert_eq!(y, u.monomial(&[uq::E, uq::K]));
        let z = parse("k^-2").unwrap().eval_element(&u).unwrap();
        assert_eq!(z, u.monomial(&[uq::KINV, uq::KINV]));
        let w = parse("(a + b)/(q - 1)").unwrap().eval_element(&p).unwrap();
        assert_eq!(w.len(), 2);
    }

    #[test]
    fn errors() {
        match parse("a*x") {
            Err(ParseError::UnknownGenerator { name, pos, .. }) => assert_eq!((name.as_str(), pos), ("x", 2)),
            other => panic!("{other:?}"),
        }
        match parse("bz") {
            Err(ParseError::UnknownGenerator { suggestion, .. }) => assert!(suggestion.is_some()),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("a + "), Err(ParseError::Syntax { pos: 4, .. })));
        assert!(matches!(parse("a*k"), Err(ParseError::MixedAlgebras)));
        assert!(matches!(parse("a $ b"), Err(ParseError::Syntax { pos: 2, .. })));
        let p = Presentation::fun_q().unwrap();
        assert!(parse("a/b").unwrap().eval(&p).is_err());
        assert!(parse("a^-1").unwrap().eval(&p).is_err());
        assert!(parse("1/0").unwrap().eval_scalar().is_err());
    }
}
