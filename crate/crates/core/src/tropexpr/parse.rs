use num_traits::Signed;

use super::{Expr, Monomial, RatFunc, Term, TropPoly};
use crate::error::{Result, TropError};
use crate::tropnum::{parse_q, Q, TropScalar};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Const(Q),
    Rat(Q),
    Plus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

fn syntax(pos: usize, msg: impl Into<String>) -> TropError {
    TropError::Syntax { pos, msg: msg.into() }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let b = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    // A rational literal is only legal right after `^`; it is read greedily so that
    // `x^1/2` is the square root of x.
    let read_rat = |i: &mut usize| -> Option<Q> {
        let start = *i;
        if *i < b.len() && b[*i] == b'-' {
            *i += 1;
        }
        let ds = *i;
        while *i < b.len() && b[*i].is_ascii_digit() {
            *i += 1;
        }
        if *i == ds {
            *i = start;
            return None;
        }
        if *i + 1 < b.len() && b[*i] == b'/' && b[*i + 1].is_ascii_digit() {
            *i += 1;
            while *i < b.len() && b[*i].is_ascii_digit() {
                *i += 1;
            }
        }
        parse_q(&text[start..*i])
    };
    while i < b.len() {
        let c = b[i];
        let pos = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((Tok::Plus, pos)),
            b'*' => out.push((Tok::Star, pos)),
            b'/' => out.push((Tok::Slash, pos)),
            b'(' => out.push((Tok::LParen, pos)),
            b')' => out.push((Tok::RParen, pos)),
            b',' => out.push((Tok::Comma, pos)),
            b'^' => {
                out.push((Tok::Caret, pos));
                i += 1;
                while i < b.len() && b[i] == b' ' {
                    i += 1;
                }
                let r = read_rat(&mut i).ok_or_else(|| syntax(i, "expected a rational exponent"))?;
                out.push((Tok::Rat(r), pos + 1));
                continue;
            }
            b'{' => {
                let close = text[i..]
                    .find('}')
                    .map(|k| i + k)
                    .ok_or_else(|| syntax(pos, "unterminated constant"))?;
                let v = parse_q(&text[i + 1..close])
                    .ok_or_else(|| syntax(pos + 1, "expected a rational inside `{}`"))?;
                out.push((Tok::Const(v), pos));
                i = close + 1;
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[pos..i].to_string()), pos));
                continue;
            }
            _ => return Err(syntax(pos, format!("unexpected character `{}`", c as char))),
        }
        i += 1;
    }
    Ok(out)
}

#[derive(Clone)]
enum Val {
    P(TropPoly),
    F(RatFunc),
}

impl Val {
    fn frac(self) -> RatFunc {
        match self {
            Val::P(p) => RatFunc::from_poly(&p),
            Val::F(f) => f,
        }
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    i: usize,
    vars: &'a [&'a str],
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.0)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.1)
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&t) {
            self.i += 1;
            Ok(())
        } else {
            Err(syntax(self.pos(), format!("expected {what}")))
        }
    }

    fn n(&self) -> usize {
        self.vars.len()
    }

    fn expr(&mut self) -> Result<Val> {
        let mut acc = self.term()?;
        while self.peek() == Some(&Tok::Plus) {
            self.i += 1;
            let rhs = self.term()?;
            acc = match (acc, rhs) {
                (Val::P(a), Val::P(b)) => Val::P(a.add(&b)),
                (a, b) => Val::F(a.frac().add(&b.frac())),
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Val> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.i += 1;
                    let rhs = self.power()?;
                    acc = match (acc, rhs) {
                        (Val::P(a), Val::P(b)) => Val::P(a.mul(&b)),
                        (a, b) => Val::F(a.frac().mul(&b.frac())),
                    };
                }
                Some(Tok::Slash) => {
                    self.i += 1;
                    let rhs = self.power()?;
                    acc = Val::F(acc.frac().div(&rhs.frac()));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Val> {
        let mut base = self.atom()?;
        while self.peek() == Some(&Tok::Caret) {
            let pos = self.pos();
            self.i += 1;
            let Some((Tok::Rat(e), _)) = self.toks.get(self.i).cloned() else {
                return Err(syntax(self.pos(), "expected a rational exponent"));
            };
            self.i += 1;
            base = raise(base, &e).ok_or_else(|| {
                syntax(pos, "only monomials may be raised to non-integer powers")
            })?;
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Val> {
        let pos = self.pos();
        match self.toks.get(self.i).cloned() {
            Some((Tok::Const(c), _)) => {
                self.i += 1;
                Ok(Val::P(TropPoly::monomial(Monomial::constant(self.n(), c))))
            }
            Some((Tok::LParen, _)) => {
                self.i += 1;
                let v = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(v)
            }
            Some((Tok::Ident(name), _)) => {
                self.i += 1;
                if self.peek() == Some(&Tok::LParen) && (name == "abs" || name == "min") {
                    self.i += 1;
                    let a = self.expr()?;
                    let v = if name == "abs" {
                        a.frac().abs()
                    } else {
                        self.expect(Tok::Comma, "`,`")?;
                        let b = self.expr()?;
                        a.frac().meet(&b.frac())
                    };
                    self.expect(Tok::RParen, "`)`")?;
                    return Ok(Val::F(v));
                }
                let k = self
                    .vars
                    .iter()
                    .position(|v| *v == name)
                    .ok_or(TropError::UnknownVariable { name, pos })?;
                Ok(Val::P(TropPoly::monomial(Monomial::var(self.n(), k))))
            }
            Some(_) => Err(syntax(pos, "expected a variable, constant or `(`")),
            None => Err(syntax(pos, "unexpected end of input")),
        }
    }
}

fn raise(base: Val, e: &Q) -> Option<Val> {
    match base {
        Val::P(p) if p.len() == 1 => {
            let t = &p.terms()[0];
            let m = t.mono.pow(e);
            let term = if t.is_ghost() { Term::ghost(m) } else { Term::tangible(m) };
            Some(Val::P(TropPoly::new(p.nvars(), vec![term])))
        }
        Val::P(p) => {
            if !e.is_integer() {
                return None;
            }
            let k = e.numer().magnitude().try_into().ok()?;
            let pk = p.pow(k);
            if e.is_negative() {
                Some(Val::F(RatFunc::from_poly(&pk).inv()))
            } else {
                Some(Val::P(pk))
            }
        }
        Val::F(f) => {
            if let Some(m) = f.as_monomial() {
                if !e.is_integer() {
                    return Some(Val::F(RatFunc::monomial(m.pow(e))));
                }
            }
            if !e.is_integer() {
                return None;
            }
            let k: i64 = e.numer().try_into().ok()?;
            Some(Val::F(f.pow(k)))
        }
    }
}

/// Parses an expression over the given variables.
///
/// Grammar: `expr := term ('+' term)*`, `term := power (('*'|'/') power)*`,
/// `power := atom ('^' rational)*`, `atom := var | '{' rational '}' | '(' expr ')'
/// | 'abs(' expr ')' | 'min(' expr ',' expr ')'`.
pub fn parse(text: &str, vars: &[&str]) -> Result<Expr> {
    let toks = lex(text)?;
    let mut p = Parser { toks, i: 0, vars, end: text.len() };
    if p.toks.is_empty() {
        return Err(syntax(0, "empty expression"));
    }
    let v = p.expr()?;
    if p.i != p.toks.len() {
        return Err(syntax(p.pos(), "trailing input"));
    }
    Ok(match v {
        Val::P(poly) => Expr::Poly(poly),
        Val::F(f) => {
            if f.den.is_empty() {
                return Err(TropError::EmptyDenominator);
            }
            Expr::Frac(f)
        }
    })
}

/// Convenience wrapper returning the rational-function view.
pub fn parse_ratfunc(text: &str, vars: &[&str]) -> Result<RatFunc> {
    parse(text, vars).map(|e| e.to_ratfunc())
}

/// Parses `{c}` or a bare rational into a scalar.
pub fn parse_scalar(text: &str) -> Result<TropScalar> {
    text.parse::<TropScalar>().map_err(|m| syntax(0, m))
}
