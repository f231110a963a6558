//! Polynomial expressions: rational literals, declared identifiers,
//! `+ - * ^` and parentheses. Juxtaposition is rejected. A momentum
//! coordinate `x*` is recognised when `x*` is declared and the `*` is not
//! followed by something that could start an operand.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::chart::ChartRef;
use super::poly::GPoly;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn starts_operand(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '('
}

fn lex(src: &str, chart: &ChartRef) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |pos: usize, what: &str| Error::Parse {
        pos,
        expected: what.to_string(),
    };
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let num: String = chars[start..i].iter().map(|p| p.1).collect();
            let mut val = BigRational::from_integer(num.parse::<BigInt>().unwrap());
            if i < chars.len() && chars[i].1 == '/' {
                i += 1;
                let dstart = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                if dstart == i {
                    return Err(err(chars.get(i).map_or(src.len(), |p| p.0), "denominator"));
                }
                let den: String = chars[dstart..i].iter().map(|p| p.1).collect();
                let den = den.parse::<BigInt>().unwrap();
                if den.is_zero() {
                    return Err(err(chars[dstart].0, "nonzero denominator"));
                }
                val /= BigRational::from_integer(den);
            }
            out.push((pos, Tok::Num(val)));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let mut name: String = chars[start..i].iter().map(|p| p.1).collect();
            if i < chars.len() && chars[i].1 == '*' {
                let starred = format!("{name}*");
                let next = chars[i + 1..].iter().map(|p| p.1).find(|c| !c.is_whitespace());
                if chart.index_of(&starred).is_some() && !next.is_some_and(starts_operand) {
                    name = starred;
                    i += 1;
                }
            }
            out.push((pos, Tok::Ident(name)));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => return Err(err(pos, "operand or operator")),
        };
        out.push((pos, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    chart: &'a ChartRef,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn fail<T>(&self, what: &str) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            expected: what.to_string(),
        })
    }

    fn sum(&mut self) -> Result<GPoly> {
        let mut acc = self.product()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    acc = &acc + &self.product()?;
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    acc = &acc - &self.product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<GPoly> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.at += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<GPoly> {
        if let Some(Tok::Minus) = self.peek() {
            self.at += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<GPoly> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.at += 1;
            match self.peek() {
                Some(Tok::Num(n)) if n.is_integer() => {
                    let e: u32 = match n.numer().try_into() {
                        Ok(e) => e,
                        Err(_) => return self.fail("small non-negative exponent"),
                    };
                    self.at += 1;
                    return Ok(base.pow(e));
                }
                _ => return self.fail("non-negative integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<GPoly> {
        let tok = self.peek().cloned();
        match tok {
            Some(Tok::Num(n)) => {
                self.at += 1;
                Ok(GPoly::constant(self.chart, n))
            }
            Some(Tok::Ident(name)) => match self.chart.index_of(&name) {
                Some(i) => {
                    self.at += 1;
                    Ok(GPoly::var(self.chart, i))
                }
                None => Err(Error::UnknownVariable(name)),
            },
            Some(Tok::LParen) => {
                self.at += 1;
                let inner = self.sum()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.fail("`)`");
                }
                self.at += 1;
                Ok(inner)
            }
            _ => self.fail("number, identifier or `(`"),
        }
    }
}

/// Parses an expression into a polynomial on `chart`.
pub fn parse_poly(src: &str, chart: &ChartRef) -> Result<GPoly> {
    let toks = lex(src, chart)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: src.len(),
        chart,
    };
    let out = p.sum()?;
    if p.at != p.toks.len() {
        return p.fail("operator or end of input");
    }
    Ok(out)
}
