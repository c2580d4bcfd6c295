use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use super::polynomial::{Monomial, ValuedPolynomial};
use super::scalar::ValuedScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

struct RawTerm {
    coeff: BigRational,
    t: BigRational,
    x: Vec<(usize, u32)>,
    h: BigRational,
}

impl Parser {
    fn new(src: &str, line: usize) -> Self {
        let chars = src.chars().map(|c| if c == '−' { '-' } else { c }).collect();
        Self { chars, pos: 0, line }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            line: self.line,
            column: self.pos + 1,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && (self.chars[self.pos].is_whitespace() || self.chars[self.pos] == '*') {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
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

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let s = self.chars[start..self.pos].iter().collect::<String>();
        Ok(s.parse().expect("ascii digits"))
    }

    /// `n` or `n/d`, optionally signed.
    fn rational(&mut self, signed: bool) -> Result<BigRational, ParseError> {
        let negative = signed && self.eat('-');
        let num = self.digits()?;
        let mut r = BigRational::from_integer(num);
        if self.eat('/') {
            let den = self.digits()?;
            if den.is_zero() {
                return self.err("zero denominator");
            }
            r /= BigRational::from_integer(den);
        }
        Ok(if negative { -r } else { r })
    }

    /// `^k`, `^{k}`, `^{-a/b}`; absent means one.
    fn exponent(&mut self) -> Result<BigRational, ParseError> {
        if !self.eat('^') {
            return Ok(BigRational::one());
        }
        if self.eat('{') {
            let r = self.rational(true)?;
            self.expect('}')?;
            Ok(r)
        } else {
            self.rational(true)
        }
    }

    fn variable_index(&mut self) -> Result<usize, ParseError> {
        self.expect('_')?;
        let braced = self.eat('{');
        if self.eat('F') {
            self.eat('_');
        }
        let n = self.digits()?;
        if braced {
            self.expect('}')?;
        }
        let n = usize::try_from(n).ok().filter(|&n| n >= 1);
        match n {
            Some(n) => Ok(n - 1),
            None => self.err("face index must be at least 1"),
        }
    }

    fn term(&mut self) -> Result<RawTerm, ParseError> {
        let mut term = RawTerm {
            coeff: BigRational::one(),
            t: BigRational::zero(),
            x: Vec::new(),
            h: BigRational::zero(),
        };
        let mut any = false;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            term.coeff = self.rational(false)?;
            any = true;
        }
        loop {
            match self.peek() {
                Some('t') => {
                    self.pos += 1;
                    term.t += self.exponent()?;
                }
                Some('h') => {
                    self.pos += 1;
                    term.h += self.exponent()?;
                }
                Some('x') => {
                    self.pos += 1;
                    let i = self.variable_index()?;
                    let e = self.exponent()?;
                    if !e.is_integer() || e < BigRational::zero() {
                        return self.err("variable exponents must be nonnegative integers");
                    }
                    let e = u32::try_from(e.to_integer()).or_else(|_| self.err("exponent too large"))?;
                    term.x.push((i, e));
                }
                _ => break,
            }
            any = true;
        }
        if !any {
            return self.err("expected a term");
        }
        Ok(term)
    }

    fn polynomial(&mut self) -> Result<Vec<RawTerm>, ParseError> {
        let mut out = Vec::new();
        let mut negative = self.eat('-');
        if !negative {
            self.eat('+');
        }
        loop {
            let mut t = self.term()?;
            if negative {
                t.coeff = -t.coeff;
            }
            out.push(t);
            if self.eat('+') {
                negative = false;
            } else if self.eat('-') {
                negative = true;
            } else {
                break;
            }
        }
        if self.peek().is_some() {
            return self.err("unexpected input");
        }
        Ok(out)
    }
}

fn assemble(terms: Vec<RawTerm>, nvars: usize) -> ValuedPolynomial {
    let mut p = ValuedPolynomial::zero(nvars);
    for t in terms {
        let mut x = vec![0; nvars];
        for (i, e) in t.x {
            x[i] += e;
        }
        p.add_term(Monomial { x, h: t.h }, ValuedScalar::monomial(t.coeff, t.t));
    }
    p
}

fn max_var(terms: &[RawTerm]) -> usize {
    terms
        .iter()
        .flat_map(|t| t.x.iter().map(|(i, _)| i + 1))
        .max()
        .unwrap_or(0)
}

/// Parses one polynomial such as `t^{17}x_{F4}^2h^{17} + x_{F2}x_{F4}`.
/// With `nvars` unset the number of variables is the largest index used.
pub fn parse_polynomial(src: &str, nvars: Option<usize>) -> Result<ValuedPolynomial, ParseError> {
    let terms = Parser::new(src, 1).polynomial()?;
    let used = max_var(&terms);
    let n = nvars.unwrap_or(used);
    if used > n {
        return Err(ParseError {
            line: 1,
            column: 1,
            message: format!("variable index {used} exceeds {n}"),
        });
    }
    Ok(assemble(terms, n))
}

/// Parses a quadric file: `vars <g>` once, then `name = polynomial` entries.
/// An entry continues on following lines until the next `name =`. `#`
/// starts a comment.
pub fn parse_quadric_file(src: &str) -> Result<Vec<(String, ValuedPolynomial)>, ParseError> {
    let mut nvars = None;
    let mut entries: Vec<(String, usize, String)> = Vec::new();
    for (k, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vars ") {
            let n = rest.trim().parse().map_err(|_| ParseError {
                line: k + 1,
                column: 6,
                message: "bad variable count".into(),
            })?;
            nvars = Some(n);
            continue;
        }
        match line.split_once('=') {
            Some((name, body)) if is_name(name.trim()) => {
                entries.push((name.trim().to_string(), k + 1, body.to_string()))
            }
            _ => match entries.last_mut() {
                Some(e) => {
                    e.2.push(' ');
                    e.2.push_str(line);
                }
                None => {
                    return Err(ParseError {
                        line: k + 1,
                        column: 1,
                        message: "expected `name = polynomial`".into(),
                    })
                }
            },
        }
    }
    let mut out = Vec::new();
    let mut raws = Vec::new();
    for (name, line, body) in entries {
        let terms = Parser::new(&body, line).polynomial()?;
        raws.push((name, terms));
    }
    let n = nvars.unwrap_or_else(|| raws.iter().map(|(_, t)| max_var(t)).max().unwrap_or(0));
    for (name, terms) in raws {
        if max_var(&terms) > n {
            return Err(ParseError {
                line: 0,
                column: 0,
                message: format!("{name} uses more than {n} variables"),
            });
        }
        out.push((name, assemble(terms, n)));
    }
    Ok(out)
}

fn is_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}
