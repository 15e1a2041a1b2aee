//! Recursive-descent parser for terms and linear combinations.
//!
//! ```text
//! term    := INT | NAME '(' term (',' term)* ')'
//! lincomb := ['-'] sterm (('+' | '-') sterm)*
//! sterm   := [RATIONAL '*'] term
//! ```
//!
//! Whitespace is allowed between tokens. Positions in errors are byte
//! offsets into the input.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::signature::Signature;
use crate::term::{LinComb, TreeTerm};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    sig: &'a Signature,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, sig: &'a Signature) -> Self {
        Parser { src, pos: 0, sig }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(Error::syntax(
                self.pos,
                format!("expected `{want}`, found `{c}`"),
            )),
            None => Err(Error::syntax(
                self.pos,
                format!("expected `{want}`, found end of input"),
            )),
        }
    }

    fn digits(&mut self) -> (usize, &'a str) {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (start, &self.src[start..self.pos])
    }

    fn identifier(&mut self) -> (usize, &'a str) {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek_raw(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        (start, &self.src[start..self.pos])
    }

    fn leaf(&self, start: usize, text: &str) -> Result<TreeTerm> {
        match text.parse::<u32>() {
            Ok(0) => Err(Error::syntax(start, "variables are numbered from 1")),
            Ok(v) => Ok(TreeTerm::leaf(v)),
            Err(_) => Err(Error::syntax(
                start,
                format!("variable `{text}` is too large"),
            )),
        }
    }

    fn term(&mut self) -> Result<TreeTerm> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let (start, text) = self.digits();
                self.leaf(start, text)
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => self.node(),
            Some(c) => Err(Error::syntax(
                self.pos,
                format!("expected a term, found `{c}`"),
            )),
            None => Err(Error::syntax(
                self.pos,
                "expected a term, found end of input",
            )),
        }
    }

    fn node(&mut self) -> Result<TreeTerm> {
        let (_, name) = self.identifier();
        let op = self
            .sig
            .lookup(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        self.expect('(')?;
        let mut children = vec![self.term()?];
        while self.peek() == Some(',') {
            self.pos += 1;
            children.push(self.term()?);
        }
        self.expect(')')?;
        let expected = self.sig.generator(op).arity;
        if children.len() != expected {
            return Err(Error::ArityMismatch {
                name: name.to_string(),
                expected,
                found: children.len(),
            });
        }
        Ok(TreeTerm::node(op, children))
    }

    /// `[RATIONAL '*'] term`
    fn signed_term(&mut self) -> Result<(Rational, TreeTerm)> {
        if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            return Ok((Rational::one(), self.term()?));
        }
        let (start, num) = self.digits();
        match self.peek() {
            Some('/') => {
                self.pos += 1;
                let (dstart, den) = self.digits();
                if den.is_empty() {
                    return Err(Error::syntax(dstart, "expected a denominator"));
                }
                let den: BigInt = den.parse().unwrap();
                if den.is_zero() {
                    return Err(Error::syntax(dstart, "zero denominator"));
                }
                self.expect('*')?;
                let c = Rational::new(num.parse().unwrap(), den);
                Ok((c, self.term()?))
            }
            Some('*') => {
                self.pos += 1;
                let c = Rational::from_integer(num.parse().unwrap());
                Ok((c, self.term()?))
            }
            _ => Ok((Rational::one(), self.leaf(start, num)?)),
        }
    }

    fn lincomb(&mut self) -> Result<Vec<(Rational, TreeTerm, usize)>> {
        let mut out = Vec::new();
        let mut negate = false;
        if self.peek() == Some('-') {
            self.pos += 1;
            negate = true;
        }
        loop {
            let start = {
                self.skip_ws();
                self.pos
            };
            let (c, t) = self.signed_term()?;
            out.push((if negate { -c } else { c }, t, start));
            match self.peek() {
                Some('+') => negate = false,
                Some('-') => negate = true,
                _ => break,
            }
            self.pos += 1;
        }
        Ok(out)
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(Error::syntax(self.pos, format!("unexpected `{c}`"))),
        }
    }
}

fn check_multilinear(t: &TreeTerm, sig: &Signature) -> Result<()> {
    if t.is_multilinear() {
        Ok(())
    } else {
        Err(Error::NotMultilinear(format!(
            "leaves of `{}` must be exactly 1..{}",
            t.render(sig),
            t.arity()
        )))
    }
}

pub fn parse_term(text: &str, sig: &Signature) -> Result<TreeTerm> {
    let mut p = Parser::new(text, sig);
    let t = p.term()?;
    p.finish()?;
    check_multilinear(&t, sig)?;
    Ok(t)
}

pub fn parse_lincomb(text: &str, sig: &Signature) -> Result<LinComb> {
    let mut p = Parser::new(text, sig);
    let summands = p.lincomb()?;
    p.finish()?;
    let arity = summands[0].1.arity();
    let mut out = LinComb::zero(arity);
    for (c, t, _) in summands {
        check_multilinear(&t, sig)?;
        if t.arity() != arity {
            return Err(Error::MixedArity(arity, t.arity()));
        }
        out.add_term(t, c);
    }
    Ok(out)
}
