//! Plain-text polynomial grammar: sums and differences of terms, each a
//! product of numeric literals (`3`, `3/2`) and powered variables (`x`,
//! `y^4`) joined by `*`. The printer and parser round-trip exactly.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::{FieldElem, FieldKind};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Poly;
use crate::ring::Ring;

/// Render a polynomial in the grammar this module parses.
pub fn poly_text(p: &Poly, vars: &[String]) -> String {
    p.display(vars).to_string()
}

/// Parse a polynomial over the given variables and coefficient field.
/// Errors carry the byte offset of the offending character within `input`.
pub fn parse_poly(
    input: &str,
    vars: &[String],
    kind: FieldKind,
    ord: &MonomialOrder,
) -> Result<Poly> {
    Parser {
        chars: input.char_indices().peekable(),
        input,
        vars,
        kind,
    }
    .parse(ord)
}

/// Parse against a ring and reduce modulo its defining relations.
pub fn parse_ring_poly(input: &str, ring: &Ring) -> Result<Poly> {
    let p = parse_poly(input, &ring.vars, ring.field, &ring.order)?;
    Ok(ring.reduce(&p))
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    input: &'a str,
    vars: &'a [String],
    kind: FieldKind,
}

impl Parser<'_> {
    fn err(&mut self, what: &str) -> Error {
        let at = match self.chars.peek() {
            Some(&(i, c)) => format!("at offset {i} ('{c}')"),
            None => "at end of input".to_string(),
        };
        Error::input(format!("polynomial syntax: expected {what} {at} in \"{}\"", self.input))
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some(&(_, c)) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn eat(&mut self, want: char) -> bool {
        if matches!(self.chars.peek(), Some(&(_, c)) if c == want) {
            self.chars.next();
            return true;
        }
        false
    }

    fn parse(mut self, ord: &MonomialOrder) -> Result<Poly> {
        let nvars = self.vars.len();
        let mut terms: Vec<(Monomial, FieldElem)> = Vec::new();
        self.skip_ws();
        if self.chars.peek().is_none() {
            return Err(Error::input("polynomial syntax: empty input"));
        }
        let mut negate = false;
        if self.eat('-') {
            negate = true;
        } else {
            self.eat('+');
        }
        loop {
            self.skip_ws();
            let (m, c) = self.term()?;
            let c = if negate { c.neg() } else { c };
            terms.push((m, c));
            self.skip_ws();
            match self.chars.peek() {
                None => break,
                Some(&(_, '+')) => {
                    self.chars.next();
                    negate = false;
                }
                Some(&(_, '-')) => {
                    self.chars.next();
                    negate = true;
                }
                Some(_) => return Err(self.err("'+', '-', or end of polynomial")),
            }
        }
        Ok(Poly::from_terms(nvars, terms, ord))
    }

    /// One product of numeric literals and powered variables.
    fn term(&mut self) -> Result<(Monomial, FieldElem)> {
        let mut coeff = self.kind.one();
        let mut exps = vec![0u32; self.vars.len()];
        loop {
            self.skip_ws();
            match self.chars.peek() {
                Some(&(_, c)) if c.is_ascii_digit() => {
                    coeff = coeff.mul(&self.number()?);
                }
                Some(&(_, c)) if c.is_alphabetic() || c == '_' => {
                    let (i, e) = self.var_power()?;
                    exps[i] = exps[i]
                        .checked_add(e)
                        .ok_or_else(|| Error::input("polynomial syntax: exponent overflow"))?;
                }
                _ => return Err(self.err("a number or a variable")),
            }
            self.skip_ws();
            if !self.eat('*') {
                break;
            }
        }
        Ok((Monomial::from_exps(exps), coeff))
    }

    /// Decimal digits, to an exact integer residue in the coefficient field.
    fn digits(&mut self) -> Result<FieldElem> {
        let mut any = false;
        let mut q_acc = BigInt::from(0u8);
        let mut p_acc = 0u64;
        let p_mod = match self.kind {
            FieldKind::Prime(p) => p,
            FieldKind::Rational => 0,
        };
        while let Some(&(_, c)) = self.chars.peek() {
            let Some(d) = c.to_digit(10) else { break };
            any = true;
            self.chars.next();
            match self.kind {
                FieldKind::Rational => q_acc = q_acc * 10 + d,
                FieldKind::Prime(_) => {
                    p_acc = ((p_acc as u128 * 10 + d as u128) % p_mod as u128) as u64
                }
            }
        }
        if !any {
            return Err(self.err("a digit"));
        }
        Ok(match self.kind {
            FieldKind::Rational => FieldElem::Q(BigRational::from_integer(q_acc)),
            FieldKind::Prime(p) => FieldElem::Fp { v: p_acc, p },
        })
    }

    /// An integer or a ratio of integers.
    fn number(&mut self) -> Result<FieldElem> {
        let num = self.digits()?;
        if !self.eat('/') {
            return Ok(num);
        }
        let den = self.digits()?;
        if den.is_zero() {
            return Err(Error::input(format!(
                "polynomial syntax: zero denominator in \"{}\"",
                self.input
            )));
        }
        num.div(&den)
    }

    /// A variable name, optionally raised via '^' to a decimal power.
    fn var_power(&mut self) -> Result<(usize, u32)> {
        let start = self.chars.peek().map(|&(i, _)| i).unwrap_or(self.input.len());
        while matches!(self.chars.peek(), Some(&(_, c)) if c.is_alphanumeric() || c == '_') {
            self.chars.next();
        }
        let end = self.chars.peek().map(|&(i, _)| i).unwrap_or(self.input.len());
        let name = &self.input[start..end];
        let Some(idx) = self.vars.iter().position(|v| v == name) else {
            return Err(Error::input(format!(
                "polynomial syntax: unknown variable \"{name}\" (ring variables: {})",
                self.vars.join(", ")
            )));
        };
        if !self.eat('^') {
            return Ok((idx, 1));
        }
        let mut exp: u32 = 0;
        let mut any = false;
        while let Some(&(_, c)) = self.chars.peek() {
            let Some(d) = c.to_digit(10) else { break };
            any = true;
            self.chars.next();
            exp = exp
                .checked_mul(10)
                .and_then(|e| e.checked_add(d))
                .ok_or_else(|| Error::input("polynomial syntax: exponent overflow"))?;
        }
        if !any {
            return Err(self.err("an exponent after '^'"));
        }
        Ok((idx, exp))
    }
}
