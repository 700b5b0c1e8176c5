//! Symbolic class descriptors such as `([1,2^((l-1)/2)],[1^3,2^((l-3)/2)])s`
//! and index lists such as `m/2`, evaluated exactly at integer parameters.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! descriptor := "s" | "(" partition "," partition ")" ["s"]
//! partition  := "1" | "[" item ("," item)* "]"
//! item       := sum ["^" factor]
//! sum        := product (("+" | "-") product)*
//! product    := factor (("*" | "/") factor)*
//! factor     := integer | name | "(" sum ")" | "-" factor
//! ```
//!
//! Division must be exact and multiplicities must be nonnegative integers;
//! either failure is reported as [`Error::Congruence`], which is how the
//! congruence conditions on `l` are derived.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::permcore::CycleType;
use crate::wreath::ClassDescriptor;

/// Variable bindings, e.g. `l`, `a` or `m`.
pub type Bindings = BTreeMap<char, i64>;

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    vars: &'a Bindings,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, vars: &'a Bindings) -> Parser<'a> {
        Parser {
            s: text.as_bytes(),
            pos: 0,
            vars,
            text,
        }
    }

    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.text))
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn sum(&mut self) -> Result<i64> {
        let mut v = self.product()?;
        loop {
            if self.eat(b'+') {
                v += self.product()?;
            } else if self.eat(b'-') {
                v -= self.product()?;
            } else {
                return Ok(v);
            }
        }
    }

    fn product(&mut self) -> Result<i64> {
        let mut v = self.factor()?;
        loop {
            if self.eat(b'*') {
                v *= self.factor()?;
            } else if self.eat(b'/') {
                let d = self.factor()?;
                if d == 0 {
                    return Err(self.err("division by zero"));
                }
                if v % d != 0 {
                    return Err(Error::Congruence(format!(
                        "{v}/{d} is not an integer in {:?}",
                        self.text
                    )));
                }
                v /= d;
            } else {
                return Ok(v);
            }
        }
    }

    fn factor(&mut self) -> Result<i64> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.sum()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
                digits.parse().map_err(|_| self.err("integer out of range"))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.pos += 1;
                self.vars
                    .get(&(c as char))
                    .copied()
                    .ok_or_else(|| self.err(&format!("unbound variable '{}'", c as char)))
            }
            _ => Err(self.err("expected a number, a variable or '('")),
        }
    }

    /// Parses a partition; returns its parts and whether every written
    /// part and multiplicity was a constant.
    fn partition(&mut self) -> Result<(Vec<usize>, bool)> {
        if self.peek() == Some(b'1') && self.s.get(self.pos + 1).is_none_or(|&c| c != b'^') {
            self.pos += 1;
            return Ok((Vec::new(), true));
        }
        self.expect(b'[')?;
        let mut parts = Vec::new();
        let mut constant = true;
        loop {
            let start = self.pos;
            let base = self.sum()?;
            let mult = if self.eat(b'^') { self.factor()? } else { 1 };
            let written = &self.text[start..self.pos];
            if written.bytes().any(|c| c.is_ascii_alphabetic()) {
                constant = false;
            }
            if mult < 0 {
                return Err(Error::Congruence(format!(
                    "negative multiplicity {mult} in {:?}",
                    self.text
                )));
            }
            if mult > 0 && base <= 0 {
                return Err(Error::Congruence(format!(
                    "nonpositive part {base} in {:?}",
                    self.text
                )));
            }
            parts.extend(std::iter::repeat_n(base as usize, mult as usize));
            if self.eat(b']') {
                break;
            }
            self.expect(b',')?;
        }
        Ok((parts, constant))
    }
}

fn finish_partition(
    parts: Vec<usize>,
    constant: bool,
    ell: usize,
    text: &str,
) -> Result<CycleType> {
    let sum: usize = parts.iter().sum();
    if sum == ell {
        return CycleType::new(parts);
    }
    if constant && sum < ell {
        let mut parts = parts;
        parts.extend(std::iter::repeat_n(1, ell - sum));
        return CycleType::new(parts);
    }
    Err(Error::Congruence(format!(
        "partition in {text:?} sums to {sum}, not l = {ell}"
    )))
}

/// Evaluates an integer expression.
pub fn eval_int(text: &str, vars: &Bindings) -> Result<i64> {
    let mut p = Parser::new(text, vars);
    let v = p.sum()?;
    if !p.at_end() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

/// Evaluates a symbolic partition (such as `[1^3,2^((l-3)/2)]`) at degree
/// `l = vars['l']`.
pub fn eval_partition(text: &str, vars: &Bindings) -> Result<CycleType> {
    let ell = ell_of(vars)?;
    let mut p = Parser::new(text, vars);
    let (parts, constant) = p.partition()?;
    if !p.at_end() {
        return Err(p.err("trailing input"));
    }
    finish_partition(parts, constant, ell, text)
}

/// Evaluates a symbolic descriptor at `l = vars['l']` (and `a` if used).
pub fn eval_descriptor(text: &str, vars: &Bindings) -> Result<ClassDescriptor> {
    let ell = ell_of(vars)?;
    let mut p = Parser::new(text, vars);
    if p.eat(b's') {
        if !p.at_end() {
            return Err(p.err("trailing input"));
        }
        return Ok(ClassDescriptor::Swap(CycleType::trivial(ell)));
    }
    p.expect(b'(')?;
    let (pa, ca) = p.partition()?;
    p.expect(b',')?;
    let (pb, cb) = p.partition()?;
    p.expect(b')')?;
    let swap = p.eat(b's');
    if !p.at_end() {
        return Err(p.err("trailing input"));
    }
    let a = finish_partition(pa, ca, ell, text)?;
    let b = finish_partition(pb, cb, ell, text)?;
    if swap {
        if !b.is_trivial() {
            return Err(Error::Parse(format!(
                "swap descriptors carry a trivial second partition: {text:?}"
            )));
        }
        Ok(ClassDescriptor::Swap(a))
    } else {
        Ok(ClassDescriptor::pair(a, b))
    }
}

/// Whether the text mentions the variable `name`.
pub fn mentions(text: &str, name: char) -> bool {
    text.chars().any(|c| c == name)
}

fn ell_of(vars: &Bindings) -> Result<usize> {
    match vars.get(&'l') {
        Some(&l) if l > 0 => Ok(l as usize),
        _ => Err(Error::InvalidInput(
            "degree l must be bound to a positive value".into(),
        )),
    }
}
