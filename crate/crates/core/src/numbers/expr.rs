//! Small expression language over flavored rationals.
//!
//! ```text
//! 1/2@s + 1/3@s          ->  5/6@s
//! |-3/2@s|_s * 2@w       ->  3/1@w
//! 1/2@s <s 2/3@s         ->  T
//! ```

use std::fmt;

use serde::Serialize;

use super::{
    abs_value, rat_add, rat_compare, rat_div, rat_mul, rat_neg, rat_sub, NumberError, ParaRat,
};
use crate::syntax::Flavor;
use crate::truth::{Relation, TruthValue};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum RatExprValue {
    Number(ParaRat),
    Truth(TruthValue),
}

impl fmt::Display for RatExprValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatExprValue::Number(q) => write!(f, "{q}"),
            RatExprValue::Truth(v) => write!(f, "{v}"),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T, NumberError> {
        Err(NumberError::Parse(format!("{msg} at byte {}", self.pos)))
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.rest().starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn flavor(&mut self) -> Result<Flavor, NumberError> {
        let start = self.pos;
        match self.rest().chars().next() {
            Some('s') | Some('w') => self.pos += 1,
            _ => return self.err("expected a flavor"),
        }
        if self.src[start..self.pos] == *"w" {
            for (open, close) in [("(", ')'), ("[", ']')] {
                let save = self.pos;
                if self.rest().starts_with(open) {
                    self.pos += 1;
                    if !self.digits().is_empty() && self.rest().starts_with(close) {
                        self.pos += 1;
                        break;
                    }
                    self.pos = save;
                }
            }
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|e: crate::syntax::FlavorParseError| NumberError::Parse(e.0))
    }

    fn statement(&mut self) -> Result<RatExprValue, NumberError> {
        let left = self.sum()?;
        self.skip_ws();
        let rel = if self.eat("=") {
            Relation::Eq
        } else if self.eat("<") {
            Relation::Lt
        } else {
            return self.finish(RatExprValue::Number(left));
        };
        let alpha = self.flavor()?;
        let right = self.sum()?;
        self.finish(RatExprValue::Truth(rat_compare(&left, &right, rel, alpha)))
    }

    fn finish(&mut self, v: RatExprValue) -> Result<RatExprValue, NumberError> {
        self.skip_ws();
        if self.pos < self.src.len() {
            return self.err("unexpected input");
        }
        Ok(v)
    }

    fn sum(&mut self) -> Result<ParaRat, NumberError> {
        let mut acc = self.product()?;
        loop {
            if self.eat("+") {
                acc = rat_add(&acc, &self.product()?);
            } else if self.eat("-") {
                acc = rat_sub(&acc, &self.product()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<ParaRat, NumberError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat("*") {
                acc = rat_mul(&acc, &self.unary()?);
            } else if self.eat("/") {
                acc = rat_div(&acc, &self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<ParaRat, NumberError> {
        if self.eat("-") {
            return Ok(rat_neg(&self.unary()?));
        }
        if self.eat("(") {
            let v = self.sum()?;
            if !self.eat(")") {
                return self.err("expected `)`");
            }
            return Ok(v);
        }
        if self.eat("|") {
            let v = self.sum()?;
            if !self.eat("|_") {
                return self.err("expected `|_flavor` after absolute value");
            }
            let alpha = self.flavor()?;
            return Ok(abs_value(&v, alpha));
        }
        self.literal()
    }

    fn literal(&mut self) -> Result<ParaRat, NumberError> {
        self.skip_ws();
        let start = self.pos;
        if self.digits().is_empty() {
            return self.err("expected a rational literal");
        }
        if self.rest().starts_with('/') {
            let save = self.pos;
            self.pos += 1;
            if self.digits().is_empty() || !self.rest().starts_with('@') {
                self.pos = save;
                return self.err("rational literal needs an `@flavor` suffix");
            }
        }
        if !self.rest().starts_with('@') {
            return self.err("rational literal needs an `@flavor` suffix");
        }
        let frac = &self.src[start..self.pos];
        self.pos += 1;
        let flavor = self.flavor()?;
        format!("{frac}@{flavor}").parse()
    }
}

/// Evaluates an arithmetic expression over `a/b@flavor` literals, optionally
/// compared with `=α` or `<α`.
pub fn eval_rat_expr(src: &str) -> Result<RatExprValue, NumberError> {
    Parser { src, pos: 0 }.statement()
}
