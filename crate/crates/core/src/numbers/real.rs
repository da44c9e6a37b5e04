//! Reals in [0, 1) as decimal expansions read to a finite depth.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{abs_value, rat_compare, rat_sub, NumberError, ParaRat};
use crate::syntax::Flavor;
use crate::truth::{Relation, TruthValue};

/// Digit generators for reals that are not given as a table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DigitRule {
    /// Decimal expansion of `num / den`, taken modulo 1.
    RationalExpansion { num: u64, den: u64 },
    /// The given digits repeated forever.
    Repeating(Vec<u8>),
}

impl DigitRule {
    fn digit(&self, p: usize) -> u8 {
        match self {
            DigitRule::RationalExpansion { num, den } => {
                let den = u128::from((*den).max(1));
                let mut rem = u128::from(*num) % den;
                let mut d = 0;
                for _ in 0..p {
                    rem *= 10;
                    d = (rem / den) as u8;
                    rem %= den;
                }
                d
            }
            DigitRule::Repeating(cycle) if cycle.is_empty() => 0,
            DigitRule::Repeating(cycle) => cycle[(p - 1) % cycle.len()],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RealRepr {
    Digits(Vec<u8>),
    Generated { rule: DigitRule, budget: usize },
}

/// A flavored real `0.d1 d2 d3 ...`, known to a finite number of digits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParaReal {
    pub repr: RealRepr,
    pub flavor: Flavor,
}

impl ParaReal {
    /// Digits must lie in `0..=9`.
    pub fn from_digits(digits: Vec<u8>, flavor: Flavor) -> Result<ParaReal, NumberError> {
        if let Some(bad) = digits.iter().find(|d| **d > 9) {
            return Err(NumberError::Parse(format!("digit {bad} out of range")));
        }
        Ok(ParaReal {
            repr: RealRepr::Digits(digits),
            flavor,
        })
    }

    pub fn generated(rule: DigitRule, budget: usize, flavor: Flavor) -> ParaReal {
        ParaReal {
            repr: RealRepr::Generated { rule, budget },
            flavor,
        }
    }

    /// Reads a digit file: a `0.` header followed by digits. Whitespace is ignored.
    pub fn parse_digits(text: &str, flavor: Flavor) -> Result<ParaReal, NumberError> {
        let body = text
            .trim_start()
            .strip_prefix("0.")
            .ok_or_else(|| NumberError::Parse("digit table must start with `0.`".into()))?;
        let mut digits = Vec::new();
        for c in body.chars().filter(|c| !c.is_whitespace()) {
            let d = c.to_digit(10).ok_or_else(|| {
                NumberError::Parse(format!("unexpected character `{c}` in digit table"))
            })?;
            digits.push(d as u8);
        }
        ParaReal::from_digits(digits, flavor)
    }

    /// How many digits are available.
    pub fn depth(&self) -> usize {
        match &self.repr {
            RealRepr::Digits(d) => d.len(),
            RealRepr::Generated { budget, .. } => *budget,
        }
    }

    /// Digit at 1-based position `p`.
    pub fn digit(&self, p: usize) -> Result<u8, NumberError> {
        if p == 0 || p > self.depth() {
            return Err(NumberError::DepthExceeded(p as u64));
        }
        Ok(match &self.repr {
            RealRepr::Digits(d) => d[p - 1],
            RealRepr::Generated { rule, .. } => rule.digit(p),
        })
    }

    pub fn digits(&self, depth: usize) -> Result<Vec<u8>, NumberError> {
        (1..=depth).map(|p| self.digit(p)).collect()
    }

    /// The truncation `0.d1 ... dn` as a rational.
    pub fn prefix_rational(&self, n: usize) -> Result<ParaRat, NumberError> {
        let mut num = BigInt::zero();
        let mut den = BigInt::from(1);
        for d in self.digits(n)? {
            num = num * 10 + d;
            den *= 10;
        }
        Ok(ParaRat {
            value: BigRational::new(num, den),
            flavor: self.flavor,
        })
    }

    /// Sequence of truncations of lengths `1..=n`.
    pub fn cauchy_prefix(&self, n: usize) -> Result<Vec<ParaRat>, NumberError> {
        (1..=n).map(|k| self.prefix_rational(k)).collect()
    }
}

impl fmt::Display for ParaReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("0.")?;
        for p in 1..=self.depth() {
            write!(f, "{}", self.digit(p).map_err(|_| fmt::Error)?)?;
        }
        Ok(())
    }
}

impl Serialize for ParaReal {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("ParaReal", 2)?;
        st.serialize_field("digits", &self.to_string())?;
        st.serialize_field("flavor", &self.flavor)?;
        st.end()
    }
}

/// Finite-prefix Cauchy test: for every listed ε with `0 <_α ε`, some index
/// `m` before the last has `|q_m - q_n|_α <_α ε` for every later `n`.
pub fn cauchy_check(seq: &[ParaRat], epsilons: &[ParaRat], alpha: Flavor) -> TruthValue {
    let zero = ParaRat::zero(Flavor::S);
    epsilons.iter().fold(TruthValue::True, |acc, eps| {
        let positive = rat_compare(&zero, eps, Relation::Lt, alpha);
        let settles = (0..seq.len().saturating_sub(1)).fold(TruthValue::False, |some, m| {
            let tail = ((m + 1)..seq.len()).fold(TruthValue::True, |all, n| {
                let gap = abs_value(&rat_sub(&seq[m], &seq[n]), alpha);
                all.conjoin(rat_compare(&gap, eps, Relation::Lt, alpha))
            });
            some.disjoin(tail)
        });
        acc.conjoin(positive.implies(settles))
    })
}

/// Compares two reals on their first `depth` digits.
///
/// Differing prefixes give the classical verdict. Agreeing prefixes leave the
/// comparison open: it reads as `Both(α)` when α is inconsistent and one
/// operand carries α, and otherwise as equal.
pub fn real_compare(
    x: &ParaReal,
    y: &ParaReal,
    rel: Relation,
    alpha: Flavor,
    depth: usize,
) -> Result<TruthValue, NumberError> {
    let dx = x.digits(depth)?;
    let dy = y.digits(depth)?;
    let verdict = match dx.cmp(&dy) {
        Ordering::Equal => {
            let matched = alpha != Flavor::S && (x.flavor == alpha || y.flavor == alpha);
            match TruthValue::both(alpha).filter(|_| matched) {
                Some(b) => b,
                None => TruthValue::from_bool(rel == Relation::Eq),
            }
        }
        Ordering::Less => TruthValue::from_bool(rel == Relation::Lt),
        Ordering::Greater => TruthValue::False,
    };
    Ok(verdict)
}
