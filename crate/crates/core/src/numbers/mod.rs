//! The flavored number tower: naturals, integers and rationals carrying a
//! consistency flavor, recursion on naturals, absolute values, truncated reals
//! and finite metric-space checks.
//!
//! Arithmetic acts on the classical value and joins the operand flavors.
//! Comparisons go through [`relation_value`], the same rule the canonical
//! structure uses for its relations.

mod expr;
mod metric;
mod real;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::Flavor;
use crate::truth::{relation_value, Relation, TruthValue};

pub use expr::{eval_rat_expr, RatExprValue};
pub use metric::{
    coherence_check, metric_axioms_check, CoherenceReport, CoherenceViolation, ContinuityCode,
    MetricViolation, Quad,
};
pub use real::{cauchy_check, real_compare, DigitRule, ParaReal, RealRepr};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumberError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("natural number overflow")]
    Overflow,
    #[error("recursion depth {0} exceeds the limit")]
    DepthExceeded(u64),
    #[error("{0}")]
    Parse(String),
}

/// A flavored natural number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParaNat {
    pub magnitude: u64,
    pub flavor: Flavor,
}

impl ParaNat {
    pub fn new(magnitude: u64, flavor: Flavor) -> ParaNat {
        ParaNat { magnitude, flavor }
    }

    pub fn zero(flavor: Flavor) -> ParaNat {
        ParaNat::new(0, flavor)
    }

    pub fn one(flavor: Flavor) -> ParaNat {
        ParaNat::new(1, flavor)
    }
}

impl fmt::Display for ParaNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.magnitude, self.flavor)
    }
}

/// Reads `m_fl`, e.g. `3_s` or `0_w[1]`.
impl FromStr for ParaNat {
    type Err = NumberError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad =
            || NumberError::Parse(format!("expected a flavored natural like `3_w`, got `{s}`"));
        let (m, fl) = s.trim().split_once('_').ok_or_else(bad)?;
        Ok(ParaNat::new(
            m.parse().map_err(|_| bad())?,
            fl.parse().map_err(|_| bad())?,
        ))
    }
}

pub fn nat_add(x: ParaNat, y: ParaNat) -> Result<ParaNat, NumberError> {
    let magnitude = x
        .magnitude
        .checked_add(y.magnitude)
        .ok_or(NumberError::Overflow)?;
    Ok(ParaNat::new(magnitude, x.flavor.join(y.flavor)))
}

pub fn nat_mul(x: ParaNat, y: ParaNat) -> Result<ParaNat, NumberError> {
    let magnitude = x
        .magnitude
        .checked_mul(y.magnitude)
        .ok_or(NumberError::Overflow)?;
    Ok(ParaNat::new(magnitude, x.flavor.join(y.flavor)))
}

pub fn nat_compare(x: ParaNat, y: ParaNat, rel: Relation, alpha: Flavor) -> TruthValue {
    relation_value(
        rel,
        x.magnitude.cmp(&y.magnitude),
        alpha,
        x.flavor,
        y.flavor,
    )
}

/// Primitive recursion: `h(0, m) = f(m)`, `h(k + 1, m) = g(k, m, h(k, m))`,
/// where the counter `k` carries the flavor of `n`. Fails once `n` exceeds
/// `max_depth` steps.
pub fn prim_rec<M, T>(
    f: impl Fn(&M) -> Result<T, NumberError>,
    g: impl Fn(ParaNat, &M, T) -> Result<T, NumberError>,
    n: ParaNat,
    m: &M,
    max_depth: u64,
) -> Result<T, NumberError> {
    if n.magnitude > max_depth {
        return Err(NumberError::DepthExceeded(n.magnitude));
    }
    let mut acc = f(m)?;
    for k in 0..n.magnitude {
        acc = g(ParaNat::new(k, n.flavor), m, acc)?;
    }
    Ok(acc)
}

/// `base^exp` by primitive recursion on the exponent, starting from the
/// exponent's flavored one.
pub fn nat_pow(base: ParaNat, exp: ParaNat, max_depth: u64) -> Result<ParaNat, NumberError> {
    prim_rec(
        |_| Ok(ParaNat::one(exp.flavor)),
        |_, m: &ParaNat, acc| nat_mul(acc, *m),
        exp,
        &base,
        max_depth,
    )
}

/// A flavored integer. The pair view `(a, b)` stands for `a - b` with one
/// component zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParaInt {
    pub value: BigInt,
    pub flavor: Flavor,
}

impl ParaInt {
    pub fn new(value: impl Into<BigInt>, flavor: Flavor) -> ParaInt {
        ParaInt {
            value: value.into(),
            flavor,
        }
    }

    pub fn from_nat(n: ParaNat) -> ParaInt {
        ParaInt::new(n.magnitude, n.flavor)
    }

    /// `(a, b)` identified with `a - b`; flavor is the join.
    pub fn from_pair(a: ParaNat, b: ParaNat) -> ParaInt {
        ParaInt::new(
            BigInt::from(a.magnitude) - BigInt::from(b.magnitude),
            a.flavor.join(b.flavor),
        )
    }

    /// Canonical pair with at least one component zero.
    pub fn pair(&self) -> (BigInt, BigInt) {
        if self.value.is_negative() {
            (BigInt::zero(), -self.value.clone())
        } else {
            (self.value.clone(), BigInt::zero())
        }
    }

    pub fn add(&self, other: &ParaInt) -> ParaInt {
        ParaInt::new(&self.value + &other.value, self.flavor.join(other.flavor))
    }

    pub fn neg(&self) -> ParaInt {
        ParaInt::new(-self.value.clone(), self.flavor)
    }

    pub fn mul(&self, other: &ParaInt) -> ParaInt {
        ParaInt::new(&self.value * &other.value, self.flavor.join(other.flavor))
    }

    pub fn compare(&self, other: &ParaInt, rel: Relation, alpha: Flavor) -> TruthValue {
        relation_value(
            rel,
            self.value.cmp(&other.value),
            alpha,
            self.flavor,
            other.flavor,
        )
    }
}

/// A flavored rational in lowest terms with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParaRat {
    pub value: BigRational,
    pub flavor: Flavor,
}

impl ParaRat {
    pub fn zero(flavor: Flavor) -> ParaRat {
        ParaRat {
            value: BigRational::zero(),
            flavor,
        }
    }

    pub fn one(flavor: Flavor) -> ParaRat {
        ParaRat {
            value: BigRational::one(),
            flavor,
        }
    }

    pub fn integer(n: i64, flavor: Flavor) -> ParaRat {
        ParaRat {
            value: BigRational::from_integer(n.into()),
            flavor,
        }
    }

    pub fn numer(&self) -> &BigInt {
        self.value.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.value.denom()
    }

    /// The fraction as a pair of flavored integers.
    pub fn as_ints(&self) -> (ParaInt, ParaInt) {
        (
            ParaInt::new(self.numer().clone(), self.flavor),
            ParaInt::new(self.denom().clone(), self.flavor),
        )
    }
}

/// Lowest-terms representative of `a / b`.
pub fn rat_canonicalize(
    a: impl Into<BigInt>,
    b: impl Into<BigInt>,
    flavor: Flavor,
) -> Result<ParaRat, NumberError> {
    let b = b.into();
    if b.is_zero() {
        return Err(NumberError::ZeroDenominator);
    }
    Ok(ParaRat {
        value: BigRational::new(a.into(), b),
        flavor,
    })
}

pub fn rat_add(x: &ParaRat, y: &ParaRat) -> ParaRat {
    ParaRat {
        value: &x.value + &y.value,
        flavor: x.flavor.join(y.flavor),
    }
}

pub fn rat_neg(x: &ParaRat) -> ParaRat {
    ParaRat {
        value: -x.value.clone(),
        flavor: x.flavor,
    }
}

pub fn rat_sub(x: &ParaRat, y: &ParaRat) -> ParaRat {
    rat_add(x, &rat_neg(y))
}

pub fn rat_mul(x: &ParaRat, y: &ParaRat) -> ParaRat {
    ParaRat {
        value: &x.value * &y.value,
        flavor: x.flavor.join(y.flavor),
    }
}

pub fn rat_inv(x: &ParaRat) -> Result<ParaRat, NumberError> {
    if x.value.is_zero() {
        return Err(NumberError::ZeroDenominator);
    }
    Ok(ParaRat {
        value: x.value.recip(),
        flavor: x.flavor,
    })
}

pub fn rat_div(x: &ParaRat, y: &ParaRat) -> Result<ParaRat, NumberError> {
    Ok(rat_mul(x, &rat_inv(y)?))
}

pub fn rat_compare(x: &ParaRat, y: &ParaRat, rel: Relation, alpha: Flavor) -> TruthValue {
    relation_value(rel, x.value.cmp(&y.value), alpha, x.flavor, y.flavor)
}

/// `x ≤_α y` as the disjunction of `<_α` and `=_α`.
pub fn rat_le(x: &ParaRat, y: &ParaRat, alpha: Flavor) -> TruthValue {
    rat_compare(x, y, Relation::Lt, alpha).disjoin(rat_compare(x, y, Relation::Eq, alpha))
}

/// `|q|_α`: `q` when `0 ≤_α q` is designated, `-q` otherwise.
pub fn abs_value(q: &ParaRat, alpha: Flavor) -> ParaRat {
    if rat_le(&ParaRat::zero(Flavor::S), q, alpha).is_designated() {
        q.clone()
    } else {
        rat_neg(q)
    }
}

impl fmt::Display for ParaRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}@{}", self.numer(), self.denom(), self.flavor)
    }
}

/// Parses `a/b@flavor` or `a@flavor`.
impl FromStr for ParaRat {
    type Err = NumberError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || {
            NumberError::Parse(format!(
                "invalid rational literal `{s}` (expected a/b@flavor)"
            ))
        };
        let (frac, flavor) = s.trim().split_once('@').ok_or_else(bad)?;
        let flavor: Flavor = flavor.parse().map_err(|_| bad())?;
        let (num, den) = frac.split_once('/').unwrap_or((frac, "1"));
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        rat_canonicalize(num, den, flavor)
    }
}

impl Serialize for ParaRat {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ParaRat {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl PartialOrd for ParaRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by value, then flavor.
impl Ord for ParaRat {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value
            .cmp(&other.value)
            .then(self.flavor.cmp(&other.flavor))
    }
}
