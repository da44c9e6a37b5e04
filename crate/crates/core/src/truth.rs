//! Ranked paraconsistent truth values.
//!
//! Three kinds of value: `False`, `True`, and `Both(flavor)` for a statement
//! that holds together with its negation at some level of contradiction.
//! The connectives are LP-style: conjunction is the minimum, disjunction the
//! maximum, and negation swaps the classical values while fixing every `Both`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::syntax::{Flavor, RankOp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TruthValue {
    False,
    /// Never carries `Flavor::S`.
    Both(Flavor),
    True,
}

impl TruthValue {
    pub fn from_bool(b: bool) -> TruthValue {
        if b {
            TruthValue::True
        } else {
            TruthValue::False
        }
    }

    /// `Both(flavor)`, or `None` for the consistent flavor.
    pub fn both(flavor: Flavor) -> Option<TruthValue> {
        (flavor != Flavor::S).then_some(TruthValue::Both(flavor))
    }

    pub fn is_classical(self) -> bool {
        !matches!(self, TruthValue::Both(_))
    }

    pub fn is_designated(self) -> bool {
        self != TruthValue::False
    }

    /// The contradiction flavor, if any.
    pub fn flavor(self) -> Option<Flavor> {
        match self {
            TruthValue::Both(f) => Some(f),
            _ => None,
        }
    }

    pub fn negate(self) -> TruthValue {
        match self {
            TruthValue::True => TruthValue::False,
            TruthValue::False => TruthValue::True,
            b => b,
        }
    }

    pub fn conjoin(self, other: TruthValue) -> TruthValue {
        self.min(other)
    }

    pub fn disjoin(self, other: TruthValue) -> TruthValue {
        self.max(other)
    }

    pub fn implies(self, other: TruthValue) -> TruthValue {
        self.negate().disjoin(other)
    }

    pub fn iff(self, other: TruthValue) -> TruthValue {
        self.implies(other).conjoin(other.implies(self))
    }

    /// Semantics of the rank operators: classical values pass through,
    /// contradictions are re-tagged to the operator's level.
    pub fn apply_rank(self, op: RankOp) -> TruthValue {
        self.retag(op.flavor())
    }

    /// Re-tags a contradiction to `flavor`. Reading a value at the consistent
    /// flavor keeps only its positive classical part, so `Both` becomes `False`.
    pub fn retag(self, flavor: Flavor) -> TruthValue {
        match self {
            TruthValue::Both(_) if flavor == Flavor::S => TruthValue::False,
            TruthValue::Both(_) => TruthValue::Both(flavor),
            v => v,
        }
    }

    /// Every value whose contradiction rank is at most `max_rank`, ascending.
    pub fn all_up_to(max_rank: u32) -> Vec<TruthValue> {
        let mut out: Vec<TruthValue> = Flavor::all_up_to(max_rank)
            .into_iter()
            .filter_map(TruthValue::both)
            .collect();
        out.push(TruthValue::True);
        out.push(TruthValue::False);
        out.sort();
        out
    }

    fn order_key(self) -> (u8, i64) {
        match self {
            TruthValue::False => (0, 0),
            TruthValue::Both(Flavor::StrictRanked(n)) => (1, -i64::from(n)),
            TruthValue::Both(Flavor::WRanked(n)) => (2, -i64::from(n)),
            TruthValue::Both(_) => (3, 0),
            TruthValue::True => (4, 0),
        }
    }
}

/// `False < Both(w[n]) < Both(w(n)) < Both(w) < True`, where within each
/// ranked family a higher rank sits closer to `False`.
impl Ord for TruthValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for TruthValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<bool> for TruthValue {
    fn from(b: bool) -> Self {
        TruthValue::from_bool(b)
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TruthValue::True => f.write_str("T"),
            TruthValue::False => f.write_str("F"),
            TruthValue::Both(fl) => write!(f, "B_{fl}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid truth value `{0}` (expected T, F, B_w, B_w(N) or B_w[N])")]
pub struct TruthParseError(pub String);

impl FromStr for TruthValue {
    type Err = TruthParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "T" => Ok(TruthValue::True),
            "F" => Ok(TruthValue::False),
            other => other
                .strip_prefix("B_")
                .and_then(|fl| fl.parse::<Flavor>().ok())
                .and_then(TruthValue::both)
                .ok_or_else(|| TruthParseError(s.to_string())),
        }
    }
}

impl Serialize for TruthValue {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TruthValue {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The two order-like relation families shared by every level of the number tower.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Relation {
    Eq,
    Lt,
}

/// Value of `a =_α b` or `a <_α b` given how the magnitudes compare and the
/// flavors of the operands.
///
/// Classical truth always yields `True`. A classically false equation yields
/// `Both(α)` when α is inconsistent and one operand carries α; a strict
/// inequality does the same only at equal magnitudes.
pub fn relation_value(
    rel: Relation,
    magnitudes: Ordering,
    alpha: Flavor,
    left: Flavor,
    right: Flavor,
) -> TruthValue {
    let matched = alpha != Flavor::S && (left == alpha || right == alpha);
    let window = TruthValue::both(alpha).filter(|_| matched);
    match (rel, magnitudes) {
        (Relation::Eq, Ordering::Equal) | (Relation::Lt, Ordering::Less) => TruthValue::True,
        (Relation::Eq, _) | (Relation::Lt, Ordering::Equal) => window.unwrap_or(TruthValue::False),
        (Relation::Lt, Ordering::Greater) => TruthValue::False,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use TruthValue::*;

    #[test]
    fn order_places_strict_ranks_below_weak() {
        let chain = [
            False,
            Both(Flavor::StrictRanked(2)),
            Both(Flavor::StrictRanked(0)),
            Both(Flavor::WRanked(5)),
            Both(Flavor::WRanked(0)),
            Both(Flavor::W),
            True,
        ];
        for w in chain.windows(2) {
            assert!(w[0] < w[1], "{} < {}", w[0], w[1]);
        }
    }

    #[test]
    fn connective_examples() {
        assert_eq!(True.negate(), False);
        assert_eq!(Both(Flavor::WRanked(2)).negate(), Both(Flavor::WRanked(2)));
        assert_eq!(True.conjoin(Both(Flavor::W)), Both(Flavor::W));
        assert_eq!(Both(Flavor::W).implies(False), Both(Flavor::W));
        for v in TruthValue::all_up_to(3) {
            assert_eq!(False.disjoin(v), v);
        }
    }

    #[test]
    fn designation() {
        assert!(True.is_designated());
        assert!(Both(Flavor::StrictRanked(0)).is_designated());
        assert!(!False.is_designated());
    }

    #[test]
    fn rank_operator_retags_only_contradictions() {
        assert_eq!(True.apply_rank(RankOp::Weak(3)), True);
        assert_eq!(
            Both(Flavor::W).apply_rank(RankOp::Strict(1)),
            Both(Flavor::StrictRanked(1))
        );
        for v in TruthValue::all_up_to(3) {
            let once = v.apply_rank(RankOp::Weak(1));
            assert_eq!(once.apply_rank(RankOp::Weak(1)), once);
        }
    }

    #[test]
    fn rendering_round_trips() {
        for v in TruthValue::all_up_to(4) {
            assert_eq!(v.to_string().parse::<TruthValue>().unwrap(), v);
        }
        assert_eq!(Both(Flavor::WRanked(3)).to_string(), "B_w(3)");
        assert_eq!(Both(Flavor::StrictRanked(0)).to_string(), "B_w[0]");
        assert!("B_s".parse::<TruthValue>().is_err());
    }

    #[test]
    fn relation_window() {
        use std::cmp::Ordering::*;
        let s = Flavor::S;
        let w = Flavor::W;
        assert_eq!(relation_value(Relation::Eq, Less, s, s, s), False);
        assert_eq!(relation_value(Relation::Eq, Less, w, w, s), Both(w));
        assert_eq!(relation_value(Relation::Eq, Less, w, s, s), False);
        assert_eq!(relation_value(Relation::Lt, Equal, w, s, w), Both(w));
        assert_eq!(relation_value(Relation::Lt, Greater, w, w, w), False);
        assert_eq!(relation_value(Relation::Lt, Less, s, w, w), True);
    }
}
