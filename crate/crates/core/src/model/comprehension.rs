use std::fmt;

use serde::{Deserialize, Serialize};

use super::{eval, Assignment, Element, MembershipTable, ModelError, Structure};
use crate::syntax::{Flavor, Formula, RankOp};
use crate::truth::TruthValue;

/// Which comprehension scheme to solve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// Consistent comprehension: the defined set may not occur in its definition.
    Strict,
    /// Unrestricted comprehension read at `w`.
    Weak,
    /// Unrestricted comprehension under the rank operator `^(n)`.
    WeakRanked(u32),
    /// Unrestricted comprehension under the rank operator `^[n]`.
    StrictRanked(u32),
}

impl Scheme {
    /// Flavor of the membership relation in the scheme.
    pub fn flavor(self) -> Flavor {
        match self {
            Scheme::Strict => Flavor::S,
            Scheme::Weak => Flavor::W,
            Scheme::WeakRanked(n) => Flavor::WRanked(n),
            Scheme::StrictRanked(n) => Flavor::StrictRanked(n),
        }
    }

    pub fn rank_op(self) -> Option<RankOp> {
        RankOp::from_flavor(self.flavor())
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scheme::Strict => f.write_str("iv"),
            Scheme::Weak => f.write_str("v.1"),
            Scheme::WeakRanked(n) => write!(f, "v.2({n})"),
            Scheme::StrictRanked(n) => write!(f, "v.3[{n}]"),
        }
    }
}

impl std::str::FromStr for Scheme {
    type Err = String;

    /// Accepts `iv`, `v.1`, `v.2(N)` and `v.3[N]` (also `v.2:N`, `v.3:N`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let rank = |rest: &str| -> Result<u32, String> {
            rest.trim_matches(|c| matches!(c, '(' | ')' | '[' | ']' | ':'))
                .parse()
                .map_err(|_| format!("bad rank in scheme `{s}`"))
        };
        match s {
            "iv" | "iv.1" => Ok(Scheme::Strict),
            "v.1" => Ok(Scheme::Weak),
            _ if s.starts_with("v.2") => Ok(Scheme::WeakRanked(rank(&s[3..])?)),
            _ if s.starts_with("v.3") => Ok(Scheme::StrictRanked(rank(&s[3..])?)),
            _ => Err(format!(
                "unknown scheme `{s}` (expected iv, v.1, v.2(N) or v.3[N])"
            )),
        }
    }
}

/// How contradictory a table is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "rank")]
pub enum Classification {
    /// Every entry is classical.
    SConsistent,
    /// Every entry is `Both(w)`.
    WInconsistent,
    /// Every entry is `Both(w(n))`.
    WRankedInconsistent(u32),
    /// Every entry is `Both(w[n])`.
    StrictRankedInconsistent(u32),
    /// Some other mixture.
    Mixed,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::SConsistent => f.write_str("s-consistent"),
            Classification::WInconsistent => f.write_str("w-inconsistent"),
            Classification::WRankedInconsistent(n) => write!(f, "w({n})-inconsistent"),
            Classification::StrictRankedInconsistent(n) => write!(f, "w[{n}]-inconsistent"),
            Classification::Mixed => f.write_str("mixed"),
        }
    }
}

/// Classifies `table` over the carrier of `s`.
pub fn classify(s: &Structure, table: &MembershipTable) -> Classification {
    let values: Vec<TruthValue> = s.carrier().iter().map(|e| table.get(e)).collect();
    if values.iter().all(|v| v.is_classical()) {
        return Classification::SConsistent;
    }
    let first = values[0];
    if values.iter().any(|v| *v != first) {
        return Classification::Mixed;
    }
    match first.flavor() {
        Some(Flavor::W) => Classification::WInconsistent,
        Some(Flavor::WRanked(n)) => Classification::WRankedInconsistent(n),
        Some(Flavor::StrictRanked(n)) => Classification::StrictRankedInconsistent(n),
        _ => Classification::Mixed,
    }
}

fn single(
    names: std::collections::BTreeSet<String>,
    what: &str,
) -> Result<Option<String>, ModelError> {
    if names.len() > 1 {
        return Err(ModelError::Shape(format!(
            "comprehension formula has {} free {what} variables, expected at most one",
            names.len()
        )));
    }
    Ok(names.into_iter().next())
}

/// Finds a table `X` with `n ∈_α X ↔ φ(n, X)` designated at every carrier
/// element, where α is the scheme's flavor and φ carries the scheme's rank
/// operator if it has one.
///
/// The consistent scheme returns the classical table of elements where φ is
/// designated. The unrestricted schemes start from the all-`Both(α)` table and
/// iterate, letting a contradictory entry settle to a classical value but
/// never changing a classical one.
pub fn solve_comprehension(
    s: &Structure,
    phi: &Formula,
    scheme: Scheme,
) -> Result<MembershipTable, ModelError> {
    let fv = phi.free_vars();
    let n = single(fv.num, "number")?.ok_or_else(|| {
        ModelError::Shape("comprehension formula needs one free number variable".into())
    })?;
    let x = single(fv.set, "set")?;
    if scheme == Scheme::Strict && x.is_some() {
        return Err(ModelError::Shape(
            "the consistent scheme does not allow the defined set in its formula".into(),
        ));
    }
    let x = x.unwrap_or_else(|| "X".to_string());
    let alpha = scheme.flavor();
    let body = match scheme.rank_op() {
        Some(op) => Formula::rank(phi.clone(), op),
        None => phi.clone(),
    };
    let value_at = |e: Element, table: &MembershipTable| {
        let a = Assignment::new()
            .with_num(&n, e)
            .with_set(&x, table.clone());
        eval(s, &a, &body)
    };

    let table = if scheme == Scheme::Strict {
        let mut t = MembershipTable::new();
        for e in s.carrier() {
            t.set(*e, TruthValue::from_bool(value_at(*e, &t)?.is_designated()));
        }
        t
    } else {
        let start = TruthValue::both(alpha).expect("unrestricted schemes are inconsistent");
        let mut table = MembershipTable::uniform(s.carrier(), start);
        for _ in 0..=s.carrier().len() {
            let mut next = table.clone();
            for e in s.carrier() {
                let current = table.get(e);
                let proposed = value_at(*e, &table)?.retag(alpha);
                match (current.is_classical(), proposed.is_classical()) {
                    (false, true) => next.set(*e, proposed),
                    (true, true) if proposed != current => {
                        return Err(ModelError::NoFixpoint {
                            element: *e,
                            value: proposed,
                        });
                    }
                    _ => {}
                }
            }
            if next == table {
                break;
            }
            table = next;
        }
        table
    };

    for e in s.carrier() {
        let v = s.mem(e, &table, alpha).iff(value_at(*e, &table)?);
        if !v.is_designated() {
            return Err(ModelError::NoFixpoint {
                element: *e,
                value: v,
            });
        }
    }
    Ok(table)
}
