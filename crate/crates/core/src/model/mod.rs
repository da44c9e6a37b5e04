//! Finite paraconsistent structures for the two-sorted language.
//!
//! A [`Structure`] has a carrier of flavored naturals and a finite range of
//! [`MembershipTable`]s for the set variables. Arithmetic is exact on
//! magnitudes, so a term may denote a number past the carrier bound; such
//! numbers take part in comparisons but belong to no set. Quantifiers range
//! over the carrier and the table range only.

mod comprehension;
mod definable;
mod eval;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numbers::ParaNat;
use crate::syntax::{Flavor, SyntaxError};
use crate::truth::{relation_value, Relation, TruthValue};

pub use comprehension::{classify, solve_comprehension, Classification, Scheme};
pub use definable::{definable_elements, definable_elements_in, definable_from, is_candidate};
pub use eval::{entails, entails_with, eval, eval_term, Entailment, ENTAILMENT_CAP};

/// Elements of a carrier are flavored naturals.
pub type Element = ParaNat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("arithmetic overflow while evaluating a term")]
    Overflow,
    #[error("assignment space of {size} exceeds the cap of {cap}")]
    Resource { size: u128, cap: u128 },
    #[error(
        "no fixed point: the comprehension biconditional fails at {element} with value {value}"
    )]
    NoFixpoint { element: Element, value: TruthValue },
    #[error("{0}")]
    Shape(String),
    #[error("relations of flavor s must be classical, got {0}")]
    NonClassical(TruthValue),
    #[error("invalid structure file: {0}")]
    File(String),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
}

/// A possibly inconsistent set: a truth value per element. Missing entries read as `False`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MembershipTable {
    entries: BTreeMap<Element, TruthValue>,
}

impl MembershipTable {
    pub fn new() -> MembershipTable {
        MembershipTable::default()
    }

    /// Every listed element mapped to `value`.
    pub fn uniform<'a>(
        elements: impl IntoIterator<Item = &'a Element>,
        value: TruthValue,
    ) -> MembershipTable {
        let mut t = MembershipTable::new();
        for e in elements {
            t.set(*e, value);
        }
        t
    }

    /// Classical table of the listed elements.
    pub fn classical<'a>(members: impl IntoIterator<Item = &'a Element>) -> MembershipTable {
        MembershipTable::uniform(members, TruthValue::True)
    }

    pub fn get(&self, e: &Element) -> TruthValue {
        self.entries.get(e).copied().unwrap_or(TruthValue::False)
    }

    /// Stores `value`; `False` entries are dropped so equal sets compare equal.
    pub fn set(&mut self, e: Element, value: TruthValue) {
        if value == TruthValue::False {
            self.entries.remove(&e);
        } else {
            self.entries.insert(e, value);
        }
    }

    /// Entries that are not `False`.
    pub fn iter(&self) -> impl Iterator<Item = (&Element, &TruthValue)> {
        self.entries.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Elements whose entry is exactly `True`.
    pub fn classical_members(&self) -> BTreeSet<Element> {
        self.entries
            .iter()
            .filter(|(_, v)| **v == TruthValue::True)
            .map(|(e, _)| *e)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub magnitude: u64,
    pub flavor: Flavor,
    pub value: TruthValue,
}

impl Serialize for MembershipTable {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.entries.iter().map(|(e, v)| TableEntry {
            magnitude: e.magnitude,
            flavor: e.flavor,
            value: *v,
        }))
    }
}

impl<'de> Deserialize<'de> for MembershipTable {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let entries = Vec::<TableEntry>::deserialize(deserializer)?;
        let mut t = MembershipTable::new();
        for e in entries {
            t.set(Element::new(e.magnitude, e.flavor), e.value);
        }
        Ok(t)
    }
}

/// Variable bindings for evaluation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    pub num: BTreeMap<String, Element>,
    pub set: BTreeMap<String, MembershipTable>,
}

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    pub fn with_num(mut self, name: &str, e: Element) -> Assignment {
        self.num.insert(name.to_string(), e);
        self
    }

    pub fn with_set(mut self, name: &str, t: MembershipTable) -> Assignment {
        self.set.insert(name.to_string(), t);
        self
    }
}

/// A finite structure: flavored carrier, set range and relation interpretation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Structure {
    carrier: Vec<Element>,
    members: BTreeSet<Element>,
    subsets: Vec<MembershipTable>,
    overrides: BTreeMap<(Relation, Flavor, Element, Element), TruthValue>,
}

/// Carriers up to this size get every classical subset in their set range.
const POWERSET_LIMIT: usize = 6;

impl Structure {
    /// A structure on an explicit carrier. Without `subsets` the range is the
    /// default family of [`Structure::default_subsets`].
    pub fn new(
        carrier: Vec<Element>,
        subsets: Option<Vec<MembershipTable>>,
    ) -> Result<Structure, ModelError> {
        let members: BTreeSet<Element> = carrier.iter().copied().collect();
        if members.is_empty() {
            return Err(ModelError::Shape("carrier must be nonempty".into()));
        }
        let carrier: Vec<Element> = members.iter().copied().collect();
        let subsets = match subsets {
            Some(s) if s.is_empty() => {
                return Err(ModelError::Shape("set range must be nonempty".into()))
            }
            Some(s) => s,
            None => Structure::default_subsets(&carrier),
        };
        Ok(Structure {
            carrier,
            members,
            subsets,
            overrides: BTreeMap::new(),
        })
    }

    /// Set range used when none is supplied: all classical subsets of a small
    /// carrier, or for larger carriers the empty and full sets, each flavor
    /// slice, each singleton, initial segments by magnitude (per slice and
    /// across slices), even and odd magnitudes. The all-`Both(w)` table is
    /// always included.
    pub fn default_subsets(carrier: &[Element]) -> Vec<MembershipTable> {
        let mut out: Vec<MembershipTable> = Vec::new();
        let mut push = |t: MembershipTable| {
            if !out.contains(&t) {
                out.push(t);
            }
        };
        if carrier.len() <= POWERSET_LIMIT {
            for mask in 0u32..(1 << carrier.len()) {
                push(MembershipTable::classical(
                    carrier
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask & (1 << i) != 0)
                        .map(|(_, e)| e),
                ));
            }
        } else {
            let flavors: BTreeSet<Flavor> = carrier.iter().map(|e| e.flavor).collect();
            let max_mag = carrier.iter().map(|e| e.magnitude).max().unwrap_or(0);
            push(MembershipTable::new());
            push(MembershipTable::classical(carrier));
            for fl in &flavors {
                push(MembershipTable::classical(
                    carrier.iter().filter(|e| e.flavor == *fl),
                ));
            }
            for e in carrier {
                push(MembershipTable::classical([e]));
            }
            for k in 0..=max_mag {
                for fl in &flavors {
                    push(MembershipTable::classical(
                        carrier
                            .iter()
                            .filter(|e| e.flavor == *fl && e.magnitude <= k),
                    ));
                }
                push(MembershipTable::classical(
                    carrier.iter().filter(|e| e.magnitude <= k),
                ));
            }
            for parity in 0..2 {
                push(MembershipTable::classical(
                    carrier.iter().filter(|e| e.magnitude % 2 == parity),
                ));
            }
        }
        push(MembershipTable::uniform(
            carrier,
            TruthValue::Both(Flavor::W),
        ));
        out
    }

    pub fn carrier(&self) -> &[Element] {
        &self.carrier
    }

    pub fn subsets(&self) -> &[MembershipTable] {
        &self.subsets
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.members.contains(e)
    }

    /// Carrier elements of one flavor, by increasing magnitude.
    pub fn slice(&self, flavor: Flavor) -> Vec<Element> {
        self.carrier
            .iter()
            .copied()
            .filter(|e| e.flavor == flavor)
            .collect()
    }

    pub fn flavors(&self) -> BTreeSet<Flavor> {
        self.carrier.iter().map(|e| e.flavor).collect()
    }

    pub fn max_rank(&self) -> Option<u32> {
        self.carrier.iter().filter_map(|e| e.flavor.rank()).max()
    }

    pub fn zero(&self, flavor: Flavor) -> Element {
        Element::zero(flavor)
    }

    pub fn one(&self, flavor: Flavor) -> Element {
        Element::one(flavor)
    }

    /// Replaces the set range.
    pub fn with_subsets(mut self, subsets: Vec<MembershipTable>) -> Result<Structure, ModelError> {
        if subsets.is_empty() {
            return Err(ModelError::Shape("set range must be nonempty".into()));
        }
        self.subsets = subsets;
        Ok(self)
    }

    /// Overrides one entry of a relation. Flavor-`s` relations only accept
    /// classical values.
    pub fn set_relation(
        &mut self,
        rel: Relation,
        alpha: Flavor,
        a: Element,
        b: Element,
        value: TruthValue,
    ) -> Result<(), ModelError> {
        if alpha == Flavor::S && !value.is_classical() {
            return Err(ModelError::NonClassical(value));
        }
        self.overrides.insert((rel, alpha, a, b), value);
        Ok(())
    }

    /// `a =_α b` or `a <_α b`.
    pub fn rel(&self, rel: Relation, alpha: Flavor, a: Element, b: Element) -> TruthValue {
        if !self.overrides.is_empty() {
            if let Some(v) = self.overrides.get(&(rel, alpha, a, b)) {
                return *v;
            }
        }
        relation_value(
            rel,
            a.magnitude.cmp(&b.magnitude),
            alpha,
            a.flavor,
            b.flavor,
        )
    }

    /// `e ∈_α X`. At flavor `s` only a `True` entry counts; at other flavors a
    /// contradictory entry is read at level α.
    pub fn mem(&self, e: &Element, table: &MembershipTable, alpha: Flavor) -> TruthValue {
        if !self.contains(e) {
            return TruthValue::False;
        }
        table.get(e).retag(alpha)
    }

    /// Loads a structure file: `{"bound": N, "max_rank": R, "subsets": [...]}`.
    pub fn from_json(text: &str) -> Result<Structure, ModelError> {
        let file: StructureFile =
            serde_json::from_str(text).map_err(|e| ModelError::File(e.to_string()))?;
        let s = canonical_structure(file.bound, file.max_rank);
        match file.subsets {
            Some(subsets) => s.with_subsets(subsets),
            None => Ok(s),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StructureFile {
    pub bound: u64,
    pub max_rank: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subsets: Option<Vec<MembershipTable>>,
}

/// The intended model truncated at `bound`: every flavored natural with
/// magnitude at most `bound` and rank at most `max_rank`.
pub fn canonical_structure(bound: u64, max_rank: u32) -> Structure {
    let mut carrier = Vec::new();
    for fl in Flavor::all_up_to(max_rank) {
        for m in 0..=bound {
            carrier.push(Element::new(m, fl));
        }
    }
    Structure::new(carrier, None).expect("nonempty carrier")
}
