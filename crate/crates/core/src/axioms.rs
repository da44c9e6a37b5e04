//! The axiom catalog: schema templates, instantiation, recognition of
//! instances, and soundness checks over finite structures.
//!
//! Relativized quantifiers `∀n_{n ∈_α Y} ψ` are written out literally as
//! `∀n[(n ∈_α Y) ∧ ψ]`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{eval, Assignment, Element, MembershipTable, ModelError, Structure};
use crate::syntax::{parse, Flavor, Formula, RankOp, SyntaxError, Term};
use crate::truth::{Relation, TruthValue};

/// One axiom or axiom scheme, with its flavor and rank parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchemaId {
    /// Basic arithmetic group 1 to 8 at one flavor.
    Basic { group: u8, flavor: Flavor },
    /// Induction at one flavor.
    Induction { flavor: Flavor },
    /// Induction across all weak (`strict == false`) or strict ranks up to
    /// `max_rank`, which must be positive.
    RankInduction { strict: bool, max_rank: u32 },
    /// Induction over every flavor of the carrier at once.
    GlobalInduction { max_rank: u32 },
    /// Least-element principle for an inconsistent order.
    Order { flavor: Flavor },
    /// Comprehension for formulas not mentioning the defined set.
    SComprehension,
    /// Unrestricted comprehension at `w`, `w(n)` or `w[n]`.
    Comprehension { flavor: Flavor },
}

fn flavor_index(f: Flavor) -> u8 {
    match f {
        Flavor::S => 1,
        Flavor::W => 2,
        Flavor::WRanked(_) => 3,
        Flavor::StrictRanked(_) => 4,
    }
}

fn rank_suffix(f: Flavor) -> String {
    match f {
        Flavor::WRanked(n) => format!("({n})"),
        Flavor::StrictRanked(n) => format!("[{n}]"),
        _ => String::new(),
    }
}

/// Labels follow the catalog numbering: `i.3.2`, `ii.3(1)`, `iii.3[0]`, `v.2(2)`, ...
impl fmt::Display for SchemaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SchemaId::Basic { group, flavor } => {
                write!(
                    f,
                    "i.{group}.{}{}",
                    flavor_index(flavor),
                    rank_suffix(flavor)
                )
            }
            SchemaId::Induction { flavor } => {
                write!(f, "ii.{}{}", flavor_index(flavor), rank_suffix(flavor))
            }
            SchemaId::RankInduction { strict, max_rank } => {
                write!(f, "ii.{}<={max_rank}", if strict { 6 } else { 5 })
            }
            SchemaId::GlobalInduction { max_rank } => write!(f, "ii.7<={max_rank}"),
            SchemaId::Order { flavor } => {
                write!(f, "iii.{}{}", flavor_index(flavor) - 1, rank_suffix(flavor))
            }
            SchemaId::SComprehension => f.write_str("iv.1"),
            SchemaId::Comprehension { flavor } => {
                write!(f, "v.{}{}", flavor_index(flavor) - 1, rank_suffix(flavor))
            }
        }
    }
}

impl Serialize for SchemaId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AxiomError {
    #[error("schema {0} needs a formula binding")]
    MissingFormula(SchemaId),
    #[error("schema {0} takes no formula binding")]
    UnexpectedFormula(SchemaId),
    #[error("invalid parameters for schema {0}: {1}")]
    Parameter(SchemaId, String),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("{} soundness failure(s); first: {}", .0.len(), .0[0])]
    Soundness(Vec<SoundnessFailure>),
}

/// An instantiated schema.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchemaInstance {
    pub id: SchemaId,
    /// The universal closure of the instance.
    #[serde(serialize_with = "display_formula")]
    pub formula: Formula,
}

fn display_formula<S: serde::Serializer>(f: &Formula, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(f)
}

fn p(src: &str) -> Formula {
    parse(src).unwrap_or_else(|e| panic!("template `{src}` does not parse: {e}"))
}

/// Body of a basic axiom before universal closure.
fn basic_body(group: u8, f: Flavor) -> Formula {
    p(&match group {
        1 => format!("!(n + 1_{f} =s 0_{f}) & (1_{f} =s 1_{f} & 0_{f} =s 0_{f})"),
        2 => format!("m + 1_{f} ={f} n + 1_{f} -> m ={f} n"),
        3 => format!("m + 0_{f} ={f} m"),
        4 => format!("m + (n + 1_{f}) ={f} m + n + 1_{f}"),
        5 => format!("m * 0_{f} ={f} 0_{f}"),
        6 => format!("m * (n + 1_{f}) ={f} m * n + m"),
        7 => format!("!(m <{f} 0_{f})"),
        8 => format!("m <{f} n + 1_{f} <-> (m <{f} n | m ={f} n)"),
        _ => unreachable!("basic groups are 1 to 8"),
    })
}

/// `∀n[(n ∈_α Y) ∧ (n ∈_α X → n + 1_β ∈_α X)]`, or with `→` after the
/// guard when `guarded`.
fn step(alpha: Flavor, beta: Flavor, guarded: bool) -> String {
    let g = if guarded { "->" } else { "&" };
    format!("(forall n. n in_{alpha} Y {g} (n in_{alpha} X -> n + 1_{beta} in_{alpha} X))")
}

/// `∀n[(n ∈_α Y) ∧ (n ∈_α X)]`
fn covers(alpha: Flavor, guarded: bool) -> String {
    let g = if guarded { "->" } else { "&" };
    format!("(forall n. n in_{alpha} Y {g} n in_{alpha} X)")
}

/// Induction body with `Y` and `X` free.
fn induction_matrix(id: SchemaId, guarded: bool) -> Formula {
    let step = |a, b| step(a, b, guarded);
    let covers = |a| covers(a, guarded);
    let conj = |parts: Vec<String>| parts.join(" & ");
    let text = match id {
        SchemaId::Induction { flavor: f } => {
            format!("0_{f} in_{f} X & {} -> {}", step(f, f), covers(f))
        }
        SchemaId::RankInduction { strict, max_rank } => {
            let fl = |i| {
                if strict {
                    Flavor::StrictRanked(i)
                } else {
                    Flavor::WRanked(i)
                }
            };
            let base = conj(
                (0..=max_rank)
                    .map(|i| format!("(0_{f} in_{f} X & {})", step(fl(i), fl(i)), f = fl(i)))
                    .collect(),
            );
            let concl = conj((0..=max_rank).map(|j| covers(fl(j))).collect());
            format!("{base} -> {concl}")
        }
        SchemaId::GlobalInduction { max_rank } => {
            let flavors = Flavor::all_up_to(max_rank);
            let zeros = flavors.iter().map(|f| format!("0_{f} in_s X"));
            let steps = flavors.iter().map(|f| step(Flavor::S, *f));
            let concl = covers(Flavor::S);
            format!("{} -> {concl}", conj(zeros.chain(steps).collect()))
        }
        _ => unreachable!("not an induction schema"),
    };
    p(&text)
}

/// Least-element principle as a formula; checked semantically by [`check_group`].
fn order_formula(f: Flavor) -> Formula {
    p(&format!(
        "forall X. (exists n. n in_{f} X) -> (exists n. n in_{f} X & (forall m. m in_{f} X -> !(m <{f} n)))"
    ))
}

fn comprehension_formula(id: SchemaId, phi: &Formula) -> Result<Formula, AxiomError> {
    let fv = phi.free_vars();
    let f = match id {
        SchemaId::SComprehension => Flavor::S,
        SchemaId::Comprehension { flavor } => flavor,
        _ => unreachable!("not a comprehension schema"),
    };
    if id == SchemaId::SComprehension && fv.set.contains("X") {
        return Err(AxiomError::Parameter(
            id,
            "the defined set X occurs free in the formula".into(),
        ));
    }
    let phi = if fv.num.contains("n") {
        phi.clone()
    } else if fv.num.len() == 1 {
        let v = fv.num.iter().next().expect("one variable");
        phi.substitute(v, &Term::var("n"))?
    } else {
        return Err(AxiomError::Parameter(
            id,
            "the formula needs the free number variable n".into(),
        ));
    };
    let body = match RankOp::from_flavor(f) {
        Some(op) => Formula::rank(phi, op),
        None => phi,
    };
    let matrix = Formula::iff(Formula::mem(Term::var("n"), "X", f), body);
    Ok(Formula::exists_set("X", Formula::forall_num("n", matrix)).universal_closure())
}

fn validate(id: SchemaId) -> Result<(), AxiomError> {
    let bad = |msg: &str| Err(AxiomError::Parameter(id, msg.to_string()));
    match id {
        SchemaId::Basic { group, .. } if !(1..=8).contains(&group) => {
            bad("basic groups are 1 to 8")
        }
        SchemaId::Order { flavor: Flavor::S } | SchemaId::Comprehension { flavor: Flavor::S } => {
            bad("flavor must be inconsistent")
        }
        SchemaId::RankInduction { max_rank: 0, .. } => {
            bad("at rank 0 this is single-flavor induction")
        }
        _ => Ok(()),
    }
}

/// Instantiates a schema. Comprehension schemes take a formula `φ` whose
/// comprehension variable is `n` (or its only free number variable) and whose
/// defined set is `X`; other schemas take none.
pub fn instantiate(id: SchemaId, phi: Option<&Formula>) -> Result<SchemaInstance, AxiomError> {
    validate(id)?;
    let is_comprehension = matches!(
        id,
        SchemaId::SComprehension | SchemaId::Comprehension { .. }
    );
    let formula = match (is_comprehension, phi) {
        (true, Some(phi)) => comprehension_formula(id, phi)?,
        (true, None) => return Err(AxiomError::MissingFormula(id)),
        (false, Some(_)) => return Err(AxiomError::UnexpectedFormula(id)),
        (false, None) => match id {
            SchemaId::Basic { group, flavor } => basic_body(group, flavor).universal_closure(),
            SchemaId::Induction { .. }
            | SchemaId::RankInduction { .. }
            | SchemaId::GlobalInduction { .. } => {
                Formula::exists_set("Y", Formula::forall_set("X", induction_matrix(id, false)))
            }
            SchemaId::Order { flavor } => order_formula(flavor),
            _ => unreachable!(),
        },
    };
    Ok(SchemaInstance { id, formula })
}

/// Matches `∀… ∃X ∀n (n ∈_α X ↔ body)` after the parameter closure.
fn match_comprehension(mut f: &Formula) -> Option<SchemaId> {
    while let Formula::ForallNum(_, g) | Formula::ForallSet(_, g) = f {
        f = g;
    }
    let Formula::ExistsSet(x, body) = f else {
        return None;
    };
    let Formula::ForallNum(n, matrix) = &**body else {
        return None;
    };
    let Formula::Iff(lhs, rhs) = &**matrix else {
        return None;
    };
    let Formula::Mem(Term::Var(v), set, fl) = &**lhs else {
        return None;
    };
    if v != n || set != x {
        return None;
    }
    match fl {
        Flavor::S => (!rhs.free_vars().set.contains(x)).then_some(SchemaId::SComprehension),
        Flavor::W => Some(SchemaId::Comprehension { flavor: Flavor::W }),
        ranked => match &**rhs {
            Formula::Rank(_, op) if op.flavor() == *ranked => {
                Some(SchemaId::Comprehension { flavor: *ranked })
            }
            _ => None,
        },
    }
}

/// Recognizes a closed formula as an instance of a schema, up to renaming of
/// bound variables.
pub fn is_axiom_instance(f: &Formula) -> Option<SchemaId> {
    let flavors = f.flavors();
    let max_rank = flavors.iter().filter_map(|fl| fl.rank()).max().unwrap_or(0);
    let mut candidates: Vec<SchemaId> = Vec::new();
    for fl in &flavors {
        candidates.extend((1..=8).map(|group| SchemaId::Basic { group, flavor: *fl }));
        candidates.push(SchemaId::Induction { flavor: *fl });
        if *fl != Flavor::S {
            candidates.push(SchemaId::Order { flavor: *fl });
        }
    }
    candidates.push(SchemaId::RankInduction {
        strict: false,
        max_rank,
    });
    candidates.push(SchemaId::RankInduction {
        strict: true,
        max_rank,
    });
    candidates.push(SchemaId::GlobalInduction { max_rank });
    for id in candidates {
        if let Ok(inst) = instantiate(id, None) {
            if inst.formula.alpha_eq(f) {
                return Some(id);
            }
        }
    }
    match_comprehension(f)
}

/// The axiom families checked by [`check_group`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Group {
    /// Basic arithmetic, optionally one numbered group only.
    Basic(Option<u8>),
    Induction,
    Order,
}

impl FromStr for Group {
    type Err = String;

    /// `i`, `i.N` (N in 1..=8), `ii` or `iii`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "i" => Ok(Group::Basic(None)),
            "ii" => Ok(Group::Induction),
            "iii" => Ok(Group::Order),
            _ => s
                .strip_prefix("i.")
                .and_then(|g| g.parse::<u8>().ok())
                .filter(|g| (1..=8).contains(g))
                .map(|g| Group::Basic(Some(g)))
                .ok_or_else(|| {
                    format!("unknown axiom group `{s}` (expected i, i.1 .. i.8, ii or iii)")
                }),
        }
    }
}

/// An axiom instance that is not designated, with the assignment at fault.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SoundnessFailure {
    pub id: SchemaId,
    pub instance: String,
    pub assignment: Assignment,
    pub value: TruthValue,
}

impl fmt::Display for SoundnessFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} `{}` is {}", self.id, self.instance, self.value)?;
        for (k, v) in &self.assignment.num {
            write!(f, " {k}={v}")?;
        }
        for k in self.assignment.set.keys() {
            write!(f, " {k}=<table>")?;
        }
        Ok(())
    }
}

/// One checked schema.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckedSchema {
    pub id: SchemaId,
    /// Number of evaluations or least-element checks performed.
    pub checks: usize,
    /// Meet of all values seen.
    pub value: TruthValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub group: Group,
    pub schemas: Vec<CheckedSchema>,
    pub failures: Vec<SoundnessFailure>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn into_result(self) -> Result<CheckReport, AxiomError> {
        if self.passed() {
            Ok(self)
        } else {
            Err(AxiomError::Soundness(self.failures))
        }
    }
}

fn flavors_of(s: &Structure, max_rank: Option<u32>) -> Vec<Flavor> {
    let all: BTreeSet<Flavor> = s.flavors();
    all.into_iter()
        .filter(|f| match (f.rank(), max_rank) {
            (Some(r), Some(m)) => r <= m,
            _ => true,
        })
        .collect()
}

fn check_basic(
    s: &Structure,
    groups: &[u8],
    flavors: &[Flavor],
    report: &mut CheckReport,
) -> Result<(), AxiomError> {
    for &group in groups {
        for &flavor in flavors {
            let id = SchemaId::Basic { group, flavor };
            let body = basic_body(group, flavor);
            let vars: Vec<String> = body.free_vars().num.into_iter().collect();
            let mut entry = CheckedSchema {
                id,
                checks: 0,
                value: TruthValue::True,
            };
            let carrier = s.carrier();
            let total = carrier.len().pow(vars.len() as u32);
            for mut k in 0..total {
                let mut a = Assignment::new();
                for v in &vars {
                    a.num.insert(v.clone(), carrier[k % carrier.len()]);
                    k /= carrier.len();
                }
                let value = eval(s, &a, &body)?;
                entry.checks += 1;
                entry.value = entry.value.conjoin(value);
                if !value.is_designated() {
                    report.failures.push(SoundnessFailure {
                        id,
                        instance: body.to_string(),
                        assignment: a,
                        value,
                    });
                }
            }
            report.schemas.push(entry);
        }
    }
    Ok(())
}

fn check_induction(
    s: &Structure,
    flavors: &[Flavor],
    max_rank: u32,
    report: &mut CheckReport,
) -> Result<(), AxiomError> {
    let mut ids: Vec<SchemaId> = flavors
        .iter()
        .map(|f| SchemaId::Induction { flavor: *f })
        .collect();
    if max_rank > 0 {
        ids.push(SchemaId::RankInduction {
            strict: false,
            max_rank,
        });
        ids.push(SchemaId::RankInduction {
            strict: true,
            max_rank,
        });
    }
    ids.push(SchemaId::GlobalInduction { max_rank });
    for id in ids {
        let inst = instantiate(id, None)?;
        let value = eval(s, &Assignment::new(), &inst.formula)?;
        let mut entry = CheckedSchema {
            id,
            checks: 1,
            value,
        };
        if !value.is_designated() {
            report.failures.push(SoundnessFailure {
                id,
                instance: inst.formula.to_string(),
                assignment: Assignment::new(),
                value,
            });
        }
        // Guarded reading with Y fixed to the slice the axiom is about.
        let (witness, guarded) = guarded_induction(s, id);
        for x in s.subsets() {
            let a = Assignment::new()
                .with_set("Y", witness.clone())
                .with_set("X", x.clone());
            let v = eval(s, &a, &guarded)?;
            entry.checks += 1;
            entry.value = entry.value.conjoin(v);
            if !v.is_designated() {
                report.failures.push(SoundnessFailure {
                    id,
                    instance: guarded.to_string(),
                    assignment: a,
                    value: v,
                });
            }
        }
        report.schemas.push(entry);
    }
    Ok(())
}

/// The induction matrix with relativized quantifiers read as guards
/// (`∀n(n ∈ Y → ψ)`), and the carrier slice that `Y` stands for.
fn guarded_induction(s: &Structure, id: SchemaId) -> (MembershipTable, Formula) {
    let guarded = induction_matrix(id, true);
    let keep = |e: &&Element| match id {
        SchemaId::Induction { flavor } => e.flavor == flavor,
        SchemaId::RankInduction { strict: false, .. } => matches!(e.flavor, Flavor::WRanked(_)),
        SchemaId::RankInduction { strict: true, .. } => matches!(e.flavor, Flavor::StrictRanked(_)),
        _ => true,
    };
    (
        MembershipTable::classical(s.carrier().iter().filter(keep)),
        guarded,
    )
}

fn check_order(s: &Structure, flavors: &[Flavor], report: &mut CheckReport) {
    for &flavor in flavors.iter().filter(|f| **f != Flavor::S) {
        let id = SchemaId::Order { flavor };
        let slice = s.slice(flavor);
        let mut entry = CheckedSchema {
            id,
            checks: 0,
            value: TruthValue::True,
        };
        for table in s.subsets() {
            let members: Vec<Element> = slice
                .iter()
                .copied()
                .filter(|e| s.mem(e, table, flavor).is_designated())
                .collect();
            if members.is_empty() {
                continue;
            }
            entry.checks += 1;
            let least = members.iter().any(|e| {
                members
                    .iter()
                    .filter(|x| *x != e)
                    .all(|x| !s.rel(Relation::Lt, flavor, *x, *e).is_designated())
            });
            if !least {
                entry.value = TruthValue::False;
                report.failures.push(SoundnessFailure {
                    id,
                    instance: format!("no {flavor}-least element"),
                    assignment: Assignment::new().with_set("X", table.clone()),
                    value: TruthValue::False,
                });
            }
        }
        report.schemas.push(entry);
    }
}

/// Checks a family of axioms over `s`, for every carrier flavor whose rank is
/// at most `max_rank` (all of them when `None`).
///
/// Basic axioms are evaluated under every assignment of their free variables.
/// Induction axioms are evaluated as closed sentences, and again in guarded
/// form with `Y` fixed to the matching carrier slice for every `X` in the
/// set range. Order axioms are checked directly: every table in the range
/// with a designated member in the flavor slice must have a member `e` with
/// `x <_α e` undesignated for every other member `x`.
pub fn check_group(
    s: &Structure,
    group: Group,
    max_rank: Option<u32>,
) -> Result<CheckReport, AxiomError> {
    let flavors = flavors_of(s, max_rank);
    let top_rank = flavors.iter().filter_map(|f| f.rank()).max().unwrap_or(0);
    let mut report = CheckReport {
        group,
        schemas: Vec::new(),
        failures: Vec::new(),
    };
    match group {
        Group::Basic(only) => {
            let groups: Vec<u8> = match only {
                Some(g) => vec![g],
                None => (1..=8).collect(),
            };
            check_basic(s, &groups, &flavors, &mut report)?;
        }
        Group::Induction => check_induction(s, &flavors, top_rank, &mut report)?,
        Group::Order => check_order(s, &flavors, &mut report),
    }
    Ok(report)
}
