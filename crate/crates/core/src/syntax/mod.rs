//! Abstract and concrete syntax of the two-sorted paraconsistent arithmetic
//! language: flavored constants and relations, rank operators, binders over
//! numbers and sets.
//!
//! Lowercase identifiers are number variables, uppercase identifiers are set
//! variables. Every atomic formula and every constant carries a [`Flavor`].

mod godel;
mod parse;
mod print;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use godel::{
    enumerate, godel_number, name_of_num_index, name_of_set_index, pair, EnumPool, GodelCode,
};
pub use parse::parse;

/// Consistency tag attached to relations, constants and contradictory truth values.
///
/// `S` is strictly consistent, `W` weakly inconsistent, `WRanked(n)` weakly
/// inconsistent at rank `n` (written `w(n)`), `StrictRanked(n)` strictly
/// inconsistent at rank `n` (written `w[n]`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    S,
    W,
    WRanked(u32),
    StrictRanked(u32),
}

impl Flavor {
    pub fn rank(self) -> Option<u32> {
        match self {
            Flavor::S | Flavor::W => None,
            Flavor::WRanked(n) | Flavor::StrictRanked(n) => Some(n),
        }
    }

    pub fn is_consistent(self) -> bool {
        self == Flavor::S
    }

    /// Position in the enumeration order `S, W, W(0), W[0], W(1), W[1], ...`.
    pub fn enumeration_index(self) -> u64 {
        match self {
            Flavor::S => 0,
            Flavor::W => 1,
            Flavor::WRanked(n) => 2 + 2 * u64::from(n),
            Flavor::StrictRanked(n) => 3 + 2 * u64::from(n),
        }
    }

    /// How inconsistent the flavor is: `S` weakest, then `W`, `W(n)` by rank,
    /// then `W[n]` by rank.
    pub fn severity(self) -> (u8, u32) {
        match self {
            Flavor::S => (0, 0),
            Flavor::W => (1, 0),
            Flavor::WRanked(n) => (2, n),
            Flavor::StrictRanked(n) => (3, n),
        }
    }

    /// The more inconsistent of two flavors. Used for mixed-flavor arithmetic.
    pub fn join(self, other: Flavor) -> Flavor {
        if other.severity() > self.severity() {
            other
        } else {
            self
        }
    }

    /// All flavors whose rank is at most `max_rank`, in enumeration order.
    pub fn all_up_to(max_rank: u32) -> Vec<Flavor> {
        let mut out = vec![Flavor::S, Flavor::W];
        for n in 0..=max_rank {
            out.push(Flavor::WRanked(n));
            out.push(Flavor::StrictRanked(n));
        }
        out
    }
}

impl Ord for Flavor {
    fn cmp(&self, other: &Self) -> Ordering {
        self.enumeration_index().cmp(&other.enumeration_index())
    }
}

impl PartialOrd for Flavor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flavor::S => f.write_str("s"),
            Flavor::W => f.write_str("w"),
            Flavor::WRanked(n) => write!(f, "w({n})"),
            Flavor::StrictRanked(n) => write!(f, "w[{n}]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid flavor `{0}` (expected s, w, w(N) or w[N])")]
pub struct FlavorParseError(pub String);

impl FromStr for Flavor {
    type Err = FlavorParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || FlavorParseError(s.to_string());
        match s {
            "s" => return Ok(Flavor::S),
            "w" => return Ok(Flavor::W),
            _ => {}
        }
        let rest = s.strip_prefix('w').ok_or_else(err)?;
        let (inner, strict) = if let Some(r) = rest.strip_prefix('(') {
            (r.strip_suffix(')').ok_or_else(err)?, false)
        } else if let Some(r) = rest.strip_prefix('[') {
            (r.strip_suffix(']').ok_or_else(err)?, true)
        } else {
            return Err(err());
        };
        if inner.is_empty() || !inner.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let n: u32 = inner.parse().map_err(|_| err())?;
        Ok(if strict {
            Flavor::StrictRanked(n)
        } else {
            Flavor::WRanked(n)
        })
    }
}

impl Serialize for Flavor {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Flavor {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A rank operator `(φ)^(n)` or `(φ)^[n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RankOp {
    Weak(u32),
    Strict(u32),
}

impl RankOp {
    pub fn flavor(self) -> Flavor {
        match self {
            RankOp::Weak(n) => Flavor::WRanked(n),
            RankOp::Strict(n) => Flavor::StrictRanked(n),
        }
    }

    pub fn from_flavor(flavor: Flavor) -> Option<RankOp> {
        match flavor {
            Flavor::WRanked(n) => Some(RankOp::Weak(n)),
            Flavor::StrictRanked(n) => Some(RankOp::Strict(n)),
            Flavor::S | Flavor::W => None,
        }
    }

    pub fn rank(self) -> u32 {
        match self {
            RankOp::Weak(n) | RankOp::Strict(n) => n,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Constant {
    Zero,
    One,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(Constant, Flavor),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn zero(flavor: Flavor) -> Term {
        Term::Const(Constant::Zero, flavor)
    }

    pub fn one(flavor: Flavor) -> Term {
        Term::Const(Constant::One, flavor)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Const(..) => {}
            Term::Add(a, b) | Term::Mul(a, b) => {
                a.vars(out);
                b.vars(out);
            }
        }
    }

    pub fn contains_var(&self, name: &str) -> bool {
        match self {
            Term::Var(v) => v == name,
            Term::Const(..) => false,
            Term::Add(a, b) | Term::Mul(a, b) => a.contains_var(name) || b.contains_var(name),
        }
    }

    fn replace(&self, var: &str, with: &Term) -> Term {
        match self {
            Term::Var(v) if v == var => with.clone(),
            Term::Var(_) | Term::Const(..) => self.clone(),
            Term::Add(a, b) => Term::add(a.replace(var, with), b.replace(var, with)),
            Term::Mul(a, b) => Term::mul(a.replace(var, with), b.replace(var, with)),
        }
    }

    fn visit_flavors(&self, f: &mut impl FnMut(Flavor)) {
        match self {
            Term::Var(_) => {}
            Term::Const(_, fl) => f(*fl),
            Term::Add(a, b) | Term::Mul(a, b) => {
                a.visit_flavors(f);
                b.visit_flavors(f);
            }
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const(..) => 1,
            Term::Add(a, b) | Term::Mul(a, b) => 1 + a.node_count() + b.node_count(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Eq(Term, Term, Flavor),
    Lt(Term, Term, Flavor),
    Mem(Term, String, Flavor),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    ForallNum(String, Box<Formula>),
    ExistsNum(String, Box<Formula>),
    ForallSet(String, Box<Formula>),
    ExistsSet(String, Box<Formula>),
    Rank(Box<Formula>, RankOp),
}

/// Errors raised by parsing, substitution and enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("syntax error at line {line}, column {column} (byte {offset}): {message}")]
    Syntax {
        offset: usize,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("rank error at line {line}, column {column} (byte {offset}): {message}")]
    Rank {
        offset: usize,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("sort error: {0}")]
    Sort(String),
    #[error("enumeration pool exceeds the cap of {cap} formulas")]
    Resource { cap: usize },
}

pub fn is_num_var(name: &str) -> bool {
    name.chars().next().is_some_and(|c| c.is_ascii_lowercase())
}

pub fn is_set_var(name: &str) -> bool {
    name.chars().next().is_some_and(|c| c.is_ascii_uppercase())
}

/// Free number variables and free set variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeVars {
    pub num: BTreeSet<String>,
    pub set: BTreeSet<String>,
}

impl FreeVars {
    pub fn is_empty(&self) -> bool {
        self.num.is_empty() && self.set.is_empty()
    }
}

impl Formula {
    pub fn eq(a: Term, b: Term, flavor: Flavor) -> Formula {
        Formula::Eq(a, b, flavor)
    }

    pub fn lt(a: Term, b: Term, flavor: Flavor) -> Formula {
        Formula::Lt(a, b, flavor)
    }

    pub fn mem(t: Term, set: &str, flavor: Flavor) -> Formula {
        Formula::Mem(t, set.to_string(), flavor)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall_num(v: &str, body: Formula) -> Formula {
        Formula::ForallNum(v.to_string(), Box::new(body))
    }

    pub fn exists_num(v: &str, body: Formula) -> Formula {
        Formula::ExistsNum(v.to_string(), Box::new(body))
    }

    pub fn forall_set(v: &str, body: Formula) -> Formula {
        Formula::ForallSet(v.to_string(), Box::new(body))
    }

    pub fn exists_set(v: &str, body: Formula) -> Formula {
        Formula::ExistsSet(v.to_string(), Box::new(body))
    }

    pub fn rank(f: Formula, op: RankOp) -> Formula {
        Formula::Rank(Box::new(f), op)
    }

    /// Right-nested conjunction of a nonempty list.
    pub fn conjunction(mut parts: Vec<Formula>) -> Formula {
        let mut acc = parts.pop().expect("conjunction of an empty list");
        while let Some(p) = parts.pop() {
            acc = Formula::and(p, acc);
        }
        acc
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Eq(..) | Formula::Lt(..) | Formula::Mem(..))
    }

    pub fn free_vars(&self) -> FreeVars {
        let mut out = FreeVars::default();
        self.collect_free(&mut Vec::new(), &mut Vec::new(), &mut out);
        out
    }

    fn collect_free(
        &self,
        num_bound: &mut Vec<String>,
        set_bound: &mut Vec<String>,
        out: &mut FreeVars,
    ) {
        match self {
            Formula::Eq(a, b, _) | Formula::Lt(a, b, _) => {
                let mut vs = BTreeSet::new();
                a.vars(&mut vs);
                b.vars(&mut vs);
                out.num
                    .extend(vs.into_iter().filter(|v| !num_bound.contains(v)));
            }
            Formula::Mem(t, x, _) => {
                let mut vs = BTreeSet::new();
                t.vars(&mut vs);
                out.num
                    .extend(vs.into_iter().filter(|v| !num_bound.contains(v)));
                if !set_bound.contains(x) {
                    out.set.insert(x.clone());
                }
            }
            Formula::Not(g) | Formula::Rank(g, _) => g.collect_free(num_bound, set_bound, out),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                a.collect_free(num_bound, set_bound, out);
                b.collect_free(num_bound, set_bound, out);
            }
            Formula::ForallNum(v, g) | Formula::ExistsNum(v, g) => {
                num_bound.push(v.clone());
                g.collect_free(num_bound, set_bound, out);
                num_bound.pop();
            }
            Formula::ForallSet(v, g) | Formula::ExistsSet(v, g) => {
                set_bound.push(v.clone());
                g.collect_free(num_bound, set_bound, out);
                set_bound.pop();
            }
        }
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Eq(a, b, _) | Formula::Lt(a, b, _) => {
                a.vars(out);
                b.vars(out);
            }
            Formula::Mem(t, x, _) => {
                t.vars(out);
                out.insert(x.clone());
            }
            Formula::Not(g) | Formula::Rank(g, _) => g.collect_names(out),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
            Formula::ForallNum(v, g)
            | Formula::ExistsNum(v, g)
            | Formula::ForallSet(v, g)
            | Formula::ExistsSet(v, g) => {
                out.insert(v.clone());
                g.collect_names(out);
            }
        }
    }

    /// Capture-avoiding substitution of the term `t` for the number variable `var`.
    pub fn substitute(&self, var: &str, t: &Term) -> Result<Formula, SyntaxError> {
        if !is_num_var(var) {
            return Err(SyntaxError::Sort(format!(
                "`{var}` is not a number variable and cannot be replaced by a term"
            )));
        }
        let mut term_vars = BTreeSet::new();
        t.vars(&mut term_vars);
        Ok(self.subst(var, t, &term_vars))
    }

    fn subst(&self, var: &str, t: &Term, term_vars: &BTreeSet<String>) -> Formula {
        match self {
            Formula::Eq(a, b, fl) => Formula::Eq(a.replace(var, t), b.replace(var, t), *fl),
            Formula::Lt(a, b, fl) => Formula::Lt(a.replace(var, t), b.replace(var, t), *fl),
            Formula::Mem(a, x, fl) => Formula::Mem(a.replace(var, t), x.clone(), *fl),
            Formula::Not(g) => Formula::not(g.subst(var, t, term_vars)),
            Formula::Rank(g, op) => Formula::rank(g.subst(var, t, term_vars), *op),
            Formula::And(a, b) => {
                Formula::and(a.subst(var, t, term_vars), b.subst(var, t, term_vars))
            }
            Formula::Or(a, b) => {
                Formula::or(a.subst(var, t, term_vars), b.subst(var, t, term_vars))
            }
            Formula::Implies(a, b) => {
                Formula::implies(a.subst(var, t, term_vars), b.subst(var, t, term_vars))
            }
            Formula::Iff(a, b) => {
                Formula::iff(a.subst(var, t, term_vars), b.subst(var, t, term_vars))
            }
            Formula::ForallNum(v, g) | Formula::ExistsNum(v, g) => {
                let universal = matches!(self, Formula::ForallNum(..));
                let rebuild = |name: &str, body: Formula| {
                    if universal {
                        Formula::forall_num(name, body)
                    } else {
                        Formula::exists_num(name, body)
                    }
                };
                if v == var || !g.free_vars().num.contains(var) {
                    return self.clone();
                }
                if term_vars.contains(v) {
                    let mut avoid = g.all_names();
                    avoid.extend(term_vars.iter().cloned());
                    avoid.insert(var.to_string());
                    let fresh = fresh_name(v, &avoid);
                    let renamed = g.subst(
                        v,
                        &Term::Var(fresh.clone()),
                        &BTreeSet::from([fresh.clone()]),
                    );
                    rebuild(&fresh, renamed.subst(var, t, term_vars))
                } else {
                    rebuild(v, g.subst(var, t, term_vars))
                }
            }
            Formula::ForallSet(v, g) => Formula::forall_set(v, g.subst(var, t, term_vars)),
            Formula::ExistsSet(v, g) => Formula::exists_set(v, g.subst(var, t, term_vars)),
        }
    }

    /// Rename free occurrences of the set variable `from` to `to`.
    pub fn rename_set_var(&self, from: &str, to: &str) -> Formula {
        match self {
            Formula::Mem(t, x, fl) if x == from => Formula::Mem(t.clone(), to.to_string(), *fl),
            Formula::Eq(..) | Formula::Lt(..) | Formula::Mem(..) => self.clone(),
            Formula::Not(g) => Formula::not(g.rename_set_var(from, to)),
            Formula::Rank(g, op) => Formula::rank(g.rename_set_var(from, to), *op),
            Formula::And(a, b) => {
                Formula::and(a.rename_set_var(from, to), b.rename_set_var(from, to))
            }
            Formula::Or(a, b) => {
                Formula::or(a.rename_set_var(from, to), b.rename_set_var(from, to))
            }
            Formula::Implies(a, b) => {
                Formula::implies(a.rename_set_var(from, to), b.rename_set_var(from, to))
            }
            Formula::Iff(a, b) => {
                Formula::iff(a.rename_set_var(from, to), b.rename_set_var(from, to))
            }
            Formula::ForallNum(v, g) => Formula::forall_num(v, g.rename_set_var(from, to)),
            Formula::ExistsNum(v, g) => Formula::exists_num(v, g.rename_set_var(from, to)),
            Formula::ForallSet(v, _) | Formula::ExistsSet(v, _) if v == from => self.clone(),
            Formula::ForallSet(v, g) => Formula::forall_set(v, g.rename_set_var(from, to)),
            Formula::ExistsSet(v, g) => Formula::exists_set(v, g.rename_set_var(from, to)),
        }
    }

    /// Structural equality up to consistent renaming of bound variables.
    pub fn alpha_eq(&self, other: &Formula) -> bool {
        alpha(self, other, &mut Vec::new(), &mut Vec::new())
    }

    /// Calls `f` on every flavor occurring in the formula, including rank operators.
    pub fn visit_flavors(&self, f: &mut impl FnMut(Flavor)) {
        match self {
            Formula::Eq(a, b, fl) | Formula::Lt(a, b, fl) => {
                a.visit_flavors(f);
                b.visit_flavors(f);
                f(*fl);
            }
            Formula::Mem(t, _, fl) => {
                t.visit_flavors(f);
                f(*fl);
            }
            Formula::Not(g) => g.visit_flavors(f),
            Formula::Rank(g, op) => {
                g.visit_flavors(f);
                f(op.flavor());
            }
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                a.visit_flavors(f);
                b.visit_flavors(f);
            }
            Formula::ForallNum(_, g)
            | Formula::ExistsNum(_, g)
            | Formula::ForallSet(_, g)
            | Formula::ExistsSet(_, g) => g.visit_flavors(f),
        }
    }

    pub fn flavors(&self) -> BTreeSet<Flavor> {
        let mut out = BTreeSet::new();
        self.visit_flavors(&mut |fl| {
            out.insert(fl);
        });
        out
    }

    /// True when every atom and constant is flavor `S` and no rank operator occurs.
    pub fn is_strictly_consistent(&self) -> bool {
        let mut ok = true;
        self.visit_flavors(&mut |fl| ok &= fl == Flavor::S);
        ok
    }

    /// Number of formula and term nodes.
    pub fn node_count(&self) -> usize {
        match self {
            Formula::Eq(a, b, _) | Formula::Lt(a, b, _) => 1 + a.node_count() + b.node_count(),
            Formula::Mem(t, _, _) => 1 + t.node_count(),
            Formula::Not(g) | Formula::Rank(g, _) => 1 + g.node_count(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => 1 + a.node_count() + b.node_count(),
            Formula::ForallNum(_, g)
            | Formula::ExistsNum(_, g)
            | Formula::ForallSet(_, g)
            | Formula::ExistsSet(_, g) => 1 + g.node_count(),
        }
    }

    /// Universal closure over the free variables, number variables outermost,
    /// each sort in name order.
    pub fn universal_closure(&self) -> Formula {
        let fv = self.free_vars();
        let mut out = self.clone();
        for x in fv.set.iter().rev() {
            out = Formula::forall_set(x, out);
        }
        for v in fv.num.iter().rev() {
            out = Formula::forall_num(v, out);
        }
        out
    }
}

fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { base } else { stem };
    (1u64..)
        .map(|i| format!("{stem}{i}"))
        .find(|cand| !avoid.contains(cand))
        .expect("unbounded supply of names")
}

fn alpha_term(a: &Term, b: &Term, num: &[(String, String)]) -> bool {
    match (a, b) {
        (Term::Var(x), Term::Var(y)) => {
            let bx = num.iter().rposition(|(l, _)| l == x);
            let by = num.iter().rposition(|(_, r)| r == y);
            match (bx, by) {
                (Some(i), Some(j)) => i == j,
                (None, None) => x == y,
                _ => false,
            }
        }
        (Term::Const(c1, f1), Term::Const(c2, f2)) => c1 == c2 && f1 == f2,
        (Term::Add(a1, b1), Term::Add(a2, b2)) | (Term::Mul(a1, b1), Term::Mul(a2, b2)) => {
            alpha_term(a1, a2, num) && alpha_term(b1, b2, num)
        }
        _ => false,
    }
}

fn alpha_set(x: &str, y: &str, set: &[(String, String)]) -> bool {
    let bx = set.iter().rposition(|(l, _)| l == x);
    let by = set.iter().rposition(|(_, r)| r == y);
    match (bx, by) {
        (Some(i), Some(j)) => i == j,
        (None, None) => x == y,
        _ => false,
    }
}

fn alpha(
    a: &Formula,
    b: &Formula,
    num: &mut Vec<(String, String)>,
    set: &mut Vec<(String, String)>,
) -> bool {
    use Formula::*;
    match (a, b) {
        (Eq(a1, b1, f1), Eq(a2, b2, f2)) | (Lt(a1, b1, f1), Lt(a2, b2, f2)) => {
            f1 == f2 && alpha_term(a1, a2, num) && alpha_term(b1, b2, num)
        }
        (Mem(t1, x1, f1), Mem(t2, x2, f2)) => {
            f1 == f2 && alpha_term(t1, t2, num) && alpha_set(x1, x2, set)
        }
        (Not(g1), Not(g2)) => alpha(g1, g2, num, set),
        (Rank(g1, o1), Rank(g2, o2)) => o1 == o2 && alpha(g1, g2, num, set),
        (And(a1, b1), And(a2, b2))
        | (Or(a1, b1), Or(a2, b2))
        | (Implies(a1, b1), Implies(a2, b2))
        | (Iff(a1, b1), Iff(a2, b2)) => alpha(a1, a2, num, set) && alpha(b1, b2, num, set),
        (ForallNum(v1, g1), ForallNum(v2, g2)) | (ExistsNum(v1, g1), ExistsNum(v2, g2)) => {
            num.push((v1.clone(), v2.clone()));
            let ok = alpha(g1, g2, num, set);
            num.pop();
            ok
        }
        (ForallSet(v1, g1), ForallSet(v2, g2)) | (ExistsSet(v1, g1), ExistsSet(v2, g2)) => {
            set.push((v1.clone(), v2.clone()));
            let ok = alpha(g1, g2, num, set);
            set.pop();
            ok
        }
        _ => false,
    }
}
