//! Shared proptest strategies and a two-valued reference evaluator.

#![allow(dead_code)]

use std::collections::BTreeSet;

use paraz2::model::{eval, Assignment, Element, Structure};
use paraz2::syntax::{Constant, Flavor, Formula, GodelCode, RankOp, Term};
use paraz2::truth::TruthValue;
use proptest::prelude::*;

pub fn flavor(max_rank: u32) -> impl Strategy<Value = Flavor> {
    prop_oneof![
        Just(Flavor::S),
        Just(Flavor::W),
        (0..=max_rank).prop_map(Flavor::WRanked),
        (0..=max_rank).prop_map(Flavor::StrictRanked),
    ]
}

pub fn term(
    vars: &'static [&'static str],
    flavors: BoxedStrategy<Flavor>,
) -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        proptest::sample::select(vars).prop_map(Term::var),
        flavors.clone().prop_map(Term::zero),
        flavors.prop_map(Term::one),
    ];
    leaf.prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::add(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Term::mul(a, b)),
        ]
    })
}

/// Formulas over the given variables and flavors, with rank operators only
/// when `ranks` is set.
pub fn formula(
    num_vars: &'static [&'static str],
    set_vars: &'static [&'static str],
    flavors: BoxedStrategy<Flavor>,
    ranks: bool,
) -> impl Strategy<Value = Formula> {
    let t = || term(num_vars, flavors.clone());
    let leaf = prop_oneof![
        (t(), t(), flavors.clone()).prop_map(|(a, b, f)| Formula::eq(a, b, f)),
        (t(), t(), flavors.clone()).prop_map(|(a, b, f)| Formula::lt(a, b, f)),
        (t(), proptest::sample::select(set_vars), flavors.clone())
            .prop_map(|(a, x, f)| Formula::mem(a, x, f)),
    ];
    leaf.prop_recursive(3, 16, 2, move |inner| {
        let quant = (
            0u8..4,
            proptest::sample::select(num_vars),
            proptest::sample::select(set_vars),
            inner.clone(),
        )
            .prop_map(|(q, v, x, body)| match q {
                0 => Formula::forall_num(v, body),
                1 => Formula::exists_num(v, body),
                2 => Formula::forall_set(x, body),
                _ => Formula::exists_set(x, body),
            });
        let rank = (inner.clone(), any::<bool>(), 0u32..3).prop_map(move |(g, strict, n)| {
            if ranks {
                Formula::rank(
                    g,
                    if strict {
                        RankOp::Strict(n)
                    } else {
                        RankOp::Weak(n)
                    },
                )
            } else {
                Formula::not(g)
            }
        });
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::iff(a, b)),
            quant,
            rank,
        ]
    })
}

pub fn any_formula() -> impl Strategy<Value = Formula> {
    formula(&["n", "m", "x"], &["X", "Y"], flavor(2).boxed(), true)
}

/// Flavor severity, written out independently of the library's join.
fn severity(f: Flavor) -> (u8, u32) {
    match f {
        Flavor::S => (0, 0),
        Flavor::W => (1, 0),
        Flavor::WRanked(n) => (2, n),
        Flavor::StrictRanked(n) => (3, n),
    }
}

pub type Point = (u64, Flavor);

pub struct Classical {
    pub carrier: Vec<Point>,
    pub sets: Vec<BTreeSet<Point>>,
}

pub struct Env {
    pub num: Vec<(String, Point)>,
    pub set: Vec<(String, usize)>,
}

impl Classical {
    /// Two-valued reading of `s`: its carrier, and each set in its range
    /// cut down to the entries that are exactly `True`.
    pub fn of(s: &Structure) -> Classical {
        Classical {
            carrier: s
                .carrier()
                .iter()
                .map(|e| (e.magnitude, e.flavor))
                .collect(),
            sets: s
                .subsets()
                .iter()
                .map(|t| {
                    t.iter()
                        .filter(|(_, v)| **v == TruthValue::True)
                        .map(|(e, _)| (e.magnitude, e.flavor))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn term(&self, env: &Env, t: &Term) -> Point {
        match t {
            Term::Var(v) => env.num.iter().rev().find(|(n, _)| n == v).unwrap().1,
            Term::Const(c, fl) => (if matches!(c, Constant::Zero) { 0 } else { 1 }, *fl),
            Term::Add(a, b) | Term::Mul(a, b) => {
                let (x, fx) = self.term(env, a);
                let (y, fy) = self.term(env, b);
                let m = if matches!(t, Term::Add(..)) {
                    x + y
                } else {
                    x * y
                };
                (m, if severity(fx) >= severity(fy) { fx } else { fy })
            }
        }
    }

    pub fn holds(&self, env: &mut Env, f: &Formula) -> bool {
        match f {
            Formula::Eq(a, b, _) => self.term(env, a).0 == self.term(env, b).0,
            Formula::Lt(a, b, _) => self.term(env, a).0 < self.term(env, b).0,
            Formula::Mem(t, x, _) => {
                let idx = env.set.iter().rev().find(|(n, _)| n == x).unwrap().1;
                self.sets[idx].contains(&self.term(env, t))
            }
            Formula::Not(g) => !self.holds(env, g),
            Formula::And(a, b) => self.holds(env, a) && self.holds(env, b),
            Formula::Or(a, b) => self.holds(env, a) || self.holds(env, b),
            Formula::Implies(a, b) => !self.holds(env, a) || self.holds(env, b),
            Formula::Iff(a, b) => self.holds(env, a) == self.holds(env, b),
            Formula::ForallNum(v, g) | Formula::ExistsNum(v, g) => {
                let all = matches!(f, Formula::ForallNum(..));
                let mut out = all;
                for p in &self.carrier {
                    env.num.push((v.clone(), *p));
                    let r = self.holds(env, g);
                    env.num.pop();
                    if r != all {
                        out = !all;
                        break;
                    }
                }
                out
            }
            Formula::ForallSet(v, g) | Formula::ExistsSet(v, g) => {
                let all = matches!(f, Formula::ForallSet(..));
                let mut out = all;
                for i in 0..self.sets.len() {
                    env.set.push((v.clone(), i));
                    let r = self.holds(env, g);
                    env.set.pop();
                    if r != all {
                        out = !all;
                        break;
                    }
                }
                out
            }
            Formula::Rank(..) => unreachable!("no rank operators in the classical fragment"),
        }
    }
}

/// Least `w` element with no formula in `formulas` singling it out among the
/// `w` slice, found by direct scan.
pub fn brute_force_least_undefined(s: &Structure, formulas: &[(GodelCode, Formula)]) -> Element {
    let slice: Vec<Element> = s
        .carrier()
        .iter()
        .copied()
        .filter(|e| e.flavor == Flavor::W)
        .collect();
    let mut defined = BTreeSet::new();
    for (_, f) in formulas {
        let fv = f.free_vars();
        if fv.num.len() != 1 || !fv.set.is_empty() {
            continue;
        }
        let v = fv.num.iter().next().unwrap();
        let sat: Vec<Element> = slice
            .iter()
            .copied()
            .filter(|e| eval(s, &Assignment::new().with_num(v, *e), f).unwrap() == TruthValue::True)
            .collect();
        if let [only] = sat[..] {
            defined.insert(only);
        }
    }
    let mut best: Option<Element> = None;
    for e in slice {
        if !defined.contains(&e) && best.is_none_or(|b| e.magnitude < b.magnitude) {
            best = Some(e);
        }
    }
    best.expect("complement is nonempty")
}
