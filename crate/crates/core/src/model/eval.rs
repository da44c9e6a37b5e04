use serde::Serialize;

use super::{Assignment, Element, MembershipTable, ModelError, Structure};
use crate::numbers::{nat_add, nat_mul};
use crate::syntax::{Constant, Formula, Term};
use crate::truth::{Relation, TruthValue};

/// Bindings in scope, innermost last.
struct Env<'a> {
    num: Vec<(&'a str, Element)>,
    set: Vec<(&'a str, &'a MembershipTable)>,
}

impl<'a> Env<'a> {
    fn from_assignment(a: &'a Assignment) -> Env<'a> {
        Env {
            num: a.num.iter().map(|(k, v)| (k.as_str(), *v)).collect(),
            set: a.set.iter().map(|(k, v)| (k.as_str(), v)).collect(),
        }
    }

    fn num(&self, name: &str) -> Result<Element, ModelError> {
        self.num
            .iter()
            .rev()
            .find(|(n, _)| *n == name)
            .map(|(_, e)| *e)
            .ok_or_else(|| ModelError::UnboundVariable(name.to_string()))
    }

    fn set(&self, name: &str) -> Result<&'a MembershipTable, ModelError> {
        self.set
            .iter()
            .rev()
            .find(|(n, _)| *n == name)
            .map(|(_, t)| *t)
            .ok_or_else(|| ModelError::UnboundVariable(name.to_string()))
    }
}

fn term_value(env: &Env<'_>, t: &Term) -> Result<Element, ModelError> {
    match t {
        Term::Var(v) => env.num(v),
        Term::Const(Constant::Zero, fl) => Ok(Element::zero(*fl)),
        Term::Const(Constant::One, fl) => Ok(Element::one(*fl)),
        Term::Add(a, b) => {
            nat_add(term_value(env, a)?, term_value(env, b)?).map_err(|_| ModelError::Overflow)
        }
        Term::Mul(a, b) => {
            nat_mul(term_value(env, a)?, term_value(env, b)?).map_err(|_| ModelError::Overflow)
        }
    }
}

/// Value of a term: constants are the flavored zero and one, `+` and `×`
/// act on magnitudes and join flavors.
pub fn eval_term(_s: &Structure, a: &Assignment, t: &Term) -> Result<Element, ModelError> {
    term_value(&Env::from_assignment(a), t)
}

fn formula_value<'a>(
    s: &'a Structure,
    env: &mut Env<'a>,
    f: &'a Formula,
) -> Result<TruthValue, ModelError> {
    Ok(match f {
        Formula::Eq(a, b, fl) => s.rel(Relation::Eq, *fl, term_value(env, a)?, term_value(env, b)?),
        Formula::Lt(a, b, fl) => s.rel(Relation::Lt, *fl, term_value(env, a)?, term_value(env, b)?),
        Formula::Mem(t, x, fl) => {
            let e = term_value(env, t)?;
            s.mem(&e, env.set(x)?, *fl)
        }
        Formula::Not(g) => formula_value(s, env, g)?.negate(),
        Formula::And(a, b) => {
            let va = formula_value(s, env, a)?;
            if va == TruthValue::False {
                return Ok(va);
            }
            va.conjoin(formula_value(s, env, b)?)
        }
        Formula::Or(a, b) => {
            let va = formula_value(s, env, a)?;
            if va == TruthValue::True {
                return Ok(va);
            }
            va.disjoin(formula_value(s, env, b)?)
        }
        Formula::Implies(a, b) => formula_value(s, env, a)?.implies(formula_value(s, env, b)?),
        Formula::Iff(a, b) => formula_value(s, env, a)?.iff(formula_value(s, env, b)?),
        Formula::ForallNum(v, g) | Formula::ExistsNum(v, g) => {
            let universal = matches!(f, Formula::ForallNum(..));
            let (mut acc, stop) = quantifier_bounds(universal);
            for e in s.carrier() {
                env.num.push((v.as_str(), *e));
                let r = formula_value(s, env, g);
                env.num.pop();
                acc = combine(universal, acc, r?);
                if acc == stop {
                    break;
                }
            }
            acc
        }
        Formula::ForallSet(v, g) | Formula::ExistsSet(v, g) => {
            let universal = matches!(f, Formula::ForallSet(..));
            let (mut acc, stop) = quantifier_bounds(universal);
            for t in s.subsets() {
                env.set.push((v.as_str(), t));
                let r = formula_value(s, env, g);
                env.set.pop();
                acc = combine(universal, acc, r?);
                if acc == stop {
                    break;
                }
            }
            acc
        }
        Formula::Rank(g, op) => formula_value(s, env, g)?.apply_rank(*op),
    })
}

fn quantifier_bounds(universal: bool) -> (TruthValue, TruthValue) {
    if universal {
        (TruthValue::True, TruthValue::False)
    } else {
        (TruthValue::False, TruthValue::True)
    }
}

fn combine(universal: bool, acc: TruthValue, v: TruthValue) -> TruthValue {
    if universal {
        acc.conjoin(v)
    } else {
        acc.disjoin(v)
    }
}

/// Truth value of `f` under `a`. Universal quantifiers are conjunctions over
/// the carrier (numbers) or the set range (sets), existentials disjunctions.
pub fn eval(s: &Structure, a: &Assignment, f: &Formula) -> Result<TruthValue, ModelError> {
    let mut env = Env::from_assignment(a);
    formula_value(s, &mut env, f)
}

/// Outcome of a semantic entailment check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entailment {
    pub holds: bool,
    /// An assignment making every premise designated and the conclusion not.
    pub countermodel: Option<Assignment>,
}

/// Default bound on the number of assignments [`entails`] will try.
pub const ENTAILMENT_CAP: u128 = 1_000_000;

/// `premises ⊨ conclusion` over `s`: every assignment to the free variables
/// that designates all premises designates the conclusion.
pub fn entails(
    s: &Structure,
    premises: &[Formula],
    conclusion: &Formula,
) -> Result<Entailment, ModelError> {
    entails_with(s, premises, conclusion, &Assignment::new(), ENTAILMENT_CAP)
}

/// As [`entails`], with some variables pinned by `fixed`; only the remaining
/// free variables are enumerated, up to `cap` assignments.
pub fn entails_with(
    s: &Structure,
    premises: &[Formula],
    conclusion: &Formula,
    fixed: &Assignment,
    cap: u128,
) -> Result<Entailment, ModelError> {
    let mut num_vars = std::collections::BTreeSet::new();
    let mut set_vars = std::collections::BTreeSet::new();
    for f in premises.iter().chain(std::iter::once(conclusion)) {
        let fv = f.free_vars();
        num_vars.extend(fv.num.into_iter().filter(|v| !fixed.num.contains_key(v)));
        set_vars.extend(fv.set.into_iter().filter(|v| !fixed.set.contains_key(v)));
    }
    let num_vars: Vec<String> = num_vars.into_iter().collect();
    let set_vars: Vec<String> = set_vars.into_iter().collect();
    let size = (s.carrier().len() as u128)
        .checked_pow(num_vars.len() as u32)
        .and_then(|n| {
            n.checked_mul((s.subsets().len() as u128).checked_pow(set_vars.len() as u32)?)
        })
        .unwrap_or(u128::MAX);
    if size > cap {
        return Err(ModelError::Resource { size, cap });
    }

    let mut idx = vec![0usize; num_vars.len() + set_vars.len()];
    let radix: Vec<usize> = num_vars
        .iter()
        .map(|_| s.carrier().len())
        .chain(set_vars.iter().map(|_| s.subsets().len()))
        .collect();
    loop {
        let mut a = fixed.clone();
        for (i, v) in num_vars.iter().enumerate() {
            a.num.insert(v.clone(), s.carrier()[idx[i]]);
        }
        for (j, v) in set_vars.iter().enumerate() {
            a.set
                .insert(v.clone(), s.subsets()[idx[num_vars.len() + j]].clone());
        }
        let mut premises_hold = true;
        for p in premises {
            if !eval(s, &a, p)?.is_designated() {
                premises_hold = false;
                break;
            }
        }
        if premises_hold && !eval(s, &a, conclusion)?.is_designated() {
            return Ok(Entailment {
                holds: false,
                countermodel: Some(a),
            });
        }
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(Entailment {
                    holds: true,
                    countermodel: None,
                });
            }
            idx[pos] += 1;
            if idx[pos] < radix[pos] {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}
