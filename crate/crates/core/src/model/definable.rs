use std::collections::{BTreeMap, BTreeSet};
use std::ops::ControlFlow;

use super::{eval, Assignment, Element, ModelError, Structure};
use crate::syntax::{EnumPool, Flavor, Formula, GodelCode};
use crate::truth::TruthValue;

/// A definition candidate has exactly one free number variable and no free set variables.
pub fn is_candidate(f: &Formula) -> bool {
    let fv = f.free_vars();
    fv.num.len() == 1 && fv.set.is_empty()
}

/// Elements that are the only `True` satisfier, within their flavor slice,
/// of one of the candidate formulas.
fn defined_by(s: &Structure, f: &Formula, out: &mut BTreeSet<Element>) -> Result<(), ModelError> {
    let var = f.free_vars().num.into_iter().next().expect("candidate");
    let mut per_slice: BTreeMap<Flavor, Vec<Element>> = BTreeMap::new();
    for e in s.carrier() {
        let a = Assignment::new().with_num(&var, *e);
        if eval(s, &a, f)? == TruthValue::True {
            per_slice.entry(e.flavor).or_default().push(*e);
        }
    }
    out.extend(
        per_slice
            .into_values()
            .filter(|v| v.len() == 1)
            .map(|v| v[0]),
    );
    Ok(())
}

/// Elements defined by some candidate among `formulas`. Non-candidates are skipped.
pub fn definable_from<'a>(
    s: &Structure,
    formulas: impl IntoIterator<Item = &'a Formula>,
) -> Result<BTreeSet<Element>, ModelError> {
    let mut out = BTreeSet::new();
    for f in formulas.into_iter().filter(|f| is_candidate(f)) {
        defined_by(s, f, &mut out)?;
    }
    Ok(out)
}

/// Elements defined by a candidate of `pool` whose code is at most `limit`.
pub fn definable_elements_in(
    s: &Structure,
    pool: &EnumPool,
    limit: &GodelCode,
) -> Result<BTreeSet<Element>, ModelError> {
    let mut out = BTreeSet::new();
    let mut failure = None;
    pool.visit(limit, |_, f| {
        if !is_candidate(f) {
            return ControlFlow::Continue(());
        }
        match defined_by(s, f, &mut out) {
            Ok(()) => ControlFlow::Continue(()),
            Err(e) => {
                failure = Some(e);
                ControlFlow::Break(())
            }
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// [`definable_elements_in`] over the default enumeration pool.
pub fn definable_elements(
    s: &Structure,
    limit: &GodelCode,
) -> Result<BTreeSet<Element>, ModelError> {
    definable_elements_in(s, &EnumPool::default(), limit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::canonical_structure;
    use crate::syntax::parse;

    #[test]
    fn unique_satisfier_per_slice() {
        let s = canonical_structure(3, 0);
        let f = parse("x =w 1_w").unwrap();
        let d = definable_from(&s, [&f]).unwrap();
        assert!(d.contains(&Element::new(1, Flavor::W)));
        assert!(d.contains(&Element::new(1, Flavor::S)));
        let g = parse("x =s x").unwrap();
        assert!(definable_from(&s, [&g]).unwrap().is_empty());
    }

    #[test]
    fn small_limits() {
        let s = canonical_structure(3, 0);
        assert!(definable_elements(&s, &GodelCode::from(0)).unwrap().len() <= 1);
        let at16 = definable_elements(&s, &GodelCode::from(16)).unwrap();
        assert!(at16.contains(&Element::new(1, Flavor::S)));
    }
}
