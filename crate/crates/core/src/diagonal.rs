//! Berry and Richard constructions over bounded definability pools.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::model::{
    definable_elements_in, entails_with, Assignment, Element, Entailment, MembershipTable,
    ModelError, Structure,
};
use crate::numbers::{NumberError, ParaReal};
use crate::syntax::{godel_number, parse, EnumPool, Flavor, Formula, GodelCode, SyntaxError};
use crate::truth::TruthValue;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagonalError {
    #[error("every element of the w slice is definable below the bound")]
    AllDefined,
    #[error("table {0} has fewer than {0} digits")]
    ShortTable(usize),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Number(#[from] NumberError),
}

/// "x is outside A and everything `<_w` below x is in A": the definition of
/// the least number outside the definable set `A`.
pub const LEAST_UNDEFINED: &str = "!(x in_w A) & forall y. (y <w x -> y in_w A)";

pub fn least_undefined_formula() -> Formula {
    parse(LEAST_UNDEFINED).expect("fixed formula parses")
}

/// Outcome of the Berry construction at one code bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BerryReport {
    pub k: GodelCode,
    /// `w`-flavored elements definable by a formula of code at most `k`.
    #[serde(rename = "A_k")]
    pub a_k: BTreeSet<Element>,
    /// The `<_w`-least `w`-flavored element outside `a_k`.
    #[serde(rename = "B_k")]
    pub b_k: Element,
    /// Code of [`LEAST_UNDEFINED`].
    pub defining_code: GodelCode,
    /// Whether `b_k` is itself defined under the bound.
    pub contradiction: bool,
    /// Membership of `b_k` in `a_k`: `Both(w(0))` under a contradiction, `False` otherwise.
    pub membership_value: TruthValue,
}

impl BerryReport {
    /// `a_k` as a table, with `b_k` entered at its membership value.
    pub fn table(&self) -> MembershipTable {
        let mut t = MembershipTable::classical(&self.a_k);
        t.set(self.b_k, self.membership_value);
        t
    }

    /// Checks that the registered contradiction `b_k ∈_w A ∧ ¬(b_k ∈_w A)`
    /// does not entail `conclusion`, with `x := b_k` and `A :=` [`Self::table`].
    /// Other free variables of `conclusion` range over `s`.
    pub fn entails_from_contradiction(
        &self,
        s: &Structure,
        conclusion: &Formula,
    ) -> Result<Entailment, ModelError> {
        let premise = parse("x in_w A & !(x in_w A)").expect("fixed formula parses");
        let fixed = Assignment::new()
            .with_num("x", self.b_k)
            .with_set("A", self.table());
        entails_with(
            s,
            &[premise],
            conclusion,
            &fixed,
            crate::model::ENTAILMENT_CAP,
        )
    }
}

/// Berry construction over the default enumeration pool.
pub fn berry(s: &Structure, k: &GodelCode) -> Result<BerryReport, DiagonalError> {
    berry_in(s, &EnumPool::default(), k)
}

/// Berry construction: collect the `w` elements definable under `k` in
/// `pool`, take the least one left over, and compare `k` with the code of
/// the formula that just defined it.
pub fn berry_in(
    s: &Structure,
    pool: &EnumPool,
    k: &GodelCode,
) -> Result<BerryReport, DiagonalError> {
    let a_k: BTreeSet<Element> = definable_elements_in(s, pool, k)?
        .into_iter()
        .filter(|e| e.flavor == Flavor::W)
        .collect();
    let b_k = s
        .slice(Flavor::W)
        .into_iter()
        .filter(|e| !a_k.contains(e))
        .min_by_key(|e| e.magnitude)
        .ok_or(DiagonalError::AllDefined)?;
    let defining_code = godel_number(&least_undefined_formula());
    let contradiction = defining_code <= *k;
    let membership_value = if contradiction {
        TruthValue::Both(Flavor::WRanked(0))
    } else {
        TruthValue::False
    };
    Ok(BerryReport {
        k: k.clone(),
        a_k,
        b_k,
        defining_code,
        contradiction,
        membership_value,
    })
}

/// Flips the diagonal: digit `p` of the result is 1 unless digit `p` of
/// table `p` is 1, in which case it is 0.
pub fn richard_diagonal(tables: &[Vec<u8>]) -> Result<ParaReal, DiagonalError> {
    let digits = tables
        .iter()
        .enumerate()
        .map(|(i, t)| match t.get(i) {
            Some(1) => Ok(0),
            Some(_) => Ok(1),
            None => Err(DiagonalError::ShortTable(i + 1)),
        })
        .collect::<Result<Vec<u8>, _>>()?;
    Ok(ParaReal::from_digits(digits, Flavor::W)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RichardReport {
    pub tables: Vec<Vec<u8>>,
    pub diagonal: ParaReal,
    /// 1-based positions `p` where table `p` and the diagonal differ at digit `p`.
    pub mismatches: Vec<usize>,
    pub self_membership: TruthValue,
}

/// Compares each table with `diagonal` at its own position. Positions past
/// the end of either count as agreement.
pub fn richard_verify(tables: &[Vec<u8>], diagonal: &ParaReal) -> RichardReport {
    let mismatches = tables
        .iter()
        .enumerate()
        .filter_map(|(i, t)| {
            let p = i + 1;
            match (t.get(i), diagonal.digit(p)) {
                (Some(a), Ok(b)) if *a != b => Some(p),
                _ => None,
            }
        })
        .collect();
    RichardReport {
        tables: tables.to_vec(),
        diagonal: diagonal.clone(),
        mismatches,
        self_membership: TruthValue::Both(Flavor::WRanked(0)),
    }
}

/// Reads real `p` (1-based) to depth `p`.
pub fn tables_from_reals(reals: &[ParaReal]) -> Result<Vec<Vec<u8>>, DiagonalError> {
    reals
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.digits(i + 1)
                .map_err(|_| DiagonalError::ShortTable(i + 1))
        })
        .collect()
}

/// Parses a tables file: one `0.ddd…` line per table; blank lines and lines
/// starting with `#` are skipped.
pub fn parse_tables(text: &str) -> Result<Vec<Vec<u8>>, DiagonalError> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let r = ParaReal::parse_digits(l, Flavor::W)?;
            Ok(r.digits(r.depth())?)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::canonical_structure;

    #[test]
    fn meta_formula_code() {
        assert_eq!(
            godel_number(&least_undefined_formula()),
            GodelCode::from(37_632_734_955_213_389)
        );
    }

    #[test]
    fn below_the_defining_code() {
        let s = canonical_structure(4, 0);
        let r = berry(&s, &GodelCode::from(30)).unwrap();
        assert!(!r.contradiction);
        assert_eq!(r.membership_value, TruthValue::False);
        assert!(!r.a_k.contains(&r.b_k));
    }

    #[test]
    fn toy_pool() {
        let s = canonical_structure(3, 0);
        let d: BTreeSet<Element> = crate::model::definable_from(&s, [&parse("x =w 1_w").unwrap()])
            .unwrap()
            .into_iter()
            .filter(|e| e.flavor == Flavor::W)
            .collect();
        assert_eq!(d, BTreeSet::from([Element::new(1, Flavor::W)]));
    }

    #[test]
    fn contradiction_without_explosion() {
        let s = canonical_structure(3, 0);
        let pool = EnumPool {
            max_len: Some(6),
            ..EnumPool::default()
        };
        let r = berry_in(&s, &pool, &GodelCode::from(u64::MAX)).unwrap();
        assert!(r.contradiction);
        assert_eq!(r.membership_value, TruthValue::Both(Flavor::WRanked(0)));
        let e = r
            .entails_from_contradiction(&s, &parse("0_s =s 1_s").unwrap())
            .unwrap();
        assert!(!e.holds);
    }

    #[test]
    fn diagonal_examples() {
        let tables = vec![vec![1, 0, 0], vec![0, 5, 0], vec![0, 0, 1]];
        assert_eq!(richard_diagonal(&tables).unwrap().to_string(), "0.010");
        let zeros = vec![vec![0; 4]; 4];
        assert_eq!(
            richard_diagonal(&zeros).unwrap().digits(4).unwrap(),
            vec![1; 4]
        );
        let r = richard_verify(&tables, &richard_diagonal(&tables).unwrap());
        assert_eq!(r.mismatches, vec![1, 2, 3]);
        assert_eq!(
            richard_diagonal(&[vec![1], vec![2]]),
            Err(DiagonalError::ShortTable(2))
        );
        let empty = richard_verify(&[], &richard_diagonal(&[]).unwrap());
        assert!(empty.mismatches.is_empty());
        assert_eq!(empty.self_membership, TruthValue::Both(Flavor::WRanked(0)));
    }

    #[test]
    fn tables_file() {
        let t = parse_tables("# three\n0.123\n\n0.45 6\n").unwrap();
        assert_eq!(t, vec![vec![1, 2, 3], vec![4, 5, 6]]);
        assert!(parse_tables("1.2").is_err());
    }
}
