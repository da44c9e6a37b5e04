//! A workbench for paraconsistent second-order arithmetic: syntax and Gödel
//! codes, a ranked many-valued truth lattice, finite structures, the axiom
//! catalog, the flavored number tower and the Berry and Richard diagonals.

pub mod axioms;
pub mod diagonal;
pub mod model;
pub mod numbers;
pub mod syntax;
pub mod truth;

pub use axioms::{check_group, instantiate, is_axiom_instance, Group, SchemaId};
pub use diagonal::{berry, berry_in, richard_diagonal, richard_verify, BerryReport, RichardReport};
pub use model::{
    canonical_structure, classify, entails, eval, solve_comprehension, Assignment, Classification,
    Element, MembershipTable, Scheme, Structure,
};
pub use numbers::{ParaInt, ParaNat, ParaRat, ParaReal};
pub use syntax::{godel_number, parse, EnumPool, Flavor, Formula, GodelCode, RankOp, Term};
pub use truth::{Relation, TruthValue};
