use std::fmt;

use super::{Constant, Formula, RankOp, Term};

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constant::Zero => f.write_str("0"),
            Constant::One => f.write_str("1"),
        }
    }
}

impl fmt::Display for RankOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankOp::Weak(n) => write!(f, "^({n})"),
            RankOp::Strict(n) => write!(f, "^[{n}]"),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Const(c, fl) => write!(f, "{c}_{fl}"),
            Term::Add(a, b) => {
                write!(f, "{a} + ")?;
                if matches!(**b, Term::Add(..)) {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
            Term::Mul(a, b) => {
                if matches!(**a, Term::Add(..)) {
                    write!(f, "({a})")?;
                } else {
                    write!(f, "{a}")?;
                }
                f.write_str(" * ")?;
                if matches!(**b, Term::Add(..) | Term::Mul(..)) {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
        }
    }
}

/// Operands of binary connectives are bare only when atomic, negated or rank-tagged.
fn operand(f: &mut fmt::Formatter<'_>, g: &Formula) -> fmt::Result {
    if g.is_atomic() || matches!(g, Formula::Not(_) | Formula::Rank(..)) {
        write!(f, "{g}")
    } else {
        write!(f, "({g})")
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Eq(a, b, fl) => write!(f, "{a} ={fl} {b}"),
            Formula::Lt(a, b, fl) => write!(f, "{a} <{fl} {b}"),
            Formula::Mem(t, x, fl) => write!(f, "{t} in_{fl} {x}"),
            Formula::Not(g) => write!(f, "!({g})"),
            Formula::Rank(g, op) => write!(f, "({g}){op}"),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                let op = match self {
                    Formula::And(..) => "&",
                    Formula::Or(..) => "|",
                    Formula::Implies(..) => "->",
                    _ => "<->",
                };
                operand(f, a)?;
                write!(f, " {op} ")?;
                operand(f, b)
            }
            Formula::ForallNum(v, g) | Formula::ForallSet(v, g) => write!(f, "forall {v}. {g}"),
            Formula::ExistsNum(v, g) | Formula::ExistsSet(v, g) => write!(f, "exists {v}. {g}"),
        }
    }
}
