//! Finite metric spaces and codes for continuous functions between them.

use serde::{Deserialize, Serialize};

use super::{rat_add, rat_compare, rat_le, ParaRat};
use crate::syntax::Flavor;
use crate::truth::{Relation, TruthValue};

/// A failed metric law, by point index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "law")]
pub enum MetricViolation {
    Identity { a: usize },
    Negative { a: usize, b: usize },
    Asymmetric { a: usize, b: usize },
    Triangle { a: usize, b: usize, c: usize },
}

/// Checks `d(a,a) = 0`, `0 ≤ d(a,b)`, `d(a,b) = d(b,a)` and the triangle
/// inequality, each read at flavor α and required to be designated.
/// Distinct points at distance zero are admitted.
pub fn metric_axioms_check<P>(
    points: &[P],
    d: impl Fn(&P, &P) -> ParaRat,
    alpha: Flavor,
) -> Vec<MetricViolation> {
    let zero = ParaRat::zero(Flavor::S);
    let n = points.len();
    let dist: Vec<Vec<ParaRat>> = points
        .iter()
        .map(|p| points.iter().map(|q| d(p, q)).collect())
        .collect();
    let mut out = Vec::new();
    for a in 0..n {
        if !rat_compare(&dist[a][a], &zero, Relation::Eq, alpha).is_designated() {
            out.push(MetricViolation::Identity { a });
        }
        for b in 0..n {
            if !rat_le(&zero, &dist[a][b], alpha).is_designated() {
                out.push(MetricViolation::Negative { a, b });
            }
            if a < b && !rat_compare(&dist[a][b], &dist[b][a], Relation::Eq, alpha).is_designated()
            {
                out.push(MetricViolation::Asymmetric { a, b });
            }
            for c in 0..n {
                let via = rat_add(&dist[a][b], &dist[b][c]);
                if !rat_le(&dist[a][c], &via, alpha).is_designated() {
                    out.push(MetricViolation::Triangle { a, b, c });
                }
            }
        }
    }
    out
}

/// `(a, r, b, s)`: the ball of radius `r` around `a` maps into the ball of
/// radius `s` around `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quad<P> {
    pub a: P,
    pub r: ParaRat,
    pub b: P,
    pub s: ParaRat,
}

/// A finite code for a continuous function, with the flavor at which its
/// conditions are read.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContinuityCode<P> {
    pub quads: Vec<Quad<P>>,
    pub flavor: Flavor,
}

/// A coherence condition instance whose implication is not designated.
/// `quad` indexes the code; `point` and `radius` index the universe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum CoherenceViolation {
    /// Two images of the same ball are too far apart.
    Overlap { first: usize, second: usize },
    /// A larger ball around a nearby image point is missing.
    MissingImage {
        quad: usize,
        point: usize,
        radius: usize,
    },
    /// A smaller ball inside the source ball is missing.
    MissingPreimage {
        quad: usize,
        point: usize,
        radius: usize,
    },
}

impl CoherenceViolation {
    pub fn condition(&self) -> u8 {
        match self {
            CoherenceViolation::Overlap { .. } => 1,
            CoherenceViolation::MissingImage { .. } => 2,
            CoherenceViolation::MissingPreimage { .. } => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoherenceReport {
    pub value: TruthValue,
    pub violations: Vec<CoherenceViolation>,
}

fn push_unique<T: PartialEq + Clone>(v: &mut Vec<T>, x: &T) {
    if !v.contains(x) {
        v.push(x.clone());
    }
}

/// Checks the three coherence conditions. The closure conditions range over
/// the source points, image points and radii that occur in the code, unless
/// an explicit universe `(source points, image points, radii)` is given.
pub fn coherence_check<P: PartialEq + Clone>(
    phi: &ContinuityCode<P>,
    d_a: impl Fn(&P, &P) -> ParaRat,
    d_b: impl Fn(&P, &P) -> ParaRat,
    universe: Option<(&[P], &[P], &[ParaRat])>,
) -> CoherenceReport {
    let (sources, images, radii) = match universe {
        Some((a, b, r)) => (a.to_vec(), b.to_vec(), r.to_vec()),
        None => {
            let (mut a, mut b, mut r) = (Vec::new(), Vec::new(), Vec::new());
            for q in &phi.quads {
                push_unique(&mut a, &q.a);
                push_unique(&mut b, &q.b);
                push_unique(&mut r, &q.r);
                push_unique(&mut r, &q.s);
            }
            (a, b, r)
        }
    };
    let alpha = phi.flavor;
    let member = |q: &Quad<P>| TruthValue::from_bool(phi.quads.contains(q));
    let mut value = TruthValue::True;
    let mut violations = Vec::new();
    let mut record = |v: TruthValue, violation: CoherenceViolation| {
        value = value.conjoin(v);
        if !v.is_designated() {
            violations.push(violation);
        }
    };

    for (i, q) in phi.quads.iter().enumerate() {
        for (j, p) in phi.quads.iter().enumerate() {
            if q.a == p.a && q.r == p.r {
                let v = rat_compare(&d_b(&q.b, &p.b), &rat_add(&q.s, &p.s), Relation::Lt, alpha);
                record(
                    v,
                    CoherenceViolation::Overlap {
                        first: i,
                        second: j,
                    },
                );
            }
        }
        for (pi, b2) in images.iter().enumerate() {
            for (ri, s2) in radii.iter().enumerate() {
                let near = rat_compare(&rat_add(&d_b(&q.b, b2), &q.s), s2, Relation::Lt, alpha);
                let grown = Quad {
                    a: q.a.clone(),
                    r: q.r.clone(),
                    b: b2.clone(),
                    s: s2.clone(),
                };
                record(
                    near.implies(member(&grown)),
                    CoherenceViolation::MissingImage {
                        quad: i,
                        point: pi,
                        radius: ri,
                    },
                );
            }
        }
        for (pi, a2) in sources.iter().enumerate() {
            for (ri, r2) in radii.iter().enumerate() {
                let inside = rat_compare(&rat_add(&d_a(&q.a, a2), r2), &q.r, Relation::Lt, alpha);
                let shrunk = Quad {
                    a: a2.clone(),
                    r: r2.clone(),
                    b: q.b.clone(),
                    s: q.s.clone(),
                };
                record(
                    inside.implies(member(&shrunk)),
                    CoherenceViolation::MissingPreimage {
                        quad: i,
                        point: pi,
                        radius: ri,
                    },
                );
            }
        }
    }
    CoherenceReport { value, violations }
}
