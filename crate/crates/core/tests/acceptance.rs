//! Acceptance suite. Each criterion prints one PASS/FAIL line with its
//! runtime and budget; the process exits non-zero if any fails.

use std::collections::{BTreeSet, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use paraz2::axioms::{check_group, Group};
use paraz2::diagonal::{berry_in, least_undefined_formula, richard_diagonal, richard_verify};
use paraz2::model::{
    canonical_structure, classify, entails_with, eval, solve_comprehension, Assignment,
    Classification, Element, MembershipTable, Scheme,
};
use paraz2::numbers::{
    abs_value, coherence_check, rat_add, rat_canonicalize, rat_inv, rat_mul, rat_neg, rat_sub,
    ContinuityCode, ParaRat, Quad,
};
use paraz2::syntax::{
    enumerate, godel_number, pair, parse, EnumPool, Flavor, Formula, GodelCode, Term,
};
use paraz2::truth::TruthValue;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;

use common::{brute_force_least_undefined, Classical, Env, Point};

type Check = Result<String, String>;

/// Name, check and time budget in seconds.
type Criterion = (&'static str, fn() -> Check, u64);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------------------
// 1. Classical fragment against a two-valued evaluator.

struct Gen<'a> {
    rng: &'a mut ChaCha8Rng,
    num_quants: u32,
    set_quants: u32,
}

const NUM_VARS: [&str; 3] = ["n", "m", "k"];

impl Gen<'_> {
    fn term(&mut self, depth: u32) -> Term {
        match self.rng.gen_range(0..if depth == 0 { 3 } else { 5 }) {
            0 => Term::var(NUM_VARS[self.rng.gen_range(0..3)]),
            1 => Term::zero(Flavor::S),
            2 => Term::one(Flavor::S),
            3 => Term::add(self.term(depth - 1), self.term(depth - 1)),
            _ => Term::mul(self.term(depth - 1), self.term(depth - 1)),
        }
    }

    fn formula(&mut self, depth: u32) -> Formula {
        let choice = self.rng.gen_range(0..if depth == 0 { 3 } else { 10 });
        match choice {
            0 => Formula::eq(self.term(2), self.term(2), Flavor::S),
            1 => Formula::lt(self.term(2), self.term(2), Flavor::S),
            2 => Formula::mem(
                self.term(1),
                if self.rng.gen() { "X" } else { "Y" },
                Flavor::S,
            ),
            3 => Formula::not(self.formula(depth - 1)),
            4 => Formula::and(self.formula(depth - 1), self.formula(depth - 1)),
            5 => Formula::or(self.formula(depth - 1), self.formula(depth - 1)),
            6 => Formula::implies(self.formula(depth - 1), self.formula(depth - 1)),
            7 => Formula::iff(self.formula(depth - 1), self.formula(depth - 1)),
            8 if self.num_quants < 2 => {
                self.num_quants += 1;
                let v = NUM_VARS[self.rng.gen_range(0..3)];
                let body = self.formula(depth - 1);
                if self.rng.gen() {
                    Formula::forall_num(v, body)
                } else {
                    Formula::exists_num(v, body)
                }
            }
            9 if self.set_quants < 1 => {
                self.set_quants += 1;
                let body = self.formula(depth - 1);
                if self.rng.gen() {
                    Formula::forall_set("Y", body)
                } else {
                    Formula::exists_set("Y", body)
                }
            }
            _ => Formula::eq(self.term(1), self.term(1), Flavor::S),
        }
    }
}

fn classical_oracle() -> Check {
    let s = canonical_structure(4, 0);
    let flavors = [
        Flavor::S,
        Flavor::W,
        Flavor::WRanked(0),
        Flavor::StrictRanked(0),
    ];
    let carrier: Vec<Point> = (0..=4)
        .flat_map(|m| flavors.iter().map(move |f| (m, *f)))
        .collect();
    let oracle = Classical::of(&s);
    let lib: BTreeSet<Point> = oracle.carrier.iter().copied().collect();
    ensure(lib == carrier.iter().copied().collect(), || {
        "carrier differs from the intended one".into()
    })?;

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let (mut trues, total) = (0, 1000);
    for i in 0..total {
        let f = Gen {
            rng: &mut rng,
            num_quants: 0,
            set_quants: 0,
        }
        .formula(4);
        ensure(f.is_strictly_consistent(), || {
            format!("generator produced a non-s formula {f}")
        })?;
        let mut a = Assignment::new();
        let mut env = Env {
            num: Vec::new(),
            set: Vec::new(),
        };
        for v in NUM_VARS {
            let p = oracle.carrier[rng.gen_range(0..oracle.carrier.len())];
            a = a.with_num(v, Element::new(p.0, p.1));
            env.num.push((v.to_string(), p));
        }
        let x = rng.gen_range(0..s.subsets().len());
        a = a.with_set("X", s.subsets()[x].clone());
        env.set.push(("X".into(), x));
        let y = rng.gen_range(0..s.subsets().len());
        a = a.with_set("Y", s.subsets()[y].clone());
        env.set.push(("Y".into(), y));

        let expected = TruthValue::from_bool(oracle.holds(&mut env, &f));
        let got = eval(&s, &a, &f).map_err(|e| format!("formula {i} `{f}`: {e}"))?;
        ensure(got == expected, || {
            format!("formula {i} `{f}`: evaluator {got}, oracle {expected}")
        })?;
        trues += usize::from(expected == TruthValue::True);
    }
    Ok(format!("{total} formulas agree ({trues} true)"))
}

// ---------------------------------------------------------------------------
// 2. Axiom soundness.

fn soundness() -> Check {
    let s = canonical_structure(8, 2);
    let mut summary = Vec::new();
    for group in [Group::Basic(None), Group::Induction, Group::Order] {
        let r = check_group(&s, group, None).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{group:?}: {}", r.failures[0]))?;
        summary.push(format!("{} schemas", r.schemas.len()));
    }
    ensure(summary[0] == "64 schemas", || {
        format!("group i covered {}", summary[0])
    })?;
    Ok(format!(
        "i: {}, ii: {}, iii: {}",
        summary[0], summary[1], summary[2]
    ))
}

// ---------------------------------------------------------------------------
// 3. Non-explosion.

const UNRELATED: [&str; 10] = [
    "0_s =s 1_s",
    "1_s <s 0_s",
    "m =s m + 1_s",
    "m <s m",
    "m in_s Z",
    "0_s in_s Z",
    "m + 1_s =s 0_s",
    "m * 0_s =s 1_s",
    "1_s + 1_s =s 1_s",
    "!(m =s m)",
];

fn non_explosion() -> Check {
    let s = canonical_structure(3, 0);
    let contradiction = parse("n in_w X & !(n in_w X)").unwrap();
    let fixed = Assignment::new()
        .with_num("n", Element::new(2, Flavor::W))
        .with_set(
            "X",
            MembershipTable::uniform(s.carrier(), TruthValue::Both(Flavor::W)),
        );
    ensure(
        eval(&s, &fixed, &contradiction).unwrap().is_designated(),
        || "contradiction is not designated".into(),
    )?;
    for q in UNRELATED {
        let q = parse(q).unwrap();
        let r = entails_with(
            &s,
            std::slice::from_ref(&contradiction),
            &q,
            &fixed,
            1_000_000,
        )
        .map_err(|e| e.to_string())?;
        ensure(!r.holds && r.countermodel.is_some(), || {
            format!("the contradiction entails `{q}`")
        })?;
    }
    Ok(format!("{} atoms not entailed", UNRELATED.len()))
}

// ---------------------------------------------------------------------------
// 4. Russell comprehension.

fn russell() -> Check {
    let s = canonical_structure(4, 1);
    let phi = parse("!(n in_w X)").unwrap();
    let t = solve_comprehension(&s, &phi, Scheme::Weak).map_err(|e| e.to_string())?;
    let biconditional = parse("n in_w X <-> !(n in_w X)").unwrap();
    for e in s.carrier() {
        ensure(t.get(e) == TruthValue::Both(Flavor::W), || {
            format!("entry at {e} is {}", t.get(e))
        })?;
        let a = Assignment::new().with_num("n", *e).with_set("X", t.clone());
        let v = eval(&s, &a, &biconditional).unwrap();
        ensure(v.is_designated(), || format!("biconditional at {e} is {v}"))?;
    }
    let t0 = solve_comprehension(&s, &phi, Scheme::StrictRanked(0)).map_err(|e| e.to_string())?;
    let c = classify(&s, &t0);
    ensure(c == Classification::StrictRankedInconsistent(0), || {
        format!("v.3[0] classified as {c}")
    })?;
    Ok(format!(
        "all {} entries B_w; v.3[0] is {c}",
        s.carrier().len()
    ))
}

// ---------------------------------------------------------------------------
// 5. Berry.

fn berry() -> Check {
    let s = canonical_structure(6, 0);
    let pool = EnumPool {
        max_len: Some(7),
        cap: 10_000,
        ..EnumPool::default()
    };
    let g_star = godel_number(&least_undefined_formula());
    let below = GodelCode(&g_star.0 - 1u32);

    let everything = pool.enumerate(&g_star).map_err(|e| e.to_string())?;
    ensure(everything.iter().all(|(c, _)| *c <= g_star), || {
        "pool enumerated past the bound".into()
    })?;
    let expected = brute_force_least_undefined(&s, &everything);

    let lo = berry_in(&s, &pool, &below).map_err(|e| e.to_string())?;
    ensure(
        !lo.contradiction && lo.membership_value == TruthValue::False,
        || {
            format!(
                "k = g*-1 gave contradiction {} with {}",
                lo.contradiction, lo.membership_value
            )
        },
    )?;
    let hi = berry_in(&s, &pool, &g_star).map_err(|e| e.to_string())?;
    ensure(hi.contradiction, || "k = g* gave no contradiction".into())?;
    ensure(
        hi.membership_value == TruthValue::Both(Flavor::WRanked(0)),
        || format!("membership at g* is {}", hi.membership_value),
    )?;
    for r in [&lo, &hi] {
        ensure(r.b_k == expected, || {
            format!("B_k is {}, brute force says {expected}", r.b_k)
        })?;
        ensure(!r.a_k.contains(&r.b_k), || "B_k lies in A_k".into())?;
    }
    let small = berry_in(&s, &pool, &GodelCode::from(100)).map_err(|e| e.to_string())?;
    ensure(small.a_k.is_subset(&hi.a_k), || {
        "A_k is not monotone in k".into()
    })?;
    for q in UNRELATED {
        let q = parse(q).unwrap();
        let r = hi
            .entails_from_contradiction(&s, &q)
            .map_err(|e| e.to_string())?;
        ensure(!r.holds, || {
            format!("the registered contradiction entails `{q}`")
        })?;
    }
    Ok(format!(
        "g* = {g_star}, {} pool formulas, B_k = {}, |A_k| = {}",
        everything.len(),
        hi.b_k,
        hi.a_k.len()
    ))
}

// ---------------------------------------------------------------------------
// 6. Richard.

fn richard() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let tables: Vec<Vec<u8>> = (0..10)
        .map(|_| (0..10).map(|_| rng.gen_range(0..10)).collect())
        .collect();
    let d = richard_diagonal(&tables).map_err(|e| e.to_string())?;
    for (i, t) in tables.iter().enumerate() {
        let p = i + 1;
        let expected = if t[i] == 1 { 0 } else { 1 };
        let got = d.digit(p).map_err(|e| e.to_string())?;
        ensure(got == expected && got != t[i], || {
            format!("digit {p}: diagonal {got}, table {}", t[i])
        })?;
    }
    let r = richard_verify(&tables, &d);
    ensure(r.mismatches == (1..=10).collect::<Vec<_>>(), || {
        format!("mismatches {:?}", r.mismatches)
    })?;
    ensure(
        r.self_membership == TruthValue::Both(Flavor::WRanked(0)),
        || "self membership".into(),
    )?;
    Ok(format!("diagonal {} differs from every table", r.diagonal))
}

// ---------------------------------------------------------------------------
// 7. Field laws.

fn field_laws() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let qs: Vec<ParaRat> = (0..500)
        .map(|_| {
            rat_canonicalize(
                rng.gen_range(-1000..=1000),
                rng.gen_range(1..=1000),
                Flavor::S,
            )
            .unwrap()
        })
        .collect();
    let zero = ParaRat::zero(Flavor::S);
    let one = ParaRat::one(Flavor::S);
    for (i, x) in qs.iter().enumerate() {
        let y = &qs[(i + 1) % qs.len()];
        let z = &qs[(i + 7) % qs.len()];
        let laws = [
            ("add commutes", rat_add(x, y) == rat_add(y, x)),
            ("mul commutes", rat_mul(x, y) == rat_mul(y, x)),
            (
                "add associates",
                rat_add(&rat_add(x, y), z) == rat_add(x, &rat_add(y, z)),
            ),
            (
                "mul associates",
                rat_mul(&rat_mul(x, y), z) == rat_mul(x, &rat_mul(y, z)),
            ),
            (
                "distributes",
                rat_mul(x, &rat_add(y, z)) == rat_add(&rat_mul(x, y), &rat_mul(x, z)),
            ),
            ("additive identity", rat_add(x, &zero) == *x),
            ("multiplicative identity", rat_mul(x, &one) == *x),
            ("additive inverse", rat_add(x, &rat_neg(x)) == zero),
            ("subtraction", rat_sub(x, y) == rat_add(x, &rat_neg(y))),
            (
                "multiplicative inverse",
                x.value == zero.value || rat_mul(x, &rat_inv(x).unwrap()) == one,
            ),
        ];
        for (name, ok) in laws {
            ensure(ok, || format!("{name} fails at x = {x}, y = {y}, z = {z}"))?;
        }
    }
    Ok("500 rationals, 10 laws each".into())
}

// ---------------------------------------------------------------------------
// 8. Injectivity.

fn injectivity() -> Check {
    let mut seen = HashSet::new();
    for m in 0..=100u64 {
        for n in 0..=100u64 {
            ensure(seen.insert(pair(m, n)), || {
                format!("pair({m}, {n}) collides")
            })?;
        }
    }
    let limit = GodelCode::from(10_000);
    let formulas = enumerate(&limit).map_err(|e| e.to_string())?;
    let mut codes = HashSet::new();
    let mut texts = HashSet::new();
    for f in &formulas {
        let c = godel_number(f);
        ensure(c <= limit, || format!("`{f}` enumerated with code {c}"))?;
        ensure(codes.insert(c.clone()), || {
            format!("code {c} of `{f}` collides")
        })?;
        ensure(texts.insert(f.to_string()), || {
            format!("`{f}` enumerated twice")
        })?;
    }
    Ok(format!("{} pairs, {} formulas", seen.len(), formulas.len()))
}

// ---------------------------------------------------------------------------
// 9. Coherence conditions.

fn coherence() -> Check {
    let q = |a: i64, b: i64| rat_canonicalize(a, b, Flavor::S).unwrap();
    let d = |x: &ParaRat, y: &ParaRat| abs_value(&rat_sub(x, y), Flavor::S);
    let quad = |a: ParaRat, r: ParaRat, b: ParaRat, s: ParaRat| Quad { a, r, b, s };

    let empty: ContinuityCode<ParaRat> = ContinuityCode {
        quads: Vec::new(),
        flavor: Flavor::S,
    };
    let r = coherence_check(&empty, d, d, None);
    ensure(
        r.value == TruthValue::True && r.violations.is_empty(),
        || format!("empty code: {r:?}"),
    )?;

    let split = ContinuityCode {
        quads: vec![
            quad(q(0, 1), q(1, 1), q(0, 1), q(1, 4)),
            quad(q(0, 1), q(1, 1), q(3, 1), q(1, 4)),
        ],
        flavor: Flavor::S,
    };
    let r = coherence_check(&split, d, d, None);
    ensure(r.value == TruthValue::False, || {
        format!("split code is {}", r.value)
    })?;
    ensure(
        r.violations.first().map(|v| v.condition()) == Some(1),
        || format!("split code: {:?}", r.violations),
    )?;

    let identity = ContinuityCode {
        quads: vec![
            quad(q(0, 1), q(1, 1), q(0, 1), q(1, 1)),
            quad(q(0, 1), q(1, 1), q(0, 1), q(2, 1)),
            quad(q(0, 1), q(2, 1), q(0, 1), q(2, 1)),
        ],
        flavor: Flavor::S,
    };
    let r = coherence_check(&identity, d, d, None);
    ensure(
        r.value == TruthValue::True && r.violations.is_empty(),
        || format!("identity code: {r:?}"),
    )?;
    Ok("empty vacuous, split fails condition 1, identity coherent".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            "classical fragment matches a two-valued evaluator",
            classical_oracle,
            10,
        ),
        ("axiom groups i-iii are sound", soundness, 30),
        ("contradictions do not explode", non_explosion, 1),
        ("Russell comprehension", russell, 1),
        ("Berry construction", berry, 60),
        ("Richard diagonal", richard, 1),
        ("rational field laws", field_laws, 5),
        ("pairing and coding are injective", injectivity, 30),
        ("continuity code coherence", coherence, 1),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let over = took > Duration::from_secs(*budget);
        let (tag, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over the {budget} s budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!(
            "[{tag}] {}. {name} ({:.2} s / {budget} s): {detail}",
            i + 1,
            took.as_secs_f64()
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
