//! Gödel numbering and ordered enumeration.
//!
//! A formula is serialized in prefix (Polish) order over a fixed 24-symbol
//! alphabet; variable indices and ranks are written in Elias gamma code over
//! the two digit symbols, so every nonterminal is a prefix code. The Gödel
//! code of a formula is its position in the shortlex order of all
//! well-formed serializations: shorter strings always get smaller codes and
//! codes are dense (every natural number is the code of exactly one formula).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::ControlFlow;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{Constant, Flavor, Formula, RankOp, SyntaxError, Term};

/// A Gödel code. Serializes as a JSON number when it fits in `u64`, else as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GodelCode(pub BigUint);

impl GodelCode {
    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }
}

impl From<u64> for GodelCode {
    fn from(v: u64) -> Self {
        GodelCode(BigUint::from(v))
    }
}

impl fmt::Display for GodelCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::str::FromStr for GodelCode {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse().map(GodelCode)
    }
}

impl Serialize for GodelCode {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.0.to_u64() {
            Some(v) => serializer.serialize_u64(v),
            None => serializer.collect_str(&self.0),
        }
    }
}

impl<'de> Deserialize<'de> for GodelCode {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(u64),
            Text(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Num(v) => Ok(GodelCode::from(v)),
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Strictly consistent pairing `(m + n)^2 + m`.
pub fn pair(m: u64, n: u64) -> BigUint {
    let s = BigUint::from(m) + BigUint::from(n);
    &s * &s + BigUint::from(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
enum Sym {
    Eq,
    Lt,
    Mem,
    Not,
    And,
    Or,
    Imp,
    Iff,
    AllN,
    ExN,
    AllS,
    ExS,
    Rank,
    NVar,
    Zero,
    One,
    Add,
    Mul,
    FlS,
    FlW,
    FlWR,
    FlSR,
    B0,
    B1,
}

const NUM_POOL: [&str; 3] = ["x", "y", "z"];
const SET_POOL: [&str; 2] = ["X", "Y"];

/// Identifier alphabet after the first character, in ASCII order.
const REST_CHARS: &[u8] = b"0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ_abcdefghijklmnopqrstuvwxyz";

fn ident_shortlex_rank(name: &str) -> BigUint {
    let bytes = name.as_bytes();
    let base = BigUint::from(REST_CHARS.len());
    let mut shorter = BigUint::zero();
    let mut width = BigUint::from(26u32);
    for _ in 1..bytes.len() {
        shorter += &width;
        width *= &base;
    }
    let first = bytes[0].to_ascii_lowercase() - b'a';
    let mut pos = BigUint::from(first);
    for &b in &bytes[1..] {
        let d = REST_CHARS.iter().position(|&c| c == b).unwrap_or(0);
        pos = pos * &base + BigUint::from(d);
    }
    shorter + pos
}

fn ident_from_shortlex_rank(mut r: u64, upper: bool) -> String {
    let base = REST_CHARS.len() as u64;
    let mut len = 1u32;
    let mut width = 26u64;
    while r >= width {
        r -= width;
        width *= base;
        len += 1;
    }
    let mut rest = Vec::new();
    for _ in 1..len {
        rest.push(REST_CHARS[(r % base) as usize]);
        r /= base;
    }
    let first = if upper { b'A' } else { b'a' } + r as u8;
    let mut out = vec![first];
    out.extend(rest.into_iter().rev());
    String::from_utf8(out).expect("ascii")
}

fn var_index(name: &str, pool: &[&str]) -> BigUint {
    if let Some(i) = pool.iter().position(|p| *p == name) {
        return BigUint::from(i);
    }
    let r = ident_shortlex_rank(name);
    let below = pool.iter().filter(|p| ident_shortlex_rank(p) < r).count();
    BigUint::from(pool.len()) + r - BigUint::from(below)
}

fn name_of_index(i: u64, pool: &[&str], upper: bool) -> String {
    if (i as usize) < pool.len() {
        return pool[i as usize].to_string();
    }
    let target = i - pool.len() as u64;
    let pool_ranks: Vec<u64> = pool
        .iter()
        .map(|p| ident_shortlex_rank(p).to_u64().expect("short pool names"))
        .collect();
    let mut q = target;
    loop {
        let below = pool_ranks.iter().filter(|&&r| r <= q).count() as u64;
        if q - below == target && !pool_ranks.contains(&q) {
            return ident_from_shortlex_rank(q, upper);
        }
        q += 1;
    }
}

/// Name of the `i`-th number variable (`x`, `y`, `z`, then other identifiers in shortlex order).
pub fn name_of_num_index(i: u64) -> String {
    name_of_index(i, &NUM_POOL, false)
}

/// Name of the `i`-th set variable (`X`, `Y`, then other identifiers in shortlex order).
pub fn name_of_set_index(i: u64) -> String {
    name_of_index(i, &SET_POOL, true)
}

fn push_gamma(out: &mut Vec<Sym>, n: &BigUint) {
    let v = n + 1u32;
    let bits = v.bits();
    out.extend(std::iter::repeat_n(Sym::B0, (bits - 1) as usize));
    for i in (0..bits).rev() {
        out.push(if v.bit(i) { Sym::B1 } else { Sym::B0 });
    }
}

fn gamma_u64(n: u64) -> Vec<Sym> {
    let mut out = Vec::new();
    push_gamma(&mut out, &BigUint::from(n));
    out
}

fn push_flavor(out: &mut Vec<Sym>, fl: Flavor) {
    match fl {
        Flavor::S => out.push(Sym::FlS),
        Flavor::W => out.push(Sym::FlW),
        Flavor::WRanked(n) => {
            out.push(Sym::FlWR);
            push_gamma(out, &BigUint::from(n));
        }
        Flavor::StrictRanked(n) => {
            out.push(Sym::FlSR);
            push_gamma(out, &BigUint::from(n));
        }
    }
}

fn push_term(out: &mut Vec<Sym>, t: &Term) {
    match t {
        Term::Var(v) => {
            out.push(Sym::NVar);
            push_gamma(out, &var_index(v, &NUM_POOL));
        }
        Term::Const(c, fl) => {
            out.push(match c {
                Constant::Zero => Sym::Zero,
                Constant::One => Sym::One,
            });
            push_flavor(out, *fl);
        }
        Term::Add(a, b) | Term::Mul(a, b) => {
            out.push(if matches!(t, Term::Add(..)) {
                Sym::Add
            } else {
                Sym::Mul
            });
            push_term(out, a);
            push_term(out, b);
        }
    }
}

fn push_formula(out: &mut Vec<Sym>, f: &Formula) {
    match f {
        Formula::Eq(a, b, fl) | Formula::Lt(a, b, fl) => {
            out.push(if matches!(f, Formula::Eq(..)) {
                Sym::Eq
            } else {
                Sym::Lt
            });
            push_term(out, a);
            push_term(out, b);
            push_flavor(out, *fl);
        }
        Formula::Mem(t, x, fl) => {
            out.push(Sym::Mem);
            push_term(out, t);
            push_gamma(out, &var_index(x, &SET_POOL));
            push_flavor(out, *fl);
        }
        Formula::Not(g) => {
            out.push(Sym::Not);
            push_formula(out, g);
        }
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
            out.push(match f {
                Formula::And(..) => Sym::And,
                Formula::Or(..) => Sym::Or,
                Formula::Implies(..) => Sym::Imp,
                _ => Sym::Iff,
            });
            push_formula(out, a);
            push_formula(out, b);
        }
        Formula::ForallNum(v, g) | Formula::ExistsNum(v, g) => {
            out.push(if matches!(f, Formula::ForallNum(..)) {
                Sym::AllN
            } else {
                Sym::ExN
            });
            push_gamma(out, &var_index(v, &NUM_POOL));
            push_formula(out, g);
        }
        Formula::ForallSet(v, g) | Formula::ExistsSet(v, g) => {
            out.push(if matches!(f, Formula::ForallSet(..)) {
                Sym::AllS
            } else {
                Sym::ExS
            });
            push_gamma(out, &var_index(v, &SET_POOL));
            push_formula(out, g);
        }
        Formula::Rank(g, op) => {
            out.push(Sym::Rank);
            push_formula(out, g);
            push_flavor(out, op.flavor());
        }
    }
}

fn serialize(f: &Formula) -> Vec<Sym> {
    let mut out = Vec::new();
    push_formula(&mut out, f);
    out
}

/// Nonterminals of the serialization grammar, including the internal
/// states of the gamma code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Nt {
    F,
    T,
    Fl,
    RFl,
    /// Gamma code after `z` leading zeros.
    Gamma(u32),
    /// Exactly `m` more binary digits.
    Bits(u32),
}

const IDX: Nt = Nt::Gamma(0);

fn productions(nt: Nt) -> Vec<(Sym, Vec<Nt>)> {
    use Nt::*;
    match nt {
        F => vec![
            (Sym::Eq, vec![T, T, Fl]),
            (Sym::Lt, vec![T, T, Fl]),
            (Sym::Mem, vec![T, IDX, Fl]),
            (Sym::Not, vec![F]),
            (Sym::And, vec![F, F]),
            (Sym::Or, vec![F, F]),
            (Sym::Imp, vec![F, F]),
            (Sym::Iff, vec![F, F]),
            (Sym::AllN, vec![IDX, F]),
            (Sym::ExN, vec![IDX, F]),
            (Sym::AllS, vec![IDX, F]),
            (Sym::ExS, vec![IDX, F]),
            (Sym::Rank, vec![F, RFl]),
        ],
        T => vec![
            (Sym::NVar, vec![IDX]),
            (Sym::Zero, vec![Fl]),
            (Sym::One, vec![Fl]),
            (Sym::Add, vec![T, T]),
            (Sym::Mul, vec![T, T]),
        ],
        Fl => vec![
            (Sym::FlS, vec![]),
            (Sym::FlW, vec![]),
            (Sym::FlWR, vec![IDX]),
            (Sym::FlSR, vec![IDX]),
        ],
        RFl => vec![(Sym::FlWR, vec![IDX]), (Sym::FlSR, vec![IDX])],
        Gamma(z) => vec![(Sym::B0, vec![Gamma(z + 1)]), (Sym::B1, vec![Bits(z)])],
        Bits(0) => vec![],
        Bits(m) => vec![(Sym::B0, vec![Bits(m - 1)]), (Sym::B1, vec![Bits(m - 1)])],
    }
}

fn pow2(e: usize) -> BigUint {
    BigUint::one() << e
}

/// Counts of well-formed strings of each exact length, per nonterminal.
struct Counts {
    len: usize,
    f: Vec<BigUint>,
    t: Vec<BigUint>,
    fl: Vec<BigUint>,
    rfl: Vec<BigUint>,
}

fn gamma_count(z: u32, n: usize) -> BigUint {
    let z = z as usize;
    if n < z + 1 || !(n - z - 1).is_multiple_of(2) {
        return BigUint::zero();
    }
    pow2(z + (n - z - 1) / 2)
}

fn convolve(a: &[BigUint], b: &[BigUint], len: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); len + 1];
    for (i, x) in a.iter().enumerate().take(len + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len + 1 - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

impl Counts {
    fn build(len: usize) -> Counts {
        let idx: Vec<BigUint> = (0..=len).map(|n| gamma_count(0, n)).collect();
        let mut fl = vec![BigUint::zero(); len + 1];
        let mut rfl = vec![BigUint::zero(); len + 1];
        for n in 1..=len {
            rfl[n] = &idx[n - 1] * 2u32;
            fl[n] = rfl[n].clone() + if n == 1 { 2u32 } else { 0u32 };
        }
        let mut t = vec![BigUint::zero(); len + 1];
        let mut f = vec![BigUint::zero(); len + 1];
        for n in 1..=len {
            let m = n - 1;
            let mut tn = &idx[m] + &fl[m] * 2u32;
            let mut tt = BigUint::zero();
            for a in 1..m {
                tt += &t[a] * &t[m - a];
            }
            tn += tt * 2u32;
            t[n] = tn;
        }
        let tt = convolve(&t, &t, len);
        let tt_fl = convolve(&tt, &fl, len);
        let t_idx_fl = convolve(&convolve(&t, &idx, len), &fl, len);
        for n in 1..=len {
            let m = n - 1;
            let mut fnn = &tt_fl[m] * 2u32 + &t_idx_fl[m];
            fnn += &f[m];
            let mut ff = BigUint::zero();
            let mut idx_f = BigUint::zero();
            let mut f_rfl = BigUint::zero();
            for a in 0..=m {
                ff += &f[a] * &f[m - a];
                idx_f += &idx[a] * &f[m - a];
                f_rfl += &f[a] * &rfl[m - a];
            }
            fnn += ff * 4u32 + idx_f * 4u32 + f_rfl;
            f[n] = fnn;
        }
        Counts { len, f, t, fl, rfl }
    }

    fn of(&self, nt: Nt, n: usize) -> BigUint {
        match nt {
            Nt::F => self.f[n].clone(),
            Nt::T => self.t[n].clone(),
            Nt::Fl => self.fl[n].clone(),
            Nt::RFl => self.rfl[n].clone(),
            Nt::Gamma(z) => gamma_count(z, n),
            Nt::Bits(m) => {
                if n == m as usize {
                    pow2(n)
                } else {
                    BigUint::zero()
                }
            }
        }
    }

    fn vector(&self, nt: Nt) -> Vec<BigUint> {
        (0..=self.len).map(|n| self.of(nt, n)).collect()
    }
}

fn counts_for(len: usize) -> Arc<Counts> {
    static CACHE: OnceLock<Mutex<Option<Arc<Counts>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(None));
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(c) = guard.as_ref() {
        if c.len >= len {
            return Arc::clone(c);
        }
    }
    let target = len.max(64).max(guard.as_ref().map_or(0, |c| c.len * 2));
    let built = Arc::new(Counts::build(target));
    *guard = Some(Arc::clone(&built));
    built
}

/// Completion counts of a nonterminal sequence, by total length up to `max`.
fn sequence_vector(counts: &Counts, seq: &[Nt], max: usize) -> Vec<BigUint> {
    let mut v = vec![BigUint::zero(); max + 1];
    v[0] = BigUint::one();
    for &nt in seq {
        v = extend(counts, &v, nt, max);
    }
    v
}

/// Convolves `v` with the counts of `nt`, truncated at `max`. Fixed-width
/// digit runs are a plain shift.
fn extend(counts: &Counts, v: &[BigUint], nt: Nt, max: usize) -> Vec<BigUint> {
    match nt {
        Nt::Bits(m) => {
            let m = m as usize;
            let scale = pow2(m);
            let mut out = vec![BigUint::zero(); max + 1];
            for (i, x) in v.iter().enumerate().take((max + 1).saturating_sub(m)) {
                if !x.is_zero() {
                    out[i + m] = x * &scale;
                }
            }
            out
        }
        _ => {
            let w: Vec<BigUint> = (0..=max).map(|n| counts.of(nt, n)).collect();
            convolve(v, &w, max)
        }
    }
}

/// Position of a well-formed serialization in shortlex order.
fn shortlex_rank(s: &[Sym]) -> BigUint {
    let len = s.len();
    let counts = counts_for(len);
    let mut total: BigUint = counts.f[..len].iter().sum();

    let mut stack: Vec<Nt> = vec![Nt::F];
    // conv[i] counts completions of stack[0..i], bottom first, by length.
    let mut conv: Vec<Vec<BigUint>> =
        vec![sequence_vector(&counts, &[], len), counts.vector(Nt::F)];

    for (i, &sym) in s.iter().enumerate() {
        while matches!(stack.last(), Some(Nt::Bits(0))) {
            stack.pop();
            conv.pop();
        }
        let top = stack.pop().expect("well-formed serialization");
        conv.pop();
        let rest = conv.last().expect("base");
        let r = len - i;
        let mut chosen = None;
        for (psym, tail) in productions(top) {
            if psym < sym {
                let v = sequence_vector(&counts, &tail, r - 1);
                for a in 0..r {
                    if !v[a].is_zero() && !rest[r - 1 - a].is_zero() {
                        total += &v[a] * &rest[r - 1 - a];
                    }
                }
            } else if psym == sym {
                chosen = Some(tail);
            }
        }
        let tail = chosen.expect("symbol admitted by the grammar");
        for &nt in tail.iter().rev() {
            let next = extend(&counts, conv.last().expect("base"), nt, r - 1);
            stack.push(nt);
            conv.push(next);
        }
    }
    total
}

/// The Gödel code of a formula: its position in shortlex order among all
/// serializations. Cost grows roughly with the cube of the serialization
/// length, so formulas of a few hundred symbols take seconds.
// TODO: a bottom-up recurrence over the parse tree with Karatsuba products
// would bring long formulas down to well under a second.
pub fn godel_number(f: &Formula) -> GodelCode {
    GodelCode(shortlex_rank(&serialize(f)))
}

/// The finite space of formulas visited by [`enumerate`]: a fixed pool of
/// variables and ranks, an optional length bound on serializations, and a cap
/// on how many formulas may be produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumPool {
    pub num_vars: u64,
    pub set_vars: u64,
    pub max_rank: u32,
    /// Longest serialization considered, in symbols.
    pub max_len: Option<usize>,
    pub cap: usize,
}

impl Default for EnumPool {
    fn default() -> Self {
        EnumPool {
            num_vars: 3,
            set_vars: 2,
            max_rank: 2,
            max_len: None,
            cap: 10_000,
        }
    }
}

/// Nonterminals of the pool-restricted grammar.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum PNt {
    F,
    T,
    Fl,
    RFl,
    NumIdx,
    SetIdx,
    RankIdx,
}

/// Lengths reachable are tracked as bitsets, so serializations are bounded by this.
const POOL_MAX_LEN: usize = 127;

struct PoolGrammar {
    num_chunks: Vec<Vec<Sym>>,
    set_chunks: Vec<Vec<Sym>>,
    rank_chunks: Vec<Vec<Sym>>,
    lens: BTreeMap<u8, u128>,
}

fn pnt_key(nt: PNt) -> u8 {
    nt as u8
}

fn shift_or(set: u128, lens: u128) -> u128 {
    let mut out = 0u128;
    let mut s = set;
    while s != 0 {
        let a = s.trailing_zeros();
        out |= lens.checked_shl(a).unwrap_or(0);
        s &= s - 1;
    }
    out
}

impl PoolGrammar {
    fn new(pool: &EnumPool) -> PoolGrammar {
        let sorted_chunks = |count: u64| {
            let mut v: Vec<Vec<Sym>> = (0..count).map(gamma_u64).collect();
            v.sort();
            v
        };
        let mut g = PoolGrammar {
            num_chunks: sorted_chunks(pool.num_vars),
            set_chunks: sorted_chunks(pool.set_vars),
            rank_chunks: sorted_chunks(u64::from(pool.max_rank) + 1),
            lens: BTreeMap::new(),
        };
        let chunk_lens =
            |chunks: &[Vec<Sym>]| chunks.iter().fold(0u128, |acc, c| acc | (1u128 << c.len()));
        g.lens
            .insert(pnt_key(PNt::NumIdx), chunk_lens(&g.num_chunks));
        g.lens
            .insert(pnt_key(PNt::SetIdx), chunk_lens(&g.set_chunks));
        g.lens
            .insert(pnt_key(PNt::RankIdx), chunk_lens(&g.rank_chunks));
        for nt in [PNt::F, PNt::T, PNt::Fl, PNt::RFl] {
            g.lens.insert(pnt_key(nt), 0);
        }
        loop {
            let mut changed = false;
            for nt in [PNt::Fl, PNt::RFl, PNt::T, PNt::F] {
                let mut acc = 0u128;
                for (chunk, tail) in g.productions(nt) {
                    acc |= g.seq_lens(&tail, 1u128 << chunk.len());
                }
                let entry = g.lens.get_mut(&pnt_key(nt)).expect("initialized");
                if acc != *entry {
                    *entry = acc;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        g
    }

    fn seq_lens(&self, seq: &[PNt], start: u128) -> u128 {
        seq.iter()
            .fold(start, |acc, nt| shift_or(acc, self.lens[&pnt_key(*nt)]))
    }

    fn productions(&self, nt: PNt) -> Vec<(Vec<Sym>, Vec<PNt>)> {
        use PNt::*;
        let one = |s: Sym, tail: Vec<PNt>| (vec![s], tail);
        match nt {
            F => vec![
                one(Sym::Eq, vec![T, T, Fl]),
                one(Sym::Lt, vec![T, T, Fl]),
                one(Sym::Mem, vec![T, SetIdx, Fl]),
                one(Sym::Not, vec![F]),
                one(Sym::And, vec![F, F]),
                one(Sym::Or, vec![F, F]),
                one(Sym::Imp, vec![F, F]),
                one(Sym::Iff, vec![F, F]),
                one(Sym::AllN, vec![NumIdx, F]),
                one(Sym::ExN, vec![NumIdx, F]),
                one(Sym::AllS, vec![SetIdx, F]),
                one(Sym::ExS, vec![SetIdx, F]),
                one(Sym::Rank, vec![F, RFl]),
            ],
            T => vec![
                one(Sym::NVar, vec![NumIdx]),
                one(Sym::Zero, vec![Fl]),
                one(Sym::One, vec![Fl]),
                one(Sym::Add, vec![T, T]),
                one(Sym::Mul, vec![T, T]),
            ],
            Fl => vec![
                one(Sym::FlS, vec![]),
                one(Sym::FlW, vec![]),
                one(Sym::FlWR, vec![RankIdx]),
                one(Sym::FlSR, vec![RankIdx]),
            ],
            RFl => vec![one(Sym::FlWR, vec![RankIdx]), one(Sym::FlSR, vec![RankIdx])],
            NumIdx => self
                .num_chunks
                .iter()
                .map(|c| (c.clone(), vec![]))
                .collect(),
            SetIdx => self
                .set_chunks
                .iter()
                .map(|c| (c.clone(), vec![]))
                .collect(),
            RankIdx => self
                .rank_chunks
                .iter()
                .map(|c| (c.clone(), vec![]))
                .collect(),
        }
    }

    /// Depth-first generation of every pool string of exactly `remaining`
    /// more symbols, in lexicographic order.
    fn generate(
        &self,
        stack: &mut Vec<PNt>,
        remaining: usize,
        current: &mut Vec<Sym>,
        visit: &mut dyn FnMut(&[Sym]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let Some(top) = stack.pop() else {
            let out = if remaining == 0 {
                visit(current)
            } else {
                ControlFlow::Continue(())
            };
            return out;
        };
        for (chunk, tail) in self.productions(top) {
            if chunk.len() > remaining {
                continue;
            }
            let after = remaining - chunk.len();
            let mut seq: Vec<PNt> = tail.clone();
            seq.extend(stack.iter().rev().copied());
            if self.seq_lens(&seq, 1) & (1u128 << after) == 0 {
                continue;
            }
            let mark = current.len();
            current.extend_from_slice(&chunk);
            let depth = stack.len();
            stack.extend(tail.iter().rev().copied());
            let flow = self.generate(stack, after, current, visit);
            stack.truncate(depth);
            current.truncate(mark);
            flow?;
        }
        stack.push(top);
        ControlFlow::Continue(())
    }
}

struct Decoder<'a> {
    s: &'a [Sym],
    pos: usize,
}

impl Decoder<'_> {
    fn next(&mut self) -> Sym {
        let s = self.s[self.pos];
        self.pos += 1;
        s
    }

    fn gamma(&mut self) -> u64 {
        let mut zeros = 0;
        while self.next() == Sym::B0 {
            zeros += 1;
        }
        let mut v: u64 = 1;
        for _ in 0..zeros {
            v = (v << 1) | u64::from(self.next() == Sym::B1);
        }
        v - 1
    }

    fn flavor(&mut self) -> Flavor {
        match self.next() {
            Sym::FlS => Flavor::S,
            Sym::FlW => Flavor::W,
            Sym::FlWR => Flavor::WRanked(self.gamma() as u32),
            Sym::FlSR => Flavor::StrictRanked(self.gamma() as u32),
            other => unreachable!("flavor symbol expected, got {other:?}"),
        }
    }

    fn term(&mut self) -> Term {
        match self.next() {
            Sym::NVar => Term::Var(name_of_num_index(self.gamma())),
            Sym::Zero => Term::zero(self.flavor()),
            Sym::One => Term::one(self.flavor()),
            Sym::Add => {
                let a = self.term();
                Term::add(a, self.term())
            }
            Sym::Mul => {
                let a = self.term();
                Term::mul(a, self.term())
            }
            other => unreachable!("term symbol expected, got {other:?}"),
        }
    }

    fn formula(&mut self) -> Formula {
        match self.next() {
            Sym::Eq => {
                let a = self.term();
                let b = self.term();
                Formula::Eq(a, b, self.flavor())
            }
            Sym::Lt => {
                let a = self.term();
                let b = self.term();
                Formula::Lt(a, b, self.flavor())
            }
            Sym::Mem => {
                let t = self.term();
                let x = name_of_set_index(self.gamma());
                Formula::Mem(t, x, self.flavor())
            }
            Sym::Not => Formula::not(self.formula()),
            s @ (Sym::And | Sym::Or | Sym::Imp | Sym::Iff) => {
                let a = self.formula();
                let b = self.formula();
                match s {
                    Sym::And => Formula::and(a, b),
                    Sym::Or => Formula::or(a, b),
                    Sym::Imp => Formula::implies(a, b),
                    _ => Formula::iff(a, b),
                }
            }
            s @ (Sym::AllN | Sym::ExN) => {
                let v = name_of_num_index(self.gamma());
                let g = self.formula();
                if s == Sym::AllN {
                    Formula::forall_num(&v, g)
                } else {
                    Formula::exists_num(&v, g)
                }
            }
            s @ (Sym::AllS | Sym::ExS) => {
                let v = name_of_set_index(self.gamma());
                let g = self.formula();
                if s == Sym::AllS {
                    Formula::forall_set(&v, g)
                } else {
                    Formula::exists_set(&v, g)
                }
            }
            Sym::Rank => {
                let g = self.formula();
                let op =
                    RankOp::from_flavor(self.flavor()).expect("ranked flavor after rank operator");
                Formula::rank(g, op)
            }
            other => unreachable!("formula symbol expected, got {other:?}"),
        }
    }
}

fn decode(s: &[Sym]) -> Formula {
    let mut d = Decoder { s, pos: 0 };
    let f = d.formula();
    debug_assert_eq!(d.pos, s.len());
    f
}

impl EnumPool {
    /// Visits pool formulas with code at most `limit` in ascending code order.
    /// Fails with a resource error once more than `cap` formulas qualify.
    pub fn visit(
        &self,
        limit: &GodelCode,
        mut f: impl FnMut(&GodelCode, &Formula) -> ControlFlow<()>,
    ) -> Result<(), SyntaxError> {
        let grammar = PoolGrammar::new(self);
        let max_len = self.max_len.unwrap_or(POOL_MAX_LEN).min(POOL_MAX_LEN);
        let f_lens = grammar.lens[&pnt_key(PNt::F)];
        let mut seen = 0usize;
        let mut error = None;
        let mut past_limit = false;
        for len in 1..=max_len {
            if f_lens & (1u128 << len) == 0 {
                continue;
            }
            let mut visit = |s: &[Sym]| {
                let code = GodelCode(shortlex_rank(s));
                if code > *limit {
                    past_limit = true;
                    return ControlFlow::Break(());
                }
                seen += 1;
                if seen > self.cap {
                    error = Some(SyntaxError::Resource { cap: self.cap });
                    return ControlFlow::Break(());
                }
                f(&code, &decode(s))
            };
            let flow = grammar.generate(&mut vec![PNt::F], len, &mut Vec::new(), &mut visit);
            if let Some(e) = error {
                return Err(e);
            }
            if past_limit || flow.is_break() {
                break;
            }
        }
        Ok(())
    }

    /// Pool formulas with code at most `limit`, ascending by code.
    pub fn enumerate(&self, limit: &GodelCode) -> Result<Vec<(GodelCode, Formula)>, SyntaxError> {
        let mut out = Vec::new();
        self.visit(limit, |code, f| {
            out.push((code.clone(), f.clone()));
            ControlFlow::Continue(())
        })?;
        Ok(out)
    }

    /// The first `n` pool formulas in code order (subject to `max_len`).
    pub fn first(&self, n: usize) -> Result<Vec<(GodelCode, Formula)>, SyntaxError> {
        let mut out = Vec::new();
        let unbounded = GodelCode(BigUint::one() << 4096u32);
        let capped = EnumPool {
            cap: n.max(self.cap),
            ..self.clone()
        };
        capped.visit(&unbounded, |code, f| {
            out.push((code.clone(), f.clone()));
            if out.len() >= n {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        Ok(out)
    }
}

/// Formulas of the default pool (3 number variables, 2 set variables, ranks
/// 0..=2) whose code is at most `limit`, ascending by code.
pub fn enumerate(limit: &GodelCode) -> Result<Vec<Formula>, SyntaxError> {
    Ok(EnumPool::default()
        .enumerate(limit)?
        .into_iter()
        .map(|(_, f)| f)
        .collect())
}
