use criterion::{black_box, criterion_group, criterion_main, Criterion};
use paraz2::diagonal::{berry_in, least_undefined_formula};
use paraz2::model::{canonical_structure, eval, Assignment};
use paraz2::syntax::{godel_number, parse, EnumPool, GodelCode};

fn coding(c: &mut Criterion) {
    let short = parse("forall n. n + 0_s =s n").unwrap();
    let meta = least_undefined_formula();
    c.bench_function("godel_number/short", |b| {
        b.iter(|| godel_number(black_box(&short)))
    });
    c.bench_function("godel_number/least_undefined", |b| {
        b.iter(|| godel_number(black_box(&meta)))
    });
    let pool = EnumPool::default();
    let limit = GodelCode::from(10_000);
    c.bench_function("enumerate/10^4", |b| {
        b.iter(|| pool.enumerate(black_box(&limit)).unwrap())
    });
}

fn evaluation(c: &mut Criterion) {
    let s = canonical_structure(4, 1);
    let induction = parse(
        "forall X. ((0_w in_w X & forall n. (n in_w X -> n + 1_w in_w X)) -> forall n. n in_w X)",
    )
    .unwrap();
    let a = Assignment::new();
    c.bench_function("eval/induction_w", |b| {
        b.iter(|| eval(&s, &a, black_box(&induction)).unwrap())
    });
}

fn diagonal(c: &mut Criterion) {
    let s = canonical_structure(4, 0);
    let pool = EnumPool {
        max_len: Some(6),
        ..EnumPool::default()
    };
    let k = GodelCode::from(2_000);
    c.bench_function("berry/k=2000", |b| {
        b.iter(|| berry_in(&s, &pool, black_box(&k)).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = coding, evaluation, diagonal
}
criterion_main!(benches);
