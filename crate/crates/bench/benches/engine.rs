use criterion::{black_box, criterion_group, criterion_main, Criterion};
use superyangian::presentation::verify;
use superyangian::{decompose, AlgebraElement, RelationId};
use superyangian_bench::{composition, context, reversed_word};

fn normalize(c: &mut Criterion) {
    let mut group = c.benchmark_group("normalize");
    for seq in ["01", "010", "0101"] {
        group.bench_function(format!("reversed word {seq}, degree 2"), |b| {
            b.iter(|| {
                let ctx = context(seq);
                let word = reversed_word(&ctx, 2);
                let mut acc = AlgebraElement::one();
                for g in word.iter().take(6) {
                    acc = ctx.product(&acc, g).unwrap();
                }
                black_box(acc)
            })
        });
    }
    group.finish();
}

fn gauss(c: &mut Criterion) {
    let mut group = c.benchmark_group("gauss");
    group.sample_size(10);
    for (seq, mu, cap) in [("010", "1,1,1", 3), ("0101", "1,2,1", 3), ("0110", "1,1,1,1", 3)] {
        group.bench_function(format!("decompose {seq} ({mu}) cap {cap}"), |b| {
            b.iter(|| {
                let ctx = context(seq);
                let mu = composition(&ctx, mu);
                black_box(decompose(&ctx, &mu, cap).unwrap())
            })
        });
    }
    group.finish();
}

fn relations(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for (id, seq, mu, degree) in [
        (RelationId::R7_3, "0011", "2,2", 2),
        (RelationId::R7_13, "010", "1,1,1", 3),
        (RelationId::R7_15, "0101", "1,1,1,1", 2),
    ] {
        group.bench_function(format!("{id} on {seq} ({mu}) degree {degree}"), |b| {
            b.iter(|| {
                let ctx = context(seq);
                let mu = composition(&ctx, mu);
                black_box(verify(&ctx, &mu, &[id], degree, |_| {}).unwrap())
            })
        });
    }
    group.finish();
}

criterion_group!(benches, normalize, gauss, relations);
criterion_main!(benches);
