use sidon_core::SeedableRng;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_bigint::BigUint;
use sidon_core::crypto::{decrypt, encrypt, keygen, MessageSpace};
use sidon_core::SplitMix64;

fn bench_keygen(c: &mut Criterion) {
    let mut group = c.benchmark_group("keygen");
    group.sample_size(10);
    for (q, k) in [(5u64, 10usize), (53, 20), (541, 40)] {
        group.bench_with_input(
            BenchmarkId::new(format!("q{q}"), k),
            &(q, k),
            |b, &(q, k)| {
                let mut seed = 0;
                b.iter(|| {
                    seed += 1;
                    black_box(keygen(q, k, &mut SplitMix64::seed_from_u64(seed)).unwrap())
                })
            },
        );
    }
    group.finish();
}

fn bench_encrypt_decrypt(c: &mut Criterion) {
    let mut group = c.benchmark_group("scheme");
    for (q, k) in [(3u64, 4usize), (53, 10), (541, 20)] {
        let (private, public) = keygen(q, k, &mut SplitMix64::seed_from_u64(1)).unwrap();
        let space = MessageSpace::new(q, k).unwrap();
        let msg = space.encode(&(space.size() / BigUint::from(3u32))).unwrap();
        let ct = encrypt(&public, &msg).unwrap();
        group.bench_function(BenchmarkId::new("encrypt", format!("q{q}_k{k}")), |b| {
            b.iter(|| encrypt(black_box(&public), black_box(&msg)).unwrap())
        });
        group.bench_function(BenchmarkId::new("decrypt", format!("q{q}_k{k}")), |b| {
            b.iter(|| decrypt(black_box(&private), black_box(&ct)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_keygen, bench_encrypt_decrypt);
criterion_main!(benches);
