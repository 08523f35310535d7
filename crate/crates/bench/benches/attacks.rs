use sidon_core::SeedableRng;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_bigint::BigUint;
use sidon_core::attacks::{bilinear_bruteforce, build_gamma_lin, build_omega_lin};
use sidon_core::crypto::{encrypt, keygen, MessageSpace};
use sidon_core::linalg::gaussian_elim;
use sidon_core::SplitMix64;

fn bench_bilinear(c: &mut Criterion) {
    let mut group = c.benchmark_group("bilinear");
    for k in [3usize, 4, 5] {
        let (_, public) = keygen(3, k, &mut SplitMix64::seed_from_u64(k as u64)).unwrap();
        let space = MessageSpace::new(3, k).unwrap();
        let msg = space.encode(&(space.size() / BigUint::from(2u32))).unwrap();
        let ct = encrypt(&public, &msg).unwrap();
        group.bench_with_input(BenchmarkId::new("q3", k), &ct, |b, ct| {
            b.iter(|| bilinear_bruteforce(black_box(&public), black_box(ct)).unwrap())
        });
    }
    group.finish();
}

fn bench_minors(c: &mut Criterion) {
    let mut group = c.benchmark_group("minors");
    group.sample_size(20);
    for k in [4usize, 5] {
        let (private, public) = keygen(3, k, &mut SplitMix64::seed_from_u64(7)).unwrap();
        let fq = public.fq();
        group.bench_function(BenchmarkId::new("omega_lin_elimination", k), |b| {
            b.iter(|| gaussian_elim(&fq, &build_omega_lin(black_box(&public)).matrix).rank())
        });
        group.bench_function(BenchmarkId::new("gamma_lin_elimination", k), |b| {
            b.iter(|| {
                let (_, sys) = build_gamma_lin(black_box(&private), 1).unwrap();
                gaussian_elim(&fq, &sys.matrix).rank()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_bilinear, bench_minors);
criterion_main!(benches);
