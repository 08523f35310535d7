//! Timing grids for key generation and the bilinear attack.

use std::time::Instant;

use num_bigint::BigUint;
use rand_core::RngCore;
use sidon_core::attacks::bilinear_bruteforce;
use sidon_core::crypto::{encrypt, keygen, MessageSpace};

use crate::CliResult;

pub const KEYGEN_QS: [u64; 3] = [5, 53, 541];
pub const KEYGEN_KS: [usize; 8] = [5, 10, 15, 20, 25, 30, 35, 40];
pub const BILINEAR_KS: [usize; 3] = [3, 4, 5];

/// One CSV row: mean and sample standard deviation over the trials.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub q: u64,
    pub k: usize,
    pub mean: f64,
    pub stddev: f64,
}

fn summarize(q: u64, k: usize, samples: &[f64]) -> BenchRow {
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let var = if samples.len() > 1 {
        samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    BenchRow {
        q,
        k,
        mean,
        stddev: var.sqrt(),
    }
}

/// Mean key-generation time in seconds for every (q, k); trial t of cell (q, k)
/// uses the generator stream (seed, t).
pub fn keygen_grid(qs: &[u64], ks: &[usize], trials: usize, seed: u64) -> CliResult<Vec<BenchRow>> {
    let trials = trials.max(1);
    let mut rows = Vec::new();
    for &q in qs {
        for &k in ks {
            let mut samples = Vec::with_capacity(trials);
            for t in 0..trials {
                let mut rng = sidon_core::rng::stream(seed, t as u64);
                let start = Instant::now();
                keygen(q, k, &mut rng)?;
                samples.push(start.elapsed().as_secs_f64());
            }
            rows.push(summarize(q, k, &samples));
        }
    }
    Ok(rows)
}

/// Mean time in milliseconds of the exhaustive bilinear attack on a fresh
/// ciphertext, per k.
pub fn bilinear_grid(q: u64, ks: &[usize], trials: usize, seed: u64) -> CliResult<Vec<BenchRow>> {
    let trials = trials.max(1);
    let mut rows = Vec::new();
    for &k in ks {
        let space = MessageSpace::new(q, k)?;
        let mut samples = Vec::with_capacity(trials);
        for t in 0..trials {
            let mut rng = sidon_core::rng::stream(seed, t as u64);
            let (_, public) = keygen(q, k, &mut rng)?;
            let m = BigUint::from(rng.next_u64()) % space.size();
            let ct = encrypt(&public, &space.encode(&m)?)?;
            let start = Instant::now();
            bilinear_bruteforce(&public, &ct)?;
            samples.push(start.elapsed().as_secs_f64() * 1e3);
        }
        rows.push(summarize(q, k, &samples));
    }
    Ok(rows)
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("q,k,mean,stddev\n");
    for r in rows {
        out.push_str(&format!("{},{},{:.6},{:.6}\n", r.q, r.k, r.mean, r.stddev));
    }
    out
}

/// Whether the means strictly increase with k for the given q.
pub fn means_increase_in_k(rows: &[BenchRow], q: u64) -> bool {
    let mut cells: Vec<&BenchRow> = rows.iter().filter(|r| r.q == q).collect();
    cells.sort_by_key(|r| r.k);
    cells.windows(2).all(|w| w[0].mean < w[1].mean)
}
