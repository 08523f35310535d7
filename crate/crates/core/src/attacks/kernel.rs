//! The kernel attack: random vectors of F_{q^n}^k landing in
//! K = ker(Σ β_i M^{(i)}), and the Kipnis–Shamir systematic-kernel system.

use rand_core::RngCore;
use serde::Serialize;

use crate::crypto::{PrivateKey, PublicKey};
use crate::error::{Error, Result};
use crate::ff::Field;

type Big = Vec<Vec<u64>>;

/// Outcome of [`kernel_attack_experiment`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelExperiment {
    pub hits: u64,
    pub trials: u64,
    pub empirical_rate: f64,
    pub theoretical_rate: f64,
    /// Binomial standard deviation of the empirical rate.
    pub sigma: f64,
}

impl KernelExperiment {
    /// |empirical − theoretical| ≤ width·σ.
    pub fn within(&self, width: f64) -> bool {
        (self.empirical_rate - self.theoretical_rate).abs() <= width * self.sigma
    }
}

/// Whether v ∈ K, decided with the private key: M(ν)v^⊺ = ν^⊺(ν·v^⊺) vanishes iff ν·v^⊺ = 0.
pub fn in_kernel(private: &PrivateKey, v: &[Big]) -> bool {
    let big = private.ctx().big();
    let dot = private
        .nu()
        .iter()
        .zip(v)
        .fold(big.zero(), |acc, (n, x)| big.add(&acc, &big.mul(n, x)));
    big.is_zero(&dot)
}

/// Samples uniform v ∈ F_{q^n}^k and counts how many fall into K.
pub fn kernel_attack_experiment<R: RngCore + ?Sized>(
    private: &PrivateKey,
    trials: u64,
    rng: &mut R,
) -> Result<KernelExperiment> {
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be ≥ 1".into()));
    }
    let big = private.ctx().big();
    let k = private.k();
    let mut hits = 0;
    for _ in 0..trials {
        let v: Vec<Big> = (0..k).map(|_| big.random(rng)).collect();
        hits += u64::from(in_kernel(private, &v));
    }
    let p = (private.q() as f64).powi(-(private.n() as i32));
    Ok(KernelExperiment {
        hits,
        trials,
        empirical_rate: hits as f64 / trials as f64,
        theoretical_rate: p,
        sigma: (p * (1.0 - p) / trials as f64).sqrt(),
    })
}

/// Entries of M(ν)v^⊺ for v ∈ F_q^k, i.e. ν_i · Σ_j v_jν_j.
pub fn base_field_product(private: &PrivateKey, v: &[u64]) -> Result<Vec<Big>> {
    if v.len() != private.k() {
        return Err(Error::InvalidInput(format!(
            "probe vector must have length {}",
            private.k()
        )));
    }
    if v.iter().all(|&x| x == 0) {
        return Err(Error::InvalidInput("probe vector must be nonzero".into()));
    }
    let ctx = private.ctx();
    let big = ctx.big();
    let w = private.nu().iter().zip(v).fold(big.zero(), |acc, (n, &x)| {
        big.add(&acc, &big.mul(n, &ctx.embed(&ctx.small().from_prime(x))))
    });
    Ok(private.nu().iter().map(|n| big.mul(n, &w)).collect())
}

/// Checks on random nonzero v ∈ F_q^k that M(ν)v^⊺ has no zero entry.
pub fn base_field_kernel_probe<R: RngCore + ?Sized>(
    private: &PrivateKey,
    trials: u64,
    rng: &mut R,
) -> Result<bool> {
    let fq = *private.ctx().fq();
    let big = private.ctx().big();
    for _ in 0..trials {
        let v: Vec<u64> = loop {
            let v: Vec<u64> = (0..private.k()).map(|_| fq.random(rng)).collect();
            if v.iter().any(|&x| x != 0) {
                break v;
            }
        };
        if base_field_product(private, &v)?
            .iter()
            .any(|e| big.is_zero(e))
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One bilinear equation Σ_i lin_i y_i + z_j Σ_i bilin_i y_i = 0 of the
/// Kipnis–Shamir system: row `row` of (Σ y_iM^{(i)}) times the kernel column e_j + z_j e_r.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KsEquation {
    pub row: usize,
    /// Index j of the kernel column (and of its variable z_j).
    pub column: usize,
    pub lin: Vec<u64>,
    pub bilin: Vec<u64>,
}

/// (Σ y_iM^{(i)})·K = 0 with K in systematic form around `row_position`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KsSystem {
    pub k: usize,
    pub n: usize,
    /// Zero-based index r of the row of K's systematic form holding the z's.
    pub row_position: usize,
    /// The k − 1 indices j ≠ r; kernel column j is e_j + z_j e_r.
    pub columns: Vec<usize>,
    pub equations: Vec<KsEquation>,
}

pub fn build_ks_system(public: &PublicKey, row_position: usize) -> Result<KsSystem> {
    let k = public.k();
    if row_position >= k {
        return Err(Error::InvalidInput(format!(
            "row position must be below {k}"
        )));
    }
    let columns: Vec<usize> = (0..k).filter(|&j| j != row_position).collect();
    let ms = public.matrices();
    let mut equations = Vec::with_capacity(k * (k - 1));
    for row in 0..k {
        for &j in &columns {
            equations.push(KsEquation {
                row,
                column: j,
                lin: ms.iter().map(|m| m[(row, j)]).collect(),
                bilin: ms.iter().map(|m| m[(row, row_position)]).collect(),
            });
        }
    }
    Ok(KsSystem {
        k,
        n: public.n(),
        row_position,
        columns,
        equations,
    })
}

impl KsSystem {
    /// The planted solution: y = β and z_j = −ν_j/ν_r.
    pub fn ground_truth(&self, private: &PrivateKey) -> (Vec<Big>, Vec<Big>) {
        let big = private.ctx().big();
        let nu = private.nu();
        let nr_inv = big
            .inv(&nu[self.row_position])
            .expect("basis elements are nonzero");
        let z = self
            .columns
            .iter()
            .map(|&j| big.neg(&big.mul(&nu[j], &nr_inv)))
            .collect();
        (private.beta(), z)
    }

    /// Residuals of all equations at (y, z), with z indexed like `columns`.
    pub fn residuals(&self, private: &PrivateKey, y: &[Big], z: &[Big]) -> Vec<Big> {
        let ctx = private.ctx();
        let big = ctx.big();
        let scalar = |c: u64| ctx.embed(&ctx.small().from_prime(c));
        let form = |coeffs: &[u64]| {
            coeffs.iter().zip(y).fold(big.zero(), |acc, (&c, yi)| {
                big.add(&acc, &big.mul(&scalar(c), yi))
            })
        };
        self.equations
            .iter()
            .map(|eq| {
                let zi = &z[self
                    .columns
                    .iter()
                    .position(|&c| c == eq.column)
                    .expect("column of this system")];
                big.add(&form(&eq.lin), &big.mul(zi, &form(&eq.bilin)))
            })
            .collect()
    }

    /// Substitutes the planted solution; true iff every residual vanishes.
    pub fn verify(&self, private: &PrivateKey) -> bool {
        let (y, z) = self.ground_truth(private);
        let big = private.ctx().big();
        self.residuals(private, &y, &z)
            .iter()
            .all(|r| big.is_zero(r))
    }
}

/// Monte Carlo rate at which a uniform guess in F_{q^n} hits the planted z_j.
pub fn ks_guess_experiment<R: RngCore + ?Sized>(
    system: &KsSystem,
    private: &PrivateKey,
    trials: u64,
    rng: &mut R,
) -> Result<KernelExperiment> {
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be ≥ 1".into()));
    }
    let big = private.ctx().big();
    let (_, z) = system.ground_truth(private);
    let mut hits = 0;
    for t in 0..trials {
        let target = &z[(t as usize) % z.len()];
        hits += u64::from(big.random(rng) == *target);
    }
    let p = (private.q() as f64).powi(-(private.n() as i32));
    Ok(KernelExperiment {
        hits,
        trials,
        empirical_rate: hits as f64 / trials as f64,
        theoretical_rate: p,
        sigma: (p * (1.0 - p) / trials as f64).sqrt(),
    })
}
