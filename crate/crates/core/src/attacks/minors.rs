//! Minor attacks: linearized 2×2-minor systems of the public pencil
//! Σ y_iM^{(i)} (Ω_lin), of the extended pencil Σ y_iN^{(i)} (Γ_lin), and the
//! Kronecker expansion Ω_q = Ω_lin ⊗ C.

use rand_core::SeedableRng;
use std::collections::BTreeMap;

use serde::Serialize;

use crate::crypto::{PrivateKey, PublicKey};
use crate::error::{Error, Result};
use crate::ff::{Field, PrimeField};
use crate::linalg::{
    gaussian_elim, kronecker, pair_index, upper_pairs, vectorize_upper, FieldMatrix,
};
use crate::rng::SplitMix64;

type Big = Vec<Vec<u64>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SystemSource {
    OmegaLin,
    GammaLin,
    OmegaQ,
}

/// A linearized system: column (s, t), s ≤ t, stands for z_{s,t} = y_sy_t.
#[derive(Debug, Clone)]
pub struct LinearizedSystem {
    pub matrix: FieldMatrix<u64>,
    /// Monomial of each column (for Ω_q, of each block of n² columns).
    pub col_index: Vec<(usize, usize)>,
    /// Minor ((i, j), (ℓ, d)) of each row (for Ω_q, of each block of n rows).
    pub row_index: Vec<((usize, usize), (usize, usize))>,
    pub source: SystemSource,
}

impl LinearizedSystem {
    pub fn rank(&self, fq: &PrimeField) -> usize {
        gaussian_elim(fq, &self.matrix).rank()
    }

    pub fn kernel_basis(&self, fq: &PrimeField) -> Vec<Vec<u64>> {
        gaussian_elim(fq, &self.matrix).kernel_basis(fq)
    }

    /// Whether Ω·v = 0.
    pub fn annihilates(&self, fq: &PrimeField, v: &[u64]) -> bool {
        self.matrix
            .mul_vec(fq, v)
            .map(|r| r.iter().all(|&x| x == 0))
            .unwrap_or(false)
    }
}

/// Row count bound C(C(m,2)+1, 2) after deduplicating symmetric minors.
pub fn minor_row_bound(m: usize) -> usize {
    let p = m * (m - 1) / 2;
    p * (p + 1) / 2
}

/// Linearized 2×2 minors of the symmetric pencil Σ_l y_l P^{(l)}.
pub fn linearize_minors(
    fq: &PrimeField,
    pencil: &[FieldMatrix<u64>],
    source: SystemSource,
) -> LinearizedSystem {
    let m = pencil[0].rows();
    let vars = pencil.len();
    let entry = |a: usize, b: usize| -> Vec<u64> { pencil.iter().map(|p| p[(a, b)]).collect() };
    let col_index = upper_pairs(vars);
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .collect();
    let mut row_index = Vec::new();
    let mut rows = Vec::new();
    for (x, &(i, j)) in pairs.iter().enumerate() {
        for &(l, d) in &pairs[x..] {
            let mut row = vec![0u64; col_index.len()];
            accumulate_product(fq, &mut row, &entry(i, l), &entry(j, d), vars, 1);
            accumulate_product(fq, &mut row, &entry(i, d), &entry(j, l), vars, fq.q() - 1);
            row_index.push(((i, j), (l, d)));
            rows.push(row);
        }
    }
    let matrix = FieldMatrix::from_rows(rows)
        .unwrap_or_else(|_| FieldMatrix::new(0, col_index.len(), vec![]).expect("empty"));
    LinearizedSystem {
        matrix,
        col_index,
        row_index,
        source,
    }
}

/// row += sign · (linearized product of the linear forms a and b).
fn accumulate_product(
    fq: &PrimeField,
    row: &mut [u64],
    a: &[u64],
    b: &[u64],
    vars: usize,
    sign: u64,
) {
    for s in 0..vars {
        for t in s..vars {
            let c = if s == t {
                fq.mul(&a[s], &b[s])
            } else {
                fq.add(&fq.mul(&a[s], &b[t]), &fq.mul(&a[t], &b[s]))
            };
            let idx = pair_index(vars, s, t);
            row[idx] = fq.add(&row[idx], &fq.mul(&c, &sign));
        }
    }
}

/// Ω_lin from the public coefficient matrices.
pub fn build_omega_lin(public: &PublicKey) -> LinearizedSystem {
    linearize_minors(&public.fq(), public.matrices(), SystemSource::OmegaLin)
}

/// The completion u of ν to a basis of F_{q^n} and the matrices of the tertiary attack.
#[derive(Debug, Clone)]
pub struct ExtendedBasisData {
    /// u = (ν_1, …, ν_k, random completion).
    pub u: Vec<Big>,
    /// u^⊺u = Σ β_i N^{(i)}.
    pub n_mats: Vec<FieldMatrix<u64>>,
    /// β = u·E.
    pub e: FieldMatrix<u64>,
    /// β^⊺β = Σ β_i B^{(i)}.
    pub b_mats: Vec<FieldMatrix<u64>>,
}

impl ExtendedBasisData {
    /// Random completion of ν drawn from `seed`.
    pub fn new(private: &PrivateKey, seed: u64) -> Result<Self> {
        let ctx = private.ctx();
        let (fq, big, n) = (ctx.fq(), ctx.big(), ctx.n());
        let mut rng = SplitMix64::seed_from_u64(seed);
        let mut u: Vec<Big> = private.nu().to_vec();
        let flat = |u: &[Big]| {
            FieldMatrix::from_rows(u.iter().map(|x| ctx.flatten(x)).collect()).expect("rectangular")
        };
        // Extend one element at a time, keeping the family independent.
        while u.len() < n {
            let cand = big.random(&mut rng);
            let mut trial = u.clone();
            trial.push(cand);
            if flat(&trial).rank(fq) == trial.len() {
                u = trial;
            }
        }
        let beta = private.beta();
        let n_mats = crate::crypto::coefficient_matrices(big, &u, &beta)?;
        let b_mats = crate::crypto::coefficient_matrices(big, &beta, &beta)?;
        // Columns of coordinates: [β] = [u]·E.
        let u_cols = flat(&u).transpose();
        let beta_cols = flat(&beta).transpose();
        let e = u_cols
            .inverse(fq)
            .ok_or_else(|| Error::Internal("completion is not a basis".into()))?
            .mul(fq, &beta_cols)?;
        Ok(Self {
            u,
            n_mats,
            e,
            b_mats,
        })
    }

    /// E^⊺N^{(i)}E = B^{(i)} for all i.
    pub fn circularity_holds(&self, fq: &PrimeField) -> bool {
        let et = self.e.transpose();
        self.n_mats.iter().zip(&self.b_mats).all(|(nm, bm)| {
            et.mul(fq, nm)
                .and_then(|x| x.mul(fq, &self.e))
                .map(|x| x == *bm)
                .unwrap_or(false)
        })
    }

    /// Upper-left k×k blocks of the N^{(i)} equal the public matrices.
    pub fn blocks_match(&self, public: &PublicKey) -> bool {
        let k = public.k();
        self.n_mats
            .iter()
            .zip(public.matrices())
            .all(|(nm, m)| nm.submatrix(0..k, 0..k) == *m)
    }

    /// z^{(l)}_{i,j} = (β_iβ_j)_l = B^{(l)}_{i,j}, one vector per l.
    pub fn witness_vectors(&self) -> Vec<Vec<u64>> {
        self.b_mats.iter().map(vectorize_upper).collect()
    }
}

/// Γ_lin for a random completion of ν drawn from `extension_seed`.
pub fn build_gamma_lin(
    private: &PrivateKey,
    extension_seed: u64,
) -> Result<(ExtendedBasisData, LinearizedSystem)> {
    let data = ExtendedBasisData::new(private, extension_seed)?;
    let system = linearize_minors(private.ctx().fq(), &data.n_mats, SystemSource::GammaLin);
    Ok((data, system))
}

/// Rank, kernel and verification results of the minor attacks.
#[derive(Debug, Clone, Serialize)]
pub struct MinorReport {
    pub q: u64,
    pub k: usize,
    pub n: usize,
    pub columns: usize,
    pub omega_rows: usize,
    pub omega_rank: usize,
    pub omega_kernel_dim: usize,
    pub gamma_rows: usize,
    pub gamma_rank: usize,
    pub gamma_kernel_dim: usize,
    pub witness_span_dim: usize,
    pub bounds: BTreeMap<String, usize>,
    pub checks: BTreeMap<String, bool>,
}

pub fn minor_kernel_report(
    private: &PrivateKey,
    public: &PublicKey,
    extension_seed: u64,
) -> Result<MinorReport> {
    let fq = public.fq();
    let n = public.n();
    let omega = build_omega_lin(public);
    let (data, gamma) = build_gamma_lin(private, extension_seed)?;
    let omega_ech = gaussian_elim(&fq, &omega.matrix);
    let gamma_ech = gaussian_elim(&fq, &gamma.matrix);
    let gamma_kernel = gamma_ech.kernel_basis(&fq);
    let witnesses = data.witness_vectors();
    let witness_span_dim = FieldMatrix::from_rows(witnesses.clone())?.rank(&fq);
    let n_rank =
        FieldMatrix::from_rows(data.n_mats.iter().map(|m| m.data().to_vec()).collect())?.rank(&fq);
    let columns = omega.col_index.len();

    let mut bounds = BTreeMap::new();
    bounds.insert("omega_row_bound".to_string(), minor_row_bound(public.k()));
    bounds.insert(
        "omega_rank_upper".to_string(),
        minor_row_bound(public.k()).min(columns - n),
    );
    bounds.insert("gamma_kernel_lower".to_string(), n);

    let mut checks = BTreeMap::new();
    checks.insert(
        "upper_left_blocks_match".to_string(),
        data.blocks_match(public),
    );
    checks.insert(
        "gamma_kernel_in_omega_kernel".to_string(),
        gamma_kernel.iter().all(|v| omega.annihilates(&fq, v)),
    );
    checks.insert(
        "witness_vectors_in_gamma_kernel".to_string(),
        witnesses.iter().all(|v| gamma.annihilates(&fq, v)),
    );
    checks.insert(
        "witness_vectors_in_omega_kernel".to_string(),
        witnesses.iter().all(|v| omega.annihilates(&fq, v)),
    );
    checks.insert(
        "witness_vectors_independent".to_string(),
        witness_span_dim == n,
    );
    checks.insert("n_matrices_independent".to_string(), n_rank == n);
    checks.insert("circularity".to_string(), data.circularity_holds(&fq));
    checks.insert(
        "omega_rank_bound".to_string(),
        omega_ech.rank() <= columns - n && omega_ech.rank() <= omega.row_index.len(),
    );

    Ok(MinorReport {
        q: public.q(),
        k: public.k(),
        n,
        columns,
        omega_rows: omega.row_index.len(),
        omega_rank: omega_ech.rank(),
        omega_kernel_dim: omega_ech.kernel_dim(),
        gamma_rows: gamma.row_index.len(),
        gamma_rank: gamma_ech.rank(),
        gamma_kernel_dim: gamma_ech.kernel_dim(),
        witness_span_dim,
        bounds,
        checks,
    })
}

/// Structure constants of a basis δ: the n×n² matrix with entry (d, (i, j)) = c_d^{(i,j)},
/// where δ_iδ_j = Σ_d c_d^{(i,j)} δ_d and column (i, j) is i·n + j.
pub fn structure_constants<F: Field>(field: &F, basis: &[F::Elem]) -> Result<FieldMatrix<u64>> {
    let n = field.degree();
    if basis.len() != n {
        return Err(Error::InvalidInput(format!("basis must have {n} elements")));
    }
    let fq = PrimeField::new(field.characteristic())?;
    let rows = FieldMatrix::from_rows(basis.iter().map(|b| field.to_coords(b)).collect())?;
    let inv = rows
        .inverse(&fq)
        .ok_or_else(|| Error::InvalidInput("not a basis".into()))?;
    let mut c = FieldMatrix::zeros(&fq, n, n * n);
    for i in 0..n {
        for j in 0..n {
            let coords = inv.vec_mul(&fq, &field.to_coords(&field.mul(&basis[i], &basis[j])))?;
            for (d, &x) in coords.iter().enumerate() {
                c.set(d, i * n + j, x);
            }
        }
    }
    Ok(c)
}

/// Ω_q = Ω_lin ⊗ C together with its rank data.
#[derive(Debug, Clone)]
pub struct OmegaQ {
    pub system: LinearizedSystem,
    pub c: FieldMatrix<u64>,
    pub omega_lin_rank: usize,
    pub c_rank: usize,
}

impl OmegaQ {
    pub fn columns(&self) -> usize {
        self.system.matrix.cols()
    }
}

/// Builds Ω_q from the public key and the structure constants of `basis`.
pub fn build_omega_q<F: Field>(public: &PublicKey, field: &F, basis: &[F::Elem]) -> Result<OmegaQ> {
    if field.degree() != public.n() || field.characteristic() != public.q() {
        return Err(Error::InvalidInput("basis field must be F_{q^n}".into()));
    }
    let fq = public.fq();
    let omega = build_omega_lin(public);
    let c = structure_constants(field, basis)?;
    let matrix = kronecker(&fq, &omega.matrix, &c);
    Ok(OmegaQ {
        omega_lin_rank: omega.rank(&fq),
        c_rank: c.rank(&fq),
        c,
        system: LinearizedSystem {
            matrix,
            col_index: omega.col_index,
            row_index: omega.row_index,
            source: SystemSource::OmegaQ,
        },
    })
}

/// The default basis for Ω_q: the flattening basis of the key's tower.
pub fn tower_basis(private: &PrivateKey) -> Vec<Big> {
    let ctx = private.ctx();
    let n = ctx.n();
    (0..n)
        .map(|i| {
            let mut e = vec![0u64; n];
            e[i] = 1;
            ctx.unflatten(&e)
        })
        .collect()
}

/// Builds Γ_lin for two completions of ν and tests the kernels for equality.
pub fn basis_extension_kernel_equality(
    private: &PrivateKey,
    seed1: u64,
    seed2: u64,
) -> Result<bool> {
    let fq = *private.ctx().fq();
    let (_, g1) = build_gamma_lin(private, seed1)?;
    let (_, g2) = build_gamma_lin(private, seed2)?;
    let k1 = g1.kernel_basis(&fq);
    let k2 = g2.kernel_basis(&fq);
    Ok(k1.len() == k2.len()
        && k1.iter().all(|v| g2.annihilates(&fq, v))
        && k2.iter().all(|v| g1.annihilates(&fq, v)))
}
