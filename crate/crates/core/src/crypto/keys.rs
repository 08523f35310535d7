//! Key material, coefficient matrices and the JSON key/ciphertext documents.

use rand_core::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::{random_irreducible, ExtField, Field, PrimeField, TowerContext};
use crate::linalg::{random_invertible, FieldMatrix};
use crate::sidon::{construct_sidon_2k, SidonSpace};

const SCHEMA: u32 = 1;

/// The coefficient matrices of `nu` relative to the basis `beta`:
/// ν_sν_t = Σ_i M^{(i)}_{s,t} β_i.
pub fn coefficient_matrices<F: Field>(
    field: &F,
    nu: &[F::Elem],
    beta: &[F::Elem],
) -> Result<Vec<FieldMatrix<u64>>> {
    let n = field.degree();
    if beta.len() != n {
        return Err(Error::InvalidInput(format!("β must have {n} elements")));
    }
    let fq = PrimeField::new(field.characteristic())?;
    let rows = FieldMatrix::from_rows(beta.iter().map(|b| field.to_coords(b)).collect())?;
    let inv = rows
        .inverse(&fq)
        .ok_or_else(|| Error::InvalidInput("β is not a basis".into()))?;
    coefficient_matrices_with(field, &fq, nu, &inv)
}

/// As [`coefficient_matrices`], with `beta_inv` the inverse of the matrix whose
/// rows are the coordinates of β.
fn coefficient_matrices_with<F: Field>(
    field: &F,
    fq: &PrimeField,
    nu: &[F::Elem],
    beta_inv: &FieldMatrix<u64>,
) -> Result<Vec<FieldMatrix<u64>>> {
    let k = nu.len();
    let n = field.degree();
    let mut out = vec![FieldMatrix::zeros(fq, k, k); n];
    for s in 0..k {
        for t in s..k {
            let coords = beta_inv.vec_mul(fq, &field.to_coords(&field.mul(&nu[s], &nu[t])))?;
            for (i, m) in out.iter_mut().enumerate() {
                m.set(s, t, coords[i]);
                m.set(t, s, coords[i]);
            }
        }
    }
    Ok(out)
}

/// Alice's private key.
#[derive(Debug, Clone)]
pub struct PrivateKey {
    space: SidonSpace,
    /// ν = ν′·A.
    a: FieldMatrix<u64>,
    a_inv: FieldMatrix<u64>,
    /// β = (canonical flattened basis)·E; column j holds the coordinates of β_j.
    e: FieldMatrix<u64>,
    nu: Vec<Vec<Vec<u64>>>,
    p_r: Option<Vec<u64>>,
}

/// The published coefficient matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublicKey {
    q: u64,
    k: usize,
    matrices: Vec<FieldMatrix<u64>>,
    p_r: Option<Vec<u64>>,
}

impl PrivateKey {
    pub fn from_parts(
        space: SidonSpace,
        a: FieldMatrix<u64>,
        e: FieldMatrix<u64>,
        p_r: Option<Vec<u64>>,
    ) -> Result<Self> {
        let ctx = space.ctx().clone();
        let (k, n, fq) = (ctx.k(), ctx.n(), ctx.fq());
        if ctx.top_degree() != 2 {
            return Err(Error::InvalidInput(
                "keys need the quadratic construction".into(),
            ));
        }
        if (a.rows(), a.cols(), e.rows(), e.cols()) != (k, k, n, n) {
            return Err(Error::InvalidInput(format!(
                "A must be {k}×{k} and E {n}×{n}"
            )));
        }
        let a_inv = a
            .inverse(fq)
            .ok_or_else(|| Error::InvalidInput("A is singular".into()))?;
        if e.rank(fq) != n {
            return Err(Error::InvalidInput("E is singular".into()));
        }
        if let Some(p) = &p_r {
            check_randomizer(fq, k, p)?;
        }
        // ν_j = Σ_i A_{ij} ν′_i; ν′ is linear in u, so ν_j is the element of u = column j of A.
        let nu = (0..k).map(|j| space.element(&a.column(j))).collect();
        Ok(Self {
            space,
            a,
            a_inv,
            e,
            nu,
            p_r,
        })
    }

    pub fn space(&self) -> &SidonSpace {
        &self.space
    }

    pub fn ctx(&self) -> &TowerContext {
        self.space.ctx()
    }

    pub fn q(&self) -> u64 {
        self.ctx().q()
    }

    pub fn k(&self) -> usize {
        self.ctx().k()
    }

    pub fn n(&self) -> usize {
        self.ctx().n()
    }

    pub fn a(&self) -> &FieldMatrix<u64> {
        &self.a
    }

    pub fn a_inv(&self) -> &FieldMatrix<u64> {
        &self.a_inv
    }

    pub fn e(&self) -> &FieldMatrix<u64> {
        &self.e
    }

    pub fn randomizer(&self) -> Option<&[u64]> {
        self.p_r.as_deref()
    }

    /// The private basis ν of V.
    pub fn nu(&self) -> &[Vec<Vec<u64>>] {
        &self.nu
    }

    /// The private basis β of F_{q^n}.
    pub fn beta(&self) -> Vec<Vec<Vec<u64>>> {
        (0..self.n())
            .map(|j| self.ctx().unflatten(&self.e.column(j)))
            .collect()
    }

    /// Σ_i x_i β_i.
    pub fn combine_beta(&self, x: &[u64]) -> Result<Vec<Vec<u64>>> {
        Ok(self.ctx().unflatten(&self.e.mul_vec(self.ctx().fq(), x)?))
    }

    /// Coordinates a of a V-element Σ a_j ν_j given its u (where the element is u + u^qγ).
    pub fn nu_coordinates(&self, u: &[u64]) -> Result<Vec<u64>> {
        self.a_inv.mul_vec(self.ctx().fq(), u)
    }

    pub fn public_key(&self) -> Result<PublicKey> {
        let ctx = self.ctx();
        let fq = ctx.fq();
        let beta_rows_inv = self
            .e
            .transpose()
            .inverse(fq)
            .ok_or_else(|| Error::Internal("E lost invertibility".into()))?;
        let matrices = coefficient_matrices_with(ctx.big(), fq, &self.nu, &beta_rows_inv)?;
        Ok(PublicKey {
            q: ctx.q(),
            k: ctx.k(),
            matrices,
            p_r: self.p_r.clone(),
        })
    }

    pub fn to_doc(&self) -> PrivateKeyDoc {
        let ctx = self.ctx();
        PrivateKeyDoc {
            schema: SCHEMA,
            q: ctx.q(),
            k: ctx.k(),
            modulus_k: ctx.modulus_k().to_vec(),
            b: ctx.b().clone(),
            c: ctx.c().clone(),
            a: self.a.data().to_vec(),
            e: self.e.data().to_vec(),
            p_r: self.p_r.clone(),
        }
    }

    pub fn from_doc(doc: &PrivateKeyDoc) -> Result<Self> {
        check_schema(doc.schema)?;
        PrimeField::new(doc.q)?;
        let k = doc.k;
        if k < 3 {
            return Err(Error::InvalidParameters(format!("k must be ≥ 3 (got {k})")));
        }
        let reduced = |v: &[u64]| v.iter().all(|&x| x < doc.q);
        if doc.modulus_k.len() != k + 1 || doc.modulus_k[k] != 1 || !reduced(&doc.modulus_k) {
            return Err(Error::Format(format!(
                "modulusK must be a monic degree-{k} polynomial"
            )));
        }
        if !reduced(&doc.b) || !reduced(&doc.c) || !reduced(&doc.a) || !reduced(&doc.e) {
            return Err(Error::Format("key entries must be reduced mod q".into()));
        }
        let ctx = TowerContext::new(doc.q, doc.modulus_k.clone(), doc.b.clone(), doc.c.clone())?;
        let space = SidonSpace::from_context(ctx)?;
        let n = 2 * k;
        let a = FieldMatrix::new(k, k, doc.a.clone())?;
        let e = FieldMatrix::new(n, n, doc.e.clone())?;
        Self::from_parts(space, a, e, doc.p_r.clone())
    }
}

impl PublicKey {
    pub fn new(
        q: u64,
        k: usize,
        matrices: Vec<FieldMatrix<u64>>,
        p_r: Option<Vec<u64>>,
    ) -> Result<Self> {
        let fq = PrimeField::new(q)?;
        if matrices.len() != 2 * k {
            return Err(Error::InvalidInput(format!("expected {} matrices", 2 * k)));
        }
        for m in &matrices {
            if m.rows() != k
                || m.cols() != k
                || !m.is_symmetric()
                || m.data().iter().any(|&x| x >= q)
            {
                return Err(Error::InvalidInput(
                    "public matrices must be symmetric k×k over F_q".into(),
                ));
            }
        }
        if let Some(p) = &p_r {
            check_randomizer(&fq, k, p)?;
        }
        Ok(Self {
            q,
            k,
            matrices,
            p_r,
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        2 * self.k
    }

    pub fn fq(&self) -> PrimeField {
        PrimeField::new(self.q).expect("validated on construction")
    }

    pub fn matrices(&self) -> &[FieldMatrix<u64>] {
        &self.matrices
    }

    pub fn randomizer(&self) -> Option<&[u64]> {
        self.p_r.as_deref()
    }

    /// dim_{F_q} Span{M^{(1)}, …, M^{(n)}}.
    pub fn span_dimension(&self) -> usize {
        let rows = self.matrices.iter().map(|m| m.data().to_vec()).collect();
        FieldMatrix::from_rows(rows)
            .expect("equal shapes")
            .rank(&self.fq())
    }

    pub fn to_doc(&self) -> PublicKeyDoc {
        PublicKeyDoc {
            schema: SCHEMA,
            q: self.q,
            k: self.k,
            n: self.n(),
            matrices: self
                .matrices
                .iter()
                .map(crate::linalg::vectorize_upper)
                .collect(),
            p_r: self.p_r.clone(),
        }
    }

    pub fn from_doc(doc: &PublicKeyDoc) -> Result<Self> {
        check_schema(doc.schema)?;
        PrimeField::new(doc.q)?;
        let k = doc.k;
        if k < 3 {
            return Err(Error::InvalidParameters(format!("k must be ≥ 3 (got {k})")));
        }
        if doc.n != 2 * k || doc.matrices.len() != doc.n {
            return Err(Error::Format(format!("expected n = {} matrices", 2 * k)));
        }
        let tri = k * (k + 1) / 2;
        let mut matrices = Vec::with_capacity(doc.n);
        for upper in &doc.matrices {
            if upper.len() != tri {
                return Err(Error::Format(format!(
                    "each matrix needs {tri} upper-triangle entries"
                )));
            }
            if upper.iter().any(|&x| x >= doc.q) {
                return Err(Error::Format("matrix entry not reduced mod q".into()));
            }
            matrices.push(crate::linalg::matricize(upper, k)?);
        }
        Self::new(doc.q, k, matrices, doc.p_r.clone()).map_err(|e| Error::Format(e.to_string()))
    }
}

fn check_schema(schema: u32) -> Result<()> {
    if schema != SCHEMA {
        return Err(Error::Format(format!("unsupported schema {schema}")));
    }
    Ok(())
}

fn check_randomizer(fq: &PrimeField, k: usize, p: &[u64]) -> Result<()> {
    if p.len() != k + 1 || p[k] != 1 || p.iter().any(|&x| x >= fq.q()) {
        return Err(Error::Format(format!(
            "P_R must be a monic degree-{k} polynomial"
        )));
    }
    ExtField::new(*fq, p.to_vec()).map(|_| ())
}

/// Random key pair from Construction 2 with random A and E.
pub fn keygen<R: RngCore + ?Sized>(
    q: u64,
    k: usize,
    rng: &mut R,
) -> Result<(PrivateKey, PublicKey)> {
    keygen_inner(q, k, false, rng)
}

/// As [`keygen`], also drawing the irreducible P_R of the randomized scheme.
pub fn keygen_with_randomizer<R: RngCore + ?Sized>(
    q: u64,
    k: usize,
    rng: &mut R,
) -> Result<(PrivateKey, PublicKey)> {
    keygen_inner(q, k, true, rng)
}

fn keygen_inner<R: RngCore + ?Sized>(
    q: u64,
    k: usize,
    randomized: bool,
    rng: &mut R,
) -> Result<(PrivateKey, PublicKey)> {
    let space = construct_sidon_2k(q, k, rng)?;
    let fq = *space.ctx().fq();
    let a = random_invertible(&fq, k, rng);
    let e = random_invertible(&fq, 2 * k, rng);
    let p_r = if randomized {
        Some(random_irreducible(q, k, rng)?)
    } else {
        None
    };
    let private = PrivateKey::from_parts(space, a, e, p_r)?;
    let public = private.public_key()?;
    Ok((private, public))
}

/// JSON form of a [`PublicKey`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PublicKeyDoc {
    pub schema: u32,
    pub q: u64,
    pub k: usize,
    pub n: usize,
    pub matrices: Vec<Vec<u64>>,
    #[serde(rename = "P_R", default, skip_serializing_if = "Option::is_none")]
    pub p_r: Option<Vec<u64>>,
}

/// JSON form of a [`PrivateKey`]; `A` and `E` are row-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrivateKeyDoc {
    pub schema: u32,
    pub q: u64,
    pub k: usize,
    #[serde(rename = "modulusK")]
    pub modulus_k: Vec<u64>,
    pub b: Vec<u64>,
    pub c: Vec<u64>,
    #[serde(rename = "A")]
    pub a: Vec<u64>,
    #[serde(rename = "E")]
    pub e: Vec<u64>,
    #[serde(rename = "P_R", default, skip_serializing_if = "Option::is_none")]
    pub p_r: Option<Vec<u64>>,
}

/// A ciphertext E(a, b) ∈ F_q^n.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Ciphertext {
    pub schema: u32,
    pub q: u64,
    pub n: usize,
    pub ct: Vec<u64>,
}

impl Ciphertext {
    pub fn new(q: u64, ct: Vec<u64>) -> Self {
        Self {
            schema: SCHEMA,
            q,
            n: ct.len(),
            ct,
        }
    }

    /// Checks the document against the key parameters.
    pub fn validate(&self, q: u64, n: usize) -> Result<()> {
        check_schema(self.schema)?;
        if self.q != q || self.n != n || self.ct.len() != n {
            return Err(Error::InvalidInput(format!(
                "ciphertext does not match q = {q}, n = {n}"
            )));
        }
        if self.ct.iter().any(|&x| x >= q) {
            return Err(Error::Format("ciphertext entry not reduced mod q".into()));
        }
        Ok(())
    }
}

impl PublicKey {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_doc(&serde_json::from_str(s)?)
    }
}

impl PrivateKey {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_doc(&serde_json::from_str(s)?)
    }
}
