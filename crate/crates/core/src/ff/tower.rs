use super::ext::ExtField;
use super::field::Field;
use super::irreducible::is_irreducible;
use super::prime::PrimeField;
use super::roots::is_qm1_power;
use crate::error::{Error, Result};
use crate::linalg::FieldMatrix;

/// F_{q^k} as F_q[y]/(modulusK).
pub type SmallField = ExtField<PrimeField>;
/// The top of the tower, F_{q^k}[x]/(top modulus).
pub type BigField = ExtField<SmallField>;

/// The chain F_q ⊂ F_{q^k} ⊂ F_{q^{rk}}.
///
/// For the cryptosystem the top modulus is the quadratic x² + b·x + c and
/// n = 2k; γ denotes the class of x. Flattening to F_q^n uses the basis
/// (ω_1, …, ω_k, ω_1γ, …, ω_kγ) with ω the power basis of F_{q^k}.
#[derive(Debug, Clone)]
pub struct TowerContext {
    fq: PrimeField,
    small: SmallField,
    big: BigField,
}

impl TowerContext {
    /// Quadratic tower; checks both moduli for irreducibility.
    pub fn new(q: u64, modulus_k: Vec<u64>, b: Vec<u64>, c: Vec<u64>) -> Result<Self> {
        let small = ExtField::new(PrimeField::new(q)?, modulus_k)?;
        let k = small.ext_degree();
        if b.len() != k || c.len() != k {
            return Err(Error::InvalidInput(format!(
                "b and c must have {k} coefficients"
            )));
        }
        let top = vec![small.from_coords(&c), small.from_coords(&b), small.one()];
        Self::with_top_modulus(small, top)
    }

    /// Tower over an existing F_{q^k} with an arbitrary monic irreducible top modulus.
    pub fn with_top_modulus(small: SmallField, top: Vec<Vec<u64>>) -> Result<Self> {
        if !is_irreducible(&small, &top)? {
            return Err(Error::InvalidInput(
                "top modulus is reducible over F_{q^k}".into(),
            ));
        }
        let fq = *small.base();
        let big = ExtField::new_unchecked(small.clone(), top);
        Ok(Self { fq, small, big })
    }

    pub(crate) fn from_parts_unchecked(small: SmallField, top: Vec<Vec<u64>>) -> Self {
        let fq = *small.base();
        let big = ExtField::new_unchecked(small.clone(), top);
        Self { fq, small, big }
    }

    pub fn q(&self) -> u64 {
        self.fq.q()
    }

    pub fn k(&self) -> usize {
        self.small.ext_degree()
    }

    /// Degree of the top field over F_q.
    pub fn n(&self) -> usize {
        self.big.degree()
    }

    /// Degree of the top modulus (2 for the cryptosystem).
    pub fn top_degree(&self) -> usize {
        self.big.ext_degree()
    }

    pub fn fq(&self) -> &PrimeField {
        &self.fq
    }

    pub fn small(&self) -> &SmallField {
        &self.small
    }

    pub fn big(&self) -> &BigField {
        &self.big
    }

    pub fn modulus_k(&self) -> &[u64] {
        self.small.modulus()
    }

    /// Linear coefficient of the top modulus.
    pub fn b(&self) -> &Vec<u64> {
        &self.big.modulus()[1]
    }

    /// Constant coefficient of the top modulus.
    pub fn c(&self) -> &Vec<u64> {
        &self.big.modulus()[0]
    }

    pub fn gamma(&self) -> Vec<Vec<u64>> {
        self.big.generator()
    }

    pub fn embed(&self, u: &[u64]) -> Vec<Vec<u64>> {
        self.big.from_base(&u.to_vec())
    }

    pub fn flatten(&self, e: &Vec<Vec<u64>>) -> Vec<u64> {
        self.big.to_coords(e)
    }

    pub fn unflatten(&self, coords: &[u64]) -> Vec<Vec<u64>> {
        self.big.from_coords(coords)
    }

    /// e^{q^i} in F_{q^k}.
    pub fn frobenius_small(&self, e: &Vec<u64>, i: usize) -> Vec<u64> {
        self.small.frobenius(e, i)
    }

    /// e^{q^i} in the top field.
    pub fn frobenius_big(&self, e: &Vec<Vec<u64>>, i: usize) -> Vec<Vec<u64>> {
        self.big.frobenius(e, i)
    }
}

/// Matrix of T(x) = x − c·x^q on F_{q^k} in the power basis, with its inverse.
///
/// Column j holds the coordinates of T(ω_j).
pub fn linearized_t(ctx: &TowerContext) -> Result<(FieldMatrix<u64>, FieldMatrix<u64>)> {
    let small = ctx.small();
    let c = ctx.c();
    if small.is_zero(c) || is_qm1_power(small, c)? {
        return Err(Error::Precondition(
            "c lies in W_{q−1}; x − c·x^q is singular".into(),
        ));
    }
    let k = ctx.k();
    let images: Vec<Vec<u64>> = small
        .power_basis()
        .iter()
        .map(|w| small.sub(w, &small.mul(c, &small.frobenius(w, 1))))
        .collect();
    let t = FieldMatrix::from_fn(k, k, |r, col| images[col][r]);
    let t_inv = t
        .inverse(ctx.fq())
        .ok_or_else(|| Error::Internal("T is singular although c ∉ W_{q−1}".into()))?;
    Ok((t, t_inv))
}
