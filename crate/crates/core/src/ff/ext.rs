use std::sync::Arc;

use num_bigint::BigUint;

use super::field::Field;
use super::irreducible::is_irreducible;
use super::poly;
use crate::error::{Error, Result};

/// The extension `base[y]/(modulus)` for a monic irreducible modulus.
///
/// Elements are coefficient vectors of length `deg(modulus)` in the power
/// basis `1, y, …, y^{d−1}`.
#[derive(Debug, Clone)]
pub struct ExtField<F: Field> {
    base: F,
    /// Monic, little-endian, length `d + 1`.
    modulus: Arc<Vec<F::Elem>>,
}

impl<F: Field> PartialEq for ExtField<F>
where
    F: PartialEq,
{
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.modulus == other.modulus
    }
}

impl<F: Field> ExtField<F> {
    /// Builds the extension after checking that `modulus` is monic and irreducible.
    pub fn new(base: F, modulus: Vec<F::Elem>) -> Result<Self> {
        let modulus = poly::trim(&base, modulus);
        if !is_irreducible(&base, &modulus)? {
            return Err(Error::InvalidInput("extension modulus is reducible".into()));
        }
        Ok(Self::new_unchecked(base, modulus))
    }

    /// Caller guarantees `modulus` is monic and irreducible.
    pub(crate) fn new_unchecked(base: F, modulus: Vec<F::Elem>) -> Self {
        debug_assert!(modulus.len() >= 2);
        Self {
            base,
            modulus: Arc::new(modulus),
        }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn modulus(&self) -> &[F::Elem] {
        &self.modulus
    }

    /// Degree of the extension over `base`.
    pub fn ext_degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// The class of y (the generator of the power basis).
    pub fn generator(&self) -> Vec<F::Elem> {
        let mut g = self.zero();
        if self.ext_degree() == 1 {
            // y ≡ −m_0 when the modulus is linear.
            g[0] = self.base.neg(&self.modulus[0]);
        } else {
            g[1] = self.base.one();
        }
        g
    }

    /// Embeds a base-field element as a constant.
    pub fn from_base(&self, c: &F::Elem) -> Vec<F::Elem> {
        let mut e = self.zero();
        e[0] = c.clone();
        e
    }

    /// Wraps a coefficient vector, reducing it modulo the modulus.
    pub fn from_poly(&self, p: &[F::Elem]) -> Vec<F::Elem> {
        let r = poly::rem(
            &self.base,
            &poly::trim(&self.base, p.to_vec()),
            &self.modulus,
        );
        self.pad(r)
    }

    fn pad(&self, mut v: Vec<F::Elem>) -> Vec<F::Elem> {
        v.resize(self.ext_degree(), self.base.zero());
        v
    }

    /// Base-field-linear basis `1, y, …` as field elements.
    pub fn power_basis(&self) -> Vec<Vec<F::Elem>> {
        (0..self.ext_degree())
            .map(|i| {
                let mut e = self.zero();
                e[i] = self.base.one();
                e
            })
            .collect()
    }
}

impl<F: Field> Field for ExtField<F> {
    type Elem = Vec<F::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.ext_degree()]
    }

    fn one(&self) -> Self::Elem {
        self.from_base(&self.base.one())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let d = self.ext_degree();
        let f = &self.base;
        let mut prod = vec![f.zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = f.add(&prod[i + j], &f.mul(x, y));
            }
        }
        for i in (d..2 * d - 1).rev() {
            let c = std::mem::replace(&mut prod[i], f.zero());
            if f.is_zero(&c) {
                continue;
            }
            for j in 0..d {
                prod[i - d + j] = f.sub(&prod[i - d + j], &f.mul(&c, &self.modulus[j]));
            }
        }
        prod.truncate(d);
        prod
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if self.is_zero(a) {
            return None;
        }
        let p = poly::trim(&self.base, a.clone());
        poly::inv_mod(&self.base, &p, &self.modulus).map(|r| self.pad(r))
    }

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }

    fn degree(&self) -> usize {
        self.base.degree() * self.ext_degree()
    }

    fn from_prime(&self, c: u64) -> Self::Elem {
        self.from_base(&self.base.from_prime(c))
    }

    fn to_coords(&self, a: &Self::Elem) -> Vec<u64> {
        a.iter().flat_map(|x| self.base.to_coords(x)).collect()
    }

    fn from_coords(&self, coords: &[u64]) -> Self::Elem {
        let m = self.base.degree();
        let mut out: Vec<F::Elem> = coords
            .chunks(m)
            .take(self.ext_degree())
            .map(|c| self.base.from_coords(c))
            .collect();
        out.resize(self.ext_degree(), self.base.zero());
        out
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|x| self.base.is_zero(x))
    }

    fn order(&self) -> BigUint {
        self.base.order().pow(self.ext_degree() as u32)
    }
}
