use rand_core::RngCore;

use super::field::Field;
use super::poly;
use super::prime::PrimeField;
use crate::error::{Error, Result};

/// Ben-Or irreducibility test for a monic polynomial over `field`.
///
/// With Q = |field|, f of degree d is irreducible iff
/// `gcd(x^{Q^i} − x, f) = 1` for every `1 ≤ i ≤ d/2`.
pub fn is_irreducible<F: Field>(field: &F, f: &[F::Elem]) -> Result<bool> {
    let f = poly::trim(field, f.to_vec());
    let d = match poly::degree(&f) {
        None => return Err(Error::InvalidInput("zero polynomial".into())),
        Some(0) => return Err(Error::InvalidInput("constant polynomial".into())),
        Some(d) => d,
    };
    if !field.is_one(&f[d]) {
        return Err(Error::InvalidInput("polynomial is not monic".into()));
    }
    if d == 1 {
        return Ok(true);
    }
    let order = field.order();
    let x = poly::x(field);
    let mut h = x.clone();
    for _ in 0..d / 2 {
        h = poly::pow_mod(field, &h, &order, &f);
        let g = poly::gcd(field, &poly::sub(field, &h, &x), &f);
        if poly::degree(&g) != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Uniformly random monic irreducible polynomial of degree `d` over `field`.
pub fn random_irreducible_over<F: Field, R: RngCore + ?Sized>(
    field: &F,
    d: usize,
    rng: &mut R,
) -> Result<Vec<F::Elem>> {
    if d == 0 {
        return Err(Error::InvalidInput("degree must be at least 1".into()));
    }
    for _ in 0..64 * d.max(1) {
        let mut f: Vec<F::Elem> = (0..d).map(|_| field.random(rng)).collect();
        f.push(field.one());
        if is_irreducible(field, &f)? {
            return Ok(f);
        }
    }
    Err(Error::Internal(format!(
        "no irreducible polynomial of degree {d} found within {} trials",
        64 * d
    )))
}

/// Random monic irreducible polynomial of degree `d` over F_q.
pub fn random_irreducible<R: RngCore + ?Sized>(q: u64, d: usize, rng: &mut R) -> Result<Vec<u64>> {
    random_irreducible_over(&PrimeField::new(q)?, d, rng)
}
