//! Exhaustive bilinear attack: for every projective a the equations
//! a M^{(i)} b^⊺ = ct_i become linear in b.

use std::collections::BTreeSet;

use crate::crypto::{canonicalize, Ciphertext, MessageClass, PublicKey};
use crate::error::{Error, Result};
use crate::linalg::{solve_all, FieldMatrix};
use crate::projective::all_points;

/// Largest projective space enumerated by [`bilinear_bruteforce`].
pub const BILINEAR_LIMIT: u64 = 1 << 20;

/// All classes (a, b) with E(a, b) = ct.
pub fn bilinear_bruteforce(public: &PublicKey, ct: &Ciphertext) -> Result<BTreeSet<MessageClass>> {
    ct.validate(public.q(), public.n())?;
    let (q, k) = (public.q(), public.k());
    let fq = public.fq();
    if (q as u128)
        .checked_pow(k as u32)
        .is_none_or(|s| s > BILINEAR_LIMIT as u128)
    {
        return Err(Error::Capacity(format!(
            "q^k too large for exhaustive search (q={q}, k={k})"
        )));
    }
    let mut out = BTreeSet::new();
    for a in all_points(q, k) {
        let rows: Vec<Vec<u64>> = public
            .matrices()
            .iter()
            .map(|m| m.vec_mul(&fq, &a))
            .collect::<Result<_>>()?;
        let system = FieldMatrix::from_rows(rows)?;
        for b in solve_all(&fq, &system, &ct.ct, BILINEAR_LIMIT as usize)? {
            if b.iter().any(|&x| x != 0) {
                out.insert(canonicalize(&fq, &a, &b)?);
            }
        }
    }
    Ok(out)
}
