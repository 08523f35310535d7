//! Encryption, decryption and the randomized variant.

use rand_core::RngCore;

use crate::crypto::codec::{canonicalize, MessageClass};
use crate::crypto::keys::{Ciphertext, PrivateKey, PublicKey};
use crate::error::{Error, Result};
use crate::ff::{ExtField, Field, PrimeField};

/// E(a, b) = (a M^{(i)} b^⊺)_{i=1..n}.
pub fn encrypt(public: &PublicKey, msg: &MessageClass) -> Result<Ciphertext> {
    encrypt_pair(public, &msg.a, &msg.b)
}

/// E(a, b) for arbitrary nonzero a, b (no canonicalization).
pub fn encrypt_pair(public: &PublicKey, a: &[u64], b: &[u64]) -> Result<Ciphertext> {
    let k = public.k();
    if a.len() != k || b.len() != k {
        return Err(Error::InvalidInput(format!(
            "message vectors must have length {k}"
        )));
    }
    if a.iter().chain(b).any(|&x| x >= public.q()) {
        return Err(Error::InvalidInput(
            "message entry not reduced mod q".into(),
        ));
    }
    let fq = public.fq();
    let ct = public
        .matrices()
        .iter()
        .map(|m| m.bilinear(&fq, a, b))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ciphertext::new(public.q(), ct))
}

/// Recovers the message class from a ciphertext.
///
/// Fails with [`Error::Decryption`] when the ciphertext is not an encryption
/// under the matching public key.
pub fn decrypt(private: &PrivateKey, ct: &Ciphertext) -> Result<MessageClass> {
    ct.validate(private.q(), private.n())?;
    let pi = private.combine_beta(&ct.ct)?;
    let f = private
        .space()
        .factor_product(&pi)
        .map_err(|e| Error::Decryption(e.to_string()))?;
    let fq = private.ctx().fq();
    let a = private.nu_coordinates(&f.u)?;
    let b = private.nu_coordinates(&f.v)?;
    let a: Vec<u64> = a.iter().map(|x| fq.mul(x, &f.scalar)).collect();
    canonicalize(fq, &a, &b)
}

fn randomizer_field(fq: PrimeField, p_r: Option<&[u64]>) -> Result<ExtField<PrimeField>> {
    let p =
        p_r.ok_or_else(|| Error::InvalidInput("key has no randomizer polynomial P_R".into()))?;
    ExtField::new(fq, p.to_vec())
}

/// Randomized encryption of a nonzero a ∈ F_q^k with a fresh random b.
pub fn randomized_encrypt<R: RngCore + ?Sized>(
    public: &PublicKey,
    a: &[u64],
    rng: &mut R,
) -> Result<Ciphertext> {
    let fr = randomizer_field(public.fq(), public.randomizer())?;
    let b = fr.random_nonzero(rng);
    randomized_encrypt_with(public, a, &b)
}

/// Randomized encryption with an explicit nonzero b: sends E(c, b) where ĉ = â/b̂ in F_R.
pub fn randomized_encrypt_with(public: &PublicKey, a: &[u64], b: &[u64]) -> Result<Ciphertext> {
    let fr = randomizer_field(public.fq(), public.randomizer())?;
    if a.len() != public.k() || b.len() != public.k() {
        return Err(Error::InvalidInput(format!(
            "vectors must have length {}",
            public.k()
        )));
    }
    if a.iter().chain(b).any(|&x| x >= public.q()) {
        return Err(Error::InvalidInput("entry not reduced mod q".into()));
    }
    let a_hat = fr.from_coords(a);
    let b_hat = fr.from_coords(b);
    if fr.is_zero(&a_hat) || fr.is_zero(&b_hat) {
        return Err(Error::InvalidInput(
            "plaintext and randomizer must be nonzero".into(),
        ));
    }
    let c_hat = fr.div(&a_hat, &b_hat).expect("nonzero divisor");
    encrypt_pair(public, &fr.to_coords(&c_hat), b)
}

/// Inverse of [`randomized_encrypt`]: returns a exactly.
pub fn randomized_decrypt(private: &PrivateKey, ct: &Ciphertext) -> Result<Vec<u64>> {
    let fr = randomizer_field(*private.ctx().fq(), private.randomizer())?;
    let class = decrypt(private, ct)?;
    Ok(fr.to_coords(&fr.mul(&fr.from_coords(&class.a), &fr.from_coords(&class.b))))
}
