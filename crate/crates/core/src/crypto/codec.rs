//! The message space Q_k: rank-one k×k matrices a^⊺b over F_q modulo
//! scaling (a, b) ↦ (λa, λ⁻¹b) and transposition.
//!
//! Classes are ranked symmetric block first (a ∥ b), indexed by projective
//! point and scalar, then the non-symmetric block indexed by an unordered
//! pair of distinct points (colex pair rank) and a scalar.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ff::{Field, PrimeField};
use crate::projective::{normalize, point_count, rank_point, unrank_point};

/// A class of Q_k in canonical form: `a` has first nonzero entry 1 and a‖b is
/// lexicographically minimal over the orbit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MessageClass {
    pub a: Vec<u64>,
    pub b: Vec<u64>,
}

/// |Q_k| = (q^k − 1)(q^k − q) / (2(q − 1)) + q^k − 1.
pub fn msg_space_size(q: u64, k: usize) -> BigUint {
    let qk = BigUint::from(q).pow(k as u32);
    let q_big = BigUint::from(q);
    let one = BigUint::one();
    if qk <= q_big {
        // k ≤ 1: no non-symmetric classes
        return qk - one;
    }
    (&qk - &one) * (&qk - &q_big) / (BigUint::from(2u32) * (q_big - &one)) + qk - one
}

/// Canonical representative of the class of a^⊺b.
pub fn canonicalize(fq: &PrimeField, a: &[u64], b: &[u64]) -> Result<MessageClass> {
    if a.len() != b.len() {
        return Err(Error::InvalidInput(
            "message vectors differ in length".into(),
        ));
    }
    if a.iter().chain(b).any(|&x| x >= fq.q()) {
        return Err(Error::InvalidInput(
            "message entry not reduced mod q".into(),
        ));
    }
    let first =
        push_scalar(fq, a, b).ok_or_else(|| Error::InvalidInput("zero message vector".into()))?;
    let second =
        push_scalar(fq, b, a).ok_or_else(|| Error::InvalidInput("zero message vector".into()))?;
    let key = |m: &MessageClass| (m.a.clone(), m.b.clone());
    Ok(if key(&second) < key(&first) {
        second
    } else {
        first
    })
}

fn push_scalar(fq: &PrimeField, a: &[u64], b: &[u64]) -> Option<MessageClass> {
    if b.iter().all(|&x| x == 0) {
        return None;
    }
    let (a, lead) = normalize(fq, a)?;
    Some(MessageClass {
        a,
        b: b.iter().map(|x| fq.mul(x, &lead)).collect(),
    })
}

/// Ranking and unranking of Q_k for fixed (q, k).
#[derive(Debug, Clone)]
pub struct MessageSpace {
    fq: PrimeField,
    k: usize,
    points: BigUint,
    size: BigUint,
}

impl MessageSpace {
    pub fn new(q: u64, k: usize) -> Result<Self> {
        let fq = PrimeField::new(q)?;
        if k == 0 {
            return Err(Error::InvalidParameters("k must be ≥ 1".into()));
        }
        Ok(Self {
            fq,
            k,
            points: point_count(q, k),
            size: msg_space_size(q, k),
        })
    }

    pub fn size(&self) -> &BigUint {
        &self.size
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn canonicalize(&self, a: &[u64], b: &[u64]) -> Result<MessageClass> {
        if a.len() != self.k || b.len() != self.k {
            return Err(Error::InvalidInput(format!(
                "message vectors must have length {}",
                self.k
            )));
        }
        canonicalize(&self.fq, a, b)
    }

    pub fn encode(&self, m: &BigUint) -> Result<MessageClass> {
        if m >= &self.size {
            return Err(Error::InvalidInput(format!(
                "message {m} out of range [0, {})",
                self.size
            )));
        }
        let q = self.fq.q();
        let qm1 = BigUint::from(q - 1);
        let symmetric = &self.points * &qm1;
        let point = |i: &BigUint| unrank_point(q, self.k, i).expect("index below point count");
        let (a, b_dir, rest) = if m < &symmetric {
            let p = m / &qm1;
            let a = point(&p);
            (a.clone(), a, m % &qm1)
        } else {
            let m = m - &symmetric;
            let pair = &m / &qm1;
            let (lo, hi) = unrank_pair(&pair);
            (point(&lo), point(&hi), m % &qm1)
        };
        let mu = rest.to_u64().expect("below q") + 1;
        let b: Vec<u64> = b_dir.iter().map(|x| self.fq.mul(x, &mu)).collect();
        canonicalize(&self.fq, &a, &b)
    }

    pub fn decode(&self, msg: &MessageClass) -> Result<BigUint> {
        let msg = self.canonicalize(&msg.a, &msg.b)?;
        let q = self.fq.q();
        let qm1 = BigUint::from(q - 1);
        let (b_dir, mu) = normalize(&self.fq, &msg.b).expect("canonical b is nonzero");
        let mu_index = BigUint::from(mu - 1);
        let pa = rank_point(q, &msg.a).expect("canonical a is normalized");
        if msg.a == b_dir {
            return Ok(pa * qm1 + mu_index);
        }
        let pb = rank_point(q, &b_dir).expect("normalized");
        let (lo, hi) = if pa < pb { (pa, pb) } else { (pb, pa) };
        let pair = rank_pair(&lo, &hi);
        Ok(&self.points * &qm1 + pair * qm1 + mu_index)
    }
}

/// Colex rank of {lo < hi}: hi(hi − 1)/2 + lo.
fn rank_pair(lo: &BigUint, hi: &BigUint) -> BigUint {
    if hi.is_zero() {
        return lo.clone();
    }
    hi * (hi - BigUint::one()) / BigUint::from(2u32) + lo
}

fn unrank_pair(index: &BigUint) -> (BigUint, BigUint) {
    let one = BigUint::one();
    let mut hi = ((BigUint::from(8u32) * index + &one).sqrt() + &one) / BigUint::from(2u32);
    while rank_pair(&BigUint::zero(), &hi) > *index {
        hi -= &one;
    }
    while rank_pair(&BigUint::zero(), &(&hi + &one)) <= *index {
        hi += &one;
    }
    let lo = index - rank_pair(&BigUint::zero(), &hi);
    (lo, hi)
}
