//! Points of the projective space P(F_q^k): nonzero vectors up to F_q^*
//! scaling, represented by their normalized form (first nonzero entry 1).
//!
//! Points are ranked by the position of the leading 1 (earlier first), then
//! by the tail read as a little-endian base-q number, so point 0 is
//! (1, 0, …, 0).

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::ff::{Field, PrimeField};

/// N = (q^k − 1)/(q − 1).
pub fn point_count(q: u64, k: usize) -> BigUint {
    (BigUint::from(q).pow(k as u32) - BigUint::one()) / BigUint::from(q - 1)
}

/// Scales `v` so its first nonzero entry is 1; returns the normalized vector and
/// the removed scalar (v = scalar · normalized). `None` for the zero vector.
pub fn normalize(fq: &PrimeField, v: &[u64]) -> Option<(Vec<u64>, u64)> {
    let lead = *v.iter().find(|&&x| x != 0)?;
    let inv = fq.inv(&lead)?;
    Some((v.iter().map(|x| fq.mul(x, &inv)).collect(), lead))
}

pub fn unrank_point(q: u64, k: usize, index: &BigUint) -> Option<Vec<u64>> {
    let big_q = BigUint::from(q);
    let mut rest = index.clone();
    for lead in 0..k {
        let block = big_q.pow((k - 1 - lead) as u32);
        if rest < block {
            let mut v = vec![0u64; k];
            v[lead] = 1;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = (&rest % &big_q).to_u64().unwrap_or(0);
                rest /= &big_q;
            }
            return Some(v);
        }
        rest -= block;
    }
    None
}

/// Rank of a normalized vector; `None` if `v` is zero or not normalized.
pub fn rank_point(q: u64, v: &[u64]) -> Option<BigUint> {
    let k = v.len();
    let lead = v.iter().position(|&x| x != 0)?;
    if v[lead] != 1 {
        return None;
    }
    let big_q = BigUint::from(q);
    let mut offset = BigUint::zero();
    for i in 0..lead {
        offset += big_q.pow((k - 1 - i) as u32);
    }
    let mut tail = BigUint::zero();
    for &x in v[lead + 1..].iter().rev() {
        tail = tail * &big_q + BigUint::from(x);
    }
    Some(offset + tail)
}

/// All normalized vectors of F_q^k in rank order; only for small q^k.
pub fn all_points(q: u64, k: usize) -> Vec<Vec<u64>> {
    let n = point_count(q, k).to_u64().expect("small projective space");
    (0..n)
        .map(|i| unrank_point(q, k, &BigUint::from(i)).expect("in range"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_unrank_bijection() {
        for (q, k) in [(3u64, 1usize), (3, 3), (5, 2), (7, 3)] {
            let pts = all_points(q, k);
            assert_eq!(BigUint::from(pts.len()), point_count(q, k));
            for (i, p) in pts.iter().enumerate() {
                assert_eq!(rank_point(q, p), Some(BigUint::from(i)));
            }
            let unique: std::collections::HashSet<_> = pts.iter().collect();
            assert_eq!(unique.len(), pts.len());
        }
        assert_eq!(unrank_point(3, 3, &BigUint::zero()), Some(vec![1, 0, 0]));
        assert_eq!(unrank_point(3, 3, &BigUint::from(13u32)), None);
    }

    #[test]
    fn normalize_pulls_out_leading_scalar() {
        let fq = PrimeField::new(3).unwrap();
        assert_eq!(normalize(&fq, &[0, 2, 1]), Some((vec![0, 1, 2], 2)));
        assert_eq!(normalize(&fq, &[0, 0]), None);
    }
}
