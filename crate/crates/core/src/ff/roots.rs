//! Square roots, (q−1)-th roots and quadratic equations over a finite field
//! of odd characteristic.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::field::{lex_cmp, Field};
use super::prime::prime_factors;
use crate::error::{Error, Result};

/// Roots of a monic quadratic, lexicographically sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticRoots<E> {
    pub roots: Vec<E>,
    /// Set when the single reported root has multiplicity two.
    pub double: bool,
}

fn order_minus_one<F: Field>(field: &F) -> BigUint {
    field.order() - BigUint::one()
}

/// Deterministic search for an element that is not a p-th power.
fn pth_nonresidue<F: Field>(field: &F, p: u64) -> F::Elem {
    let cofactor = order_minus_one(field) / BigUint::from(p);
    let mut idx = BigUint::from(2u32);
    loop {
        let cand = field.element_at(&idx);
        if !field.is_zero(&cand) && !field.is_one(&field.pow(&cand, &cofactor)) {
            return cand;
        }
        idx += BigUint::one();
    }
}

/// One p-th root of `a`, which must be a nonzero p-th power
/// (Adleman–Manders–Miller; Tonelli–Shanks when p = 2).
fn pth_root<F: Field>(field: &F, a: &F::Elem, p: u64) -> F::Elem {
    let big_p = BigUint::from(p);
    let mut t = order_minus_one(field);
    let mut s = 0u32;
    while (&t % &big_p).is_zero() {
        t /= &big_p;
        s += 1;
    }
    debug_assert!(s >= 1);
    // alpha = p^{-1} mod t
    let alpha = if t.is_one() {
        BigUint::zero()
    } else {
        let ti = num_bigint::BigInt::from(t.clone());
        let pi = num_bigint::BigInt::from(p);
        let egcd = pi.extended_gcd(&ti);
        egcd.x
            .mod_floor(&ti)
            .to_biguint()
            .expect("non-negative after mod_floor")
    };
    let mut x = field.pow(a, &alpha);
    let a_inv = field.inv(a).expect("nonzero");
    let mut b = field.mul(&field.pow(&x, &big_p), &a_inv);
    if field.is_one(&b) {
        return x;
    }
    let z = field.pow(&pth_nonresidue(field, p), &t);
    let z_inv = field.inv(&z).expect("nonzero");
    let zeta = field.pow(&z, &big_p.pow(s - 1));
    while !field.is_one(&b) {
        let mut j = 0u32;
        let mut w = b.clone();
        let mut prev = b.clone();
        while !field.is_one(&w) {
            prev = w.clone();
            w = field.pow(&w, &big_p);
            j += 1;
        }
        // prev = b^{p^{j-1}} is a primitive p-th root of unity.
        let mut m = 1u64;
        let mut acc = zeta.clone();
        while acc != prev {
            acc = field.mul(&acc, &zeta);
            m += 1;
            debug_assert!(m < p);
        }
        let exp = BigUint::from(m) * big_p.pow(s - j - 1);
        let c = field.pow(&z_inv, &exp);
        x = field.mul(&x, &c);
        b = field.mul(&b, &field.pow(&c, &big_p));
    }
    x
}

/// Square root of `e`, the lexicographically smaller of ±w, or `None` for a non-square.
pub fn sqrt<F: Field>(field: &F, e: &F::Elem) -> Option<F::Elem> {
    if field.is_zero(e) {
        return Some(field.zero());
    }
    let half = order_minus_one(field) >> 1;
    if !field.is_one(&field.pow(e, &half)) {
        return None;
    }
    let w = pth_root(field, e, 2);
    let neg = field.neg(&w);
    Some(match lex_cmp(field, &w, &neg) {
        Ordering::Greater => neg,
        _ => w,
    })
}

/// Whether `c` lies in W_{q−1} = {u^{q−1}}, q the characteristic.
pub fn is_qm1_power<F: Field>(field: &F, c: &F::Elem) -> Result<bool> {
    if field.is_zero(c) {
        return Err(Error::InvalidInput("is_qm1_power of zero".into()));
    }
    let q = field.characteristic();
    let exp = order_minus_one(field) / BigUint::from(q - 1);
    Ok(field.is_one(&field.pow(c, &exp)))
}

/// Some u with u^r = e, or `None` if e is not an r-th power; r must divide |F|−1.
pub fn rth_root<F: Field>(field: &F, e: &F::Elem, r: u64) -> Result<Option<F::Elem>> {
    if field.is_zero(e) {
        return Err(Error::InvalidInput("rth_root of zero".into()));
    }
    let qm1 = order_minus_one(field);
    let big_r = BigUint::from(r);
    if r == 0 || !(&qm1 % &big_r).is_zero() {
        return Err(Error::Precondition(format!(
            "r = {r} does not divide the group order"
        )));
    }
    if !field.is_one(&field.pow(e, &(&qm1 / &big_r))) {
        return Ok(None);
    }
    let mut x = e.clone();
    let mut remaining = r;
    for p in prime_factors(r) {
        while remaining % p == 0 {
            remaining /= p;
            // x is a (p·remaining)-th power; pick the p-th root that is still a remaining-th power.
            let y = pth_root(field, &x, p);
            if remaining == 1 {
                x = y;
                continue;
            }
            let zeta = field.pow(&pth_nonresidue(field, p), &(&qm1 / BigUint::from(p)));
            let test_exp = &qm1 / BigUint::from(remaining);
            let mut cand = y;
            let mut found = false;
            for _ in 0..p {
                if field.is_one(&field.pow(&cand, &test_exp)) {
                    found = true;
                    break;
                }
                cand = field.mul(&cand, &zeta);
            }
            if !found {
                return Err(Error::Internal("root adjustment failed".into()));
            }
            x = cand;
        }
    }
    debug_assert!(field.pow_u64(&x, r) == *e);
    Ok(Some(x))
}

/// All roots of the monic quadratic x² + s·x + t (odd characteristic).
pub fn solve_quadratic<F: Field>(field: &F, s: &F::Elem, t: &F::Elem) -> QuadraticRoots<F::Elem> {
    let two_inv = field.inv(&field.from_prime(2)).expect("odd characteristic");
    let disc = field.sub(&field.square(s), &field.mul(&field.from_prime(4), t));
    let neg_s = field.neg(s);
    if field.is_zero(&disc) {
        return QuadraticRoots {
            roots: vec![field.mul(&neg_s, &two_inv)],
            double: true,
        };
    }
    match sqrt(field, &disc) {
        None => QuadraticRoots {
            roots: Vec::new(),
            double: false,
        },
        Some(w) => {
            let mut roots = vec![
                field.mul(&field.add(&neg_s, &w), &two_inv),
                field.mul(&field.sub(&neg_s, &w), &two_inv),
            ];
            roots.sort_by(|a, b| lex_cmp(field, a, b));
            QuadraticRoots {
                roots,
                double: false,
            }
        }
    }
}

/// A generator of the multiplicative group; only for fields with |F| < 2^40.
pub fn primitive_element<F: Field>(field: &F) -> Result<F::Elem> {
    let qm1 = order_minus_one(field)
        .to_u64()
        .filter(|&v| v < 1 << 40)
        .ok_or_else(|| Error::Capacity("primitive element search needs |F| < 2^40".into()))?;
    let cofactors: Vec<BigUint> = prime_factors(qm1)
        .into_iter()
        .map(|p| BigUint::from(qm1 / p))
        .collect();
    let mut idx = BigUint::one();
    loop {
        let cand = field.element_at(&idx);
        if !field.is_zero(&cand)
            && cofactors
                .iter()
                .all(|c| !field.is_one(&field.pow(&cand, c)))
        {
            return Ok(cand);
        }
        idx += BigUint::one();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{ExtField, PrimeField};
    use rand_core::SeedableRng;

    fn f9() -> ExtField<PrimeField> {
        ExtField::new(PrimeField::new(3).unwrap(), vec![1, 0, 1]).unwrap()
    }

    fn f27() -> ExtField<PrimeField> {
        ExtField::new(PrimeField::new(3).unwrap(), vec![1, 2, 0, 1]).unwrap()
    }

    #[test]
    fn sqrt_examples_f9() {
        let f = f9();
        assert_eq!(sqrt(&f, &vec![2, 0]), Some(vec![0, 1]));
        assert_eq!(sqrt(&f, &f.zero()), Some(f.zero()));
        assert_eq!(sqrt(&f, &vec![1, 1]), None);
    }

    #[test]
    fn sqrt_agrees_with_squaring_table() {
        for f in [f9(), f27()] {
            let elems = f.elements();
            for e in &elems {
                let is_square = elems.iter().any(|w| f.square(w) == *e);
                match sqrt(&f, e) {
                    Some(w) => assert_eq!(f.square(&w), *e),
                    None => assert!(!is_square, "{e:?} is a square"),
                }
            }
        }
    }

    #[test]
    fn sqrt_in_f_541_squared() {
        let fq = PrimeField::new(541).unwrap();
        let f = ExtField::new(fq, vec![2, 0, 1]).unwrap();
        let mut rng = crate::rng::SplitMix64::seed_from_u64(3);
        for _ in 0..200 {
            let x = f.random(&mut rng);
            let w = sqrt(&f, &f.square(&x)).unwrap();
            assert_eq!(f.square(&w), f.square(&x));
        }
    }

    #[test]
    fn qm1_power_examples() {
        let f = f9();
        assert!(is_qm1_power(&f, &vec![2, 0]).unwrap());
        assert!(!is_qm1_power(&f, &vec![1, 1]).unwrap());
        assert!(is_qm1_power(&f, &f.one()).unwrap());
        assert!(is_qm1_power(&f, &f.zero()).is_err());
    }

    #[test]
    fn non_qm1_power_counts() {
        // |W̄_{q−1} \ {0}| = q^k − (q^k−1)/(q−1) − 1
        for (q, modulus) in [
            (3u64, vec![1u64, 0, 1]),
            (3, vec![1, 2, 0, 1]),
            (5, vec![2, 0, 1]),
        ] {
            let f = ExtField::new(PrimeField::new(q).unwrap(), modulus).unwrap();
            let qk = f.order().to_u64().unwrap();
            let count = f
                .elements()
                .iter()
                .filter(|e| !f.is_zero(e) && !is_qm1_power(&f, e).unwrap())
                .count() as u64;
            assert_eq!(count, qk - (qk - 1) / (q - 1) - 1, "q={q}");
        }
    }

    #[test]
    fn rth_root_examples() {
        let f = f9();
        let one_root = rth_root(&f, &f.one(), 2).unwrap().unwrap();
        assert!(f.is_one(&f.square(&one_root)));
        let r = rth_root(&f, &vec![2, 0], 2).unwrap().unwrap();
        assert_eq!(f.square(&r), vec![2, 0]);
        assert_eq!(rth_root(&f, &vec![1, 1], 2).unwrap(), None);
        assert!(rth_root(&f, &f.zero(), 2).is_err());
    }

    #[test]
    fn rth_root_composite_r() {
        // q = 541, q − 1 = 540 = 2²·3³·5 in F_{541^3}; 3 | k forces a deep 3-Sylow.
        let fq = PrimeField::new(541).unwrap();
        let f = ExtField::new(
            fq,
            crate::ff::random_irreducible(541, 3, &mut crate::rng::SplitMix64::seed_from_u64(8))
                .unwrap(),
        )
        .unwrap();
        let mut rng = crate::rng::SplitMix64::seed_from_u64(21);
        for _ in 0..40 {
            let u = f.random_nonzero(&mut rng);
            let e = f.pow_u64(&u, 540);
            let root = rth_root(&f, &e, 540).unwrap().unwrap();
            assert_eq!(f.pow_u64(&root, 540), e);
        }
        // an element outside W_{q−1}
        let non = f.elements_sample_non_power(&mut rng);
        assert_eq!(rth_root(&f, &non, 540).unwrap(), None);
    }

    trait SampleNonPower: Field {
        fn elements_sample_non_power<R: rand_core::RngCore>(&self, rng: &mut R) -> Self::Elem {
            loop {
                let c = self.random_nonzero(rng);
                if !is_qm1_power(self, &c).unwrap() {
                    return c;
                }
            }
        }
    }
    impl<F: Field> SampleNonPower for F {}

    #[test]
    fn quadratic_examples() {
        let f = f9();
        let r = solve_quadratic(&f, &f.zero(), &f.one());
        assert_eq!(r.roots, vec![vec![0, 1], vec![0, 2]]);
        assert!(!r.double);
        let f3 = PrimeField::new(3).unwrap();
        let r = solve_quadratic(&f3, &2, &1);
        assert_eq!(r.roots, vec![2]);
        assert!(r.double);
        assert!(solve_quadratic(&f, &f.zero(), &vec![1, 1]).roots.is_empty());
    }

    #[test]
    fn quadratic_exhaustive_f9_f27() {
        for f in [f9(), f27()] {
            let elems = f.elements();
            for s in &elems {
                for t in &elems {
                    let mut expected: Vec<_> = elems
                        .iter()
                        .filter(|x| f.is_zero(&f.add(&f.add(&f.square(x), &f.mul(s, x)), t)))
                        .cloned()
                        .collect();
                    expected.sort_by(|a, b| lex_cmp(&f, a, b));
                    let got = solve_quadratic(&f, s, t);
                    assert_eq!(got.roots, expected);
                    assert_eq!(got.double, expected.len() == 1);
                }
            }
        }
    }

    #[test]
    fn primitive_element_has_full_order() {
        let f =
            ExtField::new(PrimeField::new(3).unwrap(), vec![2, 0, 0, 1, 1]).unwrap_or_else(|_| {
                ExtField::new(PrimeField::new(3).unwrap(), vec![2, 1, 0, 0, 1]).unwrap()
            });
        let g = primitive_element(&f).unwrap();
        let mut seen = std::collections::HashSet::new();
        let mut acc = f.one();
        for _ in 0..80 {
            acc = f.mul(&acc, &g);
            seen.insert(acc.clone());
        }
        assert_eq!(seen.len(), 80);
    }
}
