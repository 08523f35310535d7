use num_bigint::BigUint;

use super::field::Field;
use crate::error::{Error, Result};

/// The prime field F_q for an odd prime q < 2^31.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    q: u64,
}

impl PrimeField {
    /// Validates that `q` is an odd prime small enough for `u64` products.
    pub fn new(q: u64) -> Result<Self> {
        if q < 3 || q % 2 == 0 || !is_prime(q) {
            return Err(Error::InvalidParameters(format!(
                "q = {q} must be an odd prime ≥ 3"
            )));
        }
        if q >= 1 << 31 {
            return Err(Error::InvalidParameters(format!("q = {q} exceeds 2^31")));
        }
        Ok(Self { q })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    #[inline]
    pub fn reduce(&self, x: u64) -> u64 {
        x % self.q
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.q
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a % self.q == 0 {
            return None;
        }
        // Extended Euclid on signed integers.
        let (mut r0, mut r1) = (self.q as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let quot = r0 / r1;
            (r0, r1) = (r1, r0 - quot * r1);
            (t0, t1) = (t1, t0 - quot * t1);
        }
        Some(t0.rem_euclid(self.q as i64) as u64)
    }

    fn characteristic(&self) -> u64 {
        self.q
    }

    fn degree(&self) -> usize {
        1
    }

    fn from_prime(&self, c: u64) -> u64 {
        c % self.q
    }

    fn to_coords(&self, a: &u64) -> Vec<u64> {
        vec![*a]
    }

    fn from_coords(&self, coords: &[u64]) -> u64 {
        coords.first().copied().unwrap_or(0) % self.q
    }

    fn order(&self) -> BigUint {
        BigUint::from(self.q)
    }

    fn frobenius(&self, a: &u64, _i: usize) -> u64 {
        *a
    }
}

/// Deterministic primality by trial division (all inputs here are < 2^32).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_moduli() {
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(541).is_ok());
    }

    #[test]
    fn inverse_table_f7() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            let inv = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &inv), 1);
        }
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn factors() {
        assert_eq!(prime_factors(540), vec![2, 3, 5]);
        assert_eq!(prime_factors(2), vec![2]);
        assert_eq!(prime_factors(52), vec![2, 13]);
        assert_eq!(prime_factors(1), Vec::<u64>::new());
    }
}
