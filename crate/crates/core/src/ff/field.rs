use std::cmp::Ordering;
use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand_core::RngCore;

use crate::rng::uniform_below;

/// A finite field of odd characteristic with an explicit F_p-basis.
///
/// Implementations are cheap-to-clone context objects; elements are plain
/// values and every operation goes through the context.
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// The prime p with F_p the prime subfield.
    fn characteristic(&self) -> u64;
    /// Dimension over the prime subfield.
    fn degree(&self) -> usize;

    /// Image of the integer `c mod p` under the prime-field embedding.
    fn from_prime(&self, c: u64) -> Self::Elem;
    /// Coordinates over the prime field, length [`Field::degree`].
    fn to_coords(&self, a: &Self::Elem) -> Vec<u64>;
    /// Inverse of [`Field::to_coords`]; entries are reduced mod p.
    fn from_coords(&self, coords: &[u64]) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn square(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// Number of elements.
    fn order(&self) -> BigUint {
        BigUint::from(self.characteristic()).pow(self.degree() as u32)
    }

    fn pow(&self, a: &Self::Elem, exp: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..exp.bits()).rev() {
            acc = self.square(&acc);
            if exp.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    fn pow_u64(&self, a: &Self::Elem, exp: u64) -> Self::Elem {
        self.pow(a, &BigUint::from(exp))
    }

    /// e ↦ e^{p^i}.
    fn frobenius(&self, a: &Self::Elem, i: usize) -> Self::Elem {
        let mut out = a.clone();
        let p = BigUint::from(self.characteristic());
        for _ in 0..i {
            out = self.pow(&out, &p);
        }
        out
    }

    /// Uniformly random element.
    fn random<R: RngCore + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        let p = self.characteristic();
        let coords: Vec<u64> = (0..self.degree()).map(|_| uniform_below(rng, p)).collect();
        self.from_coords(&coords)
    }

    /// Uniformly random nonzero element.
    fn random_nonzero<R: RngCore + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        loop {
            let x = self.random(rng);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }

    /// The `index`-th element in coordinate order (base-p digits, little-endian).
    fn element_at(&self, index: &BigUint) -> Self::Elem {
        let p = BigUint::from(self.characteristic());
        let mut rest = index.clone();
        let mut coords = Vec::with_capacity(self.degree());
        for _ in 0..self.degree() {
            let digit = &rest % &p;
            coords.push(digit.iter_u64_digits().next().unwrap_or(0));
            rest /= &p;
        }
        self.from_coords(&coords)
    }

    /// All elements, in [`Field::element_at`] order. Only for tiny fields.
    fn elements(&self) -> Vec<Self::Elem> {
        let total = self.order();
        let mut out = Vec::new();
        let mut i = BigUint::zero();
        while i < total {
            out.push(self.element_at(&i));
            i += BigUint::one();
        }
        out
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items
            .into_iter()
            .fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// Lexicographic order on coordinate vectors (index 0 most significant).
pub fn lex_cmp<F: Field>(field: &F, a: &F::Elem, b: &F::Elem) -> Ordering {
    field.to_coords(a).cmp(&field.to_coords(b))
}
