//! Dense univariate polynomials over a [`Field`], little-endian, with no
//! trailing zero coefficients (the zero polynomial is the empty vector).

use num_bigint::BigUint;

use super::field::Field;

pub type Poly<E> = Vec<E>;

pub fn trim<F: Field>(f: &F, mut p: Poly<F::Elem>) -> Poly<F::Elem> {
    while p.last().is_some_and(|c| f.is_zero(c)) {
        p.pop();
    }
    p
}

pub fn degree<E>(p: &[E]) -> Option<usize> {
    p.len().checked_sub(1)
}

/// The monomial x.
pub fn x<F: Field>(f: &F) -> Poly<F::Elem> {
    vec![f.zero(), f.one()]
}

pub fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    let len = a.len().max(b.len());
    let zero = f.zero();
    let out = (0..len)
        .map(|i| f.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(f, out)
}

pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    let len = a.len().max(b.len());
    let zero = f.zero();
    let out = (0..len)
        .map(|i| f.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(f, out)
}

pub fn scale<F: Field>(f: &F, a: &[F::Elem], c: &F::Elem) -> Poly<F::Elem> {
    trim(f, a.iter().map(|x| f.mul(x, c)).collect())
}

pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, out)
}

/// Quotient and remainder; panics on a zero divisor.
pub fn divrem<F: Field>(f: &F, a: &[F::Elem], d: &[F::Elem]) -> (Poly<F::Elem>, Poly<F::Elem>) {
    let dd = degree(d).expect("division by the zero polynomial");
    let lead_inv = f.inv(&d[dd]).expect("nonzero leading coefficient");
    let mut rem: Vec<F::Elem> = a.to_vec();
    if a.len() < d.len() {
        return (Vec::new(), trim(f, rem));
    }
    let mut quot = vec![f.zero(); a.len() - dd];
    for i in (dd..a.len()).rev() {
        let c = f.mul(&rem[i], &lead_inv);
        if f.is_zero(&c) {
            continue;
        }
        let shift = i - dd;
        for (j, dj) in d.iter().enumerate() {
            rem[shift + j] = f.sub(&rem[shift + j], &f.mul(&c, dj));
        }
        quot[shift] = c;
    }
    rem.truncate(dd);
    (trim(f, quot), trim(f, rem))
}

pub fn rem<F: Field>(f: &F, a: &[F::Elem], d: &[F::Elem]) -> Poly<F::Elem> {
    divrem(f, a, d).1
}

pub fn make_monic<F: Field>(f: &F, a: &[F::Elem]) -> Poly<F::Elem> {
    match a.last() {
        None => Vec::new(),
        Some(lead) => {
            let inv = f.inv(lead).expect("trimmed polynomial has nonzero lead");
            scale(f, a, &inv)
        }
    }
}

/// Monic greatest common divisor.
pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    let (mut r0, mut r1) = (trim(f, a.to_vec()), trim(f, b.to_vec()));
    while !r1.is_empty() {
        let r = rem(f, &r0, &r1);
        r0 = r1;
        r1 = r;
    }
    make_monic(f, &r0)
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod<F: Field>(f: &F, a: &[F::Elem], m: &[F::Elem]) -> Option<Poly<F::Elem>> {
    let (mut r0, mut r1) = (m.to_vec(), rem(f, a, m));
    let (mut t0, mut t1): (Poly<F::Elem>, Poly<F::Elem>) = (Vec::new(), vec![f.one()]);
    while !r1.is_empty() {
        let (quot, r) = divrem(f, &r0, &r1);
        let t = sub(f, &t0, &mul(f, &quot, &t1));
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t;
    }
    if degree(&r0) != Some(0) {
        return None;
    }
    let c = f.inv(&r0[0])?;
    Some(rem(f, &scale(f, &t0, &c), m))
}

pub fn mul_mod<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem], m: &[F::Elem]) -> Poly<F::Elem> {
    rem(f, &mul(f, a, b), m)
}

pub fn pow_mod<F: Field>(f: &F, base: &[F::Elem], exp: &BigUint, m: &[F::Elem]) -> Poly<F::Elem> {
    let base = rem(f, base, m);
    let mut acc = rem(f, &[f.one()], m);
    for i in (0..exp.bits()).rev() {
        acc = mul_mod(f, &acc, &acc, m);
        if exp.bit(i) {
            acc = mul_mod(f, &acc, &base, m);
        }
    }
    acc
}

/// Horner evaluation.
pub fn eval<F: Field>(f: &F, p: &[F::Elem], at: &F::Elem) -> F::Elem {
    p.iter()
        .rev()
        .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, at), c))
}
