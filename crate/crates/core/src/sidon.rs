//! Sidon spaces V = {u + u^q γ : u ∈ F_{q^k}} and the algorithm that
//! factors a product of two of their elements.

use std::collections::HashSet;

use num_traits::ToPrimitive;
use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::ff::{
    is_irreducible, is_qm1_power, linearized_t, random_irreducible, random_irreducible_over,
    rth_root, solve_quadratic, ExtField, Field, PrimeField, SmallField, TowerContext,
};
use crate::linalg::{gaussian_elim, FieldMatrix};
use crate::projective;

/// Exhaustive Sidon verification is limited to spaces with q^k ≤ 2^14.
pub const BRUTEFORCE_LIMIT: u64 = 1 << 14;

type Big = Vec<Vec<u64>>;

/// A Sidon space inside the top field of a [`TowerContext`].
#[derive(Debug, Clone)]
pub struct SidonSpace {
    ctx: TowerContext,
    /// ν′_i = ω_i + ω_i^q γ.
    basis0: Vec<Big>,
    /// (T, T⁻¹) for the quadratic construction.
    t_maps: Option<(FieldMatrix<u64>, FieldMatrix<u64>)>,
}

/// Result of factoring π = a·b: representatives u, v ∈ F_{q^k} of uF_q and vF_q,
/// each with first nonzero coordinate 1, and λ ∈ F_q^* with
/// π = λ · (u + u^qγ)(v + v^qγ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub u: Vec<u64>,
    pub v: Vec<u64>,
    pub scalar: u64,
    /// The quadratic had a double root (uF_q = vF_q).
    pub double: bool,
}

impl SidonSpace {
    /// Wraps a quadratic tower, checking the Construction-2 condition c ∉ W_{q−1}.
    pub fn from_context(ctx: TowerContext) -> Result<Self> {
        let t_maps = if ctx.top_degree() == 2 {
            Some(linearized_t(&ctx)?)
        } else {
            None
        };
        let small = ctx.small().clone();
        let basis0 = small
            .power_basis()
            .iter()
            .map(|w| sidon_element_in(&ctx, w))
            .collect();
        Ok(Self {
            ctx,
            basis0,
            t_maps,
        })
    }

    pub fn ctx(&self) -> &TowerContext {
        &self.ctx
    }

    pub fn k(&self) -> usize {
        self.ctx.k()
    }

    pub fn gamma(&self) -> Big {
        self.ctx.gamma()
    }

    /// The canonical basis ν′_1, …, ν′_k.
    pub fn basis0(&self) -> &[Big] {
        &self.basis0
    }

    pub fn t_inverse(&self) -> Option<&FieldMatrix<u64>> {
        self.t_maps.as_ref().map(|(_, inv)| inv)
    }

    /// u + u^q γ.
    pub fn element(&self, u: &[u64]) -> Big {
        sidon_element_in(&self.ctx, u)
    }

    /// Recovers {uF_q, vF_q} from π = (u + u^qγ)(v + v^qγ).
    pub fn factor_product(&self, pi: &Big) -> Result<Factorization> {
        let (_, t_inv) = self.t_maps.as_ref().ok_or_else(|| {
            Error::Precondition("factoring needs the quadratic construction".into())
        })?;
        let ctx = &self.ctx;
        let fq = ctx.fq();
        let small = ctx.small();
        let q = ctx.q();
        let (q0, q1) = (&pi[0], &pi[1]);

        let uv = t_inv.mul_vec(fq, q0)?;
        if small.is_zero(&uv) {
            return Err(Error::Factorization("T⁻¹(q_0) vanishes".into()));
        }
        let uv_q = small.frobenius(&uv, 1);
        let mixed = small.add(q1, &small.mul(ctx.b(), &uv_q));
        // uv + (uv^q + u^q v)x + (uv)^q x² = 0, made monic.
        let lead_inv = small.inv(&uv_q).expect("nonzero");
        let roots = solve_quadratic(
            small,
            &small.mul(&mixed, &lead_inv),
            &small.mul(&uv, &lead_inv),
        );
        if roots.roots.is_empty() {
            return Err(Error::Factorization(
                "quadratic has no roots in F_{q^k}".into(),
            ));
        }
        let mut reps = Vec::with_capacity(2);
        for root in &roots.roots {
            // root = −1/u^{q−1}
            let target = small.neg(&small.inv(root).expect("roots are nonzero"));
            let u = rth_root(small, &target, q - 1)?
                .ok_or_else(|| Error::Factorization("root is not of the form −1/u^{q−1}".into()))?;
            let (u, _) = projective::normalize(fq, &u).expect("nonzero");
            reps.push(u);
        }
        if roots.double {
            reps.push(reps[0].clone());
        }
        reps.sort();
        let (u, v) = (reps[0].clone(), reps[1].clone());
        let product = ctx.big().mul(&self.element(&u), &self.element(&v));
        let scalar = base_field_ratio(ctx, pi, &product).ok_or_else(|| {
            Error::Factorization("candidate factors do not reproduce the product".into())
        })?;
        Ok(Factorization {
            u,
            v,
            scalar,
            double: roots.double,
        })
    }

    /// Exhaustive check of the Sidon property (q^k ≤ 2^14).
    pub fn verify_sidon_bruteforce(&self) -> Result<bool> {
        is_sidon_subspace(self.ctx.big(), self.ctx.q(), &self.basis0)
    }

    /// dim_{F_q}(V²).
    pub fn dim_v_squared(&self) -> usize {
        dim_of_squares(self.ctx.big(), &self.basis0)
    }
}

fn sidon_element_in(ctx: &TowerContext, u: &[u64]) -> Big {
    let u = u.to_vec();
    let uq = ctx.small().frobenius(&u, 1);
    let big = ctx.big();
    big.add(&ctx.embed(&u), &big.mul(&ctx.embed(&uq), &ctx.gamma()))
}

/// λ ∈ F_q^* with a = λ·b, if one exists.
fn base_field_ratio(ctx: &TowerContext, a: &Big, b: &Big) -> Option<u64> {
    let big = ctx.big();
    let ratio = big.div(a, b)?;
    let coords = ctx.flatten(&ratio);
    if coords[1..].iter().all(|&x| x == 0) && coords[0] != 0 {
        Some(coords[0])
    } else {
        None
    }
}

fn check_params(q: u64, k: usize) -> Result<PrimeField> {
    let fq = PrimeField::new(q)?;
    if k < 3 {
        return Err(Error::InvalidParameters(format!("k must be ≥ 3 (got {k})")));
    }
    Ok(fq)
}

/// Construction 2: a random min-span Sidon space of dimension k in F_{q^{2k}}.
pub fn construct_sidon_2k<R: RngCore + ?Sized>(
    q: u64,
    k: usize,
    rng: &mut R,
) -> Result<SidonSpace> {
    check_params(q, k)?;
    let modulus = random_irreducible(q, k, rng)?;
    let small = ExtField::new_unchecked(PrimeField::new(q)?, modulus);
    let c = loop {
        let c = small.random(rng);
        if !small.is_zero(&c) && !is_qm1_power(&small, &c)? {
            break c;
        }
    };
    let b = loop {
        let b = small.random(rng);
        if is_irreducible(&small, &[c.clone(), b.clone(), small.one()])? {
            break b;
        }
    };
    let ctx = TowerContext::from_parts_unchecked(small.clone(), vec![c, b, small.one()]);
    SidonSpace::from_context(ctx)
}

/// Construction 1: V ⊂ F_{q^{rk}} with γ a root of a random degree-r irreducible over F_{q^k}.
pub fn construct_sidon_rk<R: RngCore + ?Sized>(
    q: u64,
    k: usize,
    r: usize,
    rng: &mut R,
) -> Result<SidonSpace> {
    if r < 3 {
        return Err(Error::InvalidParameters(format!("r must be ≥ 3 (got {r})")));
    }
    if k == 0 {
        return Err(Error::InvalidParameters("k must be ≥ 1".into()));
    }
    let fq = PrimeField::new(q)?;
    let small: SmallField = ExtField::new_unchecked(fq, random_irreducible(q, k, rng)?);
    let top = random_irreducible_over(&small, r, rng)?;
    SidonSpace::from_context(TowerContext::from_parts_unchecked(small, top))
}

/// Exhaustive Sidon test for Span_{F_q}(basis) inside `field`.
///
/// Distinct unordered pairs of projective points must have products that are
/// not F_q-proportional.
pub fn is_sidon_subspace<F: Field>(field: &F, q: u64, basis: &[F::Elem]) -> Result<bool> {
    let dim = basis.len();
    let size = (q as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    if size > BRUTEFORCE_LIMIT as u128 {
        return Err(Error::Capacity(format!(
            "q^k = {size} exceeds {BRUTEFORCE_LIMIT}"
        )));
    }
    let fq = PrimeField::new(q)?;
    let points = projective::all_points(q, dim);
    let elems: Vec<F::Elem> = points
        .iter()
        .map(|c| {
            c.iter().zip(basis).fold(field.zero(), |acc, (ci, b)| {
                field.add(&acc, &field.mul(&field.from_prime(*ci), b))
            })
        })
        .collect();
    if elems.iter().any(|e| field.is_zero(e)) {
        // the basis is linearly dependent
        return Ok(false);
    }
    let mut seen = HashSet::with_capacity(elems.len() * (elems.len() + 1) / 2);
    for i in 0..elems.len() {
        for j in i..elems.len() {
            let prod = field.to_coords(&field.mul(&elems[i], &elems[j]));
            let (norm, _) = projective::normalize(&fq, &prod).expect("field has no zero divisors");
            if !seen.insert(norm) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Rank over F_q of the products b_i·b_j, i ≤ j.
pub fn dim_of_squares<F: Field>(field: &F, basis: &[F::Elem]) -> usize {
    let rows: Vec<Vec<u64>> = crate::linalg::upper_pairs(basis.len())
        .into_iter()
        .map(|(i, j)| field.to_coords(&field.mul(&basis[i], &basis[j])))
        .collect();
    let fq = PrimeField::new(field.characteristic()).expect("odd prime characteristic");
    let m = FieldMatrix::from_rows(rows).expect("rectangular");
    gaussian_elim(&fq, &m).rank()
}

/// Size of the exhaustive enumeration for a space of this shape.
pub fn bruteforce_size(q: u64, k: usize) -> Option<u64> {
    projective::point_count(q, k).to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::primitive_element;
    use crate::rng::SplitMix64;
    use rand_core::SeedableRng;

    #[test]
    fn parameter_gates() {
        let mut rng = SplitMix64::seed_from_u64(1);
        assert!(matches!(
            construct_sidon_2k(3, 2, &mut rng),
            Err(Error::InvalidParameters(_))
        ));
        assert!(matches!(
            construct_sidon_2k(4, 3, &mut rng),
            Err(Error::InvalidParameters(_))
        ));
        assert!(matches!(
            construct_sidon_rk(3, 2, 2, &mut rng),
            Err(Error::InvalidParameters(_))
        ));
    }

    #[test]
    fn construction_two_invariants() {
        for (q, k, seed) in [(3u64, 3usize, 1u64), (5, 3, 2), (3, 4, 3)] {
            let v = construct_sidon_2k(q, k, &mut SplitMix64::seed_from_u64(seed)).unwrap();
            let ctx = v.ctx();
            assert!(!is_qm1_power(ctx.small(), ctx.c()).unwrap());
            // c^{(q^k−1)/(q−1)} ≠ 1, e.g. c^{13} ≠ 1 in F_27
            let e = (q.pow(k as u32) - 1) / (q - 1);
            assert!(!ctx.small().is_one(&ctx.small().pow_u64(ctx.c(), e)));
            let top = vec![ctx.c().clone(), ctx.b().clone(), ctx.small().one()];
            assert!(is_irreducible(ctx.small(), &top).unwrap());
            let flat = FieldMatrix::from_rows(v.basis0().iter().map(|b| ctx.flatten(b)).collect())
                .unwrap();
            assert_eq!(flat.rank(ctx.fq()), k);
        }
    }

    #[test]
    fn construction_two_is_deterministic() {
        let a = construct_sidon_2k(5, 4, &mut SplitMix64::seed_from_u64(77)).unwrap();
        let b = construct_sidon_2k(5, 4, &mut SplitMix64::seed_from_u64(77)).unwrap();
        assert_eq!(a.basis0(), b.basis0());
    }

    #[test]
    fn construction_two_verified_exhaustively() {
        let v = construct_sidon_2k(3, 3, &mut SplitMix64::seed_from_u64(5)).unwrap();
        assert!(v.verify_sidon_bruteforce().unwrap());
        assert_eq!(v.dim_v_squared(), 6);
    }

    #[test]
    fn min_span_q5_k4() {
        let v = construct_sidon_2k(5, 4, &mut SplitMix64::seed_from_u64(9)).unwrap();
        assert_eq!(v.dim_v_squared(), 8);
    }

    #[test]
    fn construction_one() {
        let mut rng = SplitMix64::seed_from_u64(4);
        let v1 = construct_sidon_rk(3, 1, 3, &mut rng).unwrap();
        assert!(v1.verify_sidon_bruteforce().unwrap());
        assert_eq!(v1.dim_v_squared(), 1);
        let v2 = construct_sidon_rk(3, 2, 3, &mut rng).unwrap();
        assert!(v2.verify_sidon_bruteforce().unwrap());
        assert_eq!(v2.ctx().n(), 6);
        // γ is not in the subfield F_{q^k}
        let g = v2.gamma();
        assert!(g[1..].iter().any(|c| c.iter().any(|&x| x != 0)));
        assert!(v2.factor_product(&v2.element(&[1, 0])).is_err());
    }

    #[test]
    fn generic_spans() {
        // Span{1, δ} ⊂ F_81, δ primitive.
        let f81 = ExtField::new(
            PrimeField::new(3).unwrap(),
            random_irreducible(3, 4, &mut SplitMix64::seed_from_u64(2)).unwrap(),
        )
        .unwrap();
        let delta = primitive_element(&f81).unwrap();
        assert!(is_sidon_subspace(&f81, 3, &[f81.one(), delta.clone()]).unwrap());
        assert!(is_sidon_subspace(&f81, 3, &[delta.clone()]).unwrap());
        // The subfield F_9 ⊂ F_81 is closed under products, hence not Sidon.
        let f9_gen = f81.pow_u64(&delta, 10);
        assert!(!is_sidon_subspace(&f81, 3, &[f81.one(), f9_gen]).unwrap());
    }

    #[test]
    fn capacity_bound() {
        let v = construct_sidon_2k(5, 7, &mut SplitMix64::seed_from_u64(1)).unwrap();
        assert!(matches!(
            v.verify_sidon_bruteforce(),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn sidon_element_examples() {
        let v = construct_sidon_2k(3, 3, &mut SplitMix64::seed_from_u64(8)).unwrap();
        let big = v.ctx().big();
        assert!(big.is_zero(&v.element(&[0, 0, 0])));
        assert_eq!(v.element(&[1, 0, 0]), big.add(&big.one(), &v.gamma()));
        let small = v.ctx().small();
        let mut rng = SplitMix64::seed_from_u64(3);
        for _ in 0..100 {
            let (a, b) = (small.random(&mut rng), small.random(&mut rng));
            assert_eq!(
                big.add(&v.element(&a), &v.element(&b)),
                v.element(&small.add(&a, &b))
            );
        }
    }

    #[test]
    fn factor_double_root_of_one_plus_gamma() {
        let v = construct_sidon_2k(3, 3, &mut SplitMix64::seed_from_u64(12)).unwrap();
        let one_gamma = v.element(&[1, 0, 0]);
        let big = v.ctx().big();
        let pi = big.square(&one_gamma);
        let small = v.ctx().small();
        assert_eq!(pi[0], small.sub(&small.one(), v.ctx().c()));
        assert_eq!(pi[1], small.sub(&small.from_prime(2), v.ctx().b()));
        let f = v.factor_product(&pi).unwrap();
        assert_eq!(
            (f.u.clone(), f.v.clone(), f.double, f.scalar),
            (vec![1, 0, 0], vec![1, 0, 0], true, 1)
        );
    }

    #[test]
    fn factor_round_trip() {
        for (q, k) in [(3u64, 3usize), (5, 3)] {
            let v = construct_sidon_2k(q, k, &mut SplitMix64::seed_from_u64(q * 31 + k as u64))
                .unwrap();
            let ctx = v.ctx();
            let (small, big, fq) = (ctx.small(), ctx.big(), ctx.fq());
            let mut rng = SplitMix64::seed_from_u64(99);
            for _ in 0..200 {
                let u = small.random_nonzero(&mut rng);
                let w = small.random_nonzero(&mut rng);
                let pi = big.mul(&v.element(&u), &v.element(&w));
                let f = v.factor_product(&pi).unwrap();
                let mut want = vec![
                    projective::normalize(fq, &u).unwrap().0,
                    projective::normalize(fq, &w).unwrap().0,
                ];
                want.sort();
                assert_eq!(vec![f.u.clone(), f.v.clone()], want);
                let rebuilt = big.mul(&v.element(&f.u), &v.element(&f.v));
                assert_eq!(
                    big.mul(&ctx.embed(&small.from_prime(f.scalar)), &rebuilt),
                    pi
                );
            }
        }
    }

    #[test]
    fn factor_rejects_non_products() {
        let v = construct_sidon_2k(3, 3, &mut SplitMix64::seed_from_u64(6)).unwrap();
        let big = v.ctx().big();
        assert!(matches!(
            v.factor_product(&big.one()),
            Err(Error::Factorization(_))
        ));
        assert!(matches!(
            v.factor_product(&big.zero()),
            Err(Error::Factorization(_))
        ));
    }
}
