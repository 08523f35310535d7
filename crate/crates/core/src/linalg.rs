//! Dense exact linear algebra over any [`Field`].

use std::ops::Index;

use rand_core::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::{Field, PrimeField};

/// Row-major dense matrix. Field operations take the field context explicitly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Index<(usize, usize)> for FieldMatrix<T> {
    type Output = T;

    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T: Clone> FieldMatrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidInput(format!(
                "matrix data has {} entries, expected {rows}×{cols}",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidInput("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Self {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        Self::from_fn(rows.len(), cols.len(), |r, c| {
            self[(rows.start + r, cols.start + c)].clone()
        })
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool
    where
        T: PartialEq,
    {
        self.is_square() && (0..self.rows).all(|r| (0..r).all(|c| self[(r, c)] == self[(c, r)]))
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> FieldMatrix<U> {
        FieldMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Stacks the rows of `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols && self.rows > 0 && other.rows > 0 {
            return Err(Error::InvalidInput("vstack column mismatch".into()));
        }
        let cols = if self.rows > 0 { self.cols } else { other.cols };
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self {
            rows: self.rows + other.rows,
            cols,
            data,
        })
    }
}

impl<T: Clone + PartialEq> FieldMatrix<T> {
    pub fn zeros<F: Field<Elem = T>>(f: &F, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![f.zero(); rows * cols],
        }
    }

    pub fn identity<F: Field<Elem = T>>(f: &F, n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { f.one() } else { f.zero() })
    }

    pub fn is_zero<F: Field<Elem = T>>(&self, f: &F) -> bool {
        self.data.iter().all(|x| f.is_zero(x))
    }

    pub fn mul<F: Field<Elem = T>>(&self, f: &F, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::InvalidInput(format!(
                "cannot multiply {}×{} by {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if f.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, &other[(k, c)]));
                }
            }
        }
        Ok(out)
    }

    /// `self · v` for a column vector `v`.
    pub fn mul_vec<F: Field<Elem = T>>(&self, f: &F, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::InvalidInput("vector length mismatch".into()));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect())
    }

    /// `v · self` for a row vector `v`.
    pub fn vec_mul<F: Field<Elem = T>>(&self, f: &F, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.rows {
            return Err(Error::InvalidInput("vector length mismatch".into()));
        }
        let mut out = vec![f.zero(); self.cols];
        for (r, a) in v.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                *o = f.add(o, &f.mul(a, &self[(r, c)]));
            }
        }
        Ok(out)
    }

    /// The bilinear form `a · self · bᵀ`.
    pub fn bilinear<F: Field<Elem = T>>(&self, f: &F, a: &[T], b: &[T]) -> Result<T> {
        let row = self.vec_mul(f, a)?;
        if b.len() != self.cols {
            return Err(Error::InvalidInput("vector length mismatch".into()));
        }
        Ok(row
            .iter()
            .zip(b)
            .fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y))))
    }

    pub fn add<F: Field<Elem = T>>(&self, f: &F, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::InvalidInput("matrix shape mismatch".into()));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f.add(a, b))
                .collect(),
        })
    }

    pub fn scale<F: Field<Elem = T>>(&self, f: &F, s: &T) -> Self {
        self.map(|x| f.mul(x, s))
    }

    pub fn rank<F: Field<Elem = T>>(&self, f: &F) -> usize {
        gaussian_elim(f, self).rank()
    }

    pub fn inverse<F: Field<Elem = T>>(&self, f: &F) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self[(r, c)].clone()
            } else if c - n == r {
                f.one()
            } else {
                f.zero()
            }
        });
        let ech = gaussian_elim(f, &aug);
        if ech.pivots.len() < n || ech.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(ech.rref.submatrix(0..n, n..2 * n))
    }
}

/// Reduced row-echelon form with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon<T> {
    pub rref: FieldMatrix<T>,
    pub pivots: Vec<usize>,
}

impl<T: Clone + PartialEq> Echelon<T> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn kernel_dim(&self) -> usize {
        self.rref.cols - self.pivots.len()
    }

    /// Right-kernel basis in systematic form: one vector per free column,
    /// carrying 1 in that column and 0 in the other free columns.
    pub fn kernel_basis<F: Field<Elem = T>>(&self, f: &F) -> Vec<Vec<T>> {
        let cols = self.rref.cols;
        let mut is_pivot = vec![false; cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![f.zero(); cols];
                v[free] = f.one();
                for (i, &p) in self.pivots.iter().enumerate() {
                    v[p] = f.neg(&self.rref[(i, free)]);
                }
                v
            })
            .collect()
    }

    /// Nonzero rows of the reduced form (a row-space basis).
    pub fn row_basis(&self) -> Vec<Vec<T>> {
        (0..self.rank())
            .map(|r| self.rref.row(r).to_vec())
            .collect()
    }
}

/// Gauss–Jordan elimination, pivoting on the first nonzero entry of each column.
pub fn gaussian_elim<F: Field>(f: &F, m: &FieldMatrix<F::Elem>) -> Echelon<F::Elem> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(&a[(i, c)])) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(&a[(r, c)]).expect("pivot is nonzero");
        for j in c..cols {
            a.data[r * cols + j] = f.mul(&a.data[r * cols + j], &inv);
        }
        let pivot_row: Vec<F::Elem> = a.row(r)[c..].to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = a[(i, c)].clone();
            if f.is_zero(&factor) {
                continue;
            }
            for (off, pv) in pivot_row.iter().enumerate() {
                if f.is_zero(pv) {
                    continue;
                }
                let idx = i * cols + c + off;
                a.data[idx] = f.sub(&a.data[idx], &f.mul(&factor, pv));
            }
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { rref: a, pivots }
}

/// One solution of `m · x = rhs`, or `None` when the system is inconsistent.
pub fn solve<F: Field>(
    f: &F,
    m: &FieldMatrix<F::Elem>,
    rhs: &[F::Elem],
) -> Result<Option<Vec<F::Elem>>> {
    if rhs.len() != m.rows {
        return Err(Error::InvalidInput(format!(
            "rhs has {} entries, matrix has {} rows",
            rhs.len(),
            m.rows
        )));
    }
    let cols = m.cols;
    let aug = FieldMatrix::from_fn(m.rows, cols + 1, |r, c| {
        if c < cols {
            m[(r, c)].clone()
        } else {
            rhs[r].clone()
        }
    });
    let ech = gaussian_elim(f, &aug);
    if ech.pivots.last() == Some(&cols) {
        return Ok(None);
    }
    let mut x = vec![f.zero(); cols];
    for (i, &p) in ech.pivots.iter().enumerate() {
        x[p] = ech.rref[(i, cols)].clone();
    }
    Ok(Some(x))
}

/// All solutions of `m · x = rhs` (particular solution plus kernel span), capped at `limit`.
pub fn solve_all<F: Field>(
    f: &F,
    m: &FieldMatrix<F::Elem>,
    rhs: &[F::Elem],
    limit: usize,
) -> Result<Vec<Vec<F::Elem>>> {
    let Some(x0) = solve(f, m, rhs)? else {
        return Ok(Vec::new());
    };
    let kernel = gaussian_elim(f, m).kernel_basis(f);
    let q = f.order();
    let count = q.pow(kernel.len() as u32);
    if count > num_bigint::BigUint::from(limit) {
        return Err(Error::Capacity(format!(
            "solution space has {count} points"
        )));
    }
    let scalars = f.elements();
    let mut out = vec![x0];
    for v in &kernel {
        let mut next = Vec::with_capacity(out.len() * scalars.len());
        for base in &out {
            for s in &scalars {
                next.push(
                    base.iter()
                        .zip(v)
                        .map(|(b, vi)| f.add(b, &f.mul(s, vi)))
                        .collect(),
                );
            }
        }
        out = next;
    }
    Ok(out)
}

/// Uniformly random invertible m×m matrix (rejection sampling).
pub fn random_invertible<F: Field, R: RngCore + ?Sized>(
    f: &F,
    m: usize,
    rng: &mut R,
) -> FieldMatrix<F::Elem> {
    assert!(m >= 1, "random_invertible requires m ≥ 1");
    loop {
        let cand = FieldMatrix::from_fn(m, m, |_, _| f.random(rng));
        if cand.rank(f) == m {
            return cand;
        }
    }
}

/// Kronecker product A ⊗ B.
pub fn kronecker<F: Field>(
    f: &F,
    a: &FieldMatrix<F::Elem>,
    b: &FieldMatrix<F::Elem>,
) -> FieldMatrix<F::Elem> {
    FieldMatrix::from_fn(a.rows * b.rows, a.cols * b.cols, |r, c| {
        f.mul(&a[(r / b.rows, c / b.cols)], &b[(r % b.rows, c % b.cols)])
    })
}

/// Column index of the pair (i, j), i ≤ j, in the order (1,1),(1,2),…,(1,n),(2,2),…,(n,n).
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * n - i * (i + 1) / 2 + j
}

/// The pairs (i, j), i ≤ j, in [`pair_index`] order.
pub fn upper_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

/// Arranges a length-n(n+1)/2 vector into the symmetric n×n matrix it indexes.
pub fn matricize<T: Clone>(w: &[T], n: usize) -> Result<FieldMatrix<T>> {
    if w.len() != n * (n + 1) / 2 {
        return Err(Error::InvalidInput(format!(
            "matricize: length {} is not n(n+1)/2 for n = {n}",
            w.len()
        )));
    }
    Ok(FieldMatrix::from_fn(n, n, |r, c| {
        w[pair_index(n, r, c)].clone()
    }))
}

/// Upper triangle of a square matrix in [`pair_index`] order.
pub fn vectorize_upper<T: Clone>(m: &FieldMatrix<T>) -> Vec<T> {
    upper_pairs(m.rows)
        .into_iter()
        .map(|(i, j)| m[(i, j)].clone())
        .collect()
}

/// S = μ · vᵀv with v's first nonzero entry 1; `w = √μ · v` when μ is a square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankOneDecomposition<T> {
    pub v: Vec<T>,
    pub mu: T,
    pub w: Option<Vec<T>>,
}

pub fn rank_one_decompose<F: Field>(
    f: &F,
    s: &FieldMatrix<F::Elem>,
) -> Option<RankOneDecomposition<F::Elem>> {
    if !s.is_square() || s.rank(f) != 1 {
        return None;
    }
    let n = s.rows;
    let lead = (0..n).find(|&i| !f.is_zero(&s[(i, i)]))?;
    let mu = s[(lead, lead)].clone();
    let mu_inv = f.inv(&mu)?;
    let v: Vec<F::Elem> = (0..n).map(|j| f.mul(&s[(lead, j)], &mu_inv)).collect();
    let first = v.iter().position(|x| !f.is_zero(x))?;
    if first != lead {
        return None;
    }
    let rebuilt = FieldMatrix::from_fn(n, n, |r, c| f.mul(&mu, &f.mul(&v[r], &v[c])));
    if rebuilt != *s {
        return None;
    }
    let w = crate::ff::sqrt(f, &mu).map(|root| v.iter().map(|x| f.mul(&root, x)).collect());
    Some(RankOneDecomposition { v, mu, w })
}

/// JSON form of an F_q matrix: `{rows, cols, q, entries}` with row-major entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub q: u64,
    pub entries: Vec<u64>,
}

impl MatrixDoc {
    pub fn from_matrix(fq: &PrimeField, m: &FieldMatrix<u64>) -> Self {
        Self {
            rows: m.rows,
            cols: m.cols,
            q: fq.q(),
            entries: m.data.clone(),
        }
    }

    pub fn to_matrix(&self) -> Result<(PrimeField, FieldMatrix<u64>)> {
        let fq = PrimeField::new(self.q)?;
        if self.entries.iter().any(|&e| e >= self.q) {
            return Err(Error::Format("matrix entry not reduced mod q".into()));
        }
        Ok((
            fq,
            FieldMatrix::new(self.rows, self.cols, self.entries.clone())?,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;
    use proptest::prelude::*;
    use rand_core::SeedableRng;

    fn f(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    #[test]
    fn identity_and_zero() {
        let fq = f(7);
        let id = FieldMatrix::identity(&fq, 4);
        let e = gaussian_elim(&fq, &id);
        assert_eq!((e.rank(), e.kernel_dim()), (4, 0));
        let z = FieldMatrix::zeros(&fq, 3, 5);
        let e = gaussian_elim(&fq, &z);
        assert_eq!((e.rank(), e.kernel_dim()), (0, 5));
        assert_eq!(e.kernel_basis(&fq).len(), 5);
    }

    #[test]
    fn hand_elimination_f5() {
        let fq = f(5);
        let m = FieldMatrix::from_rows(vec![vec![1, 2], vec![2, 4]]).unwrap();
        let e = gaussian_elim(&fq, &m);
        assert_eq!(e.rank(), 1);
        let ker = e.kernel_basis(&fq);
        assert_eq!(ker, vec![vec![3, 1]]);
    }

    #[test]
    fn solve_reports_inconsistency() {
        let fq = f(5);
        let m = FieldMatrix::from_rows(vec![vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(solve(&fq, &m, &[1, 2]).unwrap(), Some(vec![1, 0]));
        assert_eq!(solve(&fq, &m, &[1, 1]).unwrap(), None);
        assert!(solve(&fq, &m, &[1]).is_err());
        assert_eq!(solve_all(&fq, &m, &[1, 2], 100).unwrap().len(), 5);
    }

    #[test]
    fn random_invertible_contract() {
        let fq = f(3);
        let a = random_invertible(&fq, 5, &mut SplitMix64::seed_from_u64(3));
        let b = random_invertible(&fq, 5, &mut SplitMix64::seed_from_u64(3));
        assert_eq!(a, b);
        assert_eq!(a.rank(&fq), 5);
        let one = random_invertible(&fq, 1, &mut SplitMix64::seed_from_u64(1));
        assert_ne!(one[(0, 0)], 0);
        let inv = a.inverse(&fq).unwrap();
        assert_eq!(a.mul(&fq, &inv).unwrap(), FieldMatrix::identity(&fq, 5));
    }

    #[test]
    fn kronecker_examples() {
        let fq = f(3);
        let mut rng = SplitMix64::seed_from_u64(8);
        let a = FieldMatrix::from_fn(3, 4, |_, _| fq.random(&mut rng));
        let b = FieldMatrix::from_fn(2, 5, |_, _| fq.random(&mut rng));
        let k = kronecker(&fq, &a, &b);
        assert_eq!((k.rows(), k.cols()), (6, 20));
        assert_eq!(k.rank(&fq), a.rank(&fq) * b.rank(&fq));
        let id2 = FieldMatrix::identity(&fq, 2);
        assert_eq!(kronecker(&fq, &id2, &a).rank(&fq), 2 * a.rank(&fq));
        let lam = FieldMatrix::from_rows(vec![vec![2]]).unwrap();
        assert_eq!(kronecker(&fq, &lam, &b), b.scale(&fq, &2));
    }

    #[test]
    fn matricize_examples() {
        let m = matricize(&['a', 'b', 'c'], 2).unwrap();
        assert_eq!(
            m,
            FieldMatrix::from_rows(vec![vec!['a', 'b'], vec!['b', 'c']]).unwrap()
        );
        let mut unit = vec![0u64; 6];
        unit[pair_index(3, 0, 1)] = 1;
        let m = matricize(&unit, 3).unwrap();
        assert_eq!((m[(0, 1)], m[(1, 0)]), (1, 1));
        assert_eq!(m.data().iter().sum::<u64>(), 2);
        assert!(matricize(&[1u64, 2], 2).is_err());
    }

    #[test]
    fn matricize_of_outer_product() {
        let fq = f(7);
        let v = [3u64, 0, 5, 1];
        let outer = FieldMatrix::from_fn(4, 4, |r, c| fq.mul(&v[r], &v[c]));
        assert_eq!(matricize(&vectorize_upper(&outer), 4).unwrap(), outer);
    }

    #[test]
    fn rank_one_examples() {
        let fq = f(5);
        let s = FieldMatrix::from_rows(vec![vec![1, 2], vec![2, 4]]).unwrap();
        let d = rank_one_decompose(&fq, &s).unwrap();
        assert_eq!((d.v.clone(), d.mu), (vec![1, 2], 1));
        assert_eq!(d.w, Some(vec![1, 2]));
        assert!(rank_one_decompose(&fq, &FieldMatrix::zeros(&fq, 2, 2)).is_none());
        assert!(rank_one_decompose(&fq, &FieldMatrix::identity(&fq, 2)).is_none());
    }

    #[test]
    fn matrix_doc_round_trip() {
        let fq = f(3);
        let m = random_invertible(&fq, 3, &mut SplitMix64::seed_from_u64(5));
        let doc = MatrixDoc::from_matrix(&fq, &m);
        let json = serde_json::to_string(&doc).unwrap();
        let back: MatrixDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_matrix().unwrap().1, m);
    }

    fn arb_matrix(q: u64, max: usize) -> impl Strategy<Value = FieldMatrix<u64>> {
        (1..=max, 1..=max).prop_flat_map(move |(r, c)| {
            proptest::collection::vec(0..q, r * c)
                .prop_map(move |d| FieldMatrix::new(r, c, d).unwrap())
        })
    }

    proptest! {
        #[test]
        fn kernel_vectors_annihilate(m in arb_matrix(5, 7)) {
            let fq = f(5);
            let e = gaussian_elim(&fq, &m);
            prop_assert_eq!(e.rank() + e.kernel_dim(), m.cols());
            for v in e.kernel_basis(&fq) {
                prop_assert!(m.mul_vec(&fq, &v).unwrap().iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn rank_invariant_under_invertible_maps(m in arb_matrix(3, 6), seed in any::<u64>()) {
            let fq = f(3);
            let mut rng = SplitMix64::seed_from_u64(seed);
            let left = random_invertible(&fq, m.rows(), &mut rng);
            let right = random_invertible(&fq, m.cols(), &mut rng);
            let moved = left.mul(&fq, &m).unwrap().mul(&fq, &right).unwrap();
            prop_assert_eq!(moved.rank(&fq), m.rank(&fq));
            prop_assert_eq!(m.transpose().rank(&fq), m.rank(&fq));
        }

        #[test]
        fn rank_one_round_trip(v in proptest::collection::vec(0u64..7, 1..6), mu in 1u64..7) {
            let fq = f(7);
            prop_assume!(v.iter().any(|&x| x != 0));
            let s = FieldMatrix::from_fn(v.len(), v.len(), |r, c| fq.mul(&mu, &fq.mul(&v[r], &v[c])));
            let d = rank_one_decompose(&fq, &s).unwrap();
            let lead = v.iter().position(|&x| x != 0).unwrap();
            let lv = fq.inv(&v[lead]).unwrap();
            let normalized: Vec<u64> = v.iter().map(|x| fq.mul(x, &lv)).collect();
            prop_assert_eq!(&d.v, &normalized);
            prop_assert_eq!(d.mu, fq.mul(&mu, &fq.mul(&v[lead], &v[lead])));
            if let Some(w) = d.w {
                let ww = FieldMatrix::from_fn(v.len(), v.len(), |r, c| fq.mul(&w[r], &w[c]));
                prop_assert_eq!(ww, s);
            }
        }
    }
}
