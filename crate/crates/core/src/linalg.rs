//! Exact linear algebra over Q and Q(mu_N).

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cyclo::{CycContext, CycNum};
use crate::error::{Error, Result};

pub trait Field {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Inverse of a nonzero element.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// Rough size used to rank pivot candidates; `0` for `+-1`.
    fn weight(&self, a: &Self::Elem) -> u64;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn weight(&self, a: &BigRational) -> u64 {
        if a.abs().is_one() {
            0
        } else {
            a.numer().bits() + a.denom().bits()
        }
    }
}

impl Field for CycContext {
    type Elem = CycNum;

    fn zero(&self) -> CycNum {
        CycContext::zero(self)
    }
    fn one(&self) -> CycNum {
        CycContext::one(self)
    }
    fn is_zero(&self, a: &CycNum) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &CycNum, b: &CycNum) -> CycNum {
        a + b
    }
    fn sub(&self, a: &CycNum, b: &CycNum) -> CycNum {
        a - b
    }
    fn mul(&self, a: &CycNum, b: &CycNum) -> CycNum {
        CycContext::mul(self, a, b)
    }
    fn neg(&self, a: &CycNum) -> CycNum {
        -a
    }
    fn inv(&self, a: &CycNum) -> CycNum {
        CycContext::inv(self, a).expect("pivot is nonzero")
    }
    fn weight(&self, a: &CycNum) -> u64 {
        match a.to_rational() {
            Some(r) if r.abs().is_one() => 0,
            Some(_) => a.bits(),
            None => a.bits() + 1_000,
        }
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<E>>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, v: E) -> Self {
        Matrix { rows, cols, data: vec![vec![v; cols]; rows] }
    }

    pub fn from_rows(cols: usize, data: Vec<Vec<E>>) -> Result<Self> {
        if let Some(r) = data.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!("row of length {} in a matrix with {} columns", r.len(), cols)));
        }
        Ok(Matrix { rows: data.len(), cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i]
    }

    pub fn into_rows(self) -> Vec<Vec<E>> {
        self.data
    }
}

impl Matrix<BigRational> {
    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::filled(n, n, BigRational::zero());
        for i in 0..n {
            m.data[i][i] = BigRational::one();
        }
        m
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows.iter().map(|r| r.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect()).collect();
        Matrix::from_rows(cols, data).expect("rows of equal length")
    }
}

pub fn mat_mul<F: Field>(field: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch(format!("{}x{} times {}x{}", a.rows, a.cols, b.rows, b.cols)));
    }
    let mut out = Matrix::filled(a.rows, b.cols, field.zero());
    for i in 0..a.rows {
        for k in 0..a.cols {
            if field.is_zero(&a.data[i][k]) {
                continue;
            }
            for j in 0..b.cols {
                if !field.is_zero(&b.data[k][j]) {
                    let p = field.mul(&a.data[i][k], &b.data[k][j]);
                    out.data[i][j] = field.add(&out.data[i][j], &p);
                }
            }
        }
    }
    Ok(out)
}

pub fn mat_vec<F: Field>(field: &F, a: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    a.data
        .iter()
        .map(|row| {
            row.iter().zip(v).fold(field.zero(), |acc, (x, y)| {
                if field.is_zero(x) || field.is_zero(y) {
                    acc
                } else {
                    field.add(&acc, &field.mul(x, y))
                }
            })
        })
        .collect()
}

/// Reduced row echelon form and its pivot columns.
///
/// Among the candidate rows of a column the pivot of smallest weight is used,
/// so `+-1` entries are taken whenever available.
pub fn rref<F: Field>(field: &F, m: &Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let best = (r..a.rows)
            .filter(|&i| !field.is_zero(&a.data[i][c]))
            .min_by_key(|&i| field.weight(&a.data[i][c]));
        let Some(p) = best else { continue };
        a.data.swap(r, p);
        let inv = field.inv(&a.data[r][c]);
        for x in a.data[r].iter_mut() {
            if !field.is_zero(x) {
                *x = field.mul(x, &inv);
            }
        }
        let pivot_row = a.data[r].clone();
        for i in 0..a.rows {
            if i == r || field.is_zero(&a.data[i][c]) {
                continue;
            }
            let k = a.data[i][c].clone();
            for (x, y) in a.data[i].iter_mut().zip(&pivot_row) {
                if !field.is_zero(y) {
                    *x = field.sub(x, &field.mul(&k, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    rref(field, m).1.len()
}

fn kernel_from_rref<F: Field>(field: &F, rows: &[Vec<F::Elem>], pivots: &[usize], cols: usize) -> Vec<Vec<F::Elem>> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![field.zero(); cols];
            v[f] = field.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = field.neg(&rows[i][f]);
            }
            v
        })
        .collect()
}

/// Kernel basis with one vector per free column: `1` at its free column, `0`
/// at the other free columns.
pub fn kernel_basis<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let (r, pivots) = rref(field, m);
    kernel_from_rref(field, &r.data, &pivots, m.cols)
}

/// Row-by-row elimination for tall sparse systems.
///
/// Rows are reduced against the current echelon rows as they arrive; only
/// independent rows are kept, so memory stays bounded by the column count.
pub struct SparseEliminator<'f, F: Field> {
    field: &'f F,
    cols: usize,
    /// Pivot column -> normalized row (sparse, pivot entry is 1).
    rows: BTreeMap<usize, BTreeMap<usize, F::Elem>>,
}

impl<'f, F: Field> SparseEliminator<'f, F> {
    pub fn new(field: &'f F, cols: usize) -> Self {
        SparseEliminator { field, cols, rows: BTreeMap::new() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Add the row `sum v_j e_j`; returns whether it raised the rank.
    pub fn add_row(&mut self, entries: impl IntoIterator<Item = (usize, F::Elem)>) -> bool {
        let f = self.field;
        let mut row: BTreeMap<usize, F::Elem> = BTreeMap::new();
        for (j, v) in entries {
            assert!(j < self.cols, "column {} out of range", j);
            if f.is_zero(&v) {
                continue;
            }
            let e = row.entry(j).or_insert_with(|| f.zero());
            *e = f.add(e, &v);
        }
        row.retain(|_, v| !f.is_zero(v));
        loop {
            let Some((&lead, lead_val)) = row.iter().next() else { return false };
            match self.rows.get(&lead) {
                Some(basis) => {
                    let k = lead_val.clone();
                    for (&j, b) in basis {
                        let e = row.entry(j).or_insert_with(|| f.zero());
                        *e = f.sub(e, &f.mul(&k, b));
                        if f.is_zero(e) {
                            row.remove(&j);
                        }
                    }
                }
                None => {
                    let inv = f.inv(lead_val);
                    for v in row.values_mut() {
                        *v = f.mul(v, &inv);
                    }
                    self.rows.insert(lead, row);
                    return true;
                }
            }
        }
    }

    /// Fully reduced rows in pivot order.
    fn reduced(&self) -> (Vec<usize>, Vec<Vec<F::Elem>>) {
        let f = self.field;
        let pivots: Vec<usize> = self.rows.keys().copied().collect();
        let mut dense: Vec<Vec<F::Elem>> = self
            .rows
            .values()
            .map(|r| {
                let mut v = vec![f.zero(); self.cols];
                for (&j, x) in r {
                    v[j] = x.clone();
                }
                v
            })
            .collect();
        for i in (0..pivots.len()).rev() {
            let p = pivots[i];
            let pivot_row = dense[i].clone();
            for row in dense.iter_mut().take(i) {
                if f.is_zero(&row[p]) {
                    continue;
                }
                let k = row[p].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !f.is_zero(y) {
                        *x = f.sub(x, &f.mul(&k, y));
                    }
                }
            }
        }
        (pivots, dense)
    }

    /// Non-pivot columns in increasing order; kernel vector `i` is 1 at the
    /// `i`-th of them and 0 at the others.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.cols).filter(|j| !self.rows.contains_key(j)).collect()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let (pivots, dense) = self.reduced();
        kernel_from_rref(self.field, &dense, &pivots, self.cols)
    }
}

/// Basis of the common fixed space `cap ker(A_i - I)`.
pub fn invariant_subspace(ops: &[Matrix<BigRational>]) -> Result<Vec<Vec<BigRational>>> {
    let Some(first) = ops.first() else {
        return Err(Error::DimensionMismatch("no operators".into()));
    };
    let n = first.rows;
    if ops.iter().any(|a| a.rows != n || a.cols != n) {
        return Err(Error::DimensionMismatch("operators must be square of equal size".into()));
    }
    let mut elim = SparseEliminator::new(&Rationals, n);
    for a in ops {
        for i in 0..n {
            let row = (0..n).map(|j| {
                let v = if i == j { &a.data[i][j] - BigRational::one() } else { a.data[i][j].clone() };
                (j, v)
            });
            elim.add_row(row);
        }
    }
    Ok(elim.kernel_basis())
}

/// Coordinates of a field element in the power basis, as rationals.
fn coords(a: &CycNum) -> Vec<BigRational> {
    a.coeffs()
}

/// Q-index of the basis vector `zeta^i (x) b_j` in the restricted space.
pub fn restricted_index(phi: usize, i: usize, j: usize) -> usize {
    j * phi + i
}

/// A vector over Q(mu_N) written over Q in the basis `zeta^i (x) b_j`.
pub fn restrict_vector(ctx: &CycContext, v: &[CycNum]) -> Vec<BigRational> {
    let phi = ctx.phi();
    let mut out = vec![BigRational::zero(); phi * v.len()];
    for (j, x) in v.iter().enumerate() {
        for (i, c) in coords(x).into_iter().enumerate() {
            out[restricted_index(phi, i, j)] = c;
        }
    }
    out
}

/// Inverse of `restrict_vector`.
pub fn extend_vector(ctx: &CycContext, v: &[BigRational]) -> Result<Vec<CycNum>> {
    let phi = ctx.phi();
    if v.len() % phi != 0 {
        return Err(Error::DimensionMismatch(format!("length {} is not a multiple of {}", v.len(), phi)));
    }
    Ok(v.chunks(phi).map(CycNum::from_coeffs).collect())
}

/// Q-matrix of the sigma_k-semilinear map `r (x) b_j -> sigma_k(r) sum_j' A[j'][j] b_j'`
/// on `Q(mu_N) (x) V`, where `A` is the Q-matrix of a linear map of `V`.
pub fn semilinear_matrix(ctx: &CycContext, k: u32, a: &Matrix<BigRational>) -> Result<Matrix<BigRational>> {
    if a.rows != a.cols {
        return Err(Error::DimensionMismatch("square matrix expected".into()));
    }
    let (phi, dim) = (ctx.phi(), a.rows);
    let mut m = Matrix::filled(phi * dim, phi * dim, BigRational::zero());
    for i in 0..phi {
        let z = coords(&ctx.zeta_power(i as i64 * k as i64));
        for j in 0..dim {
            let col = restricted_index(phi, i, j);
            for (i2, zc) in z.iter().enumerate() {
                if zc.is_zero() {
                    continue;
                }
                for j2 in 0..dim {
                    if !a.data[j2][j].is_zero() {
                        m.data[restricted_index(phi, i2, j2)][col] = zc * &a.data[j2][j];
                    }
                }
            }
        }
    }
    Ok(m)
}

/// Q-matrix of multiplication by `c` on `Q(mu_N)^dim`.
pub fn scalar_matrix(ctx: &CycContext, c: &CycNum, dim: usize) -> Matrix<BigRational> {
    let phi = ctx.phi();
    let mut m = Matrix::filled(phi * dim, phi * dim, BigRational::zero());
    for i in 0..phi {
        let img = coords(&ctx.mul(c, &ctx.zeta_power(i as i64)));
        for j in 0..dim {
            for (i2, v) in img.iter().enumerate() {
                m.data[restricted_index(phi, i2, j)][restricted_index(phi, i, j)] = v.clone();
            }
        }
    }
    m
}
