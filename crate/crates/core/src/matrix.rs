use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::kernel::{self, Dense};

/// Arbitrary-precision integer matrix in row-major order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// Smith normal form `U * M * V = D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// Diagonal entries of `D`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Column echelon form `H = M * V` with the pivot row of each nonzero column.
#[derive(Clone, Debug)]
pub struct ColumnEchelon {
    pub h: IntMatrix,
    pub v: IntMatrix,
    pub pivots: Vec<usize>,
}

impl ColumnEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Integer solution of `M z = b`, if one exists.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.h.rows);
        if let (Some(h), Some(v)) = (self.h.to_small(), self.v.to_small()) {
            if let Some(bs) = b.iter().map(|x| x.to_i128()).collect::<Option<Vec<_>>>() {
                let e = kernel::Echelon { h, v, pivots: self.pivots.clone() };
                if let Some(r) = kernel::echelon_solve(&e, &bs) {
                    return r.map(|z| z.into_iter().map(BigInt::from).collect());
                }
            }
        }
        let e = kernel::Echelon { h: self.h.to_dense(), v: self.v.to_dense(), pivots: self.pivots.clone() };
        kernel::echelon_solve(&e, b).expect("bigint arithmetic does not overflow")
    }

    /// Basis of the integer kernel of `M`, as columns.
    pub fn kernel_basis(&self) -> IntMatrix {
        self.v.select_cols(self.rank()..self.v.cols)
    }

    /// The nonzero columns of `H`, a basis of the column lattice of `M`.
    pub fn image_basis(&self) -> IntMatrix {
        self.h.select_cols(0..self.rank())
    }

    /// Canonical representative of `x` modulo the column lattice. Only
    /// meaningful for reduced echelon forms.
    pub fn reduce(&self, x: &mut [BigInt]) {
        reduce_mod_lattice(&self.h, &self.pivots, x);
    }
}

/// Reduces `x` modulo the lattice whose reduced echelon basis is the first
/// `pivots.len()` columns of `h`.
pub(crate) fn reduce_mod_lattice(h: &IntMatrix, pivots: &[usize], x: &mut [BigInt]) {
    reduce_mod_small_lattice(h, h.to_small().as_ref(), pivots, x)
}

/// As [`reduce_mod_lattice`], with the machine-word copy of `h` (if it has
/// one) computed ahead of time.
pub(crate) fn reduce_mod_small_lattice(h: &IntMatrix, small: Option<&Dense<i128>>, pivots: &[usize], x: &mut [BigInt]) {
    if x.is_empty() || pivots.is_empty() {
        return;
    }
    if let Some(hs) = small {
        if let Some(mut xs) = x.iter().map(|v| v.to_i128()).collect::<Option<Vec<_>>>() {
            if kernel::echelon_reduce(hs, pivots, &mut xs).is_some() {
                for (d, s) in x.iter_mut().zip(xs) {
                    *d = BigInt::from(s);
                }
                return;
            }
        }
    }
    kernel::echelon_reduce(&h.to_dense(), pivots, x).expect("bigint arithmetic does not overflow");
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count does not match dimensions");
        IntMatrix { rows, cols, data }
    }

    /// Builds a matrix from rows of anything convertible to `BigInt`. The
    /// column count must be given because a matrix may have no rows.
    pub fn from_rows<T: Clone + Into<BigInt>>(cols: usize, rows: &[&[T]]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r.iter().cloned().map(Into::into));
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let cols = columns.len();
        let mut m = Self::zeros(rows, cols);
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                m.data[i * cols + j] = x.clone();
            }
        }
        m
    }

    pub fn column_vector(v: &[BigInt]) -> Self {
        Self::from_columns(v.len(), &[v.to_vec()])
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.data[i * self.cols + j].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[j * self.rows + i] = self.data[i * self.cols + j].clone();
            }
        }
        m
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        if let (Some(a), Some(b)) = (self.to_small(), other.to_small()) {
            if let Some(c) = a.mul(&b) {
                return Self::from_small(c);
            }
        }
        Self::from_dense(self.to_dense().mul(&other.to_dense()).expect("bigint arithmetic does not overflow"))
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        let mut out = vec![BigInt::zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = &self.data[i * self.cols + j];
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch in sum");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch in difference");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        IntMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    /// `[A | B | ...]`; all blocks must have `rows` rows.
    pub fn hstack(rows: usize, blocks: &[&IntMatrix]) -> IntMatrix {
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "row mismatch in hstack");
            for i in 0..rows {
                for j in 0..b.cols {
                    m.data[i * cols + off + j] = b.data[i * b.cols + j].clone();
                }
            }
            off += b.cols;
        }
        m
    }

    /// Blocks stacked vertically; all must have `cols` columns.
    pub fn vstack(cols: usize, blocks: &[&IntMatrix]) -> IntMatrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "column mismatch in vstack");
            data.extend(b.data.iter().cloned());
            rows += b.rows;
        }
        IntMatrix { rows, cols, data }
    }

    pub fn block_diag(blocks: &[&IntMatrix]) -> IntMatrix {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &IntMatrix) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols, "block out of range");
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = b.data[i * b.cols + j].clone();
            }
        }
    }

    pub fn select_cols(&self, range: core::ops::Range<usize>) -> IntMatrix {
        let cols = range.len();
        let mut m = Self::zeros(self.rows, cols);
        for i in 0..self.rows {
            for (jj, j) in range.clone().enumerate() {
                m.data[i * cols + jj] = self.data[i * self.cols + j].clone();
            }
        }
        m
    }

    pub fn select_rows(&self, range: core::ops::Range<usize>) -> IntMatrix {
        let rows = range.len();
        let data = self.data[range.start * self.cols..range.end * self.cols].to_vec();
        IntMatrix { rows, cols: self.cols, data }
    }

    /// Kronecker product.
    pub fn kron(&self, other: &IntMatrix) -> IntMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut m = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self.data[i * self.cols + j];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        m.data[(i * other.rows + k) * cols + j * other.cols + l] = a * &other.data[k * other.cols + l];
                    }
                }
            }
        }
        m
    }

    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        kernel::determinant(self.to_dense())
    }

    pub fn snf(&self) -> Snf {
        let (diag, u, u_inv, v) = match self.to_small().and_then(kernel::snf) {
            Some(o) => (
                o.diag.into_iter().map(BigInt::from).collect::<Vec<_>>(),
                Self::from_small(o.u),
                Self::from_small(o.u_inv),
                Self::from_small(o.v),
            ),
            None => {
                let o = kernel::snf(self.to_dense()).expect("bigint arithmetic does not overflow");
                (o.diag, Self::from_dense(o.u), Self::from_dense(o.u_inv), Self::from_dense(o.v))
            }
        };
        let d = Self::diagonal(self.rows, self.cols, &diag);
        Snf { u, u_inv, d, v }
    }

    /// Column echelon form; with `reduce` it is the canonical Hermite basis.
    pub fn column_echelon(&self, reduce: bool) -> ColumnEchelon {
        match self.to_small().and_then(|a| kernel::col_echelon(a, reduce)) {
            Some(e) => ColumnEchelon { h: Self::from_small(e.h), v: Self::from_small(e.v), pivots: e.pivots },
            None => {
                let e = kernel::col_echelon(self.to_dense(), reduce).expect("bigint arithmetic does not overflow");
                ColumnEchelon { h: Self::from_dense(e.h), v: Self::from_dense(e.v), pivots: e.pivots }
            }
        }
    }

    /// Basis of `{z : M z = 0}` as columns.
    pub fn kernel_basis(&self) -> IntMatrix {
        self.column_echelon(false).kernel_basis()
    }

    /// Canonical Hermite basis of the column lattice.
    pub fn hermite_basis(&self) -> IntMatrix {
        self.column_echelon(true).image_basis()
    }

    pub(crate) fn to_small(&self) -> Option<Dense<i128>> {
        let data = self.data.iter().map(|x| x.to_i128()).collect::<Option<Vec<_>>>()?;
        Some(Dense { rows: self.rows, cols: self.cols, data })
    }

    pub(crate) fn from_small(d: Dense<i128>) -> Self {
        IntMatrix { rows: d.rows, cols: d.cols, data: d.data.into_iter().map(BigInt::from).collect() }
    }

    pub(crate) fn to_dense(&self) -> Dense<BigInt> {
        Dense { rows: self.rows, cols: self.cols, data: self.data.clone() }
    }

    pub(crate) fn from_dense(d: Dense<BigInt>) -> Self {
        IntMatrix { rows: d.rows, cols: d.cols, data: d.data }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Shorthand for building small test and example matrices.
#[macro_export]
macro_rules! imat {
    ($cols:expr; $([$($x:expr),* $(,)?]),* $(,)?) => {
        $crate::IntMatrix::from_rows::<i64>($cols, &[$(&[$($x),*]),*])
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Invariant factors by the classical gcd-of-minors characterization,
    /// computed independently of the elimination routine.
    fn minors_oracle(m: &IntMatrix) -> Vec<BigInt> {
        use num_integer::Integer;
        let r = m.rows().min(m.cols());
        let mut out = Vec::new();
        let mut prev = BigInt::one();
        for k in 1..=r {
            let mut g = BigInt::zero();
            for rows in subsets(m.rows(), k) {
                for cols in subsets(m.cols(), k) {
                    let mut sub = IntMatrix::zeros(k, k);
                    for (a, &i) in rows.iter().enumerate() {
                        for (b, &j) in cols.iter().enumerate() {
                            sub[(a, b)] = m[(i, j)].clone();
                        }
                    }
                    g = g.gcd(&sub.determinant());
                }
            }
            if g.is_zero() {
                out.push(BigInt::zero());
                prev = BigInt::zero();
            } else {
                out.push(&g / &prev);
                prev = g;
            }
        }
        out
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut with = subsets(n - 1, k - 1);
        for s in &mut with {
            s.push(n - 1);
        }
        let mut without = subsets(n - 1, k);
        without.extend(with);
        without
    }

    #[test]
    fn snf_of_two_by_two() {
        let m = imat![2; [2, 4], [6, 8]];
        let s = m.snf();
        assert_eq!(s.diagonal(), big(&[2, 4]));
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        assert_eq!(minors_oracle(&m), big(&[2, 4]));
    }

    #[test]
    fn snf_identity_and_zero() {
        let i3 = IntMatrix::identity(3);
        let s = i3.snf();
        assert!(s.u.is_identity() && s.v.is_identity() && s.d.is_identity());
        let z = imat![1; [0]];
        let s = z.snf();
        assert!(s.u.is_identity() && s.v.is_identity());
        assert_eq!(s.d, z);
    }

    #[test]
    fn empty_matrices_are_legal() {
        let m = IntMatrix::zeros(2, 0);
        let s = m.snf();
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.v.rows(), 0);
        assert_eq!(m.kernel_basis().cols(), 0);
        let m = IntMatrix::zeros(0, 3);
        assert_eq!(m.kernel_basis(), IntMatrix::identity(3));
    }

    #[test]
    fn bigint_fallback() {
        let huge = BigInt::from(i128::MAX) * BigInt::from(3);
        let m = IntMatrix::from_vec(2, 2, vec![huge.clone(), BigInt::from(2), BigInt::from(4), huge.clone()]);
        let s = m.snf();
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(2));
        let d = s.diagonal();
        assert!((&d[1] % &d[0]).is_zero());
    }

    #[test]
    fn hermite_basis_is_canonical() {
        let a = imat![2; [2, 4], [0, 6]];
        let b = imat![3; [6, 2, 8], [6, 0, 6]];
        assert_eq!(a.hermite_basis(), b.hermite_basis());
    }

    #[test]
    fn kronecker() {
        let a = imat![2; [1, 2]];
        let b = imat![1; [3], [4]];
        assert_eq!(a.kron(&b), imat![2; [3, 6], [4, 8]]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn matrix() -> impl Strategy<Value = IntMatrix> {
            (0usize..5, 0usize..5).prop_flat_map(|(r, c)| {
                proptest::collection::vec(-9i64..=9, r * c)
                    .prop_map(move |v| IntMatrix::from_vec(r, c, v.into_iter().map(BigInt::from).collect()))
            })
        }

        proptest! {
            #[test]
            fn snf_round_trip(m in matrix()) {
                let s = m.snf();
                prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
                prop_assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(m.rows()));
                let du = s.u.determinant();
                let dv = s.v.determinant();
                prop_assert!(du == BigInt::one() || du == -BigInt::one());
                prop_assert!(dv == BigInt::one() || dv == -BigInt::one());
                let d = s.diagonal();
                for w in d.windows(2) {
                    prop_assert!(w[0] >= BigInt::zero());
                    if w[0].is_zero() {
                        prop_assert!(w[1].is_zero());
                    } else {
                        prop_assert!((&w[1] % &w[0]).is_zero());
                    }
                }
            }

            #[test]
            fn snf_matches_minors(m in matrix()) {
                prop_assert_eq!(m.snf().diagonal(), minors_oracle(&m));
            }

            #[test]
            fn echelon_solves(m in matrix(), seed in proptest::collection::vec(-5i64..=5, 0..5)) {
                let z: Vec<BigInt> = (0..m.cols()).map(|i| BigInt::from(*seed.get(i).unwrap_or(&1))).collect();
                let b = m.mul_vec(&z);
                let e = m.column_echelon(false);
                let sol = e.solve(&b).expect("consistent system");
                prop_assert_eq!(m.mul_vec(&sol), b);
                let k = e.kernel_basis();
                prop_assert!(m.mul(&k).is_zero());
            }
        }
    }
}
