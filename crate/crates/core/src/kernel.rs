//! Dense integer elimination kernels.
//!
//! Every routine is written once over [`Scalar`] and run first with `i128`
//! using checked arithmetic. If any step overflows, the same routine is
//! rerun over `BigInt`.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) trait Scalar: Clone + Eq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn cmp_abs(&self, other: &Self) -> Ordering;
    fn add(&self, other: &Self) -> Option<Self>;
    fn sub(&self, other: &Self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn div_floor(&self, other: &Self) -> Option<Self>;
    fn divides(&self, other: &Self) -> bool;
}

impl Scalar for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn add(&self, other: &Self) -> Option<Self> {
        self.checked_add(*other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn div_floor(&self, other: &Self) -> Option<Self> {
        if *self == i128::MIN && *other == -1 {
            return None;
        }
        Some(Integer::div_floor(self, other))
    }
    fn divides(&self, other: &Self) -> bool {
        if *self == 0 {
            *other == 0
        } else {
            other.checked_rem(*self).is_none_or(|r| r == 0)
        }
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn div_floor(&self, other: &Self) -> Option<Self> {
        Some(Integer::div_floor(self, other))
    }
    fn divides(&self, other: &Self) -> bool {
        if Zero::is_zero(self) {
            Zero::is_zero(other)
        } else {
            Zero::is_zero(&(other % self))
        }
    }
}

/// Row-major dense matrix used inside the kernels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Dense<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Scalar> Dense<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Dense { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] -= q * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: &T) -> Option<()> {
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if s.is_zero() {
                continue;
            }
            let v = self.data[dst * self.cols + j].sub(&q.mul(s)?)?;
            self.data[dst * self.cols + j] = v;
        }
        Some(())
    }

    /// col[dst] -= q * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, q: &T) -> Option<()> {
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if s.is_zero() {
                continue;
            }
            let v = self.data[i * self.cols + dst].sub(&q.mul(s)?)?;
            self.data[i * self.cols + dst] = v;
        }
        Some(())
    }

    fn negate_row(&mut self, r: usize) -> Option<()> {
        for j in 0..self.cols {
            let v = self.data[r * self.cols + j].neg()?;
            self.data[r * self.cols + j] = v;
        }
        Some(())
    }

    fn negate_col(&mut self, c: usize) -> Option<()> {
        for i in 0..self.rows {
            let v = self.data[i * self.cols + c].neg()?;
            self.data[i * self.cols + c] = v;
        }
        Some(())
    }

    pub fn mul(&self, other: &Self) -> Option<Self> {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k * other.cols + j];
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b)?)?;
                }
            }
        }
        Some(out)
    }
}

pub(crate) struct SnfOut<T> {
    /// Diagonal entries, `min(rows, cols)` of them.
    pub diag: Vec<T>,
    pub u: Dense<T>,
    pub u_inv: Dense<T>,
    pub v: Dense<T>,
}

/// Smith normal form with smallest-pivot selection. Returns `U, U^-1, V`
/// and the diagonal of `U A V`.
pub(crate) fn snf<T: Scalar>(mut a: Dense<T>) -> Option<SnfOut<T>> {
    let (m, n) = (a.rows, a.cols);
    let mut u = Dense::<T>::identity(m);
    let mut u_inv = Dense::<T>::identity(m);
    let mut v = Dense::<T>::identity(n);
    let steps = m.min(n);
    'outer: for t in 0..steps {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = a.at(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if x.cmp_abs(a.at(bi, bj)) != Ordering::Less => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else { break 'outer };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut dirty = false;
            for i in t + 1..m {
                if a.at(i, t).is_zero() {
                    continue;
                }
                let q = a.at(i, t).div_floor(a.at(t, t))?;
                a.row_axpy(i, t, &q)?;
                u.row_axpy(i, t, &q)?;
                let nq = q.neg()?;
                u_inv.col_axpy(t, i, &nq)?;
                dirty |= !a.at(i, t).is_zero();
            }
            for j in t + 1..n {
                if a.at(t, j).is_zero() {
                    continue;
                }
                let q = a.at(t, j).div_floor(a.at(t, t))?;
                a.col_axpy(j, t, &q)?;
                v.col_axpy(j, t, &q)?;
                dirty |= !a.at(t, j).is_zero();
            }
            if dirty {
                continue;
            }
            let p = a.at(t, t).clone();
            let mut bad_row = None;
            'search: for i in t + 1..m {
                for j in t + 1..n {
                    if !p.divides(a.at(i, j)) {
                        bad_row = Some(i);
                        break 'search;
                    }
                }
            }
            match bad_row {
                Some(i) => {
                    let minus_one = T::one().neg()?;
                    a.row_axpy(t, i, &minus_one)?;
                    u.row_axpy(t, i, &minus_one)?;
                    u_inv.col_axpy(i, t, &T::one())?;
                }
                None => break,
            }
        }
        if a.at(t, t).is_negative() {
            a.negate_row(t)?;
            u.negate_row(t)?;
            u_inv.negate_col(t)?;
        }
    }
    let diag = (0..steps).map(|i| a.at(i, i).clone()).collect();
    Some(SnfOut { diag, u, u_inv, v })
}

pub(crate) struct Echelon<T> {
    /// `h = a * v`, in column echelon form.
    pub h: Dense<T>,
    pub v: Dense<T>,
    /// Pivot row of each of the first `rank` columns, strictly increasing.
    pub pivots: Vec<usize>,
}

impl<T> Echelon<T> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Column echelon form `H = A V` with `V` unimodular. With `reduce` the
/// entries left of each pivot are brought into `[0, pivot)`, which makes
/// `H` the canonical Hermite basis of the column lattice.
pub(crate) fn col_echelon<T: Scalar>(a: Dense<T>, reduce: bool) -> Option<Echelon<T>> {
    let (m, n) = (a.rows, a.cols);
    let mut h = a;
    let mut v = Dense::<T>::identity(n);
    let mut pivots = Vec::new();
    let mut k = 0;
    for i in 0..m {
        if k == n {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for j in k..n {
                let x = h.at(i, j);
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some(b) if x.cmp_abs(h.at(i, b)) != Ordering::Less => {}
                    _ => best = Some(j),
                }
            }
            let Some(j) = best else { break };
            h.swap_cols(k, j);
            v.swap_cols(k, j);
            let mut done = true;
            for j in k + 1..n {
                if h.at(i, j).is_zero() {
                    continue;
                }
                let q = h.at(i, j).div_floor(h.at(i, k))?;
                h.col_axpy(j, k, &q)?;
                v.col_axpy(j, k, &q)?;
                done &= h.at(i, j).is_zero();
            }
            if done {
                break;
            }
        }
        if h.at(i, k).is_zero() {
            continue;
        }
        if h.at(i, k).is_negative() {
            h.negate_col(k)?;
            v.negate_col(k)?;
        }
        if reduce {
            for j in 0..k {
                if h.at(i, j).is_zero() {
                    continue;
                }
                let q = h.at(i, j).div_floor(h.at(i, k))?;
                h.col_axpy(j, k, &q)?;
                v.col_axpy(j, k, &q)?;
            }
        }
        pivots.push(i);
        k += 1;
    }
    Some(Echelon { h, v, pivots })
}

/// Solves `A z = b` given the echelon form of `A`; `Ok(None)` if no integer
/// solution exists.
pub(crate) fn echelon_solve<T: Scalar>(e: &Echelon<T>, b: &[T]) -> Option<Option<Vec<T>>> {
    let m = e.h.rows;
    let mut r: Vec<T> = b.to_vec();
    let mut w: Vec<T> = Vec::with_capacity(e.rank());
    let mut next_row = 0;
    for (k, &pi) in e.pivots.iter().enumerate() {
        for x in &r[next_row..pi] {
            if !x.is_zero() {
                return Some(None);
            }
        }
        let p = e.h.at(pi, k);
        if !p.divides(&r[pi]) {
            return Some(None);
        }
        let c = r[pi].div_floor(p)?;
        if !c.is_zero() {
            for (i, ri) in r.iter_mut().enumerate().take(m).skip(pi) {
                let hv = e.h.at(i, k);
                if !hv.is_zero() {
                    *ri = ri.sub(&c.mul(hv)?)?;
                }
            }
        }
        w.push(c);
        next_row = pi + 1;
    }
    if r[next_row..].iter().any(|x| !x.is_zero()) {
        return Some(None);
    }
    let n = e.v.cols;
    let mut z = vec![T::zero(); n];
    for (k, c) in w.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (i, zi) in z.iter_mut().enumerate() {
            let vv = e.v.at(i, k);
            if !vv.is_zero() {
                *zi = zi.add(&c.mul(vv)?)?;
            }
        }
    }
    Some(Some(z))
}

/// Reduces `x` modulo the lattice spanned by the columns of a reduced
/// echelon form, giving the canonical coset representative.
pub(crate) fn echelon_reduce<T: Scalar>(h: &Dense<T>, pivots: &[usize], x: &mut [T]) -> Option<()> {
    for (k, &pi) in pivots.iter().enumerate() {
        let p = h.at(pi, k);
        if x[pi].is_zero() {
            continue;
        }
        let q = x[pi].div_floor(p)?;
        if q.is_zero() {
            continue;
        }
        for (i, xi) in x.iter_mut().enumerate().skip(pi) {
            let hv = h.at(i, k);
            if !hv.is_zero() {
                *xi = xi.sub(&q.mul(hv)?)?;
            }
        }
    }
    Some(())
}

/// Determinant by fraction-free Bareiss elimination.
pub(crate) fn determinant(mut a: Dense<BigInt>) -> BigInt {
    let n = a.rows;
    if n == 0 {
        return <BigInt as One>::one();
    }
    let mut sign = <BigInt as One>::one();
    let mut prev = <BigInt as One>::one();
    for k in 0..n - 1 {
        if Zero::is_zero(a.at(k, k)) {
            let Some(r) = (k + 1..n).find(|&r| !Zero::is_zero(a.at(r, k))) else {
                return <BigInt as Zero>::zero();
            };
            a.swap_rows(k, r);
            sign = -sign;
        }
        let pivot = a.at(k, k).clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let val = (a.at(i, j) * &pivot - a.at(i, k) * a.at(k, j)) / &prev;
                a.data[i * n + j] = val;
            }
        }
        prev = pivot;
    }
    sign * a.at(n - 1, n - 1).clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(rows: usize, cols: usize, v: &[i128]) -> Dense<i128> {
        Dense { rows, cols, data: v.to_vec() }
    }

    #[test]
    fn snf_small() {
        let out = snf(dense(2, 2, &[2, 4, 6, 8])).unwrap();
        assert_eq!(out.diag, vec![2, 4]);
        let a = dense(2, 2, &[2, 4, 6, 8]);
        let d = out.u.mul(&a).unwrap().mul(&out.v).unwrap();
        assert_eq!(d.data, vec![2, 0, 0, 4]);
        assert_eq!(out.u.mul(&out.u_inv).unwrap(), Dense::identity(2));
    }

    #[test]
    fn overflow_is_reported() {
        let big = i128::MAX / 2;
        let a = dense(2, 2, &[big, big - 1, big - 3, big]);
        // Either the i128 run succeeds exactly or it reports overflow.
        if let Some(out) = snf(a.clone()) {
            let d = out.u.mul(&a).and_then(|x| x.mul(&out.v));
            if let Some(d) = d {
                assert!(d.data[1] == 0 && d.data[2] == 0);
            }
        }
    }

    #[test]
    fn echelon_solves_and_reduces() {
        // columns (2, 0), (0, 3)
        let e = col_echelon(dense(2, 2, &[2, 0, 0, 3]), true).unwrap();
        assert_eq!(echelon_solve(&e, &[4, 9]).unwrap(), Some(vec![2, 3]));
        assert_eq!(echelon_solve(&e, &[1, 0]).unwrap(), None);
        let mut x = vec![5, -7];
        echelon_reduce(&e.h, &e.pivots, &mut x).unwrap();
        assert_eq!(x, vec![1, 2]);
    }

    #[test]
    fn bareiss() {
        let a = Dense { rows: 3, cols: 3, data: [1, 2, 3, 0, 1, 4, 5, 6, 0].iter().map(|&x| BigInt::from(x)).collect() };
        assert_eq!(determinant(a), BigInt::from(1));
    }
}
