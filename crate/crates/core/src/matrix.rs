//! Dense matrices over a [`Ring`].

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::scalars::{Ring, Q};

#[derive(Clone, PartialEq)]
pub struct Mat<S> {
    r: usize,
    c: usize,
    data: Vec<S>,
}

impl<S: Ring> Mat<S> {
    pub fn zeros(r: usize, c: usize) -> Self {
        Mat { r, c, data: vec![S::zero(); r * c] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diag(&vec![S::one(); n])
    }

    pub fn diag(d: &[S]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn from_fn(r: usize, c: usize, f: impl Fn(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(r * c);
        for i in 0..r {
            for j in 0..c {
                data.push(f(i, j));
            }
        }
        Mat { r, c, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat { r, c, data: rows.into_iter().flatten().collect() }
    }

    /// Single nonzero entry `x` at (i, j).
    pub fn unit(n: usize, i: usize, j: usize, x: S) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = x;
        m
    }

    pub fn rows(&self) -> usize {
        self.r
    }

    pub fn cols(&self) -> usize {
        self.c
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<S> {
        self.data[i * self.c..(i + 1) * self.c].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<S> {
        (0..self.r).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T) -> Mat<T> {
        Mat { r: self.r, c: self.c, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<T: Ring, E>(&self, f: impl Fn(&S) -> Result<T, E>) -> Result<Mat<T>, E> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>, E>>()?;
        Ok(Mat { r: self.r, c: self.c, data })
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.r, self.c), (o.r, o.c), "shape mismatch");
        Mat {
            r: self.r,
            c: self.c,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.r, self.c), (o.r, o.c), "shape mismatch");
        Mat {
            r: self.r,
            c: self.c,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.neg())
    }

    pub fn scale(&self, k: &S) -> Self {
        self.map(|x| x.mul(k))
    }

    pub fn scale_q(&self, k: &Q) -> Self {
        self.map(|x| x.scale_q(k))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.c, o.r, "shape mismatch");
        let mut out = Self::zeros(self.r, o.c);
        for i in 0..self.r {
            for k in 0..self.c {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.c {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.c, v.len(), "shape mismatch");
        (0..self.r)
            .map(|i| {
                let mut s = S::zero();
                for (j, x) in v.iter().enumerate() {
                    s = s.add(&self[(i, j)].mul(x));
                }
                s
            })
            .collect()
    }

    /// [self, o] = self·o − o·self.
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    /// self·o + o·self.
    pub fn anticommutator(&self, o: &Self) -> Self {
        self.mul(o).add(&o.mul(self))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.r);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.c, self.r, |i, j| self[(j, i)].clone())
    }

    pub fn trace(&self) -> S {
        let mut s = S::zero();
        for i in 0..self.r.min(self.c) {
            s = s.add(&self[(i, i)]);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.r).all(|i| (0..self.c).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// Gauss–Jordan inverse. Pivots must be units of the ring; over ℏ-adic
    /// rings that means a nonzero ℏ⁰ part, which is exactly invertibility.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.r, self.c, "inverse of a non-square matrix");
        let n = self.r;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let (p, pinv) = (col..n).find_map(|i| a[(i, col)].try_inv().map(|x| (i, x)))?;
            if p != col {
                a.swap_rows(p, col);
                inv.swap_rows(p, col);
            }
            a.scale_row(col, &pinv);
            inv.scale_row(col, &pinv);
            for i in 0..n {
                if i == col || a[(i, col)].is_zero() {
                    continue;
                }
                let f = a[(i, col)].clone();
                a.axpy_row(i, col, &f);
                inv.axpy_row(i, col, &f);
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        for k in 0..self.c {
            self.data.swap(i * self.c + k, j * self.c + k);
        }
    }

    fn scale_row(&mut self, i: usize, k: &S) {
        for j in 0..self.c {
            self[(i, j)] = self[(i, j)].mul(k);
        }
    }

    /// row_i −= f · row_j.
    fn axpy_row(&mut self, i: usize, j: usize, f: &S) {
        for k in 0..self.c {
            let t = self[(j, k)].mul(f);
            self[(i, k)] = self[(i, k)].sub(&t);
        }
    }
}

impl<S> Index<(usize, usize)> for Mat<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.c + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Mat<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.c + j]
    }
}

impl<S: fmt::Debug> fmt::Debug for Mat<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.r {
            write!(f, "  ")?;
            for j in 0..self.c {
                write!(f, "{:?}, ", self.data[i * self.c + j])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form over Q. Returns the pivot columns.
pub fn rref(m: &mut Mat<Q>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols() {
        if row == m.rows() {
            break;
        }
        let Some(p) = (row..m.rows()).find(|&i| !Ring::is_zero(&m[(i, col)])) else {
            continue;
        };
        m.swap_rows(p, row);
        let inv = m[(row, col)].recip();
        m.scale_row(row, &inv);
        for i in 0..m.rows() {
            if i != row && !Ring::is_zero(&m[(i, col)]) {
                let f = m[(i, col)].clone();
                m.axpy_row(i, row, &f);
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Solves M x = b over Q. Returns one particular solution (free variables
/// zero) and a basis of the kernel, or `None` if inconsistent.
pub fn solve_affine(m: &Mat<Q>, b: &[Q]) -> Option<(Vec<Q>, Vec<Vec<Q>>)> {
    let n = m.cols();
    let mut aug = Mat::from_fn(m.rows(), n + 1, |i, j| if j < n { m[(i, j)].clone() } else { b[i].clone() });
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Q::zero(); n];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[(r, n)].clone();
    }
    let mut kernel = Vec::new();
    for free in (0..n).filter(|j| !pivots.contains(j)) {
        let mut v = vec![Q::zero(); n];
        v[free] = Q::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -aug[(r, free)].clone();
        }
        kernel.push(v);
    }
    Some((x, kernel))
}

/// Rank over Q.
pub fn rank(m: &Mat<Q>) -> usize {
    rref(&mut m.clone()).len()
}
