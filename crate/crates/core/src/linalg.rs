//! Dense exact matrices over `Q`.
//!
//! Elimination is Gauss–Jordan with the first nonzero entry of each column as
//! pivot, so every result is a deterministic function of the input.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rational::Q;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    /// Nonzero rows only: `rank × cols`.
    pub reduced: Mat,
    pub pivots: Vec<usize>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, c).unwrap_or_else(|| panic!("ragged rows ({r} rows)"))
    }

    fn from_rows_with_cols(rows: Vec<Vec<Q>>, cols: usize) -> Option<Self> {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            if row.len() != cols {
                return None;
            }
            data.extend(row);
        }
        Some(Mat { rows: r, cols, data })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Q::from_int(x)).collect()).collect())
    }

    /// Matrix whose columns are the given vectors, each of length `len`.
    pub fn from_columns(len: usize, columns: &[Vec<Q>]) -> Self {
        let mut m = Mat::zeros(len, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), len, "column length");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &Q) {
        if !v.is_zero() {
            let k = i * self.cols + j;
            self.data[k] += v;
        }
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Q::is_zero)
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if !x.is_zero() {
                    t.set(j, i, x.clone());
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len(), "shape mismatch in product");
        (0..self.rows)
            .map(|i| {
                let mut acc = Q::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sum");
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in difference");
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, s: &Q) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        let mut m = Mat::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Mat { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Mat {
        let mut m = Mat::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                m.set(i, k, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> Mat {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend_from_slice(self.row(i));
        }
        Mat { rows: rows.len(), cols: self.cols, data }
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            if !inv.is_one() {
                for j in c..m.cols {
                    let x = m.get(r, j);
                    if !x.is_zero() {
                        let y = x * &inv;
                        m.set(r, j, y);
                    }
                }
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let x = m.get(r, j);
                    if !x.is_zero() {
                        let y = m.get(i, j) - &(&f * x);
                        m.set(i, j, y);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.data.truncate(r * m.cols);
        m.rows = r;
        Rref { reduced: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            self.rref().pivots.len()
        }
    }

    /// Columns span the right kernel: `cols × nullity`.
    pub fn kernel(&self) -> Mat {
        let Rref { reduced, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Mat::zeros(self.cols, free.len());
        for (t, &f) in free.iter().enumerate() {
            k.set(f, t, Q::one());
            for (r, &p) in pivots.iter().enumerate() {
                let x = reduced.get(r, f);
                if !x.is_zero() {
                    k.set(p, t, -x);
                }
            }
        }
        k
    }

    /// A maximal independent subset of the columns, in order.
    pub fn column_basis(&self) -> Mat {
        let pivots = self.rref().pivots;
        self.select_columns(&pivots)
    }

    /// Solves `self · X = b`, returning `None` when inconsistent.
    pub fn solve(&self, b: &Mat) -> Option<Mat> {
        assert_eq!(self.rows, b.rows, "row mismatch in solve");
        let aug = self.hstack(b);
        let Rref { reduced, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Mat::zeros(self.cols, b.cols);
        for (r, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, reduced.get(r, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve(&Mat::identity(self.rows))?;
        (self.rank() == self.rows).then_some(x)
    }

    pub fn determinant(&self) -> Q {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Q::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Q::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det *= &piv;
            let inv = piv.recip();
            for i in c + 1..n {
                let f = m.get(i, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let y = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, y);
                }
            }
        }
        det
    }
}

/// `true` when every column of `b` lies in the column span of `a`.
pub fn span_contains(a: &Mat, b: &Mat) -> bool {
    if b.cols() == 0 || b.is_zero() {
        return true;
    }
    if a.cols() == 0 {
        return false;
    }
    a.hstack(b).rank() == a.rank()
}

/// Column basis of the intersection of two column spans in the same space.
pub fn intersect(a: &Mat, b: &Mat) -> Mat {
    let n = a.rows();
    if a.cols() == 0 || b.cols() == 0 {
        return Mat::zeros(n, 0);
    }
    let k = a.hstack(&b.scale(&-Q::one())).kernel();
    let top = k.select_rows(&(0..a.cols()).collect::<Vec<_>>());
    a.mul(&top).column_basis()
}

/// Projection onto `V / span(sub)` in the coordinates given by the
/// complement of the pivot rows of `sub`, plus the section sending quotient
/// coordinates back to those basis vectors.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    /// `(dim V − rank) × dim V`.
    pub projection: Mat,
    /// `dim V × (dim V − rank)`.
    pub section: Mat,
}

pub fn quotient_map(dim: usize, sub: &Mat) -> QuotientMap {
    assert_eq!(sub.rows(), dim, "subspace ambient dimension");
    let Rref { reduced, pivots } =
        if sub.cols() == 0 { Rref { reduced: Mat::zeros(0, dim), pivots: vec![] } } else { sub.transpose().rref() };
    let keep: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    let mut projection = Mat::zeros(keep.len(), dim);
    let mut section = Mat::zeros(dim, keep.len());
    for (t, &j) in keep.iter().enumerate() {
        projection.set(t, j, Q::one());
        section.set(j, t, Q::one());
        for (r, &p) in pivots.iter().enumerate() {
            let x = reduced.get(r, j);
            if !x.is_zero() {
                projection.set(t, p, -x);
            }
        }
    }
    QuotientMap { projection, section }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[Vec<i64>]) -> Mat {
        Mat::from_i64(rows)
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn empty_shapes() {
        let a = Mat::zeros(0, 3);
        assert_eq!(a.rank(), 0);
        assert_eq!(a.kernel().cols(), 3);
        let b = Mat::zeros(3, 0);
        assert_eq!(b.kernel().shape(), (0, 0));
    }

    #[test]
    fn quotient_projection_kills_sub() {
        let sub = m(&[vec![1], vec![1], vec![0]]);
        let q = quotient_map(3, &sub);
        assert_eq!(q.projection.rows(), 2);
        assert!(q.projection.mul(&sub).is_zero());
        assert_eq!(q.projection.mul(&q.section), Mat::identity(2));
    }

    #[test]
    fn determinant_matches_inverse() {
        let a = m(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        assert_eq!(a.determinant(), Q::from_int(4));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Mat::identity(3));
    }

    #[test]
    fn intersection_of_planes() {
        let a = m(&[vec![1, 0], vec![0, 1], vec![0, 0]]);
        let b = m(&[vec![1, 0], vec![0, 0], vec![0, 1]]);
        let c = intersect(&a, &b);
        assert_eq!(c.cols(), 1);
        assert!(span_contains(&a, &c) && span_contains(&b, &c));
    }

    proptest! {
        #[test]
        fn rank_nullity(entries in proptest::collection::vec(-3i64..4, 12)) {
            let a = Mat::from_i64(&entries.chunks(4).map(<[i64]>::to_vec).collect::<Vec<_>>());
            prop_assert_eq!(a.rank() + a.kernel().cols(), 4);
            prop_assert_eq!(a.rank(), a.transpose().rank());
            prop_assert!(a.mul(&a.kernel()).is_zero());
        }

        #[test]
        fn solve_roundtrip(entries in proptest::collection::vec(-3i64..4, 9), x in proptest::collection::vec(-5i64..6, 3)) {
            let a = Mat::from_i64(&entries.chunks(3).map(<[i64]>::to_vec).collect::<Vec<_>>());
            let xv = Mat::from_i64(&x.iter().map(|&v| vec![v]).collect::<Vec<_>>());
            let b = a.mul(&xv);
            let sol = a.solve(&b).expect("consistent by construction");
            prop_assert_eq!(a.mul(&sol), b);
        }
    }
}
