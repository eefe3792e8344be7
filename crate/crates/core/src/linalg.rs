//! Dense matrices and row spaces over a finite field.
//!
//! Vectors are rows and act on the right: `v * M`.

use std::fmt;

use crate::error::{Error, Result};
use crate::ffield::FieldSpec;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            writeln!(f, "{:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Parse("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.rows)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix, f: &FieldSpec) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b != 0 {
                        let v = f.add(out.get(r, c), f.mul(a, b));
                        out.set(r, c, v);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix, f: &FieldSpec) -> Matrix {
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Matrix, f: &FieldSpec) -> Matrix {
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, s: u32, f: &FieldSpec) -> Matrix {
        let data = self.data.iter().map(|&a| f.mul(a, s)).collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn inverse(&self, f: &FieldSpec) -> Result<Matrix> {
        let n = self.rows;
        if n != self.cols {
            return Err(Error::Precondition("inverse of a non-square matrix".into()));
        }
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| a.get(r, col) != 0)
                .ok_or_else(|| Error::Precondition("singular matrix".into()))?;
            a.swap_rows(col, piv);
            inv.swap_rows(col, piv);
            let s = f.inv(a.get(col, col))?;
            a.scale_row(col, s, f);
            inv.scale_row(col, s, f);
            for r in 0..n {
                let c = a.get(r, col);
                if r != col && c != 0 {
                    a.add_row_multiple(r, col, f.neg(c), f);
                    inv.add_row_multiple(r, col, f.neg(c), f);
                }
            }
        }
        Ok(inv)
    }

    pub fn pow(&self, mut e: u64, f: &FieldSpec) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            base = base.mul(&base, f);
            e >>= 1;
        }
        acc
    }

    pub fn determinant(&self, f: &FieldSpec) -> u32 {
        let n = self.rows;
        let mut a = self.clone();
        let mut det = 1;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| a.get(r, col) != 0) else {
                return 0;
            };
            if piv != col {
                a.swap_rows(col, piv);
                det = f.neg(det);
            }
            let d = a.get(col, col);
            det = f.mul(det, d);
            let s = f.inv(d).expect("nonzero pivot");
            for r in col + 1..n {
                let c = a.get(r, col);
                if c != 0 {
                    a.add_row_multiple(r, col, f.neg(f.mul(c, s)), f);
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn scale_row(&mut self, r: usize, s: u32, f: &FieldSpec) {
        for c in 0..self.cols {
            let v = f.mul(self.get(r, c), s);
            self.set(r, c, v);
        }
    }

    /// row[dst] += s * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, s: u32, f: &FieldSpec) {
        for c in 0..self.cols {
            let v = self.get(src, c);
            if v != 0 {
                let w = f.add(self.get(dst, c), f.mul(s, v));
                self.set(dst, c, w);
            }
        }
    }
}

/// Row vector times matrix.
pub fn vec_mul(v: &[u32], m: &Matrix, f: &FieldSpec) -> Vec<u32> {
    let mut out = vec![0; m.cols];
    for (k, &a) in v.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (c, o) in out.iter_mut().enumerate() {
            let b = m.get(k, c);
            if b != 0 {
                *o = f.add(*o, f.mul(a, b));
            }
        }
    }
    out
}

pub fn vec_add(a: &[u32], b: &[u32], f: &FieldSpec) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

pub fn vec_sub(a: &[u32], b: &[u32], f: &FieldSpec) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| f.sub(x, y)).collect()
}

pub fn vec_scale(a: &[u32], s: u32, f: &FieldSpec) -> Vec<u32> {
    a.iter().map(|&x| f.mul(x, s)).collect()
}

/// Scales so that the first nonzero entry is 1.
pub fn normalize(v: &[u32], f: &FieldSpec) -> Vec<u32> {
    match v.iter().find(|&&x| x != 0) {
        None => v.to_vec(),
        Some(&lead) => vec_scale(v, f.inv(lead).expect("nonzero"), f),
    }
}

/// A subspace of F^n held as a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowSpace {
    dim: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn zero(dim: usize) -> RowSpace {
        RowSpace {
            dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(dim: usize) -> RowSpace {
        let basis = (0..dim)
            .map(|i| {
                let mut v = vec![0; dim];
                v[i] = 1;
                v
            })
            .collect();
        RowSpace {
            dim,
            basis,
            pivots: (0..dim).collect(),
        }
    }

    pub fn spanned_by(dim: usize, vectors: &[Vec<u32>], f: &FieldSpec) -> RowSpace {
        let mut s = RowSpace::zero(dim);
        for v in vectors {
            s.insert(v, f);
        }
        s
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the basis.
    pub fn reduce(&self, v: &[u32], f: &FieldSpec) -> Vec<u32> {
        let mut w = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let c = w[p];
            if c != 0 {
                for (x, &y) in w.iter_mut().zip(b) {
                    if y != 0 {
                        *x = f.sub(*x, f.mul(c, y));
                    }
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32], f: &FieldSpec) -> bool {
        self.reduce(v, f).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u32], f: &FieldSpec) -> bool {
        let w = self.reduce(v, f);
        let Some(p) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let w = vec_scale(&w, f.inv(w[p]).expect("nonzero"), f);
        for b in &mut self.basis {
            let c = b[p];
            if c != 0 {
                for (x, &y) in b.iter_mut().zip(&w) {
                    if y != 0 {
                        *x = f.sub(*x, f.mul(c, y));
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.basis.insert(at, w);
        true
    }

    /// Coordinates of a member in the echelon basis.
    pub fn coordinates(&self, v: &[u32], f: &FieldSpec) -> Option<Vec<u32>> {
        let coords: Vec<u32> = self.pivots.iter().map(|&p| v[p]).collect();
        let mut w = v.to_vec();
        for (b, &c) in self.basis.iter().zip(&coords) {
            if c != 0 {
                for (x, &y) in w.iter_mut().zip(b) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        w.iter().all(|&x| x == 0).then_some(coords)
    }

    pub fn intersect(&self, other: &RowSpace, f: &FieldSpec) -> RowSpace {
        // Zassenhaus: rows (a|a) for a in self, (b|0) for b in other
        let n = self.dim;
        let mut big = RowSpace::zero(2 * n);
        for a in &self.basis {
            let mut row = a.clone();
            row.extend_from_slice(a);
            big.insert(&row, f);
        }
        for b in &other.basis {
            let mut row = b.clone();
            row.extend(std::iter::repeat(0).take(n));
            big.insert(&row, f);
        }
        let mut out = RowSpace::zero(n);
        for (row, &p) in big.basis.iter().zip(&big.pivots) {
            if p >= n {
                out.insert(&row[n..], f);
            }
        }
        out
    }
}

/// Basis of the left null space {v : v * m = 0}.
pub fn left_kernel(m: &Matrix, f: &FieldSpec) -> Vec<Vec<u32>> {
    // v * m = 0  <=>  m^T v^T = 0
    right_kernel(&m.transpose(), f)
}

/// Basis of {x : m * x^T = 0}, i.e. solutions of the row system.
pub fn right_kernel(m: &Matrix, f: &FieldSpec) -> Vec<Vec<u32>> {
    let rs = RowSpace::spanned_by(m.cols, &m.row_vecs(), f);
    let free: Vec<usize> = (0..m.cols).filter(|c| !rs.pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut x = vec![0; m.cols];
            x[fc] = 1;
            for (b, &p) in rs.basis.iter().zip(&rs.pivots) {
                x[p] = f.neg(b[fc]);
            }
            x
        })
        .collect()
}

pub fn rank(m: &Matrix, f: &FieldSpec) -> usize {
    RowSpace::spanned_by(m.cols, &m.row_vecs(), f).dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(q: u64) -> std::sync::Arc<FieldSpec> {
        FieldSpec::new(q).unwrap()
    }

    #[test]
    fn inverse_round_trip() {
        let k = f(7);
        let m = Matrix::from_rows(vec![vec![1, 2, 3], vec![0, 1, 4], vec![5, 6, 0]]).unwrap();
        let inv = m.inverse(&k).unwrap();
        assert!(m.mul(&inv, &k).is_identity());
        assert!(Matrix::zeros(2, 2).inverse(&k).is_err());
        assert_eq!(m.determinant(&k), 1);
    }

    #[test]
    fn kernels() {
        let k = f(3);
        let m = Matrix::from_rows(vec![vec![1, 1, 0], vec![2, 2, 0]]).unwrap();
        let ker = left_kernel(&m, &k);
        assert_eq!(ker.len(), 1);
        assert!(vec_mul(&ker[0], &m, &k).iter().all(|&x| x == 0));
        let rk = right_kernel(&m, &k);
        assert_eq!(rk.len(), 2);
        for x in rk {
            let col = Matrix::from_rows(x.iter().map(|&v| vec![v]).collect()).unwrap();
            assert!(m.mul(&col, &k).row_vecs().iter().all(|r| r[0] == 0));
        }
    }

    #[test]
    fn intersection_dimension() {
        let k = f(2);
        let a = RowSpace::spanned_by(4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]], &k);
        let b = RowSpace::spanned_by(4, &[vec![1, 1, 0, 0], vec![0, 0, 1, 0]], &k);
        let c = a.intersect(&b, &k);
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&[1, 1, 0, 0], &k));
    }

    proptest! {
        #[test]
        fn random_invertible_round_trip(entries in proptest::collection::vec(0u32..5, 16)) {
            let k = f(5);
            let m = Matrix::from_rows(entries.chunks(4).map(|c| c.to_vec()).collect()).unwrap();
            match m.inverse(&k) {
                Ok(inv) => {
                    prop_assert!(inv.mul(&m, &k).is_identity());
                    prop_assert!(m.determinant(&k) != 0);
                }
                Err(_) => prop_assert_eq!(m.determinant(&k), 0),
            }
            let r = rank(&m, &k);
            prop_assert_eq!(r + left_kernel(&m, &k).len(), 4);
        }
    }
}
