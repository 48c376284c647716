//! Dense exact linear algebra over a [`FieldCtx`](crate::field::FieldCtx).
//!
//! Vectors are plain `Vec<Fq>`; matrices act on column vectors. Flattening a
//! square matrix to a vector is always row-major.

mod charpoly;
mod subspace;

pub use charpoly::{char_poly, eigenprojector, eval_poly, min_poly, min_poly_seeded};
pub use subspace::{kernel, rref, solve, Subspace};

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Embedding, Field, Fq};

#[derive(Clone, PartialEq, Eq)]
pub struct FqMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Fq>,
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|&a| self.field.format(a)).collect();
            write!(f, "{}[{}]", if r > 0 { ", " } else { "" }, row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl FqMatrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        FqMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = FqMatrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn scalar(field: &Field, n: usize, a: Fq) -> Self {
        let mut m = FqMatrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = a;
        }
        m
    }

    /// Row-major data of length `rows * cols`.
    pub fn from_data(field: &Field, rows: usize, cols: usize, data: Vec<Fq>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(FqMatrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    /// Rows of equal length; an empty row list gives a 0x0 matrix.
    pub fn from_rows(field: &Field, rows: &[Vec<Fq>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        FqMatrix::from_data(field, rows.len(), cols, rows.concat())
    }

    /// Integer literal rows, reduced mod p.
    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<Fq>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        FqMatrix::from_rows(field, &rows).expect("rectangular literal")
    }

    /// Columns given as vectors.
    pub fn from_columns(field: &Field, rows: usize, columns: &[Vec<Fq>]) -> Self {
        let mut m = FqMatrix::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for i in 0..rows {
                m.data[i * columns.len() + j] = c[i];
            }
        }
        m
    }

    pub fn diagonal(field: &Field, diag: &[Fq]) -> Self {
        let mut m = FqMatrix::zeros(field, diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    /// Elementary matrix E_{ij} (zero-indexed).
    pub fn unit(field: &Field, n: usize, i: usize, j: usize) -> Self {
        let mut m = FqMatrix::zeros(field, n, n);
        m.set(i, j, field.one());
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Fq] {
        &self.data
    }

    /// Row-major vectorization.
    pub fn flatten(&self) -> Vec<Fq> {
        self.data.clone()
    }

    /// Inverse of [`FqMatrix::flatten`] for an n x n matrix.
    pub fn unflatten(field: &Field, n: usize, v: &[Fq]) -> Self {
        FqMatrix::from_data(field, n, n, v.to_vec()).expect("n^2 entries")
    }

    pub fn get(&self, i: usize, j: usize) -> Fq {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Fq) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fq] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<Fq>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Fq> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = FqMatrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    self.get(i, j)
                        == if i == j {
                            self.field.one()
                        } else {
                            self.field.zero()
                        }
                })
            })
    }

    fn assert_compatible(&self, other: &Self) {
        assert!(
            Field::ptr_eq(&self.field, &other.field) || self.field == other.field,
            "matrices over different fields"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        FqMatrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        FqMatrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, a: Fq) -> Self {
        let f = &self.field;
        FqMatrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f.mul(x, a)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let f = &self.field;
        let mut out = FqMatrix::zeros(f, self.rows, other.cols);
        if f.degree() == 1 {
            // accumulate in u64 and reduce lazily
            let p = f.characteristic();
            let bound = u64::MAX / 2 - p * p;
            let mut acc = vec![0u64; other.cols];
            for i in 0..self.rows {
                acc.iter_mut().for_each(|a| *a = 0);
                for k in 0..self.cols {
                    let a = self.data[i * self.cols + k].packed();
                    if a == 0 {
                        continue;
                    }
                    let row = &other.data[k * other.cols..(k + 1) * other.cols];
                    for (s, b) in acc.iter_mut().zip(row) {
                        *s += a * b.packed();
                        if *s > bound {
                            *s %= p;
                        }
                    }
                }
                for (j, s) in acc.iter().enumerate() {
                    out.data[i * other.cols + j] = f.from_u64(*s);
                }
            }
            return out;
        }
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let (lo, hi) = (i * other.cols, (i + 1) * other.cols);
                f.axpy(
                    &mut out.data[lo..hi],
                    a,
                    &other.data[k * other.cols..(k + 1) * other.cols],
                );
            }
        }
        out
    }

    /// M v for a column vector v.
    pub fn mul_vec(&self, v: &[Fq]) -> Vec<Fq> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.field.dot(self.row(i), v))
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = FqMatrix::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn trace(&self) -> Fq {
        (0..self.rows.min(self.cols)).fold(self.field.zero(), |acc, i| {
            self.field.add(acc, self.get(i, i))
        })
    }

    pub fn rank(&self) -> usize {
        rref(self).1
    }

    /// Gauss-Jordan inverse; `None` when singular or not square.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        let mut a = self.clone();
        let mut inv = FqMatrix::identity(f, n);
        for c in 0..n {
            let piv = (c..n).find(|&r| !a.get(r, c).is_zero())?;
            a.swap_rows(c, piv);
            inv.swap_rows(c, piv);
            let s = f.inv(a.get(c, c)).expect("nonzero pivot");
            a.scale_row(c, s);
            inv.scale_row(c, s);
            for r in 0..n {
                if r != c {
                    let factor = a.get(r, c);
                    if !factor.is_zero() {
                        let neg = f.neg(factor);
                        a.add_row_multiple(r, c, neg);
                        inv.add_row_multiple(r, c, neg);
                    }
                }
            }
        }
        Some(inv)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub(crate) fn scale_row(&mut self, r: usize, s: Fq) {
        let f = self.field.clone();
        f.scale_in_place(&mut self.data[r * self.cols..(r + 1) * self.cols], s);
    }

    /// row[target] += s * row[source]
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, s: Fq) {
        let f = self.field.clone();
        let cols = self.cols;
        let src: Vec<Fq> = self.row(source).to_vec();
        f.axpy(&mut self.data[target * cols..(target + 1) * cols], s, &src);
    }

    /// Kronecker product: (A (x) B)[i*q + j, i'*q + j'] = A[i,i'] B[j,j'].
    pub fn kron(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let f = &self.field;
        let (p, q) = (other.rows, other.cols);
        let mut out = FqMatrix::zeros(f, self.rows * p, self.cols * q);
        for i in 0..self.rows {
            for ii in 0..self.cols {
                let a = self.get(i, ii);
                if a.is_zero() {
                    continue;
                }
                for j in 0..p {
                    for jj in 0..q {
                        out.set(i * p + j, ii * q + jj, f.mul(a, other.get(j, jj)));
                    }
                }
            }
        }
        out
    }

    /// Same matrix with entries carried into a larger field.
    pub fn embed(&self, emb: &Embedding) -> Self {
        assert_eq!(**emb.source(), *self.field);
        FqMatrix {
            field: emb.target().clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| emb.apply(a)).collect(),
        }
    }

    /// Canonical byte key: the packed entries, row-major.
    pub fn key(&self) -> Vec<u64> {
        self.data.iter().map(|a| a.packed()).collect()
    }
}

/// tr(AB), the trace pairing on square matrices.
pub fn trace_pairing(a: &FqMatrix, b: &FqMatrix) -> Result<Fq> {
    if !a.is_square() || a.rows != b.cols || a.cols != b.rows || a.field != b.field {
        return Err(Error::DimensionMismatch(
            "trace pairing needs n x n matrices".into(),
        ));
    }
    let f = &a.field;
    let n = a.rows;
    let mut acc = f.zero();
    for i in 0..n {
        for k in 0..n {
            acc = f.add(acc, f.mul(a.get(i, k), b.get(k, i)));
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn trace_pairing_examples() {
        let f = make_field(5, 1).unwrap();
        let i3 = FqMatrix::identity(&f, 3);
        assert_eq!(trace_pairing(&i3, &i3).unwrap(), f.from_u64(3));
        let e12 = FqMatrix::unit(&f, 2, 0, 1);
        let e21 = FqMatrix::unit(&f, 2, 1, 0);
        assert_eq!(trace_pairing(&e12, &e12).unwrap(), f.zero());
        assert_eq!(trace_pairing(&e12, &e21).unwrap(), f.one());
        assert!(trace_pairing(&e12, &i3).is_err());
    }

    #[test]
    fn trace_pairing_gram_is_permutation() {
        let f = make_field(7, 1).unwrap();
        let n = 3;
        let basis: Vec<FqMatrix> = (0..n * n)
            .map(|k| FqMatrix::unit(&f, n, k / n, k % n))
            .collect();
        let gram: Vec<Vec<Fq>> = basis
            .iter()
            .map(|a| basis.iter().map(|b| trace_pairing(a, b).unwrap()).collect())
            .collect();
        for row in &gram {
            assert_eq!(row.iter().filter(|a| **a == f.one()).count(), 1);
            assert_eq!(row.iter().filter(|a| a.is_zero()).count(), n * n - 1);
        }
        assert_eq!(FqMatrix::from_rows(&f, &gram).unwrap().rank(), n * n);
    }

    #[test]
    fn trace_pairing_conjugation_invariant() {
        let f = make_field(7, 1).unwrap();
        let g = FqMatrix::from_ints(&f, &[&[1, 2], &[3, 5]]);
        let gi = g.inverse().unwrap();
        let a = FqMatrix::from_ints(&f, &[&[4, 1], &[0, 6]]);
        let b = FqMatrix::from_ints(&f, &[&[2, 2], &[5, 3]]);
        let lhs = trace_pairing(&g.mul(&a).mul(&gi), &g.mul(&b).mul(&gi)).unwrap();
        assert_eq!(lhs, trace_pairing(&a, &b).unwrap());
        assert_eq!(
            trace_pairing(&a, &b).unwrap(),
            trace_pairing(&b, &a).unwrap()
        );
    }

    #[test]
    fn inverse_and_kron() {
        let f = make_field(7, 1).unwrap();
        let a = FqMatrix::from_ints(&f, &[&[1, 2], &[3, 4]]);
        assert!(a.mul(&a.inverse().unwrap()).is_identity());
        let sing = FqMatrix::from_ints(&f, &[&[1, 2], &[2, 4]]);
        assert!(sing.inverse().is_none());
        let b = FqMatrix::from_ints(&f, &[&[0, 1], &[1, 0]]);
        let k = a.kron(&b);
        assert_eq!(k.get(0, 1), f.from_u64(1));
        assert_eq!(k.get(1, 0), f.from_u64(1));
        assert_eq!(k.get(2, 3), f.from_u64(4));
        assert_eq!(k.get(3, 0), f.from_u64(3));
        // mixed product
        assert_eq!(a.kron(&b).mul(&b.kron(&a)), a.mul(&b).kron(&b.mul(&a)));
    }

    #[test]
    fn extension_field_matrix_product() {
        let f = make_field(3, 2).unwrap();
        let g = f.generator();
        let m = FqMatrix::from_rows(&f, &[vec![g, f.one()], vec![f.zero(), g]]).unwrap();
        let m8 = m.pow(8);
        // diagonal g^8 = 1, off-diagonal 8 g^7 = 2 g^7
        assert_eq!(m8.get(0, 0), f.one());
        assert_eq!(m8.get(0, 1), f.mul(f.from_u64(2), f.pow(g, 7)));
    }
}
