use std::fmt;

use super::FqMatrix;
use crate::error::{Error, Result};
use crate::field::{Field, Fq};

/// A subspace of F^n held as a reduced row echelon basis, so equal
/// subspaces have identical representations.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vec<Fq>>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}; ", self.dim(), self.ambient)?;
        let m = self.basis_matrix();
        write!(f, "{m:?})")
    }
}

impl Subspace {
    pub fn zero(field: &Field, ambient: usize) -> Self {
        Subspace {
            field: field.clone(),
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &Field, ambient: usize) -> Self {
        let mut s = Subspace::zero(field, ambient);
        for i in 0..ambient {
            let mut v = vec![field.zero(); ambient];
            v[i] = field.one();
            s.basis.push(v);
            s.pivots.push(i);
        }
        s
    }

    pub fn span<I, V>(field: &Field, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[Fq]>,
    {
        let mut s = Subspace::zero(field, ambient);
        for v in vectors {
            s.insert(v.as_ref());
        }
        s
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    /// RREF basis rows.
    pub fn basis(&self) -> &[Vec<Fq>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as the rows of a matrix.
    pub fn basis_matrix(&self) -> FqMatrix {
        FqMatrix::from_data(
            &self.field,
            self.basis.len(),
            self.ambient,
            self.basis.concat(),
        )
        .expect("consistent shape")
    }

    /// `v` minus its projection along the basis pivots.
    pub fn reduce(&self, v: &[Fq]) -> Vec<Fq> {
        let mut r = v.to_vec();
        self.reduce_in_place(&mut r);
        r
    }

    fn reduce_in_place(&self, r: &mut [Fq]) {
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = r[p];
            if !c.is_zero() {
                self.field.axpy(r, self.field.neg(c), row);
            }
        }
    }

    pub fn contains(&self, v: &[Fq]) -> bool {
        self.reduce(v).iter().all(|a| a.is_zero())
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Fq]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length");
        let mut r = v.to_vec();
        self.reduce_in_place(&mut r);
        let Some(p) = r.iter().position(|a| !a.is_zero()) else {
            return false;
        };
        let f = self.field.clone();
        let inv = f.inv(r[p]).expect("nonzero");
        f.scale_in_place(&mut r, inv);
        for row in self.basis.iter_mut() {
            let c = row[p];
            if !c.is_zero() {
                f.axpy(row, f.neg(c), &r);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.basis.insert(at, r);
        true
    }

    /// Coordinates of a member vector in the RREF basis (its pivot entries).
    pub fn coordinates(&self, v: &[Fq]) -> Option<Vec<Fq>> {
        self.contains(v)
            .then(|| self.pivots.iter().map(|&p| v[p]).collect())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in &other.basis {
            s.insert(v);
        }
        s
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // x in both iff x = sum a_i u_i = sum b_j w_j
        let mut cols: Vec<Vec<Fq>> = self.basis.clone();
        cols.extend(
            other
                .basis
                .iter()
                .map(|w| w.iter().map(|&a| self.field.neg(a)).collect::<Vec<_>>()),
        );
        let m = FqMatrix::from_columns(&self.field, self.ambient, &cols);
        let ker = kernel(&m);
        Subspace::span(
            &self.field,
            self.ambient,
            ker.basis().iter().map(|c| {
                let mut x = vec![self.field.zero(); self.ambient];
                for (i, u) in self.basis.iter().enumerate() {
                    self.field.axpy(&mut x, c[i], u);
                }
                x
            }),
        )
    }

    /// {x : <b, x> = 0 for every basis vector b}.
    pub fn annihilator(&self) -> Subspace {
        kernel(&self.basis_matrix_or_empty())
    }

    fn basis_matrix_or_empty(&self) -> FqMatrix {
        if self.basis.is_empty() {
            FqMatrix::zeros(&self.field, 0, self.ambient)
        } else {
            self.basis_matrix()
        }
    }

    /// Indices not among the pivots: a basis of a complement by unit vectors.
    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|i| self.pivots.binary_search(i).is_err())
            .collect()
    }

    /// Image under a linear map given as a matrix acting on columns.
    pub fn image_under(&self, m: &FqMatrix) -> Subspace {
        Subspace::span(
            &self.field,
            m.rows(),
            self.basis.iter().map(|v| m.mul_vec(v)),
        )
    }

    pub fn is_invariant_under(&self, m: &FqMatrix) -> bool {
        self.basis.iter().all(|v| self.contains(&m.mul_vec(v)))
    }
}

/// Reduced row echelon form, rank and pivot columns.
pub fn rref(m: &FqMatrix) -> (FqMatrix, usize, Vec<usize>) {
    let f = m.field().clone();
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols() {
        if r == a.rows() {
            break;
        }
        let Some(piv) = (r..a.rows()).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        a.swap_rows(r, piv);
        let inv = f.inv(a.get(r, c)).expect("nonzero");
        a.scale_row(r, inv);
        for i in 0..a.rows() {
            if i != r {
                let factor = a.get(i, c);
                if !factor.is_zero() {
                    a.add_row_multiple(i, r, f.neg(factor));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, r, pivots)
}

/// Right kernel {x : M x = 0}.
pub fn kernel(m: &FqMatrix) -> Subspace {
    let f = m.field().clone();
    let (r, rank, pivots) = rref(m);
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let vectors = free.iter().map(|&fc| {
        let mut x = vec![f.zero(); n];
        x[fc] = f.one();
        for (i, &pc) in pivots.iter().enumerate().take(rank) {
            x[pc] = f.neg(r.get(i, fc));
        }
        x
    });
    Subspace::span(&f, n, vectors)
}

/// One solution of A x = b together with the kernel of A.
pub fn solve(a: &FqMatrix, b: &[Fq]) -> Result<(Vec<Fq>, Subspace)> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            a.rows()
        )));
    }
    let f = a.field().clone();
    let n = a.cols();
    let mut aug = FqMatrix::zeros(&f, a.rows(), n + 1);
    for i in 0..a.rows() {
        for j in 0..n {
            aug.set(i, j, a.get(i, j));
        }
        aug.set(i, n, b[i]);
    }
    let (r, rank, pivots) = rref(&aug);
    if pivots.last() == Some(&n) {
        return Err(Error::NoSolution);
    }
    let mut x = vec![f.zero(); n];
    for (i, &pc) in pivots.iter().enumerate().take(rank) {
        x[pc] = r.get(i, n);
    }
    Ok((x, kernel(a)))
}
