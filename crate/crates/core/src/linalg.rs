//! Dense exact linear algebra over GF(q): RREF, rank, nullspace, row-space
//! predicates. Pivoting takes the first nonzero entry in column order so every
//! result is deterministic; the RREF is the canonical form used for code
//! equality throughout the crate.

use crate::error::{Error, Result};
use crate::gf::{Felt, Field};
use std::fmt;

#[derive(Clone)]
pub struct VectorGF {
    ctx: Field,
    data: Vec<Felt>,
}

impl PartialEq for VectorGF {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.data == other.data
    }
}

impl fmt::Debug for VectorGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorGF{:?}", self.encodings())
    }
}

impl VectorGF {
    pub fn new(ctx: Field, data: Vec<Felt>) -> Self {
        VectorGF { ctx, data }
    }

    pub fn zeros(ctx: Field, len: usize) -> Self {
        VectorGF { ctx, data: vec![Felt::ZERO; len] }
    }

    pub fn from_encodings(ctx: Field, encodings: &[u64]) -> Result<Self> {
        let data = encodings.iter().map(|&e| ctx.felt(e)).collect::<Result<_>>()?;
        Ok(VectorGF { ctx, data })
    }

    pub fn ctx(&self) -> &Field {
        &self.ctx
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[Felt] {
        &self.data
    }

    pub fn encodings(&self) -> Vec<u64> {
        self.data.iter().map(|f| f.0 as u64).collect()
    }

    pub fn weight(&self) -> usize {
        self.data.iter().filter(|f| !f.is_zero()).count()
    }

    /// Componentwise (Schur) product.
    pub fn schur(&self, other: &VectorGF) -> Result<VectorGF> {
        self.check_same(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.ctx.mul(a, b))
            .collect();
        Ok(VectorGF { ctx: self.ctx.clone(), data })
    }

    pub fn sub(&self, other: &VectorGF) -> Result<VectorGF> {
        self.check_same(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.ctx.sub(a, b))
            .collect();
        Ok(VectorGF { ctx: self.ctx.clone(), data })
    }

    pub fn dot(&self, other: &VectorGF) -> Result<Felt> {
        self.check_same(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .fold(Felt::ZERO, |acc, (&a, &b)| {
                self.ctx.add(acc, self.ctx.mul(a, b))
            }))
    }

    fn check_same(&self, other: &VectorGF) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::FieldMismatch);
        }
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch(format!(
                "vector lengths {} vs {}",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }
}

#[derive(Clone)]
pub struct MatrixGF {
    ctx: Field,
    rows: usize,
    cols: usize,
    data: Vec<Felt>, // row-major
}

impl PartialEq for MatrixGF {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx
            && self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
    }
}

impl fmt::Debug for MatrixGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixGF {}x{} over {:?}:", self.rows, self.cols, self.ctx)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i).iter().map(|x| x.0).collect::<Vec<_>>())?;
        }
        Ok(())
    }
}

pub struct RrefResult {
    pub matrix: MatrixGF,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl MatrixGF {
    pub fn new(ctx: Field, rows: usize, cols: usize, data: Vec<Felt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                data.len()
            )));
        }
        Ok(MatrixGF { ctx, rows, cols, data })
    }

    pub fn zeros(ctx: Field, rows: usize, cols: usize) -> Self {
        MatrixGF { ctx, rows, cols, data: vec![Felt::ZERO; rows * cols] }
    }

    pub fn identity(ctx: Field, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, Felt::ONE);
        }
        m
    }

    pub fn from_rows(ctx: Field, rows: Vec<Vec<Felt>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data = rows.into_iter().flatten().collect();
        MatrixGF::new(ctx, nrows, ncols, data)
    }

    pub fn from_encoding_rows(ctx: Field, rows: &[Vec<u64>]) -> Result<Self> {
        let felt_rows = rows
            .iter()
            .map(|r| r.iter().map(|&e| ctx.felt(e)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(ctx, felt_rows)
    }

    pub fn ctx(&self) -> &Field {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Felt {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Felt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Felt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vector(&self, i: usize) -> VectorGF {
        VectorGF::new(self.ctx.clone(), self.row(i).to_vec())
    }

    pub fn row_encodings(&self) -> Vec<Vec<u64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|f| f.0 as u64).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|f| f.is_zero())
    }

    pub fn transpose(&self) -> MatrixGF {
        let mut out = MatrixGF::zeros(self.ctx.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn mul(&self, other: &MatrixGF) -> Result<MatrixGF> {
        if self.ctx != other.ctx {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ctx = &self.ctx;
        let mut out = MatrixGF::zeros(self.ctx.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = ctx.add(out.get(i, j), ctx.mul(a, other.get(l, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn row_stack(&self, other: &MatrixGF) -> Result<MatrixGF> {
        if self.ctx != other.ctx {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "column counts {} vs {}",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        MatrixGF::new(self.ctx.clone(), self.rows + other.rows, self.cols, data)
    }

    /// Unique reduced row echelon form, rank, and pivot columns.
    pub fn rref(&self) -> RrefResult {
        let ctx = self.ctx.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    let tmp = m.get(r, j);
                    m.set(r, j, m.get(pr, j));
                    m.set(pr, j, tmp);
                }
            }
            let inv = ctx.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in 0..m.cols {
                m.set(r, j, ctx.mul(inv, m.get(r, j)));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c);
                if f.is_zero() {
                    continue;
                }
                for j in 0..m.cols {
                    let v = ctx.sub(m.get(i, j), ctx.mul(f, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        RrefResult { matrix: m, rank: r, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// RREF with zero rows removed; the canonical basis of the row space.
    pub fn row_space_canonical(&self) -> MatrixGF {
        let RrefResult { matrix, rank, .. } = self.rref();
        let data = matrix.data[..rank * matrix.cols].to_vec();
        MatrixGF::new(matrix.ctx.clone(), rank, matrix.cols, data).expect("shape is consistent")
    }

    /// Basis of {x : M x^T = 0} as rows; (cols - rank) of them.
    pub fn nullspace_basis(&self) -> MatrixGF {
        let ctx = self.ctx.clone();
        let RrefResult { matrix, rank, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = MatrixGF::zeros(ctx.clone(), free.len(), self.cols);
        for (bi, &fc) in free.iter().enumerate() {
            out.set(bi, fc, Felt::ONE);
            for (ri, &pc) in pivots.iter().enumerate().take(rank) {
                out.set(bi, pc, ctx.neg(matrix.get(ri, fc)));
            }
        }
        out
    }

    pub fn rowspace_equal(&self, other: &MatrixGF) -> Result<bool> {
        if self.ctx != other.ctx {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "column counts {} vs {}",
                self.cols, other.cols
            )));
        }
        Ok(self.row_space_canonical() == other.row_space_canonical())
    }

    /// Is v in the row space of this matrix?
    pub fn membership(&self, v: &VectorGF) -> Result<bool> {
        if self.ctx != *v.ctx() {
            return Err(Error::FieldMismatch);
        }
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} columns, vector has length {}",
                self.cols,
                v.len()
            )));
        }
        let ctx = &self.ctx;
        let RrefResult { matrix, rank, pivots } = self.rref();
        let mut rem = v.as_slice().to_vec();
        for (ri, &pc) in pivots.iter().enumerate().take(rank) {
            let f = rem[pc];
            if f.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                rem[j] = ctx.sub(rem[j], ctx.mul(f, matrix.get(ri, j)));
            }
        }
        Ok(rem.iter().all(|x| x.is_zero()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldCtx;

    fn gf(s: &str) -> Field {
        FieldCtx::parse(s).unwrap()
    }

    fn mat(ctx: &Field, rows: &[Vec<u64>]) -> MatrixGF {
        MatrixGF::from_encoding_rows(ctx.clone(), rows).unwrap()
    }

    #[test]
    fn rref_identity_fixed_point() {
        let f = gf("5");
        let id = MatrixGF::identity(f, 3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rref_duplicate_rows() {
        let f = gf("2");
        let m = mat(&f, &[vec![1, 1], vec![1, 1]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn rref_scalar_multiple_rows() {
        let f = gf("7");
        let m = mat(&f, &[vec![1, 2, 3], vec![2, 4, 6]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn rref_idempotent() {
        let f = gf("7");
        let m = mat(&f, &[vec![3, 1, 4], vec![1, 5, 2], vec![4, 6, 6]]);
        let r1 = m.rref().matrix;
        assert_eq!(r1.rref().matrix, r1);
    }

    #[test]
    fn nullspace_even_weight_code() {
        let f = gf("2");
        let m = mat(&f, &[vec![1, 1, 1]]);
        let ns = m.nullspace_basis();
        assert_eq!(ns.rows(), 2);
        assert!(m.mul(&ns.transpose()).unwrap().is_zero());
    }

    #[test]
    fn nullspace_of_identity_is_empty() {
        let f = gf("5");
        let id = MatrixGF::identity(f, 4);
        assert_eq!(id.nullspace_basis().rows(), 0);
    }

    #[test]
    fn rank_nullity() {
        let f = gf("7");
        let m = mat(&f, &[vec![1, 2, 3, 4], vec![2, 4, 6, 1], vec![0, 0, 0, 5]]);
        let r = m.rank();
        assert_eq!(r + m.nullspace_basis().rows(), m.cols());
    }

    #[test]
    fn double_nullspace_recovers_rowspace() {
        let f = gf("5");
        let g = mat(&f, &[vec![1, 1, 1, 1], vec![0, 1, 2, 3]]);
        let dd = g.nullspace_basis().nullspace_basis();
        assert!(g.rowspace_equal(&dd).unwrap());
    }

    #[test]
    fn rowspace_equality_under_row_ops() {
        let f = gf("7");
        let a = mat(&f, &[vec![1, 2, 3], vec![4, 5, 6]]);
        let permuted = mat(&f, &[vec![4, 5, 6], vec![1, 2, 3]]);
        let scaled = mat(&f, &[vec![3, 6, 2], vec![4, 5, 6]]);
        assert!(a.rowspace_equal(&permuted).unwrap());
        assert!(a.rowspace_equal(&scaled).unwrap());
        let f5 = gf("5");
        let e1 = mat(&f5, &[vec![1, 0]]);
        let e2 = mat(&f5, &[vec![0, 1]]);
        assert!(!e1.rowspace_equal(&e2).unwrap());
    }

    #[test]
    fn membership_checks() {
        let f = gf("5");
        let m = mat(&f, &[vec![1, 1, 1, 1], vec![0, 1, 2, 3]]);
        let zero = VectorGF::zeros(f.clone(), 4);
        assert!(m.membership(&zero).unwrap());
        let in_span = VectorGF::from_encodings(f.clone(), &[1, 2, 3, 4]).unwrap();
        assert!(m.membership(&in_span).unwrap());
        let out = VectorGF::from_encodings(f.clone(), &[1, 0, 0, 0]).unwrap();
        assert!(!m.membership(&out).unwrap());
    }

    #[test]
    fn dimension_mismatch_errors() {
        let f = gf("5");
        let a = mat(&f, &[vec![1, 2]]);
        let b = mat(&f, &[vec![1, 2, 3]]);
        assert!(a.rowspace_equal(&b).is_err());
        assert!(a.mul(&b).is_err());
        let g = gf("7");
        let c = MatrixGF::from_encoding_rows(g, &[vec![1, 2]]).unwrap();
        assert!(a.rowspace_equal(&c).is_err());
    }
}
