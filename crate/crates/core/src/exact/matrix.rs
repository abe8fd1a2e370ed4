use std::fmt;

use super::field::{FieldDescriptor, FieldElement};
use crate::error::{Error, Result};

/// Dense matrix over a single exact field, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    field: FieldDescriptor,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

/// Reduced row-echelon form of a matrix together with a kernel basis.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: ExactMatrix,
    pub pivots: Vec<usize>,
    /// Kernel basis, one vector per column.
    pub kernel: ExactMatrix,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn shape_err<T>(what: &str, a: &ExactMatrix, b: &ExactMatrix) -> Result<T> {
    Err(Error::Shape(format!("{what}: {}x{} vs {}x{}", a.rows, a.cols, b.rows, b.cols)))
}

impl ExactMatrix {
    pub fn zeros(field: FieldDescriptor, rows: usize, cols: usize) -> Self {
        ExactMatrix { field, rows, cols, data: vec![FieldElement::zero(field); rows * cols] }
    }

    pub fn identity(field: FieldDescriptor, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = FieldElement::one(field);
        }
        m
    }

    pub fn diagonal(field: FieldDescriptor, entries: &[FieldElement]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(field, n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    pub fn scalar(field: FieldDescriptor, n: usize, c: &FieldElement) -> Self {
        Self::diagonal(field, &vec![c.clone(); n])
    }

    pub fn from_rows(field: FieldDescriptor, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Shape("ragged rows".into()));
            }
            for e in row {
                if e.field() != field {
                    return Err(Error::FieldMismatch);
                }
                data.push(e);
            }
        }
        Ok(ExactMatrix { field, rows: r, cols: c, data })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64_rows<R: AsRef<[i64]>>(field: FieldDescriptor, rows: &[R]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| FieldElement::from_i64(field, v)).collect())
            .collect();
        Self::from_rows(field, rows).expect("integer rows")
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
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

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        assert_eq!(v.field(), self.field, "entry from another field");
        self.data[i * self.cols + j] = v;
    }

    pub fn row_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != rhs.rows {
            return shape_err("product", self, rhs);
        }
        let mut out = Self::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * rhs.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip(&self, rhs: &Self, what: &str, f: impl Fn(&FieldElement, &FieldElement) -> FieldElement) -> Result<Self> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return shape_err(what, self, rhs);
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect();
        Ok(ExactMatrix { field: self.field, rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, "sum", |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, "difference", |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        ExactMatrix { data: self.data.iter().map(|a| -a).collect(), ..self.clone() }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        ExactMatrix { data: self.data.iter().map(|a| a * c).collect(), ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldElement::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() }))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn submatrix(&self, r0: usize, nr: usize, c0: usize, nc: usize) -> Self {
        assert!(r0 + nr <= self.rows && c0 + nc <= self.cols, "submatrix out of range");
        let mut out = Self::zeros(self.field, nr, nc);
        for i in 0..nr {
            for j in 0..nc {
                out.data[i * nc + j] = self.get(r0 + i, c0 + j).clone();
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Self {
        self.submatrix(0, self.rows, j, 1)
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn put(&mut self, r0: usize, c0: usize, block: &Self) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = block.get(i, j).clone();
            }
        }
    }

    /// Assembles a block matrix. Every block row shares a height and every
    /// block column a width.
    pub fn from_blocks(field: FieldDescriptor, grid: &[Vec<ExactMatrix>]) -> Result<Self> {
        let heights: Vec<usize> = grid.iter().map(|r| r.first().map_or(0, |b| b.rows)).collect();
        let widths: Vec<usize> = grid.first().map_or(Vec::new(), |r| r.iter().map(|b| b.cols).collect());
        let mut out = Self::zeros(field, heights.iter().sum(), widths.iter().sum());
        let mut r0 = 0;
        for (bi, row) in grid.iter().enumerate() {
            if row.len() != widths.len() {
                return Err(Error::Shape("ragged block rows".into()));
            }
            let mut c0 = 0;
            for (bj, b) in row.iter().enumerate() {
                if b.field != field {
                    return Err(Error::FieldMismatch);
                }
                if b.rows != heights[bi] || b.cols != widths[bj] {
                    return Err(Error::Shape("inconsistent block sizes".into()));
                }
                out.put(r0, c0, b);
                c0 += b.cols;
            }
            r0 += heights[bi];
        }
        Ok(out)
    }

    pub fn hstack(parts: &[&ExactMatrix]) -> Result<Self> {
        let field = parts.first().ok_or_else(|| Error::Shape("empty stack".into()))?.field;
        Self::from_blocks(field, &[parts.iter().map(|m| (*m).clone()).collect()])
    }

    pub fn vstack(parts: &[&ExactMatrix]) -> Result<Self> {
        let field = parts.first().ok_or_else(|| Error::Shape("empty stack".into()))?.field;
        let grid: Vec<Vec<ExactMatrix>> = parts.iter().map(|m| vec![(*m).clone()]).collect();
        Self::from_blocks(field, &grid)
    }

    pub fn block_diag(field: FieldDescriptor, parts: &[&ExactMatrix]) -> Self {
        let n: usize = parts.iter().map(|m| m.rows).sum();
        let c: usize = parts.iter().map(|m| m.cols).sum();
        let mut out = Self::zeros(field, n, c);
        let (mut r0, mut c0) = (0, 0);
        for m in parts {
            out.put(r0, c0, m);
            r0 += m.rows;
            c0 += m.cols;
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let idx = r * m.cols + j;
                m.data[idx] = &m.data[idx] * &inv;
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let t = m.get(r, j);
                    if !t.is_zero() {
                        let v = &m.data[i * m.cols + j] - &(&f * t);
                        m.data[i * m.cols + j] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
        let mut kernel = Self::zeros(m.field, m.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            kernel.data[f * free.len() + k] = FieldElement::one(m.field);
            for (i, &pc) in pivots.iter().enumerate() {
                kernel.data[pc * free.len() + k] = -m.get(i, f);
            }
        }
        Rref { reduced: m, pivots, kernel }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Kernel basis as columns.
    pub fn kernel(&self) -> Self {
        self.rref().kernel
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape(format!("inverse of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let aug = Self::hstack(&[self, &Self::identity(self.field, n)])?;
        let r = aug.rref();
        if r.pivots.len() < n || r.pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(r.reduced.submatrix(0, n, n, n))
    }

    pub fn det(&self) -> Result<FieldElement> {
        if !self.is_square() {
            return Err(Error::Shape(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let mut m = self.clone();
        let n = m.rows;
        let mut det = FieldElement::one(m.field);
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(FieldElement::zero(m.field));
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv()?;
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) * &inv;
                for j in c..n {
                    let t = m.get(c, j);
                    if !t.is_zero() {
                        let v = &m.data[i * n + j] - &(&f * t);
                        m.data[i * n + j] = v;
                    }
                }
            }
        }
        Ok(det)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.row_strings().into_iter().map(|r| format!("[{}]", r.join(", "))).collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldDescriptor = FieldDescriptor::Rationals;

    #[test]
    fn rref_examples() {
        let r = ExactMatrix::identity(Q, 2).rref();
        assert_eq!(r.rank(), 2);
        assert_eq!(r.kernel.cols(), 0);

        let r = ExactMatrix::zeros(Q, 2, 3).rref();
        assert_eq!(r.rank(), 0);
        assert_eq!(r.kernel.cols(), 3);

        let r = ExactMatrix::from_i64_rows(Q, &[[1, 2], [2, 4]]).rref();
        assert_eq!(r.rank(), 1);
        assert_eq!(r.kernel, ExactMatrix::from_i64_rows(Q, &[[-2], [1]]));
    }

    #[test]
    fn inverse_and_determinant() {
        let m = ExactMatrix::from_i64_rows(Q, &[[2, 1], [7, 4]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert_eq!(m.det().unwrap(), FieldElement::one(Q));
        let s = ExactMatrix::from_i64_rows(Q, &[[1, 2], [2, 4]]);
        assert_eq!(s.inverse(), Err(Error::Singular));
        assert!(s.det().unwrap().is_zero());
    }

    #[test]
    fn determinant_tracks_row_swaps() {
        let f5 = FieldDescriptor::prime(5).unwrap();
        let m = ExactMatrix::from_i64_rows(f5, &[[0, 1], [1, 0]]);
        assert_eq!(m.det().unwrap(), FieldElement::from_i64(f5, -1));
    }

    #[test]
    fn blocks_round_trip() {
        let a = ExactMatrix::from_i64_rows(Q, &[[1, 2], [3, 4]]);
        let z = ExactMatrix::zeros(Q, 2, 2);
        let big = ExactMatrix::from_blocks(Q, &[vec![a.clone(), z.clone()], vec![z, a.clone()]]).unwrap();
        assert_eq!(big.submatrix(2, 2, 2, 2), a);
        assert_eq!(big, ExactMatrix::block_diag(Q, &[&a, &a]));
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let f3 = FieldDescriptor::prime(3).unwrap();
        let a = ExactMatrix::identity(Q, 2);
        let b = ExactMatrix::identity(f3, 2);
        assert_eq!(a.mul(&b), Err(Error::FieldMismatch));
    }
}
