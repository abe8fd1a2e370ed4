use crate::error::{domain, Error, Result};
use crate::exact::{ExactMatrix, FieldDescriptor, FieldElement};

/// H(L) = L ⊕ L* of dimension 2g with ω((x,ξ),(y,η)) = ξ(y) − η(x).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymplecticSpace {
    field: FieldDescriptor,
    g: usize,
}

impl SymplecticSpace {
    pub fn new(field: FieldDescriptor, g: usize) -> Result<Self> {
        if g == 0 {
            return domain("genus must be at least 1");
        }
        Ok(SymplecticSpace { field, g })
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    /// Gram matrix of ω: [[0, −I], [I, 0]].
    pub fn j(&self) -> ExactMatrix {
        let g = self.g;
        let mut j = ExactMatrix::zeros(self.field, 2 * g, 2 * g);
        for i in 0..g {
            j.set(i, g + i, FieldElement::from_i64(self.field, -1));
            j.set(g + i, i, FieldElement::one(self.field));
        }
        j
    }

    /// ω(x, y) for column vectors of length 2g.
    pub fn omega(&self, x: &ExactMatrix, y: &ExactMatrix) -> Result<FieldElement> {
        Ok(x.transpose().mul(&self.j())?.mul(y)?.get(0, 0).clone())
    }

    pub fn identity(&self) -> ExactMatrix {
        ExactMatrix::identity(self.field, self.g)
    }

    pub fn zero(&self) -> ExactMatrix {
        ExactMatrix::zeros(self.field, self.g, self.g)
    }

    pub(crate) fn check_square(&self, m: &ExactMatrix, what: &str) -> Result<()> {
        if m.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        if m.rows() != self.g || m.cols() != self.g {
            return Err(Error::Shape(format!("{what} must be {0}x{0}", self.g)));
        }
        Ok(())
    }
}

/// A Lagrangian subspace, stored by its unique column-reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lagrangian {
    space: SymplecticSpace,
    basis: ExactMatrix,
    pivots: Vec<usize>,
}

impl Lagrangian {
    /// Span of the columns of `b`, which must be a 2g×g isotropic matrix of rank g.
    pub fn new(space: SymplecticSpace, b: &ExactMatrix) -> Result<Self> {
        if b.field() != space.field {
            return Err(Error::FieldMismatch);
        }
        if b.rows() != 2 * space.g {
            return Err(Error::Shape(format!("Lagrangian basis needs {} rows", 2 * space.g)));
        }
        let r = b.transpose().rref();
        if r.rank() != space.g {
            return domain(format!("basis spans a {}-dimensional subspace, expected {}", r.rank(), space.g));
        }
        let basis = r.reduced.submatrix(0, space.g, 0, 2 * space.g).transpose();
        if !basis.transpose().mul(&space.j())?.mul(&basis)?.is_zero() {
            return domain("subspace is not isotropic");
        }
        Ok(Lagrangian { space, basis, pivots: r.pivots })
    }

    pub fn is_lagrangian(space: SymplecticSpace, b: &ExactMatrix) -> bool {
        b.cols() == space.g && Self::new(space, b).is_ok()
    }

    /// L = L ⊕ 0.
    pub fn standard(space: SymplecticSpace) -> Self {
        let b = ExactMatrix::vstack(&[&space.identity(), &space.zero()]).unwrap();
        Self::new(space, &b).unwrap()
    }

    /// L* = 0 ⊕ L*.
    pub fn dual(space: SymplecticSpace) -> Self {
        let b = ExactMatrix::vstack(&[&space.zero(), &space.identity()]).unwrap();
        Self::new(space, &b).unwrap()
    }

    /// {(v, qv)} for symmetric q, the image of L under the lower generator.
    pub fn graph(space: SymplecticSpace, q: &ExactMatrix) -> Result<Self> {
        space.check_square(q, "graph matrix")?;
        if !q.is_symmetric() {
            return domain("graph of a non-symmetric matrix is not Lagrangian");
        }
        Self::new(space, &ExactMatrix::vstack(&[&space.identity(), q])?)
    }

    pub fn space(&self) -> SymplecticSpace {
        self.space
    }

    pub fn field(&self) -> FieldDescriptor {
        self.space.field
    }

    pub fn genus(&self) -> usize {
        self.space.g
    }

    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    /// Coordinates of the columns of `v` in the stored basis; fails if some column is outside.
    pub fn coordinates(&self, v: &ExactMatrix) -> Result<ExactMatrix> {
        let mut c = ExactMatrix::zeros(self.field(), self.genus(), v.cols());
        for (i, &p) in self.pivots.iter().enumerate() {
            for j in 0..v.cols() {
                c.set(i, j, v.get(p, j).clone());
            }
        }
        if self.basis.mul(&c)? != *v {
            return domain("vector does not lie in the Lagrangian");
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldDescriptor = FieldDescriptor::Rationals;

    #[test]
    fn canonical_form_identifies_equal_spans() {
        let s = SymplecticSpace::new(Q, 1).unwrap();
        let a = Lagrangian::new(s, &ExactMatrix::from_i64_rows(Q, &[[2], [2]])).unwrap();
        let b = Lagrangian::new(s, &ExactMatrix::from_i64_rows(Q, &[[-1], [-1]])).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.basis(), &ExactMatrix::from_i64_rows(Q, &[[1], [1]]));
    }

    #[test]
    fn rejects_non_isotropic_and_deficient() {
        let s = SymplecticSpace::new(Q, 2).unwrap();
        let b = ExactMatrix::from_i64_rows(Q, &[[1, 0], [0, 0], [0, 1], [0, 0]]);
        assert!(!Lagrangian::is_lagrangian(s, &b));
        let b = ExactMatrix::from_i64_rows(Q, &[[1, 2], [0, 0], [0, 0], [0, 0]]);
        assert!(!Lagrangian::is_lagrangian(s, &b));
        let b = ExactMatrix::from_i64_rows(Q, &[[1, 0], [0, 0], [0, 0], [0, 1]]);
        assert!(Lagrangian::is_lagrangian(s, &b));
    }

    #[test]
    fn omega_pairs_l_with_dual() {
        let s = SymplecticSpace::new(Q, 1).unwrap();
        let x = ExactMatrix::from_i64_rows(Q, &[[1], [0]]);
        let y = ExactMatrix::from_i64_rows(Q, &[[0], [1]]);
        assert_eq!(s.omega(&x, &y).unwrap(), FieldElement::from_i64(Q, -1));
        assert_eq!(s.j().transpose(), s.j().neg());
    }

    #[test]
    fn coordinates_recover_combinations() {
        let s = SymplecticSpace::new(Q, 2).unwrap();
        let q = ExactMatrix::from_i64_rows(Q, &[[1, 2], [2, 5]]);
        let l = Lagrangian::graph(s, &q).unwrap();
        let c = ExactMatrix::from_i64_rows(Q, &[[3], [-1]]);
        let v = l.basis().mul(&c).unwrap();
        assert_eq!(l.coordinates(&v).unwrap(), c);
        assert!(l.coordinates(&ExactMatrix::from_i64_rows(Q, &[[0], [0], [1], [0]])).is_err());
    }
}
