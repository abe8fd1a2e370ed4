use num_bigint::BigUint;

use super::class::WittClass;
use crate::error::{domain, Error, Result};
use crate::exact::{
    diagonal_entries, hilbert_symbol, rational_square_class, ExactMatrix, FieldDescriptor, FieldElement, Place,
    SquareClass,
};

/// A symmetric bilinear form given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymmetricForm {
    gram: ExactMatrix,
}

impl SymmetricForm {
    pub fn new(gram: ExactMatrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return domain("Gram matrix is not symmetric");
        }
        Ok(SymmetricForm { gram })
    }

    pub fn diagonal(field: FieldDescriptor, entries: &[FieldElement]) -> Self {
        SymmetricForm { gram: ExactMatrix::diagonal(field, entries) }
    }

    pub fn from_i64_diagonal(field: FieldDescriptor, entries: &[i64]) -> Self {
        let e: Vec<_> = entries.iter().map(|&v| FieldElement::from_i64(field, v)).collect();
        Self::diagonal(field, &e)
    }

    /// Orthogonal sum of `m` hyperbolic planes.
    pub fn hyperbolic(field: FieldDescriptor, m: usize) -> Self {
        let h = ExactMatrix::from_i64_rows(field, &[[0, 1], [1, 0]]);
        let parts = vec![&h; m];
        SymmetricForm { gram: ExactMatrix::block_diag(field, &parts) }
    }

    pub fn empty(field: FieldDescriptor) -> Self {
        SymmetricForm { gram: ExactMatrix::zeros(field, 0, 0) }
    }

    pub fn gram(&self) -> &ExactMatrix {
        &self.gram
    }

    pub fn field(&self) -> FieldDescriptor {
        self.gram.field()
    }

    /// Support dimension.
    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn orthogonal_sum(&self, other: &Self) -> Result<Self> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(SymmetricForm { gram: ExactMatrix::block_diag(self.field(), &[&self.gram, &other.gram]) })
    }

    pub fn neg(&self) -> Self {
        SymmetricForm { gram: self.gram.neg() }
    }

    /// The form `Cᵀ q C`.
    pub fn congruent(&self, c: &ExactMatrix) -> Result<Self> {
        let gram = c.transpose().mul(&self.gram)?.mul(c)?;
        Ok(SymmetricForm { gram })
    }

    /// Radical basis as columns.
    pub fn radical(&self) -> ExactMatrix {
        self.gram.kernel()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.gram.rank() == self.dim()
    }

    fn nonzero_diagonal(&self) -> Vec<FieldElement> {
        diagonal_entries(&self.gram).expect("symmetric by construction").into_iter().filter(|d| !d.is_zero()).collect()
    }
}

/// Passes to the nondegenerate form induced on the support modulo the radical.
pub fn regularize(q: &SymmetricForm) -> (SymmetricForm, usize) {
    let d = q.nonzero_diagonal();
    let radical = q.dim() - d.len();
    (SymmetricForm::diagonal(q.field(), &d), radical)
}

/// Square class of `(-1)^{r(r-1)/2} det`.
pub fn signed_discriminant(q: &SymmetricForm) -> Result<SquareClass> {
    let d = q.nonzero_diagonal();
    if d.len() != q.dim() {
        return domain("signed discriminant of a degenerate form");
    }
    let r = d.len() as u64;
    let mut disc = SquareClass::one(q.field());
    for x in &d {
        disc = disc.mul(&SquareClass::of(x)?);
    }
    Ok(disc.twist(r * r.saturating_sub(1) / 2))
}

pub fn is_neutral(q: &SymmetricForm) -> bool {
    q.dim() % 2 == 0 && q.is_nondegenerate() && witt_class(q).is_zero()
}

pub fn witt_class(q: &SymmetricForm) -> WittClass {
    WittClass::from_diagonal(q.field(), &q.nonzero_diagonal()).expect("nonzero entries")
}

/// `∏_{i<j} (d_i, d_j)_v` over a diagonalization of a nondegenerate rational form.
pub fn hasse_invariant(q: &SymmetricForm, place: &Place) -> Result<i32> {
    if !q.field().is_rationals() {
        return domain("Hasse invariants are computed over Q only");
    }
    let d = q.nonzero_diagonal();
    if d.len() != q.dim() {
        return domain("Hasse invariant of a degenerate form");
    }
    let d: Vec<_> = d.iter().map(|x| x.as_rational().unwrap().clone()).collect();
    let mut h = 1;
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            h *= hilbert_symbol(&d[i], &d[j], place)?;
        }
    }
    Ok(h)
}

/// Infinity, 2, and the odd primes dividing some diagonal entry.
pub fn hasse_places(q: &SymmetricForm) -> Vec<Place> {
    let mut primes: Vec<BigUint> = vec![BigUint::from(2u8)];
    for x in q.nonzero_diagonal() {
        if let Some(r) = x.as_rational() {
            primes.extend(rational_square_class(r).1);
        }
    }
    primes.sort();
    primes.dedup();
    std::iter::once(Place::Infinity).chain(primes.into_iter().map(Place::Prime)).collect()
}

/// Complete isometry invariants: two forms are isometric iff these agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IsometryInvariants {
    pub dim: usize,
    pub radical_dim: usize,
    pub regular_class: WittClass,
}

pub fn isometry_invariants(q: &SymmetricForm) -> IsometryInvariants {
    let (reg, radical_dim) = regularize(q);
    IsometryInvariants { dim: q.dim(), radical_dim, regular_class: witt_class(&reg) }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldDescriptor = FieldDescriptor::Rationals;

    fn fp(p: u64) -> FieldDescriptor {
        FieldDescriptor::prime(p).unwrap()
    }

    #[test]
    fn regularize_examples() {
        let (r, rad) = regularize(&SymmetricForm::new(ExactMatrix::zeros(Q, 3, 3)).unwrap());
        assert_eq!((r.dim(), rad), (0, 3));

        let s = SymmetricForm::new(ExactMatrix::from_i64_rows(Q, &[[0, 1, 0], [1, -1, 1], [0, 1, 0]])).unwrap();
        let rad = s.radical();
        assert_eq!(rad.cols(), 1);
        assert_eq!(rad.get(0, 0), &-rad.get(2, 0));
        assert!(rad.get(1, 0).is_zero() && !rad.get(0, 0).is_zero());
        let (r, rad) = regularize(&s);
        assert_eq!((r.dim(), rad), (2, 1));
        assert!(is_neutral(&r));

        let h = SymmetricForm::hyperbolic(Q, 1);
        assert_eq!(regularize(&h).1, 0);
    }

    #[test]
    fn signed_discriminant_examples() {
        let f3 = fp(3);
        let d = signed_discriminant(&SymmetricForm::from_i64_diagonal(f3, &[1, 1])).unwrap();
        assert_eq!(d.to_string(), "2");
        assert!(!d.is_trivial());
        assert!(signed_discriminant(&SymmetricForm::hyperbolic(Q, 1)).unwrap().is_trivial());
        for m in 1..4 {
            let q = SymmetricForm::from_i64_diagonal(Q, &vec![1; 4 * m]);
            assert!(signed_discriminant(&q).unwrap().is_trivial());
        }
        assert!(signed_discriminant(&SymmetricForm::from_i64_diagonal(Q, &[1, 0])).is_err());
    }

    #[test]
    fn neutrality_examples() {
        assert!(is_neutral(&SymmetricForm::hyperbolic(Q, 1)));
        assert!(!is_neutral(&SymmetricForm::from_i64_diagonal(Q, &[1])));
        assert!(is_neutral(&SymmetricForm::from_i64_diagonal(fp(5), &[1, 1])));
        assert!(!is_neutral(&SymmetricForm::from_i64_diagonal(Q, &[1, 1])));
    }

    #[test]
    fn hasse_examples() {
        let two = Place::Prime(2u8.into());
        assert_eq!(hasse_invariant(&SymmetricForm::from_i64_diagonal(Q, &[1, 1]), &Place::Infinity).unwrap(), 1);
        assert_eq!(hasse_invariant(&SymmetricForm::from_i64_diagonal(Q, &[-1, -1]), &Place::Infinity).unwrap(), -1);
        assert_eq!(hasse_invariant(&SymmetricForm::from_i64_diagonal(Q, &[1, -1]), &two).unwrap(), 1);
        assert!(hasse_invariant(&SymmetricForm::from_i64_diagonal(fp(3), &[1, 1]), &two).is_err());
    }

    #[test]
    fn isometry_distinguishes_radicals() {
        let a = SymmetricForm::from_i64_diagonal(Q, &[1, -1, 0]);
        let b = SymmetricForm::from_i64_diagonal(Q, &[2, -2, 0]);
        let c = SymmetricForm::from_i64_diagonal(Q, &[0, 0, 0]);
        assert_eq!(isometry_invariants(&a), isometry_invariants(&b));
        assert_ne!(isometry_invariants(&a), isometry_invariants(&c));
    }
}
