use super::lagrangian::{Lagrangian, SymplecticSpace};
use crate::error::{domain, Error, Result};
use crate::exact::ExactMatrix;

/// A 2g×2g matrix M with MᵀJM = J.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymplecticMap {
    space: SymplecticSpace,
    matrix: ExactMatrix,
}

impl SymplecticMap {
    pub fn new(space: SymplecticSpace, matrix: ExactMatrix) -> Result<Self> {
        if matrix.field() != space.field() {
            return Err(Error::FieldMismatch);
        }
        let n = 2 * space.genus();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::Shape(format!("symplectic map must be {n}x{n}")));
        }
        let j = space.j();
        if matrix.transpose().mul(&j)?.mul(&matrix)? != j {
            return domain("matrix does not preserve ω");
        }
        Ok(SymplecticMap { space, matrix })
    }

    pub fn is_symplectic(space: SymplecticSpace, m: &ExactMatrix) -> bool {
        Self::new(space, m.clone()).is_ok()
    }

    pub fn identity(space: SymplecticSpace) -> Self {
        SymplecticMap { space, matrix: ExactMatrix::identity(space.field(), 2 * space.genus()) }
    }

    /// Assembles (A, B; C, D) without validation; callers check or know the result.
    fn from_blocks_unchecked(space: SymplecticSpace, a: &ExactMatrix, b: &ExactMatrix, c: &ExactMatrix, d: &ExactMatrix) -> Self {
        let matrix =
            ExactMatrix::from_blocks(space.field(), &[vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]]).unwrap();
        SymplecticMap { space, matrix }
    }

    pub fn space(&self) -> SymplecticSpace {
        self.space
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    /// The g×g blocks (A, B, C, D).
    pub fn blocks(&self) -> [ExactMatrix; 4] {
        let g = self.space.genus();
        [
            self.matrix.submatrix(0, g, 0, g),
            self.matrix.submatrix(0, g, g, g),
            self.matrix.submatrix(g, g, 0, g),
            self.matrix.submatrix(g, g, g, g),
        ]
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.space != other.space {
            return Err(Error::FieldMismatch);
        }
        Ok(SymplecticMap { space: self.space, matrix: self.matrix.mul(&other.matrix)? })
    }

    /// M⁻¹ = −J Mᵀ J.
    pub fn inverse(&self) -> Self {
        let j = self.space.j();
        let inv = j.mul(&self.matrix.transpose()).unwrap().mul(&j).unwrap().neg();
        SymplecticMap { space: self.space, matrix: inv }
    }

    pub fn act(&self, l: &Lagrangian) -> Result<Lagrangian> {
        if l.space() != self.space {
            return Err(Error::FieldMismatch);
        }
        Lagrangian::new(self.space, &self.matrix.mul(l.basis())?)
    }

    /// φ|_Λ as a g×g matrix from the basis of Λ to the basis of φΛ.
    pub fn restrict(&self, l: &Lagrangian) -> Result<(Lagrangian, ExactMatrix)> {
        let image = self.act(l)?;
        let coords = image.coordinates(&self.matrix.mul(l.basis())?)?;
        Ok((image, coords))
    }
}

fn symmetric(space: SymplecticSpace, q: &ExactMatrix) -> Result<()> {
    space.check_square(q, "generator parameter")?;
    if !q.is_symmetric() {
        return domain("generator parameter must be symmetric");
    }
    Ok(())
}

/// (I, q; 0, I), fixing L pointwise.
pub fn generator_upper(space: SymplecticSpace, q: &ExactMatrix) -> Result<SymplecticMap> {
    symmetric(space, q)?;
    Ok(SymplecticMap::from_blocks_unchecked(space, &space.identity(), q, &space.zero(), &space.identity()))
}

/// (I, 0; q, I), fixing L* pointwise.
pub fn generator_lower(space: SymplecticSpace, q: &ExactMatrix) -> Result<SymplecticMap> {
    symmetric(space, q)?;
    Ok(SymplecticMap::from_blocks_unchecked(space, &space.identity(), &space.zero(), q, &space.identity()))
}

/// (x, 0; 0, ᵗx⁻¹).
pub fn generator_h(space: SymplecticSpace, x: &ExactMatrix) -> Result<SymplecticMap> {
    space.check_square(x, "Levi parameter")?;
    let xit = x.inverse()?.transpose();
    Ok(SymplecticMap::from_blocks_unchecked(space, x, &space.zero(), &space.zero(), &xit))
}

/// (0, −q⁻¹; q, 0) = lower(q)·upper(−q⁻¹)·lower(q) for symmetric invertible q.
pub fn generator_m(space: SymplecticSpace, q: &ExactMatrix) -> Result<SymplecticMap> {
    symmetric(space, q)?;
    generator_weyl(space, q)
}

/// (0, −ᵗy⁻¹; y, 0) for any invertible y; equals m(1)·h(y).
pub fn generator_weyl(space: SymplecticSpace, y: &ExactMatrix) -> Result<SymplecticMap> {
    space.check_square(y, "Weyl parameter")?;
    let yit = y.inverse()?.transpose();
    Ok(SymplecticMap::from_blocks_unchecked(space, &space.zero(), &yit.neg(), y, &space.zero()))
}
