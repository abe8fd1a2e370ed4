use super::path::LagrangianPath;
use crate::error::{domain, Error, Result};
use crate::exact::ExactMatrix;
use crate::symplectic::{affine_diff, beta, transverse};
use crate::witt::SymmetricForm;

fn inv_beta(path: &LagrangianPath, a: usize, b: usize) -> Result<ExactMatrix> {
    let n = path.nodes();
    beta(&n[a], &n[b])?.inverse().map_err(|_| Error::Internal(format!("nodes {a} and {b} should be transverse")))
}

/// S(α): block-tridiagonal form on Λ₁* ⊕ … ⊕ Λₙ*.
///
/// Diagonal blocks d_{Λᵢ}(Λᵢ₋₁, Λᵢ₊₁), block (i, i+1) = β_{i,i+1}⁻¹ and
/// block (i+1, i) = −β_{i+1,i}⁻¹, its transpose.
pub fn sylvester_matrix(path: &LagrangianPath) -> Result<SymmetricForm> {
    let n = path.interior_len();
    let space = path.space();
    let g = space.genus();
    let nodes = path.nodes();
    let mut s = ExactMatrix::zeros(space.field(), n * g, n * g);
    for i in 1..=n {
        let b = i - 1;
        let d = affine_diff(&nodes[i], &nodes[i - 1], &nodes[i + 1])?;
        s.put(b * g, b * g, d.gram());
        if i < n {
            s.put(b * g, (b + 1) * g, &inv_beta(path, i, i + 1)?);
            s.put((b + 1) * g, b * g, &inv_beta(path, i + 1, i)?.neg());
        }
    }
    SymmetricForm::new(s).map_err(|_| Error::Internal("Sylvester matrix is not symmetric".into()))
}

/// (S(α) nondegenerate, Λ₀ ⋔ Λ_{n+1}); the two always agree.
pub fn nondegenerate_iff_transverse(path: &LagrangianPath) -> Result<(bool, bool)> {
    let s = sylvester_matrix(path)?;
    Ok((s.is_nondegenerate(), transverse(path.first(), path.last())?))
}

/// Matrices exhibiting S(α)·E₀ = Tₙ·β_{0,n+1} and its mirror S(α)·F = U·β_{n+1,0}.
#[derive(Clone, Debug)]
pub struct TransversalityWitness {
    pub sylvester: ExactMatrix,
    /// β_{0,1}, …, β_{0,n} stacked.
    pub e0: ExactMatrix,
    /// Only the last block is nonzero: −β_{n,n+1}⁻¹.
    pub tn: ExactMatrix,
    pub beta_ends: ExactMatrix,
    /// β_{n+1,1}, …, β_{n+1,n} stacked.
    pub f_last: ExactMatrix,
    /// Only the first block is nonzero: β_{1,0}⁻¹.
    pub u0: ExactMatrix,
    pub beta_ends_rev: ExactMatrix,
    /// S(α) without its first block column and last block row.
    pub truncation: ExactMatrix,
}

impl TransversalityWitness {
    pub fn identity_holds(&self) -> Result<bool> {
        Ok(self.sylvester.mul(&self.e0)? == self.tn.mul(&self.beta_ends)?)
    }

    pub fn mirror_identity_holds(&self) -> Result<bool> {
        Ok(self.sylvester.mul(&self.f_last)? == self.u0.mul(&self.beta_ends_rev)?)
    }

    /// Block-lower-triangular with invertible diagonal blocks (hence invertible).
    pub fn truncation_is_triangular_invertible(&self, g: usize) -> bool {
        let t = &self.truncation;
        let blocks = t.rows() / g;
        for bi in 0..blocks {
            for bj in bi + 1..blocks {
                if !t.submatrix(bi * g, g, bj * g, g).is_zero() {
                    return false;
                }
            }
            if !t.submatrix(bi * g, g, bi * g, g).is_invertible() {
                return false;
            }
        }
        t.rows() == 0 || t.is_invertible()
    }
}

pub fn transversality_witness(path: &LagrangianPath) -> Result<TransversalityWitness> {
    let n = path.interior_len();
    if n == 0 {
        return domain("transversality witness needs at least one interior node");
    }
    let space = path.space();
    let g = space.genus();
    let nodes = path.nodes();
    let sylvester = sylvester_matrix(path)?.gram().clone();
    let mut e0 = ExactMatrix::zeros(space.field(), n * g, g);
    let mut f_last = ExactMatrix::zeros(space.field(), n * g, g);
    for i in 1..=n {
        e0.put((i - 1) * g, 0, &beta(&nodes[0], &nodes[i])?);
        f_last.put((i - 1) * g, 0, &beta(&nodes[n + 1], &nodes[i])?);
    }
    let mut tn = ExactMatrix::zeros(space.field(), n * g, g);
    tn.put((n - 1) * g, 0, &inv_beta(path, n, n + 1)?.neg());
    let mut u0 = ExactMatrix::zeros(space.field(), n * g, g);
    u0.put(0, 0, &inv_beta(path, 1, 0)?);
    let truncation = sylvester.submatrix(0, (n - 1) * g, g, (n - 1) * g);
    Ok(TransversalityWitness {
        sylvester,
        e0,
        tn,
        beta_ends: beta(&nodes[0], &nodes[n + 1])?,
        f_last,
        u0,
        beta_ends_rev: beta(&nodes[n + 1], &nodes[0])?,
        truncation,
    })
}
