use super::lagrangian::{Lagrangian, SymplecticSpace};
use super::map::{generator_lower, generator_upper};
use crate::error::{domain, Error, Result};
use crate::exact::{ExactMatrix, FieldDescriptor, FieldElement};
use crate::witt::SymmetricForm;

fn same_space(a: &Lagrangian, b: &Lagrangian) -> Result<()> {
    if a.space() != b.space() {
        return Err(Error::Shape("Lagrangians live in different spaces".into()));
    }
    Ok(())
}

/// β_{Λ,M}: Λ → M*, entry (i, j) = ω(λ_j, m_i).
pub fn beta(l: &Lagrangian, m: &Lagrangian) -> Result<ExactMatrix> {
    same_space(l, m)?;
    let jt = l.space().j().transpose();
    m.basis().transpose().mul(&jt)?.mul(l.basis())
}

pub fn transverse(l: &Lagrangian, m: &Lagrangian) -> Result<bool> {
    same_space(l, m)?;
    Ok(ExactMatrix::hstack(&[l.basis(), m.basis()])?.rank() == 2 * l.genus())
}

fn inverse_beta(l: &Lagrangian, m: &Lagrangian, what: &str) -> Result<ExactMatrix> {
    beta(l, m)?.inverse().map_err(|_| Error::Domain(format!("{what} are not transverse")))
}

/// d_X(Λ, M) = −β_{X,M}⁻¹ β_{Λ,M} β_{Λ,X}⁻¹, a symmetric form on X*.
pub fn affine_diff(x: &Lagrangian, l: &Lagrangian, m: &Lagrangian) -> Result<SymmetricForm> {
    same_space(x, l)?;
    same_space(x, m)?;
    let a = inverse_beta(x, m, "X and M")?;
    let c = inverse_beta(l, x, "Λ and X")?;
    let d = a.mul(&beta(l, m)?)?.mul(&c)?.neg();
    SymmetricForm::new(d).map_err(|_| Error::Internal("affine difference is not symmetric".into()))
}

/// Components (p₁, p₂) of the inclusion of X along H = Λ₁ ⊕ Λ₂, in stored bases.
pub fn project_along(x: &Lagrangian, l1: &Lagrangian, l2: &Lagrangian) -> Result<(ExactMatrix, ExactMatrix)> {
    same_space(x, l1)?;
    same_space(x, l2)?;
    let p1 = inverse_beta(l1, l2, "Λ₁ and Λ₂")?.mul(&beta(x, l2)?)?;
    let p2 = inverse_beta(l2, l1, "Λ₁ and Λ₂")?.mul(&beta(x, l1)?)?;
    Ok((p1, p2))
}

pub(crate) fn ladder(field: FieldDescriptor, bound: i64) -> Vec<FieldElement> {
    match field.modulus() {
        Some(p) => (0..p as i64).map(|v| FieldElement::from_i64(field, v)).collect(),
        None => (0..=bound).chain((1..=bound).map(|v| -v)).map(|v| FieldElement::from_i64(field, v)).collect(),
    }
}

/// Every symmetric g×g matrix whose independent entries come from `values`.
pub(crate) fn symmetric_grid(space: SymplecticSpace, values: &[FieldElement], diagonal_only: bool) -> Vec<ExactMatrix> {
    let g = space.genus();
    let slots: Vec<(usize, usize)> =
        (0..g).flat_map(|i| (i..g).map(move |j| (i, j))).filter(|&(i, j)| !diagonal_only || i == j).collect();
    let total = values.len().checked_pow(slots.len() as u32).unwrap_or(usize::MAX);
    let mut out = Vec::new();
    for mut code in 0..total.min(200_000) {
        let mut q = space.zero();
        for &(i, j) in &slots {
            let v = values[code % values.len()].clone();
            code /= values.len();
            q.set(i, j, v.clone());
            q.set(j, i, v);
        }
        out.push(q);
    }
    out
}

/// A Lagrangian transverse to every member of `ls`.
///
/// Candidates are lower(q)·L and upper(q)·L* for scalar q over the ladder
/// 0, 1, 2, ... (then negatives over Q), then diagonal q, then all symmetric q
/// with small entries.
pub fn common_transverse(ls: &[Lagrangian]) -> Result<Lagrangian> {
    let Some(first) = ls.first() else {
        return domain("common transverse of an empty list");
    };
    let space = first.space();
    for l in ls {
        same_space(first, l)?;
    }
    let field = space.field();
    let l0 = Lagrangian::standard(space);
    let l1 = Lagrangian::dual(space);
    let scalars = ladder(field, 24);
    let small = ladder(field, 3);
    let stages = [
        scalars.iter().map(|t| ExactMatrix::scalar(field, space.genus(), t)).collect::<Vec<_>>(),
        symmetric_grid(space, &small, true),
        symmetric_grid(space, &small, false),
    ];
    for stage in &stages {
        for lower in [true, false] {
            for q in stage {
                let cand =
                    if lower { generator_lower(space, q)?.act(&l0)? } else { generator_upper(space, q)?.act(&l1)? };
                if ls.iter().all(|l| transverse(&cand, l).unwrap_or(false)) {
                    return Ok(cand);
                }
            }
        }
    }
    Err(Error::Internal("no common transverse Lagrangian found among the candidates".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::generator_lower;

    const Q: FieldDescriptor = FieldDescriptor::Rationals;

    fn sc(field: FieldDescriptor, g: usize, t: i64) -> ExactMatrix {
        ExactMatrix::scalar(field, g, &FieldElement::from_i64(field, t))
    }

    #[test]
    fn transversality_examples() {
        let s = SymplecticSpace::new(Q, 1).unwrap();
        let l = Lagrangian::standard(s);
        let d = Lagrangian::dual(s);
        assert!(transverse(&l, &d).unwrap());
        assert!(!transverse(&l, &l).unwrap());
        let diag = Lagrangian::new(s, &ExactMatrix::from_i64_rows(Q, &[[1], [1]])).unwrap();
        assert!(transverse(&l, &diag).unwrap());
    }

    #[test]
    fn beta_examples() {
        let s = SymplecticSpace::new(Q, 1).unwrap();
        let l = Lagrangian::standard(s);
        let d = Lagrangian::dual(s);
        assert_eq!(beta(&l, &d).unwrap(), ExactMatrix::from_i64_rows(Q, &[[-1]]));
        assert!(beta(&l, &l).unwrap().is_zero());
        let s3 = SymplecticSpace::new(Q, 3).unwrap();
        assert!(beta(&Lagrangian::standard(s3), &Lagrangian::dual(s3)).unwrap().is_invertible());
    }

    #[test]
    fn beta_is_antisymmetric() {
        let s = SymplecticSpace::new(Q, 2).unwrap();
        let a = Lagrangian::graph(s, &ExactMatrix::from_i64_rows(Q, &[[1, 2], [2, 0]])).unwrap();
        let b = Lagrangian::dual(s);
        assert_eq!(beta(&a, &b).unwrap(), beta(&b, &a).unwrap().transpose().neg());
    }

    #[test]
    fn affine_diff_examples() {
        for g in 1..=3 {
            let s = SymplecticSpace::new(Q, g).unwrap();
            let l = Lagrangian::standard(s);
            let d = Lagrangian::dual(s);
            assert!(affine_diff(&d, &l, &l).unwrap().gram().is_zero());
            let mut q = sc(Q, g, 2);
            if g > 1 {
                q.set(0, 1, FieldElement::from_i64(Q, 5));
                q.set(1, 0, FieldElement::from_i64(Q, 5));
            }
            let m = generator_lower(s, &q).unwrap().act(&l).unwrap();
            assert_eq!(affine_diff(&d, &l, &m).unwrap().gram(), &q.neg());
        }
        let s = SymplecticSpace::new(Q, 1).unwrap();
        let m = Lagrangian::graph(s, &sc(Q, 1, 1)).unwrap();
        let x = Lagrangian::dual(s);
        let l = Lagrangian::standard(s);
        assert_eq!(affine_diff(&x, &l, &m).unwrap().gram(), &ExactMatrix::from_i64_rows(Q, &[[-1]]));
        assert!(affine_diff(&l, &l, &m).is_err());
    }

    #[test]
    fn projection_examples() {
        let s = SymplecticSpace::new(Q, 1).unwrap();
        let l = Lagrangian::standard(s);
        let d = Lagrangian::dual(s);
        let (p1, p2) = project_along(&l, &l, &d).unwrap();
        assert!(p1.is_identity() && p2.is_zero());
        let x = Lagrangian::new(s, &ExactMatrix::from_i64_rows(Q, &[[1], [1]])).unwrap();
        let (p1, p2) = project_along(&x, &l, &d).unwrap();
        assert_eq!((p1.rank(), p2.rank()), (1, 1));
        let recon = l.basis().mul(&p1).unwrap().add(&d.basis().mul(&p2).unwrap()).unwrap();
        assert_eq!(&recon, x.basis());
        assert!(project_along(&x, &l, &l).is_err());
    }

    #[test]
    fn common_transverse_examples() {
        let s = SymplecticSpace::new(Q, 1).unwrap();
        let l = Lagrangian::standard(s);
        let t = common_transverse(std::slice::from_ref(&l)).unwrap();
        assert!(transverse(&t, &l).unwrap());

        let f3 = FieldDescriptor::prime(3).unwrap();
        let s3 = SymplecticSpace::new(f3, 1).unwrap();
        let ls = [Lagrangian::standard(s3), Lagrangian::dual(s3), Lagrangian::graph(s3, &sc(f3, 1, 1)).unwrap()];
        assert_eq!(common_transverse(&ls).unwrap(), Lagrangian::graph(s3, &sc(f3, 1, 2)).unwrap());

        let ls: Vec<_> = (0..3).map(|t| Lagrangian::graph(s, &sc(Q, 1, t)).unwrap()).collect();
        assert_eq!(common_transverse(&ls).unwrap(), Lagrangian::graph(s, &sc(Q, 1, 3)).unwrap());
    }
}
