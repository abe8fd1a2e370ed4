use super::path::LagrangianPath;
use super::sylvester::sylvester_matrix;
use crate::error::{domain, Result};
use crate::exact::{ExactMatrix, FieldElement};
use crate::symplectic::{common_transverse, Lagrangian};
use crate::witt::{witt_class, SymmetricForm, WittClass};

/// Mas(α): the Witt class of S(α).
pub fn maslov_of_path(path: &LagrangianPath) -> Result<WittClass> {
    Ok(witt_class(&sylvester_matrix(path)?))
}

pub fn maslov_of_loop(lp: &LagrangianPath) -> Result<WittClass> {
    if !lp.is_loop() {
        return domain("path is not a loop");
    }
    maslov_of_path(lp)
}

/// The four Sylvester forms of a loop Λ₀, …, Λₙ, Λ₀ that all represent its index:
/// S(Λ₀..Λₙ), S(Λ₁..Λₙ,Λ₀), S(Λ₀..Λₙ,Λ₀,M), S(M,Λ₀..Λₙ,Λ₀).
///
/// `m` must be transverse to Λ₀; a common transverse is used when absent.
pub fn loop_variants(lp: &LagrangianPath, m: Option<&Lagrangian>) -> Result<[SymmetricForm; 4]> {
    if !lp.is_loop() {
        return domain("path is not a loop");
    }
    let nodes = lp.nodes();
    let m = match m {
        Some(m) => m.clone(),
        None => common_transverse(std::slice::from_ref(lp.first()))?,
    };
    let open = &nodes[..nodes.len() - 1];
    let i = LagrangianPath::new(open.to_vec())?;
    let ii = LagrangianPath::new(nodes[1..].to_vec())?;
    let mut with_tail = nodes.to_vec();
    with_tail.push(m.clone());
    let iii = LagrangianPath::new(with_tail)?;
    let mut with_head = vec![m];
    with_head.extend(nodes.iter().cloned());
    let iv = LagrangianPath::new(with_head)?;
    Ok([sylvester_matrix(&i)?, sylvester_matrix(&ii)?, sylvester_matrix(&iii)?, sylvester_matrix(&iv)?])
}

/// μ_BL(Λ₀, Λ₁, Λ₂) through a shared common transverse Λ′.
pub fn maslov_triple(l0: &Lagrangian, l1: &Lagrangian, l2: &Lagrangian) -> Result<WittClass> {
    let t = common_transverse(&[l0.clone(), l1.clone(), l2.clone()])?;
    let a01 = LagrangianPath::new(vec![l0.clone(), t.clone(), l1.clone()])?;
    let a12 = LagrangianPath::new(vec![l1.clone(), t, l2.clone()])?;
    maslov_triple_via(&a01, &a12)
}

/// Mas(α₀₁ ∗ α₁₂) − Mas(α₀₁) − Mas(α₁₂) for caller-supplied paths.
pub fn maslov_triple_via(a01: &LagrangianPath, a12: &LagrangianPath) -> Result<WittClass> {
    let whole = maslov_of_path(&a01.concat(a12)?)?;
    whole.sub(&maslov_of_path(a01)?)?.sub(&maslov_of_path(a12)?)
}

/// Gram matrix of q(x₀,x₁,x₂) = ω(x₀,x₁) + ω(x₁,x₂) + ω(x₂,x₀) on Λ₀ ⊕ Λ₁ ⊕ Λ₂,
/// normalized so that vᵀGv = q(v).
pub fn kashiwara_form(l0: &Lagrangian, l1: &Lagrangian, l2: &Lagrangian) -> Result<SymmetricForm> {
    let space = l0.space();
    let field = space.field();
    let j = space.j();
    let half = FieldElement::from_i64(field, 2).inv()?;
    let ls = [l0, l1, l2];
    let mut blocks = vec![vec![space.zero(); 3]; 3];
    for (a, b) in [(0, 1), (1, 2), (2, 0)] {
        let w = ls[a].basis().transpose().mul(&j)?.mul(ls[b].basis())?.scale(&half);
        blocks[b][a] = w.transpose();
        blocks[a][b] = w;
    }
    SymmetricForm::new(ExactMatrix::from_blocks(field, &blocks)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::FieldDescriptor;
    use crate::maslov::{nondegenerate_iff_transverse, transversality_witness};
    use crate::symplectic::{affine_diff, SymplecticSpace};
    use crate::witt::{regularize, signed_discriminant};

    const Q: FieldDescriptor = FieldDescriptor::Rationals;

    fn g1() -> (Lagrangian, Lagrangian, Lagrangian) {
        let s = SymplecticSpace::new(Q, 1).unwrap();
        let one = ExactMatrix::from_i64_rows(Q, &[[1]]);
        (Lagrangian::standard(s), Lagrangian::dual(s), Lagrangian::graph(s, &one).unwrap())
    }

    fn path(nodes: &[&Lagrangian]) -> LagrangianPath {
        LagrangianPath::new(nodes.iter().map(|l| (*l).clone()).collect()).unwrap()
    }

    #[test]
    fn sylvester_examples() {
        let (l, d, gr) = g1();
        let s = sylvester_matrix(&path(&[&l, &d, &l])).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.gram().is_zero());
        assert_eq!(sylvester_matrix(&path(&[&l, &d])).unwrap().dim(), 0);
        let s = sylvester_matrix(&path(&[&l, &d, &gr])).unwrap();
        assert_eq!(s.gram(), &ExactMatrix::from_i64_rows(Q, &[[-1]]));
    }

    #[test]
    fn nondegeneracy_examples() {
        let (l, d, _) = g1();
        assert_eq!(nondegenerate_iff_transverse(&path(&[&l, &d, &l])).unwrap(), (false, false));
        assert_eq!(nondegenerate_iff_transverse(&path(&[&l, &d])).unwrap(), (true, true));
    }

    #[test]
    fn witness_for_one_interior_node() {
        let (l, d, gr) = g1();
        let w = transversality_witness(&path(&[&l, &d, &gr])).unwrap();
        assert!(w.identity_holds().unwrap());
        assert!(w.mirror_identity_holds().unwrap());
        assert!(w.truncation_is_triangular_invertible(1));
        assert!(transversality_witness(&path(&[&l, &d])).is_err());
    }

    #[test]
    fn shortcut_with_adjacent_indices_is_trivial() {
        let (l, d, gr) = g1();
        let p = path(&[&l, &d, &gr, &d]);
        let (sub, short) = p.shortcut(1, 2).unwrap();
        assert_eq!(sub.interior_len(), 0);
        assert_eq!(short, p);
        assert!(p.shortcut(1, 3).is_err());
    }

    #[test]
    fn loop_tail_splits_off_neutral_block() {
        let (l, d, gr) = g1();
        let lp = path(&[&l, &d, &gr, &l]);
        let [i, _, iii, _] = loop_variants(&lp, Some(&d)).unwrap();
        let (reg_i, _) = regularize(&i);
        let (reg_iii, _) = regularize(&iii);
        assert_eq!(reg_iii.dim(), reg_i.dim() + 2);
        assert_eq!(witt_class(&i), witt_class(&iii));
    }

    #[test]
    fn trivial_loop_has_zero_index() {
        let (l, d, _) = g1();
        assert!(maslov_of_loop(&path(&[&l, &d, &l])).unwrap().is_zero());
        assert!(maslov_of_loop(&path(&[&l, &d])).is_err());
    }

    #[test]
    fn inverse_path_negates() {
        let (l, d, gr) = g1();
        let p = path(&[&l, &d, &gr, &l, &d]);
        assert_eq!(maslov_of_path(&p).unwrap(), maslov_of_path(&p.inverse()).unwrap().neg());
    }

    #[test]
    fn triple_examples() {
        let (l, d, gr) = g1();
        assert!(maslov_triple(&l, &l, &d).unwrap().is_zero());
        let m = maslov_triple(&l, &d, &gr).unwrap();
        assert_eq!(maslov_triple(&d, &l, &gr).unwrap(), m.neg());

        let t = common_transverse(&[l.clone(), d.clone(), gr.clone()]).unwrap();
        let cls = |a: &Lagrangian, b: &Lagrangian| witt_class(&affine_diff(&t, a, b).unwrap());
        let expect = cls(&l, &gr).sub(&cls(&l, &d)).unwrap().sub(&cls(&d, &gr)).unwrap();
        assert_eq!(m, expect);
    }

    #[test]
    fn kashiwara_examples() {
        let (l, d, gr) = g1();
        assert!(kashiwara_form(&l, &l, &l).unwrap().gram().is_zero());
        let k = kashiwara_form(&l, &d, &gr).unwrap();
        let h = FieldElement::parse(Q, "1/2").unwrap();
        let mh = -&h;
        let z = FieldElement::zero(Q);
        let expect = ExactMatrix::from_rows(
            Q,
            vec![vec![z.clone(), mh.clone(), h.clone()], vec![mh, z.clone(), h.clone()], vec![h.clone(), h, z]],
        )
        .unwrap();
        assert_eq!(k.gram(), &expect);
        assert!(k.is_nondegenerate());
        let c = witt_class(&k);
        assert_eq!((c.rank_parity(), c.signature()), (1, Some(1)));
        assert!(signed_discriminant(&k).is_ok());
    }
}
