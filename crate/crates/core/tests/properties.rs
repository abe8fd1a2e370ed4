use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use maslov_witt_core::exact::{congruence_diagonalize, hilbert_symbol, squarefree_part};
use maslov_witt_core::maslov::{loop_variants, maslov_of_path};
use maslov_witt_core::sample::Sampler;
use maslov_witt_core::sturm::{
    decompose, decompose_with_prefix, f00, path_of_sturm, phi, phi_closed_forms, sturm_of_path,
};
use maslov_witt_core::symplectic::{beta, common_transverse, transverse, SymplecticMap};
use maslov_witt_core::witt::{hasse_invariant, hasse_places, isometry_invariants, witt_class};
use maslov_witt_core::{
    ExactMatrix, FieldDescriptor, FieldElement, LagrangianPath, Place, SymmetricForm, SymplecticSpace, WittClass,
};

fn field_of(i: usize) -> FieldDescriptor {
    match i % 4 {
        0 => FieldDescriptor::prime(3).unwrap(),
        1 => FieldDescriptor::prime(5).unwrap(),
        2 => FieldDescriptor::prime(7).unwrap(),
        _ => FieldDescriptor::Rationals,
    }
}

fn sampler(combo: usize, seed: u64) -> Sampler {
    Sampler::new(SymplecticSpace::new(field_of(combo), 1 + (combo / 4) % 3).unwrap(), seed)
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn squarefree() -> impl Strategy<Value = i64> {
    (-60i64..=60).prop_filter_map("squarefree nonzero", |n| {
        (n != 0 && squarefree_part(&BigInt::from(n)).0 == BigInt::from(n)).then_some(n)
    })
}

/// (a, b)_p by searching for a primitive solution of ax² + by² = z² mod p^k.
fn hilbert_oracle(a: i64, b: i64, p: i64, k: u32) -> i32 {
    let m = p.pow(k);
    let unit = |x: i64| x % p != 0;
    for x in 0..m {
        for y in 0..m {
            let lhs = (a * x % m * x % m + b * y % m * y % m).rem_euclid(m);
            for z in 0..m {
                if (unit(x) || unit(y) || unit(z)) && (z * z - lhs).rem_euclid(m) == 0 {
                    return 1;
                }
            }
        }
    }
    -1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(combo in 0usize..4, seed: u64) {
        let mut s = sampler(combo, seed);
        let (a, b, c) = (s.element(), s.element(), s.element());
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn matrix_inverse_and_det(combo in 0usize..12, seed: u64) {
        let mut s = sampler(combo, seed);
        let (x, y) = (s.invertible(), s.matrix());
        prop_assert!(x.mul(&x.inverse().unwrap()).unwrap().is_identity());
        prop_assert_eq!(x.mul(&y).unwrap().det().unwrap(), &x.det().unwrap() * &y.det().unwrap());
        let k = y.kernel();
        prop_assert_eq!(k.cols() + y.rank(), y.cols());
        prop_assert!(y.mul(&k).unwrap().is_zero());
    }

    #[test]
    fn congruence_diagonalization(combo in 0usize..12, seed: u64, dim in 1usize..5) {
        let mut s = sampler(combo, seed);
        let f = s.field();
        let mut m = ExactMatrix::zeros(f, dim, dim);
        for i in 0..dim {
            for j in i..dim {
                let v = if s.chance(1, 3) { FieldElement::zero(f) } else { s.element() };
                m.set(i, j, v.clone());
                m.set(j, i, v);
            }
        }
        let (d, c) = congruence_diagonalize(&m).unwrap();
        prop_assert!(c.is_invertible());
        prop_assert_eq!(c.transpose().mul(&m).unwrap().mul(&c).unwrap(), ExactMatrix::diagonal(f, &d));
    }

    #[test]
    fn hilbert_product_formula_and_bimultiplicativity(a in squarefree(), b in squarefree(), c in squarefree()) {
        let (ra, rb, rc) = (q(a), q(b), q(c));
        let mut places = vec![Place::Infinity];
        for n in [a, b, c, 2] {
            for p in squarefree_part(&BigInt::from(n)).1 {
                places.push(Place::Prime(p));
            }
        }
        places.sort();
        places.dedup();
        let product: i32 = places.iter().map(|v| hilbert_symbol(&ra, &rb, v).unwrap()).product();
        prop_assert_eq!(product, 1);
        for v in &places {
            let left = hilbert_symbol(&ra, &(&rb * &rc), v).unwrap();
            let right = hilbert_symbol(&ra, &rb, v).unwrap() * hilbert_symbol(&ra, &rc, v).unwrap();
            prop_assert_eq!(left, right);
            prop_assert_eq!(hilbert_symbol(&ra, &rb, v).unwrap(), hilbert_symbol(&rb, &ra, v).unwrap());
        }
    }

    #[test]
    fn hilbert_symbol_matches_brute_force(a in squarefree(), b in squarefree()) {
        let two = Place::Prime(2u8.into());
        prop_assert_eq!(hilbert_symbol(&q(a), &q(b), &two).unwrap(), hilbert_oracle(a, b, 2, 5));
        let three = Place::Prime(3u8.into());
        prop_assert_eq!(hilbert_symbol(&q(a), &q(b), &three).unwrap(), hilbert_oracle(a, b, 3, 3));
    }

    #[test]
    fn isometric_forms_share_invariants(combo in 0usize..12, seed: u64) {
        let mut s = sampler(combo, seed);
        let (m, c) = (s.symmetric(), s.invertible());
        let f = SymmetricForm::new(m).unwrap();
        let g = f.congruent(&c).unwrap();
        prop_assert_eq!(isometry_invariants(&f), isometry_invariants(&g));
        if s.field().is_rationals() && f.is_nondegenerate() {
            for v in hasse_places(&f) {
                prop_assert_eq!(hasse_invariant(&f, &v).unwrap(), hasse_invariant(&g, &v).unwrap());
            }
        }
    }

    #[test]
    fn witt_class_is_additive(combo in 0usize..12, seed: u64) {
        let mut s = sampler(combo, seed);
        let f = SymmetricForm::new(s.symmetric()).unwrap();
        let g = SymmetricForm::new(s.symmetric()).unwrap();
        let sum = witt_class(&f.orthogonal_sum(&g).unwrap());
        prop_assert_eq!(sum, witt_class(&f).add(&witt_class(&g)).unwrap());
        prop_assert!(witt_class(&f.orthogonal_sum(&f.neg()).unwrap()).is_zero());
        prop_assert!(witt_class(&SymmetricForm::hyperbolic(s.field(), s.genus())).is_zero());
        let w = witt_class(&f);
        prop_assert_eq!(w.add(&w.neg()).unwrap(), WittClass::zero(s.field()));
    }

    #[test]
    fn symplectic_samples(combo in 0usize..12, seed: u64) {
        let mut s = sampler(combo, seed);
        let m = s.symplectic();
        prop_assert!(SymplecticMap::is_symplectic(s.space(), m.matrix()));
        prop_assert!(m.compose(&m.inverse()).unwrap().matrix().is_identity());
        let (a, b) = (s.lagrangian(), s.lagrangian());
        let ba = beta(&a, &b).unwrap();
        prop_assert_eq!(beta(&b, &a).unwrap(), ba.transpose().neg());
        prop_assert_eq!(transverse(&a, &b).unwrap(), ba.is_invertible());
        let t = common_transverse(&[a.clone(), b.clone()]).unwrap();
        prop_assert!(transverse(&t, &a).unwrap() && transverse(&t, &b).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sturm_path_round_trip(combo in 0usize..12, seed: u64) {
        let mut s = sampler(combo, seed);
        let len = s.word_len();
        let w = s.word(len);
        let p = path_of_sturm(&w).unwrap();
        prop_assert_eq!(sturm_of_path(&p).unwrap(), w.clone());
        prop_assert_eq!(maslov_of_path(&path_of_sturm(&w.pad_to(0, 0)).unwrap()).unwrap(), f00(&w));
    }

    #[test]
    fn decomposition_evaluates_back(combo in 0usize..12, seed: u64) {
        let mut s = sampler(combo, seed);
        let m = s.symplectic();
        prop_assert_eq!(decompose(&m).unwrap().evaluate().unwrap(), m.clone());
        let prefix = s.word(2);
        let w = decompose_with_prefix(&m, &prefix).unwrap();
        prop_assert_eq!(w.evaluate().unwrap(), m.clone());
        prop_assert_eq!(f00(&w).mod_i2(), phi(&m).unwrap());
        if let Some(closed) = phi_closed_forms(&m).unwrap() {
            prop_assert_eq!(closed, phi(&m).unwrap());
        }
    }

    #[test]
    fn loop_variants_agree(combo in 0usize..12, seed: u64) {
        let mut s = sampler(combo, seed);
        let p = s.path();
        prop_assume!(transverse(p.first(), p.last()).unwrap());
        let mut nodes = p.nodes().to_vec();
        nodes.push(p.first().clone());
        let lp = LagrangianPath::new(nodes).unwrap();
        let m = s.transverse_to(&[p.first()]);
        let forms = loop_variants(&lp, Some(&m)).unwrap();
        let first = witt_class(&forms[0]);
        for f in &forms[1..] {
            prop_assert_eq!(witt_class(f), first.clone());
        }
    }
}
