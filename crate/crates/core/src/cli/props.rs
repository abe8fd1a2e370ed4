//! Seeded property families. Case i runs over the (field, genus) pair
//! `combos()[i % 12]` with its own derived seed, so any case replays alone.

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use super::json;
use crate::error::{Error, Result};
use crate::exact::{is_rational_square, ExactMatrix, FieldDescriptor, FieldElement, SquareClass};
use crate::maslov::{
    kashiwara_form, maslov_triple, maslov_triple_via, nondegenerate_iff_transverse, sylvester_matrix,
    transversality_witness,
};
use crate::sample::Sampler;
use crate::sturm::{
    decompose_with_prefix, f00, f_mn, mu_cocycle, phi, phi_closed_forms, sylvester_of_sturm, KernelWord, SturmWord,
};
use crate::symplectic::{
    generator_h, generator_lower, generator_m, generator_upper, generator_weyl, Lagrangian, SymplecticMap,
    SymplecticSpace,
};
use crate::witt::{f_map, isometry_invariants, signed_discriminant, witt_class, SymmetricForm, WittClass, WittModI2};

pub const PRIMES: [u64; 3] = [3, 5, 7];

/// The (field, genus) pairs cycled through by the cases of every family.
pub fn combos() -> Vec<(FieldDescriptor, usize)> {
    let mut out = Vec::new();
    for g in 1..=3 {
        for p in PRIMES {
            out.push((FieldDescriptor::prime(p).unwrap(), g));
        }
        out.push((FieldDescriptor::Rationals, g));
    }
    out
}

/// Per-case state: the sampler plus everything needed to report a failure.
pub struct Case {
    pub s: Sampler,
    objects: Map<String, Value>,
    failures: Vec<String>,
    notes: Map<String, Value>,
}

impl Case {
    fn new(space: SymplecticSpace, seed: u64) -> Self {
        Case { s: Sampler::new(space, seed), objects: Map::new(), failures: Vec::new(), notes: Map::new() }
    }

    pub fn record(&mut self, name: &str, v: Value) {
        self.objects.insert(name.into(), v);
    }

    pub fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    /// Side-by-side values that are reported but not asserted.
    pub fn note(&mut self, name: &str, v: Value) {
        self.notes.insert(name.into(), v);
    }
}

type CaseFn = fn(&mut Case) -> Result<()>;

pub struct Family {
    pub name: &'static str,
    pub default_cases: usize,
    pub about: &'static str,
    run: CaseFn,
}

pub static FAMILIES: &[Family] = &[
    Family { name: "sylvdettrans", default_cases: 1000, about: "S(α) nondegenerate iff the ends are transverse", run: sylvdettrans },
    Family { name: "shortcut", default_cases: 500, about: "S(α) ≅ S(sub) ⊥ S(shortened)", run: shortcut },
    Family { name: "maslov-axioms", default_cases: 200, about: "degenerate triples, equivariance, 4-term cocycle, antisymmetry", run: maslov_axioms },
    Family { name: "path-independence", default_cases: 200, about: "μ_BL through two independent path systems", run: path_independence },
    Family { name: "f-welldefined", default_cases: 200, about: "f_mn under zero padding and sub-word collapse", run: f_welldefined },
    Family { name: "kernel-f01", default_cases: 200, about: "f₀₁ on kernel words: homomorphism, conjugation, I²", run: kernel_f01 },
    Family { name: "coboundary", default_cases: 500, about: "Φ(xy) − Φ(x) − Φ(y) = μ(x, y) mod I²", run: coboundary },
    Family { name: "phi-welldefined", default_cases: 200, about: "Φ agrees on two decompositions of one map", run: phi_welldefined },
    Family { name: "closed-forms", default_cases: 200, about: "Φ(h(x)), Φ(upper(u)), Φ(m(y)) against the stated formulas", run: closed_forms },
    Family { name: "phi-closed-forms", default_cases: 200, about: "phi_closed_forms agrees with phi", run: phi_closed_forms_agree },
    Family { name: "discriminant", default_cases: 100, about: "disc of the m(v) word and of even words into the Levi block", run: discriminant },
    Family { name: "witt-fp", default_cases: 200, about: "binary forms vanish iff isotropic; W(F_p) has exponent 4", run: witt_fp },
    Family { name: "witness", default_cases: 200, about: "S(α)E₀ = Tₙβ and invertible triangular truncation", run: witness },
    Family { name: "cocycle-maslov", default_cases: 200, about: "μ(x, y) = μ_BL(x⁻¹L, L, yL)", run: cocycle_maslov },
];

pub fn family(name: &str) -> Result<&'static Family> {
    FAMILIES.iter().find(|f| f.name == name).ok_or_else(|| Error::Parse(format!("unknown property family \"{name}\"")))
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn case_seed(seed: u64, family: &str, index: usize) -> u64 {
    let tag = family.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    splitmix(splitmix(seed ^ tag).wrapping_add(index as u64))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseOutcome {
    pub family: &'static str,
    pub index: usize,
    pub case_seed: u64,
    pub field: FieldDescriptor,
    pub g: usize,
    pub failures: Vec<String>,
    pub objects: Value,
    pub notes: Value,
}

impl CaseOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family,
            "case": self.index,
            "case_seed": self.case_seed,
            "field": json::field(self.field),
            "g": self.g,
            "failures": self.failures,
            "objects": self.objects,
        })
    }
}

/// Runs one case from its own seed; this is also the replay entry point.
pub fn replay(fam: &'static Family, index: usize, case_seed: u64, field: FieldDescriptor, g: usize) -> CaseOutcome {
    let space = SymplecticSpace::new(field, g).expect("genus at least 1");
    let mut case = Case::new(space, case_seed);
    if let Err(e) = (fam.run)(&mut case) {
        case.failures.push(format!("error: {e}"));
    }
    CaseOutcome {
        family: fam.name,
        index,
        case_seed,
        field,
        g,
        failures: case.failures,
        objects: Value::Object(case.objects),
        notes: Value::Object(case.notes),
    }
}

#[derive(Clone, Debug)]
pub struct FamilyReport {
    pub family: &'static str,
    pub seed: u64,
    pub cases: usize,
    pub outcomes: Vec<CaseOutcome>,
}

impl FamilyReport {
    pub fn failures(&self) -> impl Iterator<Item = &CaseOutcome> {
        self.outcomes.iter().filter(|o| !o.passed())
    }

    pub fn passed(&self) -> usize {
        self.outcomes.iter().filter(|o| o.passed()).count()
    }

    pub fn all_passed(&self) -> bool {
        self.passed() == self.cases
    }

    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family,
            "seed": self.seed,
            "cases": self.cases,
            "passed": self.passed(),
            "failed": self.cases - self.passed(),
            "failures": self.failures().map(CaseOutcome::to_json).collect::<Vec<_>>(),
        })
    }
}

pub fn run_family(name: &str, cases: usize, seed: u64) -> Result<FamilyReport> {
    let fam = family(name)?;
    let combos = combos();
    let outcomes: Vec<CaseOutcome> = (0..cases)
        .into_par_iter()
        .map(|i| {
            let (field, g) = combos[i % combos.len()];
            replay(fam, i, case_seed(seed, fam.name, i), field, g)
        })
        .collect();
    Ok(FamilyReport { family: fam.name, seed, cases, outcomes })
}

// ---- helpers ----

fn one(field: FieldDescriptor) -> FieldElement {
    FieldElement::one(field)
}

fn sign_pow(field: FieldDescriptor, e: usize) -> FieldElement {
    if e % 2 == 0 {
        one(field)
    } else {
        -one(field)
    }
}

fn one_minus(x: &FieldElement) -> Result<WittModI2> {
    Ok(WittClass::from_diagonal(x.field(), &[one(x.field()), -x.clone()])?.mod_i2())
}

fn m_word(space: SymplecticSpace, start: u8, v: &ExactMatrix) -> Result<SturmWord> {
    SturmWord::new(space, start, vec![v.clone(), v.inverse()?.neg(), v.clone()])
}

// ---- families ----

fn sylvdettrans(c: &mut Case) -> Result<()> {
    let p = c.s.path();
    c.record("path", json::path(&p));
    let (nondeg, trans) = nondegenerate_iff_transverse(&p)?;
    c.check(nondeg == trans, format!("nondegenerate = {nondeg} but transverse = {trans}"));
    Ok(())
}

fn shortcut(c: &mut Case) -> Result<()> {
    for _ in 0..50 {
        let len = c.s.word_len().max(2);
        let p = c.s.path_with(len);
        let n = p.nodes().len();
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 2..n {
                if crate::symplectic::transverse(&p.nodes()[i], &p.nodes()[j])? {
                    pairs.push((i, j));
                }
            }
        }
        if pairs.is_empty() {
            continue;
        }
        let (i, j) = pairs[c.s.below(pairs.len())];
        c.record("path", json::path(&p));
        c.record("i", json!(i));
        c.record("j", json!(j));
        let (sub, short) = p.shortcut(i, j)?;
        let whole = isometry_invariants(&sylvester_matrix(&p)?);
        let split = isometry_invariants(&sylvester_matrix(&sub)?.orthogonal_sum(&sylvester_matrix(&short)?)?);
        c.check(whole == split, format!("S(α) has {whole:?}, S(sub) ⊥ S(short) has {split:?}"));
        return Ok(());
    }
    Err(Error::Internal("no admissible shortcut found in 50 sampled paths".into()))
}

fn maslov_axioms(c: &mut Case) -> Result<()> {
    let ls: Vec<Lagrangian> = (0..4).map(|_| c.s.lagrangian()).collect();
    let phi_map = c.s.symplectic();
    c.record("lagrangians", Value::Array(ls.iter().map(json::lagrangian).collect()));
    c.record("phi", json::symplectic(&phi_map));
    let (a, b, d) = (&ls[0], &ls[1], &ls[2]);
    for (name, t) in [("(a,a,b)", [a, a, b]), ("(a,b,b)", [a, b, b]), ("(a,b,a)", [a, b, a])] {
        let v = maslov_triple(t[0], t[1], t[2])?;
        c.check(v.is_zero(), format!("degenerate triple {name} gives {v}"));
    }
    let mu = maslov_triple(a, b, d)?;
    let moved = maslov_triple(&phi_map.act(a)?, &phi_map.act(b)?, &phi_map.act(d)?)?;
    c.check(mu == moved, format!("equivariance: {mu} vs {moved}"));
    let e = &ls[3];
    let four = maslov_triple(b, d, e)?
        .sub(&maslov_triple(a, d, e)?)?
        .add(&maslov_triple(a, b, e)?)?
        .sub(&mu)?;
    c.check(four.is_zero(), format!("4-term cocycle sum is {four}"));
    let perms: [([usize; 3], bool); 6] =
        [([0, 1, 2], false), ([1, 2, 0], false), ([2, 0, 1], false), ([1, 0, 2], true), ([0, 2, 1], true), ([2, 1, 0], true)];
    for (perm, odd) in perms {
        let v = maslov_triple(&ls[perm[0]], &ls[perm[1]], &ls[perm[2]])?;
        let expect = if odd { mu.neg() } else { mu.clone() };
        c.check(v == expect, format!("permutation {perm:?} gives {v}, expected {expect}"));
    }
    Ok(())
}

fn path_independence(c: &mut Case) -> Result<()> {
    let (l0, l1, l2) = (c.s.lagrangian(), c.s.lagrangian(), c.s.lagrangian());
    let a01 = c.s.path_between(&l0, &l1)?;
    let a12 = c.s.path_between(&l1, &l2)?;
    let b01 = c.s.path_between(&l0, &l1)?;
    let b12 = c.s.path_between(&l1, &l2)?;
    for (k, p) in [("a01", &a01), ("a12", &a12), ("b01", &b01), ("b12", &b12)] {
        c.record(k, json::path(p));
    }
    let x = maslov_triple_via(&a01, &a12)?;
    let y = maslov_triple_via(&b01, &b12)?;
    c.check(x == y, format!("first system gives {x}, second gives {y}"));
    let z = maslov_triple(&l0, &l1, &l2)?;
    c.check(x == z, format!("path systems give {x}, maslov_triple gives {z}"));
    Ok(())
}

fn f_welldefined(c: &mut Case) -> Result<()> {
    let space = c.s.space();
    let len = c.s.word_len();
    let w = c.s.word(len);
    c.record("word", json::word(&w));
    let k = c.s.below(w.len());
    let a = c.s.symmetric();
    c.record("collapse_at", json!(k));
    c.record("split", json::matrix(&a));
    let mut padded = vec![space.zero(), space.zero()];
    padded.extend(w.letters().iter().cloned());
    padded.extend([space.zero(), space.zero()]);
    let padded = SturmWord::new(space, w.start_parity(), padded)?;
    let mut split = w.letters()[..k].to_vec();
    split.extend([a.clone(), space.zero(), w.letters()[k].sub(&a)?]);
    split.extend(w.letters()[k + 1..].iter().cloned());
    let split = SturmWord::new(space, w.start_parity(), split)?;
    for (m, n) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        let base = f_mn(&w, m, n)?;
        let p = f_mn(&padded, m, n)?;
        c.check(base == p, format!("f_{m}{n}: padding changes {base} to {p}"));
        let s = f_mn(&split, m, n)?;
        c.check(base == s, format!("f_{m}{n}: collapse changes {base} to {s}"));
    }
    Ok(())
}

fn f01(k: &KernelWord) -> Result<WittClass> {
    f_mn(k.word(), 0, 1)
}

fn kernel_f01(c: &mut Case) -> Result<()> {
    let (n1, n2, n3) = (c.s.word_len().min(3), c.s.word_len().min(3), c.s.word_len().min(3));
    let (w1, w2, u) = (c.s.word(n1), c.s.word(n2), c.s.word(n3));
    c.record("w1", json::word(&w1));
    c.record("w2", json::word(&w2));
    c.record("conjugator", json::word(&u));
    let k = KernelWord::from_word(&w1)?;
    let l = KernelWord::from_word(&w2)?;
    let (fk, fl) = (f01(&k)?, f01(&l)?);
    let fkl = f01(&k.concat(&l)?)?;
    let sum = fk.add(&fl)?;
    c.check(fkl == sum, format!("f01(kl) = {fkl} but f01(k) + f01(l) = {sum}"));
    let conj = f01(&k.conjugate(&u)?)?;
    c.check(conj == fk, format!("f01(uku⁻¹) = {conj} but f01(k) = {fk}"));
    c.check(fk.rank_parity() == 0 && fk.disc().is_trivial(), format!("f01(k) = {fk} is not in I²"));
    for (m, n) in [(0, 0), (1, 0), (1, 1)] {
        let v = f_mn(k.word(), m, n)?;
        c.check(v == fk, format!("f_{m}{n}(k) = {v} differs from f01(k) = {fk}"));
    }
    Ok(())
}

fn coboundary(c: &mut Case) -> Result<()> {
    let (x, y) = (c.s.symplectic(), c.s.symplectic());
    c.record("x", json::symplectic(&x));
    c.record("y", json::symplectic(&y));
    let lhs = phi(&x.compose(&y)?)?.sub(&phi(&x)?)?.sub(&phi(&y)?)?;
    let rhs = mu_cocycle(&x, &y)?.mod_i2();
    c.check(lhs == rhs, format!("Φ(xy) − Φ(x) − Φ(y) = {lhs} but μ(x, y) = {rhs}"));
    Ok(())
}

fn phi_welldefined(c: &mut Case) -> Result<()> {
    let m = c.s.symplectic();
    let prefix = c.s.word(2);
    c.record("m", json::symplectic(&m));
    c.record("prefix", json::word(&prefix));
    let a = phi(&m)?;
    let b = f00(&decompose_with_prefix(&m, &prefix)?).mod_i2();
    c.check(a == b, format!("decompositions give {a} and {b}"));
    Ok(())
}

fn closed_forms(c: &mut Case) -> Result<()> {
    let space = c.s.space();
    let field = space.field();
    let g = space.genus();
    let (x, u, y) = (c.s.invertible(), c.s.symmetric(), c.s.symmetric_invertible());
    c.record("x", json::matrix(&x));
    c.record("u", json::matrix(&u));
    c.record("y", json::matrix(&y));
    let h = phi(&generator_h(space, &x)?)?;
    let expect = one_minus(&x.det()?)?;
    c.check(h == expect, format!("Φ(h(x)) = {h}, formula gives {expect}"));
    let up = phi(&generator_upper(space, &u)?)?;
    c.check(up.is_zero(), format!("Φ(upper(u)) = {up}"));
    let mv = phi(&generator_m(space, &y)?)?;
    let lambda = SquareClass::of(&(sign_pow(field, g * (g - 1) / 2) * y.det()?))?;
    let expect = f_map(&lambda, 3 * g as i64);
    c.check(mv == expect, format!("Φ(m(y)) = {mv}, formula F((−1)^(g(g−1)/2) det y, 3g) gives {expect}"));
    Ok(())
}

fn phi_closed_forms_agree(c: &mut Case) -> Result<()> {
    let space = c.s.space();
    let (x, s, y) = (c.s.invertible(), c.s.symmetric(), c.s.invertible());
    let ys = c.s.symmetric_invertible();
    c.record("x", json::matrix(&x));
    c.record("s", json::matrix(&s));
    c.record("y", json::matrix(&y));
    c.record("y_sym", json::matrix(&ys));
    let maps: [(&str, SymplecticMap); 6] = [
        ("upper(s)h(x)", generator_upper(space, &s)?.compose(&generator_h(space, &x)?)?),
        ("lower(s)h(x)", generator_lower(space, &s)?.compose(&generator_h(space, &x)?)?),
        ("upper(s)weyl(y)", generator_upper(space, &s)?.compose(&generator_weyl(space, &y)?)?),
        ("weyl(y)upper(s)", generator_weyl(space, &y)?.compose(&generator_upper(space, &s)?)?),
        ("m(y_sym)", generator_m(space, &ys)?),
        ("h(x)m(1)", generator_h(space, &x)?.compose(&generator_m(space, &space.identity())?)?),
    ];
    for (name, m) in &maps {
        let direct = phi(m)?;
        match phi_closed_forms(m)? {
            Some(closed) => c.check(direct == closed, format!("{name}: Φ = {direct}, closed form {closed}")),
            None => c.check(false, format!("{name}: shape not recognized")),
        }
    }
    Ok(())
}

fn discriminant(c: &mut Case) -> Result<()> {
    let space = c.s.space();
    let field = space.field();
    let g = space.genus();
    let v = c.s.symmetric_invertible();
    c.record("v", json::matrix(&v));
    let w = m_word(space, 0, &v)?;
    let d = signed_discriminant(&sylvester_of_sturm(&w))?;
    let expect = SquareClass::of(&(sign_pow(field, g * (g - 1) / 2) * v.det()?))?;
    c.check(d == expect, format!("disc S(m(v) word) = {d}, expected {expect}"));
    // Even-length word into the Levi block: alternating lower- and upper-started m-words.
    let pairs = 1 + c.s.below(2);
    let mut word = SturmWord::new(space, 0, vec![])?;
    let mut used = Vec::new();
    for _ in 0..pairs {
        let (y, z) = (c.s.symmetric_invertible(), c.s.symmetric_invertible());
        used.push(json!([json::matrix(&y), json::matrix(&z)]));
        word = word.concat(&m_word(space, 0, &y)?)?.concat(&m_word(space, 1, &z)?)?;
    }
    c.record("levi_word_pairs", Value::Array(used));
    let [a, b, cc, _] = word.evaluate()?.blocks();
    c.check(word.len() % 2 == 0 && b.is_zero() && cc.is_zero(), "constructed word is not an even word into the Levi block");
    let d = signed_discriminant(&sylvester_of_sturm(&word))?;
    let expect = SquareClass::of(&a.det()?)?;
    c.check(d == expect, format!("disc S(w) = {d}, det a = {expect}"));
    Ok(())
}

fn witt_fp(c: &mut Case) -> Result<()> {
    let field = c.s.field();
    let (a, b) = (c.s.nonzero(), c.s.nonzero());
    c.record("a", json!(a.to_string()));
    c.record("b", json!(b.to_string()));
    let class = WittClass::from_diagonal(field, &[a.clone(), b.clone()])?;
    let isotropic = match field.elements() {
        Some(all) => all.iter().any(|x| all.iter().any(|y| (!x.is_zero() || !y.is_zero()) && (&a * &(x * x) + &b * &(y * y)).is_zero())),
        None => is_rational_square((-(&a * &b.inv()?)).as_rational().unwrap()),
    };
    c.check(class.is_zero() == isotropic, format!("⟨{a}, {b}⟩ has class {class} but isotropic = {isotropic}"));
    let one_class = witt_class(&SymmetricForm::diagonal(field, &[one(field)]));
    let four = one_class.times(4);
    if field.is_rationals() {
        c.check(four.signature() == Some(4), format!("4⟨1⟩ over Q is {four}"));
    } else {
        c.check(four.is_zero(), format!("4⟨1⟩ is {four}"));
        let q = class.add(&WittClass::from_diagonal(field, &[c.s.nonzero()])?)?;
        c.check(q.times(4).is_zero(), format!("4·{q} is not zero"));
    }
    Ok(())
}

fn witness(c: &mut Case) -> Result<()> {
    let len = c.s.word_len().max(2);
    let p = c.s.path_with(len);
    c.record("path", json::path(&p));
    let w = transversality_witness(&p)?;
    c.check(w.identity_holds()?, "S(α)E₀ ≠ Tₙβ_{0,n+1}");
    c.check(w.mirror_identity_holds()?, "S(α)F ≠ Uβ_{n+1,0}");
    c.check(w.truncation_is_triangular_invertible(c.s.genus()), "truncation is not block triangular with invertible diagonal");
    Ok(())
}

fn cocycle_maslov(c: &mut Case) -> Result<()> {
    let space = c.s.space();
    let (x, y) = (c.s.symplectic(), c.s.symplectic());
    c.record("x", json::symplectic(&x));
    c.record("y", json::symplectic(&y));
    let l = Lagrangian::standard(space);
    let (a, b) = (x.inverse().act(&l)?, y.act(&l)?);
    let mu = mu_cocycle(&x, &y)?;
    let bl = maslov_triple(&a, &l, &b)?;
    c.check(mu == bl, format!("μ(x, y) = {mu} but μ_BL = {bl}"));
    let k = witt_class(&kashiwara_form(&a, &l, &b)?);
    c.note("two_mu_bl", json::witt(&bl.times(2)));
    c.note("kashiwara", json::witt(&k));
    Ok(())
}
