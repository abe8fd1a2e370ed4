use super::decompose::decompose;
use super::word::{sylvester_of_sturm, SturmWord};
use crate::error::{domain, Result};
use crate::exact::{ExactMatrix, FieldElement, SquareClass};
use crate::symplectic::SymplecticMap;
use crate::witt::{f_map, witt_class, SymmetricForm, WittClass, WittModI2};

/// f_{mn}(w) = −[S(w̃)] where w̃ is w padded with zero letters to type (m, n).
///
/// The sign makes f agree with the Maslov index of the associated path.
pub fn f_mn(w: &SturmWord, m: u8, n: u8) -> Result<WittClass> {
    if m > 1 || n > 1 {
        return domain("word type entries must be 0 or 1");
    }
    Ok(witt_class(&sylvester_of_sturm(&w.pad_to(m, n))).neg())
}

pub fn f00(w: &SturmWord) -> WittClass {
    f_mn(w, 0, 0).expect("type (0, 0) is valid")
}

/// μ(x, y) = f₀₀(x̃ 0̄ ỹ) − f₀₀(x̃) − f₀₀(ỹ).
pub fn mu_cocycle(x: &SymplecticMap, y: &SymplecticMap) -> Result<WittClass> {
    let xt = decompose(x)?.pad_to(0, 0);
    let yt = decompose(y)?.pad_to(0, 0);
    let joined = xt.concat(&yt)?;
    f00(&joined).sub(&f00(&xt))?.sub(&f00(&yt))
}

/// Φ(M) = f₀₀(decompose(M)) mod I².
pub fn phi(m: &SymplecticMap) -> Result<WittModI2> {
    Ok(f00(&decompose(m)?).mod_i2())
}

fn one_minus_det(x: &ExactMatrix) -> Result<WittModI2> {
    let field = x.field();
    Ok(WittClass::from_diagonal(field, &[FieldElement::one(field), -x.det()?])?.mod_i2())
}

/// Φ for the block shapes with a closed form, `None` for anything else.
///
/// * C = 0: ⟨1, −det A⟩.
/// * B = 0: ⟨1, −det A⟩ − [C A⁻¹] mod I².
/// * A = 0 or D = 0: F((−1)^g det C, g).
pub fn phi_closed_forms(m: &SymplecticMap) -> Result<Option<WittModI2>> {
    let g = m.space().genus();
    let [a, b, c, d] = m.blocks();
    if c.is_zero() {
        return one_minus_det(&a).map(Some);
    }
    if b.is_zero() {
        let s = SymmetricForm::new(c.mul(&a.inverse()?)?)?;
        return Ok(Some(one_minus_det(&a)?.sub(&witt_class(&s).mod_i2())?));
    }
    if a.is_zero() || d.is_zero() {
        let sign = if g % 2 == 0 { FieldElement::one(c.field()) } else { -FieldElement::one(c.field()) };
        let lambda = SquareClass::of(&(sign * c.det()?))?;
        return Ok(Some(f_map(&lambda, g as i64)));
    }
    Ok(None)
}
