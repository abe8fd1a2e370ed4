use super::word::{LetterKind, SturmWord};
use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, FieldElement};
use crate::symplectic::{ladder, symmetric_grid, SymplecticMap, SymplecticSpace};

use LetterKind::{Lower, Upper};

/// Writes x = p⁻¹q with p, q symmetric and p invertible.
///
/// Symmetric x gives (I, x). Otherwise p is the first invertible member of the
/// solution space of xᵀT = Tx (basis vectors first, then small combinations)
/// and q = p·x.
pub fn symmetric_factorization(x: &ExactMatrix) -> Result<(ExactMatrix, ExactMatrix)> {
    if !x.is_square() {
        return Err(Error::Shape("symmetric factorization needs a square matrix".into()));
    }
    let field = x.field();
    let g = x.rows();
    if !x.is_invertible() {
        return Err(Error::Singular);
    }
    if x.is_symmetric() {
        return Ok((ExactMatrix::identity(field, g), x.clone()));
    }
    let slots: Vec<(usize, usize)> = (0..g).flat_map(|i| (i..g).map(move |j| (i, j))).collect();
    let slot = |a: usize, b: usize| slots.iter().position(|&s| s == (a.min(b), a.max(b))).unwrap();
    // (xᵀT − Tx)_{ij} = Σ_k x_{ki} T_{kj} − Σ_k T_{ik} x_{kj}
    let mut sys = ExactMatrix::zeros(field, g * g, slots.len());
    for i in 0..g {
        for j in 0..g {
            let row = i * g + j;
            for k in 0..g {
                let c = slot(k, j);
                let v = sys.get(row, c) + x.get(k, i);
                sys.set(row, c, v);
                let c = slot(i, k);
                let v = sys.get(row, c) - x.get(k, j);
                sys.set(row, c, v);
            }
        }
    }
    let kernel = sys.kernel();
    let basis: Vec<ExactMatrix> = (0..kernel.cols())
        .map(|c| {
            let mut t = ExactMatrix::zeros(field, g, g);
            for (s, &(a, b)) in slots.iter().enumerate() {
                t.set(a, b, kernel.get(s, c).clone());
                t.set(b, a, kernel.get(s, c).clone());
            }
            t
        })
        .collect();
    let finish = |p: ExactMatrix| -> Result<(ExactMatrix, ExactMatrix)> {
        let q = p.mul(x)?;
        Ok((p, q))
    };
    if let Some(p) = basis.iter().find(|t| t.is_invertible()) {
        return finish(p.clone());
    }
    let coeffs: Vec<FieldElement> = ladder(field, 3).into_iter().take(7).collect();
    let total = coeffs.len().checked_pow(basis.len() as u32).unwrap_or(usize::MAX).min(500_000);
    for mut code in 1..total {
        let mut t = ExactMatrix::zeros(field, g, g);
        for b in &basis {
            t = t.add(&b.scale(&coeffs[code % coeffs.len()]))?;
            code /= coeffs.len();
        }
        if t.is_invertible() {
            return finish(t);
        }
    }
    Err(Error::Internal("no invertible symmetric solution found".into()))
}

/// Letters of m(−p)·m(q) = h(p⁻¹q), or nothing when x is the identity.
fn h_letters(x: &ExactMatrix) -> Result<Vec<(LetterKind, ExactMatrix)>> {
    if x.is_identity() {
        return Ok(vec![]);
    }
    let (p, q) = symmetric_factorization(x)?;
    let mut out = m_letters(&p.neg())?;
    out.extend(m_letters(&q)?);
    Ok(out)
}

/// m(q) = lower(q)·upper(−q⁻¹)·lower(q) for symmetric invertible q.
fn m_letters(q: &ExactMatrix) -> Result<Vec<(LetterKind, ExactMatrix)>> {
    let inv = q.inverse()?;
    Ok(vec![(Lower, q.clone()), (Upper, inv.neg()), (Lower, q.clone())])
}

/// (0, −y⁻ᵀ; y, 0) as letters: m(y) when y is symmetric, else m(1)·h(y).
fn weyl_letters(space: SymplecticSpace, y: &ExactMatrix) -> Result<Vec<(LetterKind, ExactMatrix)>> {
    if y.is_symmetric() {
        return m_letters(y);
    }
    let mut out = m_letters(&space.identity())?;
    out.extend(h_letters(y)?);
    Ok(out)
}

/// Letters for a map whose lower-left block C is invertible:
/// upper(AC⁻¹)·weyl(C)·upper(C⁻¹D).
fn letters_c_invertible(space: SymplecticSpace, m: &SymplecticMap) -> Result<Vec<(LetterKind, ExactMatrix)>> {
    let [a, _, c, d] = m.blocks();
    let ci = c.inverse()?;
    let mut out = vec![(Upper, a.mul(&ci)?)];
    out.extend(weyl_letters(space, &c)?);
    out.push((Upper, ci.mul(&d)?));
    Ok(out)
}

fn raw_letters(m: &SymplecticMap) -> Result<Vec<(LetterKind, ExactMatrix)>> {
    let space = m.space();
    let [a, b, c, d] = m.blocks();
    if m.matrix().is_identity() {
        return Ok(vec![(Lower, space.zero())]);
    }
    if a.is_identity() && d.is_identity() {
        if c.is_zero() {
            return Ok(vec![(Upper, b)]);
        }
        if b.is_zero() {
            return Ok(vec![(Lower, c)]);
        }
    }
    if c.is_zero() {
        // upper(BAᵀ)·h(A)
        let mut out = vec![(Upper, b.mul(&a.transpose())?)];
        out.extend(h_letters(&a)?);
        return Ok(out);
    }
    if c.is_invertible() {
        return letters_c_invertible(space, m);
    }
    // M = lower(−t)·(lower(t)·M) with tA + C invertible.
    let field = space.field();
    let stages = [
        ladder(field, 24).iter().map(|t| ExactMatrix::scalar(field, space.genus(), t)).collect::<Vec<_>>(),
        symmetric_grid(space, &ladder(field, 3), true),
        symmetric_grid(space, &ladder(field, 3), false),
    ];
    for t in stages.iter().flatten() {
        if t.mul(&a)?.add(&c)?.is_invertible() {
            let shifted = crate::symplectic::generator_lower(space, t)?.compose(m)?;
            let mut out = vec![(Lower, t.neg())];
            out.extend(letters_c_invertible(space, &shifted)?);
            return Ok(out);
        }
    }
    Err(Error::Internal("no lower shift makes the lower-left block invertible".into()))
}

/// A Sturm word evaluating to `m`; zero letters at the ends are stripped and
/// neighbours of the same kind merged.
pub fn decompose(m: &SymplecticMap) -> Result<SturmWord> {
    let space = m.space();
    let mut w = SturmWord::from_kinded(space, raw_letters(m)?)?.kinded();
    while w.len() > 1 && w.last().is_some_and(|(_, q)| q.is_zero()) {
        w.pop();
    }
    while w.len() > 1 && w.first().is_some_and(|(_, q)| q.is_zero()) {
        w.remove(0);
    }
    let word = SturmWord::from_kinded(space, w)?;
    if word.evaluate()?.matrix() != m.matrix() {
        return Err(Error::Internal("decomposition does not evaluate back to the input".into()));
    }
    Ok(word)
}

/// prefix · decompose(E(prefix)⁻¹·m): a different word for the same map.
pub fn decompose_with_prefix(m: &SymplecticMap, prefix: &SturmWord) -> Result<SturmWord> {
    let rest = prefix.evaluate()?.inverse().compose(m)?;
    let w = prefix.concat(&decompose(&rest)?)?;
    if w.evaluate()?.matrix() != m.matrix() {
        return Err(Error::Internal("prefixed decomposition does not evaluate back to the input".into()));
    }
    Ok(w)
}
