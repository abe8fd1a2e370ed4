use crate::error::{domain, Error, Result};
use crate::exact::ExactMatrix;
use crate::maslov::LagrangianPath;
use crate::symplectic::{generator_lower, generator_upper, Lagrangian, SymplecticMap, SymplecticSpace};
use crate::witt::SymmetricForm;

/// Which stabilizer a letter lives in: lower letters (I, 0; q, I) sit at even
/// absolute positions, upper letters (I, q; 0, I) at odd ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LetterKind {
    Lower,
    Upper,
}

impl LetterKind {
    pub fn of_index(j: u64) -> Self {
        if j % 2 == 0 {
            LetterKind::Lower
        } else {
            LetterKind::Upper
        }
    }

    pub fn parity(self) -> u8 {
        match self {
            LetterKind::Lower => 0,
            LetterKind::Upper => 1,
        }
    }
}

/// An alternating word q_m, …, q_n of symmetric g×g matrices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SturmWord {
    space: SymplecticSpace,
    start_parity: u8,
    letters: Vec<ExactMatrix>,
}

impl SturmWord {
    pub fn new(space: SymplecticSpace, start_parity: u8, letters: Vec<ExactMatrix>) -> Result<Self> {
        if start_parity > 1 {
            return domain("start parity must be 0 or 1");
        }
        for q in &letters {
            space.check_square(q, "letter")?;
            if !q.is_symmetric() {
                return domain("letters must be symmetric");
            }
        }
        Ok(SturmWord { space, start_parity, letters })
    }

    /// Builds a word from kinded letters, merging equal neighbours by addition.
    pub(crate) fn from_kinded(space: SymplecticSpace, letters: Vec<(LetterKind, ExactMatrix)>) -> Result<Self> {
        let mut merged: Vec<(LetterKind, ExactMatrix)> = Vec::new();
        for (k, q) in letters {
            match merged.last_mut() {
                Some((lk, lq)) if *lk == k => *lq = lq.add(&q)?,
                _ => merged.push((k, q)),
            }
        }
        let start = merged.first().map_or(0, |(k, _)| k.parity());
        Self::new(space, start, merged.into_iter().map(|(_, q)| q).collect())
    }

    pub fn zero_letter(space: SymplecticSpace, kind: LetterKind) -> Self {
        SturmWord { space, start_parity: kind.parity(), letters: vec![space.zero()] }
    }

    pub fn space(&self) -> SymplecticSpace {
        self.space
    }

    pub fn start_parity(&self) -> u8 {
        self.start_parity
    }

    /// Parity of the last letter's absolute index; `None` for the empty word.
    pub fn end_parity(&self) -> Option<u8> {
        (!self.letters.is_empty()).then(|| ((self.start_parity as usize + self.letters.len() - 1) % 2) as u8)
    }

    pub fn letters(&self) -> &[ExactMatrix] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn kind(&self, pos: usize) -> LetterKind {
        LetterKind::of_index(self.start_parity as u64 + pos as u64)
    }

    pub fn kinded(&self) -> Vec<(LetterKind, ExactMatrix)> {
        self.letters.iter().enumerate().map(|(i, q)| (self.kind(i), q.clone())).collect()
    }

    /// The ordered product of generators.
    pub fn evaluate(&self) -> Result<SymplecticMap> {
        let mut acc = SymplecticMap::identity(self.space);
        for (i, q) in self.letters.iter().enumerate() {
            let gen = match self.kind(i) {
                LetterKind::Lower => generator_lower(self.space, q)?,
                LetterKind::Upper => generator_upper(self.space, q)?,
            };
            acc = acc.compose(&gen)?;
        }
        Ok(acc)
    }

    /// Juxtaposition; a zero letter is inserted when the seam would repeat a kind.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.space != other.space {
            return Err(Error::Shape("words over different spaces".into()));
        }
        if self.is_empty() {
            return Ok(other.clone());
        }
        if other.is_empty() {
            return Ok(self.clone());
        }
        let mut letters = self.letters.clone();
        if self.end_parity() == Some(other.start_parity) {
            letters.push(self.space.zero());
        }
        letters.extend(other.letters.iter().cloned());
        Ok(SturmWord { space: self.space, start_parity: self.start_parity, letters })
    }

    /// Reversed word with negated letters; evaluates to the inverse.
    pub fn inverse(&self) -> Self {
        SturmWord {
            space: self.space,
            start_parity: self.end_parity().unwrap_or(self.start_parity),
            letters: self.letters.iter().rev().map(ExactMatrix::neg).collect(),
        }
    }

    /// Pads with zero letters at the ends so the word has type (m, n) mod 2.
    pub fn pad_to(&self, m: u8, n: u8) -> Self {
        let mut w = self.clone();
        if w.is_empty() {
            w = Self::zero_letter(self.space, LetterKind::of_index(m as u64));
        }
        if w.start_parity != m % 2 {
            w.letters.insert(0, self.space.zero());
            w.start_parity = m % 2;
        }
        if w.end_parity() != Some(n % 2) {
            w.letters.push(self.space.zero());
        }
        w
    }
}

/// Block-tridiagonal form with diagonal blocks (−1)^j q_j and identity
/// off-diagonal blocks.
pub fn sylvester_of_sturm(w: &SturmWord) -> SymmetricForm {
    let g = w.space.genus();
    let field = w.space.field();
    let n = w.len();
    let mut s = ExactMatrix::zeros(field, n * g, n * g);
    let id = w.space.identity();
    for (i, q) in w.letters.iter().enumerate() {
        let block = if w.kind(i) == LetterKind::Lower { q.clone() } else { q.neg() };
        s.put(i * g, i * g, &block);
        if i + 1 < n {
            s.put(i * g, (i + 1) * g, &id);
            s.put((i + 1) * g, i * g, &id);
        }
    }
    SymmetricForm::new(s).expect("symmetric letters give a symmetric matrix")
}

fn base_lagrangian(space: SymplecticSpace, parity: u64) -> Lagrangian {
    if parity % 2 == 0 {
        Lagrangian::standard(space)
    } else {
        Lagrangian::dual(space)
    }
}

/// The path L_m, L_{m−1}, E(q_m)L_m, E(q_m q_{m+1})L_{m+1}, …, E(q_m..q_n)L_n.
pub fn path_of_sturm(w: &SturmWord) -> Result<LagrangianPath> {
    let m = w.start_parity as u64;
    let space = w.space;
    let mut nodes = vec![base_lagrangian(space, m), base_lagrangian(space, m + 1)];
    let mut acc = SymplecticMap::identity(space);
    for (i, q) in w.letters.iter().enumerate() {
        let gen = match w.kind(i) {
            LetterKind::Lower => generator_lower(space, q)?,
            LetterKind::Upper => generator_upper(space, q)?,
        };
        acc = acc.compose(&gen)?;
        nodes.push(acc.act(&base_lagrangian(space, m + i as u64))?);
    }
    LagrangianPath::new(nodes)
}

/// Inverse of [`path_of_sturm`]: the path must start with L_m, L_{m−1}.
pub fn sturm_of_path(path: &LagrangianPath) -> Result<SturmWord> {
    let space = path.space();
    let (l, d) = (Lagrangian::standard(space), Lagrangian::dual(space));
    let nodes = path.nodes();
    let m: u64 = if nodes[0] == l && nodes[1] == d {
        0
    } else if nodes[0] == d && nodes[1] == l {
        1
    } else {
        return domain("path is not anchored at (L, L*) or (L*, L)");
    };
    let g = space.genus();
    let mut acc = SymplecticMap::identity(space);
    let mut letters = Vec::new();
    for (i, node) in nodes[2..].iter().enumerate() {
        let local = acc.inverse().act(node)?;
        let b = local.basis();
        let top = b.submatrix(0, g, 0, g);
        let bottom = b.submatrix(g, g, 0, g);
        let kind = LetterKind::of_index(m + i as u64);
        let not_transverse = || Error::Domain(format!("node {} is not transverse to its predecessor", i + 2));
        let (q, gen) = match kind {
            LetterKind::Lower => {
                let q = bottom.mul(&top.inverse().map_err(|_| not_transverse())?)?;
                let gen = generator_lower(space, &q)?;
                (q, gen)
            }
            LetterKind::Upper => {
                let q = top.mul(&bottom.inverse().map_err(|_| not_transverse())?)?;
                let gen = generator_upper(space, &q)?;
                (q, gen)
            }
        };
        acc = acc.compose(&gen)?;
        letters.push(q);
    }
    SturmWord::new(space, m as u8, letters)
}

/// A word evaluating to the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelWord {
    word: SturmWord,
}

impl KernelWord {
    pub fn new(word: SturmWord) -> Result<Self> {
        if !word.evaluate()?.matrix().is_identity() {
            return domain("word does not evaluate to the identity");
        }
        Ok(KernelWord { word })
    }

    /// w · decompose(E(w))⁻¹, which always evaluates to the identity.
    pub fn from_word(w: &SturmWord) -> Result<Self> {
        let back = super::decompose(&w.evaluate()?)?;
        Self::new(w.concat(&back.inverse())?)
    }

    pub fn word(&self) -> &SturmWord {
        &self.word
    }

    pub fn concat(&self, other: &Self) -> Result<Self> {
        Ok(KernelWord { word: self.word.concat(&other.word)? })
    }

    /// w k w⁻¹.
    pub fn conjugate(&self, w: &SturmWord) -> Result<Self> {
        Ok(KernelWord { word: w.concat(&self.word)?.concat(&w.inverse())? })
    }
}
