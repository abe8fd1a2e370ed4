//! Seeded random objects for property checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::exact::{ExactMatrix, FieldDescriptor, FieldElement};
use crate::maslov::LagrangianPath;
use crate::sturm::{path_of_sturm, SturmWord};
use crate::symplectic::{generator_h, generator_lower, generator_upper, Lagrangian, SymplecticMap, SymplecticSpace};

/// Rational entries are drawn from [−ENTRY_BOUND, ENTRY_BOUND].
pub const ENTRY_BOUND: i64 = 3;

/// A seeded source of field elements, matrices, maps, Lagrangians and paths
/// over a fixed space.
pub struct Sampler {
    rng: ChaCha8Rng,
    space: SymplecticSpace,
}

impl Sampler {
    pub fn new(space: SymplecticSpace, seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), space }
    }

    pub fn space(&self) -> SymplecticSpace {
        self.space
    }

    pub fn field(&self) -> FieldDescriptor {
        self.space.field()
    }

    pub fn genus(&self) -> usize {
        self.space.genus()
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn chance(&mut self, num: u32, den: u32) -> bool {
        self.rng.gen_ratio(num, den)
    }

    pub fn element(&mut self) -> FieldElement {
        let field = self.field();
        match field.modulus() {
            Some(p) => FieldElement::from_i64(field, self.rng.gen_range(0..p) as i64),
            None => FieldElement::from_i64(field, self.rng.gen_range(-ENTRY_BOUND..=ENTRY_BOUND)),
        }
    }

    pub fn nonzero(&mut self) -> FieldElement {
        loop {
            let x = self.element();
            if !x.is_zero() {
                return x;
            }
        }
    }

    pub fn matrix(&mut self) -> ExactMatrix {
        let g = self.genus();
        let mut m = ExactMatrix::zeros(self.field(), g, g);
        for i in 0..g {
            for j in 0..g {
                m.set(i, j, self.element());
            }
        }
        m
    }

    pub fn invertible(&mut self) -> ExactMatrix {
        loop {
            let m = self.matrix();
            if m.is_invertible() {
                return m;
            }
        }
    }

    pub fn symmetric(&mut self) -> ExactMatrix {
        let g = self.genus();
        let mut m = ExactMatrix::zeros(self.field(), g, g);
        for i in 0..g {
            for j in i..g {
                let x = self.element();
                m.set(i, j, x.clone());
                m.set(j, i, x);
            }
        }
        m
    }

    pub fn symmetric_invertible(&mut self) -> ExactMatrix {
        loop {
            let m = self.symmetric();
            if m.is_invertible() {
                return m;
            }
        }
    }

    /// A product of two to four random upper, lower and Levi generators.
    pub fn symplectic(&mut self) -> SymplecticMap {
        let space = self.space;
        let mut acc = SymplecticMap::identity(space);
        for _ in 0..self.rng.gen_range(2..=4) {
            let gen = match self.below(3) {
                0 => generator_upper(space, &self.symmetric()),
                1 => generator_lower(space, &self.symmetric()),
                _ => generator_h(space, &self.invertible()),
            }
            .expect("generators of valid shape");
            acc = acc.compose(&gen).expect("same space");
        }
        acc
    }

    pub fn lagrangian(&mut self) -> Lagrangian {
        let l = if self.chance(1, 2) { Lagrangian::standard(self.space) } else { Lagrangian::dual(self.space) };
        self.symplectic().act(&l).expect("same space")
    }

    /// A letter; zero with probability 1/4 so degenerate cases show up.
    pub fn letter(&mut self) -> ExactMatrix {
        if self.chance(1, 4) {
            self.space.zero()
        } else {
            self.symmetric()
        }
    }

    pub fn word(&mut self, len: usize) -> SturmWord {
        let start = self.below(2) as u8;
        let letters = (0..len).map(|_| self.letter()).collect();
        SturmWord::new(self.space, start, letters).expect("symmetric letters")
    }

    /// Word length suited to the genus, keeping rational sizes moderate.
    pub fn word_len(&mut self) -> usize {
        let max = match self.genus() {
            1 => 6,
            2 => 5,
            _ => 4,
        };
        self.rng.gen_range(1..=max)
    }

    /// A random path: the Sturm path of a random word moved by a random map.
    /// Consecutive nodes are transverse; the ends need not be.
    pub fn path(&mut self) -> LagrangianPath {
        let len = self.word_len();
        self.path_with(len)
    }

    pub fn path_with(&mut self, len: usize) -> LagrangianPath {
        let w = self.word(len);
        let phi = self.symplectic();
        let path = path_of_sturm(&w).expect("Sturm paths are paths");
        let drop = self.below(2);
        let nodes = path.nodes()[drop..].to_vec();
        LagrangianPath::new(nodes).expect("sub-path").act(&phi).expect("same space")
    }

    /// A path from `from` to `to` through interior nodes transverse to their neighbours.
    pub fn path_between(&mut self, from: &Lagrangian, to: &Lagrangian) -> Result<LagrangianPath> {
        let mut nodes = vec![from.clone()];
        for _ in 0..self.rng.gen_range(0..=1) {
            let last = nodes.last().unwrap().clone();
            nodes.push(self.transverse_to(&[&last]));
        }
        let last = nodes.last().unwrap().clone();
        nodes.push(self.transverse_to(&[&last, to]));
        nodes.push(to.clone());
        LagrangianPath::new(nodes)
    }

    /// A random Lagrangian transverse to each of `ls`.
    pub fn transverse_to(&mut self, ls: &[&Lagrangian]) -> Lagrangian {
        for _ in 0..64 {
            let c = self.lagrangian();
            if ls.iter().all(|l| crate::symplectic::transverse(&c, l).unwrap_or(false)) {
                return c;
            }
        }
        let owned: Vec<Lagrangian> = ls.iter().map(|l| (*l).clone()).collect();
        crate::symplectic::common_transverse(&owned).expect("a common transverse exists")
    }
}
