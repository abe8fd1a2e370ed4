use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive};

use crate::error::{domain, Error, Result};
use crate::exact::{jacobi, least_nonresidue, rational_square_class, FieldDescriptor, FieldElement, SquareClass};

/// Second-residue component at an odd prime p: an element of W(F_p).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResidueClass {
    pub rank_parity: u8,
    /// Signed discriminant is a nonsquare mod p.
    pub nonsquare: bool,
}

impl ResidueClass {
    fn is_zero(&self) -> bool {
        self.rank_parity == 0 && !self.nonsquare
    }

    fn add(&self, other: &Self, p: &BigUint) -> Self {
        let twist = self.rank_parity & other.rank_parity == 1 && minus_one_nonsquare(p);
        ResidueClass { rank_parity: self.rank_parity ^ other.rank_parity, nonsquare: self.nonsquare ^ other.nonsquare ^ twist }
    }

    fn neg(&self, p: &BigUint) -> Self {
        let twist = self.rank_parity == 1 && minus_one_nonsquare(p);
        ResidueClass { rank_parity: self.rank_parity, nonsquare: self.nonsquare ^ twist }
    }

    /// Canonical disc representative: 1 or the least nonresidue mod p.
    pub fn disc_representative(&self, p: &BigUint) -> BigUint {
        if self.nonsquare {
            least_nonresidue(p)
        } else {
            BigUint::from(1u8)
        }
    }
}

fn minus_one_nonsquare(p: &BigUint) -> bool {
    (p % 4u8).to_u8() == Some(3)
}

/// Canonical invariant record of an element of W(k).
///
/// Over F_p: rank parity and signed discriminant. Over Q additionally the
/// signature and the nonzero second residues at odd primes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WittClass {
    field: FieldDescriptor,
    rank_parity: u8,
    disc: SquareClass,
    signature: Option<i64>,
    residues: BTreeMap<BigUint, ResidueClass>,
}

impl WittClass {
    pub fn zero(field: FieldDescriptor) -> Self {
        WittClass {
            field,
            rank_parity: 0,
            disc: SquareClass::one(field),
            signature: field.is_rationals().then_some(0),
            residues: BTreeMap::new(),
        }
    }

    /// Class of the diagonal form ⟨d_1, ..., d_r⟩ with all d_i nonzero.
    pub fn from_diagonal(field: FieldDescriptor, entries: &[FieldElement]) -> Result<Self> {
        let r = entries.len() as u64;
        let mut disc = SquareClass::one(field);
        let mut signature = 0i64;
        let mut residue_acc: BTreeMap<BigUint, (u64, i32)> = BTreeMap::new();
        for e in entries {
            if e.field() != field {
                return Err(Error::FieldMismatch);
            }
            if e.is_zero() {
                return domain("diagonal entry is zero");
            }
            match field {
                FieldDescriptor::Rationals => {
                    let (s, primes) = rational_square_class(e.as_rational().unwrap());
                    signature += if s.is_negative() { -1 } else { 1 };
                    for p in primes {
                        if p == BigUint::from(2u8) {
                            continue;
                        }
                        let unit = &s / BigInt::from(p.clone());
                        let leg = jacobi(&unit, &p);
                        let slot = residue_acc.entry(p).or_insert((0, 1));
                        slot.0 += 1;
                        slot.1 *= leg;
                    }
                    disc = disc.mul(&SquareClass::Rational(s));
                }
                FieldDescriptor::Prime(_) => disc = disc.mul(&SquareClass::of(e)?),
            }
        }
        let mut residues = BTreeMap::new();
        for (p, (k, leg)) in residue_acc {
            let mut sign = leg;
            if (k * k.saturating_sub(1) / 2) % 2 == 1 && minus_one_nonsquare(&p) {
                sign = -sign;
            }
            let rc = ResidueClass { rank_parity: (k % 2) as u8, nonsquare: sign == -1 };
            if !rc.is_zero() {
                residues.insert(p, rc);
            }
        }
        Ok(WittClass {
            field,
            rank_parity: (r % 2) as u8,
            disc: disc.twist(r * r.saturating_sub(1) / 2),
            signature: field.is_rationals().then_some(signature),
            residues,
        })
    }

    pub fn from_i64_diagonal(field: FieldDescriptor, entries: &[i64]) -> Self {
        let e: Vec<_> = entries.iter().map(|&v| FieldElement::from_i64(field, v)).collect();
        Self::from_diagonal(field, &e).expect("nonzero integer entries")
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn rank_parity(&self) -> u8 {
        self.rank_parity
    }

    pub fn disc(&self) -> &SquareClass {
        &self.disc
    }

    pub fn signature(&self) -> Option<i64> {
        self.signature
    }

    pub fn residues(&self) -> &BTreeMap<BigUint, ResidueClass> {
        &self.residues
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::zero(self.field)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let mut residues = self.residues.clone();
        for (p, rc) in &other.residues {
            let sum = match residues.get(p) {
                Some(mine) => mine.add(rc, p),
                None => rc.clone(),
            };
            if sum.is_zero() {
                residues.remove(p);
            } else {
                residues.insert(p.clone(), sum);
            }
        }
        Ok(WittClass {
            field: self.field,
            rank_parity: self.rank_parity ^ other.rank_parity,
            disc: self.disc.mul(&other.disc).twist((self.rank_parity & other.rank_parity) as u64),
            signature: self.signature.zip(other.signature).map(|(a, b)| a + b),
            residues,
        })
    }

    pub fn neg(&self) -> Self {
        WittClass {
            field: self.field,
            rank_parity: self.rank_parity,
            disc: self.disc.twist(self.rank_parity as u64),
            signature: self.signature.map(|s| -s),
            residues: self.residues.iter().map(|(p, rc)| (p.clone(), rc.neg(p))).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// `n` copies of `self` (negative `n` uses the inverse).
    pub fn times(&self, n: i64) -> Self {
        let base = if n < 0 { self.neg() } else { self.clone() };
        (0..n.unsigned_abs()).fold(Self::zero(self.field), |acc, _| acc.add(&base).expect("same field"))
    }

    pub fn mod_i2(&self) -> WittModI2 {
        WittModI2 { field: self.field, rank_parity: self.rank_parity, disc: self.disc.clone() }
    }
}

impl fmt::Display for WittClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(rank {} mod 2, disc {}", self.rank_parity, self.disc)?;
        if let Some(s) = self.signature {
            write!(f, ", signature {s}")?;
        }
        for (p, rc) in &self.residues {
            write!(f, ", ∂_{p} = ({}, {})", rc.rank_parity, rc.disc_representative(p))?;
        }
        write!(f, ")")
    }
}

/// Element of W(k)/I²: rank parity and signed discriminant under the twisted law.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WittModI2 {
    field: FieldDescriptor,
    rank_parity: u8,
    disc: SquareClass,
}

impl WittModI2 {
    pub fn new(rank_parity: u8, disc: SquareClass) -> Self {
        WittModI2 { field: disc.field(), rank_parity: rank_parity % 2, disc }
    }

    pub fn zero(field: FieldDescriptor) -> Self {
        Self::new(0, SquareClass::one(field))
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn rank_parity(&self) -> u8 {
        self.rank_parity
    }

    pub fn disc(&self) -> &SquareClass {
        &self.disc
    }

    pub fn is_zero(&self) -> bool {
        self.rank_parity == 0 && self.disc.is_trivial()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(Self::new(
            self.rank_parity ^ other.rank_parity,
            self.disc.mul(&other.disc).twist((self.rank_parity & other.rank_parity) as u64),
        ))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.rank_parity, self.disc.twist(self.rank_parity as u64))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }
}

impl fmt::Display for WittModI2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(rank {} mod 2, disc {})", self.rank_parity, self.disc)
    }
}

/// The map (λ, n) ↦ ⟨1, −λ⟩ ⊕ n⟨1⟩ into W(k)/I², for n taken mod 4.
pub fn f_map(lambda: &SquareClass, n: i64) -> WittModI2 {
    let n = n.rem_euclid(4) as u64;
    WittModI2::new((n % 2) as u8, lambda.twist(n * n.saturating_sub(1) / 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldDescriptor = FieldDescriptor::Rationals;

    fn fp(p: u64) -> FieldDescriptor {
        FieldDescriptor::prime(p).unwrap()
    }

    #[test]
    fn hyperbolic_diagonal_is_zero() {
        for field in [Q, fp(3), fp(5), fp(7)] {
            assert!(WittClass::from_i64_diagonal(field, &[1, -1]).is_zero());
        }
    }

    #[test]
    fn one_has_order_four_over_f3() {
        let one = WittClass::from_i64_diagonal(fp(3), &[1]);
        assert!(!one.times(2).is_zero());
        assert!(one.times(4).is_zero());
        assert_eq!(one.add(&one).unwrap(), WittClass::from_i64_diagonal(fp(3), &[1, 1]));
    }

    #[test]
    fn sum_of_two_squares_splits_over_f5() {
        assert!(WittClass::from_i64_diagonal(fp(5), &[1, 1]).is_zero());
    }

    #[test]
    fn group_laws() {
        let c = WittClass::from_i64_diagonal(Q, &[3, -5, 7]);
        assert_eq!(c.add(&WittClass::zero(Q)).unwrap(), c);
        assert!(c.add(&c.neg()).unwrap().is_zero());
        assert_eq!(c.neg(), WittClass::from_i64_diagonal(Q, &[-3, 5, -7]));
        assert_eq!(c.add(&WittClass::zero(fp(3))), Err(Error::FieldMismatch));
    }

    #[test]
    fn rational_residues() {
        let c = WittClass::from_i64_diagonal(Q, &[3]);
        assert_eq!(c.residues().len(), 1);
        let rc = &c.residues()[&BigUint::from(3u8)];
        assert_eq!((rc.rank_parity, rc.nonsquare), (1, false));
        // ⟨3, 12⟩ = ⟨3, 3⟩ has residue ⟨1, 1⟩ at 3, a nonzero class since -1 is not a square mod 3.
        let c = WittClass::from_i64_diagonal(Q, &[3, 12]);
        let rc = &c.residues()[&BigUint::from(3u8)];
        assert_eq!((rc.rank_parity, rc.nonsquare), (0, true));
        // ⟨5, 5⟩ has residue ⟨1, 1⟩ at 5, which is zero in W(F_5).
        assert!(WittClass::from_i64_diagonal(Q, &[5, 5]).residues().is_empty());
    }

    #[test]
    fn mod_i2_examples() {
        assert_eq!(WittClass::zero(Q).mod_i2(), WittModI2::zero(Q));
        for lambda in [2i64, -3, 6] {
            let m = WittClass::from_i64_diagonal(Q, &[1, -lambda]).mod_i2();
            assert_eq!(m, WittModI2::new(0, SquareClass::Rational(lambda.into())));
        }
        assert_eq!(WittClass::from_i64_diagonal(Q, &[1]).mod_i2(), WittModI2::new(1, SquareClass::one(Q)));
    }

    #[test]
    fn f_map_examples() {
        let one = SquareClass::one(Q);
        assert_eq!(f_map(&one, 0), WittModI2::zero(Q));
        let lam = SquareClass::Rational((-7).into());
        assert_eq!(f_map(&lam, 0), WittClass::from_i64_diagonal(Q, &[1, 7]).mod_i2());
        assert_eq!(f_map(&one, 2), WittModI2::new(0, SquareClass::minus_one(Q)));
        assert!(f_map(&one, 4).is_zero());
    }

    #[test]
    fn finite_field_value_sets_have_four_elements() {
        for p in [3, 5, 7] {
            let field = fp(p);
            let mut seen = std::collections::HashSet::new();
            for a in 1..p as i64 {
                for b in 0..p as i64 {
                    let mut d = vec![a];
                    if b != 0 {
                        d.push(b);
                    }
                    seen.insert(WittClass::from_i64_diagonal(field, &d));
                }
            }
            seen.insert(WittClass::zero(field));
            assert_eq!(seen.len(), 4, "p = {p}");
        }
    }
}
