use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An odd prime below 2^31, so products of two residues fit in a `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OddPrime(u64);

impl OddPrime {
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::Field("characteristic 2 is not supported".into()));
        }
        if p >= 1 << 31 {
            return Err(Error::Field(format!("modulus {p} exceeds 2^31")));
        }
        if p < 3 || !is_prime_u64(p) {
            return Err(Error::Field(format!("{p} is not an odd prime")));
        }
        Ok(OddPrime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The scalar field: the rationals or a prime field of odd characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Rationals,
    Prime(OddPrime),
}

impl FieldDescriptor {
    pub fn prime(p: u64) -> Result<Self> {
        OddPrime::new(p).map(FieldDescriptor::Prime)
    }

    pub fn is_rationals(self) -> bool {
        matches!(self, FieldDescriptor::Rationals)
    }

    pub fn modulus(self) -> Option<u64> {
        match self {
            FieldDescriptor::Rationals => None,
            FieldDescriptor::Prime(p) => Some(p.get()),
        }
    }

    /// Every element of a prime field, in increasing residue order.
    pub fn elements(self) -> Option<Vec<FieldElement>> {
        let p = self.modulus()?;
        Some((0..p).map(|v| FieldElement::from_i64(self, v as i64)).collect())
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::Prime(p) => write!(f, "F_{}", p.get()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Rational(BigRational),
    Residue { value: u64, p: OddPrime },
}

/// An exact scalar. Rationals are kept in lowest terms, residues in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement(Repr);

impl FieldElement {
    pub fn zero(field: FieldDescriptor) -> Self {
        Self::from_i64(field, 0)
    }

    pub fn one(field: FieldDescriptor) -> Self {
        Self::from_i64(field, 1)
    }

    pub fn from_i64(field: FieldDescriptor, n: i64) -> Self {
        match field {
            FieldDescriptor::Rationals => FieldElement(Repr::Rational(BigRational::from_integer(n.into()))),
            FieldDescriptor::Prime(p) => {
                let value = n.rem_euclid(p.get() as i64) as u64;
                FieldElement(Repr::Residue { value, p })
            }
        }
    }

    pub fn from_bigint(field: FieldDescriptor, n: &BigInt) -> Self {
        match field {
            FieldDescriptor::Rationals => FieldElement(Repr::Rational(BigRational::from_integer(n.clone()))),
            FieldDescriptor::Prime(p) => {
                let m = BigInt::from(p.get());
                let value = n.mod_floor(&m).to_u64().expect("residue fits");
                FieldElement(Repr::Residue { value, p })
            }
        }
    }

    /// Maps a rational into `field`; fails when the denominator vanishes mod p.
    pub fn from_rational(field: FieldDescriptor, q: &BigRational) -> Result<Self> {
        match field {
            FieldDescriptor::Rationals => Ok(FieldElement(Repr::Rational(q.clone()))),
            FieldDescriptor::Prime(_) => {
                let num = Self::from_bigint(field, q.numer());
                let den = Self::from_bigint(field, q.denom());
                Ok(&num * &den.inv()?)
            }
        }
    }

    /// Parses `"a"` or `"a/b"` and maps the value into `field`.
    pub fn parse(field: FieldDescriptor, s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational literal: {s:?}"));
        let q = match s.split_once('/') {
            Some((a, b)) => {
                let a: BigInt = a.trim().parse().map_err(|_| bad())?;
                let b: BigInt = b.trim().parse().map_err(|_| bad())?;
                if b.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                BigRational::new(a, b)
            }
            None => BigRational::from_integer(s.parse().map_err(|_| bad())?),
        };
        Self::from_rational(field, &q)
    }

    pub fn field(&self) -> FieldDescriptor {
        match &self.0 {
            Repr::Rational(_) => FieldDescriptor::Rationals,
            Repr::Residue { p, .. } => FieldDescriptor::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Rational(q) => q.is_zero(),
            Repr::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Rational(q) => q.is_one(),
            Repr::Residue { value, .. } => *value == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rational(q) => Some(q),
            Repr::Residue { .. } => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match &self.0 {
            Repr::Rational(_) => None,
            Repr::Residue { value, .. } => Some(*value),
        }
    }

    /// Sign under the real embedding; `None` over a prime field.
    pub fn signum(&self) -> Option<i32> {
        self.as_rational().map(|q| {
            if q.is_positive() {
                1
            } else if q.is_negative() {
                -1
            } else {
                0
            }
        })
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.0 {
            Repr::Rational(q) => FieldElement(Repr::Rational(q.recip())),
            Repr::Residue { value, p } => {
                FieldElement(Repr::Residue { value: pow_mod(*value, p.get() - 2, p.get()), p: *p })
            }
        })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.field(), other.field(), "arithmetic across different fields");
    }
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rational(q) => write!(f, "{q}"),
            Repr::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        match (&self.0, &rhs.0) {
            (Repr::Rational(a), Repr::Rational(b)) => FieldElement(Repr::Rational(a + b)),
            (Repr::Residue { value: a, p }, Repr::Residue { value: b, .. }) => {
                FieldElement(Repr::Residue { value: (a + b) % p.get(), p: *p })
            }
            _ => unreachable!(),
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        match (&self.0, &rhs.0) {
            (Repr::Rational(a), Repr::Rational(b)) => FieldElement(Repr::Rational(a - b)),
            (Repr::Residue { value: a, p }, Repr::Residue { value: b, .. }) => {
                FieldElement(Repr::Residue { value: (a + p.get() - b) % p.get(), p: *p })
            }
            _ => unreachable!(),
        }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        match (&self.0, &rhs.0) {
            (Repr::Rational(a), Repr::Rational(b)) => FieldElement(Repr::Rational(a * b)),
            (Repr::Residue { value: a, p }, Repr::Residue { value: b, .. }) => {
                FieldElement(Repr::Residue { value: a * b % p.get(), p: *p })
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match &self.0 {
            Repr::Rational(a) => FieldElement(Repr::Rational(-a)),
            Repr::Residue { value, p } => FieldElement(Repr::Residue { value: (p.get() - value) % p.get(), p: *p }),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> FieldElement {
        FieldElement::parse(FieldDescriptor::Rationals, s).unwrap()
    }

    #[test]
    fn rejects_even_and_composite_moduli() {
        assert!(matches!(FieldDescriptor::prime(2), Err(Error::Field(_))));
        assert!(FieldDescriptor::prime(9).is_err());
        assert!(FieldDescriptor::prime(1).is_err());
        assert!(FieldDescriptor::prime(7).is_ok());
    }

    #[test]
    fn rationals_stay_in_lowest_terms() {
        assert_eq!(q("6/-4").to_string(), "-3/2");
        assert_eq!((&q("1/3") + &q("2/3")).to_string(), "1");
    }

    #[test]
    fn residues_reduce_and_invert() {
        let f7 = FieldDescriptor::prime(7).unwrap();
        let a = FieldElement::parse(f7, "-1/2").unwrap();
        assert_eq!(a.residue(), Some(3));
        assert!((&a * &a.inv().unwrap()).is_one());
        assert!(FieldElement::parse(f7, "1/7").is_err());
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(q("0").inv(), Err(Error::DivisionByZero));
    }
}
