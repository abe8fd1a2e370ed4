//! Square classes, Legendre/Jacobi symbols and Hilbert symbols.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{pow_mod, FieldDescriptor, FieldElement, OddPrime};
use crate::error::{domain, Result};

thread_local! {
    static FACTOR_CACHE: RefCell<HashMap<BigUint, Vec<(BigUint, usize)>>> = RefCell::new(HashMap::new());
}

/// Prime factorization of `n > 0`, ascending by prime. Memoized per thread.
pub fn factorize(n: &BigUint) -> Vec<(BigUint, usize)> {
    if n.is_one() || n.is_zero() {
        return Vec::new();
    }
    if let Some(hit) = FACTOR_CACHE.with(|c| c.borrow().get(n).cloned()) {
        return hit;
    }
    let out: Vec<(BigUint, usize)> = match n.to_u128() {
        Some(small) => num_prime::nt_funcs::factorize128(small)
            .into_iter()
            .map(|(p, e)| (BigUint::from(p), e))
            .collect(),
        None => num_prime::nt_funcs::factorize(n.clone()).into_iter().collect(),
    };
    FACTOR_CACHE.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() > 1 << 16 {
            c.clear();
        }
        c.insert(n.clone(), out.clone());
    });
    out
}

/// Squarefree part of a nonzero integer (sign kept) and the primes dividing it.
pub fn squarefree_part(n: &BigInt) -> (BigInt, Vec<BigUint>) {
    assert!(!n.is_zero(), "squarefree part of zero");
    let mut primes = Vec::new();
    let mut core = BigUint::one();
    for (p, e) in factorize(n.magnitude()) {
        if e % 2 == 1 {
            core *= &p;
            primes.push(p);
        }
    }
    let sign = if n.is_negative() { Sign::Minus } else { Sign::Plus };
    (BigInt::from_biguint(sign, core), primes)
}

/// Squarefree integer in the square class of a nonzero rational, with its primes.
pub fn rational_square_class(q: &BigRational) -> (BigInt, Vec<BigUint>) {
    squarefree_part(&(q.numer() * q.denom()))
}

fn is_perfect_square(n: &BigUint) -> bool {
    let r = n.sqrt();
    &r * &r == *n
}

/// True when a nonzero rational is the square of a rational.
pub fn is_rational_square(q: &BigRational) -> bool {
    !q.is_negative() && is_perfect_square(q.numer().magnitude()) && is_perfect_square(q.denom().magnitude())
}

/// Jacobi symbol (a/n) for odd positive n.
pub fn jacobi(a: &BigInt, n: &BigUint) -> i32 {
    assert!(n.is_odd(), "Jacobi symbol needs an odd modulus");
    let n_int = BigInt::from(n.clone());
    let mut a = a.mod_floor(&n_int).to_biguint().expect("reduced");
    let mut n = n.clone();
    let mut t = 1;
    let three = BigUint::from(3u8);
    let five = BigUint::from(5u8);
    let eight = BigUint::from(8u8);
    let four = BigUint::from(4u8);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = &n % &eight;
            if r == three || r == five {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if &a % &four == three && &n % &four == three {
            t = -t;
        }
        a %= &n;
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

/// Smallest positive quadratic nonresidue modulo an odd prime.
pub fn least_nonresidue(p: &BigUint) -> BigUint {
    let mut a = BigUint::from(2u8);
    loop {
        if jacobi(&BigInt::from(a.clone()), p) == -1 {
            return a;
        }
        a += 1u8;
    }
}

fn least_nonresidue_u64(p: u64) -> u64 {
    (2..p).find(|&a| pow_mod(a, (p - 1) / 2, p) == p - 1).expect("odd prime has a nonresidue")
}

/// Canonical representative of a square class.
///
/// Over the rationals: the squarefree integer. Over a prime field: `1` or the
/// least positive nonresidue.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SquareClass {
    Rational(BigInt),
    Residue { nonsquare: bool, p: OddPrime },
}

impl SquareClass {
    pub fn of(a: &FieldElement) -> Result<Self> {
        if a.is_zero() {
            return domain("square class of zero");
        }
        Ok(match a.field() {
            FieldDescriptor::Rationals => SquareClass::Rational(rational_square_class(a.as_rational().unwrap()).0),
            FieldDescriptor::Prime(p) => {
                let v = a.residue().unwrap();
                SquareClass::Residue { nonsquare: pow_mod(v, (p.get() - 1) / 2, p.get()) != 1, p }
            }
        })
    }

    pub fn one(field: FieldDescriptor) -> Self {
        match field {
            FieldDescriptor::Rationals => SquareClass::Rational(BigInt::one()),
            FieldDescriptor::Prime(p) => SquareClass::Residue { nonsquare: false, p },
        }
    }

    pub fn minus_one(field: FieldDescriptor) -> Self {
        Self::of(&-FieldElement::one(field)).unwrap()
    }

    pub fn field(&self) -> FieldDescriptor {
        match self {
            SquareClass::Rational(_) => FieldDescriptor::Rationals,
            SquareClass::Residue { p, .. } => FieldDescriptor::Prime(*p),
        }
    }

    pub fn is_trivial(&self) -> bool {
        match self {
            SquareClass::Rational(n) => n.is_one(),
            SquareClass::Residue { nonsquare, .. } => !nonsquare,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (SquareClass::Rational(a), SquareClass::Rational(b)) => {
                let g = a.gcd(b);
                SquareClass::Rational(a * b / (&g * &g))
            }
            (SquareClass::Residue { nonsquare: a, p }, SquareClass::Residue { nonsquare: b, p: q }) => {
                assert_eq!(p, q, "square classes over different fields");
                SquareClass::Residue { nonsquare: a ^ b, p: *p }
            }
            _ => panic!("square classes over different fields"),
        }
    }

    /// Multiplies by `(-1)^e`.
    pub fn twist(&self, e: u64) -> Self {
        if e % 2 == 0 {
            self.clone()
        } else {
            self.mul(&Self::minus_one(self.field()))
        }
    }

    pub fn representative(&self) -> FieldElement {
        match self {
            SquareClass::Rational(n) => FieldElement::from_bigint(FieldDescriptor::Rationals, n),
            SquareClass::Residue { nonsquare, p } => {
                let v = if *nonsquare { least_nonresidue_u64(p.get()) } else { 1 };
                FieldElement::from_i64(FieldDescriptor::Prime(*p), v as i64)
            }
        }
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.representative())
    }
}

/// A place of the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Infinity,
    Prime(BigUint),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

// Splits n = p^v * u with p not dividing u.
fn split_valuation(n: &BigInt, p: &BigUint) -> (u64, BigInt) {
    let p = BigInt::from(p.clone());
    let mut u = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = u.div_rem(&p);
        if !r.is_zero() {
            return (v, u);
        }
        u = q;
        v += 1;
    }
}

fn rational_to_integer_class(q: &BigRational) -> BigInt {
    // a/b and a*b differ by the square b^2.
    q.numer() * q.denom()
}

/// Hilbert symbol `(a, b)_v` of two nonzero rationals.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, place: &Place) -> Result<i32> {
    if a.is_zero() || b.is_zero() {
        return domain("Hilbert symbol of zero");
    }
    let a = rational_to_integer_class(a);
    let b = rational_to_integer_class(b);
    Ok(match place {
        Place::Infinity => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(p) if p == &BigUint::from(2u8) => {
            let (alpha, u) = split_valuation(&a, p);
            let (beta, v) = split_valuation(&b, p);
            let eps = |x: &BigInt| -> u64 { (x.mod_floor(&BigInt::from(4)) == BigInt::from(3)) as u64 };
            let omega = |x: &BigInt| -> u64 {
                let r = x.mod_floor(&BigInt::from(8));
                (r == BigInt::from(3) || r == BigInt::from(5)) as u64
            };
            let e = eps(&u) * eps(&v) + alpha * omega(&v) + beta * omega(&u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            if p.is_even() {
                return domain(format!("{p} is not prime"));
            }
            let (alpha, u) = split_valuation(&a, p);
            let (beta, v) = split_valuation(&b, p);
            let mut s = 1;
            let eps_p = (p - 1u8) / 2u8;
            if (alpha * beta) % 2 == 1 && eps_p.is_odd() {
                s = -s;
            }
            if beta % 2 == 1 {
                s *= jacobi(&u, p);
            }
            if alpha % 2 == 1 {
                s *= jacobi(&v, p);
            }
            s
        }
    })
}
