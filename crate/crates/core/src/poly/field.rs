//! Base fields: the rationals with arbitrary precision and prime fields.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::PolyError;

/// The base field of every ring in this crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    /// Builds `GF(p)`, rejecting non-prime moduli.
    pub fn prime(p: u64) -> Result<Self, PolyError> {
        if is_prime(p) {
            Ok(FieldSpec::PrimeField(p))
        } else {
            Err(PolyError::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    pub fn zero(&self) -> Coefficient {
        self.from_i64(0)
    }

    pub fn one(&self) -> Coefficient {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Coefficient {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> Coefficient {
        match self {
            FieldSpec::Rationals => Coefficient::Rational(BigRational::from_integer(v.clone())),
            FieldSpec::PrimeField(p) => {
                let r = v.mod_floor(&BigInt::from(*p));
                Coefficient::Modular {
                    residue: r.to_u64().expect("residue below modulus"),
                    modulus: *p,
                }
            }
        }
    }

    /// Maps `num/den` into the field. Fails when `den` vanishes in the field.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Coefficient, PolyError> {
        let d = self.from_bigint(den);
        let inv = d.inv().ok_or(PolyError::DivisionByZero)?;
        Ok(&self.from_bigint(num) * &inv)
    }

    /// Whether `c` is an element of this field.
    pub fn contains(&self, c: &Coefficient) -> bool {
        c.field() == *self
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::PrimeField(p) => write!(f, "GF {p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// A field element. Rationals are kept in lowest terms with positive
/// denominator (guaranteed by `BigRational`), residues lie in `[0, p)`.
///
/// Binary operations between elements of different fields are a logic error
/// and panic; the polynomial layer checks ambients before reaching here.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coefficient {
    Rational(BigRational),
    Modular { residue: u64, modulus: u64 },
}

impl Coefficient {
    pub fn field(&self) -> FieldSpec {
        match self {
            Coefficient::Rational(_) => FieldSpec::Rationals,
            Coefficient::Modular { modulus, .. } => FieldSpec::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Rational(q) => q.is_zero(),
            Coefficient::Modular { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coefficient::Rational(q) => q.is_one(),
            Coefficient::Modular { residue, .. } => *residue == 1,
        }
    }

    /// True for rationals with a negative value; residues are never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Coefficient::Rational(q) => q.is_negative(),
            Coefficient::Modular { .. } => false,
        }
    }

    pub fn inv(&self) -> Option<Coefficient> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Coefficient::Rational(q) => Coefficient::Rational(q.recip()),
            Coefficient::Modular { residue, modulus } => Coefficient::Modular {
                residue: pow_mod(*residue, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, mut e: u32) -> Coefficient {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn abs(&self) -> Coefficient {
        match self {
            Coefficient::Rational(q) => Coefficient::Rational(q.abs()),
            m => m.clone(),
        }
    }
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut acc = 1u128 % m;
    let mut base = b as u128 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u64
}

macro_rules! binop {
    ($trait:ident, $method:ident, $q:expr, $m:expr) => {
        impl<'a> std::ops::$trait<&'a Coefficient> for &'a Coefficient {
            type Output = Coefficient;
            fn $method(self, rhs: &'a Coefficient) -> Coefficient {
                match (self, rhs) {
                    (Coefficient::Rational(a), Coefficient::Rational(b)) => {
                        Coefficient::Rational($q(a, b))
                    }
                    (
                        Coefficient::Modular {
                            residue: a,
                            modulus: p,
                        },
                        Coefficient::Modular {
                            residue: b,
                            modulus: q,
                        },
                    ) if p == q => Coefficient::Modular {
                        residue: $m(*a as u128, *b as u128, *p as u128) as u64,
                        modulus: *p,
                    },
                    _ => panic!("coefficient field mismatch"),
                }
            }
        }
    };
}

binop!(
    Add,
    add,
    |a: &BigRational, b: &BigRational| a + b,
    |a, b, p| (a + b) % p
);
binop!(
    Sub,
    sub,
    |a: &BigRational, b: &BigRational| a - b,
    |a, b, p| (a + p - b) % p
);
binop!(
    Mul,
    mul,
    |a: &BigRational, b: &BigRational| a * b,
    |a, b, p| a * b % p
);

impl std::ops::Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        match self {
            Coefficient::Rational(q) => Coefficient::Rational(-q),
            Coefficient::Modular { residue, modulus } => Coefficient::Modular {
                residue: (modulus - residue) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Rational(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Coefficient::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Coefficient::Modular { residue, .. } => write!(f, "{residue}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_by_trial_division() {
        assert!(FieldSpec::prime(2).is_ok());
        assert!(FieldSpec::prime(101).is_ok());
        assert_eq!(FieldSpec::prime(1), Err(PolyError::NotPrime(1)));
        assert_eq!(FieldSpec::prime(91), Err(PolyError::NotPrime(91)));
        assert_eq!(FieldSpec::Rationals.characteristic(), 0);
    }

    #[test]
    fn rationals_stay_reduced() {
        let q = FieldSpec::Rationals;
        let a = q
            .from_fraction(&BigInt::from(6), &BigInt::from(-4))
            .unwrap();
        assert_eq!(a.to_string(), "-3/2");
        let b = &a * &q.from_i64(2);
        assert_eq!(b, q.from_i64(-3));
    }

    #[test]
    fn modular_arithmetic() {
        let f = FieldSpec::prime(7).unwrap();
        let a = f.from_i64(-1);
        assert_eq!(a.to_string(), "6");
        assert_eq!(&a * &a, f.one());
        let inv3 = f.from_i64(3).inv().unwrap();
        assert_eq!(&inv3 * &f.from_i64(3), f.one());
        assert!(f
            .from_fraction(&BigInt::from(1), &BigInt::from(14))
            .is_err());
        assert_eq!(&f.one() + &f.from_i64(6), f.zero());
    }
}
