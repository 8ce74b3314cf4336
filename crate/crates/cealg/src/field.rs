//! Exact scalar arithmetic over the rationals and over prime fields F_p.
//!
//! Every scalar is stored in a canonical form: rationals as reduced
//! fractions with positive denominator, prime-field elements as residues
//! in `0..p`. Two scalars are equal exactly when their representations
//! are identical, which is what makes echelonized subspaces canonical.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

/// Largest admissible prime modulus. Residue products must fit in `u64`.
pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("modulus {0} is not a prime in 2..2^31")]
    BadModulus(u64),
    #[error("cannot parse scalar from {0:?}")]
    Parse(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("fraction syntax is rejected over F_{0}")]
    FractionOverPrimeField(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("the rationals cannot be enumerated")]
    InfiniteField,
}

/// Descriptor of the ground field: the rationals or a prime field F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    /// Validated constructor for F_p.
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p >= 2 && p < MAX_PRIME && is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(FieldError::BadModulus(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }

    /// Number of elements for a finite field.
    pub fn order(&self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(*p),
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::zero()),
            FieldSpec::Prime(p) => Scalar::Residue { value: 0, modulus: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::one()),
            FieldSpec::Prime(p) => Scalar::Residue { value: 1 % p, modulus: *p },
        }
    }

    /// Embeds a signed integer into the field.
    pub fn integer(&self, value: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(value.into())),
            FieldSpec::Prime(p) => {
                let m = value.rem_euclid(*p as i64) as u64;
                Scalar::Residue { value: m, modulus: *p }
            }
        }
    }

    /// Parses `-?digits(/digits)?`. The fraction form is only meaningful
    /// over the rationals and is rejected for prime fields.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar, FieldError> {
        let bad = || FieldError::Parse(text.to_owned());
        let (num_text, den_text) = match text.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (text, None),
        };
        let numer = parse_integer(num_text).ok_or_else(bad)?;
        let denom = match den_text {
            None => None,
            Some(d) => {
                // Denominators are plain digit runs; no sign allowed.
                if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad());
                }
                Some(d.parse::<BigInt>().map_err(|_| bad())?)
            }
        };
        match self {
            FieldSpec::Rationals => {
                let den = denom.unwrap_or_else(BigInt::one);
                if den.is_zero() {
                    return Err(FieldError::ZeroDenominator(text.to_owned()));
                }
                Ok(Scalar::Rational(BigRational::new(numer, den)))
            }
            FieldSpec::Prime(p) => {
                if denom.is_some() {
                    return Err(FieldError::FractionOverPrimeField(*p));
                }
                let p_big = BigInt::from(*p);
                let residue = ((numer % &p_big) + &p_big) % &p_big;
                let (_, digits) = residue.to_u64_digits();
                let value = digits.first().copied().unwrap_or(0);
                Ok(Scalar::Residue { value, modulus: *p })
            }
        }
    }

    /// Yields every field element once, in the order 0, 1, ..., p-1.
    pub fn enumerate(&self) -> Result<impl Iterator<Item = Scalar>, FieldError> {
        match self {
            FieldSpec::Rationals => Err(FieldError::InfiniteField),
            FieldSpec::Prime(p) => {
                let p = *p;
                Ok((0..p).map(move |value| Scalar::Residue { value, modulus: p }))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl std::str::FromStr for FieldSpec {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "Q" || s == "q" {
            return Ok(FieldSpec::Rationals);
        }
        let rest = s
            .strip_prefix('F')
            .or_else(|| s.strip_prefix('f'))
            .ok_or_else(|| FieldError::Parse(s.to_owned()))?;
        let p: u64 = rest.parse().map_err(|_| FieldError::Parse(s.to_owned()))?;
        FieldSpec::prime(p)
    }
}

fn parse_integer(text: &str) -> Option<BigInt> {
    let digits = text.strip_prefix('-').unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    text.parse::<BigInt>().ok()
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact field element. Mixed-field arithmetic is a programming error
/// and panics; the matrix layer enforces field agreement up front.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (
                Scalar::Residue { value: a, modulus: p },
                Scalar::Residue { value: b, modulus: q },
            ) if p == q => Scalar::Residue { value: (a + b) % p, modulus: *p },
            _ => panic!("scalar arithmetic across different fields"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (
                Scalar::Residue { value: a, modulus: p },
                Scalar::Residue { value: b, modulus: q },
            ) if p == q => Scalar::Residue { value: (a * b) % p, modulus: *p },
            _ => panic!("scalar arithmetic across different fields"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => {
                Scalar::Residue { value: (modulus - value) % modulus, modulus: *modulus }
            }
        }
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        match self {
            Scalar::Rational(a) => Ok(Scalar::Rational(a.recip())),
            Scalar::Residue { value, modulus } => {
                let inv = mod_pow(*value, modulus - 2, *modulus);
                Ok(Scalar::Residue { value: inv, modulus: *modulus })
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        Ok(self.mul(&other.inv()?))
    }
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(_) => write!(f, "{self}q"),
            Scalar::Residue { modulus, .. } => write!(f, "{self}m{modulus}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f5() -> FieldSpec {
        FieldSpec::prime(5).unwrap()
    }

    #[test]
    fn parse_reduces_rationals() {
        let q = FieldSpec::Rationals;
        let half = q.parse_scalar("2/4").unwrap();
        assert_eq!(half, q.parse_scalar("1/2").unwrap());
        assert_eq!(half.to_string(), "1/2");
        assert_eq!(q.parse_scalar("-6/4").unwrap().to_string(), "-3/2");
        assert_eq!(q.parse_scalar("12").unwrap().to_string(), "12");
    }

    #[test]
    fn parse_canonicalizes_residues() {
        assert_eq!(f5().parse_scalar("-3").unwrap(), f5().integer(2));
        assert_eq!(f5().parse_scalar("7").unwrap(), f5().integer(2));
        assert_eq!(f5().parse_scalar("0").unwrap(), f5().zero());
    }

    #[test]
    fn parse_rejects_bad_input() {
        let q = FieldSpec::Rationals;
        assert_eq!(q.parse_scalar("7/0"), Err(FieldError::ZeroDenominator("7/0".into())));
        assert!(matches!(q.parse_scalar("1/-2"), Err(FieldError::Parse(_))));
        assert!(matches!(q.parse_scalar(""), Err(FieldError::Parse(_))));
        assert!(matches!(q.parse_scalar("+3"), Err(FieldError::Parse(_))));
        assert!(matches!(q.parse_scalar("a"), Err(FieldError::Parse(_))));
        assert_eq!(f5().parse_scalar("1/2"), Err(FieldError::FractionOverPrimeField(5)));
    }

    #[test]
    fn parse_print_round_trip() {
        let q = FieldSpec::Rationals;
        for text in ["0", "-7", "3/8", "-11/13", "100000000000000000001"] {
            let s = q.parse_scalar(text).unwrap();
            assert_eq!(q.parse_scalar(&s.to_string()).unwrap(), s);
            assert_eq!(s.to_string(), text);
        }
    }

    #[test]
    fn inverses() {
        assert_eq!(f5().integer(2).inv().unwrap(), f5().integer(3));
        let q = FieldSpec::Rationals;
        assert_eq!(q.parse_scalar("3/4").unwrap().inv().unwrap(), q.parse_scalar("4/3").unwrap());
        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(f7.zero().inv(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn enumeration_order() {
        let f3 = FieldSpec::prime(3).unwrap();
        let got: Vec<String> = f3.enumerate().unwrap().map(|s| s.to_string()).collect();
        assert_eq!(got, ["0", "1", "2"]);
        let f2 = FieldSpec::prime(2).unwrap();
        assert_eq!(f2.enumerate().unwrap().count(), 2);
        assert_eq!(FieldSpec::Rationals.enumerate().err(), Some(FieldError::InfiniteField));
    }

    #[test]
    fn modulus_validation() {
        assert!(FieldSpec::prime(2).is_ok());
        assert!(FieldSpec::prime(2147483647).is_ok()); // 2^31 - 1
        assert_eq!(FieldSpec::prime(1), Err(FieldError::BadModulus(1)));
        assert_eq!(FieldSpec::prime(6), Err(FieldError::BadModulus(6)));
        assert_eq!(FieldSpec::prime(1 << 31), Err(FieldError::BadModulus(1 << 31)));
    }

    #[test]
    fn characteristic_matches_field() {
        let f5 = f5();
        let mut acc = f5.zero();
        for _ in 0..5 {
            acc = acc.add(&f5.one());
        }
        assert!(acc.is_zero());

        let q = FieldSpec::Rationals;
        let mut acc = q.zero();
        for _ in 0..100 {
            acc = acc.add(&q.one());
            assert!(!acc.is_zero());
        }
    }

    fn random_scalar(field: FieldSpec, rng: &mut ChaCha8Rng) -> Scalar {
        match field {
            FieldSpec::Rationals => {
                let n = rng.gen_range(-30i64..=30);
                let d = rng.gen_range(1i64..=30);
                let q = FieldSpec::Rationals;
                q.integer(n).div(&q.integer(d)).unwrap()
            }
            FieldSpec::Prime(p) => {
                FieldSpec::Prime(p).integer(rng.gen_range(0..p) as i64)
            }
        }
    }

    #[test]
    fn field_axioms_on_random_triples() {
        for field in [FieldSpec::Rationals, FieldSpec::prime(2).unwrap(), f5(), FieldSpec::prime(7).unwrap()] {
            let mut rng = ChaCha8Rng::seed_from_u64(17);
            for _ in 0..10_000 {
                let a = random_scalar(field, &mut rng);
                let b = random_scalar(field, &mut rng);
                let c = random_scalar(field, &mut rng);
                assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
                assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
                assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
                assert_eq!(a.add(&b), b.add(&a));
                assert_eq!(a.mul(&b), b.mul(&a));
                assert!(a.add(&a.neg()).is_zero());
                if !a.is_zero() {
                    assert!(a.mul(&a.inv().unwrap()).is_one());
                }
            }
        }
    }
}
