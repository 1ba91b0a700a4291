//! Exact scalars over ℚ or a prime field 𝔽_p.
//!
//! Every value in the engine is a [`Scalar`] tagged with its field so that
//! arithmetic never mixes fields silently. Rationals are arbitrary-precision
//! reduced fractions; prime-field elements are residues in `[0, p)`.

use std::fmt;

use num::{BigInt, BigRational, One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The base field of a computation: ℚ or 𝔽_p for a prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec::PrimeField(p))
        } else {
            Err(Error::FieldMismatch(format!("{p} is not prime")))
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::zero()),
            FieldSpec::PrimeField(p) => Scalar::Residue { value: 0, p: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::one()),
            FieldSpec::PrimeField(p) => Scalar::Residue { value: 1 % *p, p: *p },
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::PrimeField(p) => {
                let m = n.rem_euclid(*p as i64) as u64;
                Scalar::Residue { value: m, p: *p }
            }
        }
    }

    /// Parses the canonical string form: `a` or `a/b` over ℚ, a decimal
    /// residue over 𝔽_p.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        match self {
            FieldSpec::Rationals => {
                let (num_str, den_str) = match s.split_once('/') {
                    Some((a, b)) => (a, b),
                    None => (s, "1"),
                };
                let num: BigInt = num_str
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad rational numerator {num_str:?}")))?;
                let den: BigInt = den_str
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad rational denominator {den_str:?}")))?;
                if den.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in {s:?}")));
                }
                Ok(Scalar::Rational(BigRational::new(num, den)))
            }
            FieldSpec::PrimeField(p) => {
                let n: i128 = s
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad residue {s:?}")))?;
                let m = n.rem_euclid(*p as i128) as u64;
                Ok(Scalar::Residue { value: m, p: *p })
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

/// An exact field element. Fractions are kept in lowest terms with positive
/// denominator, residues reduced mod p; equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { p, .. } => FieldSpec::PrimeField(*p),
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
            Scalar::Residue { value, p } => *value == 1 % *p,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, p }, Scalar::Residue { value: b, p: q }) => {
                assert_eq!(p, q, "scalar arithmetic across distinct prime fields");
                Scalar::Residue { value: (a + b) % p, p: *p }
            }
            _ => panic!("scalar arithmetic across distinct fields"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, p }, Scalar::Residue { value: b, p: q }) => {
                assert_eq!(p, q, "scalar arithmetic across distinct prime fields");
                let prod = (*a as u128 * *b as u128) % (*p as u128);
                Scalar::Residue { value: prod as u64, p: *p }
            }
            _ => panic!("scalar arithmetic across distinct fields"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, p } => Scalar::Residue {
                value: if *value == 0 { 0 } else { p - value },
                p: *p,
            },
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => {
                assert!(!a.is_zero(), "inverse of zero");
                Scalar::Rational(a.recip())
            }
            Scalar::Residue { value, p } => {
                assert!(*value != 0, "inverse of zero");
                Scalar::Residue { value: mod_inverse(*value, *p), p: *p }
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv())
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Canonical string form; `parse` of this string round-trips exactly.
    pub fn to_canonical_string(&self) -> String {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue { value, .. } => value.to_string(),
        }
    }

}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // extended Euclid on (a, p), p prime
    let (mut r0, mut r1) = (a as i128, p as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    assert_eq!(r0, 1, "not invertible mod p");
    s0.rem_euclid(p as i128) as u64
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_canonical_form() {
        let q = FieldSpec::Rationals;
        assert_eq!(q.parse("6/4").unwrap().to_canonical_string(), "3/2");
        assert_eq!(q.parse("-6/-4").unwrap().to_canonical_string(), "3/2");
        assert_eq!(q.parse("3/-2").unwrap().to_canonical_string(), "-3/2");
        assert_eq!(q.parse("0/7").unwrap(), q.zero());
        assert_eq!(q.parse("5").unwrap().to_canonical_string(), "5");
    }

    #[test]
    fn residue_arithmetic() {
        let f7 = FieldSpec::prime(7).unwrap();
        let a = f7.from_i64(5);
        let b = f7.from_i64(4);
        assert_eq!(a.mul(&b), f7.from_i64(6));
        assert_eq!(a.add(&b), f7.from_i64(2));
        assert_eq!(a.inv().mul(&a), f7.one());
        assert_eq!(f7.from_i64(-1), f7.from_i64(6));
        assert_eq!(f7.from_i64(2).pow(3), f7.one());
    }

    #[test]
    fn parse_print_roundtrip() {
        let q = FieldSpec::Rationals;
        for s in ["0", "1", "-1", "3/2", "-17/5", "123456789123456789"] {
            let v = q.parse(s).unwrap();
            assert_eq!(v.to_canonical_string(), s);
            assert_eq!(q.parse(&v.to_canonical_string()).unwrap(), v);
        }
        let f5 = FieldSpec::prime(5).unwrap();
        for s in ["0", "1", "4"] {
            let v = f5.parse(s).unwrap();
            assert_eq!(v.to_canonical_string(), s);
        }
    }

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(7) && is_prime(97));
        assert!(!is_prime(1) && !is_prime(9) && !is_prime(91));
        assert!(FieldSpec::prime(6).is_err());
    }
}
