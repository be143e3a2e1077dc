//! Exact coefficient fields: prime fields `F_p` and the rationals.
//!
//! Scalars are kept in canonical form (residues in `[0, p)`, reduced
//! fractions with positive denominator), so equality of representations
//! is equality of field elements. Floating point is never used.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} outside supported range [2, 2^31)")]
    ModulusRange(u64),
    #[error("unknown field `{0}` (expected Q or F<p>)")]
    UnknownField(String),
    #[error("invalid scalar `{text}` for field {field}: {reason}")]
    BadScalar {
        text: String,
        field: String,
        reason: String,
    },
}

/// The coefficient field of a computation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FieldSpec {
    /// Prime field `F_p`.
    Prime(u64),
    /// The field of rational numbers with arbitrary precision integers.
    Rationals,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// Prime field constructor; primality is checked by trial division.
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if !(2..1u64 << 31).contains(&p) {
            return Err(FieldError::ModulusRange(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn rationals() -> Self {
        FieldSpec::Rationals
    }

    /// Parse a field token: `Q` or `F<p>`.
    pub fn parse_token(s: &str) -> Result<Self, FieldError> {
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(digits) = s.strip_prefix('F') {
            if !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit()) {
                let p: u64 = digits
                    .parse()
                    .map_err(|_| FieldError::UnknownField(s.to_string()))?;
                return FieldSpec::prime(p);
            }
        }
        Err(FieldError::UnknownField(s.to_string()))
    }

    /// The token used in file formats: `Q` or `F<p>`.
    pub fn token(&self) -> String {
        match self {
            FieldSpec::Prime(p) => format!("F{p}"),
            FieldSpec::Rationals => "Q".to_string(),
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Prime(_) => Scalar::Fp(0),
            FieldSpec::Rationals => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Prime(_) => Scalar::Fp(1),
            FieldSpec::Rationals => Scalar::Rat(BigRational::one()),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Prime(p) => {
                let r = v.rem_euclid(*p as i64);
                Scalar::Fp(r as u64)
            }
            FieldSpec::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u128 + *y as u128) % *p as u128) as u64)
            }
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => panic!("scalar does not belong to field {}", self.token()),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => panic!("scalar does not belong to field {}", self.token()),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Prime(p), Scalar::Fp(x)) => Scalar::Fp(if *x == 0 { 0 } else { p - x }),
            (FieldSpec::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            _ => panic!("scalar does not belong to field {}", self.token()),
        }
    }

    /// Multiplicative inverse. Panics on zero; pivots are nonzero by
    /// construction in the elimination routines.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Prime(p), Scalar::Fp(x)) => {
                assert!(*x != 0, "inverse of zero in F_{p}");
                // extended Euclid on (x, p)
                let (mut r0, mut r1) = (*x as i128, *p as i128);
                let (mut s0, mut s1) = (1i128, 0i128);
                while r1 != 0 {
                    let q = r0 / r1;
                    (r0, r1) = (r1, r0 - q * r1);
                    (s0, s1) = (s1, s0 - q * s1);
                }
                debug_assert_eq!(r0, 1);
                Scalar::Fp(s0.rem_euclid(*p as i128) as u64)
            }
            (FieldSpec::Rationals, Scalar::Rat(x)) => {
                assert!(!x.is_zero(), "inverse of zero rational");
                Scalar::Rat(x.recip())
            }
            _ => panic!("scalar does not belong to field {}", self.token()),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.mul(a, &self.inv(b))
    }

    /// Parse a scalar in the file syntax: decimal residue in `[0, p)` for
    /// `F_p`; `a` or `a/b` with `b > 0` and `gcd(|a|, b) = 1` for `Q`.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar, FieldError> {
        let bad = |reason: &str| FieldError::BadScalar {
            text: s.to_string(),
            field: self.token(),
            reason: reason.to_string(),
        };
        match self {
            FieldSpec::Prime(p) => {
                if s.is_empty() || !s.chars().all(|c| c.is_ascii_digit()) {
                    return Err(bad("expected a decimal residue"));
                }
                let v: u64 = s.parse().map_err(|_| bad("residue out of range"))?;
                if v >= *p {
                    return Err(bad(&format!("residue must lie in [0, {p})")));
                }
                Ok(Scalar::Fp(v))
            }
            FieldSpec::Rationals => {
                let (num_s, den_s) = match s.split_once('/') {
                    Some((a, b)) => (a, b),
                    None => (s, "1"),
                };
                let num = BigInt::from_str(num_s).map_err(|_| bad("bad numerator"))?;
                let den = BigInt::from_str(den_s).map_err(|_| bad("bad denominator"))?;
                if den <= BigInt::zero() {
                    return Err(bad("denominator must be positive"));
                }
                let r = BigRational::new(num.clone(), den.clone());
                if *r.numer() != num || *r.denom() != den {
                    return Err(bad("fraction is not in lowest terms"));
                }
                Ok(Scalar::Rat(r))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.token())
    }
}

/// A canonical element of a [`FieldSpec`]. Representations are unique, so
/// derived equality is field-element equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp(u64),
    Rat(BigRational),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp(v) => *v == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp(v) => *v == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp(v) => write!(f, "{v}"),
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
