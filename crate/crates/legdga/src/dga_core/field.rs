//! Runtime-selected exact coefficient fields: GF(2), GF(p) for small primes,
//! and the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Field {
    F2,
    Fp(u64),
    Rational,
}

/// An exact field element; the interpretation (modulus or rational) is fixed
/// by the ambient [`Field`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Scalar {
    Mod(u64),
    Rat(BigRational),
}

impl Field {
    pub fn parse(s: &str) -> Result<Field> {
        match s {
            "f2" => Ok(Field::F2),
            "q" => Ok(Field::Rational),
            _ => {
                let p: u64 = s
                    .strip_prefix("fp:")
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::Schema(format!("unknown field {s:?}")))?;
                if p < 2 || p > (1 << 31) || !is_prime(p) {
                    return Err(Error::Schema(format!("{p} is not a small prime")));
                }
                Ok(Field::Fp(p))
            }
        }
    }

    pub fn tag(&self) -> String {
        match self {
            Field::F2 => "f2".into(),
            Field::Fp(p) => format!("fp:{p}"),
            Field::Rational => "q".into(),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::F2 => 2,
            Field::Fp(p) => *p,
            Field::Rational => 0,
        }
    }

    fn modulus(&self) -> Option<u64> {
        match self {
            Field::F2 => Some(2),
            Field::Fp(p) => Some(*p),
            Field::Rational => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_int(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        match self.modulus() {
            Some(p) => Scalar::Mod((n.rem_euclid(p as i64)) as u64),
            None => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
        }
    }

    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        match self.modulus() {
            Some(p) => {
                let n: i64 = s
                    .parse()
                    .map_err(|_| Error::Schema(format!("bad field element {s:?}")))?;
                Ok(Scalar::Mod(n.rem_euclid(p as i64) as u64))
            }
            None => {
                let r: BigRational = s
                    .parse()
                    .map_err(|_| Error::Schema(format!("bad rational {s:?}")))?;
                Ok(Scalar::Rat(r))
            }
        }
    }

    pub fn render_scalar(&self, s: &Scalar) -> String {
        match s {
            Scalar::Mod(n) => n.to_string(),
            Scalar::Rat(r) => r.to_string(),
        }
    }

    pub fn is_zero(&self, s: &Scalar) -> bool {
        match s {
            Scalar::Mod(n) => *n == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self.modulus(), a, b) {
            (Some(p), Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod((x + y) % p),
            (None, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => panic!("field/scalar mismatch"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self.modulus(), a) {
            (Some(p), Scalar::Mod(x)) => Scalar::Mod((p - x % p) % p),
            (None, Scalar::Rat(x)) => Scalar::Rat(-x),
            _ => panic!("field/scalar mismatch"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self.modulus(), a, b) {
            (Some(p), Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod(x * y % p),
            (None, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => panic!("field/scalar mismatch"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(Error::Internal("inverse of zero".into()));
        }
        match (self.modulus(), a) {
            (Some(p), Scalar::Mod(x)) => {
                let e = Integer::extended_gcd(&BigInt::from(*x), &BigInt::from(p));
                let inv = e.x.mod_floor(&BigInt::from(p));
                Ok(Scalar::Mod(inv.to_u64().unwrap()))
            }
            (None, Scalar::Rat(x)) => Ok(Scalar::Rat(x.recip())),
            _ => panic!("field/scalar mismatch"),
        }
    }

    /// All nonzero elements (finite fields only).
    pub fn units(&self) -> Result<Vec<Scalar>> {
        match self.modulus() {
            Some(p) => Ok((1..p).map(Scalar::Mod).collect()),
            None => Err(Error::Unsupported(
                "unit enumeration requires a finite field".into(),
            )),
        }
    }

    /// An integer in canonical position representing the scalar (used for
    /// deterministic rendering of small values).
    pub fn is_one(&self, s: &Scalar) -> bool {
        match s {
            Scalar::Mod(n) => *n == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    pub fn is_minus_one(&self, s: &Scalar) -> bool {
        *s == self.from_int(-1)
    }

    pub fn pow(&self, a: &Scalar, e: i64) -> Result<Scalar> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        let mut acc = self.one();
        for _ in 0..e.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        Ok(acc)
    }

    /// True for rationals that are negative (used only for display niceties).
    pub fn is_negative(&self, s: &Scalar) -> bool {
        match s {
            Scalar::Mod(_) => false,
            Scalar::Rat(r) => r.is_negative(),
        }
    }
}

fn is_prime(n: u64) -> bool {
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf5_arithmetic() {
        let f = Field::parse("fp:5").unwrap();
        let three = f.from_int(3);
        let four = f.from_int(-1);
        assert_eq!(f.mul(&three, &four), f.from_int(2));
        assert_eq!(f.mul(&f.inv(&three).unwrap(), &three), f.one());
        assert_eq!(f.units().unwrap().len(), 4);
    }

    #[test]
    fn rationals() {
        let f = Field::Rational;
        let half = f.parse_scalar("1/2").unwrap();
        assert_eq!(f.add(&half, &half), f.one());
        assert!(Field::parse("fp:6").is_err());
    }
}
