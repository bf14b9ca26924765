//! Exact field elements: arbitrary-precision rationals and small prime fields.
//!
//! Every value in the library is either a `BigRational` (always stored in
//! lowest terms with positive denominator, which `num-rational` guarantees)
//! or a residue modulo a small prime. There is no floating point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// The field a value, matrix, or space lives over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    /// F_p for a small prime p.
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if p < 2 || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a small prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::zero()),
            Field::Prime(p) => Scalar::Mod { value: 0, p: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::one()),
            Field::Prime(p) => Scalar::Mod { value: 1 % p, p: *p },
        }
    }

    /// Embeds a signed integer into the field.
    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => {
                let r = n.rem_euclid(*p as i64) as u64;
                Scalar::Mod { value: r, p: *p }
            }
        }
    }

    /// Parses the wire form: "-3/7" over the rationals, "2" for a residue.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let bad = || Error::Parse(format!("invalid scalar {s:?}"));
        match self {
            Field::Rationals => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (s, "1"),
                };
                let n: BigInt = num.trim().parse().map_err(|_| bad())?;
                let d: BigInt = den.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Scalar::Rat(BigRational::new(n, d)))
            }
            Field::Prime(_) => {
                let n: i64 = s.trim().parse().map_err(|_| bad())?;
                Ok(self.from_i64(n))
            }
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn fp_inv(value: u64, p: u64) -> u64 {
    // extended Euclid on (value, p); value must be nonzero mod p
    assert!(value % p != 0, "division by zero in F_{p}");
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, (value % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1);
    t.rem_euclid(p as i128) as u64
}

/// An exact scalar in one of the supported fields.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { value: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rationals,
            Scalar::Mod { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(x) => x.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rat(x) => {
                assert!(!x.is_zero(), "division by zero");
                Scalar::Rat(x.recip())
            }
            Scalar::Mod { value, p } => Scalar::Mod { value: fp_inv(*value, *p), p: *p },
        }
    }

    pub fn from_rational(r: BigRational) -> Scalar {
        Scalar::Rat(r)
    }

    /// The rational payload; panics on a prime-field value.
    pub fn as_rational(&self) -> &BigRational {
        match self {
            Scalar::Rat(x) => x,
            Scalar::Mod { .. } => panic!("expected a rational scalar"),
        }
    }

    /// Sign over the rationals: -1, 0, or 1.
    pub fn signum(&self) -> i32 {
        match self {
            Scalar::Rat(x) => {
                if x.is_zero() {
                    0
                } else if x.is_positive() {
                    1
                } else {
                    -1
                }
            }
            Scalar::Mod { .. } => panic!("sign is only defined over the rationals"),
        }
    }

    /// Exact square root if the value is a perfect square (rationals only).
    pub fn sqrt_exact(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(x) => {
                if x.is_negative() {
                    return None;
                }
                let n = x.numer().sqrt();
                let d = x.denom().sqrt();
                if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
                    Some(Scalar::Rat(BigRational::new(n, d)))
                } else {
                    None
                }
            }
            Scalar::Mod { .. } => None,
        }
    }

    /// Wire form: "p/q" in lowest terms (no "/1"), or the residue.
    pub fn encode(&self) -> String {
        match self {
            Scalar::Rat(x) => {
                if x.denom().is_one() {
                    x.numer().to_string()
                } else {
                    format!("{}/{}", x.numer(), x.denom())
                }
            }
            Scalar::Mod { value, .. } => value.to_string(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

fn check_same_prime(a: u64, b: u64) -> u64 {
    assert_eq!(a, b, "mixed prime fields F_{a} and F_{b}");
    a
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt, $fp:expr) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a $op b),
                    (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) => {
                        let p = check_same_prime(*p, *q);
                        let f: fn(u64, u64, u64) -> u64 = $fp;
                        Scalar::Mod { value: f(*a, *b, p), p }
                    }
                    _ => panic!("mixed-field scalar arithmetic"),
                }
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, +, |a, b, p| (a + b) % p);
scalar_binop!(Sub, sub, -, |a, b, p| (a + p - b % p) % p);
scalar_binop!(Mul, mul, *, |a, b, p| a.checked_mul(b).expect("prime too large") % p);

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv()
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(x) => Scalar::Rat(-x),
            Scalar::Mod { value, p } => Scalar::Mod { value: (p - value % p) % p, p: *p },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_wire_form_is_lowest_terms() {
        let f = Field::Rationals;
        let x = f.parse("4/6").unwrap();
        assert_eq!(x.encode(), "2/3");
        let y = f.parse("-8/2").unwrap();
        assert_eq!(y.encode(), "-4");
        let z = f.parse("3/-7").unwrap();
        assert_eq!(z.encode(), "-3/7");
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(3).unwrap();
        let two = f.from_i64(2);
        assert_eq!(&two * &two, f.one());
        assert_eq!(two.inv(), f.from_i64(2));
        assert_eq!(f.from_i64(-1), f.from_i64(2));
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(Field::prime(4).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(7).is_ok());
    }

    #[test]
    fn exact_square_roots() {
        let f = Field::Rationals;
        assert_eq!(f.parse("9/4").unwrap().sqrt_exact(), Some(f.parse("3/2").unwrap()));
        assert_eq!(f.parse("2").unwrap().sqrt_exact(), None);
        assert_eq!(f.parse("-1").unwrap().sqrt_exact(), None);
    }
}
