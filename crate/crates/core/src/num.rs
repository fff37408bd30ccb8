//! Exact rational scalars.
//!
//! Every scalar in this crate is an arbitrary-precision rational kept in
//! lowest terms with a positive denominator. No floating point anywhere.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Exact rational number. Wraps `BigRational`, which guarantees the
/// lowest-terms/positive-denominator invariants on every operation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `p/q` with `q != 0`; stored reduced with positive denominator.
    pub fn new(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_big(p: BigInt, q: BigInt) -> Self {
        assert!(!q.is_zero(), "zero denominator");
        Rational(BigRational::new(p, q))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rational(self.0.recip())
    }

    /// Sign as -1, 0, 1.
    pub fn signum(&self) -> i32 {
        if self.0.is_zero() {
            0
        } else if self.0.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Parse "p/q", an integer literal, or a terminating decimal ("1.25").
    /// All three convert exactly.
    pub fn parse(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p = BigInt::from_str(p.trim())
                .map_err(|_| Error::BadRational(s.to_string()))?;
            let q = BigInt::from_str(q.trim())
                .map_err(|_| Error::BadRational(s.to_string()))?;
            if q.is_zero() {
                return Err(Error::BadRational(s.to_string()));
            }
            return Ok(Rational(BigRational::new(p, q)));
        }
        if let Some((int, frac)) = s.split_once('.') {
            let neg = int.trim_start().starts_with('-');
            let int_part = BigInt::from_str(int.trim())
                .map_err(|_| Error::BadRational(s.to_string()))?;
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::BadRational(s.to_string()));
            }
            let frac_part = BigInt::from_str(frac)
                .map_err(|_| Error::BadRational(s.to_string()))?;
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            let mut num = int_part * &scale;
            if neg {
                num -= frac_part;
            } else {
                num += frac_part;
            }
            return Ok(Rational(BigRational::new(num, scale)));
        }
        let p = BigInt::from_str(s).map_err(|_| Error::BadRational(s.to_string()))?;
        Ok(Rational(BigRational::from_integer(p)))
    }

    /// Canonical string form "p/q" (integers rendered "p/1").
    pub fn canonical_string(&self) -> String {
        format!("{}/{}", self.0.numer(), self.0.denom())
    }

    /// Decimal approximation truncated to at most `sig` significant digits.
    /// Lossy; used only for plot export.
    pub fn to_f64_lossy(&self) -> f64 {
        let p = self.0.numer();
        let q = self.0.denom();
        // Scale through a large power of ten to preserve precision for
        // the desk-scale magnitudes we care about.
        let scale = BigInt::from(10u64).pow(18);
        let scaled = p * &scale / q;
        let s = scaled.to_string();
        let v: f64 = s.parse().unwrap_or(0.0);
        v / 1e18
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Rational {
    fn sub_assign(&mut self, rhs: Rational) {
        self.0 -= rhs.0;
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.canonical_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(deserializer)?;
        match v {
            serde_json::Value::String(s) => {
                Rational::parse(&s).map_err(|e| D::Error::custom(e.to_string()))
            }
            serde_json::Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(Rational::from_int(i))
                } else if let Some(u) = n.as_u64() {
                    Ok(Rational(BigRational::from_integer(BigInt::from(u))))
                } else {
                    Err(D::Error::custom(
                        "non-integer JSON numbers are lossy; write rationals as \"p/q\" strings",
                    ))
                }
            }
            other => Err(D::Error::custom(format!(
                "expected rational literal, got {other}"
            ))),
        }
    }
}
