//! Extended rationals with inf-addition and scalar residuation.
//!
//! The carrier is the two-point extension of the rationals. Addition is
//! inf-addition: `+inf` absorbs everything (including `-inf`), and
//! `0 * (+-inf) = 0`. The residual `r -. s` is the least `t` with
//! `r <= s + t` under these rules.

use std::cmp::Ordering;
use std::fmt;

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::num::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ExtendedRational {
    NegInf,
    Finite(Rational),
    PosInf,
}

pub use ExtendedRational::{Finite, NegInf, PosInf};

impl ExtendedRational {
    pub fn zero() -> Self {
        Finite(Rational::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Finite(_))
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Finite(r) => Some(r),
            _ => None,
        }
    }

    /// Inf-addition: `+inf` absorbs, `-inf + r = -inf` for finite `r`.
    pub fn add_inf(&self, other: &ExtendedRational) -> ExtendedRational {
        match (self, other) {
            (PosInf, _) | (_, PosInf) => PosInf,
            (NegInf, _) | (_, NegInf) => NegInf,
            (Finite(a), Finite(b)) => Finite(a + b),
        }
    }

    /// Multiplication by a nonnegative rational with `0 * (+-inf) = 0`.
    pub fn scale(&self, t: &Rational) -> ExtendedRational {
        assert!(!t.is_negative(), "scale by negative");
        if t.is_zero() {
            return ExtendedRational::zero();
        }
        match self {
            NegInf => NegInf,
            PosInf => PosInf,
            Finite(r) => Finite(r * t),
        }
    }

    pub fn neg(&self) -> ExtendedRational {
        match self {
            NegInf => PosInf,
            PosInf => NegInf,
            Finite(r) => Finite(-r),
        }
    }

    /// Inf-residuation `r -. s = inf { t | r <= s + t }`.
    ///
    /// Case table: anything `-. (+inf) = -inf`; `r -. (-inf) = +inf` for
    /// `r > -inf` and `-inf` for `r = -inf`; in particular
    /// `(+inf) -. (-inf) = +inf`. Finite `s` acts like subtraction.
    pub fn residual(&self, s: &ExtendedRational) -> ExtendedRational {
        match (self, s) {
            (_, PosInf) => NegInf,
            (NegInf, _) => NegInf,
            (r, NegInf) => {
                debug_assert!(!matches!(r, NegInf));
                PosInf
            }
            (PosInf, Finite(_)) => PosInf,
            (Finite(r), Finite(sv)) => Finite(r - sv),
        }
    }

    pub fn min(self, other: ExtendedRational) -> ExtendedRational {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: ExtendedRational) -> ExtendedRational {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl PartialOrd for ExtendedRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (PosInf, _) | (_, NegInf) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NegInf => write!(f, "-inf"),
            PosInf => write!(f, "+inf"),
            Finite(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for ExtendedRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            NegInf => serializer.serialize_str("-inf"),
            PosInf => serializer.serialize_str("+inf"),
            Finite(r) => serializer.serialize_str(&r.canonical_string()),
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        match s.as_str() {
            "-inf" => Ok(NegInf),
            "+inf" | "inf" => Ok(PosInf),
            other => Rational::parse(other)
                .map(Finite)
                .map_err(|e| D::Error::custom(e.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(p: i64, q: i64) -> ExtendedRational {
        Finite(Rational::new(p, q))
    }

    #[test]
    fn inf_addition_rules() {
        assert_eq!(PosInf.add_inf(&NegInf), PosInf);
        assert_eq!(NegInf.add_inf(&fin(1, 1)), NegInf);
        assert_eq!(fin(1, 2).add_inf(&fin(1, 3)), fin(5, 6));
    }

    #[test]
    fn zero_scale() {
        assert_eq!(PosInf.scale(&Rational::zero()), ExtendedRational::zero());
        assert_eq!(NegInf.scale(&Rational::zero()), ExtendedRational::zero());
        assert_eq!(NegInf.scale(&Rational::one()), NegInf);
    }

    #[test]
    fn residuation_case_table() {
        // r -. s = inf { t | r <= s + t }
        assert_eq!(fin(3, 1).residual(&fin(1, 1)), fin(2, 1));
        assert_eq!(fin(1, 1).residual(&PosInf), NegInf);
        assert_eq!(PosInf.residual(&PosInf), NegInf);
        assert_eq!(PosInf.residual(&NegInf), PosInf);
        assert_eq!(NegInf.residual(&NegInf), NegInf);
        assert_eq!(fin(0, 1).residual(&NegInf), PosInf);
        assert_eq!(PosInf.residual(&fin(5, 1)), PosInf);
        assert_eq!(NegInf.residual(&fin(5, 1)), NegInf);
    }

    #[test]
    fn residuation_is_least_element() {
        // exhaustive check of the defining property on a small grid
        let vals = [
            NegInf,
            fin(-2, 1),
            fin(0, 1),
            fin(1, 2),
            fin(3, 1),
            PosInf,
        ];
        for r in &vals {
            for s in &vals {
                let d = r.residual(s);
                // r <= s + d
                assert!(
                    *r <= s.add_inf(&d),
                    "defining inequality fails: {r} -. {s} = {d}"
                );
                // least such: any strictly smaller finite t fails
                for t in &vals {
                    if t < &d {
                        assert!(
                            !(*r <= s.add_inf(t)),
                            "residual not least: {r} -. {s} = {d}, but {t} works"
                        );
                    }
                }
            }
        }
    }
}
