//! Exact rational arithmetic on `i128`.
//!
//! All invariant computations in this crate stay in `Rat` so that equality
//! comparisons against closed-form values are exact.  The numerators and
//! denominators that occur for graphs in the supported size range are tiny,
//! so `i128` leaves an enormous safety margin; every operation nevertheless
//! uses checked arithmetic and panics loudly on overflow instead of wrapping.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exact rational number.  Always normalized: `den > 0` and
/// `gcd(num.abs(), den) == 1`, with zero represented as `0/1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rat {
    num: i128,
    den: i128,
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.abs()
}

impl Rat {
    pub const ZERO: Rat = Rat { num: 0, den: 1 };
    pub const ONE: Rat = Rat { num: 1, den: 1 };

    /// Builds `num/den`, normalizing sign and common factors.
    ///
    /// Panics if `den == 0`.
    pub fn new(num: i128, den: i128) -> Rat {
        assert!(den != 0, "rational with zero denominator");
        let g = gcd(num, den);
        let sign = if den < 0 { -1 } else { 1 };
        Rat {
            num: sign * (num / g),
            den: sign * (den / g),
        }
    }

    pub fn from_int(n: i128) -> Rat {
        Rat { num: n, den: 1 }
    }

    pub fn numer(self) -> i128 {
        self.num
    }

    pub fn denom(self) -> i128 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    pub fn is_integer(self) -> bool {
        self.den == 1
    }

    pub fn abs(self) -> Rat {
        Rat {
            num: self.num.abs(),
            den: self.den,
        }
    }

    /// Exact reciprocal; panics on zero.
    pub fn recip(self) -> Rat {
        assert!(self.num != 0, "reciprocal of zero");
        Rat::new(self.den, self.num)
    }

    /// Rounds towards negative infinity to an integer.
    pub fn floor(self) -> i128 {
        self.num.div_euclid(self.den)
    }

    /// Rounds towards positive infinity to an integer.
    pub fn ceil(self) -> i128 {
        -(-self.num).div_euclid(self.den)
    }

    /// Approximate value, for display-adjacent uses only (never comparisons).
    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    fn checked(num: Option<i128>, den: Option<i128>) -> Rat {
        match (num, den) {
            (Some(n), Some(d)) => Rat::new(n, d),
            _ => panic!("rational arithmetic overflowed i128"),
        }
    }
}

impl From<i128> for Rat {
    fn from(n: i128) -> Rat {
        Rat::from_int(n)
    }
}

impl From<usize> for Rat {
    fn from(n: usize) -> Rat {
        Rat::from_int(n as i128)
    }
}

impl Add for Rat {
    type Output = Rat;
    fn add(self, rhs: Rat) -> Rat {
        // a/b + c/d = (ad + cb) / bd, reduced by `new`.
        let ad = self.num.checked_mul(rhs.den);
        let cb = rhs.num.checked_mul(self.den);
        let num = match (ad, cb) {
            (Some(x), Some(y)) => x.checked_add(y),
            _ => None,
        };
        Rat::checked(num, self.den.checked_mul(rhs.den))
    }
}

impl Sub for Rat {
    type Output = Rat;
    fn sub(self, rhs: Rat) -> Rat {
        self + (-rhs)
    }
}

impl Mul for Rat {
    type Output = Rat;
    fn mul(self, rhs: Rat) -> Rat {
        // Cross-reduce first so intermediate products stay small.
        let g1 = gcd(self.num, rhs.den);
        let g2 = gcd(rhs.num, self.den);
        let (a, d) = (self.num / g1, rhs.den / g1);
        let (c, b) = (rhs.num / g2, self.den / g2);
        Rat::checked(a.checked_mul(c), b.checked_mul(d))
    }
}

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        self * rhs.recip()
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat {
            num: -self.num,
            den: self.den,
        }
    }
}

impl AddAssign for Rat {
    fn add_assign(&mut self, rhs: Rat) {
        *self = *self + rhs;
    }
}

impl SubAssign for Rat {
    fn sub_assign(&mut self, rhs: Rat) {
        *self = *self - rhs;
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Rat) -> Ordering {
        // Denominators are positive, so cross-multiplication preserves order.
        let lhs = self.num.checked_mul(other.den);
        let rhs = other.num.checked_mul(self.den);
        match (lhs, rhs) {
            (Some(a), Some(b)) => a.cmp(&b),
            _ => panic!("rational comparison overflowed i128"),
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Error produced when parsing a rational from text fails.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRatError(pub String);

impl FromStr for Rat {
    type Err = ParseRatError;

    /// Accepts `"p"` or `"p/q"` with optional leading minus on `p`.
    fn from_str(s: &str) -> Result<Rat, ParseRatError> {
        let bad = || ParseRatError(s.to_owned());
        match s.split_once('/') {
            None => s.parse::<i128>().map(Rat::from_int).map_err(|_| bad()),
            Some((p, q)) => {
                let num: i128 = p.parse().map_err(|_| bad())?;
                let den: i128 = q.parse().map_err(|_| bad())?;
                if den <= 0 {
                    return Err(bad());
                }
                Ok(Rat::new(num, den))
            }
        }
    }
}

// Reports serialize rationals as strings ("5/7", "3") so they stay exact and
// readable in JSON/CSV; round-tripping goes through `FromStr`.
impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// Convenience constructor used heavily in tests: `rat(5, 7)`.
pub fn rat(num: i128, den: i128) -> Rat {
    Rat::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        assert_eq!(Rat::new(2, 4), Rat::new(1, 2));
        assert_eq!(Rat::new(-2, -4), Rat::new(1, 2));
        assert_eq!(Rat::new(2, -4), Rat::new(-1, 2));
        assert_eq!(Rat::new(0, -7), Rat::ZERO);
        assert_eq!(Rat::new(0, 3).denom(), 1);
    }

    #[test]
    #[should_panic(expected = "zero denominator")]
    fn zero_denominator_panics() {
        let _ = Rat::new(1, 0);
    }

    #[test]
    fn arithmetic() {
        let a = rat(1, 6);
        let b = rat(1, 10);
        assert_eq!(a + b, rat(4, 15));
        assert_eq!(a - b, rat(1, 15));
        assert_eq!(a * b, rat(1, 60));
        assert_eq!(a / b, rat(5, 3));
        assert_eq!(-a, rat(-1, 6));
        assert_eq!(rat(7, 3).floor(), 2);
        assert_eq!(rat(7, 3).ceil(), 3);
        assert_eq!(rat(-7, 3).floor(), -3);
        assert_eq!(rat(-7, 3).ceil(), -2);
    }

    #[test]
    fn ordering_is_exact() {
        assert!(rat(1, 3) < rat(34, 100));
        assert!(rat(-1, 2) < Rat::ZERO);
        let mut v = vec![rat(3, 4), rat(2, 3), rat(5, 6)];
        v.sort();
        assert_eq!(v, vec![rat(2, 3), rat(3, 4), rat(5, 6)]);
    }

    #[test]
    fn display_and_parse_round_trip() {
        for r in [rat(5, 7), rat(-5, 7), Rat::ZERO, rat(4, 1), rat(-4, 1)] {
            let s = r.to_string();
            assert_eq!(s.parse::<Rat>().unwrap(), r);
        }
        assert_eq!("11/20".parse::<Rat>().unwrap(), rat(11, 20));
        assert_eq!("-3".parse::<Rat>().unwrap(), rat(-3, 1));
        assert!("1/0".parse::<Rat>().is_err());
        assert!("1/-2".parse::<Rat>().is_err());
        assert!("".parse::<Rat>().is_err());
        assert!("a/b".parse::<Rat>().is_err());
    }

    #[test]
    fn serde_as_string() {
        let r = rat(11, 20);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, "\"11/20\"");
        let back: Rat = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        let int: Rat = serde_json::from_str("\"6\"").unwrap();
        assert_eq!(int, rat(6, 1));
    }
}
