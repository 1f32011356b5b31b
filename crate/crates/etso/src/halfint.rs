//! Half-integer quantum numbers stored as twice their value.
//!
//! Interfaces never use floating-point quantum numbers: a half-integer is
//! written `p/2` in lowest terms (`3/2`, `-1/2`) and integral values plainly
//! (`2`, `0`).

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use crate::{Error, Result};

/// A half-integer `v` represented by `2v`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct HalfInt(i32);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);
    pub const ONE: HalfInt = HalfInt(2);

    /// Builds from twice the value, so `new(3)` is `3/2`.
    pub const fn new(twice: i32) -> Self {
        HalfInt(twice)
    }

    pub const fn from_int(v: i32) -> Self {
        HalfInt(2 * v)
    }

    pub const fn twice(self) -> i32 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn as_integer(self) -> Option<i32> {
        if self.is_integer() {
            Some(self.0 / 2)
        } else {
            None
        }
    }

    pub fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    pub fn is_negative(self) -> bool {
        self.0 < 0
    }

    pub fn to_f64(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    /// True when `self - other` is an integer, i.e. both live on the same
    /// (integer or half-odd) ladder.
    pub fn same_parity(self, other: HalfInt) -> bool {
        (self.0 - other.0) % 2 == 0
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num: i32 = num
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad half-integer `{s}`")))?;
            let den: i32 = den
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad half-integer `{s}`")))?;
            match den {
                2 => Ok(HalfInt(num)),
                1 => Ok(HalfInt::from_int(num)),
                _ => Err(Error::Parse(format!(
                    "half-integer denominator must be 1 or 2, got `{s}`"
                ))),
            }
        } else {
            let v: i32 = s
                .parse()
                .map_err(|_| Error::Parse(format!("bad half-integer `{s}`")))?;
            Ok(HalfInt::from_int(v))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_roundtrip() {
        for twice in -9..=9 {
            let h = HalfInt::new(twice);
            let s = h.to_string();
            let back: HalfInt = s.parse().unwrap();
            assert_eq!(h, back, "{s}");
        }
        assert_eq!(HalfInt::new(3).to_string(), "3/2");
        assert_eq!(HalfInt::new(-1).to_string(), "-1/2");
        assert_eq!(HalfInt::from_int(2).to_string(), "2");
    }

    #[test]
    fn parse_forms() {
        assert_eq!("3/2".parse::<HalfInt>().unwrap(), HalfInt::new(3));
        assert_eq!("-5/2".parse::<HalfInt>().unwrap(), HalfInt::new(-5));
        assert_eq!("4/2".parse::<HalfInt>().unwrap(), HalfInt::from_int(2));
        assert_eq!("0".parse::<HalfInt>().unwrap(), HalfInt::ZERO);
        assert!("1/3".parse::<HalfInt>().is_err());
        assert!("x".parse::<HalfInt>().is_err());
    }
}
