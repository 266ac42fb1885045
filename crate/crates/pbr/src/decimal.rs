//! Exact decimals with two fractional digits.
//!
//! Ratings, weights, and display values are all decimals with a resolution
//! of 0.01. They are stored as integer hundredths so that values like 0.49
//! and 3.75 survive parsing, arithmetic, and serialization without
//! binary-float drift. Metric arithmetic happens on [`num::BigRational`];
//! this type is the boundary representation.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::BigRational;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// A decimal number with exactly two fractional digits of resolution,
/// stored as integer hundredths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Decimal2(i64);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecimalParseError {
    #[error("empty decimal literal")]
    Empty,
    #[error("invalid decimal literal {0:?}")]
    Invalid(String),
    #[error("decimal literal {0:?} has more than two fractional digits")]
    TooPrecise(String),
    #[error("decimal literal {0:?} is out of range")]
    Overflow(String),
}

impl Decimal2 {
    pub const ZERO: Decimal2 = Decimal2(0);
    pub const ONE: Decimal2 = Decimal2(100);

    /// Builds a value from integer hundredths: `from_hundredths(349)` is 3.49.
    pub const fn from_hundredths(hundredths: i64) -> Self {
        Decimal2(hundredths)
    }

    /// Builds a whole-number value: `from_int(4)` is 4.00.
    pub const fn from_int(value: i64) -> Self {
        Decimal2(value * 100)
    }

    pub const fn hundredths(self) -> i64 {
        self.0
    }

    pub const fn is_negative(self) -> bool {
        self.0 < 0
    }

    /// The exact rational value.
    pub fn to_rational(self) -> BigRational {
        BigRational::new(BigInt::from(self.0), BigInt::from(100))
    }

    /// Truncates an exact rational toward zero at two decimals. This is the
    /// single display rule used for every derived metric: 3.4167 becomes
    /// 3.41 and 3.7083 becomes 3.70.
    pub fn truncate(value: &BigRational) -> Decimal2 {
        let scaled = value * BigRational::from_integer(BigInt::from(100));
        let cents = scaled.trunc().to_integer();
        // Metric values live in [1, 5]; anything near i64 range is a bug upstream.
        let cents = i64::try_from(cents).expect("truncated decimal exceeds i64 hundredths");
        Decimal2(cents)
    }

    /// Renders with exactly two fractional digits, e.g. `3.70`.
    pub fn fixed2(self) -> String {
        let sign = if self.0 < 0 { "-" } else { "" };
        let abs = self.0.unsigned_abs();
        format!("{sign}{}.{:02}", abs / 100, abs % 100)
    }
}

/// Canonical rendering: minimal digits, no trailing zeros. `450` hundredths
/// prints as `4.5`, `400` as `4`, `49` as `0.49`.
impl fmt::Display for Decimal2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "" };
        let abs = self.0.unsigned_abs();
        let (int, frac) = (abs / 100, abs % 100);
        if frac == 0 {
            write!(f, "{sign}{int}")
        } else if frac % 10 == 0 {
            write!(f, "{sign}{int}.{}", frac / 10)
        } else {
            write!(f, "{sign}{int}.{frac:02}")
        }
    }
}

impl FromStr for Decimal2 {
    type Err = DecimalParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(DecimalParseError::Empty);
        }
        let (sign, rest) = match s.strip_prefix('-') {
            Some(rest) => (-1i64, rest),
            None => (1i64, s),
        };
        let (int_part, frac_part) = match rest.split_once('.') {
            Some((i, f)) => (i, f),
            None => (rest, ""),
        };
        if int_part.is_empty() || !int_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(DecimalParseError::Invalid(s.to_string()));
        }
        if frac_part.is_empty() && rest.contains('.') {
            return Err(DecimalParseError::Invalid(s.to_string()));
        }
        if !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(DecimalParseError::Invalid(s.to_string()));
        }
        if frac_part.len() > 2 {
            return Err(DecimalParseError::TooPrecise(s.to_string()));
        }
        let int: i64 = int_part
            .parse()
            .map_err(|_| DecimalParseError::Overflow(s.to_string()))?;
        let frac: i64 = match frac_part.len() {
            0 => 0,
            1 => frac_part.parse::<i64>().unwrap() * 10,
            _ => frac_part.parse::<i64>().unwrap(),
        };
        int.checked_mul(100)
            .and_then(|c| c.checked_add(frac))
            .and_then(|c| c.checked_mul(sign))
            .map(Decimal2)
            .ok_or_else(|| DecimalParseError::Overflow(s.to_string()))
    }
}

// Stored as canonical strings so repository files stay platform-exact.
impl Serialize for Decimal2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Decimal2 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_renders_minimal_form() {
        for (input, hundredths, canonical) in [
            ("4", 400, "4"),
            ("4.5", 450, "4.5"),
            ("4.93", 493, "4.93"),
            ("0.49", 49, "0.49"),
            ("3.75", 375, "3.75"),
            ("0.4", 40, "0.4"),
            ("-0.25", -25, "-0.25"),
            ("4.50", 450, "4.5"),
            ("0", 0, "0"),
        ] {
            let d: Decimal2 = input.parse().unwrap();
            assert_eq!(d.hundredths(), hundredths, "value of {input}");
            assert_eq!(d.to_string(), canonical, "canonical form of {input}");
        }
    }

    #[test]
    fn rejects_bad_literals() {
        for bad in ["", ".", "4.", ".5", "4.505", "1e2", "4,5", "--4", "x", "4.5.1"] {
            assert!(bad.parse::<Decimal2>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn fixed2_always_two_digits() {
        assert_eq!(Decimal2::from_hundredths(370).fixed2(), "3.70");
        assert_eq!(Decimal2::from_int(5).fixed2(), "5.00");
        assert_eq!(Decimal2::from_hundredths(-50).fixed2(), "-0.50");
    }

    #[test]
    fn truncation_matches_known_values() {
        // 41/12 = 3.41666... -> 3.41; 89/24 = 3.70833... -> 3.70
        let r = BigRational::new(BigInt::from(41), BigInt::from(12));
        assert_eq!(Decimal2::truncate(&r).fixed2(), "3.41");
        let r = BigRational::new(BigInt::from(89), BigInt::from(24));
        assert_eq!(Decimal2::truncate(&r).fixed2(), "3.70");
        let r = BigRational::new(BigInt::from(17), BigInt::from(4));
        assert_eq!(Decimal2::truncate(&r).fixed2(), "4.25");
    }

    #[test]
    fn truncation_goes_toward_zero() {
        let r = BigRational::new(BigInt::from(-125), BigInt::from(1000)); // -0.125
        assert_eq!(Decimal2::truncate(&r).hundredths(), -12);
    }
}
