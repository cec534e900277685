//! Exact rational helpers shared by every module.
//!
//! Values print as bare integers when the denominator is one and as `p/q`
//! otherwise. The same strings are used in matrix files and in JSON.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Canonical text form: reduced, bare integer when possible.
pub fn format(v: &Rational) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Parses an optionally signed integer or `p/q` with `q > 0`.
pub fn parse(tok: &str) -> Result<Rational, String> {
    let parse_int = |s: &str| -> Result<BigInt, String> {
        let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("not an integer: {s:?}"));
        }
        s.parse::<BigInt>().map_err(|e| e.to_string())
    };
    match tok.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(tok)?)),
        Some((p, q)) => {
            if q.starts_with(['+', '-']) {
                return Err(format!("denominator must be an unsigned integer: {tok:?}"));
            }
            let p = parse_int(p)?;
            let q = parse_int(q)?;
            if !q.is_positive() {
                return Err(format!("denominator must be positive: {tok:?}"));
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Least common multiple of the denominators of `vals` (one for an empty slice).
pub fn common_denominator<'a>(vals: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    vals.into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Serde adapter writing rationals as their canonical strings.
pub mod serde_str {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Same as [`serde_str`] for vectors.
pub mod serde_vec {
    use super::Rational;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&super::format(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| super::parse(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Same as [`serde_str`] for optional vectors.
pub mod serde_opt_vec {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref()
            .map(|xs| xs.iter().map(super::format).collect::<Vec<_>>())
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Rational>>, D::Error> {
        let v = Option::<Vec<String>>::deserialize(d)?;
        v.map(|xs| {
            xs.iter()
                .map(|s| super::parse(s).map_err(serde::de::Error::custom))
                .collect()
        })
        .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_is_canonical() {
        assert_eq!(format(&frac(6, 4)), "3/2");
        assert_eq!(format(&frac(-6, 3)), "-2");
        assert_eq!(format(&frac(3, -4)), "-3/4");
        assert_eq!(format(&zero()), "0");
    }

    #[test]
    fn parse_accepts_signed_and_fractions() {
        assert_eq!(parse("-7").unwrap(), int(-7));
        assert_eq!(parse("+7").unwrap(), int(7));
        assert_eq!(parse("4/6").unwrap(), frac(2, 3));
        assert_eq!(parse("-4/6").unwrap(), frac(-2, 3));
    }

    #[test]
    fn parse_rejects_bad_tokens() {
        for bad in ["", "1.5", "1/0", "1/-2", "a", "1/", "/2", "--1", "1/+2"] {
            assert!(parse(bad).is_err(), "{bad:?} should be rejected");
        }
    }

    #[test]
    fn common_denominator_is_lcm() {
        let v = [frac(1, 4), frac(1, 6), int(3)];
        assert_eq!(common_denominator(&v), BigInt::from(12));
    }
}
