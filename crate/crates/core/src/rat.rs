//! Exact rationals and the small combinatorial helpers used everywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}

/// Parses `7`, `-3/4` or a terminating decimal such as `0.25`.
pub fn parse(s: &str) -> Result<Rat> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| Error::Parse(s.into()))?;
        let q: BigInt = q.trim().parse().map_err(|_| Error::Parse(s.into()))?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s}")));
        }
        return Ok(Rat::new(p, q));
    }
    if let Some((w, d)) = t.split_once('.') {
        let neg = w.starts_with('-');
        let digits = format!("{}{}", w.trim_start_matches(['-', '+']), d);
        let n: BigInt = digits.parse().map_err(|_| Error::Parse(s.into()))?;
        let den = num_traits::pow(BigInt::from(10), d.len());
        let r = Rat::new(n, den);
        return Ok(if neg { -r } else { r });
    }
    let n: BigInt = t.parse().map_err(|_| Error::Parse(s.into()))?;
    Ok(Rat::from_integer(n))
}

/// Canonical text form: `p` or `p/q`.
pub fn fmt(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn fmt_vec(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(fmt).collect();
    format!("({})", parts.join(","))
}

/// Returns the value as an `i64` when it is an integer that fits.
pub fn to_i64(r: &Rat) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

pub fn is_nonneg_int(r: &Rat) -> bool {
    r.is_integer() && !r.is_negative()
}

pub fn binom(n: u64, k: u64) -> Rat {
    if k > n {
        return zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rat::from_integer(acc)
}

/// C(ν+k−1, k) = ν(ν+1)⋯(ν+k−1)/k! for rational ν.
pub fn rising_binom(nu: &Rat, k: u64) -> Rat {
    let mut acc = one();
    for i in 0..k {
        acc = acc * (nu + int(i as i64)) / int(i as i64 + 1);
    }
    acc
}

pub fn factorial(n: u64) -> Rat {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    Rat::from_integer(acc)
}

/// Serde adapters that write rationals as canonical strings.
pub mod serde_rat {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

pub mod serde_rat_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<String> = v.iter().map(fmt).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rat>, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        strs.iter()
            .map(|s| parse(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

pub mod serde_rat_mat {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &[Vec<Rat>], s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(fmt).collect()).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Vec<Rat>>, D::Error> {
        let strs = Vec::<Vec<String>>::deserialize(d)?;
        strs.iter()
            .map(|row| {
                row.iter()
                    .map(|s| parse(s).map_err(serde::de::Error::custom))
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse("3/6").unwrap(), frac(1, 2));
        assert_eq!(parse("-0.25").unwrap(), frac(-1, 4));
        assert_eq!(parse(" 7 ").unwrap(), int(7));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(5, 2), int(10));
        assert_eq!(binom(2, 5), int(0));
        // C(n+k-1,k) at integer n agrees with the ordinary binomial
        assert_eq!(rising_binom(&int(3), 2), binom(4, 2));
        assert_eq!(rising_binom(&int(-2), 3), int(0));
        assert_eq!(rising_binom(&frac(1, 2), 2), frac(3, 8));
    }
}
