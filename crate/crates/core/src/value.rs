//! Exact rationals extended with a single positive infinity.

use std::fmt;
use std::iter::Sum;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// A finite exact rational or `+∞`.
///
/// Finite values are always kept in lowest terms with a positive denominator
/// (guaranteed by [`BigRational`]). Every finite value compares below
/// `Infinite`, and `Infinite` absorbs addition.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtValue {
    Finite(BigRational),
    Infinite,
}

impl ExtValue {
    pub fn zero() -> Self {
        ExtValue::Finite(BigRational::zero())
    }

    pub fn int(v: i64) -> Self {
        ExtValue::Finite(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(numer: i64, denom: i64) -> Self {
        ExtValue::Finite(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtValue::Infinite)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtValue::Finite(r) if r.is_zero())
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, ExtValue::Finite(r) if r.is_negative())
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            ExtValue::Finite(r) => Some(r),
            ExtValue::Infinite => None,
        }
    }
}

impl Default for ExtValue {
    fn default() -> Self {
        ExtValue::zero()
    }
}

impl From<BigRational> for ExtValue {
    fn from(r: BigRational) -> Self {
        ExtValue::Finite(r)
    }
}

impl From<i64> for ExtValue {
    fn from(v: i64) -> Self {
        ExtValue::int(v)
    }
}

impl Add<&ExtValue> for &ExtValue {
    type Output = ExtValue;

    fn add(self, rhs: &ExtValue) -> ExtValue {
        match (self, rhs) {
            (ExtValue::Finite(a), ExtValue::Finite(b)) => ExtValue::Finite(a + b),
            _ => ExtValue::Infinite,
        }
    }
}

impl Add for ExtValue {
    type Output = ExtValue;

    fn add(self, rhs: ExtValue) -> ExtValue {
        match (self, rhs) {
            (ExtValue::Finite(a), ExtValue::Finite(b)) => ExtValue::Finite(a + b),
            _ => ExtValue::Infinite,
        }
    }
}

impl Add<&BigRational> for &ExtValue {
    type Output = ExtValue;

    fn add(self, rhs: &BigRational) -> ExtValue {
        match self {
            ExtValue::Finite(a) => ExtValue::Finite(a + rhs),
            ExtValue::Infinite => ExtValue::Infinite,
        }
    }
}

impl Sum for ExtValue {
    fn sum<I: Iterator<Item = ExtValue>>(iter: I) -> Self {
        iter.fold(ExtValue::zero(), |acc, v| acc + v)
    }
}

impl<'a> Sum<&'a ExtValue> for ExtValue {
    fn sum<I: Iterator<Item = &'a ExtValue>>(iter: I) -> Self {
        iter.fold(ExtValue::zero(), |acc, v| &acc + v)
    }
}

/// Formats a rational as `n` for integers and `p/q` otherwise.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `n`, `p/q` (any sign on `p`, `q != 0`) into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Malformed(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Malformed(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(p))
        }
    }
}

impl fmt::Display for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtValue::Finite(r) => f.write_str(&format_rational(r)),
            ExtValue::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" {
            Ok(ExtValue::Infinite)
        } else {
            parse_rational(t).map(ExtValue::Finite)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(
            "11/10".parse::<ExtValue>().unwrap(),
            ExtValue::ratio(11, 10)
        );
        assert_eq!("4/2".parse::<ExtValue>().unwrap().to_string(), "2");
        assert_eq!("-3/-6".parse::<ExtValue>().unwrap().to_string(), "1/2");
        assert_eq!("inf".parse::<ExtValue>().unwrap(), ExtValue::Infinite);
        assert!("1/0".parse::<ExtValue>().is_err());
        assert!("x".parse::<ExtValue>().is_err());
        assert_eq!(ExtValue::ratio(6, -4).to_string(), "-3/2");
    }

    #[test]
    fn infinity_absorbs_and_dominates() {
        let inf = ExtValue::Infinite;
        assert_eq!(&ExtValue::int(5) + &inf, ExtValue::Infinite);
        assert_eq!(&inf + &inf, ExtValue::Infinite);
        assert!(ExtValue::int(i64::MAX) < inf);
        assert_eq!(inf, ExtValue::Infinite);
    }

    fn rat() -> impl Strategy<Value = ExtValue> {
        (-1000i64..1000, 1i64..50).prop_map(|(p, q)| ExtValue::ratio(p, q))
    }

    proptest! {
        #[test]
        fn addition_is_exact_assoc_comm(a in rat(), b in rat(), c in rat()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &b, &b + &a);
        }

        #[test]
        fn display_parse_round_trip(a in rat()) {
            prop_assert_eq!(a.to_string().parse::<ExtValue>().unwrap(), a);
        }
    }
}
