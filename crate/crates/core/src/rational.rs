//! Exact rational quantities: the edge price and extended (possibly infinite) costs.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Dist;

/// Exact rational number used for every cost, price and bound.
pub type Rational = Ratio<i128>;

/// Build a rational from integer numerator and denominator.
pub fn ratio(num: i128, den: i128) -> Rational {
    Rational::new(num, den)
}

pub fn int(v: i128) -> Rational {
    Rational::from_integer(v)
}

/// `p/q` form, or just `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal rendering with `digits` fractional digits (truncated toward zero).
pub fn to_decimal(r: &Rational, digits: u32) -> String {
    let neg = r.is_negative();
    let a = r.abs();
    let scale = 10i128.pow(digits);
    let scaled = a.numer() * scale / a.denom();
    let whole = scaled / scale;
    let frac = scaled % scale;
    let sign = if neg && scaled != 0 { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac:0width$}", width = digits as usize)
    }
}

pub(crate) fn serialize_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

pub(crate) fn serialize_opt_rational<S: Serializer>(
    r: &Option<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&format_rational(r)),
        None => s.serialize_none(),
    }
}

/// Parse `p/q`, an integer, or a decimal string such as `3.25` exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::InvalidAlpha(text.to_string());
    if t.is_empty() {
        return Err(bad());
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let value = if let Some((p, q)) = body.split_once('/') {
        let p: i128 = parse_digits(p).ok_or_else(bad)?;
        let q: i128 = parse_digits(q).ok_or_else(bad)?;
        if q == 0 {
            return Err(bad());
        }
        Rational::new(p, q)
    } else if let Some((whole, frac)) = body.split_once('.') {
        if whole.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        let w = if whole.is_empty() { 0 } else { parse_digits(whole).ok_or_else(bad)? };
        let f = if frac.is_empty() { 0 } else { parse_digits(frac).ok_or_else(bad)? };
        if frac.len() > 30 {
            return Err(bad());
        }
        let scale = 10i128.pow(frac.len() as u32);
        Rational::new(w * scale + f, scale)
    } else {
        Rational::from_integer(parse_digits(body).ok_or_else(bad)?)
    };
    Ok(if neg { -value } else { value })
}

fn parse_digits(s: &str) -> Option<i128> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// The edge price: an exact nonnegative rational kept in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Alpha(Rational);

impl Alpha {
    pub fn new(num: i128, den: i128) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidAlpha(format!("{num}/{den}")));
        }
        Self::from_rational(Rational::new(num, den))
    }

    pub fn integer(v: i128) -> Result<Self> {
        Self::new(v, 1)
    }

    pub fn from_rational(r: Rational) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::InvalidAlpha(format_rational(&r)));
        }
        Ok(Alpha(r))
    }

    pub fn value(&self) -> Rational {
        self.0
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    /// Creation cost of buying `edges` edges.
    pub fn times(&self, edges: usize) -> Rational {
        self.0 * Rational::from_integer(edges as i128)
    }
}

impl FromStr for Alpha {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Alpha::from_rational(parse_rational(s)?)
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

impl Serialize for Alpha {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

/// A cost that is either an exact rational or infinite (disconnected network).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cost {
    Finite(Rational),
    Infinite,
}

impl Cost {
    pub fn zero() -> Self {
        Cost::Finite(Rational::zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Cost::Infinite)
    }

    pub fn finite(&self) -> Option<Rational> {
        match self {
            Cost::Finite(r) => Some(*r),
            Cost::Infinite => None,
        }
    }

    /// `self - other`, defined when `self` is finite or both are infinite-free.
    /// Returns `None` when either side is infinite.
    pub fn checked_sub(&self, other: &Cost) -> Option<Rational> {
        Some(self.finite()? - other.finite()?)
    }

    pub fn from_dist(d: Dist) -> Self {
        match d {
            Dist::Finite(v) => Cost::Finite(Rational::from_integer(v as i128)),
            Dist::Infinite => Cost::Infinite,
        }
    }
}

impl From<Rational> for Cost {
    fn from(r: Rational) -> Self {
        Cost::Finite(r)
    }
}

impl Add for Cost {
    type Output = Cost;
    fn add(self, rhs: Cost) -> Cost {
        match (self, rhs) {
            (Cost::Finite(a), Cost::Finite(b)) => Cost::Finite(a + b),
            _ => Cost::Infinite,
        }
    }
}

impl std::iter::Sum for Cost {
    fn sum<I: Iterator<Item = Cost>>(iter: I) -> Cost {
        iter.fold(Cost::zero(), |a, b| a + b)
    }
}

impl PartialOrd for Cost {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cost {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Cost::Finite(a), Cost::Finite(b)) => a.cmp(b),
            (Cost::Finite(_), Cost::Infinite) => Ordering::Less,
            (Cost::Infinite, Cost::Finite(_)) => Ordering::Greater,
            (Cost::Infinite, Cost::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cost::Finite(r) => f.write_str(&format_rational(r)),
            Cost::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Cost {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_and_decimal_forms() {
        assert_eq!(parse_rational("13/4").unwrap(), ratio(13, 4));
        assert_eq!(parse_rational("3.25").unwrap(), ratio(13, 4));
        assert_eq!(parse_rational("0.5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("10").unwrap(), int(10));
        assert_eq!(parse_rational("4/8").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("0.1").unwrap(), ratio(1, 10));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "1/0", "a", "1e3", "1.2.3", "/", ".", "1/-2", "0x10"] {
            assert!(parse_rational(s).is_err(), "{s}");
        }
        assert!("-1".parse::<Alpha>().is_err());
    }

    #[test]
    fn alpha_is_lowest_terms() {
        let a = Alpha::new(6, 4).unwrap();
        assert_eq!((a.numer(), a.denom()), (3, 2));
        assert_eq!(a.to_string(), "3/2");
        assert_eq!(a.times(4), int(6));
    }

    #[test]
    fn infinite_absorbs_and_dominates() {
        let a = Cost::Finite(int(5));
        assert_eq!(a + Cost::Infinite, Cost::Infinite);
        assert!(a < Cost::Infinite);
        assert_eq!(Cost::Infinite.cmp(&Cost::Infinite), Ordering::Equal);
        assert_eq!(vec![a, a].into_iter().sum::<Cost>(), Cost::Finite(int(10)));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&ratio(8, 3), 4), "2.6666");
        assert_eq!(to_decimal(&ratio(-1, 2), 2), "-0.50");
        assert_eq!(to_decimal(&int(7), 0), "7");
    }
}
