//! Exact rational slack parameter.
//!
//! Peeling thresholds of the form `deg <= 2(1+eps) * |E|/|S|` are decided by
//! cross-multiplication, so `eps` is kept as a reduced fraction `num/den`.

use std::fmt;
use std::str::FromStr;

use num_integer::gcd;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Epsilon {
    num: u64,
    den: u64,
}

impl Epsilon {
    pub const ZERO: Epsilon = Epsilon { num: 0, den: 1 };

    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidParameter("eps denominator is zero".into()));
        }
        let g = gcd(num, den).max(1);
        Ok(Epsilon {
            num: num / g,
            den: den / g,
        })
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Epsilon {
    type Err = Error;

    /// Accepts `p/q` or a plain decimal such as `0.001`; a decimal is read as
    /// the exact base-10 fraction it spells.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidParameter(format!("cannot parse eps from {s:?}"));
        if s.starts_with('-') {
            return Err(Error::InvalidParameter(format!("eps must be >= 0, got {s}")));
        }
        if let Some((p, q)) = s.split_once('/') {
            let p: u64 = p.trim().parse().map_err(|_| bad())?;
            let q: u64 = q.trim().parse().map_err(|_| bad())?;
            return Epsilon::new(p, q);
        }
        let (int, frac) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        if int.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let frac = frac.trim_end_matches('0');
        if frac.len() > 18 {
            return Err(bad());
        }
        let den = 10u64.pow(frac.len() as u32);
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let frac_val: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let num = int
            .checked_mul(den)
            .and_then(|x| x.checked_add(frac_val))
            .ok_or_else(bad)?;
        Epsilon::new(num, den)
    }
}

impl TryFrom<String> for Epsilon {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Epsilon> for String {
    fn from(e: Epsilon) -> String {
        e.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!("1/2".parse::<Epsilon>().unwrap(), Epsilon::new(1, 2).unwrap());
        assert_eq!("2/4".parse::<Epsilon>().unwrap(), Epsilon::new(1, 2).unwrap());
        assert_eq!("0.001".parse::<Epsilon>().unwrap(), Epsilon::new(1, 1000).unwrap());
        assert_eq!("0.10".parse::<Epsilon>().unwrap(), Epsilon::new(1, 10).unwrap());
        assert_eq!("1".parse::<Epsilon>().unwrap(), Epsilon::new(1, 1).unwrap());
        assert_eq!("2.5".parse::<Epsilon>().unwrap(), Epsilon::new(5, 2).unwrap());
        assert_eq!(".5".parse::<Epsilon>().unwrap(), Epsilon::new(1, 2).unwrap());
        assert!("0".parse::<Epsilon>().unwrap().is_zero());
    }

    #[test]
    fn rejects_garbage() {
        assert!("-0.1".parse::<Epsilon>().is_err());
        assert!("1/0".parse::<Epsilon>().is_err());
        assert!("abc".parse::<Epsilon>().is_err());
        assert!(".".parse::<Epsilon>().is_err());
        assert!("1e-3".parse::<Epsilon>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["1/2", "0.001", "3", "7/3"] {
            let e: Epsilon = s.parse().unwrap();
            assert_eq!(e.to_string().parse::<Epsilon>().unwrap(), e);
        }
    }
}
