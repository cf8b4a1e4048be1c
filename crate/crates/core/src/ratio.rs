use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Exact non-negative rational, used for approximation parameters so that
/// certified bounds like `(1-eps)·w·h ≤ h'` can be checked in integer
/// arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ratio {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::parse("ratio with zero denominator"));
        }
        let g = gcd(num, den);
        Ok(Ratio {
            num: num / g,
            den: den / g,
        })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// True iff the value lies strictly between 0 and 1.
    pub fn is_proper_fraction(&self) -> bool {
        self.num > 0 && self.num < self.den
    }

    /// Validates the value as an approximation parameter in (0, 1).
    pub fn require_proper(&self) -> Result<()> {
        if self.is_proper_fraction() {
            Ok(())
        } else {
            Err(Error::EpsilonRange(self.to_string()))
        }
    }

    /// `self < a/b`, exactly.
    pub fn lt_fraction(&self, a: u64, b: u64) -> bool {
        (self.num as u128) * (b as u128) < (a as u128) * (self.den as u128)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Ratio {
    type Err = Error;

    /// Accepts `a/b` or a plain decimal like `0.25` (converted exactly).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((a, b)) = s.split_once('/') {
            let num: u64 = a
                .trim()
                .parse()
                .map_err(|_| Error::parse(format!("bad ratio {s:?}")))?;
            let den: u64 = b
                .trim()
                .parse()
                .map_err(|_| Error::parse(format!("bad ratio {s:?}")))?;
            return Ratio::new(num, den);
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.len() > 18 || frac.chars().any(|c| !c.is_ascii_digit()) {
                return Err(Error::parse(format!("bad ratio {s:?}")));
            }
            let int: u64 = if int.is_empty() {
                0
            } else {
                int.parse()
                    .map_err(|_| Error::parse(format!("bad ratio {s:?}")))?
            };
            let den = 10u64.pow(frac.len() as u32);
            let frac: u64 = if frac.is_empty() {
                0
            } else {
                frac.parse()
                    .map_err(|_| Error::parse(format!("bad ratio {s:?}")))?
            };
            return Ratio::new(int.saturating_mul(den).saturating_add(frac), den);
        }
        let num: u64 = s
            .parse()
            .map_err(|_| Error::parse(format!("bad ratio {s:?}")))?;
        Ratio::new(num, 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!("1/4".parse::<Ratio>().unwrap(), Ratio::new(1, 4).unwrap());
        assert_eq!("0.25".parse::<Ratio>().unwrap(), Ratio::new(1, 4).unwrap());
        assert_eq!("0.5".parse::<Ratio>().unwrap(), Ratio::new(1, 2).unwrap());
        assert_eq!("2".parse::<Ratio>().unwrap(), Ratio::new(2, 1).unwrap());
        assert!("x".parse::<Ratio>().is_err());
        assert!("1/0".parse::<Ratio>().is_err());
    }

    #[test]
    fn proper_fraction_checks() {
        assert!(Ratio::new(1, 2).unwrap().is_proper_fraction());
        assert!(!Ratio::new(0, 2).unwrap().is_proper_fraction());
        assert!(!Ratio::new(2, 2).unwrap().is_proper_fraction());
        assert!(Ratio::new(1, 8).unwrap().lt_fraction(1, 4));
        assert!(!Ratio::new(1, 4).unwrap().lt_fraction(1, 4));
    }
}
