//! Exact approximation parameter.
//!
//! `ε` is kept as a reduced fraction so that the `(1+ε)` acceptance test
//! `d ≤ dist + ⌈ε·dist⌉` never depends on floating-point rounding.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Eps(Ratio<u64>);

impl Eps {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num == 0 {
            return Err(Error::InvalidParam(format!("eps must be positive, got {num}/{den}")));
        }
        Ok(Eps(Ratio::new(num, den)))
    }

    /// Parse a decimal literal such as `0.25` or a fraction such as `1/4`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidParam(format!("cannot parse eps from {s:?}"));
        if let Some((a, b)) = s.split_once('/') {
            let num = a.trim().parse::<u64>().map_err(|_| bad())?;
            let den = b.trim().parse::<u64>().map_err(|_| bad())?;
            return Eps::new(num, den);
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if frac.len() > 18 || int.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let frac_val: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let den = 10u64.pow(frac.len() as u32);
        let num = int
            .checked_mul(den)
            .and_then(|x| x.checked_add(frac_val))
            .ok_or_else(bad)?;
        Eps::new(num, den)
    }

    /// Round-trips through the shortest decimal representation, so `0.1` maps to `1/10`.
    pub fn from_f64(x: f64) -> Result<Self> {
        if !(x.is_finite() && x > 0.0) {
            return Err(Error::InvalidParam(format!("eps must be positive and finite, got {x}")));
        }
        Eps::parse(&format!("{x}"))
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }

    pub fn ratio(&self) -> Ratio<u128> {
        Ratio::new(self.numer() as u128, self.denom() as u128)
    }

    pub fn as_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn is_below_one(&self) -> bool {
        self.numer() < self.denom()
    }

    /// `⌈ε·d⌉`, exact.
    pub fn slack(&self, d: u64) -> u64 {
        let num = self.numer() as u128 * d as u128;
        let den = self.denom() as u128;
        num.div_ceil(den).min(u64::MAX as u128) as u64
    }

    /// `d + ⌈ε·d⌉`, saturating.
    pub fn allowance(&self, d: u64) -> u64 {
        d.saturating_add(self.slack(d))
    }

    /// `d + ⌊ε·d⌋`: the largest integer within `(1 + ε)·d`.
    pub fn strict_allowance(&self, d: u64) -> u64 {
        let extra = (self.numer() as u128 * d as u128 / self.denom() as u128).min(u64::MAX as u128) as u64;
        d.saturating_add(extra)
    }

    /// `ε·q` for a rational `q`.
    pub fn scale(&self, q: Ratio<u64>) -> Result<Self> {
        let r = self.0 * q;
        if r.is_zero() {
            return Err(Error::InvalidParam("scaled eps is zero".into()));
        }
        Ok(Eps(r))
    }
}

impl fmt::Display for Eps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Denominators that divide a power of ten print as exact decimals.
        let (num, den) = (self.numer(), self.denom());
        let mut d = den;
        let (mut twos, mut fives) = (0u32, 0u32);
        while d % 2 == 0 {
            d /= 2;
            twos += 1;
        }
        while d % 5 == 0 {
            d /= 5;
            fives += 1;
        }
        if d == 1 {
            let digits = twos.max(fives);
            let scale = 10u128.pow(digits);
            let scaled = num as u128 * (scale / den as u128);
            let int = scaled / scale;
            let frac = scaled % scale;
            if digits == 0 {
                write!(f, "{int}")
            } else {
                write!(f, "{int}.{frac:0width$}", width = digits as usize)
            }
        } else {
            write!(f, "{num}/{den}")
        }
    }
}

impl FromStr for Eps {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Eps::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_exactly() {
        let e = Eps::parse("0.1").unwrap();
        assert_eq!((e.numer(), e.denom()), (1, 10));
        assert_eq!(Eps::from_f64(0.25).unwrap(), Eps::new(1, 4).unwrap());
        assert_eq!(Eps::parse("1/3").unwrap().to_string(), "1/3");
        assert_eq!(Eps::parse("0.50").unwrap().to_string(), "0.5");
        assert!(Eps::parse("0").is_err());
        assert!(Eps::parse("abc").is_err());
    }

    #[test]
    fn slack_is_exact_where_floats_are_not() {
        let e = Eps::parse("0.1").unwrap();
        // 0.1 * 30 in f64 is 3.0000000000000004, whose ceiling would be 4.
        assert_eq!(e.slack(30), 3);
        assert_eq!(e.slack(31), 4);
        assert_eq!(e.allowance(0), 0);
        assert_eq!(e.allowance(10), 11);
    }
}
