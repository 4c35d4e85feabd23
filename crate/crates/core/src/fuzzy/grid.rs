use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A membership degree `num/den` in `[0, 1]`, compared exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GridValue {
    num: u32,
    den: u32,
}

impl GridValue {
    pub fn new(num: u32, den: u32) -> Result<Self> {
        if den == 0 {
            return Err(Error::Input("grid denominator must be positive".into()));
        }
        if num > den {
            return Err(Error::Input(format!("{num}/{den} exceeds 1")));
        }
        Ok(GridValue { num, den })
    }

    pub(crate) fn raw(num: u32, den: u32) -> Self {
        debug_assert!(den > 0 && num <= den);
        GridValue { num, den }
    }

    pub fn zero(den: u32) -> Self {
        GridValue::raw(0, den)
    }

    pub fn one(den: u32) -> Self {
        GridValue::raw(den, den)
    }

    pub fn num(self) -> u32 {
        self.num
    }

    pub fn den(self) -> u32 {
        self.den
    }

    /// Re-expresses the value over `den`, if it lies on that grid.
    pub fn on_grid(self, den: u32) -> Option<GridValue> {
        let scaled = self.num as u64 * den as u64;
        scaled.is_multiple_of(self.den as u64).then(|| GridValue::raw((scaled / self.den as u64) as u32, den))
    }

    /// Parses `p/q`, an integer or a decimal such as `0.45`, and places the
    /// value on the grid `den`. Fails when the reduced denominator does not
    /// divide `den`.
    pub fn parse(text: &str, den: u32) -> Result<Self> {
        let text = text.trim();
        let bad = || Error::Input(format!("invalid membership value {text:?}"));
        let digits = |s: &str| -> Result<u64> {
            if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            s.parse().map_err(|_| bad())
        };
        let (p, q) = match (text.split_once('/'), text.split_once('.')) {
            (Some((p, q)), None) => (digits(p.trim())?, digits(q.trim())?),
            (None, Some((int, frac))) if frac.len() <= 9 => {
                let q = 10u64.pow(frac.len() as u32);
                (digits(int)? * q + if frac.is_empty() { 0 } else { digits(frac)? }, q)
            }
            (None, None) => (digits(text)?, 1),
            _ => return Err(bad()),
        };
        if q == 0 || p > q || q > u32::MAX as u64 {
            return Err(Error::Input(format!("membership value {text:?} is not in [0, 1]")));
        }
        let (p, q) = (p as u32, q as u32);
        let g = gcd(p, q);
        let (p, q) = (p / g, q / g);
        if !den.is_multiple_of(q) {
            return Err(Error::Input(format!(
                "{text:?} does not lie on the grid with denominator {den}"
            )));
        }
        GridValue::new(p * (den / q), den)
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialOrd for GridValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GridValue {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u64 * other.den as u64)
            .cmp(&(other.num as u64 * self.den as u64))
            .then(self.den.cmp(&other.den))
    }
}

impl fmt::Display for GridValue {
    /// Reduced fraction, e.g. `4/5`, with `0` and `1` written as integers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = gcd(self.num, self.den);
        match self.den / g {
            1 => write!(f, "{}", self.num / g),
            q => write!(f, "{}/{q}", self.num / g),
        }
    }
}

pub(crate) fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}
