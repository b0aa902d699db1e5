use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exact multiple of 1/4, stored as the number of quarters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuarterWeight(i64);

impl QuarterWeight {
    pub const ZERO: QuarterWeight = QuarterWeight(0);

    pub const fn from_quarters(q: i64) -> Self {
        QuarterWeight(q)
    }

    pub const fn from_halves(h: i64) -> Self {
        QuarterWeight(2 * h)
    }

    pub const fn from_int(x: i64) -> Self {
        QuarterWeight(4 * x)
    }

    pub const fn quarters(self) -> i64 {
        self.0
    }

    /// Compares `self / a` with `other / b` for positive `a`, `b`.
    pub fn ratio_cmp(self, a: usize, other: QuarterWeight, b: usize) -> std::cmp::Ordering {
        (self.0 as i128 * b as i128).cmp(&(other.0 as i128 * a as i128))
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for QuarterWeight {
    /// Reduced fraction: `15`, `33/2`, `61/4`, `-5/4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = gcd(self.0, 4).max(1);
        let (num, den) = (self.0 / g, 4 / g);
        if den == 1 {
            write!(f, "{num}")
        } else {
            write!(f, "{num}/{den}")
        }
    }
}

impl FromStr for QuarterWeight {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("not a quarter-unit weight: {s:?}");
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (
                a.trim().parse::<i64>().map_err(|_| bad())?,
                b.trim().parse::<i64>().map_err(|_| bad())?,
            ),
            None => (s.trim().parse::<i64>().map_err(|_| bad())?, 1),
        };
        if den <= 0 || 4 % den != 0 {
            return Err(bad());
        }
        Ok(QuarterWeight(num * (4 / den)))
    }
}

impl Serialize for QuarterWeight {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QuarterWeight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Add for QuarterWeight {
    type Output = QuarterWeight;
    fn add(self, o: QuarterWeight) -> QuarterWeight {
        QuarterWeight(self.0 + o.0)
    }
}

impl Sub for QuarterWeight {
    type Output = QuarterWeight;
    fn sub(self, o: QuarterWeight) -> QuarterWeight {
        QuarterWeight(self.0 - o.0)
    }
}

impl Neg for QuarterWeight {
    type Output = QuarterWeight;
    fn neg(self) -> QuarterWeight {
        QuarterWeight(-self.0)
    }
}

impl AddAssign for QuarterWeight {
    fn add_assign(&mut self, o: QuarterWeight) {
        self.0 += o.0;
    }
}

impl Sum for QuarterWeight {
    fn sum<I: Iterator<Item = QuarterWeight>>(iter: I) -> QuarterWeight {
        QuarterWeight(iter.map(|q| q.0).sum())
    }
}
