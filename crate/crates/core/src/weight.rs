use std::fmt;
use std::ops::{Add, Index, Neg, Sub};
use std::str::FromStr;

use crate::error::Error;

/// An integral weight in fundamental-weight coordinates: `coords[i]` is the
/// coefficient of the i-th fundamental weight, so it is also the pairing with
/// the i-th simple coroot.
///
/// Ordering is lexicographic in the coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// The weight with every coordinate equal to one.
    pub fn rho(rank: usize) -> Self {
        Weight(vec![1; rank])
    }

    /// The i-th fundamental weight.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut coords = vec![0; rank];
        coords[i] = 1;
        Weight(coords)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, factor: i64) -> Weight {
        Weight(self.0.iter().map(|c| c * factor).collect())
    }

    /// `self + factor * other`
    pub fn add_scaled(&self, factor: i64, other: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), other.rank());
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + factor * b).collect())
    }
}

impl Index<usize> for Weight {
    type Output = i64;

    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &Weight {
    type Output = Weight;

    fn add(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;

    fn sub(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;

    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|c| -c).collect())
    }
}

impl Add for Weight {
    type Output = Weight;

    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl Sub for Weight {
    type Output = Weight;

    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl Neg for Weight {
    type Output = Weight;

    fn neg(self) -> Weight {
        -&self
    }
}

impl From<Vec<i64>> for Weight {
    fn from(coords: Vec<i64>) -> Self {
        Weight(coords)
    }
}

/// Comma-separated coordinates, e.g. `1,0`.
impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let err = || Error::Parse { what: "weight", input: s.to_string() };
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(err());
        }
        trimmed
            .split(',')
            .map(|part| part.trim().parse::<i64>().map_err(|_| err()))
            .collect::<Result<Vec<_>, _>>()
            .map(Weight)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let w: Weight = "1, -2,0".parse().unwrap();
        assert_eq!(w.coords(), &[1, -2, 0]);
        assert_eq!(w.to_string(), "1,-2,0");
        assert!("".parse::<Weight>().is_err());
        assert!("1,,2".parse::<Weight>().is_err());
        assert!("a".parse::<Weight>().is_err());
    }

    #[test]
    fn dominance() {
        assert!(Weight::zero(3).is_dominant());
        assert!(Weight::zero(3).is_zero());
        assert!(!Weight::new(vec![1, -1]).is_dominant());
        assert_eq!(Weight::rho(2).add_scaled(-2, &Weight::fundamental(2, 1)), Weight::new(vec![1, -1]));
    }
}
