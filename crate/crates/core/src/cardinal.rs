use std::fmt;
use std::ops::Mul;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Size of a Reidemeister set: a finite count or `Infinite`.
///
/// Ordering puts every finite value below `Infinite`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cardinal {
    Finite(BigUint),
    Infinite,
}

impl Cardinal {
    pub fn one() -> Self {
        Cardinal::Finite(BigUint::one())
    }

    /// `|value|` as a finite cardinal.
    pub fn from_abs(value: &BigInt) -> Self {
        Cardinal::Finite(
            value
                .abs()
                .to_biguint()
                .expect("absolute value is non-negative"),
        )
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Cardinal::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&BigUint> {
        match self {
            Cardinal::Finite(v) => Some(v),
            Cardinal::Infinite => None,
        }
    }

    /// Whether `self` divides `other`. Only defined for two finite values.
    pub fn divides(&self, other: &Cardinal) -> Option<bool> {
        match (self, other) {
            (Cardinal::Finite(a), Cardinal::Finite(b)) => {
                if a.is_zero() {
                    Some(b.is_zero())
                } else {
                    Some(b.is_multiple_of(a))
                }
            }
            _ => None,
        }
    }
}

impl From<u64> for Cardinal {
    fn from(v: u64) -> Self {
        Cardinal::Finite(BigUint::from(v))
    }
}

impl From<BigUint> for Cardinal {
    fn from(v: BigUint) -> Self {
        Cardinal::Finite(v)
    }
}

impl Mul for &Cardinal {
    type Output = Cardinal;

    fn mul(self, rhs: &Cardinal) -> Cardinal {
        match (self, rhs) {
            (Cardinal::Finite(a), Cardinal::Finite(b)) => Cardinal::Finite(a * b),
            (Cardinal::Finite(a), Cardinal::Infinite)
            | (Cardinal::Infinite, Cardinal::Finite(a))
                if a.is_zero() =>
            {
                Cardinal::Finite(BigUint::zero())
            }
            _ => Cardinal::Infinite,
        }
    }
}

impl Mul for Cardinal {
    type Output = Cardinal;

    fn mul(self, rhs: Cardinal) -> Cardinal {
        &self * &rhs
    }
}

impl std::iter::Product for Cardinal {
    fn product<I: Iterator<Item = Cardinal>>(iter: I) -> Self {
        iter.fold(Cardinal::one(), |acc, c| acc * c)
    }
}

impl fmt::Display for Cardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinal::Finite(v) => write!(f, "{v}"),
            Cardinal::Infinite => f.write_str("infinite"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinite_absorbs_nonzero() {
        assert_eq!(Cardinal::from(3) * Cardinal::Infinite, Cardinal::Infinite);
        assert_eq!(Cardinal::Infinite * Cardinal::Infinite, Cardinal::Infinite);
        assert_eq!(Cardinal::from(0) * Cardinal::Infinite, Cardinal::from(0));
        assert_eq!(Cardinal::from(4) * Cardinal::from(5), Cardinal::from(20));
    }

    #[test]
    fn ordering_and_display() {
        assert!(Cardinal::from(1_000_000) < Cardinal::Infinite);
        assert!(Cardinal::from(2) < Cardinal::from(10));
        assert_eq!(Cardinal::Infinite.to_string(), "infinite");
        assert_eq!(Cardinal::from(10).to_string(), "10");
    }

    #[test]
    fn divisibility() {
        assert_eq!(Cardinal::from(4).divides(&Cardinal::from(10)), Some(false));
        assert_eq!(Cardinal::from(2).divides(&Cardinal::from(10)), Some(true));
        assert_eq!(Cardinal::from(2).divides(&Cardinal::Infinite), None);
    }
}
