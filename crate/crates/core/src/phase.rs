//! Exact spider and gate phases, stored as rational multiples of π.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// A phase `(num / den) · π`, always reduced and normalized into `[0, 2)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Phase {
    num: i64,
    den: i64,
}

impl Phase {
    /// Builds `num/den · π`. Panics if `den` is zero.
    pub fn new(num: i64, den: i64) -> Phase {
        assert!(den != 0, "phase denominator must be nonzero");
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = num.gcd(&den);
        num /= g;
        den /= g;
        // reduce mod 2: num in [0, 2·den)
        num = num.rem_euclid(2 * den);
        Phase { num, den }
    }

    pub const fn zero() -> Phase {
        Phase { num: 0, den: 1 }
    }

    pub const fn pi() -> Phase {
        Phase { num: 1, den: 1 }
    }

    /// `k · π/4`.
    pub fn quarters(k: i64) -> Phase {
        Phase::new(k, 4)
    }

    pub fn numer(self) -> i64 {
        self.num
    }

    pub fn denom(self) -> i64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// 0 or π.
    pub fn is_pauli(self) -> bool {
        self.den == 1
    }

    /// A multiple of π/2.
    pub fn is_clifford(self) -> bool {
        self.den <= 2
    }

    /// ±π/2.
    pub fn is_proper_clifford(self) -> bool {
        self.den == 2
    }

    /// An odd multiple of π/4: the phase of a T-type gate.
    pub fn is_t_like(self) -> bool {
        self.den == 4
    }

    /// The phase as a count of π/4 steps in `0..8`, if it is a multiple of π/4.
    pub fn as_quarters(self) -> Option<u8> {
        if 4 % self.den == 0 {
            Some((self.num * (4 / self.den)) as u8)
        } else {
            None
        }
    }

    pub fn to_radians(self) -> f64 {
        std::f64::consts::PI * self.num as f64 / self.den as f64
    }
}

impl From<i64> for Phase {
    fn from(n: i64) -> Phase {
        Phase::new(n, 1)
    }
}

impl From<(i64, i64)> for Phase {
    fn from((n, d): (i64, i64)) -> Phase {
        Phase::new(n, d)
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        let l = self.den.lcm(&rhs.den);
        Phase::new(self.num * (l / self.den) + rhs.num * (l / rhs.den), l)
    }
}

impl AddAssign for Phase {
    fn add_assign(&mut self, rhs: Phase) {
        *self = *self + rhs;
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase::new(-self.num, self.den)
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, rhs: Phase) -> Phase {
        self + (-rhs)
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.num, self.den) {
            (0, _) => write!(f, "0"),
            (1, 1) => write!(f, "π"),
            (1, d) => write!(f, "π/{}", d),
            (n, 1) => write!(f, "{}π", n),
            (n, d) => write!(f, "{}π/{}", n, d),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_into_half_open_range() {
        assert_eq!(Phase::new(-1, 4), Phase::new(7, 4));
        assert_eq!(Phase::new(9, 4), Phase::new(1, 4));
        assert_eq!(Phase::new(4, 2), Phase::zero());
        assert_eq!(Phase::new(2, -4), Phase::new(3, 2));
        let p = Phase::new(6, 8);
        assert_eq!((p.numer(), p.denom()), (3, 4));
    }

    #[test]
    fn classification() {
        assert!(Phase::pi().is_pauli());
        assert!(Phase::new(1, 2).is_proper_clifford());
        assert!(Phase::new(3, 4).is_t_like());
        assert!(!Phase::new(1, 8).is_clifford());
        assert_eq!(Phase::new(1, 8).as_quarters(), None);
        assert_eq!(Phase::new(3, 2).as_quarters(), Some(6));
        assert_eq!(Phase::pi().as_quarters(), Some(4));
    }

    #[test]
    fn arithmetic() {
        assert_eq!(Phase::new(1, 4) + Phase::new(1, 4), Phase::new(1, 2));
        assert_eq!(Phase::new(1, 4) - Phase::new(1, 2), Phase::new(7, 4));
        assert_eq!(-Phase::new(1, 3), Phase::new(5, 3));
        assert_eq!(Phase::new(3, 2) + Phase::new(1, 2), Phase::zero());
    }

    #[test]
    fn display() {
        assert_eq!(Phase::new(1, 4).to_string(), "π/4");
        assert_eq!(Phase::new(7, 4).to_string(), "7π/4");
        assert_eq!(Phase::pi().to_string(), "π");
        assert_eq!(Phase::zero().to_string(), "0");
    }
}
