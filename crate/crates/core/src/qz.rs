//! Rationals modulo one, used for every torsion coordinate.
//!
//! A cyclic summand `Z/d` is the subgroup `(1/d)Z/Z`, and the torsion of
//! `C^×` is all of `Q/Z`, so one coordinate type covers both.

use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_integer::Integer;

/// `num/den` reduced, with `0 <= num < den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Qz {
    num: u64,
    den: u64,
}

impl Qz {
    pub const ZERO: Qz = Qz { num: 0, den: 1 };
    pub const HALF: Qz = Qz { num: 1, den: 2 };

    /// `num/den mod 1`. Panics on `den == 0`.
    pub fn new(num: i64, den: u64) -> Qz {
        assert!(den > 0, "zero denominator");
        let n = num.rem_euclid(den as i64) as u64;
        let g = n.gcd(&den);
        Qz { num: n / g, den: den / g }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Additive order in `Q/Z`.
    pub fn order(&self) -> u64 {
        self.den
    }

    pub fn mul_int(self, k: i64) -> Qz {
        let n = (self.num as i128 * k as i128).rem_euclid(self.den as i128) as i64;
        Qz::new(n, self.den)
    }
}

impl Add for Qz {
    type Output = Qz;
    fn add(self, o: Qz) -> Qz {
        let l = self.den.lcm(&o.den);
        let n = (self.num * (l / self.den) + o.num * (l / o.den)) % l;
        Qz::new(n as i64, l)
    }
}

impl Neg for Qz {
    type Output = Qz;
    fn neg(self) -> Qz {
        Qz::new(-(self.num as i64), self.den)
    }
}

impl Sub for Qz {
    type Output = Qz;
    fn sub(self, o: Qz) -> Qz {
        self + (-o)
    }
}

impl Default for Qz {
    fn default() -> Self {
        Qz::ZERO
    }
}

impl fmt::Display for Qz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_mod_one() {
        assert_eq!(Qz::HALF + Qz::HALF, Qz::ZERO);
        assert_eq!(Qz::new(3, 4) + Qz::new(1, 2), Qz::new(1, 4));
        assert_eq!(-Qz::new(1, 4), Qz::new(3, 4));
        assert_eq!(Qz::new(-1, 8).mul_int(4), Qz::HALF);
        assert_eq!(Qz::new(2, 4).order(), 2);
    }
}
