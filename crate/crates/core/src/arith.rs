//! Number-theoretic and slope primitives: gcd, modular inverse, reduced
//! slope fractions and their geometric intersection distance.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("{a} is not invertible mod {n}: gcd({a}, {n}) = {gcd}")]
    NotInvertible { a: i64, n: i64, gcd: i64 },
    #[error("slope 0/0 is not a slope")]
    ZeroSlope,
    #[error("modulus must be >= 1, got {0}")]
    BadModulus(i64),
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Extended gcd: returns `(g, x, y)` with `a*x + b*y = g`.
pub fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Inverse of `a` in `Z_n`, in `[0, n)`.  For `n = 1` the inverse is 0.
pub fn mod_inverse(a: i64, n: i64) -> Result<i64, ArithError> {
    if n < 1 {
        return Err(ArithError::BadModulus(n));
    }
    if n == 1 {
        return Ok(0);
    }
    let a_red = a.rem_euclid(n);
    let (g, x, _) = egcd(a_red, n);
    if g != 1 {
        return Err(ArithError::NotInvertible { a, n, gcd: g });
    }
    Ok(x.rem_euclid(n))
}

/// A slope on a torus: a reduced fraction `numerator/denominator`, with
/// `1/0` as the slope of the meridian-free direction.  Normalized so the
/// denominator is nonnegative and `1/0` is the unique infinite slope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Slope {
    num: i64,
    den: i64,
}

impl Slope {
    pub fn new(num: i64, den: i64) -> Result<Self, ArithError> {
        if num == 0 && den == 0 {
            return Err(ArithError::ZeroSlope);
        }
        let g = gcd(num, den);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 || (den == 0 && num < 0) {
            num = -num;
            den = -den;
        }
        Ok(Slope { num, den })
    }

    pub fn infinity() -> Self {
        Slope { num: 1, den: 0 }
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }
}

impl std::fmt::Display for Slope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Minimal geometric intersection number of two slopes: `|n1*d2 - n2*d1|`.
pub fn slope_distance(s1: Slope, s2: Slope) -> i64 {
    (s1.num * s2.den - s2.num * s1.den).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod_inverse_small_cases() {
        assert_eq!(mod_inverse(3, 2), Ok(1));
        assert_eq!(mod_inverse(2, 3), Ok(2));
    }

    #[test]
    fn mod_inverse_4_mod_7_matches_brute_force() {
        // Independent oracle: scan all residues.
        let expect = (0..7).find(|r| (4 * r) % 7 == 1).unwrap();
        assert_eq!(expect, 2);
        assert_eq!(mod_inverse(4, 7), Ok(2));
    }

    #[test]
    fn mod_inverse_modulus_one() {
        assert_eq!(mod_inverse(5, 1), Ok(0));
    }

    #[test]
    fn mod_inverse_rejects_non_units() {
        assert_eq!(
            mod_inverse(6, 9),
            Err(ArithError::NotInvertible { a: 6, n: 9, gcd: 3 })
        );
    }

    #[test]
    fn mod_inverse_is_inverse_on_all_units_up_to_50() {
        for n in 2..=50i64 {
            for a in 0..n {
                if gcd(a, n) == 1 {
                    let inv = mod_inverse(a, n).unwrap();
                    assert_eq!((a * inv).rem_euclid(n), 1, "a={a} n={n}");
                    assert!((0..n).contains(&inv));
                } else {
                    assert!(mod_inverse(a, n).is_err());
                }
            }
        }
    }

    #[test]
    fn slope_examples() {
        let s = |n, d| Slope::new(n, d).unwrap();
        assert_eq!(slope_distance(s(0, 1), s(1, 0)), 1);
        assert_eq!(slope_distance(s(2, 3), s(1, 2)), 1);
        assert_eq!(slope_distance(s(3, 5), s(3, 5)), 0);
    }

    #[test]
    fn slope_normalization() {
        assert_eq!(Slope::new(2, -4).unwrap(), Slope::new(-1, 2).unwrap());
        assert_eq!(Slope::new(-3, 0).unwrap(), Slope::infinity());
        assert!(Slope::new(0, 0).is_err());
    }

    #[test]
    fn slope_distance_symmetric_and_separating() {
        // All reduced pairs with entries up to 20.
        let mut slopes = vec![Slope::infinity()];
        for n in -20..=20i64 {
            for d in 1..=20i64 {
                if gcd(n, d) == 1 {
                    slopes.push(Slope::new(n, d).unwrap());
                }
            }
        }
        for &a in &slopes {
            for &b in &slopes {
                assert_eq!(slope_distance(a, b), slope_distance(b, a));
                assert_eq!(slope_distance(a, b) == 0, a == b);
            }
        }
    }
}
