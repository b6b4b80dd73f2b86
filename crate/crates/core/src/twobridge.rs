//! Rational-tangle / 2-bridge-knot arithmetic: Schubert normal forms,
//! equivalence, nontriviality and hyperbolicity predicates, and the
//! `(r, s)`-disk exclusion table used to rule out compressing and
//! boundary-compressing disks in the tangle exterior.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{gcd, mod_inverse};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TwoBridgeError {
    #[error("fraction {m}/{n} is not reduced: gcd = {g}")]
    NotReduced { m: i64, n: i64, g: i64 },
    #[error("denominator must be >= 1, got {0}")]
    BadDenominator(i64),
    #[error("cannot parse '{0}' as m/n")]
    Parse(String),
    #[error("the trivial knot is rejected here")]
    Trivial,
}

/// A 2-bridge fraction `m/n` in Schubert normal form: `0 < m < n`,
/// `gcd(m, n) = 1`, with the class `{m, m^{-1} mod n}` collapsed to its
/// smaller member.  `1/1` is the trivial knot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwoBridgeFraction {
    m: i64,
    n: i64,
}

impl TwoBridgeFraction {
    /// Normalize `m/n` into canonical form.
    pub fn new(m: i64, n: i64) -> Result<Self, TwoBridgeError> {
        if n < 1 {
            return Err(TwoBridgeError::BadDenominator(n));
        }
        let g = gcd(m, n);
        if g != 1 {
            return Err(TwoBridgeError::NotReduced { m, n, g });
        }
        if n == 1 {
            return Ok(TwoBridgeFraction { m: 1, n: 1 });
        }
        let m = m.rem_euclid(n);
        let inv = mod_inverse(m, n).expect("unit mod n");
        Ok(TwoBridgeFraction { m: m.min(inv), n })
    }

    pub fn parse(s: &str) -> Result<Self, TwoBridgeError> {
        let (m, n) = s
            .split_once('/')
            .ok_or_else(|| TwoBridgeError::Parse(s.to_string()))?;
        let m: i64 = m.trim().parse().map_err(|_| TwoBridgeError::Parse(s.to_string()))?;
        let n: i64 = n.trim().parse().map_err(|_| TwoBridgeError::Parse(s.to_string()))?;
        Self::new(m, n)
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn is_trivial(&self) -> bool {
        self.n == 1
    }

    pub fn is_nontrivial(&self) -> bool {
        self.n >= 3
    }

    /// 2-bridge knots correspond to odd denominators.
    pub fn is_knot(&self) -> bool {
        self.n % 2 == 1
    }

    /// 2-bridge torus knots are exactly `m = 1` (equivalently `m = n-1`),
    /// so hyperbolicity is everything else among the nontrivial ones.
    pub fn is_hyperbolic(&self) -> bool {
        self.is_nontrivial() && self.m != 1 && self.m != self.n - 1
    }

    /// Mirror image: `(n - m)/n`, renormalized.
    pub fn mirror(&self) -> TwoBridgeFraction {
        if self.n == 1 {
            return *self;
        }
        TwoBridgeFraction::new(self.n - self.m, self.n).expect("mirror stays reduced")
    }

    /// The mod-`n` inverse of `-m`, folded into `(-n/2, n/2]`.
    pub fn m_bar(&self) -> i64 {
        if self.n == 1 {
            return 0;
        }
        let inv = mod_inverse(-self.m, self.n).expect("unit mod n");
        if 2 * inv > self.n {
            inv - self.n
        } else {
            inv
        }
    }
}

impl std::fmt::Display for TwoBridgeFraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.m, self.n)
    }
}

/// Which quoted consequence rules an `(r, s)` disk out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RsRule {
    /// A `(0, 0)` disk compresses the tangle surface, forcing `n = 0`.
    CompressingForcesNZero,
    /// The `(1,1)`, `(2,0)`, `(0,2)` boundary cases contradict the
    /// nontriviality of the tangle.
    BoundaryCaseNontrivial,
    /// Even `r` with `|m_bar| > 1` forces `s >= 4`.
    EvenRForcesSFour,
    /// A `(0, 4)` disk cannot exist at all.
    ZeroFourImpossible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RsVerdict {
    Excluded(RsRule),
    NotExcluded,
    Unsupported,
}

impl RsVerdict {
    pub fn is_excluded(&self) -> bool {
        matches!(self, RsVerdict::Excluded(_))
    }
}

/// Admissibility of an `(r, s)` disk in the tangle exterior: `r` counts
/// intersections with the two meridian boundary circles, `s` with the
/// third.  Only the case pairs that actually arise are supported.
pub fn rs_disk_conditions(f: &TwoBridgeFraction, r: u32, s: u32) -> RsVerdict {
    match (r, s) {
        (0, 0) => {
            if f.is_nontrivial() {
                RsVerdict::Excluded(RsRule::CompressingForcesNZero)
            } else {
                RsVerdict::NotExcluded
            }
        }
        (1, 1) | (2, 0) | (0, 2) => {
            if f.is_nontrivial() {
                RsVerdict::Excluded(RsRule::BoundaryCaseNontrivial)
            } else {
                RsVerdict::NotExcluded
            }
        }
        (2, 2) | (4, 2) => {
            if f.m_bar().abs() > 1 {
                RsVerdict::Excluded(RsRule::EvenRForcesSFour)
            } else {
                RsVerdict::NotExcluded
            }
        }
        (0, 4) => {
            if f.is_nontrivial() {
                RsVerdict::Excluded(RsRule::ZeroFourImpossible)
            } else {
                RsVerdict::NotExcluded
            }
        }
        _ => RsVerdict::Unsupported,
    }
}

/// The `(r, s)` pairs the exclusion table covers.
pub const SUPPORTED_RS: [(u32, u32); 7] =
    [(0, 0), (1, 1), (2, 0), (0, 2), (2, 2), (4, 2), (0, 4)];

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalize_examples() {
        assert_eq!(TwoBridgeFraction::new(4, 3).unwrap().to_string(), "1/3");
        // 3^{-1} = 2 mod 5.
        assert_eq!(TwoBridgeFraction::new(3, 5).unwrap().to_string(), "2/5");
        assert!(TwoBridgeFraction::new(1, 1).unwrap().is_trivial());
    }

    #[test]
    fn nontriviality() {
        assert!(TwoBridgeFraction::new(1, 3).unwrap().is_nontrivial());
        assert!(!TwoBridgeFraction::new(1, 1).unwrap().is_nontrivial());
        assert!(TwoBridgeFraction::new(2, 5).unwrap().is_nontrivial());
    }

    #[test]
    fn hyperbolicity_against_torus_family() {
        // Torus 2-bridge knots are exactly 1/k; cross-check the whole
        // family (2, k) <-> 1/k.
        for k in (3..60).step_by(2) {
            assert!(!TwoBridgeFraction::new(1, k).unwrap().is_hyperbolic());
            assert!(!TwoBridgeFraction::new(k - 1, k).unwrap().is_hyperbolic());
        }
        assert!(TwoBridgeFraction::new(2, 5).unwrap().is_hyperbolic());
        assert!(TwoBridgeFraction::new(2, 7).unwrap().is_hyperbolic());
    }

    #[test]
    fn normalize_idempotent_and_class_invariant_up_to_99() {
        for n in (1..=99i64).step_by(2) {
            for m in 1..n.max(2) {
                if gcd(m, n) != 1 {
                    continue;
                }
                let f = TwoBridgeFraction::new(m, n).unwrap();
                let again = TwoBridgeFraction::new(f.m(), f.n()).unwrap();
                assert_eq!(f, again, "idempotence at {m}/{n}");
                if n > 1 {
                    let inv = mod_inverse(m, n).unwrap();
                    let g = TwoBridgeFraction::new(inv, n).unwrap();
                    assert_eq!(f, g, "class invariance at {m}/{n}");
                }
            }
        }
    }

    #[test]
    fn hyperbolic_implies_nontrivial() {
        for n in 1..200i64 {
            for m in 0..n.max(2) {
                if gcd(m, n) != 1 {
                    continue;
                }
                if let Ok(f) = TwoBridgeFraction::new(m, n) {
                    if f.is_hyperbolic() {
                        assert!(f.is_nontrivial());
                    }
                }
            }
        }
    }

    #[test]
    fn rs_table_figure_eight() {
        let f8 = TwoBridgeFraction::new(2, 5).unwrap();
        assert_eq!(
            rs_disk_conditions(&f8, 0, 0),
            RsVerdict::Excluded(RsRule::CompressingForcesNZero)
        );
        assert_eq!(
            rs_disk_conditions(&f8, 0, 4),
            RsVerdict::Excluded(RsRule::ZeroFourImpossible)
        );
        assert_eq!(
            rs_disk_conditions(&f8, 4, 2),
            RsVerdict::Excluded(RsRule::EvenRForcesSFour)
        );
        assert_eq!(rs_disk_conditions(&f8, 3, 3), RsVerdict::Unsupported);
    }

    #[test]
    fn rs_table_excludes_all_low_cases_for_nontrivial() {
        for n in (3..=99i64).step_by(2) {
            for m in 1..n {
                if gcd(m, n) != 1 {
                    continue;
                }
                let f = TwoBridgeFraction::new(m, n).unwrap();
                for &(r, s) in SUPPORTED_RS.iter().filter(|&&(r, s)| r + s <= 4) {
                    let needs_hyperbolic = matches!((r, s), (2, 2));
                    if needs_hyperbolic && !f.is_hyperbolic() {
                        continue;
                    }
                    assert!(
                        rs_disk_conditions(&f, r, s).is_excluded(),
                        "{f} at ({r}, {s})"
                    );
                }
            }
        }
    }

    #[test]
    fn mirror_of_mirror_is_identity() {
        let f = TwoBridgeFraction::new(3, 7).unwrap();
        assert_eq!(f.mirror().mirror(), f);
    }

    #[test]
    fn m_bar_detects_torus_knots() {
        // |m_bar| = 1 exactly for the torus fractions 1/n and (n-1)/n.
        for n in (3..=49i64).step_by(2) {
            for m in 1..n {
                if gcd(m, n) != 1 {
                    continue;
                }
                let f = TwoBridgeFraction::new(m, n).unwrap();
                assert_eq!(f.m_bar().abs() == 1, !f.is_hyperbolic(), "{m}/{n}");
            }
        }
    }

    proptest! {
        #[test]
        fn normalize_idempotent_random(n in 1i64..4000, m in 0i64..4000) {
            prop_assume!(n >= 1 && gcd(m, n) == 1);
            let f = TwoBridgeFraction::new(m, n).unwrap();
            let again = TwoBridgeFraction::new(f.m(), f.n()).unwrap();
            prop_assert_eq!(f, again);
            prop_assert!(f.n() == 1 || (0 < f.m() && f.m() < f.n()));
        }
    }
}
