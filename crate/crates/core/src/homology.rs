//! First-homology bookkeeping for the genus-2 handlebody: classes of the
//! knot and of the pants boundary circles, quotients by 2-handle
//! attachment via Smith normal form, the two-generator one-relator
//! presentation arising from the distinguished surgery, and the invariant
//! triple separating members of the family.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{slope_distance, Slope};
use crate::construction::ConstructionParams;
use crate::pants::Circle;
use crate::twobridge::{TwoBridgeError, TwoBridgeFraction};

#[derive(Debug, Error)]
pub enum HomologyError {
    #[error("slopes mu and lambda must differ")]
    EqualFillingSlopes,
    #[error("invariant triple rejects the trivial knot")]
    TrivialKnot(#[from] TwoBridgeError),
}

/// An element of H_1 of the genus-2 handlebody in the basis dual to the
/// two meridian disks crossed by the knot `p` and `q` times.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyClass(pub i64, pub i64);

impl std::ops::Add for HomologyClass {
    type Output = HomologyClass;
    fn add(self, rhs: HomologyClass) -> HomologyClass {
        HomologyClass(self.0 + rhs.0, self.1 + rhs.1)
    }
}

/// Class of the knot: `(p, q)`.
pub fn knot_class(params: &ConstructionParams) -> HomologyClass {
    HomologyClass(params.p(), params.q())
}

/// Classes of the three pants boundary circles.  The assignment is the
/// unique one (up to symmetry) reproducing the three attachment windings
/// with the knot in class `(p, q)`; the circles sum to zero.
pub fn boundary_class(circle: Circle) -> HomologyClass {
    match circle {
        Circle::B1 => HomologyClass(0, 1),
        Circle::B2 => HomologyClass(1, 0),
        Circle::B3 => HomologyClass(-1, -1),
    }
}

// ----------------------------------------------------------------------
// Smith normal form for small integer matrices
// ----------------------------------------------------------------------

/// Smith decomposition `u * m * v = d` with `u`, `v` unimodular and `d`
/// diagonal with divisibility down the diagonal.
#[derive(Debug, Clone)]
pub struct Smith {
    pub d: Vec<Vec<i64>>,
    pub u: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn smith_normal_form(m: &[Vec<i64>]) -> Smith {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut d: Vec<Vec<i64>> = m.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);

    let mut k = 0;
    while k < rows.min(cols) {
        // Pivot: smallest nonzero entry of the trailing block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if d[i][j] != 0
                    && pivot.map_or(true, |(pi, pj)| d[i][j].abs() < d[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap(k, pi);
        u.swap(k, pi);
        for row in d.iter_mut() {
            row.swap(k, pj);
        }
        for row in v.iter_mut() {
            row.swap(k, pj);
        }

        // Clear the pivot row and column by euclidean steps.
        let mut dirty = true;
        while dirty {
            dirty = false;
            for i in (k + 1)..rows {
                if d[i][k] != 0 {
                    let f = d[i][k] / d[k][k];
                    for j in 0..cols {
                        d[i][j] -= f * d[k][j];
                    }
                    for j in 0..rows {
                        u[i][j] -= f * u[k][j];
                    }
                    if d[i][k] != 0 {
                        d.swap(k, i);
                        u.swap(k, i);
                        dirty = true;
                    }
                }
            }
            for j in (k + 1)..cols {
                if d[k][j] != 0 {
                    let f = d[k][j] / d[k][k];
                    for row in d.iter_mut() {
                        row[j] -= f * row[k];
                    }
                    for row in v.iter_mut() {
                        row[j] -= f * row[k];
                    }
                    if d[k][j] != 0 {
                        for row in d.iter_mut() {
                            row.swap(k, j);
                        }
                        for row in v.iter_mut() {
                            row.swap(k, j);
                        }
                        dirty = true;
                    }
                }
            }
        }
        if d[k][k] < 0 {
            for j in 0..rows {
                u[k][j] = -u[k][j];
            }
            for row in d.iter_mut() {
                row[k] = -row[k];
            }
            // Negating the row of d is equivalent; keep d consistent.
            for j in 0..cols {
                if j != k {
                    debug_assert_eq!(d[k][j], 0);
                }
            }
            d[k][k] = d[k][k].abs();
        }
        k += 1;
    }

    // Enforce divisibility along the diagonal.
    let r = rows.min(cols);
    loop {
        let mut fixed = true;
        for i in 0..r.saturating_sub(1) {
            let (a, b) = (d[i][i], d[i + 1][i + 1]);
            if a != 0 && b % a != 0 {
                // Standard trick: add column i+1 to column i, then re-reduce
                // the 2x2 block by restarting on the whole matrix.
                for row in d.iter_mut() {
                    row[i] += row[i + 1];
                }
                for row in v.iter_mut() {
                    row[i] += row[i + 1];
                }
                let again = smith_normal_form(&d);
                let compose = |a: &[Vec<i64>], b: &[Vec<i64>]| -> Vec<Vec<i64>> {
                    let n = a.len();
                    let m = b[0].len();
                    let inner = b.len();
                    (0..n)
                        .map(|i| {
                            (0..m)
                                .map(|j| (0..inner).map(|t| a[i][t] * b[t][j]).sum())
                                .collect()
                        })
                        .collect()
                };
                let u2 = compose(&again.u, &u);
                let v2 = compose(&v, &again.v);
                return Smith { d: again.d, u: u2, v: v2 };
            }
            if a == 0 && b != 0 {
                fixed = false;
                d[i][i] = b;
                d[i + 1][i + 1] = 0;
                // Swapping diagonal entries of a diagonal matrix = swapping
                // both a row pair and a column pair.
                u.swap(i, i + 1);
                for row in v.iter_mut() {
                    row.swap(i, i + 1);
                }
            }
        }
        if fixed {
            break;
        }
    }

    Smith { d, u, v }
}

/// Winding of the knot in the solid torus obtained by attaching a 2-handle
/// along a pants boundary circle: the image of the knot class in
/// `Z^2 / <circle class>`, computed through Smith normal form.
pub fn winding_after_attachment(params: &ConstructionParams, circle: Circle) -> i64 {
    let HomologyClass(a, b) = boundary_class(circle);
    let snf = smith_normal_form(&[vec![a], vec![b]]);
    debug_assert_eq!(snf.d[0][0], 1, "boundary classes are primitive");
    // In the basis y = u x the relation subgroup is <e_1>, so the free
    // quotient coordinate is the second row of u applied to the class.
    let HomologyClass(kp, kq) = knot_class(params);
    (snf.u[1][0] * kp + snf.u[1][1] * kq).abs()
}

// ----------------------------------------------------------------------
// Group presentations
// ----------------------------------------------------------------------

/// A finite presentation; relator words are exponent sequences over the
/// generator indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<(usize, i64)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Abelianization {
    pub rank: usize,
    pub torsion: Vec<i64>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Vec<(usize, i64)>>) -> Self {
        for rel in &relators {
            for &(g, _) in rel {
                assert!(g < generators.len(), "relator uses undeclared generator");
            }
        }
        GroupPresentation { generators, relators }
    }

    /// Structure of the abelianized group from the SNF of the relation
    /// matrix (relators as rows).
    pub fn abelianization(&self) -> Abelianization {
        let g = self.generators.len();
        if self.relators.is_empty() {
            return Abelianization { rank: g, torsion: vec![] };
        }
        let mut matrix = vec![vec![0i64; g]; self.relators.len()];
        for (i, rel) in self.relators.iter().enumerate() {
            for &(gen, exp) in rel {
                matrix[i][gen] += exp;
            }
        }
        let snf = smith_normal_form(&matrix);
        let r = self.relators.len().min(g);
        let diag: Vec<i64> = (0..r).map(|i| snf.d[i][i]).collect();
        let nonzero = diag.iter().filter(|&&d| d != 0).count();
        Abelianization {
            rank: g - nonzero,
            torsion: diag.iter().copied().filter(|&d| d > 1).collect(),
        }
    }
}

/// Fundamental group of the space obtained from the distinguished surgery
/// followed by a 2-handle attachment along the third boundary circle:
/// `<x, y | x^p = y^q>`, a Seifert fibration over the disk with two
/// exceptional fibers.
pub fn sfs_presentation(params: &ConstructionParams) -> GroupPresentation {
    GroupPresentation::new(
        vec!["x".into(), "y".into()],
        vec![vec![(0, params.p()), (1, -params.q())]],
    )
}

/// The knot is never isotopic to the boundary of the solid torus obtained
/// by attaching along the third circle: that would force `q - p = p` or
/// `q - p = q`, impossible for coprime `1 < p < q`.
pub fn check_not_isotopic_to_boundary(params: &ConstructionParams) -> bool {
    let w = params.q() - params.p();
    w != params.p() && w != params.q()
}

/// Necessary condition on a third handlebody filling slope: distance one
/// from both the meridian and the distinguished slope.
pub fn fillings_constraint(
    mu: Slope,
    lambda: Slope,
    alpha: Slope,
) -> Result<bool, HomologyError> {
    if mu == lambda {
        return Err(HomologyError::EqualFillingSlopes);
    }
    Ok(slope_distance(alpha, mu) == 1 && slope_distance(alpha, lambda) == 1)
}

// ----------------------------------------------------------------------
// Invariant triple
// ----------------------------------------------------------------------

/// Comparator token for members of the family: the canonical 2-bridge
/// fraction together with `(p, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantTriple {
    pub l: TwoBridgeFraction,
    pub p: i64,
    pub q: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TripleComparison {
    Equal,
    Distinct,
    /// The fractions are mirror images: this invariant does not separate
    /// mirror pairs and reports them as indistinguishable, not equal.
    MirrorIndistinguishable,
}

pub fn invariant_triple(
    l: TwoBridgeFraction,
    params: &ConstructionParams,
) -> Result<InvariantTriple, HomologyError> {
    if l.is_trivial() {
        return Err(HomologyError::TrivialKnot(TwoBridgeError::Trivial));
    }
    Ok(InvariantTriple { l, p: params.p(), q: params.q() })
}

pub fn compare_triples(a: &InvariantTriple, b: &InvariantTriple) -> TripleComparison {
    if a == b {
        return TripleComparison::Equal;
    }
    if a.p == b.p && a.q == b.q && a.l == b.l.mirror() {
        return TripleComparison::MirrorIndistinguishable;
    }
    TripleComparison::Distinct
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::coprime_pairs;

    fn params(p: i64, q: i64) -> ConstructionParams {
        ConstructionParams::new(p, q).unwrap()
    }

    #[test]
    fn boundary_classes_sum_to_zero() {
        let total = boundary_class(Circle::B1) + boundary_class(Circle::B2);
        let total = total + boundary_class(Circle::B3);
        assert_eq!(total, HomologyClass(0, 0));
    }

    #[test]
    fn winding_examples() {
        assert_eq!(winding_after_attachment(&params(3, 4), Circle::B3), 1);
        assert_eq!(winding_after_attachment(&params(2, 5), Circle::B1), 2);
        assert_eq!(winding_after_attachment(&params(2, 5), Circle::B2), 5);
    }

    #[test]
    fn winding_sweep_to_50() {
        for pr in coprime_pairs(50) {
            assert_eq!(winding_after_attachment(&pr, Circle::B1), pr.p());
            assert_eq!(winding_after_attachment(&pr, Circle::B2), pr.q());
            assert_eq!(winding_after_attachment(&pr, Circle::B3), pr.q() - pr.p());
            assert!(check_not_isotopic_to_boundary(&pr));
        }
    }

    #[test]
    fn snf_diagonal_example() {
        let m = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]];
        let snf = smith_normal_form(&m);
        let diag: Vec<i64> = (0..3).map(|i| snf.d[i][i]).collect();
        assert_eq!(diag, vec![2, 2, 156]);
        // u m v = d
        let mul = |a: &Vec<Vec<i64>>, b: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
            (0..a.len())
                .map(|i| {
                    (0..b[0].len())
                        .map(|j| (0..b.len()).map(|t| a[i][t] * b[t][j]).sum())
                        .collect()
                })
                .collect()
        };
        let umv = mul(&mul(&snf.u, &m), &snf.v);
        assert_eq!(umv, snf.d);
    }

    #[test]
    fn snf_quotient_matches_brute_force_kernel() {
        // The quotient map Z^2 -> Z^2/<w> built from SNF must kill exactly
        // the multiples of w; check on a box of small vectors.
        for (a, b) in [(0, 1), (1, 0), (-1, -1), (2, 3), (3, -5)] {
            let snf = smith_normal_form(&[vec![a], vec![b]]);
            assert_eq!(snf.d[0][0], 1);
            let free = |x: i64, y: i64| snf.u[1][0] * x + snf.u[1][1] * y;
            for x in -6..=6i64 {
                for y in -6..=6i64 {
                    let in_span = a * y == b * x; // (x,y) parallel to (a,b)
                    assert_eq!(free(x, y) == 0, in_span, "w=({a},{b}), v=({x},{y})");
                }
            }
        }
    }

    #[test]
    fn sfs_abelianization_is_z() {
        for pr in coprime_pairs(50) {
            let ab = sfs_presentation(&pr).abelianization();
            assert_eq!(ab.rank, 1, "({}, {})", pr.p(), pr.q());
            assert!(ab.torsion.is_empty(), "({}, {})", pr.p(), pr.q());
        }
    }

    #[test]
    fn trefoil_presentation() {
        let pres = sfs_presentation(&params(2, 3));
        assert_eq!(pres.generators, vec!["x".to_string(), "y".to_string()]);
        assert_eq!(pres.relators, vec![vec![(0, 2), (1, -3)]]);
    }

    #[test]
    fn fillings_constraint_examples() {
        let s = |n, d| Slope::new(n, d).unwrap();
        let mu = Slope::infinity();
        let lambda = s(0, 1);
        assert!(fillings_constraint(mu, lambda, s(1, 1)).unwrap());
        assert!(!fillings_constraint(mu, lambda, s(2, 1)).unwrap());
        assert!(fillings_constraint(mu, mu, s(1, 1)).is_err());
    }

    #[test]
    fn fillings_constraint_full_set_is_pm_one() {
        // With mu = 1/0 and lambda = 0/1 the slopes at distance one from
        // both are exactly +-1/1 (enumerated over bounded reduced slopes).
        let mu = Slope::infinity();
        let lambda = Slope::new(0, 1).unwrap();
        let mut hits = Vec::new();
        for n in -30..=30i64 {
            for d in 0..=30i64 {
                if let Ok(alpha) = Slope::new(n, d) {
                    if fillings_constraint(mu, lambda, alpha).unwrap() && !hits.contains(&alpha)
                    {
                        hits.push(alpha);
                    }
                }
            }
        }
        hits.sort_by_key(|s| (s.numerator(), s.denominator()));
        assert_eq!(
            hits,
            vec![Slope::new(-1, 1).unwrap(), Slope::new(1, 1).unwrap()]
        );
    }

    #[test]
    fn invariant_triple_comparator() {
        let trefoil = TwoBridgeFraction::new(1, 3).unwrap();
        let fig8 = TwoBridgeFraction::new(2, 5).unwrap();
        let t1 = invariant_triple(trefoil, &params(2, 3)).unwrap();
        let t2 = invariant_triple(trefoil, &params(2, 3)).unwrap();
        let t3 = invariant_triple(fig8, &params(2, 3)).unwrap();
        let t4 = invariant_triple(trefoil, &params(2, 5)).unwrap();
        assert_eq!(compare_triples(&t1, &t2), TripleComparison::Equal);
        assert_eq!(compare_triples(&t1, &t3), TripleComparison::Distinct);
        assert_eq!(compare_triples(&t1, &t4), TripleComparison::Distinct);
    }

    #[test]
    fn mirror_pairs_reported_indistinguishable() {
        // 2/7 and 5/7 (its mirror: 5 = 7-2, and 5^{-1} = 3 mod 7) are
        // genuinely different canonical forms.
        let a = TwoBridgeFraction::new(2, 7).unwrap();
        let b = a.mirror();
        assert_ne!(a, b);
        let ta = invariant_triple(a, &params(2, 3)).unwrap();
        let tb = invariant_triple(b, &params(2, 3)).unwrap();
        assert_eq!(
            compare_triples(&ta, &tb),
            TripleComparison::MirrorIndistinguishable
        );
    }

    #[test]
    fn trivial_knot_rejected() {
        let unknot = TwoBridgeFraction::new(1, 1).unwrap();
        assert!(invariant_triple(unknot, &params(2, 3)).is_err());
    }
}
