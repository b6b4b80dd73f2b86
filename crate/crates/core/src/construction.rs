//! Generates the arc pattern of the distinguished disk boundary on the two
//! pants `P` and `R` for coprime parameters `(p, q)`, together with the
//! boundary gluing, and verifies the pattern's consistency battery.
//!
//! The pattern is recovered from first principles on the unit flat torus:
//! the disk boundary restricts to a line of direction `(p, q)` on each of
//! the two boundary tori of `T^2 x I`, the curve `x` is a `(0, 1)` geodesic
//! on the inner torus, and the curve `l` is a `(1, 0)` geodesic on the outer
//! torus.  Crossing orders are computed with exact rational arithmetic; the
//! connecting arc `s` is cut at a deterministic generic point.  The output
//! is trusted only insofar as the verification battery (gluing identities,
//! single-curve trace, region census, endpoint counts) passes on it.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{gcd, mod_inverse};
use crate::pants::{
    ArcKind, ArcLabel, Circle, GluedSurface, PantsError, PantsPattern, Region, Side, SlotId,
};

type Rat = Ratio<i64>;

fn fract(x: Rat) -> Rat {
    x - x.floor()
}

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("gcd(p, q) must be 1, got gcd({p}, {q}) = {g}")]
    NotCoprime { p: i64, q: i64, g: i64 },
    #[error("parameters must satisfy 1 < p < q, got ({p}, {q})")]
    OutOfRange { p: i64, q: i64 },
    #[error("pants structure error: {0}")]
    Pants(#[from] PantsError),
    #[error("hexagon contents mismatch: no hexagon contains {{{0}, {1}}}")]
    HexagonContents(ArcLabel, ArcLabel),
    #[error("consistency battery failed: {0}")]
    Battery(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionParams {
    p: i64,
    q: i64,
}

impl ConstructionParams {
    pub fn new(p: i64, q: i64) -> Result<Self, ConstructionError> {
        if !(1 < p && p < q) {
            return Err(ConstructionError::OutOfRange { p, q });
        }
        let g = gcd(p, q);
        if g != 1 {
            return Err(ConstructionError::NotCoprime { p, q, g });
        }
        Ok(ConstructionParams { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// `q^{-1} mod p`.
    pub fn q_inv(&self) -> i64 {
        mod_inverse(self.q, self.p).expect("coprime by construction")
    }

    /// `p^{-1} mod q`.
    pub fn p_inv(&self) -> i64 {
        mod_inverse(self.p, self.q).expect("coprime by construction")
    }

    /// Hexagon H1 contains the arcs `d_{q^-1}` and `b_{p^-1}`.
    pub fn h1_labels(&self, side: Side) -> (ArcLabel, ArcLabel) {
        (
            ArcLabel { kind: ArcKind::D, sub: self.q_inv() as u32, side },
            ArcLabel { kind: ArcKind::B, sub: self.p_inv() as u32, side },
        )
    }

    /// Hexagon H2 contains `d_{(p-1)q^-1}` and `b_{(q-1)p^-1}`.
    pub fn h2_labels(&self, side: Side) -> (ArcLabel, ArcLabel) {
        (
            ArcLabel {
                kind: ArcKind::D,
                sub: (((self.p - 1) * self.q_inv()).rem_euclid(self.p)) as u32,
                side,
            },
            ArcLabel {
                kind: ArcKind::B,
                sub: (((self.q - 1) * self.p_inv()).rem_euclid(self.q)) as u32,
                side,
            },
        )
    }
}

/// Crossing data of the disk boundary with the two reference geodesics,
/// computed on the flat torus.
struct TorusCrossings {
    /// For each crossing with `x` (indexed by k = 0..p-1): position along
    /// the meridian circle.
    v: Vec<Rat>,
    /// For each crossing with `l` (j = 0..q-1): position along the
    /// longitude circle.
    u: Vec<Rat>,
    /// Crossing hosting the near endpoint of the connecting arc.
    k_s: usize,
    j_s: usize,
}

fn torus_crossings(params: &ConstructionParams) -> TorusCrossings {
    let (p, q) = (params.p, params.q);
    let pq = Rat::new(1, 3 * p * q);
    let ou = pq; // 1/(3pq)
    let ov = Rat::new(1, 7 * p * q);
    let pr = Rat::from_integer(p);
    let qr = Rat::from_integer(q);

    let mut t_all = Vec::new();
    let mut tx = Vec::new();
    let mut v = Vec::new();
    for k in 0..p {
        let t = fract((Rat::from_integer(k) - ou) / pr);
        tx.push(t);
        v.push(fract(ov + qr * t));
        t_all.push(t);
    }
    let mut tl = Vec::new();
    let mut u = Vec::new();
    for j in 0..q {
        let t = fract((Rat::from_integer(j) - ov) / qr);
        tl.push(t);
        u.push(fract(ou + pr * t));
        t_all.push(t);
    }

    // Cut the curve at a generic point: the midpoint of the cyclic gap
    // between the last and first crossing times.
    let t_min = *t_all.iter().min().unwrap();
    let t_max = *t_all.iter().max().unwrap();
    let t_z = fract((t_max + t_min + Rat::from_integer(1)) / Rat::from_integer(2));

    // The connecting arc ends at the last x-crossing before the cut and the
    // last l-crossing before the cut.
    let back = |t: Rat| fract(t_z - t);
    let k_s = (0..p as usize).min_by_key(|&k| back(tx[k])).unwrap();
    let j_s = (0..q as usize).min_by_key(|&j| back(tl[j])).unwrap();

    TorusCrossings { v, u, k_s, j_s }
}

/// Circle-point bookkeeping while assembling the two patterns.
struct PointOrders {
    /// Crossing indices k around circle B1, in P rotation order.
    b1: Vec<usize>,
    /// Crossing indices j around B2, in P rotation order.
    b2: Vec<usize>,
    /// Points around B3 in P rotation order: x-part crossings then l-part.
    b3: Vec<B3Point>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum B3Point {
    X(usize),
    L(usize),
}

fn point_orders(params: &ConstructionParams, cr: &TorusCrossings) -> PointOrders {
    let p = params.p as usize;
    let q = params.q as usize;

    // B1 carries one point per x-crossing; the induced orientation runs in
    // decreasing meridian position.
    let mut b1: Vec<usize> = (0..p).collect();
    b1.sort_by(|&a, &b| cr.v[b].cmp(&cr.v[a]));

    let mut b2: Vec<usize> = (0..q).collect();
    b2.sort_by(|&a, &b| cr.u[b].cmp(&cr.u[a]));

    // B3 is cut where the connecting arc attaches; both parts run in
    // increasing position from the attachment.
    let v_hat = cr.v[cr.k_s];
    let u_hat = cr.u[cr.j_s];
    let mut xs: Vec<usize> = (0..p).filter(|&k| k != cr.k_s).collect();
    xs.sort_by_key(|&k| fract(cr.v[k] - v_hat));
    let mut ls: Vec<usize> = (0..q).filter(|&j| j != cr.j_s).collect();
    ls.sort_by_key(|&j| fract(cr.u[j] - u_hat));
    let mut b3: Vec<B3Point> = xs.into_iter().map(B3Point::X).collect();
    b3.extend(ls.into_iter().map(B3Point::L));

    PointOrders { b1, b2, b3 }
}

/// Subscript of the `d` arc crossing `x` at crossing `k` (spatial rank from
/// the attachment, times `q^{-1} mod p`).
fn d_sub(params: &ConstructionParams, cr: &TorusCrossings, k: usize) -> u32 {
    let v_hat = cr.v[cr.k_s];
    let off = fract(cr.v[k] - v_hat);
    let rank = (0..params.p as usize)
        .filter(|&k2| k2 != cr.k_s)
        .filter(|&k2| fract(cr.v[k2] - v_hat) <= off)
        .count() as i64;
    ((rank * params.q_inv()).rem_euclid(params.p)) as u32
}

/// Subscript of the `b` arc at l-crossing `j` (spatial rank `i` maps to
/// `(q - i) p^{-1} mod q`).
fn b_sub(params: &ConstructionParams, cr: &TorusCrossings, j: usize) -> u32 {
    let u_hat = cr.u[cr.j_s];
    let off = fract(cr.u[j] - u_hat);
    let rank = (0..params.q as usize)
        .filter(|&j2| j2 != cr.j_s)
        .filter(|&j2| fract(cr.u[j2] - u_hat) <= off)
        .count() as i64;
    (((params.q - rank) * params.p_inv()).rem_euclid(params.q)) as u32
}

/// Build the glued P/R pattern for `(p, q)`.
pub fn generate_pattern(params: &ConstructionParams) -> Result<GluedSurface, ConstructionError> {
    let p = params.p as usize;
    let q = params.q as usize;
    let cr = torus_crossings(params);
    let orders = point_orders(params, &cr);
    let (k_s, j_s) = (cr.k_s, cr.j_s);

    // --- P side ------------------------------------------------------
    // Arc indices: 0 = a, then d arcs keyed by crossing, then b arcs.
    let mut p_labels = vec![ArcLabel::a()];
    let mut p_d_arc = vec![usize::MAX; p]; // crossing k -> arc index
    for k in 0..p {
        if k != k_s {
            p_d_arc[k] = p_labels.len();
            p_labels.push(ArcLabel::d(d_sub(params, &cr, k), Side::P));
        }
    }
    let mut p_b_arc = vec![usize::MAX; q];
    for j in 0..q {
        if j != j_s {
            p_b_arc[j] = p_labels.len();
            p_labels.push(ArcLabel::b(b_sub(params, &cr, j), Side::P));
        }
    }
    // Arc ends: a = [B1, B2]; d = [B1, B3]; b = [B2, B3].
    let p_rot_b1: Vec<(usize, u8)> = orders
        .b1
        .iter()
        .map(|&k| if k == k_s { (0, 0) } else { (p_d_arc[k], 0) })
        .collect();
    let p_rot_b2: Vec<(usize, u8)> = orders
        .b2
        .iter()
        .map(|&j| if j == j_s { (0, 1) } else { (p_b_arc[j], 0) })
        .collect();
    let p_rot_b3: Vec<(usize, u8)> = orders
        .b3
        .iter()
        .map(|&pt| match pt {
            B3Point::X(k) => (p_d_arc[k], 1),
            B3Point::L(j) => (p_b_arc[j], 1),
        })
        .collect();
    let pattern_p = PantsPattern::new(Side::P, p_labels, [p_rot_b1, p_rot_b2, p_rot_b3])?;

    // --- R side ------------------------------------------------------
    // The long arc c runs from the last B2 exit through the tube to the
    // first B1 entry; each other transit of the disk boundary outside P
    // yields a d or b arc sharing its B3 crossing with the P arc there.
    let k_next = |k: usize| (k + 1) % p;
    let j_prev = |j: usize| (j + q - 1) % q;
    let c_b2 = (j_s + 1) % q; // B2 point of c
    let c_b1 = k_next(k_s); // B1 point of c

    let mut r_labels = vec![ArcLabel::c()];
    let mut r_d_arc = vec![usize::MAX; p]; // keyed by B3 crossing k
    for k in 0..p {
        if k != k_s {
            r_d_arc[k] = r_labels.len();
            r_labels.push(ArcLabel::d(d_sub(params, &cr, k), Side::R));
        }
    }
    let mut r_b_arc = vec![usize::MAX; q]; // keyed by B2 crossing j
    for j in 0..q {
        if j != c_b2 {
            r_b_arc[j] = r_labels.len();
            r_labels.push(ArcLabel::b(b_sub(params, &cr, j_prev(j)), Side::R));
        }
    }
    // Arc ends: c = [B2, B1]; d^R = [B3 at k, B1 at k+1]; b^R = [B2 at j,
    // B3 at j-1].  R rotations are the reversed point orders.
    let r_rot_b1: Vec<(usize, u8)> = orders
        .b1
        .iter()
        .rev()
        .map(|&k| {
            if k == c_b1 {
                (0, 1)
            } else {
                // The d^R arc ending at B1 point k started at crossing k-1.
                (r_d_arc[(k + p - 1) % p], 1)
            }
        })
        .collect();
    let r_rot_b2: Vec<(usize, u8)> = orders
        .b2
        .iter()
        .rev()
        .map(|&j| if j == c_b2 { (0, 0) } else { (r_b_arc[j], 0) })
        .collect();
    let r_rot_b3: Vec<(usize, u8)> = orders
        .b3
        .iter()
        .rev()
        .map(|&pt| match pt {
            B3Point::X(k) => (r_d_arc[k], 0),
            B3Point::L(j) => (r_b_arc[(j + 1) % q], 1),
        })
        .collect();
    let pattern_r = PantsPattern::new(Side::R, r_labels, [r_rot_b1, r_rot_b2, r_rot_b3])?;

    // --- Gluing: P and R slots at the same geometric point ------------
    // Slot ids are assigned per circle in rotation order, B1 first.
    let m1 = orders.b1.len();
    let m2 = orders.b2.len();
    let m3 = orders.b3.len();
    let mut pairs = Vec::new();
    for i in 0..m1 {
        // P slot i sits at point b1[i]; R slots run in reversed order.
        pairs.push((i, m1 - 1 - i));
    }
    for i in 0..m2 {
        pairs.push((m1 + i, m1 + m2 - 1 - i));
    }
    for i in 0..m3 {
        pairs.push((m1 + m2 + i, m1 + m2 + m3 - 1 - i));
    }
    Ok(GluedSurface::new(pattern_p, pattern_r, &pairs)?)
}

// ----------------------------------------------------------------------
// Verification battery
// ----------------------------------------------------------------------

/// The seven gluing-identity families tying the P and R patterns together.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RemarkFamily {
    /// `a` meets `b_1^R` on B2 and `d_{p-1}^R` on B1.
    AEnds,
    /// `c` meets `d_1^P` on B1 and `b_{q-1}^P` on B2.
    CEnds,
    /// `b_i^R` and `b_i^P` share their B3 point.
    BAtB3,
    /// `d_i^R` and `d_i^P` share their B3 point.
    DAtB3,
    /// `b_i^P` meets `b_{i+1}^R` on B2, `i = 1..q-2`.
    BShiftB2,
    /// `d_i^R` meets `d_{i+1}^P` on B1, `i = 1..p-2`.
    DShiftB1,
    /// The hexagons of P and R share their B3 segments.
    HexagonSegments,
}

impl RemarkFamily {
    pub const ALL: [RemarkFamily; 7] = [
        RemarkFamily::AEnds,
        RemarkFamily::CEnds,
        RemarkFamily::BAtB3,
        RemarkFamily::DAtB3,
        RemarkFamily::BShiftB2,
        RemarkFamily::DShiftB1,
        RemarkFamily::HexagonSegments,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            RemarkFamily::AEnds => "a-ends",
            RemarkFamily::CEnds => "c-ends",
            RemarkFamily::BAtB3 => "b-at-b3",
            RemarkFamily::DAtB3 => "d-at-b3",
            RemarkFamily::BShiftB2 => "b-shift-b2",
            RemarkFamily::DShiftB1 => "d-shift-b1",
            RemarkFamily::HexagonSegments => "hexagon-segments",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub circle: Circle,
    pub p_label: ArcLabel,
    pub expected_r: ArcLabel,
    pub actual_r: Option<ArcLabel>,
    pub pass: bool,
    /// P slot at which the identity was evaluated (segment start for the
    /// hexagon family).
    pub p_slot: SlotId,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyResult {
    pub family: RemarkFamily,
    pub pass: bool,
    pub checks: Vec<IdentityCheck>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdentityReport {
    pub families: Vec<FamilyResult>,
}

impl IdentityReport {
    pub fn pass(&self) -> bool {
        self.families.iter().all(|f| f.pass)
    }

    pub fn family(&self, family: RemarkFamily) -> &FamilyResult {
        self.families.iter().find(|f| f.family == family).unwrap()
    }
}

/// Infer `(p, q)` from the arc multiset of the P pattern.
pub fn infer_params(g: &GluedSurface) -> Result<ConstructionParams, ConstructionError> {
    let pp = g.pattern(Side::P);
    let d = pp.arcs().iter().filter(|a| a.label.kind == ArcKind::D).count() as i64;
    let b = pp.arcs().iter().filter(|a| a.label.kind == ArcKind::B).count() as i64;
    ConstructionParams::new(d + 1, b + 1)
}

/// Check the seven identity families at slot level against the actual
/// gluing; failures are report entries, not errors.
pub fn verify_remark_identities(g: &GluedSurface) -> Result<IdentityReport, ConstructionError> {
    let params = infer_params(g)?;
    let (p, q) = (params.p, params.q);
    let pp = g.pattern(Side::P);
    let pr = g.pattern(Side::R);

    // One point-coincidence check: the P arc's end on `circle` is glued to
    // a slot carried by an R arc labeled `expected`.
    let point_check = |p_label: ArcLabel, circle: Circle, expected: ArcLabel| -> IdentityCheck {
        let (actual, slot) = match pp.find_arc(p_label) {
            Some(arc_id) => {
                let arc = &pp.arcs()[arc_id];
                let slot = arc
                    .ends
                    .iter()
                    .copied()
                    .find(|&s| pp.slots()[s].circle == circle);
                match slot {
                    Some(s) => {
                        let r_slot = g.glued_slot(Side::P, s);
                        (Some(pr.arc_label(pr.slots()[r_slot].arc)), s)
                    }
                    None => (None, usize::MAX),
                }
            }
            None => (None, usize::MAX),
        };
        IdentityCheck {
            circle,
            p_label,
            expected_r: expected,
            actual_r: actual,
            pass: actual == Some(expected),
            p_slot: slot,
        }
    };

    let b = |i: i64, side| ArcLabel::b(i.rem_euclid(q) as u32, side);
    let d = |i: i64, side| ArcLabel::d(i.rem_euclid(p) as u32, side);

    let mut families = Vec::new();
    let mut push = |family, checks: Vec<IdentityCheck>| {
        let pass = checks.iter().all(|c| c.pass);
        families.push(FamilyResult { family, pass, checks });
    };

    push(
        RemarkFamily::AEnds,
        vec![
            point_check(ArcLabel::a(), Circle::B2, b(1, Side::R)),
            point_check(ArcLabel::a(), Circle::B1, d(-1, Side::R)),
        ],
    );
    push(
        RemarkFamily::CEnds,
        vec![
            point_check(d(1, Side::P), Circle::B1, ArcLabel::c()),
            point_check(b(-1, Side::P), Circle::B2, ArcLabel::c()),
        ],
    );
    push(
        RemarkFamily::BAtB3,
        (1..q).map(|i| point_check(b(i, Side::P), Circle::B3, b(i, Side::R))).collect(),
    );
    push(
        RemarkFamily::DAtB3,
        (1..p).map(|i| point_check(d(i, Side::P), Circle::B3, d(i, Side::R))).collect(),
    );
    push(
        RemarkFamily::BShiftB2,
        (1..q - 1).map(|i| point_check(b(i, Side::P), Circle::B2, b(i + 1, Side::R))).collect(),
    );
    push(
        RemarkFamily::DShiftB1,
        (1..p - 1).map(|i| point_check(d(i + 1, Side::P), Circle::B1, d(i, Side::R))).collect(),
    );

    // Hexagon segments: H_i^P and H_i^R occupy the same stretch of B3.
    let mut hex_checks = Vec::new();
    match (hexagons(pp, &params), hexagons(pr, &params)) {
        (Ok(hp), Ok(hr)) => {
            for (reg_p, reg_r, tag) in [(&hp.h1, &hr.h1, 1u32), (&hp.h2, &hr.h2, 2u32)] {
                let seg_p = reg_p.segment_on(Circle::B3);
                let seg_r = reg_r.segment_on(Circle::B3);
                let pass = match (seg_p, seg_r) {
                    (Some((from, to)), Some(r_seg)) => {
                        // Opposite orientations: P segment (from, to) is the
                        // R segment (g(to), g(from)).
                        r_seg == (g.glued_slot(Side::P, to), g.glued_slot(Side::P, from))
                    }
                    _ => false,
                };
                hex_checks.push(IdentityCheck {
                    circle: Circle::B3,
                    p_label: ArcLabel::d(tag, Side::P),
                    expected_r: ArcLabel::d(tag, Side::R),
                    actual_r: None,
                    pass,
                    p_slot: seg_p.map(|s| s.0).unwrap_or(usize::MAX),
                });
            }
        }
        _ => hex_checks.push(IdentityCheck {
            circle: Circle::B3,
            p_label: ArcLabel::a(),
            expected_r: ArcLabel::c(),
            actual_r: None,
            pass: false,
            p_slot: usize::MAX,
        }),
    }
    push(RemarkFamily::HexagonSegments, hex_checks);

    Ok(IdentityReport { families })
}

/// The disk boundary closes up into a single curve of length `2(p+q-1)`.
pub fn verify_single_curve(g: &GluedSurface) -> bool {
    let curves = g.trace_curves();
    let arcs = g.pattern(Side::P).arcs().len() + g.pattern(Side::R).arcs().len();
    curves.len() == 1 && curves[0].len() == arcs
}

/// Arc-endpoint slots per boundary circle, both sides counted.
pub fn endpoint_counts(g: &GluedSurface) -> [usize; 3] {
    let mut counts = [0usize; 3];
    for side in [Side::P, Side::R] {
        for circle in Circle::ALL {
            counts[circle.index()] += g.pattern(side).rotation(circle).len();
        }
    }
    counts
}

/// The two hexagons of a pattern, identified by their forced arc contents.
#[derive(Debug, Clone)]
pub struct HexagonPair {
    pub h1: Region,
    pub h2: Region,
}

pub fn hexagons(
    pattern: &PantsPattern,
    params: &ConstructionParams,
) -> Result<HexagonPair, ConstructionError> {
    let census = pattern.hexagon_census()?;
    let side = pattern.side();
    let (d1, b1) = params.h1_labels(side);
    let (d2, b2) = params.h2_labels(side);
    let find = |dl: ArcLabel, bl: ArcLabel| {
        census
            .hexagons
            .iter()
            .find(|h| h.contains_label(dl) && h.contains_label(bl))
            .cloned()
            .ok_or(ConstructionError::HexagonContents(dl, bl))
    };
    Ok(HexagonPair { h1: find(d1, b1)?, h2: find(d2, b2)? })
}

/// Outcome of the full consistency battery for one parameter pair.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BatteryReport {
    pub p: i64,
    pub q: i64,
    pub identities_pass: bool,
    pub single_curve: bool,
    pub curve_length: usize,
    pub endpoint_counts: [usize; 3],
    pub endpoint_counts_expected: [usize; 3],
    pub census_p: Option<(usize, usize)>,
    pub census_r: Option<(usize, usize)>,
    pub hexagon_contents_ok: bool,
    pub pass: bool,
}

/// Run the whole battery: identities, single curve, endpoint counts,
/// census, hexagon contents.
pub fn run_battery(
    params: &ConstructionParams,
    g: &GluedSurface,
) -> Result<BatteryReport, ConstructionError> {
    let (p, q) = (params.p, params.q);
    let identities = verify_remark_identities(g)?;
    let curves = g.trace_curves();
    let single_curve = verify_single_curve(g);
    let counts = endpoint_counts(g);
    let expected = [2 * p as usize, 2 * q as usize, 2 * (p + q - 2) as usize];

    let census = |side: Side| -> Option<(usize, usize)> {
        g.pattern(side)
            .hexagon_census()
            .ok()
            .map(|c| (c.hexagons.len(), c.rectangles))
    };
    let census_p = census(Side::P);
    let census_r = census(Side::R);
    let hex_ok = hexagons(g.pattern(Side::P), params).is_ok()
        && hexagons(g.pattern(Side::R), params).is_ok();

    let expected_census = (2usize, (p + q - 4) as usize);
    let pass = identities.pass()
        && single_curve
        && counts == expected
        && census_p == Some(expected_census)
        && census_r == Some(expected_census)
        && hex_ok;
    Ok(BatteryReport {
        p,
        q,
        identities_pass: identities.pass(),
        single_curve,
        curve_length: curves.first().map(|c| c.len()).unwrap_or(0),
        endpoint_counts: counts,
        endpoint_counts_expected: expected,
        census_p,
        census_r,
        hexagon_contents_ok: hex_ok,
        pass,
    })
}

/// Generate and fully verify a pattern; errors if any battery item fails.
pub fn verified_pattern(params: &ConstructionParams) -> Result<GluedSurface, ConstructionError> {
    let g = generate_pattern(params)?;
    let report = run_battery(params, &g)?;
    if !report.pass {
        return Err(ConstructionError::Battery(format!("{report:?}")));
    }
    Ok(g)
}

/// All coprime pairs `1 < p < q <= bound`.
pub fn coprime_pairs(bound: i64) -> Vec<ConstructionParams> {
    let mut out = Vec::new();
    for p in 2..=bound {
        for q in (p + 1)..=bound {
            if gcd(p, q) == 1 {
                out.push(ConstructionParams::new(p, q).unwrap());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pants::cycles_equal;

    fn params(p: i64, q: i64) -> ConstructionParams {
        ConstructionParams::new(p, q).unwrap()
    }

    #[test]
    fn rejects_bad_params() {
        assert!(matches!(
            ConstructionParams::new(2, 4),
            Err(ConstructionError::NotCoprime { .. })
        ));
        assert!(matches!(
            ConstructionParams::new(3, 2),
            Err(ConstructionError::OutOfRange { .. })
        ));
        assert!(matches!(
            ConstructionParams::new(1, 2),
            Err(ConstructionError::OutOfRange { .. })
        ));
    }

    #[test]
    fn arc_sets_for_2_3() {
        let g = generate_pattern(&params(2, 3)).unwrap();
        let mut p_labels: Vec<String> =
            g.pattern(Side::P).arcs().iter().map(|a| a.label.to_string()).collect();
        p_labels.sort();
        assert_eq!(p_labels, ["a^P", "b1^P", "b2^P", "d1^P"]);
        let mut r_labels: Vec<String> =
            g.pattern(Side::R).arcs().iter().map(|a| a.label.to_string()).collect();
        r_labels.sort();
        assert_eq!(r_labels, ["b1^R", "b2^R", "c^R", "d1^R"]);
    }

    #[test]
    fn trace_2_3_is_the_eight_cycle() {
        // Derived by hand from the seven gluing identities.
        let g = generate_pattern(&params(2, 3)).unwrap();
        let curves = g.trace_curves();
        assert_eq!(curves.len(), 1);
        let expected = vec![
            ArcLabel::a(),
            ArcLabel::b(1, Side::R),
            ArcLabel::b(1, Side::P),
            ArcLabel::b(2, Side::R),
            ArcLabel::b(2, Side::P),
            ArcLabel::c(),
            ArcLabel::d(1, Side::P),
            ArcLabel::d(1, Side::R),
        ];
        assert!(
            cycles_equal(&curves[0], &expected),
            "got {:?}",
            curves[0].iter().map(|l| l.to_string()).collect::<Vec<_>>()
        );
    }

    #[test]
    fn single_curve_lengths_in_sweep() {
        for pr in coprime_pairs(12) {
            let g = generate_pattern(&pr).unwrap();
            let curves = g.trace_curves();
            assert_eq!(curves.len(), 1, "({}, {})", pr.p(), pr.q());
            assert_eq!(
                curves[0].len() as i64,
                2 * (pr.p() + pr.q() - 1),
                "({}, {})",
                pr.p(),
                pr.q()
            );
        }
    }

    #[test]
    fn endpoint_counts_examples() {
        let g = generate_pattern(&params(2, 3)).unwrap();
        assert_eq!(endpoint_counts(&g), [4, 6, 6]);
        let g = generate_pattern(&params(3, 4)).unwrap();
        assert_eq!(endpoint_counts(&g), [6, 8, 10]);
        assert_eq!(g.pattern(Side::P).arcs().len(), 6);
        assert_eq!(g.pattern(Side::R).arcs().len(), 6);
    }

    #[test]
    fn endpoint_handshake_identity() {
        for pr in coprime_pairs(10) {
            let g = generate_pattern(&pr).unwrap();
            let counts = endpoint_counts(&g);
            let arcs = g.pattern(Side::P).arcs().len() + g.pattern(Side::R).arcs().len();
            assert_eq!(counts.iter().sum::<usize>(), 2 * arcs);
        }
    }

    #[test]
    fn census_2_3() {
        let g = generate_pattern(&params(2, 3)).unwrap();
        let census = g.pattern(Side::P).hexagon_census().unwrap();
        assert_eq!(census.rectangles, 1);
        assert_eq!(census.hexagons.len(), 2);
        let census_r = g.pattern(Side::R).hexagon_census().unwrap();
        assert_eq!(census_r.rectangles, 1);
        assert_eq!(census_r.hexagons.len(), 2);
    }

    #[test]
    fn census_3_4() {
        let g = generate_pattern(&params(3, 4)).unwrap();
        let census = g.pattern(Side::P).hexagon_census().unwrap();
        assert_eq!(census.rectangles, 3);
        assert_eq!(census.hexagons.len(), 2);
    }

    #[test]
    fn hexagon_contents_2_3() {
        // q^{-1} = 1 mod 2, p^{-1} = 2 mod 3: H1 contains d1 and b2.
        let pr = params(2, 3);
        let g = generate_pattern(&pr).unwrap();
        let hp = hexagons(g.pattern(Side::P), &pr).unwrap();
        assert!(hp.h1.contains_label(ArcLabel::d(1, Side::P)));
        assert!(hp.h1.contains_label(ArcLabel::b(2, Side::P)));
        assert!(hp.h2.contains_label(ArcLabel::b(1, Side::P)));
    }

    #[test]
    fn d_arc_spatial_subscripts_3_5() {
        // q^{-1} = 2 mod 3: walking B3 from the cut, the d slots carry
        // subscripts 2 then 1.
        let pr = params(3, 5);
        let g = generate_pattern(&pr).unwrap();
        let pp = g.pattern(Side::P);
        let d_labels: Vec<u32> = pp
            .rotation(Circle::B3)
            .iter()
            .map(|&s| pp.arc_label(pp.slots()[s].arc))
            .filter(|l| l.kind == ArcKind::D)
            .map(|l| l.sub)
            .collect();
        assert_eq!(d_labels, vec![2, 1]);
    }

    #[test]
    fn identities_pass_2_3() {
        let g = generate_pattern(&params(2, 3)).unwrap();
        let report = verify_remark_identities(&g).unwrap();
        for fam in &report.families {
            assert!(fam.pass, "family {:?}: {:#?}", fam.family, fam.checks);
        }
    }

    #[test]
    fn full_battery_sweep_to_12() {
        for pr in coprime_pairs(12) {
            let g = generate_pattern(&pr).unwrap();
            let report = run_battery(&pr, &g).unwrap();
            assert!(report.pass, "({}, {}): {report:?}", pr.p(), pr.q());
        }
    }

    #[test]
    fn corrupted_gluing_flags_exactly_touched_families() {
        let pr = params(3, 4);
        let mut g = generate_pattern(&pr).unwrap();
        let clean = verify_remark_identities(&g).unwrap();
        assert!(clean.pass());

        // Swap the gluing at two B3 points.
        let pp = g.pattern(Side::P);
        let b3 = pp.rotation(Circle::B3);
        let (sa, sb) = (b3[0], b3[1]);
        g.swap_gluing(sa, sb);

        let report = verify_remark_identities(&g).unwrap();
        assert!(!report.pass());
        // Exactly the families with a check evaluated at a swapped slot (or
        // at a hexagon segment, whose endpoints may include them) may fail.
        for fam in &report.families {
            if fam.pass {
                continue;
            }
            if fam.family == RemarkFamily::HexagonSegments {
                continue; // segment endpoints legitimately touched
            }
            for check in fam.checks.iter().filter(|c| !c.pass) {
                assert!(
                    check.p_slot == sa || check.p_slot == sb,
                    "family {:?} failed at untouched slot {}",
                    fam.family,
                    check.p_slot
                );
            }
        }
        // And the touched point identities do fail.
        assert!(
            !report.family(RemarkFamily::BAtB3).pass
                || !report.family(RemarkFamily::DAtB3).pass
        );
    }

    #[test]
    fn swap_symmetry_shadow() {
        // Swapping the roles of the two parallel families mirrors the
        // pattern: the (p, q) pattern has as many b arcs as the (q', p')
        // normalization dictates; spot-check the region side multisets agree
        // under exchanging b and d counts for (2, 3) vs the ladder counts.
        let g = generate_pattern(&params(2, 3)).unwrap();
        let d_count = g
            .pattern(Side::P)
            .arcs()
            .iter()
            .filter(|a| a.label.kind == ArcKind::D)
            .count();
        let b_count = g
            .pattern(Side::P)
            .arcs()
            .iter()
            .filter(|a| a.label.kind == ArcKind::B)
            .count();
        assert_eq!((d_count, b_count), (1, 2));
    }
}
