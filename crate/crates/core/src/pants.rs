//! Combinatorial 3-punctured spheres carrying arc systems.
//!
//! A [`PantsPattern`] is a pants (3-punctured sphere) together with a set of
//! disjoint properly embedded arcs, recorded purely combinatorially: each
//! boundary circle carries a cyclic order of arc-endpoint slots (a rotation
//! system).  Faces of the complement are recovered by boundary traversal, so
//! no geometry is needed.  Two patterns glued along their boundary circles
//! form a [`GluedSurface`] (a closed genus-2 surface here), on which the arcs
//! close up into curves.
//!
//! Rotation orders are stored in the orientation induced by an orientation
//! of the pants; the gluing of two pants is slot-order-reversing on each
//! circle, matching an orientation-reversing identification of the two
//! boundaries inside a closed orientable surface.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    P,
    R,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::P => Side::R,
            Side::R => Side::P,
        }
    }
}

/// One of the three boundary circles of a pants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Circle {
    B1,
    B2,
    B3,
}

impl Circle {
    pub const ALL: [Circle; 3] = [Circle::B1, Circle::B2, Circle::B3];

    pub fn index(self) -> usize {
        match self {
            Circle::B1 => 0,
            Circle::B2 => 1,
            Circle::B3 => 2,
        }
    }
}

impl std::fmt::Display for Circle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self)
    }
}

/// Arc kinds: `a` joins B1-B2 on the P side, `c` joins B1-B2 on the R side,
/// `d_i` joins B1-B3, `b_i` joins B2-B3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ArcKind {
    A,
    B,
    C,
    D,
}

/// A labeled arc class: kind, subscript (0 for `a` and `c`), and the pants
/// side it lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArcLabel {
    pub kind: ArcKind,
    pub sub: u32,
    pub side: Side,
}

impl ArcLabel {
    pub fn a() -> Self {
        ArcLabel { kind: ArcKind::A, sub: 0, side: Side::P }
    }

    pub fn c() -> Self {
        ArcLabel { kind: ArcKind::C, sub: 0, side: Side::R }
    }

    pub fn b(sub: u32, side: Side) -> Self {
        ArcLabel { kind: ArcKind::B, sub, side }
    }

    pub fn d(sub: u32, side: Side) -> Self {
        ArcLabel { kind: ArcKind::D, sub, side }
    }
}

impl std::fmt::Display for ArcLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let side = match self.side {
            Side::P => "P",
            Side::R => "R",
        };
        match self.kind {
            ArcKind::A => write!(f, "a^{side}"),
            ArcKind::C => write!(f, "c^{side}"),
            ArcKind::B => write!(f, "b{}^{side}", self.sub),
            ArcKind::D => write!(f, "d{}^{side}", self.sub),
        }
    }
}

pub type SlotId = usize;
pub type ArcId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Slot {
    pub circle: Circle,
    pub arc: ArcId,
    /// Which end of the arc sits here (0 or 1).
    pub end: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arc {
    pub label: ArcLabel,
    pub ends: [SlotId; 2],
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PantsError {
    #[error("arc {arc} end {end} placed {count} times in the rotation system (expected once)")]
    BadEndPlacement { arc: ArcId, end: u8, count: usize },
    #[error("arc {arc} has both endpoints on circle {circle}; arcs must join distinct circles")]
    SameCircleArc { arc: ArcId, circle: Circle },
    #[error("non-disk region detected: {walks} boundary walks for {arcs} arcs (expected {expected})")]
    NonDiskRegion { walks: usize, arcs: usize, expected: usize },
    #[error("region census mismatch: expected 2 hexagons and rectangles, found side counts {found:?}")]
    CensusMismatch { found: Vec<usize> },
    #[error("dangling slot: {side:?} slot {slot} has no gluing partner")]
    DanglingSlot { side: Side, slot: SlotId },
    #[error("gluing pairs slots on different circles: {p_slot} on {p_circle} vs {r_slot} on {r_circle}")]
    CircleMismatch { p_slot: SlotId, p_circle: Circle, r_slot: SlotId, r_circle: Circle },
    #[error("gluing on circle {0} is not orientation-reversing with the rotation systems")]
    NotOrientationReversing(Circle),
    #[error("slot {slot} out of range on side {side:?}")]
    SlotOutOfRange { side: Side, slot: SlotId },
}

/// A pants with a rotation system of arc-endpoint slots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PantsPattern {
    side: Side,
    arcs: Vec<Arc>,
    slots: Vec<Slot>,
    rotations: [Vec<SlotId>; 3],
}

impl PantsPattern {
    /// Build a pattern from arc labels and, per circle, the cyclic order of
    /// arc endpoints `(arc index, end)` around that circle.
    pub fn new(
        side: Side,
        labels: Vec<ArcLabel>,
        rotation_ends: [Vec<(ArcId, u8)>; 3],
    ) -> Result<Self, PantsError> {
        let mut slots = Vec::new();
        let mut rotations: [Vec<SlotId>; 3] = Default::default();
        let mut placed = vec![[0usize; 2]; labels.len()];
        for circle in Circle::ALL {
            for &(arc, end) in &rotation_ends[circle.index()] {
                let id = slots.len();
                slots.push(Slot { circle, arc, end });
                rotations[circle.index()].push(id);
                if arc >= labels.len() || end > 1 {
                    return Err(PantsError::BadEndPlacement { arc, end, count: 0 });
                }
                placed[arc][end as usize] += 1;
            }
        }
        for (arc, ends) in placed.iter().enumerate() {
            for end in 0..2 {
                if ends[end] != 1 {
                    return Err(PantsError::BadEndPlacement {
                        arc,
                        end: end as u8,
                        count: ends[end],
                    });
                }
            }
        }
        let arcs: Vec<Arc> = labels
            .iter()
            .enumerate()
            .map(|(i, &label)| {
                let mut ends = [0; 2];
                for (sid, s) in slots.iter().enumerate() {
                    if s.arc == i {
                        ends[s.end as usize] = sid;
                    }
                }
                Arc { label, ends }
            })
            .collect();
        for (i, arc) in arcs.iter().enumerate() {
            let c0 = slots[arc.ends[0]].circle;
            let c1 = slots[arc.ends[1]].circle;
            if c0 == c1 {
                return Err(PantsError::SameCircleArc { arc: i, circle: c0 });
            }
        }
        Ok(PantsPattern { side, arcs, slots, rotations })
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn rotation(&self, circle: Circle) -> &[SlotId] {
        &self.rotations[circle.index()]
    }

    pub fn arc_label(&self, arc: ArcId) -> ArcLabel {
        self.arcs[arc].label
    }

    /// The slot at the other end of the arc occupying `slot`.
    pub fn other_end(&self, slot: SlotId) -> SlotId {
        let s = self.slots[slot];
        let arc = &self.arcs[s.arc];
        arc.ends[1 - s.end as usize]
    }

    pub fn find_arc(&self, label: ArcLabel) -> Option<ArcId> {
        self.arcs.iter().position(|a| a.label == label)
    }

    /// Position of `slot` in its circle's rotation.
    fn rotation_index(&self, slot: SlotId) -> usize {
        let circle = self.slots[slot].circle;
        self.rotation(circle).iter().position(|&s| s == slot).unwrap()
    }

    /// Faces of the pants cut along the arc system.
    ///
    /// Each face is traced with the surface on its left: a boundary segment
    /// is followed to its end slot, the arc there is crossed, and the walk
    /// continues with the segment starting at the far slot.  The complement
    /// consists of disks exactly when the number of such walks is
    /// `arcs - 1`; anything else is reported as a non-disk region.
    pub fn region_decomposition(&self) -> Result<Vec<Region>, PantsError> {
        if self.arcs.is_empty() {
            // The whole pants is the single region; its boundary is the
            // three full circles.
            return Ok(vec![Region {
                sides: Circle::ALL
                    .iter()
                    .map(|&c| RegionSide::FullCircle(c))
                    .collect(),
            }]);
        }
        let mut slotless = 0;
        for circle in Circle::ALL {
            if self.rotation(circle).is_empty() {
                slotless += 1;
            }
        }
        // A segment is identified by (circle, index of its starting slot).
        let mut used = [const { Vec::new() }; 3];
        for c in 0..3 {
            used[c] = vec![false; self.rotations[c].len()];
        }
        let mut regions = Vec::new();
        for circle in Circle::ALL {
            for start in 0..self.rotation(circle).len() {
                if used[circle.index()][start] {
                    continue;
                }
                let mut sides = Vec::new();
                let (mut c, mut i) = (circle, start);
                loop {
                    used[c.index()][i] = true;
                    let rot = self.rotation(c);
                    let from = rot[i];
                    let to = rot[(i + 1) % rot.len()];
                    sides.push(RegionSide::Segment { circle: c, from, to });
                    let far = self.other_end(to);
                    sides.push(RegionSide::Arc {
                        arc: self.slots[to].arc,
                        label: self.arcs[self.slots[to].arc].label,
                        from: to,
                        to: far,
                    });
                    c = self.slots[far].circle;
                    i = self.rotation_index(far);
                    if c == circle && i == start {
                        break;
                    }
                }
                regions.push(Region::canonical(sides));
            }
        }
        let expected = self.arcs.len() - 1;
        if regions.len() + slotless != expected {
            return Err(PantsError::NonDiskRegion {
                walks: regions.len() + slotless,
                arcs: self.arcs.len(),
                expected,
            });
        }
        regions.sort();
        Ok(regions)
    }

    /// Region census: exactly two hexagons, everything else rectangles.
    pub fn hexagon_census(&self) -> Result<Census, PantsError> {
        let regions = self.region_decomposition()?;
        let hexagons: Vec<Region> =
            regions.iter().filter(|r| r.side_count() == 6).cloned().collect();
        let rectangles = regions.iter().filter(|r| r.side_count() == 4).count();
        if hexagons.len() != 2 || hexagons.len() + rectangles != regions.len() {
            return Err(PantsError::CensusMismatch {
                found: regions.iter().map(|r| r.side_count()).collect(),
            });
        }
        Ok(Census { hexagons, rectangles })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RegionSide {
    /// Piece of a boundary circle between two adjacent slots.
    Segment { circle: Circle, from: SlotId, to: SlotId },
    /// One side of an arc, traversed `from -> to`.
    Arc { arc: ArcId, label: ArcLabel, from: SlotId, to: SlotId },
    /// A slotless boundary circle (empty pattern only).
    FullCircle(Circle),
}

/// A face of the arc-system complement, as a cyclic boundary word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Region {
    sides: Vec<RegionSide>,
}

impl Region {
    /// Canonicalize by the lexicographically minimal rotation of the word.
    fn canonical(sides: Vec<RegionSide>) -> Self {
        let n = sides.len();
        let best = (0..n)
            .min_by(|&i, &j| {
                let a = sides[i..].iter().chain(&sides[..i]);
                let b = sides[j..].iter().chain(&sides[..j]);
                a.cmp(b)
            })
            .unwrap_or(0);
        let mut rotated = sides[best..].to_vec();
        rotated.extend_from_slice(&sides[..best]);
        Region { sides: rotated }
    }

    pub fn sides(&self) -> &[RegionSide] {
        &self.sides
    }

    pub fn side_count(&self) -> usize {
        self.sides.len()
    }

    pub fn arc_labels(&self) -> Vec<ArcLabel> {
        self.sides
            .iter()
            .filter_map(|s| match s {
                RegionSide::Arc { label, .. } => Some(*label),
                _ => None,
            })
            .collect()
    }

    pub fn arc_ids(&self) -> Vec<ArcId> {
        self.sides
            .iter()
            .filter_map(|s| match s {
                RegionSide::Arc { arc, .. } => Some(*arc),
                _ => None,
            })
            .collect()
    }

    /// The segment this region has on `circle`, if any, as `(from, to)` in
    /// rotation order.
    pub fn segment_on(&self, circle: Circle) -> Option<(SlotId, SlotId)> {
        self.sides.iter().find_map(|s| match s {
            RegionSide::Segment { circle: c, from, to } if *c == circle => Some((*from, *to)),
            _ => None,
        })
    }

    pub fn contains_label(&self, label: ArcLabel) -> bool {
        self.arc_labels().contains(&label)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub hexagons: Vec<Region>,
    pub rectangles: usize,
}

/// Two pants glued along their three boundary circles.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GluedSurface {
    pattern_p: PantsPattern,
    pattern_r: PantsPattern,
    /// For each P slot, the R slot at the same point of the glued circle.
    p_to_r: Vec<SlotId>,
    r_to_p: Vec<SlotId>,
}

impl GluedSurface {
    pub fn new(
        pattern_p: PantsPattern,
        pattern_r: PantsPattern,
        pairs: &[(SlotId, SlotId)],
    ) -> Result<Self, PantsError> {
        let np = pattern_p.slots().len();
        let nr = pattern_r.slots().len();
        let mut p_to_r = vec![usize::MAX; np];
        let mut r_to_p = vec![usize::MAX; nr];
        for &(ps, rs) in pairs {
            if ps >= np {
                return Err(PantsError::SlotOutOfRange { side: Side::P, slot: ps });
            }
            if rs >= nr {
                return Err(PantsError::SlotOutOfRange { side: Side::R, slot: rs });
            }
            p_to_r[ps] = rs;
            r_to_p[rs] = ps;
        }
        if let Some(slot) = p_to_r.iter().position(|&r| r == usize::MAX) {
            return Err(PantsError::DanglingSlot { side: Side::P, slot });
        }
        if let Some(slot) = r_to_p.iter().position(|&p| p == usize::MAX) {
            return Err(PantsError::DanglingSlot { side: Side::R, slot });
        }
        for (ps, &rs) in p_to_r.iter().enumerate() {
            let pc = pattern_p.slots()[ps].circle;
            let rc = pattern_r.slots()[rs].circle;
            if pc != rc {
                return Err(PantsError::CircleMismatch {
                    p_slot: ps,
                    p_circle: pc,
                    r_slot: rs,
                    r_circle: rc,
                });
            }
        }
        let g = GluedSurface { pattern_p, pattern_r, p_to_r, r_to_p };
        for circle in Circle::ALL {
            if !g.orientation_reversing_on(circle) {
                return Err(PantsError::NotOrientationReversing(circle));
            }
        }
        Ok(g)
    }

    /// The P rotation, pushed through the gluing, must be a cyclic rotation
    /// of the reversed R rotation.
    fn orientation_reversing_on(&self, circle: Circle) -> bool {
        let p_rot: Vec<SlotId> = self
            .pattern_p
            .rotation(circle)
            .iter()
            .map(|&s| self.p_to_r[s])
            .collect();
        let mut r_rot: Vec<SlotId> = self.pattern_r.rotation(circle).to_vec();
        r_rot.reverse();
        let n = p_rot.len();
        if n != r_rot.len() {
            return false;
        }
        if n == 0 {
            return true;
        }
        (0..n).any(|shift| (0..n).all(|i| p_rot[(i + shift) % n] == r_rot[i]))
    }

    pub fn pattern(&self, side: Side) -> &PantsPattern {
        match side {
            Side::P => &self.pattern_p,
            Side::R => &self.pattern_r,
        }
    }

    pub fn glued_slot(&self, side: Side, slot: SlotId) -> SlotId {
        match side {
            Side::P => self.p_to_r[slot],
            Side::R => self.r_to_p[slot],
        }
    }

    /// Corrupt the gluing by swapping the partners of two P slots.
    /// Used for fault-injection tests of the verification battery.
    pub fn swap_gluing(&mut self, p_slot_a: SlotId, p_slot_b: SlotId) {
        let ra = self.p_to_r[p_slot_a];
        let rb = self.p_to_r[p_slot_b];
        self.p_to_r[p_slot_a] = rb;
        self.p_to_r[p_slot_b] = ra;
        self.r_to_p[ra] = p_slot_b;
        self.r_to_p[rb] = p_slot_a;
    }

    /// Close up the arcs across the gluing into curves.  Every arc appears
    /// in exactly one curve; each curve is a cyclic sequence of arc labels.
    pub fn trace_curves(&self) -> Vec<Vec<ArcLabel>> {
        let mut visited_p = vec![false; self.pattern_p.arcs().len()];
        let mut visited_r = vec![false; self.pattern_r.arcs().len()];
        let mut curves = Vec::new();
        for start_arc in 0..self.pattern_p.arcs().len() {
            if visited_p[start_arc] {
                continue;
            }
            let mut curve = Vec::new();
            let mut side = Side::P;
            let mut arc = start_arc;
            // Enter the starting arc at its end 0.
            let mut entry_slot = self.pattern_p.arcs()[start_arc].ends[0];
            loop {
                match side {
                    Side::P => visited_p[arc] = true,
                    Side::R => visited_r[arc] = true,
                }
                let pattern = self.pattern(side);
                curve.push(pattern.arc_label(arc));
                let exit = pattern.other_end(entry_slot);
                let glued = self.glued_slot(side, exit);
                side = side.other();
                entry_slot = glued;
                arc = self.pattern(side).slots()[glued].arc;
                if side == Side::P && arc == start_arc {
                    break;
                }
            }
            curves.push(curve);
        }
        // Arcs of R not reached from any P arc (possible in degenerate
        // hand-built patterns) would indicate a non-total gluing, which the
        // constructor already rejects; every R arc is hit because every R
        // slot is glued to a P slot.
        debug_assert!(visited_r.iter().all(|&v| v));
        curves
    }
}

/// Compare two label cycles up to rotation and reversal.
pub fn cycles_equal(a: &[ArcLabel], b: &[ArcLabel]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let n = a.len();
    if n == 0 {
        return true;
    }
    let fwd = (0..n).any(|s| (0..n).all(|i| a[(i + s) % n] == b[i]));
    let rev: Vec<ArcLabel> = b.iter().rev().cloned().collect();
    fwd || (0..n).any(|s| (0..n).all(|i| a[(i + s) % n] == rev[i]))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Pants with two parallel arcs joining B1 and B2 such that the
    /// complement is a rectangle plus an annulus around B3: rejected as
    /// non-disk.
    #[test]
    fn parallel_arcs_complement_is_not_all_disks() {
        let labels = vec![
            ArcLabel { kind: ArcKind::D, sub: 1, side: Side::P },
            ArcLabel { kind: ArcKind::D, sub: 2, side: Side::P },
        ];
        let pattern = PantsPattern::new(
            Side::P,
            labels,
            [vec![(0, 0), (1, 0)], vec![(1, 1), (0, 1)], vec![]],
        )
        .unwrap();
        assert!(matches!(
            pattern.region_decomposition(),
            Err(PantsError::NonDiskRegion { .. })
        ));
    }

    #[test]
    fn empty_pattern_has_single_region_with_three_circles() {
        let pattern = PantsPattern::new(Side::P, vec![], [vec![], vec![], vec![]]).unwrap();
        let regions = pattern.region_decomposition().unwrap();
        assert_eq!(regions.len(), 1);
        assert_eq!(regions[0].side_count(), 3);
        assert!(regions[0]
            .sides()
            .iter()
            .all(|s| matches!(s, RegionSide::FullCircle(_))));
    }

    #[test]
    fn same_circle_arc_rejected() {
        let labels = vec![ArcLabel { kind: ArcKind::D, sub: 1, side: Side::P }];
        let err = PantsPattern::new(Side::P, labels, [vec![(0, 0), (0, 1)], vec![], vec![]]);
        assert!(matches!(err, Err(PantsError::SameCircleArc { .. })));
    }

    #[test]
    fn two_parallel_arcs_glued_to_themselves_trace_two_bigons() {
        // P and R each carry two arcs joining B1 and B2; each P arc closes
        // up with one R arc into a curve of length 2.
        let mk = |side: Side, kind: ArcKind| {
            PantsPattern::new(
                side,
                vec![
                    ArcLabel { kind, sub: 1, side },
                    ArcLabel { kind, sub: 2, side },
                ],
                [vec![(0, 0), (1, 0)], vec![(0, 1), (1, 1)], vec![]],
            )
            .unwrap()
        };
        let p = mk(Side::P, ArcKind::D);
        let r = mk(Side::R, ArcKind::D);
        // P rotation on B1 is [slot(arc0), slot(arc1)]; the reversed R
        // rotation pairs arc0 with arc1 shifted; pair same-index points so
        // the gluing reverses orientation: p[i] -> r[n-1-i] works.
        // B1: p slots 0,1 ; r slots 0,1.  B2: p slots 2,3 ; r slots 2,3.
        let pairs = vec![(0, 1), (1, 0), (2, 3), (3, 2)];
        let g = GluedSurface::new(p, r, &pairs).unwrap();
        let curves = g.trace_curves();
        assert_eq!(curves.len(), 2);
        assert!(curves.iter().all(|c| c.len() == 2));
    }

    #[test]
    fn dangling_slot_reported() {
        let mk = |side: Side| {
            PantsPattern::new(
                side,
                vec![ArcLabel { kind: ArcKind::D, sub: 1, side }],
                [vec![(0, 0)], vec![(0, 1)], vec![]],
            )
            .unwrap()
        };
        let err = GluedSurface::new(mk(Side::P), mk(Side::R), &[(0, 0)]);
        assert_eq!(err.unwrap_err(), PantsError::DanglingSlot { side: Side::P, slot: 1 });
    }

    #[test]
    fn cycles_equal_up_to_rotation_and_reversal() {
        let l = |sub| ArcLabel { kind: ArcKind::B, sub, side: Side::P };
        let a = vec![l(1), l(2), l(3)];
        let b = vec![l(3), l(1), l(2)];
        let c = vec![l(3), l(2), l(1)];
        let d = vec![l(2), l(3), l(1)];
        assert!(cycles_equal(&a, &b));
        assert!(cycles_equal(&a, &c));
        assert!(cycles_equal(&a, &d));
        assert!(!cycles_equal(&a, &[l(1), l(3)]));
    }
}
