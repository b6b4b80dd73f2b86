//! The refutation predicates, one per structural constraint a genuine
//! boundary-compressing disk would have to satisfy.  Each returns a
//! verdict with a witness on failure; the search treats any failure as a
//! refutation of the candidate.

use std::collections::BTreeSet;

use crate::pants::{ArcLabel, Side};

use super::model::{
    DiskCandidate, PointHost, PredicateId, PredicateVerdict, VerdictKind,
};
use super::surface::SurfaceData;

/// An intersection chord is admissible only if it joins two distinct
/// R-side components with at least two P crossings on each side of the
/// disk it splits off, or a P-side component with a nonadjacent R-side
/// one.
pub fn check_arcs_in_e(sd: &SurfaceData, x: ArcLabel, y: ArcLabel) -> PredicateVerdict {
    let id = PredicateId::ArcsInE;
    let (Some(i), Some(j)) = (sd.pos(x), sd.pos(y)) else {
        return PredicateVerdict::fail(id, format!("label {x} or {y} not on the disk boundary"));
    };
    match (x.side, y.side) {
        (Side::R, Side::R) => {
            if x == y {
                return PredicateVerdict::fail(id, format!("both endpoints on {x}"));
            }
            let fwd = sd.p_between(i, j);
            let back = sd.p_between(j, i);
            if fwd >= 2 && back >= 2 {
                PredicateVerdict::pass(id)
            } else {
                PredicateVerdict::fail(
                    id,
                    format!("chord ({x}, {y}) cuts off a side with {} P arcs", fwd.min(back)),
                )
            }
        }
        (Side::P, Side::P) => {
            PredicateVerdict::fail(id, format!("chord ({x}, {y}) joins two P components"))
        }
        _ => {
            if sd.labels_adjacent(x, y) {
                PredicateVerdict::fail(id, format!("chord ({x}, {y}) joins adjacent components"))
            } else {
                PredicateVerdict::pass(id)
            }
        }
    }
}

/// No chord may have both endpoints in the distinguished subarc, nor both
/// in one circle-parallel component.
pub fn check_epsilon_self(cand: &DiskCandidate) -> PredicateVerdict {
    let id = PredicateId::EpsilonSelf;
    let points = cand.points();
    for &(a, b) in &cand.chords {
        let (ha, hb) = (points[a].host, points[b].host);
        if ha.in_epsilon() && hb.in_epsilon() {
            return PredicateVerdict::fail(id, format!("chord ({a}, {b}) inside epsilon"));
        }
        if let (PointHost::Delta(i), PointHost::Delta(j)) = (ha, hb) {
            if i == j {
                return PredicateVerdict::fail(id, format!("chord ({a}, {b}) inside component {i}"));
            }
        }
    }
    PredicateVerdict::pass(id)
}

/// All components must be parallel to the same circle, never the third
/// one, with one label sequence up to reversal.
pub fn check_label_sequence(cand: &DiskCandidate) -> PredicateVerdict {
    let id = PredicateId::LabelSequence;
    if cand.deltas.is_empty() {
        return PredicateVerdict::pass(id);
    }
    for (i, d) in cand.deltas.iter().enumerate() {
        if d.parallel_to == crate::pants::Circle::B3 {
            return PredicateVerdict::fail(id, format!("component {i} parallel to the third circle"));
        }
    }
    let first = &cand.deltas[0];
    for (i, d) in cand.deltas.iter().enumerate().skip(1) {
        let rev: Vec<ArcLabel> = first.labels.iter().rev().copied().collect();
        if d.parallel_to != first.parallel_to
            || (d.labels != first.labels && d.labels != rev)
        {
            return PredicateVerdict::fail(id, format!("component {i} has a different label sequence"));
        }
    }
    PredicateVerdict::pass(id)
}

/// Adjacent components may be joined by at most `floor(n/2)` chords,
/// where `n` is the common label-sequence length.
pub fn check_adjacency_bound(cand: &DiskCandidate) -> PredicateVerdict {
    let id = PredicateId::AdjacencyBound;
    if cand.deltas.len() < 2 {
        return PredicateVerdict::pass(id);
    }
    let points = cand.points();
    let mut counts = vec![0usize; cand.deltas.len() - 1];
    for &(a, b) in &cand.chords {
        if let (PointHost::Delta(i), PointHost::Delta(j)) = (points[a].host, points[b].host) {
            let (lo, hi) = (i.min(j), i.max(j));
            if hi == lo + 1 {
                counts[lo] += 1;
            }
        }
    }
    for (pair, &c) in counts.iter().enumerate() {
        let n = cand.deltas[pair].labels.len().min(cand.deltas[pair + 1].labels.len());
        if c > n / 2 {
            return PredicateVerdict::fail(
                id,
                format!("{c} chords between components {pair} and {} exceed {}", pair + 1, n / 2),
            );
        }
    }
    PredicateVerdict::pass(id)
}

/// No chord may join nonadjacent components.
pub fn check_nonadjacent(cand: &DiskCandidate) -> PredicateVerdict {
    let id = PredicateId::ScNonadjacent;
    let points = cand.points();
    for &(a, b) in &cand.chords {
        if let (PointHost::Delta(i), PointHost::Delta(j)) = (points[a].host, points[b].host) {
            if i.abs_diff(j) >= 2 {
                return PredicateVerdict::fail(
                    id,
                    format!("chord ({a}, {b}) joins nonadjacent components {i} and {j}"),
                );
            }
        }
    }
    PredicateVerdict::pass(id)
}

/// Faces of the chord diagram with at least two chords, exactly two
/// alternating corner labels, avoiding the pants crossing, force a
/// punctured lens space; their presence refutes the candidate.
pub fn check_scharlemann(sd: &SurfaceData, cand: &DiskCandidate) -> PredicateVerdict {
    let _ = sd;
    let id = PredicateId::Scharlemann;
    let points = cand.points();
    let n = points.len();
    if n == 0 || cand.chords.is_empty() {
        return PredicateVerdict::pass(id);
    }
    let Some(mate) = mate_table(cand, n) else {
        return PredicateVerdict::unsupported(id, "chords are not a perfect matching");
    };
    if crossing_in_disk(&cand.chords) {
        return PredicateVerdict::unsupported(id, "chords cross in the disk");
    }
    // Index of the point right after the pants-crossing zone.
    let wall = cand.epsilon.r1_labels.len();
    let np = cand.epsilon.p_labels.len();
    let mut interval_seen = vec![false; n];
    for start in 0..n {
        if interval_seen[start] {
            continue;
        }
        // Walk the face on the far side of each interval.
        let mut vertices = Vec::new();
        let mut intervals = Vec::new();
        let mut cur = start;
        loop {
            interval_seen[cur] = true;
            intervals.push(cur);
            let v = (cur + 1) % n;
            vertices.push(v);
            vertices.push(mate[v]);
            cur = mate[v];
            if cur == start {
                break;
            }
        }
        if vertices.len() < 4 {
            continue;
        }
        let labels: Vec<ArcLabel> = vertices.iter().map(|&v| points[v].label).collect();
        let distinct: BTreeSet<ArcLabel> = labels.iter().copied().collect();
        let alternating = (0..labels.len()).all(|i| labels[i] != labels[(i + 1) % labels.len()]);
        let meets_p = vertices.iter().any(|&v| points[v].host == PointHost::EpsP)
            || (np == 0 && intervals.iter().any(|&a| (a + 1) % n == wall % n.max(1)));
        if distinct.len() == 2 && alternating && !meets_p {
            let mut ls: Vec<String> = distinct.iter().map(|l| l.to_string()).collect();
            ls.sort();
            return PredicateVerdict::fail(
                id,
                format!("{}-gon face alternating between {} and {}", vertices.len(), ls[0], ls[1]),
            );
        }
    }
    PredicateVerdict::pass(id)
}

/// Count constraints: epsilon must cross the disk boundary in R at all,
/// carry at least `2*ceil(n/2)` chord endpoints when components of length
/// `n` are present, and every component needs at least `p` endpoints.
pub fn check_epsilon_counts(sd: &SurfaceData, cand: &DiskCandidate) -> PredicateVerdict {
    let id = PredicateId::EpsilonCounts;
    if cand.epsilon.r1_labels.is_empty() && cand.epsilon.r2_labels.is_empty() {
        return PredicateVerdict::fail(id, "epsilon misses the disk boundary in R");
    }
    if let Some(first) = cand.deltas.first() {
        let n = first.labels.len();
        let need = 2 * n.div_ceil(2);
        let have = cand.epsilon.crossing_count();
        if have < need {
            return PredicateVerdict::fail(
                id,
                format!("epsilon carries {have} endpoints, needs {need}"),
            );
        }
    }
    let p = sd.params.p() as usize;
    for (i, d) in cand.deltas.iter().enumerate() {
        if d.labels.len() < p {
            return PredicateVerdict::fail(
                id,
                format!("component {i} carries {} endpoints, needs {p}", d.labels.len()),
            );
        }
    }
    PredicateVerdict::pass(id)
}

/// Some chord must be outermost toward the tunnel foot, joining the
/// distinguished subarc to an adjacent component, with its endpoints on
/// the label pair of the foot hexagon.
pub fn check_outermost(sd: &SurfaceData, cand: &DiskCandidate) -> PredicateVerdict {
    let id = PredicateId::Outermost;
    if cand.deltas.is_empty() {
        return PredicateVerdict::pass(id);
    }
    let points = cand.points();
    let n = points.len();
    let eps_n = cand.epsilon.crossing_count();
    let pair = sd.hex_pairs[cand.epsilon.foot.index()];
    let want: BTreeSet<ArcLabel> = [pair.0, pair.1].into_iter().collect();

    let qualifies = |e_pt: usize, d_pt: usize, need_host: PointHost| -> bool {
        if e_pt >= n || d_pt >= n || points[e_pt].host != need_host {
            return false;
        }
        let present = cand
            .chords
            .iter()
            .any(|&(a, b)| (a, b) == (e_pt, d_pt) || (a, b) == (d_pt, e_pt));
        if !present {
            return false;
        }
        let got: BTreeSet<ArcLabel> = [points[e_pt].label, points[d_pt].label].into_iter().collect();
        got == want
    };

    // Outermost through the foot on the r2 side: last epsilon point with
    // the first point of the first component; or on the r1 side: the first
    // epsilon point with the last point of the last component.
    if eps_n > 0 && eps_n < n && qualifies(eps_n - 1, eps_n, PointHost::EpsR2) {
        return PredicateVerdict::pass(id);
    }
    if eps_n > 0 && n > 0 && qualifies(0, n - 1, PointHost::EpsR1) {
        return PredicateVerdict::pass(id);
    }
    PredicateVerdict::fail(
        id,
        format!(
            "no outermost chord lands on the foot pair {{{}, {}}}",
            pair.0, pair.1
        ),
    )
}

/// A candidate disjoint from the distinguished disk is always refuted:
/// its pants crossing is confined to hexagonal regions, it avoids the
/// third boundary circle, and the annulus it produces has non-primitive
/// core on both sides.
pub fn check_e_disjoint_branch(sd: &SurfaceData, cand: &DiskCandidate) -> PredicateVerdict {
    let id = PredicateId::CoreNotPrim;
    if !cand.chords.is_empty() || cand.epsilon.crossing_count() > 0 || !cand.deltas.is_empty() {
        return PredicateVerdict::unsupported(id, "candidate meets the disk boundary");
    }
    let Some(x) = cand.epsilon.alpha_region else {
        return PredicateVerdict::unsupported(id, "separating type cannot avoid the disk");
    };
    if !sd.is_p_hexagon(x) {
        return PredicateVerdict::fail(
            id,
            "crossing a rectangular region would disconnect the disk boundary",
        );
    }
    let (c1, c2) = cand.epsilon.start_circles;
    let (y1, y2) = (sd.across(x, c1), sd.across(x, c2));
    match (y1, y2) {
        (Some(y1), Some(y2)) if y1 == y2 && sd.r_hex.contains(&y1) => PredicateVerdict::fail(
            id,
            "tunnel returns confined to one hexagon; the attached annulus core is \
             non-primitive on both sides",
        ),
        (Some(y1), Some(y2)) if y1 != y2 => {
            PredicateVerdict::fail(id, "no consistent region assignment for the tunnel returns")
        }
        _ => PredicateVerdict::fail(id, "tunnel return meets a rectangular region"),
    }
}

/// For `q = 2p +- 1` the two ends of the distinguished subarc must lie in
/// different complementary components of the parallel family.
pub fn check_endpoints_of_epsilon(sd: &SurfaceData, cand: &DiskCandidate) -> PredicateVerdict {
    let id = PredicateId::EndpointsOfEpsilon;
    let (p, q) = (sd.params.p(), sd.params.q());
    if q != 2 * p + 1 && q != 2 * p - 1 {
        return PredicateVerdict::unsupported(id, "only applies when q = 2p +- 1");
    }
    let Some(first) = cand.deltas.first() else {
        return PredicateVerdict::pass(id);
    };
    let gamma = first.parallel_to;
    let (c1, c2) = cand.epsilon.start_circles;
    if (c1 == gamma) == (c2 == gamma) {
        PredicateVerdict::fail(
            id,
            format!("both subarc starts on the same side of the {gamma}-parallel family"),
        )
    } else {
        PredicateVerdict::pass(id)
    }
}

fn mate_table(cand: &DiskCandidate, n: usize) -> Option<Vec<usize>> {
    let mut mate = vec![usize::MAX; n];
    for &(a, b) in &cand.chords {
        if a >= n || b >= n || mate[a] != usize::MAX || mate[b] != usize::MAX {
            return None;
        }
        mate[a] = b;
        mate[b] = a;
    }
    if mate.iter().any(|&m| m == usize::MAX) {
        return None;
    }
    Some(mate)
}

fn crossing_in_disk(chords: &[(usize, usize)]) -> bool {
    let norm: Vec<(usize, usize)> =
        chords.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    for (i, &(a, b)) in norm.iter().enumerate() {
        for &(c, d) in &norm[i + 1..] {
            let c_inside = a < c && c < b;
            let d_inside = a < d && d < b;
            if c_inside != d_inside {
                return true;
            }
        }
    }
    false
}

/// Structural invariant of every enumerated candidate: the chords are
/// pairwise non-crossing both around the candidate's own boundary and at
/// label granularity around the distinguished disk's boundary.
pub fn validate_double_planarity(sd: &SurfaceData, cand: &DiskCandidate) -> Result<(), String> {
    let points = cand.points();
    if mate_table(cand, points.len()).is_none() {
        return Err("chords are not a perfect matching".into());
    }
    if crossing_in_disk(&cand.chords) {
        return Err("chords cross in the candidate disk".into());
    }
    for (i, &(a, b)) in cand.chords.iter().enumerate() {
        for &(c, d) in &cand.chords[i + 1..] {
            if chords_cross_on_e(sd, (points[a].label, points[b].label), (points[c].label, points[d].label)) {
                return Err(format!("chords ({a},{b}) and ({c},{d}) cross on the disk"));
            }
        }
    }
    Ok(())
}

/// Two chords are forced to cross on the distinguished disk exactly when
/// their endpoint labels strictly interleave around its boundary; shared
/// labels can always be ordered within the label's fat interval.
pub fn chords_cross_on_e(
    sd: &SurfaceData,
    c1: (ArcLabel, ArcLabel),
    c2: (ArcLabel, ArcLabel),
) -> bool {
    let (Some(a), Some(b)) = (sd.pos(c1.0), sd.pos(c1.1)) else { return false };
    let (Some(c), Some(d)) = (sd.pos(c2.0), sd.pos(c2.1)) else { return false };
    if a == c || a == d || b == c || b == d {
        return false;
    }
    sd.strictly_between(a, b, c) != sd.strictly_between(a, b, d)
}

/// The full battery in a fixed order; stops at nothing, reports all.
pub fn run_battery(sd: &SurfaceData, cand: &DiskCandidate) -> Vec<PredicateVerdict> {
    if cand.chords.is_empty() && cand.epsilon.crossing_count() == 0 {
        return vec![check_e_disjoint_branch(sd, cand)];
    }
    let points = cand.points();
    let mut out = vec![
        check_epsilon_self(cand),
        check_label_sequence(cand),
        check_nonadjacent(cand),
        check_adjacency_bound(cand),
    ];
    for &(a, b) in &cand.chords {
        let v = check_arcs_in_e(sd, points[a].label, points[b].label);
        if v.is_fail() {
            out.push(v);
            break;
        }
    }
    out.push(check_scharlemann(sd, cand));
    out.push(check_epsilon_counts(sd, cand));
    out.push(check_endpoints_of_epsilon(sd, cand));
    out.push(check_outermost(sd, cand));
    out
}

/// First failing verdict, honoring a set of disabled predicates.
pub fn battery_refutes(
    sd: &SurfaceData,
    cand: &DiskCandidate,
    disabled: &BTreeSet<PredicateId>,
) -> Option<PredicateVerdict> {
    run_battery(sd, cand)
        .into_iter()
        .find(|v| v.kind == VerdictKind::Fail && !disabled.contains(&v.predicate))
}
