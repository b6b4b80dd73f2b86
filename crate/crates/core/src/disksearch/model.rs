//! The combinatorial model of a candidate boundary-compressing-disk
//! boundary: the distinguished subarc through the pants, the circle-parallel
//! components, and a chord diagram of disk-disk intersection arcs.

use serde::{Deserialize, Serialize};

use crate::pants::{ArcLabel, Circle};

/// Isotopy type of the single essential arc the disk boundary cuts across
/// the pants `P`: nonseparating between two circles, or a circle-to-itself
/// separating arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EpsilonType {
    Ns12,
    Ns13,
    Ns23,
    Sep1,
    Sep2,
    Sep3,
}

impl EpsilonType {
    pub const ALL: [EpsilonType; 6] = [
        EpsilonType::Ns12,
        EpsilonType::Ns13,
        EpsilonType::Ns23,
        EpsilonType::Sep1,
        EpsilonType::Sep2,
        EpsilonType::Sep3,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            EpsilonType::Ns12 => "ns12",
            EpsilonType::Ns13 => "ns13",
            EpsilonType::Ns23 => "ns23",
            EpsilonType::Sep1 => "sep1",
            EpsilonType::Sep2 => "sep2",
            EpsilonType::Sep3 => "sep3",
        }
    }

    pub fn is_separating(&self) -> bool {
        matches!(self, EpsilonType::Sep1 | EpsilonType::Sep2 | EpsilonType::Sep3)
    }
}

/// Which R hexagon holds the tunnel foot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Foot {
    H1,
    H2,
}

impl Foot {
    pub const ALL: [Foot; 2] = [Foot::H1, Foot::H2];

    pub fn index(&self) -> usize {
        match self {
            Foot::H1 => 0,
            Foot::H2 => 1,
        }
    }
}

/// The subarc of the disk boundary containing its pants crossing: two
/// R-side walks joined by the forced P crossing, both ending at the
/// tunnel foot.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpsilonDescriptor {
    pub etype: EpsilonType,
    /// Labels crossed in P, in order from the `r1` end (empty for
    /// nonseparating types).
    pub p_labels: Vec<ArcLabel>,
    /// Labels crossed in R between the tunnel foot and P.
    pub r1_labels: Vec<ArcLabel>,
    /// Labels crossed in R between P and the tunnel foot.
    pub r2_labels: Vec<ArcLabel>,
    pub foot: Foot,
    /// Boundary circles at which the P crossing departs into R, on the
    /// `r1` and `r2` sides.
    pub start_circles: (Circle, Circle),
    /// P region crossed (nonseparating types only).
    pub alpha_region: Option<usize>,
}

impl EpsilonDescriptor {
    pub fn crossing_count(&self) -> usize {
        self.r1_labels.len() + self.p_labels.len() + self.r2_labels.len()
    }
}

/// One component running parallel to a pants boundary circle, cut at the
/// tunnel foot, crossing the circle's incident arcs in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaComponent {
    pub parallel_to: Circle,
    pub reversed: bool,
    pub labels: Vec<ArcLabel>,
}

/// Where a crossing point of the disk boundary with the distinguished
/// disk's boundary sits along the candidate walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PointHost {
    EpsR1,
    EpsP,
    EpsR2,
    Delta(usize),
}

impl PointHost {
    pub fn in_epsilon(&self) -> bool {
        !matches!(self, PointHost::Delta(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossPoint {
    pub label: ArcLabel,
    pub host: PointHost,
}

/// A full candidate: walk structure plus a perfect matching of the
/// crossing points (the chord diagram of the disk-disk intersection).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiskCandidate {
    pub epsilon: EpsilonDescriptor,
    pub deltas: Vec<DeltaComponent>,
    /// Chords as index pairs into [`DiskCandidate::points`].
    pub chords: Vec<(usize, usize)>,
}

impl DiskCandidate {
    /// All crossing points in cyclic order around the disk boundary:
    /// `r1`, the P zone, `r2`, then each component in order.
    pub fn points(&self) -> Vec<CrossPoint> {
        let mut out = Vec::new();
        for &label in &self.epsilon.r1_labels {
            out.push(CrossPoint { label, host: PointHost::EpsR1 });
        }
        for &label in &self.epsilon.p_labels {
            out.push(CrossPoint { label, host: PointHost::EpsP });
        }
        for &label in &self.epsilon.r2_labels {
            out.push(CrossPoint { label, host: PointHost::EpsR2 });
        }
        for (i, delta) in self.deltas.iter().enumerate() {
            for &label in &delta.labels {
                out.push(CrossPoint { label, host: PointHost::Delta(i) });
            }
        }
        out
    }

    /// Index of the first point of component `i` in `points()`.
    pub fn delta_start(&self, i: usize) -> usize {
        self.epsilon.crossing_count()
            + self.deltas[..i].iter().map(|d| d.labels.len()).sum::<usize>()
    }
}

/// Identifiers of the refutation predicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PredicateId {
    ArcsInE,
    EpsilonSelf,
    LabelSequence,
    AdjacencyBound,
    ScNonadjacent,
    Scharlemann,
    EpsilonCounts,
    Outermost,
    CoreNotPrim,
    EndpointsOfEpsilon,
}

impl PredicateId {
    pub fn name(&self) -> &'static str {
        match self {
            PredicateId::ArcsInE => "arcs-in-e",
            PredicateId::EpsilonSelf => "epsilon-self",
            PredicateId::LabelSequence => "label-sequence",
            PredicateId::AdjacencyBound => "adjacency-bound",
            PredicateId::ScNonadjacent => "sc-nonadjacent",
            PredicateId::Scharlemann => "scharlemann-cycle",
            PredicateId::EpsilonCounts => "epsilon-counts",
            PredicateId::Outermost => "outermost",
            PredicateId::CoreNotPrim => "core-not-prim",
            PredicateId::EndpointsOfEpsilon => "endpoints-of-epsilon",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictKind {
    Pass,
    Fail,
    Unsupported,
}

/// Outcome of one predicate on one candidate; failures carry a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateVerdict {
    pub predicate: PredicateId,
    pub kind: VerdictKind,
    pub witness: Option<String>,
}

impl PredicateVerdict {
    pub fn pass(predicate: PredicateId) -> Self {
        PredicateVerdict { predicate, kind: VerdictKind::Pass, witness: None }
    }

    pub fn fail(predicate: PredicateId, witness: impl Into<String>) -> Self {
        PredicateVerdict {
            predicate,
            kind: VerdictKind::Fail,
            witness: Some(witness.into()),
        }
    }

    pub fn unsupported(predicate: PredicateId, note: impl Into<String>) -> Self {
        PredicateVerdict {
            predicate,
            kind: VerdictKind::Unsupported,
            witness: Some(note.into()),
        }
    }

    pub fn is_fail(&self) -> bool {
        self.kind == VerdictKind::Fail
    }

    pub fn is_pass(&self) -> bool {
        self.kind == VerdictKind::Pass
    }
}
