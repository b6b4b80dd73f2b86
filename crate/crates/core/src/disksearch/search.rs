//! Exhaustive enumeration of candidate boundary-compressing-disk
//! configurations within caps, with the predicate battery applied
//! incrementally.
//!
//! The walk around the candidate's boundary is explored depth first: the
//! two R-side subarcs are grown step by step through the region graph,
//! the pants crossing contributes its forced points, and each
//! circle-parallel component contributes its fixed label sequence.  At
//! every crossing point the chord diagram either opens a new chord or
//! closes against the top of the open stack (last-in-first-out closing is
//! exactly non-crossing in the candidate disk).  A chord that violates a
//! predicate prunes the branch and tallies the predicate; a candidate
//! that completes with every predicate passing is a survivor and is
//! returned as a witness.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::construction::ConstructionParams;
use crate::pants::{ArcLabel, Circle};

use super::model::{
    CrossPoint, DeltaComponent, DiskCandidate, EpsilonDescriptor, EpsilonType, Foot, PointHost,
    PredicateId,
};
use super::predicates::{
    battery_refutes, check_arcs_in_e, check_e_disjoint_branch, check_epsilon_counts,
    check_outermost, check_scharlemann, chords_cross_on_e, validate_double_planarity,
};
use super::surface::SurfaceData;
use super::SearchError;

/// Bounds making the candidate space finite: the component count cap and
/// the total budget of R-side crossings of the distinguished subarc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub max_delta: usize,
    pub max_eps_r: usize,
}

impl Caps {
    /// Three components, and an epsilon budget of three full trips around
    /// the longer circle.
    pub fn default_for(params: &ConstructionParams) -> Caps {
        Caps { max_delta: 3, max_eps_r: (3 * params.q()) as usize }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SearchConfig {
    pub caps: Option<Caps>,
    pub disabled: BTreeSet<PredicateId>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchReport {
    pub p: i64,
    pub q: i64,
    pub caps: Caps,
    pub disabled: Vec<String>,
    /// Structural configurations enumerated (walks and matchings not
    /// included).
    pub configs: u64,
    pub dfs_nodes: u64,
    pub completed_candidates: u64,
    pub wrap_prunes: u64,
    pub planarity_prunes: u64,
    /// Predicate firings over the whole run.
    pub tally: BTreeMap<String, u64>,
    pub tally_by_etype: BTreeMap<String, BTreeMap<String, u64>>,
    /// Refuted chord label pairs under the intersection-arc predicate.
    pub arcs_in_e_pairs: BTreeMap<String, u64>,
    /// Separating-subarc configurations carrying components, and how many
    /// of them the endpoint-separation predicate refuted.
    pub sep_delta_configs: u64,
    pub sep_endpoints_fires: u64,
    pub survivor: Option<DiskCandidate>,
}

impl SearchReport {
    pub fn all_refuted(&self) -> bool {
        self.survivor.is_none()
    }

    pub fn tally_of(&self, id: PredicateId) -> u64 {
        self.tally.get(id.name()).copied().unwrap_or(0)
    }
}

/// One choice of the pants crossing: forced P labels and where the two
/// R-side subarcs start.
#[derive(Debug, Clone)]
struct AlphaChoice {
    p_labels: Vec<ArcLabel>,
    start_circles: (Circle, Circle),
    r1_start: usize,
    r2_start: usize,
    alpha_region: Option<usize>,
}

fn alpha_choices(sd: &SurfaceData, etype: EpsilonType) -> Vec<AlphaChoice> {
    let circles = |etype: EpsilonType| match etype {
        EpsilonType::Ns12 => (Circle::B1, Circle::B2),
        EpsilonType::Ns13 => (Circle::B1, Circle::B3),
        EpsilonType::Ns23 => (Circle::B2, Circle::B3),
        EpsilonType::Sep1 => (Circle::B1, Circle::B1),
        EpsilonType::Sep2 => (Circle::B2, Circle::B2),
        EpsilonType::Sep3 => (Circle::B3, Circle::B3),
    };
    let (c1, c2) = circles(etype);
    if !etype.is_separating() {
        // Any P region with segments on both circles can host the
        // crossing; it meets no arcs there.
        let mut out = Vec::new();
        for i in 0..sd.p_regions.len() {
            if let (Some(r1), Some(r2)) = (sd.across(i, c1), sd.across(i, c2)) {
                out.push(AlphaChoice {
                    p_labels: vec![],
                    start_circles: (c1, c2),
                    r1_start: r1,
                    r2_start: r2,
                    alpha_region: Some(i),
                });
            }
        }
        return out;
    }
    // Separating types cross a full parallel family, entering and leaving
    // through the two hexagons.
    let p_labels = match etype {
        EpsilonType::Sep1 => sd.b_ladder.clone(),
        EpsilonType::Sep2 => sd.d_ladder.clone(),
        EpsilonType::Sep3 => vec![ArcLabel::a()],
        _ => unreachable!(),
    };
    let (h1, h2) = (sd.p_hex[0], sd.p_hex[1]);
    match (sd.across(h1, c1), sd.across(h2, c2)) {
        (Some(r1), Some(r2)) => vec![AlphaChoice {
            p_labels,
            start_circles: (c1, c2),
            r1_start: r1,
            r2_start: r2,
            alpha_region: None,
        }],
        _ => vec![],
    }
}

struct Search<'a> {
    sd: &'a SurfaceData,
    caps: Caps,
    disabled: &'a BTreeSet<PredicateId>,
    report: SearchReport,

    // Per-configuration:
    etype: EpsilonType,
    alpha: AlphaChoice,
    foot: Foot,
    foot_region: usize,
    deltas: Vec<DeltaComponent>,
    delta_total: usize,

    // DFS state:
    points: Vec<CrossPoint>,
    stack: Vec<usize>,
    chords: Vec<(usize, usize)>,
    pair_counts: Vec<usize>,
    delta_emitted: usize,
    eps_r_used: usize,
    r1_hist: Vec<(ArcLabel, usize)>,
    r2_hist: Vec<(ArcLabel, usize)>,
    found: bool,
}

#[derive(Debug, Clone, Copy)]
enum Phase {
    R1 { region: usize },
    P { idx: usize },
    R2 { region: usize },
    Delta { comp: usize, idx: usize },
}

impl<'a> Search<'a> {
    fn tally(&mut self, id: PredicateId) {
        *self.report.tally.entry(id.name().into()).or_insert(0) += 1;
        *self
            .report
            .tally_by_etype
            .entry(self.etype.name().into())
            .or_default()
            .entry(id.name().into())
            .or_insert(0) += 1;
    }

    fn tally_chord_pair(&mut self, x: ArcLabel, y: ArcLabel) {
        let mut pair = [x.to_string(), y.to_string()];
        pair.sort();
        let key = format!("{}|{}", pair[0], pair[1]);
        *self.report.arcs_in_e_pairs.entry(key).or_insert(0) += 1;
    }

    fn enabled(&self, id: PredicateId) -> bool {
        !self.disabled.contains(&id)
    }

    fn dfs(&mut self, phase: Phase) {
        if self.found {
            return;
        }
        self.report.dfs_nodes += 1;
        let sd = self.sd;
        match phase {
            // r1 runs from the tunnel foot to the pants crossing in
            // boundary order, so the walk starts at the foot region.
            Phase::R1 { region } => {
                if region == self.alpha.r1_start {
                    self.dfs(Phase::P { idx: 0 });
                }
                if self.eps_r_used < self.caps.max_eps_r {
                    for step in 0..sd.r_steps[region].len() {
                        let (label, next_region) = sd.r_steps[region][step];
                        self.r1_hist.push((label, next_region));
                        if self.wraps(true) {
                            self.report.wrap_prunes += 1;
                            self.r1_hist.pop();
                            continue;
                        }
                        self.eps_r_used += 1;
                        self.point_options(
                            label,
                            PointHost::EpsR1,
                            self.alpha.p_labels.len(),
                            Phase::R1 { region: next_region },
                        );
                        self.eps_r_used -= 1;
                        self.r1_hist.pop();
                    }
                }
            }
            Phase::P { idx } => {
                if idx == self.alpha.p_labels.len() {
                    self.dfs(Phase::R2 { region: self.alpha.r2_start });
                } else {
                    let label = self.alpha.p_labels[idx];
                    self.point_options(
                        label,
                        PointHost::EpsP,
                        self.alpha.p_labels.len() - idx - 1,
                        Phase::P { idx: idx + 1 },
                    );
                }
            }
            Phase::R2 { region } => {
                if region == self.foot_region {
                    self.enter_deltas();
                }
                if self.eps_r_used < self.caps.max_eps_r {
                    for step in 0..sd.r_steps[region].len() {
                        let (label, next_region) = sd.r_steps[region][step];
                        self.r2_hist.push((label, next_region));
                        if self.wraps(false) {
                            self.report.wrap_prunes += 1;
                            self.r2_hist.pop();
                            continue;
                        }
                        self.eps_r_used += 1;
                        self.point_options(
                            label,
                            PointHost::EpsR2,
                            0,
                            Phase::R2 { region: next_region },
                        );
                        self.eps_r_used -= 1;
                        self.r2_hist.pop();
                    }
                }
            }
            Phase::Delta { comp, idx } => {
                if comp == self.deltas.len() {
                    self.complete();
                } else if idx == self.deltas[comp].labels.len() {
                    self.dfs(Phase::Delta { comp: comp + 1, idx: 0 });
                } else {
                    let label = self.deltas[comp].labels[idx];
                    self.point_options(
                        label,
                        PointHost::Delta(comp),
                        0,
                        Phase::Delta { comp, idx: idx + 1 },
                    );
                }
            }
        }
    }

    /// Full-circuit detection on the trailing window of a subarc walk:
    /// crossing every arc incident to one circle once and returning to the
    /// starting region is a wrap, which is represented instead by an extra
    /// parallel component (canonical form).
    fn wraps(&self, first: bool) -> bool {
        let (hist, start) = if first {
            (&self.r1_hist, self.foot_region)
        } else {
            (&self.r2_hist, self.alpha.r2_start)
        };
        for circle in Circle::ALL {
            let link = self.sd.circle_link(circle, 0);
            let len = link.len();
            if hist.len() < len {
                continue;
            }
            let before = if hist.len() == len {
                start
            } else {
                hist[hist.len() - len - 1].1
            };
            if before != hist.last().unwrap().1 {
                continue;
            }
            let mut window: Vec<ArcLabel> =
                hist[hist.len() - len..].iter().map(|&(l, _)| l).collect();
            let mut target: Vec<ArcLabel> = link.to_vec();
            window.sort();
            target.sort();
            if window == target {
                return true;
            }
        }
        false
    }

    /// Emit one crossing point, branching over closing against the stack
    /// top and opening a new chord.
    fn point_options(&mut self, label: ArcLabel, host: PointHost, p_left: usize, next: Phase) {
        if self.found {
            return;
        }
        let idx = self.points.len();

        // Option 1: close against the open stack.
        if let Some(&top) = self.stack.last() {
            if self.close_admissible(top, label, host) {
                let is_delta = matches!(host, PointHost::Delta(_));
                self.points.push(CrossPoint { label, host });
                if is_delta {
                    self.delta_emitted += 1;
                }
                self.stack.pop();
                self.chords.push((top, idx));
                let pair_idx = self.bump_pair_count(top, host);
                if self.delta_feasible(host) {
                    self.dfs(next);
                }
                if let Some(pi) = pair_idx {
                    self.pair_counts[pi] -= 1;
                }
                self.chords.pop();
                self.stack.push(top);
                if is_delta {
                    self.delta_emitted -= 1;
                }
                self.points.pop();
            }
        }

        // Option 2: open a new chord end.
        let is_delta = matches!(host, PointHost::Delta(_));
        let remaining_after =
            self.delta_total - self.delta_emitted - usize::from(is_delta);
        let feasible = if is_delta {
            let s = self.stack.len() + 1;
            s <= remaining_after && (remaining_after - s) % 2 == 0
        } else {
            self.stack.len() + 1 + p_left <= self.delta_total
        };
        if feasible {
            self.points.push(CrossPoint { label, host });
            if is_delta {
                self.delta_emitted += 1;
            }
            self.stack.push(idx);
            self.dfs(next);
            self.stack.pop();
            if is_delta {
                self.delta_emitted -= 1;
            }
            self.points.pop();
        } else if self.delta_total == 0
            && host.in_epsilon()
            && self.enabled(PredicateId::EpsilonSelf)
        {
            // With no components every chord would join the subarc to
            // itself.
            self.tally(PredicateId::EpsilonSelf);
        }
    }

    fn close_admissible(&mut self, top: usize, label: ArcLabel, host: PointHost) -> bool {
        let top_pt = self.points[top];
        // Chords inside epsilon or inside one component are excluded from
        // the candidate space a priori.
        if top_pt.host.in_epsilon() && host.in_epsilon() {
            return false;
        }
        if let (PointHost::Delta(i), PointHost::Delta(j)) = (top_pt.host, host) {
            if i == j {
                return false;
            }
            if i.abs_diff(j) >= 2 && self.enabled(PredicateId::ScNonadjacent) {
                self.tally(PredicateId::ScNonadjacent);
                return false;
            }
            if i.abs_diff(j) == 1 && self.enabled(PredicateId::AdjacencyBound) {
                let lo = i.min(j);
                let n = self.deltas[lo]
                    .labels
                    .len()
                    .min(self.deltas[lo + 1].labels.len());
                if self.pair_counts[lo] + 1 > n / 2 {
                    self.tally(PredicateId::AdjacencyBound);
                    return false;
                }
            }
        }
        if self.enabled(PredicateId::ArcsInE) {
            let verdict = check_arcs_in_e(self.sd, top_pt.label, label);
            if verdict.is_fail() {
                self.tally(PredicateId::ArcsInE);
                self.tally_chord_pair(top_pt.label, label);
                return false;
            }
        }
        // Structural: the chords must also be drawable disjointly on the
        // distinguished disk.
        for &(a, b) in &self.chords {
            if chords_cross_on_e(
                self.sd,
                (self.points[a].label, self.points[b].label),
                (top_pt.label, label),
            ) {
                self.report.planarity_prunes += 1;
                return false;
            }
        }
        true
    }

    fn bump_pair_count(&mut self, top: usize, host: PointHost) -> Option<usize> {
        if let (PointHost::Delta(i), PointHost::Delta(j)) = (self.points[top].host, host) {
            if i.abs_diff(j) == 1 {
                let lo = i.min(j);
                self.pair_counts[lo] += 1;
                return Some(lo);
            }
        }
        None
    }

    fn delta_feasible(&self, host: PointHost) -> bool {
        if matches!(host, PointHost::Delta(_)) {
            let remaining = self.delta_total - self.delta_emitted;
            let s = self.stack.len();
            s <= remaining && (remaining - s) % 2 == 0
        } else {
            true
        }
    }

    /// The subarc walks and the pants crossing are fixed; move on to the
    /// parallel components.
    fn enter_deltas(&mut self) {
        if self.deltas.is_empty() {
            if self.points.is_empty() {
                self.complete();
            }
            return;
        }
        let eps_n = self.points.len();
        let n = self.deltas[0].labels.len();
        if self.enabled(PredicateId::EpsilonCounts) {
            if self.r1_hist.is_empty() && self.r2_hist.is_empty() {
                self.tally(PredicateId::EpsilonCounts);
                return;
            }
            if eps_n < 2 * n.div_ceil(2) {
                self.tally(PredicateId::EpsilonCounts);
                return;
            }
        }
        if self.stack.len() > self.delta_total
            || (self.delta_total - self.stack.len()) % 2 != 0
        {
            return;
        }
        self.dfs(Phase::Delta { comp: 0, idx: 0 });
    }

    fn complete(&mut self) {
        debug_assert!(self.stack.is_empty());
        self.report.completed_candidates += 1;
        let cand = self.current_candidate();

        if cand.chords.is_empty() {
            let v = check_e_disjoint_branch(self.sd, &cand);
            if v.is_fail() && self.enabled(PredicateId::CoreNotPrim) {
                self.tally(PredicateId::CoreNotPrim);
                return;
            }
            if v.is_fail() {
                return;
            }
        } else {
            for (id, verdict) in [
                (PredicateId::Scharlemann, check_scharlemann(self.sd, &cand)),
                (PredicateId::EpsilonCounts, check_epsilon_counts(self.sd, &cand)),
                (PredicateId::Outermost, check_outermost(self.sd, &cand)),
            ] {
                if verdict.is_fail() && self.enabled(id) {
                    self.tally(id);
                    return;
                }
            }
        }

        // Defense in depth: the standalone battery must agree before a
        // candidate counts as surviving.
        if let Some(v) = battery_refutes(self.sd, &cand, self.disabled) {
            self.tally(v.predicate);
            return;
        }
        debug_assert!(validate_double_planarity(self.sd, &cand).is_ok());
        self.report.survivor = Some(cand);
        self.found = true;
    }

    fn current_candidate(&self) -> DiskCandidate {
        DiskCandidate {
            epsilon: EpsilonDescriptor {
                etype: self.etype,
                p_labels: self.alpha.p_labels.clone(),
                r1_labels: self.r1_hist.iter().map(|&(l, _)| l).collect(),
                r2_labels: self.r2_hist.iter().map(|&(l, _)| l).collect(),
                foot: self.foot,
                start_circles: self.alpha.start_circles,
                alpha_region: self.alpha.alpha_region,
            },
            deltas: self.deltas.clone(),
            chords: self.chords.clone(),
        }
    }
}

/// Enumerate every candidate within the caps and run the battery.
/// Returns the refutation report, carrying a surviving witness if one
/// passes everything.
pub fn search(
    params: &ConstructionParams,
    config: &SearchConfig,
) -> Result<SearchReport, SearchError> {
    let (p, q) = (params.p(), params.q());
    let easy = q == p + 1;
    let hard = (q == 2 * p + 1 || q == 2 * p - 1) && q > 3;
    if !easy && !hard {
        return Err(SearchError::UnsupportedFamily { p, q });
    }
    let caps = config.caps.unwrap_or_else(|| Caps::default_for(params));
    if caps.max_delta == 0 || caps.max_eps_r == 0 {
        return Err(SearchError::CapsTooSmall(format!("{caps:?}")));
    }
    let sd = SurfaceData::new(params)?;
    search_on(&sd, caps, &config.disabled)
}

pub(super) fn search_on(
    sd: &SurfaceData,
    caps: Caps,
    disabled: &BTreeSet<PredicateId>,
) -> Result<SearchReport, SearchError> {
    let params = sd.params;
    let report = SearchReport {
        p: params.p(),
        q: params.q(),
        caps,
        disabled: disabled.iter().map(|d| d.name().to_string()).collect(),
        configs: 0,
        dfs_nodes: 0,
        completed_candidates: 0,
        wrap_prunes: 0,
        planarity_prunes: 0,
        tally: BTreeMap::new(),
        tally_by_etype: BTreeMap::new(),
        arcs_in_e_pairs: BTreeMap::new(),
        sep_delta_configs: 0,
        sep_endpoints_fires: 0,
        survivor: None,
    };
    let mut s = Search {
        sd,
        caps,
        disabled,
        report,
        etype: EpsilonType::Ns12,
        alpha: AlphaChoice {
            p_labels: vec![],
            start_circles: (Circle::B1, Circle::B2),
            r1_start: 0,
            r2_start: 0,
            alpha_region: None,
        },
        foot: Foot::H1,
        foot_region: 0,
        deltas: vec![],
        delta_total: 0,
        points: vec![],
        stack: vec![],
        chords: vec![],
        pair_counts: vec![],
        delta_emitted: 0,
        eps_r_used: 0,
        r1_hist: vec![],
        r2_hist: vec![],
        found: false,
    };

    let q_hard = {
        let (p, q) = (params.p(), params.q());
        (q == 2 * p + 1 || q == 2 * p - 1) && q > 3
    };

    for etype in EpsilonType::ALL {
        let alphas = alpha_choices(sd, etype);
        for alpha in alphas {
            for foot in Foot::ALL {
                let foot_region = sd.r_hex[foot.index()];
                for m in 0..=caps.max_delta {
                    for gamma_code in 0..3usize.pow(m as u32) {
                        let gammas: Vec<Circle> = {
                            let mut code = gamma_code;
                            (0..m)
                                .map(|_| {
                                    let c = Circle::ALL[code % 3];
                                    code /= 3;
                                    c
                                })
                                .collect()
                        };
                        for rev_code in 0..(1usize << m) {
                            s.report.configs += 1;
                            s.etype = etype;
                            s.alpha = alpha.clone();
                            s.foot = foot;
                            s.foot_region = foot_region;
                            s.deltas = (0..m)
                                .map(|i| {
                                    let reversed = (rev_code >> i) & 1 == 1;
                                    let mut labels: Vec<ArcLabel> =
                                        sd.circle_link(gammas[i], foot.index()).to_vec();
                                    if reversed {
                                        labels.reverse();
                                    }
                                    DeltaComponent {
                                        parallel_to: gammas[i],
                                        reversed,
                                        labels,
                                    }
                                })
                                .collect();
                            s.delta_total =
                                s.deltas.iter().map(|d| d.labels.len()).sum();
                            s.pair_counts = vec![0; m.saturating_sub(1)];

                            // Configuration-level predicates.
                            if m > 0 && s.enabled(PredicateId::LabelSequence) {
                                let bad = gammas.iter().any(|&g| g == Circle::B3)
                                    || gammas.iter().any(|&g| g != gammas[0]);
                                if bad {
                                    s.tally(PredicateId::LabelSequence);
                                    continue;
                                }
                            }
                            if m > 0 && etype.is_separating() {
                                s.report.sep_delta_configs += 1;
                            }
                            if q_hard && m > 0 && s.enabled(PredicateId::EndpointsOfEpsilon)
                            {
                                let gamma = gammas[0];
                                let (c1, c2) = alpha.start_circles;
                                if (c1 == gamma) == (c2 == gamma) {
                                    s.tally(PredicateId::EndpointsOfEpsilon);
                                    if etype.is_separating() {
                                        s.report.sep_endpoints_fires += 1;
                                    }
                                    continue;
                                }
                            }

                            s.dfs(Phase::R1 { region: foot_region });
                            if s.found {
                                return Ok(s.report);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(s.report)
}
