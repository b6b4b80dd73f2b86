//! Derived combinatorial data the disk search consumes: the cyclic label
//! order around the disk boundary, the region graphs of both pants, the
//! hexagon ladder structure, and the label sequences a curve parallel to a
//! boundary circle crosses.

use std::collections::BTreeMap;

use crate::construction::{hexagons, verified_pattern, ConstructionParams};
use crate::pants::{ArcKind, ArcLabel, Circle, GluedSurface, Region, Side};

use super::SearchError;

/// Everything the predicates and the search need about one `(p, q)`
/// pattern, precomputed once.
#[derive(Debug, Clone)]
pub struct SurfaceData {
    pub params: ConstructionParams,
    pub surface: GluedSurface,
    /// Labels around the disk boundary; strictly alternating P/R sides.
    pub e_cycle: Vec<ArcLabel>,
    label_pos: BTreeMap<ArcLabel, usize>,
    /// Prefix sums of P-side labels along `e_cycle`.
    p_prefix: Vec<usize>,

    pub p_regions: Vec<Region>,
    pub r_regions: Vec<Region>,
    pub p_hex: [usize; 2],
    pub r_hex: [usize; 2],
    /// Per R region, the boundary arcs with the region on the far side.
    pub r_steps: Vec<Vec<(ArcLabel, usize)>>,
    /// Ladder of parallel arcs from the first hexagon to the second on the
    /// P side.
    pub b_ladder: Vec<ArcLabel>,
    pub d_ladder: Vec<ArcLabel>,
    /// R region across each (P region, circle) boundary segment.
    across: BTreeMap<(usize, Circle), usize>,
    /// Label sequence crossed by a circle-parallel curve, cut at each
    /// hexagon's passage: indexed by (circle, foot hexagon 0/1).
    pub circle_links: BTreeMap<(Circle, usize), Vec<ArcLabel>>,
    /// The (d, b) label pair in each R hexagon.
    pub hex_pairs: [(ArcLabel, ArcLabel); 2],
}

impl SurfaceData {
    pub fn new(params: &ConstructionParams) -> Result<SurfaceData, SearchError> {
        let surface = verified_pattern(params)?;
        Self::from_surface(params, surface)
    }

    pub fn from_surface(
        params: &ConstructionParams,
        surface: GluedSurface,
    ) -> Result<SurfaceData, SearchError> {
        let curves = surface.trace_curves();
        if curves.len() != 1 {
            return Err(SearchError::NotSingleCurve(curves.len()));
        }
        let e_cycle = curves[0].clone();
        let mut label_pos = BTreeMap::new();
        for (i, &l) in e_cycle.iter().enumerate() {
            label_pos.insert(l, i);
        }
        let mut p_prefix = vec![0usize; e_cycle.len() + 1];
        for (i, l) in e_cycle.iter().enumerate() {
            p_prefix[i + 1] = p_prefix[i] + usize::from(l.side == Side::P);
        }

        let pp = surface.pattern(Side::P);
        let rp = surface.pattern(Side::R);
        let p_regions = pp.region_decomposition().map_err(crate::construction::ConstructionError::from)?;
        let r_regions = rp.region_decomposition().map_err(crate::construction::ConstructionError::from)?;

        let find_region = |regions: &[Region], target: &Region| -> usize {
            regions.iter().position(|r| r == target).expect("hexagon in decomposition")
        };
        let hp = hexagons(pp, params)?;
        let hr = hexagons(rp, params)?;
        let p_hex = [find_region(&p_regions, &hp.h1), find_region(&p_regions, &hp.h2)];
        let r_hex = [find_region(&r_regions, &hr.h1), find_region(&r_regions, &hr.h2)];

        // Region graph of R: arc -> its two incident regions.
        let mut arc_regions: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, reg) in r_regions.iter().enumerate() {
            for arc in reg.arc_ids() {
                arc_regions.entry(arc).or_default().push(i);
            }
        }
        let mut r_steps = vec![Vec::new(); r_regions.len()];
        for (i, reg) in r_regions.iter().enumerate() {
            for arc in reg.arc_ids() {
                let incident = &arc_regions[&arc];
                let other = if incident[0] == i { incident[incident.len() - 1] } else { incident[0] };
                r_steps[i].push((rp.arc_label(arc), other));
            }
        }

        // Parallel-arc ladders on the P side, walked hexagon to hexagon.
        let ladder = |kind: ArcKind| -> Result<Vec<ArcLabel>, SearchError> {
            let mut arc_regions_p: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for (i, reg) in p_regions.iter().enumerate() {
                for arc in reg.arc_ids() {
                    arc_regions_p.entry(arc).or_default().push(i);
                }
            }
            let start = p_regions[p_hex[0]]
                .arc_ids()
                .into_iter()
                .find(|&a| pp.arc_label(a).kind == kind)
                .ok_or_else(|| SearchError::Structure("hexagon misses ladder arc".into()))?;
            let mut out = vec![pp.arc_label(start)];
            let mut region = {
                let inc = &arc_regions_p[&start];
                if inc[0] == p_hex[0] { inc[inc.len() - 1] } else { inc[0] }
            };
            let mut prev_arc = start;
            while region != p_hex[1] {
                let next = p_regions[region]
                    .arc_ids()
                    .into_iter()
                    .find(|&a| a != prev_arc && pp.arc_label(a).kind == kind)
                    .ok_or_else(|| SearchError::Structure("broken ladder".into()))?;
                out.push(pp.arc_label(next));
                let inc = &arc_regions_p[&next];
                region = if inc[0] == region { inc[inc.len() - 1] } else { inc[0] };
                prev_arc = next;
            }
            Ok(out)
        };
        let b_ladder = ladder(ArcKind::B)?;
        let d_ladder = ladder(ArcKind::D)?;

        // P-segment -> R-region map through the gluing.
        let mut r_segment_owner: BTreeMap<(Circle, usize, usize), usize> = BTreeMap::new();
        for (i, reg) in r_regions.iter().enumerate() {
            for circle in Circle::ALL {
                if let Some((from, to)) = reg.segment_on(circle) {
                    r_segment_owner.insert((circle, from, to), i);
                }
            }
        }
        let mut across = BTreeMap::new();
        for (i, reg) in p_regions.iter().enumerate() {
            for circle in Circle::ALL {
                if let Some((from, to)) = reg.segment_on(circle) {
                    let key = (
                        circle,
                        surface.glued_slot(Side::P, to),
                        surface.glued_slot(Side::P, from),
                    );
                    if let Some(&r) = r_segment_owner.get(&key) {
                        across.insert((i, circle), r);
                    }
                }
            }
        }

        // Label sequences of circle-parallel curves, cut at each hexagon.
        let mut circle_links = BTreeMap::new();
        for circle in Circle::ALL {
            let rot = rp.rotation(circle);
            for (h, &hex_idx) in r_hex.iter().enumerate() {
                let Some((_, to)) = r_regions[hex_idx].segment_on(circle) else {
                    return Err(SearchError::Structure("hexagon misses a circle".into()));
                };
                let start = rot
                    .iter()
                    .position(|&s| s == to)
                    .ok_or_else(|| SearchError::Structure("segment slot not on circle".into()))?;
                let seq: Vec<ArcLabel> = (0..rot.len())
                    .map(|i| {
                        let slot = rot[(start + i) % rot.len()];
                        rp.arc_label(rp.slots()[slot].arc)
                    })
                    .collect();
                circle_links.insert((circle, h), seq);
            }
        }

        let hex_pairs = [params.h1_labels(Side::R), params.h2_labels(Side::R)];

        Ok(SurfaceData {
            params: *params,
            surface,
            e_cycle,
            label_pos,
            p_prefix,
            p_regions,
            r_regions,
            p_hex,
            r_hex,
            r_steps,
            b_ladder,
            d_ladder,
            across,
            circle_links,
            hex_pairs,
        })
    }

    pub fn cycle_len(&self) -> usize {
        self.e_cycle.len()
    }

    pub fn pos(&self, label: ArcLabel) -> Option<usize> {
        self.label_pos.get(&label).copied()
    }

    /// Number of P-side labels strictly between positions `i` and `j`
    /// going forward around the cycle.
    pub fn p_between(&self, i: usize, j: usize) -> usize {
        let n = self.cycle_len();
        let count_to = |a: usize, b: usize| {
            // P labels in [a, b)
            if a <= b {
                self.p_prefix[b] - self.p_prefix[a]
            } else {
                self.p_prefix[n] - self.p_prefix[a] + self.p_prefix[b]
            }
        };
        count_to((i + 1) % n, j)
    }

    /// Are the two labels adjacent around the disk boundary?
    pub fn labels_adjacent(&self, x: ArcLabel, y: ArcLabel) -> bool {
        match (self.pos(x), self.pos(y)) {
            (Some(i), Some(j)) => {
                let n = self.cycle_len();
                (i + 1) % n == j || (j + 1) % n == i
            }
            _ => false,
        }
    }

    /// Is position `t` strictly inside the forward arc from `a` to `b`?
    pub fn strictly_between(&self, a: usize, b: usize, t: usize) -> bool {
        let n = self.cycle_len();
        if t == a || t == b {
            return false;
        }
        let fwd = (b + n - a) % n;
        let off = (t + n - a) % n;
        0 < off && off < fwd
    }

    /// R region across the given P region's segment on `circle`.
    pub fn across(&self, p_region: usize, circle: Circle) -> Option<usize> {
        self.across.get(&(p_region, circle)).copied()
    }

    pub fn is_p_hexagon(&self, region: usize) -> bool {
        self.p_hex.contains(&region)
    }

    /// The label sequence a curve parallel to `circle` crosses, cut where
    /// it passes through R hexagon `foot` (0 or 1).
    pub fn circle_link(&self, circle: Circle, foot: usize) -> &[ArcLabel] {
        &self.circle_links[&(circle, foot)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sd(p: i64, q: i64) -> SurfaceData {
        SurfaceData::new(&ConstructionParams::new(p, q).unwrap()).unwrap()
    }

    #[test]
    fn e_cycle_alternates_sides() {
        for (p, q) in [(2, 3), (3, 4), (2, 5), (3, 5)] {
            let sd = sd(p, q);
            let n = sd.cycle_len();
            assert_eq!(n as i64, 2 * (p + q - 1));
            for i in 0..n {
                assert_ne!(sd.e_cycle[i].side, sd.e_cycle[(i + 1) % n].side);
            }
        }
    }

    #[test]
    fn ladders_have_expected_lengths_and_ends() {
        let sd = sd(3, 5);
        assert_eq!(sd.d_ladder.len(), 2);
        assert_eq!(sd.b_ladder.len(), 4);
        let (d1, b1) = sd.params.h1_labels(Side::P);
        assert_eq!(sd.b_ladder[0], b1);
        assert_eq!(sd.d_ladder[0], d1);
        let (d2, b2) = sd.params.h2_labels(Side::P);
        assert_eq!(*sd.b_ladder.last().unwrap(), b2);
        assert_eq!(*sd.d_ladder.last().unwrap(), d2);
    }

    #[test]
    fn r_region_graph_is_a_theta() {
        // Two hexagons joined by three chains: the c arc directly, the d
        // chain, and the b chain.
        let sd = sd(3, 4);
        assert_eq!(sd.r_regions.len(), 5);
        let hexes = sd.r_hex;
        for (i, steps) in sd.r_steps.iter().enumerate() {
            if hexes.contains(&i) {
                assert_eq!(steps.len(), 3);
            } else {
                assert_eq!(steps.len(), 2);
            }
        }
        // c joins the two hexagons.
        let c_step = sd.r_steps[hexes[0]]
            .iter()
            .find(|(l, _)| l.kind == ArcKind::C)
            .unwrap();
        assert_eq!(c_step.1, hexes[1]);
    }

    #[test]
    fn circle_links_cover_incident_arcs() {
        let sd = sd(3, 4);
        let link = sd.circle_link(Circle::B1, 0);
        assert_eq!(link.len(), 3); // c and the two d arcs
        assert!(link.iter().any(|l| l.kind == ArcKind::C));
        assert_eq!(link.iter().filter(|l| l.kind == ArcKind::D).count(), 2);
        let link2 = sd.circle_link(Circle::B2, 0);
        assert_eq!(link2.len(), 4); // c and the three b arcs
        let link3 = sd.circle_link(Circle::B3, 1);
        assert_eq!(link3.len(), 5); // everything except c
        assert!(link3.iter().all(|l| l.kind != ArcKind::C));
    }

    #[test]
    fn across_maps_are_total_on_hexagons() {
        let sd = sd(2, 3);
        for &h in &sd.p_hex {
            for circle in Circle::ALL {
                assert!(sd.across(h, circle).is_some());
            }
        }
    }

    #[test]
    fn p_between_counts() {
        let sd = sd(2, 3);
        // cycle: a b1R b1P b2R b2P cR d1P d1R
        let a = sd.pos(ArcLabel::a()).unwrap();
        let b1r = sd.pos(ArcLabel::b(1, Side::R)).unwrap();
        assert_eq!(sd.p_between(a, b1r), 0);
        let d1r = sd.pos(ArcLabel::d(1, Side::R)).unwrap();
        // Going forward from d1R to b1R passes only the P-label a.
        assert_eq!(sd.p_between(d1r, b1r), 1);
    }
}
