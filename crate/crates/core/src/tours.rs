//! Eulerian tours compatible with a ribbon structure, their bijection with
//! arborescences, and the tour-rotor action.

use crate::error::{Error, Result};
use crate::ribbon::{bidirect, ArcId, RibbonDigraph, RibbonGraph, VertexId};
use crate::rotor::{rotor_residue, Arborescence, GameOptions, RotorRouter};
use crate::sandpile::ChipConfig;

/// A cyclic sequence of all arcs, each head meeting the next tail. Stored
/// rotated so that the arc with the least index comes first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EulerianTour(Vec<ArcId>);

impl EulerianTour {
    pub fn new(d: &RibbonDigraph, arcs: Vec<ArcId>) -> Result<Self> {
        if arcs.len() != d.arc_count() {
            return Err(Error::NotATour(format!("{} arcs listed, digraph has {}", arcs.len(), d.arc_count())));
        }
        let mut seen = vec![false; d.arc_count()];
        for &a in &arcs {
            if a.0 >= d.arc_count() || std::mem::replace(&mut seen[a.0], true) {
                return Err(Error::NotATour(format!("arc `{}` repeated", d.arc_name(a))));
            }
        }
        for (i, &a) in arcs.iter().enumerate() {
            let b = arcs[(i + 1) % arcs.len()];
            if d.head(a) != d.tail(b) {
                return Err(Error::NotATour(format!("`{}` does not continue into `{}`", d.arc_name(a), d.arc_name(b))));
            }
        }
        Ok(Self::canonical(arcs))
    }

    fn canonical(mut arcs: Vec<ArcId>) -> Self {
        if let Some(k) = arcs.iter().enumerate().min_by_key(|(_, a)| **a).map(|(i, _)| i) {
            arcs.rotate_left(k);
        }
        EulerianTour(arcs)
    }

    pub fn arcs(&self) -> &[ArcId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The tour read from `first`.
    pub fn starting_at(&self, first: ArcId) -> Vec<ArcId> {
        let k = self.0.iter().position(|&a| a == first).expect("every arc lies on the tour");
        let mut v = self.0.clone();
        v.rotate_left(k);
        v
    }
}

/// Whether out-arcs leave each vertex in the cyclic order of its rotation.
pub fn is_compatible(d: &RibbonDigraph, tour: &EulerianTour) -> bool {
    let mut departures = vec![Vec::new(); d.vertex_count()];
    for &a in tour.arcs() {
        departures[d.tail(a).0].push(a);
    }
    departures.iter().all(|deps| (0..deps.len()).all(|i| d.next_out(deps[i]) == deps[(i + 1) % deps.len()]))
}

fn require_compatible(d: &RibbonDigraph, tour: &EulerianTour) -> Result<()> {
    let mut departures = vec![Vec::new(); d.vertex_count()];
    for &a in tour.arcs() {
        departures[d.tail(a).0].push(a);
    }
    for (v, deps) in departures.iter().enumerate() {
        if (0..deps.len()).any(|i| d.next_out(deps[i]) != deps[(i + 1) % deps.len()]) {
            return Err(Error::Incompatible(d.vertex_name(VertexId(v)).to_string()));
        }
    }
    Ok(())
}

/// `A_first(tour)`: the last out-arc used at every vertex other than
/// `tail(first)` when the tour is read from `first`.
pub fn tour_to_arb(d: &RibbonDigraph, tour: &EulerianTour, first: ArcId) -> Result<Arborescence> {
    require_compatible(d, tour)?;
    let root = d.tail(first);
    let mut last = vec![None; d.vertex_count()];
    for a in tour.starting_at(first) {
        last[d.tail(a).0] = Some(a);
    }
    let arcs: Vec<ArcId> = d.vertices().filter(|&v| v != root).filter_map(|v| last[v.0]).collect();
    Arborescence::new(d, root, &arcs).map_err(|e| Error::Internal(format!("last exits do not form an arborescence: {e}")))
}

/// The compatible tour with `tour_to_arb(.., first) = t`. Departures at
/// `u != root` start right after `T(u)` and end with it; at the root they
/// start with `first`.
pub fn arb_to_tour(d: &RibbonDigraph, t: &Arborescence, first: ArcId) -> Result<EulerianTour> {
    let root = t.root();
    if d.tail(first) != root {
        return Err(Error::NotArborescence(format!("first arc `{}` does not leave the root", d.arc_name(first))));
    }
    let mut next: Vec<Option<ArcId>> = d.vertices().map(|v| t.arc(v).map(|a| d.next_out(a))).collect();
    next[root.0] = Some(first);
    let mut used = vec![0usize; d.vertex_count()];
    let mut walk = Vec::with_capacity(d.arc_count());
    let mut at = root;
    while used[at.0] < d.out_degree(at) {
        let a = next[at.0].expect("vertices with out-arcs have a next departure");
        next[at.0] = Some(d.next_out(a));
        used[at.0] += 1;
        walk.push(a);
        at = d.head(a);
    }
    if walk.len() != d.arc_count() {
        return Err(Error::Internal(format!("last-exit walk closed after {} of {} arcs", walk.len(), d.arc_count())));
    }
    EulerianTour::new(d, walk)
}

/// All compatible Eulerian tours, sorted.
///
/// A compatible tour read from arc 0 is fixed by the first departure at
/// each vertex other than `tail(0)`; later departures follow the rotation.
/// The search branches only on those first departures.
pub fn enumerate_compatible_tours(d: &RibbonDigraph) -> Result<Vec<EulerianTour>> {
    d.require_eulerian()?;
    if d.arc_count() == 0 {
        return Ok(vec![EulerianTour(Vec::new())]);
    }
    struct Search<'a> {
        d: &'a RibbonDigraph,
        next: Vec<Option<ArcId>>,
        used: Vec<usize>,
        walk: Vec<ArcId>,
        out: Vec<EulerianTour>,
    }
    impl Search<'_> {
        fn step(&mut self, at: VertexId) {
            let d = self.d;
            if self.used[at.0] == d.out_degree(at) {
                if self.walk.len() == d.arc_count() {
                    self.out.push(EulerianTour::canonical(self.walk.clone()));
                }
                return;
            }
            let choices: Vec<ArcId> = match self.next[at.0] {
                Some(a) => vec![a],
                None => d.out_arcs(at).to_vec(),
            };
            let saved = self.next[at.0];
            for a in choices {
                self.next[at.0] = Some(d.next_out(a));
                self.used[at.0] += 1;
                self.walk.push(a);
                self.step(d.head(a));
                self.walk.pop();
                self.used[at.0] -= 1;
            }
            self.next[at.0] = saved;
        }
    }
    let start = ArcId(0);
    let mut s = Search {
        d,
        next: vec![None; d.vertex_count()],
        used: vec![0; d.vertex_count()],
        walk: vec![start],
        out: Vec::new(),
    };
    let root = d.tail(start);
    s.next[root.0] = Some(d.next_out(start));
    s.used[root.0] = 1;
    s.step(d.head(start));
    s.out.sort();
    Ok(s.out)
}

/// The tour-rotor action of an Eulerian ribbon digraph.
#[derive(Clone, Debug)]
pub struct TourRotor<'d> {
    router: RotorRouter<'d>,
}

impl<'d> TourRotor<'d> {
    pub fn new(d: &'d RibbonDigraph) -> Result<Self> {
        Ok(TourRotor { router: RotorRouter::new(d)? })
    }

    pub fn router(&self) -> &RotorRouter<'d> {
        &self.router
    }

    pub fn digraph(&self) -> &'d RibbonDigraph {
        self.router.digraph()
    }

    /// Acts through the auxiliary arc `via`.
    pub fn act_via(&self, x: &ChipConfig, tour: &EulerianTour, via: ArcId) -> Result<EulerianTour> {
        self.act_via_with(x, tour, via, &GameOptions::default())
    }

    pub fn act_via_with(&self, x: &ChipConfig, tour: &EulerianTour, via: ArcId, opts: &GameOptions) -> Result<EulerianTour> {
        let d = self.digraph();
        let t = tour_to_arb(d, tour, via)?;
        let moved = self.router.act_with(d.tail(via), x, &t, opts)?;
        arb_to_tour(d, &moved, via)
    }

    /// Acts through the arc with least index.
    pub fn act(&self, x: &ChipConfig, tour: &EulerianTour) -> Result<EulerianTour> {
        if self.digraph().arc_count() == 0 {
            return Ok(tour.clone());
        }
        self.act_via(x, tour, ArcId(0))
    }

    /// Acts through every arc and fails unless all results agree.
    pub fn act_verified(&self, x: &ChipConfig, tour: &EulerianTour) -> Result<EulerianTour> {
        let result = self.act(x, tour)?;
        for via in self.digraph().arcs() {
            if self.act_via(x, tour, via)? != result {
                return Err(Error::Internal(format!(
                    "tour-rotor action through `{}` differs from the default",
                    self.digraph().arc_name(via)
                )));
            }
        }
        Ok(result)
    }
}

/// `tour_rotor_action` for a single computation; `verify` recomputes the
/// result through every arc.
pub fn tour_rotor_action(d: &RibbonDigraph, x: &ChipConfig, tour: &EulerianTour, verify: bool) -> Result<EulerianTour> {
    let tr = TourRotor::new(d)?;
    if verify {
        tr.act_verified(x, tour)
    } else {
        tr.act(x, tour)
    }
}

/// A spanning tree on which the rotor-routing actions at two adjacent
/// roots disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootWitness {
    pub roots: (VertexId, VertexId),
    pub tree: Vec<crate::ribbon::EdgeId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootIndependence {
    pub independent: bool,
    /// For each adjacent root pair `(u, w)`, the element `y` translating
    /// tours based at `u` to tours based at `w`.
    pub shifts: Vec<((VertexId, VertexId), ChipConfig)>,
    pub witness: Option<RootWitness>,
}

/// Decides whether the rotor-routing action on spanning trees of `g` is the
/// same for every root.
///
/// For adjacent roots `u`, `w` with fixed out-arcs `uv`, `wz` the actions
/// agree iff one `y` satisfies `r(y, A⁻¹_uv(T^u)) = A⁻¹_wz(T^w)` for every
/// spanning tree `T`; `y` is read off a single tree by rotor residues.
pub fn check_root_independence(g: &RibbonGraph) -> Result<RootIndependence> {
    let d = bidirect(g);
    let tr = TourRotor::new(&d)?;
    let tours = enumerate_compatible_tours(&d)?;
    let mut pairs: Vec<(VertexId, VertexId)> = g
        .edges()
        .filter(|&e| !g.is_loop(e))
        .map(|e| {
            let (a, b) = g.endpoints(e);
            (a.min(b), a.max(b))
        })
        .collect();
    pairs.sort();
    pairs.dedup();
    let mut result = RootIndependence { independent: true, shifts: Vec::new(), witness: None };
    for (u, w) in pairs {
        let uv = d.out_arcs(u)[0];
        let wz = d.out_arcs(w)[0];
        // spanning trees T as arborescence pairs (T^u, T^w) via the tours
        let trees: Vec<(Arborescence, Arborescence)> = tours
            .iter()
            .map(|t| {
                let tu = tour_to_arb(&d, t, uv)?;
                let tw = reroot(g, &d, &tu, w)?;
                Ok((tu, tw))
            })
            .collect::<Result<_>>()?;
        let (t1u, t1w) = &trees[0];
        let target = arb_to_tour(&d, t1w, wz)?;
        let target_at_u = tour_to_arb(&d, &target, uv)?;
        let w_res = rotor_residue(&d, &t1u.with_root_arc(&d, uv)?, &target_at_u.with_root_arc(&d, uv)?);
        let y = -&w_res;
        for (tu, tw) in &trees {
            let moved = tr.act_via(&y, &arb_to_tour(&d, tu, uv)?, uv)?;
            if moved != arb_to_tour(&d, tw, wz)? {
                result.independent = false;
                if result.witness.is_none() {
                    result.witness = Some(RootWitness { roots: (u, w), tree: crate::rotor::forget_orientation(tu) });
                }
                break;
            }
        }
        result.shifts.push(((u, w), y));
    }
    Ok(result)
}

fn reroot(g: &RibbonGraph, d: &RibbonDigraph, t: &Arborescence, root: VertexId) -> Result<Arborescence> {
    crate::rotor::orient_tree(g, d, root, &crate::rotor::forget_orientation(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::ribbon::medial;
    use crate::sandpile::count_arborescences;
    use num_bigint::BigInt;

    fn fig1_tour(d: &RibbonDigraph) -> EulerianTour {
        let arcs = ["e1", "e4", "e3", "e2", "e8", "e9", "e5", "e6", "e7"].iter().map(|a| d.arc_id(a).unwrap()).collect();
        EulerianTour::new(d, arcs).unwrap()
    }

    #[test]
    fn fig1_golden() {
        let d = fixtures::fig1();
        let tour = fig1_tour(&d);
        assert!(is_compatible(&d, &tour));
        let t = tour_to_arb(&d, &tour, d.arc_id("e1").unwrap()).unwrap();
        let mut names: Vec<&str> = t.arcs().map(|a| d.arc_name(a)).collect();
        names.sort();
        assert_eq!(names, ["e6", "e7", "e9"]);
        assert_eq!(t.root(), d.vertex_id("1").unwrap());
        assert_eq!(arb_to_tour(&d, &t, d.arc_id("e1").unwrap()).unwrap(), tour);
    }

    #[test]
    fn swapped_pairing_is_incompatible() {
        let d = fixtures::fig1();
        // leaves the middle vertex in the order e4, e6, e2
        let arcs = ["e1", "e4", "e3", "e6", "e5", "e2", "e8", "e9", "e7"].iter().map(|a| d.arc_id(a).unwrap()).collect();
        let tour = EulerianTour::new(&d, arcs).unwrap();
        assert!(!is_compatible(&d, &tour));
    }

    #[test]
    fn best_counts() {
        for d in [fixtures::fig1(), fixtures::c3(), medial(fixtures::torus().graph())] {
            let tours = enumerate_compatible_tours(&d).unwrap();
            for v in d.vertices() {
                assert_eq!(BigInt::from(tours.len()), count_arborescences(&d, v));
            }
            for t in &tours {
                assert!(is_compatible(&d, t));
                for a in d.arcs() {
                    let arb = tour_to_arb(&d, t, a).unwrap();
                    assert_eq!(&arb_to_tour(&d, &arb, a).unwrap(), t);
                }
            }
        }
    }

    #[test]
    fn action_identity_and_arc_independence() {
        let d = fixtures::fig1();
        let tr = TourRotor::new(&d).unwrap();
        let tour = fig1_tour(&d);
        assert_eq!(tr.act(&ChipConfig::zero(4), &tour).unwrap(), tour);
        let x = ChipConfig(vec![-1, 0, -1, 2]);
        let out = tr.act_verified(&x, &tour).unwrap();
        let expected = ["e1", "e6", "e5", "e4", "e3", "e2", "e8", "e9", "e7"].iter().map(|a| d.arc_id(a).unwrap()).collect();
        assert_eq!(out, EulerianTour::new(&d, expected).unwrap());
    }

    #[test]
    fn root_independence_examples() {
        assert!(check_root_independence(&fixtures::k4p()).unwrap().independent);
        // with its loops the torus fixture has two trees and group Z2, so no
        // bijection between them can depend on the root
        assert!(check_root_independence(fixtures::torus().graph()).unwrap().independent);
    }

    #[test]
    fn root_independence_tracks_planarity() {
        let mut r = crate::random::rng(5);
        let (mut planar, mut other) = (0, 0);
        for _ in 0..40 {
            let g = crate::random::random_ribbon_graph(&mut r, 4, 6, false);
            let res = check_root_independence(&g).unwrap();
            assert_eq!(res.independent, g.genus() == 0, "genus {}", g.genus());
            assert_eq!(res.witness.is_some(), !res.independent);
            if g.genus() == 0 { planar += 1 } else { other += 1 }
        }
        assert!(planar > 0 && other > 0);
    }
}
