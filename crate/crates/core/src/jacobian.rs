//! Embedded graphs: quasi-trees, signed cycles, the Jacobian, the map into
//! the sandpile group of the medial digraph, and the Bernardi action.
//!
//! Every edge `e` carries a reference orientation. Around its medial node
//! the four medial arcs are
//!
//! * `in_tail = m(prev(t))`, `out_tail = m(t)` turning around the tail,
//! * `in_head = m(prev(h))`, `out_head = m(h)` turning around the head,
//!
//! where `t`, `h` are the tail and head half-edges of `e` and `m(x)` is the
//! medial arc leaving through corner `x`. `med+(e) = out_tail` and
//! `med-(e) = out_head`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::lattice::GroupPresentation;
use crate::ribbon::{
    complement_components, dual, medial, ArcId, EdgeId, HalfEdge, Layer, RibbonDigraph, RibbonGraph, Subtransversal,
    VertexId,
};
use crate::sandpile::ChipConfig;
use crate::tours::{EulerianTour, TourRotor};

/// Largest edge count for which cycles are enumerated (3^|E| subsets).
pub const MAX_CYCLE_EDGES: usize = 10;

/// Largest edge count for which quasi-trees are enumerated.
pub const MAX_QUASITREE_EDGES: usize = 20;

/// Which of the four half-edges at a medial node a pass of a tour crosses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Crossing {
    /// Turn around the tail.
    PrimalMinus,
    /// Turn around the head.
    PrimalPlus,
    /// Straight, from around the tail to around the head.
    DualMinus,
    /// Straight, from around the head to around the tail.
    DualPlus,
}

/// A ribbon graph with a reference orientation on every edge, plus its dual
/// and medial digraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedGraph {
    graph: RibbonGraph,
    tail_side: Vec<u8>,
    dual: RibbonGraph,
    medial: RibbonDigraph,
}

impl EmbeddedGraph {
    /// `tail_side[e]` names the side of `e` at its tail.
    pub fn new(graph: RibbonGraph, tail_side: Vec<u8>) -> Result<Self> {
        if graph.edge_count() == 0 {
            return Err(Error::Invalid("an embedded graph needs at least one edge".into()));
        }
        if tail_side.len() != graph.edge_count() || tail_side.iter().any(|&s| s > 1) {
            return Err(Error::Invalid("one tail side (0 or 1) per edge required".into()));
        }
        Ok(EmbeddedGraph { dual: dual(&graph), medial: medial(&graph), graph, tail_side })
    }

    /// Every edge directed from its side-0 end.
    pub fn with_default_orientation(graph: RibbonGraph) -> Result<Self> {
        let n = graph.edge_count();
        Self::new(graph, vec![0; n])
    }

    pub fn graph(&self) -> &RibbonGraph {
        &self.graph
    }

    pub fn dual(&self) -> &RibbonGraph {
        &self.dual
    }

    pub fn medial(&self) -> &RibbonDigraph {
        &self.medial
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn tail_half(&self, e: EdgeId) -> HalfEdge {
        HalfEdge::new(e, self.tail_side[e.0])
    }

    pub fn head_half(&self, e: EdgeId) -> HalfEdge {
        self.tail_half(e).opposite()
    }

    /// `(tail, head)` under the reference orientation.
    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        (self.graph.vertex(self.tail_half(e)), self.graph.vertex(self.head_half(e)))
    }

    pub fn med_plus(&self, e: EdgeId) -> ArcId {
        ArcId(self.tail_half(e).0)
    }

    pub fn med_minus(&self, e: EdgeId) -> ArcId {
        ArcId(self.head_half(e).0)
    }

    fn mask(&self, q: &[EdgeId]) -> Result<Vec<bool>> {
        let mut m = vec![false; self.edge_count()];
        for e in q {
            *m.get_mut(e.0).ok_or_else(|| Error::UnknownEdge(e.to_string()))? = true;
        }
        Ok(m)
    }

    /// The medial arc following `a` when the transition at every node is
    /// straight exactly on the edges of `q`.
    fn successor(&self, in_q: &[bool], a: ArcId) -> ArcId {
        let x = self.graph.next(HalfEdge(a.0));
        if in_q[x.edge().0] {
            ArcId(x.opposite().0)
        } else {
            ArcId(x.0)
        }
    }

    /// The trail through arc 0 of the transition system of `q`.
    fn trail(&self, in_q: &[bool]) -> Vec<ArcId> {
        let mut trail = vec![ArcId(0)];
        let mut a = self.successor(in_q, ArcId(0));
        while a != ArcId(0) {
            trail.push(a);
            a = self.successor(in_q, a);
        }
        trail
    }

    /// Whether `q` is a quasi-tree: its transition system is a single trail.
    pub fn is_quasitree(&self, q: &[EdgeId]) -> Result<bool> {
        Ok(self.trail(&self.mask(q)?).len() == self.medial.arc_count())
    }

    pub fn quasitree_to_tour(&self, q: &[EdgeId]) -> Result<EulerianTour> {
        let trail = self.trail(&self.mask(q)?);
        if trail.len() != self.medial.arc_count() {
            return Err(Error::NotQuasiTree);
        }
        EulerianTour::new(&self.medial, trail)
    }

    /// Edges at whose medial node the tour goes straight.
    pub fn tour_to_quasitree(&self, tour: &EulerianTour) -> Result<Vec<EdgeId>> {
        let arcs = EulerianTour::new(&self.medial, tour.arcs().to_vec())?.arcs().to_vec();
        let mut q = Vec::new();
        for (i, &a) in arcs.iter().enumerate() {
            let b = arcs[(i + 1) % arcs.len()];
            let x = self.graph.next(HalfEdge(a.0));
            if b.0 == x.opposite().0 && x.side() == 0 {
                q.push(x.edge());
            }
        }
        q.sort();
        Ok(q)
    }

    /// All quasi-trees, each sorted, in lexicographic order.
    pub fn enumerate_quasitrees(&self) -> Result<Vec<Vec<EdgeId>>> {
        let m = self.edge_count();
        if m > MAX_QUASITREE_EDGES {
            return Err(Error::TooLarge(format!("{m} edges exceed the quasi-tree limit {MAX_QUASITREE_EDGES}")));
        }
        let mut out = Vec::new();
        for bits in 0u32..1 << m {
            let in_q: Vec<bool> = (0..m).map(|i| bits & (1 << i) != 0).collect();
            if self.trail(&in_q).len() == 2 * m {
                out.push((0..m).filter(|&i| in_q[i]).map(EdgeId).collect());
            }
        }
        out.sort();
        Ok(out)
    }

    /// Classifies the pass of a medial tour from arc `a` into arc `b`.
    pub fn crossing(&self, a: ArcId, b: ArcId) -> Result<(EdgeId, Crossing)> {
        let x = self.graph.next(HalfEdge(a.0));
        let e = x.edge();
        let at_tail = x == self.tail_half(e);
        let kind = if b.0 == x.0 {
            if at_tail {
                Crossing::PrimalMinus
            } else {
                Crossing::PrimalPlus
            }
        } else if b.0 == x.opposite().0 {
            if at_tail {
                Crossing::DualMinus
            } else {
                Crossing::DualPlus
            }
        } else {
            return Err(Error::NotATour(format!("no medial pass from arc {a} into arc {b}")));
        };
        Ok((e, kind))
    }

    /// The Bernardi orientation of quasi-tree `q` based at `e0`, as signs of
    /// the half-integer entries.
    pub fn bernardi_orientation(&self, q: &[EdgeId], e0: EdgeId) -> Result<Orientation> {
        let in_q = self.mask(q)?;
        if e0.0 >= self.edge_count() {
            return Err(Error::UnknownEdge(e0.to_string()));
        }
        let tour = self.quasitree_to_tour(q)?.starting_at(self.med_plus(e0));
        let m = tour.len();
        let mut first: HashMap<(EdgeId, Crossing), usize> = HashMap::new();
        for i in 0..m {
            let (e, kind) = self.crossing(tour[(i + m - 1) % m], tour[i])?;
            first.insert((e, kind), i);
        }
        let signs = self
            .graph
            .edges()
            .map(|e| {
                let (earlier, later) = if in_q[e.0] {
                    (Crossing::DualMinus, Crossing::DualPlus)
                } else {
                    (Crossing::PrimalPlus, Crossing::PrimalMinus)
                };
                if first[&(e, earlier)] < first[&(e, later)] {
                    1
                } else {
                    -1
                }
            })
            .collect();
        Ok(Orientation(signs))
    }

    /// Minimal subtransversals cutting the surface in two, each with the
    /// boundary signs of one side.
    pub fn enumerate_cycles(&self) -> Result<Vec<SignedCycle>> {
        let m = self.edge_count();
        if m > MAX_CYCLE_EDGES {
            return Err(Error::TooLarge(format!("{m} edges exceed the cycle enumeration limit {MAX_CYCLE_EDGES}")));
        }
        let g = &self.graph;
        let mut out = Vec::new();
        let mut s = Subtransversal::empty(m);
        for code in 0..3usize.pow(m as u32) {
            let mut c = code;
            for slot in s.0.iter_mut() {
                *slot = match c % 3 {
                    0 => None,
                    1 => Some(Layer::Primal),
                    _ => Some(Layer::Dual),
                };
                c /= 3;
            }
            let cut = complement_components(g, &s);
            if cut.components != 2 {
                continue;
            }
            let minimal = s.elements().all(|(e, _)| {
                let mut smaller = s.clone();
                smaller.0[e.0] = None;
                complement_components(g, &smaller).components == 1
            });
            if !minimal {
                continue;
            }
            let side = cut.component_of(HalfEdge(0));
            let mut z = vec![0i64; 2 * m];
            for (e, layer) in s.elements() {
                let (slot, corner) = match layer {
                    Layer::Primal => (e.0, g.prev(self.head_half(e))),
                    Layer::Dual => (m + e.0, self.tail_half(e)),
                };
                z[slot] = if cut.component_of(corner) == side { 1 } else { -1 };
            }
            out.push(SignedCycle { support: s.clone(), values: z });
        }
        Ok(out)
    }

    pub fn jacobian(&self) -> Result<Jacobian> {
        let cycles = self.enumerate_cycles()?;
        let generators: Vec<Vec<i64>> = cycles.iter().map(|c| project_pi(&c.values)).collect();
        Ok(Jacobian { presentation: GroupPresentation::from_generators(self.edge_count(), &generators), cycles })
    }

    /// `phi(1_e) = -chi(med+(e))`, extended linearly.
    pub fn phi(&self, x: &[i64]) -> Result<ChipConfig> {
        if x.len() != self.edge_count() {
            return Err(Error::LengthMismatch { expected: self.edge_count(), got: x.len() });
        }
        let mut y = ChipConfig::zero(self.medial.vertex_count());
        for e in self.graph.edges() {
            let a = self.med_plus(e);
            y[self.medial.tail(a)] += x[e.0];
            y[self.medial.head(a)] -= x[e.0];
        }
        Ok(y)
    }
}

/// Signs of a half-integer vector `{±1/2}^E`: entry `1` means `+1/2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orientation(pub Vec<i8>);

/// A signed cycle over `E ⊔ E*`: primal coordinates first, then dual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedCycle {
    pub support: Subtransversal,
    pub values: Vec<i64>,
}

impl SignedCycle {
    /// The boundary of the other side.
    pub fn negated(&self) -> Self {
        SignedCycle { support: self.support.clone(), values: self.values.iter().map(|v| -v).collect() }
    }
}

/// `pi(z)(e) = z(e) + z(e*)`.
pub fn project_pi(z: &[i64]) -> Vec<i64> {
    assert!(z.len().is_multiple_of(2), "vector has even length");
    let m = z.len() / 2;
    (0..m).map(|e| z[e] + z[m + e]).collect()
}

/// `Z^E` modulo the projected signed cycles.
#[derive(Clone, Debug)]
pub struct Jacobian {
    presentation: GroupPresentation,
    cycles: Vec<SignedCycle>,
}

impl Jacobian {
    pub fn presentation(&self) -> &GroupPresentation {
        &self.presentation
    }

    pub fn cycles(&self) -> &[SignedCycle] {
        &self.cycles
    }

    pub fn order(&self) -> num_bigint::BigInt {
        self.presentation.order()
    }

    pub fn equivalent(&self, x: &[i64], y: &[i64]) -> bool {
        self.presentation.equivalent(x, y)
    }

    /// One short representative per class.
    pub fn classes(&self, limit: usize) -> Result<Vec<Vec<i64>>> {
        let m = self.presentation.dim();
        if self.presentation.free_rank() != 0 {
            return Err(Error::Internal("projected cycles do not span a full-rank lattice".into()));
        }
        let mut steps = Vec::new();
        for e in 0..m {
            let mut s = vec![0; m];
            s[e] = 1;
            steps.push(s.clone());
            s[e] = -1;
            steps.push(s);
        }
        self.presentation.torsion_classes(&steps, limit)
    }
}

/// The Bernardi action `Γ` of the Jacobian on quasi-trees.
#[derive(Clone, Debug)]
pub struct BernardiAction<'g> {
    eg: &'g EmbeddedGraph,
    jacobian: Jacobian,
    quasitrees: Vec<Vec<EdgeId>>,
    orientations: Vec<Orientation>,
}

impl<'g> BernardiAction<'g> {
    pub fn new(eg: &'g EmbeddedGraph, e0: EdgeId) -> Result<Self> {
        let quasitrees = eg.enumerate_quasitrees()?;
        let orientations = quasitrees.iter().map(|q| eg.bernardi_orientation(q, e0)).collect::<Result<_>>()?;
        Ok(BernardiAction { eg, jacobian: eg.jacobian()?, quasitrees, orientations })
    }

    pub fn jacobian(&self) -> &Jacobian {
        &self.jacobian
    }

    pub fn quasitrees(&self) -> &[Vec<EdgeId>] {
        &self.quasitrees
    }

    /// The quasi-tree `q'` whose orientation is equivalent to
    /// `x + orientation(q)`.
    pub fn act(&self, x: &[i64], q: &[EdgeId]) -> Result<Vec<EdgeId>> {
        if x.len() != self.eg.edge_count() {
            return Err(Error::LengthMismatch { expected: self.eg.edge_count(), got: x.len() });
        }
        let mut q = q.to_vec();
        q.sort();
        let i = self.quasitrees.iter().position(|t| *t == q).ok_or(Error::NotQuasiTree)?;
        let base = &self.orientations[i].0;
        let mut found = None;
        for (j, o) in self.orientations.iter().enumerate() {
            // (o - base) / 2 - x, in whole numbers
            let delta: Vec<i64> =
                o.0.iter().zip(base).zip(x).map(|((&a, &b), &xe)| (a as i64 - b as i64) / 2 - xe).collect();
            if self.jacobian.presentation.contains(&delta) {
                if found.is_some() {
                    return Err(Error::Internal("two quasi-trees in one orientation class".into()));
                }
                found = Some(j);
            }
        }
        let j = found.ok_or_else(|| Error::Internal("no quasi-tree in the target orientation class".into()))?;
        Ok(self.quasitrees[j].clone())
    }
}

/// `Γ(x, q)` based at the first edge.
pub fn bernardi_action(eg: &EmbeddedGraph, x: &[i64], q: &[EdgeId]) -> Result<Vec<EdgeId>> {
    BernardiAction::new(eg, EdgeId(0))?.act(x, q)
}

/// A Jacobian class and quasi-tree on which the Bernardi action and the
/// tour-rotor action of the medial digraph disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub class: Vec<i64>,
    pub quasitree: Vec<EdgeId>,
    pub bernardi: Vec<EdgeId>,
    pub tour_rotor: Vec<EdgeId>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AgreementReport {
    pub pairs: usize,
    pub mismatches: Vec<Mismatch>,
}

/// Compares `Γ(x, q)` with the tour-rotor action of `phi(x)` on the tour of
/// `q`, for every class `x` and quasi-tree `q`.
pub fn verify_action_agreement(eg: &EmbeddedGraph) -> Result<AgreementReport> {
    let gamma = BernardiAction::new(eg, EdgeId(0))?;
    let tr = TourRotor::new(eg.medial())?;
    let mut report = AgreementReport::default();
    for x in gamma.jacobian().classes(100_000)? {
        let image = eg.phi(&x)?;
        for q in gamma.quasitrees() {
            let bernardi = gamma.act(&x, q)?;
            let moved = tr.act(&image, &eg.quasitree_to_tour(q)?)?;
            let tour_rotor = eg.tour_to_quasitree(&moved)?;
            report.pairs += 1;
            if bernardi != tour_rotor {
                report.mismatches.push(Mismatch { class: x.clone(), quasitree: q.clone(), bernardi, tour_rotor });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::sandpile::SandpileGroup;
    use num_bigint::BigInt;

    fn edges(g: &RibbonGraph, names: &[&str]) -> Vec<EdgeId> {
        let mut v: Vec<EdgeId> = names.iter().map(|n| g.edge_id(n).unwrap()).collect();
        v.sort();
        v
    }

    #[test]
    fn torus_quasitrees() {
        let t = fixtures::torus();
        let g = t.graph();
        let expected = vec![edges(g, &["e1"]), edges(g, &["e1", "e2", "e3"]), edges(g, &["e1", "e2", "e4"]), edges(g, &["e2"])];
        assert_eq!(t.enumerate_quasitrees().unwrap(), expected);
        assert!(!t.is_quasitree(&edges(g, &["e3"])).unwrap());
        for q in &expected {
            let tour = t.quasitree_to_tour(q).unwrap();
            assert_eq!(&t.tour_to_quasitree(&tour).unwrap(), q);
        }
    }

    #[test]
    fn k4_quasitrees_are_spanning_trees() {
        let k = EmbeddedGraph::with_default_orientation(fixtures::k4p()).unwrap();
        let qs = k.enumerate_quasitrees().unwrap();
        assert_eq!(qs.len(), 16);
        assert!(qs.iter().all(|q| k.graph().is_spanning_tree(q)));
    }

    #[test]
    fn torus_jacobian() {
        let t = fixtures::torus();
        let jac = t.jacobian().unwrap();
        assert_eq!(jac.presentation().invariant_factors(), vec![BigInt::from(4)]);
        assert_eq!(jac.cycles().len(), 7);
        assert!(jac.equivalent(&[1, 2, 3, 4], &[1, 2, 3, 4]));
    }

    #[test]
    fn torus_signed_cycles() {
        let t = fixtures::torus();
        let mut got: Vec<Vec<i64>> = t
            .enumerate_cycles()
            .unwrap()
            .into_iter()
            .map(|c| if c.values.iter().find(|&&v| v != 0) > Some(&0) { c.values } else { c.negated().values })
            .collect();
        let mut want: Vec<Vec<i64>> = vec![
            vec![0, 0, 0, 0, 1, -1, 0, 0],
            vec![0, 0, -1, 0, 1, 0, 0, 0],
            vec![0, 0, 0, 1, -1, 0, 0, 0],
            vec![0, 0, 1, 0, 0, -1, 0, 0],
            vec![0, 0, 0, 1, 0, -1, 0, 0],
            vec![0, 0, -1, 1, 0, 0, 0, 0],
            vec![1, 1, 0, 0, 0, 0, 1, 1],
        ]
        .into_iter()
        .map(|v| if v.iter().find(|&&x| x != 0) > Some(&0) { v } else { v.iter().map(|x| -x).collect() })
        .collect();
        got.sort();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn projection() {
        assert_eq!(project_pi(&[0, 0, 0, 1, -1, 0, 0, 0]), vec![-1, 0, 0, 1]);
        assert_eq!(project_pi(&[1, 1, 0, 0, 0, 0, 1, 1]), vec![1, 1, 1, 1]);
    }

    #[test]
    fn phi_on_torus() {
        let t = fixtures::torus();
        let group = SandpileGroup::new(t.medial()).unwrap();
        let image = t.phi(&[0, 0, -1, 0]).unwrap();
        assert!(group.equivalent(&image, &ChipConfig(vec![-1, 0, 1, 0])));
        let e3 = t.graph().edge_id("e3").unwrap();
        let chi_minus = ChipConfig::chi(t.medial(), t.med_minus(e3));
        assert_eq!(chi_minus.0, vec![1, 0, -1, 0]);
    }

    #[test]
    fn bernardi_examples() {
        let t = fixtures::torus();
        let g = t.graph();
        let e1 = g.edge_id("e1").unwrap();
        let o = t.bernardi_orientation(&edges(g, &["e1", "e2", "e3"]), e1).unwrap();
        assert_eq!(o.0, vec![-1, 1, 1, 1]);
        let o = t.bernardi_orientation(&edges(g, &["e1"]), e1).unwrap();
        assert_eq!(o.0, vec![-1, 1, -1, 1]);
        let q = bernardi_action(&t, &[0, 0, -1, 0], &edges(g, &["e1", "e2", "e3"])).unwrap();
        assert_eq!(q, edges(g, &["e1"]));
        assert_eq!(bernardi_action(&t, &[0; 4], &edges(g, &["e2"])).unwrap(), edges(g, &["e2"]));
    }

    #[test]
    fn agreement_on_torus() {
        let report = verify_action_agreement(&fixtures::torus()).unwrap();
        assert_eq!(report.pairs, 16);
        assert!(report.mismatches.is_empty(), "{:?}", report.mismatches);
    }
}
