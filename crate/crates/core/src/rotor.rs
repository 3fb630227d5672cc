//! Rotor configurations, routing, and the rotor-routing action of the
//! sandpile group on arborescences.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ribbon::{bidirect, ArcId, EdgeId, HalfEdge, RibbonDigraph, RibbonGraph, VertexId};
use crate::sandpile::{ChipConfig, SandpileGroup};

/// One out-arc per vertex that has any.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RotorConfig(Vec<Option<ArcId>>);

impl RotorConfig {
    pub fn new(d: &RibbonDigraph, rotors: Vec<Option<ArcId>>) -> Result<Self> {
        if rotors.len() != d.vertex_count() {
            return Err(Error::LengthMismatch { expected: d.vertex_count(), got: rotors.len() });
        }
        for v in d.vertices() {
            match rotors[v.0] {
                Some(a) if a.0 >= d.arc_count() || d.tail(a) != v => {
                    return Err(Error::BadRotor(d.vertex_name(v).to_string()))
                }
                None if d.out_degree(v) > 0 => return Err(Error::BadRotor(d.vertex_name(v).to_string())),
                _ => {}
            }
        }
        Ok(RotorConfig(rotors))
    }

    /// The first out-arc in rotation order at every vertex.
    pub fn first_arcs(d: &RibbonDigraph) -> Self {
        RotorConfig(d.vertices().map(|v| d.out_arcs(v).first().copied()).collect())
    }

    pub fn get(&self, v: VertexId) -> Option<ArcId> {
        self.0[v.0]
    }

    pub fn arcs(&self) -> impl Iterator<Item = ArcId> + '_ {
        self.0.iter().flatten().copied()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChipRotorState {
    pub chips: ChipConfig,
    pub rotors: RotorConfig,
}

impl ChipRotorState {
    pub fn new(chips: ChipConfig, rotors: RotorConfig) -> Self {
        ChipRotorState { chips, rotors }
    }
}

/// A spanning arborescence: every vertex but the root has one out-arc and
/// following them always reaches the root.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arborescence {
    root: VertexId,
    arcs: Vec<Option<ArcId>>,
}

impl Arborescence {
    pub fn new(d: &RibbonDigraph, root: VertexId, arcs: &[ArcId]) -> Result<Self> {
        let n = d.vertex_count();
        if root.0 >= n {
            return Err(Error::UnknownVertex(root.to_string()));
        }
        let mut out = vec![None; n];
        for &a in arcs {
            let t = d.tail(a);
            if t == root {
                return Err(Error::NotArborescence("the root has an out-arc".into()));
            }
            if out[t.0].replace(a).is_some() {
                return Err(Error::NotArborescence(format!("vertex `{}` has two out-arcs", d.vertex_name(t))));
            }
        }
        Self::from_parts(d, root, out)
    }

    fn from_parts(d: &RibbonDigraph, root: VertexId, arcs: Vec<Option<ArcId>>) -> Result<Self> {
        for v in d.vertices() {
            let mut at = v;
            for _ in 0..d.vertex_count() {
                if at == root {
                    break;
                }
                match arcs[at.0] {
                    Some(a) => at = d.head(a),
                    None => {
                        return Err(Error::NotArborescence(format!("vertex `{}` has no out-arc", d.vertex_name(at))))
                    }
                }
            }
            if at != root {
                return Err(Error::NotArborescence(format!("vertex `{}` does not reach the root", d.vertex_name(v))));
            }
        }
        Ok(Arborescence { root, arcs })
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    /// `T(v)`, the arc leaving `v`.
    pub fn arc(&self, v: VertexId) -> Option<ArcId> {
        self.arcs[v.0]
    }

    pub fn arcs(&self) -> impl Iterator<Item = ArcId> + '_ {
        self.arcs.iter().flatten().copied()
    }

    /// The rotor configuration `T ∪ {root_arc}`.
    pub fn with_root_arc(&self, d: &RibbonDigraph, root_arc: ArcId) -> Result<RotorConfig> {
        if d.tail(root_arc) != self.root {
            return Err(Error::BadRotor(d.vertex_name(self.root).to_string()));
        }
        let mut r = self.arcs.clone();
        r[self.root.0] = Some(root_arc);
        RotorConfig::new(d, r)
    }
}

/// One routing at `v`: its rotor advances and a chip follows the new rotor.
pub fn route(d: &RibbonDigraph, s: &ChipRotorState, v: VertexId) -> Result<ChipRotorState> {
    if v.0 >= d.vertex_count() {
        return Err(Error::UnknownVertex(v.to_string()));
    }
    let Some(old) = s.rotors.get(v) else {
        return Err(Error::NoOutArcs(d.vertex_name(v).to_string()));
    };
    let mut next = s.clone();
    let a = d.next_out(old);
    next.rotors.0[v.0] = Some(a);
    next.chips[v] -= 1;
    next.chips[d.head(a)] += 1;
    Ok(next)
}

/// Chips moved by advancing every rotor of `from` until it shows `to`.
pub fn rotor_residue(d: &RibbonDigraph, from: &RotorConfig, to: &RotorConfig) -> ChipConfig {
    let mut w = ChipConfig::zero(d.vertex_count());
    for v in d.vertices() {
        if let (Some(mut a), Some(b)) = (from.get(v), to.get(v)) {
            while a != b {
                a = d.next_out(a);
                w[v] -= 1;
                w[d.head(a)] += 1;
            }
        }
    }
    w
}

fn strongly_connected(d: &RibbonDigraph) -> bool {
    let reach = |forward: bool| {
        let mut seen = vec![false; d.vertex_count()];
        let mut stack = vec![VertexId(0)];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for a in d.arcs() {
                let (from, to) = if forward { (d.tail(a), d.head(a)) } else { (d.head(a), d.tail(a)) };
                if from == v && !seen[to.0] {
                    seen[to.0] = true;
                    stack.push(to);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    d.vertex_count() == 0 || (reach(true) && reach(false))
}

/// Whether the two states are related by unconstrained routings (chip
/// counts may go negative).
pub fn rotor_equivalent(d: &RibbonDigraph, s1: &ChipRotorState, s2: &ChipRotorState) -> Result<bool> {
    if !strongly_connected(d) {
        return Err(Error::Invalid("rotor equivalence needs a strongly connected digraph".into()));
    }
    s1.chips.check_len(d.vertex_count())?;
    s2.chips.check_len(d.vertex_count())?;
    let w = rotor_residue(d, &s1.rotors, &s2.rotors);
    let diff = &(&s2.chips - &s1.chips) - &w;
    crate::sandpile::linearly_equivalent(d, &diff, &ChipConfig::zero(d.vertex_count()))
}

/// How the legal routing game picks its moves.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GameOptions {
    /// Arc placed on the root's rotor; the least out-arc by default.
    pub root_arc: Option<ArcId>,
    /// Route a random eligible vertex instead of the least one.
    pub shuffle_seed: Option<u64>,
}

/// An Eulerian digraph with its sandpile group, ready to run the
/// rotor-routing action many times.
#[derive(Clone, Debug)]
pub struct RotorRouter<'d> {
    d: &'d RibbonDigraph,
    group: SandpileGroup,
}

impl<'d> RotorRouter<'d> {
    pub fn new(d: &'d RibbonDigraph) -> Result<Self> {
        Ok(RotorRouter { d, group: SandpileGroup::new(d)? })
    }

    pub fn digraph(&self) -> &'d RibbonDigraph {
        self.d
    }

    pub fn group(&self) -> &SandpileGroup {
        &self.group
    }

    /// A configuration equivalent to `x` with no negative entries off
    /// `root`. Since `exponent * (1_u - 1_root)` is a firing combination for
    /// every `u`, adding a multiple of their sum keeps the class.
    pub fn effectivize(&self, root: VertexId, x: &ChipConfig) -> ChipConfig {
        let deficit = self.d.vertices().filter(|&u| u != root).map(|u| -x[u]).max().unwrap_or(0);
        let e = self.group.exponent();
        let k = if deficit > 0 { (deficit + e - 1) / e * e } else { 0 };
        let mut y = x.clone();
        for u in self.d.vertices().filter(|&u| u != root) {
            y[u] += k;
            y[root] -= k;
        }
        y
    }

    /// `r_root(x, T)`: the legal rotor-routing game started from
    /// `(x', T ∪ root_arc)` with `x' ~ x` nonnegative off the root.
    pub fn act(&self, root: VertexId, x: &ChipConfig, t: &Arborescence) -> Result<Arborescence> {
        self.act_with(root, x, t, &GameOptions::default())
    }

    pub fn act_with(&self, root: VertexId, x: &ChipConfig, t: &Arborescence, opts: &GameOptions) -> Result<Arborescence> {
        let d = self.d;
        x.check_len(d.vertex_count())?;
        if x.sum() != 0 {
            return Err(Error::NonZeroSum(x.sum()));
        }
        if t.root() != root {
            return Err(Error::NotArborescence(format!("rooted at `{}`, not `{}`", d.vertex_name(t.root()), d.vertex_name(root))));
        }
        if d.out_degree(root) == 0 {
            // a single vertex without arcs
            return Ok(t.clone());
        }
        let root_arc = opts.root_arc.unwrap_or(d.out_arcs(root)[0]);
        let mut rotors: Vec<Option<ArcId>> = t.with_root_arc(d, root_arc)?.0;
        let mut chips = self.effectivize(root, x);
        let positive: i64 = chips.0.iter().enumerate().filter(|&(v, _)| v != root.0).map(|(_, &c)| c).sum();
        let guard = (d.arc_count() as u64)
            .saturating_mul(1 + positive as u64)
            .saturating_mul(d.vertex_count() as u64)
            .saturating_mul(self.group.exponent() as u64);
        let mut rng = opts.shuffle_seed.map(ChaCha8Rng::seed_from_u64);
        let mut steps = 0u64;
        loop {
            let eligible: Vec<VertexId> = d.vertices().filter(|&u| u != root && chips[u] > 0).collect();
            let Some(&first) = eligible.first() else { break };
            let u = match rng.as_mut() {
                Some(rng) => *eligible.choose(rng).expect("nonempty"),
                None => first,
            };
            let a = d.next_out(rotors[u.0].expect("non-root vertices carry rotors"));
            rotors[u.0] = Some(a);
            chips[u] -= 1;
            chips[d.head(a)] += 1;
            steps += 1;
            if steps > guard {
                return Err(Error::Internal("legal routing game did not terminate".into()));
            }
        }
        rotors[root.0] = None;
        Arborescence::from_parts(d, root, rotors)
            .map_err(|e| Error::Internal(format!("routing game ended off an arborescence: {e}")))
    }
}

/// `r_root(x, T)` for a single computation.
pub fn rotor_action_digraph(d: &RibbonDigraph, root: VertexId, x: &ChipConfig, t: &Arborescence) -> Result<Arborescence> {
    RotorRouter::new(d)?.act(root, x, t)
}

/// Orients the spanning tree `tree` of `g` towards `root` inside
/// `bidirect(g)`.
pub fn orient_tree(g: &RibbonGraph, d: &RibbonDigraph, root: VertexId, tree: &[EdgeId]) -> Result<Arborescence> {
    if !g.is_spanning_tree(tree) {
        return Err(Error::NotSpanningTree(format!("{} edges on {} vertices", tree.len(), g.vertex_count())));
    }
    let mut arcs = Vec::new();
    let mut reached = vec![false; g.vertex_count()];
    reached[root.0] = true;
    let mut frontier = vec![root];
    while let Some(v) = frontier.pop() {
        for &e in tree {
            for side in 0..2u8 {
                let h = HalfEdge::new(e, side);
                // the arc leaving through h points into v
                if g.vertex(h.opposite()) == v && !reached[g.vertex(h).0] {
                    reached[g.vertex(h).0] = true;
                    frontier.push(g.vertex(h));
                    arcs.push(ArcId(h.0));
                }
            }
        }
    }
    Arborescence::new(d, root, &arcs)
}

/// Edges underlying an arborescence of `bidirect(g)`, sorted.
pub fn forget_orientation(t: &Arborescence) -> Vec<EdgeId> {
    let mut edges: Vec<EdgeId> = t.arcs().map(|a| EdgeId(a.0 / 2)).collect();
    edges.sort();
    edges
}

/// The rotor-routing action on spanning trees of an undirected graph.
pub fn rotor_action_undirected(g: &RibbonGraph, root: VertexId, x: &ChipConfig, tree: &[EdgeId]) -> Result<Vec<EdgeId>> {
    let d = bidirect(g);
    let t = orient_tree(g, &d, root, tree)?;
    Ok(forget_orientation(&rotor_action_digraph(&d, root, x, &t)?))
}

/// Arcs of the unique directed cycle of a unicycle, or an error if the
/// rotors close up into more or fewer cycles.
pub fn unicycle_cycle(d: &RibbonDigraph, r: &RotorConfig) -> Result<Vec<ArcId>> {
    let n = d.vertex_count();
    if d.vertices().any(|v| r.get(v).is_none()) {
        return Err(Error::NotUnicycle("some vertex has no rotor".into()));
    }
    // state 0 = unvisited, 1 = on current path, 2 = done
    let mut state = vec![0u8; n];
    let mut cycles = Vec::new();
    for s in 0..n {
        let mut path = Vec::new();
        let mut v = s;
        while state[v] == 0 {
            state[v] = 1;
            path.push(v);
            v = d.head(r.get(VertexId(v)).expect("checked")).0;
        }
        if state[v] == 1 {
            let start = path.iter().position(|&p| p == v).expect("on path");
            cycles.push(path[start..].iter().map(|&p| r.get(VertexId(p)).expect("checked")).collect::<Vec<_>>());
        }
        for p in path {
            state[p] = 2;
        }
    }
    match cycles.len() {
        1 => Ok(cycles.pop().expect("one cycle")),
        k => Err(Error::NotUnicycle(format!("rotors contain {k} cycles"))),
    }
}

/// Whether reversing the cycle of the unicycle `r` on `bidirect(g)` gives a
/// rotor-equivalent state (with no chips on either side).
///
/// Each cycle arc is replaced by the opposite arc of the same edge; for a
/// loop that is the other orientation of the loop.
pub fn reverse_unicycle_equivalent(g: &RibbonGraph, r: &RotorConfig) -> Result<bool> {
    let d = bidirect(g);
    let cycle = unicycle_cycle(&d, r)?;
    let mut reversed = r.clone();
    for a in &cycle {
        reversed.0[d.head(*a).0] = Some(ArcId(a.0 ^ 1));
    }
    let zero = ChipConfig::zero(d.vertex_count());
    rotor_equivalent(&d, &ChipRotorState::new(zero.clone(), r.clone()), &ChipRotorState::new(zero, reversed))
}

/// Unicycle rotor configurations of `bidirect(g)`.
pub fn unicycles(g: &RibbonGraph, d: &RibbonDigraph, limit: usize) -> Result<Vec<RotorConfig>> {
    let _ = g;
    let total: usize = d.vertices().map(|v| d.out_degree(v)).try_fold(1usize, |acc, k| acc.checked_mul(k)).unwrap_or(usize::MAX);
    if total > limit {
        return Err(Error::TooLarge(format!("{total} rotor configurations exceed limit {limit}")));
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; d.vertex_count()];
    loop {
        let r = RotorConfig(d.vertices().map(|v| d.out_arcs(v).get(idx[v.0]).copied()).collect());
        if unicycle_cycle(d, &r).is_ok() {
            out.push(r);
        }
        let mut i = 0;
        loop {
            if i == idx.len() {
                return Ok(out);
            }
            idx[i] += 1;
            if idx[i] < d.out_degree(VertexId(i)) {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::sandpile::fire;

    #[test]
    fn routing_basics() {
        let d = fixtures::c3();
        let s = ChipRotorState::new(ChipConfig(vec![1, 0, -1]), RotorConfig::first_arcs(&d));
        let t = route(&d, &s, VertexId(0)).unwrap();
        assert_eq!(t.rotors, s.rotors);
        assert_eq!(t.chips.0, vec![0, 1, -1]);
    }

    #[test]
    fn routing_out_degree_times_is_firing() {
        let d = fixtures::fig1();
        let mid = d.vertex_id("4").unwrap();
        let mut s = ChipRotorState::new(ChipConfig::zero(4), RotorConfig::first_arcs(&d));
        assert_eq!(s.rotors.get(mid), Some(d.arc_id("e4").unwrap()));
        let once = route(&d, &s, mid).unwrap();
        assert_eq!(once.rotors.get(mid), Some(d.arc_id("e2").unwrap()));
        assert_eq!(once.chips[d.vertex_id("1").unwrap()], 1);
        for _ in 0..3 {
            s = route(&d, &s, mid).unwrap();
        }
        assert_eq!(s.rotors, RotorConfig::first_arcs(&d));
        assert_eq!(s.chips, fire(&d, &ChipConfig::zero(4), mid).unwrap());
    }

    #[test]
    fn rotor_equivalence_examples() {
        let d = fixtures::fig1();
        let s = ChipRotorState::new(ChipConfig(vec![2, -1, 0, -1]), RotorConfig::first_arcs(&d));
        assert!(rotor_equivalent(&d, &s, &s).unwrap());
        for v in d.vertices() {
            assert!(rotor_equivalent(&d, &s, &route(&d, &s, v).unwrap()).unwrap());
        }
        let other = ChipRotorState::new(ChipConfig(vec![1, 0, 0, -1]), s.rotors.clone());
        let same = crate::sandpile::linearly_equivalent(&d, &s.chips, &other.chips).unwrap();
        assert_eq!(rotor_equivalent(&d, &s, &other).unwrap(), same);
    }

    #[test]
    fn fig1_action_and_inverse() {
        let d = fixtures::fig1();
        let root = d.vertex_id("1").unwrap();
        let arcs: Vec<ArcId> = ["e6", "e9", "e7"].iter().map(|a| d.arc_id(a).unwrap()).collect();
        let t = Arborescence::new(&d, root, &arcs).unwrap();
        let router = RotorRouter::new(&d).unwrap();
        assert_eq!(router.act(root, &ChipConfig::zero(4), &t).unwrap(), t);
        for x in router.group().classes(1000).unwrap() {
            let there = router.act(root, &x, &t).unwrap();
            assert_eq!(router.act(root, &-&x, &there).unwrap(), t);
        }
    }

    #[test]
    fn undirected_k4_is_simply_transitive() {
        let g = fixtures::k4p();
        let d = bidirect(&g);
        let root = VertexId(0);
        let router = RotorRouter::new(&d).unwrap();
        let classes = router.group().classes(100).unwrap();
        assert_eq!(classes.len(), 16);
        let tree = [EdgeId(0), EdgeId(1), EdgeId(3)];
        let t = orient_tree(&g, &d, root, &tree).unwrap();
        let mut images: Vec<Vec<EdgeId>> =
            classes.iter().map(|x| forget_orientation(&router.act(root, x, &t).unwrap())).collect();
        images.sort();
        images.dedup();
        assert_eq!(images.len(), 16);
        assert_eq!(rotor_action_undirected(&g, root, &ChipConfig::zero(4), &tree).unwrap(), tree.to_vec());
    }

    #[test]
    fn unicycle_reversal_examples() {
        let g = fixtures::k4p();
        let d = bidirect(&g);
        let all = unicycles(&g, &d, 1000).unwrap();
        assert!(!all.is_empty());
        for r in &all {
            assert!(reverse_unicycle_equivalent(&g, r).unwrap());
        }
        let t = fixtures::torus();
        let g = t.graph();
        let d = bidirect(g);
        let e3 = g.edge_id("e3").unwrap();
        let e1 = g.edge_id("e1").unwrap();
        // loop e3 at v1, v2 points back along e1
        let r = RotorConfig::new(&d, vec![Some(ArcId(2 * e3.0)), Some(ArcId(2 * e1.0 + 1))]).unwrap();
        assert!(!reverse_unicycle_equivalent(g, &r).unwrap());
    }

    // Five parallel edges with a genus-2 rotation: the cycle along e4 and
    // back along e2 does not separate, yet two routings at each end reverse it.
    #[test]
    fn nonseparating_cycle_with_equivalent_reversal() {
        let g = crate::format::parse_graph(
            "ribbon_graph
             vertex v0 rotation e3:0 e4:0 e1:0 e2:1 e5:0
             vertex v1 rotation e3:1 e2:0 e5:1 e4:1 e1:1
             edge e1 v0 v1
             edge e2 v1 v0
             edge e3 v0 v1
             edge e4 v0 v1
             edge e5 v0 v1",
        )
        .unwrap();
        assert_eq!(g.genus(), 2);
        let d = bidirect(&g);
        let arc = |name: &str| d.arc_id(name).unwrap();
        let r = RotorConfig::new(&d, vec![Some(arc("e4+")), Some(arc("e2+"))]).unwrap();
        let cycle: Vec<EdgeId> = vec![g.edge_id("e2").unwrap(), g.edge_id("e4").unwrap()];
        assert!(!crate::ribbon::cycle_is_separating(&g, &cycle).unwrap());
        assert!(reverse_unicycle_equivalent(&g, &r).unwrap());
        let mut s = ChipRotorState::new(ChipConfig::zero(2), r);
        for v in [0, 0, 1, 1] {
            s = route(&d, &s, VertexId(v)).unwrap();
        }
        assert!(s.chips.is_zero());
        assert_eq!((s.rotors.get(VertexId(0)), s.rotors.get(VertexId(1))), (Some(arc("e2-")), Some(arc("e4-"))));
    }
}
