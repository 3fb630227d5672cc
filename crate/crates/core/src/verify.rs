//! Seeded verification batteries, one per theorem id.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::fixtures;
use crate::jacobian::{project_pi, verify_action_agreement, EmbeddedGraph};
use crate::oracles::{enumerate_arborescences, routing_reachability, OracleBudget};
use crate::random::{random_embedded_graph, random_eulerian_digraph, random_ribbon_graph, rng, shuffle_rotations};
use crate::ribbon::{bidirect, cycle_is_separating, ArcEnd, ArcId, EdgeId, HalfEdge, RibbonDigraph, RibbonGraph, VertexId};
use crate::rotor::{reverse_unicycle_equivalent, rotor_equivalent, route, unicycle_cycle, unicycles, ChipRotorState, RotorConfig};
use crate::sandpile::{count_arborescences, decompose_cycles_cuts, ChipConfig, SandpileGroup};
use crate::tours::{check_root_independence, enumerate_compatible_tours, tour_to_arb, TourRotor};

pub const THEOREMS: [&str; 8] = [
    "best-count",
    "tour-rotor-canonical",
    "lemma-first-edge",
    "prop-cycles-cuts",
    "unicycle-reversal",
    "root-independence-planarity",
    "phi-isomorphism",
    "action-agreement",
];

/// Outcome of one battery.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub theorem: String,
    pub seed: u64,
    pub cases: usize,
    pub checks: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl Report {
    fn new(theorem: &str, seed: u64) -> Self {
        Report { theorem: theorem.into(), seed, cases: 0, checks: 0, failures: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verify {}", self.theorem)?;
        writeln!(f, "seed {}", self.seed)?;
        writeln!(f, "cases {}", self.cases)?;
        writeln!(f, "checks {}", self.checks)?;
        for n in &self.notes {
            writeln!(f, "note {n}")?;
        }
        for m in &self.failures {
            writeln!(f, "failure {m}")?;
        }
        write!(f, "result {}", if self.passed() { "pass" } else { "fail" })
    }
}

/// Runs the battery named `theorem`.
pub fn run(theorem: &str, seed: u64) -> Result<Report> {
    match theorem {
        "best-count" => best_count(seed),
        "tour-rotor-canonical" => tour_rotor_canonical(seed),
        "lemma-first-edge" => lemma_first_edge(seed),
        "prop-cycles-cuts" => prop_cycles_cuts(seed),
        "unicycle-reversal" => unicycle_reversal(seed),
        "root-independence-planarity" => root_independence_planarity(seed),
        "phi-isomorphism" => phi_isomorphism(seed),
        "action-agreement" => action_agreement(seed),
        other => Err(Error::Invalid(format!("unknown theorem id `{other}` (expected one of {})", THEOREMS.join(", ")))),
    }
}

/// `fig1`, `c3`, the medial digraph of `torus`, then 25 random Eulerian
/// ribbon digraphs with at most 6 vertices and 12 arcs.
pub fn digraph_battery(seed: u64) -> Vec<(String, RibbonDigraph)> {
    let mut out = vec![
        ("fig1".to_string(), fixtures::fig1()),
        ("c3".to_string(), fixtures::c3()),
        ("medial(torus)".to_string(), fixtures::torus().medial().clone()),
    ];
    let mut r = rng(seed);
    for i in 0..25 {
        out.push((format!("random#{i}"), random_eulerian_digraph(&mut r, 6, 12)));
    }
    out
}

/// `torus`, then 5 random embedded graphs with at most 5 edges.
pub fn embedded_battery(seed: u64) -> Vec<(String, EmbeddedGraph)> {
    let mut out = vec![("torus".to_string(), fixtures::torus())];
    let mut r = rng(seed ^ 0x5eed);
    for i in 0..5 {
        let n = r.gen_range(1..=4);
        let m = r.gen_range((n - 1).max(1)..=5);
        out.push((format!("random#{i}"), random_embedded_graph(&mut r, n, m, true)));
    }
    out
}

/// The group elements a battery acts with: every class when there are at
/// most `full` of them, otherwise `sample` random degree-zero vectors.
fn group_elements(group: &SandpileGroup, n: usize, full: usize, sample: usize, r: &mut impl Rng) -> Result<(Vec<ChipConfig>, bool)> {
    let order = group.order();
    if order <= full.into() {
        return Ok((group.classes(full)?, true));
    }
    let xs = (0..sample)
        .map(|_| {
            let mut x = ChipConfig((0..n).map(|_| r.gen_range(-3..=3)).collect());
            let s = x.sum();
            x.0[0] -= s;
            x
        })
        .collect();
    Ok((xs, false))
}

fn best_count(seed: u64) -> Result<Report> {
    let mut rep = Report::new("best-count", seed);
    let budget = OracleBudget { max_vertices: 8, max_arcs: 24, ..OracleBudget::default() };
    for (name, d) in digraph_battery(seed) {
        rep.cases += 1;
        let tours = enumerate_compatible_tours(&d)?.len();
        for v in d.vertices() {
            let det = count_arborescences(&d, v);
            rep.check(det == tours.into(), || format!("{name}: {tours} tours but {det} arborescences at `{}`", d.vertex_name(v)));
            let oracle = enumerate_arborescences(&d, v, &budget)?.len();
            rep.check(oracle == tours, || format!("{name}: {tours} tours but oracle finds {oracle} at `{}`", d.vertex_name(v)));
        }
    }
    Ok(rep)
}

fn tour_rotor_canonical(seed: u64) -> Result<Report> {
    let mut rep = Report::new("tour-rotor-canonical", seed);
    let mut r = rng(seed ^ 0xc0ffee);
    for (name, d) in digraph_battery(seed) {
        rep.cases += 1;
        let tr = TourRotor::new(&d)?;
        let tours = enumerate_compatible_tours(&d)?;
        let (xs, full) = group_elements(tr.router().group(), d.vertex_count(), 64, 20, &mut r)?;
        let index: HashMap<_, _> = tours.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        // images[t][k] = tour index of xs[k] acting on tours[t]
        let mut images = vec![Vec::with_capacity(xs.len()); tours.len()];
        for x in &xs {
            for (ti, t) in tours.iter().enumerate() {
                let base = tr.act(x, t)?;
                for via in d.arcs() {
                    let other = tr.act_via(x, t, via)?;
                    rep.check(other == base, || {
                        format!("{name}: action of {:?} on tour #{ti} differs through `{}`", x.0, d.arc_name(via))
                    });
                }
                images[ti].push(index[&base]);
            }
        }
        let keys: Vec<_> = xs.iter().map(|x| tr.router().group().class_key(x)).collect();
        for (ti, row) in images.iter().enumerate() {
            let hit: HashSet<usize> = row.iter().copied().collect();
            if full {
                rep.check(hit.len() == tours.len(), || format!("{name}: orbit of tour #{ti} has {} of {} tours", hit.len(), tours.len()));
            } else {
                // distinct classes must move the tour to distinct places
                for a in 0..row.len() {
                    for b in a + 1..row.len() {
                        rep.check((keys[a] == keys[b]) == (row[a] == row[b]), || {
                            format!("{name}: classes {:?} and {:?} disagree on tour #{ti}", xs[a].0, xs[b].0)
                        });
                    }
                }
            }
        }
    }
    Ok(rep)
}

fn lemma_first_edge(seed: u64) -> Result<Report> {
    let mut rep = Report::new("lemma-first-edge", seed);
    let mut r = rng(seed ^ 0xf1257);
    for (name, d) in digraph_battery(seed) {
        rep.cases += 1;
        let n = d.vertex_count();
        let arcs: Vec<ArcId> = d.arcs().collect();
        let pairs: Vec<(ArcId, ArcId)> = (0..10).map(|_| (*arcs.choose(&mut r).unwrap(), *arcs.choose(&mut r).unwrap())).collect();
        for t in enumerate_compatible_tours(&d)? {
            for &(uv, wz) in &pairs {
                let mut shift = ChipConfig::unit(n, d.head(uv));
                shift[d.head(wz)] -= 1;
                let s1 = ChipRotorState::new(shift, tour_to_arb(&d, &t, uv)?.with_root_arc(&d, uv)?);
                let s2 = ChipRotorState::new(ChipConfig::zero(n), tour_to_arb(&d, &t, wz)?.with_root_arc(&d, wz)?);
                rep.check(rotor_equivalent(&d, &s1, &s2)?, || {
                    format!("{name}: changing the first arc `{}` to `{}` breaks equivalence", d.arc_name(uv), d.arc_name(wz))
                });
            }
        }
    }
    Ok(rep)
}

/// Every connected loop-free multigraph with at most `max_edges` edges, one
/// per isomorphism class, each with an arbitrary rotation system.
pub fn loop_free_catalog(max_edges: usize) -> Vec<RibbonGraph> {
    let mut out = Vec::new();
    for n in 2..=max_edges + 1 {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let perms = permutations(n);
        let mut seen = BTreeSet::new();
        for m in n - 1..=max_edges {
            let mut pick = vec![0usize; m];
            'enumerate: loop {
                let edges: Vec<(usize, usize)> = pick.iter().map(|&i| pairs[i]).collect();
                if connected(n, &edges) {
                    let canon = perms
                        .iter()
                        .map(|p| {
                            let mut e: Vec<(usize, usize)> =
                                edges.iter().map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b]))).collect();
                            e.sort();
                            e
                        })
                        .min()
                        .expect("at least one permutation");
                    if seen.insert(canon.clone()) {
                        out.push(graph_from_edges(n, &canon));
                    }
                }
                // next nondecreasing index sequence
                let mut i = m;
                while i > 0 {
                    i -= 1;
                    if pick[i] + 1 < pairs.len() {
                        pick[i] += 1;
                        for j in i + 1..m {
                            pick[j] = pick[i];
                        }
                        continue 'enumerate;
                    }
                }
                break;
            }
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn graph_from_edges(n: usize, edges: &[(usize, usize)]) -> RibbonGraph {
    let mut rotation = vec![Vec::new(); n];
    for (i, &(a, b)) in edges.iter().enumerate() {
        rotation[a].push(HalfEdge::new(EdgeId(i), 0));
        rotation[b].push(HalfEdge::new(EdgeId(i), 1));
    }
    let names = (0..n).map(|v| format!("v{v}")).collect();
    let edges = edges.iter().enumerate().map(|(i, &(a, b))| (format!("e{}", i + 1), VertexId(a), VertexId(b))).collect();
    RibbonGraph::new(names, edges, rotation).expect("catalog graph is valid")
}

fn prop_cycles_cuts(seed: u64) -> Result<Report> {
    let mut rep = Report::new("prop-cycles-cuts", seed);
    rep.notes.push("exhaustive catalog; the seed is unused".into());
    for g in loop_free_catalog(5) {
        rep.cases += 1;
        let d = bidirect(&g);
        let group = SandpileGroup::new(&d)?;
        let m = d.arc_count();
        for mask in 0u32..(1 << m) {
            let f: Vec<ArcId> = (0..m).filter(|&i| mask & (1 << i) != 0).map(ArcId).collect();
            let zero = group.is_zero(&ChipConfig::chi_sum(&d, f.iter().copied()));
            let split = decompose_cycles_cuts(&d, &f)?.is_some();
            rep.check(zero == split, || {
                let names: Vec<&str> = f.iter().map(|&a| d.arc_name(a)).collect();
                format!("{} vertices, {} edges, F = {{{}}}: equivalent to zero {zero}, decomposes {split}", g.vertex_count(), g.edge_count(), names.join(","))
            });
        }
    }
    Ok(rep)
}

/// Replaces every loop by a path of length two through a new vertex,
/// keeping the embedding.
pub fn subdivide_loops(g: &RibbonGraph) -> RibbonGraph {
    let mut names: Vec<String> = g.vertices().map(|v| g.vertex_name(v).to_string()).collect();
    let mut edges: Vec<(String, VertexId, VertexId)> = Vec::new();
    let mut rotation: Vec<Vec<HalfEdge>> = g.vertices().map(|v| g.rotation(v).to_vec()).collect();
    // where each old half-edge ends up
    let mut moved: HashMap<HalfEdge, HalfEdge> = HashMap::new();
    let mut extra = Vec::new();
    for e in g.edges() {
        let (a, b) = g.endpoints(e);
        let id = EdgeId(edges.len());
        if !g.is_loop(e) {
            edges.push((g.edge_name(e).to_string(), a, b));
            moved.insert(HalfEdge::new(e, 0), HalfEdge::new(id, 0));
            moved.insert(HalfEdge::new(e, 1), HalfEdge::new(id, 1));
            continue;
        }
        let w = VertexId(names.len());
        names.push(format!("{}.mid", g.edge_name(e)));
        let second = EdgeId(id.0 + 1);
        edges.push((format!("{}a", g.edge_name(e)), a, w));
        edges.push((format!("{}b", g.edge_name(e)), w, a));
        moved.insert(HalfEdge::new(e, 0), HalfEdge::new(id, 0));
        moved.insert(HalfEdge::new(e, 1), HalfEdge::new(second, 1));
        extra.push(vec![HalfEdge::new(id, 1), HalfEdge::new(second, 0)]);
    }
    for rot in &mut rotation {
        for h in rot.iter_mut() {
            *h = moved[h];
        }
    }
    rotation.extend(extra);
    RibbonGraph::new(names, edges, rotation).expect("subdivision keeps a valid ribbon graph")
}

/// `k4p`, the torus fixture with its loops subdivided, then 10 random
/// loop-free ribbon graphs with at most 5 vertices and 8 edges.
pub fn unicycle_battery(seed: u64) -> Vec<(String, RibbonGraph)> {
    let mut graphs = vec![
        ("k4p".to_string(), fixtures::k4p()),
        ("torus (loops subdivided)".to_string(), subdivide_loops(fixtures::torus().graph())),
    ];
    let mut r = rng(seed ^ 0x0c1c1e);
    for i in 0..10 {
        let n = r.gen_range(2..=5);
        let m = r.gen_range(n - 1..=8);
        graphs.push((format!("random#{i}"), random_ribbon_graph(&mut r, n, m, false)));
    }
    graphs
}

/// For a unicycle `u` of `d = bidirect(g)`: the edges of its cycle, whether
/// that cycle separates the surface, and whether reversing it gives an
/// equivalent state.
pub fn reversal_case(g: &RibbonGraph, d: &RibbonDigraph, u: &RotorConfig) -> Result<(Vec<EdgeId>, bool, bool)> {
    let cycle = unicycle_cycle(d, u)?;
    let mut support: Vec<EdgeId> = cycle.iter().map(|a| EdgeId(a.0 / 2)).collect();
    support.sort();
    support.dedup();
    // going out and back along one edge bounds a thin strip
    let sep = if support.len() == 1 && cycle.len() == 2 { true } else { cycle_is_separating(g, &support)? };
    Ok((support, sep, reverse_unicycle_equivalent(g, u)?))
}

fn unicycle_reversal(seed: u64) -> Result<Report> {
    let mut rep = Report::new("unicycle-reversal", seed);
    let mut graphs = unicycle_battery(seed);
    graphs.push(("torus".to_string(), fixtures::torus().graph().clone()));
    let (mut exceptions, mut converse) = (0, 0);
    for (name, g) in graphs {
        rep.cases += 1;
        let d = bidirect(&g);
        for u in unicycles(&g, &d, 1_000_000)? {
            let (support, sep, eq) = reversal_case(&g, &d, &u)?;
            if g.has_loops() {
                // the equivalence needs a loop-free graph; only record what happens
                if sep != eq {
                    exceptions += 1;
                }
                continue;
            }
            let names: Vec<&str> = support.iter().map(|&e| g.edge_name(e)).collect();
            rep.check(!sep || eq, || format!("{name}: separating cycle {{{}}} but reversal is not equivalent", names.join(",")));
            if eq && !sep {
                converse += 1;
                if converse == 1 {
                    rep.notes.push(format!("first converse counterexample: {name} (genus {}), cycle {{{}}}", g.genus(), names.join(",")));
                }
            }
        }
    }
    rep.notes.push(format!("nonseparating cycles whose reversal is equivalent anyway {converse}"));
    rep.notes.push(format!("unicycles of graphs with loops where separation and reversal disagree {exceptions}"));
    Ok(rep)
}

/// Loop-free multigraphs whose rotation systems are shuffled by the
/// root-independence battery.
fn multigraph_shapes() -> Vec<Vec<(usize, usize)>> {
    vec![
        vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        vec![(0, 1), (0, 1), (0, 1)],
        vec![(0, 1), (1, 2), (2, 0), (0, 1)],
        vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)],
        vec![(0, 1), (0, 1), (1, 2), (1, 2), (2, 0)],
    ]
}

fn root_independence_planarity(seed: u64) -> Result<Report> {
    let mut rep = Report::new("root-independence-planarity", seed);
    let torus_free = subdivide_loops(fixtures::torus().graph());
    let mut graphs = vec![("k4p".to_string(), fixtures::k4p()), ("torus (loops subdivided)".to_string(), torus_free)];
    let mut r = rng(seed ^ 0x9e0);
    for (i, shape) in multigraph_shapes().iter().enumerate() {
        let n = shape.iter().map(|&(a, b)| a.max(b)).max().unwrap_or(0) + 1;
        let base = graph_from_edges(n, shape);
        for k in 0..8 {
            graphs.push((format!("shape#{i} rotation#{k}"), shuffle_rotations(&mut r, &base)));
        }
    }
    let (mut planar, mut higher) = (0, 0);
    for (name, g) in graphs {
        rep.cases += 1;
        let genus = g.genus();
        if genus == 0 {
            planar += 1;
        } else {
            higher += 1;
        }
        let res = check_root_independence(&g)?;
        rep.check(res.independent == (genus == 0), || format!("{name}: genus {genus} but independent {}", res.independent));
        rep.check(res.witness.is_some() != res.independent, || format!("{name}: witness does not match the verdict"));
    }
    rep.notes.push(format!("genus 0 cases {planar}, higher genus cases {higher}"));
    Ok(rep)
}

fn phi_isomorphism(seed: u64) -> Result<Report> {
    let mut rep = Report::new("phi-isomorphism", seed);
    let mut r = rng(seed ^ 0x9f1);
    for (name, eg) in embedded_battery(seed) {
        rep.cases += 1;
        let jac = eg.jacobian()?;
        let med = SandpileGroup::new(eg.medial())?;
        rep.check(jac.order() == med.order(), || format!("{name}: Jacobian order {} but medial order {}", jac.order(), med.order()));
        for c in jac.cycles() {
            let image = eg.phi(&project_pi(&c.values))?;
            rep.check(med.is_zero(&image), || format!("{name}: a signed cycle maps to {:?}, not zero", image.0));
        }
        let classes = jac.classes(100_000)?;
        let keys: HashSet<_> = classes.iter().map(|x| eg.phi(x).map(|y| med.class_key(&y))).collect::<Result<_>>()?;
        rep.check(keys.len() == classes.len(), || format!("{name}: {} classes have {} images", classes.len(), keys.len()));
        let total = med.order();
        rep.check(total == keys.len().into(), || format!("{name}: images cover {} of {total} classes", keys.len()));
        // equivalent inputs have equivalent images
        let m = eg.edge_count();
        for _ in 0..10 {
            let x: Vec<i64> = (0..m).map(|_| r.gen_range(-3..=3)).collect();
            let mut y = x.clone();
            for c in jac.cycles() {
                let k = r.gen_range(-2..=2);
                for (ye, pe) in y.iter_mut().zip(project_pi(&c.values)) {
                    *ye += k * pe;
                }
            }
            let same = med.equivalent(&eg.phi(&x)?, &eg.phi(&y)?);
            rep.check(same, || format!("{name}: {x:?} and {y:?} are equivalent but their images are not"));
        }
    }
    Ok(rep)
}

fn action_agreement(seed: u64) -> Result<Report> {
    let mut rep = Report::new("action-agreement", seed);
    for (name, eg) in embedded_battery(seed) {
        rep.cases += 1;
        let res = verify_action_agreement(&eg)?;
        rep.notes.push(format!("{name}: {} pairs", res.pairs));
        for mm in &res.mismatches {
            rep.failures.push(format!("{name}: class {:?} on quasi-tree {:?}", mm.class, mm.quasitree));
        }
        rep.checks += res.pairs;
    }
    Ok(rep)
}

/// Every Eulerian digraph (weakly connected, at least one arc) with at most
/// `max_vertices` vertices and `max_arcs` arcs, one per isomorphism class,
/// with its out-arcs in arc order.
pub fn small_eulerian_digraphs(max_vertices: usize, max_arcs: usize) -> Vec<RibbonDigraph> {
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
        let perms = permutations(n);
        let mut seen = BTreeSet::new();
        for m in 1..=max_arcs {
            let mut pick = vec![0usize; m];
            'enumerate: loop {
                let arcs: Vec<(usize, usize)> = pick.iter().map(|&i| pairs[i]).collect();
                let balanced = (0..n).all(|v| arcs.iter().filter(|a| a.0 == v).count() == arcs.iter().filter(|a| a.1 == v).count());
                if balanced && connected(n, &arcs) {
                    let canon = perms
                        .iter()
                        .map(|p| {
                            let mut a: Vec<(usize, usize)> = arcs.iter().map(|&(x, y)| (p[x], p[y])).collect();
                            a.sort();
                            a
                        })
                        .min()
                        .expect("at least one permutation");
                    if seen.insert(canon.clone()) {
                        out.push(digraph_from_arcs(n, &canon));
                    }
                }
                let mut i = m;
                while i > 0 {
                    i -= 1;
                    if pick[i] + 1 < pairs.len() {
                        pick[i] += 1;
                        for j in i + 1..m {
                            pick[j] = pick[i];
                        }
                        continue 'enumerate;
                    }
                }
                break;
            }
        }
    }
    out
}

fn digraph_from_arcs(n: usize, arcs: &[(usize, usize)]) -> RibbonDigraph {
    let mut rotation = vec![Vec::new(); n];
    for (i, &(t, _)) in arcs.iter().enumerate() {
        rotation[t].push(ArcEnd::tail(ArcId(i)));
    }
    for (i, &(_, h)) in arcs.iter().enumerate() {
        rotation[h].push(ArcEnd::head(ArcId(i)));
    }
    let names = (0..n).map(|v| format!("v{v}")).collect();
    let arcs = arcs.iter().enumerate().map(|(i, &(t, h))| (format!("a{i}"), VertexId(t), VertexId(h))).collect();
    RibbonDigraph::new(names, arcs, rotation).expect("catalog digraph is valid")
}

/// Compares `rotor_equivalent` with the routing oracle on random state
/// pairs of every small Eulerian digraph. Pairs the oracle cannot settle
/// inside its budget are counted in the notes.
pub fn rotor_equivalence_soundness(seed: u64) -> Result<Report> {
    let mut rep = Report::new("rotor-equivalence-soundness", seed);
    let budget = OracleBudget::default();
    let mut r = rng(seed ^ 0x50d);
    let mut inconclusive = 0;
    for d in small_eulerian_digraphs(3, 6) {
        rep.cases += 1;
        let n = d.vertex_count();
        let random_state = |r: &mut rand_chacha::ChaCha8Rng| {
            let chips = ChipConfig((0..n).map(|_| r.gen_range(-2..=2)).collect());
            let rotors = d.vertices().map(|v| d.out_arcs(v).choose(r).copied()).collect();
            ChipRotorState::new(chips, RotorConfig::new(&d, rotors).expect("rotors are out-arcs"))
        };
        for k in 0..8 {
            let s1 = random_state(&mut r);
            let s2 = if k % 2 == 0 {
                // a state reached by genuine routings, moved sums included
                let mut s = s1.clone();
                for _ in 0..r.gen_range(0..6) {
                    s = route(&d, &s, VertexId(r.gen_range(0..n)))?;
                }
                s
            } else {
                let mut s = random_state(&mut r);
                let diff = s1.chips.sum() - s.chips.sum();
                s.chips.0[0] += diff;
                s
            };
            let fast = rotor_equivalent(&d, &s1, &s2)?;
            match routing_reachability(&d, &s1, &s2, &budget) {
                Ok(slow) => rep.check(fast == slow, || format!("{}: {:?} vs {:?}: algebra {fast}, oracle {slow}", describe(&d), s1, s2)),
                Err(Error::Budget(_)) => inconclusive += 1,
                Err(e) => return Err(e),
            }
        }
    }
    rep.notes.push(format!("inconclusive {inconclusive}"));
    Ok(rep)
}

fn describe(d: &RibbonDigraph) -> String {
    let arcs: Vec<String> =
        d.arcs().map(|a| format!("{}->{}", d.vertex_name(d.tail(a)), d.vertex_name(d.head(a)))).collect();
    arcs.join(" ")
}
