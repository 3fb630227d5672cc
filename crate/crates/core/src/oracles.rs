//! Brute-force references for the algebraic shortcuts elsewhere in the
//! crate. Nothing here calls into the code it is meant to check: the
//! searches follow arcs and move chips themselves.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::ribbon::{ArcId, EdgeId, RibbonDigraph, RibbonGraph, VertexId};
use crate::rotor::ChipRotorState;
use crate::sandpile::ChipConfig;

/// Limits checked before any exponential search starts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_arcs: usize,
    /// Maximum number of states a search may visit.
    pub max_depth: usize,
    /// Maximum number of objects an enumeration may return.
    pub max_subset: usize,
    /// Chip searches stay inside `|x(v)| <= chip_bound`.
    pub chip_bound: i64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_vertices: 8, max_arcs: 24, max_depth: 2_000_000, max_subset: 1_000_000, chip_bound: 4 }
    }
}

impl OracleBudget {
    fn admit(&self, vertices: usize, arcs: usize) -> Result<()> {
        if vertices > self.max_vertices || arcs > self.max_arcs {
            return Err(Error::Budget(format!(
                "{vertices} vertices / {arcs} arcs exceed {} / {}",
                self.max_vertices, self.max_arcs
            )));
        }
        Ok(())
    }
}

/// Every spanning arborescence towards `root`, as sorted arc lists.
pub fn enumerate_arborescences(d: &RibbonDigraph, root: VertexId, budget: &OracleBudget) -> Result<Vec<Vec<ArcId>>> {
    budget.admit(d.vertex_count(), d.arc_count())?;
    let n = d.vertex_count();
    let others: Vec<usize> = (0..n).filter(|&v| v != root.0).collect();
    let outs: Vec<Vec<ArcId>> =
        (0..n).map(|v| d.arcs().filter(|&a| d.tail(a).0 == v && d.head(a).0 != v).collect()).collect();
    let mut choice: Vec<Option<ArcId>> = vec![None; n];
    let mut found = Vec::new();
    fn reaches_root(d: &RibbonDigraph, choice: &[Option<ArcId>], root: usize, from: usize) -> bool {
        let mut at = from;
        for _ in 0..choice.len() {
            if at == root {
                return true;
            }
            match choice[at] {
                Some(a) => at = d.head(a).0,
                None => return true,
            }
        }
        at == root
    }
    #[allow(clippy::too_many_arguments)]
    fn go(
        d: &RibbonDigraph,
        outs: &[Vec<ArcId>],
        others: &[usize],
        i: usize,
        root: usize,
        choice: &mut Vec<Option<ArcId>>,
        found: &mut Vec<Vec<ArcId>>,
        cap: usize,
    ) -> Result<()> {
        if i == others.len() {
            if found.len() == cap {
                return Err(Error::Budget(format!("more than {cap} arborescences")));
            }
            let mut arcs: Vec<ArcId> = choice.iter().flatten().copied().collect();
            arcs.sort();
            found.push(arcs);
            return Ok(());
        }
        let v = others[i];
        for &a in &outs[v] {
            choice[v] = Some(a);
            // a partial choice is acyclic iff following it never loops
            if reaches_root(d, choice, root, v) {
                go(d, outs, others, i + 1, root, choice, found, cap)?;
            }
            choice[v] = None;
        }
        Ok(())
    }
    go(d, &outs, &others, 0, root.0, &mut choice, &mut found, budget.max_subset)?;
    Ok(found)
}

/// Every spanning tree, as sorted edge lists. Loops never appear.
pub fn enumerate_spanning_trees(g: &RibbonGraph, budget: &OracleBudget) -> Result<Vec<Vec<EdgeId>>> {
    budget.admit(g.vertex_count(), g.edge_count())?;
    let n = g.vertex_count();
    let m = g.edge_count();
    let mut found = Vec::new();
    let mut pick = Vec::new();
    fn connected(g: &RibbonGraph, edges: &[EdgeId]) -> bool {
        let n = g.vertex_count();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &e in edges {
                let (a, b) = g.endpoints(e);
                for (x, y) in [(a.0, b.0), (b.0, a.0)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.iter().all(|&s| s)
    }
    fn go(g: &RibbonGraph, start: usize, need: usize, pick: &mut Vec<EdgeId>, found: &mut Vec<Vec<EdgeId>>, cap: usize) -> Result<()> {
        if pick.len() == need {
            if connected(g, pick) {
                if found.len() == cap {
                    return Err(Error::Budget(format!("more than {cap} spanning trees")));
                }
                found.push(pick.clone());
            }
            return Ok(());
        }
        for e in start..g.edge_count() {
            pick.push(EdgeId(e));
            go(g, e + 1, need, pick, found, cap)?;
            pick.pop();
        }
        Ok(())
    }
    if n - 1 <= m {
        go(g, 0, n - 1, &mut pick, &mut found, budget.max_subset)?;
    }
    Ok(found)
}

/// Breadth-first search over single routings (rotor advances, one chip
/// follows it; chip counts may go negative) from `s1`, looking for `s2`.
///
/// Only states with every `|chips| <= chip_bound` are explored, so `false`
/// means "not reachable inside the box".
pub fn routing_reachability(d: &RibbonDigraph, s1: &ChipRotorState, s2: &ChipRotorState, budget: &OracleBudget) -> Result<bool> {
    budget.admit(d.vertex_count(), d.arc_count())?;
    if s1.chips.sum() != s2.chips.sum() {
        return Ok(false);
    }
    let n = d.vertex_count();
    let outs: Vec<Vec<ArcId>> = (0..n).map(|v| d.out_arcs(VertexId(v)).to_vec()).collect();
    let encode = |s: &ChipRotorState| -> Result<(Vec<i64>, Vec<usize>)> {
        let rot = (0..n)
            .map(|v| match s.rotors.get(VertexId(v)) {
                Some(a) => outs[v].iter().position(|&b| b == a).ok_or_else(|| Error::BadRotor(v.to_string())),
                None => Ok(0),
            })
            .collect::<Result<_>>()?;
        Ok((s.chips.0.clone(), rot))
    };
    let start = encode(s1)?;
    let goal = encode(s2)?;
    let bound = budget.chip_bound.max(start.0.iter().chain(&goal.0).map(|c| c.abs()).max().unwrap_or(0));
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some((chips, rot)) = queue.pop_front() {
        if (&chips, &rot) == (&goal.0, &goal.1) {
            return Ok(true);
        }
        for v in 0..n {
            if outs[v].is_empty() {
                continue;
            }
            let mut rot2 = rot.clone();
            rot2[v] = (rot[v] + 1) % outs[v].len();
            let h = d.head(outs[v][rot2[v]]).0;
            let mut chips2 = chips.clone();
            chips2[v] -= 1;
            chips2[h] += 1;
            if chips2.iter().any(|c| c.abs() > bound) {
                continue;
            }
            let next = (chips2, rot2);
            if seen.insert(next.clone()) {
                if seen.len() > budget.max_depth {
                    return Err(Error::Budget(format!("more than {} routing states", budget.max_depth)));
                }
                queue.push_back(next);
            }
        }
    }
    Ok(false)
}

/// Breadth-first search over firings from `x`, looking for `y`, inside the
/// chip box. On an Eulerian digraph firing every vertex changes nothing, so
/// firings alone (no unfirings) reach the whole class.
pub fn firing_reachability(d: &RibbonDigraph, x: &ChipConfig, y: &ChipConfig, budget: &OracleBudget) -> Result<bool> {
    budget.admit(d.vertex_count(), d.arc_count())?;
    if x.sum() != y.sum() {
        return Ok(false);
    }
    let n = d.vertex_count();
    let bound = budget.chip_bound.max(x.0.iter().chain(&y.0).map(|c| c.abs()).max().unwrap_or(0));
    let mut seen = HashSet::from([x.0.clone()]);
    let mut queue = VecDeque::from([x.0.clone()]);
    while let Some(c) = queue.pop_front() {
        if c == y.0 {
            return Ok(true);
        }
        for v in 0..n {
            let mut c2 = c.clone();
            for a in d.arcs().filter(|&a| d.tail(a).0 == v) {
                c2[v] -= 1;
                c2[d.head(a).0] += 1;
            }
            if c2.iter().any(|c| c.abs() > bound) {
                continue;
            }
            if seen.insert(c2.clone()) {
                if seen.len() > budget.max_depth {
                    return Err(Error::Budget(format!("more than {} chip configurations", budget.max_depth)));
                }
                queue.push_back(c2);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::ribbon::bidirect;
    use crate::rotor::{route, RotorConfig};

    #[test]
    fn arborescence_counts() {
        let b = OracleBudget::default();
        assert_eq!(enumerate_arborescences(&fixtures::c3(), VertexId(0), &b).unwrap().len(), 1);
        let d = fixtures::fig1();
        let all = enumerate_arborescences(&d, d.vertex_id("1").unwrap(), &b).unwrap();
        let mut want: Vec<ArcId> = ["e6", "e9", "e7"].iter().map(|a| d.arc_id(a).unwrap()).collect();
        want.sort();
        assert!(all.contains(&want));
        let k = bidirect(&fixtures::k4p());
        for v in k.vertices() {
            assert_eq!(enumerate_arborescences(&k, v, &b).unwrap().len(), 16);
        }
    }

    #[test]
    fn spanning_tree_counts() {
        let b = OracleBudget::default();
        assert_eq!(enumerate_spanning_trees(&fixtures::k4p(), &b).unwrap().len(), 16);
        let t = fixtures::torus();
        let trees = enumerate_spanning_trees(t.graph(), &b).unwrap();
        assert_eq!(trees, vec![vec![EdgeId(0)], vec![EdgeId(1)]]);
    }

    #[test]
    fn reachability_basics() {
        let b = OracleBudget::default();
        let d = fixtures::c3();
        let s = ChipRotorState::new(ChipConfig(vec![1, 0, -1]), RotorConfig::first_arcs(&d));
        assert!(routing_reachability(&d, &s, &s, &b).unwrap());
        let t = route(&d, &s, VertexId(1)).unwrap();
        assert!(routing_reachability(&d, &s, &t, &b).unwrap());
        let u = ChipRotorState::new(ChipConfig(vec![1, 0, 0]), s.rotors.clone());
        assert!(!routing_reachability(&d, &s, &u, &b).unwrap());
        assert!(firing_reachability(&d, &ChipConfig(vec![1, 0, -1]), &ChipConfig(vec![0, 0, 0]), &b).unwrap());
    }
}
