//! Cutting the surface of a ribbon graph along primal and dual edges.
//!
//! The overlay of a ribbon graph and its dual divides the surface into one
//! quadrilateral cell per corner: corner `h` is bounded by the primal
//! half-edges `h` and `next(h)` and by the dual half-edges crossing them.
//! Removing a set of closed primal or dual edges splits the surface exactly
//! along the cell boundaries belonging to those edges, so connectivity of
//! the remainder is a union-find over cells.

use super::{EdgeId, HalfEdge, RibbonGraph, UnionFind};
use crate::error::{Error, Result};

/// Which copy of an edge a subtransversal element refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Layer {
    Primal,
    Dual,
}

/// At most one of `e`, `e*` for every edge `e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subtransversal(pub Vec<Option<Layer>>);

impl Subtransversal {
    pub fn empty(edges: usize) -> Self {
        Subtransversal(vec![None; edges])
    }

    pub fn from_parts(edges: usize, primal: &[EdgeId], dual: &[EdgeId]) -> Result<Self> {
        let mut s = Self::empty(edges);
        for (layer, list) in [(Layer::Primal, primal), (Layer::Dual, dual)] {
            for e in list {
                match s.0.get(e.0) {
                    None => return Err(Error::UnknownEdge(e.to_string())),
                    Some(Some(_)) => {
                        return Err(Error::Invalid(format!("{e} listed twice in a subtransversal")))
                    }
                    Some(None) => s.0[e.0] = Some(layer),
                }
            }
        }
        Ok(s)
    }

    pub fn len(&self) -> usize {
        self.0.iter().filter(|x| x.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, e: EdgeId, layer: Layer) -> bool {
        self.0[e.0] == Some(layer)
    }

    pub fn elements(&self) -> impl Iterator<Item = (EdgeId, Layer)> + '_ {
        self.0.iter().enumerate().filter_map(|(i, l)| l.map(|l| (EdgeId(i), l)))
    }
}

/// Components of the surface minus a subtransversal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceCut {
    pub components: usize,
    /// Component of each corner cell, numbered by first appearance.
    pub labels: Vec<usize>,
}

impl SurfaceCut {
    pub fn component_of(&self, corner: HalfEdge) -> usize {
        self.labels[corner.0]
    }
}

pub fn complement_components(g: &RibbonGraph, s: &Subtransversal) -> SurfaceCut {
    assert_eq!(s.0.len(), g.edge_count(), "subtransversal sized for another graph");
    let m = 2 * g.edge_count();
    if m == 0 {
        return SurfaceCut { components: 1, labels: Vec::new() };
    }
    let mut uf = UnionFind::new(m);
    for h in g.half_edges() {
        if !s.contains(h.edge(), Layer::Primal) {
            uf.union(g.prev(h).0, h.0);
        }
        if !s.contains(h.edge(), Layer::Dual) {
            uf.union(h.0, g.prev(h.opposite()).0);
        }
    }
    let mut ids = vec![usize::MAX; m];
    let mut labels = Vec::with_capacity(m);
    let mut components = 0;
    for c in 0..m {
        let r = uf.find(c);
        if ids[r] == usize::MAX {
            ids[r] = components;
            components += 1;
        }
        labels.push(ids[r]);
    }
    SurfaceCut { components, labels }
}

/// Whether the cycle with edge set `cycle` separates the surface, decided on
/// the faces of `g` glued across every edge outside the cycle.
pub fn cycle_is_separating(g: &RibbonGraph, cycle: &[EdgeId]) -> Result<bool> {
    check_cycle(g, cycle)?;
    let faces = g.faces();
    let mut uf = UnionFind::new(faces.len());
    for e in g.edges().filter(|e| !cycle.contains(e)) {
        uf.union(faces.face_of(HalfEdge::new(e, 0)), faces.face_of(HalfEdge::new(e, 1)));
    }
    Ok(uf.count() >= 2)
}

fn check_cycle(g: &RibbonGraph, cycle: &[EdgeId]) -> Result<()> {
    if cycle.is_empty() {
        return Err(Error::NotACycle("empty edge set".into()));
    }
    let mut degree = vec![0usize; g.vertex_count()];
    let mut uf = UnionFind::new(g.vertex_count());
    let mut seen = vec![false; g.edge_count()];
    for &e in cycle {
        if e.0 >= g.edge_count() {
            return Err(Error::UnknownEdge(e.to_string()));
        }
        if std::mem::replace(&mut seen[e.0], true) {
            return Err(Error::NotACycle(format!("edge `{}` repeated", g.edge_name(e))));
        }
        let (a, b) = g.endpoints(e);
        degree[a.0] += 1;
        degree[b.0] += 1;
        uf.union(a.0, b.0);
    }
    if let Some(v) = g.vertices().find(|v| degree[v.0] != 0 && degree[v.0] != 2) {
        return Err(Error::NotACycle(format!("vertex `{}` has degree {}", g.vertex_name(v), degree[v.0])));
    }
    let touched: Vec<usize> = g.vertices().filter(|v| degree[v.0] > 0).map(|v| v.0).collect();
    let root = uf.find(touched[0]);
    if touched.iter().any(|&v| uf.find(v) != root) {
        return Err(Error::NotACycle("edge set is disconnected".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn torus_cuts() {
        let t = fixtures::torus();
        let g = t.graph();
        let e = |n: &str| g.edge_id(n).unwrap();
        let empty = Subtransversal::empty(4);
        assert_eq!(complement_components(g, &empty).components, 1);
        let s = Subtransversal::from_parts(4, &[e("e3"), e("e4")], &[]).unwrap();
        assert_eq!(complement_components(g, &s).components, 2);
        let s = Subtransversal::from_parts(4, &[e("e3")], &[]).unwrap();
        assert_eq!(complement_components(g, &s).components, 1);
    }

    #[test]
    fn separating_cycles() {
        let k = fixtures::k4p();
        let e = |n: &str| k.edge_id(n).unwrap();
        assert!(cycle_is_separating(&k, &[e("e1"), e("e2"), e("e3")]).unwrap());
        assert!(cycle_is_separating(&k, &[e("e1"), e("e5"), e("e4")]).unwrap());
        let t = fixtures::torus();
        let g = t.graph();
        let e = |n: &str| g.edge_id(n).unwrap();
        assert!(!cycle_is_separating(g, &[e("e3")]).unwrap());
        assert!(!cycle_is_separating(g, &[e("e1"), e("e2")]).unwrap());
        assert!(cycle_is_separating(g, &[e("e1")]).is_err());
    }

    #[test]
    fn more_cuts_never_merge() {
        let t = fixtures::torus();
        let g = t.graph();
        let mut s = Subtransversal::empty(4);
        let mut last = 1;
        for (i, layer) in [Layer::Dual, Layer::Primal, Layer::Dual, Layer::Primal].into_iter().enumerate() {
            s.0[i] = Some(layer);
            let c = complement_components(g, &s).components;
            assert!(c >= last);
            last = c;
        }
    }
}
