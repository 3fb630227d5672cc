//! Chip configurations, firing and the sandpile group of an Eulerian
//! digraph.

use std::ops::{Add, AddAssign, Index, IndexMut, Neg, Sub};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::lattice::{determinant, GroupPresentation};
use crate::ribbon::{ArcId, RibbonDigraph, UnionFind, VertexId};

/// An integer number of chips on every vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChipConfig(pub Vec<i64>);

impl ChipConfig {
    pub fn zero(n: usize) -> Self {
        ChipConfig(vec![0; n])
    }

    /// `1_v`: one chip on `v`.
    pub fn unit(n: usize, v: VertexId) -> Self {
        let mut x = Self::zero(n);
        x.0[v.0] = 1;
        x
    }

    /// `chi_a`: minus one at the tail of `a`, plus one at its head.
    pub fn chi(d: &RibbonDigraph, a: ArcId) -> Self {
        let mut x = Self::zero(d.vertex_count());
        x.0[d.tail(a).0] -= 1;
        x.0[d.head(a).0] += 1;
        x
    }

    pub fn chi_sum(d: &RibbonDigraph, arcs: impl IntoIterator<Item = ArcId>) -> Self {
        let mut x = Self::zero(d.vertex_count());
        for a in arcs {
            x += &Self::chi(d, a);
        }
        x
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        ChipConfig(self.0.iter().map(|v| v * k).collect())
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.len() == n {
            Ok(())
        } else {
            Err(Error::LengthMismatch { expected: n, got: self.len() })
        }
    }
}

impl Index<VertexId> for ChipConfig {
    type Output = i64;
    fn index(&self, v: VertexId) -> &i64 {
        &self.0[v.0]
    }
}

impl IndexMut<VertexId> for ChipConfig {
    fn index_mut(&mut self, v: VertexId) -> &mut i64 {
        &mut self.0[v.0]
    }
}

impl AddAssign<&ChipConfig> for ChipConfig {
    fn add_assign(&mut self, rhs: &ChipConfig) {
        assert_eq!(self.len(), rhs.len());
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl Add for &ChipConfig {
    type Output = ChipConfig;
    fn add(self, rhs: &ChipConfig) -> ChipConfig {
        let mut x = self.clone();
        x += rhs;
        x
    }
}

impl Sub for &ChipConfig {
    type Output = ChipConfig;
    fn sub(self, rhs: &ChipConfig) -> ChipConfig {
        self + &-rhs
    }
}

impl Neg for &ChipConfig {
    type Output = ChipConfig;
    fn neg(self) -> ChipConfig {
        self.scale(-1)
    }
}

/// Fires `v`: it loses `d+(v)` chips and every out-arc carries one chip.
pub fn fire(d: &RibbonDigraph, x: &ChipConfig, v: VertexId) -> Result<ChipConfig> {
    x.check_len(d.vertex_count())?;
    if v.0 >= d.vertex_count() {
        return Err(Error::UnknownVertex(v.to_string()));
    }
    let mut y = x.clone();
    for &a in d.out_arcs(v) {
        y[v] -= 1;
        y[d.head(a)] += 1;
    }
    Ok(y)
}

/// Rows of the Laplacian: row `u` is minus the effect of firing `u`.
pub fn laplacian_rows(d: &RibbonDigraph) -> Vec<Vec<i64>> {
    d.vertices()
        .map(|u| {
            let mut row = vec![0; d.vertex_count()];
            for &a in d.out_arcs(u) {
                row[u.0] += 1;
                row[d.head(a).0] -= 1;
            }
            row
        })
        .collect()
}

/// The lattice spanned by the firing moves. Works for any digraph; the
/// quotient of its degree-zero part is the sandpile group when `d` is
/// Eulerian.
pub fn firing_lattice(d: &RibbonDigraph) -> GroupPresentation {
    GroupPresentation::from_generators(d.vertex_count(), &laplacian_rows(d))
}

/// Whether some sequence of firings turns `x` into `y`.
pub fn linearly_equivalent(d: &RibbonDigraph, x: &ChipConfig, y: &ChipConfig) -> Result<bool> {
    x.check_len(d.vertex_count())?;
    y.check_len(d.vertex_count())?;
    Ok(firing_lattice(d).equivalent(&x.0, &y.0))
}

pub fn group_structure(d: &RibbonDigraph) -> Result<GroupPresentation> {
    d.require_eulerian()?;
    Ok(firing_lattice(d))
}

/// Number of spanning arborescences oriented towards `root`.
pub fn count_arborescences(d: &RibbonDigraph, root: VertexId) -> BigInt {
    let rows = laplacian_rows(d);
    let reduced = rows
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != root.0)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(j, _)| *j != root.0)
                .map(|(_, &v)| BigInt::from(v))
                .collect()
        })
        .collect();
    determinant(reduced)
}

/// The sandpile group of an Eulerian digraph together with the data needed
/// to compute in it repeatedly.
#[derive(Clone, Debug)]
pub struct SandpileGroup {
    presentation: GroupPresentation,
    exponent: i64,
    n: usize,
}

impl SandpileGroup {
    pub fn new(d: &RibbonDigraph) -> Result<Self> {
        let presentation = group_structure(d)?;
        let exponent = presentation
            .exponent()
            .to_i64()
            .ok_or_else(|| Error::TooLarge("group exponent overflows i64".into()))?;
        Ok(SandpileGroup { presentation, exponent, n: d.vertex_count() })
    }

    pub fn presentation(&self) -> &GroupPresentation {
        &self.presentation
    }

    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.presentation.invariant_factors()
    }

    pub fn order(&self) -> BigInt {
        self.presentation.order()
    }

    /// Least `k > 0` with `k * x ~ 0` for every degree-zero `x`.
    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self, x: &ChipConfig) -> bool {
        self.presentation.contains(&x.0)
    }

    pub fn equivalent(&self, x: &ChipConfig, y: &ChipConfig) -> bool {
        self.presentation.equivalent(&x.0, &y.0)
    }

    pub fn class_key(&self, x: &ChipConfig) -> Vec<BigInt> {
        self.presentation.class_key(&x.0)
    }

    /// One small representative for every element of the group.
    pub fn classes(&self, limit: usize) -> Result<Vec<ChipConfig>> {
        let mut steps = Vec::new();
        for v in 1..self.n {
            let mut s = vec![0; self.n];
            s[v] = 1;
            s[0] = -1;
            steps.push(s.clone());
            steps.push(s.iter().map(|x| -x).collect());
        }
        Ok(self.presentation.torsion_classes(&steps, limit)?.into_iter().map(ChipConfig).collect())
    }
}

/// A piece of a cycle/cut decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Piece {
    /// A simple directed cycle, arcs in order.
    Cycle(Vec<ArcId>),
    /// All arcs from `source` to its complement.
    Cut { source: Vec<VertexId>, arcs: Vec<ArcId> },
}

impl Piece {
    pub fn arcs(&self) -> &[ArcId] {
        match self {
            Piece::Cycle(a) | Piece::Cut { arcs: a, .. } => a,
        }
    }
}

fn check_bidirected(d: &RibbonDigraph) -> Result<()> {
    let n = d.vertex_count();
    let mut mult = vec![vec![0i64; n]; n];
    for a in d.arcs() {
        mult[d.tail(a).0][d.head(a).0] += 1;
        mult[d.head(a).0][d.tail(a).0] -= 1;
    }
    for (u, row) in mult.iter().enumerate() {
        if let Some(w) = row.iter().position(|&m| m != 0) {
            return Err(Error::NotBidirected(format!(
                "arcs `{}` -> `{}` and back differ in number",
                d.vertex_name(VertexId(u)),
                d.vertex_name(VertexId(w))
            )));
        }
    }
    Ok(())
}

/// Partitions `f` into directed cycles and directed elementary cuts (cuts
/// `C*(U, W)` with both sides connected), if possible.
pub fn decompose_cycles_cuts(gbi: &RibbonDigraph, f: &[ArcId]) -> Result<Option<Vec<Piece>>> {
    check_bidirected(gbi)?;
    if gbi.arc_count() > 64 || gbi.vertex_count() > 20 {
        return Err(Error::TooLarge("cycle/cut search supports at most 64 arcs and 20 vertices".into()));
    }
    let mut target = 0u64;
    for a in f {
        if a.0 >= gbi.arc_count() {
            return Err(Error::UnknownArc(a.to_string()));
        }
        if target & (1 << a.0) != 0 {
            return Err(Error::Invalid(format!("arc {a} repeated")));
        }
        target |= 1 << a.0;
    }
    let mut pieces: Vec<(u64, Piece)> = Vec::new();
    for cycle in directed_cycles(gbi, target) {
        pieces.push((mask(&cycle), Piece::Cycle(cycle)));
    }
    for (source, arcs) in elementary_cuts(gbi) {
        let m = mask(&arcs);
        if m & !target == 0 {
            pieces.push((m, Piece::Cut { source, arcs }));
        }
    }
    let mut chosen = Vec::new();
    if exact_cover(target, &pieces, &mut chosen) {
        Ok(Some(chosen.into_iter().map(|i| pieces[i].1.clone()).collect()))
    } else {
        Ok(None)
    }
}

fn mask(arcs: &[ArcId]) -> u64 {
    arcs.iter().fold(0, |m, a| m | 1 << a.0)
}

fn exact_cover(rest: u64, pieces: &[(u64, Piece)], chosen: &mut Vec<usize>) -> bool {
    if rest == 0 {
        return true;
    }
    let low = rest & rest.wrapping_neg();
    for (i, (m, _)) in pieces.iter().enumerate() {
        if m & low != 0 && m & !rest == 0 {
            chosen.push(i);
            if exact_cover(rest & !m, pieces, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Simple directed cycles using only arcs in `allowed`; each cycle starts at
/// its least vertex.
fn directed_cycles(d: &RibbonDigraph, allowed: u64) -> Vec<Vec<ArcId>> {
    fn extend(
        d: &RibbonDigraph,
        allowed: u64,
        start: VertexId,
        at: VertexId,
        on_path: &mut Vec<bool>,
        path: &mut Vec<ArcId>,
        out: &mut Vec<Vec<ArcId>>,
    ) {
        for &a in d.out_arcs(at) {
            if allowed & (1 << a.0) == 0 {
                continue;
            }
            let h = d.head(a);
            if h == start {
                path.push(a);
                out.push(path.clone());
                path.pop();
            } else if h > start && !on_path[h.0] {
                on_path[h.0] = true;
                path.push(a);
                extend(d, allowed, start, h, on_path, path, out);
                path.pop();
                on_path[h.0] = false;
            }
        }
    }
    let mut out = Vec::new();
    for s in d.vertices() {
        let mut on_path = vec![false; d.vertex_count()];
        on_path[s.0] = true;
        extend(d, allowed, s, s, &mut on_path, &mut Vec::new(), &mut out);
    }
    out
}

fn elementary_cuts(d: &RibbonDigraph) -> Vec<(Vec<VertexId>, Vec<ArcId>)> {
    let n = d.vertex_count();
    let connected = |set: u32| {
        let mut uf = UnionFind::new(n);
        for a in d.arcs() {
            let (t, h) = (d.tail(a).0, d.head(a).0);
            if set & (1 << t) != 0 && set & (1 << h) != 0 {
                uf.union(t, h);
            }
        }
        let members: Vec<usize> = (0..n).filter(|v| set & (1 << v) != 0).collect();
        let r = uf.find(members[0]);
        members.iter().all(|&v| uf.find(v) == r)
    };
    let full = (1u32 << n) - 1;
    let mut cuts = Vec::new();
    for u in 1..full {
        if !connected(u) || !connected(full & !u) {
            continue;
        }
        let arcs: Vec<ArcId> = d
            .arcs()
            .filter(|&a| u & (1 << d.tail(a).0) != 0 && u & (1 << d.head(a).0) == 0)
            .collect();
        let source = (0..n).filter(|v| u & (1 << v) != 0).map(VertexId).collect();
        cuts.push((source, arcs));
    }
    cuts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::ribbon::{bidirect, medial};

    #[test]
    fn firing_c3() {
        let d = fixtures::c3();
        let x = fire(&d, &ChipConfig::zero(3), VertexId(0)).unwrap();
        assert_eq!(x.0, vec![-1, 1, 0]);
    }

    #[test]
    fn firing_fig1_middle() {
        let d = fixtures::fig1();
        let mid = d.vertex_id("4").unwrap();
        let x = fire(&d, &ChipConfig::zero(4), mid).unwrap();
        assert_eq!(x[mid], -3);
        for name in ["1", "2", "3"] {
            assert_eq!(x[d.vertex_id(name).unwrap()], 1);
        }
        let mut y = ChipConfig(vec![3, -1, 4, 1]);
        let orig = y.clone();
        for v in d.vertices() {
            y = fire(&d, &y, v).unwrap();
        }
        assert_eq!(y, orig);
    }

    #[test]
    fn equivalence_examples() {
        let d = fixtures::c3();
        let x = ChipConfig::chi_sum(&d, d.arcs());
        assert!(linearly_equivalent(&d, &x, &ChipConfig::zero(3)).unwrap());
        let m = medial(fixtures::torus().graph());
        let x = ChipConfig(vec![-1, 0, 1, 0]);
        assert!(!linearly_equivalent(&m, &x, &ChipConfig::zero(4)).unwrap());
        assert!(linearly_equivalent(&m, &x, &x).unwrap());
    }

    #[test]
    fn group_orders() {
        let c3 = group_structure(&fixtures::c3()).unwrap();
        assert_eq!(c3.order(), BigInt::from(1));
        let m = medial(fixtures::torus().graph());
        let g = group_structure(&m).unwrap();
        assert_eq!(g.invariant_factors(), vec![BigInt::from(4)]);
        let k = bidirect(&fixtures::k4p());
        assert_eq!(group_structure(&k).unwrap().order(), BigInt::from(16));
        for v in k.vertices() {
            assert_eq!(count_arborescences(&k, v), BigInt::from(16));
        }
        for v in m.vertices() {
            assert_eq!(count_arborescences(&m, v), BigInt::from(4));
        }
    }

    #[test]
    fn class_enumeration() {
        let m = medial(fixtures::torus().graph());
        let g = SandpileGroup::new(&m).unwrap();
        let classes = g.classes(100).unwrap();
        assert_eq!(classes.len(), 4);
        assert!(classes.iter().all(|x| x.sum() == 0));
    }

    #[test]
    fn cycles_and_cuts() {
        let k = bidirect(&fixtures::k4p());
        let v = VertexId(0);
        let cut: Vec<ArcId> = k.out_arcs(v).to_vec();
        let dec = decompose_cycles_cuts(&k, &cut).unwrap().unwrap();
        assert_eq!(dec.len(), 1);
        assert!(matches!(&dec[0], Piece::Cut { source, .. } if source == &vec![v]));
        let dec = decompose_cycles_cuts(&k, &[ArcId(0), ArcId(1)]).unwrap().unwrap();
        assert!(matches!(&dec[0], Piece::Cycle(c) if c.len() == 2));
        assert_eq!(decompose_cycles_cuts(&k, &[ArcId(0)]).unwrap(), None);
        assert!(decompose_cycles_cuts(&fixtures::fig1(), &[]).is_err());
    }
}
