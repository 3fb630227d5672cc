//! Exact integer lattices: Smith normal form, membership, class keys and
//! determinants, all over arbitrary-precision integers.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A finitely generated abelian group `Z^n / L`, with `L` given by
/// generating vectors.
///
/// Internally `P * M * Q = D` is the Smith form of the generator matrix `M`
/// (rows are generators). Only the column transform `Q` and its inverse are
/// kept: `x` lies in `L` iff `x * Q` is divisible by the diagonal
/// coordinatewise and vanishes past the rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    dim: usize,
    diagonal: Vec<BigInt>,
    q: Vec<Vec<BigInt>>,
    q_inv: Vec<Vec<BigInt>>,
}

impl GroupPresentation {
    pub fn from_generators(dim: usize, generators: &[Vec<i64>]) -> Self {
        let rows: Vec<Vec<BigInt>> = generators
            .iter()
            .map(|g| {
                assert_eq!(g.len(), dim, "generator of wrong length");
                g.iter().map(|&v| BigInt::from(v)).collect()
            })
            .collect();
        smith(dim, rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Rank of the lattice.
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Rank of the free part of the quotient.
    pub fn free_rank(&self) -> usize {
        self.dim - self.rank()
    }

    /// Invariant factors `d1 | d2 | ...` of the torsion part, all > 1.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    /// Order of the torsion part.
    pub fn order(&self) -> BigInt {
        self.diagonal.iter().product()
    }

    /// Least common multiple of the invariant factors.
    pub fn exponent(&self) -> BigInt {
        self.diagonal.iter().fold(BigInt::one(), |acc, d| acc.lcm(d))
    }

    fn transform(&self, x: &[i64]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.dim, "vector of wrong length");
        (0..self.dim)
            .map(|j| x.iter().zip(&self.q).map(|(&xi, row)| &row[j] * xi).sum())
            .collect()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        let y = self.transform(x);
        y.iter().enumerate().all(|(i, yi)| match self.diagonal.get(i) {
            Some(d) => yi.is_multiple_of(d),
            None => yi.is_zero(),
        })
    }

    pub fn equivalent(&self, x: &[i64], y: &[i64]) -> bool {
        let diff: Vec<i64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.contains(&diff)
    }

    /// A complete invariant of the class of `x`: residues on the torsion
    /// coordinates, exact values on the free ones.
    pub fn class_key(&self, x: &[i64]) -> Vec<BigInt> {
        let mut y = self.transform(x);
        for (yi, d) in y.iter_mut().zip(&self.diagonal) {
            *yi = yi.mod_floor(d);
        }
        y
    }

    /// A vector whose class key is `key`.
    pub fn representative(&self, key: &[BigInt]) -> Result<Vec<i64>> {
        (0..self.dim)
            .map(|j| {
                let v: BigInt = key.iter().zip(&self.q_inv).map(|(k, row)| k * &row[j]).sum();
                v.to_i64().ok_or_else(|| Error::TooLarge("class representative overflows i64".into()))
            })
            .collect()
    }

    /// One representative per torsion class, found by breadth-first search
    /// from zero along `steps`, which must generate the torsion part.
    /// Representatives are therefore short combinations of the steps.
    pub fn torsion_classes(&self, steps: &[Vec<i64>], limit: usize) -> Result<Vec<Vec<i64>>> {
        let order = self.order();
        if order > BigInt::from(limit) {
            return Err(Error::TooLarge(format!("group of order {order} exceeds class limit {limit}")));
        }
        let zero = vec![0i64; self.dim];
        let mut seen = HashMap::new();
        seen.insert(self.class_key(&zero), ());
        let mut reps = vec![zero.clone()];
        let mut queue = VecDeque::from([zero]);
        while let Some(x) = queue.pop_front() {
            for s in steps {
                let y: Vec<i64> = x.iter().zip(s).map(|(a, b)| a + b).collect();
                if seen.insert(self.class_key(&y), ()).is_none() {
                    reps.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        if BigInt::from(reps.len()) != order {
            return Err(Error::Internal(format!(
                "steps reach {} classes of a group of order {order}",
                reps.len()
            )));
        }
        Ok(reps)
    }
}

fn smith(dim: usize, mut m: Vec<Vec<BigInt>>) -> GroupPresentation {
    let rows = m.len();
    let mut q: Vec<Vec<BigInt>> = identity(dim);
    let mut q_inv: Vec<Vec<BigInt>> = identity(dim);
    let mut diagonal = Vec::new();

    let swap_cols = |m: &mut Vec<Vec<BigInt>>, q: &mut Vec<Vec<BigInt>>, qi: &mut Vec<Vec<BigInt>>, a: usize, b: usize| {
        if a != b {
            for row in m.iter_mut().chain(q.iter_mut()) {
                row.swap(a, b);
            }
            qi.swap(a, b);
        }
    };
    // col[dst] += k * col[src]
    let add_col = |m: &mut Vec<Vec<BigInt>>, q: &mut Vec<Vec<BigInt>>, qi: &mut Vec<Vec<BigInt>>, src: usize, dst: usize, k: &BigInt| {
        for row in m.iter_mut().chain(q.iter_mut()) {
            let v = &row[src] * k;
            row[dst] += v;
        }
        let (s, d) = (qi[dst].clone(), k);
        for (x, y) in qi[src].iter_mut().zip(s) {
            *x -= y * d;
        }
    };

    for t in 0..rows.min(dim) {
        loop {
            // smallest nonzero entry of the remaining block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in m.iter().enumerate().skip(t) {
                for (j, v) in row.iter().enumerate().skip(t) {
                    if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(dim, diagonal, q, q_inv);
            };
            m.swap(t, pi);
            swap_cols(&mut m, &mut q, &mut q_inv, t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if !m[i][t].is_zero() {
                    let k = m[i][t].div_floor(&m[t][t]);
                    let pivot_row = m[t].clone();
                    for (x, p) in m[i].iter_mut().zip(&pivot_row).skip(t) {
                        *x -= &k * p;
                    }
                    clean &= m[i][t].is_zero();
                }
            }
            for j in t + 1..dim {
                if !m[t][j].is_zero() {
                    let k = -m[t][j].div_floor(&m[t][t]);
                    add_col(&mut m, &mut q, &mut q_inv, t, j, &k);
                    clean &= m[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            // the pivot must divide the rest of the block
            let bad = (t + 1..rows).find(|&i| (t + 1..dim).any(|j| !m[i][j].is_multiple_of(&m[t][t])));
            match bad {
                Some(i) => {
                    let row = m[i].clone();
                    for (x, v) in m[t].iter_mut().zip(row) {
                        *x += v;
                    }
                }
                None => break,
            }
        }
        if m[t][t].is_negative() {
            for row in m.iter_mut().chain(q.iter_mut()) {
                row[t] = -&row[t];
            }
            for x in q_inv[t].iter_mut() {
                *x = -&*x;
            }
        }
        diagonal.push(m[t][t].clone());
    }
    finish(dim, diagonal, q, q_inv)
}

fn finish(dim: usize, diagonal: Vec<BigInt>, q: Vec<Vec<BigInt>>, q_inv: Vec<Vec<BigInt>>) -> GroupPresentation {
    GroupPresentation { dim, diagonal, q, q_inv }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn smith_of_small_matrix() {
        let g = GroupPresentation::from_generators(2, &[vec![2, 4], vec![6, 8]]);
        assert_eq!(g.invariant_factors(), big(&[2, 4]));
        assert_eq!(g.order(), BigInt::from(8));
        assert!(g.contains(&[8, 12]));
        assert!(!g.contains(&[1, 0]));
    }

    #[test]
    fn free_part_is_exact() {
        let g = GroupPresentation::from_generators(3, &[vec![1, -1, 0], vec![0, 3, -3]]);
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.invariant_factors(), big(&[3]));
        assert!(g.contains(&[0, 3, -3]));
        assert!(!g.contains(&[1, 0, 0]));
        assert_ne!(g.class_key(&[1, 0, 0]), g.class_key(&[0, 0, 0]));
    }

    #[test]
    fn representatives_round_trip() {
        let g = GroupPresentation::from_generators(3, &[vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]);
        assert_eq!(g.order(), BigInt::from(3));
        for x in [[1, -1, 0], [2, 0, -2], [5, -7, 2]] {
            let key = g.class_key(&x);
            let rep = g.representative(&key).unwrap();
            assert!(g.equivalent(&rep, &x));
        }
        let steps = vec![vec![1, 0, -1], vec![0, 1, -1]];
        assert_eq!(g.torsion_classes(&steps, 100).unwrap().len(), 3);
    }

    #[test]
    fn bareiss() {
        let m = vec![big(&[2, -1, 0]), big(&[-1, 2, -1]), big(&[0, -1, 2])];
        assert_eq!(determinant(m), BigInt::from(4));
        let m = vec![big(&[0, 1]), big(&[1, 0])];
        assert_eq!(determinant(m), BigInt::from(-1));
    }
}
