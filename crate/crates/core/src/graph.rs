//! Simple undirected graphs, their shift operators and random regular graphs.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::RngCore;

use crate::linalg::{Matrix, SymMatrix};
use crate::{rng, Error, Result};

pub const MAX_GENERATION_ATTEMPTS: usize = 10_000;

/// Simple undirected graph on nodes `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Sorted, each edge stored once as `(u, v)` with `u < v`.
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Edges may be given in either orientation. Self-loops, duplicates and
    /// out-of-range node ids are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!("edge ({u}, {v}) references a node outside 0..{n}")));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at node {u}")));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::invalid(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(Graph { n, edges: set.into_iter().collect() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = alloc::vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn adjacency(&self) -> Result<SymMatrix> {
        let mut a = Matrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            a[(u, v)] = 1.0;
            a[(v, u)] = 1.0;
        }
        SymMatrix::new(a)
    }
}

/// `A`, the degrees, `L = D − A` and `L_sym = D^{-1/2} L D^{-1/2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftOperatorSet {
    pub adjacency: SymMatrix,
    pub degrees: Vec<f64>,
    pub laplacian: SymMatrix,
    pub normalized_laplacian: SymMatrix,
}

pub fn shift_operators(g: &Graph) -> Result<ShiftOperatorSet> {
    let degrees: Vec<f64> = g.degrees().into_iter().map(|d| d as f64).collect();
    if let Some(node) = degrees.iter().position(|&d| d == 0.0) {
        return Err(Error::DegreeZero { node });
    }
    let adjacency = g.adjacency()?;
    let n = g.n();
    let mut l = adjacency.as_matrix().scale(-1.0);
    for (i, &d) in degrees.iter().enumerate() {
        l[(i, i)] = d;
    }
    let inv_sqrt: Vec<f64> = degrees.iter().map(|&d| 1.0 / libm::sqrt(d)).collect();
    let mut ls = l.clone();
    for i in 0..n {
        for j in 0..n {
            ls[(i, j)] *= inv_sqrt[i] * inv_sqrt[j];
        }
    }
    Ok(ShiftOperatorSet {
        adjacency,
        laplacian: SymMatrix::new(l)?,
        normalized_laplacian: SymMatrix::new(ls)?,
        degrees,
    })
}

/// Common degree if the graph is regular.
pub fn regularity_check(g: &Graph) -> Option<usize> {
    let deg = g.degrees();
    let first = *deg.first()?;
    deg.iter().all(|&d| d == first).then_some(first)
}

/// Random simple `d`-regular graph on `n` nodes, reproducible from `seed`.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    random_regular_with(n, d, &mut rng::seeded(seed))
}

/// Stub pairing with incremental repair: shuffle the remaining stubs, keep
/// every consecutive pair that forms a new simple edge, return the rest to
/// the pool. A round that cannot place any remaining pair starts over.
pub fn random_regular_with<R: RngCore>(n: usize, d: usize, rng: &mut R) -> Result<Graph> {
    if !(n * d).is_multiple_of(2) {
        return Err(Error::invalid(format!("n*d = {} must be even", n * d)));
    }
    if d >= n {
        return Err(Error::invalid(format!("degree d={d} must be below n={n}")));
    }
    for _ in 0..MAX_GENERATION_ATTEMPTS {
        if let Some(edges) = try_pairing(n, d, rng) {
            return Graph::new(n, edges);
        }
    }
    Err(Error::GenerationFailed { attempts: MAX_GENERATION_ATTEMPTS })
}

fn try_pairing<R: RngCore>(n: usize, d: usize, rng: &mut R) -> Option<BTreeSet<(usize, usize)>> {
    let mut edges = BTreeSet::new();
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| core::iter::repeat_n(v, d)).collect();
    while !stubs.is_empty() {
        stubs.shuffle(rng);
        let mut leftover: BTreeMap<usize, usize> = BTreeMap::new();
        for pair in stubs.chunks_exact(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u != v && edges.insert((u, v)) {
                continue;
            }
            *leftover.entry(u).or_default() += 1;
            *leftover.entry(v).or_default() += 1;
        }
        if !can_progress(&edges, &leftover) {
            return None;
        }
        stubs = leftover.iter().flat_map(|(&v, &k)| core::iter::repeat_n(v, k)).collect();
    }
    Some(edges)
}

fn can_progress(edges: &BTreeSet<(usize, usize)>, leftover: &BTreeMap<usize, usize>) -> bool {
    if leftover.is_empty() {
        return true;
    }
    let nodes: Vec<usize> = leftover.keys().copied().collect();
    nodes.iter().enumerate().any(|(i, &u)| nodes[i + 1..].iter().any(|&v| !edges.contains(&(u, v))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eigvals_sym;

    fn path3() -> Graph {
        Graph::new(3, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn graph_validation() {
        assert!(Graph::new(3, [(0, 0)]).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
        assert_eq!(Graph::new(3, [(2, 0)]).unwrap().edges(), &[(0, 2)]);
    }

    #[test]
    fn path_laplacian() {
        let ops = shift_operators(&path3()).unwrap();
        let expected = Matrix::from_rows(&[[1.0, -1.0, 0.0], [-1.0, 2.0, -1.0], [0.0, -1.0, 1.0]]).unwrap();
        assert_eq!(ops.laplacian.as_matrix(), &expected);
        assert_eq!(regularity_check(&path3()), None);
    }

    #[test]
    fn triangle_spectrum() {
        let k3 = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let ev = eigvals_sym(&shift_operators(&k3).unwrap().laplacian).unwrap();
        for (a, b) in ev.iter().zip([0.0, 3.0, 3.0]) {
            assert!((a - b).abs() < 1e-12);
        }
        assert_eq!(regularity_check(&k3), Some(2));
    }

    #[test]
    fn isolated_node() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert!(matches!(shift_operators(&g), Err(Error::DegreeZero { node: 2 })));
    }

    #[test]
    fn k4_is_forced() {
        let g = random_regular(4, 3, 11).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn parity_and_degree_checks() {
        assert!(matches!(random_regular(5, 3, 1), Err(Error::InvalidInput(_))));
        assert!(matches!(random_regular(4, 4, 1), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn deterministic_for_seed() {
        assert_eq!(random_regular(20, 4, 9).unwrap(), random_regular(20, 4, 9).unwrap());
        assert_ne!(random_regular(20, 4, 9).unwrap(), random_regular(20, 4, 10).unwrap());
    }
}
