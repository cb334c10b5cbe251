//! Simple undirected graphs and their adjacency, degree and Laplacian matrices.
//!
//! Vertices are numbered `0..n`. Edges are stored as sorted `(min, max)`
//! pairs so iteration order, serialization and every matrix built from a
//! graph are deterministic.

use std::collections::BTreeSet;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, SymmetricMatrix};

/// Identifier of the random-graph sampler, recorded in reports.
///
/// Pairs (i, j), i < j, are visited in lexicographic order. For each one a
/// ChaCha8 stream seeded with `ChaCha8Rng::seed_from_u64(seed)` yields one
/// `u64`; its top 53 bits scaled by 2⁻⁵³ give a uniform `x` in [0, 1) and the
/// edge is kept when `x < p`.
pub const RANDOM_GRAPH_ALGORITHM: &str = "gnp-chacha8-u53-lex/v1";

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Validates and canonicalizes an edge list. Duplicate and reversed
    /// pairs collapse into one edge.
    pub fn from_edge_list(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut set = BTreeSet::new();
        for &(u, v) in pairs {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Graph {
            n,
            edges: set.into_iter().collect(),
        })
    }

    pub fn edgeless(n: usize) -> Result<Self> {
        Graph::from_edge_list(n, &[])
    }

    pub fn complete(n: usize) -> Result<Self> {
        let pairs: Vec<_> = all_pairs(n).collect();
        Graph::from_edge_list(n, &pairs)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::CycleTooSmall(n));
        }
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edge_list(n, &pairs)
    }

    pub fn path(n: usize) -> Result<Self> {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edge_list(n, &pairs)
    }

    /// Vertex 0 joined to every other vertex.
    pub fn star(n: usize) -> Result<Self> {
        let pairs: Vec<_> = (1..n).map(|i| (0, i)).collect();
        Graph::from_edge_list(n, &pairs)
    }

    /// Erdős–Rényi G(n, p); see [`RANDOM_GRAPH_ALGORITHM`].
    pub fn random(n: usize, p: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability(p));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let scale = 1.0 / (1u64 << 53) as f64;
        let pairs: Vec<_> = all_pairs(n)
            .filter(|_| ((rng.next_u64() >> 11) as f64) * scale < p)
            .collect();
        Graph::from_edge_list(n, &pairs)
    }

    /// The vertices of `other` are relabelled by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + off, v + off)));
        Graph {
            n: self.n + other.n,
            edges,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sorted `(min, max)` pairs.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * (self.n - 1) / 2
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    pub fn degree_info(&self) -> DegreeInfo {
        let degrees = self.degrees();
        let min_degree = degrees.iter().copied().min().unwrap_or(0);
        let max_degree = degrees.iter().copied().max().unwrap_or(0);
        DegreeInfo {
            degrees,
            min_degree,
            max_degree,
        }
    }

    /// `Some(r)` when every vertex has degree `r`.
    pub fn regularity(&self) -> Option<usize> {
        let d = self.degrees();
        let r = d[0];
        d.iter().all(|&x| x == r).then_some(r)
    }

    pub fn is_regular(&self) -> bool {
        self.regularity().is_some()
    }

    pub fn has_null_vertex(&self) -> bool {
        self.degrees().contains(&0)
    }

    pub fn adjacency_matrix(&self) -> SymmetricMatrix {
        let mut a = Matrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            a[(u, v)] = 1.0;
            a[(v, u)] = 1.0;
        }
        SymmetricMatrix::new(a).expect("adjacency is symmetric")
    }

    pub fn degree_matrix(&self) -> SymmetricMatrix {
        let d: Vec<f64> = self.degrees().into_iter().map(|x| x as f64).collect();
        SymmetricMatrix::new(Matrix::diag(&d)).expect("diagonal")
    }

    /// L = D − A.
    pub fn laplacian_matrix(&self) -> SymmetricMatrix {
        let mut l = Matrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            l[(u, v)] = -1.0;
            l[(v, u)] = -1.0;
            l[(u, u)] += 1.0;
            l[(v, v)] += 1.0;
        }
        SymmetricMatrix::new(l).expect("laplacian is symmetric")
    }

    pub fn connected_components(&self) -> ComponentPartition {
        let mut uf = UnionFind::new(self.n);
        for &(u, v) in &self.edges {
            uf.union(u, v);
        }
        let mut root_label = vec![usize::MAX; self.n];
        let mut count = 0;
        let label = (0..self.n)
            .map(|v| {
                let r = uf.find(v);
                if root_label[r] == usize::MAX {
                    root_label[r] = count;
                    count += 1;
                }
                root_label[r]
            })
            .collect();
        ComponentPartition { count, label }
    }
}

fn all_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| ((i + 1)..n).map(move |j| (i, j)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeInfo {
    pub degrees: Vec<usize>,
    /// δ
    pub min_degree: usize,
    /// Δ
    pub max_degree: usize,
}

/// Connected components. Ids are contiguous from 0 and numbered in
/// increasing order of each component's smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    pub count: usize,
    pub label: Vec<usize>,
}

impl ComponentPartition {
    /// Vertex lists per component, each sorted ascending.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count];
        for (v, &c) in self.label.iter().enumerate() {
            out[c].push(v);
        }
        out
    }
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }
}
