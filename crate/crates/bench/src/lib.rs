//! Inputs shared by the benchmarks.

use graph_frames::{Graph, Matrix, SymmetricMatrix};

/// G(n, 0.3) conditioned on being connected; deterministic for a given `n`.
pub fn connected_graph(n: usize) -> Graph {
    (0u64..)
        .map(|seed| Graph::random(n, 0.3, seed).expect("valid parameters"))
        .find(|g| g.connected_components().count == 1)
        .expect("some seed gives a connected graph")
}

/// Dense symmetric matrix with entries in [−1, 1], no randomness needed.
pub fn symmetric(n: usize) -> SymmetricMatrix {
    let m = Matrix::from_fn(n, n, |i, j| {
        let t = ((i + 1) * (j + 1)) as f64;
        (t.sqrt() * 12.9898).sin()
    });
    SymmetricMatrix::new(m).expect("symmetric by construction")
}
