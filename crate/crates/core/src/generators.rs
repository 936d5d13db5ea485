//! Standard unit-weight graph families plus a seeded random connected generator.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

fn check_size(name: &str, value: usize, min: usize) -> Result<()> {
    if value < min {
        return Err(Error::SizeOutOfRange(format!("{name} needs size >= {min}, got {value}")));
    }
    Ok(())
}

/// Complete graph `K_n`.
pub fn complete(n: usize) -> Result<Graph> {
    check_size("complete", n, 2)?;
    let edges = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b, 1.0)))
        .collect();
    Graph::from_edges(n, edges)
}

/// Cycle `C_n`, vertices in cyclic order.
pub fn cycle(n: usize) -> Result<Graph> {
    check_size("cycle", n, 3)?;
    let edges = (0..n).map(|a| (a, (a + 1) % n, 1.0)).collect();
    Graph::from_edges(n, edges)
}

/// Hypercube `Q_k`. Vertex `i` carries the `k`-bit binary label of `i`.
pub fn hypercube(k: usize) -> Result<Graph> {
    check_size("hypercube", k, 1)?;
    if k > 20 {
        return Err(Error::SizeOutOfRange(format!("hypercube dimension {k} is too large")));
    }
    let n = 1usize << k;
    let labels = (0..n).map(|i| format!("{i:0k$b}")).collect();
    let edges = (0..n)
        .flat_map(|a| {
            (0..k)
                .map(move |bit| a ^ (1 << bit))
                .filter(move |&b| b > a)
                .map(move |b| (a, b, 1.0))
        })
        .collect();
    Graph::from_labeled_edges(labels, edges)
}

/// Two disjoint copies of `K_n` joined by a single edge between vertex `0`
/// of the first copy and vertex `n` (first vertex of the second copy).
pub fn bridge_cliques(n: usize) -> Result<Graph> {
    check_size("bridge", n, 2)?;
    let mut edges = Vec::with_capacity(n * (n - 1) + 1);
    for offset in [0, n] {
        for a in 0..n {
            for b in a + 1..n {
                edges.push((offset + a, offset + b, 1.0));
            }
        }
    }
    edges.push((0, n, 1.0));
    Graph::from_edges(2 * n, edges)
}

/// Cartesian product: `(a, b) ~ (a', b')` iff one coordinate agrees and the
/// other is adjacent. Weights are inherited from the factor edge.
/// Vertex `(a, b)` has index `a * n2 + b` and label `"{a}:{b}"`.
pub fn product(g1: &Graph, g2: &Graph) -> Result<Graph> {
    let (n1, n2) = (g1.n(), g2.n());
    let labels = (0..n1)
        .flat_map(|a| (0..n2).map(move |b| (a, b)))
        .map(|(a, b)| format!("{}:{}", g1.label(a), g2.label(b)))
        .collect();
    let mut edges = Vec::new();
    for a in 0..n1 {
        for &(b1, b2, w) in g2.edges() {
            edges.push((a * n2 + b1, a * n2 + b2, w));
        }
    }
    for &(a1, a2, w) in g1.edges() {
        for b in 0..n2 {
            edges.push((a1 * n2 + b, a2 * n2 + b, w));
        }
    }
    Graph::from_labeled_edges(labels, edges)
}

/// Random connected graph: a random recursive tree plus each remaining pair
/// independently with probability `extra_p`; weights uniform in `weights`.
pub fn random_connected<R: Rng>(
    n: usize,
    extra_p: f64,
    weights: (f64, f64),
    rng: &mut R,
) -> Result<Graph> {
    check_size("random", n, 2)?;
    let (lo, hi) = weights;
    if !(lo > 0.0 && hi >= lo) {
        return Err(Error::SizeOutOfRange(format!("weight range [{lo}, {hi}]")));
    }
    let draw = |rng: &mut R| if hi > lo { rng.gen_range(lo..=hi) } else { lo };
    let mut edges = Vec::new();
    let mut tree = vec![vec![false; n]; n];
    for v in 1..n {
        let u = rng.gen_range(0..v);
        tree[u][v] = true;
        edges.push((u, v, draw(rng)));
    }
    for a in 0..n {
        for b in a + 1..n {
            if !tree[a][b] && rng.gen_bool(extra_p) {
                edges.push((a, b, draw(rng)));
            }
        }
    }
    Graph::from_edges(n, edges)
}
