#![allow(dead_code)]

use becurv::generators::{bridge_cliques, complete, cycle, hypercube, product, random_connected};
use becurv::Graph;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const CORPUS_SEED: u64 = 20_240_917;

pub struct Named {
    pub name: String,
    pub graph: Graph,
    pub family: Family,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Complete,
    Cycle,
    Hypercube,
    Torus,
    Bridge,
    Random,
}

/// Complete graphs K_2..K_8, cycles C_3..C_12, hypercubes Q_1..Q_4, the tori
/// C_3×C_3 and C_4×C_4, bridged cliques for n = 3..8 and 20 seeded random
/// connected graphs with n ≤ 12 and weights in [0.5, 2].
pub fn corpus() -> Vec<Named> {
    let mut out = Vec::new();
    let mut push = |name: String, graph: Graph, family| out.push(Named { name, graph, family });
    for n in 2..=8 {
        push(format!("K_{n}"), complete(n).unwrap(), Family::Complete);
    }
    for n in 3..=12 {
        push(format!("C_{n}"), cycle(n).unwrap(), Family::Cycle);
    }
    for k in 1..=4 {
        push(format!("Q_{k}"), hypercube(k).unwrap(), Family::Hypercube);
    }
    for n in [3, 4] {
        let c = cycle(n).unwrap();
        push(format!("C_{n}xC_{n}"), product(&c, &c).unwrap(), Family::Torus);
    }
    for n in 3..=8 {
        push(format!("bridge_{n}"), bridge_cliques(n).unwrap(), Family::Bridge);
    }
    for (i, g) in random_graphs(20, CORPUS_SEED).into_iter().enumerate() {
        push(format!("random_{i}"), g, Family::Random);
    }
    out
}

pub fn random_graphs(count: usize, seed: u64) -> Vec<Graph> {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(3..=12);
            let p = rng.gen_range(0.1..0.6);
            random_connected(n, p, (0.5, 2.0), &mut rng).unwrap()
        })
        .collect()
}
