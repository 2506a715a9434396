use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::graph::{DirectedGraph, EdgeLabeling, GraphAction};
use crate::fdalg::FiniteGroup;

/// Inputs to the skew-product construction: `(E, α)` and `(F, δ)`.
#[derive(Debug, Clone)]
pub struct GraphInstance {
    pub e: DirectedGraph,
    pub action: GraphAction,
    pub f: DirectedGraph,
    pub labeling: EdgeLabeling,
}

/// Bounds on generated graphs.
#[derive(Debug, Clone, Copy)]
pub struct RandomBounds {
    pub max_vertices: usize,
    pub max_edges: usize,
}

impl Default for RandomBounds {
    fn default() -> Self {
        RandomBounds { max_vertices: 4, max_edges: 6 }
    }
}

/// A vertex permutation of order dividing `n`, built from disjoint `n`-cycles.
fn random_symmetry(rng: &mut ChaCha8Rng, k: usize, n: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..k).collect();
    order.shuffle(rng);
    let mut perm: Vec<usize> = (0..k).collect();
    let cycles = rng.gen_range(0..=k / n);
    for c in 0..cycles {
        let cyc = &order[c * n..(c + 1) * n];
        for i in 0..n {
            perm[cyc[i]] = cyc[(i + 1) % n];
        }
    }
    perm
}

/// `E` with a `ℤ_n`-action made of whole edge orbits, and `F` with a random labeling.
pub fn random_instance(rng: &mut ChaCha8Rng, n: usize, bounds: RandomBounds) -> GraphInstance {
    let k = rng.gen_range(1..=bounds.max_vertices);
    let sigma = random_symmetry(rng, k, n);
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut edge_gen: Vec<usize> = Vec::new();
    for _ in 0..rng.gen_range(0..=bounds.max_edges) {
        let (u, v) = (rng.gen_range(0..k), rng.gen_range(0..k));
        let mut orbit = vec![(u, v)];
        while let Some(&(a, b)) = orbit.last() {
            let next = (sigma[a], sigma[b]);
            if next == (u, v) {
                break;
            }
            orbit.push(next);
        }
        if pairs.len() + orbit.len() > bounds.max_edges {
            continue;
        }
        let base = pairs.len();
        let m = orbit.len();
        for (i, p) in orbit.into_iter().enumerate() {
            pairs.push(p);
            edge_gen.push(base + (i + 1) % m);
        }
    }
    let e = DirectedGraph::from_pairs(k, &pairs).expect("endpoints in range");
    let action = GraphAction::cyclic(n, sigma, edge_gen).expect("cyclic group");

    let kf = rng.gen_range(1..=bounds.max_vertices);
    let ef = rng.gen_range(0..=bounds.max_edges);
    let fpairs: Vec<(usize, usize)> = (0..ef).map(|_| (rng.gen_range(0..kf), rng.gen_range(0..kf))).collect();
    let f = DirectedGraph::from_pairs(kf, &fpairs).expect("endpoints in range");
    let labels = (0..ef).map(|_| rng.gen_range(0..n)).collect();
    let labeling = EdgeLabeling::new(FiniteGroup::cyclic(n).expect("n >= 1"), labels).expect("labels in range");
    GraphInstance { e, action, f, labeling }
}

/// `count` instances from a seed, alternating between `ℤ₂` and `ℤ₃`.
pub fn random_instances(seed: u64, count: usize, bounds: RandomBounds) -> Vec<GraphInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|i| random_instance(&mut rng, 2 + i % 2, bounds)).collect()
}
