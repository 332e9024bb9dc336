// Independent brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ramsey_mult::exact::{rat, Rat};
use ramsey_mult::{Flag, Graph, WeightedGraph};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Symmetric weights drawn from `{0, 1/d, ..., 1}` with `d` in 1..=6; the diagonal is random too.
pub fn random_weighted(rng: &mut impl Rng, n: usize) -> WeightedGraph {
    let mut w = vec![Rat::zero(); n * n];
    for i in 0..n {
        for j in i..n {
            let d = rng.random_range(1..=6i64);
            let x = rat(rng.random_range(0..=d), d);
            w[i * n + j] = x.clone();
            w[j * n + i] = x;
        }
    }
    WeightedGraph::new(n, w).unwrap()
}

pub fn random_graph(rng: &mut impl Rng, n: usize) -> Graph {
    let mut edges = Vec::new();
    for j in 0..n {
        for i in 0..j {
            if rng.random::<bool>() {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edge_list(n, &edges).unwrap()
}

/// Calls `f` on every map `[k] -> [n]`.
pub fn for_each_map(k: usize, n: usize, mut f: impl FnMut(&[usize])) {
    let mut phi = vec![0usize; k];
    loop {
        f(&phi);
        let mut i = 0;
        loop {
            if i == k {
                return;
            }
            phi[i] += 1;
            if phi[i] < n {
                break;
            }
            phi[i] = 0;
            i += 1;
        }
    }
}

/// `hom(H, G)` counted over all `n^k` maps.
pub fn hom_brute(h: &Graph, g: &Graph) -> u64 {
    let mut c = 0;
    for_each_map(h.n(), g.n(), |phi| {
        if h.edges().iter().all(|&(u, v)| g.has_edge(phi[u], phi[v])) {
            c += 1;
        }
    });
    c
}

/// `t(H, W)` as the plain average over all cell assignments.
pub fn hom_density_brute(h: &Graph, w: &WeightedGraph) -> Rat {
    let n = w.n();
    let mut acc = Rat::zero();
    let edges = h.edges();
    for_each_map(h.n(), n, |phi| {
        let mut p = Rat::one();
        for &(u, v) in &edges {
            p *= w.get(phi[u], phi[v]);
        }
        acc += p;
    });
    acc / Rat::from_integer((n as i64).pow(h.n() as u32).into())
}

/// Probability that `m` independent `W`-random points realise every listed pair
/// `(a, b, is_edge)`; unlisted pairs are unconstrained.
pub fn pattern_probability(w: &WeightedGraph, m: usize, pairs: &[(usize, usize, bool)]) -> Rat {
    let n = w.n();
    let mut acc = Rat::zero();
    for_each_map(m, n, |phi| {
        let mut p = Rat::one();
        for &(a, b, e) in pairs {
            let x = w.get(phi[a], phi[b]);
            if e {
                p *= x;
            } else {
                p *= Rat::one() - x;
            }
        }
        acc += p;
    });
    acc / Rat::from_integer((n as i64).pow(m as u32).into())
}

/// Direct value of the rooted product `F1 * F2` integrated over the roots: points
/// `0..r` are the roots, `r..k` carry `F1`'s extension and `k..2k-r` carry `F2`'s.
/// Root pairs are counted once; pairs between the two extensions are free.
pub fn flag_product_direct(f1: &Flag, f2: &Flag, w: &WeightedGraph) -> Rat {
    let (k, r) = (f1.k(), f1.r());
    let m = 2 * k - r;
    let mut pairs = Vec::new();
    for j in 0..k {
        for i in 0..j {
            pairs.push((i, j, f1.graph().has_edge(i, j)));
        }
    }
    let pos2 = |x: usize| if x < r { x } else { x - r + k };
    for j in r..k {
        for i in 0..j {
            pairs.push((pos2(i), pos2(j), f2.graph().has_edge(i, j)));
        }
    }
    pattern_probability(w, m, &pairs)
}
