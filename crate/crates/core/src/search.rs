//! Random regular graphs and the edge-switching hill climb.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::densities::hom_count_01;
use crate::exact::{int, Rat};
use crate::graph::{Graph, GraphError};

pub const DEFAULT_ITERS: usize = 5000;
pub const DEFAULT_RESTARTS: usize = 20;

const PAIRING_ATTEMPTS: usize = 1_000_000;
const SWITCH_ATTEMPTS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("no {d}-regular graph on {n} vertices (need n*d even and d < n <= 16)")]
    Infeasible { n: usize, d: usize },
    #[error("configuration model failed to produce a simple graph")]
    PairingFailed,
    #[error("invalid switch: {0}")]
    BadSwitch(String),
    #[error("lambda must be a rational in [0,2] with small numerator and denominator")]
    Lambda,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub n: usize,
    pub d: usize,
    pub h1: Graph,
    pub h2: Graph,
    pub lambda: Rat,
    pub max_iters: usize,
    pub restarts: usize,
    pub seed: u64,
}

/// Accepted steps of one climb; the objective is constant between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClimbTrace {
    pub seed: u64,
    pub start: Rat,
    /// `(iteration, new objective)` for every accepted switch.
    pub accepted: Vec<(usize, Rat)>,
    pub iterations: usize,
    pub best_graph: Graph,
    pub best_value: Rat,
}

impl ClimbTrace {
    /// Objective after each iteration (index 0 is the starting graph).
    pub fn per_iteration(&self) -> Vec<Rat> {
        let mut out = Vec::with_capacity(self.iterations + 1);
        let mut cur = self.start.clone();
        let mut next = self.accepted.iter().peekable();
        out.push(cur.clone());
        for it in 1..=self.iterations {
            while let Some((i, v)) = next.peek() {
                if *i == it {
                    cur = v.clone();
                    next.next();
                } else {
                    break;
                }
            }
            out.push(cur.clone());
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchTrace {
    pub restarts: Vec<ClimbTrace>,
    pub best_graph: Graph,
    pub best_value: Rat,
}

fn check_shape(n: usize, d: usize) -> Result<(), SearchError> {
    if n * d % 2 == 1 || d >= n || n > 16 {
        return Err(SearchError::Infeasible { n, d });
    }
    Ok(())
}

/// Configuration model; the whole pairing is resampled on a loop or repeated edge.
pub fn random_regular(n: usize, d: usize, rng: &mut impl Rng) -> Result<Graph, SearchError> {
    check_shape(n, d)?;
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    'attempt: for _ in 0..PAIRING_ATTEMPTS {
        stubs.shuffle(rng);
        let mut g = Graph::empty(n)?;
        for p in stubs.chunks(2) {
            let (u, v) = (p[0], p[1]);
            if u == v || g.has_edge(u, v) {
                continue 'attempt;
            }
            g.set_edge(u, v, true);
        }
        return Ok(g);
    }
    Err(SearchError::PairingFailed)
}

/// Replaces `u1v1, u2v2` by `u1v2, u2v1`.
pub fn switch(g: &Graph, u1: usize, v1: usize, u2: usize, v2: usize) -> Result<Graph, SearchError> {
    let vs = [u1, v1, u2, v2];
    if vs.iter().any(|&x| x >= g.n()) {
        return Err(SearchError::BadSwitch("vertex out of range".into()));
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if vs[i] == vs[j] {
                return Err(SearchError::BadSwitch("vertices must be distinct".into()));
            }
        }
    }
    if !g.has_edge(u1, v1) || !g.has_edge(u2, v2) {
        return Err(SearchError::BadSwitch(format!("{u1}-{v1} and {u2}-{v2} must be edges")));
    }
    if g.has_edge(u1, v2) || g.has_edge(u2, v1) {
        return Err(SearchError::BadSwitch(format!("{u1}-{v2} and {u2}-{v1} must be non-edges")));
    }
    let mut h = g.clone();
    h.set_edge(u1, v1, false);
    h.set_edge(u2, v2, false);
    h.set_edge(u1, v2, true);
    h.set_edge(u2, v1, true);
    Ok(h)
}

fn random_switch(g: &Graph, rng: &mut impl Rng) -> Option<Graph> {
    let edges = g.edges();
    if edges.len() < 2 {
        return None;
    }
    for _ in 0..SWITCH_ATTEMPTS {
        let a = edges[rng.random_range(0..edges.len())];
        let b = edges[rng.random_range(0..edges.len())];
        let (u1, v1) = if rng.random::<bool>() { a } else { (a.1, a.0) };
        let (u2, v2) = if rng.random::<bool>() { b } else { (b.1, b.0) };
        if let Ok(h) = switch(g, u1, v1, u2, v2) {
            return Some(h);
        }
    }
    None
}

/// Exact objective `λ t(H1, W_G) + (2-λ) t(H2, 1 - W_G)` on `n`-vertex graphs, evaluated as
/// an integer numerator over a fixed denominator.
pub struct Objective {
    h1: Graph,
    h2: Graph,
    n: usize,
    p: u128,
    q: u128,
    pad1: u128,
    pad2: u128,
    denom: Rat,
}

impl Objective {
    pub fn new(h1: &Graph, h2: &Graph, lambda: &Rat, n: usize) -> Result<Objective, SearchError> {
        let p = lambda.numer().to_u64().ok_or(SearchError::Lambda)? as u128;
        let q = lambda.denom().to_u64().ok_or(SearchError::Lambda)? as u128;
        if p > 2 * q || q > 1 << 20 {
            return Err(SearchError::Lambda);
        }
        let top = h1.n().max(h2.n());
        let nn = n as u128;
        Ok(Objective {
            h1: h1.clone(),
            h2: h2.clone(),
            n,
            p,
            q,
            pad1: nn.pow((top - h1.n()) as u32),
            pad2: nn.pow((top - h2.n()) as u32),
            denom: Rat::from_integer(BigInt::from(q * nn.pow(top as u32))),
        })
    }

    pub fn numerator(&self, g: &Graph) -> u128 {
        assert_eq!(g.n(), self.n);
        let full = (1u32 << self.n) - 1;
        let comp: Vec<u32> = g.rows().iter().map(|r| !r & full).collect();
        let a = hom_count_01(&self.h1, g.rows());
        let b = hom_count_01(&self.h2, &comp);
        self.p * a * self.pad1 + (2 * self.q - self.p) * b * self.pad2
    }

    pub fn value_of(&self, numerator: u128) -> Rat {
        Rat::from_integer(BigInt::from(numerator)) / &self.denom
    }

    pub fn value(&self, g: &Graph) -> Rat {
        self.value_of(self.numerator(g))
    }
}

/// One climb from a fresh random regular graph; only strict decreases are kept.
pub fn climb(cfg: &SearchConfig, seed: u64) -> Result<ClimbTrace, SearchError> {
    let obj = Objective::new(&cfg.h1, &cfg.h2, &cfg.lambda, cfg.n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = random_regular(cfg.n, cfg.d, &mut rng)?;
    let mut cur = obj.numerator(&g);
    let start = obj.value_of(cur);
    let mut accepted = Vec::new();
    let mut iterations = 0;
    for it in 1..=cfg.max_iters {
        let Some(h) = random_switch(&g, &mut rng) else { break };
        iterations = it;
        let v = obj.numerator(&h);
        if v < cur {
            cur = v;
            g = h;
            accepted.push((it, obj.value_of(cur)));
        }
    }
    Ok(ClimbTrace { seed, start, accepted, iterations, best_value: obj.value_of(cur), best_graph: g })
}

pub fn restart_seed(seed: u64, restart: usize) -> u64 {
    seed.wrapping_mul(1_000_003).wrapping_add(restart as u64)
}

/// Independent climbs (in parallel), each seeded by [`restart_seed`].
pub fn hill_climb(cfg: &SearchConfig) -> Result<SearchTrace, SearchError> {
    check_shape(cfg.n, cfg.d)?;
    if cfg.lambda < int(0) || cfg.lambda > int(2) {
        return Err(SearchError::Lambda);
    }
    let seeds: Vec<u64> = (0..cfg.restarts.max(1)).map(|r| restart_seed(cfg.seed, r)).collect();
    let runs = crate::par::map(&seeds, |&s| climb(cfg, s));
    let restarts = runs.into_iter().collect::<Result<Vec<_>, _>>()?;
    let best = restarts
        .iter()
        .min_by(|a, b| a.best_value.cmp(&b.best_value))
        .expect("at least one restart");
    Ok(SearchTrace { best_graph: best.best_graph.clone(), best_value: best.best_value.clone(), restarts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::densities::{objective, Kernel};
    use crate::exact::rat;
    use crate::graph::{canonical_form, named_graph};

    fn rng(s: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(s)
    }

    #[test]
    fn regular_degrees() {
        for s in 0..5 {
            let g = random_regular(12, 6, &mut rng(s)).unwrap();
            assert_eq!(g.is_regular(), Some(6));
        }
        let k4 = random_regular(4, 3, &mut rng(1)).unwrap();
        assert_eq!(canonical_form(&k4), canonical_form(&Graph::complete(4).unwrap()));
        assert!(matches!(random_regular(5, 3, &mut rng(1)), Err(SearchError::Infeasible { .. })));
    }

    #[test]
    fn switch_on_c6() {
        let c6 = Graph::cycle(6).unwrap();
        let h = switch(&c6, 0, 1, 3, 4).unwrap();
        assert_eq!(h.is_regular(), Some(2));
        assert_eq!(switch(&h, 0, 4, 3, 1).unwrap(), c6);
        assert!(switch(&c6, 0, 1, 1, 2).is_err());
        assert!(switch(&c6, 0, 2, 3, 4).is_err());
    }

    #[test]
    fn objective_matches_densities() {
        let k = named_graph("K3xK4").unwrap();
        let (d, m) = (named_graph("D").unwrap(), named_graph("M").unwrap());
        let o = Objective::new(&d, &m, &rat(5, 6), 12).unwrap();
        assert_eq!(o.value(&k), rat(1, 36));
        let g = random_regular(12, 6, &mut rng(3)).unwrap();
        assert_eq!(o.value(&g), objective(&d, &m, &rat(5, 6), &Kernel::from_graph(&g)).unwrap());
    }

    #[test]
    fn zero_iterations() {
        let cfg = SearchConfig {
            n: 12,
            d: 6,
            h1: named_graph("D").unwrap(),
            h2: named_graph("M").unwrap(),
            lambda: rat(5, 6),
            max_iters: 0,
            restarts: 1,
            seed: 9,
        };
        let t = hill_climb(&cfg).unwrap();
        assert_eq!(t.restarts[0].accepted.len(), 0);
        assert_eq!(t.best_value, t.restarts[0].start);
        assert_eq!(t.restarts[0].per_iteration(), vec![t.best_value.clone()]);
    }

    #[test]
    fn reproducible_and_monotone() {
        let cfg = SearchConfig {
            n: 10,
            d: 4,
            h1: named_graph("K3").unwrap(),
            h2: named_graph("C5").unwrap(),
            lambda: rat(10, 17),
            max_iters: 300,
            restarts: 3,
            seed: 42,
        };
        let a = hill_climb(&cfg).unwrap();
        assert_eq!(a, hill_climb(&cfg).unwrap());
        for r in &a.restarts {
            let vals = r.per_iteration();
            assert!(vals.windows(2).all(|w| w[1] <= w[0]));
            assert!(r.accepted.windows(2).all(|w| w[1].1 < w[0].1));
            assert!(vals.iter().all(|v| *v >= rat(3, 34)));
        }
    }
}
