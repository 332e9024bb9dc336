//! Flags (graphs with labelled roots `0..r`) and the coefficients `a_r(F1, F2; J)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::exact::Rat;
use crate::graph::{for_each_permutation, parse_pairs, Graph, GraphError};

/// Largest flag order handled (pattern keys fit in a `u32`).
pub const MAX_FLAG_ORDER: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlagError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Mismatch(String),
    #[error("flag order {0} outside the supported range")]
    Size(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Flag {
    graph: Graph,
    r: usize,
}

/// Bit index of pair `(i, j)`, `i < j`, in column order.
#[inline]
fn pair_bit(i: usize, j: usize) -> usize {
    j * (j - 1) / 2 + i
}

/// Labelled pattern of the graph induced on the vertex sequence `vs`.
#[inline]
fn key_of(g: &Graph, vs: &[usize]) -> u32 {
    let mut key = 0u32;
    for j in 1..vs.len() {
        let row = g.row(vs[j]);
        for (i, &u) in vs[..j].iter().enumerate() {
            if row >> u & 1 == 1 {
                key |= 1 << pair_bit(i, j);
            }
        }
    }
    key
}

impl Flag {
    pub fn new(graph: Graph, r: usize) -> Result<Flag, FlagError> {
        if r > graph.n() || graph.n() > MAX_FLAG_ORDER {
            return Err(FlagError::Size(graph.n()));
        }
        Ok(Flag { graph, r })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.graph.n()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn root_graph(&self) -> Graph {
        self.graph.induced(&(0..self.r).collect::<Vec<_>>())
    }

    /// Labelled adjacency pattern over all pairs of `[k]`.
    pub fn key(&self) -> u32 {
        key_of(&self.graph, &(0..self.k()).collect::<Vec<_>>())
    }

    fn nonroot_perms(&self, mut f: impl FnMut(&[usize])) {
        let (r, k) = (self.r, self.k());
        for_each_permutation(k - r, |p| {
            let full: Vec<usize> = (0..r).chain(p.iter().map(|&x| x + r)).collect();
            f(&full);
        });
    }

    /// Minimal pattern key over permutations of the non-root vertices.
    pub fn rooted_canonical_key(&self) -> u32 {
        let mut best = u32::MAX;
        self.nonroot_perms(|p| best = best.min(key_of(&self.graph, p)));
        best
    }

    /// Automorphisms fixing every root.
    pub fn rooted_automorphisms(&self) -> u64 {
        let k0 = self.key();
        let mut c = 0;
        self.nonroot_perms(|p| c += (key_of(&self.graph, p) == k0) as u64);
        c
    }

    /// Number of distinct labellings of the non-root vertices: `(k-r)!/aut`.
    pub fn labelings(&self) -> u64 {
        let f: u64 = (1..=(self.k() - self.r) as u64).product();
        f / self.rooted_automorphisms()
    }

    /// Parses `k r; u-v,...`.
    pub fn parse(s: &str) -> Result<Flag, FlagError> {
        let (head, tail) = s
            .split_once(';')
            .ok_or_else(|| FlagError::Parse(format!("expected `k r; edges`, got `{s}`")))?;
        let nums: Vec<usize> = head
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| FlagError::Parse(format!("bad header `{head}`"))))
            .collect::<Result<_, _>>()?;
        let [k, r] = nums[..] else {
            return Err(FlagError::Parse(format!("bad header `{head}`")));
        };
        let edges = parse_pairs(tail)?;
        Flag::new(Graph::from_edge_list(k, &edges)?, r)
    }

    pub fn to_text(&self) -> String {
        let es: Vec<String> = self.graph.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
        format!("{} {}; {}", self.k(), self.r, es.join(","))
    }
}

impl fmt::Debug for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Flag({})", self.to_text())
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub fn flag_isomorphic(a: &Flag, b: &Flag) -> Result<bool, FlagError> {
    if a.r != b.r || a.k() != b.k() {
        return Err(FlagError::Mismatch(format!(
            "flags of shape ({}, {}) and ({}, {})",
            a.k(),
            a.r,
            b.k(),
            b.r
        )));
    }
    Ok(a.rooted_canonical_key() == b.rooted_canonical_key())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagFamily {
    pub root: Graph,
    pub k: usize,
    pub flags: Vec<Flag>,
}

/// All root-compatible `k`-vertex flags over `root`, one per rooted isomorphism class,
/// sorted by (edge count, rooted canonical key).
pub fn enumerate_flags(root: &Graph, k: usize) -> Result<FlagFamily, FlagError> {
    let r = root.n();
    if k <= r || k > 5 {
        return Err(FlagError::Size(k));
    }
    let free: Vec<(usize, usize)> = (0..k)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .filter(|&(_, j)| j >= r)
        .collect();
    let mut classes: BTreeMap<(usize, u32), Flag> = BTreeMap::new();
    for mask in 0u32..1 << free.len() {
        let mut g = Graph::empty(k)?;
        for (u, v) in root.edges() {
            g.set_edge(u, v, true);
        }
        for (b, &(u, v)) in free.iter().enumerate() {
            if mask >> b & 1 == 1 {
                g.set_edge(u, v, true);
            }
        }
        let f = Flag { graph: g, r };
        let key = f.rooted_canonical_key();
        classes.entry((f.graph.edge_count(), key)).or_insert_with(|| {
            let mut rep = Graph::empty(k).expect("k >= 1");
            for j in 1..k {
                for i in 0..j {
                    if key >> pair_bit(i, j) & 1 == 1 {
                        rep.set_edge(i, j, true);
                    }
                }
            }
            Flag { graph: rep, r }
        });
    }
    Ok(FlagFamily { root: root.clone(), k, flags: classes.into_values().collect() })
}

fn check_family(flags: &[Flag]) -> Result<(usize, usize), FlagError> {
    let first = flags.first().ok_or_else(|| FlagError::Mismatch("empty flag list".into()))?;
    let (k, r) = (first.k(), first.r);
    let root_key = key_of(&first.graph, &(0..r).collect::<Vec<_>>());
    for f in flags {
        if f.k() != k || f.r != r {
            return Err(FlagError::Mismatch(format!("flag {f} does not have shape ({k}, {r})")));
        }
        if key_of(&f.graph, &(0..r).collect::<Vec<_>>()) != root_key {
            return Err(FlagError::Mismatch(format!("flag {f} has a different root graph")));
        }
    }
    Ok((k, r))
}

/// Placement counts behind `a_r`: entry `(i, j)` counts ordered injective sequences
/// (roots, extension 1, extension 2) of length `2k-r` in `j` whose two labelled
/// patterns equal `flags[i]` and `flags[j]`. Also returns the total number of sequences.
pub fn a_counts(flags: &[Flag], j: &Graph) -> Result<(Vec<u64>, u64), FlagError> {
    let (k, r) = check_family(flags)?;
    let m = 2 * k - r;
    let n = j.n();
    if n < m {
        return Err(FlagError::Mismatch(format!("host has {n} vertices, need at least {m}")));
    }
    let t = flags.len();
    let index: HashMap<u32, usize> = flags.iter().enumerate().map(|(i, f)| (f.key(), i)).collect();
    let mut counts = vec![0u64; t * t];
    let mut seq = Vec::with_capacity(m);
    fn ext2(
        j: &Graph,
        k: usize,
        r: usize,
        seq: &mut Vec<usize>,
        used: u32,
        first: usize,
        index: &HashMap<u32, usize>,
        counts: &mut [u64],
        t: usize,
    ) {
        if seq.len() == 2 * k - r {
            let vs: Vec<usize> = seq[..r].iter().chain(&seq[k..]).copied().collect();
            if let Some(&b) = index.get(&key_of(j, &vs)) {
                counts[first * t + b] += 1;
            }
            return;
        }
        for x in 0..j.n() {
            if used >> x & 1 == 0 {
                seq.push(x);
                ext2(j, k, r, seq, used | 1 << x, first, index, counts, t);
                seq.pop();
            }
        }
    }
    fn first_part(
        j: &Graph,
        k: usize,
        r: usize,
        seq: &mut Vec<usize>,
        used: u32,
        index: &HashMap<u32, usize>,
        counts: &mut [u64],
        t: usize,
    ) {
        if seq.len() == k {
            if let Some(&a) = index.get(&key_of(j, seq)) {
                ext2(j, k, r, seq, used, a, index, counts, t);
            }
            return;
        }
        for x in 0..j.n() {
            if used >> x & 1 == 0 {
                seq.push(x);
                first_part(j, k, r, seq, used | 1 << x, index, counts, t);
                seq.pop();
            }
        }
    }
    first_part(j, k, r, &mut seq, 0, &index, &mut counts, t);
    let total: u64 = (0..m as u64).map(|i| n as u64 - i).product();
    Ok((counts, total))
}

/// Dense table `a(F_i, F_j; J)` for a whole family; `v(J) >= 2k - r`.
pub fn a_table(flags: &[Flag], j: &Graph) -> Result<Vec<Vec<Rat>>, FlagError> {
    let (counts, total) = a_counts(flags, j)?;
    let t = flags.len();
    let total = BigInt::from(total);
    Ok((0..t)
        .map(|a| (0..t).map(|b| Rat::new(BigInt::from(counts[a * t + b]), total.clone())).collect())
        .collect())
}

fn pair_value(f1: &Flag, f2: &Flag, j: &Graph) -> Result<Rat, FlagError> {
    if f1.r != f2.r || f1.k() != f2.k() {
        return Err(FlagError::Mismatch("flags must share k and r".into()));
    }
    if f1 == f2 {
        return Ok(a_table(std::slice::from_ref(f1), j)?[0][0].clone());
    }
    let tab = a_table(&[f1.clone(), f2.clone()], j)?;
    Ok(tab[0][1].clone())
}

/// `a_r(F1, F2; J)` with `v(J) = 2k - r`.
pub fn a_coeff(f1: &Flag, f2: &Flag, j: &Graph) -> Result<Rat, FlagError> {
    let m = 2 * f1.k() - f1.r;
    if j.n() != m {
        return Err(FlagError::Mismatch(format!("J must have {m} vertices, has {}", j.n())));
    }
    pair_value(f1, f2, j)
}

/// Coefficient against an `ℓ`-vertex `J`, `ℓ >= 2k - r`: the same placement probability
/// taken inside `J`, equal to the sum over `(2k-r)`-vertex `J0` of
/// `a_r(F1, F2; J0) * induced_density(J0, J)`.
pub fn a_coeff_lifted(f1: &Flag, f2: &Flag, j: &Graph, ell: usize) -> Result<Rat, FlagError> {
    if j.n() != ell {
        return Err(FlagError::Mismatch(format!("J must have {ell} vertices, has {}", j.n())));
    }
    pair_value(f1, f2, j)
}
