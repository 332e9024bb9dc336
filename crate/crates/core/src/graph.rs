//! Small simple graphs stored as bitset adjacency rows.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Largest vertex count a [`Graph`] can hold (one `u32` row per vertex).
pub const MAX_VERTICES: usize = 32;

/// Largest order accepted by [`enumerate_graphs`].
pub const MAX_ENUM_ORDER: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex count {0} outside 1..={MAX_VERTICES}")]
    VertexCount(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown graph name `{0}`")]
    UnknownName(String),
    #[error("result would have {0} vertices (limit {MAX_VERTICES})")]
    Overflow(usize),
    #[error("order {0} not supported here")]
    Unsupported(usize),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u32>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Graph, GraphError> {
        if n == 0 || n > MAX_VERTICES {
            return Err(GraphError::VertexCount(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::OutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Graph, GraphError> {
        Ok(Graph::empty(n)?.complement())
    }

    pub fn cycle(n: usize) -> Result<Graph, GraphError> {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edge_list(n, &edges)
    }

    pub fn path(n: usize) -> Result<Graph, GraphError> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edge_list(n, &edges)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    /// Neighbourhood of `u` as a bitmask.
    #[inline]
    pub fn row(&self, u: usize) -> u32 {
        self.adj[u]
    }

    pub fn rows(&self) -> &[u32] {
        &self.adj
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize, on: bool) {
        if on {
            self.adj[u] |= 1 << v;
            self.adj[v] |= 1 << u;
        } else {
            self.adj[u] &= !(1 << v);
            self.adj[v] &= !(1 << u);
        }
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_regular(&self) -> Option<usize> {
        let d = self.degree(0);
        (1..self.n).all(|u| self.degree(u) == d).then_some(d)
    }

    /// Loop-free complement.
    pub fn complement(&self) -> Graph {
        let full = if self.n == 32 { u32::MAX } else { (1u32 << self.n) - 1 };
        let adj = (0..self.n).map(|u| !self.adj[u] & full & !(1 << u)).collect();
        Graph { n: self.n, adj }
    }

    /// Subgraph induced on `vs`, relabelled in the given order.
    pub fn induced(&self, vs: &[usize]) -> Graph {
        let mut g = Graph { n: vs.len(), adj: vec![0; vs.len()] };
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                if self.has_edge(vs[i], vs[j]) {
                    g.set_edge(i, j, true);
                }
            }
        }
        g
    }

    /// Graph with vertex `perm[i]` of `self` renamed to `i`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        self.induced(perm)
    }

    /// Upper-triangle bits in graph6 column order, first pair most significant.
    pub fn code(&self) -> u128 {
        assert!(self.n <= 16, "code() needs n <= 16");
        let mut c = 0u128;
        for j in 1..self.n {
            for i in 0..j {
                c = c << 1 | self.has_edge(i, j) as u128;
            }
        }
        c
    }

    pub fn from_code(n: usize, code: u128) -> Result<Graph, GraphError> {
        if n > 16 {
            return Err(GraphError::Unsupported(n));
        }
        let mut g = Graph::empty(n)?;
        let len = n * (n - 1) / 2;
        let mut p = 0;
        for j in 1..n {
            for i in 0..j {
                if code >> (len - 1 - p) & 1 == 1 {
                    g.set_edge(i, j, true);
                }
                p += 1;
            }
        }
        Ok(g)
    }

    /// Parse `n; u-v,u-v,...`.
    pub fn parse_edge_list(s: &str) -> Result<Graph, GraphError> {
        let (head, tail) = s
            .split_once(';')
            .ok_or_else(|| GraphError::Parse(format!("expected `n; edges`, got `{s}`")))?;
        let n: usize = head
            .trim()
            .parse()
            .map_err(|_| GraphError::Parse(format!("bad vertex count `{}`", head.trim())))?;
        let edges = parse_pairs(tail)?;
        Graph::from_edge_list(n, &edges)
    }

    pub fn to_edge_list(&self) -> String {
        let es: Vec<String> = self.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
        format!("{}; {}", self.n, es.join(","))
    }

    pub fn to_graph6(&self) -> String {
        let mut out = String::new();
        out.push((self.n as u8 + 63) as char);
        let mut acc = 0u8;
        let mut k = 0;
        for j in 1..self.n {
            for i in 0..j {
                acc = acc << 1 | self.has_edge(i, j) as u8;
                k += 1;
                if k == 6 {
                    out.push((acc + 63) as char);
                    acc = 0;
                    k = 0;
                }
            }
        }
        if k > 0 {
            out.push(((acc << (6 - k)) + 63) as char);
        }
        out
    }

    pub fn from_graph6(s: &str) -> Result<Graph, GraphError> {
        let s = s.trim();
        let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
        let bytes = s.as_bytes();
        if bytes.is_empty() {
            return Err(GraphError::Parse("empty graph6 string".into()));
        }
        if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
            return Err(GraphError::Parse(format!("invalid graph6 character in `{s}`")));
        }
        if bytes[0] == 126 {
            return Err(GraphError::Unsupported(MAX_VERTICES + 1));
        }
        let n = (bytes[0] - 63) as usize;
        let len = n * n.saturating_sub(1) / 2;
        let need = len.div_ceil(6);
        if bytes.len() - 1 != need {
            return Err(GraphError::Parse(format!(
                "graph6 length {} does not match n = {n}",
                bytes.len()
            )));
        }
        let mut g = Graph::empty(n)?;
        let mut p = 0;
        for j in 1..n {
            for i in 0..j {
                let b = bytes[1 + p / 6] - 63;
                if b >> (5 - p % 6) & 1 == 1 {
                    g.set_edge(i, j, true);
                }
                p += 1;
            }
        }
        Ok(g)
    }

    /// Accepts `named:X`, a bare name, edge-list text, or graph6.
    pub fn parse_any(s: &str) -> Result<Graph, GraphError> {
        let s = s.trim();
        if let Some(name) = s.strip_prefix("named:") {
            return named_graph(name);
        }
        if s.contains(';') {
            return Graph::parse_edge_list(s);
        }
        if let Ok(g) = named_graph(s) {
            return Ok(g);
        }
        Graph::from_graph6(s)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})", self.to_edge_list())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

pub(crate) fn parse_pairs(s: &str) -> Result<Vec<(usize, usize)>, GraphError> {
    let mut out = Vec::new();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (a, b) = tok
            .split_once('-')
            .ok_or_else(|| GraphError::Parse(format!("bad edge `{tok}`")))?;
        let a = a.trim().parse().map_err(|_| GraphError::Parse(format!("bad edge `{tok}`")))?;
        let b = b.trim().parse().map_err(|_| GraphError::Parse(format!("bad edge `{tok}`")))?;
        out.push((a, b));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub n: usize,
    pub canon_bits: u128,
}

impl CanonicalForm {
    pub fn graph(&self) -> Graph {
        Graph::from_code(self.n, self.canon_bits).expect("canonical form holds a valid code")
    }
}

/// Stable colour refinement; colours are sorted so the labelling is invariant.
fn refine_colours(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut col: Vec<usize> = (0..n).map(|u| g.degree(u)).collect();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|u| {
                let mut nb: Vec<usize> = (0..n).filter(|&v| g.has_edge(u, v)).map(|v| col[v]).collect();
                nb.sort_unstable();
                (col[u], nb)
            })
            .collect();
        let distinct: BTreeSet<&(usize, Vec<usize>)> = sigs.iter().collect();
        let index: Vec<&(usize, Vec<usize>)> = distinct.into_iter().collect();
        let next: Vec<usize> = sigs
            .iter()
            .map(|s| index.binary_search(&s).expect("signature present"))
            .collect();
        let before = col.iter().collect::<BTreeSet<_>>().len();
        if index.len() == before {
            return next;
        }
        col = next;
    }
}

struct CanonSearch<'a> {
    g: &'a Graph,
    slot_colour: Vec<usize>,
    colour: Vec<usize>,
    perm: Vec<usize>,
    cols: Vec<u32>,
    best: Option<Vec<u32>>,
}

impl CanonSearch<'_> {
    fn go(&mut self, depth: usize, used: u32) {
        if let Some(b) = &self.best {
            if self.cols[..depth] > b[..depth] {
                return;
            }
        }
        let n = self.g.n();
        if depth == n {
            if self.best.as_ref().is_none_or(|b| self.cols < *b) {
                self.best = Some(self.cols.clone());
            }
            return;
        }
        let mut cands: Vec<(u32, usize)> = Vec::new();
        for v in 0..n {
            if used >> v & 1 == 1 || self.colour[v] != self.slot_colour[depth] {
                continue;
            }
            let mut c = 0u32;
            for i in 0..depth {
                c = c << 1 | self.g.has_edge(self.perm[i], v) as u32;
            }
            cands.push((c, v));
        }
        // Only the smallest next column can extend to a minimal code.
        let min = cands.iter().map(|x| x.0).min().expect("colour class non-empty");
        for (c, v) in cands {
            if c == min {
                self.perm[depth] = v;
                self.cols[depth] = c;
                self.go(depth + 1, used | 1 << v);
            }
        }
    }
}

/// Canonical form: the minimal code over vertex orders that list colour-refinement
/// classes in sorted order. Equal iff isomorphic.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    assert!(g.n() <= 16, "canonical_form supports n <= 16");
    let colour = refine_colours(g);
    let mut slot_colour = colour.clone();
    slot_colour.sort_unstable();
    let n = g.n();
    let mut s = CanonSearch {
        g,
        slot_colour,
        colour,
        perm: vec![0; n],
        cols: vec![0; n],
        best: None,
    };
    s.go(0, 0);
    let cols = s.best.expect("search visits at least one order");
    let mut bits = 0u128;
    for (j, c) in cols.iter().enumerate().skip(1) {
        bits = bits << j | *c as u128;
    }
    CanonicalForm { n, canon_bits: bits }
}

/// Reference canonical form: minimal code over all n! permutations.
pub fn canonical_form_reference(g: &Graph) -> CanonicalForm {
    assert!(g.n() <= 10, "reference path supports n <= 10");
    let n = g.n();
    let mut best = u128::MAX;
    for_each_permutation(n, |p| {
        let c = g.relabel(p).code();
        if c < best {
            best = c;
        }
    });
    CanonicalForm { n, canon_bits: best }
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && canonical_form(a) == canonical_form(b)
}

/// Heap's algorithm.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    f(&p);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            f(&p);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

pub fn automorphism_count(g: &Graph) -> u64 {
    fn go(g: &Graph, map: &mut Vec<usize>, used: u32, count: &mut u64) {
        let i = map.len();
        if i == g.n() {
            *count += 1;
            return;
        }
        for v in 0..g.n() {
            if used >> v & 1 == 1 || g.degree(v) != g.degree(i) {
                continue;
            }
            if (0..i).all(|j| g.has_edge(j, i) == g.has_edge(map[j], v)) {
                map.push(v);
                go(g, map, used | 1 << v, count);
                map.pop();
            }
        }
    }
    let mut count = 0;
    go(g, &mut Vec::with_capacity(g.n()), 0, &mut count);
    count
}

/// One graph per isomorphism class, sorted by canonical code.
pub fn enumerate_graphs(order: usize) -> Result<Vec<Graph>, GraphError> {
    if order == 0 || order > MAX_ENUM_ORDER {
        return Err(GraphError::Unsupported(order));
    }
    let mut level: Vec<CanonicalForm> = vec![canonical_form(&Graph::empty(1)?)];
    for m in 2..=order {
        let parents: Vec<Graph> = level.iter().map(CanonicalForm::graph).collect();
        let children = crate::par::flat_map(&parents, |p| {
            let mut out = Vec::with_capacity(1 << (m - 1));
            for mask in 0u32..1 << (m - 1) {
                let mut g = Graph { n: m, adj: p.adj.clone() };
                g.adj.push(0);
                for u in 0..m - 1 {
                    if mask >> u & 1 == 1 {
                        g.set_edge(u, m - 1, true);
                    }
                }
                out.push(canonical_form(&g));
            }
            out
        });
        let set: BTreeSet<CanonicalForm> = children.into_iter().collect();
        level = set.into_iter().collect();
    }
    Ok(level.iter().map(CanonicalForm::graph).collect())
}

pub fn tensor_product(g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
    let n = g.n() * h.n();
    if n > MAX_VERTICES {
        return Err(GraphError::Overflow(n));
    }
    let mut t = Graph::empty(n)?;
    for (u, v) in g.edges() {
        for (x, y) in h.edges() {
            t.set_edge(u * h.n() + x, v * h.n() + y, true);
            t.set_edge(u * h.n() + y, v * h.n() + x, true);
        }
    }
    Ok(t)
}

/// Appends a non-adjacent clone of every vertex in `vs`. Clone `u'` is adjacent to
/// `w` (original) iff `u ~ w`, and to clone `v'` iff `u ~ v`.
pub fn duplicate_vertices(g: &Graph, vs: &[usize]) -> Result<Graph, GraphError> {
    let n = g.n() + vs.len();
    if n > MAX_VERTICES {
        return Err(GraphError::Overflow(n));
    }
    let origin: Vec<usize> = (0..g.n()).chain(vs.iter().copied()).collect();
    for &v in vs {
        if v >= g.n() {
            return Err(GraphError::OutOfRange { vertex: v, n: g.n() });
        }
    }
    let mut out = Graph::empty(n)?;
    for a in 0..n {
        for b in a + 1..n {
            if g.has_edge(origin[a], origin[b]) {
                out.set_edge(a, b, true);
            }
        }
    }
    Ok(out)
}

pub const NAMED_GRAPHS: &[&str] = &[
    "K2", "K3", "K4", "K5", "C4", "C5", "C6", "P3", "B", "D", "M", "K_1_4", "C6_complement",
    "K3xK4", "Schlafli", "H_fig2", "bowtie",
];

/// Intersection graph of the 27 lines on a cubic surface (10-regular).
/// Vertices: a_1..a_6 are 0..6, b_1..b_6 are 6..12, c_ij follow in lexicographic order.
pub fn lines_27_graph() -> Graph {
    let mut c = Vec::new();
    for i in 0..6 {
        for j in i + 1..6 {
            c.push((i, j));
        }
    }
    let mut g = Graph::empty(27).expect("27 <= MAX_VERTICES");
    for i in 0..6 {
        for j in 0..6 {
            if i != j {
                g.set_edge(i, 6 + j, true);
            }
        }
    }
    for (t, &(i, j)) in c.iter().enumerate() {
        for k in [i, j] {
            g.set_edge(12 + t, k, true);
            g.set_edge(12 + t, 6 + k, true);
        }
        for (s, &(k, l)) in c.iter().enumerate().skip(t + 1) {
            if i != k && i != l && j != k && j != l {
                g.set_edge(12 + t, 12 + s, true);
            }
        }
    }
    g
}

pub fn named_graph(name: &str) -> Result<Graph, GraphError> {
    let e = Graph::from_edge_list;
    match name {
        "K1" => Graph::complete(1),
        "K2" => Graph::complete(2),
        "K3" => Graph::complete(3),
        "K4" => Graph::complete(4),
        "K5" => Graph::complete(5),
        "K6" => Graph::complete(6),
        "C4" => Graph::cycle(4),
        "C5" => Graph::cycle(5),
        "C6" => Graph::cycle(6),
        "P3" => Graph::path(3),
        "B" => e(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (2, 4)]),
        "D" => e(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]),
        "M" => e(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3)]),
        "K_1_4" => e(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]),
        "C6_complement" => Ok(Graph::cycle(6)?.complement()),
        "K3xK4" => tensor_product(&Graph::complete(3)?, &Graph::complete(4)?),
        "Schlafli" => Ok(lines_27_graph().complement()),
        "H_fig2" => {
            // 0 and 3 are adjacent in the complement of C6 and share no neighbour.
            duplicate_vertices(&Graph::cycle(6)?.complement(), &[0, 3])
        }
        "bowtie" => e(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]),
        other => Err(GraphError::UnknownName(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_roundtrip_and_errors() {
        let k3 = Graph::from_edge_list(3, &[(0, 1), (1, 2), (0, 2), (1, 0)]).unwrap();
        assert_eq!(k3.edge_count(), 3);
        assert_eq!(Graph::parse_edge_list(&k3.to_edge_list()).unwrap(), k3);
        assert_eq!(Graph::from_edge_list(3, &[(0, 0)]), Err(GraphError::Loop(0)));
        assert!(matches!(
            Graph::from_edge_list(3, &[(0, 3)]),
            Err(GraphError::OutOfRange { .. })
        ));
        assert_eq!(Graph::parse_edge_list("4;").unwrap().edge_count(), 0);
    }

    #[test]
    fn graph6_known_strings() {
        // Reference strings from the published format description and nauty output.
        assert_eq!(Graph::complete(4).unwrap().to_graph6(), "C~");
        assert_eq!(Graph::cycle(5).unwrap().to_graph6(), "Dhc");
        assert_eq!(Graph::empty(1).unwrap().to_graph6(), "@");
        let g = Graph::from_edge_list(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(g.to_graph6(), "DQc");
        assert_eq!(Graph::from_graph6("DQc").unwrap(), g);
        assert!(Graph::from_graph6("D~").is_err());
    }

    #[test]
    fn complement_involution() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(c5.complement().complement(), c5);
        assert_eq!(Graph::complete(5).unwrap().complement().edge_count(), 0);
        let full = lines_27_graph();
        assert_eq!(full.complement().complement(), full);
    }

    #[test]
    fn canonical_relabel_and_distinct() {
        let p = Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        let q = Graph::from_edge_list(3, &[(1, 2), (2, 0)]).unwrap();
        assert_eq!(canonical_form(&p), canonical_form(&q));
        let c5 = Graph::cycle(5).unwrap();
        let p5 = Graph::path(5).unwrap();
        assert_ne!(canonical_form(&c5), canonical_form(&p5));
    }

    #[test]
    fn bowtie_relabelings_share_form() {
        let b = named_graph("bowtie").unwrap();
        let f = canonical_form(&b);
        let mut count = 0;
        for_each_permutation(5, |p| {
            assert_eq!(canonical_form(&b.relabel(p)), f);
            count += 1;
        });
        assert_eq!(count, 120);
    }

    #[test]
    fn automorphisms() {
        assert_eq!(automorphism_count(&Graph::complete(5).unwrap()), 120);
        assert_eq!(automorphism_count(&Graph::cycle(5).unwrap()), 10);
        assert_eq!(automorphism_count(&named_graph("bowtie").unwrap()), 8);
    }

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (1..=6).map(|l| enumerate_graphs(l).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
        assert!(enumerate_graphs(0).is_err());
        assert!(enumerate_graphs(9).is_err());
    }

    #[test]
    fn enumeration_order_is_sorted() {
        let gs = enumerate_graphs(5).unwrap();
        let codes: Vec<u128> = gs.iter().map(|g| canonical_form(g).canon_bits).collect();
        assert!(codes.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(gs[0].edge_count(), 0);
    }

    #[test]
    fn four_vertex_classes_by_brute_force() {
        let mut forms = BTreeSet::new();
        for mask in 0u128..64 {
            forms.insert(canonical_form_reference(&Graph::from_code(4, mask).unwrap()));
        }
        assert_eq!(forms.len(), 11);
    }

    #[test]
    fn tensor_k3_k4() {
        let k = named_graph("K3xK4").unwrap();
        assert_eq!(k.n(), 12);
        assert_eq!(k.is_regular(), Some(6));
        assert_eq!(k.edge_count(), 36);
        let e = tensor_product(&Graph::cycle(5).unwrap(), &Graph::complete(1).unwrap()).unwrap();
        assert_eq!(e.edge_count(), 0);
        assert_eq!(e.n(), 5);
    }

    #[test]
    fn duplication() {
        let k4 = Graph::complete(4).unwrap();
        let d = duplicate_vertices(&k4, &[1]).unwrap();
        assert_eq!(d.degree(4), k4.degree(1));
        assert!(!d.has_edge(1, 4));
        let e = duplicate_vertices(&Graph::empty(3).unwrap(), &[0, 2]).unwrap();
        assert_eq!((e.n(), e.edge_count()), (5, 0));
    }

    #[test]
    fn h_fig2_unique() {
        let c6c = named_graph("C6_complement").unwrap();
        let mut forms = BTreeSet::new();
        for (u, v) in c6c.edges() {
            let common = c6c.row(u) & c6c.row(v);
            if common == 0 {
                forms.insert(canonical_form(&duplicate_vertices(&c6c, &[u, v]).unwrap()));
            }
        }
        assert_eq!(forms.len(), 1);
        let h = named_graph("H_fig2").unwrap();
        assert_eq!(h.n(), 8);
        assert!(forms.contains(&canonical_form(&h)));
    }

    #[test]
    fn named_shapes() {
        let b = named_graph("B").unwrap();
        assert_eq!((b.n(), b.edge_count()), (5, 5));
        let m = named_graph("M").unwrap();
        assert_eq!((m.n(), m.edge_count()), (6, 7));
        let s = named_graph("Schlafli").unwrap();
        assert_eq!((s.n(), s.is_regular()), (27, Some(16)));
        assert_eq!(lines_27_graph().is_regular(), Some(10));
        for name in NAMED_GRAPHS {
            named_graph(name).unwrap();
        }
        assert!(matches!(named_graph("nope"), Err(GraphError::UnknownName(_))));
    }

    #[test]
    fn parse_any_forms() {
        let d = named_graph("D").unwrap();
        assert_eq!(Graph::parse_any("named:D").unwrap(), d);
        assert_eq!(Graph::parse_any(&d.to_graph6()).unwrap(), d);
        assert_eq!(Graph::parse_any(&d.to_edge_list()).unwrap(), d);
    }
}
