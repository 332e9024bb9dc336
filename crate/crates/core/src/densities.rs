//! Homomorphism, injective and induced densities over graphs and step graphons.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{int, pow, rat, Rat};
use crate::graph::{automorphism_count, canonical_form, Graph};

/// Guard on the number of partial maps a brute-force density may visit.
pub const MAP_BUDGET: f64 = 1e9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DensityError {
    #[error("weight matrix must be symmetric with entries in [0,1]")]
    BadWeights,
    #[error("pattern on {pattern} vertices does not fit a host on {host}")]
    SizeMismatch { pattern: usize, host: usize },
    #[error("enumeration would visit about {0} partial maps")]
    Budget(u64),
    #[error("lambda = {0} outside [0,2]")]
    LambdaRange(String),
    #[error("second graph has no edges")]
    EmptyH2,
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("p must lie strictly between 0 and 1")]
    DegenerateP,
    #[error("edge counts must be positive")]
    ZeroEdges,
    #[error("ramsey number {0} smaller than the larger graph")]
    BadRamsey(usize),
    #[error("cycle length {0} outside 3..=12")]
    CycleLength(usize),
}

/// Symmetric `[0,1]` weight matrix: a step graphon on `n` equal parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    w: Vec<Rat>,
}

impl WeightedGraph {
    pub fn new(n: usize, w: Vec<Rat>) -> Result<WeightedGraph, DensityError> {
        if n == 0 || w.len() != n * n {
            return Err(DensityError::BadWeights);
        }
        let one = Rat::one();
        for i in 0..n {
            for j in 0..n {
                let x = &w[i * n + j];
                if x.is_negative() || *x > one || *x != w[j * n + i] {
                    return Err(DensityError::BadWeights);
                }
            }
        }
        Ok(WeightedGraph { n, w })
    }

    pub fn from_graph(g: &Graph) -> WeightedGraph {
        let n = g.n();
        let w = (0..n * n).map(|k| int(g.has_edge(k / n, k % n) as i64)).collect();
        WeightedGraph { n, w }
    }

    pub fn constant(n: usize, p: Rat) -> Result<WeightedGraph, DensityError> {
        WeightedGraph::new(n, vec![p; n * n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.w[i * self.n + j]
    }

    pub fn weights(&self) -> &[Rat] {
        &self.w
    }

    /// Entrywise `1 - w`, diagonal included.
    pub fn complement_w(&self) -> WeightedGraph {
        let one = Rat::one();
        WeightedGraph { n: self.n, w: self.w.iter().map(|x| &one - x).collect() }
    }

    /// Bitset rows (bit `j` of row `i` set iff `w(i,j) = 1`) when every weight is 0 or 1.
    pub fn as_01_rows(&self) -> Option<Vec<u32>> {
        if self.n > 32 {
            return None;
        }
        let mut rows = vec![0u32; self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                let x = self.get(i, j);
                if x.is_one() {
                    rows[i] |= 1 << j;
                } else if !x.is_zero() {
                    return None;
                }
            }
        }
        Some(rows)
    }

    fn common_denominator(&self) -> BigInt {
        self.w.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    /// Exact weight matrix as `f64` (for display and float cross-checks).
    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| (0..self.n).map(|j| crate::exact::to_f64(self.get(i, j))).collect()).collect()
    }
}

/// A step graphon or a constant graphon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Kernel {
    Step(WeightedGraph),
    Const(Rat),
}

impl Kernel {
    pub fn from_graph(g: &Graph) -> Kernel {
        Kernel::Step(WeightedGraph::from_graph(g))
    }

    pub fn constant(p: Rat) -> Result<Kernel, DensityError> {
        if p.is_negative() || p > Rat::one() {
            return Err(DensityError::BadWeights);
        }
        Ok(Kernel::Const(p))
    }

    pub fn complement(&self) -> Kernel {
        match self {
            Kernel::Step(w) => Kernel::Step(w.complement_w()),
            Kernel::Const(p) => Kernel::Const(Rat::one() - p),
        }
    }
}

// Backtracking plan: the vertices of a minimum vertex cover of the constraint graph are
// placed one by one; the remaining independent vertices are summed in closed form.
struct Plan {
    order: Vec<usize>,
    back: Vec<Vec<(usize, usize)>>,
    leaves: Vec<Vec<(usize, usize)>>,
}

fn plan(v: usize, cons: &[(usize, usize, usize)]) -> Plan {
    let mut cover = 0u32;
    'outer: for size in 0..=v {
        for mask in 0u32..1 << v {
            if mask.count_ones() as usize == size
                && cons.iter().all(|&(a, b, _)| mask >> a & 1 == 1 || mask >> b & 1 == 1)
            {
                cover = mask;
                break 'outer;
            }
        }
    }
    let linked = |a: usize, b: usize| cons.iter().any(|&(x, y, _)| (x, y) == (a, b) || (x, y) == (b, a));
    let mut order: Vec<usize> = Vec::new();
    let mut left: Vec<usize> = (0..v).filter(|&u| cover >> u & 1 == 1).collect();
    while !left.is_empty() {
        let score = |u: usize| order.iter().filter(|&&o| linked(o, u)).count();
        let (k, _) = left
            .iter()
            .enumerate()
            .max_by_key(|&(k, &u)| (score(u), usize::MAX - k))
            .expect("non-empty");
        order.push(left.remove(k));
    }
    let pos = |u: usize| order.iter().position(|&o| o == u);
    let mut back = vec![Vec::new(); order.len()];
    let mut leaves: Vec<Vec<(usize, usize)>> = Vec::new();
    for u in (0..v).filter(|&u| cover >> u & 1 == 0) {
        let mut l = Vec::new();
        for &(a, b, m) in cons {
            if a == u {
                l.push((pos(b).expect("cover"), m));
            } else if b == u {
                l.push((pos(a).expect("cover"), m));
            }
        }
        leaves.push(l);
    }
    for &(a, b, m) in cons {
        if let (Some(pa), Some(pb)) = (pos(a), pos(b)) {
            let (early, late) = if pa < pb { (pa, pb) } else { (pb, pa) };
            back[late].push((early, m));
        }
    }
    Plan { order, back, leaves }
}

fn check_budget(n: usize, p: &Plan) -> Result<(), DensityError> {
    let est = (n as f64).powi(p.order.len() as i32);
    if est > MAP_BUDGET {
        return Err(DensityError::Budget(est.min(u64::MAX as f64) as u64));
    }
    Ok(())
}

fn count_01(p: &Plan, mats: &[Vec<u32>], n: usize) -> u128 {
    fn rec(p: &Plan, mats: &[Vec<u32>], full: u32, depth: usize, phi: &mut Vec<usize>) -> u128 {
        if depth == p.order.len() {
            let mut prod = 1u128;
            for leaf in &p.leaves {
                let mut m = full;
                for &(pos, k) in leaf {
                    m &= mats[k][phi[pos]];
                }
                if m == 0 {
                    return 0;
                }
                prod *= m.count_ones() as u128;
            }
            return prod;
        }
        let mut cand = full;
        for &(pos, k) in &p.back[depth] {
            cand &= mats[k][phi[pos]];
        }
        let mut total = 0u128;
        while cand != 0 {
            let x = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            phi.push(x);
            total += rec(p, mats, full, depth + 1, phi);
            phi.pop();
        }
        total
    }
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    rec(p, mats, full, 0, &mut Vec::with_capacity(p.order.len()))
}

fn sum_big(p: &Plan, mats: &[Vec<BigInt>], n: usize) -> BigInt {
    fn rec(p: &Plan, mats: &[Vec<BigInt>], n: usize, depth: usize, phi: &mut Vec<usize>) -> BigInt {
        if depth == p.order.len() {
            let mut prod = BigInt::one();
            for leaf in &p.leaves {
                let mut s = BigInt::zero();
                for x in 0..n {
                    let mut t = BigInt::one();
                    for &(pos, k) in leaf {
                        t *= &mats[k][phi[pos] * n + x];
                        if t.is_zero() {
                            break;
                        }
                    }
                    s += t;
                }
                if s.is_zero() {
                    return s;
                }
                prod *= s;
            }
            return prod;
        }
        let mut total = BigInt::zero();
        'cand: for x in 0..n {
            let mut f = BigInt::one();
            for &(pos, k) in &p.back[depth] {
                let w = &mats[k][phi[pos] * n + x];
                if w.is_zero() {
                    continue 'cand;
                }
                f *= w;
            }
            phi.push(x);
            let sub = rec(p, mats, n, depth + 1, phi);
            phi.pop();
            if !sub.is_zero() {
                total += f * sub;
            }
        }
        total
    }
    rec(p, mats, n, 0, &mut Vec::with_capacity(p.order.len()))
}

/// Average over all maps `[v] -> [n]` of the product, over constraints `(a, b, m)`, of
/// weight `m` (0: `w`, 1: `1 - w`) at `(phi(a), phi(b))`.
fn pattern_density(v: usize, cons: &[(usize, usize, usize)], w: &WeightedGraph) -> Result<Rat, DensityError> {
    let n = w.n();
    let p = plan(v, cons);
    check_budget(n, &p)?;
    let denom_maps = num_traits::pow(BigInt::from(n), v);
    if let Some(rows) = w.as_01_rows() {
        let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        let comp: Vec<u32> = rows.iter().map(|r| !r & full).collect();
        let c = count_01(&p, &[rows, comp], n);
        return Ok(Rat::new(BigInt::from(c), denom_maps));
    }
    let d = w.common_denominator();
    let num: Vec<BigInt> = w.weights().iter().map(|x| (x * Rat::from_integer(d.clone())).to_integer()).collect();
    let comp: Vec<BigInt> = num.iter().map(|x| &d - x).collect();
    let s = sum_big(&p, &[num, comp], n);
    Ok(Rat::new(s, denom_maps * num_traits::pow(d, cons.len())))
}

/// Number of homomorphisms from `h` into the 0/1 matrix given by bitset `rows`
/// (a set diagonal bit allows both ends on one vertex).
pub fn hom_count_01(h: &Graph, rows: &[u32]) -> u128 {
    let cons: Vec<_> = h.edges().into_iter().map(|(a, b)| (a, b, 0)).collect();
    count_01(&plan(h.n(), &cons), &[rows.to_vec()], rows.len())
}

pub fn hom_density(h: &Graph, w: &WeightedGraph) -> Result<Rat, DensityError> {
    let cons: Vec<_> = h.edges().into_iter().map(|(a, b)| (a, b, 0)).collect();
    pattern_density(h.n(), &cons, w)
}

pub fn hom_density_kernel(h: &Graph, k: &Kernel) -> Result<Rat, DensityError> {
    match k {
        Kernel::Step(w) => hom_density(h, w),
        Kernel::Const(p) => Ok(pow(p, h.edge_count())),
    }
}

/// Fraction of injective maps `V(h) -> V(j)` that are homomorphisms.
pub fn t_inj(h: &Graph, j: &Graph) -> Result<Rat, DensityError> {
    if h.n() > j.n() {
        return Err(DensityError::SizeMismatch { pattern: h.n(), host: j.n() });
    }
    fn rec(h: &Graph, j: &Graph, phi: &mut Vec<usize>, used: u32) -> u64 {
        let u = phi.len();
        if u == h.n() {
            return 1;
        }
        let mut total = 0;
        for x in 0..j.n() {
            if used >> x & 1 == 1 {
                continue;
            }
            if (0..u).all(|a| !h.has_edge(a, u) || j.has_edge(phi[a], x)) {
                phi.push(x);
                total += rec(h, j, phi, used | 1 << x);
                phi.pop();
            }
        }
        total
    }
    let hits = rec(h, j, &mut Vec::new(), 0);
    let maps: u64 = (0..h.n() as u64).map(|i| j.n() as u64 - i).product();
    Ok(rat(hits as i64, maps as i64))
}

/// Probability that a uniform `v(f)`-subset of `V(j)` induces a copy of `f`.
pub fn induced_density(f: &Graph, j: &Graph) -> Result<Rat, DensityError> {
    let k = f.n();
    if k > j.n() {
        return Err(DensityError::SizeMismatch { pattern: k, host: j.n() });
    }
    let target = canonical_form(f);
    let e = f.edge_count();
    let mut hits = 0i64;
    let mut total = 0i64;
    for_each_subset(j.n(), k, |s| {
        total += 1;
        let g = j.induced(s);
        if g.edge_count() == e && canonical_form(&g) == target {
            hits += 1;
        }
    });
    Ok(rat(hits, total))
}

pub(crate) fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(n, k, x + 1, cur, f);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut Vec::with_capacity(k), &mut f);
}

/// Induced homomorphism density: every pair of `j` is constrained (edge `w`, non-edge `1 - w`).
pub fn t_ind_weighted(j: &Graph, w: &WeightedGraph) -> Result<Rat, DensityError> {
    let mut cons = Vec::new();
    for a in 0..j.n() {
        for b in a + 1..j.n() {
            cons.push((a, b, if j.has_edge(a, b) { 0 } else { 1 }));
        }
    }
    pattern_density(j.n(), &cons, w)
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `d(J, W) = v(J)!/aut(J) * t_ind(J, W)`.
pub fn d_weighted(j: &Graph, w: &WeightedGraph) -> Result<Rat, DensityError> {
    let t = t_ind_weighted(j, w)?;
    let f = Rat::new(factorial(j.n()), BigInt::from(automorphism_count(j)));
    Ok(t * f)
}

/// `trace(A^k) / n^k`.
pub fn cycle_density_trace(k: usize, g: &Graph) -> Result<Rat, DensityError> {
    if !(3..=12).contains(&k) {
        return Err(DensityError::CycleLength(k));
    }
    let n = g.n();
    let a: Vec<i128> = (0..n * n).map(|x| g.has_edge(x / n, x % n) as i128).collect();
    let mut p = a.clone();
    for _ in 1..k {
        let mut q = vec![0i128; n * n];
        for i in 0..n {
            for l in 0..n {
                let x = p[i * n + l];
                if x != 0 {
                    for j in 0..n {
                        q[i * n + j] += x * a[l * n + j];
                    }
                }
            }
        }
        p = q;
    }
    let tr: i128 = (0..n).map(|i| p[i * n + i]).sum();
    Ok(Rat::new(BigInt::from(tr), num_traits::pow(BigInt::from(n), k)))
}

/// Both sides of Goodman's identity:
/// `t(K3,W) + t(K3,1-W)` and `1 - 3 t(K2,W) + 3 t(P3,W)`.
pub fn goodman_check(w: &WeightedGraph) -> (Rat, Rat) {
    let k2 = Graph::complete(2).expect("K2");
    let k3 = Graph::complete(3).expect("K3");
    let p3 = Graph::path(3).expect("P3");
    let c = w.complement_w();
    let t = |h: &Graph, w: &WeightedGraph| hom_density(h, w).expect("three-vertex pattern fits the budget");
    let lhs = t(&k3, w) + t(&k3, &c);
    let rhs = Rat::one() - int(3) * t(&k2, w) + int(3) * t(&p3, w);
    (lhs, rhs)
}

fn check_lambda(lambda: &Rat) -> Result<(), DensityError> {
    if lambda.is_negative() || *lambda > int(2) {
        return Err(DensityError::LambdaRange(lambda.to_string()));
    }
    Ok(())
}

/// `λ t(H1, W) + (2 - λ) t(H2, 1 - W)`; the complement of a step graphon has diagonal 1.
pub fn objective(h1: &Graph, h2: &Graph, lambda: &Rat, w: &Kernel) -> Result<Rat, DensityError> {
    if h2.edge_count() == 0 {
        return Err(DensityError::EmptyH2);
    }
    objective_allow_empty(h1, h2, lambda, w)
}

/// As [`objective`] but accepts an edgeless `h2`.
pub fn objective_allow_empty(h1: &Graph, h2: &Graph, lambda: &Rat, w: &Kernel) -> Result<Rat, DensityError> {
    check_lambda(lambda)?;
    let a = hom_density_kernel(h1, w)?;
    let b = hom_density_kernel(h2, &w.complement())?;
    Ok(lambda * a + (int(2) - lambda) * b)
}

/// `min{λ, 2-λ} (r - max(v1,v2))! / r!`.
pub fn trivial_lower_bound(lambda: &Rat, ramsey: usize, v1: usize, v2: usize) -> Result<Rat, DensityError> {
    check_lambda(lambda)?;
    let m = v1.max(v2);
    if ramsey < m {
        return Err(DensityError::BadRamsey(ramsey));
    }
    let other = int(2) - lambda;
    let lo = if *lambda < other { lambda.clone() } else { other };
    Ok(lo * Rat::new(factorial(ramsey - m), factorial(ramsey)))
}

/// `2 e2 (1-p)^(e2-1) / (e1 p^(e1-1) + e2 (1-p)^(e2-1))`.
pub fn compute_lambda0(e1: usize, e2: usize, p: &Rat) -> Result<Rat, DensityError> {
    if e1 == 0 || e2 == 0 {
        return Err(DensityError::ZeroEdges);
    }
    if !p.is_positive() || *p >= Rat::one() {
        return Err(DensityError::DegenerateP);
    }
    let q = Rat::one() - p;
    let a = int(e1 as i64) * pow(p, e1 - 1);
    let b = int(e2 as i64) * pow(&q, e2 - 1);
    Ok(int(2) * &b / (a + b))
}

/// Interval of width at most `precision` containing the root of `p^e1 = (1-p)^e2` in (0,1).
pub fn balance_p(e1: usize, e2: usize, precision: &Rat) -> Result<(Rat, Rat), DensityError> {
    if e1 == 0 || e2 == 0 {
        return Err(DensityError::ZeroEdges);
    }
    if e1 == e2 {
        return Ok((rat(1, 2), rat(1, 2)));
    }
    let f = |p: &Rat| pow(p, e1) - pow(&(Rat::one() - p), e2);
    let (mut lo, mut hi) = (Rat::zero(), Rat::one());
    while &hi - &lo > *precision {
        let mid = (&lo + &hi) / int(2);
        let v = f(&mid);
        if v.is_zero() {
            return Ok((mid.clone(), mid));
        }
        if v.is_negative() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_graphs, named_graph};

    fn g(name: &str) -> Graph {
        named_graph(name).unwrap()
    }

    #[test]
    fn from_graph_k2() {
        let w = WeightedGraph::from_graph(&g("K2"));
        assert_eq!(w.weights(), &[int(0), int(1), int(1), int(0)]);
    }

    #[test]
    fn triangle_in_triangle() {
        let w = WeightedGraph::from_graph(&g("K3"));
        assert_eq!(hom_density(&g("K3"), &w).unwrap(), rat(6, 27));
    }

    #[test]
    fn c6_complement_values() {
        let w = WeightedGraph::from_graph(&g("C6_complement"));
        assert_eq!(hom_density(&g("K3"), &w).unwrap(), rat(1, 18));
        assert_eq!(hom_density(&g("C5"), &w.complement_w()).unwrap(), rat(17, 432));
        assert_eq!(cycle_density_trace(3, &g("C6_complement")).unwrap(), rat(1, 18));
    }

    #[test]
    fn constant_kernel_power() {
        let p = rat(2, 7);
        let w = WeightedGraph::constant(3, p.clone()).unwrap();
        let h = g("M");
        assert_eq!(hom_density(&h, &w).unwrap(), pow(&p, 7));
        assert_eq!(hom_density_kernel(&h, &Kernel::Const(p.clone())).unwrap(), pow(&p, 7));
    }

    #[test]
    fn complement_w_involution_and_diagonal() {
        let w = WeightedGraph::from_graph(&g("C5"));
        let c = w.complement_w();
        assert_eq!(*c.get(2, 2), int(1));
        assert_eq!(c.complement_w(), w);
        assert_eq!(Kernel::Const(int(1)).complement(), Kernel::Const(int(0)));
    }

    #[test]
    fn injective_examples() {
        assert_eq!(t_inj(&g("K3"), &g("K5")).unwrap(), int(1));
        let k5c = g("K5").complement();
        assert_eq!(t_inj(&g("C5"), &k5c).unwrap(), int(0));
        assert_eq!(t_inj(&g("K3"), &g("K_1_4")).unwrap(), int(0));
        assert!(t_inj(&g("K5"), &g("K3")).is_err());
    }

    #[test]
    fn induced_examples() {
        assert_eq!(induced_density(&g("K2"), &g("K5")).unwrap(), int(1));
        assert_eq!(induced_density(&g("K3"), &g("C5")).unwrap(), int(0));
        // Each of the five vertices of C5 is the middle of one induced path.
        assert_eq!(induced_density(&g("P3"), &g("C5")).unwrap(), rat(5, 10));
    }

    #[test]
    fn k1_induced_is_one() {
        let w = WeightedGraph::new(2, vec![rat(1, 3), rat(1, 2), rat(1, 2), int(0)]).unwrap();
        assert_eq!(t_ind_weighted(&Graph::empty(1).unwrap(), &w).unwrap(), int(1));
    }

    #[test]
    fn tensor_goodman_values() {
        let w = WeightedGraph::from_graph(&g("K3xK4"));
        let c = w.complement_w();
        assert_eq!(hom_density(&g("K2"), &w).unwrap(), rat(1, 2));
        assert_eq!(hom_density(&g("K2"), &c).unwrap(), rat(1, 2));
        assert_eq!(hom_density(&g("P3"), &w).unwrap(), rat(1, 4));
        assert_eq!(hom_density(&g("P3"), &c).unwrap(), rat(1, 4));
        let (l, r) = goodman_check(&w);
        assert_eq!((l.clone(), r), (rat(1, 4), rat(1, 4)));
        assert_eq!(l, rat(1, 12) + rat(1, 6));
        let (l, r) = goodman_check(&WeightedGraph::constant(1, rat(1, 2)).unwrap());
        assert_eq!((l, r), (rat(1, 4), rat(1, 4)));
    }

    #[test]
    fn objective_examples() {
        let lam = rat(10, 17);
        let c6c = Kernel::from_graph(&g("C6_complement"));
        assert_eq!(objective(&g("K3"), &g("C5"), &lam, &c6c).unwrap(), rat(3, 34));
        let k2 = Kernel::from_graph(&g("K2"));
        assert_eq!(objective(&g("K3"), &g("C5"), &lam, &k2).unwrap(), rat(3, 34));
        assert!(objective(&g("K3"), &g("C5"), &int(3), &k2).is_err());
        let e = Graph::empty(3).unwrap();
        assert_eq!(objective(&g("K3"), &e, &int(1), &k2), Err(DensityError::EmptyH2));
        assert!(objective_allow_empty(&g("K3"), &e, &int(1), &k2).is_ok());
    }

    #[test]
    fn trivial_bounds() {
        assert_eq!(trivial_lower_bound(&int(1), 6, 3, 3).unwrap(), rat(1, 120));
        assert_eq!(trivial_lower_bound(&int(0), 6, 3, 3).unwrap(), int(0));
        assert_eq!(trivial_lower_bound(&int(1), 9, 3, 4).unwrap(), rat(1, 3024));
        assert!(trivial_lower_bound(&int(1), 2, 3, 3).is_err());
    }

    #[test]
    fn lambda0_cases() {
        assert_eq!(compute_lambda0(4, 4, &rat(1, 2)).unwrap(), int(1));
        assert_eq!(compute_lambda0(5, 5, &rat(1, 2)).unwrap(), int(1));
        assert!(compute_lambda0(5, 5, &int(1)).is_err());
        // e1=3, e2=5 at the balancing p: compare against the float formula.
        let (lo, hi) = balance_p(3, 5, &rat(1, 1 << 40)).unwrap();
        let p = crate::exact::to_f64(&((lo + hi) / int(2)));
        let l0 = crate::exact::to_f64(&compute_lambda0(3, 5, &rat((p * 1e12) as i64, 1_000_000_000_000)).unwrap());
        let q = 1.0 - p;
        let direct = 2.0 * 5.0 * q.powi(4) / (3.0 * p * p + 5.0 * q.powi(4));
        assert!((l0 - direct).abs() < 1e-9);
        assert!((p.powi(3) - q.powi(5)).abs() < 1e-10);
    }

    #[test]
    fn balance_cases() {
        assert_eq!(balance_p(5, 5, &rat(1, 100)).unwrap(), (rat(1, 2), rat(1, 2)));
        let (lo, hi) = balance_p(1, 2, &rat(1, 1_000_000_000)).unwrap();
        let root = (3.0 - 5f64.sqrt()) / 2.0;
        assert!(&hi - &lo <= rat(1, 1_000_000_000));
        assert!(crate::exact::to_f64(&lo) <= root + 1e-12 && root <= crate::exact::to_f64(&hi) + 1e-12);
        let half = rat(1, 2);
        assert_eq!(int(2) * pow(&half, 5), rat(1, 16));
    }

    #[test]
    fn cycle_trace_matches_brute_force_small() {
        for l in 3..=5 {
            for j in enumerate_graphs(l).unwrap() {
                for k in 3..=5 {
                    let h = Graph::cycle(k).unwrap();
                    let w = WeightedGraph::from_graph(&j);
                    assert_eq!(cycle_density_trace(k, &j).unwrap(), hom_density(&h, &w).unwrap());
                }
            }
        }
    }

    #[test]
    fn hom_count_matches_density() {
        let s = g("K3xK4");
        let hits = hom_count_01(&g("D"), s.rows());
        assert_eq!(Rat::new(BigInt::from(hits), BigInt::from(12u32.pow(4))), rat(1, 72));
    }

    #[test]
    fn budget_guard() {
        let big = WeightedGraph::constant(27, rat(1, 2)).unwrap();
        let h = Graph::empty(8).unwrap();
        let h = Graph::from_edge_list(8, &(0..8).flat_map(|a| (a + 1..8).map(move |b| (a, b))).collect::<Vec<_>>())
            .unwrap_or(h);
        assert!(matches!(hom_density(&h, &big), Err(DensityError::Budget(_))));
    }

    #[test]
    fn bad_weights_rejected() {
        assert!(WeightedGraph::new(2, vec![int(0), int(2), int(2), int(0)]).is_err());
        assert!(WeightedGraph::new(2, vec![int(0), rat(1, 2), rat(1, 3), int(0)]).is_err());
    }
}
