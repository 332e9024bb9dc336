//! Lower-bound flag certificates, α-certificates, and the (p,1-p)-common check.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::densities::{hom_density_kernel, t_inj, DensityError, Kernel, WeightedGraph};
use crate::exact::{fmt_rat, int, parse_rat, pow, to_f64, ExactError, PsdVerdict, Rat, RatMatrix};
use crate::flags::{a_counts, enumerate_flags, Flag, FlagError};
use crate::graph::{enumerate_graphs, Graph, GraphError};

pub const FORMAT_VERSION: u32 = 1;

pub const K3_C5_LOWER: &str = include_str!("../../../data/k3_c5.json");
pub const C5_B_LOWER: &str = include_str!("../../../data/c5_b.json");
pub const D_M_LOWER: &str = include_str!("../../../data/d_m.json");
pub const K3_C5_ALPHA: &str = include_str!("../../../data/k3_c5_alpha.json");
pub const C5_B_ALPHA: &str = include_str!("../../../data/c5_b_alpha.json");
pub const D_M_ALPHA: &str = include_str!("../../../data/d_m_alpha.json");

#[derive(Debug, Error)]
pub enum CertError {
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Flag(#[from] FlagError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Density(#[from] DensityError),
    #[error("no flag ordering satisfies the certificate")]
    NoOrdering,
}

fn malformed(s: impl Into<String>) -> CertError {
    CertError::Malformed(s.into())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagBlock {
    pub r: usize,
    pub k: usize,
    pub root_graph: Graph,
    pub flags: Vec<Flag>,
    /// Unscaled entries; the block's matrix is `scale * matrix`.
    pub matrix: RatMatrix,
    pub scale: Rat,
}

impl FlagBlock {
    pub fn scaled_matrix(&self) -> RatMatrix {
        self.matrix.scaled(&self.scale)
    }

    fn validate(&self, ell: usize) -> Result<(), CertError> {
        if self.flags.len() != self.matrix.dim() {
            return Err(malformed(format!(
                "{} flags but a {}x{} matrix",
                self.flags.len(),
                self.matrix.dim(),
                self.matrix.dim()
            )));
        }
        if self.root_graph.n() != self.r || 2 * self.k < self.r || 2 * self.k - self.r > ell {
            return Err(malformed(format!("block shape (r={}, k={}) incompatible with ell={ell}", self.r, self.k)));
        }
        let mut keys = std::collections::BTreeSet::new();
        for f in &self.flags {
            if f.k() != self.k || f.r() != self.r || f.root_graph() != self.root_graph {
                return Err(malformed(format!("flag {f} is not compatible with the block root")));
            }
            if !keys.insert(f.key()) {
                return Err(malformed(format!("flag {f} listed twice")));
            }
        }
        Ok(())
    }

    /// `Σ_ij scale·M(i,j)·a(F_i,F_j;J)`.
    pub fn contribution(&self, j: &Graph) -> Result<Rat, CertError> {
        let (counts, total) = a_counts(&self.flags, j)?;
        let t = self.flags.len();
        let mut acc = Rat::zero();
        for a in 0..t {
            for b in 0..t {
                let c = counts[a * t + b];
                if c != 0 {
                    acc += self.matrix.get(a, b) * int(c as i64);
                }
            }
        }
        Ok(acc * &self.scale / Rat::from_integer(BigInt::from(total)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundCertificate {
    pub h1: Graph,
    pub h2: Graph,
    pub lambda: Rat,
    pub alpha: Rat,
    pub ell: usize,
    pub blocks: Vec<FlagBlock>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaCertificate {
    pub h1: Graph,
    pub h2: Graph,
    pub lambda: Rat,
    pub alpha: Rat,
    pub w1: Kernel,
    pub w2: Kernel,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Lower(LowerBoundCertificate),
    Alpha(AlphaCertificate),
}

// ---- file format ----

#[derive(Debug, Serialize, Deserialize)]
struct BlockFile {
    r: usize,
    k: usize,
    root: String,
    flags: Vec<String>,
    scale: String,
    matrix: Vec<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum KernelFile {
    Const {
        #[serde(rename = "const")]
        p: String,
    },
    Step {
        n: usize,
        weights: Vec<String>,
    },
}

#[derive(Debug, Serialize, Deserialize)]
struct CertFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    version: Option<u32>,
    kind: String,
    h1: String,
    h2: String,
    lambda: String,
    alpha: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ell: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    blocks: Option<Vec<BlockFile>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    w1: Option<KernelFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    w2: Option<KernelFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

/// A flag given either as `k r; edges` or as an edge list `k; edges` with the block's `r`.
fn parse_block_flag(s: &str, r: usize) -> Result<Flag, CertError> {
    let head = s.split(';').next().unwrap_or("");
    if head.split_whitespace().count() == 2 {
        return Ok(Flag::parse(s)?);
    }
    Ok(Flag::new(Graph::parse_edge_list(s)?, r)?)
}

fn kernel_from_file(k: &KernelFile) -> Result<Kernel, CertError> {
    match k {
        KernelFile::Const { p } => Ok(Kernel::constant(parse_rat(p)?)?),
        KernelFile::Step { n, weights } => {
            let w = weights.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>, _>>()?;
            Ok(Kernel::Step(WeightedGraph::new(*n, w)?))
        }
    }
}

fn kernel_to_file(k: &Kernel) -> KernelFile {
    match k {
        Kernel::Const(p) => KernelFile::Const { p: fmt_rat(p) },
        Kernel::Step(w) => KernelFile::Step { n: w.n(), weights: w.weights().iter().map(fmt_rat).collect() },
    }
}

/// Parses a weighted graph given as `{ "n": .., "weights": [..] }` or `{ "const": .. }`.
pub fn parse_kernel_json(s: &str) -> Result<Kernel, CertError> {
    kernel_from_file(&serde_json::from_str(s)?)
}

pub fn parse_certificate(json: &str) -> Result<Certificate, CertError> {
    let f: CertFile = serde_json::from_str(json)?;
    if let Some(v) = f.version {
        if v != FORMAT_VERSION {
            return Err(malformed(format!("unsupported version {v}")));
        }
    }
    let h1 = Graph::parse_any(&f.h1)?;
    let h2 = Graph::parse_any(&f.h2)?;
    let lambda = parse_rat(&f.lambda)?;
    let alpha = parse_rat(&f.alpha)?;
    match f.kind.as_str() {
        "lower" => {
            let ell = f.ell.ok_or_else(|| malformed("missing `ell`"))?;
            let mut blocks = Vec::new();
            for b in f.blocks.ok_or_else(|| malformed("missing `blocks`"))? {
                let root_graph = Graph::parse_any(&b.root)?;
                let flags = b.flags.iter().map(|s| parse_block_flag(s, b.r)).collect::<Result<Vec<_>, _>>()?;
                let rows = b
                    .matrix
                    .iter()
                    .map(|r| r.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                blocks.push(FlagBlock {
                    r: b.r,
                    k: b.k,
                    root_graph,
                    flags,
                    matrix: RatMatrix::from_rows(rows)?,
                    scale: parse_rat(&b.scale)?,
                });
            }
            Ok(Certificate::Lower(LowerBoundCertificate { h1, h2, lambda, alpha, ell, blocks }))
        }
        "alpha" => {
            let w1 = kernel_from_file(f.w1.as_ref().ok_or_else(|| malformed("missing `w1`"))?)?;
            let w2 = kernel_from_file(f.w2.as_ref().ok_or_else(|| malformed("missing `w2`"))?)?;
            Ok(Certificate::Alpha(AlphaCertificate { h1, h2, lambda, alpha, w1, w2 }))
        }
        other => Err(malformed(format!("unknown kind `{other}`"))),
    }
}

pub fn parse_lower(json: &str) -> Result<LowerBoundCertificate, CertError> {
    match parse_certificate(json)? {
        Certificate::Lower(c) => Ok(c),
        Certificate::Alpha(_) => Err(malformed("expected a lower-bound certificate")),
    }
}

pub fn parse_alpha(json: &str) -> Result<AlphaCertificate, CertError> {
    match parse_certificate(json)? {
        Certificate::Alpha(c) => Ok(c),
        Certificate::Lower(_) => Err(malformed("expected an alpha certificate")),
    }
}

pub fn certificate_to_json(c: &Certificate) -> String {
    let f = match c {
        Certificate::Lower(c) => CertFile {
            version: Some(FORMAT_VERSION),
            kind: "lower".into(),
            h1: c.h1.to_graph6(),
            h2: c.h2.to_graph6(),
            lambda: fmt_rat(&c.lambda),
            alpha: fmt_rat(&c.alpha),
            ell: Some(c.ell),
            blocks: Some(
                c.blocks
                    .iter()
                    .map(|b| BlockFile {
                        r: b.r,
                        k: b.k,
                        root: b.root_graph.to_graph6(),
                        flags: b.flags.iter().map(|f| f.graph().to_edge_list()).collect(),
                        scale: fmt_rat(&b.scale),
                        matrix: b.matrix.rows().iter().map(|r| r.iter().map(fmt_rat).collect()).collect(),
                    })
                    .collect(),
            ),
            w1: None,
            w2: None,
            note: None,
        },
        Certificate::Alpha(c) => CertFile {
            version: Some(FORMAT_VERSION),
            kind: "alpha".into(),
            h1: c.h1.to_graph6(),
            h2: c.h2.to_graph6(),
            lambda: fmt_rat(&c.lambda),
            alpha: fmt_rat(&c.alpha),
            ell: None,
            blocks: None,
            w1: Some(kernel_to_file(&c.w1)),
            w2: Some(kernel_to_file(&c.w2)),
            note: None,
        },
    };
    serde_json::to_string_pretty(&f).expect("certificate serializes")
}

// ---- verification ----

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JValue {
    pub index: usize,
    pub graph: Graph,
    pub value: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub psd: Vec<PsdVerdict>,
    /// One entry per `ℓ`-vertex graph, in enumeration order.
    pub values: Vec<JValue>,
    pub min: Rat,
    /// Indices of graphs attaining the minimum.
    pub tight: Vec<usize>,
    pub alpha: Rat,
    pub verdict: bool,
}

impl VerificationReport {
    pub fn value_at(&self, j: &Graph) -> Option<&Rat> {
        let target = crate::graph::canonical_form(j);
        self.values.iter().find(|v| crate::graph::canonical_form(&v.graph) == target).map(|v| &v.value)
    }

    pub fn all_psd(&self) -> bool {
        self.psd.iter().all(PsdVerdict::is_psd)
    }
}

/// `λ t_inj(H1, J) + (2-λ) t_inj(H2, J̄)`.
pub fn base_value(h1: &Graph, h2: &Graph, lambda: &Rat, j: &Graph) -> Result<Rat, CertError> {
    let a = t_inj(h1, j)?;
    let b = t_inj(h2, &j.complement())?;
    Ok(lambda * a + (int(2) - lambda) * b)
}

fn validate_lower(cert: &LowerBoundCertificate) -> Result<(), CertError> {
    if cert.lambda.is_negative() || cert.lambda > int(2) {
        return Err(malformed("lambda outside [0,2]"));
    }
    if cert.ell < cert.h1.n().max(cert.h2.n()) {
        return Err(malformed("ell smaller than the target graphs"));
    }
    for b in &cert.blocks {
        b.validate(cert.ell)?;
    }
    Ok(())
}

/// Checks every block matrix for exact PSD and every `ℓ`-vertex graph for value `≥ α`.
pub fn verify_lower(cert: &LowerBoundCertificate) -> Result<VerificationReport, CertError> {
    validate_lower(cert)?;
    let js = enumerate_graphs(cert.ell)?;
    let psd = crate::par::map(&cert.blocks, |b| crate::exact::is_psd(&b.scaled_matrix()));
    let indexed: Vec<(usize, Graph)> = js.into_iter().enumerate().collect();
    let values = crate::par::map(&indexed, |(i, j)| -> Result<JValue, CertError> {
        let mut v = base_value(&cert.h1, &cert.h2, &cert.lambda, j)?;
        for b in &cert.blocks {
            v -= b.contribution(j)?;
        }
        Ok(JValue { index: *i, graph: j.clone(), value: v })
    });
    let values = values.into_iter().collect::<Result<Vec<_>, _>>()?;
    let min = values.iter().map(|v| v.value.clone()).min().expect("at least one graph");
    let tight = values.iter().filter(|v| v.value == min).map(|v| v.index).collect();
    let verdict = psd.iter().all(PsdVerdict::is_psd) && min >= cert.alpha;
    Ok(VerificationReport { psd, values, min, tight, alpha: cert.alpha.clone(), verdict })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaReport {
    pub t1_w1: Rat,
    pub t2_w1: Rat,
    pub t1_w2: Rat,
    pub t2_w2: Rat,
    pub objective_w1: Rat,
    pub objective_w2: Rat,
    /// The four defining conditions, in order.
    pub conditions: [bool; 4],
    pub verdict: bool,
}

pub fn verify_alpha(cert: &AlphaCertificate) -> Result<AlphaReport, CertError> {
    let lam = &cert.lambda;
    if lam.is_negative() || *lam > int(2) {
        return Err(malformed("lambda outside [0,2]"));
    }
    let t1_w1 = hom_density_kernel(&cert.h1, &cert.w1)?;
    let t2_w1 = hom_density_kernel(&cert.h2, &cert.w1.complement())?;
    let t1_w2 = hom_density_kernel(&cert.h1, &cert.w2)?;
    let t2_w2 = hom_density_kernel(&cert.h2, &cert.w2.complement())?;
    let mu = int(2) - lam;
    let objective_w1 = lam * &t1_w1 + &mu * &t2_w1;
    let objective_w2 = lam * &t1_w2 + &mu * &t2_w2;
    let conditions = [
        objective_w1 <= cert.alpha,
        objective_w2 <= cert.alpha,
        t1_w1 >= t2_w1,
        t1_w2 <= t2_w2,
    ];
    let verdict = conditions.iter().all(|&c| c);
    Ok(AlphaReport { t1_w1, t2_w1, t1_w2, t2_w2, objective_w1, objective_w2, conditions, verdict })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommonCheck {
    pub lhs: Rat,
    pub rhs: Rat,
    pub holds: bool,
}

/// `t(H1,W)/(e1 p^(e1-1)) + t(H2,1-W)/(e2 (1-p)^(e2-1))` against `p/e1 + (1-p)/e2`.
pub fn check_p_common(h1: &Graph, h2: &Graph, p: &Rat, w: &Kernel) -> Result<CommonCheck, CertError> {
    let (e1, e2) = (h1.edge_count(), h2.edge_count());
    if e1 == 0 || e2 == 0 {
        return Err(DensityError::EmptyGraph.into());
    }
    if !p.is_positive() || *p >= Rat::one() {
        return Err(DensityError::DegenerateP.into());
    }
    let q = Rat::one() - p;
    let a = hom_density_kernel(h1, w)? / (int(e1 as i64) * pow(p, e1 - 1));
    let b = hom_density_kernel(h2, &w.complement())? / (int(e2 as i64) * pow(&q, e2 - 1));
    let lhs = a + b;
    let rhs = p / int(e1 as i64) + q / int(e2 as i64);
    let holds = lhs >= rhs;
    Ok(CommonCheck { lhs, rhs, holds })
}

// ---- ordering recovery ----

pub struct RecoveryContext<'a> {
    pub h1: &'a Graph,
    pub h2: &'a Graph,
    pub lambda: &'a Rat,
    pub alpha: &'a Rat,
    pub ell: usize,
    pub partners: &'a [FlagBlock],
}

/// Finds `order` with `order[i]` the candidate flag placed at matrix index `i` such that the
/// block (with the partner blocks fixed) meets `α` on every `ℓ`-vertex graph. `guess` is
/// tried first. Pruning uses floating bounds with a safety margin; every accepted ordering
/// is re-checked exactly.
pub fn recover_flag_ordering(
    candidates: &[Flag],
    matrix: &RatMatrix,
    scale: &Rat,
    ctx: &RecoveryContext<'_>,
    guess: Option<&[usize]>,
) -> Result<Vec<usize>, CertError> {
    let t = candidates.len();
    if t != matrix.dim() {
        return Err(malformed(format!("{t} candidate flags for a {}x{} matrix", matrix.dim(), matrix.dim())));
    }
    let js = enumerate_graphs(ctx.ell)?;
    // slack(J) = base - partner contributions - α; the block's SOS term must not exceed it.
    let mut slack = Vec::with_capacity(js.len());
    let mut tables = Vec::with_capacity(js.len());
    for j in &js {
        let mut s = base_value(ctx.h1, ctx.h2, ctx.lambda, j)? - ctx.alpha;
        for b in ctx.partners {
            s -= b.contribution(j)?;
        }
        slack.push(s);
        let (counts, total) = a_counts(candidates, j)?;
        tables.push(counts.iter().map(|&c| c as f64 / total as f64).collect::<Vec<f64>>());
    }
    let m: Vec<f64> = (0..t * t).map(|x| to_f64(&(matrix.get(x / t, x % t) * scale))).collect();
    let slack_f: Vec<f64> = slack.iter().map(to_f64).collect();
    let amax: Vec<f64> = tables.iter().map(|tb| tb.iter().cloned().fold(0.0, f64::max)).collect();

    let exact_ok = |order: &[usize]| -> Result<bool, CertError> {
        let block = FlagBlock {
            r: candidates[0].r(),
            k: candidates[0].k(),
            root_graph: candidates[0].root_graph(),
            flags: order.iter().map(|&i| candidates[i].clone()).collect(),
            matrix: matrix.clone(),
            scale: scale.clone(),
        };
        for (j, s) in js.iter().zip(&slack) {
            if block.contribution(j)? > *s {
                return Ok(false);
            }
        }
        Ok(true)
    };
    if let Some(g) = guess {
        if g.len() == t && exact_ok(g)? {
            return Ok(g.to_vec());
        }
    }

    struct Search<'s> {
        t: usize,
        m: &'s [f64],
        tables: &'s [Vec<f64>],
        slack: &'s [f64],
        amax: &'s [f64],
    }
    impl Search<'_> {
        // Lower bound on the SOS term per J given a partial assignment of `order.len()` indices.
        fn feasible(&self, order: &[usize]) -> bool {
            let d = order.len();
            let t = self.t;
            for (jx, tb) in self.tables.iter().enumerate() {
                let mut known = 0.0;
                let mut free_neg = 0.0;
                for i in 0..t {
                    for j in 0..t {
                        let mij = self.m[i * t + j];
                        if i < d && j < d {
                            known += mij * tb[order[i] * t + order[j]];
                        } else if mij < 0.0 {
                            free_neg += mij * self.amax[jx];
                        }
                    }
                }
                if known + free_neg > self.slack[jx] + 1e-9 {
                    return false;
                }
            }
            true
        }
    }
    let s = Search { t, m: &m, tables: &tables, slack: &slack_f, amax: &amax };
    let mut order = Vec::with_capacity(t);
    let mut found = None;
    fn go(
        s: &Search<'_>,
        order: &mut Vec<usize>,
        used: &mut Vec<bool>,
        check: &dyn Fn(&[usize]) -> Result<bool, CertError>,
        found: &mut Option<Vec<usize>>,
    ) -> Result<(), CertError> {
        if found.is_some() || !s.feasible(order) {
            return Ok(());
        }
        if order.len() == s.t {
            if check(order)? {
                *found = Some(order.clone());
            }
            return Ok(());
        }
        for c in 0..s.t {
            if !used[c] {
                used[c] = true;
                order.push(c);
                go(s, order, used, check, found)?;
                order.pop();
                used[c] = false;
            }
        }
        Ok(())
    }
    go(&s, &mut order, &mut vec![false; t], &exact_ok, &mut found)?;
    found.ok_or(CertError::NoOrdering)
}

/// Recovery against the canonical flag family of `root` at size `k`.
pub fn recover_for_root(
    root: &Graph,
    k: usize,
    matrix: &RatMatrix,
    scale: &Rat,
    ctx: &RecoveryContext<'_>,
) -> Result<Vec<Flag>, CertError> {
    let fam = enumerate_flags(root, k)?;
    let order = recover_flag_ordering(&fam.flags, matrix, scale, ctx, None)?;
    Ok(order.into_iter().map(|i| fam.flags[i].clone()).collect())
}
