//! Flag-algebra SDP in SDPA sparse format. All coefficients stay rational until printing.

use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::certificates::{CertError, LowerBoundCertificate};
use crate::densities::t_inj;
use crate::exact::{int, to_f64, Rat, RatMatrix};
use crate::flags::{a_counts, enumerate_flags, Flag};
use crate::graph::{enumerate_graphs, Graph};

#[derive(Debug, Error)]
pub enum SdpError {
    #[error("block (r={r}, k={k}) needs 2k-r <= ell = {ell}")]
    Incompatible { r: usize, k: usize, ell: usize },
    #[error("matrix count or size does not match the blocks")]
    Shape,
    #[error(transparent)]
    Cert(#[from] CertError),
}

impl From<crate::flags::FlagError> for SdpError {
    fn from(e: crate::flags::FlagError) -> Self {
        SdpError::Cert(e.into())
    }
}

impl From<crate::graph::GraphError> for SdpError {
    fn from(e: crate::graph::GraphError) -> Self {
        SdpError::Cert(e.into())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LambdaMode {
    Fixed(Rat),
    Variable,
}

/// Every `(root, k)` with `1 <= r < k <= 5` and `2k - r <= ell`, roots up to isomorphism.
pub fn auto_blocks(ell: usize) -> Vec<(Graph, usize)> {
    let mut out = Vec::new();
    for k in 2..=5usize {
        for r in 1..k {
            if 2 * k - r > ell {
                continue;
            }
            for root in enumerate_graphs(r).expect("r <= 4") {
                out.push((root, k));
            }
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct SdpProblem {
    pub h1: Graph,
    pub h2: Graph,
    pub ell: usize,
    pub lambda: LambdaMode,
    pub blocks: Vec<Vec<Flag>>,
    pub graphs: Vec<Graph>,
    /// `t_inj(H1, J)` and `t_inj(H2, J̄)` per graph.
    pub red: Vec<Rat>,
    pub blue: Vec<Rat>,
    /// `coeffs[J][q]` is the dense `t_q × t_q` table `a(F_i, F_j; J)`.
    pub coeffs: Vec<Vec<Vec<Rat>>>,
}

pub fn build_problem(
    h1: &Graph,
    h2: &Graph,
    ell: usize,
    blocks: Vec<Vec<Flag>>,
    lambda: LambdaMode,
) -> Result<SdpProblem, SdpError> {
    for b in &blocks {
        let f = b.first().ok_or(SdpError::Shape)?;
        if 2 * f.k() - f.r() > ell {
            return Err(SdpError::Incompatible { r: f.r(), k: f.k(), ell });
        }
    }
    let graphs = enumerate_graphs(ell)?;
    let rows = crate::par::map(&graphs, |j| -> Result<(Rat, Rat, Vec<Vec<Rat>>), SdpError> {
        let red = t_inj(h1, j).map_err(CertError::from)?;
        let blue = t_inj(h2, &j.complement()).map_err(CertError::from)?;
        let mut per = Vec::with_capacity(blocks.len());
        for b in &blocks {
            let (c, total) = a_counts(b, j)?;
            let total = BigInt::from(total);
            per.push(c.iter().map(|&x| Rat::new(BigInt::from(x), total.clone())).collect());
        }
        Ok((red, blue, per))
    });
    let mut red = Vec::new();
    let mut blue = Vec::new();
    let mut coeffs = Vec::new();
    for r in rows {
        let (a, b, c) = r?;
        red.push(a);
        blue.push(b);
        coeffs.push(c);
    }
    Ok(SdpProblem { h1: h1.clone(), h2: h2.clone(), ell, lambda, blocks, graphs, red, blue, coeffs })
}

/// Problem whose blocks are the canonical flag families of the given shapes.
pub fn build_problem_for_shapes(
    h1: &Graph,
    h2: &Graph,
    ell: usize,
    shapes: &[(Graph, usize)],
    lambda: LambdaMode,
) -> Result<SdpProblem, SdpError> {
    let mut blocks = Vec::new();
    for (root, k) in shapes {
        if 2 * k < root.n() || 2 * k - root.n() > ell {
            return Err(SdpError::Incompatible { r: root.n(), k: *k, ell });
        }
        blocks.push(enumerate_flags(root, *k)?.flags);
    }
    build_problem(h1, h2, ell, blocks, lambda)
}

/// Problem with the certificate's own flag lists and fixed λ.
pub fn problem_from_certificate(cert: &LowerBoundCertificate) -> Result<SdpProblem, SdpError> {
    let blocks = cert.blocks.iter().map(|b| b.flags.clone()).collect();
    build_problem(&cert.h1, &cert.h2, cert.ell, blocks, LambdaMode::Fixed(cert.lambda.clone()))
}

impl SdpProblem {
    pub fn constraint_count(&self) -> usize {
        self.graphs.len()
    }

    /// Exact slack of every graph constraint at the given `λ`, `t` and block matrices.
    pub fn slacks(&self, lambda: &Rat, t: &Rat, mats: &[RatMatrix]) -> Result<Vec<Rat>, SdpError> {
        if mats.len() != self.blocks.len() || mats.iter().zip(&self.blocks).any(|(m, b)| m.dim() != b.len()) {
            return Err(SdpError::Shape);
        }
        let mut out = Vec::with_capacity(self.graphs.len());
        for jx in 0..self.graphs.len() {
            let mut s = lambda * &self.red[jx] + (int(2) - lambda) * &self.blue[jx] - t;
            for (q, m) in mats.iter().enumerate() {
                let tq = m.dim();
                for a in 0..tq {
                    for b in 0..tq {
                        let c = &self.coeffs[jx][q][a * tq + b];
                        if !c.is_zero() {
                            s -= m.get(a, b) * c;
                        }
                    }
                }
            }
            out.push(s);
        }
        Ok(out)
    }

    /// SDPA sparse text: minimise `-t` over `t`, optional `λ`, and the upper triangles of the
    /// block matrices; one diagonal LP block holds the per-graph slacks and `0 <= λ <= 2`.
    pub fn to_sdpa(&self) -> String {
        let variable = matches!(self.lambda, LambdaMode::Variable);
        let lp = self.graphs.len() + if variable { 2 } else { 0 };
        let mut var_of = Vec::new();
        let mut m = 1 + variable as usize;
        for b in &self.blocks {
            let t = b.len();
            let mut idx = vec![0usize; t * t];
            for i in 0..t {
                for j in i..t {
                    m += 1;
                    idx[i * t + j] = m;
                    idx[j * t + i] = m;
                }
            }
            var_of.push(idx);
        }
        let nblock = self.blocks.len() + 1;
        let lp_blk = nblock;
        let num = |x: &Rat| format!("{:.16e}", to_f64(x));
        let mut s = String::new();
        let _ = writeln!(s, "* flag-algebra bound for H1 = {} and H2 = {}", self.h1.to_graph6(), self.h2.to_graph6());
        let _ = writeln!(s, "* ell = {}, {} graph constraints, lambda {}", self.ell, self.graphs.len(), match &self.lambda {
            LambdaMode::Fixed(l) => format!("fixed at {l}"),
            LambdaMode::Variable => "variable (x2)".to_string(),
        });
        let _ = writeln!(s, "{m}");
        let _ = writeln!(s, "{nblock}");
        let sizes: Vec<String> =
            self.blocks.iter().map(|b| b.len().to_string()).chain(std::iter::once(format!("-{lp}"))).collect();
        let _ = writeln!(s, "{}", sizes.join(" "));
        let c: Vec<String> = (1..=m).map(|i| if i == 1 { "-1".to_string() } else { "0".to_string() }).collect();
        let _ = writeln!(s, "{}", c.join(" "));

        let mut line = |mat: usize, blk: usize, i: usize, j: usize, v: &Rat| {
            if !v.is_zero() {
                let _ = writeln!(s, "{mat} {blk} {i} {j} {}", num(v));
            }
        };
        // F0: constant terms, negated.
        for jx in 0..self.graphs.len() {
            let constant = match &self.lambda {
                LambdaMode::Fixed(l) => l * &self.red[jx] + (int(2) - l) * &self.blue[jx],
                LambdaMode::Variable => int(2) * &self.blue[jx],
            };
            line(0, lp_blk, jx + 1, jx + 1, &-constant);
        }
        if variable {
            line(0, lp_blk, lp, lp, &int(-2));
        }
        // t
        for jx in 0..self.graphs.len() {
            line(1, lp_blk, jx + 1, jx + 1, &int(-1));
        }
        if variable {
            for jx in 0..self.graphs.len() {
                line(2, lp_blk, jx + 1, jx + 1, &(&self.red[jx] - &self.blue[jx]));
            }
            line(2, lp_blk, lp - 1, lp - 1, &int(1));
            line(2, lp_blk, lp, lp, &int(-1));
        }
        for (q, b) in self.blocks.iter().enumerate() {
            let t = b.len();
            for i in 0..t {
                for j in i..t {
                    let var = var_of[q][i * t + j];
                    line(var, q + 1, i + 1, j + 1, &int(1));
                    let mult = if i == j { int(1) } else { int(2) };
                    for jx in 0..self.graphs.len() {
                        let c = &self.coeffs[jx][q];
                        // A(i,j) = A(j,i) share one variable.
                        let both = if i == j { c[i * t + j].clone() } else { (&c[i * t + j] + &c[j * t + i]) / int(2) };
                        line(var, lp_blk, jx + 1, jx + 1, &-(both * &mult));
                    }
                }
            }
        }
        s
    }
}

pub fn export_sdp(
    h1: &Graph,
    h2: &Graph,
    ell: usize,
    shapes: &[(Graph, usize)],
    lambda: LambdaMode,
) -> Result<String, SdpError> {
    Ok(build_problem_for_shapes(h1, h2, ell, shapes, lambda)?.to_sdpa())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::graph::named_graph;

    #[test]
    fn auto_blocks_respect_ell() {
        for (root, k) in auto_blocks(6) {
            assert!(2 * k - root.n() <= 6 && root.n() >= 1 && k <= 5);
        }
        assert!(auto_blocks(6).iter().any(|(r, k)| r.n() == 4 && *k == 5));
    }

    #[test]
    fn incompatible_block() {
        let k1 = Graph::empty(1).unwrap();
        let r = build_problem_for_shapes(
            &named_graph("K3").unwrap(),
            &named_graph("C5").unwrap(),
            4,
            &[(k1, 3)],
            LambdaMode::Variable,
        );
        assert!(matches!(r, Err(SdpError::Incompatible { .. })));
    }

    #[test]
    fn sdpa_header_and_determinism() {
        let shapes = vec![(Graph::empty(1).unwrap(), 3)];
        let (k3, c5) = (named_graph("K3").unwrap(), named_graph("C5").unwrap());
        let a = export_sdp(&k3, &c5, 5, &shapes, LambdaMode::Variable).unwrap();
        let b = export_sdp(&k3, &c5, 5, &shapes, LambdaMode::Variable).unwrap();
        assert_eq!(a, b);
        let body: Vec<&str> = a.lines().filter(|l| !l.starts_with('*')).collect();
        assert_eq!(body[0], (2 + 21).to_string());
        assert_eq!(body[1], "2");
        assert_eq!(body[2], "6 -36");
        let fixed = export_sdp(&k3, &c5, 5, &shapes, LambdaMode::Fixed(rat(10, 17))).unwrap();
        let body: Vec<&str> = fixed.lines().filter(|l| !l.starts_with('*')).collect();
        assert_eq!(body[2], "6 -34");
    }
}
