//! `rmult`: exact densities, flag coefficients, certificate checks, search and SDP export.

mod report;

use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ramsey_mult::certificates::{
    check_p_common, parse_alpha, parse_kernel_json, parse_lower, verify_alpha, verify_lower, C5_B_ALPHA,
    C5_B_LOWER, D_M_ALPHA, D_M_LOWER, K3_C5_ALPHA, K3_C5_LOWER,
};
use ramsey_mult::densities::{goodman_check, WeightedGraph, hom_density_kernel, induced_density, t_inj};
use ramsey_mult::exact::{fmt_decimal, parse_rat};
use ramsey_mult::flags::{a_coeff, a_coeff_lifted};
use ramsey_mult::graph::{enumerate_graphs, named_graph, NAMED_GRAPHS};
use ramsey_mult::sdp_export::{auto_blocks, export_sdp, LambdaMode};
use ramsey_mult::search::{hill_climb, SearchConfig, DEFAULT_ITERS, DEFAULT_RESTARTS};
use ramsey_mult::{Flag, Graph, Kernel, Rat};
use report::{Format, Report};
use serde_json::Value;

const DIGITS: usize = 15;

#[derive(Parser)]
#[command(name = "rmult", version, about = "Exact tools for off-diagonal Ramsey multiplicity")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    report: Format,
    /// Worker threads for the parallel maps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum DensityKind {
    /// t(H, W)
    Hom,
    /// t_inj(H, J), J a graph
    Inj,
    /// induced density of H in J, J a graph
    Ind,
}

/// Graphs are given as `named:X`, a bare name, an edge list `n; u-v,...` or graph6.
/// Kernels additionally accept `const:p` and a JSON kernel file.
#[derive(Subcommand)]
enum Cmd {
    /// List (or count) graphs on n vertices up to isomorphism.
    Enumerate {
        n: usize,
        #[arg(long)]
        count: bool,
    },
    /// Homomorphism, injective or induced density.
    Density {
        #[arg(long)]
        h: String,
        #[arg(long)]
        w: String,
        #[arg(long, value_enum, default_value = "hom")]
        kind: DensityKind,
        /// Use 1 - W (hom) or the complement graph (inj, ind).
        #[arg(long)]
        complement: bool,
        /// Also print a 15-digit decimal.
        #[arg(long)]
        float: bool,
    },
    /// Flag coefficient a(F1, F2; J); flags are `k r; u-v,...`.
    Coeff {
        #[arg(long)]
        f1: String,
        #[arg(long)]
        f2: String,
        #[arg(long)]
        j: String,
        /// Lift to an ell-vertex J instead of v(J) = 2k - r.
        #[arg(long)]
        ell: Option<usize>,
    },
    /// Verify a lower-bound certificate (path or builtin:k3_c5|c5_b|d_m).
    VerifyLower {
        file: String,
        /// Print the value at every graph.
        #[arg(long)]
        values: bool,
    },
    /// Verify an upper-bound (alpha) certificate (path or builtin:NAME).
    VerifyAlpha { file: String },
    /// Check the p-common inequality for one kernel.
    CheckCommon {
        #[arg(long)]
        h1: String,
        #[arg(long)]
        h2: String,
        #[arg(long)]
        p: String,
        #[arg(long)]
        w: String,
    },
    /// Hill climb over d-regular graphs on n vertices.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        h1: String,
        #[arg(long)]
        h2: String,
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value_t = DEFAULT_ITERS)]
        iters: usize,
        #[arg(long, default_value_t = DEFAULT_RESTARTS)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Trace every restart, not just the best one.
        #[arg(long)]
        all: bool,
    },
    /// Write the flag-algebra SDP in SDPA sparse format.
    ExportSdp {
        #[arg(long)]
        h1: String,
        #[arg(long)]
        h2: String,
        #[arg(long)]
        ell: usize,
        /// `auto`, or comma-separated `ROOT@k` with ROOT a graph.
        #[arg(long, default_value = "auto")]
        blocks: String,
        /// `variable` or a fixed rational.
        #[arg(long, default_value = "variable")]
        lambda: String,
        #[arg(short = 'o', long)]
        output: Option<String>,
    },
    /// List named graphs, or show one.
    Named { name: Option<String> },
    /// Both sides of Goodman's identity for a kernel.
    Goodman {
        #[arg(long)]
        w: String,
    },
}

struct Failure(String);

/// `None` when the command already wrote its output; the flag is the verdict.
type Res = Result<(Option<Report>, bool), Failure>;

fn usage(flag: &str, e: impl std::fmt::Display) -> Failure {
    Failure(format!("{flag}: {e}"))
}

fn graph(flag: &str, s: &str) -> Result<Graph, Failure> {
    Graph::parse_any(s).map_err(|e| usage(flag, e))
}

fn rational(flag: &str, s: &str) -> Result<Rat, Failure> {
    parse_rat(s).map_err(|e| usage(flag, e))
}

fn kernel(flag: &str, s: &str) -> Result<Kernel, Failure> {
    if let Some(p) = s.strip_prefix("const:") {
        return Kernel::constant(rational(flag, p)?).map_err(|e| usage(flag, e));
    }
    if s.ends_with(".json") && Path::new(s).exists() {
        let text = std::fs::read_to_string(s).map_err(|e| usage(flag, e))?;
        return parse_kernel_json(&text).map_err(|e| usage(flag, e));
    }
    Ok(Kernel::from_graph(&graph(flag, s)?))
}

fn certificate_text(s: &str, alpha: bool) -> Result<String, Failure> {
    if let Some(name) = s.strip_prefix("builtin:") {
        let t = match (name, alpha) {
            ("k3_c5", false) => K3_C5_LOWER,
            ("c5_b", false) => C5_B_LOWER,
            ("d_m", false) => D_M_LOWER,
            ("k3_c5", true) => K3_C5_ALPHA,
            ("c5_b", true) => C5_B_ALPHA,
            ("d_m", true) => D_M_ALPHA,
            _ => return Err(usage("FILE", format!("unknown builtin certificate `{name}`"))),
        };
        return Ok(t.to_string());
    }
    std::fs::read_to_string(s).map_err(|e| usage("FILE", format!("{s}: {e}")))
}

fn num(x: &Rat) -> Value {
    Value::String(x.to_string())
}

fn dec(x: &Rat) -> Value {
    Value::String(fmt_decimal(x, DIGITS))
}

fn run(cmd: Cmd, fmt: Format) -> Res {
    let mut r = Report::new();
    match cmd {
        Cmd::Enumerate { n, count } => {
            let gs = enumerate_graphs(n).map_err(|e| usage("N", e))?;
            if count {
                if fmt == Format::Text {
                    println!("{}", gs.len());
                    return Ok((None, true));
                }
                r.field("n", n).field("count", gs.len());
            } else {
                r.field("n", n).field("count", gs.len());
                r.table("graphs", &["index", "graph6", "edges"]);
                for (i, g) in gs.iter().enumerate() {
                    r.row(vec![i.into(), g.to_graph6().into(), g.edge_count().into()]);
                }
            }
        }
        Cmd::Density { h, w, kind, complement, float } => {
            let hg = graph("--h", &h)?;
            let value = match kind {
                DensityKind::Hom => {
                    let mut k = kernel("--w", &w)?;
                    if complement {
                        k = k.complement();
                    }
                    hom_density_kernel(&hg, &k).map_err(|e| usage("--w", e))?
                }
                DensityKind::Inj | DensityKind::Ind => {
                    let mut j = graph("--w", &w)?;
                    if complement {
                        j = j.complement();
                    }
                    let v = if matches!(kind, DensityKind::Inj) { t_inj(&hg, &j) } else { induced_density(&hg, &j) };
                    v.map_err(|e| usage("--w", e))?
                }
            };
            if fmt == Format::Text {
                match float {
                    true => println!("{value}  {}", fmt_decimal(&value, DIGITS)),
                    false => println!("{value}"),
                }
                return Ok((None, true));
            }
            r.field("value", num(&value));
            if float {
                r.field("decimal", dec(&value));
            }
        }
        Cmd::Coeff { f1, f2, j, ell } => {
            let a = Flag::parse(&f1).map_err(|e| usage("--f1", e))?;
            let b = Flag::parse(&f2).map_err(|e| usage("--f2", e))?;
            let jg = graph("--j", &j)?;
            let v = match ell {
                Some(l) => a_coeff_lifted(&a, &b, &jg, l),
                None => a_coeff(&a, &b, &jg),
            }
            .map_err(|e| usage("--j", e))?;
            r.field("value", num(&v)).field("decimal", dec(&v));
        }
        Cmd::VerifyLower { file, values } => {
            let text = certificate_text(&file, false)?;
            let cert = parse_lower(&text).map_err(|e| usage("FILE", e))?;
            let rep = verify_lower(&cert).map_err(|e| usage("FILE", e))?;
            r.field("verdict", if rep.verdict { "pass" } else { "fail" })
                .field("h1", cert.h1.to_graph6())
                .field("h2", cert.h2.to_graph6())
                .field("lambda", num(&cert.lambda))
                .field("alpha", num(&rep.alpha))
                .field("min", num(&rep.min))
                .field("min_decimal", dec(&rep.min))
                .field("graphs", rep.values.len())
                .field("tight", rep.tight.len())
                .field(
                    "psd",
                    Value::Array(rep.psd.iter().map(|p| Value::Bool(p.is_psd())).collect()),
                );
            if values {
                r.table("values", &["index", "graph6", "value", "decimal"]);
                for v in &rep.values {
                    r.row(vec![v.index.into(), v.graph.to_graph6().into(), num(&v.value), dec(&v.value)]);
                }
            }
            return Ok((Some(r), rep.verdict));
        }
        Cmd::VerifyAlpha { file } => {
            let text = certificate_text(&file, true)?;
            let cert = parse_alpha(&text).map_err(|e| usage("FILE", e))?;
            let rep = verify_alpha(&cert).map_err(|e| usage("FILE", e))?;
            r.field("verdict", if rep.verdict { "pass" } else { "fail" })
                .field("alpha", num(&cert.alpha))
                .field("objective_w1", num(&rep.objective_w1))
                .field("objective_w2", num(&rep.objective_w2))
                .field("t_h1_w1", num(&rep.t1_w1))
                .field("t_h2_not_w1", num(&rep.t2_w1))
                .field("t_h1_w2", num(&rep.t1_w2))
                .field("t_h2_not_w2", num(&rep.t2_w2))
                .field("conditions", Value::Array(rep.conditions.iter().map(|&c| c.into()).collect()));
            return Ok((Some(r), rep.verdict));
        }
        Cmd::CheckCommon { h1, h2, p, w } => {
            let (a, b) = (graph("--h1", &h1)?, graph("--h2", &h2)?);
            let p = rational("--p", &p)?;
            let k = kernel("--w", &w)?;
            let c = check_p_common(&a, &b, &p, &k).map_err(|e| usage("--p", e))?;
            r.field("holds", c.holds).field("lhs", num(&c.lhs)).field("rhs", num(&c.rhs));
            return Ok((Some(r), c.holds));
        }
        Cmd::Search { n, d, h1, h2, lambda, iters, restarts, seed, all } => {
            let cfg = SearchConfig {
                n,
                d,
                h1: graph("--h1", &h1)?,
                h2: graph("--h2", &h2)?,
                lambda: rational("--lambda", &lambda)?,
                max_iters: iters,
                restarts,
                seed,
            };
            let tr = hill_climb(&cfg).map_err(|e| usage("--n/--d/--lambda", e))?;
            let best_ix = tr.restarts.iter().position(|c| c.best_value == tr.best_value).expect("best restart");
            let hits = tr.restarts.iter().filter(|c| c.best_value == tr.best_value).count();
            r.field("best", num(&tr.best_value))
                .field("best_decimal", dec(&tr.best_value))
                .field("best_graph", tr.best_graph.to_graph6())
                .field("best_restart", best_ix)
                .field("restarts_at_best", hits);
            if all {
                r.table("trace", &["restart", "iteration", "objective", "decimal"]);
            } else {
                r.table("trace", &["iteration", "objective", "decimal"]);
            }
            for (ix, c) in tr.restarts.iter().enumerate() {
                if !all && ix != best_ix {
                    continue;
                }
                for (it, v) in std::iter::once((0, &c.start)).chain(c.accepted.iter().map(|(i, v)| (*i, v))) {
                    let mut row = vec![it.into(), num(v), dec(v)];
                    if all {
                        row.insert(0, ix.into());
                    }
                    r.row(row);
                }
            }
        }
        Cmd::ExportSdp { h1, h2, ell, blocks, lambda, output } => {
            let (a, b) = (graph("--h1", &h1)?, graph("--h2", &h2)?);
            let shapes = if blocks == "auto" {
                auto_blocks(ell)
            } else {
                let mut v = Vec::new();
                for part in blocks.split(',') {
                    let (root, k) =
                        part.rsplit_once('@').ok_or_else(|| usage("--blocks", format!("`{part}` is not ROOT@k")))?;
                    let k: usize = k.trim().parse().map_err(|_| usage("--blocks", format!("bad k in `{part}`")))?;
                    v.push((graph("--blocks", root.trim())?, k));
                }
                v
            };
            let mode = if lambda == "variable" {
                LambdaMode::Variable
            } else {
                LambdaMode::Fixed(rational("--lambda", &lambda)?)
            };
            let sdpa = export_sdp(&a, &b, ell, &shapes, mode).map_err(|e| usage("--blocks/--ell", e))?;
            match output {
                Some(path) => {
                    std::fs::write(&path, &sdpa).map_err(|e| usage("-o", e))?;
                    r.field("output", path)
                        .field("blocks", shapes.len())
                        .field("constraints", enumerate_graphs(ell).map_err(|e| usage("--ell", e))?.len());
                }
                None => {
                    print!("{sdpa}");
                    return Ok((None, true));
                }
            }
        }
        Cmd::Named { name } => match name {
            Some(n) => {
                let g = named_graph(n.strip_prefix("named:").unwrap_or(&n)).map_err(|e| usage("NAME", e))?;
                r.field("name", n)
                    .field("vertices", g.n())
                    .field("edges", g.edge_count())
                    .field("graph6", g.to_graph6())
                    .field("edge_list", g.to_edge_list());
            }
            None => {
                r.table("graphs", &["name", "vertices", "edges", "graph6"]);
                for n in NAMED_GRAPHS {
                    let g = named_graph(n).expect("listed name");
                    r.row(vec![(*n).into(), g.n().into(), g.edge_count().into(), g.to_graph6().into()]);
                }
            }
        },
        Cmd::Goodman { w } => {
            let wg = match kernel("--w", &w)? {
                Kernel::Step(wg) => wg,
                Kernel::Const(p) => WeightedGraph::constant(1, p).map_err(|e| usage("--w", e))?,
            };
            let (lhs, rhs) = goodman_check(&wg);
            let ok = lhs == rhs;
            r.field("equal", ok).field("lhs", num(&lhs)).field("rhs", num(&rhs));
            return Ok((Some(r), ok));
        }
    }
    Ok((Some(r), true))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads: must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: --threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.cmd, cli.report) {
        Ok((r, ok)) => {
            if let Some(r) = r {
                print!("{}", r.render(cli.report));
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
