//! wasm-bindgen entry points for `www/index.html`. Every function returns a JSON string.

use ramsey_mult::densities::{goodman_check, hom_density, hom_density_kernel, objective};
use ramsey_mult::exact::{fmt_decimal, int, parse_rat, to_f64};
use ramsey_mult::graph::canonical_form;
use ramsey_mult::search::{climb, SearchConfig};
use ramsey_mult::{Graph, Kernel, Rat, WeightedGraph};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const MAX_EDIT_VERTICES: usize = 12;

fn graph(what: &str, s: &str) -> Result<Graph, String> {
    Graph::parse_any(s).map_err(|e| format!("{what}: {e}"))
}

fn exact(x: &Rat) -> Value {
    json!({ "exact": x.to_string(), "decimal": fmt_decimal(x, 12), "f": to_f64(x) })
}

/// `t(H1, W)`, `t(H2, 1-W)` and the objective sampled at `steps + 1` evenly spaced λ in [0, 2].
pub fn objective_curve_json(h1: &str, h2: &str, w: &str, steps: u32) -> Result<String, String> {
    let (a, b) = (graph("H1", h1)?, graph("H2", h2)?);
    let k = Kernel::from_graph(&graph("W", w)?);
    let t1 = hom_density_kernel(&a, &k).map_err(|e| e.to_string())?;
    let t2 = hom_density_kernel(&b, &k.complement()).map_err(|e| e.to_string())?;
    let steps = steps.clamp(1, 400) as i64;
    let points: Vec<Value> = (0..=steps)
        .map(|i| {
            let lam = int(2 * i) / int(steps);
            let v = &lam * &t1 + (int(2) - &lam) * &t2;
            json!([to_f64(&lam), to_f64(&v)])
        })
        .collect();
    // objective is linear in λ, so its minimum over [0, 2] sits at an endpoint
    let best = if t1 <= t2 { int(2) * &t1 } else { int(2) * &t2 };
    Ok(json!({ "t1": exact(&t1), "t2": exact(&t2), "points": points, "min_over_lambda": exact(&best) }).to_string())
}

/// Densities of an edited graph `g` (edge list or graph6) used as a step graphon.
pub fn graph_densities_json(g: &str, h1: &str, h2: &str, lambda: &str) -> Result<String, String> {
    let g = graph("graph", g)?;
    if g.n() > MAX_EDIT_VERTICES {
        return Err(format!("at most {MAX_EDIT_VERTICES} vertices in the editor"));
    }
    let (a, b) = (graph("H1", h1)?, graph("H2", h2)?);
    let lam = parse_rat(lambda).map_err(|e| e.to_string())?;
    let w = WeightedGraph::from_graph(&g);
    let k = Kernel::Step(w.clone());
    let obj = objective(&a, &b, &lam, &k).map_err(|e| e.to_string())?;
    let (lhs, rhs) = goodman_check(&w);
    let e = Graph::complete(2).map_err(|e| e.to_string())?;
    Ok(json!({
        "vertices": g.n(),
        "edges": g.edge_count(),
        "graph6": g.to_graph6(),
        "canonical": canonical_form(&g).graph().to_graph6(),
        "edge_density": exact(&hom_density(&e, &w).map_err(|e| e.to_string())?),
        "t_h1": exact(&hom_density(&a, &w).map_err(|e| e.to_string())?),
        "t_h2_complement": exact(&hom_density(&b, &w.complement_w()).map_err(|e| e.to_string())?),
        "objective": exact(&obj),
        "goodman": { "lhs": exact(&lhs), "rhs": exact(&rhs), "equal": lhs == rhs },
    })
    .to_string())
}

/// One switching climb on `d`-regular graphs of order `n`; returns the accepted steps.
pub fn climb_trace_json(n: usize, d: usize, h1: &str, h2: &str, lambda: &str, iters: usize, seed: u64) -> Result<String, String> {
    let cfg = SearchConfig {
        n,
        d,
        h1: graph("H1", h1)?,
        h2: graph("H2", h2)?,
        lambda: parse_rat(lambda).map_err(|e| e.to_string())?,
        max_iters: iters.min(20_000),
        restarts: 1,
        seed,
    };
    let tr = climb(&cfg, seed).map_err(|e| e.to_string())?;
    let steps: Vec<Value> = std::iter::once((0, &tr.start))
        .chain(tr.accepted.iter().map(|(i, v)| (*i, v)))
        .map(|(i, v)| json!([i, v.to_string(), to_f64(v)]))
        .collect();
    Ok(json!({
        "iterations": tr.iterations,
        "steps": steps,
        "best": exact(&tr.best_value),
        "best_graph": tr.best_graph.to_graph6(),
        "best_edges": tr.best_graph.edges(),
    })
    .to_string())
}

#[wasm_bindgen]
pub fn objective_curve(h1: &str, h2: &str, w: &str, steps: u32) -> Result<String, JsError> {
    objective_curve_json(h1, h2, w, steps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn graph_densities(g: &str, h1: &str, h2: &str, lambda: &str) -> Result<String, JsError> {
    graph_densities_json(g, h1, h2, lambda).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn climb_trace(n: usize, d: usize, h1: &str, h2: &str, lambda: &str, iters: usize, seed: u64) -> Result<String, JsError> {
    climb_trace_json(n, d, h1, h2, lambda, iters, seed).map_err(|e| JsError::new(&e))
}
