//! Browser demo bindings: sample a random graph and color it greedily, run
//! the adversarial audit, and tabulate the closed-form bounds. Every export
//! returns a JSON string for a plain static page to render.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use cliquechroma::bounds::{
    adversary_palette_size, greedy_palette_size, ceiling_palette_bound, asymptotic_palette_bounds,
};
use cliquechroma::budget::Budget;
use cliquechroma::coloring::{
    audit_coloring, greedy_clique_coloring, verify_clique_coloring, AuditOutcome, Coloring,
};
use cliquechroma::graph::{gen_random_graph, GenParams};

const DEMO_MAX_N: usize = 512;
const EDGE_PAYLOAD_MAX_N: usize = 200;

fn demo_budget() -> Budget {
    // Keeps a pathological slider combination from hanging the page.
    Budget::default()
        .with_max_nodes(20_000_000)
        .with_max_cliques(2_000_000)
}

#[derive(Serialize)]
struct GreedyDemo {
    n: usize,
    p: f64,
    seed: u64,
    edge_count: usize,
    palette: u32,
    pivot_steps: usize,
    remainder_size: usize,
    merged: bool,
    valid: bool,
    colors: Vec<u32>,
    class_sizes: Vec<usize>,
    /// Present only for small graphs, for canvas rendering.
    edges: Option<Vec<(usize, usize)>>,
}

fn greedy_demo_impl(n: usize, p: f64, seed: u64) -> Result<String, String> {
    if n > DEMO_MAX_N {
        return Err(format!("demo caps n at {DEMO_MAX_N}"));
    }
    let params = GenParams::new(n, p, seed).map_err(|e| e.to_string())?;
    let g = gen_random_graph(&params);
    let budget = demo_budget();
    let (coloring, stats) =
        greedy_clique_coloring(&g, None, 2, &budget).map_err(|e| e.to_string())?;
    let valid = verify_clique_coloring(&g, &coloring, 2, &budget)
        .map_err(|e| e.to_string())?
        .is_valid();
    let class_sizes = coloring.classes().iter().map(|c| c.len()).collect();
    let demo = GreedyDemo {
        n,
        p,
        seed,
        edge_count: g.edge_count(),
        palette: coloring.palette(),
        pivot_steps: stats.pivot_steps,
        remainder_size: stats.remainder_size,
        merged: stats.merged,
        valid,
        colors: coloring.colors().to_vec(),
        class_sizes,
        edges: (n <= EDGE_PAYLOAD_MAX_N).then(|| g.edges()),
    };
    serde_json::to_string(&demo).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct AuditStepDemo {
    class_id: u32,
    class_size_in_x: usize,
    chosen_vertex: usize,
    nonneighbors_in_class: usize,
}

#[derive(Serialize)]
struct AuditDemo {
    n: usize,
    coloring: String,
    palette: u32,
    steps: Vec<AuditStepDemo>,
    violation: Option<Vec<usize>>,
    final_x_size: Option<usize>,
}

fn audit_demo_impl(n: usize, p: f64, seed: u64, monochrome: bool) -> Result<String, String> {
    if n > DEMO_MAX_N {
        return Err(format!("demo caps n at {DEMO_MAX_N}"));
    }
    let params = GenParams::new(n, p, seed).map_err(|e| e.to_string())?;
    let g = gen_random_graph(&params);
    let budget = demo_budget();
    let coloring = if monochrome {
        Coloring::monochrome(n)
    } else {
        greedy_clique_coloring(&g, None, 2, &budget)
            .map_err(|e| e.to_string())?
            .0
    };
    let trace = audit_coloring(&g, &coloring, None, 2, &budget).map_err(|e| e.to_string())?;
    let steps = trace
        .steps
        .iter()
        .map(|s| AuditStepDemo {
            class_id: s.class_id,
            class_size_in_x: s.class_size_in_x,
            chosen_vertex: s.chosen_vertex,
            nonneighbors_in_class: s.nonneighbors_in_class,
        })
        .collect();
    let (violation, final_x_size) = match &trace.outcome {
        AuditOutcome::Violation { certificate, .. } => (Some(certificate.to_vec()), None),
        AuditOutcome::Exhausted { final_x, .. } => (None, Some(final_x.len())),
    };
    let demo = AuditDemo {
        n,
        coloring: if monochrome { "monochrome" } else { "greedy" }.to_string(),
        palette: coloring.palette(),
        steps,
        violation,
        final_x_size,
    };
    serde_json::to_string(&demo).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct BoundsCurve {
    eps: f64,
    log2_n: Vec<u32>,
    asymptotic_lower: Vec<f64>,
    asymptotic_upper: Vec<f64>,
    greedy_palette: Vec<f64>,
    adversary_palette: Vec<f64>,
    ceiling_upper: Vec<f64>,
}

fn bounds_curve_impl(exp_min: u32, exp_max: u32, eps: f64) -> Result<String, String> {
    if !(2..=60).contains(&exp_min) || !(2..=60).contains(&exp_max) || exp_min > exp_max {
        return Err("exponent range must satisfy 2 ≤ min ≤ max ≤ 60".to_string());
    }
    let mut curve = BoundsCurve {
        eps,
        log2_n: Vec::new(),
        asymptotic_lower: Vec::new(),
        asymptotic_upper: Vec::new(),
        greedy_palette: Vec::new(),
        adversary_palette: Vec::new(),
        ceiling_upper: Vec::new(),
    };
    for e in exp_min..=exp_max {
        let n = 1u64 << e;
        let (lo, hi) = asymptotic_palette_bounds(n).map_err(|err| err.to_string())?;
        curve.log2_n.push(e);
        curve.asymptotic_lower.push(lo);
        curve.asymptotic_upper.push(hi);
        curve
            .greedy_palette
            .push(greedy_palette_size(n, eps).map_err(|err| err.to_string())? as f64);
        curve
            .adversary_palette
            .push(adversary_palette_size(n, eps).map_err(|err| err.to_string())? as f64);
        curve
            .ceiling_upper
            .push(ceiling_palette_bound(n).map_err(|err| err.to_string())? as f64);
    }
    serde_json::to_string(&curve).map_err(|e| e.to_string())
}

/// Sample G(n,p) with a seed, color it greedily, and report the coloring.
#[wasm_bindgen]
pub fn greedy_demo(n: usize, p: f64, seed: u32) -> Result<String, JsValue> {
    greedy_demo_impl(n, p, seed as u64).map_err(|e| JsValue::from_str(&e))
}

/// Run the adversarial audit on the monochrome or greedy coloring.
#[wasm_bindgen]
pub fn audit_demo(n: usize, p: f64, seed: u32, monochrome: bool) -> Result<String, JsValue> {
    audit_demo_impl(n, p, seed as u64, monochrome).map_err(|e| JsValue::from_str(&e))
}

/// Tabulate the closed-form bounds for n = 2^e over an exponent range.
#[wasm_bindgen]
pub fn bounds_curve(exp_min: u32, exp_max: u32, eps: f64) -> Result<String, JsValue> {
    bounds_curve_impl(exp_min, exp_max, eps).map_err(|e| JsValue::from_str(&e))
}
