//! Browser bindings for the demo page in `www/`. Every export returns a JSON
//! string; failures come back as `{"error": "..."}` so the page needs no
//! exception handling and the functions can be tested natively.

use algsieve::dimmatch::detect_qdim_packing;
use algsieve::edgecolor::{detect_edge_coloring, detect_edge_coloring_general};
use algsieve::io::{parse_family, parse_graph, Family};
use algsieve::kpath::{admissible_probability, choose_path_parameters, in_admissibility_window};
use algsieve::setpack::{detect_set_packing, packing_cost_base, search_packing_betas, table_betas};
use algsieve::{combin, kpath, oracle, DetectOptions, Detection};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const MAX_TABLE_K: u32 = 64;
const MAX_RESOLUTION: u32 = 400;

fn error(message: impl std::fmt::Display) -> String {
    json!({ "error": message.to_string() }).to_string()
}

/// Exact probability and cost of every `(k1, l2)` pair for k-path.
#[wasm_bindgen]
pub fn admissibility_table(k: u32) -> String {
    if k == 0 || k > MAX_TABLE_K {
        return error(format!("k must be in 1..={MAX_TABLE_K}"));
    }
    let k = k as usize;
    let chosen = choose_path_parameters(k);
    let mut cells = Vec::new();
    for k1 in 0..=k {
        for l2 in 0..k {
            if !in_admissibility_window(k, k1, l2) {
                continue;
            }
            let probability = admissible_probability(k, k1, l2);
            let p = combin::to_f64(&probability);
            cells.push(json!({
                "k1": k1,
                "l2": l2,
                "probability": probability.to_string(),
                "probability_f64": p,
                "log2_cost": (k1 + l2) as f64 - p.log2(),
            }));
        }
    }
    json!({
        "k": k,
        "chosen": { "k1": chosen.k1, "l2": chosen.l2, "repetitions": chosen.repetitions },
        "cells": cells,
    })
    .to_string()
}

/// Per-p cost base over a `resolution x resolution` grid of the
/// `(beta1, beta2)` simplex, with the numeric optimum.
#[wasm_bindgen]
pub fn packing_cost_landscape(q: u32, resolution: u32) -> String {
    if !(2..=12).contains(&q) {
        return error("q must be in 2..=12");
    }
    if !(2..=MAX_RESOLUTION).contains(&resolution) {
        return error(format!("resolution must be in 2..={MAX_RESOLUTION}"));
    }
    let q = q as usize;
    let step = 1.0 / (resolution - 1) as f64;
    let mut grid = Vec::new();
    for i in 0..resolution {
        let row: Vec<Value> = (0..resolution)
            .map(|j| {
                let base = packing_cost_base(q, i as f64 * step, j as f64 * step);
                if base.is_finite() { json!(base) } else { Value::Null }
            })
            .collect();
        grid.push(row);
    }
    let (beta1, beta2, base) = search_packing_betas(q);
    json!({
        "q": q,
        "resolution": resolution,
        "grid": grid,
        "optimum": { "beta1": beta1, "beta2": beta2, "base": base },
        "table": table_betas(q).map(|(b1, b2)| json!({ "beta1": b1, "beta2": b2 })),
    })
    .to_string()
}

fn detection_json<P>(problem: &str, detection: &Detection<P>, params: Value, oracle_answer: Option<bool>) -> Value {
    json!({
        "problem": problem,
        "decision": if detection.decision { "yes" } else { "no" },
        "params": params,
        "field_bits": detection.field_bits,
        "repetitions_planned": detection.repetitions_planned,
        "repetitions_run": detection.repetitions_run,
        "label_count": detection.label_count,
        "label_subsets": detection.label_subsets,
        "oracle": oracle_answer.map(|a| if a { "yes" } else { "no" }),
    })
}

fn run_detect(problem: &str, input: &str, param: u32, seed: u64) -> algsieve::Result<Value> {
    let opts = DetectOptions::default();
    let param = param as usize;
    Ok(match problem {
        "kpath" => {
            let graph = parse_graph(input)?;
            let d = kpath::detect_k_path(&graph, param, seed, opts)?;
            let brute = (graph.vertex_count() <= 16).then(|| oracle::has_k_path_bf(&graph, param));
            let params = json!({ "k": d.params.k, "k1": d.params.k1, "l2": d.params.l2 });
            detection_json(problem, &d, params, brute)
        }
        "setpack" | "qdmatch" => match (problem, parse_family(input)?) {
            ("setpack", Family::Plain(f)) => {
                let d = detect_set_packing(&f, param, seed, opts)?;
                let brute = (f.len() <= 40).then(|| oracle::has_p_packing_bf(&f, param));
                let pp = d.params;
                let params = json!({ "p": pp.p, "q": pp.q, "p0": pp.p0, "p1": pp.p1, "p2": pp.p2, "n1": pp.n1 });
                detection_json(problem, &d, params, brute)
            }
            ("qdmatch", Family::Partite(f)) => {
                let d = detect_qdim_packing(&f, param, seed, opts)?;
                let brute = (f.len() <= 40).then(|| oracle::has_qdim_packing_bf(&f, param));
                let params = json!({ "p": d.params.p, "q": d.params.q, "r": d.params.r });
                detection_json(problem, &d, params, brute)
            }
            _ => {
                return Err(algsieve::Error::InvalidParameter(
                    "setpack needs an \"n q\" family, qdmatch a \"q r partite\" family".into(),
                ))
            }
        },
        "edgecolor" => {
            let graph = parse_graph(input)?;
            let d = if graph.regular_degree().is_some() {
                detect_edge_coloring(&graph, seed, opts)?
            } else {
                detect_edge_coloring_general(&graph, seed, opts)?
            };
            let brute = oracle::edge_chromatic_bf(&graph).ok().map(|index| index == graph.max_degree());
            let params = json!({ "colors": d.params.colors, "p": d.params.p });
            detection_json(problem, &d, params, brute)
        }
        other => return Err(algsieve::Error::InvalidParameter(format!("unknown problem {other:?}"))),
    })
}

/// Runs one detector on pasted input. `param` is `k` for kpath and `p` for
/// the packing problems; edgecolor ignores it and picks the regular variant
/// when the graph is regular.
#[wasm_bindgen]
pub fn detect(problem: &str, input: &str, param: u32, seed: u32) -> String {
    match run_detect(problem, input, param, u64::from(seed)) {
        Ok(value) => value.to_string(),
        Err(e) => error(e),
    }
}
