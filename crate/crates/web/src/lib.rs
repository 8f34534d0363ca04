//! Browser bindings. Each export returns a JSON string; the plain functions
//! underneath are what the native tests exercise.

use serde::Serialize;
use unigraph::bounds::bound_report;
use unigraph::constructor::{build, BuildConfig, Mode};
use unigraph::domination::DominationParams;
use unigraph::io::to_graph6;
use unigraph::random_models::domination_threshold_ok;
use wasm_bindgen::prelude::*;

/// Largest order the page will construct; verification runs on the main
/// thread.
pub const MAX_DEMO_N: usize = 48;

#[derive(Serialize)]
struct CurvePoint {
    m: String,
    regime: String,
    lower_fraction: f64,
    upper_fraction: f64,
}

/// Bounds on `g(n, m) / C(n, 2)` at `points` log-spaced `m` in `[1, C(n,2)]`.
pub fn bounds_curve_json(n: u64, epsilon: f64, points: usize) -> Result<String, String> {
    if n < 2 || points < 2 {
        return Err("need n >= 2 and at least 2 points".into());
    }
    let total = n as u128 * (n as u128 - 1) / 2;
    let mut ms: Vec<u128> = (0..points)
        .map(|i| (total as f64).powf(i as f64 / (points - 1) as f64).round() as u128)
        .map(|m| m.clamp(1, total))
        .collect();
    ms.dedup();
    let curve = ms
        .into_iter()
        .map(|m| {
            let r = bound_report(n, m, epsilon).map_err(|e| e.to_string())?;
            Ok(CurvePoint {
                m: m.to_string(),
                regime: r.regime.to_string(),
                lower_fraction: r.lower_fraction(),
                upper_fraction: r.upper_fraction(),
            })
        })
        .collect::<Result<Vec<_>, String>>()?;
    serde_json::to_string(&curve).map_err(|e| e.to_string())
}

/// Whether `3 ln n <= p^s min(r/s, t)`, with both sides for display.
pub fn threshold_json(n: usize, p: f64, r: usize, s: usize, t: usize) -> Result<String, String> {
    let d = DominationParams::new(r, s, t).map_err(|e| e.to_string())?;
    if !(p > 0.0 && p <= 1.0) {
        return Err("p must lie in (0, 1]".into());
    }
    let lhs = 3.0 * (n.max(1) as f64).ln();
    let rhs = p.powi(s as i32) * (r as f64 / s as f64).min(t as f64);
    let out = serde_json::json!({
        "holds": domination_threshold_ok(n, p, d),
        "lhs": lhs,
        "rhs": rhs,
        "footprint": d.footprint(),
    });
    Ok(out.to_string())
}

/// Builds and verifies a scaled or paper-mode construction.
pub fn construct_json(n: usize, m: usize, seed: u64, scaled: bool) -> Result<String, String> {
    if n == 0 || n > MAX_DEMO_N {
        return Err(format!("n must be in 1..={MAX_DEMO_N}"));
    }
    let mode = if scaled { Mode::Scaled } else { Mode::Paper };
    let mut cfg = BuildConfig::new(mode, 0.25, seed);
    cfg.verify_samples = 200;
    cfg.exhaustive_max_n = 7;
    let r = build(n, m, &cfg).map_err(|e| e.to_string())?;
    let v = r.verification.as_ref();
    let out = serde_json::json!({
        "regime": r.regime.to_string(),
        "edges": r.edge_count,
        "missing_edges": r.missing_edges,
        "feasible": r.feasible,
        "reason": r.reason,
        "cert": r.cert.to_string(),
        "verified": v.map(|v| v.verdict),
        "method": v.map(|v| v.method.clone()),
        "notes": r.notes,
        "graph6": to_graph6(&r.graph),
        "edge_list": r.graph.edges().collect::<Vec<_>>(),
    });
    Ok(out.to_string())
}

#[wasm_bindgen]
pub fn bounds_curve(n: u32, epsilon: f64, points: u32) -> Result<String, JsError> {
    bounds_curve_json(n as u64, epsilon, points as usize).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn threshold(n: u32, p: f64, r: u32, s: u32, t: u32) -> Result<String, JsError> {
    threshold_json(n as usize, p, r as usize, s as usize, t as usize).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn construct(n: u32, m: u32, seed: u32, scaled: bool) -> Result<String, JsError> {
    construct_json(n as usize, m as usize, seed as u64, scaled).map_err(|e| JsError::new(&e))
}
