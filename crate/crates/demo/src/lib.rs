//! WebAssembly bindings for the static demo page. Every export takes JSON
//! text and returns JSON text; the `*_json` functions hold the logic and are
//! usable natively.

use dcomplete::dcomplete::{BuilderSpec, FilterSpec};
use dcomplete::excitation::{enumerate_excited, enumerate_k_excited};
use dcomplete::genfun::{naruse_count, q_specialize, rhs_rational, verify_main_theorem};
use dcomplete::{ColoredPoset, ElemSet, Filter};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest degree cap accepted by [`verify_json`].
pub const MAX_DEGREE: u32 = 10;

fn load(poset: &str) -> Result<ColoredPoset, String> {
    let spec = BuilderSpec::from_json_str(poset).map_err(|e| format!("poset spec: {e}"))?;
    spec.build().map_err(|e| e.to_string())
}

fn filter(cp: &ColoredPoset, filter: &str) -> Result<Filter, String> {
    if filter.trim().is_empty() {
        return Ok(Filter::new(cp.poset(), ElemSet::EMPTY).expect("empty set is a filter"));
    }
    FilterSpec::from_json_str(filter)
        .and_then(|f| f.resolve(cp))
        .map_err(|e| e.to_string())
}

/// Element names, grid cells (when present) and color names, for drawing.
fn layout(cp: &ColoredPoset) -> Value {
    let p = cp.poset();
    json!({
        "names": (0..cp.len()).map(|x| p.element_name(x)).collect::<Vec<_>>(),
        "cells": p.labels(),
        "colors": (0..cp.len()).map(|x| cp.color_name(x)).collect::<Vec<_>>(),
        "covers": p.covers(),
    })
}

pub fn excited_json(poset: &str, filter_spec: &str, k_theoretic: bool) -> Result<String, String> {
    let cp = load(poset)?;
    let f = filter(&cp, filter_spec)?;
    let diagrams: Vec<Value> = if k_theoretic {
        enumerate_k_excited(&cp, f)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|e| json!({"diagram": e.diagram, "extra": e.extra, "peaks": []}))
            .collect()
    } else {
        enumerate_excited(&cp, f)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|s| json!({"diagram": s.diagram, "extra": [], "peaks": s.peaks}))
            .collect()
    };
    let out = json!({"layout": layout(&cp), "filter": f.members(), "count": diagrams.len(), "diagrams": diagrams});
    Ok(out.to_string())
}

pub fn hooks_json(poset: &str) -> Result<String, String> {
    let cp = load(poset)?;
    let t = cp.hooks().map_err(|e| e.to_string())?;
    let rows: Vec<Value> = (0..cp.len())
        .map(|x| json!({"monomial": t.monomial(&cp, x), "length": t.length(x)}))
        .collect();
    Ok(
        json!({"layout": layout(&cp), "dynkin": cp.graph().dynkin_type(), "hooks": rows})
            .to_string(),
    )
}

pub fn verify_json(poset: &str, filter_spec: &str, degree: u32) -> Result<String, String> {
    if degree > MAX_DEGREE {
        return Err(format!("degree cap at most {MAX_DEGREE}"));
    }
    let cp = load(poset)?;
    let f = filter(&cp, filter_spec)?;
    let err = |e: dcomplete::genfun::GenfunError| e.to_string();
    let v = verify_main_theorem(&cp, f, degree).map_err(err)?;
    let rhs = rhs_rational(&cp, f).map_err(err)?.reduced();
    let q = q_specialize(&rhs).map_err(err)?.reduced();
    let rest = cp.poset().elements().difference(f.members());
    let direct = cp
        .poset()
        .induced_subposet(rest)
        .0
        .linear_extensions_count();
    let by_hooks = naruse_count(&cp, f).map_err(err)?;
    Ok(json!({
        "layout": layout(&cp),
        "filter": f.members(),
        "degree": degree,
        "terms": v.terms,
        "main_theorem": v.is_ok(),
        "generating_function": rhs.to_text(cp.graph().names()),
        "q_form": q.to_q_text(),
        "linear_extensions": {"direct": direct.to_string(), "by_hooks": by_hooks.to_string()},
        "pass": v.is_ok() && direct == by_hooks,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn excited(poset: &str, filter: &str, k_theoretic: bool) -> Result<String, JsError> {
    excited_json(poset, filter, k_theoretic).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn hooks(poset: &str) -> Result<String, JsError> {
    hooks_json(poset).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn verify(poset: &str, filter: &str, degree: u32) -> Result<String, JsError> {
    verify_json(poset, filter, degree).map_err(|e| JsError::new(&e))
}
