//! Browser bindings. Every function returns a JSON string, or throws a
//! string error.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use singmon_core::mckay::{self, RootLabel};
use singmon_core::seifert::{self, WeightSystem};
use singmon_core::{monodromy, FrameShape};

fn fail(e: impl std::fmt::Display) -> JsValue {
    JsValue::from_str(&e.to_string())
}

fn shape_json(s: &FrameShape) -> Value {
    let poly = s.to_polynomial().ok().map(|p| p.to_string());
    json!({ "shape": s.to_string(), "chi": s.to_json()["chi"], "degree": s.degree(), "polynomial": poly })
}

fn parse_list(s: &str) -> Result<Vec<u64>, JsValue> {
    s.split(',')
        .map(|x| x.trim().parse::<u64>().map_err(|_| fail(format!("not a positive integer: {x:?}"))))
        .collect()
}

/// Saito dual of a frame shape at level `h`; `h = 0` uses the lcm of the support.
#[wasm_bindgen]
pub fn saito_dual(shape: &str, level: u32) -> Result<String, JsValue> {
    let s: FrameShape = shape.parse().map_err(fail)?;
    let dual = if level == 0 { s.saito_dual_auto() } else { s.saito_dual(level as u64).map_err(fail)? };
    Ok(json!({ "input": shape_json(&s), "dual": shape_json(&dual) }).to_string())
}

/// Poincaré series and the duality check for a weight system such as
/// `weights = "6,10,15"`, `degrees = "30"`.
#[wasm_bindgen]
pub fn weight_system(weights: &str, degrees: &str, terms: u32) -> Result<String, JsValue> {
    let ws = WeightSystem::new(parse_list(weights)?, parse_list(degrees)?).map_err(fail)?;
    let p = ws.poincare_series();
    let series: Vec<String> = p.expand_series(terms as usize).coeffs().iter().map(|c| c.to_string()).collect();
    let mut out = json!({ "p": shape_json(&p), "series": series, "R": ws.exponent() });
    if let Some((q, d)) = ws.as_hypersurface() {
        let data = seifert::hypersurface_data(q, d).map_err(fail)?;
        let rep = monodromy::theorem1_verify(q, d).map_err(fail)?;
        out["genus"] = json!(data.genus);
        out["alphas"] = json!(data.alphas);
        out["psi"] = shape_json(&data.bundle.psi);
        out["phi"] = shape_json(&data.bundle.phi);
        out["phi_tilde"] = shape_json(&data.bundle.phi_tilde);
        out["dual"] = shape_json(&rep.dual);
        out["monodromy"] = shape_json(&rep.charpoly);
        out["holds"] = json!(rep.holds);
    }
    Ok(out.to_string())
}

/// Coxeter data and the McKay series for a root system label (`E8`, `D5`, ...).
#[wasm_bindgen]
pub fn mckay(root: &str, terms: u32) -> Result<String, JsValue> {
    let label: RootLabel = root.parse().map_err(fail)?;
    let spec = mckay::build_root_system(label).map_err(fail)?;
    let coxeter = mckay::coxeter_charpoly(&spec).map_err(fail)?;
    let affine = mckay::affine_coxeter_charpoly(&spec).ok();
    let series: Vec<i64> = mckay::pg_series(&spec, terms as usize).iter().map(|v| v[0]).collect();
    let dims = mckay::kac_dims(&spec).map_err(fail)?;
    Ok(json!({
        "root": label.to_string(),
        "mckay_matrix": spec.mckay,
        "dims": dims,
        "coxeter": shape_json(&coxeter),
        "affine": affine.as_ref().map(shape_json),
        "quotient": affine.as_ref().map(|a| shape_json(&coxeter.div(a))),
        "series": series,
    })
    .to_string())
}
