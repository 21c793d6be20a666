//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each exported function is a thin wrapper over a plain Rust function that
//! returns `Result<_, String>`, so the logic is testable without a browser.

use liouville::asymptotics::{charge_system_from_roots, potential_numeric, scaling_limit_table};
use liouville::parse::parse_rational;
use liouville::{integrate_via_coefficients, integrate_via_pfd, Rat, RootConfig};
use num_complex::Complex64;
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest truncation the page will request; keeps rational sizes sane.
const MAX_TERMS: usize = 64;
const MAX_GRID: usize = 512;

fn parse_list(text: &str) -> Result<Vec<Rat>, String> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_rational(s).map_err(|e| format!("{s:?}: {e}")))
        .collect()
}

fn config(roots: &str) -> Result<RootConfig, String> {
    RootConfig::new(parse_list(roots)?).map_err(|e| e.to_string())
}

/// Coefficient table for `g = ∫ dz / (z Π(z - a_j))` from both construction paths.
pub fn integrate_table(roots: &str, terms: usize) -> Result<String, String> {
    let cfg = config(roots)?;
    let q = cfg.q();
    if terms < q + 2 || terms > MAX_TERMS {
        return Err(format!("terms must lie in {}..={MAX_TERMS} for q = {q}", q + 2));
    }
    let n = terms - 1;
    let coeffs = integrate_via_coefficients(&cfg, n).map_err(|e| e.to_string())?;
    let pfd = integrate_via_pfd(&cfg, n).map_err(|e| e.to_string())?;
    let rows: Vec<_> = (0..=n)
        .map(|k| {
            let b = coeffs.series.coeff(k).expect("within truncation");
            json!({
                "n": k,
                "value": b.to_pq_string(),
                "pfd": pfd.series.coeff(k).expect("within truncation").to_pq_string(),
                "closed_form": k.checked_sub(q).map(|l| coeffs.closed_form[l].to_pq_string()),
                "approx": b.to_f64(),
            })
        })
        .collect();
    Ok(json!({
        "q": q,
        "denominator": cfg.denominator().to_string(),
        "valuation": coeffs.valuation.finite(),
        "paths_agree": coeffs.series == pfd.series,
        "rows": rows,
    })
    .to_string())
}

/// Sup-error of `g_t` against `-1/(q z^q)` on a circle, per scale `t`.
pub fn scaling_curve(roots: &str, scales: &str, radius: f64, samples: usize, truncation: usize) -> Result<String, String> {
    let cfg = config(roots)?;
    let scales = parse_list(scales)?;
    if truncation > MAX_TERMS {
        return Err(format!("truncation must be at most {MAX_TERMS}"));
    }
    let report = scaling_limit_table(&cfg, &scales, radius, samples, truncation).map_err(|e| e.to_string())?;
    let rows: Vec<_> = report
        .rows
        .iter()
        .map(|r| {
            json!({
                "t": r.t.to_pq_string(),
                "t_value": r.t.to_f64(),
                "sup_error": r.sup_error,
                "ratio": r.ratio_to_previous,
                "ratio_in_band": r.ratio_in_band,
                "exact_ok": r.leading_ok && r.scaling_ok,
            })
        })
        .collect();
    Ok(json!({
        "q": report.q,
        "monotone_decreasing": report.monotone_decreasing,
        "rows": rows,
    })
    .to_string())
}

/// `Re Σ m_j log(z - p_j)` over a `width × height` grid on `[-extent, extent]²`,
/// row-major from the top-left. Points on a charge are `NaN`.
pub fn potential_field(roots: &str, scale: f64, extent: f64, width: usize, height: usize) -> Result<Vec<f64>, String> {
    if scale.is_nan() || scale <= 0.0 || extent.is_nan() || extent <= 0.0 {
        return Err("scale and extent must be positive".into());
    }
    if width == 0 || height == 0 || width > MAX_GRID || height > MAX_GRID {
        return Err(format!("grid dimensions must lie in 1..={MAX_GRID}"));
    }
    let cfg = config(roots)?;
    // Q_t(z) = t^(q+1) Q(z/t), so Q_t'(t p) = t^q Q'(p).
    let weight = scale.powi(-(cfg.q() as i32));
    let mut system = charge_system_from_roots(&cfg).to_numeric();
    for c in &mut system.charges {
        c.location *= scale;
        c.magnitude *= weight;
    }
    let step = |i: usize, n: usize| if n == 1 { 0.0 } else { -extent + 2.0 * extent * i as f64 / (n - 1) as f64 };
    let mut out = Vec::with_capacity(width * height);
    for row in 0..height {
        let y = -step(row, height);
        for col in 0..width {
            let z = Complex64::new(step(col, width), y);
            out.push(potential_numeric(&system, z).map_or(f64::NAN, |v| v.re));
        }
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn integrate(roots: &str, terms: usize) -> Result<String, JsValue> {
    integrate_table(roots, terms).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn scaling(roots: &str, scales: &str, radius: f64, samples: usize, truncation: usize) -> Result<String, JsValue> {
    scaling_curve(roots, scales, radius, samples, truncation).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn potential(roots: &str, scale: f64, extent: f64, width: usize, height: usize) -> Result<Vec<f64>, JsValue> {
    potential_field(roots, scale, extent, width, height).map_err(|e| JsValue::from_str(&e))
}
