//! Browser bindings. Each export takes plain strings and numbers and
//! returns a JSON string; failures surface as a JavaScript `Error`.

use polyaut::algebra::parse_scalar;
use polyaut::derivations::{nagata_derivation, nagata_map, DEFAULT_LND_BOUND};
use polyaut::ffperm::{fiberwise_experiment, parity_experiment, DEFAULT_MAX_DEGREE, DEFAULT_WORD_LENGTH};
use polyaut::fixedspace::{eigenspace_basis, fixed_dimension_profile};
use polyaut::linearize::{build_shift_linearization, l_b};
use polyaut::{Field, PolyMap, PolyRing, Result};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Most samples one call may request, to keep the page responsive.
pub const MAX_SAMPLES: usize = 2000;

fn strings<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(ToString::to_string).collect()
}

/// `N`, `L2N`, `2N`, or a literal `(f1, f2, f3)` in X, Y, Z.
fn map3(field: &Field, text: &str) -> Result<PolyMap> {
    let one = field.one();
    let ring = PolyRing::new(field.clone(), 3);
    match text.trim() {
        "N" => nagata_map(field, &one),
        "L2N" => l_b(field, &field.from_i64(2))?.endo_product(&nagata_map(field, &one)?),
        "2N" => {
            let two = field.from_i64(2);
            PolyMap::diagonal(&ring, &[two.clone(), two.clone(), two])?.endo_product(&nagata_map(field, &one)?)
        }
        t => PolyMap::parse(&ring, t),
    }
}

pub fn shift_linearize_json(field: &str, map: &str, lambda: &str) -> Result<String> {
    let field = Field::from_name(field)?;
    let l = map3(&field, map)?;
    let d = nagata_derivation(&field)?;
    let lam = parse_scalar(&field, lambda)?;
    let rep = build_shift_linearization(&l, &d, &lam, DEFAULT_LND_BOUND)?;
    Ok(json!({
        "map": l.to_string(),
        "derivation": d.to_string(),
        "conjugationScalar": field.format(&rep.conjugation_scalar),
        "conjugator": rep.conjugator.as_ref().map(|m| field.format(m)),
        "shiftedMap": rep.shifted_map.to_string(),
        "conjugatedMap": rep.conjugated_map.as_ref().map(ToString::to_string),
        "verified": rep.verified,
        "degenerate": rep.degenerate,
    })
    .to_string())
}

pub fn fixed_space_profile_json(field: &str, map: &str, dmax: u32) -> Result<String> {
    let field = Field::from_name(field)?;
    let f = map3(&field, map)?;
    let profile = fixed_dimension_profile(&f, dmax)?;
    let basis = eigenspace_basis(&f, &field.one(), dmax)?.basis;
    Ok(json!({
        "map": f.to_string(),
        "profile": profile,
        "basis": strings(&basis),
    })
    .to_string())
}

pub fn parity_experiment_json(q: u32, n: usize, samples: usize, seed: u64, fiberwise: bool) -> Result<String> {
    if samples > MAX_SAMPLES {
        return Err(polyaut::Error::InvalidArgument(format!(
            "at most {MAX_SAMPLES} samples"
        )));
    }
    let field = Field::finite(q)?;
    let rep = if fiberwise {
        fiberwise_experiment(&field, samples, seed, DEFAULT_WORD_LENGTH, DEFAULT_MAX_DEGREE)?
    } else {
        parity_experiment(&field, n, samples, seed, DEFAULT_WORD_LENGTH, DEFAULT_MAX_DEGREE)?
    };
    Ok(json!({
        "q": rep.q,
        "n": rep.n,
        "samples": rep.samples,
        "seed": rep.seed,
        "evenCount": rep.even,
        "oddCount": rep.odd,
        "witnesses": rep.odd_witnesses,
        "flagged": rep.contradicts_even_expectation(),
    })
    .to_string())
}

fn to_js(r: Result<String>) -> std::result::Result<String, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn shift_linearize(field: &str, map: &str, lambda: &str) -> std::result::Result<String, JsError> {
    to_js(shift_linearize_json(field, map, lambda))
}

#[wasm_bindgen]
pub fn fixed_space_profile(field: &str, map: &str, dmax: u32) -> std::result::Result<String, JsError> {
    to_js(fixed_space_profile_json(field, map, dmax))
}

#[wasm_bindgen]
pub fn parity(q: u32, n: u32, samples: u32, seed: u32, fiberwise: bool) -> std::result::Result<String, JsError> {
    to_js(parity_experiment_json(
        q,
        n as usize,
        samples as usize,
        seed.into(),
        fiberwise,
    ))
}
