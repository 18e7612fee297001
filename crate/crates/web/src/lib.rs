//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Every export returns plain text so the page can drop it into a `<pre>`.

use cutface::bounds::bounds_row;
use cutface::certificate::{sha256_hex, Certificate};
use cutface::corpus::{lookup, CORPUS};
use cutface::surgery::run_surgery;
use cutface::RotationSystem;
use wasm_bindgen::prelude::*;

const HANDLE_FIXTURE: &str = include_str!("../../core/fixtures/handle_s2.txt");

/// Names of the built-in corpus embeddings, newline separated.
#[wasm_bindgen]
pub fn corpus_names() -> String {
    CORPUS.iter().map(|e| e.name).collect::<Vec<_>>().join("\n")
}

/// Text of a corpus embedding, or an empty string for an unknown name.
#[wasm_bindgen]
pub fn corpus_text(name: &str) -> String {
    lookup(name).map(|e| e.text.to_string()).unwrap_or_default()
}

/// Certificate for a rotation system given in the text format.
#[wasm_bindgen]
pub fn verify_text(text: &str) -> Result<String, JsError> {
    Ok(Certificate::from_text(text).map_err(|e| JsError::new(&e.to_string()))?.to_string())
}

/// The bounds table for `lo..=hi`, one row per line.
#[wasm_bindgen]
pub fn bounds_table(lo: u32, hi: u32) -> Result<String, JsError> {
    if lo > hi || hi - lo > 10_000 {
        return Err(JsError::new("range must be nonempty and at most 10000 rows"));
    }
    let mut out = String::from("c genus_K(c+1) delta1_lower delta2_lower feasible_18gon\n");
    for c in lo..=hi {
        let row = bounds_row(c).map_err(|e| JsError::new(&e.to_string()))?;
        let flag = if row.feasible_18gon { "yes" } else { "no" };
        out += &format!("{} {} {} {} {flag}\n", row.c, row.genus_complete, row.delta1_lower, row.delta2_lower);
    }
    Ok(out)
}

/// Text of the bundled handle fixture, an embedding of K29 minus an edge.
#[wasm_bindgen]
pub fn handle_fixture() -> String {
    HANDLE_FIXTURE.to_string()
}

/// Runs the handle surgery and returns the certificate of the result.
#[wasm_bindgen]
pub fn surgery_text(text: &str) -> Result<String, JsError> {
    let rs = RotationSystem::parse(text).map_err(|e| JsError::new(&e.to_string()))?;
    let report = run_surgery(&rs).map_err(|e| JsError::new(&e.to_string()))?;
    let cert = Certificate::for_embedding(sha256_hex(text.as_bytes()), report.final_embedding())
        .map_err(|e| JsError::new(&e.to_string()))?
        .with_surgery(&report);
    Ok(cert.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_exposed() {
        assert_eq!(corpus_names().lines().count(), 6);
        let cert = verify_text(&corpus_text("K11")).unwrap();
        assert!(cert.contains("genus: 7\n"));
        assert!(corpus_text("K12").is_empty());
    }

    #[test]
    fn bounds_rows() {
        let table = bounds_table(16, 16).unwrap();
        assert!(table.lines().any(|l| l == "16 16 18 17 yes"));
    }

    #[test]
    fn surgery_on_the_fixture() {
        let cert = surgery_text(&handle_fixture()).unwrap();
        assert!(cert.contains("face_census: 3^262 4^2 18^1"));
        assert!(cert.contains("optimal: yes"));
    }
}
