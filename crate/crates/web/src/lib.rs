//! Browser bindings: greedy prefixes in columns, a recurrence difference
//! explorer, and iteration of the 6-uniform morphism.

use lexfree::format::render_columns;
use lexfree::greedy::generate;
use lexfree::morphic::{apply_tau, PHI};
use lexfree::word::with_subscripts;
use lexfree::{Error, FracExponent, Result};
use wasm_bindgen::prelude::*;

/// Longest prefix the page will generate.
pub const MAX_LETTERS: usize = 200_000;

fn js(e: Error) -> JsValue {
    JsValue::from_str(&e.to_string())
}

fn checked_len(n: usize) -> Result<usize> {
    if n > MAX_LETTERS {
        return Err(Error::Unsupported(format!("at most {MAX_LETTERS} letters, asked for {n}")));
    }
    Ok(n)
}

/// The greedy prefix of `w_{a/b}` as rows of `k` letters.
pub fn prefix_columns(a: u32, b: u32, length: usize, k: usize) -> Result<String> {
    let w = generate(FracExponent::new(a, b)?, checked_len(length)?);
    render_columns(&w, k)
}

/// One line per `i < count`: `i`, `w(k i + r)`, `w(i + s)` and their difference.
pub fn recurrence_differences(a: u32, b: u32, k: u64, r: u64, s: u64, count: u64) -> Result<String> {
    if k == 0 || count == 0 {
        return Err(Error::Unsupported("k and count must be positive".into()));
    }
    let need = (k * (count - 1) + r + 1).max(count + s);
    let w = generate(FracExponent::new(a, b)?, checked_len(need as usize)?);
    let mut out = String::new();
    for i in 0..count {
        let (lhs, rhs) = (w[(k * i + r) as usize] as i64, w[(i + s) as usize] as i64);
        out.push_str(&format!("{i}\t{lhs}\t{rhs}\t{}\n", lhs - rhs));
    }
    Ok(out)
}

/// `steps` images of the seed (whitespace-separated values whose first
/// letter has subscript `start`), each line the coding of one iterate.
pub fn phi_iterates(seed: &str, start: u8, steps: u32) -> Result<String> {
    if start >= 8 {
        return Err(Error::InvalidSubscript(start as i64));
    }
    let values = seed
        .split_whitespace()
        .map(|t| t.parse::<i32>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    let mut w = with_subscripts(&values, start);
    let mut out = String::new();
    for _ in 0..=steps {
        checked_len(w.len())?;
        let line: Vec<String> = apply_tau(&w).iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
        w = PHI.apply(&w);
    }
    Ok(out)
}

#[wasm_bindgen(js_name = prefixColumns)]
pub fn prefix_columns_js(a: u32, b: u32, length: usize, k: usize) -> std::result::Result<String, JsValue> {
    prefix_columns(a, b, length, k).map_err(js)
}

#[wasm_bindgen(js_name = recurrenceDifferences)]
pub fn recurrence_differences_js(
    a: u32,
    b: u32,
    k: u64,
    r: u64,
    s: u64,
    count: u64,
) -> std::result::Result<String, JsValue> {
    recurrence_differences(a, b, k, r, s, count).map_err(js)
}

#[wasm_bindgen(js_name = phiIterates)]
pub fn phi_iterates_js(seed: &str, start: u8, steps: u32) -> std::result::Result<String, JsValue> {
    phi_iterates(seed, start, steps).map_err(js)
}
