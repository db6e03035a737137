//! Browser bindings for the valency toolkit. Each export takes and returns
//! plain strings; the `*_text` functions hold the logic and also run
//! natively.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use valency::frames::{extract_entries, ExtractOptions};
use valency::lexicon::{write_lexicon, Layout, Lexicon};
use valency::stats::{boxplot_stats, ks_two_sample, significance_stars, BoxplotStats, KsMethod};
use valency::treebank::{beta_to_unicode, parse_treebank_file, DocumentMeta};

/// Transcodes each line separately; a failing line becomes an error
/// message prefixed with `!`.
pub fn transcode_text(input: &str) -> String {
    input
        .lines()
        .map(|line| match beta_to_unicode(line) {
            Ok(greek) => greek,
            Err(e) => format!("! {e}"),
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// Parses one treebank document and returns its lexicon rows as TSV.
/// `author` and `title` are used when the document has no header.
pub fn extract_text(
    xml: &str,
    author: &str,
    title: &str,
    include_participles: bool,
) -> Result<String, String> {
    let fallback = DocumentMeta::new(author, title);
    let parsed = parse_treebank_file(xml.as_bytes(), Some(&fallback)).map_err(|e| e.to_string())?;
    let extraction = extract_entries(
        &parsed.sentences,
        ExtractOptions {
            include_participles,
        },
    );
    let mut buf = Vec::new();
    write_lexicon(&Lexicon::new(extraction.entries), &mut buf, Layout::Full)
        .map_err(|e| e.to_string())?;
    String::from_utf8(buf).map_err(|e| e.to_string())
}

#[derive(Debug, Serialize)]
struct Boxplot {
    n: usize,
    min_whisker: f64,
    q1: f64,
    median: f64,
    q3: f64,
    max_whisker: f64,
    outliers: Vec<f64>,
}

impl Boxplot {
    fn new(n: usize, b: BoxplotStats) -> Boxplot {
        Boxplot {
            n,
            min_whisker: b.min_whisker,
            q1: b.q1,
            median: b.median,
            q3: b.q3,
            max_whisker: b.max_whisker,
            outliers: b.outliers,
        }
    }
}

#[derive(Debug, Serialize)]
struct Comparison {
    d: f64,
    p_value: f64,
    method: &'static str,
    stars: &'static str,
    a: Boxplot,
    b: Boxplot,
}

/// Numbers separated by commas, semicolons or whitespace.
pub fn parse_numbers(text: &str) -> Result<Vec<f64>, String> {
    text.split(|c: char| c == ',' || c == ';' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().map_err(|_| format!("not a number: {t:?}")))
        .collect()
}

/// KS test and box-plot summaries of two samples, as JSON.
pub fn compare_text(a: &str, b: &str, method: &str) -> Result<String, String> {
    let method = match method {
        "exact" => KsMethod::Exact,
        "asymptotic" => KsMethod::Asymptotic,
        other => return Err(format!("unknown method {other:?}")),
    };
    let (a, b) = (parse_numbers(a)?, parse_numbers(b)?);
    let ks = ks_two_sample(&a, &b, method).map_err(|e| e.to_string())?;
    let comparison = Comparison {
        d: ks.d_statistic,
        p_value: ks.p_value,
        method: ks.method.name(),
        stars: significance_stars(ks.p_value).map_err(|e| e.to_string())?,
        a: Boxplot::new(a.len(), boxplot_stats(&a).map_err(|e| e.to_string())?),
        b: Boxplot::new(b.len(), boxplot_stats(&b).map_err(|e| e.to_string())?),
    };
    serde_json::to_string(&comparison).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn transcode(input: &str) -> String {
    transcode_text(input)
}

#[wasm_bindgen]
pub fn extract_frames(
    xml: &str,
    author: &str,
    title: &str,
    include_participles: bool,
) -> Result<String, JsValue> {
    extract_text(xml, author, title, include_participles).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn compare_samples(a: &str, b: &str, method: &str) -> Result<String, JsValue> {
    compare_text(a, b, method).map_err(|e| JsValue::from_str(&e))
}
