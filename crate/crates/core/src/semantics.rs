//! Word-vector spaces and centroid similarity distributions.
//!
//! Vector files are plain text, one `<lemma> <v1> ... <vd>` row per line,
//! optionally preceded by a `<rows> <dims>` header line.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::path::Path;

use thiserror::Error;
use unicode_normalization::UnicodeNormalization;

#[derive(Debug, Error)]
pub enum SemanticsError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Load { line: usize, message: String },
    #[error("vector dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("cosine similarity is undefined for a zero vector")]
    ZeroVector,
    #[error("centroid of an empty vector list")]
    EmptyCentroid,
    #[error("centroid is the zero vector")]
    DegenerateCentroid,
    #[error("only {included} in-vocabulary lemma(s); at least 2 are needed")]
    InsufficientData { included: usize },
}

#[derive(Debug, Clone, Default)]
pub struct VectorSpace {
    dimension: usize,
    vectors: HashMap<String, Vec<f64>>,
    /// Rows whose lemma had already been seen (the later row wins).
    pub duplicate_rows: usize,
}

impl VectorSpace {
    /// Builds a space from in-memory rows, with the same checks as loading.
    pub fn from_rows<I, S>(rows: I) -> Result<VectorSpace, SemanticsError>
    where
        I: IntoIterator<Item = (S, Vec<f64>)>,
        S: AsRef<str>,
    {
        let mut space = VectorSpace::default();
        for (i, (lemma, v)) in rows.into_iter().enumerate() {
            space.insert(i + 1, lemma.as_ref(), v)?;
        }
        Ok(space)
    }

    fn insert(&mut self, line: usize, lemma: &str, v: Vec<f64>) -> Result<(), SemanticsError> {
        let err = |message: String| SemanticsError::Load { line, message };
        if v.is_empty() {
            return Err(err("row has no components".into()));
        }
        if self.dimension == 0 {
            self.dimension = v.len();
        } else if v.len() != self.dimension {
            return Err(err(format!(
                "expected {} components, found {}",
                self.dimension,
                v.len()
            )));
        }
        if v.iter().any(|x| !x.is_finite()) {
            return Err(err("non-finite component".into()));
        }
        let key: String = lemma.nfc().collect();
        if self.vectors.insert(key, v).is_some() {
            self.duplicate_rows += 1;
        }
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn get(&self, lemma: &str) -> Option<&[f64]> {
        match self.vectors.get(lemma) {
            Some(v) => Some(v),
            None => {
                let nfc: String = lemma.nfc().collect();
                self.vectors.get(&nfc).map(Vec::as_slice)
            }
        }
    }
}

fn parse_header(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace();
    let rows = it.next()?.parse().ok()?;
    let dims = it.next()?.parse().ok()?;
    it.next().is_none().then_some((rows, dims))
}

pub fn load_vector_space_str(text: &str) -> Result<VectorSpace, SemanticsError> {
    let mut space = VectorSpace::default();
    let mut header: Option<(usize, usize)> = None;
    let mut rows = 0usize;
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        if rows == 0 && header.is_none() {
            if let Some(h) = parse_header(line) {
                if h.1 == 0 {
                    return Err(SemanticsError::Load {
                        line: line_no,
                        message: "header declares zero dimensions".into(),
                    });
                }
                header = Some(h);
                space.dimension = h.1;
                continue;
            }
        }
        let mut tokens = line.split_whitespace();
        let lemma = tokens.next().unwrap_or_default();
        let v = tokens
            .map(|t| t.parse::<f64>())
            .collect::<Result<Vec<f64>, _>>()
            .map_err(|e| SemanticsError::Load {
                line: line_no,
                message: format!("non-numeric component: {e}"),
            })?;
        space.insert(line_no, lemma, v)?;
        rows += 1;
    }
    if let Some((expected, _)) = header {
        if expected != rows {
            return Err(SemanticsError::Load {
                line: 1,
                message: format!("header declares {expected} rows, file has {rows}"),
            });
        }
    }
    Ok(space)
}

pub fn load_vector_space(path: &Path) -> Result<VectorSpace, SemanticsError> {
    load_vector_space_str(&std::fs::read_to_string(path)?)
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// dot(u, v) / (|u| |v|), clamped to [-1, 1].
pub fn cosine_similarity(u: &[f64], v: &[f64]) -> Result<f64, SemanticsError> {
    if u.len() != v.len() {
        return Err(SemanticsError::DimensionMismatch(u.len(), v.len()));
    }
    let (nu, nv) = (norm(u), norm(v));
    if nu == 0.0 || nv == 0.0 {
        return Err(SemanticsError::ZeroVector);
    }
    let dot: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
    Ok((dot / (nu * nv)).clamp(-1.0, 1.0))
}

/// Mean of the unit-normalized inputs.
pub fn centroid(vectors: &[&[f64]]) -> Result<Vec<f64>, SemanticsError> {
    let first = vectors.first().ok_or(SemanticsError::EmptyCentroid)?;
    let dim = first.len();
    let mut sum = vec![0.0; dim];
    for v in vectors {
        if v.len() != dim {
            return Err(SemanticsError::DimensionMismatch(dim, v.len()));
        }
        let n = norm(v);
        if n == 0.0 {
            return Err(SemanticsError::ZeroVector);
        }
        for (s, x) in sum.iter_mut().zip(v.iter()) {
            *s += x / n;
        }
    }
    let k = vectors.len() as f64;
    sum.iter_mut().for_each(|s| *s /= k);
    // Unit inputs: a centroid this short means they cancelled out.
    if norm(&sum) < 1e-12 {
        return Err(SemanticsError::DegenerateCentroid);
    }
    Ok(sum)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    Formulaic,
    Baseline,
}

impl Group {
    pub fn name(self) -> &'static str {
        match self {
            Group::Formulaic => "formulaic",
            Group::Baseline => "baseline",
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityDistribution {
    pub verb: String,
    pub group: Group,
    pub similarities: Vec<f64>,
    pub included_lemmas: Vec<String>,
    pub oov_lemmas: Vec<String>,
}

impl SimilarityDistribution {
    /// Cosine distances, 1 - similarity.
    pub fn distances(&self) -> Vec<f64> {
        self.similarities.iter().map(|s| 1.0 - s).collect()
    }
}

/// Cosine similarity of every in-vocabulary lemma to the centroid of the
/// in-vocabulary set. Repeated lemmas count once.
pub fn centroid_similarities(
    lemmas: &[String],
    space: &VectorSpace,
    verb: &str,
    group: Group,
) -> Result<SimilarityDistribution, SemanticsError> {
    let mut seen = HashSet::new();
    let mut included = Vec::new();
    let mut oov = Vec::new();
    let mut vectors: Vec<&[f64]> = Vec::new();
    for lemma in lemmas {
        if !seen.insert(lemma.as_str()) {
            continue;
        }
        match space.get(lemma) {
            Some(v) => {
                included.push(lemma.clone());
                vectors.push(v);
            }
            None => oov.push(lemma.clone()),
        }
    }
    if included.len() < 2 {
        return Err(SemanticsError::InsufficientData {
            included: included.len(),
        });
    }
    let c = centroid(&vectors)?;
    let similarities = vectors
        .iter()
        .map(|v| cosine_similarity(v, &c))
        .collect::<Result<Vec<f64>, _>>()?;
    Ok(SimilarityDistribution {
        verb: verb.to_string(),
        group,
        similarities,
        included_lemmas: included,
        oov_lemmas: oov,
    })
}

/// `verb group lemma similarity` rows with a header line.
pub fn distributions_tsv(distributions: &[SimilarityDistribution]) -> String {
    let mut out = String::from("verb\tgroup\tlemma\tsimilarity\n");
    for d in distributions {
        for (lemma, s) in d.included_lemmas.iter().zip(&d.similarities) {
            out.push_str(&format!("{}\t{}\t{}\t{}\n", d.verb, d.group, lemma, s));
        }
    }
    out
}
