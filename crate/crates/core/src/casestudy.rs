//! Formulaic versus baseline object similarity for transitive verbs.
//!
//! Pipeline: extract verb + accusative-object pairs from the epic works,
//! flag the formulaic ones from a span file, keep verbs with enough
//! formulaic tokens, collect object types on both sides (the baseline side
//! comes from the lexicon), drop verbs with too few types, then compare the
//! two centroid-similarity distributions with a KS test.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::frames::{collect_arguments, identify_predicates, parse_frame, Realization, Relation};
use crate::lexicon::Lexicon;
use crate::semantics::{centroid_similarities, Group, SimilarityDistribution, VectorSpace};
use crate::stats::{
    boxplot_stats, ks_two_sample_with, significance_stars, summarize, BoxplotStats, KsMethod,
    KsOptions, KsResult,
};
use crate::treebank::{validate_sentence, Case, DocumentMeta, SentenceTree};

#[derive(Debug, Error)]
pub enum CaseStudyError {
    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },
    #[error("span file line {line}: {message}")]
    Spans { line: usize, message: String },
}

/// A transitive verb token with a plain accusative direct object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrVObjPair {
    pub verb: String,
    pub object: String,
    pub sentence_id: u64,
    pub verb_token_id: u32,
    pub object_token_id: u32,
    pub work: DocumentMeta,
    pub formulaic: bool,
}

/// Formulaic token ids per sentence.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FormulaSpanSet {
    pub spans: HashMap<u64, HashSet<u32>>,
}

impl FormulaSpanSet {
    pub fn contains(&self, sentence_id: u64, token_id: u32) -> bool {
        self.spans
            .get(&sentence_id)
            .is_some_and(|s| s.contains(&token_id))
    }
}

/// Parses `sentence_id<TAB>id,id,...` lines. Repeated sentences merge.
pub fn parse_formula_spans(text: &str) -> Result<FormulaSpanSet, CaseStudyError> {
    let mut set = FormulaSpanSet::default();
    for (i, line) in text.lines().enumerate() {
        let err = |message: String| CaseStudyError::Spans {
            line: i + 1,
            message,
        };
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let (sid, ids) = line
            .split_once('\t')
            .ok_or_else(|| err("expected sentence_id<TAB>token_ids".into()))?;
        let sid: u64 = sid
            .trim()
            .parse()
            .map_err(|_| err(format!("bad sentence id {sid:?}")))?;
        let entry = set.spans.entry(sid).or_default();
        for tok in ids.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let id: u32 = tok
                .parse()
                .ok()
                .filter(|&id| id > 0)
                .ok_or_else(|| err(format!("bad token id {tok:?}")))?;
            entry.insert(id);
        }
    }
    Ok(set)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KsChoice {
    Fixed(KsMethod),
    /// Exact when n1 + n2 is within the exact limit, asymptotic otherwise.
    Auto,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseStudyConfig {
    pub epic_works: Vec<DocumentMeta>,
    pub baseline_exclusions: Vec<DocumentMeta>,
    pub min_epic_tokens: usize,
    pub min_object_types: usize,
    pub include_participles: bool,
    pub ks_method: KsChoice,
    pub ks_exact_limit: usize,
    pub treebank_dir: Option<PathBuf>,
    pub manifest_path: Option<PathBuf>,
    pub lexicon_path: Option<PathBuf>,
    pub vector_space_path: Option<PathBuf>,
    pub formula_span_path: Option<PathBuf>,
    pub output_dir: Option<PathBuf>,
}

impl Default for CaseStudyConfig {
    fn default() -> Self {
        let w = DocumentMeta::new;
        CaseStudyConfig {
            epic_works: vec![
                w("Homer", "Iliad"),
                w("Homer", "Odyssey"),
                w("Hesiod", "Theogony"),
                w("Hesiod", "Works and Days"),
            ],
            baseline_exclusions: vec![w("Homer", "Iliad"), w("Homer", "Odyssey")],
            min_epic_tokens: 50,
            min_object_types: 10,
            include_participles: true,
            ks_method: KsChoice::Auto,
            ks_exact_limit: KsOptions::default().exact_limit,
            treebank_dir: None,
            manifest_path: None,
            lexicon_path: None,
            vector_space_path: None,
            formula_span_path: None,
            output_dir: None,
        }
    }
}

/// `Author|Title; Author|Title`
fn parse_works(value: &str) -> Result<Vec<DocumentMeta>, String> {
    value
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|w| {
            w.split_once('|')
                .map(|(a, t)| DocumentMeta::new(a.trim(), t.trim()))
                .ok_or_else(|| format!("work {w:?} is not Author|Title"))
        })
        .collect()
}

impl CaseStudyConfig {
    /// Applies one `key = value` setting. Relative paths resolve against
    /// `base`.
    pub fn set(&mut self, key: &str, value: &str, base: &Path) -> Result<(), String> {
        let path = || {
            let p = PathBuf::from(value);
            Some(if p.is_absolute() { p } else { base.join(p) })
        };
        let positive = || -> Result<usize, String> {
            value
                .parse::<usize>()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| format!("{key} must be a positive integer, got {value:?}"))
        };
        match key {
            "epic_works" => self.epic_works = parse_works(value)?,
            "baseline_exclusions" => self.baseline_exclusions = parse_works(value)?,
            "min_epic_tokens" => self.min_epic_tokens = positive()?,
            "min_object_types" => self.min_object_types = positive()?,
            "ks_exact_limit" => self.ks_exact_limit = positive()?,
            "include_participles" => {
                self.include_participles = value.parse().map_err(|_| {
                    format!("include_participles must be true or false, got {value:?}")
                })?
            }
            "ks_method" => {
                self.ks_method = match value {
                    "auto" => KsChoice::Auto,
                    "asymptotic" => KsChoice::Fixed(KsMethod::Asymptotic),
                    "exact" => KsChoice::Fixed(KsMethod::Exact),
                    _ => return Err(format!("unknown ks_method {value:?}")),
                }
            }
            "treebank_dir" => self.treebank_dir = path(),
            "manifest_path" => self.manifest_path = path(),
            "lexicon_path" => self.lexicon_path = path(),
            "vector_space_path" => self.vector_space_path = path(),
            "formula_span_path" => self.formula_span_path = path(),
            "output_dir" => self.output_dir = path(),
            _ => return Err(format!("unknown key {key:?}")),
        }
        Ok(())
    }

    /// Parses `key = value` lines; `#` starts a comment line.
    pub fn parse(text: &str, base: &Path) -> Result<CaseStudyConfig, CaseStudyError> {
        let mut config = CaseStudyConfig::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| CaseStudyError::Config {
                line: i + 1,
                message,
            };
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| err("expected key = value".into()))?;
            config.set(k.trim(), v.trim(), base).map_err(err)?;
        }
        Ok(config)
    }

    /// Resolved settings as ordered key/value pairs (paths excluded).
    pub fn resolved(&self) -> Vec<(String, String)> {
        let works = |ws: &[DocumentMeta]| {
            ws.iter()
                .map(|w| format!("{}|{}", w.author, w.title))
                .collect::<Vec<_>>()
                .join("; ")
        };
        vec![
            ("epic_works".into(), works(&self.epic_works)),
            (
                "baseline_exclusions".into(),
                works(&self.baseline_exclusions),
            ),
            ("min_epic_tokens".into(), self.min_epic_tokens.to_string()),
            ("min_object_types".into(), self.min_object_types.to_string()),
            (
                "include_participles".into(),
                self.include_participles.to_string(),
            ),
            (
                "ks_method".into(),
                match self.ks_method {
                    KsChoice::Auto => "auto".into(),
                    KsChoice::Fixed(m) => m.name().into(),
                },
            ),
            ("ks_exact_limit".into(), self.ks_exact_limit.to_string()),
            ("variance".into(), "sample (n-1)".into()),
        ]
    }
}

fn is_direct_accusative(realization: Realization, has_mediator: bool) -> bool {
    realization == Realization::Case(Case::Accusative) && !has_mediator
}

/// One pair per verb token and unmediated accusative OBJ slot, restricted
/// to the epic works. Invalid trees are skipped.
pub fn extract_trv_obj(
    corpus: &[SentenceTree],
    epic_works: &[DocumentMeta],
    include_participles: bool,
) -> Vec<TrVObjPair> {
    let works: HashSet<&DocumentMeta> = epic_works.iter().collect();
    let mut pairs = Vec::new();
    for tree in corpus {
        let meta = tree.meta();
        if !works.contains(&meta) || !validate_sentence(tree).is_valid() {
            continue;
        }
        for verb in identify_predicates(tree, include_participles) {
            for slot in collect_arguments(tree, verb) {
                if slot.relation == Relation::Obj
                    && is_direct_accusative(slot.realization, slot.mediator.is_some())
                {
                    pairs.push(TrVObjPair {
                        verb: verb.lemma.clone(),
                        object: slot.filler_lemma,
                        sentence_id: tree.sentence_id,
                        verb_token_id: verb.token_id,
                        object_token_id: slot.filler_token_id,
                        work: meta.clone(),
                        formulaic: false,
                    });
                }
            }
        }
    }
    pairs
}

/// A pair is formulaic iff both its verb and its object token are marked.
pub fn mark_formulaic(mut pairs: Vec<TrVObjPair>, spans: &FormulaSpanSet) -> Vec<TrVObjPair> {
    for p in &mut pairs {
        p.formulaic = spans.contains(p.sentence_id, p.verb_token_id)
            && spans.contains(p.sentence_id, p.object_token_id);
    }
    pairs
}

/// Verbs with at least `min_epic_tokens` formulaic pairs, most frequent
/// first (ties by lemma).
pub fn select_verbs(pairs: &[TrVObjPair], min_epic_tokens: usize) -> Vec<(String, usize)> {
    let mut out: Vec<(String, usize)> = formulaic_counts(pairs)
        .into_iter()
        .filter(|&(_, n)| n >= min_epic_tokens)
        .collect();
    out.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    out
}

fn formulaic_counts(pairs: &[TrVObjPair]) -> BTreeMap<String, usize> {
    let mut counts = BTreeMap::new();
    for p in pairs.iter().filter(|p| p.formulaic) {
        *counts.entry(p.verb.clone()).or_insert(0) += 1;
    }
    counts
}

/// Unique object lemmas, sorted.
pub fn object_types<'a, I>(pairs: I) -> Vec<String>
where
    I: IntoIterator<Item = &'a TrVObjPair>,
{
    pairs
        .into_iter()
        .map(|p| p.object.clone())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Unique fillers of unmediated OBJ[accusative] slots of `verb`, leaving
/// out entries from excluded works.
pub fn build_baseline(lexicon: &Lexicon, verb: &str, exclusions: &[DocumentMeta]) -> Vec<String> {
    let excluded: HashSet<(&str, &str)> = exclusions
        .iter()
        .map(|w| (w.author.as_str(), w.title.as_str()))
        .collect();
    let mut out = BTreeSet::new();
    for e in lexicon.verb_entries(verb) {
        if excluded.contains(&(e.author.as_str(), e.title.as_str())) {
            continue;
        }
        let Ok(parsed) = parse_frame(&e.frame_fillers) else {
            continue;
        };
        for el in parsed.elements {
            if el.base_relation() == "OBJ"
                && el.realization == "accusative"
                && el.mediator.is_none()
            {
                if let Some(f) = el.filler {
                    out.insert(f);
                }
            }
        }
    }
    out.into_iter().collect()
}

#[derive(Debug, Clone, PartialEq)]
pub enum DropReason {
    BelowMinEpicTokens { tokens: usize, min: usize },
    TooFewEpicTypes { types: usize, min: usize },
    TooFewBaselineTypes { types: usize, min: usize },
    InsufficientData { group: Group, included: usize },
    DegenerateCentroid { group: Group },
    Statistics { message: String },
}

impl DropReason {
    pub fn code(&self) -> &'static str {
        match self {
            DropReason::BelowMinEpicTokens { .. } => "below_min_epic_tokens",
            DropReason::TooFewEpicTypes { .. } => "too_few_epic_types",
            DropReason::TooFewBaselineTypes { .. } => "too_few_baseline_types",
            DropReason::InsufficientData { .. } => "insufficient_data",
            DropReason::DegenerateCentroid { .. } => "degenerate_centroid",
            DropReason::Statistics { .. } => "statistics_error",
        }
    }
}

impl fmt::Display for DropReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DropReason::BelowMinEpicTokens { tokens, min } => {
                write!(f, "{tokens} formulaic tokens < {min}")
            }
            DropReason::TooFewEpicTypes { types, min } => write!(f, "{types} epic types < {min}"),
            DropReason::TooFewBaselineTypes { types, min } => {
                write!(f, "{types} baseline types < {min}")
            }
            DropReason::InsufficientData { group, included } => {
                write!(f, "{included} in-vocabulary {group} lemma(s)")
            }
            DropReason::DegenerateCentroid { group } => write!(f, "{group} centroid is zero"),
            DropReason::Statistics { message } => f.write_str(message),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DroppedVerb {
    pub verb: String,
    pub reason: DropReason,
}

/// Verb passing the token threshold, with its type counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerbTypes {
    pub verb: String,
    pub epic_tokens: usize,
    pub epic_types: usize,
    pub baseline_types: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerbComparison {
    pub verb: String,
    pub epic_token_count: usize,
    pub epic_type_count: usize,
    pub baseline_type_count: usize,
    pub median_formulaic: f64,
    pub median_baseline: f64,
    pub variance_formulaic: f64,
    pub variance_baseline: f64,
    pub ks: KsResult,
    pub stars: &'static str,
    /// (formulaic, baseline)
    pub oov_counts: (usize, usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupBoxplot {
    pub verb: String,
    pub group: Group,
    pub stats: BoxplotStats,
}

/// Per-verb pair counts over the epic works.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCounts {
    pub verb: String,
    pub formulaic: usize,
    pub non_formulaic: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CaseStudyReport {
    pub pair_counts: Vec<PairCounts>,
    pub verb_types: Vec<VerbTypes>,
    pub comparisons: Vec<VerbComparison>,
    pub boxplots: Vec<GroupBoxplot>,
    pub distributions: Vec<SimilarityDistribution>,
    pub dropped: Vec<DroppedVerb>,
}

fn distribution(
    lemmas: &[String],
    space: &VectorSpace,
    verb: &str,
    group: Group,
) -> Result<SimilarityDistribution, DropReason> {
    use crate::semantics::SemanticsError as E;
    centroid_similarities(lemmas, space, verb, group).map_err(|e| match e {
        E::InsufficientData { included } => DropReason::InsufficientData { group, included },
        E::DegenerateCentroid => DropReason::DegenerateCentroid { group },
        other => DropReason::Statistics {
            message: other.to_string(),
        },
    })
}

fn compare(
    config: &CaseStudyConfig,
    types: &VerbTypes,
    formulaic: &SimilarityDistribution,
    baseline: &SimilarityDistribution,
) -> Result<VerbComparison, DropReason> {
    let stat_err = |e: crate::stats::StatsError| DropReason::Statistics {
        message: e.to_string(),
    };
    let f = summarize(&formulaic.similarities).map_err(stat_err)?;
    let b = summarize(&baseline.similarities).map_err(stat_err)?;
    let options = KsOptions {
        exact_limit: config.ks_exact_limit,
    };
    let n = formulaic.similarities.len() + baseline.similarities.len();
    let method = match config.ks_method {
        KsChoice::Fixed(m) => m,
        KsChoice::Auto if n <= options.exact_limit => KsMethod::Exact,
        KsChoice::Auto => KsMethod::Asymptotic,
    };
    let ks = ks_two_sample_with(
        &formulaic.similarities,
        &baseline.similarities,
        method,
        &options,
    )
    .map_err(stat_err)?;
    Ok(VerbComparison {
        verb: types.verb.clone(),
        epic_token_count: types.epic_tokens,
        epic_type_count: types.epic_types,
        baseline_type_count: types.baseline_types,
        median_formulaic: f.median,
        median_baseline: b.median,
        variance_formulaic: f.variance().map_err(stat_err)?,
        variance_baseline: b.variance().map_err(stat_err)?,
        stars: significance_stars(ks.p_value).map_err(stat_err)?,
        ks,
        oov_counts: (formulaic.oov_lemmas.len(), baseline.oov_lemmas.len()),
    })
}

/// Runs the whole comparison. Verbs that fall out at any stage are listed
/// in `dropped` with a reason.
pub fn run_case_study(
    config: &CaseStudyConfig,
    corpus: &[SentenceTree],
    spans: &FormulaSpanSet,
    lexicon: &Lexicon,
    space: &VectorSpace,
) -> CaseStudyReport {
    let mut report = CaseStudyReport::default();
    let pairs = mark_formulaic(
        extract_trv_obj(corpus, &config.epic_works, config.include_participles),
        spans,
    );

    let mut counts: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for p in &pairs {
        let c = counts.entry(&p.verb).or_default();
        if p.formulaic {
            c.0 += 1;
        } else {
            c.1 += 1;
        }
    }
    report.pair_counts = counts
        .iter()
        .map(|(v, &(f, n))| PairCounts {
            verb: v.to_string(),
            formulaic: f,
            non_formulaic: n,
        })
        .collect();

    let selected = select_verbs(&pairs, config.min_epic_tokens);
    let selected_set: HashSet<&str> = selected.iter().map(|(v, _)| v.as_str()).collect();
    for (verb, tokens) in formulaic_counts(&pairs) {
        if !selected_set.contains(verb.as_str()) {
            report.dropped.push(DroppedVerb {
                verb,
                reason: DropReason::BelowMinEpicTokens {
                    tokens,
                    min: config.min_epic_tokens,
                },
            });
        }
    }

    let min = config.min_object_types;
    for (verb, tokens) in selected {
        let epic = object_types(pairs.iter().filter(|p| p.formulaic && p.verb == verb));
        let baseline = build_baseline(lexicon, &verb, &config.baseline_exclusions);
        let types = VerbTypes {
            verb: verb.clone(),
            epic_tokens: tokens,
            epic_types: epic.len(),
            baseline_types: baseline.len(),
        };
        let drop = |reason| DroppedVerb {
            verb: verb.clone(),
            reason,
        };
        if epic.len() < min {
            report.dropped.push(drop(DropReason::TooFewEpicTypes {
                types: epic.len(),
                min,
            }));
            continue;
        }
        if baseline.len() < min {
            report.dropped.push(drop(DropReason::TooFewBaselineTypes {
                types: baseline.len(),
                min,
            }));
            continue;
        }
        report.verb_types.push(types.clone());

        let result = distribution(&epic, space, &verb, Group::Formulaic).and_then(|f| {
            let b = distribution(&baseline, space, &verb, Group::Baseline)?;
            let cmp = compare(config, &types, &f, &b)?;
            Ok((f, b, cmp))
        });
        match result {
            Ok((f, b, cmp)) => {
                for d in [&f, &b] {
                    if let Ok(stats) = boxplot_stats(&d.similarities) {
                        report.boxplots.push(GroupBoxplot {
                            verb: verb.clone(),
                            group: d.group,
                            stats,
                        });
                    }
                }
                report.distributions.push(f);
                report.distributions.push(b);
                report.comparisons.push(cmp);
            }
            Err(reason) => report.dropped.push(drop(reason)),
        }
    }
    report
}

fn num(x: f64) -> String {
    format!("{x:.6}")
}

impl CaseStudyReport {
    /// Object type counts per verb that passed both thresholds.
    pub fn table5_tsv(&self) -> String {
        let mut out = String::from("rank\tverb\tepic_tokens\tepic_types\tbaseline_types\n");
        for (i, t) in self.verb_types.iter().enumerate() {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                i + 1,
                t.verb,
                t.epic_tokens,
                t.epic_types,
                t.baseline_types
            ));
        }
        out
    }

    pub fn table6_tsv(&self) -> String {
        let mut out = String::from(
            "verb\tmedian_similarity_formulaic\tmedian_similarity_baseline\t\
             median_distance_formulaic\tmedian_distance_baseline\t\
             variance_formulaic\tvariance_baseline\td_statistic\tp_value\tstars\t\
             oov_formulaic\toov_baseline\tmethod\n",
        );
        for c in &self.comparisons {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                c.verb,
                num(c.median_formulaic),
                num(c.median_baseline),
                num(1.0 - c.median_formulaic),
                num(1.0 - c.median_baseline),
                num(c.variance_formulaic),
                num(c.variance_baseline),
                num(c.ks.d_statistic),
                num(c.ks.p_value),
                c.stars,
                c.oov_counts.0,
                c.oov_counts.1,
                c.ks.method.name(),
            ));
        }
        out
    }

    /// Outliers are `;`-separated within one field.
    pub fn fig2_boxplot_csv(&self) -> String {
        let mut out = String::from("verb,group,min_whisker,q1,median,q3,max_whisker,outliers\n");
        for b in &self.boxplots {
            let s = &b.stats;
            let outliers: Vec<String> = s.outliers.iter().map(|&x| num(x)).collect();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                b.verb,
                b.group,
                num(s.min_whisker),
                num(s.q1),
                num(s.median),
                num(s.q3),
                num(s.max_whisker),
                outliers.join(";")
            ));
        }
        out
    }

    /// Tab-separated log: pair counts, then one line per dropped verb.
    pub fn run_log(&self) -> String {
        let mut out = String::new();
        for p in &self.pair_counts {
            out.push_str(&format!(
                "pairs\t{}\t{}\t{}\t{}\n",
                p.verb,
                p.formulaic,
                p.non_formulaic,
                p.formulaic + p.non_formulaic
            ));
        }
        for d in &self.dropped {
            out.push_str(&format!(
                "dropped\t{}\t{}\t{}\n",
                d.verb,
                d.reason.code(),
                d.reason
            ));
        }
        for c in &self.comparisons {
            out.push_str(&format!("reported\t{}\n", c.verb));
        }
        out
    }
}
