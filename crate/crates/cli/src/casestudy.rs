use std::fs;
use std::path::{Path, PathBuf};

use clap::Args;

use valency::casestudy::{parse_formula_spans, run_case_study, CaseStudyConfig};
use valency::lexicon::read_lexicon;
use valency::semantics::{distributions_tsv, load_vector_space};
use valency::treebank::{load_treebank_dir, parse_manifest};

use crate::manifest::RunManifest;
use crate::{Failure, Status};

#[derive(Args)]
pub struct CaseStudyArgs {
    /// Config file of `key = value` lines; relative paths resolve against
    /// its directory
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    output_dir: Option<PathBuf>,
    #[arg(long)]
    treebank_dir: Option<PathBuf>,
    /// Sidecar TSV (filename, author, title) for treebank files
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Baseline lexicon TSV
    #[arg(long)]
    lexicon: Option<PathBuf>,
    /// Lemma vector space
    #[arg(long)]
    vectors: Option<PathBuf>,
    /// Formula spans TSV (sentence_id, token_id)
    #[arg(long)]
    spans: Option<PathBuf>,
    #[arg(long)]
    min_epic_tokens: Option<String>,
    #[arg(long)]
    min_object_types: Option<String>,
    /// auto, exact or asymptotic
    #[arg(long)]
    ks_method: Option<String>,
}

fn required<'a>(path: &'a Option<PathBuf>, key: &str) -> Result<&'a Path, Failure> {
    path.as_deref().ok_or_else(|| {
        Failure::new(format!(
            "missing {key} (set it in the config or on the command line)"
        ))
    })
}

fn load_config(args: &CaseStudyArgs) -> Result<CaseStudyConfig, Failure> {
    let cwd = Path::new(".");
    let mut config = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
            let base = path.parent().unwrap_or(cwd);
            CaseStudyConfig::parse(&text, base).map_err(|e| Failure::io(path, e))?
        }
        None => CaseStudyConfig::default(),
    };
    let overrides = [
        (
            "output_dir",
            args.output_dir.as_ref().map(|p| p.display().to_string()),
        ),
        (
            "treebank_dir",
            args.treebank_dir.as_ref().map(|p| p.display().to_string()),
        ),
        (
            "manifest_path",
            args.manifest.as_ref().map(|p| p.display().to_string()),
        ),
        (
            "lexicon_path",
            args.lexicon.as_ref().map(|p| p.display().to_string()),
        ),
        (
            "vector_space_path",
            args.vectors.as_ref().map(|p| p.display().to_string()),
        ),
        (
            "formula_span_path",
            args.spans.as_ref().map(|p| p.display().to_string()),
        ),
        ("min_epic_tokens", args.min_epic_tokens.clone()),
        ("min_object_types", args.min_object_types.clone()),
        ("ks_method", args.ks_method.clone()),
    ];
    for (key, value) in overrides {
        if let Some(value) = value {
            config.set(key, &value, cwd).map_err(Failure::new)?;
        }
    }
    Ok(config)
}

pub fn run(args: CaseStudyArgs) -> Result<Status, Failure> {
    let config = load_config(&args)?;
    let treebank_dir = required(&config.treebank_dir, "treebank_dir")?;
    let lexicon_path = required(&config.lexicon_path, "lexicon_path")?;
    let vectors_path = required(&config.vector_space_path, "vector_space_path")?;
    let spans_path = required(&config.formula_span_path, "formula_span_path")?;
    let output_dir = required(&config.output_dir, "output_dir")?;

    let mut manifest = RunManifest::new("casestudy");
    if let Some(path) = &args.config {
        manifest.add_input("config", path)?;
    }
    let meta = match &config.manifest_path {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
            manifest.add_input("manifest", path)?;
            Some(parse_manifest(&text).map_err(|e| Failure::io(path, e))?)
        }
        None => None,
    };
    if !treebank_dir.is_dir() {
        return Err(Failure::new(format!(
            "{}: not a readable directory",
            treebank_dir.display()
        )));
    }
    let load =
        load_treebank_dir(treebank_dir, meta.as_ref()).map_err(|e| Failure::io(treebank_dir, e))?;
    for file in &load.files {
        let _ = manifest.add_input("treebank", &treebank_dir.join(&file.name));
    }
    let (lexicon, _) =
        read_lexicon(lexicon_path, false).map_err(|e| Failure::io(lexicon_path, e))?;
    manifest.add_input("lexicon", lexicon_path)?;
    let space = load_vector_space(vectors_path).map_err(|e| Failure::io(vectors_path, e))?;
    manifest.add_input("vectors", vectors_path)?;
    let spans_text = fs::read_to_string(spans_path).map_err(|e| Failure::io(spans_path, e))?;
    let spans = parse_formula_spans(&spans_text).map_err(|e| Failure::io(spans_path, e))?;
    manifest.add_input("spans", spans_path)?;

    let report = run_case_study(&config, &load.trees, &spans, &lexicon, &space);

    let mut log = String::new();
    for (k, v) in config.resolved() {
        log.push_str(&format!("# {k}\t{v}\n"));
        manifest.set(&k, v);
    }
    log.push_str(&report.run_log());
    for f in load.failed_files() {
        if let Err(message) = &f.result {
            log.push_str(&format!("file_error\t{}\t{message}\n", f.name));
            eprintln!("warning: {}: {message}", f.name);
        }
    }

    fs::create_dir_all(output_dir).map_err(|e| Failure::io(output_dir, e))?;
    let outputs = [
        ("table5.tsv", report.table5_tsv()),
        ("table6.tsv", report.table6_tsv()),
        ("fig2_boxplot.csv", report.fig2_boxplot_csv()),
        (
            "distributions.tsv",
            distributions_tsv(&report.distributions),
        ),
        ("run.log", log),
    ];
    for (name, content) in outputs {
        let path = output_dir.join(name);
        fs::write(&path, content).map_err(|e| Failure::io(&path, e))?;
        manifest.outputs.push(name.to_string());
    }
    manifest.write(&output_dir.join("manifest.json"))?;

    eprintln!(
        "{} verb(s) compared, {} dropped; outputs in {}",
        report.comparisons.len(),
        report.dropped.len(),
        output_dir.display()
    );
    Ok(if report.comparisons.is_empty() {
        Status::Empty
    } else if load.failed_files().next().is_some() {
        Status::Partial
    } else {
        Status::Ok
    })
}
