use std::fs;
use std::path::{Path, PathBuf};

use clap::Args;

use valency::frames::{extract_entries, ExtractOptions};
use valency::lexicon::{write_lexicon_file, Layout, Lexicon};
use valency::treebank::{load_treebank_dir, parse_manifest, validate_sentence, CorpusLoad};

use crate::manifest::RunManifest;
use crate::{Failure, Status};

#[derive(Args)]
pub struct ExtractArgs {
    /// Directory of treebank XML files
    treebank_dir: PathBuf,
    /// Sidecar TSV (filename, author, title) for files without header metadata
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Treat participles as predicates
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    include_participles: bool,
    /// Write the eight-column layout without root_id
    #[arg(long)]
    compact: bool,
    /// Lexicon output path; the validation report and run manifest are
    /// written beside it
    #[arg(short, long)]
    output: PathBuf,
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "lexicon".into());
    path.with_file_name(format!("{stem}.{suffix}"))
}

/// `kind file sentence_id detail` rows for everything that was skipped.
fn validation_report(load: &CorpusLoad) -> (String, usize) {
    let mut out = String::from("kind\tfile\tsentence_id\tdetail\n");
    let mut invalid = 0;
    let mut trees = load.trees.iter();
    for file in &load.files {
        match &file.result {
            Err(message) => out.push_str(&format!("file_error\t{}\t\t{message}\n", file.name)),
            Ok(report) => {
                for w in &report.skipped_words {
                    out.push_str(&format!(
                        "skipped_word\t{}\t{}\tbyte {}: {}\n",
                        file.name, w.sentence_id, w.offset, w.kind
                    ));
                }
                for (sid, token, form) in &report.untranscoded_forms {
                    out.push_str(&format!(
                        "untranscoded_form\t{}\t{sid}\ttoken {token}: {form}\n",
                        file.name
                    ));
                }
            }
        }
        for tree in trees.by_ref().take(file.sentences) {
            let v = validate_sentence(tree);
            if !v.is_valid() {
                invalid += 1;
                let issues: Vec<String> = v.issues.iter().map(|i| i.to_string()).collect();
                out.push_str(&format!(
                    "invalid_tree\t{}\t{}\t{}\n",
                    file.name,
                    v.sentence_id,
                    issues.join("; ")
                ));
            }
        }
    }
    (out, invalid)
}

pub fn run(args: ExtractArgs) -> Result<Status, Failure> {
    if !args.treebank_dir.is_dir() {
        return Err(Failure::new(format!(
            "{}: not a readable directory",
            args.treebank_dir.display()
        )));
    }
    let mut manifest = RunManifest::new("extract");
    let meta = match &args.manifest {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
            manifest.add_input("manifest", path)?;
            Some(parse_manifest(&text).map_err(|e| Failure::io(path, e))?)
        }
        None => None,
    };
    let load = load_treebank_dir(&args.treebank_dir, meta.as_ref())
        .map_err(|e| Failure::io(&args.treebank_dir, e))?;
    for file in &load.files {
        // unreadable files are already recorded as failures
        let _ = manifest.add_input("treebank", &args.treebank_dir.join(&file.name));
    }

    let options = ExtractOptions {
        include_participles: args.include_participles,
    };
    let extraction = extract_entries(&load.trees, options);
    let entry_count = extraction.entries.len();
    let layout = if args.compact {
        Layout::Compact
    } else {
        Layout::Full
    };
    write_lexicon_file(&Lexicon::new(extraction.entries), &args.output, layout)
        .map_err(|e| Failure::io(&args.output, e))?;

    let report_path = sibling(&args.output, "validation.tsv");
    let (report, invalid) = validation_report(&load);
    fs::write(&report_path, report).map_err(|e| Failure::io(&report_path, e))?;

    manifest.set("include_participles", args.include_participles);
    manifest.set("layout", if args.compact { "compact" } else { "full" });
    for p in [&args.output, &report_path] {
        manifest
            .outputs
            .push(p.file_name().unwrap().to_string_lossy().into_owned());
    }
    manifest.write(&sibling(&args.output, "manifest.json"))?;

    let failed: Vec<_> = load.failed_files().collect();
    for f in &failed {
        if let Err(message) = &f.result {
            eprintln!("warning: {}: {message}", f.name);
        }
    }
    eprintln!(
        "{entry_count} entries from {} sentences in {} file(s); {invalid} invalid tree(s), {} unreadable file(s)",
        load.trees.len(),
        load.files.len(),
        failed.len()
    );
    Ok(if failed.is_empty() {
        Status::Ok
    } else {
        Status::Partial
    })
}
