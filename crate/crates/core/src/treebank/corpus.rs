use std::collections::HashMap;
use std::fs;
use std::io;
use std::path::Path;

use super::ingest::{parse_treebank_file, FileReport};
use super::tree::{DocumentMeta, SentenceTree};

/// What happened to one file of a treebank directory.
#[derive(Debug, Clone)]
pub struct FileOutcome {
    pub name: String,
    /// Trees contributed to `CorpusLoad::trees`, which are stored file by
    /// file in the same order.
    pub sentences: usize,
    /// `Err` holds a message for files that could not be read or parsed.
    pub result: Result<FileReport, String>,
}

#[derive(Debug, Clone, Default)]
pub struct CorpusLoad {
    pub trees: Vec<SentenceTree>,
    /// In file-name order.
    pub files: Vec<FileOutcome>,
}

impl CorpusLoad {
    pub fn failed_files(&self) -> impl Iterator<Item = &FileOutcome> {
        self.files.iter().filter(|f| f.result.is_err())
    }
}

/// Parses every `*.xml` file directly inside `dir`, in file-name order.
/// A file that fails to parse is recorded and the rest are still read.
pub fn load_treebank_dir(
    dir: &Path,
    manifest: Option<&HashMap<String, DocumentMeta>>,
) -> io::Result<CorpusLoad> {
    let mut names: Vec<String> = fs::read_dir(dir)?
        .filter_map(|e| e.ok())
        .filter(|e| e.file_type().map(|t| t.is_file()).unwrap_or(false))
        .filter_map(|e| e.file_name().into_string().ok())
        .filter(|n| n.to_ascii_lowercase().ends_with(".xml"))
        .collect();
    names.sort();

    let mut load = CorpusLoad::default();
    for name in names {
        let fallback = manifest.and_then(|m| m.get(&name));
        let result = fs::read(dir.join(&name))
            .map_err(|e| e.to_string())
            .and_then(|bytes| parse_treebank_file(&bytes, fallback).map_err(|e| e.to_string()));
        let mut sentences = 0;
        let result = result.map(|parsed| {
            sentences = parsed.sentences.len();
            load.trees.extend(parsed.sentences);
            parsed.report
        });
        load.files.push(FileOutcome {
            name,
            sentences,
            result,
        });
    }
    Ok(load)
}
