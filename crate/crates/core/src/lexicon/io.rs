//! Lexicon TSV files.
//!
//! The full layout has nine columns:
//!
//! ```text
//! author title subdoc verb voice sentence_id root_id frame frame_fillers
//! ```
//!
//! The compact layout drops `root_id`; rows read from it get `root_id = 0`.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use thiserror::Error;
use unicode_normalization::UnicodeNormalization;

use super::Lexicon;
use crate::frames::LexiconEntry;
use crate::treebank::Voice;

pub const FULL_HEADER: [&str; 9] = [
    "author",
    "title",
    "subdoc",
    "verb",
    "voice",
    "sentence_id",
    "root_id",
    "frame",
    "frame_fillers",
];

pub const COMPACT_HEADER: [&str; 8] = [
    "author",
    "title",
    "subdoc",
    "verb",
    "voice",
    "sentence_id",
    "frame",
    "frame_fillers",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Layout {
    #[default]
    Full,
    Compact,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("unrecognized lexicon header: {0:?}")]
    Header(String),
    #[error("{} malformed row(s), first at line {}: {}", .0.len(), .0[0].line, .0[0].message)]
    Rows(Vec<RowError>),
    #[error("field {field:?} of entry {index} contains a tab or newline")]
    Unwritable { index: usize, field: &'static str },
}

fn check_field(index: usize, field: &'static str, value: &str) -> Result<(), LexiconError> {
    if value.contains(['\t', '\n', '\r']) {
        Err(LexiconError::Unwritable { index, field })
    } else {
        Ok(())
    }
}

/// Serializes a lexicon; returns the number of bytes written.
pub fn write_lexicon<W: Write>(
    lexicon: &Lexicon,
    mut out: W,
    layout: Layout,
) -> Result<usize, LexiconError> {
    let mut buf = String::new();
    let header: &[&str] = match layout {
        Layout::Full => &FULL_HEADER,
        Layout::Compact => &COMPACT_HEADER,
    };
    buf.push_str(&header.join("\t"));
    buf.push('\n');

    for (i, e) in lexicon.entries().iter().enumerate() {
        for (name, value) in [
            ("author", &e.author),
            ("title", &e.title),
            ("subdoc", &e.subdoc),
            ("verb", &e.verb),
            ("frame", &e.frame),
            ("frame_fillers", &e.frame_fillers),
        ] {
            check_field(i, name, value)?;
        }
        let sentence_id = e.sentence_id.to_string();
        let root_id = e.root_id.to_string();
        let mut cols: Vec<&str> = vec![
            &e.author,
            &e.title,
            &e.subdoc,
            &e.verb,
            e.voice.name(),
            &sentence_id,
        ];
        if layout == Layout::Full {
            cols.push(&root_id);
        }
        cols.push(&e.frame);
        cols.push(&e.frame_fillers);
        let line: String = cols.join("\t").nfc().collect();
        buf.push_str(&line);
        buf.push('\n');
    }
    out.write_all(buf.as_bytes())?;
    Ok(buf.len())
}

/// Writes to a sibling temp file and renames it over `path`.
pub fn write_lexicon_file(
    lexicon: &Lexicon,
    path: &Path,
    layout: Layout,
) -> Result<usize, LexiconError> {
    let tmp = path.with_extension("tsv.tmp");
    let n = {
        let file = fs::File::create(&tmp)?;
        let mut w = io::BufWriter::new(file);
        let n = write_lexicon(lexicon, &mut w, layout)?;
        w.flush()?;
        n
    };
    fs::rename(&tmp, path)?;
    Ok(n)
}

fn parse_row(cols: &[&str], layout: Layout) -> Result<LexiconEntry, String> {
    let expected = match layout {
        Layout::Full => 9,
        Layout::Compact => 8,
    };
    if cols.len() != expected {
        return Err(format!("expected {expected} columns, found {}", cols.len()));
    }
    let voice = Voice::from_name(cols[4]).ok_or_else(|| format!("unknown voice {:?}", cols[4]))?;
    let sentence_id = cols[5]
        .parse()
        .map_err(|_| format!("sentence_id {:?} is not an integer", cols[5]))?;
    let (root_id, rest) = match layout {
        Layout::Full => (
            cols[6]
                .parse()
                .map_err(|_| format!("root_id {:?} is not an integer", cols[6]))?,
            &cols[7..],
        ),
        Layout::Compact => (0, &cols[6..]),
    };
    let nfc = |s: &str| -> String { s.nfc().collect() };
    Ok(LexiconEntry {
        author: nfc(cols[0]),
        title: nfc(cols[1]),
        subdoc: nfc(cols[2]),
        verb: nfc(cols[3]),
        voice,
        sentence_id,
        root_id,
        frame: nfc(rest[0]),
        frame_fillers: nfc(rest[1]),
    })
}

/// Parses lexicon TSV text. With `lenient`, bad rows are dropped and
/// returned alongside the lexicon instead of failing the whole file.
pub fn read_lexicon_str(
    text: &str,
    lenient: bool,
) -> Result<(Lexicon, Vec<RowError>), LexiconError> {
    let mut lines = text.lines().enumerate();
    let header = lines.next().map(|(_, l)| l).unwrap_or("");
    let header_cols: Vec<&str> = header.split('\t').collect();
    let layout = if header_cols == FULL_HEADER {
        Layout::Full
    } else if header_cols == COMPACT_HEADER {
        Layout::Compact
    } else {
        return Err(LexiconError::Header(header.to_string()));
    };

    let mut entries = Vec::new();
    let mut errors = Vec::new();
    for (i, line) in lines {
        if line.is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        match parse_row(&cols, layout) {
            Ok(e) => entries.push(e),
            Err(message) => errors.push(RowError {
                line: i + 1,
                message,
            }),
        }
    }
    if !errors.is_empty() && !lenient {
        return Err(LexiconError::Rows(errors));
    }
    Ok((Lexicon::new(entries), errors))
}

pub fn read_lexicon(path: &Path, lenient: bool) -> Result<(Lexicon, Vec<RowError>), LexiconError> {
    let text = fs::read_to_string(path)?;
    read_lexicon_str(&text, lenient)
}
