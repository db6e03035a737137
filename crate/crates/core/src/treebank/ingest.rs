//! Reader for analytical-layer treebank XML.

use std::collections::HashMap;

use quick_xml::events::{BytesStart, Event};
use quick_xml::Reader;
use thiserror::Error;
use unicode_normalization::UnicodeNormalization;

use super::betacode::{beta_to_unicode, is_beta_code, BetaCodeError};
use super::postag::{PartOfSpeech, PosTag, PosTagError};
use super::tree::{DocumentMeta, SentenceTree, WordNode};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("malformed XML at byte {offset}: {message}")]
    Xml { offset: u64, message: String },
    #[error("sentence element at byte {offset} has a missing or non-numeric id")]
    SentenceId { offset: u64 },
}

/// Why a single `<word>` element was dropped.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordErrorKind {
    #[error("missing attribute {0:?}")]
    MissingAttribute(&'static str),
    #[error("attribute {name:?} is not a valid integer: {value:?}")]
    BadInteger { name: &'static str, value: String },
    #[error(transparent)]
    PosTag(#[from] PosTagError),
    #[error("lemma: {0}")]
    Lemma(#[from] BetaCodeError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordError {
    pub sentence_id: u64,
    /// Byte offset of the word element in the file.
    pub offset: u64,
    pub kind: WordErrorKind,
}

/// Per-file account of what was read and what was skipped.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FileReport {
    pub word_elements: usize,
    pub skipped_words: Vec<WordError>,
    /// Forms kept verbatim because they could not be transcoded.
    pub untranscoded_forms: Vec<(u64, u32, String)>,
}

#[derive(Debug, Clone, Default)]
pub struct ParsedFile {
    pub sentences: Vec<SentenceTree>,
    pub report: FileReport,
}

/// Strips sense digits and transcodes Beta Code lemmas to NFC Greek.
pub fn normalize_lemma(raw: &str) -> Result<String, BetaCodeError> {
    let stripped = raw.trim().trim_end_matches(|c: char| c.is_ascii_digit());
    if is_beta_code(stripped) {
        beta_to_unicode(stripped)
    } else {
        Ok(stripped.nfc().collect())
    }
}

/// Transcodes a surface form if it is Beta Code; Unicode input is only
/// normalized.
pub fn normalize_form(raw: &str) -> Result<String, BetaCodeError> {
    if is_beta_code(raw) {
        beta_to_unicode(raw)
    } else {
        Ok(raw.nfc().collect())
    }
}

/// Parses the sidecar manifest: `filename<TAB>author<TAB>title` lines.
/// Blank lines and `#` comments are skipped.
pub fn parse_manifest(text: &str) -> Result<HashMap<String, DocumentMeta>, String> {
    let mut out = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 3 {
            return Err(format!(
                "manifest line {}: expected 3 tab-separated columns, found {}",
                i + 1,
                cols.len()
            ));
        }
        out.insert(cols[0].to_string(), DocumentMeta::new(cols[1], cols[2]));
    }
    Ok(out)
}

struct PendingSentence {
    id: u64,
    subdoc: String,
    nodes: Vec<WordNode>,
}

fn xml_err(reader: &Reader<&[u8]>, e: impl std::fmt::Display) -> IngestError {
    IngestError::Xml {
        offset: reader.error_position(),
        message: e.to_string(),
    }
}

fn attributes(
    reader: &Reader<&[u8]>,
    e: &BytesStart,
) -> Result<HashMap<String, String>, IngestError> {
    let mut out = HashMap::new();
    for attr in e.attributes() {
        let attr = attr.map_err(|err| xml_err(reader, err))?;
        let key = String::from_utf8_lossy(attr.key.as_ref()).into_owned();
        let value = attr
            .unescape_value()
            .map_err(|err| xml_err(reader, err))?
            .into_owned();
        out.insert(key, value);
    }
    Ok(out)
}

fn word_node(attrs: &HashMap<String, String>) -> Result<(WordNode, bool), WordErrorKind> {
    let get = |name: &'static str| {
        attrs
            .get(name)
            .map(String::as_str)
            .ok_or(WordErrorKind::MissingAttribute(name))
    };
    let int = |name: &'static str| -> Result<u32, WordErrorKind> {
        let value = get(name)?;
        value.trim().parse().map_err(|_| WordErrorKind::BadInteger {
            name,
            value: value.to_string(),
        })
    };

    let token_id = int("id")?;
    if token_id == 0 {
        return Err(WordErrorKind::BadInteger {
            name: "id",
            value: "0".into(),
        });
    }
    let raw_form = get("form")?;
    let raw_lemma = get("lemma")?;
    let postag = PosTag::decode(get("postag")?)?;
    let head_id = int("head")?;
    let relation = get("relation")?.to_string();

    let lemma = if postag.pos == PartOfSpeech::Punctuation {
        raw_lemma
            .trim_end_matches(|c: char| c.is_ascii_digit())
            .to_string()
    } else {
        normalize_lemma(raw_lemma)?
    };
    let (form, transcoded) = match normalize_form(raw_form) {
        Ok(f) => (f, true),
        Err(_) => (raw_form.to_string(), false),
    };

    Ok((
        WordNode {
            token_id,
            form,
            raw_lemma: raw_lemma.to_string(),
            lemma,
            postag,
            head_id,
            relation,
        },
        transcoded,
    ))
}

/// Parses one treebank file into sentence trees.
///
/// Document-level `<author>` and `<title>` elements take precedence over
/// `fallback`. Word elements with missing or undecodable attributes are
/// skipped and listed in the report; the trees are not validated here.
pub fn parse_treebank_file(
    bytes: &[u8],
    fallback: Option<&DocumentMeta>,
) -> Result<ParsedFile, IngestError> {
    let mut reader = Reader::from_reader(bytes);
    reader.config_mut().trim_text(true);

    let mut report = FileReport::default();
    let mut pending: Vec<(PendingSentence, u64)> = Vec::new();
    let mut current: Option<PendingSentence> = None;
    let mut doc_author: Option<String> = None;
    let mut doc_title: Option<String> = None;
    // Which metadata element we are inside, if any.
    let mut capture: Option<&'static str> = None;
    let mut buf = String::new();

    loop {
        let offset = reader.buffer_position();
        let event = reader.read_event().map_err(|e| xml_err(&reader, e))?;
        match event {
            Event::Eof => break,
            Event::Start(ref e) | Event::Empty(ref e) => {
                let is_empty = matches!(event, Event::Empty(_));
                match e.local_name().as_ref() {
                    b"sentence" => {
                        let attrs = attributes(&reader, e)?;
                        let id = attrs
                            .get("id")
                            .and_then(|v| v.trim().parse().ok())
                            .ok_or(IngestError::SentenceId { offset })?;
                        let sentence = PendingSentence {
                            id,
                            subdoc: attrs.get("subdoc").cloned().unwrap_or_default(),
                            nodes: Vec::new(),
                        };
                        if is_empty {
                            pending.push((sentence, offset));
                        } else {
                            current = Some(sentence);
                        }
                    }
                    b"word" => {
                        let Some(sentence) = current.as_mut() else {
                            continue;
                        };
                        report.word_elements += 1;
                        let attrs = attributes(&reader, e)?;
                        match word_node(&attrs) {
                            Ok((node, transcoded)) => {
                                if !transcoded {
                                    report.untranscoded_forms.push((
                                        sentence.id,
                                        node.token_id,
                                        node.form.clone(),
                                    ));
                                }
                                sentence.nodes.push(node);
                            }
                            Err(kind) => report.skipped_words.push(WordError {
                                sentence_id: sentence.id,
                                offset,
                                kind,
                            }),
                        }
                    }
                    b"author" if current.is_none() && !is_empty && doc_author.is_none() => {
                        capture = Some("author");
                        buf.clear();
                    }
                    b"title" if current.is_none() && !is_empty && doc_title.is_none() => {
                        capture = Some("title");
                        buf.clear();
                    }
                    _ => {}
                }
            }
            Event::Text(t) => {
                if capture.is_some() {
                    let text = t.unescape().map_err(|e| xml_err(&reader, e))?;
                    buf.push_str(&text);
                }
            }
            Event::End(ref e) => match e.local_name().as_ref() {
                b"sentence" => {
                    if let Some(sentence) = current.take() {
                        pending.push((sentence, offset));
                    }
                }
                b"author" if capture == Some("author") => {
                    doc_author = Some(buf.trim().to_string());
                    capture = None;
                }
                b"title" if capture == Some("title") => {
                    doc_title = Some(buf.trim().to_string());
                    capture = None;
                }
                _ => {}
            },
            _ => {}
        }
    }

    let meta = DocumentMeta {
        author: doc_author
            .filter(|s| !s.is_empty())
            .or_else(|| fallback.map(|m| m.author.clone()))
            .unwrap_or_default(),
        title: doc_title
            .filter(|s| !s.is_empty())
            .or_else(|| fallback.map(|m| m.title.clone()))
            .unwrap_or_default(),
    };
    let sentences = pending
        .into_iter()
        .map(|(s, _)| SentenceTree::new(s.id, s.subdoc, &meta, s.nodes))
        .collect();
    Ok(ParsedFile { sentences, report })
}
