//! Treebank ingestion: XML parsing, morphology tags, Beta Code, and tree
//! validation.

mod betacode;
mod corpus;
mod ingest;
mod postag;
mod tree;
mod validate;

pub use betacode::{beta_to_unicode, is_beta_code, BetaCodeError};
pub use corpus::{load_treebank_dir, CorpusLoad, FileOutcome};
pub use ingest::{
    normalize_form, normalize_lemma, parse_manifest, parse_treebank_file, FileReport, IngestError,
    ParsedFile, WordError, WordErrorKind,
};
pub use postag::{
    Case, Degree, Gender, Mood, Number, PartOfSpeech, Person, PosTag, PosTagError, Tense, Voice,
    TAG_LENGTH,
};
pub use tree::{DocumentMeta, SentenceTree, WordNode};
pub use validate::{validate_sentence, TreeIssue, ValidationReport};
