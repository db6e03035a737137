//! The lexicon: storage, aggregate statistics, and construction queries.

mod io;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

pub use self::io::{
    read_lexicon, read_lexicon_str, write_lexicon, write_lexicon_file, Layout, LexiconError,
    RowError, COMPACT_HEADER, FULL_HEADER,
};
use crate::frames::{parse_frame, LexiconEntry};
use crate::treebank::Voice;

/// Immutable entry list with verb, frame and author indexes.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    entries: Vec<LexiconEntry>,
    by_verb: HashMap<String, Vec<usize>>,
    by_frame: HashMap<String, Vec<usize>>,
    by_author: BTreeMap<String, Vec<usize>>,
}

impl Lexicon {
    pub fn new(entries: Vec<LexiconEntry>) -> Lexicon {
        let mut lex = Lexicon {
            entries,
            ..Default::default()
        };
        for (i, e) in lex.entries.iter().enumerate() {
            lex.by_verb.entry(e.verb.clone()).or_default().push(i);
            lex.by_frame.entry(e.frame.clone()).or_default().push(i);
            lex.by_author.entry(e.author.clone()).or_default().push(i);
        }
        lex
    }

    pub fn entries(&self) -> &[LexiconEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn verb_entries(&self, verb: &str) -> impl Iterator<Item = &LexiconEntry> {
        self.indexed(self.by_verb.get(verb))
    }

    pub fn frame_entries(&self, frame: &str) -> impl Iterator<Item = &LexiconEntry> {
        self.indexed(self.by_frame.get(frame))
    }

    pub fn author_entries(&self, author: &str) -> impl Iterator<Item = &LexiconEntry> {
        self.indexed(self.by_author.get(author))
    }

    fn indexed<'a>(
        &'a self,
        ids: Option<&'a Vec<usize>>,
    ) -> impl Iterator<Item = &'a LexiconEntry> {
        ids.into_iter().flatten().map(move |&i| &self.entries[i])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BasicStats {
    pub entries: usize,
    pub unique_verb_lemmas: usize,
    pub unique_frames: usize,
    pub unique_frame_fillers: usize,
}

pub fn stats_basic(lexicon: &Lexicon) -> BasicStats {
    let fillers: HashSet<&str> = lexicon
        .entries
        .iter()
        .map(|e| e.frame_fillers.as_str())
        .collect();
    BasicStats {
        entries: lexicon.len(),
        unique_verb_lemmas: lexicon.by_verb.len(),
        unique_frames: lexicon.by_frame.len(),
        unique_frame_fillers: fillers.len(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AuthorCounts {
    /// Sorted by author.
    pub rows: Vec<(String, usize)>,
    pub total: usize,
}

pub fn stats_by_author(lexicon: &Lexicon) -> AuthorCounts {
    let rows: Vec<(String, usize)> = lexicon
        .by_author
        .iter()
        .map(|(a, ids)| (a.clone(), ids.len()))
        .collect();
    let total = rows.iter().map(|(_, n)| n).sum();
    AuthorCounts { rows, total }
}

/// Most frequent frames, descending by count, ties broken by frame string.
pub fn frame_frequencies(lexicon: &Lexicon, top_k: usize) -> Vec<(String, usize)> {
    let mut rows: Vec<(String, usize)> = lexicon
        .by_frame
        .iter()
        .map(|(f, ids)| (f.clone(), ids.len()))
        .collect();
    rows.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    rows.truncate(top_k);
    rows
}

/// Conjunctive entry filters. `realization` and `mediator` are matched
/// against the elements of the frame string.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QueryFilter {
    pub verb: Option<String>,
    pub author: Option<String>,
    pub title: Option<String>,
    pub voice: Option<Voice>,
    pub frame_contains: Option<String>,
    pub realization: Option<String>,
    pub mediator: Option<String>,
}

impl QueryFilter {
    pub fn matches(&self, e: &LexiconEntry) -> bool {
        fn eq(want: &Option<String>, got: &str) -> bool {
            want.as_deref().is_none_or(|w| w == got)
        }
        if !(eq(&self.verb, &e.verb) && eq(&self.author, &e.author) && eq(&self.title, &e.title)) {
            return false;
        }
        if self.voice.is_some_and(|v| v != e.voice) {
            return false;
        }
        if let Some(s) = &self.frame_contains {
            if !e.frame.contains(s.as_str()) {
                return false;
            }
        }
        if self.realization.is_none() && self.mediator.is_none() {
            return true;
        }
        let Ok(parsed) = parse_frame(&e.frame) else {
            return false;
        };
        let realization_ok = self
            .realization
            .as_deref()
            .is_none_or(|r| parsed.elements.iter().any(|el| el.realization == r));
        let mediator_ok = self.mediator.as_deref().is_none_or(|m| {
            parsed
                .elements
                .iter()
                .any(|el| el.mediator.as_deref() == Some(m))
        });
        realization_ok && mediator_ok
    }
}

pub fn query_entries<'a>(lexicon: &'a Lexicon, filter: &QueryFilter) -> Vec<&'a LexiconEntry> {
    lexicon
        .entries
        .iter()
        .filter(|e| filter.matches(e))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionRecord {
    pub verb: String,
    pub frame: String,
    pub count: usize,
    pub authors: BTreeSet<String>,
}

/// Distinct frames of `verb` with at least `min_count` entries spread over
/// at least `min_authors` authors, most frequent first.
pub fn constructions_for_verb(
    lexicon: &Lexicon,
    verb: &str,
    min_count: usize,
    min_authors: usize,
) -> Vec<ConstructionRecord> {
    let mut by_frame: BTreeMap<&str, (usize, BTreeSet<String>)> = BTreeMap::new();
    for e in lexicon.verb_entries(verb) {
        let slot = by_frame.entry(&e.frame).or_default();
        slot.0 += 1;
        slot.1.insert(e.author.clone());
    }
    let mut out: Vec<ConstructionRecord> = by_frame
        .into_iter()
        .filter(|(_, (n, authors))| *n >= min_count && authors.len() >= min_authors)
        .map(|(frame, (count, authors))| ConstructionRecord {
            verb: verb.to_string(),
            frame: frame.to_string(),
            count,
            authors,
        })
        .collect();
    // stable: equal counts stay in frame order
    out.sort_by_key(|r| std::cmp::Reverse(r.count));
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConstructionDiff {
    pub only_in_lexicon: Vec<ConstructionRecord>,
    /// Sorted and deduplicated.
    pub only_in_known: Vec<String>,
}

/// Compares the verb's frames against an externally supplied list.
pub fn diff_constructions(
    lexicon: &Lexicon,
    verb: &str,
    known_frames: &[String],
) -> ConstructionDiff {
    let all = constructions_for_verb(lexicon, verb, 1, 1);
    let known: BTreeSet<&str> = known_frames.iter().map(String::as_str).collect();
    let present: HashSet<&str> = all.iter().map(|c| c.frame.as_str()).collect();
    let only_in_known = known
        .iter()
        .filter(|f| !present.contains(*f))
        .map(|f| f.to_string())
        .collect();
    let only_in_lexicon = all
        .into_iter()
        .filter(|c| !known.contains(c.frame.as_str()))
        .collect();
    ConstructionDiff {
        only_in_lexicon,
        only_in_known,
    }
}
