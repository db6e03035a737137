use std::collections::HashSet;

use super::format::compose_frame;
use super::slot::{
    split_label, ArgumentSlot, Connector, Mediator, MediatorKind, Realization, Relation,
};
use crate::treebank::{validate_sentence, SentenceTree, ValidationReport, Voice, WordNode};

/// One lexicon row: a verb token with at least one argument.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LexiconEntry {
    pub author: String,
    pub title: String,
    pub subdoc: String,
    pub verb: String,
    pub voice: Voice,
    pub sentence_id: u64,
    pub root_id: u32,
    pub frame: String,
    pub frame_fillers: String,
}

impl LexiconEntry {
    /// The canonical lexicon order.
    pub fn sort_key(&self) -> (&str, &str, &str, u64, u32) {
        (
            &self.author,
            &self.title,
            &self.verb,
            self.sentence_id,
            self.root_id,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtractOptions {
    pub include_participles: bool,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        ExtractOptions {
            include_participles: true,
        }
    }
}

/// Verbal nodes that head a potential entry. Their own relation label
/// plays no role.
pub fn identify_predicates(tree: &SentenceTree, include_participles: bool) -> Vec<&WordNode> {
    tree.nodes
        .iter()
        .filter(|n| {
            if n.postag.is_participle() {
                include_participles
            } else {
                n.postag.is_verbal()
            }
        })
        .collect()
}

/// Fills in realization and filler lemma from the argument node.
pub fn realize_slot(node: &WordNode, mut slot: ArgumentSlot) -> ArgumentSlot {
    slot.realization = if node.postag.has_case() {
        Realization::Case(node.postag.case)
    } else if node.postag.is_verbal() {
        Realization::Mood(node.postag.mood)
    } else {
        Realization::Adverb
    };
    slot.filler_lemma = node.lemma.clone();
    slot
}

#[derive(Clone, Default)]
struct PathState {
    coord: bool,
    apos: bool,
    mediator: Option<Mediator>,
}

/// Argument slots of `verb`, reached directly or through any chain of
/// preposition, conjunction, coordination and apposition nodes.
pub fn collect_arguments(tree: &SentenceTree, verb: &WordNode) -> Vec<ArgumentSlot> {
    let mut slots = Vec::new();
    let mut visited = HashSet::from([verb.token_id]);
    walk(
        tree,
        verb.token_id,
        PathState::default(),
        &mut visited,
        &mut slots,
    );
    slots
}

fn walk(
    tree: &SentenceTree,
    from: u32,
    state: PathState,
    visited: &mut HashSet<u32>,
    slots: &mut Vec<ArgumentSlot>,
) {
    for child in tree.children(from) {
        if !visited.insert(child.token_id) {
            continue;
        }
        let label = split_label(&child.relation);
        if let Some(relation) = Relation::from_base(label.base) {
            let slot = ArgumentSlot {
                relation,
                coord_suffix: state.coord || label.coord,
                apos_suffix: state.apos || label.apos,
                mediator: state.mediator.clone(),
                realization: Realization::Adverb,
                filler_lemma: String::new(),
                filler_token_id: child.token_id,
                surface_position: tree.surface_position(child.token_id).unwrap_or(0) + 1,
            };
            slots.push(realize_slot(child, slot));
            continue;
        }
        let Some(connector) = Connector::from_base(label.base) else {
            continue;
        };
        let mut next = state.clone();
        match connector {
            Connector::Coordination => next.coord = true,
            Connector::Apposition => next.apos = true,
            Connector::Preposition | Connector::Conjunction if next.mediator.is_none() => {
                next.mediator = Some(Mediator {
                    kind: if connector == Connector::Preposition {
                        MediatorKind::Preposition
                    } else {
                        MediatorKind::Conjunction
                    },
                    lemma: child.lemma.clone(),
                });
            }
            _ => {}
        }
        walk(tree, child.token_id, next, visited, slots);
    }
}

/// Entries of one (valid) sentence, unsorted.
pub fn sentence_entries(tree: &SentenceTree, options: ExtractOptions) -> Vec<LexiconEntry> {
    identify_predicates(tree, options.include_participles)
        .into_iter()
        .filter_map(|verb| {
            let slots = collect_arguments(tree, verb);
            let (frame, frame_fillers) = compose_frame(verb.postag.voice, &slots).ok()?;
            Some(LexiconEntry {
                author: tree.author.clone(),
                title: tree.title.clone(),
                subdoc: tree.subdoc.clone(),
                verb: verb.lemma.clone(),
                voice: verb.postag.voice,
                sentence_id: tree.sentence_id,
                root_id: verb.token_id,
                frame,
                frame_fillers,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Default)]
pub struct Extraction {
    pub entries: Vec<LexiconEntry>,
    /// Reports of sentences left out because they failed validation.
    pub excluded: Vec<ValidationReport>,
    pub sentences_used: usize,
}

/// Validates every tree, extracts entries from the valid ones, and returns
/// them in canonical order.
pub fn extract_entries(corpus: &[SentenceTree], options: ExtractOptions) -> Extraction {
    let mut out = Extraction::default();
    for tree in corpus {
        let report = validate_sentence(tree);
        if !report.is_valid() {
            out.excluded.push(report);
            continue;
        }
        out.sentences_used += 1;
        out.entries.extend(sentence_entries(tree, options));
    }
    out.entries.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    out
}
