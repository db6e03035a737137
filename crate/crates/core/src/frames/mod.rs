//! Valency frame extraction from validated sentence trees.

mod extract;
mod format;
mod slot;

pub use extract::{
    collect_arguments, extract_entries, identify_predicates, realize_slot, sentence_entries,
    ExtractOptions, Extraction, LexiconEntry,
};
pub use format::{
    compose_frame, parse_frame, strip_fillers, FrameElement, FrameError, ParsedFrame,
};
pub use slot::{
    split_label, ArgumentSlot, Connector, Frame, Label, Mediator, MediatorKind, Realization,
    Relation,
};
