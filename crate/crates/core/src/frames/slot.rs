use std::fmt;

use crate::treebank::{Case, Mood, Voice};

/// Argument relations that open a slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Sbj,
    Obj,
    Pnom,
    Ocomp,
}

impl Relation {
    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Sbj => "SBJ",
            Relation::Obj => "OBJ",
            Relation::Pnom => "PNOM",
            Relation::Ocomp => "OCOMP",
        }
    }

    /// Matches a base label case-insensitively ("OComp" is OCOMP).
    pub fn from_base(base: &str) -> Option<Relation> {
        match base.to_ascii_uppercase().as_str() {
            "SBJ" => Some(Relation::Sbj),
            "OBJ" => Some(Relation::Obj),
            "PNOM" => Some(Relation::Pnom),
            "OCOMP" => Some(Relation::Ocomp),
            _ => None,
        }
    }
}

/// Structural nodes that may sit between a verb and its argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connector {
    Preposition,
    Conjunction,
    Coordination,
    Apposition,
}

impl Connector {
    pub fn from_base(base: &str) -> Option<Connector> {
        match base.to_ascii_uppercase().as_str() {
            "AUXP" => Some(Connector::Preposition),
            "AUXC" => Some(Connector::Conjunction),
            "COORD" => Some(Connector::Coordination),
            "APOS" => Some(Connector::Apposition),
            _ => None,
        }
    }
}

/// A relation label split into its base and `_CO` / `_AP` suffixes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Label<'a> {
    pub base: &'a str,
    pub coord: bool,
    pub apos: bool,
}

pub fn split_label(label: &str) -> Label<'_> {
    let mut parts = label.split('_');
    let base = parts.next().unwrap_or("");
    let mut out = Label {
        base,
        coord: false,
        apos: false,
    };
    for suffix in parts {
        match suffix.to_ascii_uppercase().as_str() {
            "CO" => out.coord = true,
            "AP" => out.apos = true,
            _ => {}
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MediatorKind {
    Preposition,
    Conjunction,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mediator {
    pub kind: MediatorKind,
    pub lemma: String,
}

/// How an argument is morphologically realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Realization {
    Case(Case),
    Mood(Mood),
    Adverb,
}

impl Realization {
    pub fn name(self) -> &'static str {
        match self {
            Realization::Case(c) => c.name(),
            Realization::Mood(m) => m.name(),
            Realization::Adverb => "adverb",
        }
    }
}

impl fmt::Display for Realization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArgumentSlot {
    pub relation: Relation,
    pub coord_suffix: bool,
    pub apos_suffix: bool,
    pub mediator: Option<Mediator>,
    pub realization: Realization,
    pub filler_lemma: String,
    pub filler_token_id: u32,
    /// 1-based document position of the filler within its sentence.
    pub surface_position: usize,
}

impl ArgumentSlot {
    /// Relation with suffixes, e.g. `OBJ_CO`. Slots sort on this.
    pub fn label(&self) -> String {
        let mut s = self.relation.as_str().to_string();
        if self.coord_suffix {
            s.push_str("_CO");
        }
        if self.apos_suffix {
            s.push_str("_AP");
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    pub voice: Voice,
    pub slots: Vec<ArgumentSlot>,
}

impl Frame {
    /// Sorts slots label-major, surface-minor.
    pub fn new(voice: Voice, mut slots: Vec<ArgumentSlot>) -> Frame {
        slots.sort_by_cached_key(|s| (s.label(), s.surface_position));
        Frame { voice, slots }
    }
}
