//! Canonical frame strings.
//!
//! An element is `(<mediator>)<REL><suffixes>[<realization>]`, the
//! mediator part present only for mediated slots. A frame is the voice,
//! an underscore, and the elements joined by commas:
//!
//! ```text
//! medio-passive_OBJ[dative],SBJ[nominative]
//! ```
//!
//! The filler variant appends `{<lemma>}` to every element.

use thiserror::Error;

use super::slot::{ArgumentSlot, Frame};
use crate::treebank::Voice;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("a frame needs at least one argument slot")]
    Empty,
    #[error("malformed frame {frame:?}: {reason}")]
    Malformed { frame: String, reason: &'static str },
}

fn element(slot: &ArgumentSlot) -> String {
    let mut s = String::new();
    if let Some(m) = &slot.mediator {
        s.push('(');
        s.push_str(&m.lemma);
        s.push(')');
    }
    s.push_str(&slot.label());
    s.push('[');
    s.push_str(slot.realization.name());
    s.push(']');
    s
}

/// Renders `(frame, frame_fillers)`. Slots are ordered as by [`Frame::new`].
pub fn compose_frame(voice: Voice, slots: &[ArgumentSlot]) -> Result<(String, String), FrameError> {
    if slots.is_empty() {
        return Err(FrameError::Empty);
    }
    let frame = Frame::new(voice, slots.to_vec());
    let prefix = format!("{}_", voice.name());
    let plain: Vec<String> = frame.slots.iter().map(element).collect();
    let filled: Vec<String> = frame
        .slots
        .iter()
        .zip(&plain)
        .map(|(slot, e)| format!("{e}{{{}}}", slot.filler_lemma))
        .collect();
    Ok((
        format!("{prefix}{}", plain.join(",")),
        format!("{prefix}{}", filled.join(",")),
    ))
}

/// Deletes every `{…}` group.
pub fn strip_fillers(frame_fillers: &str) -> String {
    let mut out = String::with_capacity(frame_fillers.len());
    let mut depth = 0usize;
    for c in frame_fillers.chars() {
        match c {
            '{' => depth += 1,
            '}' if depth > 0 => depth -= 1,
            _ if depth == 0 => out.push(c),
            _ => {}
        }
    }
    out
}

/// One parsed element of a frame string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameElement {
    pub mediator: Option<String>,
    /// Base relation plus suffixes, e.g. `OBJ_CO`.
    pub label: String,
    pub realization: String,
    pub filler: Option<String>,
}

impl FrameElement {
    pub fn base_relation(&self) -> &str {
        self.label.split('_').next().unwrap_or("")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedFrame {
    pub voice: String,
    pub elements: Vec<FrameElement>,
}

/// Parses either a frame or a frame-with-fillers string.
pub fn parse_frame(s: &str) -> Result<ParsedFrame, FrameError> {
    let malformed = |reason| FrameError::Malformed {
        frame: s.to_string(),
        reason,
    };
    // The voice never contains '_' or '(' while labels always follow the
    // first underscore.
    let (voice, rest) = s
        .split_once('_')
        .ok_or_else(|| malformed("missing voice prefix"))?;
    if voice.is_empty() {
        return Err(malformed("empty voice"));
    }

    let mut elements = Vec::new();
    let mut chars = rest.chars().peekable();
    loop {
        let mut mediator = None;
        if chars.peek() == Some(&'(') {
            chars.next();
            let m: String = chars.by_ref().take_while(|&c| c != ')').collect();
            mediator = Some(m);
        }
        let label: String = chars.by_ref().take_while(|&c| c != '[').collect();
        let realization: String = chars.by_ref().take_while(|&c| c != ']').collect();
        if label.is_empty() || realization.is_empty() {
            return Err(malformed("element lacks a label or realization"));
        }
        let mut filler = None;
        if chars.peek() == Some(&'{') {
            chars.next();
            let mut depth = 1;
            let mut f = String::new();
            for c in chars.by_ref() {
                match c {
                    '{' => depth += 1,
                    '}' => {
                        depth -= 1;
                        if depth == 0 {
                            break;
                        }
                    }
                    _ => {}
                }
                f.push(c);
            }
            if depth != 0 {
                return Err(malformed("unterminated filler"));
            }
            filler = Some(f);
        }
        elements.push(FrameElement {
            mediator,
            label,
            realization,
            filler,
        });
        match chars.next() {
            None => break,
            Some(',') => continue,
            Some(_) => return Err(malformed("expected ',' between elements")),
        }
    }
    Ok(ParsedFrame {
        voice: voice.to_string(),
        elements,
    })
}
