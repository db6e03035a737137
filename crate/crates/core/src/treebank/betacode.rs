//! Beta Code to polytonic Unicode Greek.
//!
//! Supported: the 24 letters (either ASCII case), `*` capital marker,
//! breathings `)` `(`, accents `/` `\` `=`, iota subscript `|`, diaeresis
//! `+`, elision apostrophe, and the punctuation `,` `.` `;` `:` `-` plus
//! spaces. Any other character is an error.

use thiserror::Error;
use unicode_normalization::UnicodeNormalization;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BetaCodeError {
    #[error("unrecognized character {character:?} at offset {offset}")]
    Unrecognized { character: char, offset: usize },
    #[error("diacritic {character:?} at offset {offset} has no base letter")]
    OrphanDiacritic { character: char, offset: usize },
    #[error("capital marker at offset {offset} is not followed by a letter")]
    DanglingCapital { offset: usize },
}

const PSILI: char = '\u{0313}';
const DASIA: char = '\u{0314}';
const ACUTE: char = '\u{0301}';
const GRAVE: char = '\u{0300}';
const PERISPOMENI: char = '\u{0342}';
const DIAERESIS: char = '\u{0308}';
const YPOGEGRAMMENI: char = '\u{0345}';

fn letter(c: char) -> Option<char> {
    Some(match c.to_ascii_lowercase() {
        'a' => 'α',
        'b' => 'β',
        'g' => 'γ',
        'd' => 'δ',
        'e' => 'ε',
        'z' => 'ζ',
        'h' => 'η',
        'q' => 'θ',
        'i' => 'ι',
        'k' => 'κ',
        'l' => 'λ',
        'm' => 'μ',
        'n' => 'ν',
        'c' => 'ξ',
        'o' => 'ο',
        'p' => 'π',
        'r' => 'ρ',
        's' => 'σ',
        't' => 'τ',
        'u' => 'υ',
        'f' => 'φ',
        'x' => 'χ',
        'y' => 'ψ',
        'w' => 'ω',
        _ => return None,
    })
}

/// Combining mark plus its slot in the canonical Greek stacking order
/// (breathing or diaeresis, then accent, then iota subscript). NFC only
/// composes precomposed forms when marks arrive in that order.
fn diacritic(c: char) -> Option<(u8, char)> {
    Some(match c {
        ')' => (0, PSILI),
        '(' => (0, DASIA),
        '+' => (0, DIAERESIS),
        '/' => (1, ACUTE),
        '\\' => (1, GRAVE),
        '=' => (1, PERISPOMENI),
        '|' => (2, YPOGEGRAMMENI),
        _ => return None,
    })
}

fn punctuation(c: char) -> Option<char> {
    Some(match c {
        ' ' => ' ',
        ',' => ',',
        '.' => '.',
        '-' => '-',
        ';' => ';',
        ':' => '\u{0387}',
        '\'' => '\u{2019}',
        _ => return None,
    })
}

fn is_word_char(c: char) -> bool {
    letter(c).is_some() || diacritic(c).is_some() || c == '*'
}

/// Transcodes Beta Code into NFC Unicode Greek.
pub fn beta_to_unicode(beta: &str) -> Result<String, BetaCodeError> {
    let chars: Vec<(usize, char)> = beta.char_indices().collect();
    let mut out = String::with_capacity(beta.len() * 2);
    let mut marks: Vec<(u8, char)> = Vec::new();
    let mut i = 0;

    while i < chars.len() {
        let (offset, c) = chars[i];
        marks.clear();

        let (capital, base) = if c == '*' {
            // Capitals carry their diacritics before the letter.
            let mut j = i + 1;
            while let Some(&(_, d)) = chars.get(j) {
                match diacritic(d) {
                    Some(m) => marks.push(m),
                    None => break,
                }
                j += 1;
            }
            match chars.get(j).and_then(|&(_, l)| letter(l)) {
                Some(l) => {
                    i = j + 1;
                    (true, l)
                }
                None => return Err(BetaCodeError::DanglingCapital { offset }),
            }
        } else if let Some(l) = letter(c) {
            i += 1;
            (false, l)
        } else if let Some(p) = punctuation(c) {
            out.push(p);
            i += 1;
            continue;
        } else if diacritic(c).is_some() {
            return Err(BetaCodeError::OrphanDiacritic {
                character: c,
                offset,
            });
        } else {
            return Err(BetaCodeError::Unrecognized {
                character: c,
                offset,
            });
        };

        while let Some(m) = chars.get(i).and_then(|&(_, d)| diacritic(d)) {
            marks.push(m);
            i += 1;
        }
        marks.sort_by_key(|&(rank, _)| rank);
        marks.dedup();

        let base = if capital {
            base.to_uppercase().next().unwrap_or(base)
        } else if base == 'σ' && !chars.get(i).is_some_and(|&(_, n)| is_word_char(n)) {
            'ς'
        } else {
            base
        };
        out.push(base);
        out.extend(marks.iter().map(|&(_, m)| m));
    }

    Ok(out.nfc().collect())
}

/// True when the string looks like Beta Code rather than Unicode Greek.
pub fn is_beta_code(s: &str) -> bool {
    s.is_ascii()
}
