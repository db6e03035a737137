//! Positional morphology tags of the analytical layer.
//!
//! A tag is nine characters, one per feature:
//!
//! | pos | feature | letters |
//! |-----|---------|---------|
//! | 1 | part of speech | `n` noun, `v` verb, `t` participle, `a` adjective, `d` adverb, `l` article, `g` particle, `c` conjunction, `r` preposition, `p` pronoun, `m` numeral, `i` interjection, `u` punctuation, `e` exclamation, `x` irregular |
//! | 2 | person | `1` `2` `3` |
//! | 3 | number | `s` singular, `d` dual, `p` plural |
//! | 4 | tense | `p` present, `i` imperfect, `r` perfect, `l` pluperfect, `t` future perfect, `f` future, `a` aorist |
//! | 5 | mood | `i` indicative, `s` subjunctive, `o` optative, `n` infinitive, `m` imperative, `p` participle |
//! | 6 | voice | `a` active, `p` passive, `m` middle, `e` medio-passive |
//! | 7 | gender | `m` masculine, `f` feminine, `n` neuter |
//! | 8 | case | `n` nominative, `g` genitive, `d` dative, `a` accusative, `v` vocative |
//! | 9 | degree | `c` comparative, `s` superlative |
//!
//! `-` marks an unspecified feature at any position. Tags shorter than nine
//! characters are right-padded with `-`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub const TAG_LENGTH: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosTagError {
    #[error("postag {tag:?} is longer than {TAG_LENGTH} characters")]
    TooLong { tag: String },
    #[error("postag {tag:?} is empty")]
    Empty { tag: String },
    #[error("invalid character {character:?} at position {position} of postag {tag:?}")]
    InvalidChar {
        tag: String,
        position: usize,
        character: char,
    },
}

/// Declares a tag feature enum together with its letter table. The first
/// variant is always `Unspecified`, written as `-`.
macro_rules! feature {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $letter:literal, $label:literal;)* }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
        pub enum $name {
            #[default]
            Unspecified,
            $($variant,)*
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$name::Unspecified, $($name::$variant,)*];

            pub fn from_letter(c: char) -> Option<Self> {
                match c {
                    '-' => Some($name::Unspecified),
                    $($letter => Some($name::$variant),)*
                    _ => None,
                }
            }

            pub fn letter(self) -> char {
                match self {
                    $name::Unspecified => '-',
                    $($name::$variant => $letter,)*
                }
            }

            /// Lowercase English name, as used in frame strings.
            pub fn name(self) -> &'static str {
                match self {
                    $name::Unspecified => "unspecified",
                    $($name::$variant => $label,)*
                }
            }

            pub fn from_name(name: &str) -> Option<Self> {
                Self::ALL.iter().copied().find(|v| v.name() == name)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }
    };
}

feature!(
    PartOfSpeech {
        Noun => 'n', "noun";
        Verb => 'v', "verb";
        Participle => 't', "participle";
        Adjective => 'a', "adjective";
        Adverb => 'd', "adverb";
        Article => 'l', "article";
        Particle => 'g', "particle";
        Conjunction => 'c', "conjunction";
        Preposition => 'r', "preposition";
        Pronoun => 'p', "pronoun";
        Numeral => 'm', "numeral";
        Interjection => 'i', "interjection";
        Punctuation => 'u', "punctuation";
        Exclamation => 'e', "exclamation";
        Irregular => 'x', "irregular";
    }
);

feature!(
    Person {
        First => '1', "first";
        Second => '2', "second";
        Third => '3', "third";
    }
);

feature!(
    Number {
        Singular => 's', "singular";
        Dual => 'd', "dual";
        Plural => 'p', "plural";
    }
);

feature!(
    Tense {
        Present => 'p', "present";
        Imperfect => 'i', "imperfect";
        Perfect => 'r', "perfect";
        Pluperfect => 'l', "pluperfect";
        FuturePerfect => 't', "future-perfect";
        Future => 'f', "future";
        Aorist => 'a', "aorist";
    }
);

feature!(
    Mood {
        Indicative => 'i', "indicative";
        Subjunctive => 's', "subjunctive";
        Optative => 'o', "optative";
        Infinitive => 'n', "infinitive";
        Imperative => 'm', "imperative";
        Participle => 'p', "participle";
    }
);

feature!(
    Voice {
        Active => 'a', "active";
        Passive => 'p', "passive";
        Middle => 'm', "middle";
        MedioPassive => 'e', "medio-passive";
    }
);

feature!(
    Gender {
        Masculine => 'm', "masculine";
        Feminine => 'f', "feminine";
        Neuter => 'n', "neuter";
    }
);

feature!(
    Case {
        Nominative => 'n', "nominative";
        Genitive => 'g', "genitive";
        Dative => 'd', "dative";
        Accusative => 'a', "accusative";
        Vocative => 'v', "vocative";
    }
);

feature!(
    Degree {
        Comparative => 'c', "comparative";
        Superlative => 's', "superlative";
    }
);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PosTag {
    pub pos: PartOfSpeech,
    pub person: Person,
    pub number: Number,
    pub tense: Tense,
    pub mood: Mood,
    pub voice: Voice,
    pub gender: Gender,
    pub case: Case,
    pub degree: Degree,
}

impl PosTag {
    pub fn decode(tag: &str) -> Result<PosTag, PosTagError> {
        let chars: Vec<char> = tag.chars().collect();
        if chars.is_empty() {
            return Err(PosTagError::Empty { tag: tag.into() });
        }
        if chars.len() > TAG_LENGTH {
            return Err(PosTagError::TooLong { tag: tag.into() });
        }
        let at = |i: usize| chars.get(i).copied().unwrap_or('-');
        let bad = |position: usize| PosTagError::InvalidChar {
            tag: tag.into(),
            position: position + 1,
            character: at(position),
        };

        Ok(PosTag {
            pos: PartOfSpeech::from_letter(at(0)).ok_or_else(|| bad(0))?,
            person: Person::from_letter(at(1)).ok_or_else(|| bad(1))?,
            number: Number::from_letter(at(2)).ok_or_else(|| bad(2))?,
            tense: Tense::from_letter(at(3)).ok_or_else(|| bad(3))?,
            mood: Mood::from_letter(at(4)).ok_or_else(|| bad(4))?,
            voice: Voice::from_letter(at(5)).ok_or_else(|| bad(5))?,
            gender: Gender::from_letter(at(6)).ok_or_else(|| bad(6))?,
            case: Case::from_letter(at(7)).ok_or_else(|| bad(7))?,
            degree: Degree::from_letter(at(8)).ok_or_else(|| bad(8))?,
        })
    }

    /// The full nine-character form.
    pub fn encode(&self) -> String {
        [
            self.pos.letter(),
            self.person.letter(),
            self.number.letter(),
            self.tense.letter(),
            self.mood.letter(),
            self.voice.letter(),
            self.gender.letter(),
            self.case.letter(),
            self.degree.letter(),
        ]
        .iter()
        .collect()
    }

    /// Finite verb, infinitive, or (verb-tagged) participle.
    pub fn is_verbal(&self) -> bool {
        matches!(self.pos, PartOfSpeech::Verb | PartOfSpeech::Participle)
    }

    /// True for `t` tags and for `v` tags whose mood is participle.
    pub fn is_participle(&self) -> bool {
        self.pos == PartOfSpeech::Participle
            || (self.pos == PartOfSpeech::Verb && self.mood == Mood::Participle)
    }

    pub fn has_case(&self) -> bool {
        self.case != Case::Unspecified
    }
}

impl FromStr for PosTag {
    type Err = PosTagError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PosTag::decode(s)
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}
