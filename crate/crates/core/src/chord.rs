//! Cifra chord-symbol parsing.
//!
//! A token is read as `ROOT ACCIDENTAL? QUALITY* ("/" BASS)?`. The quality
//! atoms understood are the ones that appear on Brazilian chord charts:
//!
//! | atom                  | effect              |
//! |-----------------------|---------------------|
//! | `m` (not `maj`)       | minor third         |
//! | `º`, `°`, `dim`       | diminished          |
//! | `aug`                 | augmented           |
//! | `sus`, `sus2`, `sus4` | suspended           |
//! | `7+`, `7M`, `maj7`    | major seventh       |
//! | `7`                   | seventh             |
//! | `6`, `9`, `4`         | sixth, ninth, fourth|
//! | `5-`, `5b`, `b5`      | diminished fifth    |
//! | `5+`, `5#`, `#5`      | augmented fifth     |
//!
//! `add`, a bare `5` and parentheses are accepted and carry no flag. Anything
//! left over after the longest recognised prefix is either an error (strict
//! mode) or kept in [`ParsedChord::ignored`] so callers can count it.

use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChordError {
    #[error("malformed chord `{token}`: {reason}")]
    Malformed { token: String, reason: String },
}

impl ChordError {
    fn malformed(token: &str, reason: impl Into<String>) -> Self {
        ChordError::Malformed {
            token: token.to_string(),
            reason: reason.into(),
        }
    }

    /// The offending token text.
    pub fn token(&self) -> &str {
        match self {
            ChordError::Malformed { token, .. } => token,
        }
    }
}

/// How to treat characters that no quality atom recognises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ParseMode {
    /// Keep the recognised prefix and record the remainder.
    #[default]
    Lenient,
    /// Reject the token.
    Strict,
}

/// A pitch class with the spelling it was written in.
///
/// Equality and hashing look only at the semitone index, so `Bb == A#`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PitchClass {
    index: u8,
    spelled: String,
}

impl PitchClass {
    pub const C: u8 = 0;

    /// Builds a pitch class from a semitone index, spelled with sharps.
    pub fn from_index(index: u8) -> PitchClass {
        const NAMES: [&str; 12] = ["C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B"];
        let index = index % 12;
        PitchClass {
            index,
            spelled: NAMES[index as usize].to_string(),
        }
    }

    pub fn index(&self) -> u8 {
        self.index
    }

    pub fn spelled(&self) -> &str {
        &self.spelled
    }
}

impl PartialEq for PitchClass {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index
    }
}

impl Eq for PitchClass {}

impl Hash for PitchClass {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.index.hash(state);
    }
}

impl fmt::Display for PitchClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spelled)
    }
}

fn letter_index(letter: char) -> Option<u8> {
    Some(match letter {
        'C' => 0,
        'D' => 2,
        'E' => 4,
        'F' => 5,
        'G' => 7,
        'A' => 9,
        'B' => 11,
        _ => return None,
    })
}

/// Reads a note name (`A`..`G` plus optional `#` or `b`) from the front of
/// `text`, returning the pitch class and the number of bytes consumed.
fn read_note(text: &str) -> Option<(PitchClass, usize)> {
    let mut chars = text.chars();
    let letter = chars.next()?;
    let base = letter_index(letter)?;
    let (index, len) = match chars.next() {
        Some('#') => ((base + 1) % 12, 2),
        Some('b') => ((base + 11) % 12, 2),
        _ => (base, 1),
    };
    Some((
        PitchClass {
            index,
            spelled: text[..len].to_string(),
        },
        len,
    ))
}

/// Maps a note spelling to its pitch class.
pub fn normalize_root(text: &str) -> Result<PitchClass, ChordError> {
    match read_note(text) {
        Some((pc, len)) if len == text.len() => Ok(pc),
        _ => Err(ChordError::malformed(text, "not a note name")),
    }
}

/// Structured decomposition of one chord symbol.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParsedChord {
    pub root: PitchClass,
    pub minor_third: bool,
    pub diminished: bool,
    pub augmented: bool,
    pub suspended: bool,
    pub has_fourth: bool,
    pub has_sixth: bool,
    pub has_seventh: bool,
    pub has_major_seventh: bool,
    pub has_ninth: bool,
    pub dim_fifth: bool,
    pub aug_fifth: bool,
    pub bass: Option<PitchClass>,
    pub raw: String,
    /// Unrecognised trailing text, only ever set in lenient mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ignored: Option<String>,
}

/// Column names for [`ParsedChord::indicator_row`], in order.
pub const INDICATOR_NAMES: [&str; 12] = [
    "suspended",
    "seventh",
    "minor_seventh",
    "minor",
    "diminished",
    "augmented",
    "fourth",
    "sixth",
    "ninth",
    "major_seventh",
    "dim_fifth",
    "aug_fifth",
];

impl ParsedChord {
    fn bare(root: PitchClass, raw: &str) -> ParsedChord {
        ParsedChord {
            root,
            minor_third: false,
            diminished: false,
            augmented: false,
            suspended: false,
            has_fourth: false,
            has_sixth: false,
            has_seventh: false,
            has_major_seventh: false,
            has_ninth: false,
            dim_fifth: false,
            aug_fifth: false,
            bass: None,
            raw: raw.to_string(),
            ignored: None,
        }
    }

    /// Plain major quality: no minor third, not diminished, not augmented.
    pub fn is_major(&self) -> bool {
        !self.minor_third && !self.diminished && !self.augmented
    }

    /// Slash chord whose bass differs from the root.
    pub fn has_varying_bass(&self) -> bool {
        self.bass.as_ref().is_some_and(|b| *b != self.root)
    }

    /// Per-chord indicators in [`INDICATOR_NAMES`] order.
    pub fn indicator_row(&self) -> [bool; 12] {
        [
            self.suspended,
            self.has_seventh,
            self.minor_third && self.has_seventh,
            self.minor_third,
            self.diminished,
            self.augmented,
            self.has_fourth,
            self.has_sixth,
            self.has_ninth,
            self.has_major_seventh,
            self.dim_fifth,
            self.aug_fifth,
        ]
    }
}

#[derive(Clone, Copy)]
enum Atom {
    Minor,
    Diminished,
    Augmented,
    Suspended,
    MajorSeventh,
    Seventh,
    Sixth,
    Ninth,
    Fourth,
    DimFifth,
    AugFifth,
    Neutral,
}

// Longest spellings first so that e.g. `sus4` wins over `sus` and `7+` over `7`.
const ATOMS: &[(&str, Atom)] = &[
    ("maj7", Atom::MajorSeventh),
    ("sus2", Atom::Suspended),
    ("sus4", Atom::Suspended),
    ("sus", Atom::Suspended),
    ("dim", Atom::Diminished),
    ("aug", Atom::Augmented),
    ("add", Atom::Neutral),
    ("7+", Atom::MajorSeventh),
    ("7M", Atom::MajorSeventh),
    ("5-", Atom::DimFifth),
    ("5b", Atom::DimFifth),
    ("b5", Atom::DimFifth),
    ("5+", Atom::AugFifth),
    ("5#", Atom::AugFifth),
    ("#5", Atom::AugFifth),
    ("º", Atom::Diminished),
    ("°", Atom::Diminished),
    ("7", Atom::Seventh),
    ("6", Atom::Sixth),
    ("9", Atom::Ninth),
    ("4", Atom::Fourth),
    ("5", Atom::Neutral),
    ("(", Atom::Neutral),
    (")", Atom::Neutral),
];

fn next_atom(rest: &str) -> Option<(Atom, usize)> {
    if rest.starts_with('m') && !rest.starts_with("maj") {
        return Some((Atom::Minor, 1));
    }
    ATOMS
        .iter()
        .find(|(spelling, _)| rest.starts_with(spelling))
        .map(|(spelling, atom)| (*atom, spelling.len()))
}

/// Parses a chord token, ignoring unrecognised trailing text.
pub fn parse_chord(token: &str) -> Result<ParsedChord, ChordError> {
    parse_chord_with(token, ParseMode::Lenient)
}

pub fn parse_chord_with(token: &str, mode: ParseMode) -> Result<ParsedChord, ChordError> {
    if token.is_empty() {
        return Err(ChordError::malformed(token, "empty token"));
    }
    let (root, root_len) =
        read_note(token).ok_or_else(|| ChordError::malformed(token, "root must be A-G"))?;
    let mut chord = ParsedChord::bare(root, token);
    let mut rest = &token[root_len..];

    while !rest.is_empty() {
        if let Some(after) = rest.strip_prefix('/') {
            match read_note(after) {
                Some((bass, len)) if len == after.len() => {
                    chord.bass = Some(bass);
                    rest = "";
                }
                _ => break,
            }
            continue;
        }
        let Some((atom, len)) = next_atom(rest) else {
            break;
        };
        match atom {
            Atom::Minor => chord.minor_third = true,
            Atom::Diminished => chord.diminished = true,
            Atom::Augmented => chord.augmented = true,
            Atom::Suspended => chord.suspended = true,
            Atom::MajorSeventh => chord.has_major_seventh = true,
            Atom::Seventh => chord.has_seventh = true,
            Atom::Sixth => chord.has_sixth = true,
            Atom::Ninth => chord.has_ninth = true,
            Atom::Fourth => chord.has_fourth = true,
            Atom::DimFifth => chord.dim_fifth = true,
            Atom::AugFifth => chord.aug_fifth = true,
            Atom::Neutral => {}
        }
        rest = &rest[len..];
    }

    if chord.diminished && chord.augmented {
        return Err(ChordError::malformed(token, "both diminished and augmented"));
    }
    if chord.has_seventh && chord.has_major_seventh {
        return Err(ChordError::malformed(token, "both seventh and major seventh"));
    }
    if !rest.is_empty() {
        match mode {
            ParseMode::Strict => {
                return Err(ChordError::malformed(
                    token,
                    format!("unrecognised symbols `{rest}`"),
                ))
            }
            ParseMode::Lenient => chord.ignored = Some(rest.to_string()),
        }
    }
    Ok(chord)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flags(c: &ParsedChord) -> Vec<&'static str> {
        INDICATOR_NAMES
            .iter()
            .zip(c.indicator_row())
            .filter(|(_, on)| *on)
            .map(|(name, _)| *name)
            .collect()
    }

    #[test]
    fn plain_major_triad() {
        let c = parse_chord("C").unwrap();
        assert_eq!(c.root.index(), 0);
        assert!(c.is_major());
        assert!(flags(&c).is_empty());
        assert_eq!(c.bass, None);
    }

    #[test]
    fn minor_seventh() {
        let c = parse_chord("Gm7").unwrap();
        assert_eq!(c.root.index(), 7);
        assert!(c.minor_third && c.has_seventh && !c.has_sixth);
        assert_eq!(flags(&c), ["seventh", "minor_seventh", "minor"]);
    }

    #[test]
    fn slash_and_symbols() {
        let c = parse_chord("C/E").unwrap();
        assert_eq!(c.bass.as_ref().unwrap().index(), 4);
        assert!(flags(&c).is_empty());
        assert!(c.has_varying_bass());
        assert!(!parse_chord("C/C").unwrap().has_varying_bass());

        assert!(parse_chord("Bº").unwrap().diminished);
        assert!(parse_chord("B°").unwrap().diminished);
        assert!(parse_chord("Bdim").unwrap().diminished);

        let f = parse_chord("F7+").unwrap();
        assert!(f.has_major_seventh && !f.has_seventh && !f.minor_third);
        assert!(parse_chord("Cmaj7").unwrap().has_major_seventh);
        assert!(!parse_chord("Cmaj7").unwrap().minor_third);
        assert!(parse_chord("C7M").unwrap().has_major_seventh);
    }

    #[test]
    fn sus_four_is_not_a_fourth() {
        let c = parse_chord("Dsus4").unwrap();
        assert!(c.suspended && !c.has_fourth);
        let d = parse_chord("D4").unwrap();
        assert!(d.has_fourth && !d.suspended);
    }

    #[test]
    fn bad_root() {
        assert!(matches!(parse_chord("H7"), Err(ChordError::Malformed { .. })));
        assert!(parse_chord("").is_err());
        assert!(parse_chord("c").is_err());
    }

    #[test]
    fn trailing_noise() {
        let c = parse_chord("C7(11)").unwrap();
        assert!(c.has_seventh);
        assert_eq!(c.ignored.as_deref(), Some("11)"));
        assert!(parse_chord_with("C7(11)", ParseMode::Strict).is_err());
        assert!(parse_chord_with("C7(9)", ParseMode::Strict).unwrap().has_ninth);
        // a slash not followed by a note is noise, not a bass
        let s = parse_chord("C7/9").unwrap();
        assert_eq!(s.bass, None);
        assert_eq!(s.ignored.as_deref(), Some("/9"));
    }

    #[test]
    fn conflicting_qualities() {
        assert!(parse_chord("Cºaug").is_err());
        assert!(parse_chord("C77+").is_err());
    }

    #[test]
    fn note_spellings() {
        assert_eq!(normalize_root("C").unwrap().index(), 0);
        assert_eq!(normalize_root("Bb").unwrap().index(), 10);
        assert_eq!(normalize_root("A#").unwrap().index(), 10);
        assert_eq!(normalize_root("Bb").unwrap(), normalize_root("A#").unwrap());
        assert_eq!(normalize_root("Eb").unwrap().index(), 3);
        assert_eq!(normalize_root("Cb").unwrap().index(), 11);
        assert_eq!(normalize_root("B#").unwrap().index(), 0);
        assert!(normalize_root("Cm").is_err());
        assert!(normalize_root("X").is_err());
        assert!(normalize_root("").is_err());
    }

    #[test]
    fn raw_is_kept() {
        for t in ["C", "Am7+", "C#m7/G#", "G(add9)"] {
            assert_eq!(parse_chord(t).unwrap().raw, t);
        }
    }
}
