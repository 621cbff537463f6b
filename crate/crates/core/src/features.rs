//! Reduction of a song's chord sequence and metadata to 23 features.
//!
//! Features come in four groups, used cumulatively by the nested models:
//! triads (6), dissonant tetrads (6), top chord transitions (3) and a
//! miscellany of metadata and whole-song measures (8).

use std::collections::{BTreeMap, HashMap};
use std::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chord::{parse_chord_with, ChordError, ParseMode, ParsedChord, PitchClass};
use crate::dataset::SongRecord;
use crate::theory::{fifths_distance, semitone_distance};

#[derive(Debug, Error)]
pub enum FeatureError {
    #[error("song `{song_id}` has no parseable chords")]
    EmptySong { song_id: String },
    #[error("song `{song_id}`, chord #{position}: {source}")]
    Chord {
        song_id: String,
        position: usize,
        #[source]
        source: ChordError,
    },
}

pub const FEATURE_NAMES: [&str; 23] = [
    "pct_sus",
    "pct_7th",
    "pct_min7",
    "pct_minor",
    "pct_dim",
    "pct_aug",
    "pct_4th",
    "pct_6th",
    "pct_9th",
    "pct_maj7",
    "pct_dim5",
    "pct_aug5",
    "pct_trans_1",
    "pct_trans_2",
    "pct_trans_3",
    "popularity",
    "total_chords",
    "year",
    "key_is_mode_chord",
    "pct_varying_bass",
    "mean_fifths_dist_to_C",
    "mean_semitone_dist_to_C",
    "mode_chord_count",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FeatureGroup {
    Triads,
    Tetrads,
    Transitions,
    Miscellany,
}

impl FeatureGroup {
    pub const ALL: [FeatureGroup; 4] = [
        FeatureGroup::Triads,
        FeatureGroup::Tetrads,
        FeatureGroup::Transitions,
        FeatureGroup::Miscellany,
    ];

    pub fn columns(self) -> Range<usize> {
        match self {
            FeatureGroup::Triads => 0..6,
            FeatureGroup::Tetrads => 6..12,
            FeatureGroup::Transitions => 12..15,
            FeatureGroup::Miscellany => 15..23,
        }
    }

    pub fn names(self) -> &'static [&'static str] {
        &FEATURE_NAMES[self.columns()]
    }
}

/// Columns of nested model `model_id` (1 to 4): the first `model_id` groups.
pub fn nested_feature_names(model_id: usize) -> &'static [&'static str] {
    assert!((1..=4).contains(&model_id), "model id must be 1..=4");
    &FEATURE_NAMES[..FeatureGroup::ALL[model_id - 1].columns().end]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub song_id: String,
    pub genre: String,

    pub pct_sus: f64,
    pub pct_7th: f64,
    pub pct_min7: f64,
    pub pct_minor: f64,
    pub pct_dim: f64,
    pub pct_aug: f64,

    pub pct_4th: f64,
    pub pct_6th: f64,
    pub pct_9th: f64,
    pub pct_maj7: f64,
    pub pct_dim5: f64,
    pub pct_aug5: f64,

    pub pct_trans_1: f64,
    pub pct_trans_2: f64,
    pub pct_trans_3: f64,

    pub popularity: Option<f64>,
    pub total_chords: usize,
    pub year: Option<i32>,
    pub key_is_mode_chord: bool,
    pub pct_varying_bass: f64,
    pub mean_fifths_dist_to_c: f64,
    pub mean_semitone_dist_to_c: f64,
    pub mode_chord_count: usize,
}

impl FeatureVector {
    /// Values in [`FEATURE_NAMES`] order.
    pub fn values(&self) -> [Option<f64>; 23] {
        [
            Some(self.pct_sus),
            Some(self.pct_7th),
            Some(self.pct_min7),
            Some(self.pct_minor),
            Some(self.pct_dim),
            Some(self.pct_aug),
            Some(self.pct_4th),
            Some(self.pct_6th),
            Some(self.pct_9th),
            Some(self.pct_maj7),
            Some(self.pct_dim5),
            Some(self.pct_aug5),
            Some(self.pct_trans_1),
            Some(self.pct_trans_2),
            Some(self.pct_trans_3),
            self.popularity,
            Some(self.total_chords as f64),
            self.year.map(f64::from),
            Some(if self.key_is_mode_chord { 1.0 } else { 0.0 }),
            Some(self.pct_varying_bass),
            Some(self.mean_fifths_dist_to_c),
            Some(self.mean_semitone_dist_to_c),
            Some(self.mode_chord_count as f64),
        ]
    }
}

/// Shares of the three most frequent ordered bigrams of consecutive raw
/// tokens, self-transitions included. Zero-padded when fewer exist.
pub fn transition_percentages(chords: &[ParsedChord]) -> [f64; 3] {
    let mut out = [0.0; 3];
    if chords.len() < 2 {
        return out;
    }
    let mut counts: BTreeMap<(&str, &str), usize> = BTreeMap::new();
    for w in chords.windows(2) {
        *counts.entry((&w[0].raw, &w[1].raw)).or_default() += 1;
    }
    let mut ranked: Vec<((&str, &str), usize)> = counts.into_iter().collect();
    // BTreeMap order already sorts ties lexicographically; the sort is stable.
    ranked.sort_by_key(|e| std::cmp::Reverse(e.1));
    let total = (chords.len() - 1) as f64;
    for (slot, (_, count)) in out.iter_mut().zip(ranked) {
        *slot = count as f64 / total;
    }
    out
}

/// The most frequent raw token and its count; ties go to the token that
/// appears first in the song.
pub fn mode_chord(chords: &[ParsedChord]) -> Option<(&ParsedChord, usize)> {
    let mut counts: HashMap<&str, usize> = HashMap::new();
    for c in chords {
        *counts.entry(&c.raw).or_default() += 1;
    }
    let mut best: Option<(&ParsedChord, usize)> = None;
    for c in chords {
        let n = counts[c.raw.as_str()];
        if best.is_none_or(|(_, b)| n > b) {
            best = Some((c, n));
        }
    }
    best
}

/// Whether the song's most common chord shares root and minor/major polarity
/// with the declared key.
pub fn key_match_indicator(song_key: &str, chords: &[ParsedChord]) -> Result<bool, ChordError> {
    let key = parse_chord_with(song_key, ParseMode::Lenient)?;
    Ok(mode_chord(chords).is_some_and(|(c, _)| c.root == key.root && c.minor_third == key.minor_third))
}

/// Parse statistics gathered while featurizing one song.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseStats {
    /// Tokens dropped because they could not be parsed.
    pub malformed: usize,
    /// Tokens kept with unrecognised trailing text.
    pub ignored_suffix: usize,
    /// The key did not parse; the key indicator was set to 0.
    pub bad_key: bool,
}

/// Parses a song's tokens. Lenient mode drops malformed tokens and counts
/// them; strict mode fails on the first one.
pub fn parse_song(
    song: &SongRecord,
    mode: ParseMode,
) -> Result<(Vec<ParsedChord>, ParseStats), FeatureError> {
    let mut stats = ParseStats::default();
    let mut parsed = Vec::with_capacity(song.chords.len());
    for (position, token) in song.chords.iter().enumerate() {
        match parse_chord_with(token, mode) {
            Ok(c) => {
                if c.ignored.is_some() {
                    stats.ignored_suffix += 1;
                }
                parsed.push(c);
            }
            Err(source) if mode == ParseMode::Strict => {
                return Err(FeatureError::Chord {
                    song_id: song.song_id.clone(),
                    position: position + 1,
                    source,
                })
            }
            Err(_) => stats.malformed += 1,
        }
    }
    Ok((parsed, stats))
}

pub fn featurize_song(
    song: &SongRecord,
    mode: ParseMode,
) -> Result<(FeatureVector, ParseStats), FeatureError> {
    let (chords, mut stats) = parse_song(song, mode)?;
    if chords.is_empty() {
        return Err(FeatureError::EmptySong {
            song_id: song.song_id.clone(),
        });
    }
    let n = chords.len() as f64;

    let mut indicator_sums = [0usize; 12];
    for c in &chords {
        for (sum, on) in indicator_sums.iter_mut().zip(c.indicator_row()) {
            *sum += usize::from(on);
        }
    }
    let pct = indicator_sums.map(|s| s as f64 / n);
    let [p1, p2, p3] = transition_percentages(&chords);

    let c_root = PitchClass::from_index(PitchClass::C);
    let mean_dist = |f: fn(&PitchClass, &PitchClass) -> u8| {
        chords.iter().map(|c| f64::from(f(&c.root, &c_root))).sum::<f64>() / n
    };

    let key_is_mode_chord = match key_match_indicator(&song.key, &chords) {
        Ok(b) => b,
        Err(e) => {
            if mode == ParseMode::Strict {
                return Err(FeatureError::Chord {
                    song_id: song.song_id.clone(),
                    position: 0,
                    source: e,
                });
            }
            stats.bad_key = true;
            false
        }
    };
    let mode_chord_count = mode_chord(&chords).map_or(0, |(_, k)| k);

    let vector = FeatureVector {
        song_id: song.song_id.clone(),
        genre: song.genre.clone(),
        pct_sus: pct[0],
        pct_7th: pct[1],
        pct_min7: pct[2],
        pct_minor: pct[3],
        pct_dim: pct[4],
        pct_aug: pct[5],
        pct_4th: pct[6],
        pct_6th: pct[7],
        pct_9th: pct[8],
        pct_maj7: pct[9],
        pct_dim5: pct[10],
        pct_aug5: pct[11],
        pct_trans_1: p1,
        pct_trans_2: p2,
        pct_trans_3: p3,
        popularity: song.popularity,
        total_chords: chords.len(),
        year: song.year,
        key_is_mode_chord,
        pct_varying_bass: chords.iter().filter(|c| c.has_varying_bass()).count() as f64 / n,
        mean_fifths_dist_to_c: mean_dist(fifths_distance),
        mean_semitone_dist_to_c: mean_dist(semitone_distance),
        mode_chord_count,
    };
    Ok((vector, stats))
}

/// Totals over a whole corpus.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub songs: usize,
    pub empty_songs: usize,
    pub malformed_tokens: usize,
    pub ignored_suffix_tokens: usize,
    pub bad_keys: usize,
}

/// Featurizes every song in parallel, keeping corpus order. Songs without a
/// parseable chord are dropped and counted; in strict mode the first bad
/// token aborts.
pub fn featurize_corpus(
    songs: &[SongRecord],
    mode: ParseMode,
) -> Result<(Vec<FeatureVector>, CorpusStats), FeatureError> {
    use rayon::prelude::*;

    let results: Vec<Result<(FeatureVector, ParseStats), FeatureError>> =
        songs.par_iter().map(|s| featurize_song(s, mode)).collect();
    let mut stats = CorpusStats {
        songs: songs.len(),
        ..Default::default()
    };
    let mut vectors = Vec::with_capacity(songs.len());
    for result in results {
        match result {
            Ok((v, s)) => {
                stats.malformed_tokens += s.malformed;
                stats.ignored_suffix_tokens += s.ignored_suffix;
                stats.bad_keys += usize::from(s.bad_key);
                vectors.push(v);
            }
            Err(FeatureError::EmptySong { song_id }) => {
                log::warn!("song `{song_id}` has no parseable chords; excluded");
                stats.empty_songs += 1;
            }
            Err(e) => return Err(e),
        }
    }
    Ok((vectors, stats))
}
