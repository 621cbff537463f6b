//! Mean number of distinct chords per song, by genre and release year.

use std::collections::{BTreeMap, HashSet};
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::dataset::SongRecord;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiversityRow {
    pub genre: String,
    pub year: i32,
    pub n_songs: usize,
    pub mean_distinct_chords: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiversityReport {
    /// Sorted by genre, then year; only observed pairs appear.
    pub rows: Vec<DiversityRow>,
    /// Songs left out because they have no year.
    pub missing_year: usize,
}

pub fn yearly_diversity_report(songs: &[SongRecord]) -> DiversityReport {
    let mut groups: BTreeMap<(&str, i32), (usize, usize)> = BTreeMap::new();
    let mut missing_year = 0;
    for song in songs {
        let Some(year) = song.year else {
            missing_year += 1;
            continue;
        };
        let distinct = song
            .chords
            .iter()
            .map(String::as_str)
            .collect::<HashSet<_>>()
            .len();
        let entry = groups.entry((&song.genre, year)).or_default();
        entry.0 += 1;
        entry.1 += distinct;
    }
    DiversityReport {
        rows: groups
            .into_iter()
            .map(|((genre, year), (n, total))| DiversityRow {
                genre: genre.to_string(),
                year,
                n_songs: n,
                mean_distinct_chords: total as f64 / n as f64,
            })
            .collect(),
        missing_year,
    }
}

impl DiversityReport {
    pub fn write_csv<W: Write>(&self, writer: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        for row in &self.rows {
            w.serialize(row)?;
        }
        if self.rows.is_empty() {
            w.write_record(["genre", "year", "n_songs", "mean_distinct_chords"])?;
        }
        w.flush()?;
        Ok(())
    }
}
