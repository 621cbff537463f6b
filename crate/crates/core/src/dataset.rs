//! Corpus ingestion, metadata join, feature tables, the genre-stratified
//! train/test split and train-median imputation.
//!
//! The chord corpus is long format, one row per chord occurrence:
//!
//! ```text
//! song_id,artist,genre,key,chord,seq_no
//! s1,Tom Jobim,Bossa Nova,C,C7M,1
//! ```
//!
//! Metadata is keyed by song: `song_id,popularity,year`, empty fields meaning
//! missing.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use log::{info, warn};
use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::features::{FeatureVector, FEATURE_NAMES};
use crate::rng::stream_rng;

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("schema error in {file}: {detail}")]
    Schema { file: String, detail: String },
    #[error("order error: song `{song_id}` repeats seq_no {seq_no}")]
    Order { song_id: String, seq_no: i64 },
    #[error("genre `{genre}` has {count} song(s); at least 2 are needed to split")]
    DegenerateGenre { genre: String, count: usize },
    #[error("column `{column}` has no observed values in the training split")]
    AllMissing { column: String },
    #[error("song `{song_id}` has genre `{genre}` outside the configured label set")]
    UnknownGenre { song_id: String, genre: String },
    #[error("split fraction {0} is outside (0, 1)")]
    BadFraction(f64),
    #[error("song `{0}` is not in the feature table")]
    UnknownSong(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn schema(file: &str, detail: impl Into<String>) -> DatasetError {
    DatasetError::Schema {
        file: file.to_string(),
        detail: detail.into(),
    }
}

/// Genre labels accepted by default.
pub const DEFAULT_GENRES: [&str; 8] = [
    "Bossa Nova",
    "Forró",
    "MPB",
    "Pop",
    "Reggae",
    "Rock",
    "Samba",
    "Sertanejo",
];

/// One song of the corpus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SongRecord {
    pub song_id: String,
    pub artist: String,
    pub genre: String,
    pub key: String,
    pub chords: Vec<String>,
    pub popularity: Option<f64>,
    pub year: Option<i32>,
}

pub const CHORDS_HEADER: [&str; 6] = ["song_id", "artist", "genre", "key", "chord", "seq_no"];
pub const METADATA_HEADER: [&str; 3] = ["song_id", "popularity", "year"];

fn check_header(file: &str, found: &csv::StringRecord, expected: &[&str]) -> Result<(), DatasetError> {
    let found: Vec<&str> = found.iter().collect();
    if found != expected {
        return Err(schema(
            file,
            format!("expected header {:?}, found {:?}", expected, found),
        ));
    }
    Ok(())
}

fn csv_reader<R: Read>(reader: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader)
}

pub fn load_chords_csv(path: impl AsRef<Path>) -> Result<Vec<SongRecord>, DatasetError> {
    let path = path.as_ref();
    read_chords(File::open(path)?, &path.display().to_string())
}

/// Groups long-format chord rows into songs, in order of first appearance.
pub fn read_chords<R: Read>(reader: R, name: &str) -> Result<Vec<SongRecord>, DatasetError> {
    let mut rdr = csv_reader(reader);
    check_header(name, rdr.headers()?, &CHORDS_HEADER)?;

    let mut order: Vec<String> = Vec::new();
    let mut songs: HashMap<String, (SongRecord, BTreeMap<i64, String>)> = HashMap::new();
    for (line, row) in rdr.records().enumerate() {
        let row = row?;
        let field = |i: usize| row.get(i).unwrap_or("").to_string();
        let song_id = field(0);
        if song_id.is_empty() {
            return Err(schema(name, format!("row {}: empty song_id", line + 2)));
        }
        let seq_no: i64 = field(5).parse().map_err(|_| {
            schema(
                name,
                format!("row {}: seq_no `{}` is not an integer", line + 2, field(5)),
            )
        })?;
        let entry = songs.entry(song_id.clone()).or_insert_with(|| {
            order.push(song_id.clone());
            (
                SongRecord {
                    song_id: song_id.clone(),
                    artist: field(1),
                    genre: field(2),
                    key: field(3),
                    chords: Vec::new(),
                    popularity: None,
                    year: None,
                },
                BTreeMap::new(),
            )
        });
        if entry.0.genre != field(2) || entry.0.artist != field(1) || entry.0.key != field(3) {
            return Err(schema(
                name,
                format!(
                    "row {}: song `{song_id}` changes artist/genre/key between rows",
                    line + 2
                ),
            ));
        }
        if entry.1.insert(seq_no, field(4)).is_some() {
            return Err(DatasetError::Order { song_id, seq_no });
        }
    }

    Ok(order
        .into_iter()
        .map(|id| {
            let (mut song, chords) = songs.remove(&id).expect("song registered on first row");
            song.chords = chords.into_values().collect();
            song
        })
        .collect())
}

/// Writes songs back out in the long chord format, `seq_no` counting from 1.
pub fn write_chords_csv<W: Write>(songs: &[SongRecord], writer: W) -> Result<(), DatasetError> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(CHORDS_HEADER)?;
    for s in songs {
        for (i, chord) in s.chords.iter().enumerate() {
            let seq = (i + 1).to_string();
            w.write_record([&s.song_id, &s.artist, &s.genre, &s.key, chord, &seq])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_metadata_csv<W: Write>(songs: &[SongRecord], writer: W) -> Result<(), DatasetError> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(METADATA_HEADER)?;
    for s in songs {
        let pop = s.popularity.map(|p| p.to_string()).unwrap_or_default();
        let year = s.year.map(|y| y.to_string()).unwrap_or_default();
        w.write_record([s.song_id.as_str(), &pop, &year])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Metadata {
    popularity: Option<f64>,
    year: Option<i32>,
}

fn read_metadata<R: Read>(reader: R, name: &str) -> Result<HashMap<String, Metadata>, DatasetError> {
    let mut rdr = csv_reader(reader);
    check_header(name, rdr.headers()?, &METADATA_HEADER)?;
    let mut out = HashMap::new();
    for (line, row) in rdr.records().enumerate() {
        let row = row?;
        let id = row.get(0).unwrap_or("").to_string();
        let popularity = match row.get(1).unwrap_or("") {
            "" => None,
            s => Some(s.parse::<f64>().map_err(|_| {
                schema(
                    name,
                    format!("row {}: popularity `{s}` is not a number", line + 2),
                )
            })?),
        };
        let year = match row.get(2).unwrap_or("") {
            "" => None,
            s => Some(
                s.parse::<i32>()
                    .map_err(|_| schema(name, format!("row {}: year `{s}` is not an integer", line + 2)))?,
            ),
        };
        if out.insert(id.clone(), Metadata { popularity, year }).is_some() {
            return Err(schema(name, format!("duplicate metadata for song `{id}`")));
        }
    }
    Ok(out)
}

pub fn join_metadata(
    songs: Vec<SongRecord>,
    metadata_csv: impl AsRef<Path>,
) -> Result<Vec<SongRecord>, DatasetError> {
    let path = metadata_csv.as_ref();
    join_metadata_from(songs, File::open(path)?, &path.display().to_string())
}

/// Left join of songs with a metadata table. Unmatched songs keep missing
/// popularity and year.
pub fn join_metadata_from<R: Read>(
    mut songs: Vec<SongRecord>,
    reader: R,
    name: &str,
) -> Result<Vec<SongRecord>, DatasetError> {
    let meta = read_metadata(reader, name)?;
    let mut matched = 0;
    for song in &mut songs {
        if let Some(m) = meta.get(&song.song_id) {
            song.popularity = m.popularity;
            song.year = m.year;
            matched += 1;
        }
    }
    info!("metadata joined for {matched} of {} songs", songs.len());
    Ok(songs)
}

/// Rejects songs whose genre is not in `labels`.
pub fn check_genres(songs: &[SongRecord], labels: &[String]) -> Result<(), DatasetError> {
    let allowed: HashSet<&str> = labels.iter().map(String::as_str).collect();
    match songs.iter().find(|s| !allowed.contains(s.genre.as_str())) {
        Some(s) => Err(DatasetError::UnknownGenre {
            song_id: s.song_id.clone(),
            genre: s.genre.clone(),
        }),
        None => Ok(()),
    }
}

/// One row of a feature table; `None` is a missing value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureRow {
    pub song_id: String,
    pub genre: String,
    pub values: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct FeatureTable {
    pub feature_names: Vec<String>,
    pub rows: Vec<FeatureRow>,
}

impl FeatureTable {
    pub fn from_vectors(vectors: &[FeatureVector]) -> FeatureTable {
        FeatureTable {
            feature_names: FEATURE_NAMES.iter().map(|s| s.to_string()).collect(),
            rows: vectors
                .iter()
                .map(|v| FeatureRow {
                    song_id: v.song_id.clone(),
                    genre: v.genre.clone(),
                    values: v.values().to_vec(),
                })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.feature_names.iter().position(|n| n == name)
    }

    /// Keeps only the named columns, in the given order.
    pub fn select_columns(&self, names: &[&str]) -> Result<FeatureTable, DatasetError> {
        let idx = names
            .iter()
            .map(|n| {
                self.column_index(n)
                    .ok_or_else(|| schema("feature table", format!("missing column `{n}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FeatureTable {
            feature_names: names.iter().map(|s| s.to_string()).collect(),
            rows: self
                .rows
                .iter()
                .map(|r| FeatureRow {
                    song_id: r.song_id.clone(),
                    genre: r.genre.clone(),
                    values: idx.iter().map(|&i| r.values[i]).collect(),
                })
                .collect(),
        })
    }

    /// Rows whose ids are in `ids`, in table order.
    pub fn subset(&self, ids: &[String]) -> Result<FeatureTable, DatasetError> {
        let wanted: HashSet<&str> = ids.iter().map(String::as_str).collect();
        let rows: Vec<FeatureRow> = self
            .rows
            .iter()
            .filter(|r| wanted.contains(r.song_id.as_str()))
            .cloned()
            .collect();
        if rows.len() != wanted.len() {
            let have: HashSet<&str> = rows.iter().map(|r| r.song_id.as_str()).collect();
            let missing = ids.iter().find(|id| !have.contains(id.as_str())).cloned();
            return Err(DatasetError::UnknownSong(missing.unwrap_or_default()));
        }
        Ok(FeatureTable {
            feature_names: self.feature_names.clone(),
            rows,
        })
    }

    /// Writes `song_id`, the feature columns and `genre`; missing values are
    /// empty fields.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<(), DatasetError> {
        let mut w = csv::Writer::from_writer(writer);
        let mut header = vec!["song_id"];
        header.extend(self.feature_names.iter().map(String::as_str));
        header.push("genre");
        w.write_record(&header)?;
        for row in &self.rows {
            let mut rec = vec![row.song_id.clone()];
            rec.extend(
                row.values
                    .iter()
                    .map(|v| v.map(|x| x.to_string()).unwrap_or_default()),
            );
            rec.push(row.genre.clone());
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(reader: R, name: &str) -> Result<FeatureTable, DatasetError> {
        let mut rdr = csv_reader(reader);
        let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
        if header.len() < 3 || header[0] != "song_id" || header[header.len() - 1] != "genre" {
            return Err(schema(
                name,
                "feature table must start with song_id and end with genre",
            ));
        }
        let feature_names = header[1..header.len() - 1].to_vec();
        let mut rows = Vec::new();
        for (line, rec) in rdr.records().enumerate() {
            let rec = rec?;
            let values = (1..header.len() - 1)
                .map(|i| match rec.get(i).unwrap_or("") {
                    "" => Ok(None),
                    s => s
                        .parse::<f64>()
                        .map(Some)
                        .map_err(|_| schema(name, format!("row {}: `{s}` is not a number", line + 2))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(FeatureRow {
                song_id: rec.get(0).unwrap_or("").to_string(),
                genre: rec.get(header.len() - 1).unwrap_or("").to_string(),
                values,
            });
        }
        Ok(FeatureTable { feature_names, rows })
    }

    pub fn load_csv(path: impl AsRef<Path>) -> Result<FeatureTable, DatasetError> {
        let path = path.as_ref();
        Self::read_csv(File::open(path)?, &path.display().to_string())
    }
}

/// Song ids assigned to each side of a split.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitIndices {
    pub train_ids: Vec<String>,
    pub test_ids: Vec<String>,
    pub seed: u64,
    pub fraction: f64,
}

/// Genre-stratified split. Within each genre, `round_half_up(fraction * n_g)`
/// songs (clamped to leave both sides non-empty) go to train after a seeded
/// shuffle. The outcome does not depend on the row order of `table`.
pub fn stratified_split(
    table: &FeatureTable,
    fraction: f64,
    seed: u64,
) -> Result<SplitIndices, DatasetError> {
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(DatasetError::BadFraction(fraction));
    }
    let mut by_genre: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for row in &table.rows {
        by_genre.entry(&row.genre).or_default().push(&row.song_id);
    }
    let mut rng = stream_rng(seed, 0);
    let mut train_ids = Vec::new();
    let mut test_ids = Vec::new();
    for (genre, mut ids) in by_genre {
        let n = ids.len();
        if n < 2 {
            return Err(DatasetError::DegenerateGenre {
                genre: genre.to_string(),
                count: n,
            });
        }
        ids.sort_unstable();
        ids.shuffle(&mut rng);
        let n_train = ((fraction * n as f64 + 0.5).floor() as usize).clamp(1, n - 1);
        train_ids.extend(ids[..n_train].iter().map(|s| s.to_string()));
        test_ids.extend(ids[n_train..].iter().map(|s| s.to_string()));
    }
    train_ids.sort();
    test_ids.sort();
    Ok(SplitIndices {
        train_ids,
        test_ids,
        seed,
        fraction,
    })
}

/// A feature table with every value present.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseTable {
    pub feature_names: Vec<String>,
    pub song_ids: Vec<String>,
    pub genres: Vec<String>,
    pub x: Vec<Vec<f64>>,
}

impl DenseTable {
    /// Keeps only the named columns, in the given order.
    pub fn select(&self, names: &[&str]) -> DenseTable {
        let idx: Vec<usize> = names
            .iter()
            .map(|n| {
                self.feature_names
                    .iter()
                    .position(|f| f == n)
                    .unwrap_or_else(|| panic!("no column `{n}`"))
            })
            .collect();
        DenseTable {
            feature_names: names.iter().map(|s| s.to_string()).collect(),
            song_ids: self.song_ids.clone(),
            genres: self.genres.clone(),
            x: self
                .x
                .iter()
                .map(|r| idx.iter().map(|&i| r[i]).collect())
                .collect(),
        }
    }
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    }
}

/// Per-column medians of the observed training values.
pub fn train_medians(train: &FeatureTable) -> Result<Vec<f64>, DatasetError> {
    (0..train.feature_names.len())
        .map(|j| {
            let mut col: Vec<f64> = train.rows.iter().filter_map(|r| r.values[j]).collect();
            if col.is_empty() {
                return Err(DatasetError::AllMissing {
                    column: train.feature_names[j].clone(),
                });
            }
            Ok(median(&mut col))
        })
        .collect()
}

/// Fills missing values using the given per-column medians.
pub fn apply_medians(table: &FeatureTable, medians: &[f64]) -> DenseTable {
    DenseTable {
        feature_names: table.feature_names.clone(),
        song_ids: table.rows.iter().map(|r| r.song_id.clone()).collect(),
        genres: table.rows.iter().map(|r| r.genre.clone()).collect(),
        x: table
            .rows
            .iter()
            .map(|r| {
                r.values
                    .iter()
                    .zip(medians)
                    .map(|(v, m)| v.unwrap_or(*m))
                    .collect()
            })
            .collect(),
    }
}

/// Replaces missing values in both tables with the training-split median of
/// the column. The test table never influences the medians.
pub fn impute_missing(
    train: &FeatureTable,
    test: &FeatureTable,
) -> Result<(DenseTable, DenseTable, Vec<f64>), DatasetError> {
    if train.feature_names != test.feature_names {
        return Err(schema("feature table", "train and test columns differ"));
    }
    let medians = train_medians(train)?;
    let filled = train
        .rows
        .iter()
        .chain(&test.rows)
        .flat_map(|r| &r.values)
        .filter(|v| v.is_none())
        .count();
    if filled > 0 {
        warn!("imputed {filled} missing value(s) with training medians");
    }
    Ok((
        apply_medians(train, &medians),
        apply_medians(test, &medians),
        medians,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEADER: &str = "song_id,artist,genre,key,chord,seq_no\n";

    #[test]
    fn groups_rows_by_song_in_seq_order() {
        let data = format!("{HEADER}s1,a,MPB,C,G,2\ns1,a,MPB,C,C,1\ns2,b,Rock,E,E,1\n");
        let songs = read_chords(data.as_bytes(), "t").unwrap();
        assert_eq!(songs.len(), 2);
        assert_eq!(songs[0].chords, ["C", "G"]);
        assert_eq!(songs[0].genre, "MPB");
        assert_eq!(songs[1].song_id, "s2");
    }

    #[test]
    fn quoted_fields() {
        let data = format!("{HEADER}s1,\"Jobim, Tom\",Bossa Nova,C,\"C/E\",1\n");
        let songs = read_chords(data.as_bytes(), "t").unwrap();
        assert_eq!(songs[0].artist, "Jobim, Tom");
        assert_eq!(songs[0].chords, ["C/E"]);
    }

    #[test]
    fn empty_and_bad_headers() {
        assert!(read_chords(HEADER.as_bytes(), "t").unwrap().is_empty());
        let bad = "song_id,artist,key,chord,seq_no\n";
        assert!(matches!(
            read_chords(bad.as_bytes(), "t"),
            Err(DatasetError::Schema { .. })
        ));
    }

    #[test]
    fn duplicate_seq_no() {
        let data = format!("{HEADER}s1,a,MPB,C,C,1\ns1,a,MPB,C,G,1\n");
        assert!(matches!(
            read_chords(data.as_bytes(), "t"),
            Err(DatasetError::Order { seq_no: 1, .. })
        ));
    }

    #[test]
    fn metadata_left_join() {
        let data = format!("{HEADER}s1,a,MPB,C,C,1\ns2,a,MPB,C,C,1\n");
        let songs = read_chords(data.as_bytes(), "t").unwrap();
        let meta = "song_id,popularity,year\ns1,55,1972\n";
        let joined = join_metadata_from(songs.clone(), meta.as_bytes(), "m").unwrap();
        assert_eq!(joined[0].popularity, Some(55.0));
        assert_eq!(joined[0].year, Some(1972));
        assert_eq!(joined[1].popularity, None);
        assert_eq!(joined[1].year, None);

        let dup = "song_id,popularity,year\ns1,55,1972\ns1,40,1980\n";
        assert!(matches!(
            join_metadata_from(songs.clone(), dup.as_bytes(), "m"),
            Err(DatasetError::Schema { .. })
        ));
        let partial = "song_id,popularity,year\ns1,,1972\n";
        let joined = join_metadata_from(songs, partial.as_bytes(), "m").unwrap();
        assert_eq!(joined[0].popularity, None);
        assert_eq!(joined[0].year, Some(1972));
    }

    fn table(genres: &[(&str, usize)]) -> FeatureTable {
        let mut rows = Vec::new();
        for (g, n) in genres {
            for i in 0..*n {
                rows.push(FeatureRow {
                    song_id: format!("{g}-{i:05}"),
                    genre: g.to_string(),
                    values: vec![Some(i as f64)],
                });
            }
        }
        FeatureTable {
            feature_names: vec!["f".into()],
            rows,
        }
    }

    #[test]
    fn split_sizes() {
        let s = stratified_split(&table(&[("MPB", 10)]), 0.7, 1).unwrap();
        assert_eq!((s.train_ids.len(), s.test_ids.len()), (7, 3));

        let s = stratified_split(&table(&[("Sertanejo", 2841)]), 0.7, 1).unwrap();
        assert_eq!((s.train_ids.len(), s.test_ids.len()), (1989, 852));
        assert!((s.train_ids.len() as i64 - 1992).abs() <= 5);
    }

    #[test]
    fn split_is_deterministic_and_order_free() {
        let t = table(&[("MPB", 30), ("Rock", 17), ("Samba", 5)]);
        let a = stratified_split(&t, 0.7, 9).unwrap();
        assert_eq!(a, stratified_split(&t, 0.7, 9).unwrap());
        let mut rev = t.clone();
        rev.rows.reverse();
        assert_eq!(a, stratified_split(&rev, 0.7, 9).unwrap());
        assert_ne!(a.train_ids, stratified_split(&t, 0.7, 10).unwrap().train_ids);
    }

    #[test]
    fn split_errors() {
        assert!(matches!(
            stratified_split(&table(&[("MPB", 10), ("Pop", 1)]), 0.7, 1),
            Err(DatasetError::DegenerateGenre { count: 1, .. })
        ));
        assert!(stratified_split(&table(&[("MPB", 10)]), 1.0, 1).is_err());
        assert!(stratified_split(&table(&[("MPB", 10)]), 0.0, 1).is_err());
    }

    fn one_col(values: &[Option<f64>]) -> FeatureTable {
        FeatureTable {
            feature_names: vec!["popularity".into()],
            rows: values
                .iter()
                .enumerate()
                .map(|(i, v)| FeatureRow {
                    song_id: i.to_string(),
                    genre: "MPB".into(),
                    values: vec![*v],
                })
                .collect(),
        }
    }

    #[test]
    fn median_imputation() {
        let train = one_col(&[Some(10.0), Some(20.0), None]);
        let test = one_col(&[None, Some(3.0)]);
        let (tr, te, med) = impute_missing(&train, &test).unwrap();
        assert_eq!(med, vec![15.0]);
        assert_eq!(tr.x, vec![vec![10.0], vec![20.0], vec![15.0]]);
        assert_eq!(te.x, vec![vec![15.0], vec![3.0]]);

        // test values never move the medians
        let test2 = one_col(&[Some(1e9), Some(-1e9)]);
        assert_eq!(impute_missing(&train, &test2).unwrap().2, med);
    }

    #[test]
    fn imputation_identity_and_all_missing() {
        let train = one_col(&[Some(1.0), Some(2.0)]);
        let (tr, _, _) = impute_missing(&train, &one_col(&[])).unwrap();
        assert_eq!(tr.x, vec![vec![1.0], vec![2.0]]);
        let empty = one_col(&[None, None]);
        assert!(matches!(
            impute_missing(&empty, &one_col(&[Some(1.0)])),
            Err(DatasetError::AllMissing { .. })
        ));
    }

    #[test]
    fn feature_table_csv_roundtrip() {
        let t = one_col(&[Some(0.1), None, Some(1.0 / 3.0)]);
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("song_id,popularity,genre\n"));
        assert!(text.contains("1,,MPB"));
        assert_eq!(FeatureTable::read_csv(&buf[..], "t").unwrap(), t);
    }

    #[test]
    fn genre_check() {
        let data = format!("{HEADER}s1,a,Funk,C,C,1\n");
        let songs = read_chords(data.as_bytes(), "t").unwrap();
        let labels: Vec<String> = DEFAULT_GENRES.iter().map(|s| s.to_string()).collect();
        assert!(matches!(
            check_genres(&songs, &labels),
            Err(DatasetError::UnknownGenre { .. })
        ));
    }
}
