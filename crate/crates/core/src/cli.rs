//! Command-line front end: one subcommand per pipeline stage plus an
//! end-to-end `experiment` that writes every artifact into a directory.

use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use serde::de::DeserializeOwned;
use serde::Serialize;
use thiserror::Error;

use crate::chord::{parse_chord_with, ChordError, ParseMode, INDICATOR_NAMES};
use crate::dataset::{
    apply_medians, check_genres, join_metadata, load_chords_csv, stratified_split, train_medians,
    write_chords_csv, write_metadata_csv, DatasetError, FeatureTable, SongRecord, SplitIndices,
    DEFAULT_GENRES,
};
use crate::eval::{
    evaluate, run_nested_experiment, yearly_diversity_report, DiversityReport, EvalError, EvalReport,
    NestedExperiment,
};
use crate::features::{featurize_corpus, nested_feature_names, CorpusStats, FeatureError};
use crate::forest::{Forest, ForestError, ForestParams};
use crate::rng::derive_seed;
use crate::synthetic;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("chord_parser: song `{song_id}`, chord #{position}: {source}")]
    Chord {
        song_id: String,
        position: usize,
        #[source]
        source: ChordError,
    },
    #[error("dataset: {0}")]
    Dataset(#[from] DatasetError),
    #[error("features: {0}")]
    Features(FeatureError),
    #[error("forest: {0}")]
    Forest(#[from] ForestError),
    #[error("eval: {0}")]
    Eval(#[from] EvalError),
    #[error("cli: {0}")]
    Usage(String),
    #[error("io: {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("json: {}: {source}", path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

impl From<FeatureError> for CliError {
    fn from(e: FeatureError) -> Self {
        match e {
            FeatureError::Chord {
                song_id,
                position,
                source,
            } => CliError::Chord {
                song_id,
                position,
                source,
            },
            other => CliError::Features(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "cifra",
    version,
    about = "Genre classification from cifra chord sequences"
)]
pub struct Cli {
    /// Worker threads; defaults to one per core. Results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse every chord token and write one row of indicators per chord.
    Parse(ParseArgs),
    /// Compute the 23-feature table.
    Featurize(FeaturizeArgs),
    /// Genre-stratified train/test split of a feature table.
    Split(SplitArgs),
    /// Train one of the four nested models.
    Train(TrainArgs),
    /// Evaluate a saved model on the test side of a split.
    Evaluate(EvaluateArgs),
    /// Run the whole pipeline and write every artifact to a directory.
    Experiment(ExperimentArgs),
    /// Mean distinct chords per song by genre and year.
    ReportDiversity(DiversityArgs),
    /// Write a seeded synthetic corpus.
    Synth(SynthArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CorpusArgs {
    /// Long-format chord CSV: song_id,artist,genre,key,chord,seq_no.
    #[arg(long)]
    pub chords: PathBuf,
    /// Optional CSV: song_id,popularity,year.
    #[arg(long)]
    pub metadata: Option<PathBuf>,
    /// Fail on the first malformed chord instead of skipping it.
    #[arg(long)]
    pub strict: bool,
    /// Allowed genre labels, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_GENRES.map(String::from))]
    pub genres: Vec<String>,
}

impl CorpusArgs {
    fn mode(&self) -> ParseMode {
        if self.strict {
            ParseMode::Strict
        } else {
            ParseMode::Lenient
        }
    }

    fn load(&self) -> Result<Vec<SongRecord>, CliError> {
        let songs = load_chords_csv(&self.chords)?;
        let songs = match &self.metadata {
            Some(m) => join_metadata(songs, m)?,
            None => songs,
        };
        check_genres(&songs, &self.genres)?;
        info!("loaded {} songs", songs.len());
        Ok(songs)
    }
}

#[derive(Debug, Clone, Args)]
pub struct ForestArgs {
    /// Number of trees.
    #[arg(long, default_value_t = 500)]
    pub trees: usize,
    /// Candidate features per split; defaults to floor(sqrt(p)).
    #[arg(long)]
    pub mtry: Option<usize>,
    /// Smallest number of rows a leaf may hold.
    #[arg(long, default_value_t = 1)]
    pub min_leaf: usize,
    /// Grow every tree on the full training set.
    #[arg(long)]
    pub no_bootstrap: bool,
}

impl ForestArgs {
    pub fn params(&self) -> Result<ForestParams, CliError> {
        if self.trees == 0 {
            return Err(CliError::Usage("--trees must be positive".into()));
        }
        if self.mtry == Some(0) {
            return Err(CliError::Usage("--mtry must be positive".into()));
        }
        if self.min_leaf == 0 {
            return Err(CliError::Usage("--min-leaf must be positive".into()));
        }
        Ok(ForestParams {
            n_trees: self.trees,
            mtry: self.mtry,
            min_leaf_size: self.min_leaf,
            bootstrap: !self.no_bootstrap,
        })
    }
}

#[derive(Debug, Clone, Args)]
pub struct SeedArgs {
    /// Master seed; every random draw is derived from it.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

impl SeedArgs {
    fn checked(&self) -> Result<u64, CliError> {
        if self.seed == 0 {
            return Err(CliError::Usage("--seed must be positive".into()));
        }
        Ok(self.seed)
    }
}

#[derive(Debug, Args)]
pub struct ParseArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    /// Output CSV; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FeaturizeArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SplitArgs {
    /// Feature table CSV written by `featurize`.
    #[arg(long)]
    pub features: PathBuf,
    /// Share of each genre that goes to training.
    #[arg(long, default_value_t = 0.7)]
    pub fraction: f64,
    #[command(flatten)]
    pub seed: SeedArgs,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[arg(long)]
    pub features: PathBuf,
    /// Split manifest written by `split`.
    #[arg(long)]
    pub split: PathBuf,
    /// Nested model: 1 = triads, 2 = +tetrads, 3 = +transitions, 4 = all 23.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(1..=4))]
    pub model: u8,
    #[command(flatten)]
    pub forest: ForestArgs,
    #[command(flatten)]
    pub seed: SeedArgs,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Model JSON written by `train` or `experiment`.
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long)]
    pub features: PathBuf,
    #[arg(long)]
    pub split: PathBuf,
    /// Report JSON.
    #[arg(long)]
    pub out: PathBuf,
    /// Row-normalized confusion matrix, two decimals.
    #[arg(long)]
    pub confusion: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[command(flatten)]
    pub forest: ForestArgs,
    #[command(flatten)]
    pub seed: SeedArgs,
    #[arg(long, default_value_t = 0.7)]
    pub fraction: f64,
    /// Output directory, created if needed.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct DiversityArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SynthProfile {
    /// Genres differ in chord alterations.
    Harmonic,
    /// Genres differ only in year, popularity and length.
    Metadata,
    /// Genres do not differ.
    Noise,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long, value_enum, default_value_t = SynthProfile::Harmonic)]
    pub profile: SynthProfile,
    #[arg(long, default_value_t = 100)]
    pub songs_per_genre: usize,
    #[command(flatten)]
    pub seed: SeedArgs,
    /// Directory for chords.csv and metadata.csv.
    #[arg(long)]
    pub out: PathBuf,
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path).map(BufWriter::new).map_err(io_err(path))
}

fn open(path: &Path) -> Result<BufReader<File>, CliError> {
    File::open(path).map(BufReader::new).map_err(io_err(path))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })?;
    writeln!(w).and_then(|_| w.flush()).map_err(io_err(path))
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    serde_json::from_reader(open(path)?).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })
}

fn save_model(path: &Path, forest: &Forest) -> Result<(), CliError> {
    let mut w = create(path)?;
    forest.to_writer(&mut w)?;
    w.flush().map_err(io_err(path))
}

fn load_model(path: &Path) -> Result<Forest, CliError> {
    Ok(Forest::from_reader(open(path)?)?)
}

fn check_fraction(fraction: f64) -> Result<f64, CliError> {
    if fraction > 0.0 && fraction < 1.0 {
        Ok(fraction)
    } else {
        Err(CliError::Usage(format!(
            "--fraction {fraction} is outside (0, 1)"
        )))
    }
}

/// Nested model id from the number of features a model uses; 0 if it is not
/// one of the four nested layouts.
fn model_id_for(forest: &Forest) -> usize {
    (1..=4)
        .find(|&m| {
            nested_feature_names(m)
                .iter()
                .copied()
                .eq(forest.feature_names.iter().map(String::as_str))
        })
        .unwrap_or(0)
}

/// Settings of an end-to-end run.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub fraction: f64,
    pub forest: ForestParams,
    pub mode: ParseMode,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            seed: 42,
            fraction: 0.7,
            forest: ForestParams::default(),
            mode: ParseMode::Lenient,
        }
    }
}

/// Everything an end-to-end run produces.
#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    pub stats: CorpusStats,
    pub table: FeatureTable,
    pub split: SplitIndices,
    pub nested: NestedExperiment,
    pub diversity: DiversityReport,
}

/// Featurizes, splits, trains and evaluates the four nested models.
pub fn run_experiment(songs: &[SongRecord], cfg: &ExperimentConfig) -> Result<ExperimentOutcome, CliError> {
    let (vectors, stats) = featurize_corpus(songs, cfg.mode)?;
    let table = FeatureTable::from_vectors(&vectors);
    let split = stratified_split(&table, cfg.fraction, derive_seed(cfg.seed, "split"))?;
    let nested = run_nested_experiment(&table, &split, &cfg.forest, derive_seed(cfg.seed, "forest"))?;
    Ok(ExperimentOutcome {
        stats,
        table,
        split,
        nested,
        diversity: yearly_diversity_report(songs),
    })
}

const SUMMARY_HEADER: [&str; 11] = [
    "model_id",
    "n_features",
    "accuracy",
    "ci_low",
    "ci_high",
    "nir",
    "pvalue_vs_nir",
    "kappa_marginal",
    "kappa_nir",
    "oob_accuracy",
    "n_test",
];

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn summary_record(r: &EvalReport) -> Vec<String> {
    vec![
        r.model_id.to_string(),
        r.feature_names.len().to_string(),
        r.accuracy.to_string(),
        r.ci_low.to_string(),
        r.ci_high.to_string(),
        r.nir.to_string(),
        format!("{:e}", r.pvalue_vs_nir),
        opt(r.kappa_marginal),
        opt(r.kappa_nir),
        opt(r.oob_accuracy),
        r.n_test.to_string(),
    ]
}

fn write_csv_file(
    path: &Path,
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(create(path)?);
    let wrap = |e: csv::Error| CliError::Dataset(e.into());
    w.write_record(header).map_err(wrap)?;
    for row in rows {
        w.write_record(&row).map_err(wrap)?;
    }
    w.flush().map_err(io_err(path))
}

fn write_report_files(dir: &Path, report: &EvalReport) -> Result<(), CliError> {
    let k = report.model_id;
    write_json(&dir.join(format!("report_{k}.json")), report)?;
    let path = dir.join(format!("confusion_{k}.csv"));
    report
        .confusion
        .write_display_csv(create(&path)?)
        .map_err(|e| CliError::Dataset(e.into()))?;
    let path = dir.join(format!("confusion_counts_{k}.csv"));
    report
        .confusion
        .write_counts_csv(create(&path)?)
        .map_err(|e| CliError::Dataset(e.into()))?;
    write_csv_file(
        &dir.join(format!("importance_{k}.csv")),
        &["rank", "feature", "importance"],
        report
            .importance
            .iter()
            .enumerate()
            .map(|(i, f)| vec![(i + 1).to_string(), f.feature.clone(), f.importance.to_string()]),
    )
}

/// Writes the artifacts of a run into `dir`.
pub fn write_experiment(outcome: &ExperimentOutcome, dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    outcome.table.write_csv(create(&dir.join("features.csv"))?)?;
    write_json(&dir.join("split.json"), &outcome.split)?;
    write_json(&dir.join("parse_stats.json"), &outcome.stats)?;
    for (forest, report) in outcome.nested.forests.iter().zip(&outcome.nested.reports) {
        save_model(&dir.join(format!("model_{}.json", report.model_id)), forest)?;
        write_report_files(dir, report)?;
    }
    write_csv_file(
        &dir.join("summary.csv"),
        &SUMMARY_HEADER,
        outcome.nested.reports.iter().map(summary_record),
    )?;
    let path = dir.join("diversity.csv");
    outcome
        .diversity
        .write_csv(create(&path)?)
        .map_err(|e| CliError::Dataset(e.into()))?;
    Ok(())
}

fn print_summary(reports: &[EvalReport]) {
    println!(
        "{:<6} {:>5} {:>8} {:>17} {:>8} {:>10} {:>8}",
        "model", "p", "acc", "95% CI", "NIR", "p-value", "kappa"
    );
    for r in reports {
        println!(
            "{:<6} {:>5} {:>8.4} [{:.4}, {:.4}] {:>8.4} {:>10.3e} {:>8}",
            r.model_id,
            r.feature_names.len(),
            r.accuracy,
            r.ci_low,
            r.ci_high,
            r.nir,
            r.pvalue_vs_nir,
            r.kappa_marginal
                .map(|k| format!("{k:.4}"))
                .unwrap_or_else(|| "-".into()),
        );
    }
}

fn print_stats(stats: &CorpusStats) {
    println!(
        "{} songs; {} malformed chord(s) skipped; {} chord(s) with ignored suffix; {} unparseable key(s); {} empty song(s) excluded",
        stats.songs, stats.malformed_tokens, stats.ignored_suffix_tokens, stats.bad_keys, stats.empty_songs
    );
}

fn cmd_parse(args: &ParseArgs) -> Result<(), CliError> {
    let songs = args.corpus.load()?;
    let mode = args.corpus.mode();
    let mut header = vec!["song_id", "position", "chord", "root", "bass"];
    header.extend(INDICATOR_NAMES);
    header.push("ignored");

    let mut rows = Vec::new();
    let mut malformed = 0usize;
    for song in &songs {
        for (i, token) in song.chords.iter().enumerate() {
            match parse_chord_with(token, mode) {
                Ok(c) => {
                    let mut row = vec![
                        song.song_id.clone(),
                        (i + 1).to_string(),
                        c.raw.clone(),
                        c.root.to_string(),
                        c.bass.as_ref().map(|b| b.to_string()).unwrap_or_default(),
                    ];
                    row.extend(c.indicator_row().iter().map(|&b| u8::from(b).to_string()));
                    row.push(c.ignored.clone().unwrap_or_default());
                    rows.push(row);
                }
                Err(source) if mode == ParseMode::Strict => {
                    return Err(CliError::Chord {
                        song_id: song.song_id.clone(),
                        position: i + 1,
                        source,
                    })
                }
                Err(e) => {
                    log::debug!("skipping: {e}");
                    malformed += 1;
                }
            }
        }
    }
    let summary = format!("{} chord(s) parsed; {malformed} malformed", rows.len());
    match &args.out {
        Some(path) => {
            write_csv_file(path, &header, rows)?;
            println!("{summary}");
        }
        None => {
            let mut w = csv::Writer::from_writer(io::stdout().lock());
            let wrap = |e: csv::Error| CliError::Dataset(e.into());
            w.write_record(&header).map_err(wrap)?;
            for row in rows {
                w.write_record(&row).map_err(wrap)?;
            }
            w.flush().map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            })?;
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn cmd_featurize(args: &FeaturizeArgs) -> Result<(), CliError> {
    let songs = args.corpus.load()?;
    let (vectors, stats) = featurize_corpus(&songs, args.corpus.mode())?;
    FeatureTable::from_vectors(&vectors).write_csv(create(&args.out)?)?;
    print_stats(&stats);
    Ok(())
}

fn cmd_split(args: &SplitArgs) -> Result<(), CliError> {
    let fraction = check_fraction(args.fraction)?;
    let table = FeatureTable::load_csv(&args.features)?;
    let split = stratified_split(&table, fraction, derive_seed(args.seed.checked()?, "split"))?;
    write_json(&args.out, &split)?;
    println!("{} train, {} test", split.train_ids.len(), split.test_ids.len());
    Ok(())
}

/// Trains nested model `model_id` on the train side of `split`.
pub fn train_model(
    table: &FeatureTable,
    split: &SplitIndices,
    model_id: usize,
    params: &ForestParams,
    seed: u64,
) -> Result<Forest, CliError> {
    let names = nested_feature_names(model_id);
    let train = table.subset(&split.train_ids)?.select_columns(names)?;
    let medians = train_medians(&train)?;
    let mut forest = Forest::fit(
        &apply_medians(&train, &medians),
        params,
        derive_seed(seed, "forest"),
    )?;
    forest.imputation_medians = medians;
    Ok(forest)
}

/// Reproduces the report of a saved model on the test side of `split`.
pub fn evaluate_model(
    forest: &Forest,
    table: &FeatureTable,
    split: &SplitIndices,
) -> Result<EvalReport, CliError> {
    let names: Vec<&str> = forest.feature_names.iter().map(String::as_str).collect();
    let test = table.subset(&split.test_ids)?.select_columns(&names)?;
    if forest.imputation_medians.len() != names.len() {
        return Err(ForestError::Format("imputation medians do not match the feature list".into()).into());
    }
    let dense = apply_medians(&test, &forest.imputation_medians);
    Ok(evaluate(forest, &dense, model_id_for(forest))?)
}

fn cmd_train(args: &TrainArgs) -> Result<(), CliError> {
    let table = FeatureTable::load_csv(&args.features)?;
    let split: SplitIndices = read_json(&args.split)?;
    let forest = train_model(
        &table,
        &split,
        usize::from(args.model),
        &args.forest.params()?,
        args.seed.checked()?,
    )?;
    save_model(&args.out, &forest)?;
    match forest.oob_accuracy {
        Some(a) => println!("model {} trained; OOB accuracy {a:.4}", args.model),
        None => println!("model {} trained", args.model),
    }
    Ok(())
}

fn cmd_evaluate(args: &EvaluateArgs) -> Result<(), CliError> {
    let forest = load_model(&args.model)?;
    let table = FeatureTable::load_csv(&args.features)?;
    let split: SplitIndices = read_json(&args.split)?;
    let report = evaluate_model(&forest, &table, &split)?;
    write_json(&args.out, &report)?;
    if let Some(path) = &args.confusion {
        report
            .confusion
            .write_display_csv(create(path)?)
            .map_err(|e| CliError::Dataset(e.into()))?;
    }
    print_summary(std::slice::from_ref(&report));
    Ok(())
}

fn cmd_experiment(args: &ExperimentArgs) -> Result<(), CliError> {
    let cfg = ExperimentConfig {
        seed: args.seed.checked()?,
        fraction: check_fraction(args.fraction)?,
        forest: args.forest.params()?,
        mode: args.corpus.mode(),
    };
    let songs = args.corpus.load()?;
    let outcome = run_experiment(&songs, &cfg)?;
    write_experiment(&outcome, &args.out)?;
    print_stats(&outcome.stats);
    println!(
        "{} train, {} test",
        outcome.split.train_ids.len(),
        outcome.split.test_ids.len()
    );
    print_summary(&outcome.nested.reports);
    println!("artifacts written to {}", args.out.display());
    Ok(())
}

fn cmd_diversity(args: &DiversityArgs) -> Result<(), CliError> {
    let songs = args.corpus.load()?;
    let report = yearly_diversity_report(&songs);
    report
        .write_csv(create(&args.out)?)
        .map_err(|e| CliError::Dataset(e.into()))?;
    println!(
        "{} genre-year cell(s); {} song(s) without a year left out",
        report.rows.len(),
        report.missing_year
    );
    Ok(())
}

fn cmd_synth(args: &SynthArgs) -> Result<(), CliError> {
    let profiles = match args.profile {
        SynthProfile::Harmonic => synthetic::harmonic_profiles(),
        SynthProfile::Metadata => synthetic::metadata_only_profiles(),
        SynthProfile::Noise => synthetic::noise_profiles(),
    };
    let songs = synthetic::generate(&profiles, args.songs_per_genre, args.seed.checked()?);
    fs::create_dir_all(&args.out).map_err(io_err(&args.out))?;
    write_chords_csv(&songs, create(&args.out.join("chords.csv"))?)?;
    write_metadata_csv(&songs, create(&args.out.join("metadata.csv"))?)?;
    println!("{} songs written to {}", songs.len(), args.out.display());
    Ok(())
}

fn dispatch(command: &Command) -> Result<(), CliError> {
    match command {
        Command::Parse(a) => cmd_parse(a),
        Command::Featurize(a) => cmd_featurize(a),
        Command::Split(a) => cmd_split(a),
        Command::Train(a) => cmd_train(a),
        Command::Evaluate(a) => cmd_evaluate(a),
        Command::Experiment(a) => cmd_experiment(a),
        Command::ReportDiversity(a) => cmd_diversity(a),
        Command::Synth(a) => cmd_synth(a),
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.threads {
        Some(0) => Err(CliError::Usage("--threads must be positive".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?
            .install(|| dispatch(&cli.command)),
        None => dispatch(&cli.command),
    }
}
