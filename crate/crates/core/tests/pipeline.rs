use cifra::cli::{run_experiment, ExperimentConfig};
use cifra::eval::lower_tail;
use cifra::eval::upper_tail;
use cifra::forest::ForestParams;
use cifra::synthetic::{generate, metadata_only_profiles, noise_profiles};

fn config(seed: u64) -> ExperimentConfig {
    ExperimentConfig {
        seed,
        forest: ForestParams {
            n_trees: 60,
            ..Default::default()
        },
        ..Default::default()
    }
}

#[test]
fn noise_corpus_stays_near_the_no_information_rate() {
    let songs = generate(&noise_profiles(), 100, 21);
    let out = run_experiment(&songs, &config(21)).unwrap();
    for r in &out.nested.reports {
        let n = r.n_test as u64;
        let k = r.correct as u64;
        let two_sided = 2.0 * upper_tail(k, n, r.nir).min(lower_tail(k, n, r.nir));
        assert!(
            two_sided > 0.001,
            "model {}: accuracy {} vs nir {}",
            r.model_id,
            r.accuracy,
            r.nir
        );
    }
}

#[test]
fn metadata_signal_only_helps_the_full_model() {
    let songs = generate(&metadata_only_profiles(), 100, 8);
    let out = run_experiment(&songs, &config(8)).unwrap();
    let acc: Vec<f64> = out.nested.reports.iter().map(|r| r.accuracy).collect();
    assert!(acc[3] > acc[0], "{acc:?}");
}

#[test]
fn a_different_seed_moves_the_split_but_not_the_schema() {
    let songs = generate(&noise_profiles(), 30, 2);
    let a = run_experiment(&songs, &config(1)).unwrap();
    let b = run_experiment(&songs, &config(2)).unwrap();
    assert_ne!(a.split.train_ids, b.split.train_ids);
    assert_eq!(a.split.train_ids.len(), b.split.train_ids.len());
    for (ra, rb) in a.nested.reports.iter().zip(&b.nested.reports) {
        assert_eq!(ra.feature_names, rb.feature_names);
    }
}

#[test]
fn split_is_stratified_and_shared() {
    let songs = generate(&metadata_only_profiles(), 37, 5);
    let out = run_experiment(&songs, &config(5)).unwrap();
    for genre in ["Bossa Nova", "MPB", "Rock", "Sertanejo"] {
        let is_genre = |id: &String| songs.iter().any(|s| &s.song_id == id && s.genre == genre);
        let train = out.split.train_ids.iter().filter(|id| is_genre(id)).count();
        let test = out.split.test_ids.iter().filter(|id| is_genre(id)).count();
        assert_eq!(train + test, 37);
        assert!((train as f64 - 0.7 * 37.0).abs() <= 1.0);
    }
    for (forest, report) in out.nested.forests.iter().zip(&out.nested.reports) {
        assert_eq!(forest.n_train, out.split.train_ids.len());
        assert_eq!(report.n_test, out.split.test_ids.len());
    }
}
