#![allow(dead_code)]

use cifra::dataset::SongRecord;
use cifra::features::FeatureVector;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

pub const ROOTS: [&str; 21] = [
    "C", "C#", "Db", "D", "D#", "Eb", "E", "Fb", "E#", "F", "F#", "Gb", "G", "G#", "Ab", "A", "A#", "Bb",
    "B", "Cb", "B#",
];

pub const QUALITIES: [&str; 24] = [
    "", "m", "7", "m7", "sus", "sus4", "sus2", "º", "°", "dim", "aug", "4", "6", "9", "7+", "m7+", "7M",
    "5-", "5+", "m6", "79", "m75-", "7(9)", "add9",
];

/// Tokens no lenient parse can rescue.
pub const GARBAGE: [&str; 4] = ["H7", "xyz", "(", "N.C."];

pub fn token<R: Rng>(rng: &mut R) -> String {
    let mut t = format!("{}{}", ROOTS.choose(rng).unwrap(), QUALITIES.choose(rng).unwrap());
    if rng.gen_bool(0.15) {
        t.push('/');
        t.push_str(ROOTS.choose(rng).unwrap());
    }
    t
}

/// A song of 1 to `max_len` well-formed tokens drawn from a small palette,
/// so repeats and ties happen often, with some garbage mixed in.
pub fn random_song<R: Rng>(rng: &mut R, id: usize, max_len: usize) -> SongRecord {
    let palette: Vec<String> = (0..rng.gen_range(1..=6)).map(|_| token(rng)).collect();
    let len = rng.gen_range(1..=max_len);
    let mut chords: Vec<String> = (0..len).map(|_| palette.choose(rng).unwrap().clone()).collect();
    if rng.gen_bool(0.2) {
        let at = rng.gen_range(0..=chords.len());
        chords.insert(at, GARBAGE.choose(rng).unwrap().to_string());
    }
    SongRecord {
        song_id: format!("s{id}"),
        artist: "a".into(),
        genre: "MPB".into(),
        key: if rng.gen_bool(0.9) {
            token(rng)
        } else {
            "??".into()
        },
        chords,
        popularity: rng.gen_bool(0.8).then(|| rng.gen_range(0.0..100.0)),
        year: rng.gen_bool(0.8).then(|| rng.gen_range(1950..2020)),
    }
}

pub fn song_strategy(max_len: usize) -> impl Strategy<Value = SongRecord> {
    any::<u64>().prop_map(move |seed| {
        let mut rng = cifra::rng::stream_rng(seed, 0);
        random_song(&mut rng, 0, max_len)
    })
}

/// Checks the per-vector invariants, describing the first violation.
pub fn check_invariants(v: &FeatureVector) -> Result<(), String> {
    let pcts = [
        ("pct_sus", v.pct_sus),
        ("pct_7th", v.pct_7th),
        ("pct_min7", v.pct_min7),
        ("pct_minor", v.pct_minor),
        ("pct_dim", v.pct_dim),
        ("pct_aug", v.pct_aug),
        ("pct_4th", v.pct_4th),
        ("pct_6th", v.pct_6th),
        ("pct_9th", v.pct_9th),
        ("pct_maj7", v.pct_maj7),
        ("pct_dim5", v.pct_dim5),
        ("pct_aug5", v.pct_aug5),
        ("pct_trans_1", v.pct_trans_1),
        ("pct_trans_2", v.pct_trans_2),
        ("pct_trans_3", v.pct_trans_3),
        ("pct_varying_bass", v.pct_varying_bass),
    ];
    for (name, x) in pcts {
        if !(0.0..=1.0).contains(&x) {
            return Err(format!("{name} = {x} outside [0, 1]"));
        }
    }
    if v.pct_min7 > v.pct_minor.min(v.pct_7th) {
        return Err(format!("pct_min7 {} exceeds min(pct_minor, pct_7th)", v.pct_min7));
    }
    if !(v.pct_trans_1 >= v.pct_trans_2 && v.pct_trans_2 >= v.pct_trans_3) {
        return Err("transition shares not sorted".into());
    }
    if v.pct_trans_1 + v.pct_trans_2 + v.pct_trans_3 > 1.0 + 1e-12 {
        return Err("transition shares sum above 1".into());
    }
    for (name, d) in [
        ("mean_fifths_dist_to_C", v.mean_fifths_dist_to_c),
        ("mean_semitone_dist_to_C", v.mean_semitone_dist_to_c),
    ] {
        if !(0.0..=6.0).contains(&d) {
            return Err(format!("{name} = {d} outside [0, 6]"));
        }
    }
    if v.total_chords < 1 || v.mode_chord_count > v.total_chords || v.mode_chord_count < 1 {
        return Err("chord counts inconsistent".into());
    }
    Ok(())
}

/// Gini impurity straight from its definition.
pub fn impurity(labels: &[usize]) -> f64 {
    let n = labels.len() as f64;
    let mut counts = std::collections::HashMap::new();
    for &l in labels {
        *counts.entry(l).or_insert(0usize) += 1;
    }
    1.0 - counts.values().map(|&c| (c as f64 / n).powi(2)).sum::<f64>()
}

/// Exhaustive search over every feature and midpoint of consecutive distinct
/// values, keeping the lowest feature then smallest threshold among maxima.
pub fn brute_force(x: &[Vec<f64>], y: &[usize], min_leaf: usize) -> Option<(usize, f64, f64)> {
    let n = x.len();
    let parent: Vec<usize> = y.to_vec();
    let imp = impurity(&parent);
    let mut best: Option<(usize, f64, f64)> = None;
    for f in 0..x[0].len() {
        let mut values: Vec<f64> = x.iter().map(|r| r[f]).collect();
        values.sort_by(f64::total_cmp);
        values.dedup();
        for w in values.windows(2) {
            let t = (w[0] + w[1]) / 2.0;
            let left: Vec<usize> = (0..n).filter(|&i| x[i][f] <= t).map(|i| y[i]).collect();
            let right: Vec<usize> = (0..n).filter(|&i| x[i][f] > t).map(|i| y[i]).collect();
            if left.len() < min_leaf || right.len() < min_leaf {
                continue;
            }
            let nl = left.len() as f64 / n as f64;
            let nr = right.len() as f64 / n as f64;
            let gain = imp - nl * impurity(&left) - nr * impurity(&right);
            let better = match best {
                None => true,
                Some((_, _, g)) => gain > g + 1e-12,
            };
            if better {
                best = Some((f, t, gain));
            }
        }
    }
    best.filter(|&(_, _, g)| g > 1e-12)
}
