//! Seeded synthetic cifra corpora with controllable genre signal.
//!
//! Each song draws a palette of chords from its genre's alteration rates and
//! then walks over the palette, so transitions repeat the way they do in real
//! songs. Genres can differ in their chord alterations, in their metadata
//! (year, popularity, length), or in nothing at all.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::dataset::SongRecord;
use crate::rng::stream_rng;

const ROOTS: [&str; 17] = [
    "C", "C#", "Db", "D", "Eb", "E", "F", "F#", "Gb", "G", "Ab", "G#", "A", "Bb", "A#", "B", "D#",
];

/// Per-chord probabilities and metadata ranges of one genre.
#[derive(Debug, Clone, PartialEq)]
pub struct GenreProfile {
    pub name: String,
    pub sus: f64,
    pub seventh: f64,
    pub minor: f64,
    pub dim: f64,
    pub aug: f64,
    pub fourth: f64,
    pub sixth: f64,
    pub ninth: f64,
    pub maj7: f64,
    pub dim5: f64,
    pub aug5: f64,
    pub slash: f64,
    pub years: (i32, i32),
    pub popularity: (f64, f64),
    pub length: (usize, usize),
    pub palette: (usize, usize),
    /// Probability that a song lacks popularity or year.
    pub missing: f64,
}

impl GenreProfile {
    /// A plain profile: mostly major and minor triads, shared metadata ranges.
    pub fn plain(name: &str) -> GenreProfile {
        GenreProfile {
            name: name.to_string(),
            sus: 0.05,
            seventh: 0.1,
            minor: 0.3,
            dim: 0.02,
            aug: 0.02,
            fourth: 0.05,
            sixth: 0.05,
            ninth: 0.05,
            maj7: 0.05,
            dim5: 0.02,
            aug5: 0.02,
            slash: 0.1,
            years: (1960, 2018),
            popularity: (20.0, 80.0),
            length: (30, 60),
            palette: (6, 10),
            missing: 0.05,
        }
    }
}

fn chord_token<R: Rng>(p: &GenreProfile, rng: &mut R) -> String {
    let mut t = ROOTS.choose(rng).expect("non-empty").to_string();
    let q: f64 = rng.gen();
    if q < p.dim {
        t.push('º');
    } else if q < p.dim + p.aug {
        t.push_str("aug");
    } else if q < p.dim + p.aug + p.minor {
        t.push('m');
    }
    // `4` before `sus` so it is not read as `sus4`
    if rng.gen_bool(p.fourth) {
        t.push('4');
    }
    if rng.gen_bool(p.sus) {
        t.push_str("sus");
    }
    if rng.gen_bool(p.maj7) {
        t.push_str("7+");
    } else if rng.gen_bool(p.seventh) {
        t.push('7');
    }
    if rng.gen_bool(p.sixth) {
        t.push('6');
    }
    if rng.gen_bool(p.ninth) {
        t.push('9');
    }
    if rng.gen_bool(p.dim5) {
        t.push_str("5-");
    }
    if rng.gen_bool(p.aug5) {
        t.push_str("5+");
    }
    if rng.gen_bool(p.slash) {
        t.push('/');
        t.push_str(ROOTS.choose(rng).expect("non-empty"));
    }
    t
}

fn song<R: Rng>(p: &GenreProfile, id: String, rng: &mut R) -> SongRecord {
    let palette_size = rng.gen_range(p.palette.0..=p.palette.1);
    let palette: Vec<String> = (0..palette_size).map(|_| chord_token(p, rng)).collect();
    let len = rng.gen_range(p.length.0..=p.length.1);
    let mut at = 0usize;
    let chords: Vec<String> = (0..len)
        .map(|_| {
            let c = palette[at].clone();
            at = if rng.gen_bool(0.7) {
                (at + 1) % palette_size
            } else {
                rng.gen_range(0..palette_size)
            };
            c
        })
        .collect();
    let key = if rng.gen_bool(0.7) {
        // root and quality of the first chord, without extensions
        let first = &chords[0];
        let root_len = if first[1..].starts_with(['#', 'b']) { 2 } else { 1 };
        let minor = first[root_len..].starts_with('m');
        format!("{}{}", &first[..root_len], if minor { "m" } else { "" })
    } else {
        ROOTS.choose(rng).expect("non-empty").to_string()
    };
    SongRecord {
        artist: format!("{} artist {}", p.name, rng.gen_range(0..10)),
        song_id: id,
        genre: p.name.clone(),
        key,
        chords,
        popularity: (!rng.gen_bool(p.missing))
            .then(|| rng.gen_range(p.popularity.0..=p.popularity.1).round()),
        year: (!rng.gen_bool(p.missing)).then(|| rng.gen_range(p.years.0..=p.years.1)),
    }
}

/// Generates `songs_per_genre` songs for each profile.
pub fn generate(profiles: &[GenreProfile], songs_per_genre: usize, seed: u64) -> Vec<SongRecord> {
    let mut out = Vec::with_capacity(profiles.len() * songs_per_genre);
    for (g, p) in profiles.iter().enumerate() {
        let mut rng = stream_rng(seed, g as u64);
        for i in 0..songs_per_genre {
            out.push(song(p, format!("g{g}-s{i:04}"), &mut rng));
        }
    }
    out
}

/// Four genres told apart by their triad-level alterations: suspended,
/// seventh, minor and diminished/augmented chords respectively.
pub fn harmonic_profiles() -> Vec<GenreProfile> {
    let mut bossa = GenreProfile::plain("Bossa Nova");
    bossa.seventh = 0.8;
    bossa.minor = 0.15;
    let mut rock = GenreProfile::plain("Rock");
    rock.sus = 0.7;
    rock.seventh = 0.02;
    rock.minor = 0.15;
    let mut samba = GenreProfile::plain("Samba");
    samba.minor = 0.8;
    samba.seventh = 0.05;
    samba.dim = 0.1;
    let mut sertanejo = GenreProfile::plain("Sertanejo");
    sertanejo.minor = 0.05;
    sertanejo.seventh = 0.05;
    sertanejo.dim = 0.3;
    sertanejo.aug = 0.3;
    vec![bossa, rock, samba, sertanejo]
}

/// Four genres with identical chord statistics that differ only in release
/// years, popularity and song length.
pub fn metadata_only_profiles() -> Vec<GenreProfile> {
    let ranges = [
        ("Bossa Nova", (1958, 1970), (10.0, 30.0), (20, 35)),
        ("MPB", (1971, 1985), (30.0, 50.0), (36, 50)),
        ("Rock", (1986, 2000), (50.0, 70.0), (51, 65)),
        ("Sertanejo", (2001, 2018), (70.0, 90.0), (66, 80)),
    ];
    ranges.iter()
        .map(|(name, years, pop, len)| {
            let mut p = GenreProfile::plain(name);
            p.years = *years;
            p.popularity = *pop;
            p.length = *len;
            p
        })
        .collect()
}

/// Four genres with nothing to tell them apart.
pub fn noise_profiles() -> Vec<GenreProfile> {
    ["Forró", "MPB", "Pop", "Samba"]
        .iter()
        .map(|n| GenreProfile::plain(n))
        .collect()
}
