//! Pitch-class distances on the chromatic cycle and the circle of fifths.

use crate::chord::PitchClass;

/// Position of a pitch class on the circle of fifths, counting C = 0, G = 1,
/// D = 2, ... F = 11.
pub fn fifths_position(pc: &PitchClass) -> u8 {
    // 7 is its own inverse mod 12, so the same map goes both ways.
    (pc.index() * 7) % 12
}

fn cyclic_distance(a: u8, b: u8) -> u8 {
    let d = a.abs_diff(b);
    d.min(12 - d)
}

/// Undirected distance in semitones, `0..=6`.
pub fn semitone_distance(a: &PitchClass, b: &PitchClass) -> u8 {
    cyclic_distance(a.index(), b.index())
}

/// Minimal number of steps around the circle of fifths, `0..=6`.
pub fn fifths_distance(a: &PitchClass, b: &PitchClass) -> u8 {
    cyclic_distance(fifths_position(a), fifths_position(b))
}
