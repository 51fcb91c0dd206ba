#![allow(dead_code)]

use phonalpha::alphabet::{Alphabet, Provenance};
use phonalpha::lexicon::{parse_dictionary, parse_line, ParseOptions, WordEntry};
use phonalpha::phoneme::Inventory;

pub const SAMPLE_TWO: [&str; 10] = [
    "glucose",
    "goggles",
    "goldfish",
    "granny",
    "gremlin",
    "guidance",
    "hamlet",
    "highchair",
    "hockey",
    "hotdog",
];
pub const SAMPLE_THREE: [&str; 10] = [
    "hesitate",
    "hideaway",
    "holiness",
    "hurricane",
    "hydraulic",
    "impartial",
    "impetus",
    "inception",
    "indigo",
    "inertia",
];
pub const FIRST_SAMPLE_INDEX: usize = 111;

pub const SAMPLE_DICT: &str = include_str!("../../data/sample.dict");
pub const SAMPLE_FREQ: &str = include_str!("../../data/sample.freq");
pub const SAMPLE_VETO: &str = include_str!("../../data/sample.veto");

/// `anchors` at indices 111.., surrounded by fillers that sort before and
/// after them.
pub fn padded(anchors: &[&str], before: &str, after: &str) -> Vec<String> {
    let tail = 256 - FIRST_SAMPLE_INDEX - anchors.len();
    let mut v: Vec<String> = (0..FIRST_SAMPLE_INDEX)
        .map(|i| format!("{before}{i:03}"))
        .collect();
    v.extend(anchors.iter().map(|s| s.to_string()));
    v.extend((0..tail).map(|i| format!("{after}{i:03}")));
    v
}

/// Full alphabet with the ten sample rows at 111..=120.
pub fn sample_alphabet() -> Alphabet {
    Alphabet::from_unsorted(
        &padded(&SAMPLE_TWO, "aa", "zz"),
        &padded(&SAMPLE_THREE, "ab", "zy"),
        Provenance::default(),
    )
    .expect("fixture alphabet is valid")
}

pub fn inv() -> &'static Inventory {
    Inventory::standard()
}

pub fn sample_entries() -> Vec<WordEntry> {
    let parsed = parse_dictionary(SAMPLE_DICT, inv());
    assert_eq!(parsed.errors().count(), 0);
    parsed.entries
}

pub fn entry(line: &str) -> WordEntry {
    parse_line(line, inv(), ParseOptions::default())
        .expect("line parses")
        .expect("line is not blank")
}

/// Differing positions of two bit strings, counted character by character.
pub fn char_distance(a: &str, b: &str) -> u32 {
    assert_eq!(a.len(), b.len());
    a.chars().zip(b.chars()).filter(|(x, y)| x != y).count() as u32
}
