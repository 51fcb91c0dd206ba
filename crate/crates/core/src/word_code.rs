//! Fixed-width word codes.
//!
//! A word is laid onto a syllable template so that every position of every
//! code lines up and two codes can be compared bit for bit. The
//! two-syllable template is 357 bits:
//!
//! | field              | bits | contents                                   |
//! |--------------------|------|--------------------------------------------|
//! | onset              | 78   | `C1 C1 C2`, first consonant at double weight |
//! | first vowel        | 52   | nucleus slots                              |
//! | middle consonants  | 52   | up to two consonants, silence padded       |
//! | second vowel       | 52   |                                            |
//! | final consonants   | 52   |                                            |
//! | initial characters | 12   | two 6-bit letter indices (`a` = 0)         |
//! | stressed vowel     | 52   | copy of the stressed nucleus               |
//! | stress pattern     | 7    | `0000000`, `1111000` or `1111111`          |
//!
//! The three-syllable template (513 bits) adds a third vowel, a second
//! medial cluster and a copy of the stressed syllable's onset.

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::{encode_nucleus, encode_phoneme, FeatureVector, PHONEME_BITS};
use crate::lexicon::WordEntry;
use crate::phoneme::{Inventory, PhonemeId};

const SLOT: usize = PHONEME_BITS;
const WORDS: usize = 9;

pub const TWO_SYLLABLE_BITS: usize = 357;
pub const THREE_SYLLABLE_BITS: usize = 513;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TemplateKind {
    TwoSyllable,
    ThreeSyllable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Onset,
    /// Nucleus of syllable `n` (0-based).
    Vowel(u8),
    /// Consonants between syllables `n` and `n + 1`.
    Medial(u8),
    Final,
    Initials,
    StressedVowel,
    StressedOnset,
    StressPattern,
}

const TWO_LAYOUT: [(Field, usize); 8] = [
    (Field::Onset, 3 * SLOT),
    (Field::Vowel(0), 2 * SLOT),
    (Field::Medial(0), 2 * SLOT),
    (Field::Vowel(1), 2 * SLOT),
    (Field::Final, 2 * SLOT),
    (Field::Initials, 12),
    (Field::StressedVowel, 2 * SLOT),
    (Field::StressPattern, 7),
];

const THREE_LAYOUT: [(Field, usize); 11] = [
    (Field::Onset, 3 * SLOT),
    (Field::Vowel(0), 2 * SLOT),
    (Field::Medial(0), 2 * SLOT),
    (Field::Vowel(1), 2 * SLOT),
    (Field::Medial(1), 2 * SLOT),
    (Field::Vowel(2), 2 * SLOT),
    (Field::Final, 2 * SLOT),
    (Field::Initials, 12),
    (Field::StressedVowel, 2 * SLOT),
    (Field::StressedOnset, 2 * SLOT),
    (Field::StressPattern, 7),
];

impl TemplateKind {
    pub fn syllables(self) -> usize {
        match self {
            TemplateKind::TwoSyllable => 2,
            TemplateKind::ThreeSyllable => 3,
        }
    }

    pub fn from_syllables(n: usize) -> Option<Self> {
        match n {
            2 => Some(TemplateKind::TwoSyllable),
            3 => Some(TemplateKind::ThreeSyllable),
            _ => None,
        }
    }

    pub fn layout(self) -> &'static [(Field, usize)] {
        match self {
            TemplateKind::TwoSyllable => &TWO_LAYOUT,
            TemplateKind::ThreeSyllable => &THREE_LAYOUT,
        }
    }

    pub fn width(self) -> usize {
        self.layout().iter().map(|(_, w)| w).sum()
    }

    pub fn field_range(self, field: Field) -> Option<Range<usize>> {
        let mut start = 0;
        for &(f, w) in self.layout() {
            if f == field {
                return Some(start..start + w);
            }
            start += w;
        }
        None
    }
}

impl fmt::Display for TemplateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TemplateKind::TwoSyllable => "two-syllable",
            TemplateKind::ThreeSyllable => "three-syllable",
        })
    }
}

pub fn template_of(w: &WordEntry) -> Option<TemplateKind> {
    TemplateKind::from_syllables(w.syllable_count())
}

/// A templated bit string. Bits are numbered from the start of the
/// template; unused storage bits are always zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WordCode {
    kind: TemplateKind,
    words: [u64; WORDS],
}

impl WordCode {
    pub fn kind(&self) -> TemplateKind {
        self.kind
    }

    pub fn width(&self) -> usize {
        self.kind.width()
    }

    pub fn bit(&self, i: usize) -> bool {
        assert!(i < self.width());
        (self.words[i / 64] >> (63 - i % 64)) & 1 == 1
    }

    /// Flips bit `i`. Mostly useful for building test codes.
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.width());
        self.words[i / 64] ^= 1 << (63 - i % 64);
    }

    pub fn zeros(kind: TemplateKind) -> Self {
        WordCode {
            kind,
            words: [0; WORDS],
        }
    }

    /// Builds a code from a `0`/`1` string; whitespace is ignored.
    pub fn from_bit_str(kind: TemplateKind, s: &str) -> Option<Self> {
        let mut w = BitWriter::new(kind);
        for c in s.chars().filter(|c| !c.is_whitespace()) {
            match c {
                '0' => w.push(false),
                '1' => w.push(true),
                _ => return None,
            }
        }
        (w.len == kind.width()).then(|| w.finish())
    }

    /// Hamming distance, ignoring template kinds.
    pub fn hamming(&self, other: &WordCode) -> u32 {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones())
            .sum()
    }

    pub fn count_ones(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn field_bits(&self, field: Field) -> Option<String> {
        let r = self.kind.field_range(field)?;
        Some(r.map(|i| if self.bit(i) { '1' } else { '0' }).collect())
    }

    pub fn to_bit_string(&self) -> String {
        (0..self.width())
            .map(|i| if self.bit(i) { '1' } else { '0' })
            .collect()
    }

    /// Hex dump of the code, padded with zero bits to a whole byte.
    pub fn to_hex(&self) -> String {
        let bytes: Vec<u8> = self
            .words
            .iter()
            .flat_map(|w| w.to_be_bytes())
            .take(self.width().div_ceil(8))
            .collect();
        hex::encode(bytes)
    }

    /// One line per field: name, width, bits.
    pub fn describe(&self) -> String {
        let mut out = String::new();
        for &(field, width) in self.kind.layout() {
            let bits = self.field_bits(field).unwrap();
            let name = field_name(field);
            out.push_str(&format!("{name:<18} {width:>3}  {bits}\n"));
        }
        out
    }
}

pub fn field_name(field: Field) -> String {
    match field {
        Field::Onset => "onset".into(),
        Field::Vowel(n) => format!("vowel {}", n + 1),
        Field::Medial(n) => format!("medial {}", n + 1),
        Field::Final => "final".into(),
        Field::Initials => "initials".into(),
        Field::StressedVowel => "stressed vowel".into(),
        Field::StressedOnset => "stressed onset".into(),
        Field::StressPattern => "stress pattern".into(),
    }
}

struct BitWriter {
    kind: TemplateKind,
    words: [u64; WORDS],
    len: usize,
}

impl BitWriter {
    fn new(kind: TemplateKind) -> Self {
        BitWriter {
            kind,
            words: [0; WORDS],
            len: 0,
        }
    }

    fn push(&mut self, bit: bool) {
        assert!(self.len < WORDS * 64);
        if bit {
            self.words[self.len / 64] |= 1 << (63 - self.len % 64);
        }
        self.len += 1;
    }

    /// The low `width` bits of `value`, most significant first.
    fn push_bits(&mut self, value: u64, width: usize) {
        for i in (0..width).rev() {
            self.push((value >> i) & 1 == 1);
        }
    }

    fn push_slot(&mut self, v: FeatureVector) {
        self.push_bits(v.bits() as u64, SLOT);
    }

    fn finish(self) -> WordCode {
        debug_assert_eq!(self.len, self.kind.width());
        WordCode {
            kind: self.kind,
            words: self.words,
        }
    }
}

pub const MAX_CLUSTER: usize = 2;

/// Stress pattern field for a stress on syllable `index`.
pub fn stress_pattern(index: usize) -> u64 {
    match index {
        0 => 0b0000000,
        1 => 0b1111000,
        _ => 0b1111111,
    }
}

/// Checks that `w` fits `kind` without encoding it.
pub fn check_fits(inv: &Inventory, w: &WordEntry, kind: TemplateKind) -> Result<()> {
    let mismatch = |constraint: String| Error::TemplateMismatch {
        word: w.spelling.clone(),
        template: kind,
        constraint,
    };
    if w.syllable_count() != kind.syllables() {
        return Err(mismatch(format!(
            "has {} syllables, template needs {}",
            w.syllable_count(),
            kind.syllables()
        )));
    }
    if w.stress_index >= w.syllable_count() {
        return Err(mismatch("stress index out of range".into()));
    }
    if w.initial_cluster().len() > MAX_CLUSTER {
        return Err(mismatch(format!(
            "onset cluster of {} consonants exceeds {MAX_CLUSTER}",
            w.initial_cluster().len()
        )));
    }
    for (i, c) in w.medial_clusters().iter().enumerate() {
        if c.len() > MAX_CLUSTER {
            return Err(mismatch(format!(
                "medial cluster {} has {} consonants, limit {MAX_CLUSTER}",
                i + 1,
                c.len()
            )));
        }
    }
    if w.final_cluster().len() > MAX_CLUSTER {
        return Err(mismatch(format!(
            "final cluster of {} consonants exceeds {MAX_CLUSTER}",
            w.final_cluster().len()
        )));
    }
    for (i, s) in w.syllables.iter().enumerate() {
        encode_nucleus(inv, &s.nucleus)
            .map_err(|_| mismatch(format!("nucleus {} cannot be encoded", i + 1)))?;
    }
    if letter_index(&w.spelling, 0).is_none() || letter_index(&w.spelling, 1).is_none() {
        return Err(mismatch("spelling needs two leading ASCII letters".into()));
    }
    Ok(())
}

fn letter_index(spelling: &str, i: usize) -> Option<u64> {
    let c = spelling.as_bytes().get(i)?.to_ascii_lowercase();
    c.is_ascii_lowercase().then(|| (c - b'a') as u64)
}

fn cluster_slots(inv: &Inventory, cluster: &[PhonemeId]) -> Result<[FeatureVector; 2]> {
    let mut slots = [FeatureVector::SILENCE; 2];
    for (slot, &p) in slots.iter_mut().zip(cluster) {
        *slot = encode_phoneme(inv, p)?;
    }
    Ok(slots)
}

pub fn encode_word(inv: &Inventory, w: &WordEntry, kind: TemplateKind) -> Result<WordCode> {
    check_fits(inv, w, kind)?;

    let onset = cluster_slots(inv, w.initial_cluster())?;
    let nuclei = w
        .syllables
        .iter()
        .map(|s| encode_nucleus(inv, &s.nucleus))
        .collect::<Result<Vec<_>>>()?;
    let medials = w
        .medial_clusters()
        .iter()
        .map(|c| cluster_slots(inv, c))
        .collect::<Result<Vec<_>>>()?;

    let mut out = BitWriter::new(kind);
    for &(field, _) in kind.layout() {
        match field {
            Field::Onset => {
                // the word-initial consonant appears twice
                for slot in [onset[0], onset[0], onset[1]] {
                    out.push_slot(slot);
                }
            }
            Field::Vowel(n) => nuclei[n as usize].iter().for_each(|&v| out.push_slot(v)),
            Field::Medial(n) => medials[n as usize].iter().for_each(|&v| out.push_slot(v)),
            Field::Final => cluster_slots(inv, w.final_cluster())?
                .iter()
                .for_each(|&v| out.push_slot(v)),
            Field::Initials => {
                out.push_bits(letter_index(&w.spelling, 0).unwrap(), 6);
                out.push_bits(letter_index(&w.spelling, 1).unwrap(), 6);
            }
            Field::StressedVowel => nuclei[w.stress_index]
                .iter()
                .for_each(|&v| out.push_slot(v)),
            Field::StressedOnset => cluster_slots(inv, &w.stressed().onset)?
                .iter()
                .for_each(|&v| out.push_slot(v)),
            Field::StressPattern => out.push_bits(stress_pattern(w.stress_index), 7),
        }
    }
    Ok(out.finish())
}

/// Encodes `w` with the template its syllable count selects.
pub fn encode_auto(inv: &Inventory, w: &WordEntry) -> Result<WordCode> {
    let kind = template_of(w).ok_or_else(|| Error::TemplateMismatch {
        word: w.spelling.clone(),
        template: TemplateKind::TwoSyllable,
        constraint: format!("{} syllables fit no template", w.syllable_count()),
    })?;
    encode_word(inv, w, kind)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::parse_dictionary;

    fn entry(line: &str) -> WordEntry {
        let out = parse_dictionary(line, Inventory::standard());
        assert!(out.diagnostics.is_empty(), "{:?}", out.diagnostics);
        out.entries.into_iter().next().unwrap()
    }

    fn code(line: &str) -> WordCode {
        encode_auto(Inventory::standard(), &entry(line)).unwrap()
    }

    #[test]
    fn widths() {
        let two: Vec<usize> = TWO_LAYOUT.iter().map(|(_, w)| *w).collect();
        assert_eq!(two, [78, 52, 52, 52, 52, 12, 52, 7]);
        assert_eq!(TemplateKind::TwoSyllable.width(), TWO_SYLLABLE_BITS);
        assert_eq!(TemplateKind::ThreeSyllable.width(), THREE_SYLLABLE_BITS);
        assert_eq!(code("granny\tG R AE' . N IY").width(), 357);
        assert_eq!(code("hurricane\tHH ER' . AH . K EY N").width(), 513);
    }

    #[test]
    fn template_selection() {
        let t = |l| template_of(&entry(l));
        assert_eq!(t("granny\tG R AE' . N IY"), Some(TemplateKind::TwoSyllable));
        assert_eq!(
            t("hurricane\tHH ER' . AH . K EY N"),
            Some(TemplateKind::ThreeSyllable)
        );
        assert_eq!(t("cat\tK AE' T"), None);
    }

    #[test]
    fn initial_characters() {
        let c = code("goggles\tG AA' . G AH L Z");
        assert_eq!(c.field_bits(Field::Initials).unwrap(), "000110001110");
        let c = code("Goggles\tG AA' . G AH L Z");
        assert_eq!(c.field_bits(Field::Initials).unwrap(), "000110001110");
    }

    #[test]
    fn initial_stress_copies_first_vowel() {
        let c = code("goggles\tG AA' . G AH L Z");
        assert_eq!(
            c.field_bits(Field::StressedVowel),
            c.field_bits(Field::Vowel(0))
        );
        assert_eq!(c.field_bits(Field::StressPattern).unwrap(), "0000000");

        let c = code("escape\tIH . S K EY' P");
        assert_eq!(
            c.field_bits(Field::StressedVowel),
            c.field_bits(Field::Vowel(1))
        );
        assert_eq!(c.field_bits(Field::StressPattern).unwrap(), "1111000");

        let c = code("inertia\tIH . N ER . SH AH'");
        assert_eq!(c.field_bits(Field::StressPattern).unwrap(), "1111111");
    }

    #[test]
    fn onset_layout() {
        let inv = Inventory::standard();
        let g = encode_phoneme(inv, inv.id("G").unwrap()).unwrap();
        let r = encode_phoneme(inv, inv.id("R").unwrap()).unwrap();
        let slot = |v: FeatureVector| format!("{:026b}", v.bits());
        let c = code("granny\tG R AE' . N IY");
        assert_eq!(
            c.field_bits(Field::Onset).unwrap(),
            format!("{}{}{}", slot(g), slot(g), slot(r))
        );
        let c = code("escape\tIH . S K EY' P");
        assert_eq!(c.field_bits(Field::Onset).unwrap(), "0".repeat(78));
        let c = code("hockey\tHH AA' . K IY");
        let hh = encode_phoneme(inv, inv.id("HH").unwrap()).unwrap();
        assert_eq!(
            c.field_bits(Field::Onset).unwrap(),
            format!("{}{}{}", slot(hh), slot(hh), "0".repeat(26))
        );
    }

    #[test]
    fn stressed_onset_copy() {
        let c = code("hydraulic\tHH AY . D R AO' . L IH K");
        assert_eq!(
            c.field_bits(Field::StressedOnset),
            c.field_bits(Field::Medial(0))
        );
        assert!(code("granny\tG R AE' . N IY")
            .field_bits(Field::StressedOnset)
            .is_none());
    }

    #[test]
    fn rejects_misfits() {
        let inv = Inventory::standard();
        let e = entry("strata\tS T R AE' . T AH");
        let err = encode_word(inv, &e, TemplateKind::TwoSyllable).unwrap_err();
        assert!(err.to_string().contains("onset cluster"), "{err}");
        let e = entry("granny\tG R AE' . N IY");
        assert!(encode_word(inv, &e, TemplateKind::ThreeSyllable).is_err());
        let e = entry("goldfish\tG OW' L D . F IH SH");
        assert!(encode_word(inv, &e, TemplateKind::TwoSyllable).is_err());
        let e = entry("cat\tK AE' T");
        assert!(encode_auto(inv, &e).is_err());
    }

    #[test]
    fn weighting_of_initial_and_medial_consonants() {
        // voicing flips: word-initial doubled, medial single
        let base = code("tapa\tT AE' . P AH");
        let initial = code("dapa\tD AE' . P AH");
        let medial = code("taba\tT AE' . B AH");
        // initials field differs too for the first pair ("ta" vs "da")
        let ortho = |a: &WordCode, b: &WordCode| {
            let r = TemplateKind::TwoSyllable
                .field_range(Field::Initials)
                .unwrap();
            r.filter(|&i| a.bit(i) != b.bit(i)).count() as u32
        };
        assert_eq!(base.hamming(&medial), 4);
        assert_eq!(base.hamming(&initial) - ortho(&base, &initial), 8);
    }

    #[test]
    fn bit_string_round_trip() {
        let c = code("hurricane\tHH ER' . AH . K EY N");
        let back = WordCode::from_bit_str(c.kind(), &c.to_bit_string()).unwrap();
        assert_eq!(back, c);
        assert_eq!(c.to_hex().len(), 2 * 513usize.div_ceil(8));
        assert!(WordCode::from_bit_str(TemplateKind::TwoSyllable, "0101").is_none());
    }
}
