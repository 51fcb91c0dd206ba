//! Per-phoneme feature vectors.
//!
//! Every phoneme slot is 26 bits wide:
//!
//! | field    | bits | coding                         |
//! |----------|------|--------------------------------|
//! | place    | 7    | thermometer over the 1..=7 scale |
//! | manner   | 6    | thermometer over the 1..=6 scale |
//! | height   | 5    | thermometer, zero for consonants |
//! | voicing  | 4    | one flag replicated four times |
//! | syllabic | 1    |                                |
//! | nasal    | 1    |                                |
//! | lateral  | 1    |                                |
//! | rounded  | 1    |                                |
//!
//! Thermometer coding makes the Hamming distance between two values of an
//! ordinal field equal to their difference, so the bit count of a field is
//! its maximum perceptual weight. Silence is the all-zero vector.

use std::fmt;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::phoneme::{Inventory, Phoneme, PhonemeId};

pub const PHONEME_BITS: usize = 26;

/// Sub-fields of a [`FeatureVector`], in bit order.
pub const FEATURE_LAYOUT: [(Feature, usize); 8] = [
    (Feature::Place, 7),
    (Feature::Manner, 6),
    (Feature::Height, 5),
    (Feature::Voicing, 4),
    (Feature::Syllabic, 1),
    (Feature::Nasal, 1),
    (Feature::Lateral, 1),
    (Feature::Rounded, 1),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Feature {
    Place,
    Manner,
    Height,
    Voicing,
    Syllabic,
    Nasal,
    Lateral,
    Rounded,
}

impl Feature {
    pub fn width(self) -> usize {
        FEATURE_LAYOUT.iter().find(|(f, _)| *f == self).unwrap().1
    }

    /// Bit positions of this field, counted from the first (leftmost) bit.
    pub fn range(self) -> Range<usize> {
        let mut start = 0;
        for (f, w) in FEATURE_LAYOUT {
            if f == self {
                return start..start + w;
            }
            start += w;
        }
        unreachable!()
    }
}

/// A 26-bit phoneme encoding. Bit 0 of the layout is the most significant
/// of the 26 used bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FeatureVector(u32);

impl FeatureVector {
    pub const SILENCE: FeatureVector = FeatureVector(0);

    pub fn from_bits(bits: u32) -> Option<Self> {
        (bits >> PHONEME_BITS == 0).then_some(FeatureVector(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Bit `i` in layout order (0 = first place bit).
    pub fn bit(self, i: usize) -> bool {
        assert!(i < PHONEME_BITS);
        (self.0 >> (PHONEME_BITS - 1 - i)) & 1 == 1
    }

    pub fn field(self, feature: Feature) -> u32 {
        let r = feature.range();
        (self.0 >> (PHONEME_BITS - r.end)) & ((1 << r.len()) - 1)
    }

    pub fn distance(self, other: FeatureVector) -> u32 {
        (self.0 ^ other.0).count_ones()
    }

    /// Thermometer sub-fields hold a run of ones followed by zeros, and the
    /// voicing field is all-or-nothing.
    pub fn is_well_formed(self) -> bool {
        let thermo = |f: Feature| {
            let v = self.field(f);
            v == thermometer(v.count_ones() as u8, f.width())
        };
        let voicing = self.field(Feature::Voicing);
        thermo(Feature::Place)
            && thermo(Feature::Manner)
            && thermo(Feature::Height)
            && (voicing == 0 || voicing == 0b1111)
    }
}

impl fmt::Display for FeatureVector {
    /// Space-separated sub-fields, e.g. `1111000 100000 00000 0000 0 0 0 0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, (feat, width)) in FEATURE_LAYOUT.iter().enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{:0width$b}", self.field(*feat), width = *width)?;
        }
        Ok(())
    }
}

/// `value` ones followed by `width - value` zeros.
pub fn thermometer(value: u8, width: usize) -> u32 {
    let v = value as usize;
    assert!(v <= width, "thermometer value {v} exceeds width {width}");
    if v == 0 {
        return 0;
    }
    ((1u32 << v) - 1) << (width - v)
}

pub fn encode_features(p: &Phoneme) -> FeatureVector {
    let mut bits = 0u32;
    let mut push = |value: u32, width: usize| {
        bits = (bits << width) | value;
    };
    push(thermometer(p.place.unwrap_or(0), 7), 7);
    push(thermometer(p.manner, 6), 6);
    push(thermometer(p.height.unwrap_or(0), 5), 5);
    push(if p.voiced { 0b1111 } else { 0 }, 4);
    push(p.syllabic as u32, 1);
    push(p.nasal as u32, 1);
    push(p.lateral as u32, 1);
    push(p.rounded as u32, 1);
    FeatureVector(bits)
}

pub fn encode_phoneme(inv: &Inventory, id: PhonemeId) -> Result<FeatureVector> {
    if id.0 as usize >= inv.len() {
        return Err(Error::UnknownPhoneme(format!("#{}", id.0)));
    }
    Ok(encode_features(inv.get(id)))
}

pub fn encode_symbol(inv: &Inventory, symbol: &str) -> Result<FeatureVector> {
    encode_phoneme(inv, inv.id(symbol)?)
}

pub fn phoneme_distance(a: FeatureVector, b: FeatureVector) -> u32 {
    a.distance(b)
}

/// Two slots for a syllable nucleus.
///
/// A two-vowel blend fills one slot per vowel. A pure vowel fills both,
/// which places a blend exactly halfway between its two components. A
/// diphthong symbol is expanded through its inventory blend.
pub fn encode_nucleus(inv: &Inventory, vowels: &[PhonemeId]) -> Result<[FeatureVector; 2]> {
    let describe = || {
        vowels
            .iter()
            .map(|&v| inv.symbol(v))
            .collect::<Vec<_>>()
            .join(" ")
    };
    for &v in vowels {
        if v.0 as usize >= inv.len() || !inv.is_vowel(v) {
            return Err(Error::Nucleus(describe()));
        }
    }
    match *vowels {
        [v] => match inv.get(v).blend {
            Some((a, b)) => Ok([encode_phoneme(inv, a)?, encode_phoneme(inv, b)?]),
            None => {
                let e = encode_phoneme(inv, v)?;
                Ok([e, e])
            }
        },
        [a, b] if !inv.get(a).is_diphthong() && !inv.get(b).is_diphthong() => {
            Ok([encode_phoneme(inv, a)?, encode_phoneme(inv, b)?])
        }
        _ => Err(Error::Nucleus(describe())),
    }
}
