//! Phoneme inventory: symbols and their articulatory feature values.
//!
//! The inventory is data, not code. The shipped table lives in
//! `data/inventory.txt` and any compatible file can be loaded in its place.
//! Each line reads
//!
//! ```text
//! symbol place manner height voiced syllabic nasal lateral rounded [blend]
//! ```
//!
//! with `-` for an absent place or height and `0`/`1` for the flags. The
//! optional last column names the two pure vowels of a diphthong
//! (`AO+IY`).

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const PLACE_LEVELS: u8 = 7;
pub const MANNER_LEVELS: u8 = 6;
pub const HEIGHT_LEVELS: u8 = 5;

const STANDARD_INVENTORY: &str = include_str!("../data/inventory.txt");

/// Index of a phoneme within its [`Inventory`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PhonemeId(pub u8);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Phoneme {
    pub symbol: String,
    pub place: Option<u8>,
    pub manner: u8,
    pub height: Option<u8>,
    pub voiced: bool,
    pub syllabic: bool,
    pub nasal: bool,
    pub lateral: bool,
    pub rounded: bool,
    /// Pure-vowel components of a diphthong.
    pub blend: Option<(PhonemeId, PhonemeId)>,
}

impl Phoneme {
    pub fn is_vowel(&self) -> bool {
        self.syllabic
    }

    pub fn is_diphthong(&self) -> bool {
        self.blend.is_some()
    }
}

impl fmt::Display for Phoneme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbol)
    }
}

#[derive(Debug, Clone)]
pub struct Inventory {
    phonemes: Vec<Phoneme>,
    by_symbol: HashMap<String, PhonemeId>,
}

impl Inventory {
    /// The shipped English inventory (24 consonants, 15 vowels).
    pub fn standard() -> &'static Inventory {
        static STANDARD: OnceLock<Inventory> = OnceLock::new();
        STANDARD.get_or_init(|| {
            Inventory::parse(STANDARD_INVENTORY).expect("shipped inventory is valid")
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        // Blend columns refer to symbols that may appear later in the file,
        // so they are resolved after every row is read.
        let mut phonemes = Vec::new();
        let mut by_symbol = HashMap::new();
        let mut blends = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |message: String| Error::Inventory {
                line: line_no,
                message,
            };
            let cols: Vec<&str> = line.split_whitespace().collect();
            if cols.len() != 9 && cols.len() != 10 {
                return Err(bad(format!(
                    "expected 9 or 10 columns, found {}",
                    cols.len()
                )));
            }
            let symbol = cols[0].to_string();
            if !symbol.chars().all(|c| c.is_ascii_alphanumeric()) {
                return Err(bad(format!("symbol {symbol:?} is not plain ASCII")));
            }
            let place =
                ordinal(cols[1], PLACE_LEVELS, true).map_err(|m| bad(format!("place: {m}")))?;
            let manner = ordinal(cols[2], MANNER_LEVELS, false)
                .map_err(|m| bad(format!("manner: {m}")))?
                .expect("manner is mandatory");
            let height =
                ordinal(cols[3], HEIGHT_LEVELS, true).map_err(|m| bad(format!("height: {m}")))?;
            let mut flags = [false; 5];
            for (slot, col) in flags.iter_mut().zip(&cols[4..9]) {
                *slot = match *col {
                    "0" => false,
                    "1" => true,
                    other => return Err(bad(format!("flag {other:?} is not 0 or 1"))),
                };
            }
            let [voiced, syllabic, nasal, lateral, rounded] = flags;
            if syllabic != height.is_some() {
                return Err(bad(format!(
                    "{symbol}: syllabic phonemes carry a height and consonants do not"
                )));
            }
            if phonemes.len() >= u8::MAX as usize {
                return Err(bad("inventory holds at most 255 phonemes".into()));
            }
            let id = PhonemeId(phonemes.len() as u8);
            if by_symbol.insert(symbol.clone(), id).is_some() {
                return Err(bad(format!("duplicate symbol {symbol}")));
            }
            if let Some(spec) = cols.get(9) {
                blends.push((id, line_no, spec.to_string()));
            }
            phonemes.push(Phoneme {
                symbol,
                place,
                manner,
                height,
                voiced,
                syllabic,
                nasal,
                lateral,
                rounded,
                blend: None,
            });
        }

        for (id, line, spec) in blends {
            let bad = |message: String| Error::Inventory { line, message };
            let (a, b) = spec
                .split_once('+')
                .ok_or_else(|| bad(format!("blend {spec:?} is not of the form A+B")))?;
            let resolve = |s: &str| -> Result<PhonemeId> {
                let cid = *by_symbol
                    .get(s)
                    .ok_or_else(|| bad(format!("blend component {s} is not in the inventory")))?;
                let c = &phonemes[cid.0 as usize];
                if !c.syllabic {
                    return Err(bad(format!("blend component {s} must be a pure vowel")));
                }
                Ok(cid)
            };
            let pair = (resolve(a)?, resolve(b)?);
            let ph = &mut phonemes[id.0 as usize];
            if !ph.syllabic {
                return Err(bad(format!("{} has a blend but is not a vowel", ph.symbol)));
            }
            ph.blend = Some(pair);
        }
        // A blend component must itself be a pure vowel.
        for ph in &phonemes {
            if let Some((a, b)) = ph.blend {
                for c in [a, b] {
                    if phonemes[c.0 as usize].blend.is_some() {
                        return Err(Error::Inventory {
                            line: 0,
                            message: format!(
                                "{}: blend component is itself a diphthong",
                                ph.symbol
                            ),
                        });
                    }
                }
            }
        }

        if phonemes.is_empty() {
            return Err(Error::Inventory {
                line: 0,
                message: "inventory is empty".into(),
            });
        }
        Ok(Inventory {
            phonemes,
            by_symbol,
        })
    }

    pub fn len(&self) -> usize {
        self.phonemes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phonemes.is_empty()
    }

    pub fn lookup(&self, symbol: &str) -> Option<PhonemeId> {
        self.by_symbol.get(symbol).copied()
    }

    pub fn id(&self, symbol: &str) -> Result<PhonemeId> {
        self.lookup(symbol)
            .ok_or_else(|| Error::UnknownPhoneme(symbol.to_string()))
    }

    pub fn get(&self, id: PhonemeId) -> &Phoneme {
        &self.phonemes[id.0 as usize]
    }

    pub fn symbol(&self, id: PhonemeId) -> &str {
        &self.get(id).symbol
    }

    pub fn is_vowel(&self, id: PhonemeId) -> bool {
        self.get(id).syllabic
    }

    pub fn ids(&self) -> impl Iterator<Item = PhonemeId> + '_ {
        (0..self.phonemes.len()).map(|i| PhonemeId(i as u8))
    }

    pub fn iter(&self) -> impl Iterator<Item = (PhonemeId, &Phoneme)> {
        self.phonemes
            .iter()
            .enumerate()
            .map(|(i, p)| (PhonemeId(i as u8), p))
    }
}

fn ordinal(col: &str, max: u8, optional: bool) -> std::result::Result<Option<u8>, String> {
    if col == "-" {
        return if optional {
            Ok(None)
        } else {
            Err("value is required".into())
        };
    }
    let v: u8 = col
        .parse()
        .map_err(|_| format!("{col:?} is not a number"))?;
    if v == 0 || v > max {
        return Err(format!("{v} outside 1..={max}"));
    }
    Ok(Some(v))
}
