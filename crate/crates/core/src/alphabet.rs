//! Two-list alphabets and the byte <-> word codec.
//!
//! Bytes at even positions are spoken with a word from the two-syllable
//! list, bytes at odd positions with a word from the three-syllable list.
//! A listener who hears two words from the same list in a row knows a word
//! was dropped, repeated or swapped.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::filters::{derivational_pairs, drop_choice, DerivationalFlag, Side};

pub const LIST_LEN: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum List {
    Two,
    Three,
}

impl List {
    pub fn for_position(i: usize) -> List {
        if i.is_multiple_of(2) {
            List::Two
        } else {
            List::Three
        }
    }

    pub fn other(self) -> List {
        match self {
            List::Two => List::Three,
            List::Three => List::Two,
        }
    }
}

impl fmt::Display for List {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            List::Two => "two-syllable",
            List::Three => "three-syllable",
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config_digest: Option<String>,
}

/// Hex SHA-256 of `text`.
pub fn config_digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

#[derive(Serialize, Deserialize)]
struct AlphabetJson {
    #[serde(flatten)]
    provenance: Provenance,
    two: Vec<String>,
    three: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct Alphabet {
    two: Vec<String>,
    three: Vec<String>,
    provenance: Provenance,
    index: HashMap<String, (List, u8)>,
}

fn fold(s: &str) -> String {
    s.to_lowercase()
}

fn check_list(name: List, words: &[String]) -> Result<()> {
    if words.len() != LIST_LEN {
        return Err(Error::Alphabet(format!(
            "{name} list has {} words, expected {LIST_LEN}",
            words.len()
        )));
    }
    for w in words {
        if w.is_empty() || w.chars().any(char::is_whitespace) {
            return Err(Error::Alphabet(format!(
                "{name} list has malformed word {w:?}"
            )));
        }
    }
    for pair in words.windows(2) {
        match fold(&pair[0]).cmp(&fold(&pair[1])) {
            std::cmp::Ordering::Less => {}
            std::cmp::Ordering::Equal => {
                return Err(Error::Alphabet(format!(
                    "{name} list repeats {:?}",
                    pair[1]
                )))
            }
            std::cmp::Ordering::Greater => {
                return Err(Error::Alphabet(format!(
                    "{name} list is not sorted at {:?}",
                    pair[1]
                )))
            }
        }
    }
    Ok(())
}

fn sorted(words: &[String]) -> Vec<String> {
    let mut v = words.to_vec();
    v.sort_by_cached_key(|w| (fold(w), w.clone()));
    v
}

impl Alphabet {
    /// Builds an alphabet from lists already in case-insensitive order.
    pub fn new(two: Vec<String>, three: Vec<String>, provenance: Provenance) -> Result<Self> {
        check_list(List::Two, &two)?;
        check_list(List::Three, &three)?;
        let mut index = HashMap::with_capacity(2 * LIST_LEN);
        for (list, words) in [(List::Two, &two), (List::Three, &three)] {
            for (i, w) in words.iter().enumerate() {
                if index.insert(fold(w), (list, i as u8)).is_some() {
                    return Err(Error::Alphabet(format!("{w:?} appears in both lists")));
                }
            }
        }
        Ok(Alphabet {
            two,
            three,
            provenance,
            index,
        })
    }

    /// Sorts both lists, then builds the alphabet.
    pub fn from_unsorted(two: &[String], three: &[String], provenance: Provenance) -> Result<Self> {
        Alphabet::new(sorted(two), sorted(three), provenance)
    }

    pub fn list(&self, list: List) -> &[String] {
        match list {
            List::Two => &self.two,
            List::Three => &self.three,
        }
    }

    pub fn word(&self, list: List, byte: u8) -> &str {
        &self.list(list)[byte as usize]
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Case-insensitive lookup.
    pub fn lookup(&self, word: &str) -> Option<(List, u8)> {
        self.index.get(&fold(word)).copied()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("# two-list alphabet\n");
        if let Some(seed) = self.provenance.seed {
            out.push_str(&format!("# seed: {seed}\n"));
        }
        if let Some(d) = &self.provenance.config_digest {
            out.push_str(&format!("# config-digest: {d}\n"));
        }
        for (i, (a, b)) in self.two.iter().zip(&self.three).enumerate() {
            out.push_str(&format!("{i}\t{a}\t{b}\n"));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let j = AlphabetJson {
            provenance: self.provenance.clone(),
            two: self.two.clone(),
            three: self.three.clone(),
        };
        serde_json::to_string_pretty(&j).expect("alphabet serializes") + "\n"
    }

    /// Reads either the tab-separated form or the JSON form.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            let j: AlphabetJson = serde_json::from_str(text)
                .map_err(|e| Error::Alphabet(format!("bad JSON: {e}")))?;
            return Alphabet::new(j.two, j.three, j.provenance);
        }
        let mut provenance = Provenance::default();
        let mut two = Vec::new();
        let mut three = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if let Some(comment) = line.strip_prefix('#') {
                let comment = comment.trim();
                if let Some(v) = comment.strip_prefix("seed:") {
                    let seed = v.trim().parse().map_err(|_| {
                        Error::Alphabet(format!("line {}: bad seed {:?}", n + 1, v.trim()))
                    })?;
                    provenance.seed = Some(seed);
                } else if let Some(v) = comment.strip_prefix("config-digest:") {
                    provenance.config_digest = Some(v.trim().to_string());
                }
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            if cols.len() != 3 || cols[0].parse::<usize>().ok() != Some(two.len()) {
                return Err(Error::Alphabet(format!(
                    "line {}: expected `{}<TAB>word<TAB>word`",
                    n + 1,
                    two.len()
                )));
            }
            two.push(cols[1].to_string());
            three.push(cols[2].to_string());
        }
        Alphabet::new(two, three, provenance)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Alphabet::parse(&text)
    }
}

/// Words for `data`, alternating between the lists starting with the
/// two-syllable list.
pub fn encode_bytes<'a>(data: &[u8], alphabet: &'a Alphabet) -> Vec<&'a str> {
    data.iter()
        .enumerate()
        .map(|(i, &b)| alphabet.word(List::for_position(i), b))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecodeErrorKind {
    UnknownWord,
    ParityViolation,
    DuplicateAdjacent,
    LengthMismatch,
}

impl fmt::Display for DecodeErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecodeErrorKind::UnknownWord => "unknown_word",
            DecodeErrorKind::ParityViolation => "parity_violation",
            DecodeErrorKind::DuplicateAdjacent => "duplicate_adjacent",
            DecodeErrorKind::LengthMismatch => "length_mismatch",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeError {
    /// Word position; for a length mismatch, the number of words read.
    pub position: usize,
    pub kind: DecodeErrorKind,
    pub detail: String,
}

impl fmt::Display for DecodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "word {}: {}: {}", self.position, self.kind, self.detail)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DecodeReport {
    /// Bytes of every recognized word, in order.
    pub bytes: Vec<u8>,
    /// Ordered by position. A repeated word is reported twice at the same
    /// position, once as a duplicate and once as a parity violation.
    pub errors: Vec<DecodeError>,
}

impl DecodeReport {
    pub fn is_clean(&self) -> bool {
        self.errors.is_empty()
    }
}

/// Decodes `words` and reports every irregularity without stopping.
///
/// Each word is expected from the list opposite to the previous word's.
/// An unknown word is still counted as a position and the expectation moves
/// on as if it had been correct, so one misheard word costs one error.
pub fn decode_words<S: AsRef<str>>(
    words: &[S],
    alphabet: &Alphabet,
    expected_len: Option<usize>,
) -> DecodeReport {
    let mut report = DecodeReport::default();
    let mut expected = List::Two;
    let mut previous: Option<String> = None;
    for (pos, w) in words.iter().enumerate() {
        let w = w.as_ref();
        let folded = fold(w);
        match alphabet.lookup(w) {
            None => {
                report.errors.push(DecodeError {
                    position: pos,
                    kind: DecodeErrorKind::UnknownWord,
                    detail: format!("{w:?} is in neither list"),
                });
                expected = expected.other();
            }
            Some((list, byte)) => {
                if previous.as_deref() == Some(folded.as_str()) {
                    report.errors.push(DecodeError {
                        position: pos,
                        kind: DecodeErrorKind::DuplicateAdjacent,
                        detail: format!("{w:?} repeated"),
                    });
                }
                if list != expected {
                    report.errors.push(DecodeError {
                        position: pos,
                        kind: DecodeErrorKind::ParityViolation,
                        detail: format!("expected a {expected} word, got {w:?} ({list})"),
                    });
                }
                report.bytes.push(byte);
                expected = list.other();
            }
        }
        previous = Some(folded);
    }
    if let Some(n) = expected_len {
        if n != words.len() {
            report.errors.push(DecodeError {
                position: words.len(),
                kind: DecodeErrorKind::LengthMismatch,
                detail: format!("expected {n} words, got {}", words.len()),
            });
        }
    }
    report
}

/// Parses hex such as `"5C 39 76"`; whitespace anywhere is ignored.
pub fn parse_hex(s: &str) -> Result<Vec<u8>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    hex::decode(&compact).map_err(|e| Error::Hex(e.to_string()))
}

/// Upper-case hex bytes separated by spaces.
pub fn format_hex(bytes: &[u8]) -> String {
    bytes
        .iter()
        .map(|b| format!("{b:02X}"))
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Debug, Clone, Default)]
pub struct AssembleOptions {
    /// Remove one word of each derivational pair instead of failing.
    pub auto_drop: bool,
    /// Replacement candidates for the two-syllable list, best first.
    pub reserve_two: Vec<String>,
    pub reserve_three: Vec<String>,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Replacement {
    pub flag: DerivationalFlag,
    pub dropped: String,
    pub added: String,
}

#[derive(Debug, Clone)]
pub struct Assembly {
    pub alphabet: Alphabet,
    pub replacements: Vec<Replacement>,
}

/// Builds the final alphabet from the two winning lists.
///
/// Derivationally related words across the lists are an error unless
/// `auto_drop` is set, in which case the shorter word of each pair is
/// replaced by the next unused reserve word of its list until no pairs
/// remain.
pub fn assemble_alphabet(
    two: &[String],
    three: &[String],
    opts: &AssembleOptions,
) -> Result<Assembly> {
    let mut two = two.to_vec();
    let mut three = three.to_vec();
    for (list, words) in [(List::Two, &two), (List::Three, &three)] {
        if words.len() != LIST_LEN {
            return Err(Error::Alphabet(format!(
                "{list} list has {} words, expected {LIST_LEN}",
                words.len()
            )));
        }
    }
    let mut reserves = [opts.reserve_two.iter(), opts.reserve_three.iter()];
    let mut replacements = Vec::new();
    loop {
        let flags = derivational_pairs(&two, &three);
        let Some(flag) = flags.first().cloned() else {
            break;
        };
        if !opts.auto_drop {
            return Err(Error::UnresolvedFlags(flags));
        }
        let (side, dropped) = match drop_choice(&flag) {
            Side::A => (0, flag.a.clone()),
            Side::B => (1, flag.b.clone()),
        };
        let in_use = |w: &str| {
            two.iter().chain(&three).any(|x| x.eq_ignore_ascii_case(w))
                || replacements
                    .iter()
                    .any(|r: &Replacement| r.dropped.eq_ignore_ascii_case(w))
        };
        let added = loop {
            let Some(candidate) = reserves[side].next() else {
                return Err(Error::Alphabet(format!(
                    "no reserve word left to replace {dropped:?}"
                )));
            };
            if !in_use(candidate) {
                break candidate.clone();
            }
        };
        let words = if side == 0 { &mut two } else { &mut three };
        let slot = words
            .iter()
            .position(|w| *w == dropped)
            .expect("flagged word is listed");
        words[slot] = added.clone();
        replacements.push(Replacement {
            flag,
            dropped,
            added,
        });
    }
    let alphabet = Alphabet::from_unsorted(&two, &three, opts.provenance.clone())?;
    Ok(Assembly {
        alphabet,
        replacements,
    })
}
