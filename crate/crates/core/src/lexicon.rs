//! Pronunciation dictionary ingestion.
//!
//! Dictionary lines look like
//!
//! ```text
//! goggles<TAB>G AA' . G AH L Z
//! ```
//!
//! The spelling is separated from the phonemes by a tab. A `'` directly
//! after a vowel marks the nucleus of the primary-stressed syllable and a
//! lone `.` separates syllables. Lines without any `.` are syllabified by
//! maximal onset. `#` starts a comment.
//!
//! Frequency files hold `spelling count` pairs and veto files one spelling
//! per line. Both are keyed case-insensitively.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::phoneme::{Inventory, PhonemeId};

pub const STRESS_MARK: char = '\'';
pub const SYLLABLE_BREAK: &str = ".";

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Syllable {
    pub onset: Vec<PhonemeId>,
    pub nucleus: Vec<PhonemeId>,
    pub coda: Vec<PhonemeId>,
}

impl Syllable {
    pub fn phonemes(&self) -> impl Iterator<Item = PhonemeId> + '_ {
        self.onset
            .iter()
            .chain(&self.nucleus)
            .chain(&self.coda)
            .copied()
    }

    pub fn len(&self) -> usize {
        self.onset.len() + self.nucleus.len() + self.coda.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WordEntry {
    pub spelling: String,
    pub phonemes: Vec<PhonemeId>,
    pub syllables: Vec<Syllable>,
    /// 0-based index of the syllable carrying primary stress.
    pub stress_index: usize,
    pub frequency: Option<u64>,
}

impl WordEntry {
    pub fn syllable_count(&self) -> usize {
        self.syllables.len()
    }

    /// Case-folded spelling, the key used by every lookup table.
    pub fn key(&self) -> String {
        self.spelling.to_ascii_lowercase()
    }

    /// Consonants before the first vowel.
    pub fn initial_cluster(&self) -> &[PhonemeId] {
        &self.syllables[0].onset
    }

    /// Consonants after the last vowel.
    pub fn final_cluster(&self) -> &[PhonemeId] {
        &self.syllables.last().expect("entries have syllables").coda
    }

    /// Consonants between nucleus `i` and nucleus `i + 1`.
    pub fn medial_cluster(&self, i: usize) -> Vec<PhonemeId> {
        let (a, b) = (&self.syllables[i], &self.syllables[i + 1]);
        a.coda.iter().chain(&b.onset).copied().collect()
    }

    pub fn medial_clusters(&self) -> Vec<Vec<PhonemeId>> {
        (0..self.syllables.len().saturating_sub(1))
            .map(|i| self.medial_cluster(i))
            .collect()
    }

    pub fn stressed(&self) -> &Syllable {
        &self.syllables[self.stress_index]
    }

    /// Renders the entry as a dictionary line (without frequency).
    pub fn to_dictionary_line(&self, inv: &Inventory) -> String {
        let mut out = self.spelling.clone();
        out.push('\t');
        let mut first = true;
        for (si, syl) in self.syllables.iter().enumerate() {
            if si > 0 {
                out.push_str(" .");
            }
            let last_vowel = syl.nucleus.len().saturating_sub(1);
            for (role, ni, p) in syl
                .onset
                .iter()
                .map(|p| (0, 0, p))
                .chain(syl.nucleus.iter().enumerate().map(|(i, p)| (1, i, p)))
                .chain(syl.coda.iter().map(|p| (2, 0, p)))
            {
                if !first {
                    out.push(' ');
                }
                first = false;
                out.push_str(inv.symbol(*p));
                if role == 1 && ni == last_vowel && si == self.stress_index {
                    out.push(STRESS_MARK);
                }
            }
        }
        out
    }

    /// Debug rendering with the stressed syllable in brackets.
    pub fn pronunciation(&self, inv: &Inventory) -> String {
        self.syllables
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let body = s
                    .phonemes()
                    .map(|p| inv.symbol(p))
                    .collect::<Vec<_>>()
                    .join(" ");
                if i == self.stress_index {
                    format!("[{body}]")
                } else {
                    body
                }
            })
            .collect::<Vec<_>>()
            .join(" . ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagnosticKind {
    Malformed(String),
    InvalidSpelling(String),
    UnknownPhoneme(String),
    NoVowel,
    Stress(String),
    Syllable(String),
    /// Same case-folded spelling, different pronunciation. Both entries are
    /// kept; this is a warning.
    DuplicateSpelling {
        spelling: String,
        first_line: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub kind: DiagnosticKind,
}

impl Diagnostic {
    /// Warnings accompany an entry that was still produced.
    pub fn is_warning(&self) -> bool {
        matches!(self.kind, DiagnosticKind::DuplicateSpelling { .. })
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let line = self.line;
        match &self.kind {
            DiagnosticKind::Malformed(m) => write!(f, "malformed line {line}: {m}"),
            DiagnosticKind::InvalidSpelling(s) => {
                write!(f, "invalid spelling {s:?} at line {line}")
            }
            DiagnosticKind::UnknownPhoneme(p) => write!(f, "unknown phoneme {p} at line {line}"),
            DiagnosticKind::NoVowel => write!(f, "no vowel at line {line}"),
            DiagnosticKind::Stress(m) => write!(f, "stress error at line {line}: {m}"),
            DiagnosticKind::Syllable(m) => write!(f, "syllable error at line {line}: {m}"),
            DiagnosticKind::DuplicateSpelling {
                spelling,
                first_line,
            } => write!(
                f,
                "{spelling:?} at line {line} has a different pronunciation than line {first_line}"
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseOptions {
    /// Longest consonant cluster maximal-onset syllabification will put in
    /// front of a non-initial vowel.
    pub max_onset: usize,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions { max_onset: 2 }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ParseOutcome {
    pub entries: Vec<WordEntry>,
    /// In input line order.
    pub diagnostics: Vec<Diagnostic>,
}

impl ParseOutcome {
    pub fn errors(&self) -> impl Iterator<Item = &Diagnostic> {
        self.diagnostics.iter().filter(|d| !d.is_warning())
    }
}

pub fn parse_dictionary(text: &str, inv: &Inventory) -> ParseOutcome {
    parse_dictionary_with(text, inv, ParseOptions::default())
}

pub fn parse_dictionary_with(text: &str, inv: &Inventory, opts: ParseOptions) -> ParseOutcome {
    let lines: Vec<(usize, &str)> = text.lines().enumerate().map(|(i, l)| (i + 1, l)).collect();
    let parsed: Vec<(
        usize,
        std::result::Result<Option<WordEntry>, DiagnosticKind>,
    )> = lines
        .par_iter()
        .map(|&(n, l)| (n, parse_line(l, inv, opts)))
        .collect();

    let mut out = ParseOutcome::default();
    let mut seen: HashMap<String, (usize, Vec<PhonemeId>)> = HashMap::new();
    for (line, res) in parsed {
        match res {
            Ok(Some(entry)) => {
                match seen.get(&entry.key()) {
                    Some((first_line, pron)) if *pron != entry.phonemes => {
                        out.diagnostics.push(Diagnostic {
                            line,
                            kind: DiagnosticKind::DuplicateSpelling {
                                spelling: entry.spelling.clone(),
                                first_line: *first_line,
                            },
                        });
                    }
                    Some(_) => {}
                    None => {
                        seen.insert(entry.key(), (line, entry.phonemes.clone()));
                    }
                }
                out.entries.push(entry);
            }
            Ok(None) => {}
            Err(kind) => out.diagnostics.push(Diagnostic { line, kind }),
        }
    }
    out
}

/// Parses one dictionary line. Blank and comment-only lines yield `None`.
pub fn parse_line(
    line: &str,
    inv: &Inventory,
    opts: ParseOptions,
) -> std::result::Result<Option<WordEntry>, DiagnosticKind> {
    let line = line.split('#').next().unwrap_or("");
    if line.trim().is_empty() {
        return Ok(None);
    }
    let (spelling, pron) = line
        .split_once('\t')
        .ok_or_else(|| DiagnosticKind::Malformed("missing tab after spelling".into()))?;
    let spelling = spelling.trim();
    if spelling.is_empty() || !spelling.chars().all(|c| c.is_ascii_alphabetic()) {
        return Err(DiagnosticKind::InvalidSpelling(spelling.to_string()));
    }

    let mut phonemes = Vec::new();
    let mut breaks = Vec::new();
    let mut stress_at = Vec::new();
    for tok in pron.split_whitespace() {
        if tok == SYLLABLE_BREAK {
            breaks.push(phonemes.len());
            continue;
        }
        let (sym, stressed) = match tok.strip_suffix(STRESS_MARK) {
            Some(s) => (s, true),
            None => (tok, false),
        };
        let id = inv
            .lookup(sym)
            .ok_or_else(|| DiagnosticKind::UnknownPhoneme(sym.to_string()))?;
        if stressed {
            if !inv.is_vowel(id) {
                return Err(DiagnosticKind::Stress(format!("{sym} is not a vowel")));
            }
            stress_at.push(phonemes.len());
        }
        phonemes.push(id);
    }
    if phonemes.is_empty() {
        return Err(DiagnosticKind::Malformed("no phonemes".into()));
    }
    if !phonemes.iter().any(|&p| inv.is_vowel(p)) {
        return Err(DiagnosticKind::NoVowel);
    }
    let stressed = match stress_at[..] {
        [i] => i,
        [] => return Err(DiagnosticKind::Stress("no primary stress mark".into())),
        _ => return Err(DiagnosticKind::Stress("more than one stress mark".into())),
    };

    let (syllables, stress_index) = if breaks.is_empty() {
        syllabify(inv, &phonemes, stressed, opts.max_onset)?
    } else {
        split_marked(inv, &phonemes, &breaks, stressed)?
    };

    Ok(Some(WordEntry {
        spelling: spelling.to_string(),
        phonemes,
        syllables,
        stress_index,
        frequency: None,
    }))
}

/// Maximal-onset syllabification.
///
/// Every vowel phoneme is its own nucleus. Each non-initial nucleus takes
/// the longest run of preceding consonants no longer than `max_onset`; the
/// rest of the intervocalic cluster closes the previous syllable. `stressed`
/// is the phoneme index of the stressed vowel and is mapped to its syllable.
pub fn syllabify(
    inv: &Inventory,
    phonemes: &[PhonemeId],
    stressed: usize,
    max_onset: usize,
) -> std::result::Result<(Vec<Syllable>, usize), DiagnosticKind> {
    let vowels: Vec<usize> = phonemes
        .iter()
        .enumerate()
        .filter(|(_, &p)| inv.is_vowel(p))
        .map(|(i, _)| i)
        .collect();
    if vowels.is_empty() {
        return Err(DiagnosticKind::NoVowel);
    }
    let stress_index = vowels
        .iter()
        .position(|&v| v == stressed)
        .ok_or_else(|| DiagnosticKind::Stress("stress mark is not on a vowel".into()))?;

    let mut syllables = Vec::with_capacity(vowels.len());
    let mut onset_start = 0;
    for (k, &v) in vowels.iter().enumerate() {
        let coda_end = match vowels.get(k + 1) {
            Some(&next) => {
                let gap = next - v - 1;
                v + 1 + gap - gap.min(max_onset)
            }
            None => phonemes.len(),
        };
        syllables.push(Syllable {
            onset: phonemes[onset_start..v].to_vec(),
            nucleus: vec![phonemes[v]],
            coda: phonemes[v + 1..coda_end].to_vec(),
        });
        onset_start = coda_end;
    }
    Ok((syllables, stress_index))
}

fn split_marked(
    inv: &Inventory,
    phonemes: &[PhonemeId],
    breaks: &[usize],
    stressed: usize,
) -> std::result::Result<(Vec<Syllable>, usize), DiagnosticKind> {
    let mut bounds = Vec::with_capacity(breaks.len() + 2);
    bounds.push(0);
    bounds.extend_from_slice(breaks);
    bounds.push(phonemes.len());

    let mut syllables = Vec::new();
    let mut stress_index = None;
    for (si, w) in bounds.windows(2).enumerate() {
        let (start, end) = (w[0], w[1]);
        if start >= end {
            return Err(DiagnosticKind::Syllable(format!(
                "syllable {} is empty",
                si + 1
            )));
        }
        let seg = &phonemes[start..end];
        let first = seg
            .iter()
            .position(|&p| inv.is_vowel(p))
            .ok_or_else(|| DiagnosticKind::Syllable(format!("syllable {} has no vowel", si + 1)))?;
        let run = seg[first..]
            .iter()
            .take_while(|&&p| inv.is_vowel(p))
            .count();
        if seg[first + run..].iter().any(|&p| inv.is_vowel(p)) {
            return Err(DiagnosticKind::Syllable(format!(
                "syllable {} has two separate vowel groups",
                si + 1
            )));
        }
        if run > 2 {
            return Err(DiagnosticKind::Syllable(format!(
                "syllable {} has {run} vowels in its nucleus",
                si + 1
            )));
        }
        if (start..end).contains(&stressed) {
            stress_index = Some(si);
        }
        syllables.push(Syllable {
            onset: seg[..first].to_vec(),
            nucleus: seg[first..first + run].to_vec(),
            coda: seg[first + run..].to_vec(),
        });
    }
    let stress_index = stress_index.expect("stressed phoneme lies in some syllable");
    Ok((syllables, stress_index))
}

pub fn read_dictionary(path: impl AsRef<Path>, inv: &Inventory) -> Result<ParseOutcome> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(parse_dictionary(&text, inv))
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

/// `spelling count` per line; later lines win.
pub fn load_frequencies(text: &str) -> Result<HashMap<String, u64>> {
    let mut out = HashMap::new();
    for (line, l) in content_lines(text) {
        let bad = |message: String| Error::SideFile {
            file: "frequency file",
            line,
            message,
        };
        let mut parts = l.split_whitespace();
        let (Some(word), Some(count), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(bad(format!("expected `spelling count`, found {l:?}")));
        };
        let count: u64 = count
            .parse()
            .map_err(|_| bad(format!("{count:?} is not a count")))?;
        out.insert(word.to_ascii_lowercase(), count);
    }
    Ok(out)
}

/// One spelling per line.
pub fn load_veto(text: &str) -> HashSet<String> {
    content_lines(text)
        .map(|(_, l)| l.to_ascii_lowercase())
        .collect()
}

pub fn attach_frequencies(entries: &mut [WordEntry], counts: &HashMap<String, u64>) {
    for e in entries {
        e.frequency = counts.get(&e.key()).copied();
    }
}

/// Where a lexicon comes from. Side files are optional, but once named
/// they must be readable.
#[derive(Debug, Clone, Default)]
pub struct LexiconSources {
    pub dictionary: PathBuf,
    pub frequencies: Option<PathBuf>,
    pub veto: Option<PathBuf>,
}

#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    pub entries: Vec<WordEntry>,
    pub diagnostics: Vec<Diagnostic>,
    /// `None` when no frequency file was given.
    pub frequencies: Option<HashMap<String, u64>>,
    pub veto: HashSet<String>,
}

impl LexiconSources {
    pub fn new(dictionary: impl Into<PathBuf>) -> Self {
        LexiconSources {
            dictionary: dictionary.into(),
            ..Default::default()
        }
    }

    pub fn load(&self, inv: &Inventory) -> Result<Lexicon> {
        let parsed = read_dictionary(&self.dictionary, inv)?;
        let mut lexicon = Lexicon {
            entries: parsed.entries,
            diagnostics: parsed.diagnostics,
            ..Default::default()
        };
        if let Some(path) = &self.frequencies {
            let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            let counts = load_frequencies(&text)?;
            attach_frequencies(&mut lexicon.entries, &counts);
            lexicon.frequencies = Some(counts);
        }
        if let Some(path) = &self.veto {
            let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            lexicon.veto = load_veto(&text);
        }
        Ok(lexicon)
    }
}
