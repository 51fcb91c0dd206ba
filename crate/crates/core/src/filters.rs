//! Candidate filtering.
//!
//! A dictionary word becomes a candidate only if it fits one of the two
//! templates, is short on consonant clusters, is unambiguous in both
//! directions (one pronunciation per spelling, one spelling per
//! pronunciation), sits inside the configured frequency band and has not
//! been vetoed. Each rejected word is charged to the first rule it breaks.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::lexicon::WordEntry;
use crate::phoneme::{Inventory, PhonemeId};
use crate::word_code::{check_fits, template_of, TemplateKind, MAX_CLUSTER};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterConfig {
    /// Longest allowed onset, medial or final cluster. Values above the
    /// template limit of 2 are treated as 2.
    pub max_cluster: usize,
    pub min_freq: u64,
    pub max_freq: u64,
    pub min_letters: usize,
    /// Reject words without a frequency count. Set when a frequency file
    /// has been loaded.
    pub require_known_frequency: bool,
    pub auto_drop_derivational: bool,
}

impl Default for FilterConfig {
    fn default() -> Self {
        FilterConfig {
            max_cluster: 2,
            min_freq: 1,
            max_freq: 84,
            min_letters: 3,
            require_known_frequency: false,
            auto_drop_derivational: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    SyllableCount,
    Clusters,
    Unique,
    Frequency,
    Veto,
    Spelling,
}

impl Rule {
    pub const ALL: [Rule; 6] = [
        Rule::SyllableCount,
        Rule::Clusters,
        Rule::Unique,
        Rule::Frequency,
        Rule::Veto,
        Rule::Spelling,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::SyllableCount => "syllable-count",
            Rule::Clusters => "clusters",
            Rule::Unique => "unique",
            Rule::Frequency => "frequency",
            Rule::Veto => "veto",
            Rule::Spelling => "spelling",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RejectionCounts([usize; 6]);

impl RejectionCounts {
    pub fn get(&self, rule: Rule) -> usize {
        self.0[rule as usize]
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    fn charge(&mut self, rule: Rule) {
        self.0[rule as usize] += 1;
    }
}

impl fmt::Display for RejectionCounts {
    /// One `rule<TAB>count` line per rule, in rule order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rule in Rule::ALL {
            writeln!(f, "{}\t{}", rule.name(), self.get(rule))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default)]
pub struct FilterOutcome {
    pub two: Vec<WordEntry>,
    pub three: Vec<WordEntry>,
    pub rejections: RejectionCounts,
}

impl FilterOutcome {
    pub fn pool(&self, kind: TemplateKind) -> &[WordEntry] {
        match kind {
            TemplateKind::TwoSyllable => &self.two,
            TemplateKind::ThreeSyllable => &self.three,
        }
    }

    pub fn survivors(&self) -> usize {
        self.two.len() + self.three.len()
    }
}

/// First rule `entry` violates. `unique` says whether the entry passed the
/// lexicon-wide uniqueness check.
fn first_violation(
    inv: &Inventory,
    entry: &WordEntry,
    unique: bool,
    veto: &HashSet<String>,
    cfg: &FilterConfig,
) -> Option<Rule> {
    let Some(kind) = template_of(entry) else {
        return Some(Rule::SyllableCount);
    };
    let limit = cfg.max_cluster.min(MAX_CLUSTER);
    let clusters_ok = entry.initial_cluster().len() <= limit
        && entry.final_cluster().len() <= limit
        && entry.medial_clusters().iter().all(|c| c.len() <= limit)
        && entry.syllables.iter().all(|s| s.nucleus.len() <= 2);
    if !clusters_ok {
        return Some(Rule::Clusters);
    }
    if !unique {
        return Some(Rule::Unique);
    }
    let freq_ok = match entry.frequency {
        Some(f) => (cfg.min_freq..=cfg.max_freq).contains(&f),
        None => !cfg.require_known_frequency,
    };
    if !freq_ok {
        return Some(Rule::Frequency);
    }
    if veto.contains(&entry.key()) {
        return Some(Rule::Veto);
    }
    let letters = entry.spelling.len();
    if letters < cfg.min_letters.max(2) || !entry.spelling.chars().all(|c| c.is_ascii_alphabetic())
    {
        return Some(Rule::Spelling);
    }
    // whatever the cheap checks missed (e.g. a blend nucleus that includes
    // a diphthong) is a cluster/nucleus shape problem
    if check_fits(inv, entry, kind).is_err() {
        return Some(Rule::Clusters);
    }
    None
}

/// Which entries pass the uniqueness rule. Repeated entries (same folded
/// spelling and pronunciation) are unique in the lexicon but only their
/// first occurrence passes.
fn uniqueness(entries: &[WordEntry]) -> Vec<bool> {
    let mut prons_of: HashMap<String, HashSet<&[PhonemeId]>> = HashMap::new();
    let mut spellings_of: HashMap<&[PhonemeId], HashSet<String>> = HashMap::new();
    for e in entries {
        prons_of.entry(e.key()).or_default().insert(&e.phonemes);
        spellings_of.entry(&e.phonemes).or_default().insert(e.key());
    }
    let mut seen = HashSet::new();
    entries
        .iter()
        .map(|e| {
            let key = e.key();
            let unambiguous =
                prons_of[&key].len() == 1 && spellings_of[e.phonemes.as_slice()].len() == 1;
            unambiguous && seen.insert(key)
        })
        .collect()
}

pub fn filter_candidates(
    inv: &Inventory,
    entries: &[WordEntry],
    veto: &HashSet<String>,
    cfg: &FilterConfig,
) -> FilterOutcome {
    let unique = uniqueness(entries);
    let verdicts: Vec<Option<Rule>> = entries
        .par_iter()
        .zip(&unique)
        .map(|(e, &u)| first_violation(inv, e, u, veto, cfg))
        .collect();

    let mut out = FilterOutcome::default();
    for (entry, verdict) in entries.iter().zip(verdicts) {
        match verdict {
            Some(rule) => out.rejections.charge(rule),
            None => match template_of(entry) {
                Some(TemplateKind::TwoSyllable) => out.two.push(entry.clone()),
                Some(TemplateKind::ThreeSyllable) => out.three.push(entry.clone()),
                None => unreachable!("syllable count checked first"),
            },
        }
    }
    out
}

pub const DERIVATIONAL_SUFFIXES: [&str; 11] = [
    "s", "es", "ed", "ing", "er", "est", "ist", "ists", "ness", "ly", "y",
];

/// Shortest stem the shared-stem rule will accept.
pub const MIN_SHARED_STEM: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DerivationalFlag {
    pub a: String,
    pub b: String,
    pub reason: String,
}

impl fmt::Display for DerivationalFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / {} ({})", self.a, self.b, self.reason)
    }
}

/// Candidate stems: the word itself, and the word with one listed suffix
/// removed, with a final `i` read back as `y` (holi-ness -> holy).
fn stems(word: &str) -> BTreeSet<String> {
    let mut out = BTreeSet::from([word.to_string()]);
    for suffix in DERIVATIONAL_SUFFIXES {
        if let Some(stem) = word.strip_suffix(suffix) {
            if stem.is_empty() {
                continue;
            }
            out.insert(stem.to_string());
            if let Some(base) = stem.strip_suffix('i') {
                out.insert(format!("{base}y"));
            }
        }
    }
    out
}

fn relation(a: &str, b: &str) -> Option<String> {
    if a == b {
        return None;
    }
    let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if let Some(residue) = long.strip_prefix(short) {
        if DERIVATIONAL_SUFFIXES.contains(&residue) {
            return Some(format!("suffix -{residue}"));
        }
    }
    let sa = stems(a);
    stems(b)
        .intersection(&sa)
        .filter(|s| s.len() >= MIN_SHARED_STEM)
        .max_by_key(|s| s.len())
        .map(|s| format!("shared stem {s}"))
}

/// Pairs across the two lists that look derivationally related. Output is
/// sorted; words are compared case-folded but reported as given.
pub fn derivational_pairs<A: AsRef<str> + Sync, B: AsRef<str> + Sync>(
    list_a: &[A],
    list_b: &[B],
) -> Vec<DerivationalFlag> {
    let folded_b: Vec<String> = list_b
        .iter()
        .map(|w| w.as_ref().to_ascii_lowercase())
        .collect();
    let mut flags: Vec<DerivationalFlag> = list_a
        .par_iter()
        .flat_map_iter(|a| {
            let fa = a.as_ref().to_ascii_lowercase();
            let mut found = Vec::new();
            for (b, fb) in list_b.iter().zip(&folded_b) {
                if let Some(reason) = relation(&fa, fb) {
                    found.push(DerivationalFlag {
                        a: a.as_ref().to_string(),
                        b: b.as_ref().to_string(),
                        reason,
                    });
                }
            }
            found
        })
        .collect();
    flags.sort();
    flags.dedup();
    flags
}

/// The member of a flagged pair to remove: the base (shorter) form, or the
/// second-list word when both are the same length.
pub fn drop_choice(flag: &DerivationalFlag) -> Side {
    if flag.a.len() < flag.b.len() {
        Side::A
    } else {
        Side::B
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}
