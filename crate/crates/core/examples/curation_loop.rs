//! Keep the words a reviewer liked, ban the ones they did not, and run again.

use std::collections::{BTreeSet, HashSet};

use phonalpha::filters::{filter_candidates, FilterConfig};
use phonalpha::lexicon::parse_dictionary;
use phonalpha::optimizer::{evolve, GaConfig, Pool};
use phonalpha::synth::{synth_lexicon, SynthConfig};
use phonalpha::{Inventory, TemplateKind};

fn main() -> phonalpha::Result<()> {
    let inv = Inventory::standard();
    let kind = TemplateKind::TwoSyllable;
    let lex = synth_lexicon(SynthConfig {
        two_syllable: 600,
        three_syllable: 0,
        seed: 21,
    });
    let entries = parse_dictionary(&lex.dictionary, inv).entries;

    let mut veto: HashSet<String> = HashSet::new();
    let mut locked: BTreeSet<String> = BTreeSet::new();
    for round in 1..=3 {
        let filtered = filter_candidates(inv, &entries, &veto, &FilterConfig::default());
        let pool = Pool::from_entries(inv, filtered.pool(kind), kind)?;
        let cfg = GaConfig {
            generations: 60,
            rng_seed: round,
            locked_words: locked.clone(),
            ..Default::default()
        };
        let run = evolve(&pool, &cfg)?;
        let words = run.best.spellings(&pool);
        println!(
            "round {round}: pool {}, locked {}, min distance {} ({} pairs)",
            pool.len(),
            locked.len(),
            run.best.fitness.min,
            run.best.fitness.pairs_at_min
        );
        // stand-in reviewer: dislikes words containing "oy", approves the rest of
        // the first hundred
        let reviewed: Vec<&str> = words
            .iter()
            .copied()
            .filter(|w| !locked.contains(*w))
            .take(100)
            .collect();
        for w in reviewed {
            if w.contains("oy") {
                veto.insert(w.to_string());
            } else {
                locked.insert(w.to_string());
            }
        }
    }
    Ok(())
}
