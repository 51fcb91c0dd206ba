//! Evolve both word lists from a generated lexicon and assemble an alphabet.

use std::collections::HashSet;

use phonalpha::alphabet::{assemble_alphabet, AssembleOptions, List, Provenance};
use phonalpha::filters::{filter_candidates, FilterConfig};
use phonalpha::lexicon::{attach_frequencies, load_frequencies, parse_dictionary};
use phonalpha::optimizer::{evolve, reserve_ranking, GaConfig, Pool};
use phonalpha::synth::{synth_lexicon, SynthConfig};
use phonalpha::{Inventory, TemplateKind};

fn main() -> phonalpha::Result<()> {
    let inv = Inventory::standard();
    let lex = synth_lexicon(SynthConfig {
        two_syllable: 800,
        three_syllable: 800,
        seed: 12,
    });
    let mut entries = parse_dictionary(&lex.dictionary, inv).entries;
    attach_frequencies(&mut entries, &load_frequencies(&lex.frequencies)?);
    let filtered = filter_candidates(inv, &entries, &HashSet::new(), &FilterConfig::default());

    let mut lists = Vec::new();
    for kind in [TemplateKind::TwoSyllable, TemplateKind::ThreeSyllable] {
        let pool = Pool::from_entries(inv, filtered.pool(kind), kind)?;
        let cfg = GaConfig {
            generations: 150,
            rng_seed: 12,
            ..Default::default()
        };
        let run = evolve(&pool, &cfg)?;
        let first = run.trace.first().unwrap();
        let last = run.trace.last().unwrap();
        println!(
            "{kind}: pool {}, min distance {} ({} pairs) -> {} ({} pairs)",
            pool.len(),
            first.best_min,
            first.pairs_at_min,
            last.best_min,
            last.pairs_at_min
        );
        let words: Vec<String> = run
            .best
            .spellings(&pool)
            .iter()
            .map(|s| s.to_string())
            .collect();
        let reserve: Vec<String> = reserve_ranking(&pool, &run.best.members)
            .into_iter()
            .map(|(i, _)| pool.spellings[i as usize].clone())
            .collect();
        lists.push((words, reserve));
    }

    let opts = AssembleOptions {
        auto_drop: true,
        reserve_two: lists[0].1.clone(),
        reserve_three: lists[1].1.clone(),
        provenance: Provenance {
            seed: Some(12),
            config_digest: None,
        },
    };
    let assembly = assemble_alphabet(&lists[0].0, &lists[1].0, &opts)?;
    for r in &assembly.replacements {
        println!("replaced {} with {}", r.dropped, r.added);
    }
    let a = &assembly.alphabet;
    for i in [0u8, 1, 2, 127, 128, 253, 254, 255] {
        println!(
            "{i:>3}  {:<14} {}",
            a.word(List::Two, i),
            a.word(List::Three, i)
        );
    }
    Ok(())
}
