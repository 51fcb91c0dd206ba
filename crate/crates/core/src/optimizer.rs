//! Genetic search for a word subset with the largest smallest pairwise
//! distance.
//!
//! Each individual is a fixed-size set of pool indices. A generation
//! evaluates every individual, carries the best few over unchanged, and
//! fills the rest of the population with children of rank-selected parents.
//! A child keeps all locked words, takes each remaining slot from one parent
//! or the other at random, is topped up with random pool words if the mix
//! produced duplicates, and finally has a few members swapped for random
//! outsiders.
//!
//! Fitness is `(smallest distance, number of pairs at that distance)`:
//! a larger minimum wins, then fewer pairs at the minimum, then the
//! individual created first.
//!
//! # Random numbers
//!
//! All randomness comes from xoshiro256** seeded from the 64-bit run seed
//! through SplitMix64. Integers below `n` are drawn by rejection: draw
//! `x`, retry while `x < 2^64 mod n`, return `x mod n`. With the same seed,
//! pool and configuration a run is reproducible bit for bit, whatever the
//! thread count.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lexicon::WordEntry;
use crate::metric::{min_pairwise, DistanceMatrix};
use crate::phoneme::Inventory;
use crate::word_code::{encode_word, TemplateKind, WordCode};

pub const DEFAULT_SEED: u64 = 0x9E37_79B9_7F4A_7C15;

/// Pools up to this size get a precomputed distance matrix.
const MATRIX_LIMIT: usize = 6000;

/// Deterministic generator used by the optimizer.
#[derive(Debug, Clone)]
pub struct SeededRng(Xoshiro256StarStar);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng(Xoshiro256StarStar::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform integer in `0..n`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        let threshold = n.wrapping_neg() % n;
        loop {
            let x = self.next_u64();
            if x >= threshold {
                return x % n;
            }
        }
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.below(n as u64) as usize
    }
}

/// Candidate words of one template, in a fixed order.
#[derive(Debug, Clone, Default)]
pub struct Pool {
    pub spellings: Vec<String>,
    pub codes: Vec<WordCode>,
}

impl Pool {
    pub fn from_entries(
        inv: &Inventory,
        entries: &[WordEntry],
        kind: TemplateKind,
    ) -> Result<Self> {
        let codes = entries
            .iter()
            .map(|e| encode_word(inv, e, kind))
            .collect::<Result<Vec<_>>>()?;
        Ok(Pool {
            spellings: entries.iter().map(|e| e.spelling.clone()).collect(),
            codes,
        })
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn position(&self, spelling: &str) -> Option<usize> {
        self.spellings
            .iter()
            .position(|s| s.eq_ignore_ascii_case(spelling))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaConfig {
    pub subset_size: usize,
    pub population_size: usize,
    pub generations: usize,
    pub elitism_count: usize,
    pub mutation_swaps: usize,
    pub rng_seed: u64,
    /// Spellings that every individual must contain.
    pub locked_words: BTreeSet<String>,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            subset_size: 256,
            population_size: 50,
            generations: 500,
            elitism_count: 4,
            mutation_swaps: 4,
            rng_seed: DEFAULT_SEED,
            locked_words: BTreeSet::new(),
        }
    }
}

impl GaConfig {
    /// Checks the configuration against `pool` and resolves locked words to
    /// pool indices.
    pub fn validate(&self, pool: &Pool) -> Result<Vec<u32>> {
        let bad = |m: String| Err(Error::Config(m));
        if self.subset_size < 2 {
            return bad(format!("subset size {} is below 2", self.subset_size));
        }
        if self.subset_size > pool.len() {
            return bad(format!(
                "subset size {} exceeds pool of {}",
                self.subset_size,
                pool.len()
            ));
        }
        if self.population_size < 2 {
            return bad("population needs at least two individuals".into());
        }
        if self.elitism_count >= self.population_size {
            return bad(format!(
                "elitism count {} must be below population size {}",
                self.elitism_count, self.population_size
            ));
        }
        if self.generations == 0 {
            return bad("at least one generation is required".into());
        }
        if self.locked_words.len() > self.subset_size {
            return bad(format!(
                "{} locked words do not fit a subset of {}",
                self.locked_words.len(),
                self.subset_size
            ));
        }
        let mut locked = BTreeSet::new();
        for w in &self.locked_words {
            match pool.position(w) {
                Some(i) => {
                    if !locked.insert(i as u32) {
                        return bad(format!("locked word {w} listed twice"));
                    }
                }
                None => return bad(format!("locked word {w} is not in the candidate pool")),
            }
        }
        Ok(locked.into_iter().collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fitness {
    pub min: u32,
    pub pairs_at_min: u64,
}

impl Ord for Fitness {
    /// `Greater` is fitter.
    fn cmp(&self, other: &Self) -> Ordering {
        self.min
            .cmp(&other.min)
            .then(other.pairs_at_min.cmp(&self.pairs_at_min))
    }
}

impl PartialOrd for Fitness {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Individual {
    /// Sorted pool indices.
    pub members: Vec<u32>,
    pub fitness: Fitness,
    /// Creation order within the run, used as the last tie-break.
    pub created: u64,
}

impl Individual {
    pub fn spellings<'a>(&self, pool: &'a Pool) -> Vec<&'a str> {
        self.members
            .iter()
            .map(|&i| pool.spellings[i as usize].as_str())
            .collect()
    }

    pub fn codes(&self, pool: &Pool) -> Vec<WordCode> {
        self.members
            .iter()
            .map(|&i| pool.codes[i as usize])
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceRow {
    pub generation: usize,
    pub best_min: u32,
    pub pairs_at_min: u64,
}

#[derive(Debug, Clone)]
pub struct Evolution {
    pub best: Individual,
    /// Best fitness of each generation.
    pub trace: Vec<TraceRow>,
    pub warnings: Vec<String>,
}

impl Evolution {
    /// `generation<TAB>best_min<TAB>pairs_at_min`, one line per generation.
    pub fn trace_text(&self) -> String {
        let mut out = String::new();
        for r in &self.trace {
            writeln!(out, "{}\t{}\t{}", r.generation, r.best_min, r.pairs_at_min).unwrap();
        }
        out
    }
}

/// Fitness of an arbitrary member set, computed directly from the codes.
pub fn fitness(members: &[u32], pool: &Pool) -> Result<Fitness> {
    let codes: Vec<WordCode> = members.iter().map(|&i| pool.codes[i as usize]).collect();
    let s = min_pairwise(&codes)?;
    Ok(Fitness {
        min: s.min,
        pairs_at_min: s.pairs_at_min(),
    })
}

enum Distances<'a> {
    Matrix(DistanceMatrix),
    Direct(&'a [WordCode]),
}

impl Distances<'_> {
    fn evaluate(&self, members: &[u32]) -> Fitness {
        let mut min = u32::MAX;
        let mut count = 0u64;
        for (k, &i) in members.iter().enumerate() {
            for &j in &members[k + 1..] {
                let d = match self {
                    Distances::Matrix(m) => m.get(i as usize, j as usize),
                    Distances::Direct(c) => c[i as usize].hamming(&c[j as usize]),
                };
                match d.cmp(&min) {
                    Ordering::Less => {
                        min = d;
                        count = 1;
                    }
                    Ordering::Equal => count += 1,
                    Ordering::Greater => {}
                }
            }
        }
        Fitness {
            min,
            pairs_at_min: count,
        }
    }
}

struct Breeder<'a> {
    pool_len: usize,
    subset_size: usize,
    locked: &'a [u32],
    is_locked: Vec<bool>,
    mutation_swaps: usize,
}

impl Breeder<'_> {
    fn free_members<'m>(&'m self, ind: &'m [u32]) -> impl Iterator<Item = u32> + 'm {
        ind.iter().copied().filter(|&i| !self.is_locked[i as usize])
    }

    fn random_member_set(&self, rng: &mut SeededRng) -> Vec<u32> {
        let mut member = vec![false; self.pool_len];
        for &i in self.locked {
            member[i as usize] = true;
        }
        let mut outside: Vec<u32> = (0..self.pool_len as u32)
            .filter(|&i| !member[i as usize])
            .collect();
        self.top_up(&mut member, &mut outside, self.locked.len(), rng);
        collect_members(&member)
    }

    /// Adds random outsiders until `have` reaches the subset size.
    fn top_up(
        &self,
        member: &mut [bool],
        outside: &mut Vec<u32>,
        mut have: usize,
        rng: &mut SeededRng,
    ) {
        while have < self.subset_size {
            let k = rng.index(outside.len());
            let pick = outside.swap_remove(k);
            member[pick as usize] = true;
            have += 1;
        }
    }

    fn breed(&self, a: &[u32], b: &[u32], rng: &mut SeededRng) -> Vec<u32> {
        let mut member = vec![false; self.pool_len];
        for &i in self.locked {
            member[i as usize] = true;
        }
        let mut have = self.locked.len();
        for (x, y) in self.free_members(a).zip(self.free_members(b)) {
            let pick = if rng.below(2) == 0 { x } else { y };
            if !member[pick as usize] {
                member[pick as usize] = true;
                have += 1;
            }
        }
        let mut outside: Vec<u32> = (0..self.pool_len as u32)
            .filter(|&i| !member[i as usize])
            .collect();
        self.top_up(&mut member, &mut outside, have, rng);
        self.mutate(&mut member, &mut outside, rng);
        collect_members(&member)
    }

    fn mutate(&self, member: &mut [bool], outside: &mut Vec<u32>, rng: &mut SeededRng) {
        let mut free: Vec<u32> = (0..self.pool_len as u32)
            .filter(|&i| member[i as usize] && !self.is_locked[i as usize])
            .collect();
        let swaps = self.mutation_swaps.min(free.len()).min(outside.len());
        for _ in 0..swaps {
            let out_k = rng.index(free.len());
            let in_k = rng.index(outside.len());
            let leaving = free.swap_remove(out_k);
            let joining = outside.swap_remove(in_k);
            member[leaving as usize] = false;
            member[joining as usize] = true;
            // a word swapped out this round may come back in a later round
            outside.push(leaving);
        }
    }
}

fn collect_members(member: &[bool]) -> Vec<u32> {
    member
        .iter()
        .enumerate()
        .filter(|(_, &m)| m)
        .map(|(i, _)| i as u32)
        .collect()
}

fn check_individual(members: &[u32], subset_size: usize, locked: &[u32]) {
    assert_eq!(members.len(), subset_size, "individual has wrong size");
    assert!(
        members.windows(2).all(|w| w[0] < w[1]),
        "members not unique"
    );
    assert!(
        locked.iter().all(|l| members.binary_search(l).is_ok()),
        "locked word missing"
    );
}

/// Index of a parent drawn with probability proportional to reversed rank
/// (`n` for the best of `n`, 1 for the worst).
fn select_rank(n: usize, rng: &mut SeededRng) -> usize {
    let total = (n * (n + 1) / 2) as u64;
    let mut r = rng.below(total);
    for rank in 0..n {
        let w = (n - rank) as u64;
        if r < w {
            return rank;
        }
        r -= w;
    }
    unreachable!()
}

fn sort_population(pop: &mut [Individual]) {
    pop.sort_by(|a, b| b.fitness.cmp(&a.fitness).then(a.created.cmp(&b.created)));
}

pub fn evolve(pool: &Pool, config: &GaConfig) -> Result<Evolution> {
    let locked = config.validate(pool)?;
    let mut warnings = Vec::new();
    let distinct: HashSet<&WordCode> = pool.codes.iter().collect();
    if distinct.len() < pool.len() {
        warnings.push(format!(
            "pool has {} words sharing a code with another word",
            pool.len() - distinct.len()
        ));
    }

    let distances = if pool.len() <= MATRIX_LIMIT {
        Distances::Matrix(DistanceMatrix::new(&pool.codes)?)
    } else {
        Distances::Direct(&pool.codes)
    };
    let mut is_locked = vec![false; pool.len()];
    for &i in &locked {
        is_locked[i as usize] = true;
    }
    let breeder = Breeder {
        pool_len: pool.len(),
        subset_size: config.subset_size,
        locked: &locked,
        is_locked,
        mutation_swaps: config.mutation_swaps,
    };

    let mut rng = SeededRng::new(config.rng_seed);
    let mut created = 0u64;
    let unscored = Fitness {
        min: 0,
        pairs_at_min: u64::MAX,
    };
    let mut population: Vec<Individual> = (0..config.population_size)
        .map(|_| {
            created += 1;
            Individual {
                members: breeder.random_member_set(&mut rng),
                fitness: unscored,
                created: created - 1,
            }
        })
        .collect();
    let mut scored = vec![false; population.len()];

    let mut trace = Vec::with_capacity(config.generations);
    let mut best: Option<Individual> = None;
    for generation in 0..config.generations {
        population
            .par_iter_mut()
            .zip(&scored)
            .filter(|(_, &done)| !done)
            .for_each(|(ind, _)| ind.fitness = distances.evaluate(&ind.members));
        sort_population(&mut population);
        if cfg!(debug_assertions) || cfg!(test) {
            for ind in &population {
                check_individual(&ind.members, config.subset_size, &locked);
            }
        }

        let top = &population[0];
        trace.push(TraceRow {
            generation,
            best_min: top.fitness.min,
            pairs_at_min: top.fitness.pairs_at_min,
        });
        if best.as_ref().is_none_or(|b| top.fitness > b.fitness) {
            best = Some(top.clone());
        }
        if generation + 1 == config.generations {
            break;
        }

        let n = population.len();
        let mut next: Vec<Individual> = population[..config.elitism_count].to_vec();
        while next.len() < config.population_size {
            let pa = &population[select_rank(n, &mut rng)];
            let pb = &population[select_rank(n, &mut rng)];
            let members = breeder.breed(&pa.members, &pb.members, &mut rng);
            next.push(Individual {
                members,
                fitness: unscored,
                created,
            });
            created += 1;
        }
        scored = (0..next.len()).map(|i| i < config.elitism_count).collect();
        population = next;
    }

    Ok(Evolution {
        best: best.expect("at least one generation ran"),
        trace,
        warnings,
    })
}

/// Pool words outside `members`, best first: ordered by their distance to
/// the nearest member (larger is better), then by pool order. These are the
/// natural replacements when a chosen word has to go.
pub fn reserve_ranking(pool: &Pool, members: &[u32]) -> Vec<(u32, u32)> {
    let inside: HashSet<u32> = members.iter().copied().collect();
    let mut ranked: Vec<(u32, u32)> = (0..pool.len() as u32)
        .into_par_iter()
        .filter(|i| !inside.contains(i))
        .map(|i| {
            let c = &pool.codes[i as usize];
            let nearest = members
                .iter()
                .map(|&m| c.hamming(&pool.codes[m as usize]))
                .min()
                .unwrap_or(u32::MAX);
            (i, nearest)
        })
        .collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    ranked
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pool_from_bits(rows: &[&[usize]]) -> Pool {
        let codes = rows
            .iter()
            .map(|bits| {
                let mut c = WordCode::zeros(TemplateKind::TwoSyllable);
                for &b in *bits {
                    c.flip(b);
                }
                c
            })
            .collect::<Vec<_>>();
        Pool {
            spellings: (0..codes.len()).map(|i| format!("w{i}")).collect(),
            codes,
        }
    }

    fn random_pool(n: usize, seed: u64) -> Pool {
        let mut rng = SeededRng::new(seed);
        let codes = (0..n)
            .map(|_| {
                let mut c = WordCode::zeros(TemplateKind::TwoSyllable);
                for b in 0..357 {
                    if rng.below(4) == 0 {
                        c.flip(b);
                    }
                }
                c
            })
            .collect::<Vec<_>>();
        Pool {
            spellings: (0..n).map(|i| format!("w{i}")).collect(),
            codes,
        }
    }

    #[test]
    fn rng_is_reproducible_and_bounded() {
        let mut a = SeededRng::new(7);
        let mut b = SeededRng::new(7);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
        let mut counts = [0usize; 3];
        for _ in 0..3000 {
            counts[a.index(3)] += 1;
        }
        assert!(counts.iter().all(|&c| c > 900), "{counts:?}");
    }

    #[test]
    fn rank_selection_prefers_the_top() {
        let mut rng = SeededRng::new(1);
        let mut hits = [0usize; 4];
        for _ in 0..10_000 {
            hits[select_rank(4, &mut rng)] += 1;
        }
        assert!(hits[0] > hits[1] && hits[1] > hits[2] && hits[2] > hits[3]);
    }

    #[test]
    fn fitness_order() {
        let f = |min, pairs_at_min| Fitness { min, pairs_at_min };
        assert!(f(5, 10) > f(4, 1));
        assert!(f(5, 1) > f(5, 2));
        assert_eq!(f(5, 2).cmp(&f(5, 2)), Ordering::Equal);
    }

    #[test]
    fn config_validation() {
        let pool = random_pool(10, 1);
        let ok = GaConfig {
            subset_size: 4,
            population_size: 6,
            generations: 3,
            ..Default::default()
        };
        assert!(ok.validate(&pool).is_ok());
        let bad = [
            GaConfig {
                subset_size: 11,
                ..ok.clone()
            },
            GaConfig {
                subset_size: 1,
                ..ok.clone()
            },
            GaConfig {
                elitism_count: 6,
                ..ok.clone()
            },
            GaConfig {
                generations: 0,
                ..ok.clone()
            },
            GaConfig {
                locked_words: BTreeSet::from(["nope".into()]),
                ..ok.clone()
            },
            GaConfig {
                locked_words: (0..5).map(|i| format!("w{i}")).collect(),
                ..ok.clone()
            },
        ];
        for cfg in bad {
            assert!(
                matches!(cfg.validate(&pool), Err(Error::Config(_))),
                "{cfg:?}"
            );
        }
        assert!(matches!(
            evolve(&pool, &GaConfig::default()),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn forced_subset() {
        let pool = random_pool(8, 3);
        let cfg = GaConfig {
            subset_size: 8,
            population_size: 5,
            generations: 6,
            ..Default::default()
        };
        let run = evolve(&pool, &cfg).unwrap();
        let expected = min_pairwise(&pool.codes).unwrap();
        assert_eq!(run.best.fitness.min, expected.min);
        assert!(run.trace.iter().all(|r| r.best_min == expected.min));
        assert_eq!(run.trace.len(), 6);
    }

    #[test]
    fn locked_words_always_present() {
        let pool = random_pool(40, 5);
        let cfg = GaConfig {
            subset_size: 12,
            population_size: 10,
            generations: 30,
            locked_words: ["w3", "W7", "w19"].iter().map(|s| s.to_string()).collect(),
            ..Default::default()
        };
        // check_individual runs on every generation in test builds
        let run = evolve(&pool, &cfg).unwrap();
        for w in ["w3", "w7", "w19"] {
            assert!(run.best.spellings(&pool).contains(&w));
        }
    }

    #[test]
    fn matrix_and_direct_fitness_agree() {
        let pool = random_pool(30, 9);
        let matrix = Distances::Matrix(DistanceMatrix::new(&pool.codes).unwrap());
        let direct = Distances::Direct(&pool.codes);
        let mut rng = SeededRng::new(2);
        for _ in 0..20 {
            let mut m: Vec<u32> = (0..30).collect();
            for k in (1..m.len()).rev() {
                m.swap(k, rng.index(k + 1));
            }
            let mut m = m[..10].to_vec();
            m.sort();
            let oracle = fitness(&m, &pool).unwrap();
            assert_eq!(matrix.evaluate(&m), oracle);
            assert_eq!(direct.evaluate(&m), oracle);
        }
    }

    #[test]
    fn duplicate_codes_warn() {
        let pool = pool_from_bits(&[&[1], &[1], &[2, 3], &[9]]);
        let cfg = GaConfig {
            subset_size: 2,
            population_size: 4,
            generations: 3,
            elitism_count: 1,
            ..Default::default()
        };
        let run = evolve(&pool, &cfg).unwrap();
        assert_eq!(run.warnings.len(), 1);
    }

    #[test]
    fn reserves_are_ranked_by_distance() {
        let pool = pool_from_bits(&[&[], &[0, 1, 2, 3], &[0], &[10, 11, 12]]);
        let r = reserve_ranking(&pool, &[0, 1]);
        assert_eq!(r, vec![(3, 3), (2, 1)]);
    }
}
