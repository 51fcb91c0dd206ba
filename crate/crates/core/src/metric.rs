//! Whole-word distances and pairwise statistics.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::word_code::WordCode;

/// Number of differing bits. Codes from different templates have no
/// defined distance.
pub fn word_distance(a: &WordCode, b: &WordCode) -> Result<u32> {
    if a.kind() != b.kind() {
        return Err(Error::KindMismatch(a.kind(), b.kind()));
    }
    Ok(a.hamming(b))
}

fn check_uniform(codes: &[WordCode]) -> Result<()> {
    if let Some(first) = codes.first() {
        if let Some(other) = codes.iter().find(|c| c.kind() != first.kind()) {
            return Err(Error::KindMismatch(first.kind(), other.kind()));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrixSummary {
    pub min: u32,
    /// Lexicographically smallest index pair at the minimum.
    pub argmin: (usize, usize),
    /// Distance -> number of pairs.
    pub histogram: BTreeMap<u32, u64>,
}

impl DistanceMatrixSummary {
    pub fn pairs_at_min(&self) -> u64 {
        self.histogram[&self.min]
    }

    pub fn pair_count(&self) -> u64 {
        self.histogram.values().sum()
    }
}

#[derive(Debug, Clone)]
struct Partial {
    min: u32,
    argmin: (usize, usize),
    histogram: BTreeMap<u32, u64>,
}

impl Partial {
    fn empty() -> Self {
        Partial {
            min: u32::MAX,
            argmin: (usize::MAX, usize::MAX),
            histogram: BTreeMap::new(),
        }
    }

    fn add(&mut self, d: u32, pair: (usize, usize)) {
        *self.histogram.entry(d).or_default() += 1;
        if (d, pair) < (self.min, self.argmin) {
            self.min = d;
            self.argmin = pair;
        }
    }

    fn merge(mut self, other: Partial) -> Partial {
        for (d, n) in other.histogram {
            *self.histogram.entry(d).or_default() += n;
        }
        if (other.min, other.argmin) < (self.min, self.argmin) {
            self.min = other.min;
            self.argmin = other.argmin;
        }
        self
    }
}

/// Exact minimum over all pairs, with the full distance histogram.
///
/// Rows are processed in parallel; the merge is order-insensitive, so the
/// result does not depend on how the work is split.
pub fn min_pairwise(codes: &[WordCode]) -> Result<DistanceMatrixSummary> {
    if codes.len() < 2 {
        return Err(Error::TooFewCodes(codes.len()));
    }
    check_uniform(codes)?;
    let p = (0..codes.len() - 1)
        .into_par_iter()
        .fold(Partial::empty, |mut acc, i| {
            for j in i + 1..codes.len() {
                acc.add(codes[i].hamming(&codes[j]), (i, j));
            }
            acc
        })
        .reduce(Partial::empty, Partial::merge);
    Ok(DistanceMatrixSummary {
        min: p.min,
        argmin: p.argmin,
        histogram: p.histogram,
    })
}

/// The `k` codes closest to `query`, as `(index, distance)` in ascending
/// distance; ties keep list order.
pub fn nearest_neighbors(
    query: &WordCode,
    set: &[WordCode],
    k: usize,
) -> Result<Vec<(usize, u32)>> {
    let mut scored = set
        .iter()
        .enumerate()
        .map(|(i, c)| word_distance(query, c).map(|d| (i, d)))
        .collect::<Result<Vec<_>>>()?;
    scored.sort_by_key(|&(i, d)| (d, i));
    scored.truncate(k);
    Ok(scored)
}

/// Condensed upper-triangle matrix of pairwise distances, indexed by list
/// position.
#[derive(Debug, Clone)]
pub struct DistanceMatrix {
    n: usize,
    cells: Vec<u16>,
}

impl DistanceMatrix {
    pub fn new(codes: &[WordCode]) -> Result<Self> {
        check_uniform(codes)?;
        let n = codes.len();
        let rows: Vec<Vec<u16>> = (0..n)
            .into_par_iter()
            .map(|i| {
                (i + 1..n)
                    .map(|j| codes[i].hamming(&codes[j]) as u16)
                    .collect()
            })
            .collect();
        Ok(DistanceMatrix {
            n,
            cells: rows.concat(),
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        if i == j {
            return 0;
        }
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        // rows before i hold (n-1) + (n-2) + ... + (n-i) cells
        let row_start = i * (2 * self.n - i - 1) / 2;
        self.cells[row_start + (j - i - 1)] as u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word_code::TemplateKind;

    fn with_ones(kind: TemplateKind, bits: &[usize]) -> WordCode {
        let mut c = WordCode::zeros(kind);
        for &b in bits {
            c.flip(b);
        }
        c
    }

    const TWO: TemplateKind = TemplateKind::TwoSyllable;

    #[test]
    fn identity_and_mismatch() {
        let c = with_ones(TWO, &[0, 5, 356]);
        assert_eq!(word_distance(&c, &c).unwrap(), 0);
        let other = WordCode::zeros(TemplateKind::ThreeSyllable);
        assert!(matches!(
            word_distance(&c, &other),
            Err(Error::KindMismatch(..))
        ));
    }

    #[test]
    fn min_pairwise_small_sets() {
        let c = with_ones(TWO, &[3]);
        let s = min_pairwise(&[c, c]).unwrap();
        assert_eq!((s.min, s.argmin), (0, (0, 1)));

        // d01 = 4, d02 = 10, d12 = 6
        let a = WordCode::zeros(TWO);
        let b = with_ones(TWO, &[0, 1, 2, 3]);
        let c = with_ones(TWO, &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9]);
        assert_eq!(a.hamming(&b), 4);
        assert_eq!(a.hamming(&c), 10);
        assert_eq!(b.hamming(&c), 6);
        let s = min_pairwise(&[a, b, c]).unwrap();
        assert_eq!((s.min, s.argmin), (4, (0, 1)));
        assert_eq!(s.histogram, BTreeMap::from([(4, 1), (6, 1), (10, 1)]));
        assert_eq!(s.pairs_at_min(), 1);

        assert!(matches!(min_pairwise(&[a]), Err(Error::TooFewCodes(1))));
        assert!(min_pairwise(&[a, WordCode::zeros(TemplateKind::ThreeSyllable)]).is_err());
    }

    #[test]
    fn ties_pick_smallest_pair() {
        let a = WordCode::zeros(TWO);
        let b = with_ones(TWO, &[1]);
        let c = with_ones(TWO, &[1, 2]);
        let s = min_pairwise(&[a, b, c]).unwrap();
        assert_eq!((s.min, s.argmin, s.pairs_at_min()), (1, (0, 1), 2));
    }

    #[test]
    fn nearest() {
        let a = WordCode::zeros(TWO);
        let set = [
            with_ones(TWO, &[1, 2]),
            a,
            with_ones(TWO, &[7]),
            with_ones(TWO, &[9]),
        ];
        let nn = nearest_neighbors(&a, &set, 3).unwrap();
        assert_eq!(nn, vec![(1, 0), (2, 1), (3, 1)]);
        assert!(nearest_neighbors(&a, &set, 0).unwrap().is_empty());
        assert_eq!(nearest_neighbors(&a, &set, 10).unwrap().len(), 4);
    }

    #[test]
    fn matrix_lookup() {
        let codes: Vec<WordCode> = (0..7)
            .map(|i| with_ones(TWO, &(0..i * 3).collect::<Vec<_>>()))
            .collect();
        let m = DistanceMatrix::new(&codes).unwrap();
        for i in 0..7 {
            for j in 0..7 {
                assert_eq!(m.get(i, j), codes[i].hamming(&codes[j]));
            }
        }
    }
}
