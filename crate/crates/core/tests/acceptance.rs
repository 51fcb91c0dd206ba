//! End-to-end acceptance checks, one line of output per criterion.

mod common;

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use phonalpha::alphabet::{decode_words, encode_bytes, DecodeErrorKind};
use phonalpha::features::{
    encode_nucleus, encode_phoneme, encode_symbol, FeatureVector, FEATURE_LAYOUT, PHONEME_BITS,
};
use phonalpha::filters::{filter_candidates, FilterConfig, Rule};
use phonalpha::lexicon::{attach_frequencies, load_frequencies, load_veto, parse_dictionary};
use phonalpha::metric::word_distance;
use phonalpha::optimizer::{evolve, fitness, GaConfig, Pool, SeededRng};
use phonalpha::synth::{synth_lexicon, SynthConfig};
use phonalpha::word_code::{encode_word, Field, TemplateKind, WordCode};

fn fv_bits(v: FeatureVector) -> String {
    v.to_string().replace(' ', "")
}

fn sym(s: &str) -> FeatureVector {
    encode_symbol(inv(), s).unwrap()
}

fn criterion_1() {
    assert_eq!(PHONEME_BITS, 26);
    let widths: Vec<usize> = FEATURE_LAYOUT.iter().map(|&(_, w)| w).collect();
    assert_eq!(widths, [7, 6, 5, 4, 1, 1, 1, 1]);
    for id in inv().ids() {
        assert_eq!(fv_bits(encode_phoneme(inv(), id).unwrap()).len(), 26);
    }
    let d = |a: &str, b: &str| {
        let (x, y) = (sym(a), sym(b));
        let oracle = char_distance(&fv_bits(x), &fv_bits(y));
        assert_eq!(x.distance(y), oracle);
        oracle
    };
    assert_eq!(d("Z", "S"), 4);
    assert_eq!(d("N", "D"), 1);
    assert_eq!(d("L", "R"), 1);
    assert_eq!(d("D", "G"), 2);
    assert_eq!(d("D", "T"), 4);
    assert!(d("D", "G") < d("D", "T"));
}

fn criterion_2() {
    assert_eq!(TemplateKind::TwoSyllable.width(), 357);
    let layout: Vec<(Field, usize)> = TemplateKind::TwoSyllable.layout().to_vec();
    let widths: Vec<usize> = layout.iter().map(|&(_, w)| w).collect();
    assert_eq!(widths, [78, 52, 52, 52, 52, 12, 52, 7]);
    assert_eq!(
        layout.iter().map(|&(f, _)| f).collect::<Vec<_>>(),
        [
            Field::Onset,
            Field::Vowel(0),
            Field::Medial(0),
            Field::Vowel(1),
            Field::Final,
            Field::Initials,
            Field::StressedVowel,
            Field::StressPattern
        ]
    );
    let granny = sample_entries()
        .into_iter()
        .find(|e| e.spelling == "granny")
        .unwrap();
    let code = encode_word(inv(), &granny, TemplateKind::TwoSyllable).unwrap();
    assert_eq!(code.to_bit_string().len(), 357);
}

fn criterion_3() {
    let mut phonemes: Vec<FeatureVector> = inv()
        .ids()
        .map(|id| encode_phoneme(inv(), id).unwrap())
        .collect();
    phonemes.push(FeatureVector::SILENCE);
    let strings: Vec<String> = phonemes.iter().map(|&v| fv_bits(v)).collect();
    for (i, &a) in phonemes.iter().enumerate() {
        assert_eq!(a.distance(a), 0);
        for (j, &b) in phonemes.iter().enumerate() {
            let ab = a.distance(b);
            assert_eq!(ab, b.distance(a));
            assert_eq!(ab, char_distance(&strings[i], &strings[j]));
            for &c in &phonemes {
                assert!(a.distance(c) <= ab + b.distance(c));
            }
        }
    }

    let lex = synth_lexicon(SynthConfig {
        two_syllable: 1500,
        three_syllable: 0,
        seed: 3,
    });
    let entries = parse_dictionary(&lex.dictionary, inv()).entries;
    let codes: Vec<WordCode> = entries
        .iter()
        .map(|e| encode_word(inv(), e, TemplateKind::TwoSyllable).unwrap())
        .collect();
    let bits: Vec<String> = codes.iter().map(WordCode::to_bit_string).collect();
    let mut rng = SeededRng::new(11);
    for _ in 0..10_000 {
        let (i, j, k) = (
            rng.index(codes.len()),
            rng.index(codes.len()),
            rng.index(codes.len()),
        );
        let d = |x: usize, y: usize| word_distance(&codes[x], &codes[y]).unwrap();
        assert_eq!(d(i, i), 0);
        assert_eq!(d(i, j), d(j, i));
        assert!(d(i, k) <= d(i, j) + d(j, k));
        assert_eq!(d(i, j), char_distance(&bits[i], &bits[j]));
    }
}

fn criterion_4() {
    let id = |s: &str| inv().id(s).unwrap();
    let n = |ids: &[&str]| {
        let ids: Vec<_> = ids.iter().map(|s| id(s)).collect();
        let [a, b] = encode_nucleus(inv(), &ids).unwrap();
        a.bits() as u64 | (b.bits() as u64) << 26
    };
    let dist = |x: u64, y: u64| (x ^ y).count_ones();
    let (oy, o, i) = (n(&["OY"]), n(&["AO"]), n(&["IY"]));
    assert!(dist(o, i) > 0);
    assert_eq!(dist(oy, o), dist(oy, i));
    assert_eq!(dist(oy, o) + dist(oy, i), dist(o, i));
}

fn criterion_5() {
    let kind = TemplateKind::TwoSyllable;
    let code = |line: &str| encode_word(inv(), &entry(line), kind).unwrap();
    // same spelling throughout, so the orthographic bits never differ
    let base = code("tapa\tT AE' . P AH");
    let initial = code("tapa\tD AE' . P AH");
    let medial = code("tapa\tT AE' . B AH");
    let single = sym("T").distance(sym("D"));
    assert_eq!(single, sym("P").distance(sym("B")));
    let di = base.hamming(&initial);
    let dm = base.hamming(&medial);
    assert_eq!(dm, single);
    assert_eq!(di, 2 * dm);
}

fn criterion_6() {
    let mut rng = SeededRng::new(2024);
    let codes: Vec<WordCode> = (0..12)
        .map(|_| {
            let mut c = WordCode::zeros(TemplateKind::TwoSyllable);
            for b in 0..357 {
                if rng.below(3) == 0 {
                    c.flip(b);
                }
            }
            c
        })
        .collect();
    let pool = Pool {
        spellings: (0..12).map(|i| format!("w{i}")).collect(),
        codes,
    };
    let mut best = None;
    for a in 0..12u32 {
        for b in a + 1..12 {
            for c in b + 1..12 {
                for d in c + 1..12 {
                    let f = fitness(&[a, b, c, d], &pool).unwrap();
                    if best.is_none_or(|x| f > x) {
                        best = Some(f);
                    }
                }
            }
        }
    }
    let best = best.unwrap();
    let cfg = GaConfig {
        subset_size: 4,
        population_size: 20,
        generations: 200,
        rng_seed: 77,
        ..Default::default()
    };
    let run = evolve(&pool, &cfg).unwrap();
    assert_eq!(run.best.fitness.min, best.min);
    assert!(run.trace.windows(2).all(|w| w[1].best_min >= w[0].best_min));
}

fn criterion_7() {
    let dir = tempfile::tempdir().unwrap();
    let lex = synth_lexicon(SynthConfig {
        two_syllable: 2000,
        three_syllable: 0,
        seed: 8,
    });
    let dict = dir.path().join("words.dict");
    let freq = dir.path().join("words.freq");
    std::fs::write(&dict, &lex.dictionary).unwrap();
    std::fs::write(&freq, &lex.frequencies).unwrap();
    let outputs = (0..2)
        .map(|run| {
            let out = dir.path().join(format!("list{run}.txt"));
            let trace = dir.path().join(format!("trace{run}.tsv"));
            let report = dir.path().join(format!("report{run}.txt"));
            let status = Command::new(env!("CARGO_BIN_EXE_phonalpha"))
                .arg("build")
                .arg("--dict")
                .arg(&dict)
                .arg("--freq")
                .arg(&freq)
                .args(["--template", "2", "--seed", "99", "--generations", "100"])
                .arg("--out")
                .arg(&out)
                .arg("--trace")
                .arg(&trace)
                .arg("--report")
                .arg(&report)
                .status()
                .unwrap();
            assert!(status.success());
            [out, trace, report].map(|p| std::fs::read(p).unwrap())
        })
        .collect::<Vec<_>>();
    let report = String::from_utf8(outputs[0][2].clone()).unwrap();
    assert!(report.contains("two-syllable candidates\t2000"), "{report}");
    assert_eq!(String::from_utf8_lossy(&outputs[0][1]).lines().count(), 100);
    assert!(outputs[0] == outputs[1], "runs differ");
}

fn criterion_8() {
    let a = sample_alphabet();
    let mut rng = SeededRng::new(8);
    for _ in 0..1000 {
        let len = 1 + rng.index(64);
        let data: Vec<u8> = (0..len).map(|_| rng.below(256) as u8).collect();
        let words = encode_bytes(&data, &a);
        let r = decode_words(&words, &a, Some(len));
        assert!(r.is_clean(), "{:?}", r.errors);
        assert_eq!(r.bytes, data);
    }
}

/// Every single omission, duplication and adjacent swap of `data`'s
/// encoding is reported.
fn all_edits_detected(data: &[u8], a: &phonalpha::Alphabet) {
    let words = encode_bytes(data, a);
    let n = words.len();
    let flagged = |w: &[&str], expect: Option<usize>| !decode_words(w, a, expect).is_clean();
    for i in 0..n {
        let mut w = words.clone();
        w.remove(i);
        if i + 1 < n {
            assert!(flagged(&w, None), "omission at {i} of {data:?}");
        } else {
            assert!(!flagged(&w, None));
            assert!(flagged(&w, Some(n)), "final omission of {data:?}");
        }
        let mut w = words.clone();
        w.insert(i, words[i]);
        assert!(flagged(&w, None), "duplication at {i} of {data:?}");
        if i + 1 < n {
            let mut w = words.clone();
            w.swap(i, i + 1);
            assert!(flagged(&w, None), "swap at {i} of {data:?}");
        }
    }
}

fn criterion_9() {
    let a = sample_alphabet();
    // every sequence over two byte values
    for len in 4..=16 {
        for mask in 0..1u32 << len {
            let data: Vec<u8> = (0..len)
                .map(|i| if mask >> i & 1 == 1 { 114 } else { 115 })
                .collect();
            all_edits_detected(&data, &a);
        }
    }
    let mut rng = SeededRng::new(9);
    for len in 4..=16 {
        for _ in 0..500 {
            let data: Vec<u8> = (0..len).map(|_| rng.below(256) as u8).collect();
            all_edits_detected(&data, &a);
        }
    }
}

fn criterion_10() {
    let a = sample_alphabet();
    for (k, w) in SAMPLE_TWO.iter().enumerate() {
        assert_eq!(a.lookup(w).unwrap().1 as usize, FIRST_SAMPLE_INDEX + k);
    }
    for (k, w) in SAMPLE_THREE.iter().enumerate() {
        assert_eq!(a.lookup(w).unwrap().1 as usize, FIRST_SAMPLE_INDEX + k);
    }
    assert_eq!(encode_bytes(&[111], &a), ["glucose"]);
    assert_eq!(encode_bytes(&[114, 115], &a), ["granny", "hydraulic"]);
    assert_eq!(encode_bytes(&[111, 116], &a), ["glucose", "impartial"]);
    let r = decode_words(&["granny", "goldfish"], &a, None);
    assert_eq!(r.errors.len(), 1);
    assert_eq!(
        (r.errors[0].position, r.errors[0].kind),
        (1, DecodeErrorKind::ParityViolation)
    );
}

fn criterion_11() {
    let mut entries = sample_entries();
    attach_frequencies(&mut entries, &load_frequencies(SAMPLE_FREQ).unwrap());
    let veto = load_veto(SAMPLE_VETO);
    let cfg = FilterConfig {
        require_known_frequency: true,
        ..Default::default()
    };
    let out = filter_candidates(inv(), &entries, &veto, &cfg);
    let kept: HashSet<String> = out
        .two
        .iter()
        .chain(&out.three)
        .map(|e| e.spelling.clone())
        .collect();
    for gone in ["polish", "Polish", "strength", "escape", "tomato", "cat"] {
        assert!(!kept.contains(gone), "{gone} survived");
    }
    for stays in ["quota", "granny", "hydraulic", "glucose"] {
        assert!(kept.contains(stays), "{stays} rejected");
    }
    assert!(out.rejections.get(Rule::Unique) >= 2);
    assert!(out.rejections.get(Rule::Clusters) >= 1);
    assert!(out.rejections.get(Rule::Frequency) >= 1);

    let survivors: Vec<_> = out.two.iter().chain(&out.three).cloned().collect();
    let again = filter_candidates(inv(), &survivors, &veto, &cfg);
    assert_eq!(again.rejections.total(), 0);
    assert_eq!(again.two, out.two);
    assert_eq!(again.three, out.three);
}

type Check = (u32, &'static str, fn(), Duration);

fn main() {
    let checks: [Check; 11] = [
        (
            1,
            "phoneme encoding and feature distances",
            criterion_1,
            Duration::from_secs(1),
        ),
        (
            2,
            "two-syllable word layout",
            criterion_2,
            Duration::from_secs(1),
        ),
        (
            3,
            "metric axioms and bit oracle",
            criterion_3,
            Duration::from_secs(10),
        ),
        (
            4,
            "vowel blend midpoint",
            criterion_4,
            Duration::from_secs(1),
        ),
        (
            5,
            "double weight of the word onset",
            criterion_5,
            Duration::from_secs(1),
        ),
        (
            6,
            "optimizer reaches brute-force optimum",
            criterion_6,
            Duration::from_secs(10),
        ),
        (
            7,
            "build is deterministic",
            criterion_7,
            Duration::from_secs(120),
        ),
        (8, "codec round trip", criterion_8, Duration::from_secs(5)),
        (
            9,
            "reading errors are detected",
            criterion_9,
            Duration::from_secs(30),
        ),
        (
            10,
            "sample rows keep their indices",
            criterion_10,
            Duration::from_secs(1),
        ),
        (
            11,
            "candidate filters",
            criterion_11,
            Duration::from_secs(5),
        ),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, name, check, limit) in checks {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check));
        let took = start.elapsed();
        let verdict = match outcome {
            Ok(()) if took <= limit => "PASS".to_string(),
            Ok(()) => format!("FAIL (took longer than {limit:?})"),
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                format!("FAIL ({msg})")
            }
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!("criterion {n:>2}: {verdict} {name} [{:.2?}]", took);
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
