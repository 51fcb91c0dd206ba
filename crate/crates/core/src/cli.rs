//! Command-line front end.
//!
//! Exit codes: 0 success, 1 validation or decode errors, 2 I/O errors.

use std::collections::BTreeSet;
use std::io::{Read as _, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::alphabet::{
    assemble_alphabet, config_digest, decode_words, encode_bytes, format_hex, parse_hex, Alphabet,
    AssembleOptions, Provenance,
};
use crate::error::{Error, Result};
use crate::filters::{filter_candidates, FilterConfig};
use crate::lexicon::{LexiconSources, WordEntry};
use crate::metric::{nearest_neighbors, word_distance};
use crate::optimizer::{evolve, reserve_ranking, GaConfig, Pool, DEFAULT_SEED};
use crate::phoneme::Inventory;
use crate::word_code::{encode_auto, template_of, TemplateKind};

/// Marks the start of the ranked replacement words in a word list file.
pub const RESERVE_MARKER: &str = "## reserve";

#[derive(Debug, Parser)]
#[command(
    name = "phonalpha",
    version,
    about = "Build and use low-confusability two-list word alphabets"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Filter a dictionary and evolve one word list.
    Build(BuildArgs),
    /// Combine a two-syllable and a three-syllable list into an alphabet.
    Assemble(AssembleArgs),
    /// Turn bytes into words.
    Encode(EncodeArgs),
    /// Turn words back into bytes, reporting reading errors.
    Decode(DecodeArgs),
    /// Bit distance between two dictionary words.
    Distance(DistanceArgs),
    /// Closest dictionary words to a word.
    Nearest(NearestArgs),
    /// Show the bit code of a dictionary word field by field.
    Code(CodeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TemplateArg {
    #[value(name = "2")]
    Two,
    #[value(name = "3")]
    Three,
}

impl From<TemplateArg> for TemplateKind {
    fn from(t: TemplateArg) -> Self {
        match t {
            TemplateArg::Two => TemplateKind::TwoSyllable,
            TemplateArg::Three => TemplateKind::ThreeSyllable,
        }
    }
}

#[derive(Debug, Args)]
pub struct DictArgs {
    /// Pronunciation dictionary.
    #[arg(long)]
    pub dict: PathBuf,
    /// Phoneme inventory replacing the built-in one.
    #[arg(long)]
    pub inventory: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub dict: DictArgs,
    /// Word frequency counts; words without a count are rejected.
    #[arg(long)]
    pub freq: Option<PathBuf>,
    /// Spellings to reject.
    #[arg(long)]
    pub veto: Option<PathBuf>,
    /// Spellings every candidate list must keep; a previous output works.
    #[arg(long)]
    pub lock: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub template: TemplateArg,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = 500)]
    pub generations: usize,
    #[arg(long, default_value_t = 50)]
    pub population: usize,
    #[arg(long, default_value_t = 256)]
    pub subset_size: usize,
    #[arg(long, default_value_t = 4)]
    pub elitism: usize,
    #[arg(long, default_value_t = 4)]
    pub mutation_swaps: usize,
    #[arg(long, default_value_t = 1)]
    pub min_freq: u64,
    #[arg(long, default_value_t = 84)]
    pub max_freq: u64,
    /// Winning word list, followed by ranked reserve words.
    #[arg(long)]
    pub out: PathBuf,
    /// Per-generation best fitness.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Filter and result summary; printed to stdout when omitted.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AssembleArgs {
    /// Two-syllable word list from `build`.
    #[arg(long)]
    pub two: PathBuf,
    /// Three-syllable word list from `build`.
    #[arg(long)]
    pub three: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Also write the alphabet as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Replace derivationally related words with reserve words.
    #[arg(long)]
    pub auto_drop: bool,
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    #[arg(long)]
    pub alphabet: PathBuf,
    /// Hex bytes; whitespace is ignored.
    #[arg(long, conflicts_with = "raw")]
    pub hex: Option<String>,
    /// File of raw bytes; `-` reads stdin.
    #[arg(long)]
    pub raw: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DecodeArgs {
    #[arg(long)]
    pub alphabet: PathBuf,
    /// Whitespace-separated words; read from stdin when omitted.
    #[arg(long)]
    pub words: Option<String>,
    /// Number of words expected.
    #[arg(long)]
    pub expect_len: Option<usize>,
}

#[derive(Debug, Args)]
pub struct DistanceArgs {
    pub a: String,
    pub b: String,
    #[command(flatten)]
    pub dict: DictArgs,
}

#[derive(Debug, Args)]
pub struct NearestArgs {
    pub word: String,
    #[command(flatten)]
    pub dict: DictArgs,
    #[arg(long, default_value_t = 10)]
    pub k: usize,
}

#[derive(Debug, Args)]
pub struct CodeArgs {
    pub word: String,
    #[command(flatten)]
    pub dict: DictArgs,
}

/// Winners and ranked reserves read from a word list file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WordList {
    pub seed: Option<u64>,
    pub words: Vec<String>,
    pub reserve: Vec<String>,
}

impl WordList {
    pub fn parse(text: &str) -> WordList {
        let mut list = WordList::default();
        let mut in_reserve = false;
        for line in text.lines().map(str::trim) {
            if line == RESERVE_MARKER {
                in_reserve = true;
            } else if let Some(c) = line.strip_prefix('#') {
                if let Some(v) = c.trim().strip_prefix("seed:") {
                    list.seed = v.trim().parse().ok();
                }
            } else if !line.is_empty() {
                let target = if in_reserve {
                    &mut list.reserve
                } else {
                    &mut list.words
                };
                target.push(line.to_string());
            }
        }
        list
    }
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io { .. } => 2,
        _ => 1,
    }
}

/// Runs a parsed command and returns its exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Build(a) => build(a, out, err),
        Command::Assemble(a) => assemble(a, err),
        Command::Encode(a) => encode(a, out),
        Command::Decode(a) => decode(a, out, err),
        Command::Distance(a) => distance(a, out),
        Command::Nearest(a) => nearest(a, out),
        Command::Code(a) => code(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let Error::UnresolvedFlags(flags) = &e {
                for f in flags {
                    let _ = writeln!(err, "  {f}");
                }
            }
            exit_code(&e)
        }
    }
}

fn load_inventory(path: &Option<PathBuf>) -> Result<Inventory> {
    match path {
        Some(p) => Inventory::load(p),
        None => Ok(Inventory::standard().clone()),
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::io("<output>", e)
}

fn build(a: BuildArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let inv = load_inventory(&a.dict.inventory)?;
    let kind = TemplateKind::from(a.template);
    let sources = LexiconSources {
        dictionary: a.dict.dict.clone(),
        frequencies: a.freq.clone(),
        veto: a.veto.clone(),
    };
    let lexicon = sources.load(&inv)?;
    let problems = lexicon
        .diagnostics
        .iter()
        .filter(|d| !d.is_warning())
        .count();
    if problems > 0 {
        writeln!(
            err,
            "warning: skipped {problems} malformed dictionary line(s)"
        )
        .map_err(io_err)?;
    }
    let filter_cfg = FilterConfig {
        min_freq: a.min_freq,
        max_freq: a.max_freq,
        require_known_frequency: lexicon.frequencies.is_some(),
        ..Default::default()
    };
    let filtered = filter_candidates(&inv, &lexicon.entries, &lexicon.veto, &filter_cfg);
    let pool = Pool::from_entries(&inv, filtered.pool(kind), kind)?;

    let locked: BTreeSet<String> = match &a.lock {
        Some(p) => WordList::parse(&read_text(p)?).words.into_iter().collect(),
        None => BTreeSet::new(),
    };
    let ga = GaConfig {
        subset_size: a.subset_size,
        population_size: a.population,
        generations: a.generations,
        elitism_count: a.elitism,
        mutation_swaps: a.mutation_swaps,
        rng_seed: a.seed,
        locked_words: locked,
    };
    let digest = config_digest(&format!("{kind}\n{filter_cfg:?}\n{ga:?}"));
    let run = evolve(&pool, &ga)?;
    for w in &run.warnings {
        writeln!(err, "warning: {w}").map_err(io_err)?;
    }

    let mut winners = run.best.spellings(&pool);
    winners.sort_by_cached_key(|w| (w.to_lowercase(), w.to_string()));
    let mut list = format!(
        "# {kind} word list\n# seed: {}\n# config-digest: {digest}\n# min-distance: {}\n# pairs-at-min: {}\n",
        a.seed, run.best.fitness.min, run.best.fitness.pairs_at_min
    );
    for w in &winners {
        list.push_str(w);
        list.push('\n');
    }
    list.push_str(RESERVE_MARKER);
    list.push('\n');
    for (i, _) in reserve_ranking(&pool, &run.best.members) {
        list.push_str(&pool.spellings[i as usize]);
        list.push('\n');
    }
    write_text(&a.out, &list)?;
    if let Some(p) = &a.trace {
        write_text(p, &run.trace_text())?;
    }

    let mut report = String::new();
    report.push_str(&format!("dictionary entries\t{}\n", lexicon.entries.len()));
    report.push_str(&format!("skipped lines\t{problems}\n"));
    report.push_str("rejections\n");
    for line in filtered.rejections.to_string().lines() {
        report.push_str(&format!("  {line}\n"));
    }
    report.push_str(&format!(
        "two-syllable candidates\t{}\n",
        filtered.two.len()
    ));
    report.push_str(&format!(
        "three-syllable candidates\t{}\n",
        filtered.three.len()
    ));
    report.push_str(&format!("template\t{kind}\n"));
    report.push_str(&format!("min distance\t{}\n", run.best.fitness.min));
    report.push_str(&format!(
        "pairs at min\t{}\n",
        run.best.fitness.pairs_at_min
    ));
    match &a.report {
        Some(p) => write_text(p, &report)?,
        None => out.write_all(report.as_bytes()).map_err(io_err)?,
    }
    Ok(0)
}

fn assemble(a: AssembleArgs, err: &mut dyn Write) -> Result<i32> {
    let two_text = read_text(&a.two)?;
    let three_text = read_text(&a.three)?;
    let two = WordList::parse(&two_text);
    let three = WordList::parse(&three_text);
    let seed = if two.seed == three.seed {
        two.seed
    } else {
        None
    };
    let opts = AssembleOptions {
        auto_drop: a.auto_drop,
        reserve_two: two.reserve.clone(),
        reserve_three: three.reserve.clone(),
        provenance: Provenance {
            seed,
            config_digest: Some(config_digest(&format!("{two_text}{three_text}"))),
        },
    };
    let assembly = assemble_alphabet(&two.words, &three.words, &opts)?;
    for r in &assembly.replacements {
        writeln!(err, "replaced {} with {} ({})", r.dropped, r.added, r.flag).map_err(io_err)?;
    }
    write_text(&a.out, &assembly.alphabet.to_text())?;
    if let Some(p) = &a.json {
        write_text(p, &assembly.alphabet.to_json())?;
    }
    Ok(0)
}

fn encode(a: EncodeArgs, out: &mut dyn Write) -> Result<i32> {
    let alphabet = Alphabet::read(&a.alphabet)?;
    let bytes = match (&a.hex, &a.raw) {
        (Some(h), None) => parse_hex(h)?,
        (None, Some(p)) if p.as_os_str() == "-" => {
            let mut buf = Vec::new();
            std::io::stdin()
                .read_to_end(&mut buf)
                .map_err(|e| Error::io("<stdin>", e))?;
            buf
        }
        (None, Some(p)) => std::fs::read(p).map_err(|e| Error::io(p, e))?,
        _ => return Err(Error::Config("give exactly one of --hex or --raw".into())),
    };
    writeln!(out, "{}", encode_bytes(&bytes, &alphabet).join(" ")).map_err(io_err)?;
    Ok(0)
}

fn decode(a: DecodeArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let alphabet = Alphabet::read(&a.alphabet)?;
    let text = match a.words {
        Some(w) => w,
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::io("<stdin>", e))?;
            s
        }
    };
    let words: Vec<&str> = text.split_whitespace().collect();
    let report = decode_words(&words, &alphabet, a.expect_len);
    writeln!(out, "{}", format_hex(&report.bytes)).map_err(io_err)?;
    for e in &report.errors {
        writeln!(err, "{e}").map_err(io_err)?;
    }
    Ok(if report.is_clean() { 0 } else { 1 })
}

fn load_entries(d: &DictArgs) -> Result<(Inventory, Vec<WordEntry>)> {
    let inv = load_inventory(&d.inventory)?;
    let lexicon = LexiconSources::new(&d.dict).load(&inv)?;
    Ok((inv, lexicon.entries))
}

fn find<'a>(entries: &'a [WordEntry], word: &str) -> Result<&'a WordEntry> {
    entries
        .iter()
        .find(|e| e.spelling.eq_ignore_ascii_case(word))
        .ok_or_else(|| Error::Config(format!("{word:?} is not in the dictionary")))
}

fn distance(a: DistanceArgs, out: &mut dyn Write) -> Result<i32> {
    let (inv, entries) = load_entries(&a.dict)?;
    let x = encode_auto(&inv, find(&entries, &a.a)?)?;
    let y = encode_auto(&inv, find(&entries, &a.b)?)?;
    writeln!(out, "{}", word_distance(&x, &y)?).map_err(io_err)?;
    Ok(0)
}

fn nearest(a: NearestArgs, out: &mut dyn Write) -> Result<i32> {
    let (inv, entries) = load_entries(&a.dict)?;
    let query = find(&entries, &a.word)?;
    let kind = template_of(query)
        .ok_or_else(|| Error::Config(format!("{:?} has no template", query.spelling)))?;
    let q = encode_auto(&inv, query)?;
    let (names, codes): (Vec<&str>, Vec<_>) = entries
        .iter()
        .filter(|e| !e.spelling.eq_ignore_ascii_case(&query.spelling))
        .filter(|e| template_of(e) == Some(kind))
        .filter_map(|e| encode_auto(&inv, e).ok().map(|c| (e.spelling.as_str(), c)))
        .unzip();
    for (i, d) in nearest_neighbors(&q, &codes, a.k)? {
        writeln!(out, "{}\t{d}", names[i]).map_err(io_err)?;
    }
    Ok(0)
}

fn code(a: CodeArgs, out: &mut dyn Write) -> Result<i32> {
    let (inv, entries) = load_entries(&a.dict)?;
    let entry = find(&entries, &a.word)?;
    let c = encode_auto(&inv, entry)?;
    let text = format!(
        "{}\t{}\t{}\n{}\n{}",
        entry.spelling,
        c.kind(),
        entry.pronunciation(&inv),
        c.to_hex(),
        c.describe()
    );
    out.write_all(text.as_bytes()).map_err(io_err)?;
    Ok(0)
}
