//! Command-line front end for the sinograph inclusion graph.
//!
//! Exit codes: 0 success, 1 usage error, 2 unreadable or malformed input,
//! 3 input that parses but cannot be processed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sinograph::charstore::{class_statistics, ClassId, Language};
use sinograph::classify::{cross_validate, TrainConfig};
use sinograph::freqlists::{distance_matrix, FrequencyList};
use sinograph::graphcore::fit_power_law;
use sinograph::inferschar::{semantic_approximation, Direction, DEFAULT_MAX_DEPTH};
use sinograph::io::{self, read_text, write_text, VectorFile};
use sinograph::phonetics::{least_phonetic_chain, phoneticity_histogram, FeatureTable, PhoneticModel};
use sinograph::pipeline::{self, BuildOptions, SemanticInputs, Strategy};
use sinograph::semantics::{most_semantic_chain, SynsetStore, DEFAULT_COEFFICIENTS};
use sinograph::synthetic::{generate, SyntheticConfig};
use sinograph::{Error, InclusionGraph};

#[derive(Parser)]
#[command(name = "sinograph", version, about = "Subcharacter inclusion graphs for sinographic text")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mine stroke inclusions and write a reduced class graph snapshot.
    BuildGraph(BuildArgs),
    /// Add phoneticity and semanticity to the edges of a snapshot.
    Annotate(AnnotateArgs),
    /// Print least phonetic or most semantic chains.
    Chains(ChainsArgs),
    /// Pairwise distances between character frequency lists.
    Freqdist(FreqdistArgs),
    /// Unigram class vectors of a labelled corpus, optionally chain-augmented.
    Features(FeaturesArgs),
    /// Stratified cross-validation of a linear classifier on a vector file.
    Evaluate(EvaluateArgs),
    /// Approximate the meaning of a character from annotated relatives.
    QueryUnknown(QueryArgs),
    /// Class, degree and power-law statistics of a snapshot.
    Stats(StatsArgs),
    /// Phoneticity histogram as CSV.
    Histogram(HistogramArgs),
    /// Write the synthetic dataset to a directory.
    Synth(SynthArgs),
}

#[derive(clap::Args)]
struct BuildArgs {
    #[arg(long)]
    strokes: PathBuf,
    #[arg(long)]
    variants: Option<PathBuf>,
    /// Frequency list used to pick class representatives.
    #[arg(long)]
    freq: Option<PathBuf>,
    #[arg(long, default_value_t = sinograph::strokesig::DEFAULT_TOLERANCE)]
    tolerance: f64,
    /// Ignore characters above this hexadecimal codepoint.
    #[arg(long, value_parser = parse_hex, conflicts_with = "bmp_only")]
    max_codepoint: Option<u32>,
    /// Keep only Basic Multilingual Plane characters.
    #[arg(long)]
    bmp_only: bool,
    #[arg(long, short)]
    out: PathBuf,
}

#[derive(clap::Args)]
struct AnnotateArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    readings: Option<PathBuf>,
    #[arg(long)]
    radicals: Option<PathBuf>,
    #[arg(long)]
    synsets: Option<PathBuf>,
    #[arg(long, requires = "synsets")]
    relations: Option<PathBuf>,
    #[arg(long, requires = "synsets")]
    glosses: Option<PathBuf>,
    /// Only count relations of these types.
    #[arg(long, value_delimiter = ',')]
    relation_types: Vec<String>,
    #[arg(long, value_delimiter = ',', default_values = ["cmn", "ja_on", "ja_kun"])]
    languages: Vec<Language>,
    /// Weights of ln(1+f1), ln(1+f2) and radical agreement.
    #[arg(long, value_delimiter = ',', num_args = 3, default_values_t = DEFAULT_COEFFICIENTS)]
    coefficients: Vec<f64>,
    /// TSV overrides of the phoneme feature tables.
    #[arg(long)]
    feature_table: Option<PathBuf>,
    #[arg(long, short)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum ChainKind {
    Semantic,
    Phonetic,
}

#[derive(clap::Args)]
struct ChainsArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum)]
    kind: ChainKind,
    #[arg(long, default_value = "cmn")]
    language: Language,
    /// Start characters (literal or hexadecimal); every class when omitted.
    #[arg(long = "char", value_parser = parse_char)]
    chars: Vec<char>,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct FreqdistArgs {
    /// Frequency list files, at least two.
    #[arg(required = true, num_args = 2..)]
    lists: Vec<PathBuf>,
    /// Number of top characters compared.
    #[arg(long, short = 'n')]
    top: usize,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Baseline,
    Semantic,
    SemanticPhonetic,
    Phonetic,
}

#[derive(clap::Args)]
struct FeaturesArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long, default_value_t = sinograph::features::DEFAULT_MIN_COUNT)]
    min_count: u64,
    #[arg(long, value_enum, default_value = "baseline")]
    strategy: StrategyArg,
    #[arg(long, default_value = "cmn")]
    language: Language,
    #[arg(long, short)]
    out: PathBuf,
}

#[derive(clap::Args)]
struct EvaluateArgs {
    #[arg(long)]
    vectors: PathBuf,
    #[arg(long, short, default_value_t = 10)]
    k: usize,
    #[arg(long, short = 'C', default_value_t = 1.0)]
    c: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    max_epochs: usize,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    Incoming,
    Outgoing,
}

#[derive(clap::Args)]
struct QueryArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long = "char", value_parser = parse_char)]
    ch: char,
    #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
    max_depth: usize,
    #[arg(long, value_enum, default_value = "incoming")]
    direction: DirectionArg,
}

#[derive(clap::Args)]
struct StatsArgs {
    #[arg(long)]
    graph: PathBuf,
}

#[derive(clap::Args)]
struct HistogramArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, default_value = "cmn")]
    language: Language,
    #[arg(long, default_value_t = 10)]
    bins: usize,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct SynthArgs {
    #[arg(long, short)]
    out: PathBuf,
    #[arg(long, default_value_t = SyntheticConfig::default().seed)]
    seed: u64,
    #[arg(long, default_value_t = SyntheticConfig::default().documents)]
    documents: usize,
}

fn parse_hex(s: &str) -> Result<u32, String> {
    u32::from_str_radix(s.trim_start_matches("U+").trim_start_matches("0x"), 16).map_err(|e| e.to_string())
}

fn parse_char(s: &str) -> Result<char, String> {
    let mut it = s.chars();
    match (it.next(), it.next()) {
        (Some(c), None) => Ok(c),
        _ => io::parse_codepoint(s).ok_or_else(|| format!("{s:?} is neither a character nor a hex codepoint")),
    }
}

fn load_graph(path: &Path) -> sinograph::Result<InclusionGraph> {
    io::read_snapshot(&read_text(path)?, &path.display().to_string())
}

fn read_with<T>(path: &Path, parse: impl Fn(&str, &str) -> sinograph::Result<T>) -> sinograph::Result<T> {
    parse(&read_text(path)?, &path.display().to_string())
}

fn emit(out: Option<&Path>, text: &str) -> sinograph::Result<()> {
    match out {
        Some(p) => write_text(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn build_graph(a: BuildArgs) -> sinograph::Result<()> {
    let strokes = read_with(&a.strokes, io::parse_strokes::<f64>)?;
    let variants = a.variants.as_deref().map(|p| read_with(p, io::parse_variants)).transpose()?.unwrap_or_default();
    let freq = a.freq.as_deref().map(|p| read_with(p, io::parse_freq)).transpose()?;
    let max_codepoint = if a.bmp_only { Some(0xFFFF) } else { a.max_codepoint };
    let options = BuildOptions { tolerance: a.tolerance, max_codepoint };
    let (g, stats) = pipeline::build_graph(&strokes, &variants, freq.as_ref(), &options)?;
    write_text(&a.out, &io::write_snapshot(&g))?;
    println!("nodes\t{}\nedges\t{}", g.node_count(), g.edge_count());
    log::info!("{stats:?}");
    Ok(())
}

fn annotate(a: AnnotateArgs) -> sinograph::Result<()> {
    let mut g = load_graph(&a.graph)?;
    let readings = a.readings.as_deref().map(|p| read_with(p, io::parse_readings)).transpose()?.unwrap_or_default();
    let radicals = a.radicals.as_deref().map(|p| read_with(p, io::parse_radicals)).transpose()?.unwrap_or_default();
    let table = match &a.feature_table {
        Some(p) => FeatureTable::default().parse_overrides(&read_text(p)?, &p.display().to_string())?,
        None => FeatureTable::default(),
    };
    let model = PhoneticModel::from_table(table);
    for (c, r) in &readings {
        model.validate(r).map_err(|e| Error::InvalidParameter(format!("U+{:04X}: {e}", u32::from(*c))))?;
    }
    let store = pipeline::char_store(&g, &readings, &radicals);
    let synsets = match &a.synsets {
        Some(p) => {
            let relations = a.relations.as_deref().map(|p| read_with(p, io::parse_relations)).transpose()?.unwrap_or_default();
            let store = SynsetStore::new(read_with(p, io::parse_synsets)?, relations)?;
            Some(if a.relation_types.is_empty() {
                store
            } else {
                store.filter_relations(&a.relation_types.iter().cloned().collect())
            })
        }
        None => None,
    };
    let glosses = a.glosses.as_deref().map(|p| read_with(p, io::parse_glosses)).transpose()?.unwrap_or_default();
    let coefficients = [a.coefficients[0], a.coefficients[1], a.coefficients[2]];
    let semantic = synsets.as_ref().map(|s| SemanticInputs { synsets: s, glosses: &glosses, coefficients });
    let stats = pipeline::annotate(&mut g, &store, &model, &a.languages, semantic)?;
    write_text(&a.out, &io::write_snapshot(&g))?;
    for (l, d) in &stats.phi_normalizers {
        println!("phi_normalizer_{}\t{}", l.tag(), d.map_or("unknown".to_string(), |d| d.to_string()));
    }
    if let Some(s) = stats.semantic_normalizer {
        println!("semantic_normalizer\t{s}\nannotated_classes\t{}", stats.annotated_classes);
    }
    Ok(())
}

fn class_of(g: &InclusionGraph, c: char) -> sinograph::Result<ClassId> {
    g.classes().class_of(c)
}

fn chains(a: ChainsArgs) -> sinograph::Result<()> {
    let g = load_graph(&a.graph)?;
    let starts: Vec<ClassId> = if a.chars.is_empty() {
        g.classes().classes().iter().map(|c| c.id).collect()
    } else {
        a.chars.iter().map(|&c| class_of(&g, c)).collect::<sinograph::Result<_>>()?
    };
    let mut s = String::new();
    for c in starts {
        let chain = match a.kind {
            ChainKind::Semantic => most_semantic_chain(&g, c),
            ChainKind::Phonetic => least_phonetic_chain(&g, c, a.language),
        };
        let ids: Vec<String> = chain.iter().map(ToString::to_string).collect();
        let chars: String = chain.iter().map(|&z| g.classes().representative(z)).collect();
        writeln!(s, "{c}\t{}\t{chars}", ids.join(" ")).unwrap();
    }
    emit(a.out.as_deref(), &s)
}

fn freqdist(a: FreqdistArgs) -> sinograph::Result<()> {
    let lists = a
        .lists
        .iter()
        .map(|p| read_with(p, io::parse_freq).and_then(|c| FrequencyList::<f64>::from_counts(&c)))
        .collect::<sinograph::Result<Vec<_>>>()?;
    let m = distance_matrix(&lists, a.top)?;
    let names: Vec<String> = a.lists.iter().map(|p| p.display().to_string()).collect();
    let mut s = format!("\t{}\n", names.join("\t"));
    for (name, row) in names.iter().zip(&m) {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        writeln!(s, "{name}\t{}", cells.join("\t")).unwrap();
    }
    emit(a.out.as_deref(), &s)
}

fn features(a: FeaturesArgs) -> sinograph::Result<()> {
    let g = load_graph(&a.graph)?;
    let corpus = read_with(&a.corpus, io::parse_corpus)?;
    let (labels, docs): (Vec<&str>, Vec<&str>) = corpus.iter().map(|(l, d)| (l.as_str(), d.as_str())).unzip();
    let strategy = match a.strategy {
        StrategyArg::Baseline => Strategy::Baseline,
        StrategyArg::Semantic => Strategy::Semantic,
        StrategyArg::SemanticPhonetic => Strategy::SemanticPhonetic(a.language),
        StrategyArg::Phonetic => Strategy::Phonetic(a.language),
    };
    let (set, stats) = pipeline::extract_features(&g, &docs, a.min_count, strategy)?;
    write_text(&a.out, &io::write_vectors(&VectorFile::from_features(&set, &labels)))?;
    println!("documents\t{}\nvocabulary\t{}\nmodified\t{}\nadded\t{}", docs.len(), set.vocabulary.len(), stats.modified, stats.added);
    Ok(())
}

fn evaluate(a: EvaluateArgs) -> sinograph::Result<()> {
    let v: VectorFile<f64> = read_with(&a.vectors, io::read_vectors)?;
    let config = TrainConfig { c: a.c, max_epochs: a.max_epochs, seed: a.seed, ..Default::default() };
    let r = cross_validate(&v.vectors, &v.labels, v.dim(), a.k, &config)?;
    let mut s = format!(
        "accuracy\t{}\ncorrect\t{}\ntotal\t{}\nsupport_vectors\t{}\n",
        r.accuracy, r.correct, r.total, r.support_vectors
    );
    for (i, acc) in r.fold_accuracies.iter().enumerate() {
        writeln!(s, "fold_{}\t{acc}", i + 1).unwrap();
    }
    emit(a.out.as_deref(), &s)
}

fn query_unknown(a: QueryArgs) -> sinograph::Result<()> {
    let g = load_graph(&a.graph)?;
    let direction = match a.direction {
        DirectionArg::Incoming => Direction::Incoming,
        DirectionArg::Outgoing => Direction::Outgoing,
    };
    let v = semantic_approximation(&g, class_of(&g, a.ch)?, a.max_depth, direction)?;
    for (id, w) in v.ranked() {
        println!("{id}\t{w}");
    }
    Ok(())
}

fn stats(a: StatsArgs) -> sinograph::Result<()> {
    let g = load_graph(&a.graph)?;
    let cs = class_statistics::<f64>(g.classes().classes())?;
    let ds = g.degree_statistics();
    println!("classes\t{}\nedges\t{}", cs.count, g.edge_count());
    println!("singleton_fraction\t{}\nmax_class_size\t{}\nmean_class_size\t{}", cs.singleton_fraction, cs.max_size, cs.mean_size);
    println!("sources\t{}\nleaves\t{}\nmax_in_degree\t{}\nmax_out_degree\t{}", ds.sources.len(), ds.leaves.len(), ds.max_in, ds.max_out);
    for (name, hist) in [("in", &ds.in_hist), ("out", &ds.out_hist)] {
        let degrees: Vec<u64> = hist.iter().flat_map(|(&d, &n)| std::iter::repeat_n(d as u64, n)).collect();
        match fit_power_law::<f64>(&degrees) {
            Ok(fit) => println!("alpha_{name}\t{}\talpha_{name}_approx\t{}", fit.alpha, fit.approx_alpha),
            Err(e) => println!("alpha_{name}\tunavailable ({e})"),
        }
    }
    let languages: BTreeSet<Language> = g.meta.phi_normalizer.keys().copied().collect();
    for l in languages {
        let values: Vec<f64> = g.edges().into_iter().filter_map(|e| g.phi(e, l)).collect();
        println!("phi_defined_{}\t{}", l.tag(), values.len());
    }
    let mut annotated = BTreeMap::new();
    for c in g.classes().classes() {
        *annotated.entry(g.annotation(c.id).is_some()).or_insert(0usize) += 1;
    }
    println!("annotated_classes\t{}", annotated.get(&true).unwrap_or(&0));
    Ok(())
}

fn histogram(a: HistogramArgs) -> sinograph::Result<()> {
    let g = load_graph(&a.graph)?;
    emit(a.out.as_deref(), &phoneticity_histogram(&g, a.language, a.bins)?.to_csv())
}

fn synth(a: SynthArgs) -> sinograph::Result<()> {
    let config = SyntheticConfig { seed: a.seed, documents: a.documents, ..Default::default() };
    generate(&config).write_to(&a.out)
}

fn exit_code(e: &Error) -> u8 {
    match e {
        e if e.is_input_error() => 2,
        Error::InvalidReading(_) | Error::UnknownSyllable(_) | Error::UnknownVariantPair(..) => 2,
        Error::InvalidParameter(_) => 1,
        _ => 3,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::BuildGraph(a) => build_graph(a),
        Command::Annotate(a) => annotate(a),
        Command::Chains(a) => chains(a),
        Command::Freqdist(a) => freqdist(a),
        Command::Features(a) => features(a),
        Command::Evaluate(a) => evaluate(a),
        Command::QueryUnknown(a) => query_unknown(a),
        Command::Stats(a) => stats(a),
        Command::Histogram(a) => histogram(a),
        Command::Synth(a) => synth(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
