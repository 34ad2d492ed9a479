use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use muchkit::bases::{bases_from_pair_complex, bases_from_pair_real, verify_mucb, verify_murb};
use muchkit::corpus::{bundled, bundled_entry, corpus_verify_all, ids};
use muchkit::doubling::{double, double_pair};
use muchkit::format::{parse_any, MatrixDocument};
use muchkit::hadamard::is_complex_hadamard;
use muchkit::relations::{
    are_modularly_homogeneous, are_unbiased, are_weakly_unbiased, decompose_two_squares,
    pair_report, special_factor,
};
use muchkit::search::{
    classify_much, find_mate, find_special_mate, Progress, SearchConfig, SearchOutcome, Strategy,
};
use muchkit::{Error, UnitMatrix};

const EXIT_HOLDS: u8 = 0;
const EXIT_FAILS: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;

const THREADS_VAR: &str = "MUCHKIT_THREADS";

#[derive(Parser)]
#[command(
    name = "muchkit",
    version,
    about = "Unbiased Hadamard matrices over {1, -1, i, -i}"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a property of one matrix or a pair
    Verify {
        property: Property,
        h: PathBuf,
        k: Option<PathBuf>,
    },
    /// Build new matrices from existing ones
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Search for mates or classify small orders
    Search {
        #[command(subcommand)]
        what: Search,
    },
    /// Build three mutually unbiased bases from a pair
    Bases {
        kind: BasesKind,
        h: PathBuf,
        k: PathBuf,
    },
    /// List the ways to write m as a sum of two squares
    Decompose { m: u64 },
    /// The bundled matrices
    Corpus {
        #[command(subcommand)]
        what: Corpus,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Hadamard,
    Unbiased,
    Weak,
    Modhom,
    Special,
}

#[derive(Subcommand)]
enum Construct {
    /// Double a complex matrix, or a complex pair, to real matrices of twice the order
    Double {
        h: PathBuf,
        k: Option<PathBuf>,
        /// Write results into this directory instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Search {
    /// Find a complex Hadamard matrix unbiased to H
    Mate(SearchArgs),
    /// Find a mate K with H·K* a scalar times a Hadamard matrix
    SpecialMate(SearchArgs),
    /// Largest set of mutually unbiased complex Hadamard matrices of an order
    Classify {
        #[arg(long)]
        order: usize,
    },
}

#[derive(Args)]
struct SearchArgs {
    h: PathBuf,
    /// Node budget
    #[arg(long)]
    limit: Option<u64>,
    /// Worker threads [default: $MUCHKIT_THREADS, else available cores]
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, value_enum, default_value = "auto")]
    strategy: StrategyArg,
    /// Report progress on stderr
    #[arg(long)]
    progress: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Auto,
    Materialize,
    Stream,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasesKind {
    Mucb,
    Murb,
}

#[derive(Subcommand)]
enum Corpus {
    /// Check every claim attached to the bundled matrices
    Verify {
        /// One JSON object per claim
        #[arg(long)]
        json: bool,
    },
    /// Print a bundled matrix file
    Show { id: String },
}

/// A failure that ends the command with a specific exit status.
struct Exit {
    code: u8,
    message: String,
}

impl Exit {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Exit {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotHadamard | Error::NotUnbiased | Error::NotSpecial(_) => EXIT_FAILS,
            Error::OrderTooLarge { .. } | Error::UnsupportedOrder(_) => EXIT_USAGE,
            _ => EXIT_DATA,
        };
        Exit::new(code, e.to_string())
    }
}

impl From<io::Error> for Exit {
    fn from(e: io::Error) -> Self {
        Exit::new(EXIT_DATA, e.to_string())
    }
}

type CmdResult = Result<u8, Exit>;

// writing to a String cannot fail
macro_rules! say {
    ($out:expr, $($arg:tt)*) => {
        { let _ = writeln!($out, $($arg)*); }
    };
}

macro_rules! add {
    ($out:expr, $($arg:tt)*) => {
        { let _ = write!($out, $($arg)*); }
    };
}

fn read_matrix(path: &Path) -> Result<UnitMatrix, Exit> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Exit::new(EXIT_DATA, format!("{}: {e}", path.display())))?
    };
    parse_any(&text).map_err(|e| Exit::new(EXIT_DATA, format!("{}: {e}", path.display())))
}

fn require<'a>(k: &'a Option<PathBuf>, what: &str) -> Result<&'a PathBuf, Exit> {
    k.as_ref()
        .ok_or_else(|| Exit::new(EXIT_USAGE, format!("{what} needs a second matrix file")))
}

fn verdict(holds: bool) -> u8 {
    if holds {
        EXIT_HOLDS
    } else {
        EXIT_FAILS
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn histogram(map: &std::collections::BTreeMap<i64, usize>) -> String {
    map.iter()
        .map(|(v, c)| format!("{v}:{c}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn verify(property: Property, h: &Path, k: &Option<PathBuf>, out: &mut String) -> CmdResult {
    let hm = read_matrix(h)?;
    match property {
        Property::Hadamard => {
            let mut all = true;
            for (path, m) in std::iter::once((h.to_path_buf(), hm)).chain(
                k.iter()
                    .map(|p| read_matrix(p).map(|m| (p.clone(), m)))
                    .collect::<Result<Vec<_>, _>>()?,
            ) {
                let ok = is_complex_hadamard(&m);
                let kind = if m.is_real() { "real" } else { "complex" };
                say!(
                    out,
                    "{}: {}",
                    path.display(),
                    if ok {
                        format!("{kind} Hadamard of order {}", m.order())
                    } else {
                        "not Hadamard".into()
                    }
                );
                all &= ok;
            }
            Ok(verdict(all))
        }
        Property::Unbiased => {
            let km = read_matrix(require(k, "verify unbiased")?)?;
            let report = pair_report(&hm, &km)?;
            say!(out, "unbiased: {}", yes_no(report.unbiased));
            say!(out, "squared moduli: {}", histogram(&report.norm_histogram));
            Ok(verdict(report.unbiased))
        }
        Property::Weak => {
            let km = read_matrix(require(k, "verify weak")?)?;
            let holds = are_weakly_unbiased(&hm, &km)?;
            say!(out, "weakly unbiased: {}", yes_no(holds));
            if let Some(abs) = pair_report(&hm, &km)?.abs_histogram {
                say!(out, "absolute values: {}", histogram(&abs));
            }
            Ok(verdict(holds))
        }
        Property::Modhom => {
            let km = read_matrix(require(k, "verify modhom")?)?;
            let holds = are_modularly_homogeneous(&hm, &km)?;
            say!(out, "modularly homogeneous: {}", yes_no(holds));
            Ok(verdict(holds))
        }
        Property::Special => {
            let km = read_matrix(require(k, "verify special")?)?;
            if !are_unbiased(&hm, &km)? {
                say!(out, "special: no (not unbiased)");
                return Ok(EXIT_FAILS);
            }
            match special_factor(&hm, &km)? {
                Some(s) => {
                    say!(out, "special: yes, factor {}", s.factor);
                    add!(out, "{}", MatrixDocument::new(s.quotient));
                    Ok(EXIT_HOLDS)
                }
                None => {
                    say!(out, "special: no");
                    Ok(EXIT_FAILS)
                }
            }
        }
    }
}

fn write_output(dir: &Path, name: &str, m: UnitMatrix, out: &mut String) -> Result<(), Exit> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    std::fs::write(&path, MatrixDocument::new(m).to_string())?;
    say!(out, "wrote {}", path.display());
    Ok(())
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map_or_else(|| "stdin".into(), |s| s.to_string_lossy().into_owned())
}

fn construct_double(
    h: &Path,
    k: &Option<PathBuf>,
    output: &Option<PathBuf>,
    out: &mut String,
) -> CmdResult {
    let hm = read_matrix(h)?;
    if !is_complex_hadamard(&hm) {
        return Err(Error::NotHadamard.into());
    }
    let Some(k) = k else {
        let d = double(&hm);
        match output {
            Some(dir) => write_output(dir, &format!("{}_double.txt", stem(h)), d, out)?,
            None => add!(out, "{}", MatrixDocument::new(d)),
        }
        return Ok(EXIT_HOLDS);
    };
    let km = read_matrix(k)?;
    let pair = double_pair(&hm, &km)?;
    match output {
        Some(dir) => {
            say!(out, "pair kind: {}", pair.kind.as_str());
            write_output(dir, &format!("{}_double.txt", stem(h)), pair.h, out)?;
            write_output(dir, &format!("{}_double.txt", stem(k)), pair.k, out)?;
        }
        None => {
            eprintln!("pair kind: {}", pair.kind.as_str());
            add!(
                out,
                "{}\n{}",
                MatrixDocument::new(pair.h),
                MatrixDocument::new(pair.k)
            );
        }
    }
    Ok(EXIT_HOLDS)
}

fn default_threads() -> Result<usize, Exit> {
    match std::env::var(THREADS_VAR) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&t| t > 0)
            .ok_or_else(|| {
                Exit::new(
                    EXIT_USAGE,
                    format!("{THREADS_VAR} must be a positive integer, got {v:?}"),
                )
            }),
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn search_config(args: &SearchArgs) -> Result<SearchConfig, Exit> {
    let threads = match args.threads {
        Some(0) => return Err(Exit::new(EXIT_USAGE, "--threads must be positive")),
        Some(t) => t,
        None => default_threads()?,
    };
    let strategy = match args.strategy {
        StrategyArg::Auto => Strategy::Auto,
        StrategyArg::Materialize => Strategy::Materialize,
        StrategyArg::Stream => Strategy::Stream,
    };
    let progress = args.progress.then(|| {
        Arc::new(|p: &Progress| {
            eprintln!(
                "nodes {} depth {} candidates {}",
                p.nodes, p.depth, p.candidates_remaining
            );
        }) as muchkit::search::ProgressHook
    });
    Ok(SearchConfig {
        node_limit: args.limit,
        worker_count: threads,
        strategy,
        progress,
        ..Default::default()
    })
}

fn search(args: &SearchArgs, special: bool, out: &mut String) -> CmdResult {
    let h = read_matrix(&args.h)?;
    if !is_complex_hadamard(&h) {
        return Err(Exit::new(
            EXIT_DATA,
            format!("{}: not a complex Hadamard matrix", args.h.display()),
        ));
    }
    let cfg = search_config(args)?;
    let result = if special {
        find_special_mate(&h, &cfg)?
    } else {
        find_mate(&h, &cfg)?
    };
    match result.outcome {
        SearchOutcome::Found(k) => {
            add!(out, "{}", MatrixDocument::new(k));
            eprintln!("found after {} nodes", result.nodes);
            Ok(EXIT_HOLDS)
        }
        SearchOutcome::ProvenNone => {
            eprintln!(
                "no {}mate exists ({} nodes)",
                if special { "special " } else { "" },
                result.nodes
            );
            Ok(EXIT_FAILS)
        }
        SearchOutcome::BudgetExhausted | SearchOutcome::Cancelled => {
            eprintln!("budget exhausted after {} nodes", result.nodes);
            Ok(EXIT_BUDGET)
        }
    }
}

fn classify(order: usize, out: &mut String) -> CmdResult {
    let c = classify_much(order)?;
    say!(
        out,
        "order {}: {} complex Hadamard matrices, at most {} mutually unbiased",
        c.order,
        c.hadamards.len(),
        c.max_set_size
    );
    for (i, w) in c.witness.into_iter().enumerate() {
        say!(out, "# witness {}", i + 1);
        add!(out, "{}", MatrixDocument::new(w));
    }
    Ok(EXIT_HOLDS)
}

fn bases(kind: BasesKind, h: &Path, k: &Path, out: &mut String) -> CmdResult {
    let (hm, km) = (read_matrix(h)?, read_matrix(k)?);
    let (built, verified, label) = match kind {
        BasesKind::Mucb => (
            bases_from_pair_complex(&hm, &km),
            verify_mucb as fn(&[_]) -> _,
            "complex",
        ),
        BasesKind::Murb => (
            bases_from_pair_real(&hm, &km),
            verify_murb as fn(&[_]) -> _,
            "real",
        ),
    };
    let triple = match built {
        Ok(t) => t,
        Err(
            e @ (Error::NotHadamard
            | Error::NotUnbiased
            | Error::NotSpecial(_)
            | Error::InvalidDimension(_)),
        ) => {
            say!(out, "no three unbiased {label} bases: {e}");
            return Ok(EXIT_FAILS);
        }
        Err(e) => return Err(e.into()),
    };
    let holds = verified(&triple)?;
    say!(
        out,
        "three mutually unbiased {label} bases in dimension {}: {}",
        hm.order(),
        yes_no(holds)
    );
    Ok(verdict(holds))
}

fn decompose(m: u64, out: &mut String) -> CmdResult {
    let d = decompose_two_squares(m);
    for p in &d.pairs {
        say!(
            out,
            "{m} = {}^2 + {}^2{}",
            p.a,
            p.b,
            if p.odd_odd { " (odd, odd)" } else { "" }
        );
    }
    if d.is_empty() {
        say!(out, "{m} is not a sum of two positive squares");
    }
    Ok(verdict(!d.is_empty()))
}

fn corpus_verify(json: bool, out: &mut String) -> CmdResult {
    let report = corpus_verify_all(&bundled());
    if json {
        for r in &report.results {
            say!(
                out,
                "{}",
                serde_json::to_string(r).map_err(|e| Exit::new(EXIT_DATA, e.to_string()))?
            );
        }
    } else {
        add!(out, "{report}");
    }
    Ok(verdict(report.all_passed()))
}

fn corpus_show(id: &str, out: &mut String) -> CmdResult {
    let entry = bundled_entry(id).ok_or_else(|| {
        Exit::new(
            EXIT_USAGE,
            format!(
                "unknown corpus id {id:?}; known: {}",
                ids().collect::<Vec<_>>().join(", ")
            ),
        )
    })?;
    add!(out, "{}", entry.text);
    Ok(EXIT_HOLDS)
}

fn run(cli: Cli, out: &mut String) -> CmdResult {
    match cli.command {
        Command::Verify { property, h, k } => verify(property, &h, &k, out),
        Command::Construct {
            what: Construct::Double { h, k, output },
        } => construct_double(&h, &k, &output, out),
        Command::Search { what } => match what {
            Search::Mate(args) => search(&args, false, out),
            Search::SpecialMate(args) => search(&args, true, out),
            Search::Classify { order } => classify(order, out),
        },
        Command::Bases { kind, h, k } => bases(kind, &h, &k, out),
        Command::Decompose { m } => decompose(m, out),
        Command::Corpus { what } => match what {
            Corpus::Verify { json } => corpus_verify(json, out),
            Corpus::Show { id } => corpus_show(&id, out),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_HOLDS
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    // output is buffered so a closed pipe cannot change the exit status
    let mut out = String::new();
    let result = run(cli, &mut out);
    let written = io::stdout().lock().write_all(out.as_bytes());
    if let Err(e) = written {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("muchkit: {e}");
            return ExitCode::from(EXIT_DATA);
        }
    }
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Exit { code, message }) => {
            eprintln!("muchkit: {message}");
            ExitCode::from(code)
        }
    }
}
