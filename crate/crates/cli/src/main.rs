use std::io::{self, IsTerminal, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use kolakoski_bounds::automaton::{degree_profile, DegreeProfile};
use kolakoski_bounds::avoided::avoided_set;
use kolakoski_bounds::bounds::{best_bound, bound_from_denominator, fraction, Bound};
use kolakoski_bounds::cluster::{weight_gf, weight_series_with, Control};
use kolakoski_bounds::quasipoly::{
    default_max_modulus, fit_quasipoly, semi_rigorous_bound, successive_maxima, FitSummary,
};
use kolakoski_bounds::report::{self, cmd_report, default_terms, Backend, ReportOptions};
use kolakoski_bounds::verify::{cmd_verify, Faults, Level};
use kolakoski_bounds::word::{format_word_set, kolakoski_prefix, parse_word_set, PrefixStats, Word};
use kolakoski_bounds::Error;
use serde_json::json;

#[derive(Parser)]
#[command(name = "kolbound", version, about = "Bounds on the frequency of 1 in the Kolakoski word")]
struct Cli {
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV where a table is produced.
    #[arg(long, global = true)]
    csv: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_name = "K")]
    threads: Option<usize>,
    /// Run past the cost ceiling of the series backend.
    #[arg(long, global = true)]
    force: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a prefix of K (or of 1K with --first 1).
    Kolakoski {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
        first: u8,
    },
    /// Print the avoided set S_d in the word-set format.
    Avoided {
        #[arg(long)]
        d: usize,
    },
    /// Weight enumerator as a reduced rational function.
    Gf(WordsArg),
    /// Series coefficients p_0 .. p_N.
    Series {
        #[command(flatten)]
        words: WordsArg,
        #[arg(long)]
        terms: usize,
    },
    /// Minimum and maximum number of ones per length.
    Profile {
        #[command(flatten)]
        words: WordsArg,
        #[arg(long)]
        terms: usize,
        #[arg(long, value_enum, default_value_t = BackendArg::Automaton)]
        backend: BackendArg,
    },
    /// Rigorous bound from the denominator or from a degree profile.
    #[command(group(ArgGroup::new("source").args(["gf", "profile_terms"])))]
    Bounds {
        #[command(flatten)]
        words: WordsArg,
        /// Use the generating function denominator (default).
        #[arg(long)]
        gf: bool,
        /// Use the best length among the first N.
        #[arg(long, value_name = "N")]
        profile_terms: Option<usize>,
    },
    /// Fit an eventual quasi-polynomial to a profile's min-ones sequence.
    Quasifit {
        /// Profile JSON as written by `profile --json`; `-` reads stdin.
        #[arg(long)]
        profile: PathBuf,
        #[arg(long)]
        max_modulus: Option<usize>,
    },
    /// The results table for d in a range.
    Report {
        /// Depths, e.g. `1-6` or `2,4,5`.
        #[arg(long, default_value = "1-6")]
        depths: String,
        /// Terms for every depth (default: 200, 200, 200, 500, 800, 600).
        #[arg(long)]
        terms: Option<usize>,
        #[arg(long, value_enum, default_value_t = BackendArg::Automaton)]
        backend: BackendArg,
    },
    /// Reproduce the known values.
    Verify {
        #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
        level: LevelArg,
        #[arg(long, hide = true, value_name = "NAME")]
        inject_fault: Vec<String>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct WordsArg {
    /// Word-set file, one word per line; `-` reads stdin.
    #[arg(long)]
    words: Option<PathBuf>,
    /// Use the avoided set S_d instead of a file.
    #[arg(long, value_name = "D")]
    depth: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Automaton,
    GjSeries,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Automaton => Backend::Automaton,
            BackendArg::GjSeries => Backend::GjSeries,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

enum Failure {
    Usage(String),
    Verify,
    Ceiling(String),
    Run(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CostCeiling { .. } => Failure::Ceiling(e.to_string()),
            Error::Parse { .. } | Error::UnsupportedDepth(_) | Error::InvalidDepth => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Run(e.to_string()),
        }
    }
}

type CmdResult = Result<String, Failure>;

#[derive(Clone, Copy)]
enum Format {
    Text,
    Json,
    Csv,
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
    }
}

fn load_words(arg: &WordsArg) -> Result<Vec<Word>, Failure> {
    match (&arg.words, arg.depth) {
        (Some(path), _) => Ok(parse_word_set(&read_input(path)?)?),
        (None, Some(d)) => Ok(avoided_set(d)?.words().to_vec()),
        (None, None) => Err(Failure::Usage("one of --words or --depth is required".into())),
    }
}

fn progress_line(label: &'static str) -> impl Fn(usize, usize) + Sync {
    let tty = io::stderr().is_terminal();
    move |n, total| {
        if tty && (n == total || n % 10 == 0) {
            eprint!("\r{label} {n}/{total}");
            if n == total {
                eprintln!();
            }
        }
    }
}

fn parse_depths(spec: &str) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::Usage(format!("invalid depth list {spec:?}"));
    let mut out = Vec::new();
    for part in spec.split(',') {
        match part.split_once('-') {
            Some((a, b)) => {
                let (a, b): (usize, usize) =
                    (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
                if a > b {
                    return Err(bad());
                }
                out.extend(a..=b);
            }
            None => out.push(part.trim().parse().map_err(|_| bad())?),
        }
    }
    Ok(out)
}

fn bound_json(b: &Bound) -> serde_json::Value {
    json!({
        "epsilon": fraction(&b.epsilon),
        "decimal": b.epsilon_decimal(),
        "lower": fraction(&b.lower),
        "upper": fraction(&b.upper),
        "provenance": b.provenance,
        "rigor": b.rigor,
        "caveat": kolakoski_bounds::bounds::CAVEAT,
    })
}

fn run(cli: &Cli) -> CmdResult {
    let format = match (cli.json, cli.csv) {
        (true, _) => Format::Json,
        (_, true) => Format::Csv,
        _ => Format::Text,
    };
    match &cli.command {
        Command::Kolakoski { n, first } => {
            let w = kolakoski_prefix(*n, *first);
            let stats = PrefixStats::of(&w);
            Ok(match format {
                Format::Json => json!({"n": stats.n, "ones": stats.ones, "word": w.to_string()}).to_string(),
                _ => w.to_string(),
            })
        }
        Command::Avoided { d } => {
            let set = avoided_set(*d)?;
            Ok(match format {
                Format::Json => {
                    let levels: Vec<Vec<String>> = (1..=*d)
                        .map(|k| set.level(k).unwrap_or(&[]).iter().map(Word::to_string).collect())
                        .collect();
                    json!({"d": d, "size": set.len(), "levels": levels}).to_string()
                }
                _ => format_word_set(set.words()).trim_end().to_string(),
            })
        }
        Command::Gf(words) => {
            let gf = weight_gf(&load_words(words)?)?;
            Ok(match format {
                Format::Json => json!({
                    "numerator": gf.numerator().to_string(),
                    "denominator": gf.denominator().to_string(),
                })
                .to_string(),
                _ => format!("numerator:   {}\ndenominator: {}", gf.numerator(), gf.denominator()),
            })
        }
        Command::Series { words, terms } => {
            let progress = progress_line("series");
            let control = Control { progress: Some(&progress), cancel: None };
            let series = weight_series_with(&load_words(words)?, *terms, control)?;
            Ok(match format {
                Format::Json => series.to_json(),
                _ => {
                    (0..=*terms).map(|n| format!("p_{n} = {}", series.term(n))).collect::<Vec<_>>().join("\n")
                }
            })
        }
        Command::Profile { words, terms, backend } => {
            let set = load_words(words)?;
            let profile = match Backend::from(*backend) {
                Backend::Automaton => degree_profile(&set, *terms)?,
                Backend::GjSeries => {
                    let progress = progress_line("series");
                    let control = Control { progress: Some(&progress), cancel: None };
                    DegreeProfile::from_series(&weight_series_with(&set, *terms, control)?)?
                }
            };
            Ok(match format {
                Format::Json => serde_json::to_string(&profile).expect("profile serializes"),
                Format::Csv => profile.to_csv().trim_end().to_string(),
                Format::Text => (0..=profile.terms)
                    .map(|n| format!("{n:>5} {:>5} {:>5}", profile.min_ones[n], profile.max_ones[n]))
                    .collect::<Vec<_>>()
                    .join("\n"),
            })
        }
        Command::Bounds { words, gf: _, profile_terms } => {
            let set = load_words(words)?;
            let (n, bound) = match profile_terms {
                Some(terms) => {
                    let (n, b) = best_bound(&degree_profile(&set, *terms)?)?;
                    (Some(n), b)
                }
                None => (None, bound_from_denominator(&weight_gf(&set)?)?),
            };
            Ok(match format {
                Format::Json => {
                    let mut v = bound_json(&bound);
                    v["n"] = json!(n);
                    v.to_string()
                }
                _ => bound.to_string(),
            })
        }
        Command::Quasifit { profile, max_modulus } => {
            let profile: DegreeProfile = serde_json::from_str(&read_input(profile)?)
                .map_err(|e| Failure::Usage(format!("profile JSON: {e}")))?;
            let profile = DegreeProfile::new(profile.terms, profile.min_ones, profile.max_ones)?;
            let m = &profile.min_ones;
            let fit = fit_quasipoly(m, max_modulus.unwrap_or_else(|| default_max_modulus(m)))?;
            let maxima = successive_maxima(m, &fit);
            let summary = FitSummary::new(&fit, &maxima);
            Ok(match format {
                Format::Json => serde_json::to_string(&summary).expect("summary serializes"),
                _ => {
                    let bound = semi_rigorous_bound(&fit);
                    format!(
                        "modulus {} slope {} onset {} window {}\nconstants {:?}\nmaxima {} for m >= {}{}\n{}",
                        fit.modulus,
                        fit.slope,
                        fit.onset,
                        fit.window,
                        fit.constants,
                        summary.maxima_formula,
                        maxima.m_start,
                        if maxima.attained { " (limit attained)" } else { "" },
                        bound
                    )
                }
            })
        }
        Command::Report { depths, terms, backend } => {
            let jobs: Vec<(usize, usize)> = parse_depths(depths)?
                .into_iter()
                .map(|d| (d, terms.unwrap_or_else(|| default_terms(d))))
                .collect();
            let progress = progress_line("series");
            let opts = ReportOptions {
                force: cli.force,
                cost_ceiling: None,
                control: Control { progress: Some(&progress), cancel: None },
            };
            let rows = cmd_report(&jobs, (*backend).into(), opts)?;
            Ok(match format {
                Format::Json => serde_json::to_string(&rows).expect("rows serialize"),
                Format::Csv => report::render_csv(&rows).trim_end().to_string(),
                Format::Text => report::render_text(&rows).trim_end().to_string(),
            })
        }
        Command::Verify { level, inject_fault } => {
            let faults = Faults::parse(inject_fault.iter().map(String::as_str))?;
            let level = match level {
                LevelArg::Quick => Level::Quick,
                LevelArg::Full => Level::Full,
            };
            let json = matches!(format, Format::Json);
            let outcomes = cmd_verify(level, &faults, |o| {
                if !json {
                    println!("{}", o.line());
                }
            });
            let passed = outcomes.iter().all(|o| o.passed);
            if json {
                println!("{}", serde_json::to_string(&outcomes).expect("outcomes serialize"));
            }
            if passed {
                Ok(String::new())
            } else {
                Err(Failure::Verify)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(out) => {
            if !out.is_empty() {
                let mut stdout = io::stdout().lock();
                let _ = writeln!(stdout, "{out}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Ceiling(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
