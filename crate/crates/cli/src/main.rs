mod input;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use lasker_core::decompose::{self, Decomposition};
use lasker_core::doc::{self, DecompositionDoc, MinimalityDoc, PREDICATES};
use lasker_core::lab::{self, LabConfig, Mutation, Status, Suite};
use lasker_core::ring::{BuildOptions, DEFAULT_SIZE_CAP};
use lasker_core::{ideal, predicates, Ring};

use input::{CliError, Source};

#[derive(Parser)]
#[command(name = "lasker", version, about = "S-primary decomposition and S-relative ideal predicates")]
struct Cli {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest ring built from a specification.
    #[arg(long, global = true, env = "LASKER_SIZE_CAP")]
    cap: Option<usize>,
    /// Seed for the sampled integer instances of the corpus.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RingArgs {
    /// Ring specification as inline JSON.
    #[arg(long)]
    ring: Option<String>,
    #[arg(long, value_name = "PATH")]
    ring_file: Option<String>,
}

#[derive(Args)]
struct MsetArgs {
    /// Multiplicative set as inline JSON; `{1}` when absent.
    #[arg(long)]
    mset: Option<String>,
    #[arg(long, value_name = "PATH")]
    mset_file: Option<String>,
}

#[derive(Args)]
struct IdealArgs {
    #[arg(long)]
    ideal: Option<String>,
    #[arg(long, value_name = "PATH")]
    ideal_file: Option<String>,
}

#[derive(Args)]
struct DecompositionArgs {
    #[arg(long)]
    decomposition: Option<String>,
    #[arg(long, value_name = "PATH")]
    decomposition_file: Option<String>,
}

#[derive(Args)]
struct CorpusArgs {
    /// `default`, `empty`, or a corpus specification (inline JSON or path).
    #[arg(long, default_value = "default")]
    corpus: String,
}

#[derive(Subcommand)]
enum Command {
    /// Size, ideal count, nilradical and primes of a ring.
    RingInfo {
        #[command(flatten)]
        ring: RingArgs,
    },
    /// All ideals of a finite ring in canonical order.
    EnumerateIdeals {
        #[command(flatten)]
        ring: RingArgs,
    },
    /// Decide a predicate and print its certificate.
    Check {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(PREDICATES))]
        predicate: String,
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        ideal: IdealArgs,
        #[command(flatten)]
        mset: MsetArgs,
    },
    /// S-primary decomposition of an ideal.
    Decompose {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        ideal: IdealArgs,
        #[command(flatten)]
        mset: MsetArgs,
    },
    /// Rewrite a decomposition into a minimal one.
    Minimalize {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        mset: MsetArgs,
        #[command(flatten)]
        decomposition: DecompositionArgs,
    },
    /// Report both minimality conditions of a decomposition.
    VerifyMinimality {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        mset: MsetArgs,
        #[command(flatten)]
        decomposition: DecompositionArgs,
    },
    /// Run property suites over a corpus.
    Verify {
        #[arg(value_parser = suite_names())]
        suite: String,
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Corrupt a predicate to check that the suites can fail.
        #[arg(long, hide = true)]
        mutate: bool,
    },
    /// List the rings and multiplicative sets of a corpus.
    Corpus {
        #[command(flatten)]
        corpus: CorpusArgs,
    },
}

fn suite_names() -> clap::builder::PossibleValuesParser {
    let mut names = vec!["all"];
    names.extend(Suite::ALL.iter().map(|s| s.name()));
    clap::builder::PossibleValuesParser::new(names)
}

/// Text and JSON forms of one result, plus the exit code.
struct Output {
    text: String,
    json: Value,
    code: u8,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 64 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not an error worth reporting
            let _ = if cli.json {
                writeln!(stdout, "{}", serde_json::to_string_pretty(&out.json).expect("serializable"))
            } else {
                write!(stdout, "{}", out.text)
            };
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let opts = BuildOptions {
        size_cap: cli.cap.unwrap_or(DEFAULT_SIZE_CAP),
    };
    match &cli.command {
        Command::RingInfo { ring } => {
            let ring = input::ring(&Source::new("ring", &ring.ring, &ring.ring_file), &opts)?;
            ring_info(&ring)
        }
        Command::EnumerateIdeals { ring } => {
            let ring = input::ring(&Source::new("ring", &ring.ring, &ring.ring_file), &opts)?;
            let ideals = ideal::enumerate_ideals(&ring)?;
            let text = ideals
                .iter()
                .map(|i| format!("{}\t{} elements\n", i.describe(), i.cardinality().unwrap_or(0)))
                .collect();
            let json = json!({
                "ring": ring.spec(),
                "ideals": ideals
                    .iter()
                    .map(|i| json!({"ideal": doc::ideal_to_doc(i), "size": i.cardinality()}))
                    .collect::<Vec<_>>(),
            });
            Ok(Output::ok(text, json))
        }
        Command::Check {
            predicate,
            ring,
            ideal,
            mset,
        } => {
            let ring = input::ring(&Source::new("ring", &ring.ring, &ring.ring_file), &opts)?;
            let s = input::mset(&ring, &Source::new("mset", &mset.mset, &mset.mset_file))?;
            let i = input::optional_ideal(&ring, &Source::new("ideal", &ideal.ideal, &ideal.ideal_file))?;
            let cert = doc::run_predicate(predicate, &ring, i.as_ref(), Some(&s))?;
            Ok(Output::ok(format!("{}\n", cert.text()), to_json(&cert)))
        }
        Command::Decompose { ring, ideal, mset } => {
            let ring = input::ring(&Source::new("ring", &ring.ring, &ring.ring_file), &opts)?;
            let s = input::mset(&ring, &Source::new("mset", &mset.mset, &mset.mset_file))?;
            let i = input::ideal(&ring, &Source::new("ideal", &ideal.ideal, &ideal.ideal_file))?;
            let d = if ring.is_finite() {
                decompose::decompose_finite(&i, &s)?.ok_or_else(|| CliError {
                    code: 1,
                    message: format!("{} has no S-primary decomposition", i.describe()),
                })?
            } else {
                decompose::decompose_integers(&i, &s)?
            };
            Ok(decomposition_output(&d))
        }
        Command::Minimalize {
            ring,
            mset,
            decomposition,
        } => {
            let ring = input::ring(&Source::new("ring", &ring.ring, &ring.ring_file), &opts)?;
            let s = input::mset(&ring, &Source::new("mset", &mset.mset, &mset.mset_file))?;
            let d = read_decomposition(&ring, &s, decomposition)?;
            let m = decompose::minimalize(&d.target, &s, &d)?;
            Ok(decomposition_output(&m))
        }
        Command::VerifyMinimality {
            ring,
            mset,
            decomposition,
        } => {
            let ring = input::ring(&Source::new("ring", &ring.ring, &ring.ring_file), &opts)?;
            let s = input::mset(&ring, &Source::new("mset", &mset.mset, &mset.mset_file))?;
            let d = read_decomposition(&ring, &s, decomposition)?;
            decompose::validate(&d, &s)?;
            let report = MinimalityDoc::from(&decompose::verify_minimality(&d, &s)?);
            Ok(Output::ok(render::minimality(&report), to_json(&report)))
        }
        Command::Verify { suite, corpus, mutate } => {
            let corpus = lab::generate_corpus(&input::corpus_spec(&corpus.corpus, cli)?)?;
            let config = LabConfig {
                mutation: if *mutate { Mutation::NegateSPrimary } else { Mutation::None },
            };
            let reports = match Suite::parse(suite) {
                Some(s) => vec![lab::run_suite(s, &corpus, &config)],
                None => lab::run_all(&corpus, &config),
            };
            let status = Status::combine(reports.iter().map(|r| r.status));
            let mut text: String = reports.iter().map(render::suite_report).collect();
            text.push_str(&format!("overall: {}\n", render::status(status)));
            let json = json!({ "status": status, "suites": reports });
            Ok(Output {
                text,
                json,
                code: status.exit_code() as u8,
            })
        }
        Command::Corpus { corpus } => {
            let corpus = lab::generate_corpus(&input::corpus_spec(&corpus.corpus, cli)?)?;
            Ok(Output::ok(render::corpus(&corpus), render::corpus_json(&corpus)))
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn read_decomposition(
    ring: &Ring,
    s: &lasker_core::MultiplicativeSet,
    args: &DecompositionArgs,
) -> Result<Decomposition, CliError> {
    let src = Source::new("decomposition", &args.decomposition, &args.decomposition_file);
    let doc: DecompositionDoc = input::document(&src)?;
    let d = doc::decomposition_from_doc(ring, s, &doc)?;
    decompose::validate(&d, s)?;
    Ok(d)
}

fn decomposition_output(d: &Decomposition) -> Output {
    let doc = doc::decomposition_to_doc(d);
    Output::ok(render::decomposition(d), to_json(&doc))
}

fn ring_info(ring: &Ring) -> Result<Output, CliError> {
    let nil = ideal::nilradical(ring);
    let (ideals, primes, units) = match ring.finite() {
        Some(r) => {
            let ideals = ideal::enumerate_ideals(ring)?.len();
            let primes = predicates::prime_ideals(ring)?;
            let units = (0..r.size()).filter(|&a| r.is_unit(a)).count();
            (Some(ideals), Some(primes), units)
        }
        None => (None, None, 2),
    };
    let text = format!(
        "ring: {}\nsize: {}\nideals: {}\nnilradical: {}\nprime ideals: {}\nunits: {units}\n",
        ring.describe(),
        ring.size().map_or("infinite".to_string(), |n| n.to_string()),
        ideals.map_or("infinitely many".to_string(), |n| n.to_string()),
        nil.describe(),
        primes.as_ref().map_or("0Z and pZ for every prime p".to_string(), |ps| {
            ps.iter().map(|p| p.describe()).collect::<Vec<_>>().join(", ")
        }),
    );
    let json = json!({
        "ring": ring.spec(),
        "description": ring.describe(),
        "size": ring.size(),
        "ideal_count": ideals,
        "nilradical": doc::ideal_to_doc(&nil),
        "prime_ideals": primes.map(|ps| ps.iter().map(doc::ideal_to_doc).collect::<Vec<_>>()),
        "units": units,
    });
    Ok(Output::ok(text, json))
}
