//! `loopmod`: batch front end over workspace documents.
//!
//! Exit codes: 0 success, 2 a requested property fails (with a counterexample in the report),
//! 3 the field is not split or a search was inconclusive, 4 bad input.

mod commands;
mod report;
mod selftest;

use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use loopmod::corpus::{corpus, CorpusConfig};
use loopmod::doc::{examples, Workspace};
use loopmod::{Error, Result};
use serde_json::json;

use commands::Input;
use report::{Report, Status};

#[derive(Parser)]
#[command(name = "loopmod", version, about = "Graded modules, loop modules and their invariants over finite abelian gradings")]
struct Cli {
    /// Print the full report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Target {
    /// Workspace JSON file, or the name of a shipped example.
    doc: String,
    /// Module to operate on (optional when the document has exactly one).
    #[arg(long)]
    module: Option<String>,
}

#[derive(Args)]
struct Corpus {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 50)]
    instances: usize,
    /// Largest grading group order.
    #[arg(long, default_value_t = 8)]
    max_order: usize,
    /// Largest module dimension.
    #[arg(long, default_value_t = 12)]
    max_dim: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Check the algebra and module axioms of a document.
    Validate(Target),
    /// Graded centralizer C(W) with a homogeneous basis.
    Centralizer(Target),
    /// Graded (or ungraded) simplicity, with a certificate or a proper submodule.
    Simple {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        ungraded: bool,
    },
    /// Loop module along G → G/K (K trivial by default).
    Loop {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        subgroup: Option<String>,
    },
    /// Induced module, checked against the loop module.
    Induce(Target),
    /// Central image of a G-graded simple module at a character.
    CentralImage {
        #[command(flatten)]
        target: Target,
        /// Support of the maximal graded subfield (first one found by default).
        #[arg(long)]
        subgroup: Option<String>,
        /// Character name or exponent tuple such as "1,0" (trivial by default).
        #[arg(long)]
        character: Option<String>,
    },
    /// Isotypic decomposition of a G-graded simple module.
    Decompose {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        subgroup: Option<String>,
    },
    /// Schur index, inertia group, center support and Brauer invariant.
    Invariants(Target),
    /// Graded (or ungraded) isomorphism between two modules.
    Iso {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        other: String,
        #[arg(long)]
        ungraded: bool,
    },
    /// Graded simple module containing a given simple module.
    Envelope(Target),
    /// Print a workspace document of random instances.
    Generate(Corpus),
    /// Run the property suite on random instances.
    Selftest {
        #[command(flatten)]
        corpus: Corpus,
        /// Worker threads (all available cores by default).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Print a shipped example as a workspace document.
    Fixture {
        /// One of pauli, m2rz2, torus, z4z4, smash2, smash3, smash4.
        name: String,
    },
}

fn load(doc: &str) -> Result<Workspace> {
    if !Path::new(doc).exists() {
        if let Some(ws) = examples::by_name(doc) {
            return Ok(ws);
        }
    }
    let text = std::fs::read_to_string(doc).map_err(|e| Error::Parse(format!("{doc}: {e}")))?;
    Workspace::parse(&text)
}

fn config(c: &Corpus) -> CorpusConfig {
    CorpusConfig { max_order: c.max_order, max_dim: c.max_dim }
}

fn threads(n: Option<usize>) -> usize {
    n.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn generate(c: &Corpus) -> Result<String> {
    let mut ws = Workspace::default();
    for inst in corpus(c.seed, c.instances, config(c))? {
        let w = inst.module;
        let g = w.algebra().group().clone();
        if !ws.groups.values().any(|h| **h == *g) {
            ws.groups.insert(format!("G{}", ws.groups.len()), g);
        }
        ws.algebras.insert(format!("R{}", inst.index), w.algebra().clone());
        ws.modules.insert(format!("W{}", inst.index), w);
    }
    ws.cyclotomic_order = ws.required_order();
    ws.to_json()
}

fn selftest(c: &Corpus, n: Option<usize>) -> Result<Report> {
    let inputs = json!({ "seed": c.seed, "instances": c.instances, "max_order": c.max_order, "max_dim": c.max_dim });
    let mut rep = Report::new("selftest", inputs, 1);
    let tallies = selftest::run(c.seed, c.instances, config(c), threads(n))?;
    let checks: usize = tallies.iter().map(|t| t.passed + t.failed + t.undecided).sum();
    let failed: usize = tallies.iter().map(|t| t.failed).sum();
    let undecided: usize = tallies.iter().map(|t| t.undecided).sum();
    if failed > 0 {
        rep.flag(Status::Counterexample);
    } else if undecided > 0 {
        rep.flag(Status::Undecided);
    }
    rep.result("checks", checks);
    rep.result("failed", failed);
    rep.result("undecided", undecided);
    for t in &tallies {
        rep.result(&t.property, format!("{}/{}", t.passed, t.passed + t.failed + t.undecided));
    }
    rep.certificate("properties", serde_json::to_value(&tallies).expect("plain data"));
    Ok(rep)
}

fn run(cmd: &Command) -> (String, Result<Report>) {
    let on = |t: &Target, f: &dyn Fn(&Input) -> Result<Report>| -> Result<Report> {
        let inp = Input { ws: load(&t.doc)?, module: t.module.clone() };
        f(&inp)
    };
    match cmd {
        Command::Validate(t) => ("validate".into(), on(t, &commands::validate)),
        Command::Centralizer(t) => ("centralizer".into(), on(t, &commands::centralizer)),
        Command::Simple { target, ungraded } => ("simple".into(), on(target, &|i| commands::simple(i, *ungraded))),
        Command::Loop { target, subgroup } => ("loop".into(), on(target, &|i| commands::looped(i, subgroup.as_deref()))),
        Command::Induce(t) => ("induce".into(), on(t, &commands::induce)),
        Command::CentralImage { target, subgroup, character } => (
            "central-image".into(),
            on(target, &|i| commands::central(i, subgroup.as_deref(), character.as_deref())),
        ),
        Command::Decompose { target, subgroup } => {
            ("decompose".into(), on(target, &|i| commands::decomposition(i, subgroup.as_deref())))
        }
        Command::Invariants(t) => ("invariants".into(), on(t, &commands::invariants)),
        Command::Iso { target, other, ungraded } => ("iso".into(), on(target, &|i| commands::iso(i, other, *ungraded))),
        Command::Envelope(t) => ("envelope".into(), on(t, &commands::envelope)),
        Command::Selftest { corpus, threads } => ("selftest".into(), selftest(corpus, *threads)),
        Command::Generate(_) | Command::Fixture { .. } => unreachable!("documents are printed directly"),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Status::BadInput.code() as u8 } else { 0 });
        }
    };
    // document-producing commands print the document itself
    let doc = match &cli.command {
        Command::Generate(c) => Some(generate(c)),
        Command::Fixture { name } => Some(
            examples::by_name(name)
                .ok_or_else(|| Error::Reference(format!("example '{name}' (known: {})", examples::NAMES.join(", "))))
                .and_then(|ws| ws.to_json()),
        ),
        _ => None,
    };
    if let Some(doc) = doc {
        return match doc {
            Ok(text) => {
                println!("{text}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(Status::of_error(&e).code() as u8)
            }
        };
    }
    let (name, out) = run(&cli.command);
    let rep = out.unwrap_or_else(|e| Report::from_error(&name, json!({}), &e));
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&rep).expect("plain data"));
    } else {
        print!("{}", rep.human());
    }
    ExitCode::from(rep.status.code() as u8)
}
