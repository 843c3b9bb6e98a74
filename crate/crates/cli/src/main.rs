use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};
use relcalc::ualg::{DEFAULT_CLONE_BUDGET, DEFAULT_CONGRUENCE_BOUND};
use relcalc_cli::commands;
use relcalc_cli::format::Workspace;
use relcalc_cli::report::Report;
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "relcalc",
    version,
    about = "Relations, congruences and exactness checks on finite sets and algebras"
)]
struct Cli {
    /// Also write the report as JSON to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TermKind {
    Maltsev,
    Quaternary,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepKind {
    Difunctional,
    Reflexive,
    GoursatImage,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    ExactFork,
    BarrKock,
    GoursatPushout,
    RegularPushout,
    ThreeByThree,
}

#[derive(Subcommand)]
enum Command {
    /// Relational composite, R first then S.
    Compose { file: String, r: String, s: String },
    /// Reflexive, symmetric, transitive, equivalence and difunctional flags.
    Classify { file: String, relation: String },
    /// Image factorization of a function.
    Factorize { file: String, function: String },
    /// Kernel pair of a function.
    KernelPair { file: String, function: String },
    /// Pullback of a cospan.
    Pullback { file: String, f: String, g: String },
    /// Coequalizer of a parallel pair.
    Coequalize { file: String, u: String, v: String },
    /// All congruences of an algebra.
    Congruences {
        file: String,
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long, default_value_t = DEFAULT_CONGRUENCE_BOUND)]
        bound: usize,
    },
    /// Congruence generated by pairs such as `0,1`.
    GenCongruence {
        file: String,
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long = "pair", required = true)]
        pairs: Vec<String>,
    },
    /// n-permutability of congruences.
    CheckPermutability {
        file: String,
        #[arg(long)]
        level: usize,
        #[arg(long)]
        algebra: Option<String>,
        /// Two congruence names; without it every pair is checked.
        #[arg(long, num_args = 2, value_names = ["R", "S"])]
        pair: Option<Vec<String>>,
        #[arg(long, default_value_t = DEFAULT_CONGRUENCE_BOUND)]
        bound: usize,
    },
    /// Search the clone for a Mal'tsev term or a quaternary pair.
    FindTerm {
        file: String,
        #[arg(long, value_enum)]
        kind: TermKind,
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long, default_value_t = DEFAULT_CLONE_BUDGET)]
        budget: usize,
    },
    /// Check an identity schema on an algebra.
    VerifySchema {
        file: String,
        #[arg(long)]
        schema: String,
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long = "term")]
        terms: Vec<String>,
        /// For `custom`: an identity `lhs = rhs` over x0, x1, ...
        #[arg(long = "equation")]
        equations: Vec<String>,
    },
    /// Check every relation of a family on an algebra.
    Sweep {
        file: String,
        #[arg(long, value_enum)]
        which: SweepKind,
        #[arg(long)]
        algebra: Option<String>,
        /// Second factor for the difunctional sweep.
        #[arg(long)]
        with: Option<String>,
        #[arg(long)]
        max_generators: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_CONGRUENCE_BOUND)]
        bound: usize,
    },
    /// Diagram checks. Without a file, `barr-kock` runs the seeded harness.
    Check {
        file: Option<String>,
        #[arg(long, value_enum)]
        which: CheckKind,
        #[arg(long)]
        name: Option<String>,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 5)]
        max_size: usize,
    },
    /// Print a built-in algebra in file form.
    Build {
        builder: String,
        param: usize,
        #[arg(long)]
        name: Option<String>,
    },
    /// Summary of every object in a file.
    Report {
        file: String,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
        #[arg(long, default_value_t = DEFAULT_CONGRUENCE_BOUND)]
        bound: usize,
    },
}

enum Output {
    Report(Report),
    Raw(serde_json::Value),
}

fn check_name(k: CheckKind) -> &'static str {
    match k {
        CheckKind::ExactFork => "exact-fork",
        CheckKind::BarrKock => "barr-kock",
        CheckKind::GoursatPushout => "goursat-pushout",
        CheckKind::RegularPushout => "regular-pushout",
        CheckKind::ThreeByThree => "three-by-three",
    }
}

fn run(cmd: Command) -> Result<Output> {
    let ws = |f: &str| Workspace::load(f);
    let rep = match cmd {
        Command::Compose { file, r, s } => commands::compose(&ws(&file)?, &r, &s)?,
        Command::Classify { file, relation } => commands::classify(&ws(&file)?, &relation)?,
        Command::Factorize { file, function } => commands::factorize(&ws(&file)?, &function)?,
        Command::KernelPair { file, function } => commands::kernel_pair(&ws(&file)?, &function)?,
        Command::Pullback { file, f, g } => commands::pullback(&ws(&file)?, &f, &g)?,
        Command::Coequalize { file, u, v } => commands::coequalize(&ws(&file)?, &u, &v)?,
        Command::Congruences {
            file,
            algebra,
            bound,
        } => commands::congruences(&ws(&file)?, algebra.as_deref(), bound)?,
        Command::GenCongruence {
            file,
            algebra,
            pairs,
        } => commands::gen_congruence(&ws(&file)?, algebra.as_deref(), &pairs)?,
        Command::CheckPermutability {
            file,
            level,
            algebra,
            pair,
            bound,
        } => commands::check_perm(
            &ws(&file)?,
            algebra.as_deref(),
            level,
            pair.as_deref(),
            bound,
        )?,
        Command::FindTerm {
            file,
            kind,
            algebra,
            budget,
        } => commands::find_term(
            &ws(&file)?,
            algebra.as_deref(),
            matches!(kind, TermKind::Quaternary),
            budget,
        )?,
        Command::VerifySchema {
            file,
            schema,
            algebra,
            terms,
            equations,
        } => commands::verify(&ws(&file)?, algebra.as_deref(), &schema, &terms, &equations)?,
        Command::Sweep {
            file,
            which,
            algebra,
            with,
            max_generators,
            bound,
        } => {
            let which = match which {
                SweepKind::Difunctional => "difunctional",
                SweepKind::Reflexive => "reflexive",
                SweepKind::GoursatImage => "goursat-image",
            };
            commands::sweep(
                &ws(&file)?,
                algebra.as_deref(),
                which,
                with.as_deref(),
                max_generators,
                bound,
            )?
        }
        Command::Check {
            file,
            which,
            name,
            seed,
            count,
            max_size,
        } => match (file, which) {
            (None, CheckKind::BarrKock) => commands::barr_kock_harness(seed, count, max_size)?,
            (None, _) => anyhow::bail!("`check --which {}` needs a file", check_name(which)),
            (Some(file), _) => commands::check(&ws(&file)?, check_name(which), name.as_deref())?,
        },
        Command::Build {
            builder,
            param,
            name,
        } => {
            return Ok(Output::Raw(commands::build(
                &builder,
                param,
                name.as_deref(),
            )?))
        }
        Command::Report {
            file,
            budget,
            bound,
        } => commands::report(&ws(&file)?, budget, bound)?,
    };
    Ok(Output::Report(rep))
}

fn write_json(path: &Option<String>, value: &serde_json::Value) {
    if let Some(p) = path {
        let text = serde_json::to_string_pretty(value).expect("serializable") + "\n";
        if let Err(e) = std::fs::write(p, text) {
            eprintln!("error: cannot write {p}: {e}");
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Output::Report(rep)) => {
            print!("{}", rep.render());
            write_json(&cli.json, &rep.to_json());
            ExitCode::from(rep.status.exit_code() as u8)
        }
        Ok(Output::Raw(v)) => {
            println!("{v}");
            write_json(&cli.json, &v);
            ExitCode::SUCCESS
        }
        Err(e) => {
            let msg = format!("{e:#}");
            eprintln!("error: {msg}");
            write_json(&cli.json, &json!({"status": "error", "error": msg}));
            ExitCode::from(2)
        }
    }
}
