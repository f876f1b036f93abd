use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dbl_cli::checks::Selector;
use dbl_cli::commands::{self, Options};
use dbl_cli::{default_corpus, parse_corpus, parse_seed, CliError, Report, SEED_ENV};
use dbl_core::chars::GenDecCase;

/// Verification harness for principal 2-blocks with dihedral defect groups.
#[derive(Parser, Debug)]
#[command(name = "dbl", version, about)]
struct Cli {
    /// Also write the report as JSON to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Use this corpus file instead of the built-in one.
    #[arg(long, global = true, value_name = "PATH")]
    corpus: Option<PathBuf>,
    /// Record per-check wall-clock time (reports stop being reproducible).
    #[arg(long, global = true)]
    timing: bool,
    /// Allow computations above group order 5000 or dimension 2000.
    #[arg(long, global = true)]
    extended: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Inspect a group.
    Group {
        #[command(subcommand)]
        action: GroupCmd,
    },
    /// Scott module, Loewy and socle series.
    Scott {
        spec: String,
        /// Subgroup to induce from.
        #[arg(long, value_enum)]
        at: Option<At>,
        /// Generators of an explicit subgroup, in cycle notation.
        #[arg(long = "gen", value_name = "PERM")]
        gens: Vec<String>,
    },
    /// Brauer indecomposability audit of Sc(G,P) or Sc(GxG',ΔP).
    Brauer { spec: String },
    /// Transport of simples through Sc(GxG',ΔP).
    Transport { spec: String },
    /// Generalised decomposition matrices.
    Gendec {
        #[command(subcommand)]
        action: GendecCmd,
    },
    /// Run the corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusCmd,
    },
}

#[derive(Subcommand, Debug)]
enum GroupCmd {
    /// Order, classes, Sylow frame and fusion pattern.
    Info { spec: String },
}

#[derive(Subcommand, Debug)]
enum GendecCmd {
    /// Print the tabulated matrix of a case.
    Build {
        #[arg(long, value_parser = parse_case)]
        case: GenDecCase,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: Option<u64>,
    },
    /// Check a case against a group's character table.
    Verify {
        #[arg(long, value_parser = parse_case)]
        case: GenDecCase,
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        q: Option<u64>,
    },
}

#[derive(Subcommand, Debug)]
enum CorpusCmd {
    /// Run every entry, or those matching a check kind, id or tag.
    Run {
        #[arg(long)]
        filter: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum At {
    Borel,
    Sylow,
    Gens,
}

fn parse_case(s: &str) -> Result<GenDecCase, String> {
    s.parse().map_err(|e: dbl_core::chars::CharError| e.to_string())
}

fn selector(at: Option<At>, gens: Vec<String>) -> Result<Selector, CliError> {
    match (at, gens.is_empty()) {
        (None | Some(At::Gens), false) => Ok(Selector::Generators(gens)),
        (Some(At::Gens), true) => Err(CliError::Usage("--at gens needs at least one --gen".into())),
        (Some(_), false) => Err(CliError::Usage("--gen only goes with --at gens".into())),
        (None | Some(At::Borel), true) => Ok(Selector::Borel),
        (Some(At::Sylow), true) => Ok(Selector::Sylow),
    }
}

fn run(cli: Cli, opts: &Options) -> Result<Report, CliError> {
    match cli.command {
        Command::Group {
            action: GroupCmd::Info { spec },
        } => commands::group_info(&spec, opts),
        Command::Scott { spec, at, gens } => commands::scott(&spec, &selector(at, gens)?, opts),
        Command::Brauer { spec } => commands::brauer(&spec, opts),
        Command::Transport { spec } => commands::transport(&spec, opts),
        Command::Gendec {
            action: GendecCmd::Build { case, n, q },
        } => commands::gendec_build_report(case, n, q, opts),
        Command::Gendec {
            action: GendecCmd::Verify { case, group, n, q },
        } => commands::gendec_verify_report(case, &group, n, q, opts),
        Command::Corpus {
            action: CorpusCmd::Run { filter },
        } => {
            let entries = match &cli.corpus {
                Some(path) => parse_corpus(&std::fs::read_to_string(path)?)?,
                None => default_corpus(),
            };
            Ok(commands::corpus_run(&entries, filter.as_deref(), opts))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = match std::env::var(SEED_ENV) {
        Ok(v) => match parse_seed(&v) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("dbl: {e}");
                return ExitCode::from(2);
            }
        },
        Err(_) => dbl_core::config::DEFAULT_SEED,
    };
    let opts = Options {
        command: std::env::args().skip(1).collect(),
        seed,
        timing: cli.timing,
        extended: cli.extended,
    };
    let json = cli.json.clone();
    let report = match run(cli, &opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("dbl: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    if let Some(text) = report.checks.first().and_then(|c| c.details.get("text")).and_then(|t| t.as_str()) {
        print!("{text}");
    }
    print!("{}", report.render());
    if let Some(path) = json {
        if let Err(e) = std::fs::write(&path, report.to_json()) {
            eprintln!("dbl: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(report.exit_code())
}
