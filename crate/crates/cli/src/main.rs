mod render;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use demazure_core::demazure::{demazure_blambda, demazure_operator_word};
use demazure_core::verify::{run_suite, Scope, Statement, TypeContext};
use demazure_core::{CheckReport, Error, FormalSum, ReducedWord, TypeLabel, Weight};
use thiserror::Error as ThisError;

use render::DemazureOutcome;

#[derive(Parser)]
#[command(
    name = "demazure",
    version,
    about = "Kashiwara crystals, Demazure crystals and their verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate B(lambda) and print it.
    Crystal(CrystalArgs),
    /// Compute B_w(lambda), its character, and check the refined formula.
    Demazure(DemazureArgs),
    /// Run verification suites over a grid of types and weights.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args)]
struct Common {
    /// Output file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct CrystalArgs {
    #[arg(long = "type")]
    type_label: String,
    /// Dominant weight in fundamental-weight coordinates, e.g. `1,0`.
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct DemazureArgs {
    #[arg(long = "type")]
    type_label: String,
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    /// Reduced word, 1-based letters in application order, e.g. `1,2,1`.
    #[arg(long, default_value = "")]
    word: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    /// Restrict to one type; default every supported type.
    #[arg(long = "type")]
    type_label: Option<String>,
    /// Restrict to one weight (requires --type); default the acceptance grid.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Restrict word-based suites to one reduced word (requires --type).
    #[arg(long)]
    word: Option<String>,
    /// Depth bound for B(infinity) suites.
    #[arg(long)]
    depth: Option<usize>,
    /// Comma-separated suite ids; default every gating suite.
    #[arg(long)]
    suite: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, ThisError)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Runtime(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => CliError::Runtime(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

fn parse_lambda(s: &str, rank: usize) -> Result<Weight, CliError> {
    let coords = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| CliError::Usage(format!("bad weight `{s}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if coords.len() != rank {
        return Err(Error::WeightRank {
            got: coords.len(),
            rank,
        }
        .into());
    }
    let w = Weight(coords);
    if !w.is_dominant() {
        return Err(Error::NotDominant(w.to_string()).into());
    }
    Ok(w)
}

fn emit(common: &Common, text: &str) -> Result<(), CliError> {
    match &common.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_crystal(args: &CrystalArgs) -> Result<bool, CliError> {
    let ctx = TypeContext::new(args.type_label.parse::<TypeLabel>()?);
    let crystal = ctx.crystal(&parse_lambda(&args.lambda, ctx.cartan.rank)?)?;
    let text = match args.common.format {
        Format::Text => render::crystal_text(&crystal),
        Format::Json => render::crystal_json(&crystal),
        Format::Dot => render::crystal_dot(&crystal, None),
    };
    emit(&args.common, &text)?;
    Ok(true)
}

fn cmd_demazure(args: &DemazureArgs) -> Result<bool, CliError> {
    let ctx = TypeContext::new(args.type_label.parse::<TypeLabel>()?);
    let lambda = parse_lambda(&args.lambda, ctx.cartan.rank)?;
    let word = ReducedWord::parse(&args.word, ctx.cartan.rank)?;
    ctx.weyl.require_reduced(&word)?;
    let crystal = ctx.crystal(&lambda)?;
    let members: BTreeSet<_> = demazure_blambda(&crystal, &ctx.weyl, &word)?.members;
    let sum = FormalSum::from_elements(members.iter().copied());
    let operator_side = demazure_operator_word(
        &crystal,
        word.letters(),
        &FormalSum::single(crystal.highest()),
    )?;
    let character = crystal.char_map(&sum);
    let outcome = DemazureOutcome {
        crystal: &crystal,
        word: &word,
        members: &members,
        character: &character,
        formula_holds: operator_side == sum,
    };
    let text = match args.common.format {
        Format::Text => render::demazure_text(&outcome),
        Format::Json => render::demazure_json(&outcome),
        Format::Dot => render::crystal_dot(&crystal, Some(&members)),
    };
    emit(&args.common, &text)?;
    Ok(outcome.formula_holds)
}

fn cmd_verify(args: &VerifyArgs) -> Result<bool, CliError> {
    let suites: Vec<Statement> = match &args.suite {
        None => Statement::gating_suites(),
        Some(s) => s
            .split(',')
            .map(|t| t.parse::<Statement>().map_err(CliError::Usage))
            .collect::<Result<_, _>>()?,
    };
    if suites.is_empty() {
        return Err(CliError::Usage("no suites selected".into()));
    }
    let types: Vec<TypeLabel> = match &args.type_label {
        Some(t) => vec![t.parse()?],
        None if args.lambda.is_some() || args.word.is_some() => {
            return Err(CliError::Usage("--lambda and --word need --type".into()));
        }
        None => TypeLabel::ALL.to_vec(),
    };
    let mut groups: Vec<(String, Vec<CheckReport>)> = Vec::new();
    for t in types {
        let ctx = TypeContext::new(t);
        let mut scope = Scope::grid(t);
        if let Some(l) = &args.lambda {
            scope.lambdas = vec![parse_lambda(l, ctx.cartan.rank)?];
        }
        if let Some(w) = &args.word {
            let word = ReducedWord::parse(w, ctx.cartan.rank)?;
            ctx.weyl.require_reduced(&word)?;
            scope.word = Some(word);
        }
        if let Some(d) = args.depth {
            scope.depth = d;
        }
        for &st in &suites {
            let reports = run_suite(&ctx, st, &scope)?;
            if !reports.is_empty() {
                groups.push((format!("{st} {t}"), reports));
            }
        }
    }
    let passed = groups
        .iter()
        .flat_map(|(_, r)| r)
        .all(|r| !r.gating || r.passed());
    let text = match args.common.format {
        Format::Json => render::verify_json(
            &groups
                .iter()
                .flat_map(|(_, r)| r.clone())
                .collect::<Vec<_>>(),
            passed,
        ),
        Format::Text => render::verify_text(&groups, passed),
        Format::Dot => return Err(CliError::Usage("verify has no dot output".into())),
    };
    emit(&args.common, &text)?;
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Crystal(a) => cmd_crystal(a),
        Command::Demazure(a) => cmd_demazure(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e @ CliError::Usage(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e @ CliError::Runtime(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
