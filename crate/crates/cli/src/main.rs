mod commands;

use chevalley_cli::schema;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "chevalley", version, about = "Chevalley groups from Dynkin quiver data")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized trials and rewriting orders.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct TypeArgs {
    /// Cartan type such as A2, B3, G2.
    #[arg(long = "type", value_name = "T")]
    pub type_name: String,
    /// Arrow list such as "1>2,3>2"; defaults to i → i+1.
    #[arg(long)]
    pub orientation: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order formula, cross-checked by enumeration when small.
    Order {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        q: u64,
    },
    /// Breadth-first enumeration of a small finite group.
    Enumerate {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        q: u64,
    },
    /// Bruhat normal form u'·h·n·u of a generator word.
    Bruhat {
        #[command(flatten)]
        ty: TypeArgs,
        /// Field order; the rationals when omitted.
        #[arg(long)]
        q: Option<u64>,
        /// Word such as "E:α1:1,n:α2,E:-α1:2".
        #[arg(long)]
        word: String,
    },
    /// Commutator expansion of two root elements, verified numerically.
    Commutator {
        #[command(flatten)]
        ty: TypeArgs,
        /// Root label such as α1, -α2 or "α1+α2".
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long)]
        scheme: Option<String>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Property checks.
    Check {
        #[arg(value_enum)]
        what: CheckKind,
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        scheme: Option<String>,
        #[arg(long, default_value_t = 2)]
        trials: usize,
    },
    /// Structure constant table.
    Constants {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        scheme: Option<String>,
    },
    /// Validate a JSON report against the bundled schema ("-" reads stdin).
    Validate { path: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Jacobi,
    Steinberg,
    Poincare,
    Hall,
    Simplicity,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Command::Validate { path } = &cli.command {
        return validate(path);
    }
    let outcome = match cli.command {
        Command::Order { ty, q } => commands::order(&ty, q),
        Command::Enumerate { ty, q } => commands::enumerate(&ty, q),
        Command::Bruhat { ty, q, word } => commands::bruhat(&ty, q, &word, cli.seed),
        Command::Commutator { ty, x, y, scheme, q, trials } => {
            commands::commutator(&ty, &x, &y, scheme.as_deref(), q, trials, cli.seed)
        }
        Command::Check { what, ty, q, scheme, trials } => {
            commands::check(what, &ty, q, scheme.as_deref(), trials, cli.seed)
        }
        Command::Constants { ty, scheme } => commands::constants(&ty, scheme.as_deref()),
        Command::Validate { .. } => unreachable!(),
    };
    match outcome {
        Ok(report) => {
            report.print(cli.format, cli.seed);
            ExitCode::from(if report.ok { 0 } else { 1 })
        }
        Err(commands::CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(commands::CliError::Failure(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
    }
}

fn validate(path: &str) -> ExitCode {
    let text = if path == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    };
    let value: serde_json::Value = match text.map_err(|e| e.to_string()).and_then(|t| {
        serde_json::from_str(&t).map_err(|e| e.to_string())
    }) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let errs = schema::validate(&schema::report_schema(), &value);
    for e in &errs {
        println!("{e}");
    }
    if errs.is_empty() {
        println!("valid");
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
