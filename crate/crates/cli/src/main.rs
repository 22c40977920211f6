use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tracegate_cli::commands::{
    cmd_analyze, cmd_compositum, cmd_corpus, cmd_decompose, cmd_different, cmd_multiquadratic, cmd_trace_index,
    cmd_verify_example, ComposeMode, GlobalOpts,
};
use tracegate_cli::corpus::Suites;

#[derive(Parser)]
#[command(name = "tracegate", version, about = "Trace-module index, ramification and differents of number fields")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Accept polynomials whose irreducibility the sieve cannot certify.
    #[arg(long, global = true)]
    assert_irreducible: bool,
    /// Accept non-monic input at parse time (field construction still rejects it).
    #[arg(long, global = true)]
    allow_nonmonic: bool,
    /// Worker threads for corpus runs.
    #[arg(long, global = true, default_value_t = 1)]
    parallel: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: maximal order, t_L, splitting, different, theorem checks.
    Analyze { poly: String },
    /// Prime ideals above p.
    Decompose {
        poly: String,
        #[arg(short)]
        p: String,
    },
    /// Codifferent, different and its norm.
    Different { poly: String },
    /// t_L and a witness of trace t_L.
    TraceIndex { poly: String },
    /// Compositum of two or more fields.
    Compositum {
        #[arg(required = true, num_args = 2..)]
        polys: Vec<String>,
        #[arg(long, value_enum, default_value_t)]
        mode: ComposeMode,
    },
    /// ℚ(√m₁, …, √m_s) with mᵢ ≡ 1 mod 4 and the element ∏(1+√mᵢ)/2.
    Multiquadratic {
        #[arg(short, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        m: Vec<String>,
        /// Also compute t_L through a primitive element and the maximal order.
        #[arg(long)]
        check_order: bool,
    },
    /// Corpus files.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Reproduce the x^6+x^4+5x^2+1 example.
    VerifyPaper {
        /// Run the checklist against a different polynomial.
        #[arg(long)]
        poly: Option<String>,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    Run {
        file: PathBuf,
        #[command(flatten)]
        suites: SuiteFlags,
    },
}

#[derive(Args)]
struct SuiteFlags {
    #[arg(long)]
    thm1: bool,
    #[arg(long)]
    thm2: bool,
    #[arg(long)]
    lemma1: bool,
    #[arg(long)]
    lemma2: bool,
    #[arg(long)]
    norm_different: bool,
    #[arg(long)]
    thm3: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = GlobalOpts {
        json: cli.json,
        assert_irreducible: cli.assert_irreducible,
        allow_nonmonic: cli.allow_nonmonic,
        parallel: cli.parallel,
    };
    let result = match &cli.command {
        Command::Analyze { poly } => cmd_analyze(poly, opts),
        Command::Decompose { poly, p } => cmd_decompose(poly, p, opts),
        Command::Different { poly } => cmd_different(poly, opts),
        Command::TraceIndex { poly } => cmd_trace_index(poly, opts),
        Command::Compositum { polys, mode } => cmd_compositum(polys, *mode, opts),
        Command::Multiquadratic { m, check_order } => cmd_multiquadratic(m, *check_order),
        Command::Corpus { action: CorpusAction::Run { file, suites } } => {
            let s = Suites {
                thm1: suites.thm1,
                thm2: suites.thm2,
                lemma1: suites.lemma1,
                lemma2: suites.lemma2,
                norm_different: suites.norm_different,
                thm3: suites.thm3,
            };
            cmd_corpus(file, s, opts)
        }
        Command::VerifyPaper { poly } => cmd_verify_example(poly.as_deref(), opts),
    };
    match result {
        Ok(out) => {
            print!("{}", out.render(cli.json));
            ExitCode::from(out.exit_code as u8)
        }
        Err(e) => {
            if cli.json {
                println!("{}", serde_json::json!({ "error": e.to_string(), "exit_code": e.exit_code() }));
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
