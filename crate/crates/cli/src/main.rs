use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use holokit_cli::{parse_pairs, render_text, run, Command, Input, JobSpec};

#[derive(Parser)]
#[command(name = "holokit", version, about = "Holonomy Lie algebras, Chen ranks and mildness of finitely presented groups")]
struct Cli {
    /// Presentation file
    #[arg(long, global = true, conflicts_with = "family")]
    file: Option<PathBuf>,
    /// Builtin family, e.g. "surface g=2", "borromean", "seifert g=1 pairs=2/1 b=0"
    #[arg(long, global = true)]
    family: Option<String>,
    /// Largest degree computed
    #[arg(long, global = true, default_value_t = 6)]
    degree: usize,
    /// Weight search cap
    #[arg(long, global = true, default_value_t = holokit::ncseries::DEFAULT_WEIGHT_CAP)]
    cap: usize,
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Run jobs above the resource limit
    #[arg(long, global = true)]
    force: bool,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Fox Jacobian, Hermite form and echelon approximation
    Echelon,
    /// Cup products H1 x H1 -> H2
    Cup,
    /// Holonomy Lie algebra and its graded dimensions
    Holonomy,
    /// Dimensions of a solvable quotient of the holonomy Lie algebra
    Chen {
        /// Derived length
        #[arg(long, default_value_t = 2)]
        i: usize,
    },
    /// Dimensions of the initial-form Lie algebra
    Lgdims,
    /// LCS and Chen rank tables
    Ranks,
    /// Mildness tests
    Mild {
        /// Generator ordering, largest first, e.g. x2,x1,x3
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<String>>,
    },
    /// Graded formality comparison
    Formality,
    /// Seifert fibered manifold groups
    Seifert {
        #[arg(long)]
        g: usize,
        /// Exceptional fibers a/b separated by commas
        #[arg(long, default_value = "")]
        pairs: String,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        b: i64,
    },
    /// Link groups from a linking matrix
    Link {
        /// Rows separated by ';', entries by ','
        #[arg(long)]
        matrix: Option<String>,
    },
}

fn configure_threads() {
    if let Some(n) = std::env::var("HOLOKIT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let command = match cli.command {
        Sub::Echelon => Command::Echelon,
        Sub::Cup => Command::Cup,
        Sub::Holonomy => Command::Holonomy,
        Sub::Chen { i } => Command::Chen { i },
        Sub::Lgdims => Command::Lgdims,
        Sub::Ranks => Command::Ranks,
        Sub::Mild { order } => Command::Mild { order },
        Sub::Formality => Command::Formality,
        Sub::Seifert { g, pairs, b } => match parse_pairs(&pairs) {
            Ok(pairs) => Command::Seifert { g, pairs, b },
            Err(e) => {
                eprintln!("holokit: {e}");
                return ExitCode::from(e.exit_code());
            }
        },
        Sub::Link { matrix } => Command::Link { matrix },
    };
    let input = match (cli.file, cli.family) {
        (Some(f), _) => Input::File(f),
        (None, Some(d)) => Input::Family(d),
        (None, None) => Input::None,
    };
    let job = JobSpec { input, command, max_degree: cli.degree, cap: cli.cap, force: cli.force };
    match run(&job) {
        Ok(report) => {
            let text = if cli.json {
                serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
            } else {
                render_text(&report)
            };
            // A closed pipe (e.g. `| head`) is not an error.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("holokit: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
