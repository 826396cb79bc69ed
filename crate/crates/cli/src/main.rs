use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

use commands::{Outcome, Status};

#[derive(Parser, Debug)]
#[command(
    name = "mapstrata",
    version,
    about = "Strata, limits and topology of spaces of maps P^1 -> P^n"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, env = "MAPSTRATA_JOBS", global = true)]
    jobs: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Torsion degree, stratum and rank profile of a point, checked against the gcd.
    Classify {
        file: PathBuf,
        /// Read the coefficients in this field ("Q" or "Fp:p") instead of the declared one.
        #[arg(long)]
        field: Option<String>,
        /// Largest k in the rank profile (default d+1).
        #[arg(long)]
        k: Option<usize>,
    },
    /// Wedge coordinates of an interior point, or the limit along a family.
    Wedge {
        file: PathBuf,
        #[arg(long)]
        field: Option<String>,
        /// Size parameter of the resultant matrix (default d-1).
        #[arg(long)]
        m: Option<usize>,
        /// Skip vanishing coordinates in the text listing.
        #[arg(long)]
        nonzero_only: bool,
    },
    /// Limit of the wedge coordinates along a one-parameter family.
    Limit {
        file: PathBuf,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        nonzero_only: bool,
    },
    /// Count the points of each stratum of N_d over F_p.
    Census {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u32,
        /// Raise the cap on enumerated vectors.
        #[arg(long)]
        unsafe_census_limit: Option<u64>,
    },
    /// Check the determinantal-ideal identities on the chart a_00 != 0.
    Ideals {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        k: usize,
        /// For k > 0, also compare I_(k+2+m)(C_m) with I_(2k+2)(C_k) (not a theorem).
        #[arg(long)]
        experimental: bool,
        #[arg(long)]
        unsafe_groebner_vars: Option<usize>,
        #[arg(long)]
        unsafe_groebner_degree: Option<u32>,
    },
    /// Hodge polynomial, Betti numbers and Picard check for M_d.
    Hodge {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        /// Evaluate the polynomial at these prime powers as point-count predictions.
        #[arg(long, value_delimiter = ',')]
        p: Vec<i64>,
    },
    /// Quick consistency checks across all modules.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn dispatch(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Classify { file, field, k } => commands::classify(file, field.as_deref(), *k),
        Command::Wedge {
            file,
            field,
            m,
            nonzero_only,
        } => commands::wedge(file, field.as_deref(), *m, *nonzero_only, false),
        Command::Limit {
            file,
            m,
            nonzero_only,
        } => commands::wedge(file, None, *m, *nonzero_only, true),
        Command::Census {
            d,
            n,
            p,
            unsafe_census_limit,
        } => commands::census(*d, *n, *p, *unsafe_census_limit),
        Command::Ideals {
            d,
            n,
            m,
            k,
            experimental,
            unsafe_groebner_vars,
            unsafe_groebner_degree,
        } => commands::ideals(
            *d,
            *n,
            *m,
            *k,
            *experimental,
            *unsafe_groebner_vars,
            *unsafe_groebner_degree,
        ),
        Command::Hodge { d, n, p } => commands::hodge(*d, *n, p),
        Command::Selftest { seed } => commands::selftest(*seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: cannot set up {jobs} worker threads: {e}");
            return ExitCode::from(Status::InputError as u8);
        }
    }
    let outcome = dispatch(&cli);
    let body = match cli.global.format {
        Format::Text => outcome.text.clone(),
        Format::Json => mapstrata::format::canonical_json(&outcome.json),
    };
    match &cli.global.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(Status::InputError as u8);
            }
        }
        None => print!("{body}"),
    }
    for line in &outcome.errors {
        eprintln!("{line}");
    }
    ExitCode::from(outcome.status as u8)
}
