use clap::{Parser, Subcommand};
use serde::Serialize;

use lgkit::catalog;
use lgkit::classify::check_invertible;
use lgkit::error::Error;
use lgkit::mirror;
use lgkit::poly::{rat_string, Polynomial};
use lgkit::report::{
    self, analyze, error_object, group_bound_from_env, AnalyzeOptions, CatalogOptions,
};

/// Exact-arithmetic toolkit for invertible weighted-homogeneous polynomial
/// singularities.
#[derive(Parser)]
#[command(name = "lgkit", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis of one polynomial; JSON on stdout.
    Analyze {
        /// Polynomial text, e.g. "x1^3 + x2^3 + x3^3".
        polynomial: String,
        /// Include the residue pairing matrix.
        #[arg(long)]
        pairing: bool,
        /// Human-readable table instead of JSON.
        #[arg(long)]
        pretty: bool,
        /// Cap on the symmetry-group enumeration (default 10^6, or
        /// LGKIT_MAX_GROUP_ORDER).
        #[arg(long)]
        max_group_order: Option<u64>,
    },
    /// Run the bundled catalog and compare against pinned expectations.
    Catalog {
        /// Only entries whose name contains this string.
        #[arg(long)]
        filter: Option<String>,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Berglund-Hübsch transpose of one polynomial.
    Transpose { polynomial: String },
    /// Standard good basis of one polynomial.
    GoodBasis { polynomial: String },
    /// FJRW state-space sectors of one polynomial.
    StateSpace { polynomial: String },
}

#[derive(Serialize)]
struct TransposeDoc {
    input: String,
    polynomial: String,
    transpose: String,
}

#[derive(Serialize)]
struct GoodBasisDoc {
    input: String,
    polynomial: String,
    good_basis: Vec<String>,
    size: u64,
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Analyze {
            polynomial,
            pairing,
            pretty,
            max_group_order,
        } => {
            let opts = AnalyzeOptions {
                pairing,
                max_group_order: max_group_order.unwrap_or_else(group_bound_from_env),
            };
            let rep = analyze(&polynomial, &opts)?;
            if pretty {
                print!("{}", report::render_pretty(&rep));
            } else {
                println!("{}", serde_json::to_string(&rep).expect("serializable report"));
            }
            Ok(0)
        }
        Command::Catalog { filter, jobs } => {
            let entries = catalog::bundled_entries()?;
            let opts = CatalogOptions {
                filter,
                jobs,
                max_group_order: group_bound_from_env(),
            };
            let rep = report::run_catalog(&entries, &opts)?;
            println!("{}", serde_json::to_string(&rep).expect("serializable report"));
            Ok(if rep.failed == 0 { 0 } else { 1 })
        }
        Command::Transpose { polynomial } => {
            let f = Polynomial::parse(&polynomial)?;
            let w = check_invertible(&f)?;
            let doc = TransposeDoc {
                input: polynomial,
                polynomial: f.to_string(),
                transpose: mirror::transpose(&w).to_string(),
            };
            println!("{}", serde_json::to_string(&doc).expect("serializable doc"));
            Ok(0)
        }
        Command::GoodBasis { polynomial } => {
            let f = Polynomial::parse(&polynomial)?;
            let w = check_invertible(&f)?;
            let basis = mirror::standard_good_basis(&w)?;
            let doc = GoodBasisDoc {
                input: polynomial,
                polynomial: f.to_string(),
                good_basis: basis.iter().map(|m| m.to_string()).collect(),
                size: basis.len() as u64,
            };
            println!("{}", serde_json::to_string(&doc).expect("serializable doc"));
            Ok(0)
        }
        Command::StateSpace { polynomial } => {
            let f = Polynomial::parse(&polynomial)?;
            let w = check_invertible(&f)?;
            let state = mirror::fjrw_state_space(&w, group_bound_from_env())?;
            #[derive(Serialize)]
            struct StateDoc {
                input: String,
                polynomial: String,
                total_dimension: u64,
                sectors: Vec<report::SectorReport>,
            }
            let doc = StateDoc {
                input: polynomial,
                polynomial: f.to_string(),
                total_dimension: state.total_dimension,
                sectors: state
                    .sectors
                    .iter()
                    .map(|s| report::SectorReport {
                        element: s.element.phases().iter().map(rat_string).collect(),
                        fixed: s.fixed.iter().map(|v| v + 1).collect(),
                        restricted: s.restricted.as_ref().map(|p| p.to_string()),
                        dimension: s.dimension,
                    })
                    .collect(),
            };
            println!("{}", serde_json::to_string(&doc).expect("serializable doc"));
            Ok(0)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("{}", error_object(&e));
            std::process::exit(e.exit_code());
        }
    }
}
