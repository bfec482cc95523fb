use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cuspdef::cyclo::Cyclo;
use cuspdef::report::{self, Suite};
use cuspdef::singularity::{self, DeformationPoint, GermPresentation, Mode, SingularPointRecord, SingularityError};
use cuspdef::Polynomial;

#[derive(Parser)]
#[command(name = "cuspdef", version, about = "Exact computations on deformations of the threefold cusp")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monomial basis of the Tjurina algebra of a germ at the origin.
    Tjurina {
        expr: String,
        /// Comma-separated variables (default: order of appearance).
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
        #[arg(long)]
        json: bool,
    },
    /// Singular points of the fiber over (lambda, mu, nu, sigma).
    ///
    /// The fiber is x^2 - y^3 - z^2 + w^3 + lambda + mu*y - nu*w + sigma*y*w.
    Singular {
        #[arg(short = 'l', long, visible_alias = "λ", default_value = "0", allow_hyphen_values = true)]
        lambda: String,
        #[arg(short = 'm', long, visible_alias = "μ", default_value = "0", allow_hyphen_values = true)]
        mu: String,
        #[arg(short = 'n', long, visible_alias = "ν", default_value = "0", allow_hyphen_values = true)]
        nu: String,
        #[arg(short = 's', long, visible_alias = "σ", default_value = "0", allow_hyphen_values = true)]
        sigma: String,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
        #[arg(long)]
        json: bool,
    },
    /// Run check suites and print a report.
    Verify {
        #[arg(long, default_value = "all", value_parser = ["all", "S", "C", "fa", "blowup", "friedman"])]
        suite: String,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Numeric,
}

/// Failure with the exit status to report.
struct Failure(u8, String);

fn usage(msg: impl std::fmt::Display) -> Failure {
    Failure(2, msg.to_string())
}

#[derive(Serialize)]
struct TjurinaOut {
    basis: Vec<String>,
    tjurina: usize,
}

#[derive(Serialize)]
struct PointOut {
    coords: Vec<String>,
    class: String,
    hessian_rank: usize,
    multiplicity: Option<usize>,
}

impl From<&SingularPointRecord> for PointOut {
    fn from(r: &SingularPointRecord) -> Self {
        PointOut {
            coords: r.coords.display_entries(),
            class: r.klass.to_string(),
            hessian_rank: r.hessian_rank,
            multiplicity: r.multiplicity,
        }
    }
}

fn tjurina(expr: &str, vars: Option<Vec<String>>, json: bool) -> Result<bool, Failure> {
    let refs: Option<Vec<&str>> = vars.as_ref().map(|v| v.iter().map(|s| s.trim()).collect());
    let germ = GermPresentation::parse(expr, refs.as_deref()).map_err(|e| usage(format!("parse error: {}", e)))?;
    let basis = singularity::tjurina_basis(&germ).map_err(|e| Failure(1, e.to_string()))?;
    let table = germ.f.table();
    let names: Vec<String> =
        basis.iter().map(|m| Polynomial::monomial(table, m.clone(), Cyclo::from_int(1)).to_string()).collect();
    if json {
        print_json(&TjurinaOut { tjurina: names.len(), basis: names });
    } else {
        println!("basis: {}", if names.is_empty() { "(empty)".to_string() } else { names.join(", ") });
        println!("tjurina: {}", names.len());
    }
    Ok(true)
}

fn parse_coord(name: &str, text: &str) -> Result<Cyclo, Failure> {
    text.parse().map_err(|_| usage(format!("cannot read {} = `{}` as an element of Q(eps)", name, text)))
}

fn singular(coords: [(&str, &str); 4], mode: ModeArg, json: bool) -> Result<bool, Failure> {
    let [l, m, n, s] = coords.map(|(name, text)| parse_coord(name, text));
    let point = DeformationPoint::exact(l?, m?, n?, s?);
    let mode = match mode {
        ModeArg::Exact => Mode::Exact,
        ModeArg::Numeric => Mode::Numeric,
    };
    let records = singularity::singular_locus(&point, mode).map_err(|e| {
        let hint = match e {
            SingularityError::ExactFactorizationFailed(_) => " (--mode numeric)",
            _ => "",
        };
        Failure(1, format!("{}{}", e, hint))
    })?;
    let out: Vec<PointOut> = records.iter().map(PointOut::from).collect();
    if json {
        print_json(&out);
    } else if out.is_empty() {
        println!("smooth fiber");
    } else {
        for (r, p) in records.iter().zip(&out) {
            match p.multiplicity {
                Some(k) if k > 1 => println!("{}  {}  hessian rank {}  multiplicity {}", r.coords, p.class, p.hessian_rank, k),
                _ => println!("{}  {}  hessian rank {}", r.coords, p.class, p.hessian_rank),
            }
        }
    }
    Ok(true)
}

fn verify(suite: &str, json: bool, seed: u64) -> Result<bool, Failure> {
    let suite: Suite = suite.parse().map_err(usage)?;
    let rep = report::run(suite, seed);
    if json {
        print_json(&rep);
    } else {
        println!("{}", rep);
    }
    Ok(rep.ok())
}

fn print_json<T: Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("plain data serializes"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Tjurina { expr, vars, json } => tjurina(&expr, vars, json),
        Command::Singular { lambda, mu, nu, sigma, mode, json } => {
            singular([("lambda", &lambda), ("mu", &mu), ("nu", &nu), ("sigma", &sigma)], mode, json)
        }
        Command::Verify { suite, json, seed } => verify(&suite, json, seed),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure(code, msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(code)
        }
    }
}
