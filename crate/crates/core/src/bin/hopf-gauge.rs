use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hopf_gauge::report::{self, family_params, CaseSelector, ConfigPatch, ReportDocument, RunConfig};
use hopf_gauge::Error;

#[derive(Parser)]
#[command(name = "hopf-gauge", version, about = "Monopole and instanton projectors: identities, connections and charges")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Projector identities, connection anti-hermiticity and Chern numbers.
    Verify(Flags),
    /// Gauge transformation of the projector `p` by a matrix, the conformal
    /// family, or a seeded random unitary.
    Gauge(Flags),
    /// Algebra axioms, exterior calculus, supergroup identities and quadrature.
    Selftest(Flags),
}

#[derive(Args)]
struct Flags {
    /// monopole, graded, instanton or all.
    #[arg(long, value_parser = parse_case)]
    case: Option<CaseSelector>,
    /// Only the transposed projectors `q`.
    #[arg(long)]
    transposed: bool,
    /// Gauss–Legendre points per axis on S².
    #[arg(long, value_name = "N")]
    s2_order: Option<usize>,
    /// Gauss–Legendre points per axis on S⁴.
    #[arg(long, value_name = "N")]
    s4_order: Option<usize>,
    /// Charge tolerance.
    #[arg(long, value_name = "X")]
    tol: Option<f64>,
    /// Number of Grassmann generators (even, 2 to 16).
    #[arg(long, value_name = "L")]
    grassmann_l: Option<usize>,
    #[arg(long, value_name = "S")]
    seed: Option<u64>,
    /// Sample count for every randomized check.
    #[arg(long, value_name = "K")]
    samples: Option<usize>,
    /// Write the JSON report here instead of standard output.
    #[arg(long, value_name = "PATH")]
    report: Option<PathBuf>,
    /// Conformal family element: λ c1 c2 c3 c4.
    #[arg(long, num_args = 5, allow_negative_numbers = true, value_names = ["λ", "c1", "c2", "c3", "c4"])]
    family: Option<Vec<f64>>,
    /// Gauge element as flat reals: 8 for GL(2,C), 16 for GL(2,H), 8 for (a, b, η).
    #[arg(long, num_args = 1.., value_delimiter = ',', allow_negative_numbers = true)]
    g: Option<Vec<f64>>,
    /// key = value file with the same settings; flags win.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

fn parse_case(s: &str) -> Result<CaseSelector, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl Flags {
    fn config(self) -> hopf_gauge::Result<RunConfig> {
        let file = match &self.config {
            Some(p) => ConfigPatch::from_file(p)?,
            None => ConfigPatch::default(),
        };
        let family = self.family.as_deref().map(family_params).transpose()?;
        let flags = ConfigPatch {
            case: self.case,
            transposed: self.transposed.then_some(true),
            s2_order: self.s2_order,
            s4_order: self.s4_order,
            tol: self.tol,
            grassmann_l: self.grassmann_l,
            seed: self.seed,
            samples: self.samples,
            report: self.report,
            g: self.g,
            family,
        };
        let cfg = RunConfig::default().apply(file).apply(flags);
        cfg.validate()?;
        Ok(cfg)
    }
}

fn run(cli: Cli) -> hopf_gauge::Result<ReportDocument> {
    match cli.command {
        Command::Verify(f) => report::cmd_verify(&f.config()?),
        Command::Gauge(f) => report::cmd_gauge(&f.config()?),
        Command::Selftest(f) => report::cmd_selftest(&f.config()?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(doc) => {
            match &doc.config.report {
                Some(path) => {
                    if let Err(e) = doc.write(path) {
                        eprintln!("error: {e}");
                        return ExitCode::from(1);
                    }
                    print!("{}", doc.summary());
                    println!("report written to {}", path.display());
                }
                None => {
                    print!("{}", doc.to_json());
                    eprint!("{}", doc.summary());
                }
            }
            ExitCode::from(doc.exit_code() as u8)
        }
        Err(e @ Error::Usage(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
