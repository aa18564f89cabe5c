//! Command-line front end. [`run`] parses arguments, dispatches one
//! subcommand and writes its report; the return value is the exit code.

mod parse;
mod report;

pub use parse::{
    parse_algebra, parse_elements, parse_point, parse_polynomial, parse_presentation,
    print_presentation, ParseError,
};
pub use report::OutputFormat;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::kaehler::{conormal_check, omega_fiber_dim, omega_presentation, KaehlerError};
use crate::lifting::{check_square_zero, lift_hom, verify_hom, AlgebraHom, LiftingError};
use crate::smoothness::{
    charts_from, is_standard_smooth, smooth_at_point, smooth_locus_with, verdict_from, Parallelism,
    Presentation, SmoothnessError,
};

use report::{
    AtReport, ChartReport, CheckReport, ConormalJson, LiftReport, LocusReport, OmegaReport, Render,
};

#[derive(Parser, Debug)]
#[command(
    name = "smoothlocus",
    version,
    about = "Smoothness, smooth loci and lifting for k[x]/(f)"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Worker threads for the smooth-locus pieces; 1 runs sequentially
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for randomized checks (accepted for test harnesses; results are deterministic)
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide global smoothness, with a certificate
    Check { file: PathBuf },
    /// The smooth locus, piece by piece
    Locus { file: PathBuf },
    /// Smoothness at a rational point
    At {
        file: PathBuf,
        #[arg(long)]
        point: String,
    },
    /// Standard-smooth charts covering the smooth locus
    Charts { file: PathBuf },
    /// Presentation of the module of differentials
    Omega {
        file: PathBuf,
        #[arg(long)]
        point: Option<String>,
    },
    /// Lift a hom into A/Z to a hom into A
    Lift {
        file: PathBuf,
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        hom: String,
        #[arg(long)]
        free: Option<String>,
    },
}

/// Failure classes with their exit codes.
enum Failure {
    /// Parse or usage error, exit 1.
    Input(String),
    /// Precondition violated, exit 2.
    Precondition(String),
    /// Precondition violated, with a report still written to stdout.
    Report { body: String, message: String },
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read_presentation(path: &Path) -> Result<Presentation, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_presentation(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn internal(e: impl std::fmt::Display) -> Failure {
    Failure::Precondition(e.to_string())
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    1
                }
            };
        }
    };
    let result = match cli.jobs {
        Some(n) if n > 1 => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli, Parallelism::Parallel)),
            Err(e) => Err(Failure::Input(e.to_string())),
        },
        Some(_) => dispatch(&cli, Parallelism::Sequential),
        None => dispatch(&cli, Parallelism::Parallel),
    };
    match result {
        Ok(body) => {
            let _ = out.write_all(body.as_bytes());
            0
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Precondition(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Report { body, message }) => {
            let _ = out.write_all(body.as_bytes());
            let _ = writeln!(err, "error: {message}");
            2
        }
    }
}

fn render<R: Render>(r: &R, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => r.json(),
        OutputFormat::Text => r.text(),
    }
}

fn dispatch(cli: &Cli, par: Parallelism) -> Result<String, Failure> {
    let fmt = cli.format;
    match &cli.command {
        Command::Check { file } => {
            let pres = read_presentation(file)?;
            let locus = smooth_locus_with(&pres, par).map_err(internal)?;
            let verdict = verdict_from(&pres, &locus).map_err(internal)?;
            let standard = is_standard_smooth(&pres).map_err(internal)?;
            Ok(render(&CheckReport::new(&pres, &verdict, standard), fmt))
        }
        Command::Locus { file } => {
            let pres = read_presentation(file)?;
            let locus = smooth_locus_with(&pres, par).map_err(internal)?;
            Ok(render(&LocusReport::new(&pres, &locus), fmt))
        }
        Command::At { file, point } => {
            let pres = read_presentation(file)?;
            let pt = parse_point(point, &pres)?;
            match smooth_at_point(&pres, &pt) {
                Ok(v) => Ok(render(&AtReport::new(&pres, Some(&v)), fmt)),
                Err(SmoothnessError::PointOffVariety(i)) => Err(Failure::Report {
                    body: render(&AtReport::new(&pres, None), fmt),
                    message: SmoothnessError::PointOffVariety(i).to_string(),
                }),
                Err(e) => Err(Failure::Input(e.to_string())),
            }
        }
        Command::Charts { file } => {
            let pres = read_presentation(file)?;
            let locus = smooth_locus_with(&pres, par).map_err(internal)?;
            let charts = charts_from(&pres, &locus).map_err(internal)?;
            Ok(render(&ChartReport::new(&pres, &charts), fmt))
        }
        Command::Omega { file, point } => {
            let pres = read_presentation(file)?;
            let om = omega_presentation(&pres);
            let (fiber, conormal) = match point {
                None => (None, None),
                Some(spec) => {
                    let pt = parse_point(spec, &pres)?;
                    let fiber = omega_fiber_dim(&pres, &pt).map_err(|e| match e {
                        KaehlerError::Smoothness(SmoothnessError::PointOffVariety(_)) => {
                            Failure::Precondition(e.to_string())
                        }
                        other => Failure::Input(other.to_string()),
                    })?;
                    let conormal = conormal_check(&pres, &pt).ok().map(ConormalJson::from);
                    (Some(fiber), conormal)
                }
            };
            Ok(render(&OmegaReport::new(&om, fiber, conormal), fmt))
        }
        Command::Lift {
            file,
            algebra,
            hom,
            free,
        } => {
            let pres = read_presentation(file)?;
            let text = std::fs::read_to_string(algebra)
                .map_err(|e| Failure::Input(format!("{}: {e}", algebra.display())))?;
            let data = parse_algebra(&text)
                .map_err(|e| Failure::Input(format!("{}: {e}", algebra.display())))?;
            if data.algebra.field() != pres.field() {
                return Err(Failure::Input(
                    "algebra and presentation have different fields".into(),
                ));
            }
            if !check_square_zero(&data) {
                return Err(Failure::Precondition(
                    LiftingError::NotSquareZero.to_string(),
                ));
            }
            let quot = data.quotient().map_err(internal)?;
            let images = parse_elements(hom, pres.var_names(), &quot)?
                .into_iter()
                .enumerate()
                .map(|(j, e)| {
                    e.ok_or_else(|| {
                        Failure::Input(format!("no image for variable `{}`", pres.var_names()[j]))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            let c = pres.nrelators().min(pres.nvars());
            let free_elems = match free {
                None => None,
                Some(spec) => {
                    let parsed = parse_elements(spec, pres.var_names(), &data.algebra)?;
                    if let Some(j) = (0..c).find(|&j| parsed[j].is_some()) {
                        return Err(Failure::Input(format!(
                            "`{}` is solved for and cannot take a free correction",
                            pres.var_names()[j]
                        )));
                    }
                    Some(
                        parsed[c..]
                            .iter()
                            .map(|e| e.clone().unwrap_or_else(|| data.algebra.zero()))
                            .collect::<Vec<_>>(),
                    )
                }
            };
            let lifted = lift_hom(&pres, &data, &AlgebraHom { images }, free_elems.as_deref())
                .map_err(|e| match e {
                    LiftingError::Poly(p) => Failure::Input(p.to_string()),
                    other => Failure::Precondition(other.to_string()),
                })?;
            let verified = verify_hom(&pres, &data.algebra, &lifted).map_err(internal)?;
            Ok(render(
                &LiftReport::new(&pres, &data.algebra, &lifted, verified),
                fmt,
            ))
        }
    }
}
