//! `regcli` command-line front end.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::bench::{
    gen_case, real_life_run, sweep, CaseKind, CaseSpec, EvaluationGrid, Method, MethodSpec, ParamRange, Reference,
};
use crate::config::parse_config;
use crate::error::{Error, Result};
use crate::io;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "regcli", version, about = "Landmark-based registration transforms and benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the landmarks of a generated test case.
    GenCase {
        #[arg(long, value_parser = parse_case)]
        case: CaseKind,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Square center `x,y`.
        #[arg(long, value_parser = parse_pair)]
        center: Option<[f64; 2]>,
        /// Square side length.
        #[arg(long)]
        side: Option<f64>,
        /// Square shift `dx,dy`.
        #[arg(long, value_parser = parse_pair)]
        shift: Option<[f64; 2]>,
        /// Square scaling factor.
        #[arg(long)]
        scale: Option<f64>,
        /// Radius of the deformed circle.
        #[arg(long)]
        inner_radius: Option<f64>,
        /// Radius the inner circle is mapped to.
        #[arg(long)]
        target_radius: Option<f64>,
        /// Radius of the ring of quasi-landmarks.
        #[arg(long)]
        outer_radius: Option<f64>,
    },
    /// Solve a transformation and evaluate it on a regular grid.
    Solve {
        #[arg(long)]
        landmarks: PathBuf,
        #[arg(long)]
        config: PathBuf,
        /// Grid CSV output (`x,y,fx,fy`).
        #[arg(long)]
        grid_out: Option<PathBuf>,
        /// SVG plot of the deformed grid.
        #[arg(long)]
        svg_out: Option<PathBuf>,
        #[arg(long, default_value_t = 40)]
        rows: usize,
        #[arg(long, default_value_t = 40)]
        cols: usize,
    },
    /// Sweep a method's shape parameter on a generated case.
    Sweep {
        #[arg(long, value_parser = parse_case)]
        case: CaseKind,
        /// Method name, or `all`.
        #[arg(long)]
        method: String,
        /// Map the transformation is compared with.
        #[arg(long, value_enum)]
        reference: ReferenceArg,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, requires = "stop")]
        start: Option<f64>,
        #[arg(long, requires = "start")]
        stop: Option<f64>,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Shepard nodal neighborhood size.
        #[arg(long)]
        n_l: Option<usize>,
        /// Shepard weight neighborhood size.
        #[arg(long)]
        n_w: Option<usize>,
    },
    /// RMSE between the deformed points of two grid files.
    Rmse {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Render a grid file as SVG.
    Render {
        #[arg(long)]
        grid: PathBuf,
        #[arg(long)]
        landmarks: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the six-method comparison on the real-life landmarks.
    RealLife {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReferenceArg {
    Identity,
    Truth,
}

fn parse_case(s: &str) -> std::result::Result<CaseKind, String> {
    CaseKind::from_name(s).ok_or_else(|| {
        let names: Vec<&str> = CaseKind::ALL.iter().map(|k| k.name()).collect();
        format!("unknown case `{s}` (expected one of {})", names.join(", "))
    })
}

fn parse_pair(s: &str) -> std::result::Result<[f64; 2], String> {
    let (a, b) = s.split_once(',').ok_or("expected `x,y`")?;
    let p = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("`{v}`: {e}"));
    Ok([p(a)?, p(b)?])
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("regcli: {e}");
            if e.is_numerical() {
                EXIT_NUMERICAL
            } else {
                EXIT_USAGE
            }
        }
    }
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::GenCase { case, out, center, side, shift, scale, inner_radius, target_radius, outer_radius } => {
            let mut spec = CaseSpec::new(case);
            if let Some(v) = center {
                spec.square.center = v;
            }
            if let Some(v) = side {
                spec.square.side = v;
            }
            if let Some(v) = shift {
                spec.square.shift = v;
            }
            if let Some(v) = scale {
                spec.square.scale = v;
            }
            if let Some(v) = inner_radius {
                spec.circle.inner_radius = v;
            }
            if let Some(v) = target_radius {
                spec.circle.target_radius = v;
            }
            if let Some(v) = outer_radius {
                spec.circle.outer_radius = v;
            }
            let case = gen_case(&spec)?;
            emit(out.as_deref(), &io::write_landmarks(&case.landmarks)?)
        }
        Command::Solve { landmarks, config, grid_out, svg_out, rows, cols } => {
            let set = io::parse_landmarks(&read(&landmarks)?)?;
            let spec = parse_config(&read(&config)?)?;
            let t = spec.build(&set)?;
            let grid = EvaluationGrid::unit(rows, cols)?;
            let deformed = grid.mapped(&t);
            println!("landmarks: {}", set.len());
            println!("residual: {:e}", t.residual());
            println!("condition: {:e}", t.condition());
            if t.condition() > crate::transform::ILL_CONDITIONED {
                eprintln!("warning: condition estimate {:e} exceeds {:e}", t.condition(), crate::transform::ILL_CONDITIONED);
            }
            if let Some(p) = grid_out {
                fs::write(p, io::write_grid(&grid, &deformed)?)?;
            }
            if let Some(p) = svg_out {
                fs::write(p, io::render_grid_svg(&grid, &deformed, Some(&set))?)?;
            }
            Ok(())
        }
        Command::Sweep { case, method, reference, out, start, stop, count, n_l, n_w } => {
            let methods: Vec<Method> = if method == "all" {
                Method::ALL.to_vec()
            } else {
                vec![Method::from_name(&method).ok_or_else(|| {
                    let names: Vec<&str> = Method::ALL.iter().map(|m| m.name()).collect();
                    Error::Config(format!("unknown method `{method}` (expected all or one of {})", names.join(", ")))
                })?]
            };
            let reference = match reference {
                ReferenceArg::Identity => Reference::Identity,
                ReferenceArg::Truth => Reference::Truth,
            };
            let range = match (start, stop) {
                (Some(start), Some(stop)) => Some(ParamRange { start, stop, count }),
                _ => None,
            };
            let case = gen_case(&CaseSpec::new(case))?;
            let reports = methods
                .into_iter()
                .map(|m| {
                    let mut spec = MethodSpec::for_case(m, &case);
                    spec.n_local = n_l.unwrap_or(spec.n_local);
                    spec.n_weight = n_w.unwrap_or(spec.n_weight);
                    sweep(&spec, &case, range, reference)
                })
                .collect::<Result<Vec<_>>>()?;
            emit(out.as_deref(), &io::write_sweep_reports(&reports))
        }
        Command::Rmse { a, b } => {
            let (ga, fa) = io::parse_grid(&read(&a)?)?;
            let (gb, fb) = io::parse_grid(&read(&b)?)?;
            if ga != gb {
                return Err(Error::Domain("grid files are not defined on the same points".into()));
            }
            println!("{}", crate::bench::rmse_between(fa.points(), fb.points())?);
            Ok(())
        }
        Command::Render { grid, landmarks, out } => {
            let (original, deformed) = io::parse_grid(&read(&grid)?)?;
            let set = landmarks.map(|p| read(&p).and_then(|t| io::parse_landmarks(&t))).transpose()?;
            emit(out.as_deref(), &io::render_grid_svg(&original, &deformed, set.as_ref())?)
        }
        Command::RealLife { out } => {
            let rows = real_life_run(&Method::REAL_LIFE)?;
            emit(out.as_deref(), &io::write_real_life(&rows))
        }
    }
}
