//! `lsradii`: Lommel/Struve function values, zeros, radii of β-uniform
//! convexity of order α, sweep tables and the verification suite.

mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use lommel_struve::forms::Form;
use lommel_struve::kernel::{Kernel, ZeroTarget};
use lommel_struve::radius::{radius, UniformityParams};
use lommel_struve::series::SeriesConfig;
use lommel_struve::sweep::{sign_changes, strictly_decreasing, sweep, write_csv, FigurePreset, SweepRow};
use lommel_struve::verify::{run_suite, CheckStatus};
use lommel_struve::zeros::{interlacing_check, kernel_zero_table, ZeroOptions};
use lommel_struve::{Error, Family, FormKind, ShapeParam, SolverConfigF64};

use output::{emit, Format, OutputRecord};

const EXIT_VALIDATION: u8 = 1;
const EXIT_NUMERICAL: u8 = 2;
const EXIT_VERIFY: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "lsradii",
    version,
    about = "Lommel and Struve functions and radii of uniform convexity"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    #[arg(long, global = true, value_enum, default_value = "table", env = "LSRADII_FORMAT")]
    format: Format,
    /// Accept parameters outside the parameter hypotheses (warns on stderr).
    #[arg(long = "unsafe", global = true)]
    allow_unsafe: bool,
    /// Relative tolerance of the series summation.
    #[arg(long, global = true, default_value_t = 1e-15, env = "LSRADII_SERIES_TOL")]
    series_tol: f64,
    /// Bracket width of refined zeros.
    #[arg(long, global = true, default_value_t = 1e-12, env = "LSRADII_ZERO_TOL")]
    zero_tol: f64,
    /// Bracket width of the radius root.
    #[arg(long, global = true, default_value_t = 1e-12, env = "LSRADII_ROOT_TOL")]
    root_tol: f64,
    /// Report wall time on stderr.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Debug, Args)]
struct ParamArgs {
    /// μ for the Lommel forms f, g, h.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "nu")]
    mu: Option<f64>,
    /// ν for the Struve forms u, v, w.
    #[arg(long, allow_negative_numbers = true)]
    nu: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KernelName {
    Lommel,
    Struve,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TargetName {
    Lommel,
    LommelDeriv,
    Struve,
    StruveDeriv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a normalized form or a kernel at z > 0.
    Eval {
        #[arg(long, value_parser = parse_form, conflicts_with = "kernel", required_unless_present = "kernel")]
        form: Option<FormKind>,
        #[arg(long, value_enum)]
        kernel: Option<KernelName>,
        #[command(flatten)]
        param: ParamArgs,
        #[arg(long, allow_negative_numbers = true)]
        z: f64,
        /// Derivative order 0, 1 or 2 (kernels only).
        #[arg(long, default_value_t = 0)]
        deriv: usize,
        /// Also print 1 + zF''/F' (forms only).
        #[arg(long)]
        curvature: bool,
    },
    /// Tabulate the first positive zeros of a kernel or its derivative.
    Zeros {
        #[arg(long, value_enum)]
        target: TargetName,
        #[command(flatten)]
        param: ParamArgs,
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
    /// Radius of β-uniform convexity of order α.
    Radius {
        #[arg(long, value_parser = parse_form)]
        form: FormKind,
        #[command(flatten)]
        param: ParamArgs,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        beta: f64,
    },
    /// Tabulate the radius equation on a grid of r, as CSV.
    Sweep {
        /// One of the standard figures a to f (fixes form, parameters and window).
        #[arg(long, conflicts_with_all = ["form", "params"])]
        figure: Option<char>,
        #[arg(long, value_parser = parse_form, requires = "params", required_unless_present = "figure")]
        form: Option<FormKind>,
        /// Comma-separated μ or ν values.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        params: Vec<f64>,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, default_value_t = 0.01)]
        r_min: f64,
        /// Window end; defaults to the figure's.
        #[arg(long)]
        r_max: Option<f64>,
        #[arg(long, default_value_t = 90)]
        steps: usize,
        /// CSV destination; stdout when absent, with a per-curve summary
        /// printed instead when present.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification suite; exit 3 when a check fails.
    Verify,
}

fn parse_form(s: &str) -> Result<FormKind, String> {
    s.parse::<FormKind>().map_err(|e| e.to_string())
}

#[derive(Debug)]
enum Failure {
    Core(Error),
    Usage(String),
    Io(io::Error),
    Verification(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type CliResult<T> = Result<T, Failure>;

struct Context {
    format: Format,
    allow_unsafe: bool,
    cfg: SolverConfigF64,
    tolerances: Map<String, Value>,
}

impl Context {
    fn new(g: &Global) -> CliResult<Self> {
        if !(g.zero_tol > 0.0 && g.zero_tol.is_finite()) {
            return Err(Failure::Usage(format!(
                "zero tolerance must be positive, got {}",
                g.zero_tol
            )));
        }
        let mut cfg = SolverConfigF64::default().with_root_tol(g.root_tol)?;
        cfg.series = SeriesConfig::new(g.series_tol, SeriesConfig::<f64>::default().max_terms())?;
        cfg.zeros = ZeroOptions::default().with_tol(g.zero_tol);
        let mut tolerances = Map::new();
        tolerances.insert("series_tol".into(), json!(g.series_tol));
        tolerances.insert("zero_tol".into(), json!(g.zero_tol));
        tolerances.insert("root_tol".into(), json!(g.root_tol));
        Ok(Self {
            format: g.format,
            allow_unsafe: g.allow_unsafe,
            cfg,
            tolerances,
        })
    }

    fn record(&self, command: &'static str) -> OutputRecord {
        OutputRecord::new(command, &self.tolerances)
    }

    fn param(&self, family: Family, value: f64) -> CliResult<ShapeParam<f64>> {
        if !self.allow_unsafe {
            return Ok(ShapeParam::checked(family, value)?);
        }
        let p = ShapeParam::unchecked(family, value)?;
        if !p.in_hypothesis() {
            eprintln!(
                "warning: {} = {value} is outside the hypotheses; results are not covered by the theory",
                family.param_symbol()
            );
        }
        Ok(p)
    }

    fn emit(&self, records: &[OutputRecord]) -> CliResult<()> {
        let stdout = io::stdout();
        let mut out = stdout.lock();
        emit(records, self.format, &mut out)?;
        out.flush()?;
        Ok(())
    }
}

/// The single parameter matching `family` from --mu/--nu.
fn param_value(p: &ParamArgs, family: Family) -> CliResult<f64> {
    let (given, other) = match family {
        Family::Lommel => (p.mu, p.nu),
        Family::Struve => (p.nu, p.mu),
    };
    if other.is_some() {
        let wrong = if family == Family::Lommel { "--nu" } else { "--mu" };
        return Err(Failure::Usage(format!(
            "{wrong} does not apply to a {} function",
            family.name()
        )));
    }
    given.ok_or_else(|| Failure::Usage(format!("--{} is required", family.param_symbol())))
}

fn cmd_eval(
    ctx: &Context,
    form: Option<FormKind>,
    kernel: Option<KernelName>,
    param: &ParamArgs,
    z: f64,
    deriv: usize,
    curvature: bool,
) -> CliResult<()> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(Failure::Usage(format!("z must be > 0, got {z}")));
    }
    let rec = if let Some(kind) = form {
        if deriv != 0 {
            return Err(Failure::Usage("--deriv applies to kernels only".into()));
        }
        let p = ctx.param(kind.family(), param_value(param, kind.family())?)?;
        let f = Form::new(kind, p)?;
        let mut rec = ctx
            .record("eval")
            .input("form", kind.to_string())
            .input(kind.family().param_symbol(), p.value())
            .input("z", z)
            .output("value", f.eval(z, &ctx.cfg.series)?);
        if curvature {
            rec = rec.output("curvature", f.curvature_real(z, &ctx.cfg.series)?);
        }
        rec
    } else {
        let family = match kernel {
            Some(KernelName::Lommel) => Family::Lommel,
            _ => Family::Struve,
        };
        if curvature {
            return Err(Failure::Usage("--curvature applies to forms only".into()));
        }
        if deriv > 2 {
            return Err(Failure::Usage(format!("--deriv must be 0, 1 or 2, got {deriv}")));
        }
        let p = ctx.param(family, param_value(param, family)?)?;
        let k: Kernel<f64> = p.kernel();
        ctx.record("eval")
            .input("kernel", family.name())
            .input(family.param_symbol(), p.value())
            .input("z", z)
            .input("deriv", deriv)
            .output("value", k.eval(z, deriv, &ctx.cfg.series)?)
    };
    ctx.emit(&[rec])
}

fn cmd_zeros(ctx: &Context, target: TargetName, param: &ParamArgs, count: usize) -> CliResult<()> {
    let (family, which) = match target {
        TargetName::Lommel => (Family::Lommel, ZeroTarget::Kernel),
        TargetName::LommelDeriv => (Family::Lommel, ZeroTarget::KernelDeriv),
        TargetName::Struve => (Family::Struve, ZeroTarget::Kernel),
        TargetName::StruveDeriv => (Family::Struve, ZeroTarget::KernelDeriv),
    };
    let p = ctx.param(family, param_value(param, family)?)?;
    let k = p.kernel();
    let target_name = target
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    if count == 0 {
        return ctx.emit(&[]);
    }
    let table = kernel_zero_table(&k, which, count, &ctx.cfg.zeros, &ctx.cfg.series)?;
    let interlaces = if which == ZeroTarget::KernelDeriv {
        let function = kernel_zero_table(&k, ZeroTarget::Kernel, count, &ctx.cfg.zeros, &ctx.cfg.series)?;
        Some(interlacing_check(&function, &table, count)?)
    } else {
        None
    };
    let records: Vec<OutputRecord> = table
        .iter()
        .enumerate()
        .map(|(i, (zero, m))| {
            let mut rec = ctx
                .record("zeros")
                .input("target", target_name.clone())
                .input(family.param_symbol(), p.value())
                .input("count", count)
                .output("n", i + 1)
                .output("zero", zero)
                .output("multiplicity", m);
            if let Some(flag) = interlaces {
                rec = rec.output("interlaces", flag);
            }
            rec
        })
        .collect();
    ctx.emit(&records)
}

fn cmd_radius(ctx: &Context, kind: FormKind, param: &ParamArgs, alpha: f64, beta: f64) -> CliResult<()> {
    let p = ctx.param(kind.family(), param_value(param, kind.family())?)?;
    let up = UniformityParams::new(alpha, beta)?;
    let res = radius(&Form::new(kind, p)?, up, &ctx.cfg)?;
    let rec = ctx
        .record("radius")
        .input("form", kind.to_string())
        .input(kind.family().param_symbol(), p.value())
        .input("alpha", alpha)
        .input("beta", beta)
        .output("radius", res.radius)
        .output("bracket_hi", res.bracket_hi)
        .output("iterations", res.iterations)
        .output("residual", res.residual);
    ctx.emit(&[rec])
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    ctx: &Context,
    figure: Option<char>,
    form: Option<FormKind>,
    params: &[f64],
    alpha: f64,
    beta: f64,
    r_min: f64,
    r_max: Option<f64>,
    steps: usize,
    out: Option<&PathBuf>,
) -> CliResult<()> {
    let (kind, values, window) = match figure {
        Some(id) => {
            let fig = FigurePreset::by_id(id)
                .ok_or_else(|| Failure::Usage(format!("unknown figure '{id}', expected a to f")))?;
            (fig.form, fig.params.to_vec(), fig.r_max)
        }
        None => {
            let kind = form.ok_or_else(|| Failure::Usage("--form or --figure is required".into()))?;
            let end = r_max.ok_or_else(|| Failure::Usage("--r-max is required without --figure".into()))?;
            (kind, params.to_vec(), end)
        }
    };
    let r_max = r_max.unwrap_or(window);
    let shapes = values
        .iter()
        .map(|&v| ctx.param(kind.family(), v))
        .collect::<CliResult<Vec<_>>>()?;
    let up = UniformityParams::new(alpha, beta)?;
    let rows = sweep(kind, &shapes, up, r_min, r_max, steps, &ctx.cfg.series)?;
    match out {
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write_csv(&rows, &mut lock)?;
            lock.flush()?;
            Ok(())
        }
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            write_csv(&rows, &mut file)?;
            file.flush()?;
            let records: Vec<OutputRecord> = rows
                .chunks(steps)
                .map(|curve| curve_summary(ctx, kind, alpha, beta, curve))
                .collect();
            ctx.emit(&records)
        }
    }
}

fn curve_summary(ctx: &Context, kind: FormKind, alpha: f64, beta: f64, curve: &[SweepRow<f64>]) -> OutputRecord {
    let psi: Vec<f64> = curve.iter().map(|row| row.psi_unified).collect();
    let crossing = psi.windows(2).position(|w| w[0] > 0.0 && w[1] <= 0.0).map(|k| {
        let (r0, r1) = (curve[k].r, curve[k + 1].r);
        r0 + (r1 - r0) * psi[k] / (psi[k] - psi[k + 1])
    });
    ctx.record("sweep")
        .input("form", kind.to_string())
        .input("alpha", alpha)
        .input("beta", beta)
        .output(kind.family().param_symbol(), curve[0].param)
        .output("rows", curve.len())
        .output("sign_changes", sign_changes(&psi))
        .output("decreasing", strictly_decreasing(&psi))
        .output("crossing", crossing.map_or(Value::Null, Value::from))
}

fn cmd_verify(ctx: &Context) -> CliResult<()> {
    let report = run_suite(&ctx.cfg)?;
    let records: Vec<OutputRecord> = report
        .checks
        .iter()
        .map(|c| {
            let status = match c.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Info => "info",
            };
            ctx.record("verify")
                .output("group", c.group)
                .output("check", c.name.clone())
                .output("status", status)
                .output("value", c.value)
                .output("expected", c.expected)
                .output("tolerance", c.tolerance)
        })
        .collect();
    ctx.emit(&records)?;
    match report.count(CheckStatus::Fail) {
        0 => Ok(()),
        n => Err(Failure::Verification(n)),
    }
}

fn run(cli: &Cli) -> CliResult<()> {
    let ctx = Context::new(&cli.global)?;
    match &cli.command {
        Command::Eval {
            form,
            kernel,
            param,
            z,
            deriv,
            curvature,
        } => cmd_eval(&ctx, *form, *kernel, param, *z, *deriv, *curvature),
        Command::Zeros { target, param, count } => cmd_zeros(&ctx, *target, param, *count),
        Command::Radius {
            form,
            param,
            alpha,
            beta,
        } => cmd_radius(&ctx, *form, param, *alpha, *beta),
        Command::Sweep {
            figure,
            form,
            params,
            alpha,
            beta,
            r_min,
            r_max,
            steps,
            out,
        } => cmd_sweep(
            &ctx,
            *figure,
            *form,
            params,
            *alpha,
            *beta,
            *r_min,
            *r_max,
            *steps,
            out.as_ref(),
        ),
        Command::Verify => cmd_verify(&ctx),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let result = run(&cli);
    if cli.global.timing {
        eprintln!("wall time {:.3} s", start.elapsed().as_secs_f64());
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_validation() {
                EXIT_VALIDATION
            } else {
                EXIT_NUMERICAL
            })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_VALIDATION)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_VALIDATION)
        }
        Err(Failure::Verification(n)) => {
            eprintln!("{n} verification check(s) failed");
            ExitCode::from(EXIT_VERIFY)
        }
    }
}
