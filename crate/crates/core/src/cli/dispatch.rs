//! Command-line front end.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::poisson::{
    basic_algebra, bracket, laplacian_kernel, make_space, normalizer, obstruction_markers,
    symplectic_laplacian, PoissonPoly, Space, SpaceKind,
};
use crate::reps::{
    e2_fourier_matrices, metaplectic_matrices, schrodinger_matrices, spin_matrices, MatrixRep, Spin,
};
use crate::scalars::{Bindings, Gq, Param, ParamScalar};
use crate::scenarios::{
    expected_verdict, run_all, verify_prequantizer, Mode, Prequantizer, Preset, RunConfig,
    ScenarioReport, Verdict,
};

use super::emit::{emit_report, emit_reports, matrix_json, matrix_text, Format};
use super::parse::parse_expr;

#[derive(Parser, Debug)]
#[command(
    name = "obstructo",
    version,
    about = "Check quantization rules on classical phase spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a verification scenario and compare its verdict with the expected one.
    Verify(VerifyArgs),
    /// Poisson bracket of two expressions.
    Bracket {
        #[command(flatten)]
        space: SpaceArgs,
        f: String,
        g: String,
    },
    /// Reduced form of an expression.
    Reduce {
        #[command(flatten)]
        space: SpaceArgs,
        expr: String,
    },
    /// Lie normalizer of the basic algebra among polynomials up to a degree.
    Normalizer {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, default_value_t = 4)]
        degree: u32,
    },
    /// Symplectic Laplacian of an expression, or its kernel up to a degree.
    Laplacian {
        #[command(flatten)]
        space: SpaceArgs,
        expr: Option<String>,
        #[arg(long, default_value_t = 3)]
        degree: u32,
    },
    /// Obstruction markers of a space.
    Markers {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, default_value_t = 4)]
        degree: u32,
    },
    /// Matrices of a truncated representation.
    Rep(RepArgs),
    /// Check a prequantization formula on all monomial pairs up to a degree.
    PreqCheck(PreqArgs),
}

#[derive(Args, Debug)]
struct SpaceArgs {
    /// One of r2n, s2, tstar_s1, tstar_rplus, t2.
    #[arg(long, default_value = "r2n")]
    space: String,
    /// Degrees of freedom of r2n.
    #[arg(long, default_value_t = 1)]
    n: usize,
}

impl SpaceArgs {
    fn build(&self) -> Result<Space> {
        make_space(SpaceKind::parse(&self.space, self.n)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ScenarioArg {
    Groenewold,
    Sphere,
    Cylinder,
    Rplus,
    Torus,
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Symbolic,
    Matrix,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    scenario: ScenarioArg,
    /// Spin labels such as 1/2 or 2; repeat or separate with commas.
    #[arg(long, value_delimiter = ',')]
    spin: Vec<String>,
    #[arg(long)]
    truncation: Option<usize>,
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long)]
    hbar: Option<f64>,
    /// Degree cap of the cylinder position family and of the T*R+ scenario.
    #[arg(long)]
    degree: Option<u32>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Tolerance of the matrix cross-checks.
    #[arg(long)]
    tolerance: Option<f64>,
    /// JSON run configuration; flags given on the command line take precedence.
    #[arg(long)]
    config: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RepKind {
    /// Position and momentum on Hermite functions.
    Schrodinger,
    /// Quadratic elements on Hermite functions.
    Metaplectic,
    /// Spin matrices.
    Spin,
    /// e(2) on Fourier modes.
    E2,
}

#[derive(Args, Debug)]
struct RepArgs {
    kind: RepKind,
    /// Basis size, or number of Fourier modes on each side for e2.
    #[arg(long, default_value_t = 8)]
    truncation: usize,
    #[arg(long, default_value = "1/2")]
    spin: String,
    #[arg(long, default_value = "0")]
    nu: String,
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
}

#[derive(Args, Debug)]
struct PreqArgs {
    /// vanhove, position, cylinder, torus, affine or affine-.
    preset: String,
    /// Defaults to the space the preset is written for.
    #[arg(long)]
    space: Option<String>,
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, default_value_t = 5)]
    degree: u32,
    /// Exact value for nu; formal when omitted.
    #[arg(long)]
    nu: Option<String>,
    /// Exact value for eta; formal when omitted.
    #[arg(long)]
    eta: Option<String>,
}

/// Exit status and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: String) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: message,
        }
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn dispatch<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => return Outcome::ok(e.to_string()),
        Err(e) => return Outcome::usage(e.to_string()),
    };
    match run(&cli) {
        Ok(out) => out,
        Err(e) => Outcome::usage(format!("error: {e}\n")),
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let format = Format::from(cli.format);
    let json = format == Format::Json;
    match &cli.command {
        Command::Verify(args) => verify(args, format),
        Command::Bracket { space, f, g } => {
            let sp = space.build()?;
            let b = bracket(&parse_expr(f, &sp)?, &parse_expr(g, &sp)?)?;
            Ok(Outcome::ok(poly_out(&sp, &b, json)))
        }
        Command::Reduce { space, expr } => {
            let sp = space.build()?;
            Ok(Outcome::ok(poly_out(&sp, &parse_expr(expr, &sp)?, json)))
        }
        Command::Normalizer { space, degree } => {
            let sp = space.build()?;
            let n = normalizer(&sp, &basic_algebra(&sp)?, *degree)?;
            Ok(Outcome::ok(basis_out(&sp, *degree, &n, json)))
        }
        Command::Laplacian {
            space,
            expr,
            degree,
        } => {
            let sp = space.build()?;
            let basis = basic_algebra(&sp)?;
            match expr {
                Some(e) => {
                    let d = symplectic_laplacian(&sp, &basis, &parse_expr(e, &sp)?)?;
                    Ok(Outcome::ok(poly_out(&sp, &d, json)))
                }
                None => {
                    let k = laplacian_kernel(&sp, &basis, *degree)?;
                    Ok(Outcome::ok(basis_out(&sp, *degree, &k, json)))
                }
            }
        }
        Command::Markers { space, degree } => {
            let sp = space.build()?;
            let m = obstruction_markers(&sp, *degree)?;
            let out = if json {
                json!({"space": sp.name(), "degree": m.cap, "d1": m.d1, "d2": m.d2}).to_string()
                    + "\n"
            } else {
                let yn = |b: bool| if b { "yes" } else { "no" };
                format!(
                    "space: {}\nD1 (constant is a bracket, degree <= {}): {}\nD2 (polynomial relation): {}\n",
                    sp.name(),
                    m.cap,
                    yn(m.d1),
                    yn(m.d2)
                )
            };
            Ok(Outcome::ok(out))
        }
        Command::Rep(args) => rep(args, format),
        Command::PreqCheck(args) => preq_check(args, format),
    }
}

fn poly_out(space: &Space, p: &PoissonPoly, json: bool) -> String {
    if json {
        json!({"space": space.name(), "result": p.to_string()}).to_string() + "\n"
    } else {
        format!("{p}\n")
    }
}

fn basis_out(space: &Space, degree: u32, basis: &[PoissonPoly], json: bool) -> String {
    let items: Vec<String> = basis.iter().map(|b| b.to_string()).collect();
    if json {
        json!({"space": space.name(), "degree": degree, "dimension": items.len(), "basis": items})
            .to_string()
            + "\n"
    } else {
        items.iter().map(|s| format!("{s}\n")).collect()
    }
}

fn verify(args: &VerifyArgs, format: Format) -> Result<Outcome> {
    let mut config = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
            RunConfig::from_json(&text)?
        }
        None => RunConfig::default(),
    };
    let name = match args.scenario {
        ScenarioArg::Groenewold => Some("groenewold"),
        ScenarioArg::Sphere => Some("sphere"),
        ScenarioArg::Cylinder => Some("cylinder"),
        ScenarioArg::Rplus => Some("rplus"),
        ScenarioArg::Torus => Some("torus"),
        ScenarioArg::All => None,
    };
    if let Some(name) = name {
        config.scenarios = vec![name.to_string()];
    }
    if !args.spin.is_empty() {
        config.spins = args.spin.clone();
    }
    if let Some(t) = args.truncation {
        config.truncation = t;
    }
    if let Some(g) = args.grid {
        config.grid = g;
    }
    if let Some(h) = args.hbar {
        config.hbar = h;
    }
    if let Some(d) = args.degree {
        config.degree = d;
        config.rplus_degree = d;
    }
    if let Some(m) = args.mode {
        config.mode = match m {
            ModeArg::Symbolic => Mode::Symbolic,
            ModeArg::Matrix => Mode::Matrix,
        };
    }
    if let Some(t) = args.tolerance {
        config.tolerance = t;
    }
    let reports = run_all(&config)?;
    let text = match reports.as_slice() {
        [one] => emit_report(one, format),
        many => emit_reports(many, format),
    };
    let mut out = Outcome::ok(text + "\n");
    let mismatches = mismatches(&reports);
    if !mismatches.is_empty() {
        out.code = 1;
        out.stderr = mismatches.join("");
    }
    Ok(out)
}

/// Reports whose verdict differs from the expected one, or that fail a
/// check which is not a no-go witness.
fn mismatches(reports: &[ScenarioReport]) -> Vec<String> {
    let mut out = Vec::new();
    for r in reports {
        let want = expected_verdict(r);
        if r.verdict != want {
            out.push(format!(
                "{}: verdict {} but expected {}\n",
                r.scenario, r.verdict, want
            ));
        }
        for c in r.checks.iter().filter(|c| !c.pass && !c.witness) {
            out.push(format!("{}: check {} failed\n", r.scenario, c.id));
        }
    }
    out
}

/// An exact constant such as `1/3` or `-2`.
fn exact_value(text: &str) -> Result<ParamScalar> {
    let scratch = make_space(SpaceKind::R2n(1))?;
    let p = parse_expr(text, &scratch)?;
    p.poly()
        .as_constant()
        .filter(|c| c.is_constant())
        .ok_or_else(|| Error::Config(format!("`{text}` is not a numeric constant")))
}

fn float_value(text: &str) -> Result<f64> {
    if let Ok(x) = text.parse::<f64>() {
        return Ok(x);
    }
    let c = exact_value(text)?.as_constant().unwrap_or_else(Gq::zero);
    if !c.is_real() {
        return Err(Error::Config(format!("`{text}` is not real")));
    }
    Ok(c.to_c64().re)
}

fn rep(args: &RepArgs, format: Format) -> Result<Outcome> {
    let (rep, label): (MatrixRep, String) = match args.kind {
        RepKind::Schrodinger => (schrodinger_matrices(args.truncation)?, "schrodinger".into()),
        RepKind::Metaplectic => (metaplectic_matrices(args.truncation)?, "metaplectic".into()),
        RepKind::Spin => {
            let j: Spin = args.spin.parse()?;
            (spin_matrices(j), format!("spin {j}"))
        }
        RepKind::E2 => (e2_fourier_matrices(args.truncation)?, "e2".into()),
    };
    if !(args.hbar.is_finite() && args.hbar > 0.0) {
        return Err(Error::Config(format!(
            "hbar must be positive, got {}",
            args.hbar
        )));
    }
    let bindings = Bindings::new()
        .float(Param::Hbar, args.hbar)
        .float(Param::Nu, float_value(&args.nu)?);
    let mats = rep.eval(&bindings)?;
    let out = match format {
        Format::Json => {
            let gens: serde_json::Map<String, serde_json::Value> = mats
                .iter()
                .map(|(k, m)| (k.clone(), matrix_json(m)))
                .collect();
            serde_json::to_string_pretty(&json!({"rep": label, "dim": rep.dim, "generators": gens}))
                .expect("matrices serialize")
                + "\n"
        }
        Format::Text => {
            let mut s = format!("rep: {label} (dim {})\n", rep.dim);
            for (k, m) in &mats {
                let _ = write!(s, "\n{k} =\n{}\n", matrix_text(m));
            }
            s
        }
    };
    Ok(Outcome::ok(out))
}

fn preq_check(args: &PreqArgs, format: Format) -> Result<Outcome> {
    let preset: Preset = args.preset.parse()?;
    let kind = match &args.space {
        Some(s) => SpaceKind::parse(s, args.n)?,
        None => preset.space_kind(),
    };
    let mut pq = Prequantizer::new(preset, &make_space(kind)?)?;
    if let Some(v) = &args.nu {
        pq = pq.bind(Param::Nu, exact_value(v)?);
    }
    if let Some(v) = &args.eta {
        pq = pq.bind(Param::Eta, exact_value(v)?);
    }
    let report = verify_prequantizer(&pq, args.degree)?;
    let mut out = Outcome::ok(emit_report(&report, format) + "\n");
    if report.verdict != Verdict::Consistent {
        out.code = 1;
        out.stderr = format!("prequantization: verdict {}\n", report.verdict);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> Outcome {
        dispatch(std::iter::once("obstructo").chain(args.iter().copied()))
    }

    #[test]
    fn bracket_on_sphere() {
        let o = call(&["bracket", "--space", "s2", "S1", "S2"]);
        assert_eq!(o, Outcome::ok("-S3\n".into()));
    }

    #[test]
    fn normalizer_of_heisenberg() {
        let o = call(&["normalizer", "--space", "r2n", "--n", "1", "--degree", "4"]);
        assert_eq!(o.code, 0);
        assert_eq!(o.stdout.lines().count(), 6);
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["bracket", "--space", "s2", "S1"]).code, 2);
        assert_eq!(call(&["reduce", "--space", "s2", "q"]).code, 2);
        assert_eq!(call(&["reduce", "--space", "moon", "q"]).code, 2);
        assert_eq!(call(&["verify", "nothing"]).code, 2);
        assert_eq!(call(&["preq-check", "vanhove", "--space", "s2"]).code, 2);
        assert_eq!(call(&["--help"]).code, 0);
    }

    #[test]
    fn markers_json() {
        let o = call(&["markers", "--space", "s2", "--format", "json"]);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["d1"], false);
        assert_eq!(v["d2"], true);
    }

    #[test]
    fn preq_check_with_bound_eta() {
        let o = call(&["preq-check", "position", "--eta", "1/3", "--degree", "3"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert!(o.stdout.contains("eta=(1/3)"), "{}", o.stdout);
    }

    #[test]
    fn rep_matrices() {
        let o = call(&["rep", "spin", "--spin", "1/2", "--format", "json"]);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["generators"]["S3"]["rows"][0][0], json!([0.5, 0.0]));
        assert_eq!(
            call(&["rep", "e2", "--truncation", "3", "--nu", "1/4"]).code,
            0
        );
    }
}
