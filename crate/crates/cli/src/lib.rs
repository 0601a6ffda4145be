//! Command-line front end for `toruskk-core`.
//!
//! [`run`] parses an argument vector and returns the exit status together
//! with what would be written to stdout and stderr, so the binary and the
//! transcript tests share one code path.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use toruskk_core::{
    assembly_on_subtorus, build_assembly, build_fm_h, build_fm_k, build_pd_spin,
    enumerate_intersection, run_suite, BigInt, Error, ExteriorClass, GradedLinearMap, IntMatrix,
    OrientedSubtorus, Side, Sign, SuiteConfig, TorusPoint, Variance, VerifyReport, WireInt,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTATION: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

const MATRIX_HELP: &str = "Integer matrix whose COLUMNS are the basis vectors. \
Text form: rows separated by ';', entries by ',' (\"1,0;1,2\" is [[1,0],[1,2]]); \
\"r x 0\" is the empty basis with r rows. A JSON array of rows is also accepted.";

#[derive(Debug, Parser)]
#[command(
    name = "toruskk",
    version,
    about = "Exact K-theory of tori: dual subtori, Fourier-Mukai and assembly",
    long_about = "Exact K-theory of tori: dual subtori, Fourier-Mukai and assembly.\n\n\
Subtori are given by integer bases whose columns span the tangent lattice.\n\
Output is JSON unless --format text is given. Exit status: 0 success,\n\
2 computational error or failing verification, 64 usage error."
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Base,
    Dual,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Base => Side::Base,
            SideArg::Dual => Side::Dual,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VarianceArg {
    /// K-theory (shriek) classes
    X,
    /// K-homology (fundamental) classes
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MatrixKind {
    /// Fourier-Mukai on K-theory, base to dual
    Fm,
    /// Fourier-Mukai on K-homology, dual to base
    Fmh,
    /// Spin Poincare duality on the base torus
    Pd,
    /// Assembly map, K-homology of the base to K-theory of the dual
    Assembly,
}

#[derive(Debug, Clone, Args)]
struct SubtorusArgs {
    /// Ambient dimension
    #[arg(long)]
    d: usize,
    #[arg(long, value_enum, default_value_t = SideArg::Base)]
    side: SideArg,
    #[arg(long, value_parser = parse_matrix, help = MATRIX_HELP)]
    basis: IntMatrix,
    /// Orientation of a point (empty basis): 1 or -1
    #[arg(long, allow_hyphen_values = true, value_parser = clap::value_parser!(i32).range(-1..=1))]
    orientation: Option<i32>,
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false, id = "input")]
struct ClassOrBasis {
    #[arg(long, value_parser = parse_matrix, help = MATRIX_HELP)]
    basis: Option<IntMatrix>,
    /// Exterior class as JSON: {"d":2,"variance":"x","side":"base","terms":[{"idx":[1],"c":1}]}
    #[arg(long, value_parser = parse_class)]
    class: Option<ExteriorClass>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Pontryagin-dual subtorus
    Dual(SubtorusArgs),
    /// Class of a subtorus in the exterior-algebra model
    Expand {
        #[command(flatten)]
        torus: SubtorusArgs,
        /// x: K-theory class [T]_!, y: K-homology class [T]_*
        #[arg(long, value_enum)]
        variance: VarianceArg,
    },
    /// Fourier-Mukai transform of a subtorus or class
    Fm {
        #[arg(long)]
        d: usize,
        /// base: [T]_! on the torus; dual: [T]_* on the dual torus
        #[arg(long, value_enum, default_value_t = SideArg::Base)]
        side: SideArg,
        #[command(flatten)]
        input: ClassOrBasis,
    },
    /// Baum-Connes assembly of a base subtorus or K-homology class
    Assembly {
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        input: ClassOrBasis,
    },
    /// Signed intersection number det[B | B'] of complementary subtori
    Pair {
        #[command(flatten)]
        torus: SubtorusArgs,
        #[arg(long = "with", value_parser = parse_matrix, help = MATRIX_HELP)]
        other: IntMatrix,
    },
    /// Intersection of two subtori on the same torus
    Intersect {
        #[command(flatten)]
        torus: SubtorusArgs,
        #[arg(long = "with", value_parser = parse_matrix, help = MATRIX_HELP)]
        other: IntMatrix,
    },
    /// Wedge product of two classes given as JSON
    Wedge {
        #[arg(long, value_parser = parse_class)]
        class: ExteriorClass,
        #[arg(long = "with", value_parser = parse_class)]
        other: ExteriorClass,
    },
    /// Labeled matrix of a transform
    Matrix {
        #[arg(value_enum)]
        kind: MatrixKind,
        #[arg(long)]
        d: usize,
    },
    /// Seeded verification suite
    Verify {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, env = "TORUSKK_SEED", default_value_t = 0)]
        seed: u64,
        /// Keep only properties whose name starts with this prefix (repeatable)
        #[arg(long)]
        only: Vec<String>,
    },
}

fn parse_matrix(s: &str) -> Result<IntMatrix, String> {
    let s = s.trim();
    if !s.starts_with('[') {
        return s.parse::<IntMatrix>().map_err(|e| e.to_string());
    }
    let rows: Vec<Vec<i64>> = serde_json::from_str(s).map_err(|e| e.to_string())?;
    if rows.is_empty() {
        return Err("a JSON matrix needs at least one row; use \"r x 0\" for empty bases".into());
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return Err("rows have different lengths".into());
    }
    let n = rows.len();
    let data = rows.into_iter().flatten().map(Into::into).collect();
    IntMatrix::from_vec(n, cols, data).map_err(|e| e.to_string())
}

fn parse_class(s: &str) -> Result<ExteriorClass, String> {
    serde_json::from_str(s).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct IntersectOut<'a> {
    transverse: bool,
    components: Option<WireInt>,
    component: Option<&'a OrientedSubtorus>,
    #[serde(skip_serializing_if = "Option::is_none")]
    points: Option<&'a [TorusPoint]>,
}

/// Exit status and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name) and executes the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    let format = cli.format;
    match execute(cli.command, format) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => {
            let stdout = match format {
                Format::Json => json_line(&json!({
                    "error": { "kind": e.kind(), "message": e.to_string() }
                })),
                Format::Text => format!("error[{}]: {e}\n", e.kind()),
            };
            Outcome {
                code: EXIT_COMPUTATION,
                stdout,
                stderr: String::new(),
            }
        }
    }
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("output types serialize");
    s.push('\n');
    s
}

fn subtorus(args: &SubtorusArgs) -> Result<OrientedSubtorus, Error> {
    build_subtorus(
        args.d,
        args.side.into(),
        args.basis.clone(),
        args.orientation,
    )
}

fn build_subtorus(
    d: usize,
    side: Side,
    basis: IntMatrix,
    orientation: Option<i32>,
) -> Result<OrientedSubtorus, Error> {
    let t = OrientedSubtorus::new(d, side, basis)?;
    match orientation {
        None | Some(1) => Ok(t),
        Some(-1) if t.dim() == 0 => Ok(OrientedSubtorus::point(d, side, Sign::Minus)),
        Some(-1) => Err(Error::Spec(
            "--orientation -1 applies to points; reorder the basis to reverse a subtorus".into(),
        )),
        Some(o) => Err(Error::Spec(format!("orientation must be 1 or -1, got {o}"))),
    }
}

fn check_class_d(class: &ExteriorClass, d: usize) -> Result<(), Error> {
    if class.spec().d != d {
        return Err(Error::Dimension(format!(
            "class has rank {} but --d is {d}",
            class.spec().d
        )));
    }
    Ok(())
}

fn render_subtorus(t: &OrientedSubtorus, format: Format) -> String {
    match format {
        Format::Json => json_line(t),
        Format::Text => {
            let mut s = format!("side {}\nd {}\nbasis {}\n", t.side(), t.d(), t.basis());
            if t.dim() == 0 {
                let _ = writeln!(s, "orientation {}", t.point_sign().value());
            }
            s
        }
    }
}

fn render_class(c: &ExteriorClass, format: Format) -> String {
    match format {
        Format::Json => json_line(c),
        Format::Text => format!("{c}\n"),
    }
}

fn matrix_for(kind: MatrixKind, d: usize) -> GradedLinearMap {
    match kind {
        MatrixKind::Fm => build_fm_k(d),
        MatrixKind::Fmh => build_fm_h(d),
        MatrixKind::Pd => build_pd_spin(d),
        MatrixKind::Assembly => build_assembly(d),
    }
}

fn execute(command: Command, format: Format) -> Result<(i32, String), Error> {
    let out = match command {
        Command::Dual(args) => render_subtorus(&subtorus(&args)?.dual(), format),
        Command::Expand { torus, variance } => {
            let t = subtorus(&torus)?;
            let class = match variance {
                VarianceArg::X => t.expand_k_theory(),
                VarianceArg::Y => t.expand_homology(),
            };
            render_class(&class, format)
        }
        Command::Fm { d, side, input } => {
            let side: Side = side.into();
            let class = match (input.basis, input.class) {
                (Some(basis), _) => {
                    let t = build_subtorus(d, side, basis, None)?;
                    match side {
                        Side::Base => t.expand_k_theory(),
                        Side::Dual => t.expand_homology(),
                    }
                }
                (None, Some(class)) => {
                    check_class_d(&class, d)?;
                    class
                }
                (None, None) => unreachable!("clap enforces the input group"),
            };
            let spec = class.spec();
            let map = match (spec.variance, spec.side) {
                (Variance::X, Side::Base) => build_fm_k(d),
                (Variance::Y, Side::Dual) => build_fm_h(d),
                _ => {
                    return Err(Error::Spec(format!(
                        "the transform acts on x-classes of the base or y-classes of the dual, not {spec}"
                    )))
                }
            };
            render_class(&map.apply(&class)?, format)
        }
        Command::Assembly { d, input } => {
            let value = match (input.basis, input.class) {
                (Some(basis), _) => {
                    assembly_on_subtorus(&build_subtorus(d, Side::Base, basis, None)?)?
                }
                (None, Some(class)) => {
                    check_class_d(&class, d)?;
                    build_assembly(d).apply(&class)?
                }
                (None, None) => unreachable!("clap enforces the input group"),
            };
            render_class(&value, format)
        }
        Command::Pair { torus, other } => {
            let t = subtorus(&torus)?;
            let t2 = build_subtorus(torus.d, torus.side.into(), other, None)?;
            let pairing = t.pairing_signed(&t2)?;
            let points = BigInt::from(pairing.magnitude().clone());
            match format {
                Format::Json => json_line(&json!({
                    "pairing": WireInt::from(&pairing),
                    "points": WireInt::from(&points),
                })),
                Format::Text => format!("pairing {pairing}\npoints {points}\n"),
            }
        }
        Command::Intersect { torus, other } => {
            let t = subtorus(&torus)?;
            let t2 = build_subtorus(torus.d, torus.side.into(), other, None)?;
            let data = t.intersection(&t2)?;
            let points = if data.transverse && t.dim() + t2.dim() == t.d() {
                Some(enumerate_intersection(&t, &t2)?)
            } else {
                None
            };
            match format {
                Format::Json => json_line(&IntersectOut {
                    transverse: data.transverse,
                    components: data.component_count.as_ref().map(WireInt::from),
                    component: data.identity_component.as_ref(),
                    points: points.as_deref(),
                }),
                Format::Text => {
                    let mut s = format!("transverse {}\n", data.transverse);
                    if let (Some(c), Some(n)) = (&data.identity_component, &data.component_count) {
                        let _ = writeln!(s, "components {n}");
                        let _ = writeln!(s, "component {}", c.basis());
                    }
                    for p in points.iter().flatten() {
                        let _ = writeln!(s, "point {p}");
                    }
                    s
                }
            }
        }
        Command::Wedge { class, other } => render_class(&class.wedge(&other)?, format),
        Command::Matrix { kind, d } => {
            let dump = matrix_for(kind, d).dump();
            match format {
                Format::Json => json_line(&dump),
                Format::Text => dump.render_text(),
            }
        }
        Command::Verify {
            d,
            trials,
            seed,
            only,
        } => {
            if d == 0 || d > 6 {
                return Err(Error::Dimension(format!(
                    "verify supports 1 <= d <= 6, got {d}"
                )));
            }
            let mut report = run_suite(&SuiteConfig::new(d, trials, seed));
            if !only.is_empty() {
                report.properties.retain(|p| {
                    only.iter()
                        .any(|prefix| p.name.starts_with(prefix.as_str()))
                });
            }
            let code = if report.all_pass() {
                EXIT_OK
            } else {
                EXIT_COMPUTATION
            };
            let out = match format {
                Format::Json => json_line(&report),
                Format::Text => format_report(&report),
            };
            return Ok((code, out));
        }
    };
    Ok((EXIT_OK, out))
}

/// Line-oriented rendering of a report: a header, then one line per
/// property ending in `pass` or `fail`, each failure followed by its
/// counterexample.
pub fn format_report(report: &VerifyReport) -> String {
    let mut out = report.title.clone();
    if let Some(seed) = report.seed {
        let _ = write!(out, " seed={seed}");
    }
    if let Some(trials) = report.trials {
        let _ = write!(out, " trials={trials}");
    }
    out.push('\n');
    let width = report
        .properties
        .iter()
        .map(|p| p.name.len())
        .max()
        .unwrap_or(0);
    for p in &report.properties {
        let status = if p.passed() { "pass" } else { "fail" };
        let _ = writeln!(out, "{:<width$}  {:>6}  {status}", p.name, p.checked);
        if let Some(cx) = &p.counterexample {
            let mut fields = Vec::new();
            if let Some(seed) = cx.seed {
                fields.push(format!("seed={seed}"));
            }
            fields.push(format!("d={}", cx.d));
            if let Some(k) = cx.k {
                fields.push(format!("k={k}"));
            }
            if let Some(basis) = &cx.basis {
                fields.push(format!("basis={basis}"));
            }
            let _ = writeln!(out, "    {}", fields.join(" "));
            let _ = writeln!(out, "    {}", cx.detail);
        }
    }
    out
}
