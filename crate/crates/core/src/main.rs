use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use algtool::arith::{parse_rational, Cyclotomic, Rational};
use algtool::clifford::{anticommutation_residual, build_reps, rank_profile, symmetric_rank_float, SymmetricForm};
use algtool::gradedalg::{character_coeffs, character_table, hilbert, make_presentation, PresentationSpec, MAX_CELLS_ENV};
use algtool::heisenberg::{HeisenbergElement, SimpleRep};
use algtool::koszul::koszul_identity_check;
use algtool::sklyanin2::{self, CurvePoint, OrderTwoParams, TParam, Tolerances};
use algtool::{selftest, shioda5, Error};

#[derive(Parser)]
#[command(name = "algtool", version, about = "Heisenberg-symmetric graded algebras, Clifford strata and Sklyanin checks")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Matrix-cell cap for graded pieces (overrides ALGTOOL_MAX_CELLS).
    #[arg(long, global = true)]
    max_cells: Option<u128>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert coefficients of a presentation.
    Hilbert(AlgebraArgs),
    /// Character series of one class, or the whole table without --class.
    Charseries {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        class: Option<String>,
        #[arg(long, default_value_t = 1)]
        rep: i64,
    },
    /// Residuals of Ch_A(g,t)·Ch_{(A!)*}(g,−t) = 1.
    KoszulCheck {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, default_value = "1")]
        class: String,
        #[arg(long, default_value_t = 1)]
        rep: i64,
    },
    /// Rank, profiles and explicit representations of a Clifford form at a point.
    CliffordStrata {
        #[arg(long, value_enum)]
        form: FormKind,
        /// Form size for `diagonal`, prime for `heisenberg`.
        #[arg(long)]
        p: Option<usize>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        params: Vec<String>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        point: Vec<String>,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    #[command(subcommand)]
    Sklyanin2(SklyaninCmd),
    #[command(subcommand)]
    Shioda5(ShiodaCmd),
    /// Runs the in-process acceptance criteria.
    Selftest,
}

#[derive(Args)]
struct AlgebraArgs {
    #[arg(long)]
    algebra: String,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    params: Vec<String>,
    #[arg(long)]
    max_degree: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormKind {
    Diagonal,
    ThreeDim,
    Heisenberg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

#[derive(Args)]
struct PointArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    /// Defaults to the smallest positive root of C′(a, ·).
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, default_value_t = 1e-8)]
    rank_tol: f64,
    #[arg(long, default_value_t = 1e-7)]
    span_tol: f64,
    #[arg(long, default_value_t = 1e-8)]
    residual_tol: f64,
}

#[derive(Subcommand)]
enum SklyaninCmd {
    /// Sample points of C′ on a grid of a values.
    Curve {
        #[arg(long, value_delimiter = ',')]
        grid: Option<Vec<f64>>,
    },
    /// The parameter t(a, b).
    T {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
    },
    /// Eliminate t and divide by C′.
    Eliminate,
    /// 3×3 minors of Q on the orbit of (0,1,t,−t,−1).
    Minors(PointArgs),
    /// Degree-6 and degree-8 minor ideal comparisons.
    Ideal(PointArgs),
    /// Proportionality of the Jacobian determinant and det Q.
    Secant(PointArgs),
    /// One-dimensional representations of C(a₀ : … : a_{(p−1)/2}).
    Onedim {
        #[arg(long)]
        p: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        params: Vec<String>,
    },
    /// Rank strata of Q.
    Stratify {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
}

#[derive(Subcommand)]
enum ShiodaCmd {
    /// The 10 cubic minors of S₁₅.
    Minors,
    /// Heisenberg orbit of O_a against C_a and S₁₅.
    Orbit {
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        a: String,
    },
    /// The 2-torsion plane curve against S₁₅.
    TwoTorsion {
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// The 30 points with nontrivial stabilizer.
    Singular,
    /// The cycle presentation against the cusp fiber.
    Fiber,
}

/// A report and whether its checks passed.
struct Outcome {
    report: Value,
    pass: bool,
}

fn outcome<T: Serialize>(report: &T, pass: bool) -> Result<Outcome, Error> {
    let report = serde_json::to_value(report).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(Outcome { report, pass })
}

fn rationals(v: &[String]) -> Result<Vec<Rational>, Error> {
    v.iter().map(|s| parse_rational(s)).collect()
}

fn spec(args: &AlgebraArgs) -> Result<PresentationSpec, Error> {
    PresentationSpec::parse(&args.algebra, args.p, &rationals(&args.params)?)
}

fn prime_of(spec: &PresentationSpec) -> usize {
    match spec {
        PresentationSpec::Polynomial { p } | PresentationSpec::Cycle { p } | PresentationSpec::CliffordC { p, .. } => *p,
        PresentationSpec::Sklyanin3 { .. } => 3,
        PresentationSpec::Sklyanin5 { .. } | PresentationSpec::CurveCa { .. } => 5,
    }
}

/// `1`, `z`, `e1`, `e2`, or exponents `a,b,k`.
fn parse_class(s: &str, p: usize) -> Result<HeisenbergElement, Error> {
    match s.trim() {
        "1" | "id" => HeisenbergElement::identity(p),
        "z" => HeisenbergElement::z(p),
        "e1" => HeisenbergElement::e1(p),
        "e2" => HeisenbergElement::e2(p),
        other => {
            let parts: Vec<i64> = other
                .split(',')
                .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("bad class '{s}'"))))
                .collect::<Result<_, _>>()?;
            match parts[..] {
                [a, b, k] => HeisenbergElement::new(p, a, b, k),
                _ => Err(Error::Parse(format!("bad class '{s}': expected 1, z, e1, e2 or a,b,k"))),
            }
        }
    }
}

fn is_decimal(s: &str) -> bool {
    s.contains(['.', 'e', 'E'])
}

fn to_f64(s: &str) -> Result<f64, Error> {
    s.trim().parse::<f64>().or_else(|_| parse_rational(s).map(|r| algtool::arith::rational_to_f64(&r)))
}

fn curve_point(args: &PointArgs) -> Result<CurvePoint, Error> {
    let a = to_f64(&args.a)?;
    match &args.b {
        Some(b) => CurvePoint::new(a, to_f64(b)?),
        None => Ok(sklyanin2::sample_curve_points(&[a])?[0]),
    }
}

fn tolerances(args: &PointArgs) -> Tolerances {
    Tolerances { rank: args.rank_tol, span: args.span_tol, residual: args.residual_tol }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Hilbert(args) => {
            let h = hilbert(&make_presentation(&spec(args)?)?, args.max_degree)?;
            outcome(&json!({ "hilbert": h }), true)
        }
        Command::Charseries { algebra, class, rep } => {
            let spec = spec(algebra)?;
            let p = prime_of(&spec);
            let pres = make_presentation(&spec)?;
            let rep = SimpleRep::new(p, *rep)?;
            match class {
                Some(c) => {
                    let g = parse_class(c, p)?;
                    let coeffs = character_coeffs(&pres, &g, &rep, algebra.max_degree)?;
                    outcome(&json!({ "class": g.to_string(), "coeffs": coeffs }), true)
                }
                None => outcome(&character_table(&pres, &rep, algebra.max_degree)?, true),
            }
        }
        Command::KoszulCheck { algebra, class, rep } => {
            let spec = spec(algebra)?;
            let p = prime_of(&spec);
            let g = parse_class(class, p)?;
            let res = koszul_identity_check(&make_presentation(&spec)?, &SimpleRep::new(p, *rep)?, &g, algebra.max_degree)?;
            let pass = res.iter().all(|c| c.is_zero());
            outcome(&json!({ "class": g.to_string(), "residuals": res, "pass": pass }), pass)
        }
        Command::CliffordStrata { form, p, params, point, tol } => {
            let form = match form {
                FormKind::Diagonal => SymmetricForm::diagonal(p.ok_or_else(|| Error::Parameter("--p is required".into()))?)?,
                FormKind::ThreeDim => {
                    let t = rationals(params)?.first().cloned().unwrap_or_else(|| algtool::arith::rat(1, 1));
                    SymmetricForm::three_dim_example(&t)?
                }
                FormKind::Heisenberg => {
                    SymmetricForm::heisenberg_clifford(p.ok_or_else(|| Error::Parameter("--p is required".into()))?, &rationals(params)?)?
                }
            };
            let y: Vec<_> = point.iter().map(|s| to_f64(s).map(|x| algtool::arith::ComplexF::new(x, 0.0))).collect::<Result<_, _>>()?;
            let m = form.specialize_complex(&[], &y)?;
            let rank = symmetric_rank_float(&m, *tol)?;
            let profile = rank_profile(rank.rank, form.size())?;
            let reps = build_reps(&m, rank.rank, *tol)?;
            let residuals: Vec<f64> = reps.iter().map(|r| anticommutation_residual(r, &m)).collect();
            let pass = residuals.iter().all(|&r| r < 1e-9);
            outcome(
                &json!({
                    "point": point,
                    "rank": rank.rank,
                    "kept_margin": rank.kept_margin,
                    "dropped_margin": rank.dropped_margin,
                    "simple": profile.simple,
                    "fat": profile.fat,
                    "residuals": residuals,
                }),
                pass,
            )
        }
        Command::Sklyanin2(cmd) => run_sklyanin(cmd, cli.seed),
        Command::Shioda5(cmd) => run_shioda(cmd, cli.seed),
        Command::Selftest => {
            let report = selftest::run_all();
            outcome(&report, report.pass)
        }
    }
}

fn run_sklyanin(cmd: &SklyaninCmd, seed: u64) -> Result<Outcome, Error> {
    match cmd {
        SklyaninCmd::Curve { grid } => {
            let grid = grid.clone().unwrap_or_else(|| sklyanin2::DEFAULT_GRID.to_vec());
            outcome(&json!({ "points": sklyanin2::sample_curve_points(&grid)? }), true)
        }
        SklyaninCmd::T { a, b, mode } => {
            let mode = mode.unwrap_or(if is_decimal(a) || is_decimal(b) { Mode::Float } else { Mode::Exact });
            let t = match mode {
                Mode::Exact => match sklyanin2::t_param(&parse_rational(a)?, &parse_rational(b)?)? {
                    TParam::Value(t) => json!({ "t": t.to_string() }),
                    TParam::Indeterminate => json!({ "indeterminate": true }),
                },
                Mode::Float => match sklyanin2::t_param_f64(to_f64(a)?, to_f64(b)?)? {
                    TParam::Value(t) => json!({ "t": t }),
                    TParam::Indeterminate => json!({ "indeterminate": true }),
                },
            };
            outcome(&t, true)
        }
        SklyaninCmd::Eliminate => {
            let r = sklyanin2::eliminate_t()?;
            outcome(&r, r.check)
        }
        SklyaninCmd::Minors(args) => {
            let r = sklyanin2::point_module_check(&curve_point(args)?, &tolerances(args))?;
            outcome(&r, r.pass)
        }
        SklyaninCmd::Ideal(args) => {
            let r = sklyanin2::minor_ideal_checks(&curve_point(args)?, &tolerances(args))?;
            outcome(&r, r.deg6 && r.deg8)
        }
        SklyaninCmd::Secant(args) => {
            let r = sklyanin2::secant_check(&curve_point(args)?, 1e-7)?;
            outcome(&r, r.pass)
        }
        SklyaninCmd::Onedim { p, params } => {
            let reps = sklyanin2::onedim_reps(&OrderTwoParams::new(*p, rationals(params)?)?)?;
            outcome(&json!({ "count": reps.len(), "reps": reps }), true)
        }
        SklyaninCmd::Stratify { point, samples } => {
            let r = sklyanin2::stratify(&curve_point(point)?, *samples, seed, &tolerances(point))?;
            let pass = r.strata.iter().all(|s| s.pass);
            outcome(&r, pass)
        }
    }
}

fn run_shioda(cmd: &ShiodaCmd, seed: u64) -> Result<Outcome, Error> {
    match cmd {
        ShiodaCmd::Minors => {
            let minors: Vec<String> = shioda5::s15_minors().iter().map(|m| m.to_string()).collect();
            outcome(&json!({ "count": minors.len(), "minors": minors }), true)
        }
        ShiodaCmd::Orbit { a } => {
            let r = shioda5::ca_orbit_check(&parse_rational(a)?)?;
            outcome(&r, r.pass)
        }
        ShiodaCmd::TwoTorsion { samples } => {
            let r = shioda5::two_torsion_check(*samples, seed)?;
            outcome(&r, r.pass)
        }
        ShiodaCmd::Singular => {
            let r = shioda5::singular_points_check()?;
            outcome(&r, r.pass)
        }
        ShiodaCmd::Fiber => {
            let r = shioda5::cycle_fiber_equivalence()?;
            outcome(&r, r.pass)
        }
    }
}

fn as_cyclotomic(v: &Value) -> Option<String> {
    let map = v.as_object()?;
    if map.len() != 2 || !map.contains_key("p") || !map.contains_key("coeffs") {
        return None;
    }
    serde_json::from_value::<Cyclotomic>(v.clone()).ok().map(|c| c.to_string())
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    if let Some(c) = as_cyclotomic(v) {
        out.push_str(&format!("{pad}{c}\n"));
        return;
    }
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    _ if as_cyclotomic(x).is_some() || is_flat(x) => out.push_str(&format!("{pad}{k}: {}\n", scalar(x))),
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(x, indent + 1, out);
                    }
                    Value::Array(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(x, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(x))),
                }
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                if !is_flat(x) && as_cyclotomic(x).is_none() {
                    out.push_str(&format!("{pad}- [{i}]\n"));
                    render_text(x, indent + 1, out);
                } else {
                    out.push_str(&format!("{pad}- {}\n", scalar(x)));
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v))),
    }
}

/// Scalars, and arrays of scalars or cyclotomic numbers.
fn is_flat(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(items) => items.iter().all(|i| as_cyclotomic(i).is_some() || !(i.is_object() || i.is_array())),
        _ => true,
    }
}

fn scalar(v: &Value) -> String {
    if let Some(c) = as_cyclotomic(v) {
        return c;
    }
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn emit(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(cap) = cli.max_cells {
        // Set before any worker thread starts.
        std::env::set_var(MAX_CELLS_ENV, cap.to_string());
    }
    match run(&cli) {
        Ok(outcome) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&outcome.report).expect("serializable") + "\n",
                Format::Text => {
                    let mut s = String::new();
                    render_text(&outcome.report, 0, &mut s);
                    s
                }
            };
            if let Err(e) = emit(&cli, &text) {
                eprintln!("error[io]: {e}");
                return ExitCode::from(1);
            }
            if outcome.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            match cli.format {
                Format::Json => eprintln!("{}", json!({ "code": e.code(), "message": e.to_string() })),
                Format::Text => eprintln!("error[{}]: {e}", e.code()),
            }
            ExitCode::from(1)
        }
    }
}
