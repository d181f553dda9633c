//! Command-line front end.
//!
//! Every subcommand produces a [`Report`]; `--json` prints it as one JSON
//! object, otherwise as `key: value` lines. Exit codes: 0 success or pass,
//! 1 failed verification or domain error, 2 usage or parse error.

mod verify;

use std::collections::BTreeMap;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::analytic::{self, Interval};
use crate::divisor::{self, Ell};
use crate::elliptic::{self, Curve, ECPoint};
use crate::error::{Error, Result};
use crate::field::{format_rational, parse_rational, Field};
use crate::lab::{self, DioSystem};
use crate::parse::{parse_poly, parse_ratfun};
use crate::ratfun::{Point, RatFun, SquareSemantics};

#[derive(Parser, Debug)]
#[command(
    name = "funcfield",
    version,
    about = "Exact computations in rational function fields"
)]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Omit timing so output is byte-for-byte reproducible.
    #[arg(long, global = true)]
    stable: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct FnArgs {
    /// Rational function in z, e.g. "(z^2+1)/(z-3)^2".
    #[arg(long, allow_hyphen_values = true)]
    f: String,
    /// Field characteristic; 0 selects Q.
    #[arg(long, default_value_t = 0)]
    p: u64,
}

#[derive(Args, Debug, Clone)]
struct CurveArgs {
    /// Coefficient A of y^2 = x^3 + A x + B.
    #[arg(long = "A", default_value = "z")]
    a: String,
    /// Coefficient B of y^2 = x^3 + A x + B.
    #[arg(long = "B", default_value = "1")]
    b: String,
}

#[derive(Args, Debug, Clone)]
struct PointArgs {
    #[command(flatten)]
    curve: CurveArgs,
    /// x-coordinate of the base point.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    x: String,
    /// y-coordinate of the base point.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    y: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Map degree max(deg num, deg den).
    Deg(FnArgs),
    /// deg num - deg den.
    DegStar(FnArgs),
    /// Valuation at a point or at infinity.
    Val {
        #[command(flatten)]
        f: FnArgs,
        /// A rational point or "inf".
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Pole divisor.
    Poles(FnArgs),
    /// At most n distinct poles.
    Pn {
        #[command(flatten)]
        f: FnArgs,
        /// Largest allowed number of distinct poles.
        #[arg(long)]
        n: u64,
    },
    /// deg den <= (1 - eps) deg num.
    Veps {
        #[command(flatten)]
        f: FnArgs,
        /// A rational in (0, 1].
        #[arg(long)]
        eps: String,
    },
    /// Poles outside S have multiplicity at least l.
    Campana {
        #[command(flatten)]
        f: FnArgs,
        /// Comma-separated rational points and/or "inf".
        #[arg(long = "S", default_value = "", allow_hyphen_values = true)]
        s: String,
        /// A positive integer or "inf".
        #[arg(long = "l")]
        l: String,
    },
    /// Square test with a witness.
    IsSquare {
        #[command(flatten)]
        f: FnArgs,
        #[arg(long, value_enum, default_value_t = Semantics::Geometric)]
        semantics: Semantics,
    },
    /// Whether f is the derivative of a rational function.
    IsDerivative(FnArgs),
    /// g = h' + polynomial + proper part with squarefree denominator.
    Hermite(FnArgs),
    /// f = sum z^j f_j^p.
    Frobenius(FnArgs),
    /// n * P.
    EcMultiply {
        #[command(flatten)]
        point: PointArgs,
        /// Multiplier; negative values use -P.
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Naive height of n * P.
    EcHeight {
        #[command(flatten)]
        point: PointArgs,
        /// Multiplier; negative values use -P.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        n: i64,
    },
    /// h(2^k P) / 4^k.
    EcHhat {
        #[command(flatten)]
        point: PointArgs,
        /// Number of doublings.
        #[arg(long, default_value_t = 3)]
        k: u32,
    },
    /// Bad fibers with Kodaira types.
    EcFibers(CurveArgs),
    /// Mordell-Weil rank from the fiber configuration.
    EcRank(CurveArgs),
    /// deg x(nP) for n = 1..n-max.
    EcGrowth {
        #[command(flatten)]
        point: PointArgs,
        /// Largest multiple.
        #[arg(long, default_value_t = 8)]
        n_max: u64,
    },
    /// f at a rational point, or an enclosure over an interval.
    EvalF {
        /// Exact rational point.
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        /// Lower end of an interval.
        #[arg(long, allow_hyphen_values = true)]
        lo: Option<String>,
        /// Upper end of an interval.
        #[arg(long, allow_hyphen_values = true)]
        hi: Option<String>,
        /// Number of terms for interval evaluation.
        #[arg(long = "N", default_value_t = 10)]
        n: u64,
        /// Largest number of terms for exact evaluation.
        #[arg(long, default_value_t = analytic::DEFAULT_TERM_LIMIT)]
        limit: u64,
    },
    /// Coefficients of g(t) = f(it) up to t^N.
    SeriesG {
        /// Even truncation degree.
        #[arg(long = "N", default_value_t = 40)]
        n: usize,
    },
    /// The first points (a, f(a)) of the graph.
    GraphPoints {
        /// Number of points.
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Degree-bounded solutions of a polynomial system over F_p[z].
    Slice {
        /// System JSON, or a path to a file containing it.
        #[arg(long)]
        system: String,
        /// Degree bound on the x-block.
        #[arg(long)]
        alpha: usize,
        /// Degree bound on the y-block.
        #[arg(long, default_value_t = 0)]
        beta: usize,
        /// Sweep beta = 0..=beta-max and report stabilization.
        #[arg(long)]
        beta_max: Option<usize>,
        /// Refuse to enumerate more candidate tuples than this.
        #[arg(long, default_value_t = lab::DEFAULT_MAX_CANDIDATES)]
        max_candidates: u64,
    },
    /// Field elements that are roots of some listed polynomial.
    ZeroSet {
        /// Prime characteristic of the field.
        #[arg(long)]
        p: u64,
        /// Comma-separated polynomials.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        polys: Vec<String>,
    },
    /// Fibers, rank, heights and degree growth of the default curve.
    VerifyElliptic,
    /// Exact values, series signs and the coefficient bound.
    VerifyAnalytic,
    /// Divisor and membership predicates on seeded samples.
    VerifyDivisors {
        /// Seed of the sample generator.
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// The squares-over-F_2 slice and its zero set.
    VerifySlicer,
}

#[derive(clap::ValueEnum, Clone, Copy, Debug)]
enum Semantics {
    BaseField,
    Geometric,
}

impl From<Semantics> for SquareSemantics {
    fn from(s: Semantics) -> Self {
        match s {
            Semantics::BaseField => SquareSemantics::BaseField,
            Semantics::Geometric => SquareSemantics::Geometric,
        }
    }
}

/// Result of one command.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub outputs: Map<String, Value>,
    /// Set by verification commands only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<String>,
}

impl Report {
    fn new(command: &str) -> Report {
        Report {
            command: command.to_string(),
            inputs: Map::new(),
            outputs: Map::new(),
            pass: None,
            timing_ms: None,
        }
    }

    fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    fn output(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.outputs.insert(key.to_string(), value.into());
        self
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        for (k, v) in self.inputs.iter().chain(&self.outputs) {
            match v {
                Value::String(s) => out.push_str(&format!("{k}: {s}\n")),
                other => out.push_str(&format!("{k}: {other}\n")),
            }
        }
        if let Some(pass) = self.pass {
            out.push_str(if pass {
                "result: PASS\n"
            } else {
                "result: FAIL\n"
            });
        }
        if let Some(t) = &self.timing_ms {
            out.push_str(&format!("timing_ms: {t}\n"));
        }
        out
    }
}

/// What the binary should print and its exit status.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
    pub report: Option<Report>,
}

pub fn dispatch<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 {
                (text, String::new())
            } else {
                (String::new(), text)
            };
            return Outcome {
                stdout,
                stderr,
                code,
                report: None,
            };
        }
    };
    let name = command_name(&cli.command);
    let start = Instant::now();
    match run(&cli.command) {
        Ok(mut report) => {
            if !cli.stable {
                report.timing_ms = Some(start.elapsed().as_millis().to_string());
            }
            let code = if report.pass == Some(false) { 1 } else { 0 };
            let stdout = if cli.json {
                serde_json::to_string(&report).expect("serializable") + "\n"
            } else {
                report.to_text()
            };
            Outcome {
                stdout,
                stderr: String::new(),
                code,
                report: Some(report),
            }
        }
        Err(e) => {
            let code = match e {
                Error::Parse { .. } => 2,
                _ => 1,
            };
            let stdout = if cli.json {
                serde_json::to_string(&json!({"command": name, "error": e.to_string()}))
                    .expect("serializable")
                    + "\n"
            } else {
                String::new()
            };
            Outcome {
                stdout,
                stderr: format!("error: {e}\n"),
                code,
                report: None,
            }
        }
    }
}

fn command_name(c: &Command) -> String {
    let debug = format!("{c:?}");
    let ident: String = debug
        .chars()
        .take_while(|ch| ch.is_alphanumeric())
        .collect();
    let mut out = String::new();
    for (i, ch) in ident.chars().enumerate() {
        if ch.is_uppercase() {
            if i > 0 {
                out.push('-');
            }
            out.extend(ch.to_lowercase());
        } else {
            out.push(ch);
        }
    }
    out
}

fn s(v: impl ToString) -> Value {
    Value::String(v.to_string())
}

fn rat(r: &BigRational) -> Value {
    Value::String(format_rational(r))
}

fn field_of(p: u64) -> Result<Field> {
    Field::from_characteristic(p)
}

fn load_fn(args: &FnArgs, report: &mut Report) -> Result<RatFun> {
    let field = field_of(args.p)?;
    let f = parse_ratfun(&args.f, field)?;
    report.input("f", s(&f)).input("field", s(field));
    Ok(f)
}

fn parse_point(text: &str, field: Field) -> Result<Point> {
    if text.trim() == "inf" {
        return Ok(Point::Infinity);
    }
    Ok(Point::Finite(field.element(parse_rational(text)?)?))
}

fn point_label(p: &Point) -> String {
    match p {
        Point::Infinity => "inf".into(),
        Point::Finite(a) => format_rational(a),
    }
}

pub(crate) fn point_json(p: &ECPoint) -> Value {
    match p {
        ECPoint::Identity => s("O"),
        ECPoint::Affine { x, y } => json!({"x": x.to_string(), "y": y.to_string()}),
    }
}

fn load_curve(args: &CurveArgs, report: &mut Report) -> Result<Curve> {
    let q = Field::Rational;
    let curve = Curve::new(parse_ratfun(&args.a, q)?, parse_ratfun(&args.b, q)?)?;
    report.input("A", s(curve.a())).input("B", s(curve.b()));
    Ok(curve)
}

fn load_point(args: &PointArgs, report: &mut Report) -> Result<(Curve, ECPoint)> {
    let curve = load_curve(&args.curve, report)?;
    let q = Field::Rational;
    let p = ECPoint::affine(parse_ratfun(&args.x, q)?, parse_ratfun(&args.y, q)?);
    report.input("P", point_json(&p));
    if !curve.on_curve(&p) {
        return Err(Error::OffCurve);
    }
    Ok((curve, p))
}

fn load_system(text: &str) -> Result<DioSystem> {
    if text.trim_start().starts_with('{') {
        DioSystem::from_json(text)
    } else {
        let body = std::fs::read_to_string(text)
            .map_err(|e| Error::Invalid(format!("cannot read {text}: {e}")))?;
        DioSystem::from_json(&body)
    }
}

pub(crate) fn fibers_json(survey: &elliptic::FiberSurvey) -> Value {
    serde_json::to_value(&survey.fibers).expect("serializable")
}

pub(crate) fn tuple_json(tuple: &[crate::poly::Poly]) -> Value {
    Value::Array(tuple.iter().map(s).collect())
}

fn run(command: &Command) -> Result<Report> {
    let mut r = Report::new(&command_name(command));
    match command {
        Command::Deg(a) => {
            let f = load_fn(a, &mut r)?;
            r.output("map_degree", s(f.map_degree()));
        }
        Command::DegStar(a) => {
            let f = load_fn(a, &mut r)?;
            r.output("deg_star", s(f.deg_star()?));
        }
        Command::Val { f, at } => {
            let g = load_fn(f, &mut r)?;
            let point = parse_point(at, g.field())?;
            r.input("at", s(point_label(&point)));
            r.output("valuation", s(g.valuation_at(&point)?));
        }
        Command::Poles(a) => {
            let f = load_fn(a, &mut r)?;
            let d = divisor::pole_divisor(&f)?;
            r.output(
                "divisor",
                serde_json::to_value(d.to_entries()).expect("serializable"),
            )
            .output("geometric_degree", s(d.geometric_degree()))
            .output("support_point_count", s(d.support_point_count()));
        }
        Command::Pn { f, n } => {
            let g = load_fn(f, &mut r)?;
            r.input("n", s(n));
            r.output("member", divisor::pn_member(&g, *n)?);
        }
        Command::Veps { f, eps } => {
            let g = load_fn(f, &mut r)?;
            let e = parse_rational(eps)?;
            r.input("eps", rat(&e));
            r.output("member", divisor::veps_member(&g, &e)?);
        }
        Command::Campana { f, s: set, l } => {
            let g = load_fn(f, &mut r)?;
            let points = set
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| parse_point(t, g.field()))
                .collect::<Result<Vec<_>>>()?;
            let ell: Ell = l.parse()?;
            r.input(
                "S",
                Value::Array(points.iter().map(|p| s(point_label(p))).collect()),
            )
            .input("l", s(l.trim()));
            r.output("member", divisor::campana_member(&g, &points, ell)?);
        }
        Command::IsSquare { f, semantics } => {
            let g = load_fn(f, &mut r)?;
            let sem: SquareSemantics = (*semantics).into();
            r.input(
                "semantics",
                serde_json::to_value(sem).expect("serializable"),
            );
            let t = g.is_square(sem)?;
            r.output("is_square", t.is_square);
            if let Some(w) = t.witness {
                r.output("witness", s(w));
            }
        }
        Command::IsDerivative(a) => {
            let f = load_fn(a, &mut r)?;
            let c = lab::is_derivative(&f)?;
            r.output("is_derivative", c.is_derivative);
            if let Some(h) = c.antiderivative {
                r.output("antiderivative", s(h));
            }
        }
        Command::Hermite(a) => {
            let f = load_fn(a, &mut r)?;
            let red = lab::hermite_reduce(&f)?;
            r.output("h", s(&red.h))
                .output("remainder", s(red.remainder()))
                .output("polynomial_part", s(&red.polynomial))
                .output("proper_part", s(&red.proper));
        }
        Command::Frobenius(a) => {
            let f = load_fn(a, &mut r)?;
            let split = lab::frobenius_decompose(&f)?;
            r.output("parts", Value::Array(split.parts.iter().map(s).collect()))
                .output("in_D", split.in_d);
        }
        Command::EcMultiply { point, n } => {
            let (curve, p) = load_point(point, &mut r)?;
            r.input("n", s(n));
            r.output("point", point_json(&curve.multiply(*n, &p)?));
        }
        Command::EcHeight { point, n } => {
            let (curve, p) = load_point(point, &mut r)?;
            r.input("n", s(n));
            let q = curve.multiply(*n, &p)?;
            r.output("point", point_json(&q))
                .output("naive_height", s(curve.naive_height(&q)?));
        }
        Command::EcHhat { point, k } => {
            let (curve, p) = load_point(point, &mut r)?;
            r.input("k", s(k));
            r.output("estimate", rat(&curve.canonical_height_estimate(&p, *k)?));
        }
        Command::EcFibers(c) => {
            let curve = load_curve(c, &mut r)?;
            let survey = elliptic::bad_fibers(&curve)?;
            r.output("fibers", fibers_json(&survey))
                .output("delta_degree", s(survey.delta_degree))
                .output("rational_surface", survey.is_rational_surface());
        }
        Command::EcRank(c) => {
            let curve = load_curve(c, &mut r)?;
            let survey = elliptic::bad_fibers(&curve)?;
            r.output("rank", s(survey.rank()?));
            if let Some(lat) = elliptic::mordell_weil_lattice(&survey) {
                r.output("lattice", s(lat.name))
                    .output("minimal_height", rat(&lat.minimal_height));
            }
        }
        Command::EcGrowth { point, n_max } => {
            let (curve, p) = load_point(point, &mut r)?;
            r.input("n_max", s(n_max));
            let rows = curve.degree_growth(&p, *n_max)?;
            r.output(
                "rows",
                Value::Array(
                    rows.iter()
                        .map(|row| json!({"n": row.n.to_string(), "degree": row.degree.to_string(), "ratio": format_rational(&row.ratio)}))
                        .collect(),
                ),
            );
        }
        Command::EvalF {
            a,
            lo,
            hi,
            n,
            limit,
        } => match (a, lo, hi) {
            (Some(a), None, None) => {
                let v = parse_rational(a)?;
                r.input("a", rat(&v)).input("limit", s(limit));
                r.output("value", rat(&analytic::eval_exact_with_limit(&v, *limit)?));
            }
            (None, Some(lo), Some(hi)) => {
                let x = Interval::new(parse_rational(lo)?, parse_rational(hi)?)?;
                r.input("interval", serde_json::to_value(&x).expect("serializable"))
                    .input("N", s(n));
                let e = analytic::eval_interval(&x, *n)?;
                r.output("enclosure", serde_json::to_value(&e).expect("serializable"));
            }
            _ => {
                return Err(Error::parse(
                    0,
                    "eval-f needs either --a or both --lo and --hi",
                ))
            }
        },
        Command::SeriesG { n } => {
            r.input("N", s(n));
            let series = analytic::series_of_g(*n)?;
            r.output(
                "coefficients",
                Value::Array(series.coeffs.iter().map(rat).collect()),
            );
        }
        Command::GraphPoints { count } => {
            r.input("count", s(count));
            let pts = analytic::graph_points(*count)?;
            r.output(
                "points",
                Value::Array(
                    pts.iter()
                        .map(|(a, v)| json!([format_rational(a), format_rational(v)]))
                        .collect(),
                ),
            );
        }
        Command::Slice {
            system,
            alpha,
            beta,
            beta_max,
            max_candidates,
        } => {
            let sys = load_system(system)?;
            r.input("p", s(sys.field().characteristic()))
                .input("alpha", s(alpha))
                .input("max_candidates", s(max_candidates));
            match beta_max {
                Some(bm) => {
                    r.input("beta_max", s(bm));
                    let u = lab::slice_union(&sys, *alpha, *bm, *max_candidates)?;
                    r.output(
                        "union",
                        Value::Array(u.union.iter().map(|t| tuple_json(t)).collect()),
                    )
                    .output("sizes", Value::Array(u.sizes.iter().map(s).collect()))
                    .output("stabilized_at", u.stabilized_at.map_or(Value::Null, s));
                }
                None => {
                    r.input("beta", s(beta));
                    let res = lab::enumerate_slice(&sys, *alpha, *beta, *max_candidates)?;
                    r.output(
                        "projection",
                        Value::Array(res.projection.iter().map(|t| tuple_json(t)).collect()),
                    )
                    .output("solution_count", s(res.solutions.len()))
                    .output("stabilized", res.stabilized);
                }
            }
        }
        Command::ZeroSet { p, polys } => {
            let field = Field::prime(*p)?;
            let set = polys
                .iter()
                .filter(|t| !t.trim().is_empty())
                .map(|t| parse_poly(t, field))
                .collect::<Result<Vec<_>>>()?;
            r.input("field", s(field))
                .input("polys", Value::Array(set.iter().map(s).collect()));
            let zeros = lab::zero_set(&set, field)?;
            r.output("zeros", Value::Array(zeros.iter().map(rat).collect()));
        }
        Command::VerifyElliptic => verify::elliptic(&mut r)?,
        Command::VerifyAnalytic => verify::analytic(&mut r)?,
        Command::VerifyDivisors { seed } => {
            r.input("seed", s(seed));
            verify::divisors(&mut r, *seed)?
        }
        Command::VerifySlicer => verify::slicer(&mut r)?,
    }
    Ok(r)
}

/// Collects named checks for a verification report.
pub(crate) struct Checks {
    items: BTreeMap<String, bool>,
}

impl Checks {
    pub(crate) fn new() -> Checks {
        Checks {
            items: BTreeMap::new(),
        }
    }

    pub(crate) fn record(&mut self, name: &str, ok: bool) {
        self.items.insert(name.to_string(), ok);
    }

    pub(crate) fn finish(self, report: &mut Report) {
        let all = self.items.values().all(|&ok| ok);
        report.output(
            "checks",
            Value::Object(
                self.items
                    .into_iter()
                    .map(|(k, v)| (k, Value::Bool(v)))
                    .collect(),
            ),
        );
        report.pass = Some(all);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_json(args: &[&str]) -> (Value, i32) {
        let mut argv = vec!["funcfield", "--json", "--stable"];
        argv.extend_from_slice(args);
        let out = dispatch(argv);
        let v = if out.stdout.is_empty() {
            Value::Null
        } else {
            serde_json::from_str(&out.stdout).unwrap()
        };
        (v, out.code)
    }

    #[test]
    fn command_names_are_kebab_case() {
        assert_eq!(command_name(&Command::VerifySlicer), "verify-slicer");
        assert_eq!(command_name(&Command::SeriesG { n: 4 }), "series-g");
    }

    #[test]
    fn multiply_reports_duplication() {
        let (v, code) = run_json(&["ec-multiply", "--n", "2"]);
        assert_eq!(code, 0);
        assert_eq!(v["outputs"]["point"]["x"], "z^2/4");
        assert_eq!(v["outputs"]["point"]["y"], "-z^3/8 - 1");
    }

    #[test]
    fn campana_rejects_finite_pole() {
        let (v, code) = run_json(&["campana", "--f", "1/(z-5)", "--S", "inf", "--l", "inf"]);
        assert_eq!(code, 0);
        assert_eq!(v["outputs"]["member"], false);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_json(&["deg", "--f", "z^2 +"]).1, 2);
        assert_eq!(run_json(&["no-such-command"]).1, 2);
        assert_eq!(run_json(&["deg-star", "--f", "0"]).1, 1);
        assert_eq!(run_json(&["deg", "--f", "z", "--p", "4"]).1, 1);
        let help = dispatch(["funcfield", "--help"]);
        assert_eq!(help.code, 0);
        assert!(help.stdout.contains("verify-elliptic"));
    }

    #[test]
    fn stable_output_is_deterministic() {
        let a = dispatch([
            "funcfield",
            "--json",
            "--stable",
            "poles",
            "--f",
            "1/((z-1)^2*(z+2))",
        ]);
        let b = dispatch([
            "funcfield",
            "--json",
            "--stable",
            "poles",
            "--f",
            "1/((z-1)^2*(z+2))",
        ]);
        assert_eq!(a.stdout, b.stdout);
        assert!(!a.stdout.contains("timing_ms"));
    }
}
