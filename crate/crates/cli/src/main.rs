//! `tropica`: JSON in, JSON (and optionally SVG) out.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use tropica::error::ParseError;
use tropica::hyper::hyper_eval_uni;
use tropica::intersect::stable_intersections_with_direction;
use tropica::io::{array, check_schema, document, error_document, field, rational, rational_json, uint, Wire};
use tropica::number::{format_rational, parse_rational};
use tropica::patchwork::QuadrantCopy;
use tropica::*;

#[derive(Parser)]
#[command(name = "tropica", version, about = "Exact plane tropical geometry on JSON documents")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Io {
    /// JSON input file, `-` for standard input.
    #[arg(long, default_value = "-")]
    input: String,
    /// Also write an SVG picture to this path.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// SVG viewport as `x0,y0,x1,y1`.
    #[arg(long, value_parser = parse_viewport, allow_hyphen_values = true)]
    viewport: Option<Viewport>,
}

#[derive(Clone, Debug)]
struct Viewport([Rational; 4]);

#[derive(Subcommand)]
enum Command {
    /// Evaluate a polynomial: `{"poly": ..., "at": ...}`.
    Eval(Io),
    /// Roots of a univariate polynomial with their orders.
    Roots(Io),
    /// Factor a univariate polynomial into linear factors.
    Factor(Io),
    /// Tropical curve of a bivariate polynomial, or of `{"dual": ..., "anchor": ...}`.
    Curve(Io),
    /// Dual subdivision of a bivariate polynomial.
    Dual(Io),
    /// Check the balancing condition of a curve (or of a polynomial's curve).
    Balance(Io),
    /// Transverse intersection points of `{"p1": ..., "p2": ...}`.
    Intersect(Io),
    /// Stable intersection of `{"p1": ..., "p2": ...}`, optionally with `"direction": [a, b]`.
    Stable(Io),
    /// Compare the stable intersection count with the product of the degrees.
    Bezout(Io),
    /// Real tropical curves.
    #[command(subcommand)]
    Patchwork(PatchworkCommand),
    /// Amoebas of families of complex curves.
    #[command(subcommand)]
    Amoeba(AmoebaCommand),
    /// Maslov dequantised sum `log_t(t^x + t^y)` of `{"x": ..., "y": ..., "t": ..., "precision": ...}`.
    Dequant {
        #[command(flatten)]
        io: Io,
        /// Base `t > 1`; overrides the input field.
        #[arg(long, value_parser = parse_t)]
        t: Option<Rational>,
    },
}

#[derive(Subcommand)]
enum PatchworkCommand {
    /// Check a survivor set against the erasure rules.
    Validate(Io),
    /// List valid survivor sets with their arrangement statistics.
    Enumerate {
        #[command(flatten)]
        io: Io,
        /// Stop after this many patchworks.
        #[arg(long, default_value_t = 64)]
        limit: usize,
    },
    /// Components, boundedness and nesting of a real tropical curve.
    Stats(Io),
}

#[derive(Subcommand)]
enum AmoebaCommand {
    /// Sample the amoeba of a coefficient family at one base.
    Sample {
        #[command(flatten)]
        io: Io,
        /// Base `t > 1`; overrides the input field.
        #[arg(long, value_parser = parse_t)]
        t: Option<Rational>,
        /// Grid size as `MODULI,PHASES`.
        #[arg(long, value_parser = parse_grid)]
        grid: Option<(usize, usize)>,
    },
    /// Deviation of sampled amoebas from the tropical limit for several bases.
    Converge {
        #[command(flatten)]
        io: Io,
        /// Grid size as `MODULI,PHASES`.
        #[arg(long, value_parser = parse_grid)]
        grid: Option<(usize, usize)>,
    },
}

fn parse_viewport(s: &str) -> Result<Viewport, String> {
    let parts: Vec<Rational> = s.split(',').map(parse_number).collect::<Result<_, _>>()?;
    let [x0, y0, x1, y1]: [Rational; 4] = parts.try_into().map_err(|_| "expected x0,y0,x1,y1".to_string())?;
    Ok(Viewport([x0, y0, x1, y1]))
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (m, p) = s.split_once(',').ok_or("expected MODULI,PHASES")?;
    let n = |v: &str| v.trim().parse::<usize>().map_err(|e| format!("{v:?}: {e}"));
    Ok((n(m)?, n(p)?))
}

fn parse_t(s: &str) -> Result<Rational, String> {
    parse_number(s)
}

/// A rational literal, or any float literal such as `1e6` (converted exactly).
fn parse_number(s: &str) -> Result<Rational, String> {
    parse_rational(s).or_else(|e| {
        s.trim()
            .parse::<f64>()
            .ok()
            .and_then(Rational::from_float)
            .ok_or_else(|| e.to_string())
    })
}

/// How a command failed: bad input exits with 2, domain errors with 1.
enum Failure {
    Input(String),
    Domain { kind: &'static str, message: String },
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<tropica::Error> for Failure {
    fn from(e: tropica::Error) -> Self {
        let kind = match &e {
            tropica::Error::Parse(p) => return Failure::Input(p.to_string()),
            tropica::Error::Dequant(_) => "dequant",
            tropica::Error::Poly(_) => "polynomial",
            tropica::Error::Subdivision(_) => "subdivision",
            tropica::Error::Balance(_) => "balance",
            tropica::Error::Intersect(_) => "intersection",
            tropica::Error::Patchwork(_) => "patchwork",
            tropica::Error::Amoeba(_) => "amoeba",
            tropica::Error::Render(_) => "render",
        };
        Failure::Domain { kind, message: e.to_string() }
    }
}

fn domain<E: Into<tropica::Error>>(e: E) -> Failure {
    Failure::from(e.into())
}

type Outcome = Result<Value, Failure>;

fn read_input(io: &Io) -> Result<Value, Failure> {
    let mut text = String::new();
    if io.input == "-" {
        io::stdin().read_to_string(&mut text).map_err(|e| Failure::Input(format!("standard input: {e}")))?;
    } else {
        text = fs::read_to_string(&io.input).map_err(|e| Failure::Input(format!("{}: {e}", io.input)))?;
    }
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Input(format!("malformed JSON: {e}")))?;
    check_schema(&v)?;
    Ok(v)
}

fn write_svg(io: &Io, scene: Scene<'_>) -> Result<(), Failure> {
    let Some(path) = &io.svg else { return Ok(()) };
    let spec = RenderSpec { viewport: io.viewport.as_ref().map(|v| v.0.clone()), ..RenderSpec::default() };
    let svg = render_svg(&scene, &spec).map_err(domain)?;
    fs::write(path, svg).map_err(|e| Failure::Domain { kind: "output", message: format!("{}: {e}", path.display()) })
}

/// A bivariate polynomial, either bare or under `key`.
fn bipoly_at(v: &Value, key: &str) -> Result<BiPoly, Failure> {
    Ok(BiPoly::from_json(v.get(key).unwrap_or(v))?)
}

fn unipoly(v: &Value) -> Result<UniPoly, Failure> {
    Ok(UniPoly::from_json(v.get("poly").unwrap_or(v))?)
}

/// A curve given directly, as `{"curve": ...}`, or through a polynomial.
fn curve_input(v: &Value) -> Result<TropicalCurve, Failure> {
    if let Some(c) = v.get("curve") {
        return Ok(TropicalCurve::from_json(c)?);
    }
    if let Some(p) = v.get("poly") {
        return Ok(tropical_curve(&BiPoly::from_json(p)?));
    }
    if v.get("vars").is_some() {
        return Ok(tropical_curve(&BiPoly::from_json(v)?));
    }
    Ok(TropicalCurve::from_json(v)?)
}

fn pair(v: &Value) -> Result<(BiPoly, BiPoly), Failure> {
    Ok((BiPoly::from_json(field(v, "p1")?)?, BiPoly::from_json(field(v, "p2")?)?))
}

fn eval(io: &Io) -> Outcome {
    let v = read_input(io)?;
    let poly = field(&v, "poly")?;
    let at = field(&v, "at")?;
    if poly.get("vars").and_then(Value::as_u64) == Some(2) {
        let p = BiPoly::from_json(poly)?;
        let point = Point::from_json(at)?;
        let terms: Vec<Value> = p.maximizing_terms(&point).iter().map(Wire::to_json).collect();
        return Ok(document(json!({ "value": rational_json(&p.eval(&point)), "maximizing": terms })));
    }
    let p = UniPoly::from_json(poly)?;
    let x = TropicalNumber::from_json(at)?;
    Ok(document(json!({ "value": eval_uni(&p, &x).to_json(), "hyper": hyper_eval_uni(&p, &x).to_json() })))
}

fn roots(io: &Io) -> Outcome {
    let p = unipoly(&read_input(io)?)?;
    Ok(document(json!({ "roots": roots_uni(&p).to_json() })))
}

fn factor(io: &Io) -> Outcome {
    let p = unipoly(&read_input(io)?)?;
    let f = factor_uni(&p);
    Ok(document(json!({ "leading": f.leading.to_json(), "roots": f.roots.to_json() })))
}

fn curve(io: &Io) -> Outcome {
    let v = read_input(io)?;
    let c = if let Some(dual) = v.get("dual") {
        let sub = DualSubdivision::from_json(dual)?;
        let anchor = field(&v, "anchor")?;
        let cell = usize::try_from(uint(field(anchor, "cell")?)?).map_err(|_| Failure::Input("cell index".into()))?;
        curve_from_dual_description(&sub, cell, Point::from_json(anchor)?).map_err(domain)?
    } else {
        tropical_curve(&bipoly_at(&v, "poly")?)
    };
    write_svg(io, Scene::Curve(&c))?;
    Ok(document(c.to_json()))
}

fn dual(io: &Io) -> Outcome {
    let s = dual_subdivision(&bipoly_at(&read_input(io)?, "poly")?);
    write_svg(io, Scene::Subdivision(&s))?;
    Ok(document(s.to_json()))
}

fn balance(io: &Io) -> Outcome {
    let c = curve_input(&read_input(io)?)?;
    let report = check_balancing(&c).map_err(domain)?;
    Ok(document(report.to_json()))
}

fn intersect(io: &Io) -> Outcome {
    let (p1, p2) = pair(&read_input(io)?)?;
    let (c1, c2) = (tropical_curve(&p1), tropical_curve(&p2));
    let points = transverse_intersections(&c1, &c2).map_err(domain)?;
    Ok(document(points.to_json()))
}

fn stable(io: &Io) -> Outcome {
    let v = read_input(io)?;
    let (p1, p2) = pair(&v)?;
    let (c1, c2) = (tropical_curve(&p1), tropical_curve(&p2));
    let points = match v.get("direction") {
        None => stable_intersections(&c1, &c2),
        Some(d) => {
            let d = tropica::geometry::Direction::from_json(d)?;
            stable_intersections_with_direction(&c1, &c2, (d.dx, d.dy)).map_err(domain)?
        }
    };
    Ok(document(points.to_json()))
}

fn bezout(io: &Io) -> Outcome {
    let (p1, p2) = pair(&read_input(io)?)?;
    Ok(document(bezout_check(&p1, &p2).map_err(domain)?.to_json()))
}

fn real_curve(v: &Value) -> Result<RealTropicalCurve, Failure> {
    let c = curve_input(v)?;
    let survivors = Vec::<QuadrantCopy>::from_json(field(v, "survivors")?)?;
    RealTropicalCurve::new(c, survivors).map_err(domain)
}

fn patchwork(cmd: &PatchworkCommand) -> Outcome {
    match cmd {
        PatchworkCommand::Validate(io) => {
            let v = read_input(io)?;
            let c = curve_input(&v)?;
            let survivors = Vec::<QuadrantCopy>::from_json(field(&v, "survivors")?)?;
            let report = patchwork_validate(&c, &survivors).map_err(domain)?;
            let real = RealTropicalCurve::new(c, survivors).map_err(domain)?;
            write_svg(io, Scene::Patchwork(&real))?;
            Ok(document(report.to_json()))
        }
        PatchworkCommand::Enumerate { io, limit } => {
            let c = curve_input(&read_input(io)?)?;
            let all = patchwork_enumerate(&c, *limit).map_err(domain)?;
            if let Some(first) = all.first() {
                write_svg(io, Scene::Patchwork(first))?;
            }
            let items: Vec<Value> = all
                .iter()
                .map(|r| {
                    let survivors: Vec<QuadrantCopy> = r.survivors.iter().copied().collect();
                    json!({ "survivors": survivors.to_json(), "stats": arrangement_stats(r).to_json() })
                })
                .collect();
            Ok(document(json!({ "count": items.len(), "limit": limit, "patchworks": items })))
        }
        PatchworkCommand::Stats(io) => {
            let real = real_curve(&read_input(io)?)?;
            write_svg(io, Scene::Patchwork(&real))?;
            Ok(document(arrangement_stats(&real).to_json()))
        }
    }
}

fn grid_spec(grid: Option<(usize, usize)>) -> GridSpec {
    match grid {
        Some((moduli, phases)) => GridSpec { moduli, phases, ..GridSpec::default() },
        None => GridSpec::default(),
    }
}

fn family(v: &Value) -> Result<CoefficientFamily, Failure> {
    Ok(CoefficientFamily::from_json(v.get("family").unwrap_or(v))?)
}

fn amoeba(cmd: &AmoebaCommand) -> Outcome {
    match cmd {
        AmoebaCommand::Sample { io, t, grid } => {
            let v = read_input(io)?;
            let f = family(&v)?;
            let t = match t {
                Some(t) => t.clone(),
                None => rational(field(&v, "t")?)?,
            };
            let sample = sample_amoeba(&f, &t, &grid_spec(*grid)).map_err(domain)?;
            if io.svg.is_some() {
                let curve = tropical_curve(&f.tropical_limit());
                write_svg(io, Scene::Amoeba { curve: &curve, samples: &sample.points })?;
            }
            Ok(document(sample.to_json()))
        }
        AmoebaCommand::Converge { io, grid } => {
            let v = read_input(io)?;
            let f = family(&v)?;
            let ts = match v.get("ts") {
                Some(ts) => array(ts)?.iter().map(rational).collect::<Result<Vec<_>, _>>()?,
                None => [2, 8, 32, 128].iter().map(|&t| Rational::from_integer(t.into())).collect(),
            };
            let report = convergence_report(&f, &ts, &grid_spec(*grid)).map_err(domain)?;
            Ok(document(report.to_json()))
        }
    }
}

fn dequant(io: &Io, t: &Option<Rational>) -> Outcome {
    let v = read_input(io)?;
    let x = rational(field(&v, "x")?)?;
    let y = rational(field(&v, "y")?)?;
    let t = match t {
        Some(t) => t.clone(),
        None => rational(field(&v, "t")?)?,
    };
    let precision = match v.get("precision") {
        Some(p) => u32::try_from(uint(p)?).map_err(|_| Failure::Input("precision out of range".into()))?,
        None => tropica::dequant::MAX_PRECISION_DIGITS,
    };
    let value = dequant_add(&x, &y, &t, precision).map_err(domain)?;
    let width = tropica::dequant::sandwich_width(&t).map_err(domain)?;
    let top = std::cmp::max(&x, &y);
    Ok(document(json!({
        "value": value,
        "max": format_rational(top),
        "bound": width,
        "t": rational_json(&t),
        "precision": precision,
    })))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Eval(io) => eval(io),
        Command::Roots(io) => roots(io),
        Command::Factor(io) => factor(io),
        Command::Curve(io) => curve(io),
        Command::Dual(io) => dual(io),
        Command::Balance(io) => balance(io),
        Command::Intersect(io) => intersect(io),
        Command::Stable(io) => stable(io),
        Command::Bezout(io) => bezout(io),
        Command::Patchwork(cmd) => patchwork(cmd),
        Command::Amoeba(cmd) => amoeba(cmd),
        Command::Dequant { io, t } => dequant(io, t),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            let text = serde_json::to_string_pretty(&out).expect("JSON values serialise");
            if writeln!(stdout, "{text}").is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Input(message)) => {
            eprintln!("{}", error_document("input", &message));
            ExitCode::from(2)
        }
        Err(Failure::Domain { kind, message }) => {
            eprintln!("{}", error_document(kind, &message));
            ExitCode::from(1)
        }
    }
}
