//! Command-line front end. Every command produces one or more [`Report`]s,
//! printed as JSON lines or as indented text.
//!
//! Exit codes: 0 when every reported check passes, 1 when a mathematical
//! check fails, 2 on usage or input errors.

pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::chern::{self, DivisorClass, Surface};
use crate::connection::{self, ConnectionError};
use crate::exactalg::{parse_poly, parse_rational, qi, Rational};
use crate::foliation::{self, BlowUpNode, BlowUpTree, Chart, NodeKind, ReduceError, VectorFieldGerm};
use crate::thresholds::{self, CertificateReport, CLAIMED_MIN_DEGREE};

pub use report::{rat, Report, VERSION};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "logjet", version, about = "Exact checks for log orbifold jet differentials and foliation reduction")]
pub struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the degree certifier on (P^2, C_d)
    Certify(CertifyArgs),
    /// Euler characteristic of E_{2,m} twisted by a divisor class
    Chi(ChiArgs),
    /// Lower bounds for the vanishing thresholds
    Threshold(ThresholdArgs),
    /// Solve for the meromorphic connection on a Fermat-type family
    Connection(ConnectionArgs),
    /// Reduce a planar vector field singularity by point blow-ups
    Reduce(ReduceArgs),
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("degrees").required(true).args(["d", "from"])))]
pub struct CertifyArgs {
    /// Single degree
    #[arg(long, conflicts_with_all = ["from", "to"])]
    pub d: Option<i64>,
    /// First degree of a range scan
    #[arg(long, requires = "to")]
    pub from: Option<i64>,
    /// Last degree of a range scan (inclusive)
    #[arg(long, requires = "from")]
    pub to: Option<i64>,
    /// Only check the sign of the leading Euler characteristic coefficient
    #[arg(long)]
    pub chi_only: bool,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("source").required(true).args(["plane", "surface"])))]
#[command(group(ArgGroup::new("what").required(true).args(["m", "leading"])))]
pub struct ChiArgs {
    /// Use (P^2, C_d) with this curve degree
    #[arg(long)]
    pub plane: Option<i64>,
    /// Surface specification file (JSON)
    #[arg(long)]
    pub surface: Option<PathBuf>,
    /// Jet order m
    #[arg(long)]
    pub m: Option<u32>,
    /// Leading m^4 coefficient instead of a single value
    #[arg(long)]
    pub leading: bool,
    /// Extra twist, comma-separated coordinates in the surface basis
    #[arg(long, allow_hyphen_values = true)]
    pub twist: Option<String>,
}

#[derive(Args, Debug)]
pub struct ThresholdArgs {
    /// Which bound: 141, 142, 144 or 145
    #[arg(long)]
    pub lemma: u32,
    #[arg(long)]
    pub d: i64,
    /// Jet order (m0 for 142)
    #[arg(long)]
    pub m: Option<i64>,
}

#[derive(Args, Debug)]
pub struct ConnectionArgs {
    #[arg(long)]
    pub d: u32,
    #[arg(long)]
    pub k0: u32,
    #[arg(long)]
    pub k1: u32,
    #[arg(long)]
    pub k2: u32,
    /// Deformation coefficient, an integer or p/q
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
}

#[derive(Args, Debug)]
pub struct ReduceArgs {
    /// Vector field file: P(x,y) on line 1, Q(x,y) on line 2
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 12)]
    pub max_depth: u32,
}

/// Input or usage problem, reported on stderr with exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<Vec<Report>, UsageError>;

/// Parses `args` (including the program name), runs the command and writes
/// its output. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(reports) => {
            for r in &reports {
                let s = match cli.format {
                    Format::Json => r.to_json() + "\n",
                    Format::Text => r.to_text(),
                };
                let _ = out.write_all(s.as_bytes());
            }
            if reports.iter().all(Report::all_pass) {
                EXIT_PASS
            } else {
                EXIT_CHECK_FAILED
            }
        }
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

pub fn execute(cmd: &Command) -> CmdResult {
    match cmd {
        Command::Certify(a) => cmd_certify(a),
        Command::Chi(a) => cmd_chi(a),
        Command::Threshold(a) => cmd_threshold(a),
        Command::Connection(a) => cmd_connection(a),
        Command::Reduce(a) => cmd_reduce(a),
    }
}

fn certificate_report(c: &CertificateReport, chi_only: bool) -> Report {
    let mut r = Report::new("certify");
    r.param("d", c.d).param("chi_only", chi_only);
    r.rational("chi_leading", &c.chi_leading);
    r.check("chi_leading_positive", c.chi_passes);
    if !chi_only {
        r.value("epsilon", c.epsilon)
            .rational("small_branch_theta", &c.small_branch_theta)
            .rational("small_branch_value", &c.small_branch_value)
            .rational("small_branch_alt_parity", &c.small_branch_alt_parity)
            .rational("large_branch_theta", &c.large_branch_theta)
            .rational("large_branch_value", &c.large_branch_value);
        r.check("small_branch_positive", c.small_branch_passes)
            .check("large_branch_positive", c.large_branch_passes);
        for n in &c.discrepancy_notes {
            r.note(n.clone());
        }
    }
    r
}

pub fn cmd_certify(a: &CertifyArgs) -> CmdResult {
    let (from, to) = match (a.d, a.from, a.to) {
        (Some(d), _, _) => (d, d),
        (None, Some(f), Some(t)) => (f, t),
        _ => return Err(UsageError("give --d or --from/--to".into())),
    };
    if from < 4 {
        return Err(UsageError(format!("certifier needs d >= 4, got {from}")));
    }
    if to < from {
        return Err(UsageError(format!("empty range {from}..{to}")));
    }
    let certs = (from..=to)
        .into_par_iter()
        .map(thresholds::certify_degree)
        .collect::<Result<Vec<_>, _>>()?;
    let mut reports: Vec<Report> = certs.iter().map(|c| certificate_report(c, a.chi_only)).collect();
    if a.d.is_none() {
        let mut s = Report::new("certify-summary");
        s.param("from", from).param("to", to).param("chi_only", a.chi_only);
        let scan: Vec<CertificateReport> = if a.chi_only {
            certs.iter().map(|c| CertificateReport { passes: c.chi_passes, ..c.clone() }).collect()
        } else {
            certs.clone()
        };
        let failing: Vec<i64> = scan.iter().filter(|c| !c.passes).map(|c| c.d).collect();
        s.value("minimal_uniform_degree", thresholds::minimal_uniform_degree(&scan).map_or(Value::Null, Value::from))
            .value("claimed_min_degree", CLAIMED_MIN_DEGREE)
            .value("failing_degrees", failing);
        let claim_holds = scan.iter().filter(|c| c.d >= CLAIMED_MIN_DEGREE).all(|c| c.passes);
        s.check("claim_holds_on_range", claim_holds);
        if !claim_holds {
            s.note(format!(
                "some d >= {CLAIMED_MIN_DEGREE} in the range fail as literally stated; see the per-degree notes"
            ));
        }
        reports.push(s);
    }
    Ok(reports)
}

fn parse_class(src: &str, dim: usize) -> Result<DivisorClass<Rational>, UsageError> {
    let coords = src
        .split(',')
        .map(|t| parse_rational(t.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    if coords.len() != dim {
        return Err(UsageError(format!("twist has {} coordinates, surface basis has {dim}", coords.len())));
    }
    Ok(DivisorClass(coords))
}

fn json_rational(v: &Value, what: &str) -> Result<Rational, UsageError> {
    match v {
        Value::String(s) => Ok(parse_rational(s)?),
        Value::Number(n) if n.is_i64() => Ok(qi(n.as_i64().unwrap())),
        _ => Err(UsageError(format!("{what}: expected an integer or a \"p/q\" string, got {v}"))),
    }
}

fn json_vector(v: &Value, what: &str) -> Result<Vec<Rational>, UsageError> {
    v.as_array()
        .ok_or_else(|| UsageError(format!("{what}: expected an array")))?
        .iter()
        .map(|x| json_rational(x, what))
        .collect()
}

/// Reads `{basis, form, c1, c2, c1log, c2log}`.
pub fn parse_surface(src: &str) -> Result<Surface<Rational>, UsageError> {
    let v: Value = serde_json::from_str(src)?;
    let field = |k: &str| v.get(k).ok_or_else(|| UsageError(format!("surface spec is missing \"{k}\"")));
    let basis = field("basis")?
        .as_array()
        .ok_or_else(|| UsageError("basis: expected an array of names".into()))?
        .iter()
        .map(|b| b.as_str().map(str::to_string).ok_or_else(|| UsageError("basis: names must be strings".into())))
        .collect::<Result<Vec<_>, _>>()?;
    let form = field("form")?
        .as_array()
        .ok_or_else(|| UsageError("form: expected a matrix".into()))?
        .iter()
        .map(|row| json_vector(row, "form"))
        .collect::<Result<Vec<_>, _>>()?;
    let surface = Surface::new(
        basis,
        form,
        DivisorClass(json_vector(field("c1")?, "c1")?),
        json_rational(field("c2")?, "c2")?,
        DivisorClass(json_vector(field("c1log")?, "c1log")?),
        json_rational(field("c2log")?, "c2log")?,
    )?;
    Ok(surface)
}

pub fn cmd_chi(a: &ChiArgs) -> CmdResult {
    let mut r = Report::new("chi");
    let surface = match (&a.plane, &a.surface) {
        (Some(d), _) => {
            if *d < 1 {
                return Err(UsageError(format!("plane curve degree must be positive, got {d}")));
            }
            r.param("plane", *d);
            chern::plane(*d)
        }
        (None, Some(path)) => {
            let src = std::fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
            r.param("surface", path.display().to_string());
            parse_surface(&src)?
        }
        (None, None) => return Err(UsageError("give --plane or --surface".into())),
    };
    let twist = match &a.twist {
        Some(t) => {
            r.param("twist", t.clone());
            parse_class(t, surface.dim())?
        }
        None => DivisorClass::zero(surface.dim()),
    };
    r.rational("c1log_sq", &surface.c1_log_sq()).rational("c2log", &surface.c2_log);
    if a.leading {
        r.param("leading", true);
        let lead = chern::chi_e2m_leading(&surface, &twist)?;
        r.rational("leading", &lead);
        r.check("leading_positive", lead.is_positive());
    } else if let Some(m) = a.m {
        r.param("m", m);
        r.rational("chi", &chern::chi_e2m(&surface, m, &twist)?);
    }
    Ok(vec![r])
}

pub fn cmd_threshold(a: &ThresholdArgs) -> CmdResult {
    let mut r = Report::new("threshold");
    r.param("lemma", a.lemma).param("d", a.d);
    if let Some(m) = a.m {
        r.param("m", m);
    }
    let need_m = || a.m.ok_or_else(|| UsageError(format!("--lemma {} needs --m", a.lemma)));
    match a.lemma {
        141 | 142 | 144 => {
            let m = need_m()?;
            let t = match a.lemma {
                141 => thresholds::theta1_lower(a.d, m)?,
                142 => thresholds::theta2_lower_142(a.d, m)?,
                _ => thresholds::theta2_lower_144(a.d, m)?,
            };
            r.rational("bound", &t.bound).value("source", t.source.label());
        }
        145 => {
            let small = thresholds::theta2_small_branch(a.d)?;
            let large = thresholds::theta2_large_branch(a.d)?;
            let c = thresholds::certify_degree(a.d)?;
            r.rational("small_branch_bound", &small.bound)
                .rational("large_branch_bound", &large.bound)
                .rational("small_branch_value", &c.small_branch_value)
                .rational("large_branch_value", &c.large_branch_value)
                .value("epsilon", c.epsilon);
            r.check("small_branch_positive", c.small_branch_passes)
                .check("large_branch_positive", c.large_branch_passes);
            for n in c.discrepancy_notes {
                r.note(n);
            }
        }
        other => return Err(UsageError(format!("unknown lemma {other}; expected 141, 142, 144 or 145"))),
    }
    Ok(vec![r])
}

pub fn cmd_connection(a: &ConnectionArgs) -> CmdResult {
    let coeff = parse_rational(&a.a)?;
    let mut r = Report::new("connection");
    r.param("d", a.d).param("k0", a.k0).param("k1", a.k1).param("k2", a.k2).param("a", rat(&coeff));
    let family = connection::build_family(a.d, a.k0, a.k1, a.k2, coeff)?;
    let t1 = connection::wronskian_twist(a.d as i64, family.p() as i64)?;
    r.value("p", family.p()).rational("t1", &t1);
    r.value("pole_divisor", family.pole_divisor().display_with(&connection::VARS));
    let data = match connection::solve_connection(&family) {
        Ok(d) => d,
        Err(ConnectionError::SingularSystem) => {
            r.check("solvable", false);
            r.note("the linear system for the Christoffel symbols is singular for these parameters");
            return Ok(vec![r]);
        }
        Err(e) => return Err(e.into()),
    };
    r.check("solvable", true);
    let mut gammas = serde_json::Map::new();
    for k in 0..3 {
        for i in 0..3 {
            for j in i..3 {
                let g = data.gamma(k, i, j);
                if !g.numer().is_zero() {
                    gammas.insert(format!("Gamma^{k}_{i}{j}"), Value::String(g.display_with(&connection::VARS)));
                }
            }
        }
    }
    r.value("christoffels", Value::Object(gammas))
        .value("jacobian_det", data.jacobian_det.display_with(&connection::VARS));
    r.check("residual_zero", data.residual_is_zero(&family))
        .check("symmetric", data.is_symmetric())
        .check("homogeneous_degree_minus_one", data.is_homogeneous_of_degree_minus_one())
        .check("poles_in_divisor", data.poles_contained_in(&family.pole_divisor()));
    Ok(vec![r])
}

/// Line 1 is `P`, line 2 is `Q`; blank lines and `#` comments are skipped.
pub fn parse_vector_field(src: &str) -> Result<VectorFieldGerm, UsageError> {
    let lines: Vec<&str> = src.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
    if lines.len() != 2 {
        return Err(UsageError(format!("expected two polynomial lines (P and Q), found {}", lines.len())));
    }
    let p = parse_poly(lines[0], &foliation::VARS).map_err(|e| UsageError(format!("P: {e}")))?;
    let q = parse_poly(lines[1], &foliation::VARS).map_err(|e| UsageError(format!("Q: {e}")))?;
    Ok(VectorFieldGerm::polynomial(p, q)?)
}

fn node_json(n: &BlowUpNode) -> Value {
    let center = match &n.center {
        None => Value::Null,
        Some((Chart::First, t)) => json!({"chart": 1, "t": rat(t)}),
        Some((Chart::Second, s)) => json!({"chart": 2, "s": rat(s)}),
    };
    let class = json!({
        "tag": n.class.tag.label(),
        "trace": rat(&n.class.trace),
        "det": rat(&n.class.det),
        "ratio": n.class.ratio.as_ref().map_or(Value::Null, rat),
    });
    let mut obj = json!({
        "center": center,
        "class": class,
        "depth": n.depth,
        "p": n.germ.p.display_with(&foliation::VARS),
        "q": n.germ.q.display_with(&foliation::VARS),
    });
    let map = obj.as_object_mut().unwrap();
    match &n.kind {
        NodeKind::Leaf => {
            map.insert("status".into(), "reduced".into());
        }
        NodeKind::DepthLimit => {
            map.insert("status".into(), "depth-limit".into());
        }
        NodeKind::InsufficientJet => {
            map.insert("status".into(), "insufficient-jet".into());
        }
        NodeKind::Blown { order, dicritical, division_exponent, children, irrational } => {
            map.insert("status".into(), "blown-up".into());
            map.insert("order".into(), (*order).into());
            map.insert("dicritical".into(), (*dicritical).into());
            map.insert("division_exponent".into(), (*division_exponent).into());
            map.insert(
                "irrational_directions".into(),
                irrational.iter().map(|f| f.display_with("t")).collect::<Vec<_>>().into(),
            );
            map.insert("children".into(), children.iter().map(node_json).collect::<Vec<_>>().into());
        }
    }
    obj
}

fn tree_report(r: &mut Report, tree: &BlowUpTree) {
    let leaves: Vec<Value> = tree
        .leaves()
        .iter()
        .map(|l| {
            let status = match l.kind {
                NodeKind::Leaf => l.class.tag.label(),
                NodeKind::DepthLimit => "depth-limit",
                NodeKind::InsufficientJet => "insufficient-jet",
                NodeKind::Blown { .. } => unreachable!(),
            };
            Value::String(match &l.class.ratio {
                Some(q) => format!("depth {}: {status} lambda={q}", l.depth),
                None => format!("depth {}: {status}", l.depth),
            })
        })
        .collect();
    r.value("depth", tree.depth())
        .value("blow_ups", tree.root.blow_up_count())
        .value("leaves", leaves)
        .value("tree", node_json(&tree.root));
    r.text_block = Some(tree.render());
    let irr = tree.root.irrational_count();
    if irr > 0 {
        r.note(format!("{irr} irrational singular direction(s) were not followed"));
    }
    r.check("fully_reduced", tree.fully_reduced());
}

pub fn cmd_reduce(a: &ReduceArgs) -> CmdResult {
    let src = std::fs::read_to_string(&a.input).map_err(|e| UsageError(format!("{}: {e}", a.input.display())))?;
    let v = parse_vector_field(&src)?;
    let mut r = Report::new("reduce");
    r.param("input", a.input.display().to_string()).param("max_depth", a.max_depth);
    match foliation::reduce(&v, a.max_depth) {
        Ok(tree) => tree_report(&mut r, &tree),
        Err(ReduceError::DepthExceeded(tree)) => {
            tree_report(&mut r, &tree);
            r.note(format!("reduction did not finish within depth {}", a.max_depth));
        }
        Err(ReduceError::Foliation(e)) => return Err(e.into()),
    }
    Ok(vec![r])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("logjet").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn values(out: &str) -> Vec<Value> {
        out.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
    }

    #[test]
    fn certify_single_degrees() {
        let (code, out, _) = run_args(&["certify", "--d", "11", "--chi-only"]);
        assert_eq!(code, 0);
        assert_eq!(values(&out)[0]["values"]["chi_leading"], "13/648");
        let (code, _, _) = run_args(&["certify", "--d", "10", "--chi-only"]);
        assert_eq!(code, 1);
    }

    #[test]
    fn certify_range_summary() {
        let (code, out, _) = run_args(&["certify", "--from", "4", "--to", "30"]);
        assert_eq!(code, 1);
        let v = values(&out);
        assert_eq!(v.len(), 28);
        let summary = v.last().unwrap();
        assert_eq!(summary["values"]["minimal_uniform_degree"], 16);
        assert_eq!(summary["passes"]["claim_holds_on_range"], false);
    }

    #[test]
    fn chi_examples() {
        let (_, out, _) = run_args(&["chi", "--plane", "11", "--leading", "--twist", "-1"]);
        assert_eq!(values(&out)[0]["values"]["leading"], "13/648");
        let (code, out, _) = run_args(&["chi", "--plane", "4", "--m", "0"]);
        assert_eq!(code, 0);
        assert_eq!(values(&out)[0]["values"]["chi"], "1");
    }

    #[test]
    fn custom_surface_json() {
        // identity form, c̄₁ = (1, 3): c̄₁² = 10, c̄₂ = 2
        let s = r#"{"basis":["a","b"],"form":[[1,0],[0,1]],"c1":[2,1],"c2":"3","c1log":[1,3],"c2log":2}"#;
        let surface = parse_surface(s).unwrap();
        assert_eq!(surface.c1_log_sq(), qi(10));
        let lead = chern::chi_e2m_leading(&surface, &DivisorClass::zero(2)).unwrap();
        assert_eq!(lead, q(14, 81));
        assert!(parse_surface(r#"{"basis":["a"]}"#).is_err());
    }

    #[test]
    fn threshold_examples() {
        let (_, out, _) = run_args(&["threshold", "--lemma", "141", "--d", "11", "--m", "5"]);
        assert_eq!(values(&out)[0]["values"]["bound"], "1/8");
        let (_, out, _) = run_args(&["threshold", "--lemma", "144", "--d", "15", "--m", "4"]);
        assert_eq!(values(&out)[0]["values"]["bound"], "-1/12");
        let (code, out, _) = run_args(&["threshold", "--lemma", "145", "--d", "15"]);
        assert_eq!(code, 1);
        let v = &values(&out)[0]["values"];
        assert_eq!(v["small_branch_value"], "-15");
        assert_eq!(v["large_branch_value"], "9");
        let (code, _, err) = run_args(&["threshold", "--lemma", "143", "--d", "15"]);
        assert_eq!(code, 2);
        assert!(err.contains("unknown lemma"));
    }

    #[test]
    fn connection_report() {
        let (code, out, _) = run_args(&["connection", "--d", "6", "--k0", "2", "--k1", "2", "--k2", "2", "--a", "1"]);
        assert_eq!(code, 0, "{out}");
        let v = &values(&out)[0];
        assert_eq!(v["passes"]["residual_zero"], true);
        assert_eq!(v["passes"]["poles_in_divisor"], true);
        let (code, _, _) = run_args(&["connection", "--d", "5", "--k0", "2", "--k1", "2", "--k2", "1", "--a", "1"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_args(&["certify"]).0, 2);
        assert_eq!(run_args(&["certify", "--d", "3"]).0, 2);
        assert_eq!(run_args(&["frobnicate"]).0, 2);
        assert_eq!(run_args(&["--help"]).0, 0);
    }

    #[test]
    fn vector_field_parsing() {
        let v = parse_vector_field("# radial\nx\n\ny\n").unwrap();
        assert_eq!(v.p, parse_poly("x", &foliation::VARS).unwrap());
        assert!(parse_vector_field("x\n").is_err());
        assert!(parse_vector_field("x + 1\ny\n").is_err());
    }
}
