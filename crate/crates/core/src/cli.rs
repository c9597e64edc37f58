//! The `hamiso` command line.
//!
//! Every command prints one JSON report with sorted keys. Exit codes: 0 on
//! success, 1 when the input could not be checked (parse errors, schema
//! violations, exceeded guards), 2 when the check ran and the answer is
//! negative.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::decompose::{decompose, DecomposeOptions, Outcome};
use crate::error::Error;
use crate::funspace::{Controllability, Func, FunctionSpace};
use crate::gf::Elem;
use crate::limits::Limits;
use crate::linmap::{CheckMode, LinMap};
use crate::macwilliams::{equivalence_decide, MonomialMap};
use crate::schema::{self, matrix_json, vector_json, InputError};
use crate::selftest::{self, SelftestConfig};
use crate::space::PointSet;

pub const SCHEMA_VERSION: &str = "hamiso-report/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "hamiso", version, about = "Hamming isometries of finite-field function spaces")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Bound on q^k codeword enumerations.
    #[arg(long, global = true, default_value_t = 1 << 20, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_enum: u64,
    /// Bound on the size of the ring of cozero sets.
    #[arg(long, global = true, default_value_t = 1 << 16, value_parser = positive_usize)]
    pub max_ring: usize,
    /// Bound on brute-force search spaces.
    #[arg(long, global = true, default_value_t = 10_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_search: u64,
    /// Seed for sampled checks and for `selftest` instance generation.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Check isometry and separation on this many random draws instead of
    /// exhaustively. Requires --seed.
    #[arg(long, global = true, requires = "seed", value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Cross-check fast paths against exhaustive oracles.
    #[arg(long, global = true)]
    pub diagnostic: bool,
}

fn positive_usize(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

impl RunConfig {
    pub fn limits(&self) -> Limits {
        Limits { max_enum: self.max_enum, max_ring: self.max_ring, max_search: self.max_search }
    }

    fn mode(&self) -> CheckMode {
        match (self.samples, self.seed) {
            (Some(samples), Some(seed)) => CheckMode::Sampled { seed, samples },
            _ => CheckMode::Exact,
        }
    }

    fn to_json(&self) -> Value {
        json!({
            "max_enum": self.max_enum,
            "max_ring": self.max_ring,
            "max_search": self.max_search,
            "seed": self.seed,
            "samples": self.samples,
            "diagnostic": self.diagnostic,
        })
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        let l = Limits::default();
        RunConfig {
            max_enum: l.max_enum,
            max_ring: l.max_ring,
            max_search: l.max_search,
            seed: None,
            samples: None,
            output: None,
            diagnostic: false,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct CodeArg {
    /// Code document.
    #[arg(long)]
    pub code: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct MapArg {
    /// Map document.
    #[arg(long)]
    pub map: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weight of one member, given by basis coordinates.
    Weight {
        #[command(flatten)]
        code: CodeArg,
        /// Comma-separated coordinates, e.g. 1,0,1.
        #[arg(long)]
        coeffs: String,
    },
    /// Distance between two members.
    Distance {
        #[command(flatten)]
        code: CodeArg,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Classes of indistinguishable points and their connecting scalars.
    Quotient {
        #[command(flatten)]
        code: CodeArg,
    },
    /// The ring generated by the cozero sets.
    Ring {
        #[command(flatten)]
        code: CodeArg,
    },
    /// Decide controllability.
    Controllable {
        #[command(flatten)]
        code: CodeArg,
    },
    /// Decide whether a map is a Hamming isometry.
    Isometry {
        #[command(flatten)]
        map: MapArg,
    },
    /// Decide whether a map preserves disjointness of cozero sets.
    Separating {
        #[command(flatten)]
        map: MapArg,
    },
    /// Write a map as a weighted composition operator.
    Decompose {
        #[command(flatten)]
        map: MapArg,
    },
    /// Decompose a map and check the reconstruction on every member.
    Verify {
        #[command(flatten)]
        map: MapArg,
    },
    /// The monomial transformation of a map between full-rank-quotient codes.
    MonomialForm {
        #[command(flatten)]
        map: MapArg,
    },
    /// Decide monomial equivalence of two codes.
    Macwilliams {
        #[arg(long)]
        c1: PathBuf,
        #[arg(long)]
        c2: PathBuf,
    },
    /// Run the built-in invariant suite on generated instances.
    Selftest {
        /// Generated codes per check.
        #[arg(long, default_value_t = 20)]
        codes: usize,
        /// Planted maps per check.
        #[arg(long, default_value_t = 40)]
        maps: usize,
    },
}

/// The result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub code: i32,
    pub json: String,
    pub output: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Input(InputError),
    Library(Error),
    Usage(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl Failure {
    fn to_json(&self) -> Value {
        let (kind, field, message) = match self {
            Failure::Input(e @ InputError::Parse { .. }) => ("ParseError", e.field().to_string(), e.to_string()),
            Failure::Input(e @ InputError::Schema { source, .. }) => {
                (guard_kind(source).unwrap_or("SchemaViolation"), e.field().to_string(), e.to_string())
            }
            Failure::Library(e) => match guard_flag(e) {
                Some(flag) => ("GuardExceeded", flag.to_string(), e.to_string()),
                None if matches!(e, Error::TheoremViolation(_)) => ("TheoremViolation", String::new(), e.to_string()),
                None => ("SchemaViolation", library_field(e).to_string(), e.to_string()),
            },
            Failure::Usage(msg) => ("ParseError", "arguments".to_string(), msg.clone()),
        };
        json!({"kind": kind, "field": field, "message": message})
    }
}

fn guard_flag(e: &Error) -> Option<&'static str> {
    match e {
        Error::EnumerationTooLarge { .. } => Some("--max-enum"),
        Error::RingTooLarge { .. } => Some("--max-ring"),
        Error::SearchTooLarge { .. } => Some("--max-search"),
        Error::OrderTooLarge { .. } => Some("field"),
        _ => None,
    }
}

/// The input field a non-guard library error is about.
fn library_field(e: &Error) -> &'static str {
    match e {
        Error::NonUniformMeasure => "space.measures",
        Error::LengthMismatch { .. } | Error::SpaceMismatch { .. } => "space.labels",
        Error::DifferentFields => "field",
        _ => "",
    }
}

fn guard_kind(e: &Error) -> Option<&'static str> {
    guard_flag(e).map(|_| "GuardExceeded")
}

type CmdResult = Result<(i32, Value), Failure>;

fn verdict(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

fn labels(space: &FunctionSpace, s: &PointSet) -> Value {
    Value::from(s.iter().map(|x| space.space().label(x).to_string()).collect::<Vec<_>>())
}

fn func_json(f: &Func) -> Value {
    vector_json(&f.coeffs)
}

fn parse_coeffs(a: &FunctionSpace, text: &str, flag: &str) -> Result<Func, Failure> {
    let field = a.field();
    let coeffs = text
        .split(',')
        .enumerate()
        .map(|(i, s)| {
            let item = format!("{flag}[{i}]");
            let index: u64 = s.trim().parse().map_err(|_| InputError::Parse {
                field: item.clone(),
                message: format!("expected a field element index, found {s:?}"),
            })?;
            field.elem(index).map_err(|e| InputError::Schema { field: item, source: e })
        })
        .collect::<Result<Vec<Elem>, InputError>>()?;
    a.func(coeffs).map_err(|e| Failure::Input(InputError::Schema { field: flag.to_string(), source: e }))
}

fn monomial_json(m: &MonomialMap) -> Value {
    json!({"sigma": m.sigma(), "w": vector_json(m.weights())})
}

fn mode_name(exact: bool) -> &'static str {
    if exact {
        "exact"
    } else {
        "probabilistic"
    }
}

fn weight(code: &CodeArg, coeffs: &str) -> CmdResult {
    let a = schema::load_code(&code.code)?;
    let f = parse_coeffs(&a, coeffs, "--coeffs")?;
    Ok((
        EXIT_OK,
        json!({"weight": a.weight(&f).to_string(), "values": vector_json(&a.values(&f)), "coz": labels(&a, &a.coz(&f))}),
    ))
}

fn distance(code: &CodeArg, f: &str, g: &str) -> CmdResult {
    let a = schema::load_code(&code.code)?;
    let f = parse_coeffs(&a, f, "--f")?;
    let g = parse_coeffs(&a, g, "--g")?;
    Ok((EXIT_OK, json!({"distance": a.distance(&f, &g).to_string()})))
}

fn quotient(code: &CodeArg) -> CmdResult {
    let a = schema::load_code(&code.code)?;
    let q = crate::quotient::Quotient::build(&a);
    let classes: Vec<Value> = (0..q.num_classes()).map(|c| labels(&a, &q.class_set(c))).collect();
    let mut lambda = Map::new();
    for x in 0..a.len() {
        if q.rep(q.class_of(x)) != x {
            lambda.insert(a.space().label(x).to_string(), json!(q.lambda_to_rep(x).0));
        }
    }
    Ok((EXIT_OK, json!({"classes": classes, "lambda": lambda})))
}

fn ring(config: &RunConfig, code: &CodeArg) -> CmdResult {
    let a = schema::load_code(&code.code)?;
    let ring = a.coz_ring(&config.limits())?;
    let members: Vec<Value> = ring.members().iter().map(|s| labels(&a, s)).collect();
    Ok((EXIT_OK, json!({"size": ring.len(), "members": members})))
}

fn controllable(config: &RunConfig, code: &CodeArg) -> CmdResult {
    let a = schema::load_code(&code.code)?;
    Ok(match a.is_controllable(&config.limits())? {
        Controllability::Controllable => (EXIT_OK, json!({"controllable": true, "witness": null})),
        Controllability::NotControllable(w) => (
            EXIT_NEGATIVE,
            json!({
                "controllable": false,
                "witness": {"f": func_json(&w.f), "f_values": vector_json(&a.values(&w.f)), "d1": labels(&a, &w.d1), "d2": labels(&a, &w.d2)},
            }),
        ),
    })
}

fn isometry(config: &RunConfig, map: &MapArg) -> CmdResult {
    let h = schema::load_map(&map.map)?;
    let r = h.is_isometry(config.mode(), &config.limits())?;
    Ok((
        verdict(r.holds()),
        json!({
            "isometry": r.holds(),
            "injective": r.injective,
            "surjective": r.surjective,
            "weight_preserving": r.weight_preserving,
            "witness": r.witness.as_ref().map(func_json),
            "mode": mode_name(r.exact),
        }),
    ))
}

fn separating(config: &RunConfig, map: &MapArg) -> CmdResult {
    let h = schema::load_map(&map.map)?;
    let r = h.is_separating(config.mode(), &config.limits())?;
    Ok((
        verdict(r.separating),
        json!({
            "separating": r.separating,
            "witness": r.witness.as_ref().map(|(f, g)| json!({"f": func_json(f), "g": func_json(g)})),
            "mode": mode_name(r.exact),
        }),
    ))
}

fn classes_json(a: &FunctionSpace) -> Value {
    let q = crate::quotient::Quotient::build(a);
    Value::from((0..q.num_classes()).map(|c| labels(a, &q.class_set(c))).collect::<Vec<_>>())
}

/// The decomposition report shared by `decompose` and `verify`.
fn decomposition_json(h: &LinMap, outcome: &Outcome) -> Value {
    let (a, b) = (h.domain(), h.codomain());
    let mut report = json!({
        "classes_X": classes_json(a),
        "classes_Y": classes_json(b),
    });
    let fields = report.as_object_mut().expect("object literal");
    match outcome {
        Outcome::Composition(d) => {
            let mut hmap = Map::new();
            let mut omega = Map::new();
            for y in 0..b.len() {
                let label = b.space().label(y).to_string();
                hmap.insert(label.clone(), json!(a.space().label(d.rep(y))));
                omega.insert(label, json!(d.omega(y).0));
            }
            fields.insert("status".into(), json!("composition"));
            fields.insert("h".into(), Value::Object(hmap));
            fields.insert("omega".into(), Value::Object(omega));
            fields.insert("verified".into(), json!(d.verified()));
            fields.insert("monomial".into(), d.monomial_form(h).ok().as_ref().map(monomial_json).into());
            fields.insert("witness".into(), Value::Null);
        }
        Outcome::Refuted(r) => {
            fields.insert("status".into(), json!("refuted"));
            fields.insert("h".into(), Value::Null);
            fields.insert("omega".into(), Value::Null);
            fields.insert("verified".into(), json!(false));
            fields.insert("monomial".into(), Value::Null);
            fields.insert(
                "witness".into(),
                json!({"y": b.space().label(r.witness_y), "functional": vector_json(&r.functional.coeffs)}),
            );
        }
    }
    report
}

fn decompose_cmd(config: &RunConfig, map: &MapArg) -> CmdResult {
    let h = schema::load_map(&map.map)?;
    let outcome = decompose(&h, DecomposeOptions { diagnostic: config.diagnostic }, &config.limits())?;
    let ok = matches!(&outcome, Outcome::Composition(d) if d.verified());
    Ok((verdict(ok), decomposition_json(&h, &outcome)))
}

fn verify_cmd(config: &RunConfig, map: &MapArg) -> CmdResult {
    let h = schema::load_map(&map.map)?;
    let limits = config.limits();
    let outcome = decompose(&h, DecomposeOptions { diagnostic: config.diagnostic }, &limits)?;
    let mut report = decomposition_json(&h, &outcome);
    let fields = report.as_object_mut().expect("object literal");
    let ok = match &outcome {
        Outcome::Composition(d) => {
            let v = d.verify(&h, &limits);
            let p = d.h_properties(&h);
            fields.insert(
                "verify".into(),
                json!({
                    "ok": v.ok,
                    "failure": v.failure.map(|(row, y)| json!({"basis_row": row, "y": h.codomain().space().label(y)})),
                    "full_check": v.full_check,
                }),
            );
            fields.insert(
                "h_properties".into(),
                json!({
                    "constant_on_classes": p.constant_on_classes,
                    "cozero_inclusion": p.cozero_inclusion,
                    "onto": p.onto,
                    "class_bijection": p.class_bijection,
                }),
            );
            v.ok && v.full_check != Some(false)
        }
        Outcome::Refuted(_) => {
            fields.insert("verify".into(), Value::Null);
            fields.insert("h_properties".into(), Value::Null);
            false
        }
    };
    Ok((verdict(ok), report))
}

fn monomial_form_cmd(config: &RunConfig, map: &MapArg) -> CmdResult {
    let h = schema::load_map(&map.map)?;
    let outcome = decompose(&h, DecomposeOptions { diagnostic: config.diagnostic }, &config.limits())?;
    let result = match &outcome {
        Outcome::Composition(d) => d.monomial_form(&h).map_err(|e| e.to_string()),
        Outcome::Refuted(r) => Err(format!("refuted at {}", h.codomain().space().label(r.witness_y))),
    };
    Ok(match result {
        Ok(m) => (EXIT_OK, json!({"monomial": monomial_json(&m), "reason": null})),
        Err(reason) => (EXIT_NEGATIVE, json!({"monomial": null, "reason": reason})),
    })
}

fn macwilliams_cmd(config: &RunConfig, c1: &Path, c2: &Path) -> CmdResult {
    let a = schema::load_code(c1)?;
    let b = schema::load_code(c2)?;
    let r = equivalence_decide(&a, &b, &config.limits())?;
    Ok((
        verdict(r.equivalent),
        json!({
            "equivalent": r.equivalent,
            "monomial": r.monomial.as_ref().map(monomial_json),
            "isometry_matrix": r.isometry.as_ref().map(|h| matrix_json(h.matrix())),
            "decompose_roundtrip": r.decompose_roundtrip,
        }),
    ))
}

fn selftest_cmd(config: &RunConfig, codes: usize, maps: usize) -> CmdResult {
    if codes == 0 {
        return Err(Failure::Usage("--codes must be positive".into()));
    }
    let seed = config.seed.unwrap_or(0);
    let report = selftest::run(SelftestConfig { seed, codes, maps }, &config.limits())?;
    let value = serde_json::to_value(&report).expect("report serializes");
    Ok((verdict(report.passed), value))
}

fn dispatch(cli: &Cli) -> CmdResult {
    let c = &cli.config;
    match &cli.command {
        Command::Weight { code, coeffs } => weight(code, coeffs),
        Command::Distance { code, f, g } => distance(code, f, g),
        Command::Quotient { code } => quotient(code),
        Command::Ring { code } => ring(c, code),
        Command::Controllable { code } => controllable(c, code),
        Command::Isometry { map } => isometry(c, map),
        Command::Separating { map } => separating(c, map),
        Command::Decompose { map } => decompose_cmd(c, map),
        Command::Verify { map } => verify_cmd(c, map),
        Command::MonomialForm { map } => monomial_form_cmd(c, map),
        Command::Macwilliams { c1, c2 } => macwilliams_cmd(c, c1, c2),
        Command::Selftest { codes, maps } => selftest_cmd(c, *codes, *maps),
    }
}

fn finish(config: &RunConfig, command: &str, code: i32, body: Value) -> Report {
    let mut top = match body {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("result".into(), other);
            m
        }
    };
    top.insert("command".into(), json!(command));
    top.insert("config".into(), config.to_json());
    top.insert("schema_version".into(), json!(SCHEMA_VERSION));
    let json = serde_json::to_string_pretty(&Value::Object(top)).expect("JSON values serialize") + "\n";
    Report { code, json, output: config.output.clone() }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Weight { .. } => "weight",
        Command::Distance { .. } => "distance",
        Command::Quotient { .. } => "quotient",
        Command::Ring { .. } => "ring",
        Command::Controllable { .. } => "controllable",
        Command::Isometry { .. } => "isometry",
        Command::Separating { .. } => "separating",
        Command::Decompose { .. } => "decompose",
        Command::Verify { .. } => "verify",
        Command::MonomialForm { .. } => "monomial-form",
        Command::Macwilliams { .. } => "macwilliams",
        Command::Selftest { .. } => "selftest",
    }
}

/// Runs one invocation. `args` includes the program name. Help and
/// version requests come back as `Err` with clap's rendered text.
pub fn run<I, T>(args: I) -> Result<Report, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            return Err(e)
        }
        Err(e) => {
            let failure = Failure::Usage(e.render().to_string().trim().to_string());
            let body = json!({"error": failure.to_json()});
            return Ok(finish(&RunConfig::default(), "", EXIT_ERROR, body));
        }
    };
    let name = command_name(&cli.command);
    Ok(match dispatch(&cli) {
        Ok((code, body)) => finish(&cli.config, name, code, body),
        Err(failure) => finish(&cli.config, name, EXIT_ERROR, json!({"error": failure.to_json()})),
    })
}
