//! Session files: a ring, named objects and a list of commands.
//!
//! ```json
//! { "version": 1,
//!   "ring": { "p": 5, "n": 2, "N": 4 },
//!   "objects": [ { "name": "M", "kind": "presentation",
//!                  "data": { "rows": 1, "relations": [[ [[[2, 0], 1]], [[[0, 1], 1]] ]] } } ],
//!   "commands": [ { "op": "ext", "args": { "of": "M", "j": 1 }, "out": "e1" } ] }
//! ```
//!
//! A series is an array of `[exponent-vector, coefficient]` pairs; a matrix is
//! an array of rows of series.

use std::collections::BTreeMap;

use adic_core::base::Monomial;
use adic_core::fgcomplex::FgComplex;
use adic_core::koszul::{ext_a0, koszul_dual, koszul_vars, telescope_gamma};
use adic_core::matlis::{
    growing_window_sum, hartshorne_compare_n1, injective_hull, is_cohomologically_cofinite, matlis_dual_back, matlis_dual_fg, IndTorsionModule,
    TorsionComplex,
};
use adic_core::nakayama::{conservativity_probe, nakayama_generators, AdicFreeComplex};
use adic_core::projective::{idempotent_image, lift_splittings};
use adic_core::resolve::resolve_free_fg;
use adic_core::tower::{complete_fg, gamma_torsion, tau_bijective_at, FgPresentation};
use adic_core::{AdicError, RingConfig, SeriesMatrix, TruncatedSeries};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::suites::{theorem_suite, Suite, SuiteReport};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug)]
pub enum SessionError {
    Parse { line: usize, column: usize, message: String },
    Semantic(String),
    Core(AdicError),
}

impl std::fmt::Display for SessionError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SessionError::Parse { line, column, message } => write!(f, "parse error at line {line}, column {column}: {message}"),
            SessionError::Semantic(m) => write!(f, "{m}"),
            SessionError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SessionError {}

impl From<AdicError> for SessionError {
    fn from(e: AdicError) -> Self {
        SessionError::Core(e)
    }
}

type Result<T> = std::result::Result<T, SessionError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    pub p: u32,
    pub n: usize,
    #[serde(rename = "N")]
    pub precision: usize,
}

impl RingSpec {
    pub fn config(&self) -> std::result::Result<RingConfig, AdicError> {
        RingConfig::new(self.p, self.n, self.precision)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ObjectSpec {
    pub name: String,
    pub kind: String,
    #[serde(default)]
    pub data: Value,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CommandSpec {
    pub op: String,
    #[serde(default)]
    pub args: Value,
    #[serde(default)]
    pub out: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionFile {
    #[serde(default = "default_version")]
    pub version: u32,
    pub ring: RingSpec,
    #[serde(default)]
    pub objects: Vec<ObjectSpec>,
    #[serde(default)]
    pub commands: Vec<CommandSpec>,
}

fn default_version() -> u32 {
    SCHEMA_VERSION
}

/// Objects a session can hold.
#[derive(Clone, Debug)]
pub enum Object {
    Presentation(FgPresentation),
    Complex(FgComplex),
    Matrix(SeriesMatrix),
    Torsion(IndTorsionModule),
}

impl Object {
    fn kind(&self) -> &'static str {
        match self {
            Object::Presentation(_) => "presentation",
            Object::Complex(_) => "complex",
            Object::Matrix(_) => "matrix",
            Object::Torsion(_) => "ind_module",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    PropertyFailure,
    Undetermined,
}

#[derive(Clone, Debug, Serialize)]
pub struct CommandResult {
    pub op: String,
    pub out: Option<String>,
    pub status: Status,
    pub values: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct SessionReport {
    pub ring: RingSpec,
    pub results: Vec<CommandResult>,
    pub suites: Vec<SuiteReport>,
}

impl SessionReport {
    pub fn status(&self) -> Status {
        let suites = self.suites.iter().map(|s| {
            if s.failed > 0 {
                Status::PropertyFailure
            } else if s.undetermined > 0 {
                Status::Undetermined
            } else {
                Status::Ok
            }
        });
        let worst = self.results.iter().map(|r| r.status).chain(suites);
        // A property failure outranks an undetermined result.
        worst.fold(Status::Ok, |acc, s| match (acc, s) {
            (Status::PropertyFailure, _) | (_, Status::PropertyFailure) => Status::PropertyFailure,
            (Status::Undetermined, _) | (_, Status::Undetermined) => Status::Undetermined,
            _ => Status::Ok,
        })
    }
}

pub fn parse_session(text: &str) -> Result<SessionFile> {
    let file: SessionFile = serde_json::from_str(text).map_err(|e| SessionError::Parse { line: e.line(), column: e.column(), message: e.to_string() })?;
    if file.version != SCHEMA_VERSION {
        return Err(SessionError::Semantic(format!("unsupported schema version {}", file.version)));
    }
    Ok(file)
}

fn semantic(msg: impl Into<String>) -> SessionError {
    SessionError::Semantic(msg.into())
}

pub fn parse_series(config: RingConfig, v: &Value) -> Result<TruncatedSeries> {
    let terms = v.as_array().ok_or_else(|| semantic("a series must be an array of [exponents, coefficient] pairs"))?;
    let mut out = Vec::new();
    for t in terms {
        let pair = t.as_array().filter(|a| a.len() == 2).ok_or_else(|| semantic("a series term must be [exponents, coefficient]"))?;
        let exps = pair[0].as_array().ok_or_else(|| semantic("exponents must be an array"))?;
        if exps.len() != config.nvars() {
            return Err(semantic(format!("exponent vector of length {} in a ring with {} variables", exps.len(), config.nvars())));
        }
        let e: Vec<u32> = exps.iter().map(|x| x.as_u64().map(|x| x as u32).ok_or_else(|| semantic("exponents must be non-negative integers"))).collect::<Result<_>>()?;
        let c = pair[1].as_i64().ok_or_else(|| semantic("coefficients must be integers"))?;
        out.push((Monomial(e), config.field().from_i64(c)));
    }
    Ok(TruncatedSeries::from_terms(config, out))
}

pub fn parse_matrix(config: RingConfig, rows: usize, v: &Value) -> Result<SeriesMatrix> {
    let rs = v.as_array().ok_or_else(|| semantic("a matrix must be an array of rows"))?;
    if rs.len() != rows {
        return Err(semantic(format!("expected {rows} rows, found {}", rs.len())));
    }
    let cols = rs.first().and_then(Value::as_array).map_or(0, Vec::len);
    let mut entries = Vec::with_capacity(rows * cols);
    for r in rs {
        let row = r.as_array().ok_or_else(|| semantic("a matrix row must be an array"))?;
        if row.len() != cols {
            return Err(semantic("matrix rows have different lengths"));
        }
        for s in row {
            entries.push(parse_series(config, s)?);
        }
    }
    Ok(SeriesMatrix::from_entries(config, rows, cols, entries)?)
}

fn field_usize(data: &Value, key: &str) -> Result<usize> {
    data.get(key).and_then(Value::as_u64).map(|x| x as usize).ok_or_else(|| semantic(format!("missing integer field `{key}`")))
}

pub struct Session {
    pub config: RingConfig,
    pub spec: RingSpec,
    pub objects: BTreeMap<String, Object>,
    pub seed: u64,
}

impl Session {
    pub fn new(spec: RingSpec, seed: u64) -> Result<Self> {
        Ok(Self { config: spec.config()?, spec, objects: BTreeMap::new(), seed })
    }

    pub fn define(&mut self, o: &ObjectSpec) -> Result<()> {
        if self.objects.contains_key(&o.name) {
            return Err(semantic(format!("object `{}` is defined twice", o.name)));
        }
        let obj = self.build(o).map_err(|e| match e {
            SessionError::Semantic(m) => semantic(format!("object `{}`: {m}", o.name)),
            other => other,
        })?;
        self.objects.insert(o.name.clone(), obj);
        Ok(())
    }

    fn build(&self, o: &ObjectSpec) -> Result<Object> {
        let c = self.config;
        let d = &o.data;
        Ok(match o.kind.as_str() {
            "presentation" => Object::Presentation(FgPresentation::new(parse_matrix(c, field_usize(d, "rows")?, &d["relations"])?)),
            "free" => Object::Presentation(FgPresentation::free(c, field_usize(d, "rank")?)),
            "residue_field" => Object::Presentation(FgPresentation::residue_field(c)),
            "matrix" => Object::Matrix(parse_matrix(c, field_usize(d, "rows")?, &d["entries"])?),
            "complex" => {
                let lo = d.get("lo").and_then(Value::as_i64).ok_or_else(|| semantic("missing integer field `lo`"))? as i32;
                let ranks: Vec<usize> = d
                    .get("ranks")
                    .and_then(Value::as_array)
                    .ok_or_else(|| semantic("missing array field `ranks`"))?
                    .iter()
                    .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| semantic("ranks must be integers")))
                    .collect::<Result<_>>()?;
                let diffs = d.get("diffs").and_then(Value::as_array).cloned().unwrap_or_default();
                if diffs.len() + 1 != ranks.len().max(1) {
                    return Err(semantic("need one differential between consecutive terms"));
                }
                let ds = diffs.iter().enumerate().map(|(j, m)| parse_matrix(c, ranks[j + 1], m)).collect::<Result<_>>()?;
                Object::Complex(FgComplex::free(c, lo, ds, ranks)?)
            }
            "injective_hull" => Object::Torsion(injective_hull(c, field_usize(d, "budget")?)?),
            "growing_window" => Object::Torsion(growing_window_sum(c, field_usize(d, "budget")?)?),
            "matlis_dual" => {
                let of = d.get("of").and_then(Value::as_str).ok_or_else(|| semantic("missing field `of`"))?;
                Object::Torsion(matlis_dual_fg(self.presentation(of)?)?)
            }
            other => return Err(semantic(format!("unknown object kind `{other}`"))),
        })
    }

    fn get(&self, name: &str) -> Result<&Object> {
        self.objects.get(name).ok_or_else(|| semantic(format!("undefined object `{name}`")))
    }

    fn presentation(&self, name: &str) -> Result<&FgPresentation> {
        match self.get(name)? {
            Object::Presentation(p) => Ok(p),
            o => Err(semantic(format!("object `{name}` is a {}, expected a presentation", o.kind()))),
        }
    }

    /// Presentations are read as complexes concentrated in degree 0.
    fn complex(&self, name: &str) -> Result<FgComplex> {
        match self.get(name)? {
            Object::Presentation(p) => Ok(FgComplex::concentrated(p.clone(), 0)),
            Object::Complex(c) => Ok(c.clone()),
            o => Err(semantic(format!("object `{name}` is a {}, expected a complex", o.kind()))),
        }
    }

    /// Ind-modules directly, f.g. objects through the Koszul telescope.
    fn torsion(&self, name: &str, stages: usize) -> Result<TorsionComplex> {
        match self.get(name)? {
            Object::Torsion(t) => Ok(TorsionComplex::from_module(t, 0)),
            _ => Ok(TorsionComplex::Telescope(telescope_gamma(&self.complex(name)?, stages)?)),
        }
    }

    /// Run one command. Names are resolved before any computation.
    pub fn execute(&self, cmd: &CommandSpec) -> Result<CommandOutput> {
        let a = &cmd.args;
        let of = || a.get("of").and_then(Value::as_str).ok_or_else(|| semantic(format!("command `{}` needs `of`", cmd.op)));
        let uint = |k: &str, default: usize| a.get(k).and_then(Value::as_u64).map_or(default, |x| x as usize);
        match cmd.op.as_str() {
            "koszul" => koszul_summary(self.config),
            "profile" => {
                let prof = self.complex(of()?)?.stable_profile()?;
                Ok(CommandOutput::ok(json!({
                    "dims": prof.profile.dims, "reading": prof.reading, "top": prof.top, "precision_stable": prof.precision_stable()
                })))
            }
            "complete" => complete_summary(self.presentation(of()?)?),
            "gamma" => gamma_summary(self.presentation(of()?)?),
            "ext" => {
                let j = a.get("j").and_then(Value::as_i64).unwrap_or(0) as i32;
                let h = ext_a0(&self.complex(of()?)?, j)?;
                Ok(CommandOutput::ok(json!({ "j": j, "dim": h.dim(), "reading": h.reading, "precision_stable": h.precision_stable })))
            }
            "resolve" => {
                let r = resolve_free_fg(self.presentation(of()?)?, uint("length", self.config.nvars()))?;
                let ranks: Vec<(i32, usize)> = r.complex.degrees().map(|i| (i, r.complex.rank(i))).collect();
                let qi = r.is_quasi_iso()?;
                Ok(CommandOutput::check(qi, json!({ "ranks": ranks, "complete": r.complete, "quasi_iso": qi })))
            }
            "bass" | "cofinite" => {
                let t = self.torsion(of()?, uint("stages", 4))?;
                let v = is_cohomologically_cofinite(&t)?;
                let values: Vec<(i32, String)> = v.profile.degrees.iter().map(|d| (d.degree, d.value.to_string())).collect();
                Ok(CommandOutput::ok(json!({ "cofinite": v.cofinite, "bass": values, "stamp": v.stamp })))
            }
            "hartshorne" => {
                let Object::Torsion(t) = self.get(of()?)? else {
                    return Err(semantic("`hartshorne` needs an ind_module"));
                };
                let r = hartshorne_compare_n1(t)?;
                Ok(CommandOutput::check(r.agree, json!({ "ext_verdict": r.ext_verdict.cofinite, "dual_verdict": r.dual_verdict, "agree": r.agree })))
            }
            "matlis_roundtrip" => {
                let m = self.presentation(of()?)?;
                let back = matlis_dual_back(&matlis_dual_fg(m)?)?;
                let dims = complete_fg(&back.presentation)?.dims();
                let ok = dims == complete_fg(m)?.dims();
                Ok(CommandOutput::check(ok, json!({ "dims": dims, "generators": back.presentation.rank() })))
            }
            "nakayama" => {
                let p = AdicFreeComplex::from_free(self.complex(of()?)?)?;
                let g = nakayama_generators(&p, a.get("degree").and_then(Value::as_i64).unwrap_or(0) as i32)?;
                Ok(CommandOutput::check(g.verified(), json!({ "generators": g.generators.cols(), "l0_dim": g.l0_dim, "generates": g.generates })))
            }
            "conservativity" => {
                let r = conservativity_probe(&self.complex(of()?)?)?;
                Ok(CommandOutput::check(r.tensor_dim > 0, serde_json::to_value(&r).expect("plain data")))
            }
            "splitting" => {
                let Object::Matrix(e) = self.get(of()?)? else {
                    return Err(semantic("`splitting` needs a matrix"));
                };
                let s = lift_splittings(&idempotent_image(e)?)?;
                Ok(CommandOutput::check(s.is_valid(), json!({ "splits": s.splits(), "compatible": s.compatible() })))
            }
            "suite" => {
                let name = a.get("name").and_then(Value::as_str).ok_or_else(|| semantic("`suite` needs `name`"))?;
                let suite: Suite = name.parse().map_err(SessionError::Semantic)?;
                let seed = a.get("seed").and_then(Value::as_u64).unwrap_or(self.seed);
                Ok(CommandOutput::Suite(theorem_suite(suite, seed, uint("count", 10))))
            }
            other => Err(semantic(format!("unknown op `{other}`"))),
        }
    }

    /// Check that every command refers to defined objects before running anything.
    pub fn validate(&self, commands: &[CommandSpec]) -> Result<()> {
        for (i, c) in commands.iter().enumerate() {
            if let Some(name) = c.args.get("of").and_then(Value::as_str) {
                if !self.objects.contains_key(name) {
                    return Err(semantic(format!("command {i} (`{}`) references undefined object `{name}`", c.op)));
                }
            }
        }
        Ok(())
    }
}

pub enum CommandOutput {
    Value(Status, Value),
    Suite(SuiteReport),
}

impl CommandOutput {
    fn ok(v: Value) -> Self {
        CommandOutput::Value(Status::Ok, v)
    }

    fn check(ok: bool, v: Value) -> Self {
        CommandOutput::Value(if ok { Status::Ok } else { Status::PropertyFailure }, v)
    }
}

fn koszul_summary(config: RingConfig) -> Result<CommandOutput> {
    let k = koszul_vars(config);
    let c = &k.complex;
    let ranks: Vec<(i32, usize)> = c.degrees().map(|i| (i, c.rank(i))).collect();
    // Raw cohomology of K ⊗ A_ℓ is Tor(A₀, A_ℓ), nonzero below degree 0; the
    // cohomology of K itself is read as the image of H(K_N) → H(K_ℓ).
    let mut raw = Vec::new();
    let mut stable = Vec::new();
    for lvl in 0..=config.precision() {
        let r = c.realize(lvl)?;
        raw.push(c.degrees().map(|i| r.complex.cohomology_dim(i)).collect::<Vec<_>>());
    }
    for lvl in 0..=c.reading_level()? {
        let prof = c.stable_profile_at(lvl)?;
        stable.push(c.degrees().map(|i| prof.get(i).map_or(0, |h| h.dim())).collect::<Vec<_>>());
    }
    let dual = koszul_dual(&k)?;
    let ok = stable.iter().all(|dims| dims.iter().rev().enumerate().all(|(j, &d)| d == usize::from(j == 0)));
    Ok(CommandOutput::check(ok, json!({ "ranks": ranks, "stable_dims_per_level": stable, "raw_level_dims": raw, "dual_signs": dual.degree_signs })))
}

fn complete_summary(m: &FgPresentation) -> Result<CommandOutput> {
    let t = complete_fg(m)?;
    let tau: Vec<bool> = (0..=m.config().precision()).map(|k| tau_bijective_at(m, k).map(|w| w.bijective)).collect::<std::result::Result<_, _>>()?;
    let ok = tau.iter().all(|&b| b);
    Ok(CommandOutput::check(ok, json!({ "dims": t.dims(), "tau_bijective": tau })))
}

fn gamma_summary(m: &FgPresentation) -> Result<CommandOutput> {
    let g = gamma_torsion(m)?;
    Ok(CommandOutput::ok(json!({
        "dim": g.module.dim(),
        "stage_dims": g.torsion.dims(),
        "stabilized_at": g.certificate.t,
        "reading_level": g.certificate.reading_level,
        "chain_dims": g.certificate.chain_dims,
    })))
}

/// Parse, validate and run a session; command results keep the file order.
pub fn run_session(text: &str, seed: u64) -> Result<SessionReport> {
    let file = parse_session(text)?;
    let mut s = Session::new(file.ring, seed)?;
    for o in &file.objects {
        s.define(o)?;
    }
    s.validate(&file.commands)?;
    let mut results = Vec::new();
    let mut suites = Vec::new();
    for cmd in &file.commands {
        let out = match s.execute(cmd) {
            Ok(o) => o,
            Err(SessionError::Core(e @ (AdicError::PrecisionInsufficient(_) | AdicError::Undetermined { .. }))) => {
                CommandOutput::Value(Status::Undetermined, json!({ "reason": e.to_string() }))
            }
            Err(e) => return Err(e),
        };
        match out {
            CommandOutput::Value(status, values) => results.push(CommandResult { op: cmd.op.clone(), out: cmd.out.clone(), status, values }),
            CommandOutput::Suite(r) => {
                results.push(CommandResult {
                    op: cmd.op.clone(),
                    out: cmd.out.clone(),
                    status: if r.failed > 0 { Status::PropertyFailure } else { Status::Ok },
                    values: json!({ "suite": r.suite, "passed": r.passed, "run": r.run }),
                });
                suites.push(r);
            }
        }
    }
    Ok(SessionReport { ring: file.ring, results, suites })
}
