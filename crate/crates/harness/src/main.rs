use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use adic_core::nakayama::example_diagnostic;
use adic_core::{AdicError, RingConfig};
use adic_harness::report::{header, session_text, sidecar, suite_text};
use adic_harness::session::{run_session, SessionError, Status};
use adic_harness::suites::{theorem_suite, Suite};
use clap::{Parser, Subcommand};
use serde_json::json;

/// Exact adic completion, torsion and duality computations over F_p[[x1..xn]].
#[derive(Parser)]
#[command(name = "adic", version)]
struct Cli {
    /// Truncation level N.
    #[arg(long, global = true, default_value_t = 4)]
    precision: usize,
    #[arg(long, global = true, default_value_t = 5)]
    prime: u32,
    /// Number of variables n.
    #[arg(long, global = true, default_value_t = 2)]
    vars: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the JSON sidecar here.
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, clap::Args)]
struct Target {
    /// Object name: `A`, `k`, `J` and `window` are built in; others come from `--file`.
    #[arg(long, default_value = "k")]
    object: String,
    /// Session file whose ring and objects are used.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Verb {
    /// Run a session file.
    Check { path: PathBuf },
    /// Run a randomized theorem suite.
    Suite {
        name: String,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
    /// Koszul complex on the variables: ranks, cohomology per level, self-duality signs.
    Koszul,
    /// `Γ_𝔞` of a module.
    Gamma(Target),
    /// Completion tower and the level maps `τ_{M,k}`.
    Complete(Target),
    /// `Ext^j(A₀, M)`.
    Ext {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 0)]
        j: i64,
    },
    /// Bass numbers of a torsion module, or of `RΓ_𝔞` of a finitely generated one.
    Bass(Target),
    /// Cohomological cofiniteness verdict with its stamp.
    Cofinite(Target),
    /// Diagnostics of a shipped example.
    Demo {
        #[arg(value_parser = ["noncomplete-example"])]
        which: String,
        #[arg(long, default_value_t = 10)]
        window: usize,
    },
}

fn builtin_objects(budget: usize) -> serde_json::Value {
    json!([
        {"name": "A", "kind": "free", "data": {"rank": 1}},
        {"name": "k", "kind": "residue_field"},
        {"name": "J", "kind": "injective_hull", "data": {"budget": budget}},
        {"name": "window", "kind": "growing_window", "data": {"budget": budget}},
    ])
}

/// A one-command session over the flag ring or the ring of `--file`.
fn single_command(cli: &Cli, op: &str, target: &Target, extra: serde_json::Value) -> Result<String, SessionError> {
    let mut doc = match &target.file {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| SessionError::Semantic(format!("{}: {e}", path.display())))?;
            serde_json::from_str::<serde_json::Value>(&text).map_err(|e| SessionError::Parse { line: e.line(), column: e.column(), message: e.to_string() })?
        }
        None => json!({ "ring": { "p": cli.prime, "n": cli.vars, "N": cli.precision } }),
    };
    let precision = doc["ring"]["N"].as_u64().unwrap_or(0) as usize;
    let mut objects = doc.get("objects").and_then(|o| o.as_array()).cloned().unwrap_or_default();
    for b in builtin_objects(precision.saturating_sub(1)).as_array().expect("literal array") {
        if !objects.iter().any(|o| o["name"] == b["name"]) {
            objects.push(b.clone());
        }
    }
    let mut args = json!({ "of": target.object });
    if let (Some(a), Some(e)) = (args.as_object_mut(), extra.as_object()) {
        a.extend(e.clone());
    }
    doc["objects"] = json!(objects);
    doc["commands"] = json!([{ "op": op, "args": args }]);
    Ok(doc.to_string())
}

fn exit_for(status: Status) -> ExitCode {
    match status {
        Status::Ok => ExitCode::SUCCESS,
        Status::PropertyFailure => ExitCode::from(1),
        Status::Undetermined => ExitCode::from(3),
    }
}

fn error_exit(e: &SessionError) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        SessionError::Core(AdicError::PrecisionInsufficient(_) | AdicError::Undetermined { .. }) => ExitCode::from(3),
        _ => ExitCode::from(2),
    }
}

fn write_sidecar(cli: &Cli, body: &str) -> Result<(), SessionError> {
    if let Some(path) = &cli.json_out {
        std::fs::write(path, body).map_err(|e| SessionError::Semantic(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<ExitCode, SessionError> {
    let start = Instant::now();
    let session = |text: String| -> Result<ExitCode, SessionError> {
        let r = run_session(&text, cli.seed)?;
        println!("{}", header(start.elapsed()));
        print!("{}", session_text(&r));
        write_sidecar(cli, &sidecar(&r))?;
        Ok(exit_for(r.status()))
    };
    match &cli.verb {
        Verb::Check { path } => {
            let text = std::fs::read_to_string(path).map_err(|e| SessionError::Semantic(format!("{}: {e}", path.display())))?;
            session(text)
        }
        Verb::Suite { name, count } => {
            let suite: Suite = name.parse().map_err(SessionError::Semantic)?;
            let r = theorem_suite(suite, cli.seed, *count);
            println!("{}", header(r.elapsed));
            print!("{}", suite_text(&r));
            write_sidecar(cli, &sidecar(&r))?;
            Ok(exit_for(if r.failed > 0 {
                Status::PropertyFailure
            } else if r.undetermined > 0 {
                Status::Undetermined
            } else {
                Status::Ok
            }))
        }
        Verb::Koszul => {
            let t = Target { object: "A".into(), file: None };
            session(single_command(cli, "koszul", &t, json!({}))?)
        }
        Verb::Gamma(t) => session(single_command(cli, "gamma", t, json!({}))?),
        Verb::Complete(t) => session(single_command(cli, "complete", t, json!({}))?),
        Verb::Ext { target, j } => session(single_command(cli, "ext", target, json!({ "j": j }))?),
        Verb::Bass(t) => session(single_command(cli, "bass", t, json!({}))?),
        Verb::Cofinite(t) => session(single_command(cli, "cofinite", t, json!({}))?),
        Verb::Demo { window, .. } => {
            let config = RingConfig::new(cli.prime, 1, cli.precision)?;
            let r = example_diagnostic(config, *window)?;
            println!("{}", header(start.elapsed()));
            println!("noncomplete example, window {}, levels 0..={}", r.window, r.levels);
            println!("  d injective per level: {:?}", r.injective);
            println!("  certificate: {:?}", r.certificate.verdict);
            println!("  dim H0 per level: {:?}", r.h0_dims);
            println!("  {}", r.summary);
            write_sidecar(cli, &sidecar(&r))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => error_exit(&e),
    }
}
