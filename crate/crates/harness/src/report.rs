//! Plain-text reports and the JSON sidecar.
//!
//! Wall-clock data appears only in the first line of the text report; the
//! sidecar is a pure function of the inputs.

use std::fmt::Write;
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use crate::session::{SessionReport, Status};
use crate::suites::SuiteReport;

pub fn header(elapsed: Duration) -> String {
    let now = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
    format!("# adic report, generated at unix time {now}, elapsed {} ms", elapsed.as_millis())
}

fn status_tag(s: Status) -> &'static str {
    match s {
        Status::Ok => "ok",
        Status::PropertyFailure => "FAIL",
        Status::Undetermined => "undetermined",
    }
}

pub fn suite_text(r: &SuiteReport) -> String {
    let mut s = String::new();
    if r.report_only {
        let _ = writeln!(s, "suite {} (seed {}): report only, {} run", r.suite, r.seed, r.run);
    } else {
        let _ = writeln!(s, "suite {} (seed {}): {}/{} passed, {} failed, {} undetermined", r.suite, r.seed, r.passed, r.run, r.failed, r.undetermined);
    }
    if !r.stamps.is_empty() {
        let _ = writeln!(s, "  precision: {}", r.stamps.join("; "));
    }
    if let Some(c) = &r.counterexample {
        let _ = writeln!(s, "  minimal counterexample: case {} at size {}: {}", c.index, c.size, c.detail);
        let trace: Vec<String> = c.shrink_trace.iter().map(|(z, f)| format!("{z}:{}", if *f { "fail" } else { "pass" })).collect();
        let _ = writeln!(s, "  shrink trace: [{}]", trace.join(", "));
    }
    for n in &r.notes {
        let _ = writeln!(s, "  {n}");
    }
    s
}

/// The text body, without the timestamp header.
pub fn session_text(r: &SessionReport) -> String {
    let mut s = String::new();
    let vars = if r.ring.n == 1 { "x1".to_string() } else { format!("x1..x{}", r.ring.n) };
    let _ = writeln!(s, "ring F_{}[[{vars}]] at precision N = {}", r.ring.p, r.ring.precision);
    let mut suites = r.suites.iter();
    for c in &r.results {
        let name = c.out.as_deref().map_or(String::new(), |o| format!(" -> {o}"));
        if c.op == "suite" {
            if let Some(sr) = suites.next() {
                s.push_str(&suite_text(sr));
            }
            continue;
        }
        let _ = writeln!(s, "[{}] {}{}: {}", status_tag(c.status), c.op, name, c.values);
    }
    let _ = writeln!(s, "status: {}", status_tag(r.status()));
    s
}

pub fn sidecar<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
}
