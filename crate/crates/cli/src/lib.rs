//! Session front end for the commutative-algebra engine: a small
//! declaration/command language, an evaluator over the core library, and
//! deterministic text or JSON rendering of the resulting reports.

pub mod eval;
pub mod parse;
pub mod report;

pub use eval::{Evaluator, RunOptions};
pub use report::Report;

use spectilt_core::error::{Error, Result};

/// Parse and evaluate a session, rendering all reports as one string.
/// With `opts.json` the output is a single pretty-printed JSON document
/// `{"reports": [...]}`; otherwise a sequence of labeled text blocks.
/// Both renderings are byte-deterministic for a fixed session, seed, and
/// option set — timing never appears here (the binary sends it to stderr).
pub fn run_session(src: &str, opts: &RunOptions) -> Result<String> {
    let stmts = parse::parse_session(src)?;
    let reports = Evaluator::new(src, opts).run(&stmts)?;
    Ok(render(&reports, opts.json))
}

/// Render evaluated reports. JSON keys are alphabetically ordered by
/// construction, so equal report lists render to equal bytes.
pub fn render(reports: &[Report], json: bool) -> String {
    if json {
        let docs: Vec<&serde_json::Value> = reports.iter().map(|r| &r.json).collect();
        let doc = serde_json::json!({ "reports": docs });
        let mut out = serde_json::to_string_pretty(&doc).expect("report JSON serializes");
        out.push('\n');
        out
    } else {
        let mut out = String::new();
        for r in reports {
            out.push_str(&format!("== {}\n{}\n\n", r.echo, r.text));
        }
        out
    }
}

/// Process exit code for an evaluation error: bad input 2, budget refusal 3,
/// internal invariant breach 4 (success is 0).
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Input(_) => 2,
        Error::Budget(_) => 3,
        Error::Internal(_) => 4,
    }
}
