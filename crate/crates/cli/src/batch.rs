//! JSON-lines in, JSON-lines out.

use rayon::prelude::*;
use serde_json::json;

use crate::commands::run_job;
use crate::input::{parse_job, Overrides};

/// Runs every nonblank line as a job on the current rayon pool. Output
/// lines follow input order; a failed job becomes an `error` object. The
/// returned code is the largest exit code of any job.
pub fn run_batch(text: &str, over: &Overrides) -> (Vec<String>, i32) {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, l))
        .collect();
    let results: Vec<(String, i32)> = lines
        .par_iter()
        .map(|&(line, src)| {
            let outcome = parse_job(src, over).and_then(|job| run_job(&job));
            match outcome {
                Ok(out) => (out.value.to_string(), out.code),
                Err(e) => (
                    json!({"line": line, "error": e.to_string(), "exit_code": e.exit_code()}).to_string(),
                    e.exit_code(),
                ),
            }
        })
        .collect();
    let code = results.iter().map(|r| r.1).max().unwrap_or(0);
    (results.into_iter().map(|r| r.0).collect(), code)
}
