//! Command-line front end for `galcoh`.
//!
//! Every command prints a single JSON document with sorted keys. Exit codes:
//! 0 success, 1 a corpus suite failed, 2 invalid input, 3 unsupported or
//! precision exhausted, 64 command-line usage error.

pub mod args;
pub mod commands;
pub mod corpus;

use clap::Parser;
use serde_json::{json, Value};

pub use args::Cli;

/// Captured result of one invocation.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn envelope(command: &str, status: &str, payload: Value) -> String {
    let v = json!({
        "schema": 1,
        "status": status,
        "command": command,
        "payload": payload,
        "diagnostics": Vec::<Value>::new(),
    });
    serde_json::to_string_pretty(&v).expect("json") + "\n"
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let name = commands::name(&cli.command);
    match commands::dispatch(&cli) {
        Ok((payload, ok)) => Outcome { code: if ok { 0 } else { 1 }, stdout: envelope(&name, "ok", payload), stderr: String::new() },
        Err(e) => {
            let code = if e.is_unsupported() { 3 } else { 2 };
            let payload = json!({ "code": e.code(), "message": e.to_string() });
            Outcome { code, stdout: envelope(&name, "error", payload), stderr: String::new() }
        }
    }
}
