mod record;

use std::io::{self, Write};
use std::process::ExitCode;
use std::thread;

use clap::{Parser, Subcommand};
use phirep_core::selftest::{self, SelfTestConfig};
use phirep_core::{
    brute_force_minimal_partitioned, factor_u64, parse_integer, parse_rational, phi_square_sequence,
    represent, verify,
};
use serde_json::{json, Value};

use record::{exit, integer_value, rational_value, Command, OutputRecord, Status};

/// Largest `sequence` limit accepted.
const MAX_SEQUENCE_LIMIT: u64 = 10_000_000;
/// Largest `search --bound` accepted.
const MAX_SEARCH_BOUND: u64 = 1_000_000;

#[derive(Parser, Debug)]
#[command(
    name = "phirep",
    version,
    about = "Write positive rationals as phi(m^2)/phi(n^2), exactly"
)]
struct Cli {
    /// Emit one JSON object instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Also print m and n (and ratios) as decimal numbers.
    #[arg(long, global = true)]
    expanded: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Construct (m, n) with phi(m^2)/phi(n^2) = RATIO and verify it.
    Represent {
        /// `p/q`, `p`, or a factored literal such as `2^-3 * 7^1`.
        #[arg(allow_hyphen_values = true)]
        ratio: String,
    },
    /// Check whether phi(M^2)/phi(N^2) = RATIO.
    Verify {
        #[arg(allow_hyphen_values = true)]
        m: String,
        #[arg(allow_hyphen_values = true)]
        n: String,
        #[arg(allow_hyphen_values = true)]
        ratio: String,
    },
    /// Factor a positive integer.
    Factor {
        #[arg(allow_hyphen_values = true)]
        nat: String,
    },
    /// Print phi(n^2) for n = 1..=LIMIT.
    Sequence {
        #[arg(allow_hyphen_values = true)]
        limit: String,
    },
    /// Find the minimal (m, n) with m, n <= BOUND by exhaustive search.
    Search {
        #[arg(allow_hyphen_values = true)]
        ratio: String,
        #[arg(long, allow_hyphen_values = true)]
        bound: String,
    },
    /// Run the built-in consistency checks.
    Selftest,
}

fn parse_count(text: &str, what: &str, max: u64) -> Result<u64, (Status, String)> {
    let t = text.trim();
    let value: u64 = if !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit()) {
        t.parse().map_err(|_| (Status::UnsupportedScale, format!("{what} {t} is too large")))?
    } else {
        return Err((Status::ParseError, format!("{what} must be a positive integer, got {text:?}")));
    };
    if value == 0 {
        return Err((Status::ParseError, format!("{what} must be at least 1")));
    }
    if value > max {
        return Err((Status::UnsupportedScale, format!("{what} {value} exceeds the supported maximum {max}")));
    }
    Ok(value)
}

fn cmd_represent(ratio_text: &str, expanded: bool) -> OutputRecord {
    let input = ratio_text.to_string();
    let r = match parse_rational(ratio_text) {
        Ok(r) => r,
        Err(e) => return OutputRecord::from_error(Command::Represent, input, &e),
    };
    let rep = match represent(&r) {
        Ok(rep) => rep,
        Err(e) => return OutputRecord::from_error(Command::Represent, input, &e),
    };
    let report = match verify(&rep.m, &rep.n, &r) {
        Ok(report) => report,
        Err(e) => return OutputRecord::from_error(Command::Represent, input, &e),
    };
    if !report.holds {
        return OutputRecord::failure(
            Command::Represent,
            input,
            Status::InternalInvariantViolation,
            format!(
                "constructed m = {}, n = {} gives {} instead of {}",
                rep.m, rep.n, report.lhs, r
            ),
        );
    }
    let payload = vec![
        ("ratio".to_string(), rational_value(&r, expanded)),
        ("m".to_string(), integer_value(&rep.m, expanded)),
        ("n".to_string(), integer_value(&rep.n, expanded)),
        ("depth".to_string(), json!(rep.depth)),
        ("verified".to_string(), json!(report.holds)),
    ];
    OutputRecord::ok(Command::Represent, input, payload, exit::OK)
}

fn cmd_verify(m_text: &str, n_text: &str, ratio_text: &str, expanded: bool) -> OutputRecord {
    let input = format!("{m_text} {n_text} {ratio_text}");
    let parsed = parse_integer(m_text).and_then(|m| {
        let n = parse_integer(n_text)?;
        let r = parse_rational(ratio_text)?;
        Ok((m, n, r))
    });
    let (m, n, r) = match parsed {
        Ok(v) => v,
        Err(e) => return OutputRecord::from_error(Command::Verify, input, &e),
    };
    let report = match verify(&m, &n, &r) {
        Ok(report) => report,
        Err(e) => return OutputRecord::from_error(Command::Verify, input, &e),
    };
    let payload = vec![
        ("m".to_string(), integer_value(&m, expanded)),
        ("n".to_string(), integer_value(&n, expanded)),
        ("ratio".to_string(), rational_value(&report.expected, expanded)),
        ("computed".to_string(), rational_value(&report.lhs, expanded)),
        ("holds".to_string(), json!(report.holds)),
        (
            "common_value".to_string(),
            report
                .common_value
                .as_ref()
                .map_or(Value::Null, |c| Value::String(c.to_string())),
        ),
    ];
    let code = if report.holds { exit::OK } else { exit::DOES_NOT_HOLD };
    OutputRecord::ok(Command::Verify, input, payload, code)
}

fn cmd_factor(nat_text: &str) -> OutputRecord {
    let input = nat_text.to_string();
    match parse_integer(nat_text) {
        Ok(f) => OutputRecord::ok(
            Command::Factor,
            input,
            vec![("factors".to_string(), integer_value(&f, true))],
            exit::OK,
        ),
        Err(e) => OutputRecord::from_error(Command::Factor, input, &e),
    }
}

fn cmd_sequence(limit_text: &str) -> OutputRecord {
    let input = limit_text.to_string();
    match parse_count(limit_text, "limit", MAX_SEQUENCE_LIMIT) {
        Ok(limit) => {
            let values = phi_square_sequence(limit as usize);
            OutputRecord::ok(
                Command::Sequence,
                input,
                vec![
                    ("limit".to_string(), json!(limit)),
                    ("values".to_string(), json!(values)),
                ],
                exit::OK,
            )
        }
        Err((status, msg)) => OutputRecord::failure(Command::Sequence, input, status, msg),
    }
}

fn cmd_search(ratio_text: &str, bound_text: &str) -> OutputRecord {
    let input = format!("{ratio_text} --bound {bound_text}");
    let r = match parse_rational(ratio_text) {
        Ok(r) => r,
        Err(e) => return OutputRecord::from_error(Command::Search, input, &e),
    };
    let bound = match parse_count(bound_text, "bound", MAX_SEARCH_BOUND) {
        Ok(b) => b,
        Err((status, msg)) => return OutputRecord::failure(Command::Search, input, status, msg),
    };
    let workers = thread::available_parallelism().map_or(1, |n| n.get());
    let result = brute_force_minimal_partitioned(&r, bound, workers);
    let (m, n, verified) = match result.pair {
        Some((m, n)) => {
            let holds = verify(&factor_u64(m), &factor_u64(n), &r).map(|rep| rep.holds);
            match holds {
                Ok(true) => (json!(m), json!(n), json!(true)),
                _ => {
                    return OutputRecord::failure(
                        Command::Search,
                        input,
                        Status::InternalInvariantViolation,
                        format!("search returned ({m}, {n}) which does not verify"),
                    )
                }
            }
        }
        None => (Value::Null, Value::Null, Value::Null),
    };
    OutputRecord::ok(
        Command::Search,
        input,
        vec![
            ("bound".to_string(), json!(bound)),
            ("found".to_string(), json!(result.found())),
            ("m".to_string(), m),
            ("n".to_string(), n),
            ("verified".to_string(), verified),
        ],
        exit::OK,
    )
}

fn cmd_selftest(json_mode: bool) -> OutputRecord {
    let outcomes = selftest::run(&SelfTestConfig::default());
    if !json_mode {
        println!("{:<22} {:<6} {:>10}  detail", "check", "result", "time");
        for o in &outcomes {
            println!(
                "{:<22} {:<6} {:>8.1}ms  {}",
                o.name,
                if o.passed { "pass" } else { "FAIL" },
                o.elapsed.as_secs_f64() * 1e3,
                o.detail
            );
        }
    }
    let failed: Vec<String> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| format!("{}: {}", o.name, o.detail))
        .collect();
    if !failed.is_empty() {
        return OutputRecord::failure(
            Command::Selftest,
            String::new(),
            Status::InternalInvariantViolation,
            format!("failed checks: {}", failed.join("; ")),
        );
    }
    let checks: Vec<Value> = outcomes
        .iter()
        .map(|o| {
            json!({
                "name": o.name,
                "passed": o.passed,
                "detail": o.detail,
                "elapsed_ms": o.elapsed.as_secs_f64() * 1e3,
            })
        })
        .collect();
    OutputRecord::ok(
        Command::Selftest,
        String::new(),
        vec![("checks".to_string(), Value::Array(checks))],
        exit::OK,
    )
}

fn emit(record: &OutputRecord, json_mode: bool) -> io::Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    if json_mode {
        writeln!(out, "{}", record.to_json())?;
    } else if record.command == Command::Sequence && record.status == Status::Ok {
        // One value per line.
        let values = record
            .payload
            .as_ref()
            .and_then(|p| p.iter().find(|(k, _)| k == "values"))
            .and_then(|(_, v)| v.as_array());
        for v in values.into_iter().flatten() {
            writeln!(out, "{v}")?;
        }
    } else if record.command == Command::Selftest {
        // The table printed by `cmd_selftest` already lists every check.
        if let Some(err) = &record.error {
            writeln!(out, "error: {err}")?;
        }
        writeln!(out, "status: {}", record.status_name())?;
    } else {
        write!(out, "{}", record.to_plain())?;
    }
    out.flush()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { exit::PARSE_ERROR } else { exit::OK };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let record = match &cli.command {
        Cmd::Represent { ratio } => cmd_represent(ratio, cli.expanded),
        Cmd::Verify { m, n, ratio } => cmd_verify(m, n, ratio, cli.expanded),
        Cmd::Factor { nat } => cmd_factor(nat),
        Cmd::Sequence { limit } => cmd_sequence(limit),
        Cmd::Search { ratio, bound } => cmd_search(ratio, bound),
        Cmd::Selftest => cmd_selftest(cli.json),
    };
    if emit(&record, cli.json).is_err() {
        // Closed pipe; nothing left to report to.
        return ExitCode::from(record.exit_code);
    }
    ExitCode::from(record.exit_code)
}
