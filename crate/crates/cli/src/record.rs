//! Output records shared by every subcommand, rendered as plain text or JSON.

use num_bigint::BigUint;
use phirep_core::{Error, FactoredInteger, FactoredRational};
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Represent,
    Verify,
    Factor,
    Sequence,
    Search,
    Selftest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    ParseError,
    UnsupportedScale,
    InternalInvariantViolation,
}

impl Status {
    pub fn from_error(err: &Error) -> Status {
        if err.is_scale_error() {
            Status::UnsupportedScale
        } else {
            Status::ParseError
        }
    }
}

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const PARSE_ERROR: u8 = 1;
    pub const UNSUPPORTED_SCALE: u8 = 2;
    pub const INVARIANT_VIOLATION: u8 = 3;
    /// `verify` ran but the identity does not hold.
    pub const DOES_NOT_HOLD: u8 = 4;
}

#[derive(Debug, Clone)]
pub struct OutputRecord {
    pub command: Command,
    pub input: String,
    pub status: Status,
    /// Ordered `(key, value)` fields; present iff `status` is `Ok`.
    pub payload: Option<Vec<(String, Value)>>,
    pub error: Option<String>,
    pub exit_code: u8,
}

impl OutputRecord {
    pub fn ok(command: Command, input: String, payload: Vec<(String, Value)>, exit_code: u8) -> Self {
        OutputRecord {
            command,
            input,
            status: Status::Ok,
            payload: Some(payload),
            error: None,
            exit_code,
        }
    }

    pub fn failure(command: Command, input: String, status: Status, message: String) -> Self {
        let exit_code = match status {
            Status::Ok => exit::OK,
            Status::ParseError => exit::PARSE_ERROR,
            Status::UnsupportedScale => exit::UNSUPPORTED_SCALE,
            Status::InternalInvariantViolation => exit::INVARIANT_VIOLATION,
        };
        OutputRecord {
            command,
            input,
            status,
            payload: None,
            error: Some(message),
            exit_code,
        }
    }

    pub fn from_error(command: Command, input: String, err: &Error) -> Self {
        Self::failure(command, input, Status::from_error(err), err.to_string())
    }

    pub fn status_name(&self) -> String {
        plain_str(&serde_json::to_value(self.status).unwrap())
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("command".into(), serde_json::to_value(self.command).unwrap());
        obj.insert("input".into(), Value::String(self.input.clone()));
        obj.insert("status".into(), serde_json::to_value(self.status).unwrap());
        if let Some(payload) = &self.payload {
            for (k, v) in payload {
                obj.insert(k.clone(), v.clone());
            }
        }
        if let Some(error) = &self.error {
            obj.insert("error".into(), Value::String(error.clone()));
        }
        Value::Object(obj)
    }

    /// `key: value` lines carrying the same fields as the JSON form.
    pub fn to_plain(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: &str| {
            out.push_str(&format!("{k}: {v}\n"));
        };
        line("command", &plain_str(&serde_json::to_value(self.command).unwrap()));
        line("input", &self.input);
        if let Some(payload) = &self.payload {
            for (k, v) in payload {
                flatten_plain(k, v, &mut line);
            }
        }
        if let Some(error) = &self.error {
            line("error", error);
        }
        line("status", &self.status_name());
        out
    }
}

fn plain_str(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}

fn flatten_plain(key: &str, v: &Value, line: &mut impl FnMut(&str, &str)) {
    match v {
        // Factored values print as their literal text; `factors` holds the
        // same information.
        Value::Object(map) if map.contains_key("factors") && map.contains_key("text") => {
            line(key, &plain_str(&map["text"]));
            for (k, inner) in map.iter().filter(|(k, _)| *k != "factors" && *k != "text") {
                flatten_plain(&format!("{key}.{k}"), inner, line);
            }
        }
        Value::Object(map) => {
            for (k, inner) in map {
                flatten_plain(&format!("{key}.{k}"), inner, line);
            }
        }
        Value::Array(items) if items.iter().all(|i| i.is_object()) && !items.is_empty() => {
            for (i, item) in items.iter().enumerate() {
                flatten_plain(&format!("{key}[{i}]"), item, line);
            }
        }
        Value::Array(items) => {
            let joined: Vec<String> = items.iter().map(plain_str).collect();
            line(key, &joined.join(" "));
        }
        other => line(key, &plain_str(other)),
    }
}

/// `[{"prime": "2", "exponent": 1}, ...]`; primes as decimal strings since
/// they may exceed 64 bits.
fn factor_list<'a>(pairs: impl Iterator<Item = (&'a BigUint, i64)>) -> Value {
    Value::Array(
        pairs
            .map(|(p, e)| serde_json::json!({ "prime": p.to_string(), "exponent": e }))
            .collect(),
    )
}

/// `{"factors": [...], "text": "2^1 * 3^2", "value": "18"?}`.
pub fn integer_value(f: &FactoredInteger, expanded: bool) -> Value {
    let mut obj = Map::new();
    obj.insert("factors".into(), factor_list(f.iter()));
    obj.insert("text".into(), Value::String(f.to_string()));
    if expanded {
        obj.insert("value".into(), Value::String(f.expand().to_string()));
    }
    Value::Object(obj)
}

pub fn rational_value(r: &FactoredRational, expanded: bool) -> Value {
    let mut obj = Map::new();
    obj.insert("factors".into(), factor_list(r.iter()));
    obj.insert("text".into(), Value::String(r.to_string()));
    if expanded {
        let (p, q) = r.expand_parts();
        obj.insert("value".into(), Value::String(format!("{p}/{q}")));
    }
    Value::Object(obj)
}
