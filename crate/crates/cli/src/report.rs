use polyaut::{Field, PolyMap, Scalar};
use serde_json::{json, Value};

/// Outcome of one command: exit status, text for humans, JSON for tools.
#[derive(Debug)]
pub struct CommandResult {
    pub ok: bool,
    pub text: String,
    pub json: Value,
}

impl CommandResult {
    pub fn ok(command: &str, text: String, mut json: Value) -> CommandResult {
        stamp(&mut json, command, "ok");
        CommandResult { ok: true, text, json }
    }

    pub fn failed(command: &str, text: String, mut json: Value) -> CommandResult {
        stamp(&mut json, command, "error");
        CommandResult { ok: false, text, json }
    }

    pub fn error(command: &str, message: String) -> CommandResult {
        CommandResult {
            ok: false,
            text: format!("error: {message}"),
            json: json!({ "command": command, "status": "error", "error": message }),
        }
    }
}

fn stamp(json: &mut Value, command: &str, status: &str) {
    if let Value::Object(map) = json {
        map.insert("command".into(), json!(command));
        map.insert("status".into(), json!(status));
    }
}

/// Exact scalar as a JSON string, e.g. `"-4/3"` or `"t+1"`.
pub fn scalar(field: &Field, s: &Scalar) -> Value {
    Value::String(field.format(s))
}

pub fn components(map: &PolyMap) -> Value {
    Value::Array(map.components().iter().map(|c| Value::String(c.to_string())).collect())
}
