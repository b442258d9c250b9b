//! Deterministic JSON reports (`legdga-report/1`).

use serde_json::{json, Map, Value};

/// 64-bit FNV-1a content digest, rendered as fixed-width hex.
pub fn digest(bytes: &[u8]) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

/// Assemble a report envelope. `serde_json`'s map is ordered (BTreeMap), so
/// identical inputs and flags produce byte-identical output.
pub fn envelope(command: Value, inputs: Value, results: Value, warnings: Vec<String>) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), json!("legdga-report/1"));
    m.insert("command".into(), command);
    m.insert("inputs".into(), inputs);
    m.insert("results".into(), results);
    m.insert(
        "warnings".into(),
        Value::Array(warnings.into_iter().map(Value::String).collect()),
    );
    Value::Object(m)
}

/// Render a report to its canonical textual form.
pub fn render(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serialization");
    s.push('\n');
    s
}
