//! Number formatting shared by every emitted file.

use serde::Serialize;
use serde_json::value::RawValue;
use serde_json::Value;

/// Float with 17 significant digits; `nan`/`inf` spelled out.
pub fn f17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".to_string()
    } else if x > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

/// The same digits as a JSON number (`null` when not finite).
pub fn json17(x: f64) -> Box<RawValue> {
    let text = if x.is_finite() { f17(x) } else { "null".to_string() };
    RawValue::from_string(text).expect("formatted float is valid JSON")
}

/// Pretty JSON (two-space indent) with every float written by [`f17`];
/// integers stay integers and non-finite floats become `null`.
pub fn to_json17<T: Serialize + ?Sized>(value: &T) -> serde_json::Result<String> {
    let v = serde_json::to_value(value)?;
    let mut out = String::new();
    render(&v, 0, &mut out);
    Ok(out)
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize, out: &mut String| out.extend(std::iter::repeat_n("  ", d));
    match v {
        Value::Number(n) if n.is_f64() => out.push_str(json17(n.as_f64().unwrap_or(f64::NAN)).get()),
        Value::Array(items) if !items.is_empty() => {
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                pad(depth + 1, out);
                render(item, depth + 1, out);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(depth, out);
            out.push(']');
        }
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (k, (key, item)) in map.iter().enumerate() {
                pad(depth + 1, out);
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                render(item, depth + 1, out);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            pad(depth, out);
            out.push('}');
        }
        other => out.push_str(&other.to_string()),
    }
}
