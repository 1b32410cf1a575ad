//! Plain-text rendering of a JSON report. Walking the same value that the
//! JSON mode prints keeps the two outputs in step.

use serde_json::Value;

pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn pad(depth: usize) -> String {
    "  ".repeat(depth)
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    match v {
        Value::Object(map) => {
            for (k, field) in map {
                write_entry(out, k, field, depth);
            }
        }
        other => {
            out.push_str(&pad(depth));
            out.push_str(&scalar(other).unwrap_or_default());
            out.push('\n');
        }
    }
}

fn write_entry(out: &mut String, key: &str, v: &Value, depth: usize) {
    let ind = pad(depth);
    if let Some(s) = scalar(v) {
        out.push_str(&format!("{ind}{key}: {s}\n"));
        return;
    }
    match v {
        Value::Object(map) if map.values().all(|x| scalar(x).is_some()) => {
            let parts: Vec<String> = map.iter().map(|(k, x)| format!("{k}={}", scalar(x).unwrap())).collect();
            out.push_str(&format!("{ind}{key}: {}\n", parts.join(" ")));
        }
        Value::Object(_) => {
            out.push_str(&format!("{ind}{key}:\n"));
            write_value(out, v, depth + 1);
        }
        Value::Array(items) if items.iter().all(|x| x.is_number()) => {
            let parts: Vec<String> = items.iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("{ind}{key}: [{}]\n", parts.join(" ")));
        }
        Value::Array(items) => {
            out.push_str(&format!("{ind}{key}:\n"));
            for item in items {
                match item {
                    Value::Object(map) if map.values().all(|x| scalar(x).is_some()) => {
                        let parts: Vec<String> =
                            map.iter().map(|(k, x)| format!("{k}={}", scalar(x).unwrap())).collect();
                        out.push_str(&format!("{ind}  - {}\n", parts.join(" ")));
                    }
                    Value::Object(_) => {
                        out.push_str(&format!("{ind}  -\n"));
                        write_value(out, item, depth + 2);
                    }
                    Value::Array(rows) => {
                        out.push_str(&format!("{ind}  -\n"));
                        for r in rows {
                            write_value(out, r, depth + 2);
                        }
                    }
                    other => write_value(out, other, depth + 1),
                }
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}
