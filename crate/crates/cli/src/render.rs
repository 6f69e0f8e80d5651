use serde_json::{Map, Value};

/// An ordered result record; insertion order is output order.
pub type Document = Map<String, Value>;

pub fn render_json(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

/// `key: value` lines; nested objects indent, arrays of objects become
/// `- k: v, k: v` items.
pub fn render_text(doc: &Document) -> String {
    let mut out = String::new();
    write_object(&mut out, doc, 0);
    out
}

fn write_object(out: &mut String, obj: &Map<String, Value>, indent: usize) {
    let pad = "  ".repeat(indent);
    for (key, value) in obj {
        match value {
            Value::Object(inner) => {
                out.push_str(&format!("{pad}{key}:\n"));
                write_object(out, inner, indent + 1);
            }
            Value::Array(items) if items.iter().any(Value::is_object) => {
                out.push_str(&format!("{pad}{key}:\n"));
                for item in items {
                    out.push_str(&format!("{pad}  - {}\n", inline(item)));
                }
            }
            _ => out.push_str(&format!("{pad}{key}: {}\n", inline(value))),
        }
    }
}

fn inline(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(inline).collect();
            format!("[{}]", parts.join(", "))
        }
        Value::Object(obj) => obj
            .iter()
            .map(|(k, v)| format!("{k}: {}", inline(v)))
            .collect::<Vec<_>>()
            .join(", "),
        other => other.to_string(),
    }
}
