//! Table rendering of the JSON report model.

use serde_json::Value;

/// Flattens `v` into aligned `key  value` lines with dotted keys.
pub fn table(v: &Value) -> String {
    let mut rows = Vec::new();
    flatten(String::new(), v, &mut rows);
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, val) in rows {
        if k.is_empty() {
            out.push_str(&val);
        } else {
            out.push_str(&format!("{k:<width$}  {val}"));
        }
        out.push('\n');
    }
    out
}

fn join(prefix: &str, key: &str) -> String {
    if prefix.is_empty() {
        key.to_string()
    } else {
        format!("{prefix}.{key}")
    }
}

fn flatten(prefix: String, v: &Value, rows: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) if m.is_empty() => rows.push((prefix, "{}".into())),
        Value::Object(m) => {
            for (k, x) in m {
                flatten(join(&prefix, k), x, rows);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(format!("{prefix}[{}]", i + 1), x, rows);
            }
        }
        Value::Array(a) => rows.push((prefix, a.iter().map(scalar).collect::<Vec<_>>().join(" "))),
        _ => rows.push((prefix, scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn nested_values() {
        let v = json!({"rc": 3, "w": {"I": [1, 2], "ok": null}, "list": [{"a": 1}, {"a": 2}]});
        let t = table(&v);
        assert_eq!(t, "list[1].a  1\nlist[2].a  2\nrc         3\nw.I        1 2\nw.ok       -\n");
    }
}
