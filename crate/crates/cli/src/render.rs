//! Plain-text rendering of a JSON report.

use seifert_core::PoincarePolynomial;
use serde_json::Value;

fn polynomial(v: &Value) -> Option<String> {
    serde_json::from_value::<PoincarePolynomial>(v.clone()).ok().map(|p| p.to_string())
}

fn letters(v: &Value) -> Option<String> {
    let gens = v.as_array()?;
    let mut out = Vec::with_capacity(gens.len());
    for g in gens {
        let mut word = String::new();
        for i in g.as_array()? {
            let i = i.as_u64().filter(|&i| (1..=26).contains(&i))?;
            word.push((b'a' + i as u8 - 1) as char);
        }
        out.push(if word.is_empty() { "1".to_string() } else { word });
    }
    Some(format!("{{{}}}", out.join(", ")))
}

fn special(key: &str, v: &Value) -> Option<String> {
    if key.starts_with("P_") {
        polynomial(v)
    } else if key == "x" || key == "x_raw" {
        letters(v)
    } else {
        None
    }
}

/// `key: value` lines, nested objects indented by two spaces and list items
/// prefixed with `- `. Polynomials (keys starting with `P_`) print as
/// `t^3+t^4+2t^6`, monomial sets `x`/`x_raw` in letters `a, b, ...`.
pub fn pretty(value: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, value, 0);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            Some(format!("[{}]", items.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        Value::Array(items) if items.iter().all(|i| i.as_array().is_some_and(|a| a.iter().all(|x| !x.is_object() && !x.is_array()))) => {
            Some(format!("[{}]", items.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn write_value(out: &mut String, value: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match special(k, v).or_else(|| scalar(v)) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None if v.as_array().is_some_and(|a| a.is_empty()) => out.push_str(&format!("{pad}{k}: []\n")),
                    None if v.as_object().is_some_and(|o| o.is_empty()) => out.push_str(&format!("{pad}{k}: {{}}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        write_value(out, v, indent + 2);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        write_value(out, item, indent + 2);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
