//! Report construction. Reports are JSON values whose keys keep insertion
//! order, so the same run always serializes to the same bytes.

use reserve_core::equilibrium::{max_cutoff_vector, min_cutoff_vector};
use reserve_core::{Instance, Matching, PatientId, Slot};
use serde_json::{json, Map, Value};

pub fn matching(inst: &Instance, m: &Matching) -> Value {
    let mut out = Map::new();
    for (i, c) in m.iter() {
        let target = c.map_or(Value::Null, |c| inst.category_name(c).into());
        out.insert(inst.patient_name(i).to_owned(), target);
    }
    Value::Object(out)
}

pub fn slot(inst: &Instance, s: Slot) -> Value {
    match s {
        Slot::Patient(i) => inst.patient_name(i).into(),
        Slot::Empty => Value::Null,
    }
}

/// Maximum and minimum supporting cutoff of every category; `null` is the
/// sentinel.
pub fn cutoffs(inst: &Instance, m: &Matching) -> Value {
    let hi = max_cutoff_vector(inst, m);
    let lo = min_cutoff_vector(inst, m);
    let mut out = Map::new();
    for c in inst.categories() {
        out.insert(
            inst.category_name(c).to_owned(),
            json!({ "max": slot(inst, hi.get(c)), "min": slot(inst, lo.get(c)) }),
        );
    }
    Value::Object(out)
}

pub fn patients<'a>(inst: &Instance, ids: impl IntoIterator<Item = &'a PatientId>) -> Value {
    ids.into_iter()
        .map(|&i| Value::from(inst.patient_name(i)))
        .collect()
}

/// Indented `key: value` lines.
pub fn render_text(value: &Value) -> String {
    let mut out = String::new();
    render(value, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.is_empty() => Some("-".into()),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => Some(
            items
                .iter()
                .map(|x| scalar(x).unwrap_or_default())
                .collect::<Vec<_>>()
                .join(", "),
        ),
        _ => None,
    }
}

fn render(value: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match scalar(v) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(v, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for (k, v) in items.iter().enumerate() {
                match scalar(v) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}- [{}]\n", k + 1));
                        render(v, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
