//! Minimal JSON Schema validator for the report schema.
//!
//! Supports `type`, `enum`, `const`, `properties`, `required`,
//! `additionalProperties: false`, `items`, `oneOf`, `pattern` and local
//! `$ref` into `$defs`. Unknown keywords are ignored.

use regex::Regex;
use serde_json::Value;

pub const REPORT_SCHEMA: &str = include_str!("../../../schemas/report.json");

pub fn report_schema() -> Value {
    serde_json::from_str(REPORT_SCHEMA).expect("embedded schema is valid JSON")
}

/// Returns every violation as `path: message`; empty means valid.
pub fn validate(schema: &Value, instance: &Value) -> Vec<String> {
    let mut errs = Vec::new();
    check(schema, schema, instance, "$", &mut errs);
    errs
}

fn resolve<'a>(root: &'a Value, reference: &str) -> Option<&'a Value> {
    root.pointer(reference.strip_prefix('#')?)
}

fn type_matches(name: &str, v: &Value) -> bool {
    match name {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        "number" => v.is_number(),
        "integer" => v.is_i64() || v.is_u64(),
        _ => false,
    }
}

fn check(root: &Value, schema: &Value, v: &Value, path: &str, errs: &mut Vec<String>) {
    let Some(s) = schema.as_object() else { return };
    if let Some(r) = s.get("$ref").and_then(Value::as_str) {
        match resolve(root, r) {
            Some(target) => check(root, target, v, path, errs),
            None => errs.push(format!("{path}: unresolved $ref {r}")),
        }
    }
    if let Some(t) = s.get("type") {
        let ok = match t {
            Value::String(n) => type_matches(n, v),
            Value::Array(ns) => ns.iter().filter_map(Value::as_str).any(|n| type_matches(n, v)),
            _ => true,
        };
        if !ok {
            errs.push(format!("{path}: expected type {t}, got {v}"));
            return;
        }
    }
    if let Some(c) = s.get("const") {
        if c != v {
            errs.push(format!("{path}: expected {c}"));
        }
    }
    if let Some(Value::Array(options)) = s.get("enum") {
        if !options.contains(v) {
            errs.push(format!("{path}: {v} not in enum"));
        }
    }
    if let (Some(p), Some(text)) = (s.get("pattern").and_then(Value::as_str), v.as_str()) {
        match Regex::new(p) {
            Ok(re) if re.is_match(text) => {}
            Ok(_) => errs.push(format!("{path}: {text:?} does not match {p}")),
            Err(e) => errs.push(format!("{path}: bad pattern {p}: {e}")),
        }
    }
    if let Some(Value::Array(options)) = s.get("oneOf") {
        let hits = options.iter().filter(|o| validate_sub(root, o, v)).count();
        if hits != 1 {
            errs.push(format!("{path}: matches {hits} oneOf branches"));
        }
    }
    if let Some(obj) = v.as_object() {
        let props = s.get("properties").and_then(Value::as_object);
        if let Some(Value::Array(req)) = s.get("required") {
            for k in req.iter().filter_map(Value::as_str) {
                if !obj.contains_key(k) {
                    errs.push(format!("{path}: missing {k}"));
                }
            }
        }
        for (k, val) in obj {
            let sub = format!("{path}.{k}");
            match props.and_then(|p| p.get(k)) {
                Some(ps) => check(root, ps, val, &sub, errs),
                None if s.get("additionalProperties") == Some(&Value::Bool(false)) => {
                    errs.push(format!("{sub}: not allowed"))
                }
                None => {}
            }
        }
    }
    if let (Some(items), Some(arr)) = (s.get("items"), v.as_array()) {
        for (i, x) in arr.iter().enumerate() {
            check(root, items, x, &format!("{path}[{i}]"), errs);
        }
    }
}

fn validate_sub(root: &Value, schema: &Value, v: &Value) -> bool {
    let mut e = Vec::new();
    check(root, schema, v, "", &mut e);
    e.is_empty()
}
