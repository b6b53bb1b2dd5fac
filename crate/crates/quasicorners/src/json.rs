//! Canonical JSON: sorted keys, two-space indentation, floats with 17
//! significant digits, non-finite floats as `null`.

use serde::Serialize;
use serde_json::Value;

use crate::error::Result;

/// `x` with 17 significant digits, in positional notation when the decimal
/// exponent lies in `[-5, 17)` and in exponent notation otherwise.
pub fn format_f64(x: f64) -> String {
    if !x.is_finite() {
        return "null".into();
    }
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0.0".into()
        } else {
            "0.0".into()
        };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let sign = if negative { "-" } else { "" };
    if !(-5..17).contains(&exp) {
        let frac = digits[1..].trim_end_matches('0');
        let frac = if frac.is_empty() { "0" } else { frac };
        return format!("{sign}{}.{frac}e{exp}", &digits[..1]);
    }
    let (int, frac) = if exp >= 0 {
        let split = exp as usize + 1;
        (digits[..split].to_string(), digits[split..].to_string())
    } else {
        (
            "0".to_string(),
            format!("{}{}", "0".repeat((-exp - 1) as usize), digits),
        )
    };
    let frac = frac.trim_end_matches('0');
    let frac = if frac.is_empty() { "0" } else { frac };
    format!("{sign}{int}.{frac}")
}

fn write_string(out: &mut String, s: &str) {
    out.push_str(&serde_json::to_string(s).expect("string serialization"));
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = |out: &mut String, k: usize| out.extend(std::iter::repeat_n(' ', 2 * k));
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if n.is_f64() {
                out.push_str(&format_f64(n.as_f64().expect("f64")));
            } else {
                out.push_str(&n.to_string());
            }
        }
        Value::String(s) => write_string(out, s),
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            // arrays of scalars stay on one line
            if items.iter().all(|i| !i.is_array() && !i.is_object()) {
                out.push('[');
                for (k, item) in items.iter().enumerate() {
                    if k > 0 {
                        out.push_str(", ");
                    }
                    write_value(out, item, indent);
                }
                out.push(']');
                return;
            }
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                pad(out, indent + 1);
                write_value(out, item, indent + 1);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(out, indent);
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (k, key) in keys.iter().enumerate() {
                pad(out, indent + 1);
                write_string(out, key);
                out.push_str(": ");
                write_value(out, &map[*key], indent + 1);
                out.push_str(if k + 1 < keys.len() { ",\n" } else { "\n" });
            }
            pad(out, indent);
            out.push('}');
        }
    }
}

pub fn canonical_value(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out.push('\n');
    out
}

pub fn to_canonical<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    Ok(canonical_value(&serde_json::to_value(value)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(format_f64(0.1), "0.10000000000000001");
        assert_eq!(format_f64(1.0), "1.0");
        assert_eq!(format_f64(-2.5), "-2.5");
        assert_eq!(format_f64(1.0 / 3.0), "0.33333333333333331");
        assert_eq!(format_f64(1e-7), "9.9999999999999995e-8");
        assert_eq!(format_f64(1e20), "1.0e20");
        assert_eq!(format_f64(123456.0), "123456.0");
        assert_eq!(format_f64(0.00012), "0.00012");
        assert_eq!(format_f64(f64::INFINITY), "null");
        for x in [0.1, 1.0 / 3.0, 1e-7, 6.02e23, -4.4e-300, 12345.678] {
            assert_eq!(format_f64(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn keys_sorted_and_stable() {
        let v: Value = serde_json::json!({"b": [1, 2.0], "a": {"y": null, "x": [{"k": true}]}});
        let s = canonical_value(&v);
        assert_eq!(
            s,
            "{\n  \"a\": {\n    \"x\": [\n      {\n        \"k\": true\n      }\n    ],\n    \"y\": null\n  },\n  \"b\": [1, 2.0]\n}\n"
        );
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(canonical_value(&back), s);
    }
}
