//! CSV rendering of JSON reports.
//!
//! Headers are fixed per command:
//!
//! | command     | columns |
//! |-------------|---------|
//! | `decompose` | `model,n,t,l,label,dim,mult,eff_mult` |
//! | `capacity`  | `model,n,t,l,log_base,value,label,p,descriptor` |
//! | `bounds`    | `model,n,t,l,alpha,beta,epsilon,lower_<unit>,upper_<unit>` |
//! | `simulate`  | `model,n,t,state_tag,codebook_tag,seed,codebook_size,success_prob,entropy_<unit>` |
//! | `scaling`   | `model,n,t,l,capacity_<unit>,baseline_<unit>,fitted_slope` |
//!
//! `<unit>` is `nats` or `bits`. Labels are written with their parts
//! separated by spaces, and JSON `null` becomes an empty field.

use serde_json::Value;

/// Renders one scalar JSON value as a CSV field.
fn field(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        Value::Bool(b) => b.to_string(),
        Value::Array(items) => items.iter().map(field).collect::<Vec<_>>().join(" "),
        Value::Object(_) => v.to_string(),
    }
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value, String> {
    v.get(key)
        .ok_or_else(|| format!("report has no field {key:?}"))
}

fn rows<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>, String> {
    get(v, key)?
        .as_array()
        .ok_or_else(|| format!("field {key:?} is not a list"))
}

/// Name of the first key of `row` starting with `stem_`, e.g. `lower_bits`.
fn unit_column(row: &Value, stem: &str) -> Result<String, String> {
    let prefix = format!("{stem}_");
    row.as_object()
        .and_then(|m| m.keys().find(|k| k.starts_with(&prefix)).cloned())
        .ok_or_else(|| format!("report has no {prefix}* field"))
}

/// Converts a report produced by [`crate::build_report`] into CSV.
pub fn to_csv(report: &Value) -> Result<String, String> {
    let command = get(report, "command")?
        .as_str()
        .ok_or("command is not a string")?;
    let mut header: Vec<String> = Vec::new();
    let mut records: Vec<Vec<String>> = Vec::new();
    let system = |row: &mut Vec<String>| -> Result<(), String> {
        for key in ["model", "n", "t", "l"] {
            row.push(field(get(report, key)?));
        }
        Ok(())
    };
    match command {
        "decompose" => {
            header.extend(
                ["model", "n", "t", "l", "label", "dim", "mult", "eff_mult"].map(String::from),
            );
            for e in rows(report, "entries")? {
                let mut r = Vec::new();
                system(&mut r)?;
                for key in ["label", "dim", "mult", "eff_mult"] {
                    r.push(field(get(e, key)?));
                }
                records.push(r);
            }
        }
        "capacity" => {
            header.extend(
                [
                    "model",
                    "n",
                    "t",
                    "l",
                    "log_base",
                    "value",
                    "label",
                    "p",
                    "descriptor",
                ]
                .map(String::from),
            );
            for b in rows(report, "optimal_p")? {
                let mut r = Vec::new();
                system(&mut r)?;
                r.push(field(get(report, "log_base")?));
                r.push(field(get(report, "value")?));
                for key in ["label", "p", "descriptor"] {
                    r.push(field(get(b, key)?));
                }
                records.push(r);
            }
        }
        "bounds" => {
            let list = rows(report, "bounds")?;
            let first = list.first().ok_or("bounds report is empty")?;
            let lower = unit_column(first, "lower")?;
            let upper = unit_column(first, "upper")?;
            header.extend(["model", "n", "t", "l", "alpha", "beta", "epsilon"].map(String::from));
            header.push(lower.clone());
            header.push(upper.clone());
            for b in list {
                let mut r = Vec::new();
                system(&mut r)?;
                for key in ["alpha", "beta", "epsilon", lower.as_str(), upper.as_str()] {
                    r.push(field(get(b, key)?));
                }
                records.push(r);
            }
        }
        "simulate" => {
            let entropy = unit_column(report, "entropy")?;
            let keys = [
                "model",
                "n",
                "t",
                "state_tag",
                "codebook_tag",
                "seed",
                "codebook_size",
                "success_prob",
                entropy.as_str(),
            ];
            header.extend(keys.iter().map(|k| k.to_string()));
            records.push(
                keys.iter()
                    .map(|k| get(report, k).map(field))
                    .collect::<Result<_, _>>()?,
            );
        }
        "scaling" => {
            let list = rows(report, "rows")?;
            let first = list.first().ok_or("scaling report is empty")?;
            let cap = unit_column(first, "capacity")?;
            let base = unit_column(first, "baseline")?;
            header.extend(["model", "n", "t", "l"].map(String::from));
            header.push(cap.clone());
            header.push(base.clone());
            header.push("fitted_slope".into());
            let slope = field(get(report, "fitted_slope")?);
            for row in list {
                records.push(vec![
                    field(get(report, "model")?),
                    field(get(row, "n")?),
                    field(get(report, "t")?),
                    field(get(report, "l")?),
                    field(get(row, &cap)?),
                    field(get(row, &base)?),
                    slope.clone(),
                ]);
            }
        }
        other => return Err(format!("unknown report command {other:?}")),
    }
    let mut out = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    out.write_record(&header).map_err(|e| e.to_string())?;
    for r in &records {
        out.write_record(r).map_err(|e| e.to_string())?;
    }
    let bytes = out.into_inner().map_err(|e| e.to_string())?;
    String::from_utf8(bytes).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn scalar_fields() {
        assert_eq!(field(&Value::Null), "");
        assert_eq!(field(&json!([2, 1, 0])), "2 1 0");
        assert_eq!(field(&json!("9/10")), "9/10");
        assert_eq!(field(&json!(0.5)), "0.5");
    }

    #[test]
    fn simulate_row_with_missing_success() {
        let report = json!({
            "schema": "1", "command": "simulate", "model": "su", "n": 2, "t": 2,
            "state_tag": "bn1", "codebook_tag": "none", "seed": 3,
            "codebook_size": null, "success_prob": null, "entropy_bits": 3.3,
        });
        let text = to_csv(&report).unwrap();
        assert_eq!(
            text,
            "model,n,t,state_tag,codebook_tag,seed,codebook_size,success_prob,entropy_bits\n\
             su,2,2,bn1,none,3,,,3.3\n"
        );
    }

    #[test]
    fn rejects_unknown_reports() {
        assert!(to_csv(&json!({"command": "plot"})).is_err());
        assert!(to_csv(&json!({"schema": "1"})).is_err());
    }
}
