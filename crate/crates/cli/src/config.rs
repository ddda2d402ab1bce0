//! `--config file.json`: the file's keys are spliced into the argument list
//! as `--key=value` right after the subcommand, so explicit flags win.

use std::ffi::OsString;

use serde_json::Value;

pub const SUBCOMMANDS: &[&str] =
    &["params", "eigen", "poly", "wave", "spectrum", "momenta", "figures", "verify"];

fn take_config_path(args: &mut Vec<OsString>) -> Result<Option<OsString>, String> {
    let mut i = 1;
    while i < args.len() {
        let s = args[i].to_string_lossy().into_owned();
        if s == "--" {
            break;
        }
        if s == "--config" {
            if i + 1 >= args.len() {
                return Err("--config needs a file path".into());
            }
            let path = args.remove(i + 1);
            args.remove(i);
            return Ok(Some(path));
        }
        if let Some(p) = s.strip_prefix("--config=") {
            args.remove(i);
            return Ok(Some(p.into()));
        }
        i += 1;
    }
    Ok(None)
}

fn scalar(v: &Value) -> Result<Option<String>, String> {
    match v {
        Value::Null => Ok(None),
        Value::String(s) => Ok(Some(s.clone())),
        Value::Number(n) => Ok(Some(n.to_string())),
        other => Err(format!("unsupported config value {other}")),
    }
}

/// Flags derived from a config object, in key order.
fn config_flags(obj: &serde_json::Map<String, Value>) -> Result<Vec<(String, Vec<String>)>, String> {
    let mut out = Vec::new();
    for (key, value) in obj {
        if key == "command" {
            continue;
        }
        let flag = format!("--{}", key.replace('_', "-"));
        let mut items = Vec::new();
        match value {
            Value::Bool(true) => items.push(flag.clone()),
            Value::Bool(false) | Value::Null => {}
            Value::Array(vs) => {
                for v in vs {
                    if let Some(s) = scalar(v)? {
                        items.push(format!("{flag}={s}"));
                    }
                }
            }
            v => {
                if let Some(s) = scalar(v)? {
                    items.push(format!("{flag}={s}"));
                }
            }
        }
        out.push((flag, items));
    }
    Ok(out)
}

fn mentions(args: &[OsString], flag: &str) -> bool {
    args.iter().any(|a| {
        let a = a.to_string_lossy();
        a == flag || a.starts_with(&format!("{flag}="))
    })
}

/// Expands `--config` into ordinary arguments.
pub fn expand(mut args: Vec<OsString>) -> Result<Vec<OsString>, String> {
    let Some(path) = take_config_path(&mut args)? else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| format!("cannot read config {}: {e}", path.to_string_lossy()))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| format!("invalid config {}: {e}", path.to_string_lossy()))?;
    let Value::Object(obj) = value else {
        return Err("config must be a JSON object".into());
    };
    let from_file = match obj.get("command") {
        Some(Value::String(c)) => Some(c.clone()),
        None => None,
        Some(other) => return Err(format!("config command must be a string, got {other}")),
    };
    let pos = args.iter().skip(1).position(|a| SUBCOMMANDS.contains(&&*a.to_string_lossy()));
    let at = match (pos, from_file) {
        (Some(p), Some(c)) if args[p + 1] != *c => {
            return Err(format!(
                "config command {c:?} does not match {:?}",
                args[p + 1].to_string_lossy()
            ))
        }
        (Some(p), _) => p + 2,
        (None, Some(c)) => {
            args.insert(1, c.into());
            2
        }
        (None, None) => return Err("no subcommand given on the command line or in the config".into()),
    };
    let mut injected = Vec::new();
    for (flag, items) in config_flags(&obj)? {
        if !mentions(&args, &flag) {
            injected.extend(items.into_iter().map(OsString::from));
        }
    }
    args.splice(at..at, injected);
    Ok(args)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn os(v: &[&str]) -> Vec<OsString> {
        v.iter().map(OsString::from).collect()
    }

    #[test]
    fn flags_from_object() {
        let obj: Value = serde_json::json!({
            "command": "eigen", "family": ["even_sine", "odd_sine"], "n": 3, "a": 1.5, "allow_evanescent": true
        });
        let flags = config_flags(obj.as_object().unwrap()).unwrap();
        let all: Vec<String> = flags.into_iter().flat_map(|f| f.1).collect();
        assert_eq!(all, ["--a=1.5", "--allow-evanescent", "--family=even_sine", "--family=odd_sine", "--n=3"]);
    }

    #[test]
    fn no_config_is_identity() {
        let args = os(&["ince-wave", "eigen", "--n", "2"]);
        assert_eq!(expand(args.clone()).unwrap(), args);
    }
}
