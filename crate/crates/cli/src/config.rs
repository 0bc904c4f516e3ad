//! `key = value` configuration files, merged under explicit flags.
//!
//! Keys name long options (`m_minus` and `m-minus` are the same key). A key
//! is injected only when the selected leaf subcommand (or the top level)
//! accepts it and the command line does not already set it.

use clap::Command;

pub fn parse(text: &str) -> Result<Vec<(String, String)>, String> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key = value", i + 1))?;
        let key = k.trim().trim_start_matches("--").replace('_', "-");
        if key.is_empty() {
            return Err(format!("config line {}: empty key", i + 1));
        }
        out.push((key, v.trim().to_string()));
    }
    Ok(out)
}

fn config_path(args: &[String]) -> Option<String> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(p.to_string());
        }
    }
    None
}

fn leaf<'a>(root: &'a Command, args: &[String]) -> &'a Command {
    let mut cur = root;
    for a in args.iter().skip(1) {
        if let Some(sub) = cur.find_subcommand(a) {
            cur = sub;
        }
    }
    cur
}

fn present(args: &[String], key: &str) -> bool {
    let flag = format!("--{key}");
    let inline = format!("--{key}=");
    args.iter().any(|a| *a == flag || a.starts_with(&inline))
}

fn truthy(key: &str, v: &str) -> Result<bool, String> {
    match v.to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => Err(format!("config key {key}: expected a boolean, got {v:?}")),
    }
}

/// Returns `args` with config entries appended as flags.
pub fn merge(args: Vec<String>, root: &Command) -> Result<Vec<String>, String> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(&path).map_err(|e| format!("config {path}: {e}"))?;
    let entries = parse(&text)?;
    let sub = leaf(root, &args);
    let mut merged = args.clone();
    for (key, value) in entries {
        if key == "config" || present(&args, &key) {
            continue;
        }
        let Some(arg) = sub
            .get_arguments()
            .chain(root.get_arguments())
            .find(|a| a.get_long() == Some(key.as_str()))
        else {
            continue;
        };
        if arg.get_action().takes_values() {
            merged.push(format!("--{key}"));
            merged.push(value);
        } else if truthy(&key, &value)? {
            merged.push(format!("--{key}"));
        }
    }
    Ok(merged)
}
