use std::fmt;
use std::path::PathBuf;

use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Svg => "svg",
        })
    }
}

/// Usage, parameter or io problem; always exit code 2.
#[derive(Debug)]
pub struct CliError(pub String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<maya_core::Error> for CliError {
    fn from(e: maya_core::Error) -> Self {
        CliError(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError(e.to_string())
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError(msg.into())
}

pub struct Ctx {
    format: Option<Format>,
    output: Option<PathBuf>,
    jobs: usize,
}

impl Ctx {
    pub fn new(format: Option<Format>, output: Option<PathBuf>, jobs: usize) -> Result<Self, CliError> {
        if jobs == 0 {
            return Err(usage("--jobs must be at least 1"));
        }
        Ok(Ctx { format, output, jobs })
    }

    /// Requested format, or `default`; errors if the command cannot produce it.
    pub fn format(&self, default: Format, allowed: &[Format]) -> Result<Format, CliError> {
        let f = self.format.unwrap_or(default);
        if allowed.contains(&f) {
            Ok(f)
        } else {
            Err(usage(format!("this command cannot emit {f}")))
        }
    }

    pub fn emit(&self, text: &str) -> Result<(), CliError> {
        match &self.output {
            Some(p) => std::fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
            None => {
                use std::io::Write;
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())?;
                out.flush()?;
                Ok(())
            }
        }
    }

    pub fn emit_json<T: Serialize>(&self, value: &T) -> Result<(), CliError> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        self.emit(&text)
    }

    /// Pool sized by `--jobs`; a single worker keeps runs sequential.
    pub fn pool(&self) -> Result<rayon::ThreadPool, CliError> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .map_err(|e| usage(e.to_string()))
    }
}

pub fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for r in rows {
        out.push_str(&r.join(","));
        out.push('\n');
    }
    out
}

/// Inclusive integer range written `a`, `a..b` or `a..=b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntRange {
    pub lo: i64,
    pub hi: i64,
}

impl IntRange {
    pub fn iter(self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

impl std::str::FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let int = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}"));
        let (lo, hi) = if let Some((a, b)) = s.split_once("..=") {
            (int(a)?, int(b)?)
        } else if let Some((a, b)) = s.split_once("..") {
            (int(a)?, int(b)? - 1)
        } else {
            let v = int(s)?;
            (v, v)
        };
        if hi < lo {
            return Err(format!("empty range {s:?}"));
        }
        Ok(IntRange { lo, hi })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!("3".parse::<IntRange>().unwrap(), IntRange { lo: 3, hi: 3 });
        assert_eq!("-2..=2".parse::<IntRange>().unwrap(), IntRange { lo: -2, hi: 2 });
        assert_eq!("0..4".parse::<IntRange>().unwrap().iter().count(), 4);
        assert!("4..4".parse::<IntRange>().is_err());
        assert!("a..3".parse::<IntRange>().is_err());
    }
}
