use clap::Args;
use rayon::prelude::*;
use serde_json::json;

use maya_core::mtasep::{entropy_closed, spectral_radius_numeric};
use maya_core::verify::REPORT_SCHEMA_VERSION;

use crate::output::{csv, usage, CliError, Ctx, Format};

#[derive(Debug, Args)]
pub struct EntropyArgs {
    /// Circle length.
    #[arg(value_name = "L")]
    l: Option<usize>,
    /// Number of stones.
    #[arg(value_name = "N")]
    n: Option<usize>,
    /// Tabulate every 2 ≤ L ≤ LMAX, 1 ≤ N < L instead.
    #[arg(long, value_name = "LMAX", conflicts_with_all = ["l", "n"])]
    sweep: Option<usize>,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

struct Row {
    l: usize,
    n: usize,
    closed: f64,
    numeric: f64,
}

impl Row {
    fn diff(&self) -> f64 {
        (self.closed - self.numeric).abs()
    }
}

fn row(l: usize, n: usize) -> Result<Row, CliError> {
    Ok(Row {
        l,
        n,
        closed: entropy_closed(l, n)?,
        numeric: spectral_radius_numeric(l, n)?.entropy,
    })
}

pub fn run(ctx: &Ctx, a: EntropyArgs) -> Result<bool, CliError> {
    let pairs: Vec<(usize, usize)> = match (a.sweep, a.l, a.n) {
        (Some(lmax), _, _) => (2..=lmax).flat_map(|l| (1..l).map(move |n| (l, n))).collect(),
        (None, Some(l), Some(n)) => vec![(l, n)],
        _ => return Err(usage("give L and N, or --sweep LMAX")),
    };
    let rows = ctx
        .pool()?
        .install(|| pairs.par_iter().map(|&(l, n)| row(l, n)).collect::<Result<Vec<_>, _>>())?;
    let passed = rows.iter().all(|r| r.diff() <= a.tol);
    match ctx.format(Format::Csv, &[Format::Csv, Format::Json])? {
        Format::Json => {
            let list: Vec<_> = rows
                .iter()
                .map(|r| json!({ "L": r.l, "N": r.n, "closed": r.closed, "numeric": r.numeric, "diff": r.diff() }))
                .collect();
            ctx.emit_json(&json!({
                "schema_version": REPORT_SCHEMA_VERSION,
                "tolerance": a.tol,
                "passed": passed,
                "rows": list,
            }))?;
        }
        _ => {
            let body = rows.iter().map(|r| {
                vec![
                    r.l.to_string(),
                    r.n.to_string(),
                    format!("{:.12}", r.closed),
                    format!("{:.12}", r.numeric),
                    format!("{:.3e}", r.diff()),
                ]
            });
            ctx.emit(&csv(&["L", "N", "closed", "numeric", "diff"], body))?;
        }
    }
    Ok(passed)
}
