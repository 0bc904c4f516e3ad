use clap::Subcommand;
use rayon::prelude::*;
use serde_json::json;

use maya_core::mtasep::{entropy_closed, sample_frozen_process, simulate_chain, write_events_csv, JumpEvent};
use maya_core::verify::REPORT_SCHEMA_VERSION;
use maya_core::young::{count_skew, sample_plancherel_path, sample_uniform_skew_path, PathTableau, SkewShape};

use crate::output::{csv, usage, CliError, Ctx, Format};

#[derive(Debug, Subcommand)]
pub enum SampleKind {
    /// Plancherel growth path of `n` cells.
    Plancherel {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Uniform standard filling of a skew shape such as `2,2/1`.
    Skew {
        #[arg(long)]
        shape: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Stationary trajectory of the maximal-entropy chain.
    Chain {
        #[arg(long = "L")]
        l: usize,
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Jump events of the frozen-limit process on `[0, horizon]`.
    Frozen {
        #[arg(long = "L")]
        l: usize,
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        horizon: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Independent runs with seeds `seed, seed + 1, …`; reports rates only.
        #[arg(long, default_value_t = 1)]
        replicas: usize,
    },
}

fn order_rows(t: &PathTableau) -> Vec<Vec<String>> {
    t.order
        .iter()
        .enumerate()
        .map(|(k, &(r, c))| vec![(k + 1).to_string(), r.to_string(), c.to_string()])
        .collect()
}

/// Entries row by row, `null` on cells of the inner shape.
fn filling(t: &PathTableau) -> Vec<Vec<Option<usize>>> {
    let entries = t.entries();
    let outer = t.shape.outer();
    (0..outer.len())
        .map(|i| (0..outer.part(i)).map(|j| entries.get(&(i, j)).copied()).collect())
        .collect()
}

fn emit_tableau(ctx: &Ctx, kind: &str, seed: u64, t: &PathTableau, extra: serde_json::Value) -> Result<(), CliError> {
    match ctx.format(Format::Json, &[Format::Json, Format::Csv])? {
        Format::Csv => ctx.emit(&csv(&["step", "row", "col"], order_rows(t))),
        _ => {
            let mut v = json!({
                "schema_version": REPORT_SCHEMA_VERSION,
                "kind": kind,
                "seed": seed,
                "shape": t.shape,
                "filling": filling(t),
                "order": t.order,
            });
            if let (Some(obj), serde_json::Value::Object(more)) = (v.as_object_mut(), extra) {
                obj.extend(more);
            }
            ctx.emit_json(&v)
        }
    }
}

struct RateSummary {
    events: usize,
    rate: f64,
    expected: f64,
    sigma: f64,
}

impl RateSummary {
    fn new(l: usize, n: usize, horizon: f64, events: &[JumpEvent]) -> Result<Self, CliError> {
        let expected = entropy_closed(l, n)?.exp();
        Ok(RateSummary {
            events: events.len(),
            rate: events.len() as f64 / horizon,
            expected,
            sigma: (expected / horizon).sqrt(),
        })
    }

    fn z(&self) -> f64 {
        (self.rate - self.expected) / self.sigma
    }
}

fn frozen(ctx: &Ctx, l: usize, n: usize, horizon: f64, seed: u64, replicas: usize) -> Result<bool, CliError> {
    if replicas == 0 {
        return Err(usage("--replicas must be at least 1"));
    }
    if replicas > 1 {
        let runs = ctx.pool()?.install(|| {
            (0..replicas as u64)
                .into_par_iter()
                .map(|i| {
                    let s = seed.wrapping_add(i);
                    let ev = sample_frozen_process(l, n, horizon, s)?;
                    Ok((s, RateSummary::new(l, n, horizon, &ev)?))
                })
                .collect::<Result<Vec<_>, CliError>>()
        })?;
        let body = runs.iter().enumerate().map(|(i, (s, r))| {
            vec![
                i.to_string(),
                s.to_string(),
                r.events.to_string(),
                r.rate.to_string(),
                r.expected.to_string(),
                r.sigma.to_string(),
                format!("{:.4}", r.z()),
            ]
        });
        ctx.format(Format::Csv, &[Format::Csv])?;
        ctx.emit(&csv(&["replica", "seed", "events", "rate", "expected", "sigma", "z"], body))?;
        return Ok(true);
    }
    let events = sample_frozen_process(l, n, horizon, seed)?;
    let r = RateSummary::new(l, n, horizon, &events)?;
    eprintln!(
        "events {} rate {:.6} expected {:.6} sigma {:.6} z {:.3}",
        r.events,
        r.rate,
        r.expected,
        r.sigma,
        r.z()
    );
    match ctx.format(Format::Csv, &[Format::Csv, Format::Json])? {
        Format::Json => ctx.emit_json(&json!({
            "schema_version": REPORT_SCHEMA_VERSION,
            "L": l,
            "N": n,
            "horizon": horizon,
            "seed": seed,
            "rate": r.rate,
            "expected_rate": r.expected,
            "sigma": r.sigma,
            "z": r.z(),
            "events": events,
        }))?,
        _ => {
            let mut buf = Vec::new();
            write_events_csv(&mut buf, &events)?;
            ctx.emit(&String::from_utf8_lossy(&buf))?;
        }
    }
    Ok(true)
}

pub fn run(ctx: &Ctx, kind: SampleKind) -> Result<bool, CliError> {
    match kind {
        SampleKind::Plancherel { n, seed } => {
            let t = sample_plancherel_path(n, seed);
            emit_tableau(ctx, "plancherel", seed, &t, json!({ "n": n }))?;
        }
        SampleKind::Skew { shape, seed } => {
            let s: SkewShape = shape.parse()?;
            let count = count_skew(&s)?;
            let t = sample_uniform_skew_path(&s, seed);
            t.validate()?;
            emit_tableau(ctx, "skew", seed, &t, json!({ "count": count.to_string() }))?;
        }
        SampleKind::Chain { l, n, steps, seed } => {
            let states = simulate_chain(l, n, steps, seed)?;
            match ctx.format(Format::Csv, &[Format::Csv, Format::Json])? {
                Format::Json => ctx.emit_json(&json!({
                    "schema_version": REPORT_SCHEMA_VERSION,
                    "L": l,
                    "N": n,
                    "seed": seed,
                    "states": states,
                }))?,
                _ => {
                    let body = states.iter().enumerate().map(|(k, s)| vec![k.to_string(), s.to_string()]);
                    ctx.emit(&csv(&["step", "state"], body))?;
                }
            }
        }
        SampleKind::Frozen {
            l,
            n,
            horizon,
            seed,
            replicas,
        } => return frozen(ctx, l, n, horizon, seed, replicas),
    }
    Ok(true)
}
