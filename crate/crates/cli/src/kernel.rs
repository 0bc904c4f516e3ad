use clap::Subcommand;
use num_complex::Complex64;
use serde_json::json;

use maya_core::dimer::{write_kernel_csv, BeadsKernel, FiniteKernel, LimitKernel};
use maya_core::mtasep::{sine_kernel, ProjectionKernel};
use maya_core::svg::heatmap;
use maya_core::verify::REPORT_SCHEMA_VERSION;

use crate::output::{csv, CliError, Ctx, Format, IntRange};

#[derive(Debug, Subcommand)]
pub enum KernelKind {
    /// Projection kernel of the maximal-entropy measure on `Z_L`.
    Projection {
        #[arg(long = "L")]
        l: usize,
        #[arg(long = "N")]
        n: usize,
        /// Shift of the harmonic window.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        offset: i64,
    },
    /// Discrete sine kernel at density `rho`.
    Sine {
        #[arg(long)]
        rho: f64,
        #[arg(long, default_value = "-10..=10", allow_hyphen_values = true)]
        k: IntRange,
    },
    /// Closed-form kernel at finite `ε`, time difference `j` and position difference `d`.
    Finite {
        #[arg(long = "L")]
        l: usize,
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        j: IntRange,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        d: IntRange,
        /// Apply the gauge `e^{c′ j}`.
        #[arg(long, allow_hyphen_values = true)]
        c_prime: Option<f64>,
    },
    /// Frozen-limit kernel; `t = 0` is read on the `t > 0` branch.
    Limit {
        #[arg(long = "L")]
        l: usize,
        #[arg(long = "N")]
        n: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        t: Vec<f64>,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        d: IntRange,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<f64>,
    },
    /// Beads kernel by arc and straight-contour quadrature.
    Beads {
        #[arg(long)]
        rho: f64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        t: Vec<f64>,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        k: IntRange,
        /// Largest accepted arc/segment discrepancy.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

/// Emits `(row label, column label, value)` triples as csv, json or a heatmap.
fn emit_grid(
    ctx: &Ctx,
    names: [&str; 2],
    rows: &[String],
    cols: &[i64],
    values: &[Vec<Complex64>],
    title: &str,
) -> Result<(), CliError> {
    match ctx.format(Format::Csv, &[Format::Csv, Format::Json, Format::Svg])? {
        Format::Svg => {
            let abs: Vec<Vec<f64>> = values.iter().map(|r| r.iter().map(|v| v.norm()).collect()).collect();
            ctx.emit(&heatmap(title, &abs))
        }
        Format::Json => {
            let mut list = Vec::new();
            for (r, row) in rows.iter().zip(values) {
                for (c, v) in cols.iter().zip(row) {
                    let mut m = serde_json::Map::new();
                    m.insert(names[0].into(), json!(r));
                    m.insert(names[1].into(), json!(c));
                    m.insert("re".into(), json!(v.re));
                    m.insert("im".into(), json!(v.im));
                    list.push(serde_json::Value::Object(m));
                }
            }
            ctx.emit_json(&json!({ "schema_version": REPORT_SCHEMA_VERSION, "kernel": title, "values": list }))
        }
        Format::Csv => {
            let mut body = Vec::new();
            for (r, row) in rows.iter().zip(values) {
                for (c, v) in cols.iter().zip(row) {
                    body.push(vec![r.clone(), c.to_string(), v.re.to_string(), v.im.to_string()]);
                }
            }
            ctx.emit(&csv(&[names[0], names[1], "re", "im"], body))
        }
    }
}

fn beads(ctx: &Ctx, rho: f64, ts: &[f64], k: IntRange, tol: f64) -> Result<bool, CliError> {
    let b = BeadsKernel::new(rho)?;
    let mut rows = Vec::new();
    for &t in ts {
        for k in k.iter() {
            rows.push((t, k, b.value(t, k)?));
        }
    }
    let worst = rows.iter().filter_map(|r| r.2.discrepancy()).fold(0.0, f64::max);
    let passed = worst <= tol;
    eprintln!("max arc/segment discrepancy {worst:.3e} (tolerance {tol:e})");
    match ctx.format(Format::Csv, &[Format::Csv, Format::Json])? {
        Format::Json => {
            let list: Vec<_> = rows
                .iter()
                .map(|(t, k, v)| json!({ "t": t, "k": k, "value": v, "discrepancy": v.discrepancy() }))
                .collect();
            ctx.emit_json(&json!({
                "schema_version": REPORT_SCHEMA_VERSION,
                "rho": rho,
                "tolerance": tol,
                "passed": passed,
                "values": list,
            }))?;
        }
        _ => {
            let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
            let body = rows.iter().map(|(t, k, v)| {
                vec![
                    t.to_string(),
                    k.to_string(),
                    v.arc.re.to_string(),
                    v.arc.im.to_string(),
                    opt(v.segment.map(|s| s.re)),
                    opt(v.segment.map(|s| s.im)),
                    v.discrepancy().map(|d| format!("{d:e}")).unwrap_or_default(),
                ]
            });
            let header = ["t", "k", "arc_re", "arc_im", "segment_re", "segment_im", "discrepancy"];
            ctx.emit(&csv(&header, body))?;
        }
    }
    Ok(passed)
}

pub fn run(ctx: &Ctx, kind: KernelKind) -> Result<bool, CliError> {
    match kind {
        KernelKind::Projection { l, n, offset } => {
            let k = ProjectionKernel::with_offset(l, n, offset)?;
            if ctx.format(Format::Csv, &[Format::Csv, Format::Json, Format::Svg])? == Format::Svg {
                let abs: Vec<Vec<f64>> =
                    (0..l).map(|x| (0..l).map(|y| k.value(x as i64 - y as i64).norm()).collect()).collect();
                ctx.emit(&heatmap(&format!("|K| on Z_{l}, N = {n}"), &abs))?;
            } else {
                let d: Vec<i64> = (0..l as i64).collect();
                let values = vec![d.iter().map(|&d| k.value(d)).collect()];
                emit_grid(ctx, ["L", "d"], &[l.to_string()], &d, &values, "projection")?;
            }
        }
        KernelKind::Sine { rho, k } => {
            let ks: Vec<i64> = k.iter().collect();
            let values = vec![ks.iter().map(|&k| Complex64::new(sine_kernel(k, rho), 0.0)).collect()];
            emit_grid(ctx, ["rho", "k"], &[rho.to_string()], &ks, &values, "sine")?;
        }
        KernelKind::Finite {
            l,
            n,
            eps,
            j,
            d,
            c_prime,
        } => {
            let kernel = FiniteKernel::new(l, n, eps)?;
            let ds: Vec<i64> = d.iter().collect();
            let mut values = Vec::new();
            for j in j.iter() {
                let row = ds
                    .iter()
                    .map(|&d| match c_prime {
                        Some(c) => kernel.gauged(j, d, c),
                        None => Ok(kernel.value(j, d)),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                values.push(row);
            }
            let js: Vec<String> = j.iter().map(|j| j.to_string()).collect();
            emit_grid(ctx, ["j", "d"], &js, &ds, &values, "finite")?;
        }
        KernelKind::Limit { l, n, t, d, c } => {
            let kernel = LimitKernel::new(l, n, c)?;
            let ts = if t.is_empty() { vec![0.0] } else { t };
            let ds: Vec<i64> = d.iter().collect();
            let values: Vec<Vec<Complex64>> = ts.iter().map(|&t| ds.iter().map(|&d| kernel.value(t, d)).collect()).collect();
            if ctx.format(Format::Csv, &[Format::Csv, Format::Json, Format::Svg])? == Format::Csv {
                let mut rows = Vec::new();
                for (&t, row) in ts.iter().zip(&values) {
                    rows.extend(ds.iter().zip(row).map(|(&d, &v)| (t, d, v)));
                }
                let mut buf = Vec::new();
                write_kernel_csv(&mut buf, &rows)?;
                ctx.emit(&String::from_utf8_lossy(&buf))?;
            } else {
                let labels: Vec<String> = ts.iter().map(|t| t.to_string()).collect();
                emit_grid(ctx, ["t", "d"], &labels, &ds, &values, "limit")?;
            }
        }
        KernelKind::Beads { rho, t, k, tol } => {
            let ts = if t.is_empty() { vec![0.0] } else { t };
            return beads(ctx, rho, &ts, k, tol);
        }
    }
    Ok(true)
}
