use std::path::PathBuf;

use clap::{ArgGroup, Args, Subcommand, ValueEnum};
use serde_json::json;

use maya_core::shape::{
    el_residual, el_residual_closed, functional_l, functional_terms, omega_tx, path_to_shape, sup_distance,
    Normalization,
};
use maya_core::verify::REPORT_SCHEMA_VERSION;
use maya_core::young::sample_plancherel_path;
use maya_core::ShapeFunction64;

use crate::output::{csv, usage, CliError, Ctx, Format};

/// Half-width of the x window used for the limit shape.
const X_EXTENT: f64 = 1.6;

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Tag {
    Area1,
    Area2,
    Unrescaled,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["vkls", "input"])))]
pub struct Source {
    /// Use the limit shape `Ω(t, x)`.
    #[arg(long)]
    vkls: bool,
    /// Mesh csv with `t,x,g` rows, as written by `shape path`.
    #[arg(long, value_name = "CSV")]
    input: Option<PathBuf>,
    /// Normalization of the shape.
    #[arg(long, value_enum, default_value = "area1")]
    tag: Tag,
    /// Cell count for the unrescaled normalization.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum ShapeKind {
    /// `Ω(t, x)`.
    Omega {
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
    },
    /// The functional 𝓛[g] by midpoint quadrature, with a mesh-halving error estimate.
    Functional {
        #[command(flatten)]
        source: Source,
        /// Intervals per axis for `--vkls`.
        #[arg(long, default_value_t = 400)]
        mesh: usize,
    },
    /// Euler–Lagrange residual at `(t, x)`.
    Residual {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        t: f64,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        /// Stencil step for `--vkls`.
        #[arg(long, default_value_t = 1e-3)]
        h: f64,
    },
    /// Boundary curves of a Plancherel path, compared with `Ω`.
    Path {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_delimiter = ',', default_value = "0.25,0.5,1")]
        times: Vec<f64>,
    },
}

fn normalization(s: &Source) -> Result<Normalization, CliError> {
    Ok(match s.tag {
        Tag::Area1 => Normalization::Area1,
        Tag::Area2 => Normalization::Area2,
        Tag::Unrescaled => Normalization::Unrescaled {
            n: s.n.ok_or_else(|| usage("--tag unrescaled needs --n"))?,
        },
    })
}

fn vkls(mesh: usize, tag: Normalization) -> Result<ShapeFunction64, CliError> {
    if mesh < 2 {
        return Err(usage("--mesh must be at least 2"));
    }
    let g = ShapeFunction64::uniform((0.0, 1.0), mesh, (-X_EXTENT, X_EXTENT), mesh, Normalization::Area1, omega_tx)?;
    Ok(match tag {
        Normalization::Area1 => g,
        Normalization::Area2 => g.to_area2()?,
        Normalization::Unrescaled { n } => g.to_area2()?.to_unrescaled(n)?,
    })
}

fn load(path: &PathBuf, tag: Normalization) -> Result<ShapeFunction64, CliError> {
    let file = std::fs::File::open(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok(ShapeFunction64::read_csv(file, tag)?)
}

fn functional(ctx: &Ctx, source: &Source, mesh: usize) -> Result<(), CliError> {
    let tag = normalization(source)?;
    let (g, estimate) = match &source.input {
        Some(p) => (load(p, tag)?, None),
        None => {
            let g = vkls(mesh, tag)?;
            let coarse = functional_l(&vkls((mesh / 2).max(2), tag)?)?;
            let fine = functional_l(&g)?;
            (g, Some((fine - coarse).abs()))
        }
    };
    let value = functional_l(&g)?;
    let terms = functional_terms(&g, |_| 0.0)?;
    match ctx.format(Format::Csv, &[Format::Csv, Format::Json, Format::Svg])? {
        Format::Svg => {
            let last = *g.ts().last().expect("mesh has times");
            let times: Vec<f64> = [0.25, 0.5, 0.75, 1.0].iter().map(|f| f * last).collect();
            ctx.emit(&g.to_svg(&times))
        }
        Format::Json => ctx.emit_json(&json!({
            "schema_version": REPORT_SCHEMA_VERSION,
            "tag": tag,
            "mesh": [g.ts().len() - 1, g.xs().len() - 1],
            "value": value,
            "error_estimate": estimate,
            "mass": terms.mass,
        })),
        Format::Csv => {
            let est = estimate.map(|e| format!("{e:.3e}")).unwrap_or_default();
            let row = vec![(g.ts().len() - 1).to_string(), format!("{value:.9}"), est];
            ctx.emit(&csv(&["mesh", "value", "error_estimate"], [row]))
        }
    }
}

pub fn run(ctx: &Ctx, kind: ShapeKind) -> Result<bool, CliError> {
    match kind {
        ShapeKind::Omega { x, t } => {
            if t < 0.0 {
                return Err(usage("--t must be nonnegative"));
            }
            let v = omega_tx(t, x);
            match ctx.format(Format::Csv, &[Format::Csv, Format::Json])? {
                Format::Json => ctx.emit_json(&json!({ "t": t, "x": x, "omega": v }))?,
                _ => ctx.emit(&csv(&["t", "x", "omega"], [vec![t.to_string(), x.to_string(), v.to_string()]]))?,
            }
        }
        ShapeKind::Functional { source, mesh } => functional(ctx, &source, mesh)?,
        ShapeKind::Residual { source, t, x, h } => {
            let r = match &source.input {
                Some(p) => el_residual(&load(p, normalization(&source)?)?, t, x)?,
                None => match normalization(&source)? {
                    Normalization::Area1 => el_residual_closed(omega_tx, t, x, h)?,
                    _ => return Err(usage("--vkls residuals are taken in the area1 normalization")),
                },
            };
            match ctx.format(Format::Csv, &[Format::Csv, Format::Json])? {
                Format::Json => ctx.emit_json(&json!({ "t": t, "x": x, "residual": r }))?,
                _ => ctx.emit(&csv(&["t", "x", "residual"], [vec![t.to_string(), x.to_string(), format!("{r:e}")]]))?,
            }
        }
        ShapeKind::Path { n, seed, times } => {
            if n == 0 {
                return Err(usage("--n must be positive"));
            }
            let g: ShapeFunction64 = path_to_shape(&sample_plancherel_path(n, seed))?;
            let distances: Vec<(f64, f64)> =
                times.iter().map(|&t| (t, sup_distance(&g, t, |x| omega_tx(t, x)))).collect();
            for (t, d) in &distances {
                eprintln!("t {t}: sup |g − Ω| = {d:.5}");
            }
            match ctx.format(Format::Csv, &[Format::Csv, Format::Json, Format::Svg])? {
                Format::Svg => ctx.emit(&g.to_svg(&times))?,
                Format::Json => {
                    let list: Vec<_> = distances.iter().map(|(t, d)| json!({ "t": t, "sup_distance": d })).collect();
                    ctx.emit_json(&json!({
                        "schema_version": REPORT_SCHEMA_VERSION,
                        "n": n,
                        "seed": seed,
                        "distances": list,
                    }))?;
                }
                Format::Csv => {
                    let mut buf = Vec::new();
                    g.write_csv(&mut buf)?;
                    ctx.emit(&String::from_utf8_lossy(&buf))?;
                }
            }
        }
    }
    Ok(true)
}
