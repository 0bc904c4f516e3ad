use clap::{Args, Subcommand};
use serde_json::json;

use maya_core::cyclotomic::Cyclotomic;
use maya_core::dimer::{
    enumerate_matchings, kasteleyn_check, matchings_json, parse_rational, partition_sum, poissonization_check,
    CylinderGraph, GaugeAssignment, MATCHING_VERTEX_CAP,
};
use maya_core::mtasep::CircleState;
use maya_core::verify::REPORT_SCHEMA_VERSION;
use maya_core::Rational;

use crate::output::{csv, CliError, Ctx, Format};

#[derive(Debug, Args)]
pub struct Boundary {
    /// Initial stones as a 0/1 word, e.g. `1100`.
    #[arg(long)]
    boundary_in: String,
    /// Final stones.
    #[arg(long)]
    boundary_out: String,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    m_minus: i64,
    #[arg(long, allow_hyphen_values = true)]
    m_plus: i64,
}

impl Boundary {
    fn graph(&self) -> Result<CylinderGraph, CliError> {
        let a: CircleState = self.boundary_in.parse()?;
        let b: CircleState = self.boundary_out.parse()?;
        Ok(CylinderGraph::new(a, b, self.m_minus, self.m_plus)?)
    }
}

#[derive(Debug, Subcommand)]
pub enum DimerKind {
    /// Hexagonal cylinder graph encoding evolutions between two boundaries.
    Graph {
        #[command(flatten)]
        boundary: Boundary,
    },
    /// All perfect matchings, their partition sum and the Kasteleyn identity.
    Matchings {
        #[command(flatten)]
        boundary: Boundary,
        /// Jump weight, an exact rational such as `1/3`.
        #[arg(long, default_value = "1/2")]
        eps: String,
    },
    /// Mirrored-graph weights against the poissonized Plancherel law.
    Poisson {
        #[arg(long, default_value_t = 2)]
        width: usize,
        #[arg(long)]
        levels: usize,
        #[arg(long)]
        eps: String,
        #[arg(long)]
        theta: String,
    },
}

pub fn run(ctx: &Ctx, kind: DimerKind) -> Result<bool, CliError> {
    match kind {
        DimerKind::Graph { boundary } => {
            let g = boundary.graph()?;
            ctx.format(Format::Json, &[Format::Json])?;
            ctx.emit(&(g.to_json() + "\n"))?;
            Ok(true)
        }
        DimerKind::Matchings { boundary, eps } => {
            let g = boundary.graph()?;
            let eps = parse_rational(&eps)?;
            let matchings = enumerate_matchings(&g.graph, MATCHING_VERTEX_CAP)?;
            let z: Rational = partition_sum(&matchings, &eps);
            let gauge = GaugeAssignment::standard(&g);
            let holds = if g.is_odd() {
                kasteleyn_check(&g, &eps, &gauge, MATCHING_VERTEX_CAP)?.holds()
            } else {
                kasteleyn_check(&g, &Cyclotomic::from_rational(eps.clone()), &gauge, MATCHING_VERTEX_CAP)?.holds()
            };
            ctx.format(Format::Json, &[Format::Json])?;
            ctx.emit_json(&json!({
                "schema_version": REPORT_SCHEMA_VERSION,
                "vertices": g.graph.vertex_count(),
                "epsilon": eps.to_string(),
                "count": matchings.len(),
                "z": z.to_string(),
                "kasteleyn_identity": holds,
                "matchings": matchings_json(&g, &matchings)?,
            }))?;
            Ok(holds)
        }
        DimerKind::Poisson {
            width,
            levels,
            eps,
            theta,
        } => {
            let report = poissonization_check(width, levels, &parse_rational(&eps)?, &parse_rational(&theta)?)?;
            match ctx.format(Format::Json, &[Format::Json, Format::Csv])? {
                Format::Csv => {
                    let body = report.entries.iter().map(|e| {
                        vec![e.partition.to_string(), e.weight.to_string(), e.target.to_string()]
                    });
                    ctx.emit(&csv(&["partition", "weight", "target"], body))?;
                }
                _ => ctx.emit_json(&report)?,
            }
            eprintln!("max error {:.6e}", report.max_error);
            Ok(true)
        }
    }
}
