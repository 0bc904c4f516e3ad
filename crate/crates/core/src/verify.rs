//! Invariant suites with machine-readable reports.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use serde::Serialize;

use crate::dimer::{
    self, faces, finite_kernel_exact, kasteleyn_check, poissonization_check, stone_correlation, BeadsKernel,
    CylinderGraph, FiniteKernel, GaugeAssignment, LimitKernel, MATCHING_VERTEX_CAP,
};
use crate::error::{Error, Result};
use crate::mtasep::{
    determinantal_state_probability, entropy_closed, parry_measure, sample_frozen_process, sine_kernel,
    spectral_radius_numeric, CircleState, ProjectionKernel,
};
use crate::scalar::ratio;
use crate::shape::{
    a0, constant_c, el_residual_closed, functional_l, functional_l0, omega, omega_tx, Normalization, ShapeFunction,
};
use crate::young::{
    count_skew, dimension, forward_step_distribution, maya_decode, maya_encode, minimal_window,
    plancherel_identity_check, Partition, SkewCounts, SkewShape,
};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Young,
    Mtasep,
    Dimer,
    Shape,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Young => "young",
            Suite::Mtasep => "mtasep",
            Suite::Dimer => "dimer",
            Suite::Shape => "shape",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "young" => Suite::Young,
            "mtasep" => Suite::Mtasep,
            "dimer" => Suite::Dimer,
            "shape" => Suite::Shape,
            "all" => Suite::All,
            other => return Err(Error::Parse(format!("unknown suite {other:?}"))),
        })
    }
}

/// One invariant: its measured discrepancy against a tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub value: f64,
    pub tolerance: f64,
    pub detail: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

/// `(discrepancy, tolerance, detail)`; passes when `discrepancy ≤ tolerance`.
type Outcome = Result<(f64, f64, String)>;

fn run(suite: &'static str, name: &'static str, f: impl FnOnce() -> Outcome) -> Check {
    let start = Instant::now();
    let (passed, value, tolerance, detail) = match f() {
        Ok((v, tol, d)) => (v <= tol, v, tol, d),
        Err(e) => (false, f64::NAN, f64::NAN, format!("error: {e}")),
    };
    Check {
        suite,
        name,
        passed,
        value,
        tolerance,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn flag(ok: bool) -> f64 {
    if ok {
        0.0
    } else {
        1.0
    }
}

pub fn run_suite(suite: Suite) -> Report {
    let checks = match suite {
        Suite::Young => young_checks(),
        Suite::Mtasep => mtasep_checks(),
        Suite::Dimer => dimer_checks(),
        Suite::Shape => shape_checks(),
        Suite::All => [young_checks(), mtasep_checks(), dimer_checks(), shape_checks()].concat(),
    };
    Report {
        schema_version: REPORT_SCHEMA_VERSION,
        suite: suite.name().into(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

fn young_checks() -> Vec<Check> {
    const S: &str = "young";
    vec![
        run(S, "plancherel_identity", || {
            let bad = (0..=10).filter(|&n| !plancherel_identity_check(n).unwrap_or(false)).count();
            Ok((bad as f64, 0.0, "Σ dim² = n! for n ≤ 10".into()))
        }),
        run(S, "skew_counts_two_routes", || {
            let mut pairs = 0;
            for n in 0..=9 {
                for outer in Partition::all_of_size(n) {
                    for inner in outer.sub_diagrams() {
                        count_skew(&SkewShape::new(outer.clone(), inner)?)?;
                        pairs += 1;
                    }
                }
            }
            Ok((0.0, 0.0, format!("{pairs} skew shapes, DP = determinant")))
        }),
        run(S, "hook_formula_vs_dp", || {
            let mut bad = 0;
            for n in 1..=10 {
                for p in Partition::all_of_size(n) {
                    bad += usize::from(SkewCounts::new(&p).get(&Partition::empty()) != dimension(&p));
                }
            }
            Ok((bad as f64, 0.0, "hook products against path counts".into()))
        }),
        run(S, "maya_round_trip", || {
            let mut bad = 0;
            for n in 0..=8 {
                for p in Partition::all_of_size(n) {
                    let (lo, hi) = minimal_window(&p);
                    let w = maya_encode(&p, lo - 2, hi + 3)?;
                    bad += usize::from(maya_decode(&w)? != p);
                }
            }
            Ok((bad as f64, 0.0, "encode/decode on widened windows".into()))
        }),
        run(S, "forward_law_normalised", || {
            let one = ratio(1, 1);
            let mut bad = 0;
            for n in 0..=8 {
                for p in Partition::all_of_size(n) {
                    let total = forward_step_distribution(&p).into_values().fold(ratio(0, 1), |a, b| a + b);
                    bad += usize::from(total != one);
                }
            }
            Ok((bad as f64, 0.0, "exact sums of the central transition law".into()))
        }),
    ]
}

fn mtasep_checks() -> Vec<Check> {
    const S: &str = "mtasep";
    vec![
        run(S, "entropy_closed_vs_numeric", || {
            let mut worst: f64 = 0.0;
            for l in 2..=10 {
                for n in 1..l {
                    let d = (entropy_closed(l, n)? - spectral_radius_numeric(l, n)?.entropy).abs();
                    worst = worst.max(d);
                }
            }
            Ok((worst, 1e-10, "2 ≤ L ≤ 10".into()))
        }),
        run(S, "parry_vs_determinantal", || {
            let mut worst: f64 = 0.0;
            for l in 2..=8 {
                for n in 1..l {
                    let k = ProjectionKernel::new(l, n)?;
                    for (s, p) in parry_measure(l, n)?.iter() {
                        worst = worst.max((p - determinantal_state_probability(&k, &s.occupied())?).abs());
                    }
                }
            }
            Ok((worst, 1e-10, "all states, L ≤ 8".into()))
        }),
        run(S, "sine_kernel_limit", || {
            let l = 500;
            let k = ProjectionKernel::new(l, 150)?;
            let worst = (1..=5)
                .map(|d| (k.value(d) - Complex64::new(sine_kernel(d, 0.3f64), 0.0)).norm())
                .fold(0.0, f64::max);
            Ok((worst, 5.0 / l as f64, "L = 500, N = 150".into()))
        }),
        run(S, "frozen_jump_rate", || {
            let horizon = 2000.0;
            let rate = entropy_closed(4, 2)?.exp();
            let events = sample_frozen_process(4, 2, horizon, 17)?;
            let sigma = (rate * horizon).sqrt();
            let z = (events.len() as f64 - rate * horizon).abs() / sigma;
            Ok((z, 3.0, format!("{} events, expected {:.1}", events.len(), rate * horizon)))
        }),
    ]
}

fn graph(a: &str, b: &str, m0: i64, m1: i64) -> Result<CylinderGraph> {
    let a: CircleState = a.parse()?;
    let b: CircleState = b.parse()?;
    CylinderGraph::new(a, b, m0, m1)
}

fn dimer_checks() -> Vec<Check> {
    const S: &str = "dimer";
    vec![
        run(S, "gauge_face_condition", || {
            let mut count = 0;
            for (a, b) in [("100", "010"), ("1100", "0110"), ("11100", "11010"), ("11000", "10100")] {
                for m in 1..=4 {
                    let g = graph(a, b, 0, m)?;
                    GaugeAssignment::standard(&g).check(&g)?;
                    count += faces(&g).len();
                }
            }
            Ok((0.0, 0.0, format!("{count} faces, both parities")))
        }),
        run(S, "kasteleyn_identity", || {
            let mut bad = 0;
            for (a, b, m) in [("100", "010", 3), ("110", "101", 2), ("1100", "0110", 2), ("1010", "0101", 2)] {
                let g = graph(a, b, 0, m)?;
                let gauge = GaugeAssignment::standard(&g);
                let ok = if g.is_odd() {
                    kasteleyn_check(&g, &ratio(1, 3), &gauge, MATCHING_VERTEX_CAP)?.holds()
                } else {
                    let eps = crate::cyclotomic::Cyclotomic::from_rational(ratio(1, 3));
                    kasteleyn_check(&g, &eps, &gauge, MATCHING_VERTEX_CAP)?.holds()
                };
                bad += usize::from(!ok);
            }
            Ok((bad as f64, 0.0, "det W = phase · Z, exact".into()))
        }),
        run(S, "white_vertex_coverage", || {
            let g = graph("1100", "0110", 0, 6)?;
            let k = finite_kernel_exact(&g, 0.3, &GaugeAssignment::standard(&g))?;
            let p = k.edge_probabilities();
            let worst = g
                .graph
                .white_edges()
                .iter()
                .map(|es| (es.iter().map(|&e| p[e]).sum::<f64>() - 1.0).abs())
                .fold(0.0, f64::max);
            Ok((worst, 1e-10, "Σ over the three edges of each white".into()))
        }),
        run(S, "finite_kernel_bulk", || {
            // Boundary effects decay like (|λ′| ratio)^depth, about 0.71 per level at ε = 1.
            let mut worst: f64 = 0.0;
            for (state, n) in [("1000", 1usize), ("1100", 2), ("1110", 3)] {
                let g = graph(state, state, -60, 60)?;
                let exact = finite_kernel_exact(&g, 1.0, &GaugeAssignment::standard(&g))?;
                let closed = FiniteKernel::new(4, n, 1.0)?;
                for j in -2..=2 {
                    for d in 0..4 {
                        let e = exact.kernel(j, d).ok_or(Error::Singular)?;
                        worst = worst.max((e - closed.value(j, d)).norm());
                    }
                }
            }
            Ok((worst, 1e-7, "L = 4, ε = 1, depth 60".into()))
        }),
        run(S, "branch_identity", || {
            let mut worst: f64 = 0.0;
            for (l, n) in [(5usize, 2usize), (6, 3), (7, 4)] {
                let k = LimitKernel::new(l, n, None)?;
                for d in 0..l as i64 {
                    let delta = if d == 0 { 1.0 } else { 0.0 };
                    let diff = k.branch(true, 0.0, d) - k.branch(false, 0.0, d);
                    worst = worst.max((diff - Complex64::new(delta, 0.0)).norm());
                }
            }
            Ok((worst, 1e-12, "K̃(0⁺) − K̃(0⁻) = δ".into()))
        }),
        run(S, "equal_time_reduction", || {
            let mut worst: f64 = 0.0;
            for (l, n) in [(5usize, 2usize), (6, 3), (7, 3)] {
                let k = ProjectionKernel::new(l, n)?;
                for (s, _) in parry_measure(l, n)?.iter() {
                    let pts: Vec<(f64, i64)> = s.occupied().iter().map(|&p| (0.4, p as i64)).collect();
                    let a = stone_correlation(&pts, l, n)?;
                    worst = worst.max((a - determinantal_state_probability(&k, &s.occupied())?).abs());
                }
            }
            Ok((worst, 1e-10, "equal-time stone minors".into()))
        }),
        run(S, "beads_two_contours", || {
            let b = BeadsKernel::new(0.3)?;
            let mut worst: f64 = 0.0;
            for t in [-0.7, 0.7] {
                for k in -2..=2 {
                    worst = worst.max(b.value(t, k)?.discrepancy().unwrap_or(f64::INFINITY));
                }
            }
            Ok((worst, 1e-8, "ρ = 0.3, arc vs segment".into()))
        }),
        run(S, "poissonization_monotone", || {
            let theta = ratio(1, 2);
            let errs: Vec<f64> = [(5i64, 10i64), (10, 20), (20, 40)]
                .iter()
                .map(|&(m, d)| Ok(poissonization_check(2, m as usize, &ratio(1, d), &theta)?.max_error))
                .collect::<Result<_>>()?;
            let monotone = errs.windows(2).all(|w| w[1] < w[0]);
            Ok((flag(monotone), 0.0, format!("width 2, errors {errs:?}")))
        }),
        run(S, "jump_density_nonnegative", || {
            let mut worst: f64 = 0.0;
            for (l, n) in [(5usize, 2usize), (6, 3), (8, 4)] {
                for dt in [0.0, 0.3, 1.1] {
                    for k in 0..l as i64 {
                        let v = dimer::jump_density(&[(0.0, 0), (dt, k)], l, n);
                        if let Ok(v) = v {
                            worst = worst.max(-v);
                        }
                    }
                }
            }
            Ok((worst, 1e-12, "two-point densities".into()))
        }),
    ]
}

fn shape_checks() -> Vec<Check> {
    const S: &str = "shape";
    let vkls = |n: usize| ShapeFunction::uniform((0.0, 1.0), n, (-1.6, 1.6), n, Normalization::Area1, omega_tx);
    vec![
        run(S, "omega_anchors", || {
            let r2 = 2f64.sqrt();
            let d = (omega(r2) - r2).abs().max((omega(0.0) - 2.0 * r2 / std::f64::consts::PI).abs());
            Ok((d, 1e-14, "Ω(√2) = √2, Ω(0) = 2√2/π".into()))
        }),
        run(S, "a0_even", || {
            let mut worst: f64 = 0.0;
            for i in -19..=19 {
                let xi = i as f64 / 20.0;
                worst = worst.max((a0(xi)? - a0(-xi)?).abs());
            }
            Ok((worst, 1e-15, "grid of 39 slopes".into()))
        }),
        run(S, "functional_at_vkls", || {
            let l: f64 = functional_l(&vkls(400)?)?;
            Ok(((l + 0.5).abs(), 2e-3, format!("𝓛[Ω] = {l:.6}")))
        }),
        run(S, "constant_cross_check", || {
            let l0: f64 = functional_l0(&vkls(400)?)?;
            Ok(((l0 + constant_c::<f64>() + 0.5).abs(), 2e-3, format!("𝓛₀ = {l0:.6}")))
        }),
        run(S, "normalizations_agree", || {
            let g = vkls(200)?;
            let a: f64 = functional_l(&g)?;
            let b: f64 = functional_l(&g.to_area2()?)?;
            Ok(((a - b).abs(), 2e-3, format!("area1 {a:.6}, area2 {b:.6}")))
        }),
        run(S, "el_residual_vkls", || {
            let mut worst: f64 = 0.0;
            for i in 0..=10 {
                let t = 0.5 + 0.05 * i as f64;
                for j in -8..=8 {
                    let x = 0.1 * j as f64 * t.sqrt();
                    worst = worst.max(el_residual_closed(omega_tx, t, x, 1e-3)?.abs());
                }
            }
            Ok((worst, 1e-3, "|x| ≤ 0.8√t, t ∈ [0.5, 1], h = 1e-3".into()))
        }),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        assert_eq!("dimer".parse::<Suite>().unwrap(), Suite::Dimer);
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn young_suite_passes() {
        let r = run_suite(Suite::Young);
        assert!(r.passed, "{:#?}", r.checks);
        assert_eq!(r.schema_version, REPORT_SCHEMA_VERSION);
    }

    #[test]
    fn dimer_suite_passes() {
        let r = run_suite(Suite::Dimer);
        assert!(r.passed, "{:#?}", r.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>());
    }

    #[test]
    fn mtasep_and_shape_suites_pass() {
        for s in [Suite::Mtasep, Suite::Shape] {
            let r = run_suite(s);
            assert!(r.passed, "{:#?}", r.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>());
        }
    }
}
