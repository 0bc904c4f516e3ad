use std::collections::VecDeque;
use std::f64::consts::PI;
use std::io::Write;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mtasep::{CircleState, StateSpace};

pub const DEFAULT_STATE_CAP: usize = 1_000_000;
pub const EIGEN_TOLERANCE: f64 = 1e-12;
pub const ITERATION_CAP: usize = 1_000_000;

/// 0/1 transition structure of the chain, stored as successor lists.
#[derive(Debug, Clone)]
pub struct Transition {
    space: StateSpace,
    succ: Vec<Vec<usize>>,
}

impl Transition {
    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn successors(&self, i: usize) -> &[usize] {
        &self.succ[i]
    }

    pub fn out_degree(&self, i: usize) -> usize {
        self.succ[i].len()
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    /// `T x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.succ.iter().map(|row| row.iter().map(|&j| x[j]).sum()).collect()
    }

    /// `Tᵀ x`.
    pub fn apply_transpose(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; x.len()];
        for (i, row) in self.succ.iter().enumerate() {
            for &j in row {
                y[j] += x[i];
            }
        }
        y
    }

    /// Period of the (strongly connected) transition graph.
    pub fn period(&self) -> usize {
        let mut level = vec![usize::MAX; self.len()];
        let mut queue = VecDeque::from([0usize]);
        level[0] = 0;
        while let Some(i) = queue.pop_front() {
            for &j in &self.succ[i] {
                if level[j] == usize::MAX {
                    level[j] = level[i] + 1;
                    queue.push_back(j);
                }
            }
        }
        let mut g = 0usize;
        for (i, row) in self.succ.iter().enumerate() {
            for &j in row {
                let diff = (level[i] + 1).abs_diff(level[j]);
                g = g.gcd(&diff);
            }
        }
        g
    }
}

pub fn build_transition(l: usize, n: usize) -> Result<Transition> {
    build_transition_capped(l, n, DEFAULT_STATE_CAP)
}

pub fn build_transition_capped(l: usize, n: usize, cap: usize) -> Result<Transition> {
    let space = StateSpace::new(l, n, cap)?;
    let succ = space
        .states()
        .map(|s| {
            s.successors()
                .iter()
                .map(|t| space.rank(t).expect("successor keeps the stone count"))
                .collect()
        })
        .collect();
    Ok(Transition { space, succ })
}

/// `log(sin(πN/L) / sin(π/L))`.
pub fn entropy_closed(l: usize, n: usize) -> Result<f64> {
    if n == 0 || n >= l {
        return Err(Error::Domain(format!("need 0 < N < L, got L = {l}, N = {n}")));
    }
    let (l, n) = (l as f64, n as f64);
    Ok(((PI * n / l).sin() / (PI / l).sin()).ln())
}

/// Perron data of the transition matrix.
#[derive(Debug, Clone, Serialize)]
pub struct ChainSpectrum {
    pub l: usize,
    pub n: usize,
    pub rho: f64,
    pub entropy: f64,
    /// Left Perron vector, sums to 1.
    pub left: Vec<f64>,
    /// Right Perron vector, sums to 1.
    pub right: Vec<f64>,
    pub period: usize,
    pub iterations: usize,
    pub residual: f64,
}

fn perron_vector(t: &Transition, transpose: bool) -> Result<(f64, Vec<f64>, usize, f64)> {
    let n = t.len();
    let mut v = vec![1.0 / n as f64; n];
    let mut residual = f64::INFINITY;
    for it in 1..=ITERATION_CAP {
        let tv = if transpose { t.apply_transpose(&v) } else { t.apply(&v) };
        // Power step on T + I; the shift breaks the rotational symmetry of the spectrum.
        let w: Vec<f64> = tv.iter().zip(&v).map(|(a, b)| a + b).collect();
        let norm: f64 = w.iter().sum();
        let next: Vec<f64> = w.iter().map(|x| x / norm).collect();
        let rho = norm - 1.0;
        let scale = next.iter().cloned().fold(0.0, f64::max);
        residual = tv
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - rho * b).abs())
            .fold(0.0, f64::max)
            / scale;
        v = next;
        if residual <= EIGEN_TOLERANCE {
            let tv = if transpose { t.apply_transpose(&v) } else { t.apply(&v) };
            let rho = tv.iter().sum::<f64>() / v.iter().sum::<f64>();
            return Ok((rho, v, it, residual));
        }
    }
    Err(Error::NoConvergence {
        iterations: ITERATION_CAP,
        residual,
    })
}

pub fn spectral_radius_numeric(l: usize, n: usize) -> Result<ChainSpectrum> {
    spectrum_of(&build_transition(l, n)?)
}

pub fn spectrum_of(t: &Transition) -> Result<ChainSpectrum> {
    let (rho_r, right, it_r, res_r) = perron_vector(t, false)?;
    let (_, left, it_l, res_l) = perron_vector(t, true)?;
    Ok(ChainSpectrum {
        l: t.space().circle(),
        n: t.space().stones(),
        rho: rho_r,
        entropy: rho_r.ln(),
        left,
        right,
        period: t.period(),
        iterations: it_r.max(it_l),
        residual: res_r.max(res_l),
    })
}

/// Probabilities indexed by state rank.
#[derive(Debug, Clone)]
pub struct StateDistribution {
    pub space: StateSpace,
    pub probs: Vec<f64>,
}

impl StateDistribution {
    pub fn get(&self, s: &CircleState) -> Option<f64> {
        self.space.rank(s).map(|i| self.probs[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (CircleState, f64)> + '_ {
        self.space.states().zip(self.probs.iter().copied())
    }
}

/// Maximal-entropy stationary law, `π_s ∝ u_s v_s`.
pub fn parry_measure(l: usize, n: usize) -> Result<StateDistribution> {
    let t = build_transition(l, n)?;
    let spec = spectrum_of(&t)?;
    Ok(parry_from(&t, &spec))
}

fn parry_from(t: &Transition, spec: &ChainSpectrum) -> StateDistribution {
    let w: Vec<f64> = spec.left.iter().zip(&spec.right).map(|(a, b)| a * b).collect();
    let z: f64 = w.iter().sum();
    StateDistribution {
        space: t.space().clone(),
        probs: w.into_iter().map(|x| x / z).collect(),
    }
}

/// The maximal-entropy Markov chain `p(s → s′) = u_{s′} / (ρ u_s)`.
#[derive(Debug, Clone)]
pub struct ParryChain {
    transition: Transition,
    spectrum: ChainSpectrum,
    stationary: StateDistribution,
    /// Per state: successor ranks with their probabilities.
    kernel: Vec<Vec<(usize, f64)>>,
}

impl ParryChain {
    pub fn new(l: usize, n: usize) -> Result<Self> {
        let transition = build_transition(l, n)?;
        let spectrum = spectrum_of(&transition)?;
        let stationary = parry_from(&transition, &spectrum);
        let u = &spectrum.right;
        let kernel = (0..transition.len())
            .map(|i| {
                let row: Vec<(usize, f64)> = transition
                    .successors(i)
                    .iter()
                    .map(|&j| (j, u[j] / (spectrum.rho * u[i])))
                    .collect();
                let sum: f64 = row.iter().map(|x| x.1).sum();
                row.into_iter().map(|(j, p)| (j, p / sum)).collect()
            })
            .collect();
        Ok(ParryChain {
            transition,
            spectrum,
            stationary,
            kernel,
        })
    }

    pub fn transition(&self) -> &Transition {
        &self.transition
    }

    pub fn spectrum(&self) -> &ChainSpectrum {
        &self.spectrum
    }

    pub fn stationary(&self) -> &StateDistribution {
        &self.stationary
    }

    pub fn row(&self, i: usize) -> &[(usize, f64)] {
        &self.kernel[i]
    }

    /// Row sum of `u_{s′} / (ρ u_s)` before renormalization; 1 up to eigen-residual.
    pub fn raw_row_sum(&self, i: usize) -> f64 {
        let u = &self.spectrum.right;
        self.transition
            .successors(i)
            .iter()
            .map(|&j| u[j] / (self.spectrum.rho * u[i]))
            .sum()
    }

    fn pick(weights: impl Iterator<Item = (usize, f64)>, u: f64) -> usize {
        let mut acc = 0.0;
        let mut last = 0;
        for (j, p) in weights {
            acc += p;
            last = j;
            if u < acc {
                return j;
            }
        }
        last
    }

    pub fn sample_stationary<R: Rng>(&self, rng: &mut R) -> usize {
        Self::pick(self.stationary.probs.iter().copied().enumerate(), rng.random())
    }

    pub fn step<R: Rng>(&self, i: usize, rng: &mut R) -> usize {
        Self::pick(self.kernel[i].iter().copied(), rng.random())
    }
}

/// Stationary trajectory of `steps` transitions (`steps + 1` states).
pub fn simulate_chain(l: usize, n: usize, steps: usize, seed: u64) -> Result<Vec<CircleState>> {
    let chain = ParryChain::new(l, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut i = chain.sample_stationary(&mut rng);
    let mut out = Vec::with_capacity(steps + 1);
    out.push(chain.transition.space().state(i));
    for _ in 0..steps {
        i = chain.step(i, &mut rng);
        out.push(chain.transition.space().state(i));
    }
    Ok(out)
}

/// A jump of the frozen process: the stone on `position` hops to `position + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JumpEvent {
    pub time: f64,
    pub position: usize,
}

/// Jump events of the frozen-limit process on `[0, horizon]`.
pub fn sample_frozen_process(l: usize, n: usize, horizon: f64, seed: u64) -> Result<Vec<JumpEvent>> {
    if !(horizon > 0.0 && horizon.is_finite()) {
        return Err(Error::Parameter(format!("time horizon must be positive, got {horizon}")));
    }
    let chain = ParryChain::new(l, n)?;
    let rate = entropy_closed(l, n)?.exp();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = Poisson::new(rate * horizon)
        .map_err(|e| Error::Parameter(e.to_string()))?
        .sample(&mut rng) as usize;
    let space = chain.transition.space();
    let mut i = chain.sample_stationary(&mut rng);
    let mut positions = Vec::with_capacity(count);
    for _ in 0..count {
        let j = chain.step(i, &mut rng);
        let from = space.state(i).mask() & !space.state(j).mask();
        positions.push(from.trailing_zeros() as usize);
        i = j;
    }
    let mut times: Vec<f64> = (0..count).map(|_| rng.random::<f64>() * horizon).collect();
    times.sort_by(f64::total_cmp);
    Ok(times
        .into_iter()
        .zip(positions)
        .map(|(time, position)| JumpEvent { time, position })
        .collect())
}

pub fn write_events_csv<W: Write>(out: W, events: &[JumpEvent]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for e in events {
        w.serialize(e)?;
    }
    w.flush()?;
    Ok(())
}
