use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Fourier data of the cylinder: window harmonics, their complement and the
/// points `ζ_r` (`exp(2πir/L)` for odd N, `exp(2πi(r+½)/L)` for even N).
#[derive(Debug, Clone)]
pub struct Harmonics {
    pub l: usize,
    pub n: usize,
    pub window: Vec<i64>,
    pub complement: Vec<i64>,
}

impl Harmonics {
    pub fn new(l: usize, n: usize) -> Result<Self> {
        if n == 0 || n >= l {
            return Err(Error::Domain(format!("need 0 < N < L, got L = {l}, N = {n}")));
        }
        let m = (n / 2) as i64;
        let li = l as i64;
        let (window, complement) = if n % 2 == 1 {
            ((-m..=m).collect(), (m + 1..li - m).collect())
        } else {
            ((-m..m).collect(), (m..li - m).collect())
        };
        Ok(Harmonics { l, n, window, complement })
    }

    pub fn zeta(&self, r: i64) -> Complex64 {
        let shift = if self.n % 2 == 1 { 0.0 } else { 0.5 };
        Complex64::from_polar(1.0, 2.0 * PI * (r as f64 + shift) / self.l as f64)
    }

    /// `ω = exp(πi/L)`.
    pub fn omega(&self) -> Complex64 {
        Complex64::from_polar(1.0, PI / self.l as f64)
    }

    /// `exp(−2πi d r / L)`, with `d·r` reduced mod L first.
    pub fn phase(&self, d: i64, r: i64) -> Complex64 {
        let li = self.l as i64;
        let x = (d.rem_euclid(li) * r.rem_euclid(li)).rem_euclid(li) as f64;
        Complex64::from_polar(1.0, -2.0 * PI * x / self.l as f64)
    }

    /// Admissible gauge constants `c`: strictly between the largest real
    /// part off the window and the smallest real part on it.
    pub fn gauge_interval(&self) -> (f64, f64) {
        let lo = self.complement.iter().map(|&r| self.zeta(r).re).fold(f64::NEG_INFINITY, f64::max);
        let hi = self.window.iter().map(|&r| self.zeta(r).re).fold(f64::INFINITY, f64::min);
        (lo, hi)
    }

    /// `(1/L) Σ_{window} f(ζ_r) e^{−2πidr/L}` for `positive`, else minus the
    /// complement sum.
    fn branch_sum(&self, positive: bool, d: i64, f: impl Fn(Complex64) -> Complex64) -> Complex64 {
        let (rs, sign) = if positive { (&self.window, 1.0) } else { (&self.complement, -1.0) };
        let s: Complex64 = rs.iter().map(|&r| f(self.zeta(r)) * self.phase(d, r)).sum();
        s * sign / self.l as f64
    }
}

/// Closed-form bulk inverse Kasteleyn kernel at finite `ε`.
#[derive(Debug, Clone)]
pub struct FiniteKernel {
    pub harmonics: Harmonics,
    pub epsilon: f64,
}

impl FiniteKernel {
    pub fn new(l: usize, n: usize, epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::Parameter(format!("ε must be positive, got {epsilon}")));
        }
        let harmonics = Harmonics::new(l, n)?;
        let (lo, hi) = Self::modulus_gap(&harmonics, epsilon);
        if lo >= hi {
            return Err(Error::Parameter(format!(
                "eigenvalue moduli not separated at ε = {epsilon}: {lo} ≥ {hi}"
            )));
        }
        Ok(FiniteKernel { harmonics, epsilon })
    }

    fn modulus_gap(h: &Harmonics, eps: f64) -> (f64, f64) {
        let modulus = |r: i64| (Complex64::new(1.0, 0.0) + h.zeta(r) * eps).norm();
        let lo = h.complement.iter().map(|&r| modulus(r)).fold(f64::NEG_INFINITY, f64::max);
        let hi = h.window.iter().map(|&r| modulus(r)).fold(f64::INFINITY, f64::min);
        (lo, hi)
    }

    /// Interval of admissible `c′`: `|λ′| off the window < c′ < |λ′| on it`.
    pub fn c_prime_interval(&self) -> (f64, f64) {
        Self::modulus_gap(&self.harmonics, self.epsilon)
    }

    /// `K(j, d)` with `λ′_r = 1 + εζ_r`; the `j ≤ 0` branch sums the complement.
    pub fn value(&self, j: i64, d: i64) -> Complex64 {
        let eps = self.epsilon;
        self.harmonics
            .branch_sum(j > 0, d, |z| (Complex64::new(1.0, 0.0) + z * eps).powi(-j as i32))
    }

    /// `K_{c′}(j, d) = c′^{j} K(j, d)`, decaying in both time directions.
    pub fn gauged(&self, j: i64, d: i64, c_prime: f64) -> Result<Complex64> {
        let (lo, hi) = self.c_prime_interval();
        if !(lo < c_prime && c_prime < hi) {
            return Err(Error::Gauge {
                face: format!("c′ = {c_prime} outside ({lo}, {hi})"),
            });
        }
        Ok(self.value(j, d) * c_prime.powi(j as i32))
    }
}

pub fn finite_kernel_closed(l: usize, n: usize, epsilon: f64, j: i64, d: i64) -> Result<Complex64> {
    Ok(FiniteKernel::new(l, n, epsilon)?.value(j, d))
}

/// Frozen-limit kernel `K̃(t, d)`, optionally gauged by `e^{tc}`.
#[derive(Debug, Clone)]
pub struct LimitKernel {
    pub harmonics: Harmonics,
    pub c: Option<f64>,
}

impl LimitKernel {
    pub fn new(l: usize, n: usize, c: Option<f64>) -> Result<Self> {
        let harmonics = Harmonics::new(l, n)?;
        if let Some(c) = c {
            let (lo, hi) = harmonics.gauge_interval();
            if !(lo < c && c < hi) {
                return Err(Error::Gauge {
                    face: format!("c = {c} outside ({lo}, {hi})"),
                });
            }
        }
        Ok(LimitKernel { harmonics, c })
    }

    /// `t > 0` sums the window, `t < 0` minus the complement; `t = 0` is
    /// read as `0⁺`, the convention under which equal-time minors are
    /// projection-kernel minors.
    pub fn value(&self, t: f64, d: i64) -> Complex64 {
        self.branch(t >= 0.0, t, d)
    }

    /// Explicit branch choice; `positive` at `t = 0` gives the `0⁺` value.
    pub fn branch(&self, positive: bool, t: f64, d: i64) -> Complex64 {
        let c = self.c.unwrap_or(0.0);
        self.harmonics.branch_sum(positive, d, |z| (-(z - c) * t).exp())
    }

    /// `ω` for even `N`, 1 for odd.
    pub fn jump_phase(&self) -> Complex64 {
        if self.harmonics.n.is_multiple_of(2) {
            self.harmonics.omega()
        } else {
            Complex64::new(1.0, 0.0)
        }
    }
}

pub fn limit_kernel(l: usize, n: usize, t: f64, d: i64, c: Option<f64>) -> Result<Complex64> {
    Ok(LimitKernel::new(l, n, c)?.value(t, d))
}

fn check_distinct(points: &[(f64, i64)], l: usize) -> Result<()> {
    for (a, p) in points.iter().enumerate() {
        if !p.0.is_finite() {
            return Err(Error::Parameter(format!("non-finite time {}", p.0)));
        }
        for q in &points[a + 1..] {
            if p.0 == q.0 && (p.1 - q.1).rem_euclid(l as i64) == 0 {
                return Err(Error::Parameter(format!("repeated point ({}, {})", p.0, p.1)));
            }
        }
    }
    Ok(())
}

/// Entry `(a, b)` uses `t_a − t_b` on the `0⁺` branch when times coincide.
fn correlation_matrix(
    k: &LimitKernel,
    points: &[(f64, i64)],
    shift: i64,
    phase: Complex64,
) -> Matrix<Complex64> {
    Matrix::from_fn(points.len(), points.len(), |a, b| {
        let (ta, ka) = points[a];
        let (tb, kb) = points[b];
        let dt = ta - tb;
        phase * k.branch(dt >= 0.0, dt, kb - ka + shift)
    })
}

/// Probability that stones sit at all `(t, k)` points of the frozen process.
///
/// Entries are `K̃(t_a − t_b, k_b − k_a)`; coinciding times take the `0⁺`
/// branch so that equal-time minors are projection-kernel minors.
pub fn stone_correlation(points: &[(f64, i64)], l: usize, n: usize) -> Result<f64> {
    check_distinct(points, l)?;
    let k = LimitKernel::new(l, n, None)?;
    Ok(correlation_matrix(&k, points, 0, Complex64::new(1.0, 0.0)).det().re)
}

/// Correlation density of jumps `k → k+1` at the given `(t, k)` points:
/// `det[ω K̃(t_a − t_b, k_b − k_a − 1)]`, with `ω` only for even `N`.
pub fn jump_density(points: &[(f64, i64)], l: usize, n: usize) -> Result<f64> {
    check_distinct(points, l)?;
    let k = LimitKernel::new(l, n, None)?;
    let phase = k.jump_phase();
    Ok(correlation_matrix(&k, points, -1, phase).det().re)
}

/// Writes `t, d, re, im` rows.
pub fn write_kernel_csv<W: Write>(out: W, rows: &[(f64, i64, Complex64)]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "d", "re", "im"])?;
    for (t, d, v) in rows {
        w.write_record([t.to_string(), d.to_string(), v.re.to_string(), v.im.to_string()])?;
    }
    w.flush()?;
    Ok(())
}
