use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::dimer::kernels::LimitKernel;
use crate::error::{Error, Result};
use crate::quadrature::{integrate, integrate_half_line, QuadOptions};

/// Bulk jump kernel of the beads process at stone density `ρ`:
///
/// `J̃(t, k) = (1/2π) ∫_{−πρ}^{πρ} e^{−t(e^{iφ} − c)} e^{−iφ(k−1)} dφ` for
/// `t ≥ 0` (reading `t = 0` as `0⁺`), and minus the integral over the
/// complementary arc for `t < 0`, with `c = cos πρ`.
#[derive(Debug, Clone, Copy)]
pub struct BeadsKernel {
    pub rho: f64,
    pub c: f64,
    pub options: QuadOptions,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct BeadsValue {
    pub arc: Complex64,
    pub arc_error: f64,
    /// Straight-contour value, only for `ρ < 1/2`.
    pub segment: Option<Complex64>,
    pub segment_error: Option<f64>,
}

impl BeadsValue {
    pub fn discrepancy(&self) -> Option<f64> {
        self.segment.map(|s| (s - self.arc).norm())
    }
}

impl BeadsKernel {
    pub fn new(rho: f64) -> Result<Self> {
        if !(rho > 0.0 && rho < 1.0) {
            return Err(Error::Parameter(format!("ρ must lie in (0, 1), got {rho}")));
        }
        Ok(BeadsKernel {
            rho,
            c: (PI * rho).cos(),
            options: QuadOptions::default(),
        })
    }

    /// Endpoint `g = e^{iπρ}` of the window arc.
    pub fn g(&self) -> Complex64 {
        Complex64::from_polar(1.0, PI * self.rho)
    }

    /// Arc integral; `t = 0` is read as `0⁺`.
    pub fn arc(&self, t: f64, k: i64) -> Result<(Complex64, f64)> {
        self.arc_branch(t >= 0.0, t, k)
    }

    pub fn arc_branch(&self, positive: bool, t: f64, k: i64) -> Result<(Complex64, f64)> {
        let a = PI * self.rho;
        let c = self.c;
        let f = |phi: f64| {
            let z = Complex64::from_polar(1.0, phi);
            (-(z - c) * t).exp() * Complex64::from_polar(1.0, -phi * (k - 1) as f64)
        };
        let (r, sign) = if positive {
            (integrate(f, -a, a, self.options)?, 1.0)
        } else {
            (integrate(f, a, 2.0 * PI - a, self.options)?, -1.0)
        };
        Ok((r.value * sign / (2.0 * PI), r.error / (2.0 * PI)))
    }

    /// For `t ≥ 0` the arc is pushed onto the chord `c + isφ`, `|φ| ≤ 1`,
    /// `s = sin πρ`. For `t < 0` the complementary arc is pushed onto two
    /// rays leaving `g` and `ḡ` to the left, tilted by `πρ/2` off vertical so
    /// that they stay outside the unit disk while `e^{−tζ}` decays.
    pub fn segment(&self, t: f64, k: i64) -> Result<(Complex64, f64)> {
        if self.rho >= 0.5 {
            return Err(Error::Parameter(format!(
                "straight-contour form needs ρ < 1/2, got {}",
                self.rho
            )));
        }
        let c = self.c;
        let s = (PI * self.rho).sin();
        let power = |z: Complex64| z.powi(-k as i32);
        if t >= 0.0 {
            let f = |phi: f64| {
                let z = Complex64::new(c, phi * s);
                (-(z - c) * t).exp() * power(z)
            };
            let r = integrate(f, -1.0, 1.0, self.options)?;
            return Ok((r.value * s / (2.0 * PI), r.error * s / (2.0 * PI)));
        }
        let tilt = PI * self.rho / 2.0;
        let g = self.g();
        let ray = |start: Complex64, dir: Complex64| -> Result<(Complex64, f64)> {
            let f = |r: f64| {
                let z = start + dir * r;
                (-(z - c) * t).exp() * power(z) * dir
            };
            let q = integrate_half_line(f, self.options)?;
            Ok((q.value, q.error))
        };
        let (up, e1) = ray(g, Complex64::from_polar(1.0, PI / 2.0 + tilt))?;
        let (down, e2) = ray(g.conj(), Complex64::from_polar(1.0, -PI / 2.0 - tilt))?;
        let value = -(up - down) / (Complex64::i() * 2.0 * PI);
        Ok((value, (e1 + e2) / (2.0 * PI)))
    }

    pub fn value(&self, t: f64, k: i64) -> Result<BeadsValue> {
        let (arc, arc_error) = self.arc(t, k)?;
        let segment = if self.rho < 0.5 {
            Some(self.segment(t, k)?)
        } else {
            None
        };
        Ok(BeadsValue {
            arc,
            arc_error,
            segment: segment.map(|s| s.0),
            segment_error: segment.map(|s| s.1),
        })
    }
}

pub fn beads_kernel_infinite(rho: f64, t: f64, k: i64) -> Result<BeadsValue> {
    BeadsKernel::new(rho)?.value(t, k)
}

/// Finite-`L` counterpart of `J̃(t, k)`: the limit kernel gauged by
/// `c = cos(πN/L)` at position difference `k − 1`, with the half-step phase
/// `ω^{−(k−1)}` removed for even `N`.
pub fn cylinder_beads_kernel(l: usize, n: usize, t: f64, k: i64) -> Result<Complex64> {
    let c = (PI * n as f64 / l as f64).cos();
    let kernel = LimitKernel::new(l, n, Some(c))?;
    let v = kernel.value(t, k - 1);
    if n.is_multiple_of(2) {
        Ok(v * kernel.harmonics.omega().powi(-(k - 1) as i32))
    } else {
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_density_has_zero_gauge() {
        assert!(BeadsKernel::new(0.5).unwrap().c.abs() < 1e-15);
        assert!(BeadsKernel::new(1.0).is_err());
        assert!(BeadsKernel::new(0.6).unwrap().segment(1.0, 1).is_err());
    }

    #[test]
    fn arc_matches_segment() {
        let b = BeadsKernel::new(0.3).unwrap();
        for t in [0.7, -0.7, 0.05, -2.0] {
            for k in -2..=2 {
                let v = b.value(t, k).unwrap();
                assert!(v.discrepancy().unwrap() < 1e-9, "t={t} k={k} {v:?}");
            }
        }
        for k in -2..=3 {
            let v = b.value(0.0, k).unwrap();
            assert!(v.discrepancy().unwrap() < 1e-9);
        }
    }

    #[test]
    fn equal_time_is_sine_kernel() {
        // J̃(0⁺, k) = sin(πρ(k−1)) / (π(k−1)), and the branches differ by δ.
        let b = BeadsKernel::new(0.3).unwrap();
        let plus = b.arc(0.0, 3).unwrap().0;
        assert!((plus.re - (0.6 * PI).sin() / (2.0 * PI)).abs() < 1e-9);
        let d = b.arc(0.0, 1).unwrap().0 - b.arc_branch(false, 0.0, 1).unwrap().0;
        assert!((d - Complex64::new(1.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn cylinder_approaches_limit() {
        let b = BeadsKernel::new(0.3).unwrap();
        let exact = b.arc(0.7, 1).unwrap().0;
        let e1 = (cylinder_beads_kernel(20, 6, 0.7, 1).unwrap() - exact).norm();
        let e2 = (cylinder_beads_kernel(200, 60, 0.7, 1).unwrap() - exact).norm();
        assert!(e2 < e1 && e2 < 0.02, "{e1} {e2}");
    }
}
