use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Real;

/// First harmonic of the Fourier window for `N` stones: `−m` for both
/// `N = 2m + 1` and `N = 2m`.
pub fn window_start(n: usize) -> i64 {
    -((n / 2) as i64)
}

/// Projection onto `N` consecutive Fourier harmonics of `Z_L`, as a function
/// of the position difference.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionKernel {
    l: usize,
    n: usize,
    offset: i64,
    values: Vec<Complex64>,
}

impl ProjectionKernel {
    pub fn new(l: usize, n: usize) -> Result<Self> {
        Self::with_offset(l, n, 0)
    }

    /// Window shifted by `offset` harmonics from the canonical one.
    pub fn with_offset(l: usize, n: usize, offset: i64) -> Result<Self> {
        if n == 0 || n >= l {
            return Err(Error::Domain(format!("need 0 < N < L, got L = {l}, N = {n}")));
        }
        let start = window_start(n) + offset;
        let lf = l as f64;
        let values = (0..l)
            .map(|d| {
                (0..n as i64)
                    .map(|k| {
                        // Reduce r·d mod L before scaling to keep phases accurate for large L.
                        let phase = ((start + k) * d as i64).rem_euclid(l as i64) as f64;
                        Complex64::from_polar(1.0, -2.0 * PI * phase / lf)
                    })
                    .sum::<Complex64>()
                    / lf
            })
            .collect();
        Ok(ProjectionKernel { l, n, offset, values })
    }

    pub fn circle(&self) -> usize {
        self.l
    }

    pub fn stones(&self) -> usize {
        self.n
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// Kernel value at difference `d` (any integer, read mod L).
    pub fn value(&self, d: i64) -> Complex64 {
        self.values[d.rem_euclid(self.l as i64) as usize]
    }

    /// `P[k][k′] = value(k − k′)`.
    pub fn matrix(&self) -> Matrix<Complex64> {
        Matrix::from_fn(self.l, self.l, |i, j| self.value(i as i64 - j as i64))
    }

    pub fn minor(&self, points: &[usize]) -> Matrix<Complex64> {
        Matrix::from_fn(points.len(), points.len(), |a, b| {
            self.value(points[a] as i64 - points[b] as i64)
        })
    }
}

/// Probability that the stones occupy exactly `occupied`, as a principal minor.
pub fn determinantal_state_probability(k: &ProjectionKernel, occupied: &[usize]) -> Result<f64> {
    if occupied.len() != k.n {
        return Err(Error::Arity {
            expected: k.n,
            got: occupied.len(),
        });
    }
    if let Some(&p) = occupied.iter().find(|&&p| p >= k.l) {
        return Err(Error::Parameter(format!("position {p} outside Z_{}", k.l)));
    }
    Ok(k.minor(occupied).det().re)
}

/// Discrete sine kernel `sin(πak)/(πk)`, equal to `a` on the diagonal.
pub fn sine_kernel<T: Real>(k: i64, a: T) -> T {
    if k == 0 {
        return a;
    }
    let kf = T::lit(k as f64);
    (T::PI() * a * kf).sin() / (T::PI() * kf)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_and_odd_closed_form() {
        for (l, n) in [(7usize, 3usize), (10, 5), (9, 2), (12, 7)] {
            let k = ProjectionKernel::new(l, n).unwrap();
            assert!((k.value(0) - Complex64::new(n as f64 / l as f64, 0.0)).norm() < 1e-14);
            if n % 2 == 1 {
                for d in 1..l as i64 {
                    let x = PI * d as f64 / l as f64;
                    let closed = (n as f64 * x).sin() / (l as f64 * x.sin());
                    assert!((k.value(d) - Complex64::new(closed, 0.0)).norm() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn small_state_probabilities() {
        let k = ProjectionKernel::new(4, 2).unwrap();
        assert!((determinantal_state_probability(&k, &[0, 2]).unwrap() - 0.25).abs() < 1e-14);
        assert!((determinantal_state_probability(&k, &[0, 1]).unwrap() - 0.125).abs() < 1e-14);
        assert!(matches!(
            determinantal_state_probability(&k, &[0]),
            Err(Error::Arity { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn sine_values() {
        assert_eq!(sine_kernel(0, 0.3), 0.3);
        for k in [-4i64, -2, 2, 6] {
            assert!(sine_kernel(k, 0.5f64).abs() < 1e-15);
        }
        assert!((sine_kernel(1, 0.5f32) - 1.0 / std::f32::consts::PI).abs() < 1e-6);
    }
}
