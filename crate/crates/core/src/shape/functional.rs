use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::shape::{a0_prime, a0_second, constant_c, Normalization, ShapeFunction};

/// Cells with `g′_t` at or below this contribute nothing.
const GT_FLOOR: f64 = 1e-12;
/// `|g′_x|` is clamped to `1 − SLOPE_MARGIN` before taking `log cos`.
const SLOPE_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct FunctionalTerms<T> {
    /// The functional in the shape's own normalization.
    pub value: T,
    /// `∫∫ g′_t (−log g′_t + A₀(g′_x))`, before any constant.
    pub constant_free: T,
    /// `∫∫ g′_t`, the swept area seen by the quadrature.
    pub mass: T,
}

/// Midpoint-cell quadrature of `∫∫ g′_t (−log(κ g′_t) + A(g′_x))`, where
/// the cell derivatives are the averaged edge differences.
fn cell_sum<T: Real>(g: &ShapeFunction<T>, kappa: T, a: &impl Fn(T) -> T) -> (T, T) {
    let (ts, xs) = (g.ts(), g.xs());
    let half = T::lit(0.5);
    let floor = T::lit(GT_FLOOR);
    let cap = T::one() - T::lit(SLOPE_MARGIN).max(T::epsilon() * T::lit(4.0));
    let (mut total, mut mass) = (T::zero(), T::zero());
    for i in 0..ts.len() - 1 {
        let dt = ts[i + 1] - ts[i];
        let (r0, r1) = (g.row(i), g.row(i + 1));
        for j in 0..xs.len() - 1 {
            let dx = xs[j + 1] - xs[j];
            let gt = half * ((r1[j] + r1[j + 1]) - (r0[j] + r0[j + 1])) / dt;
            if gt <= floor {
                continue;
            }
            let gx = (half * ((r0[j + 1] + r1[j + 1]) - (r0[j] + r1[j])) / dx).max(-cap).min(cap);
            let area = dt * dx;
            total = total + gt * (-(kappa * gt).ln() + a(gx)) * area;
            mass = mass + gt * area;
        }
    }
    (total, mass)
}

fn log_cos<T: Real>(xi: T) -> T {
    (T::FRAC_PI_2() * xi).cos().ln()
}

fn check<T: Real>(g: &ShapeFunction<T>) -> Result<()> {
    let scale = g.row(g.ts().len() - 1).iter().fold(T::one(), |m, v| m.max(v.abs()));
    let tol = T::lit(1e-9).max(T::epsilon() * T::lit(1e3)) * scale;
    g.validate(tol, None)
}

/// The functional with a caller-supplied `A` in place of `A₀`, and with
/// no additive constant in any normalization.
pub fn functional_terms<T: Real>(g: &ShapeFunction<T>, a: impl Fn(T) -> T) -> Result<FunctionalTerms<T>> {
    check(g)?;
    let half = T::lit(0.5);
    Ok(match g.tag() {
        Normalization::Area1 => {
            let (total, mass) = cell_sum(g, T::one(), &a);
            FunctionalTerms { value: total, constant_free: total, mass }
        }
        Normalization::Area2 => {
            let (total, mass) = cell_sum(g, T::FRAC_PI_2(), &a);
            let (plain, _) = cell_sum(g, T::one(), &a);
            FunctionalTerms { value: half * total, constant_free: plain, mass }
        }
        Normalization::Unrescaled { n } => {
            let nn = T::from_usize(n).expect("n representable");
            let (total, mass) = cell_sum(g, T::FRAC_PI_2(), &a);
            let (plain, _) = cell_sum(g, T::one(), &a);
            FunctionalTerms {
                value: (half * total - half * nn * nn.ln()) / nn,
                constant_free: plain,
                mass,
            }
        }
    })
}

/// `𝓛[g]`: for `Area1` the quadrature of `g′_t(−log g′_t + A₀(g′_x))`
/// minus `log(π/√2)`; for `Area2` the constant-free `½∫∫(−log(πg̃′_t/2) +
/// A₀)g̃′_t`; for `Unrescaled` the same per unit size, less `½ log n`.
pub fn functional_l<T: Real>(g: &ShapeFunction<T>) -> Result<T> {
    let terms = functional_terms(g, log_cos)?;
    Ok(match g.tag() {
        Normalization::Area1 => terms.value + constant_c::<T>(),
        _ => terms.value,
    })
}

/// `𝓛₀[g]` of an `Area1` shape: the functional without its constant.
pub fn functional_l0<T: Real>(g: &ShapeFunction<T>) -> Result<T> {
    if g.tag() != Normalization::Area1 {
        return Err(Error::Shape("constant-free functional is defined for area1 shapes".into()));
    }
    Ok(functional_terms(g, log_cos)?.constant_free)
}

struct Stencil<T> {
    gt: T,
    gx: T,
    gtt: T,
    gxx: T,
    gxt: T,
}

fn residual<T: Real>(s: Stencil<T>) -> Result<T> {
    let two = T::lit(2.0);
    Ok(a0_second(s.gx)? * s.gxx * s.gt * s.gt + two * a0_prime(s.gx)? * s.gxt * s.gt - s.gtt)
}

/// Second derivative on a possibly uneven three-point stencil.
fn second<T: Real>(fm: T, f0: T, fp: T, hm: T, hp: T) -> T {
    T::lit(2.0) * ((fp - f0) / hp - (f0 - fm) / hm) / (hp + hm)
}

/// `A₀″(g′_x) g″_xx (g′_t)² + 2A₀′(g′_x) g″_xt g′_t − g″_tt` by central
/// differences at the mesh point nearest `(t, x)`.
pub fn el_residual<T: Real>(g: &ShapeFunction<T>, t: T, x: T) -> Result<T> {
    let (i, j) = (g.nearest_time(t), g.nearest_x(x));
    let (ts, xs) = (g.ts(), g.xs());
    if i == 0 || j == 0 || i + 1 >= ts.len() || j + 1 >= xs.len() {
        return Err(Error::Domain(format!("stencil at ({t}, {x}) leaves the mesh")));
    }
    let v = |a: usize, b: usize| g.get(a, b);
    let (hm, hp) = (ts[i] - ts[i - 1], ts[i + 1] - ts[i]);
    let (km, kp) = (xs[j] - xs[j - 1], xs[j + 1] - xs[j]);
    residual(Stencil {
        gt: (v(i + 1, j) - v(i - 1, j)) / (hm + hp),
        gx: (v(i, j + 1) - v(i, j - 1)) / (km + kp),
        gtt: second(v(i - 1, j), v(i, j), v(i + 1, j), hm, hp),
        gxx: second(v(i, j - 1), v(i, j), v(i, j + 1), km, kp),
        gxt: (v(i + 1, j + 1) - v(i + 1, j - 1) - v(i - 1, j + 1) + v(i - 1, j - 1)) / ((hm + hp) * (km + kp)),
    })
}

/// The same residual for a function given in closed form, step `h`.
pub fn el_residual_closed<T: Real>(f: impl Fn(T, T) -> T, t: T, x: T, h: T) -> Result<T> {
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    let f0 = f(t, x);
    residual(Stencil {
        gt: (f(t + h, x) - f(t - h, x)) / (two * h),
        gx: (f(t, x + h) - f(t, x - h)) / (two * h),
        gtt: (f(t + h, x) - two * f0 + f(t - h, x)) / (h * h),
        gxx: (f(t, x + h) - two * f0 + f(t, x - h)) / (h * h),
        gxt: (f(t + h, x + h) - f(t + h, x - h) - f(t - h, x + h) + f(t - h, x - h)) / (four * h * h),
    })
}
