//! Limit shapes of Young tableaux and the variational functional.

mod function;
mod functional;
mod path;

pub use function::{Normalization, ShapeFunction};
pub use functional::{
    el_residual, el_residual_closed, functional_l, functional_l0, functional_terms, FunctionalTerms,
};
pub use path::{path_to_shape, sup_distance};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Limit shape `Ω(x) = (2/π)(√(2 − x²) + x·arcsin(x/√2))` for `|x| ≤ √2`,
/// `|x|` outside; it encloses unit area above `|x|`.
pub fn omega<T: Real>(x: T) -> T {
    if x.abs() >= T::SQRT_2() {
        return x.abs();
    }
    // Written in u = x/√2 with 1 − u² factored, so that both terms see the
    // same rounding of u and stay accurate up to the edge.
    let u = x / T::SQRT_2();
    let s = ((T::one() - u) * (T::one() + u)).sqrt();
    T::lit(2.0) * T::SQRT_2() / T::PI() * (s + u * u.asin())
}

/// `Ω(t, x) = √t Ω(x/√t)`, with `Ω(0, x) = |x|`.
pub fn omega_tx<T: Real>(t: T, x: T) -> T {
    if t <= T::zero() {
        return x.abs();
    }
    let s = t.sqrt();
    s * omega(x / s)
}

/// `∂Ω/∂x = (2/π) arcsin(x/√2)` inside, `sign(x)` outside.
pub fn omega_slope<T: Real>(x: T) -> T {
    let two = T::lit(2.0);
    if x.abs() >= two.sqrt() {
        return x.signum();
    }
    two / T::PI() * (x / two.sqrt()).asin()
}

fn check_slope<T: Real>(xi: T) -> Result<()> {
    if xi.abs() < T::one() {
        Ok(())
    } else {
        Err(Error::Domain(format!("slope {xi} outside (−1, 1)")))
    }
}

/// `A₀(ξ) = log cos(πξ/2)`.
pub fn a0<T: Real>(xi: T) -> Result<T> {
    check_slope(xi)?;
    Ok((T::FRAC_PI_2() * xi).cos().ln())
}

/// `A₀′(ξ) = −(π/2) tan(πξ/2)`.
pub fn a0_prime<T: Real>(xi: T) -> Result<T> {
    check_slope(xi)?;
    Ok(-T::FRAC_PI_2() * (T::FRAC_PI_2() * xi).tan())
}

/// `A₀″(ξ) = −(π²/4) sec²(πξ/2)`.
pub fn a0_second<T: Real>(xi: T) -> Result<T> {
    check_slope(xi)?;
    let c = (T::FRAC_PI_2() * xi).cos();
    Ok(-T::FRAC_PI_2() * T::FRAC_PI_2() / (c * c))
}

/// `C = −log(π/√2)`, the additive constant making `𝓛[Ω] = −1/2`.
pub fn constant_c<T: Real>() -> T {
    -(T::PI() / T::SQRT_2()).ln()
}
