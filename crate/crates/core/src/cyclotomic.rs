//! Exact arithmetic in the cyclotomic field `Q(ζ_n)`.
//!
//! Elements are polynomials in `ζ = exp(2πi/n)` with rational coefficients,
//! reduced modulo the cyclotomic polynomial `Φ_n`. A value built from a
//! rational alone carries no modulus and combines with any field.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

type Poly = Vec<BigRational>;

#[derive(Debug)]
struct Modulus {
    order: u32,
    /// Monic `Φ_order`, lowest degree first.
    poly: Poly,
}

fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of `a / b`, `b` nonzero.
fn poly_divrem(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let mut rem = a.clone();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() > db && !rem.is_empty() {
        let shift = rem.len() - 1 - db;
        let coef = rem[rem.len() - 1].clone() / lead.clone();
        for (i, c) in b.iter().enumerate() {
            let t = &coef * c;
            rem[shift + i] -= t;
        }
        quot[shift] = coef;
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

fn poly_sub(a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
        out.push(x - y);
    }
    trim(&mut out);
    out
}

fn cyclotomic_poly(n: u32) -> Poly {
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut p: Poly = vec![BigRational::zero(); n as usize + 1];
    p[0] = -BigRational::one();
    p[n as usize] = BigRational::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let (q, r) = poly_divrem(&p, &cyclotomic_poly(d));
            debug_assert!(r.is_empty());
            p = q;
        }
    }
    p
}

fn modulus(order: u32) -> Arc<Modulus> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Modulus>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("cyclotomic cache poisoned");
    guard
        .entry(order)
        .or_insert_with(|| {
            Arc::new(Modulus {
                order,
                poly: cyclotomic_poly(order),
            })
        })
        .clone()
}

/// Element of `Q(exp(2πi/n))`.
#[derive(Clone)]
pub struct Cyclotomic {
    modulus: Option<Arc<Modulus>>,
    coeffs: Poly,
}

impl Cyclotomic {
    pub fn from_rational(r: BigRational) -> Self {
        let mut coeffs = vec![r];
        trim(&mut coeffs);
        Cyclotomic {
            modulus: None,
            coeffs,
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `ζ^exponent` for the primitive `order`-th root of unity `ζ`.
    pub fn root_power(order: u32, exponent: i64) -> Self {
        assert!(order >= 1, "root of unity order must be positive");
        let m = modulus(order);
        let e = exponent.rem_euclid(order as i64) as usize;
        let mut coeffs = vec![BigRational::zero(); e + 1];
        coeffs[e] = BigRational::one();
        let mut out = Cyclotomic {
            modulus: Some(m),
            coeffs,
        };
        out.reduce();
        out
    }

    pub fn order(&self) -> Option<u32> {
        self.modulus.as_ref().map(|m| m.order)
    }

    /// Returns the value as a rational when it lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Numerical value with `ζ = exp(2πi/order)`.
    pub fn to_complex(&self) -> Complex64 {
        let order = self.order().unwrap_or(1) as f64;
        let z = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / order);
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    fn reduce(&mut self) {
        trim(&mut self.coeffs);
        if let Some(m) = &self.modulus {
            if self.coeffs.len() >= m.poly.len() {
                let (_, r) = poly_divrem(&self.coeffs, &m.poly);
                self.coeffs = r;
            }
        }
    }

    fn join(a: &Self, b: &Self) -> Option<Arc<Modulus>> {
        match (&a.modulus, &b.modulus) {
            (None, None) => None,
            (Some(m), None) | (None, Some(m)) => Some(m.clone()),
            (Some(x), Some(y)) => {
                assert_eq!(x.order, y.order, "mixing distinct cyclotomic fields");
                Some(x.clone())
            }
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.coeffs.is_empty() {
            return None;
        }
        if self.coeffs.len() == 1 {
            return Some(Cyclotomic {
                modulus: self.modulus.clone(),
                coeffs: vec![BigRational::one() / self.coeffs[0].clone()],
            });
        }
        let m = self.modulus.as_ref().expect("non-constant element has a modulus");
        // Extended Euclid: track s with s * self ≡ r (mod Φ).
        let (mut r0, mut r1) = (m.poly.clone(), self.coeffs.clone());
        let (mut s0, mut s1): (Poly, Poly) = (Vec::new(), vec![BigRational::one()]);
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r1 is a nonzero constant because Φ is irreducible.
        let c = r1.first().cloned()?;
        let coeffs = s1.into_iter().map(|x| x / c.clone()).collect();
        let mut out = Cyclotomic {
            modulus: self.modulus.clone(),
            coeffs,
        };
        out.reduce();
        Some(out)
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})ζ"),
                _ => format!("({c})ζ^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))?;
        if let Some(n) = self.order() {
            write!(f, " [ζ^{n}=1]")?;
        }
        Ok(())
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.coeffs.len() <= 1 && other.coeffs.len() <= 1 {
            return self.coeffs == other.coeffs;
        }
        self.order() == other.order() && self.coeffs == other.coeffs
    }
}

impl Add for Cyclotomic {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let modulus = Self::join(&self, &rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let x = self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = rhs.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
            coeffs.push(x + y);
        }
        let mut out = Cyclotomic { modulus, coeffs };
        trim(&mut out.coeffs);
        out
    }
}

impl Sub for Cyclotomic {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for Cyclotomic {
    type Output = Self;
    fn neg(self) -> Self {
        Cyclotomic {
            modulus: self.modulus,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for Cyclotomic {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let modulus = Self::join(&self, &rhs);
        let mut out = Cyclotomic {
            modulus,
            coeffs: poly_mul(&self.coeffs, &rhs.coeffs),
        };
        out.reduce();
        out
    }
}

impl Div for Cyclotomic {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let inv = rhs.inverse().expect("division by zero in cyclotomic field");
        self * inv
    }
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic {
            modulus: None,
            coeffs: Vec::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Cyclotomic::from_integer(1)
    }
}
