use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::svg::{line_plot, Series};

/// Which of the three equivalent scalings a shape function is written in.
///
/// `Area1`: swept area `t`. `Area2`: `g̃(t, x) = √2 g(t, x/√2)`, swept area
/// `2t`. `Unrescaled`: `G̃(T, X) = √n g̃(T/n, X/√n)` for `T ∈ [0, n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    Area1,
    Area2,
    Unrescaled { n: usize },
}

/// Values of `g(t, x)` on a rectangular mesh, stored row-major in `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeFunction<T> {
    ts: Vec<T>,
    xs: Vec<T>,
    values: Vec<T>,
    tag: Normalization,
}

fn check_axis<T: Real>(axis: &[T], name: &str) -> Result<()> {
    if axis.len() < 2 {
        return Err(Error::Shape(format!("{name} axis needs at least two points")));
    }
    if axis.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Shape(format!("{name} axis must be strictly increasing")));
    }
    Ok(())
}

impl<T: Real> ShapeFunction<T> {
    pub fn new(ts: Vec<T>, xs: Vec<T>, values: Vec<T>, tag: Normalization) -> Result<Self> {
        check_axis(&ts, "t")?;
        check_axis(&xs, "x")?;
        if values.len() != ts.len() * xs.len() {
            return Err(Error::Shape(format!(
                "{} values for a {}×{} mesh",
                values.len(),
                ts.len(),
                xs.len()
            )));
        }
        Ok(ShapeFunction { ts, xs, values, tag })
    }

    pub fn from_fn(ts: Vec<T>, xs: Vec<T>, tag: Normalization, f: impl Fn(T, T) -> T) -> Result<Self> {
        let values = ts.iter().flat_map(|&t| xs.iter().map(move |&x| (t, x))).map(|(t, x)| f(t, x)).collect();
        Self::new(ts, xs, values, tag)
    }

    /// Uniform mesh with `nt` and `nx` intervals.
    pub fn uniform(t_range: (T, T), nt: usize, x_range: (T, T), nx: usize, tag: Normalization, f: impl Fn(T, T) -> T) -> Result<Self> {
        Self::from_fn(linspace(t_range, nt), linspace(x_range, nx), tag, f)
    }

    pub fn ts(&self) -> &[T] {
        &self.ts
    }

    pub fn xs(&self) -> &[T] {
        &self.xs
    }

    pub fn tag(&self) -> Normalization {
        self.tag
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.values[i * self.xs.len() + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        let nx = self.xs.len();
        &self.values[i * nx..(i + 1) * nx]
    }

    /// Total swept area `∫ (g(t_last, x) − g(t_0, x)) dx` by trapezoids.
    pub fn swept_area(&self, i: usize) -> T {
        let (first, row) = (self.row(0), self.row(i));
        let half = T::lit(0.5);
        (0..self.xs.len() - 1)
            .map(|j| {
                let d0 = row[j] - first[j];
                let d1 = row[j + 1] - first[j + 1];
                half * (d0 + d1) * (self.xs[j + 1] - self.xs[j])
            })
            .fold(T::zero(), |a, b| a + b)
    }

    /// Expected swept area at time `t` under the tag.
    pub fn expected_area(&self, t: T) -> T {
        match self.tag {
            Normalization::Area1 => t,
            Normalization::Area2 | Normalization::Unrescaled { .. } => T::lit(2.0) * t,
        }
    }

    /// 1-Lipschitz in `x`, nondecreasing in `t`, and the tag's area law
    /// (the last only when `area_tol` is given).
    pub fn validate(&self, mesh_tol: T, area_tol: Option<T>) -> Result<()> {
        for i in 0..self.ts.len() {
            let row = self.row(i);
            for j in 0..self.xs.len() - 1 {
                let slope = (row[j + 1] - row[j]).abs();
                if slope > self.xs[j + 1] - self.xs[j] + mesh_tol {
                    return Err(Error::Shape(format!(
                        "Lipschitz bound fails at t = {}, x = {}",
                        self.ts[i], self.xs[j]
                    )));
                }
            }
            if i > 0 {
                let prev = self.row(i - 1);
                if let Some(j) = (0..self.xs.len()).find(|&j| row[j] < prev[j] - mesh_tol) {
                    return Err(Error::Shape(format!(
                        "decreasing in t at t = {}, x = {}",
                        self.ts[i], self.xs[j]
                    )));
                }
            }
            if let Some(tol) = area_tol {
                let want = self.expected_area(self.ts[i] - self.ts[0]);
                let got = self.swept_area(i);
                if (got - want).abs() > tol {
                    return Err(Error::Shape(format!(
                        "swept area {got} at t = {} differs from {want}",
                        self.ts[i]
                    )));
                }
            }
        }
        Ok(())
    }

    /// `g̃(t, x) = √2 g(t, x/√2)` from an `Area1` function.
    pub fn to_area2(&self) -> Result<Self> {
        if self.tag != Normalization::Area1 {
            return Err(Error::Shape("to_area2 needs an area1 shape".into()));
        }
        let r = T::SQRT_2();
        Ok(ShapeFunction {
            ts: self.ts.clone(),
            xs: self.xs.iter().map(|&x| x * r).collect(),
            values: self.values.iter().map(|&v| v * r).collect(),
            tag: Normalization::Area2,
        })
    }

    /// `G̃(T, X) = √n g̃(T/n, X/√n)` from an `Area2` function.
    pub fn to_unrescaled(&self, n: usize) -> Result<Self> {
        if self.tag != Normalization::Area2 || n == 0 {
            return Err(Error::Shape("to_unrescaled needs an area2 shape and n > 0".into()));
        }
        let nn = T::from_usize(n).expect("n representable");
        let s = nn.sqrt();
        Ok(ShapeFunction {
            ts: self.ts.iter().map(|&t| t * nn).collect(),
            xs: self.xs.iter().map(|&x| x * s).collect(),
            values: self.values.iter().map(|&v| v * s).collect(),
            tag: Normalization::Unrescaled { n },
        })
    }

    /// `t, x, g` rows.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["t", "x", "g"])?;
        for (i, t) in self.ts.iter().enumerate() {
            for (j, x) in self.xs.iter().enumerate() {
                w.write_record([t.to_string(), x.to_string(), self.get(i, j).to_string()])?;
            }
        }
        w.flush()?;
        Ok(())
    }

    /// Reads the output of [`ShapeFunction::write_csv`]; rows must enumerate
    /// the mesh in the same row-major order.
    pub fn read_csv<R: std::io::Read>(input: R, tag: Normalization) -> Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        let mut ts: Vec<T> = Vec::new();
        let mut xs: Vec<T> = Vec::new();
        let mut values = Vec::new();
        for rec in r.records() {
            let rec = rec?;
            let field = |k: usize| -> Result<T> {
                let s = rec.get(k).ok_or_else(|| Error::Parse(format!("row with {} fields", rec.len())))?;
                s.trim()
                    .parse::<f64>()
                    .map(T::lit)
                    .map_err(|e| Error::Parse(format!("{s:?}: {e}")))
            };
            let (t, x) = (field(0)?, field(1)?);
            if ts.last() != Some(&t) {
                ts.push(t);
            }
            if ts.len() == 1 {
                xs.push(x);
            }
            values.push(field(2)?);
        }
        Self::new(ts, xs, values, tag)
    }

    /// Boundary curves `g(t_i, ·)` at the mesh times nearest to `times`.
    pub fn to_svg(&self, times: &[T]) -> String {
        let series: Vec<Series> = times
            .iter()
            .map(|&t| {
                let i = self.nearest_time(t);
                let pts = self
                    .xs
                    .iter()
                    .zip(self.row(i))
                    .map(|(x, g)| (x.to_f64_lossy(), g.to_f64_lossy()))
                    .collect();
                Series::new(format!("t = {:.3}", self.ts[i].to_f64_lossy()), pts)
            })
            .collect();
        line_plot("boundary curves", &series)
    }

    pub fn nearest_time(&self, t: T) -> usize {
        nearest(&self.ts, t)
    }

    pub fn nearest_x(&self, x: T) -> usize {
        nearest(&self.xs, x)
    }
}

fn nearest<T: Real>(axis: &[T], v: T) -> usize {
    let mut best = 0;
    for (i, &a) in axis.iter().enumerate() {
        if (a - v).abs() < (axis[best] - v).abs() {
            best = i;
        }
    }
    best
}

pub(crate) fn linspace<T: Real>((a, b): (T, T), n: usize) -> Vec<T> {
    let nn = T::from_usize(n.max(1)).expect("count representable");
    (0..=n.max(1)).map(|i| a + (b - a) * T::from_usize(i).expect("index representable") / nn).collect()
}
