use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::shape::{Normalization, ShapeFunction};
use crate::young::{Partition, PathTableau};

/// Rotated profile `ψ(u) = u + 2 #{i ≥ 1 : λ_i − i + 1 > u}` at integer `u`.
fn profile(p: &Partition, us: &[i64]) -> Vec<i64> {
    us.iter()
        .map(|&u| {
            let mut count = 0i64;
            let mut i = 1i64;
            // Rows beyond the last part contribute while −i + 1 > u.
            loop {
                let part = p.part((i - 1) as usize) as i64;
                if part - i + 1 > u {
                    count += 1;
                    i += 1;
                } else {
                    break;
                }
            }
            u + 2 * count
        })
        .collect()
}

/// Boundary curves of the growing diagram, rotated by 45° and scaled by
/// `1/√(2n)` so that each cell has area `1/n`; row `j` is time `j/n`.
pub fn path_to_shape<T: Real>(tab: &PathTableau) -> Result<ShapeFunction<T>> {
    let n = tab.len();
    if n == 0 {
        return Err(Error::Shape("empty tableau".into()));
    }
    let outer = tab.shape.outer();
    let reach = outer.part(0).max(outer.len()) as i64 + 1;
    let us: Vec<i64> = (-reach..=reach).collect();
    let mut psi = profile(tab.shape.inner(), &us);
    let scale = T::one() / T::from_usize(2 * n).expect("n representable").sqrt();
    let nn = T::from_usize(n).expect("n representable");
    let mut values = Vec::with_capacity((n + 1) * us.len());
    let push = |values: &mut Vec<T>, psi: &[i64]| {
        values.extend(psi.iter().map(|&v| T::from_i64(v).expect("profile representable") * scale))
    };
    push(&mut values, &psi);
    for &(r, c) in &tab.order {
        let content = c as i64 - r as i64;
        psi[(content + reach) as usize] += 2;
        push(&mut values, &psi);
    }
    let ts = (0..=n).map(|j| T::from_usize(j).expect("index representable") / nn).collect();
    let xs = us.iter().map(|&u| T::from_i64(u).expect("u representable") * scale).collect();
    ShapeFunction::new(ts, xs, values, Normalization::Area1)
}

/// `max_x |g(t_i, x) − f(x)|` over the mesh row nearest `t`.
pub fn sup_distance<T: Real>(g: &ShapeFunction<T>, t: T, f: impl Fn(T) -> T) -> T {
    let i = g.nearest_time(t);
    g.xs().iter().zip(g.row(i)).fold(T::zero(), |m, (&x, &v)| m.max((v - f(x)).abs()))
}
