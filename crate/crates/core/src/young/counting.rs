use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::young::{Partition, SkewShape};

/// Default largest `n` accepted by [`plancherel_identity_check`].
pub const PLANCHEREL_CHECK_BOUND: usize = 14;

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

/// `dim λ` from the hook length formula.
pub fn dimension(p: &Partition) -> BigUint {
    let hooks = p
        .cells()
        .fold(BigUint::one(), |acc, (i, j)| acc * p.hook(i, j) as u64);
    factorial(p.size()) / hooks
}

/// Path counts `F^{λ/μ}` for every `μ ⊆ λ`, keyed by `μ`.
#[derive(Debug, Clone)]
pub struct SkewCounts {
    outer: Partition,
    table: HashMap<Partition, BigUint>,
}

impl SkewCounts {
    pub fn new(outer: &Partition) -> Self {
        let mut subs = outer.sub_diagrams();
        // Larger diagrams first so every successor is filled before use.
        subs.sort_by_key(|p| std::cmp::Reverse(p.size()));
        let mut table: HashMap<Partition, BigUint> = HashMap::with_capacity(subs.len());
        for mu in subs {
            let count = if &mu == outer {
                BigUint::one()
            } else {
                mu.addable_rows()
                    .into_iter()
                    .map(|r| mu.with_cell(r))
                    .filter(|nu| outer.contains(nu))
                    .map(|nu| table[&nu].clone())
                    .sum()
            };
            table.insert(mu, count);
        }
        SkewCounts {
            outer: outer.clone(),
            table,
        }
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    /// `F^{λ/μ}`, zero when `μ ⊄ λ`.
    pub fn get(&self, inner: &Partition) -> BigUint {
        self.table.get(inner).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

/// Skew tableau count by dynamic programming over the Young graph.
pub fn count_skew_dp(s: &SkewShape) -> BigUint {
    SkewCounts::new(s.outer()).get(s.inner())
}

/// Skew tableau count from `n! det[1/(λ_i − μ_j − i + j)!]` in exact arithmetic.
pub fn count_skew_determinant(s: &SkewShape) -> BigUint {
    let lambda = s.outer();
    let mu = s.inner();
    let l = lambda.len();
    if l == 0 {
        return BigUint::one();
    }
    let max_arg = lambda.part(0) + l;
    let inv_fact: Vec<BigRational> = (0..=max_arg)
        .map(|k| BigRational::new(BigInt::one(), BigInt::from(factorial(k))))
        .collect();
    let m = Matrix::from_fn(l, l, |i, j| {
        let arg = lambda.part(i) as i64 - mu.part(j) as i64 - i as i64 + j as i64;
        if arg < 0 {
            BigRational::zero()
        } else {
            inv_fact[arg as usize].clone()
        }
    });
    let value = m.det() * BigRational::from_integer(BigInt::from(factorial(s.cell_count())));
    assert!(value.is_integer(), "tableau count must be an integer");
    value
        .to_integer()
        .to_biguint()
        .expect("tableau count is nonnegative")
}

/// `F^{λ/μ}`, computed by both routes; disagreement is an error.
pub fn count_skew(s: &SkewShape) -> Result<BigUint> {
    let dp = count_skew_dp(s);
    let det = count_skew_determinant(s);
    if dp != det {
        return Err(Error::CountMismatch(format!("{s}: dp {dp} vs determinant {det}")));
    }
    Ok(dp)
}

/// Law of the next diagram under Plancherel growth: `dim λ′ / ((n+1) dim λ)`.
pub fn forward_step_distribution(p: &Partition) -> BTreeMap<Partition, BigRational> {
    let d = BigInt::from(dimension(p)) * BigInt::from(p.size() + 1);
    p.addable_rows()
        .into_iter()
        .map(|r| {
            let q = p.with_cell(r);
            let w = BigRational::new(BigInt::from(dimension(&q)), d.clone());
            (q, w)
        })
        .collect()
}

/// Law of the previous diagram: `dim λ / dim λ′` over one-cell removals.
pub fn backward_step_distribution(p: &Partition) -> Result<BTreeMap<Partition, BigRational>> {
    if p.is_empty() {
        return Err(Error::Domain("the empty diagram has no predecessor".into()));
    }
    let d = BigInt::from(dimension(p));
    Ok(p.removable_rows()
        .into_iter()
        .map(|r| {
            let q = p.without_cell(r);
            let w = BigRational::new(BigInt::from(dimension(&q)), d.clone());
            (q, w)
        })
        .collect())
}

/// Checks `Σ_{λ ⊢ n} dim² λ = n!` exactly, for `n` up to the default bound.
pub fn plancherel_identity_check(n: usize) -> Result<bool> {
    plancherel_identity_check_bounded(n, PLANCHEREL_CHECK_BOUND)
}

pub fn plancherel_identity_check_bounded(n: usize, bound: usize) -> Result<bool> {
    if n > bound {
        return Err(Error::SizeLimit {
            what: "n",
            size: n as u128,
            cap: bound as u128,
        });
    }
    let total: BigUint = Partition::all_of_size(n)
        .iter()
        .map(|p| {
            let d = count_skew_dp(&SkewShape::straight(p.clone()));
            &d * &d
        })
        .sum();
    Ok(total == factorial(n))
}
