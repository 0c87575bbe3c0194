//! Monic cofactors `g` with `f·g ∈ Φ₀`: linear systems, integer search and
//! lower bounds on `deg g`.

mod bounds;
pub(crate) mod fm;

pub use bounds::{complex_lower_bound, delta_trace, quadratic_min_degree, series_lower_bound, series_lower_bound_with, DeltaTrace, SeriesBound};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::phi::in_phi0;
use crate::zx::IntPoly;
use fm::{Ineq, Projection};

/// Node budget for the integer search at one degree.
pub const NODE_CAP: usize = 100_000;

/// Coefficient conditions for `f·g ∈ Φ₀` with `g` monic of degree `m`.
///
/// Row `r` is the coefficient of `x^{m+n-1-r}` in `f·g`, column `0` multiplies
/// the leading `1` of `g` and column `c ≥ 1` multiplies `b_{m-c}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Phi0System {
    pub matrix: Vec<Vec<BigInt>>,
    pub m: usize,
}

pub fn build_phi0_system(f: &IntPoly, m: usize) -> Result<Phi0System> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.lc_ref().is_positive() {
        return Err(Error::Precondition("lc(f) must be positive".into()));
    }
    let n = f.deg();
    let matrix = (1..=m + n)
        .map(|r| {
            (0..=m)
                .map(|c| {
                    let i = (n + c) as isize - r as isize;
                    if i < 0 { BigInt::zero() } else { f.coeff(i as usize) }
                })
                .collect()
        })
        .collect();
    Ok(Phi0System { matrix, m })
}

impl Phi0System {
    /// Evaluate the rows at `(1, b_{m-1}, …, b_0)`.
    pub fn evaluate(&self, tail: &[BigInt]) -> Vec<BigInt> {
        self.matrix
            .iter()
            .map(|row| {
                let mut acc = row[0].clone();
                for (c, b) in row[1..].iter().zip(tail) {
                    acc += c * b;
                }
                acc
            })
            .collect()
    }

    /// Whether the monic `g` of degree `m` satisfies every row.
    pub fn is_satisfied_by(&self, g: &IntPoly) -> bool {
        if g.degree() != Some(self.m) || !g.is_monic() {
            return false;
        }
        let tail: Vec<BigInt> = (0..self.m).rev().map(|i| g.coeff(i)).collect();
        self.evaluate(&tail).iter().all(|v| !v.is_positive())
    }

    fn projection(&self) -> Projection {
        let rows = self
            .matrix
            .iter()
            .enumerate()
            .map(|(i, row)| Ineq::new(row[1..].to_vec(), -&row[0], i))
            .collect();
        Projection::new(rows, self.m)
    }
}

/// Exact rational feasibility.
pub fn feasible_rational(system: &Phi0System) -> bool {
    system.projection().feasible()
}

/// Result of the integer search at one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntegerSearch {
    Found(IntPoly),
    Infeasible,
    /// The node budget ran out.
    Open,
}

/// Monic integer point of the system, if one exists within `node_cap` nodes.
pub fn integer_point(system: &Phi0System, node_cap: usize) -> IntegerSearch {
    let mut budget = node_cap;
    match system.projection().integer_point(&mut budget) {
        Ok(Some(tail)) => {
            let mut c: Vec<BigInt> = tail.into_iter().rev().collect();
            c.push(BigInt::one());
            IntegerSearch::Found(IntPoly::new(c))
        }
        Ok(None) => IntegerSearch::Infeasible,
        Err(()) => IntegerSearch::Open,
    }
}

/// Outcome of [`find_witness`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessSearch {
    /// `(g, deg g)` for the least degree found.
    pub witness: Option<(IntPoly, usize)>,
    /// Degree the scan started from.
    pub start: usize,
    /// Degrees left undecided by the node budget.
    pub open: Vec<usize>,
}

impl WitnessSearch {
    /// Whether the reported degree is proven minimal.
    pub fn is_minimal(&self) -> bool {
        self.witness.is_some() && self.open.is_empty()
    }
}

/// Least `m ≤ m_max` with a monic integer `g` of degree `m` and `f·g ∈ Φ₀`.
pub fn find_witness(f: &IntPoly, m_max: usize) -> Result<WitnessSearch> {
    find_witness_with(f, m_max, NODE_CAP)
}

/// [`find_witness`] with an explicit node budget per degree.
pub fn find_witness_with(f: &IntPoly, m_max: usize, node_cap: usize) -> Result<WitnessSearch> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.coeff(0).is_zero() || !f.lc_ref().is_positive() {
        return Err(Error::Precondition("need f(0) != 0 and lc(f) > 0".into()));
    }
    let mut start = 0;
    if !in_phi0(f) {
        let s = series_lower_bound(f)?;
        if s.conclusive {
            start = s.bound;
        }
        if let Ok(c) = complex_lower_bound(f) {
            start = start.max(c);
        }
    }
    let mut open = Vec::new();
    for m in start..=m_max {
        let sys = build_phi0_system(f, m)?;
        match integer_point(&sys, node_cap) {
            IntegerSearch::Found(g) => {
                if !in_phi0(&(f * &g)) {
                    return Err(Error::Internal("integer point failed the Φ₀ check".into()));
                }
                return Ok(WitnessSearch { witness: Some((g, m)), start, open });
            }
            IntegerSearch::Infeasible => {}
            IntegerSearch::Open => open.push(m),
        }
    }
    Ok(WitnessSearch { witness: None, start, open })
}
