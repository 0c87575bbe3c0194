use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::algebraic::{isolate_complex_roots, unit_ratio_order, RootBox};
use crate::error::{internal, Error, Result};
use crate::zx::{power_series_inverse, resultant_ratio, sqfree_part, IntPoly};

/// Lower bound on the degree of a cofactor from the inverse power series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeriesBound {
    pub bound: usize,
    /// False when no negative coefficient appeared within the horizon.
    pub conclusive: bool,
    pub horizon: usize,
}

fn check(f: &IntPoly) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.coeff(0).is_zero() || !f.lc_ref().is_positive() {
        return Err(Error::Precondition("need f(0) != 0 and lc(f) > 0".into()));
    }
    Ok(())
}

/// First index of a negative coefficient of `1/f`, scanned up to `4·deg(f)²`.
pub fn series_lower_bound(f: &IntPoly) -> Result<SeriesBound> {
    series_lower_bound_with(f, (4 * f.deg() * f.deg()).max(1))
}

pub fn series_lower_bound_with(f: &IntPoly, horizon: usize) -> Result<SeriesBound> {
    check(f)?;
    let lam = power_series_inverse(f, horizon)?;
    Ok(match lam.iter().position(|c| c.is_negative()) {
        Some(j) => SeriesBound { bound: j, conclusive: true, horizon },
        None => SeriesBound { bound: 0, conclusive: false, horizon },
    })
}

/// The sequence `Δ_1, Δ_2, …` for a quadratic with complex roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaTrace {
    pub values: Vec<BigRational>,
    /// One-based index of the first nonnegative entry.
    pub terminal: usize,
}

fn quadratic_coeffs(f: &IntPoly) -> Result<[BigRational; 3]> {
    if f.degree() != Some(2) || !f.lc_ref().is_positive() {
        return Err(Error::InvalidArgument("need a quadratic with positive leading coefficient".into()));
    }
    let c = f.coeffs();
    if &c[1] * &c[1] >= &c[0] * &c[2] * 4 {
        return Err(Error::Precondition("discriminant must be negative".into()));
    }
    Ok([0, 1, 2].map(|i| BigRational::from_integer(c[i].clone())))
}

pub fn delta_trace(f: &IntPoly) -> Result<DeltaTrace> {
    let [a0, a1, a2] = quadratic_coeffs(f)?;
    let s = &a1 / &a2;
    let p = &a0 / &a2;
    let mut values = vec![s.clone()];
    // Δ_j = -r sin((j+1)θ)/sin(jθ) turns nonnegative before jθ reaches π
    while values.last().unwrap().is_negative() {
        let d = values.last().unwrap();
        values.push(&s - &p / d);
        if values.len() > 1_000_000 {
            return internal("delta recurrence did not terminate");
        }
    }
    let terminal = values.len();
    Ok(DeltaTrace { values, terminal })
}

/// Least degree of a monic `g` with `f·g ∈ Φ₀` for a quadratic `f` with complex roots.
pub fn quadratic_min_degree(f: &IntPoly) -> Result<usize> {
    quadratic_coeffs(f)?;
    let a1 = f.coeff(1);
    if a1.is_positive() {
        return Ok(1);
    }
    if a1.is_zero() {
        return Ok(2);
    }
    let t = delta_trace(f)?;
    Ok(if t.values[t.terminal - 1].is_zero() { t.terminal + 1 } else { t.terminal })
}

/// `⌊π/θ⌋` for an upper root `z = r e^{iθ}`: the least `j ≥ 0` with `Im z^{j+1} < 0`.
fn pi_over_arg(z: &RootBox) -> Result<usize> {
    let s = z.defining().clone();
    let mut order: Option<Option<u64>> = None;
    let mut zb = z.clone();
    let mut k = 1usize;
    let mut refinements = 0usize;
    loop {
        let mut pw = zb.rect().clone();
        for _ in 1..k {
            pw = pw.mul(zb.rect());
        }
        if pw.im_hi.is_negative() {
            return Ok(k - 1);
        }
        if pw.im_lo.is_positive() {
            k += 1;
            continue;
        }
        if order.is_none() {
            let h = sqfree_part(&resultant_ratio(&s, &s)?);
            let mut wb = z.clone();
            order = Some(unit_ratio_order(&h, || {
                wb = wb.refine()?;
                let (lo, hi) = wb.rect().modulus_sq();
                Ok(wb.rect().square().div_positive(&lo, &hi))
            })?);
        }
        // Im z^k = 0 exactly when (z / z̄)^k = 1
        if let Some(Some(q)) = order {
            if k as u64 % q == 0 {
                k += 1;
                continue;
            }
        }
        refinements += 1;
        if refinements > crate::algebraic::REFINE_CAP {
            return internal("refinement cap reached bounding an argument");
        }
        zb = zb.refine()?;
    }
}

/// `max(⌊π/θ⌋ - n + 2, 0)` over the non-real roots of `f`.
pub fn complex_lower_bound(f: &IntPoly) -> Result<usize> {
    check(f)?;
    let n = f.deg();
    let mut best: Option<usize> = None;
    for z in isolate_complex_roots(f)? {
        if !z.is_upper() {
            continue;
        }
        let k = pi_over_arg(&z)?;
        let b = (k + 2).saturating_sub(n);
        best = Some(best.map_or(b, |x| x.max(b)));
    }
    best.ok_or_else(|| Error::Precondition("f has no non-real roots".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn series_examples() {
        assert_eq!(series_lower_bound(&p(&[2, -2, 1])).unwrap().bound, 4);
        assert_eq!(series_lower_bound(&p(&[2, -1, 1])).unwrap().bound, 2);
        assert_eq!(series_lower_bound(&p(&[-2, 1])).unwrap().bound, 0);
        let b = series_lower_bound(&p(&[1, 1])).unwrap();
        assert!(b.conclusive);
        let b = series_lower_bound(&p(&[1, -2, 1])).unwrap();
        assert!(!b.conclusive);
    }

    #[test]
    fn delta_examples() {
        let t = delta_trace(&p(&[2, -1, 1])).unwrap();
        assert_eq!((t.values, t.terminal), (vec![q(-1, 1), q(1, 1)], 2));
        let t = delta_trace(&p(&[2, -2, 1])).unwrap();
        assert_eq!((t.values, t.terminal), (vec![q(-2, 1), q(-1, 1), q(0, 1)], 3));
    }

    #[test]
    fn quadratic_examples() {
        assert_eq!(quadratic_min_degree(&p(&[2, -1, 1])).unwrap(), 2);
        assert_eq!(quadratic_min_degree(&p(&[2, -2, 1])).unwrap(), 4);
        assert_eq!(quadratic_min_degree(&p(&[1, 1, 1])).unwrap(), 1);
        assert_eq!(quadratic_min_degree(&p(&[1, 0, 1])).unwrap(), 2);
        assert!(quadratic_min_degree(&p(&[1, -2, 1])).is_err());
    }

    #[test]
    fn complex_examples() {
        assert_eq!(complex_lower_bound(&p(&[2, -2, 1])).unwrap(), 4);
        assert_eq!(complex_lower_bound(&(&p(&[1, 1]) * &p(&[2, -2, 1]))).unwrap(), 3);
        assert_eq!(complex_lower_bound(&p(&[1, 0, 1])).unwrap(), 2);
        assert!(complex_lower_bound(&p(&[-2, 1])).is_err());
    }
}
