use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebraic::{ratio_order, roots_on_circle, RealAlgebraic};
use crate::error::{Error, Result};
use crate::zx::{IntPoly, RatPoly};

/// Primitive `f*` with `(f) ∩ Z[x^δ] = (f*(x^δ))`.
///
/// Finds the first linear dependency among `x^{δj} mod f` over `Q`.
pub fn compute_fstar(f: &IntPoly, delta: usize) -> Result<IntPoly> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if delta == 0 {
        return Err(Error::InvalidArgument("delta must be positive".into()));
    }
    if f.coeff(0).is_zero() || !f.lc_ref().is_positive() || f.content() != One::one() {
        return Err(Error::Precondition("f must be primitive with f(0) != 0 and lc(f) > 0".into()));
    }
    if f.is_constant() {
        return Ok(IntPoly::one());
    }
    let n = f.deg();
    let fr = f.to_rat();
    let step = IntPoly::monomial(One::one(), delta).to_rat().rem(&fr);
    // echelon rows: (pivot, remainder vector, combination of powers)
    let mut rows: Vec<(usize, Vec<BigRational>, Vec<BigRational>)> = Vec::new();
    let mut r = RatPoly::one();
    for k in 0..=n {
        let mut v: Vec<BigRational> = (0..n).map(|i| r.coeff(i)).collect();
        let mut combo = vec![BigRational::zero(); k + 1];
        combo[k] = BigRational::one();
        for (piv, row, rc) in &rows {
            if v[*piv].is_zero() {
                continue;
            }
            let t = &v[*piv] / &row[*piv];
            for (a, b) in v.iter_mut().zip(row) {
                *a -= &t * b;
            }
            for (a, b) in combo.iter_mut().zip(rc) {
                *a -= &t * b;
            }
        }
        match v.iter().position(|c| !c.is_zero()) {
            Some(piv) => rows.push((piv, v, combo)),
            None => return Ok(RatPoly::new(combo).clear_denominators().primitive()),
        }
        r = r.mul(&step).rem(&fr);
    }
    unreachable!("n + 1 vectors in an n-dimensional space are dependent")
}

/// Least `δ` such that every root `z ≠ x₊` with `|z| = x₊` has `(z/x₊)^δ = 1`.
pub fn minimal_delta(f: &IntPoly, x_plus: &RealAlgebraic) -> Result<Option<u64>> {
    let (minus, boxes) = roots_on_circle(f, x_plus)?;
    if !minus && boxes.is_empty() {
        return Err(Error::Precondition("no other root on the circle |z| = x_plus".into()));
    }
    let mut delta: u64 = if minus { 2 } else { 1 };
    let bound = f.deg() * f.deg();
    for b in &boxes {
        match ratio_order(f, b, x_plus, bound)? {
            Some(m) => delta = delta.lcm(&m),
            None => return Ok(None),
        }
    }
    Ok(Some(delta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::isolate_real_roots;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn prod(fs: &[&[i64]]) -> IntPoly {
        fs.iter().fold(IntPoly::one(), |acc, f| &acc * &p(f))
    }

    fn xplus(f: &IntPoly) -> RealAlgebraic {
        isolate_real_roots(f).unwrap().into_iter().map(|(r, _)| r).find(|r| r.sign() > 0).unwrap()
    }

    #[test]
    fn fstar_examples() {
        let f = prod(&[&[-2, 0, 1], &[1, 1]]);
        assert_eq!(compute_fstar(&f, 2).unwrap(), prod(&[&[-2, 1], &[-1, 1]]));
        let f = prod(&[&[-2, 0, 1], &[2, -2, 1]]);
        assert_eq!(compute_fstar(&f, 8).unwrap(), p(&[-16, 1]));
        let f = prod(&[&[-1, 1], &[1, 0, 1], &[1, 0, 1], &[1, 0, 0, 1]]);
        assert_eq!(compute_fstar(&f, 12).unwrap(), prod(&[&[-1, 1], &[-1, 1]]));
        let f = prod(&[&[-1, 1], &[1, 0, 1], &[1, 0, 0, 1]]);
        assert_eq!(compute_fstar(&f, 12).unwrap(), p(&[-1, 1]));
        assert_eq!(compute_fstar(&p(&[3, -5, 2]), 1).unwrap(), p(&[3, -5, 2]));
        assert!(compute_fstar(&p(&[0, 1, 1]), 2).is_err());
    }

    #[test]
    fn delta_examples() {
        let f = prod(&[&[-2, 0, 1], &[1, 1]]);
        assert_eq!(minimal_delta(&f, &xplus(&f)).unwrap(), Some(2));
        let f = prod(&[&[-2, 0, 1], &[2, -2, 1]]);
        assert_eq!(minimal_delta(&f, &xplus(&f)).unwrap(), Some(8));
        let f = prod(&[&[-5, 0, 1], &[5, -2, 1]]);
        assert_eq!(minimal_delta(&f, &xplus(&f)).unwrap(), None);
    }
}
