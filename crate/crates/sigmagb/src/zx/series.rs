use num_rational::BigRational;
use num_traits::Zero;

use super::IntPoly;
use crate::error::{Error, Result};

/// Coefficients `λ_0..=λ_k` of the power series `1/f`.
pub fn power_series_inverse(f: &IntPoly, k: usize) -> Result<Vec<BigRational>> {
    let a0 = f.coeff(0);
    if a0.is_zero() {
        return Err(Error::Precondition("f(0) = 0 has no inverse series".into()));
    }
    let a: Vec<BigRational> = f.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let inv_a0 = BigRational::from_integer(a0).recip();
    let mut lam: Vec<BigRational> = Vec::with_capacity(k + 1);
    lam.push(inv_a0.clone());
    for j in 1..=k {
        let mut s = BigRational::zero();
        for i in 1..=j.min(a.len() - 1) {
            s += &a[i] * &lam[j - i];
        }
        lam.push(-s * &inv_a0);
    }
    Ok(lam)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn examples() {
        let r = power_series_inverse(&IntPoly::from_i64(&[1, -1]), 3).unwrap();
        assert_eq!(r, vec![q(1, 1); 4]);
        let r = power_series_inverse(&IntPoly::from_i64(&[2, -2, 1]), 4).unwrap();
        assert_eq!(r, vec![q(1, 2), q(1, 2), q(1, 4), q(0, 1), q(-1, 8)]);
        let r = power_series_inverse(&IntPoly::from_i64(&[-2, 1]), 2).unwrap();
        assert_eq!(r, vec![q(-1, 2), q(-1, 4), q(-1, 8)]);
        assert!(power_series_inverse(&IntPoly::from_i64(&[0, 1]), 2).is_err());
    }
}
