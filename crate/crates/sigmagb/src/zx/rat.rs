use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::IntPoly;

/// Polynomial with exact rational coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::new(vec![BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut v = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        RatPoly::new(v)
    }

    pub fn scale(&self, k: &BigRational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn div_rem(&self, b: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!b.is_zero(), "division by zero polynomial");
        let db = b.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return (RatPoly::zero(), self.clone());
        }
        let lb = b.coeffs[db].clone();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigRational::zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let t = &r[k + db] / &lb;
            if t.is_zero() {
                continue;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[i + k] -= &t * bc;
            }
            q[k] = t;
        }
        r.truncate(db);
        (RatPoly::new(q), RatPoly::new(r))
    }

    pub fn rem(&self, b: &RatPoly) -> RatPoly {
        self.div_rem(b).1
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Positive multiple with integer coefficients (signs preserved).
    pub fn clear_denominators(&self) -> IntPoly {
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| c.numer() * (&l / c.denom()))
                .collect(),
        )
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "RatPoly[{}]", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn division_with_remainder() {
        let a = RatPoly::new(vec![q(1, 1), q(0, 1), q(0, 1), q(1, 1)]);
        let b = RatPoly::new(vec![q(1, 1), q(2, 1)]);
        let (qq, r) = a.div_rem(&b);
        assert_eq!(qq.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) == 0);
    }

    #[test]
    fn clearing_denominators_keeps_signs() {
        let a = RatPoly::new(vec![q(-1, 2), q(1, 3)]);
        assert_eq!(a.clear_denominators(), IntPoly::from_i64(&[-3, 2]));
    }
}
