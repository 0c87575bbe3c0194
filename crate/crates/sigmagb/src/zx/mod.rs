//! Dense univariate polynomials over `Z` and `Q`.

mod cyclotomic;
mod gcd;
mod rat;
mod resultant;
mod series;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use cyclotomic::{cyclotomic, euler_phi};
pub use gcd::{gcd_primitive, sqfree_decompose, sqfree_part, SqfDecomp};
pub use rat::RatPoly;
pub use resultant::{resultant, resultant_power, resultant_product, resultant_ratio};
pub use series::power_series_inverse;

use crate::error::{Error, Result};

/// Polynomial with arbitrary-precision integer coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `x^k - 1`
    pub fn x_pow_minus_one(k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[0] = BigInt::from(-1);
        v[k] += BigInt::one();
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn lc_ref(&self) -> &BigInt {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    /// Lowest index with a nonzero coefficient.
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut g = self.content();
        if self.lc_ref().is_negative() {
            g = -g;
        }
        if g.is_one() {
            return self.clone();
        }
        IntPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        if k.is_zero() {
            return IntPoly::zero();
        }
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn div_scalar_exact(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| {
                    debug_assert!((c % k).is_zero());
                    c / k
                })
                .collect(),
        )
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs: v }
    }

    /// Divide by `x^k`, dropping the lowest `k` coefficients.
    pub fn unshift(&self, k: usize) -> IntPoly {
        IntPoly::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// `p(x^d)`
    pub fn compose_pow(&self, d: usize) -> IntPoly {
        if self.is_zero() || d == 1 {
            return self.clone();
        }
        let mut v = vec![BigInt::zero(); self.deg() * d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * d] = c.clone();
        }
        IntPoly::new(v)
    }

    /// `p(-x)`
    pub fn negate_var(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `p(s*x)`
    pub fn scale_var(&self, s: &BigInt) -> IntPoly {
        let mut pw = BigInt::one();
        let mut v = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            v.push(c * &pw);
            pw *= s;
        }
        IntPoly::new(v)
    }

    /// `x^n p(1/x)` with `n = deg p`.
    pub fn reverse(&self) -> IntPoly {
        let mut v = self.coeffs.clone();
        v.reverse();
        IntPoly::new(v)
    }

    /// `p(x + 1)`
    pub fn taylor_shift_one(&self) -> IntPoly {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = a[j + 1].clone();
                a[j] += t;
            }
        }
        IntPoly::new(a)
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn pow(&self, k: usize) -> IntPoly {
        let mut result = IntPoly::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        let (num, den) = (x.numer(), x.denom());
        BigRational::new(self.eval_homogeneous(num, den), den.pow(self.deg() as u32))
    }

    /// `den^n * p(num/den)` with `n = deg p`.
    pub fn eval_homogeneous(&self, num: &BigInt, den: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * num + c * &dpow;
            dpow *= den;
        }
        acc
    }

    /// Sign of `p(x)` at a rational point.
    pub fn sign_at_rat(&self, x: &BigRational) -> i32 {
        let v = self.eval_homogeneous(x.numer(), x.denom());
        sign(&v)
    }

    pub fn positive_part(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| if c.is_positive() { c.clone() } else { BigInt::zero() })
                .collect(),
        )
    }

    pub fn negative_part(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| if c.is_negative() { -c } else { BigInt::zero() })
                .collect(),
        )
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        assert!(!b.is_zero(), "pseudo-remainder by zero");
        if self.deg() < b.deg() || self.is_zero() {
            return self.clone();
        }
        let db = b.deg();
        let lb = b.lc();
        let mut r = self.coeffs.clone();
        let mut e = self.deg() - db + 1;
        while r.len() > db && !r.is_empty() {
            let lr = r.last().unwrap().clone();
            let k = r.len() - 1 - db;
            for c in r.iter_mut() {
                *c *= &lb;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[i + k] -= &lr * bc;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
            e -= 1;
        }
        let f = lb.pow(e as u32);
        IntPoly::new(r.into_iter().map(|c| c * &f).collect())
    }

    /// Quotient `self / b` when the division is exact in `Z[x]`.
    pub fn exact_div(&self, b: &IntPoly) -> Option<IntPoly> {
        if b.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.deg() < b.deg() {
            return None;
        }
        let db = b.deg();
        let lb = b.lc();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); self.deg() - db + 1];
        for k in (0..q.len()).rev() {
            let top = &r[k + db];
            if top.is_zero() {
                continue;
            }
            let (qk, rem) = top.div_rem(&lb);
            if !rem.is_zero() {
                return None;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[i + k] -= &qk * bc;
            }
            q[k] = qk;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::new(q))
    }

    pub fn divides(&self, other: &IntPoly) -> bool {
        other.exact_div(self).is_some()
    }

    /// Render as `x^2 - 2*x + 2`.
    pub fn to_text(&self) -> String {
        self.to_text_var("x")
    }

    pub fn to_text_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        out
    }

    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }
}

pub(crate) fn sign(v: &BigInt) -> i32 {
    match v.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

pub(crate) fn rat_sign(v: &BigRational) -> i32 {
    match v.cmp(&BigRational::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// Largest `δ` with `p ∈ Z[x^δ]`.
pub fn delta_support(p: &IntPoly) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let g = p
        .coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, c)| !c.is_zero())
        .fold(0usize, |g, (i, _)| g.gcd(&i));
    Ok(g)
}

/// `p̂` with `p̂(x^δ) = p`.
pub fn decompose_power(p: &IntPoly, delta: usize) -> Result<IntPoly> {
    if delta == 0 {
        return Err(Error::InvalidArgument("delta must be positive".into()));
    }
    if delta == 1 {
        return Ok(p.clone());
    }
    if p.coeffs().iter().enumerate().any(|(i, c)| i % delta != 0 && !c.is_zero()) {
        return Err(Error::InvalidArgument(format!("polynomial is not a polynomial in x^{delta}")));
    }
    Ok(IntPoly::new(p.coeffs().iter().step_by(delta).cloned().collect()))
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", self.to_text())
    }
}

impl Add<&IntPoly> for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = self.coeffs.get(i).cloned().unwrap_or_default();
            if let Some(d) = rhs.coeffs.get(i) {
                c += d;
            }
            v.push(c);
        }
        IntPoly::new(v)
    }
}

impl Sub<&IntPoly> for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = self.coeffs.get(i).cloned().unwrap_or_default();
            if let Some(d) = rhs.coeffs.get(i) {
                c -= d;
            }
            v.push(c);
        }
        IntPoly::new(v)
    }
}

impl Mul<&IntPoly> for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPoly::new(v)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: &IntPoly) -> IntPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<IntPoly> for &IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}
