//! Subresultant resultants over `Z` and `Z[x]`, plus the three root
//! transformations built on them (powers, pairwise products, pairwise ratios).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{sqfree_part, IntPoly};
use crate::error::{Error, Result};

/// Integral domain with exact division, enough for subresultant sequences.
pub(crate) trait Domain: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn exact_div(&self, o: &Self) -> Self;

    fn pow(&self, k: usize) -> Self {
        let mut r = Self::one();
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }
}

impl Domain for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, o: &Self) -> Self {
        debug_assert!(Zero::is_zero(&(self % o)));
        self / o
    }
}

impl Domain for IntPoly {
    fn zero() -> Self {
        IntPoly::zero()
    }
    fn one() -> Self {
        IntPoly::one()
    }
    fn is_zero(&self) -> bool {
        IntPoly::is_zero(self)
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, o: &Self) -> Self {
        IntPoly::exact_div(self, o).expect("inexact division in subresultant sequence")
    }
}

fn trim<R: Domain>(v: &mut Vec<R>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn prem<R: Domain>(a: &[R], b: &[R]) -> Vec<R> {
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut r: Vec<R> = a.to_vec();
    if r.len() <= db {
        return r;
    }
    let mut e = r.len() - db;
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        let k = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c = c.mul(&lb);
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + k] = r[i + k].sub(&lr.mul(bc));
        }
        r.pop();
        trim(&mut r);
        e -= 1;
    }
    let f = lb.pow(e);
    r.into_iter().map(|c| c.mul(&f)).collect()
}

/// Resultant of two polynomials with coefficients in an integral domain,
/// coefficients listed lowest degree first.
pub(crate) fn resultant_generic<R: Domain>(a: &[R], b: &[R]) -> R {
    let mut a: Vec<R> = a.to_vec();
    let mut b: Vec<R> = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() || b.is_empty() {
        return R::zero();
    }
    let mut negate = false;
    if a.len() < b.len() {
        if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
            negate = true;
        }
        std::mem::swap(&mut a, &mut b);
    }
    let apply = |v: R, negate: bool| if negate { v.neg() } else { v };
    if b.len() == 1 {
        return apply(b[0].pow(a.len() - 1), negate);
    }
    let mut g = R::one();
    let mut h = R::one();
    loop {
        let da = a.len() - 1;
        let db = b.len() - 1;
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
        let r = prem(&a, &b);
        a = b;
        let div = g.mul(&h.pow(delta));
        b = r.into_iter().map(|c| c.exact_div(&div)).collect();
        trim(&mut b);
        g = a.last().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta).exact_div(&h.pow(delta - 1)),
        };
        if b.is_empty() {
            return R::zero();
        }
        if b.len() == 1 {
            let da = a.len() - 1;
            let res = b[0].pow(da).exact_div(&h.pow(da - 1));
            return apply(res, negate);
        }
    }
}

/// `Res(p, q)` over the integers.
pub fn resultant(p: &IntPoly, q: &IntPoly) -> BigInt {
    resultant_generic(p.coeffs(), q.coeffs())
}

fn constant_coeffs(p: &IntPoly) -> Vec<IntPoly> {
    p.coeffs().iter().map(|c| IntPoly::constant(c.clone())).collect()
}

/// Primitive square-free `q*` whose roots are exactly `{z^δ : q(z) = 0}`.
pub fn resultant_power(q: &IntPoly, delta: usize) -> Result<IntPoly> {
    if q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if delta == 0 {
        return Err(Error::InvalidArgument("delta must be positive".into()));
    }
    if q.is_constant() {
        return Ok(IntPoly::one());
    }
    // u^δ - X as a polynomial in u over Z[X]
    let mut a = vec![IntPoly::zero(); delta + 1];
    a[0] = IntPoly::from_i64(&[0, -1]);
    a[delta] = IntPoly::one();
    let r = resultant_generic(&a, &constant_coeffs(q));
    Ok(sqfree_part(&r))
}

/// Polynomial whose roots are the products `z_i z_j` over all ordered pairs
/// of roots of `p`, with multiplicity; primitive with positive leading coefficient.
pub fn resultant_product(p: &IntPoly) -> Result<IntPoly> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if Zero::is_zero(&p.coeff(0)) {
        return Err(Error::Precondition("p(0) = 0; strip powers of x first".into()));
    }
    let n = p.deg();
    // u^n p(x/u) = sum a_i x^i u^(n-i)
    let a: Vec<IntPoly> = (0..=n)
        .map(|k| IntPoly::monomial(p.coeff(n - k), n - k))
        .collect();
    let r = resultant_generic(&a, &constant_coeffs(p));
    Ok(r.primitive())
}

/// Polynomial whose roots are the ratios `w/z` with `p(z) = 0`, `q(w) = 0`,
/// over ordered pairs with multiplicity; primitive with positive leading coefficient.
pub fn resultant_ratio(p: &IntPoly, q: &IntPoly) -> Result<IntPoly> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if Zero::is_zero(&p.coeff(0)) || Zero::is_zero(&q.coeff(0)) {
        return Err(Error::Precondition("vanishing constant term".into()));
    }
    // q(u x) = sum b_j x^j u^j
    let b: Vec<IntPoly> = (0..=q.deg())
        .map(|j| IntPoly::monomial(q.coeff(j), j))
        .collect();
    let r = resultant_generic(&constant_coeffs(p), &b);
    Ok(r.primitive())
}
