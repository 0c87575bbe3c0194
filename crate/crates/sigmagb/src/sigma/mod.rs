//! Binomial difference ideals in one difference indeterminate.
//!
//! A difference monomial `y^p` with `p ∈ N[x]` is stored by its exponent
//! polynomial; `y^{x^i}` is the `i`-th shift of `y`.

mod basis;
pub mod buchberger;

pub(crate) use basis::lattice_basis;
pub use basis::{
    certify_sigma_gb, finite_gb, gb_truncated, CONJECTURE_CAP, gb_truncated_with, grem, truncated_generators, BinomialBasis, FiniteGb,
    Saturation,
};

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::phi::in_phi0;
use crate::zx::IntPoly;

/// `y^{plus} - y^{minus}` with exponent polynomials in `N[x]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DiffBinomial {
    pub plus: IntPoly,
    pub minus: IntPoly,
}

impl DiffBinomial {
    pub fn new(plus: IntPoly, minus: IntPoly) -> Result<Self> {
        if plus.coeffs().iter().chain(minus.coeffs()).any(|c| c.is_negative()) {
            return Err(Error::InvalidArgument("exponents must lie in N[x]".into()));
        }
        Ok(DiffBinomial { plus, minus })
    }

    /// `plus - minus`.
    pub fn exponent(&self) -> IntPoly {
        &self.plus - &self.minus
    }

    pub fn is_zero(&self) -> bool {
        self.plus == self.minus
    }

    /// Cancel the common part and put the lexicographically larger side first.
    pub fn normalized(&self) -> DiffBinomial {
        let n = self.plus.coeffs().len().max(self.minus.coeffs().len());
        let mut p = Vec::with_capacity(n);
        let mut m = Vec::with_capacity(n);
        for i in 0..n {
            let (a, b) = (self.plus.coeff(i), self.minus.coeff(i));
            let c = a.clone().min(b.clone());
            p.push(a - &c);
            m.push(b - c);
        }
        let (p, m) = (IntPoly::new(p), IntPoly::new(m));
        if lex_cmp_poly(&p, &m) == Ordering::Less {
            DiffBinomial { plus: m, minus: p }
        } else {
            DiffBinomial { plus: p, minus: m }
        }
    }
}

impl fmt::Display for DiffBinomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |p: &IntPoly| if p.is_zero() { "1".to_string() } else { format!("y^({})", p) };
        write!(f, "{} - {}", side(&self.plus), side(&self.minus))
    }
}

impl fmt::Debug for DiffBinomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffBinomial({self})")
    }
}

/// Lexicographic comparison of exponent polynomials, top degree most significant.
pub fn lex_cmp_poly(a: &IntPoly, b: &IntPoly) -> Ordering {
    let n = a.coeffs().len().max(b.coeffs().len());
    for i in (0..n).rev() {
        match a.coeff(i).cmp(&b.coeff(i)) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// `P_f = y^{f⁺} - y^{f⁻}`.
pub fn to_binomial(f: &IntPoly) -> DiffBinomial {
    DiffBinomial { plus: f.positive_part(), minus: f.negative_part() }
}

/// Whether `f` divides `g` in `Z[x]`.
pub fn ideal_membership(g: &IntPoly, f: &IntPoly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(g.is_zero() || f.divides(g))
}

/// `deg(u) - deg(u⁺ - lt(u))`; `None` when `u⁺` is a single term.
pub fn gap(u: &IntPoly) -> Option<usize> {
    let n = u.deg();
    let rest = u.positive_part() - IntPoly::monomial(u.lc(), n);
    rest.degree().map(|m| n - m)
}

/// The sequence `s_1, …, s_k` with `s_{i+1} = (x^{n_i} - c_i x^{m_i}) s_i`.
pub fn infinite_gb_stream(f: &IntPoly, k: usize) -> Result<Vec<IntPoly>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.lc_ref().is_positive() || in_phi0(f) || f.negative_part().is_zero() || gap(f).is_none() {
        return Err(Error::Precondition("need lc > 0, f⁺ with two or more terms and f⁻ != 0".into()));
    }
    let mut out = Vec::with_capacity(k);
    let mut s = f.clone();
    for _ in 0..k {
        let n = s.deg();
        let a = s.lc();
        let rest = s.positive_part() - IntPoly::monomial(a.clone(), n);
        let Some(m) = rest.degree() else {
            return Err(Error::Internal("stream element fell into Φ₀".into()));
        };
        let b = rest.lc();
        let c = Integer::div_ceil(&b, &a);
        let mult = IntPoly::monomial(One::one(), n) - IntPoly::monomial(c, m);
        s = &mult * &s;
        out.push(s.clone());
    }
    Ok(out)
}
