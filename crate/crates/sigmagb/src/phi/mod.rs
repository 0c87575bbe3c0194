//! Membership in `Φ₀` and `Φ₁`.
//!
//! `Φ₀` holds the integer polynomials whose only positive coefficient is the
//! leading one; `f ∈ Φ₁` when some monic `g` puts `f·g` in `Φ₀`.

mod fstar;
mod membership;
mod polya;

pub use fstar::{compute_fstar, minimal_delta};
pub use membership::{membership_phi1, NoReason, Phi1Verdict, Step, VerdictKind};
pub use polya::{minimal_positivity_exponent, phi0_witness_no_positive_roots, polya_exponent, PolyaData};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::zx::IntPoly;

/// Whether the positive part of `f` is exactly its leading term.
pub fn in_phi0(f: &IntPoly) -> bool {
    let Some(n) = f.degree() else {
        return false;
    };
    f.coeffs()[n].is_positive() && f.coeffs()[..n].iter().all(|c| !c.is_positive())
}

/// `f = content · x^shift · core` with `core` primitive, `core(0) ≠ 0`, `lc(core) > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub content: BigInt,
    pub shift: usize,
    pub core: IntPoly,
}

pub fn normalize(f: &IntPoly) -> Result<Normalized> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.lc_ref().is_negative() {
        return Err(Error::InvalidArgument("leading coefficient must be positive".into()));
    }
    let shift = f.valuation();
    let content = f.content();
    let core = f.unshift(shift).div_scalar_exact(&content);
    debug_assert!(!core.coeff(0).is_zero());
    Ok(Normalized { content, shift, core })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn phi0_examples() {
        assert!(in_phi0(&p(&[-1, 0, 0, 1])));
        assert!(!in_phi0(&p(&[1, 1, 1])));
        assert!(in_phi0(&p(&[-8, 0, 0, 0, 0, -2, 1])));
        assert!(in_phi0(&p(&[3])));
        assert!(!in_phi0(&p(&[-1])));
        assert!(!in_phi0(&IntPoly::zero()));
    }

    #[test]
    fn normalize_examples() {
        let n = normalize(&p(&[0, 0, -6, 6])).unwrap();
        assert_eq!((n.content, n.shift, n.core), (BigInt::from(6), 2, p(&[-1, 1])));
        let n = normalize(&p(&[1, 1, 1])).unwrap();
        assert_eq!((n.content, n.shift, n.core), (BigInt::from(1), 0, p(&[1, 1, 1])));
        let n = normalize(&p(&[0, 0, -4, 0, 2])).unwrap();
        assert_eq!((n.content, n.shift, n.core), (BigInt::from(2), 2, p(&[-2, 0, 1])));
        assert!(normalize(&p(&[1, -1])).is_err());
        assert!(normalize(&IntPoly::zero()).is_err());
    }
}
