use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::in_phi0;
use crate::algebraic::{count_positive_roots, isolate_real_roots, RealAlgebraic};
use crate::error::{internal, Error, Result};
use crate::zx::{sqfree_part, IntPoly, RatPoly};

/// Data for the effective Pólya exponent of a polynomial positive on `[0, ∞)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyaData {
    pub lambda_lower: BigRational,
    /// Whether `lambda_lower` is the exact minimum.
    pub lambda_exact: bool,
    pub l: BigRational,
    pub n_f: u64,
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

fn check_positive(f: &IntPoly) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.coeff(0).is_positive() || !f.lc_ref().is_positive() || count_positive_roots(f)? != 0 {
        return Err(Error::Precondition("f must be positive on [0, inf)".into()));
    }
    Ok(())
}

/// `φ(t) = Σ a_k t^k (1-t)^{n-k}` as a rational polynomial.
fn homogenized_restriction(f: &IntPoly) -> RatPoly {
    let n = f.deg();
    let t = RatPoly::new(vec![BigRational::zero(), BigRational::one()]);
    let one_minus = RatPoly::new(vec![BigRational::one(), -BigRational::one()]);
    let mut acc = RatPoly::zero();
    for (k, a) in f.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let mut term = RatPoly::new(vec![BigRational::from_integer(a.clone())]);
        for _ in 0..k {
            term = term.mul(&t);
        }
        for _ in 0..n - k {
            term = term.mul(&one_minus);
        }
        acc = acc.add(&term);
    }
    acc
}

/// Exact rational root inside the isolating interval, if there is one.
fn rational_root(s: &IntPoly, alpha: &RealAlgebraic) -> Option<BigRational> {
    if let Some(r) = alpha.as_rational() {
        return Some(r.clone());
    }
    // rational roots of a primitive s have the form k / lc(s)
    let lc = s.lc().abs();
    let w = BigRational::new(BigInt::one(), &lc * 2);
    let a = alpha.refine_to_width(&w);
    if let Some(r) = a.as_rational() {
        return Some(r.clone());
    }
    let mid = (a.lo() + a.hi()) / BigRational::from_integer(2.into());
    let k = (mid * BigRational::from_integer(lc.clone())).round();
    let cand = k / BigRational::from_integer(lc);
    (s.sign_at_rat(&cand) == 0).then_some(cand)
}

/// Lower bound for a polynomial over `[lo, hi]` from its Taylor expansion at `lo`.
fn lower_bound_on(phi: &RatPoly, lo: &BigRational, hi: &BigRational) -> BigRational {
    let lin = RatPoly::new(vec![lo.clone(), hi - lo]);
    let mut acc = RatPoly::zero();
    for c in phi.coeffs().iter().rev() {
        acc = acc.mul(&lin).add(&RatPoly::new(vec![c.clone()]));
    }
    let mut b = acc.coeff(0);
    for c in acc.coeffs().iter().skip(1) {
        if c.is_negative() {
            b += c;
        }
    }
    b
}

/// Minimum of `φ` on `[0, 1]`: exact when all interior critical points are
/// rational, otherwise a certified positive lower bound.
fn lambda(phi: &RatPoly) -> Result<(BigRational, bool)> {
    let zero = BigRational::zero();
    let one = BigRational::one();
    let mut best = std::cmp::min(phi.eval(&zero), phi.eval(&one));
    let mut exact = true;
    let dphi = RatPoly::new(
        phi.coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(i.into()))
            .collect(),
    );
    if dphi.degree().unwrap_or(0) == 0 {
        return Ok((best, exact));
    }
    let s = sqfree_part(&dphi.clear_denominators());
    for (alpha, _) in isolate_real_roots(&s)? {
        if alpha.hi() <= &zero || alpha.lo() >= &one {
            continue;
        }
        let alpha = if alpha.is_rational() {
            alpha
        } else {
            let mut a = alpha;
            while a.lo() < &zero || a.hi() > &one {
                a = a.refine();
            }
            a
        };
        if let Some(r) = rational_root(&s, &alpha) {
            if r > zero && r < one {
                best = best.min(phi.eval(&r));
            }
            continue;
        }
        exact = false;
        let mut a = alpha;
        let mut bound = lower_bound_on(phi, a.lo(), a.hi());
        for _ in 0..200 {
            let target = phi.eval(a.lo()).min(phi.eval(a.hi())) * BigRational::new(999.into(), 1000.into());
            if bound.is_positive() && bound >= target {
                break;
            }
            a = a.refine();
            bound = lower_bound_on(phi, a.lo(), a.hi());
        }
        if !bound.is_positive() {
            return internal("subdivision cap reached bounding the Pólya minimum");
        }
        best = best.min(bound);
    }
    Ok((best, exact))
}

fn all_positive(p: &IntPoly) -> bool {
    p.coeffs().iter().all(|c| c.is_positive())
}

/// Effective exponent `N_f` with `(x+1)^{N_f} f` having positive coefficients.
pub fn polya_exponent(f: &IntPoly) -> Result<PolyaData> {
    check_positive(f)?;
    let n = f.deg();
    let phi = homogenized_restriction(f);
    let (lambda_lower, lambda_exact) = lambda(&phi)?;
    if !lambda_lower.is_positive() {
        return internal("nonpositive minimum for a positive polynomial");
    }
    let l = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, a)| BigRational::new(a.abs(), binomial(n, k)))
        .max()
        .unwrap_or_default();
    let n_r = BigRational::from_integer(n.into());
    let bound = &n_r * (&n_r - BigRational::one()) * &l / (&lambda_lower * BigRational::from_integer(2.into())) - &n_r;
    let n_f = if bound.is_negative() {
        0
    } else {
        let fl = bound.floor().to_integer();
        u64::try_from(fl + 1).map_err(|_| Error::Internal("Pólya exponent overflow".into()))?
    };
    let lifted = &IntPoly::from_i64(&[1, 1]).pow(n_f as usize) * f;
    if !all_positive(&lifted) {
        return internal("Pólya exponent failed verification");
    }
    Ok(PolyaData { lambda_lower, lambda_exact, l, n_f })
}

/// Least `N` with `(x+1)^N f` having positive coefficients.
pub fn minimal_positivity_exponent(f: &IntPoly) -> Result<u64> {
    let cap = polya_exponent(f)?.n_f;
    let x1 = IntPoly::from_i64(&[1, 1]);
    let mut h = f.clone();
    for n in 0..=cap {
        if all_positive(&h) {
            return Ok(n);
        }
        h = &h * &x1;
    }
    internal("positivity exponent exceeds the Pólya bound")
}

/// Monic `g` with `f·g ∈ Φ₀` for `f` without positive roots.
pub fn phi0_witness_no_positive_roots(f: &IntPoly) -> Result<IntPoly> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.coeff(0).is_zero() || !f.lc_ref().is_positive() || f.content() != One::one() {
        return Err(Error::Precondition("f must be primitive with f(0) != 0 and lc(f) > 0".into()));
    }
    if in_phi0(f) {
        return Ok(IntPoly::one());
    }
    if count_positive_roots(f)? != 0 {
        return Err(Error::Precondition("f has a positive root".into()));
    }
    let mut g = IntPoly::one();
    if !all_positive(f) {
        let n_f = polya_exponent(f)?.n_f;
        g = IntPoly::from_i64(&[1, 1]).pow(n_f as usize);
    }
    let h = &g * f;
    let n = h.deg();
    let ones = IntPoly::new(vec![BigInt::one(); n + 1]);
    let s = &ones * &h;
    g = &g * &ones;
    let b = s.coeffs();
    let mut m = BigRational::zero();
    for i in 1..b.len() {
        m = m.max(BigRational::new(b[i - 1].clone(), b[i].clone()));
    }
    let big_m: BigInt = m.ceil().to_integer() + 1;
    g = &g * &IntPoly::new(vec![-big_m, BigInt::one()]);
    if !in_phi0(&(f * &g)) {
        return internal("constructed witness is not in Φ₀");
    }
    Ok(g)
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
    fn polya_examples() {
        let d = polya_exponent(&p(&[2, -2, 1])).unwrap();
        assert_eq!((d.lambda_lower.clone(), d.l.clone(), d.n_f), (q(1, 5), q(2, 1), 9));
        assert!(d.lambda_exact);
        let d = polya_exponent(&p(&[1, 0, 1])).unwrap();
        assert_eq!((d.lambda_lower, d.l, d.n_f), (q(1, 2), q(1, 1), 1));
        assert_eq!(polya_exponent(&p(&[1, 1])).unwrap().n_f, 0);
        assert!(polya_exponent(&p(&[-2, 1])).is_err());
    }

    #[test]
    fn irrational_critical_points_give_a_valid_bound() {
        // critical points of the restriction are irrational here
        let f = p(&[3, -3, 1, 1]);
        let d = polya_exponent(&f).unwrap();
        assert!(d.lambda_lower.is_positive());
        assert!(minimal_positivity_exponent(&f).unwrap() <= d.n_f);
    }

    #[test]
    fn minimal_exponents() {
        assert_eq!(minimal_positivity_exponent(&p(&[2, -2, 1])).unwrap(), 6);
        assert_eq!(minimal_positivity_exponent(&p(&[1, 0, 1])).unwrap(), 1);
        assert_eq!(minimal_positivity_exponent(&p(&[1, 1])).unwrap(), 0);
    }

    #[test]
    fn witnesses_without_positive_roots() {
        let g = phi0_witness_no_positive_roots(&p(&[1, 1, 1])).unwrap();
        assert_eq!(g, &p(&[1, 1, 1]) * &p(&[-3, 1]));
        let g = phi0_witness_no_positive_roots(&p(&[2, 1])).unwrap();
        assert!(g.is_monic() && in_phi0(&(&p(&[2, 1]) * &g)));
        let g = phi0_witness_no_positive_roots(&p(&[2, -2, 1])).unwrap();
        assert!(g.is_monic() && in_phi0(&(&p(&[2, -2, 1]) * &g)));
        assert_eq!(phi0_witness_no_positive_roots(&p(&[-2, 1])).unwrap(), IntPoly::one());
        assert!(phi0_witness_no_positive_roots(&p(&[2, -3, 1])).is_err());
    }
}
