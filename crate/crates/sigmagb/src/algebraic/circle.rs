use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use super::complex::{count_roots_in_rect, isolate_sqfree, make_disjoint, RootBox};
use super::real::{compare, isolate_real_roots, real_roots_sqfree, sign_at, RealAlgebraic, REFINE_CAP};
use super::rect::Rect;
use crate::error::{internal, Error, Result};
use crate::zx::{
    cyclotomic, euler_phi, gcd_primitive, resultant_product, resultant_ratio, sqfree_decompose, sqfree_part, IntPoly,
};

fn check_xplus(f: &IntPoly, x_plus: &RealAlgebraic) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.coeff(0).is_zero() {
        return Err(Error::Precondition("f(0) must be nonzero".into()));
    }
    if x_plus.sign() <= 0 || sign_at(f, x_plus) != 0 {
        return Err(Error::Precondition("x_plus must be a positive root of f".into()));
    }
    Ok(())
}

/// Whether some root of `f` has modulus larger than `x_plus`.
pub fn has_root_outside(f: &IntPoly, x_plus: &RealAlgebraic) -> Result<bool> {
    check_xplus(f, x_plus)?;
    let c = rational_square(x_plus);
    let x2 = x_plus.pow_positive(2)?;
    for (s, e) in &sqfree_decompose(f)?.factors {
        let outside = match &c {
            Some(c) => split_at_radius(s, *e, c)?.is_none(),
            None => product_root_above(&resultant_product(s)?, &x2)?,
        };
        if outside {
            return Ok(true);
        }
    }
    Ok(false)
}

fn product_root_above(r: &IntPoly, x2: &RealAlgebraic) -> Result<bool> {
    Ok(real_roots_sqfree(&sqfree_part(r))?.iter().any(|b| compare(b, x2) == Ordering::Greater))
}

/// Smallest-denominator rational in `[lo, hi]`, for `0 <= lo <= hi`.
fn simplest_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    let n = lo.floor();
    if &n == lo {
        return n;
    }
    if &(&n + BigRational::one()) <= hi {
        return n + BigRational::one();
    }
    n.clone() + simplest_between(&(hi - &n).recip(), &(lo - &n).recip()).recip()
}

/// `x^2` when it is rational.
pub(crate) fn rational_square(x: &RealAlgebraic) -> Option<BigRational> {
    if let Some(r) = x.as_rational() {
        return Some(r * r);
    }
    let l = BigRational::from_integer(x.defining().lc().abs());
    let tol = (&l * &l).recip();
    let mut x = x.clone();
    for _ in 0..REFINE_CAP {
        if let Some(r) = x.as_rational() {
            return Some(r * r);
        }
        if x.lo().is_positive() && x.hi() * x.hi() - x.lo() * x.lo() < tol {
            break;
        }
        x = x.refine();
    }
    if !x.lo().is_positive() {
        return None;
    }
    let c = simplest_between(&(x.lo() * x.lo()), &(x.hi() * x.hi()));
    (sign_at(&square_minus(&c, 1), &x) == 0).then_some(c)
}

/// `b z^2 - k a` for `c = a / b`.
fn square_minus(c: &BigRational, k: i64) -> IntPoly {
    IntPoly::new(vec![-c.numer() * k, BigInt::zero(), c.denom().clone()])
}

/// `G` with `g(z) = z^k G(z + c/z)` up to a constant, if `g` has that shape.
fn fold_reciprocal(g: &IntPoly, c: &BigRational) -> Option<IntPoly> {
    let n = g.deg();
    if n % 2 == 1 {
        return None;
    }
    let k = n / 2;
    let mut rest: Vec<BigRational> = g.coeffs().iter().map(|a| BigRational::from_integer(a.clone())).collect();
    let mut powers = vec![vec![BigRational::one()]];
    for j in 1..=k {
        let prev = &powers[j - 1];
        let mut next = vec![BigRational::zero(); 2 * j + 1];
        for (i, a) in prev.iter().enumerate() {
            next[i] += a * c;
            next[i + 2] += a;
        }
        powers.push(next);
    }
    let mut fold = vec![BigRational::zero(); k + 1];
    for j in (0..=k).rev() {
        let bj = rest[k + j].clone();
        for (i, a) in powers[j].iter().enumerate() {
            rest[k - j + i] -= &bj * a;
        }
        fold[j] = bj;
    }
    if rest.iter().any(|a| !a.is_zero()) {
        return None;
    }
    let den = fold.iter().fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
    Some(IntPoly::new(fold.iter().map(|a| (a * BigRational::from_integer(den.clone())).to_integer()).collect()).primitive())
}

/// Upper half-plane roots of the square-free `s` on the circle `|z|^2 = c`,
/// or `None` if `s` has a root outside it.
fn split_at_radius(s: &IntPoly, mult: usize, c: &BigRational) -> Result<Option<Vec<RootBox>>> {
    let n = s.deg();
    let (a, b) = (c.numer(), c.denom());
    // b^n z^n s(c/z); its common roots with s are the z with c/z also a root
    let star = IntPoly::new(
        (0..=n).map(|j| s.coeff(n - j) * Pow::pow(a, n - j) * Pow::pow(b, j)).collect(),
    );
    let g = gcd_primitive(s, &star);
    let g1 = g
        .exact_div(&gcd_primitive(&g, &square_minus(c, 1)))
        .ok_or_else(|| Error::Internal("reciprocal part does not divide".into()))?;
    if !g1.is_constant() {
        let fold = fold_reciprocal(&g1, c).ok_or_else(|| Error::Internal("reciprocal part has the wrong shape".into()))?;
        let two_r = isolate_real_roots(&square_minus(c, 4))?.pop().expect("positive root").0;
        let minus_two_r = two_r.negate();
        let on: usize = isolate_real_roots(&fold)?
            .iter()
            .filter(|(t, _)| compare(t, &two_r) == Ordering::Less && compare(t, &minus_two_r) == Ordering::Greater)
            .map(|(_, m)| m)
            .sum();
        if on != fold.deg() {
            return Ok(None);
        }
    }
    let mut found = Vec::new();
    for mut bx in isolate_sqfree(s, mult)? {
        if let Some(r) = bx.real_root() {
            if sign_at(&square_minus(c, 1), r) == 0 {
                continue;
            }
            let mut r = r.clone();
            for _ in 0..REFINE_CAP {
                let (lo2, hi2) = (r.lo() * r.lo(), r.hi() * r.hi());
                let same_sign = r.lo().is_positive() || r.hi().is_negative();
                if same_sign && lo2.clone().min(hi2.clone()) > *c {
                    return Ok(None);
                }
                if lo2.max(hi2) < *c {
                    break;
                }
                r = r.refine();
            }
            continue;
        }
        if !bx.is_upper() {
            continue;
        }
        let mut on_circle = None;
        for _ in 0..REFINE_CAP {
            match count_roots_in_rect(&g, bx.rect()) {
                Some(1) => on_circle = Some(true),
                Some(0) => {
                    let (lo, hi) = bx.rect().modulus_sq();
                    if lo > *c {
                        return Ok(None);
                    }
                    if hi < *c {
                        on_circle = Some(false);
                    }
                }
                _ => {}
            }
            if on_circle.is_some() {
                break;
            }
            bx = bx.refine()?;
        }
        match on_circle {
            Some(true) => found.push(bx),
            Some(false) => {}
            None => return internal("refinement cap reached against the circle"),
        }
    }
    Ok(Some(found))
}

/// Multiplicity of `alpha` as a root of `p`.
pub(crate) fn root_multiplicity(p: &IntPoly, alpha: &RealAlgebraic) -> usize {
    let mut d = p.clone();
    let mut k = 0;
    while !d.is_zero() && sign_at(&d, alpha) == 0 {
        k += 1;
        d = d.derivative();
    }
    k
}

/// Which of `-x_plus` and the upper half-plane non-real roots lie on the
/// circle `|z| = x_plus`. Requires that no root lies outside the circle.
pub fn roots_on_circle(f: &IntPoly, x_plus: &RealAlgebraic) -> Result<(bool, Vec<RootBox>)> {
    check_xplus(f, x_plus)?;
    let outside = || Err(Error::Precondition("f has a root outside the circle".into()));
    let has_minus = sign_at(f, &x_plus.negate()) == 0;
    let mut found = Vec::new();
    if let Some(c) = rational_square(x_plus) {
        for (s, e) in &sqfree_decompose(f)?.factors {
            match split_at_radius(s, *e, &c)? {
                Some(b) => found.extend(b),
                None => return outside(),
            }
        }
        make_disjoint(&mut found)?;
        return Ok((has_minus, found));
    }
    let x2 = x_plus.pow_positive(2)?;
    for (s, e) in &sqfree_decompose(f)?.factors {
        let r = resultant_product(s)?;
        if product_root_above(&r, &x2)? {
            return outside();
        }
        let m = root_multiplicity(&r, &x2);
        let n = usize::from(sign_at(s, &x_plus.negate()) == 0);
        let p = usize::from(sign_at(s, x_plus) == 0);
        let census = m
            .checked_sub(n + p)
            .filter(|c| c % 2 == 0)
            .ok_or_else(|| Error::Internal("inconsistent on-circle census".into()))?;
        if census == 0 {
            continue;
        }
        let mut boxes: Vec<RootBox> = isolate_sqfree(s, *e)?.into_iter().filter(|b| b.is_upper()).collect();
        let mut x = x_plus.clone();
        let mut done = false;
        for _ in 0..REFINE_CAP {
            if x.lo().is_positive() || x.is_rational() {
                let a2 = x.lo() * x.lo();
                let b2 = x.hi() * x.hi();
                let meets: Vec<bool> = boxes
                    .iter()
                    .map(|b| {
                        let (lo, hi) = b.rect().modulus_sq();
                        lo <= b2 && a2 <= hi
                    })
                    .collect();
                let k = meets.iter().filter(|&&t| t).count();
                if k == census / 2 {
                    found.extend(boxes.into_iter().zip(meets).filter(|(_, t)| *t).map(|(b, _)| b));
                    done = true;
                    break;
                }
                for (b, t) in boxes.iter_mut().zip(&meets) {
                    if *t {
                        *b = b.refine()?;
                    }
                }
            }
            x = x.refine();
        }
        if !done {
            return internal("refinement cap reached locating roots on the circle");
        }
    }
    make_disjoint(&mut found)?;
    Ok((has_minus, found))
}

/// Order of a root of unity that is a root of the square-free `h`, given a
/// stream of shrinking boxes around it; `None` if it is not a root of unity.
pub(crate) fn unit_ratio_order(h: &IntPoly, mut next_box: impl FnMut() -> Result<Rect>) -> Result<Option<u64>> {
    let d = h.deg() as u64;
    let candidates: Vec<(u64, IntPoly)> = (1..=2 * d * d)
        .filter(|&m| euler_phi(m) <= d)
        .map(|m| (m, cyclotomic(m as usize)))
        .filter(|(_, c)| c.divides(h))
        .collect();
    if candidates.is_empty() {
        return Ok(None);
    }
    for _ in 0..REFINE_CAP {
        let r = next_box()?;
        if r.width().is_zero() || r.height().is_zero() || count_roots_in_rect(h, &r) != Some(1) {
            continue;
        }
        for (m, c) in &candidates {
            if count_roots_in_rect(c, &r).is_some_and(|k| k > 0) {
                return Ok(Some(*m));
            }
        }
        return Ok(None);
    }
    internal("refinement cap reached in root-of-unity test")
}

/// Least `m` with `(z / x_plus)^m = 1`, if any.
pub fn ratio_order(f: &IntPoly, z: &RootBox, x_plus: &RealAlgebraic, max_deg: usize) -> Result<Option<u64>> {
    check_xplus(f, x_plus)?;
    if !z.defining().divides(&sqfree_part(f)) {
        return Err(Error::Precondition("box is not a root box of f".into()));
    }
    let h = sqfree_part(&resultant_ratio(x_plus.defining(), z.defining())?);
    if h.deg() > max_deg {
        return Err(Error::Precondition(format!("degree bound {max_deg} below {}", h.deg())));
    }
    let mut zb = z.clone();
    let mut x = x_plus.clone();
    unit_ratio_order(&h, || {
        zb = zb.refine()?;
        x = x.refine();
        while !x.lo().is_positive() {
            x = x.refine();
        }
        Ok(zb.rect().div_positive(x.lo(), x.hi()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::isolate_real_roots;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn positive_root(f: &IntPoly) -> RealAlgebraic {
        isolate_real_roots(f).unwrap().into_iter().map(|(r, _)| r).find(|r| r.sign() > 0).unwrap()
    }

    #[test]
    fn outside_examples() {
        let f = p(&[-6, 1, 1]);
        assert!(has_root_outside(&f, &positive_root(&f)).unwrap());
        let f = p(&[-2, 1]);
        assert!(!has_root_outside(&f, &positive_root(&f)).unwrap());
        let f = &p(&[-2, 0, 1]) * &p(&[2, -2, 1]);
        assert!(!has_root_outside(&f, &positive_root(&f)).unwrap());
        assert!(has_root_outside(&f, &RealAlgebraic::integer(3)).is_err());
    }

    #[test]
    fn circle_examples() {
        let f = &p(&[-2, 0, 1]) * &p(&[1, 1]);
        let (minus, boxes) = roots_on_circle(&f, &positive_root(&f)).unwrap();
        assert!(minus && boxes.is_empty());

        let f = &p(&[-2, 0, 1]) * &p(&[2, -2, 1]);
        let xp = positive_root(&f);
        let (minus, boxes) = roots_on_circle(&f, &xp).unwrap();
        assert!(minus);
        assert_eq!(boxes.len(), 1);
        let one = num_rational::BigRational::from_integer(1.into());
        assert!(boxes[0].rect().contains(&one, &one));
        assert_eq!(ratio_order(&f, &boxes[0], &xp, 16).unwrap(), Some(8));

        let f = p(&[-2, 1]);
        assert_eq!(roots_on_circle(&f, &positive_root(&f)).unwrap(), (false, vec![]));
    }

    #[test]
    fn ratio_examples() {
        let f = &p(&[-2, 0, 1]) * &p(&[1, 1]);
        let xp = positive_root(&f);
        let neg = crate::algebraic::isolate_complex_roots(&p(&[-2, 0, 1])).unwrap()[0].clone();
        assert_eq!(ratio_order(&f, &neg, &xp, 9).unwrap(), Some(2));

        let f = &p(&[-5, 0, 1]) * &p(&[5, -2, 1]);
        let xp = positive_root(&f);
        let (_, boxes) = roots_on_circle(&f, &xp).unwrap();
        assert_eq!(boxes.len(), 1);
        assert_eq!(ratio_order(&f, &boxes[0], &xp, 16).unwrap(), None);
    }
}
