use num_bigint::BigInt;
use num_traits::Signed;

use super::IntPoly;
use crate::error::{Error, Result};

/// Primitive gcd with positive leading coefficient; `gcd(0, 0) = 0`.
pub fn gcd_primitive(p: &IntPoly, q: &IntPoly) -> IntPoly {
    if p.is_zero() {
        return q.primitive();
    }
    if q.is_zero() {
        return p.primitive();
    }
    let mut a = p.primitive();
    let mut b = q.primitive();
    if a.deg() < b.deg() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        if b.is_constant() {
            return IntPoly::one();
        }
        let r = a.pseudo_rem(&b);
        a = b;
        b = r.primitive();
    }
    a.primitive()
}

/// Square-free decomposition `p = content * prod factor^mult`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqfDecomp {
    /// Signed content; carries the sign of the leading coefficient.
    pub content: BigInt,
    /// Primitive, square-free, pairwise coprime, positive leading coefficient.
    pub factors: Vec<(IntPoly, usize)>,
}

impl SqfDecomp {
    pub fn reconstruct(&self) -> IntPoly {
        let mut acc = IntPoly::constant(self.content.clone());
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e);
        }
        acc
    }

    /// Product of the distinct factors.
    pub fn radical(&self) -> IntPoly {
        self.factors.iter().fold(IntPoly::one(), |acc, (f, _)| &acc * f)
    }
}

/// Yun's algorithm over the integers.
pub fn sqfree_decompose(p: &IntPoly) -> Result<SqfDecomp> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut content = p.content();
    if p.lc_ref().is_negative() {
        content = -content;
    }
    let a = p.primitive();
    let mut factors = Vec::new();
    if a.is_constant() {
        return Ok(SqfDecomp { content, factors });
    }
    let da = a.derivative();
    let g = gcd_primitive(&a, &da);
    let mut b = a.exact_div(&g).expect("gcd divides input");
    let c = exact_div_rational(&da, &g);
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        let ai = gcd_primitive(&b, &d);
        if !ai.is_constant() {
            factors.push((ai.clone(), i));
        }
        b = b.exact_div(&ai).expect("gcd divides");
        let ci = exact_div_rational(&d, &ai);
        d = &ci - &b.derivative();
        i += 1;
    }
    Ok(SqfDecomp { content, factors })
}

/// Primitive square-free part with positive leading coefficient.
pub fn sqfree_part(p: &IntPoly) -> IntPoly {
    if p.is_zero() {
        return IntPoly::zero();
    }
    let a = p.primitive();
    if a.is_constant() {
        return IntPoly::one();
    }
    let g = gcd_primitive(&a, &a.derivative());
    a.exact_div(&g).expect("gcd divides").primitive()
}

/// `num / den` where `den` is primitive and divides `num` over `Q`; the quotient
/// is then integral by Gauss's lemma.
fn exact_div_rational(num: &IntPoly, den: &IntPoly) -> IntPoly {
    if num.is_zero() {
        return IntPoly::zero();
    }
    if let Some(q) = num.exact_div(den) {
        return q;
    }
    let c = num.content();
    let q = num.div_scalar_exact(&c).exact_div(den).expect("primitive divisor");
    q.scale(&c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_primitive(&p(&[-1, 0, 1]), &p(&[-1, 1])), p(&[-1, 1]));
        assert_eq!(gcd_primitive(&p(&[1, 0, 1]), &p(&[-1, 1])), IntPoly::one());
        assert_eq!(gcd_primitive(&p(&[-2, 0, 2]), &p(&[4, 4])), p(&[1, 1]));
        assert_eq!(gcd_primitive(&IntPoly::zero(), &IntPoly::zero()), IntPoly::zero());
    }

    #[test]
    fn yun_examples() {
        // (x-1)^2 (x+3) = x^3 + x^2 - 5x + 3
        let d = sqfree_decompose(&p(&[3, -5, 1, 1])).unwrap();
        assert_eq!(d.factors, vec![(p(&[3, 1]), 1), (p(&[-1, 1]), 2)]);
        assert_eq!(d.content, BigInt::one());
        let d = sqfree_decompose(&p(&[-1, 0, 0, 1])).unwrap();
        assert_eq!(d.factors, vec![(p(&[-1, 0, 0, 1]), 1)]);
        let d = sqfree_decompose(&p(&[4, -8, 4])).unwrap();
        assert_eq!(d.factors, vec![(p(&[-1, 1]), 2)]);
        assert_eq!(d.content, BigInt::from(4));
        assert!(sqfree_decompose(&IntPoly::zero()).is_err());
    }

    #[test]
    fn negative_leading_coefficient_keeps_sign_in_content() {
        let f = p(&[1, 0, -1]);
        let d = sqfree_decompose(&f).unwrap();
        assert_eq!(d.content, BigInt::from(-1));
        assert_eq!(d.reconstruct(), f);
    }
}
