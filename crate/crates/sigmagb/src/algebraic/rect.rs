use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Closed rational rectangle in the complex plane.
#[derive(Clone, PartialEq, Eq)]
pub struct Rect {
    pub re_lo: BigRational,
    pub re_hi: BigRational,
    pub im_lo: BigRational,
    pub im_hi: BigRational,
}

fn min2(a: BigRational, b: BigRational) -> BigRational {
    if a <= b {
        a
    } else {
        b
    }
}

fn max2(a: BigRational, b: BigRational) -> BigRational {
    if a >= b {
        a
    } else {
        b
    }
}

/// Product of two closed intervals.
pub(crate) fn imul(a: (&BigRational, &BigRational), b: (&BigRational, &BigRational)) -> (BigRational, BigRational) {
    let p = [a.0 * b.0, a.0 * b.1, a.1 * b.0, a.1 * b.1];
    let lo = p.iter().min().unwrap().clone();
    let hi = p.iter().max().unwrap().clone();
    (lo, hi)
}

/// Range of `t^2` over `[lo, hi]`.
pub(crate) fn isq(lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
    let a = lo * lo;
    let b = hi * hi;
    if !lo.is_positive() && !hi.is_negative() {
        (BigRational::zero(), max2(a, b))
    } else {
        (min2(a.clone(), b.clone()), max2(a, b))
    }
}

impl Rect {
    pub fn new(re_lo: BigRational, re_hi: BigRational, im_lo: BigRational, im_hi: BigRational) -> Self {
        debug_assert!(re_lo <= re_hi && im_lo <= im_hi);
        Rect { re_lo, re_hi, im_lo, im_hi }
    }

    pub fn conj(&self) -> Rect {
        Rect::new(self.re_lo.clone(), self.re_hi.clone(), -&self.im_hi, -&self.im_lo)
    }

    pub fn width(&self) -> BigRational {
        &self.re_hi - &self.re_lo
    }

    pub fn height(&self) -> BigRational {
        &self.im_hi - &self.im_lo
    }

    /// Closed rectangles share at least one point.
    pub fn intersects(&self, o: &Rect) -> bool {
        self.re_lo <= o.re_hi && o.re_lo <= self.re_hi && self.im_lo <= o.im_hi && o.im_lo <= self.im_hi
    }

    pub fn contains(&self, re: &BigRational, im: &BigRational) -> bool {
        &self.re_lo <= re && re <= &self.re_hi && &self.im_lo <= im && im <= &self.im_hi
    }

    /// Range of `|z|^2` over the rectangle.
    pub fn modulus_sq(&self) -> (BigRational, BigRational) {
        let (a, b) = isq(&self.re_lo, &self.re_hi);
        let (c, d) = isq(&self.im_lo, &self.im_hi);
        (a + c, b + d)
    }

    /// Enclosure of `{z / t : z in self, t in [lo, hi]}` for `0 < lo <= hi`.
    pub fn div_positive(&self, lo: &BigRational, hi: &BigRational) -> Rect {
        debug_assert!(lo.is_positive());
        let inv = (hi.recip(), lo.recip());
        let (rl, rh) = imul((&self.re_lo, &self.re_hi), (&inv.0, &inv.1));
        let (il, ih) = imul((&self.im_lo, &self.im_hi), (&inv.0, &inv.1));
        Rect::new(rl, rh, il, ih)
    }

    /// Enclosure of the product set.
    pub fn mul(&self, o: &Rect) -> Rect {
        let ac = imul((&self.re_lo, &self.re_hi), (&o.re_lo, &o.re_hi));
        let bd = imul((&self.im_lo, &self.im_hi), (&o.im_lo, &o.im_hi));
        let ad = imul((&self.re_lo, &self.re_hi), (&o.im_lo, &o.im_hi));
        let bc = imul((&self.im_lo, &self.im_hi), (&o.re_lo, &o.re_hi));
        Rect::new(&ac.0 - &bd.1, &ac.1 - &bd.0, &ad.0 + &bc.0, &ad.1 + &bc.1)
    }

    /// Enclosure of `z^2`; tighter than `self.mul(self)`.
    pub fn square(&self) -> Rect {
        let (a, b) = isq(&self.re_lo, &self.re_hi);
        let (c, d) = isq(&self.im_lo, &self.im_hi);
        let (p, q) = imul((&self.re_lo, &self.re_hi), (&self.im_lo, &self.im_hi));
        Rect::new(&a - &d, &b - &c, &p + &p, &q + &q)
    }

    /// Counterclockwise corners starting at the lower left.
    pub(crate) fn corners(&self) -> [(BigRational, BigRational); 4] {
        [
            (self.re_lo.clone(), self.im_lo.clone()),
            (self.re_hi.clone(), self.im_lo.clone()),
            (self.re_hi.clone(), self.im_hi.clone()),
            (self.re_lo.clone(), self.im_hi.clone()),
        ]
    }
}

impl fmt::Debug for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}] x [{}, {}]i", self.re_lo, self.re_hi, self.im_lo, self.im_hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn square_encloses_samples() {
        let r = Rect::new(q(-1, 2), q(1, 1), q(1, 3), q(2, 1));
        let s = r.square();
        for (x, y) in [(q(-1, 2), q(1, 3)), (q(1, 1), q(2, 1)), (q(0, 1), q(1, 1)), (q(1, 4), q(3, 2))] {
            let re = &x * &x - &y * &y;
            let im = &x * &y * q(2, 1);
            assert!(s.contains(&re, &im));
            let m = r.mul(&r);
            assert!(m.contains(&re, &im));
        }
    }

    #[test]
    fn modulus_range_spans_origin() {
        let r = Rect::new(q(-1, 1), q(2, 1), q(-1, 1), q(1, 1));
        assert_eq!(r.modulus_sq(), (q(0, 1), q(5, 1)));
    }
}
