use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::real::{descartes_bound, isolate_in_interval, real_roots_sqfree, root_bound, sign_at, RealAlgebraic, REFINE_CAP};
use super::rect::Rect;
use crate::error::{internal, Error, Result};
use crate::zx::{sqfree_decompose, sqfree_part, IntPoly};

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

/// Real and imaginary parts of `p(z0 + t dz)`, scaled by a common positive integer.
fn edge_polys(p: &IntPoly, z0: &(BigRational, BigRational), z1: &(BigRational, BigRational)) -> (IntPoly, IntPoly) {
    let parts = [z0.0.clone(), z0.1.clone(), &z1.0 - &z0.0, &z1.1 - &z0.1];
    let d = parts.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let [a, b, da, db] = parts.map(|c| (c * BigRational::from_integer(d.clone())).to_integer());
    // d·z = lr + i·li
    let lr = IntPoly::new(vec![a, da]);
    let li = IntPoly::new(vec![b, db]);
    let n = p.deg();
    let mut re = IntPoly::constant(p.coeff(n));
    let mut im = IntPoly::zero();
    let mut dk = BigInt::one();
    for k in (0..n).rev() {
        dk *= &d;
        let nre = &(&(&re * &lr) - &(&im * &li)) + &IntPoly::constant(p.coeff(k) * &dk);
        im = &(&re * &li) + &(&im * &lr);
        re = nre;
    }
    let g = re.content().gcd(&im.content());
    if g > BigInt::one() {
        (re.div_scalar_exact(&g), im.div_scalar_exact(&g))
    } else {
        (re, im)
    }
}

#[derive(Clone, Copy, Debug)]
enum Item {
    /// Open arc on which the imaginary part has this sign.
    Piece(i32),
    /// Point or segment on the real axis of the image, with the sign of the real part.
    Zero(i32),
}

/// Sign pattern of one edge over `t in [0, 1)`; `None` if `p` vanishes on the closed edge.
fn edge_items(p: &IntPoly, z0: &(BigRational, BigRational), z1: &(BigRational, BigRational)) -> Option<Vec<Item>> {
    let (u, v) = edge_polys(p, z0, z1);
    let zero = BigRational::zero();
    let one = BigRational::one();
    if v.is_zero() {
        if u.is_zero() {
            return None;
        }
        let s0 = u.sign_at_rat(&zero);
        if s0 == 0 || u.sign_at_rat(&one) == 0 {
            return None;
        }
        let us = sqfree_part(&u);
        if !us.is_constant() && !isolate_in_interval(&us, &zero, &one).ok()?.is_empty() {
            return None;
        }
        return Some(vec![Item::Zero(s0)]);
    }
    let mut items = Vec::new();
    // left bound of the next open arc
    let mut left = zero.clone();
    if v.sign_at_rat(&zero) == 0 {
        let s = u.sign_at_rat(&zero);
        if s == 0 {
            return None;
        }
        items.push(Item::Zero(s));
    }
    let mut roots = match descartes_bound(&v, &zero, &one) {
        0 => Vec::new(),
        1 => isolate_in_interval(&v, &zero, &one).ok()?,
        _ => {
            let vs = sqfree_part(&v);
            isolate_in_interval(&vs, &zero, &one).ok()?
        }
    };
    roots.push(RealAlgebraic::rational(one));
    separate(&mut roots, &left);
    for (i, r) in roots.iter().enumerate() {
        let sample = (&left + r.lo()) * half();
        items.push(Item::Piece(v.sign_at_rat(&sample)));
        if i + 1 == roots.len() {
            break;
        }
        let s = sign_at(&u, r);
        if s == 0 {
            return None;
        }
        items.push(Item::Zero(s));
        left = r.hi().clone();
    }
    Some(items)
}

/// Refine ascending roots until the intervals are pairwise disjoint and lie
/// strictly above `start`, so midpoints between them are never roots.
fn separate(roots: &mut [RealAlgebraic], start: &BigRational) {
    for i in 0..roots.len() {
        while !roots[i].is_rational() && roots[i].lo() <= start {
            roots[i] = roots[i].refine();
        }
        if i == 0 {
            continue;
        }
        let (a, b) = roots.split_at_mut(i);
        let (prev, cur) = (&mut a[i - 1], &mut b[0]);
        while prev.hi() >= cur.lo() {
            if !prev.is_rational() {
                *prev = prev.refine();
            }
            if !cur.is_rational() {
                *cur = cur.refine();
            }
        }
    }
}

/// Number of roots of `p` in the closed rectangle, or `None` if a root lies on
/// its boundary. The rectangle must have positive width and height.
pub fn count_roots_in_rect(p: &IntPoly, r: &Rect) -> Option<usize> {
    debug_assert!(r.re_lo < r.re_hi && r.im_lo < r.im_hi);
    if p.is_constant() {
        return if p.is_zero() { None } else { Some(0) };
    }
    let c = r.corners();
    let mut items = Vec::new();
    for k in 0..4 {
        items.extend(edge_items(p, &c[k], &c[(k + 1) % 4])?);
    }
    // collapse into alternating arcs and zero groups
    let mut seq: Vec<Item> = Vec::new();
    for it in items {
        match (seq.last(), it) {
            (Some(Item::Piece(_)), Item::Piece(_)) | (Some(Item::Zero(_)), Item::Zero(_)) => {}
            _ => seq.push(it),
        }
    }
    if seq.len() > 1
        && matches!(
            (seq[0], seq[seq.len() - 1]),
            (Item::Piece(_), Item::Piece(_)) | (Item::Zero(_), Item::Zero(_))
        )
    {
        seq.pop();
    }
    let n = seq.len();
    if !seq.iter().any(|i| matches!(i, Item::Piece(_))) {
        return None;
    }
    let mut wind: i64 = 0;
    for i in 0..n {
        if let Item::Zero(s) = seq[i] {
            if s <= 0 {
                continue;
            }
            let (Item::Piece(a), Item::Piece(b)) = (seq[(i + n - 1) % n], seq[(i + 1) % n]) else {
                return None;
            };
            wind += match (a, b) {
                (-1, 1) => 1,
                (1, -1) => -1,
                _ => 0,
            };
        }
    }
    usize::try_from(wind).ok()
}

/// A certified complex root: exactly one root of `defining` lies in the closed box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootBox {
    defining: IntPoly,
    rect: Rect,
    multiplicity: usize,
    real: Option<RealAlgebraic>,
}

impl RootBox {
    pub fn defining(&self) -> &IntPoly {
        &self.defining
    }

    pub fn rect(&self) -> &Rect {
        &self.rect
    }

    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    /// The real root, when the box straddles the real axis around one.
    pub fn real_root(&self) -> Option<&RealAlgebraic> {
        self.real.as_ref()
    }

    pub fn is_real(&self) -> bool {
        self.real.is_some()
    }

    /// Strictly above the real axis.
    pub fn is_upper(&self) -> bool {
        self.real.is_none() && self.rect.im_lo > BigRational::zero()
    }

    pub fn conj(&self) -> RootBox {
        RootBox { rect: self.rect.conj(), ..self.clone() }
    }

    fn real_box(defining: &IntPoly, alpha: RealAlgebraic, w: BigRational, h: BigRational, mult: usize) -> RootBox {
        let (lo, hi) = match alpha.as_rational() {
            Some(r) => (r - &w, r + &w),
            None => (alpha.lo().clone(), alpha.hi().clone()),
        };
        RootBox {
            defining: defining.clone(),
            rect: Rect::new(lo, hi, -&h, h),
            multiplicity: mult,
            real: Some(alpha),
        }
    }

    /// A strictly smaller certified box around the same root.
    pub fn refine(&self) -> Result<RootBox> {
        if let Some(alpha) = &self.real {
            let h = &self.rect.im_hi * half();
            if let Some(r) = alpha.as_rational() {
                let w = (&self.rect.re_hi - r) * half();
                return Ok(Self::real_box(&self.defining, alpha.clone(), w, h, self.multiplicity));
            }
            let a = alpha.refine();
            let w = match a.as_rational() {
                Some(r) => std::cmp::min(r - &self.rect.re_lo, &self.rect.re_hi - r) * half(),
                None => BigRational::zero(),
            };
            return Ok(Self::real_box(&self.defining, a, w, h, self.multiplicity));
        }
        for (fx, fy) in split_ratios() {
            // the outer boundary is root-free and the last quadrant's inner
            // edges belong to the first three, so three zero counts settle it
            let kids = quadrisect(&self.rect, &fx, &fy);
            let mut hit = None;
            let mut clean = true;
            for (i, k) in kids[..3].iter().enumerate() {
                match count_roots_in_rect(&self.defining, k) {
                    Some(0) => {}
                    Some(1) => {
                        hit = Some(i);
                        break;
                    }
                    Some(_) => return internal("root lost during box refinement"),
                    None => {
                        clean = false;
                        break;
                    }
                }
            }
            if !clean {
                continue;
            }
            let i = hit.unwrap_or(3);
            return Ok(RootBox { rect: kids[i].clone(), ..self.clone() });
        }
        internal("no admissible split in box refinement")
    }

    /// Refine until both sides are below `w`.
    pub fn refine_to_width(&self, w: &BigRational) -> Result<RootBox> {
        let mut b = self.clone();
        for _ in 0..REFINE_CAP {
            if &b.rect.width() <= w && &b.rect.height() <= w {
                return Ok(b);
            }
            b = b.refine()?;
        }
        internal("refinement cap reached")
    }
}

fn split_ratios() -> impl Iterator<Item = (BigRational, BigRational)> {
    (0..64i64).map(|k| {
        if k == 0 {
            (half(), half())
        } else {
            let a = BigRational::new((k + 1).into(), (2 * k + 3).into());
            let b = BigRational::new((k + 2).into(), (2 * k + 3).into());
            if k % 2 == 0 {
                (a, b)
            } else {
                (b, a)
            }
        }
    })
}

fn quadrisect(r: &Rect, fx: &BigRational, fy: &BigRational) -> [Rect; 4] {
    let mx = &r.re_lo + r.width() * fx;
    let my = &r.im_lo + r.height() * fy;
    [
        Rect::new(r.re_lo.clone(), mx.clone(), r.im_lo.clone(), my.clone()),
        Rect::new(mx.clone(), r.re_hi.clone(), r.im_lo.clone(), my.clone()),
        Rect::new(r.re_lo.clone(), mx.clone(), my.clone(), r.im_hi.clone()),
        Rect::new(mx, r.re_hi.clone(), my, r.im_hi.clone()),
    ]
}

/// Certified boxes around the upper half-plane roots of a square-free `s`,
/// given how many there are.
fn upper_boxes(s: &IntPoly, upper: usize) -> Result<Vec<Rect>> {
    if upper == 0 {
        return Ok(Vec::new());
    }
    let b = root_bound(s);
    let mut h0 = BigRational::one();
    let mut region = None;
    for _ in 0..REFINE_CAP {
        let r = Rect::new(-&b, b.clone(), h0.clone(), b.clone());
        if count_roots_in_rect(s, &r) == Some(upper) {
            region = Some(r);
            break;
        }
        h0 = h0 * half();
    }
    let Some(region) = region else {
        return internal("could not separate upper half-plane roots");
    };
    let mut out = Vec::new();
    let mut stack = vec![(region, upper)];
    let mut steps = 0usize;
    while let Some((r, c)) = stack.pop() {
        steps += 1;
        if steps > 4 * REFINE_CAP {
            return internal("subdivision cap reached in complex isolation");
        }
        if c == 1 {
            out.push(r);
            continue;
        }
        let mut done = false;
        for (fx, fy) in split_ratios() {
            let kids = quadrisect(&r, &fx, &fy);
            let counts: Option<Vec<usize>> = kids.iter().map(|k| count_roots_in_rect(s, k)).collect();
            let Some(counts) = counts else { continue };
            if counts.iter().sum::<usize>() != c {
                return internal("child counts disagree with parent in complex isolation");
            }
            for (k, n) in kids.into_iter().zip(counts) {
                if n > 0 {
                    stack.push((k, n));
                }
            }
            done = true;
            break;
        }
        if !done {
            return internal("no admissible split in complex isolation");
        }
    }
    Ok(out)
}

/// Boxes for every root of a square-free polynomial: real roots first
/// (ascending), then conjugate pairs (upper box followed by its conjugate).
pub(crate) fn isolate_sqfree(s: &IntPoly, mult: usize) -> Result<Vec<RootBox>> {
    let s = s.primitive();
    if s.is_constant() {
        return Ok(Vec::new());
    }
    let n = s.deg();
    let reals = real_roots_sqfree(&s)?;
    let mut out = Vec::new();
    for alpha in &reals {
        let mut w = BigRational::one();
        let mut h = BigRational::one();
        let mut a = alpha.clone();
        let mut found = false;
        for _ in 0..REFINE_CAP {
            let bx = RootBox::real_box(&s, a.clone(), w.clone(), h.clone(), mult);
            if count_roots_in_rect(&s, &bx.rect) == Some(1) {
                out.push(bx);
                found = true;
                break;
            }
            a = a.refine();
            w = w * half();
            h = h * half();
        }
        if !found {
            return internal("could not box a real root");
        }
    }
    let r = reals.len();
    if (n - r) % 2 != 0 {
        return internal("odd number of non-real roots");
    }
    let mut ups = upper_boxes(&s, (n - r) / 2)?;
    ups.sort_by(|a, b| (&a.re_lo, &a.im_lo).cmp(&(&b.re_lo, &b.im_lo)));
    for rect in ups {
        let bx = RootBox { defining: s.clone(), rect, multiplicity: mult, real: None };
        out.push(bx.clone());
        out.push(bx.conj());
    }
    Ok(out)
}

fn conj_index(boxes: &[RootBox], i: usize) -> Option<usize> {
    if boxes[i].is_real() {
        return None;
    }
    let c = boxes[i].rect.conj();
    (0..boxes.len()).find(|&j| j != i && boxes[j].defining == boxes[i].defining && boxes[j].rect == c)
}

/// Refine until the closed boxes are pairwise disjoint, keeping conjugate
/// pairs mirrored.
pub(crate) fn make_disjoint(boxes: &mut [RootBox]) -> Result<()> {
    for _ in 0..REFINE_CAP {
        let mut bad = vec![false; boxes.len()];
        for i in 0..boxes.len() {
            for j in i + 1..boxes.len() {
                if boxes[i].rect.intersects(&boxes[j].rect) {
                    bad[i] = true;
                    bad[j] = true;
                }
            }
        }
        if !bad.iter().any(|&b| b) {
            return Ok(());
        }
        let mut done = vec![false; boxes.len()];
        for i in 0..boxes.len() {
            if !bad[i] || done[i] {
                continue;
            }
            let partner = conj_index(boxes, i);
            boxes[i] = boxes[i].refine()?;
            done[i] = true;
            if let Some(j) = partner {
                boxes[j] = boxes[i].conj();
                done[j] = true;
            }
        }
    }
    internal("refinement cap reached separating root boxes")
}

/// One certified box per distinct complex root, with multiplicities.
pub fn isolate_complex_roots(p: &IntPoly) -> Result<Vec<RootBox>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let dec = sqfree_decompose(p)?;
    let mut out = Vec::new();
    for (f, e) in &dec.factors {
        out.extend(isolate_sqfree(f, *e)?);
    }
    make_disjoint(&mut out)?;
    out.sort_by(|a, b| match (a.real_root(), b.real_root()) {
        (Some(x), Some(y)) => super::real::compare(x, y),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => {
            let ka = (&a.rect.re_lo, a.rect.im_lo.abs());
            let kb = (&b.rect.re_lo, b.rect.im_lo.abs());
            ka.cmp(&kb).then_with(|| b.rect.im_lo.cmp(&a.rect.im_lo))
        }
    });
    Ok(out)
}

#[cfg(test)]
pub(crate) fn rect(a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64)) -> Rect {
    let q = |x: (i64, i64)| BigRational::new(x.0.into(), x.1.into());
    Rect::new(q(a), q(b), q(c), q(d))
}
