use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{internal, Error, Result};
use crate::zx::{gcd_primitive, rat_sign, resultant_power, sqfree_decompose, sqfree_part, IntPoly};

pub(crate) const REFINE_CAP: usize = 10_000;

/// A real algebraic number: a root of a square-free defining polynomial
/// inside a rational isolating interval.
///
/// Either `lo == hi` (a rational number, with a linear defining polynomial) or
/// `lo < hi`, the defining polynomial is nonzero at both endpoints and has
/// exactly one root strictly between them.
#[derive(Clone, PartialEq, Eq)]
pub struct RealAlgebraic {
    defining: IntPoly,
    lo: BigRational,
    hi: BigRational,
}

/// Sign of `p` just to the right of `a`.
fn sign_right_of(p: &IntPoly, a: &BigRational) -> i32 {
    let mut d = p.clone();
    while !d.is_zero() {
        let s = d.sign_at_rat(a);
        if s != 0 {
            return s;
        }
        d = d.derivative();
    }
    0
}

/// Sign of `p` just to the left of `a`.
fn sign_left_of(p: &IntPoly, a: &BigRational) -> i32 {
    let mut d = p.clone();
    let mut k = 0;
    while !d.is_zero() {
        let s = d.sign_at_rat(a);
        if s != 0 {
            return if k % 2 == 0 { s } else { -s };
        }
        d = d.derivative();
        k += 1;
    }
    0
}

impl RealAlgebraic {
    pub fn rational(r: BigRational) -> Self {
        let defining = IntPoly::new(vec![-r.numer().clone(), r.denom().clone()]).primitive();
        RealAlgebraic { defining, lo: r.clone(), hi: r }
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    /// Caller guarantees the isolation invariant.
    pub(crate) fn from_parts(defining: IntPoly, lo: BigRational, hi: BigRational) -> Self {
        if lo == hi {
            return Self::rational(lo);
        }
        RealAlgebraic { defining: defining.primitive(), lo, hi }
    }

    pub fn defining(&self) -> &IntPoly {
        &self.defining
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn is_rational(&self) -> bool {
        self.lo == self.hi
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.lo)
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// Midpoint approximation, for display only.
    pub fn to_f64(&self) -> f64 {
        let mid = (&self.lo + &self.hi) / BigRational::from_integer(2.into());
        mid.to_f64().unwrap_or(f64::NAN)
    }

    /// Halve the isolating interval.
    pub fn refine(&self) -> RealAlgebraic {
        if self.is_rational() {
            return self.clone();
        }
        let mid = (&self.lo + &self.hi) / BigRational::from_integer(2.into());
        let sm = self.defining.sign_at_rat(&mid);
        if sm == 0 {
            return Self::rational(mid);
        }
        let sl = sign_right_of(&self.defining, &self.lo);
        if sl != sm {
            RealAlgebraic { defining: self.defining.clone(), lo: self.lo.clone(), hi: mid }
        } else {
            RealAlgebraic { defining: self.defining.clone(), lo: mid, hi: self.hi.clone() }
        }
    }

    pub fn refine_to_width(&self, w: &BigRational) -> RealAlgebraic {
        let mut a = self.clone();
        while !a.is_rational() && &a.width() > w {
            a = a.refine();
        }
        a
    }

    /// Sign of the number itself.
    pub fn sign(&self) -> i32 {
        match compare_rational(self, &BigRational::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn negate(&self) -> RealAlgebraic {
        if self.is_rational() {
            return Self::rational(-&self.lo);
        }
        RealAlgebraic {
            defining: self.defining.negate_var().primitive(),
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    /// `self^k` for a positive number.
    pub fn pow_positive(&self, k: usize) -> Result<RealAlgebraic> {
        if self.sign() <= 0 {
            return Err(Error::Precondition("pow_positive needs a positive number".into()));
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::rational(num_traits::pow(r.clone(), k)));
        }
        let target = resultant_power(&self.defining, k)?;
        if target.deg() == 1 {
            return Ok(Self::rational(BigRational::new(-target.coeff(0), target.coeff(1))));
        }
        let mut a = self.clone();
        for _ in 0..REFINE_CAP {
            if a.lo.is_positive() {
                let lo = num_traits::pow(a.lo.clone(), k);
                let hi = num_traits::pow(a.hi.clone(), k);
                if target.sign_at_rat(&lo) != 0
                    && target.sign_at_rat(&hi) != 0
                    && descartes_bound(&target, &lo, &hi) == 1
                {
                    return Ok(RealAlgebraic { defining: target, lo, hi });
                }
            }
            a = a.refine();
            if let Some(r) = a.as_rational() {
                return Ok(Self::rational(num_traits::pow(r.clone(), k)));
            }
        }
        internal("refinement cap reached in pow_positive")
    }
}

impl fmt::Debug for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "root of {} in ({}, {})", self.defining, self.lo, self.hi)
        }
    }
}

/// `den * p(a + b t)` cleared to an integer polynomial in `t` (positive scaling).
pub(crate) fn compose_affine(p: &IntPoly, a: &BigRational, b: &BigRational) -> IntPoly {
    // d^n p((A + B t)/d) with A = a d, B = b d
    let d = a.denom().lcm(b.denom());
    let lin = IntPoly::new(vec![a.numer() * (&d / a.denom()), b.numer() * (&d / b.denom())]);
    let mut acc = IntPoly::zero();
    let mut dk = BigInt::one();
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * &lin) + &IntPoly::constant(c * &dk);
        dk *= &d;
    }
    acc
}

fn sign_variations(p: &IntPoly) -> usize {
    let mut last = 0;
    let mut v = 0;
    for c in p.coeffs() {
        let s = crate::zx::sign(c);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

/// Descartes bound on the roots of a polynomial in the open unit interval.
fn descartes_unit(p: &IntPoly) -> usize {
    sign_variations(&p.reverse().taylor_shift_one())
}

/// Descartes bound for the open interval `(lo, hi)`, `lo < hi`.
pub(crate) fn descartes_bound(p: &IntPoly, lo: &BigRational, hi: &BigRational) -> usize {
    descartes_unit(&compose_affine(p, lo, &(hi - lo)))
}

enum UnitRoot {
    Exact(BigInt, u32),
    Open(BigInt, u32),
}

/// Roots of a square-free polynomial in the open unit interval, as dyadic
/// points or open dyadic intervals `(c/2^k, (c+1)/2^k)`.
fn isolate_unit(p: &IntPoly) -> Result<Vec<UnitRoot>> {
    let mut out = Vec::new();
    let mut stack = vec![(p.clone(), BigInt::zero(), 0u32)];
    let mut steps = 0usize;
    while let Some((q, c, k)) = stack.pop() {
        steps += 1;
        if steps > 4 * REFINE_CAP {
            return internal("bisection cap reached in real root isolation");
        }
        match descartes_unit(&q) {
            0 => continue,
            1 => {
                out.push(UnitRoot::Open(c, k));
                continue;
            }
            _ => {}
        }
        let n = q.deg();
        let two = BigInt::from(2);
        let left = IntPoly::new(
            q.coeffs()
                .iter()
                .enumerate()
                .map(|(i, a)| a * two.pow((n - i) as u32))
                .collect(),
        );
        let mut right = left.taylor_shift_one();
        let c2 = &c * 2;
        if right.coeff(0).is_zero() {
            out.push(UnitRoot::Exact(&c2 + 1, k + 1));
            right = right.unshift(1);
        }
        stack.push((right, &c2 + 1, k + 1));
        stack.push((left, c2, k + 1));
    }
    Ok(out)
}

fn dyadic(c: &BigInt, k: u32) -> BigRational {
    BigRational::new(c.clone(), BigInt::from(2).pow(k))
}

/// Roots of a square-free `p` in the open interval `(lo, hi)`.
pub(crate) fn isolate_in_interval(p: &IntPoly, lo: &BigRational, hi: &BigRational) -> Result<Vec<RealAlgebraic>> {
    let width = hi - lo;
    let q = compose_affine(p, lo, &width);
    let mut roots = Vec::new();
    for r in isolate_unit(&q)? {
        let alpha = match r {
            UnitRoot::Exact(c, k) => RealAlgebraic::rational(lo + &width * dyadic(&c, k)),
            UnitRoot::Open(c, k) => {
                let a = lo + &width * dyadic(&c, k);
                let b = lo + &width * dyadic(&(c + 1), k);
                RealAlgebraic::from_parts(p.clone(), a, b)
            }
        };
        roots.push(alpha);
    }
    roots.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(roots)
}

/// Power of two strictly above every root modulus.
pub(crate) fn root_bound(p: &IntPoly) -> BigRational {
    let lc = p.lc().abs();
    let m = p.coeffs()[..p.deg()].iter().map(|c| c.abs()).max().unwrap_or_default();
    let bound = num_integer::Integer::div_ceil(&m, &lc) + 1;
    let mut b = BigInt::one();
    while b <= bound {
        b *= 2;
    }
    BigRational::from_integer(b)
}

/// Distinct real roots of a square-free polynomial, ascending.
pub(crate) fn real_roots_sqfree(s: &IntPoly) -> Result<Vec<RealAlgebraic>> {
    if s.is_constant() {
        return Ok(Vec::new());
    }
    let mut roots = Vec::new();
    let mut core = s.clone();
    if core.coeff(0).is_zero() {
        roots.push(RealAlgebraic::integer(0));
        core = core.unshift(1);
    }
    if !core.is_constant() {
        let b = root_bound(&core);
        let zero = BigRational::zero();
        let neg = core.negate_var();
        for r in isolate_in_interval(&neg, &zero, &b)? {
            let r = RealAlgebraic::from_parts(neg.clone(), r.lo, r.hi);
            roots.push(r.negate().with_defining(s));
        }
        for r in isolate_in_interval(&core, &zero, &b)? {
            roots.push(r.with_defining(s));
        }
    }
    roots.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(roots)
}

impl RealAlgebraic {
    /// Swap in another square-free defining polynomial that shares this root
    /// and has no other root in the interval (a multiple of the current one).
    fn with_defining(self, s: &IntPoly) -> RealAlgebraic {
        if self.is_rational() {
            return self;
        }
        RealAlgebraic { defining: s.primitive(), ..self }
    }
}

/// Distinct real roots with multiplicities; intervals pairwise disjoint.
pub fn isolate_real_roots(p: &IntPoly) -> Result<Vec<(RealAlgebraic, usize)>> {
    let dec = sqfree_decompose(p)?;
    let mut all = Vec::new();
    for (f, e) in &dec.factors {
        for r in real_roots_sqfree(f)? {
            all.push((r, *e));
        }
    }
    separate(&mut all)?;
    Ok(all)
}

/// Refine until the closed intervals are pairwise disjoint, then sort.
fn separate(items: &mut [(RealAlgebraic, usize)]) -> Result<()> {
    for _ in 0..REFINE_CAP {
        items.sort_by(|a, b| a.0.lo.cmp(&b.0.lo));
        let mut clean = true;
        for i in 1..items.len() {
            if items[i - 1].0.hi >= items[i].0.lo {
                clean = false;
                items[i - 1].0 = items[i - 1].0.refine();
                items[i].0 = items[i].0.refine();
            }
        }
        if clean {
            return Ok(());
        }
    }
    internal("refinement cap reached separating real roots")
}

/// Number of roots in `(0, ∞)` counted with multiplicity.
pub fn count_positive_roots(p: &IntPoly) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let dec = sqfree_decompose(p)?;
    let mut n = 0;
    for (f, e) in &dec.factors {
        let core = f.unshift(f.valuation());
        if core.is_constant() {
            continue;
        }
        let b = root_bound(&core);
        n += e * isolate_in_interval(&core, &BigRational::zero(), &b)?.len();
    }
    Ok(n)
}

const QUICK_REFINE: usize = 24;

/// Exact sign of `p(α)`.
pub fn sign_at(p: &IntPoly, alpha: &RealAlgebraic) -> i32 {
    if p.is_zero() {
        return 0;
    }
    if let Some(r) = alpha.as_rational() {
        return p.sign_at_rat(r);
    }
    // cheap attempt before the gcd test
    let mut a = alpha.clone();
    for _ in 0..QUICK_REFINE {
        if let Some(r) = a.as_rational() {
            return p.sign_at_rat(r);
        }
        if descartes_bound(p, &a.lo, &a.hi) == 0 {
            let mid = (&a.lo + &a.hi) / BigRational::from_integer(2.into());
            return p.sign_at_rat(&mid);
        }
        a = a.refine();
    }
    let g = gcd_primitive(p, &alpha.defining);
    if !g.is_constant() && sign_right_of(&g, &alpha.lo) != sign_left_of(&g, &alpha.hi) {
        return 0;
    }
    for _ in 0..REFINE_CAP {
        if let Some(r) = a.as_rational() {
            return p.sign_at_rat(r);
        }
        if descartes_bound(p, &a.lo, &a.hi) == 0 {
            let mid = (&a.lo + &a.hi) / BigRational::from_integer(2.into());
            return p.sign_at_rat(&mid);
        }
        a = a.refine();
    }
    panic!("refinement cap reached in sign_at");
}

fn compare_rational(a: &RealAlgebraic, r: &BigRational) -> Ordering {
    let mut a = a.clone();
    if let Some(q) = a.as_rational() {
        return q.cmp(r);
    }
    for _ in 0..REFINE_CAP {
        // the isolating interval is open
        if r <= &a.lo {
            return Ordering::Greater;
        }
        if r >= &a.hi {
            return Ordering::Less;
        }
        if a.defining.sign_at_rat(r) == 0 {
            return Ordering::Equal;
        }
        a = a.refine();
        if let Some(q) = a.as_rational() {
            return q.cmp(r);
        }
    }
    panic!("refinement cap reached in compare");
}

/// Exact comparison of two real algebraic numbers.
pub fn compare(a: &RealAlgebraic, b: &RealAlgebraic) -> Ordering {
    if let Some(r) = b.as_rational() {
        return compare_rational(a, r);
    }
    if let Some(r) = a.as_rational() {
        return compare_rational(b, r).reverse();
    }
    let root_of_b = sign_at(&b.defining, a) == 0;
    let (mut a, mut b) = (a.clone(), b.clone());
    for _ in 0..REFINE_CAP {
        if a.hi < b.lo {
            return Ordering::Less;
        }
        if b.hi < a.lo {
            return Ordering::Greater;
        }
        if root_of_b {
            if b.lo <= a.lo && a.hi <= b.hi {
                return Ordering::Equal;
            }
            a = a.refine();
            if let Some(r) = a.as_rational() {
                return compare_rational(&b, r).reverse();
            }
        } else {
            a = a.refine();
            b = b.refine();
            if let Some(r) = a.as_rational() {
                return compare_rational(&b, r).reverse();
            }
            if let Some(r) = b.as_rational() {
                return compare_rational(&a, r);
            }
        }
    }
    panic!("refinement cap reached in compare");
}

/// Compare against a rational number.
pub fn compare_to_rational(a: &RealAlgebraic, r: &BigRational) -> Ordering {
    compare_rational(a, r)
}

/// Sturm count of distinct real roots of `p` in `(lo, hi]`.
pub fn sturm_count(p: &IntPoly, lo: &BigRational, hi: &BigRational) -> usize {
    let s = sqfree_part(p);
    if s.is_constant() {
        return 0;
    }
    let mut seq = vec![s.to_rat(), s.derivative().to_rat()];
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(r.scale(&-BigRational::one()));
    }
    let var = |x: &BigRational| {
        let mut last = 0;
        let mut v = 0;
        for q in &seq {
            let s = rat_sign(&q.eval(x));
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    };
    var(lo) - var(hi)
}
