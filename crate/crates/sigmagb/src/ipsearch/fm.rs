//! Fourier–Motzkin projection and integer back-substitution.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `a · v ≤ b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Ineq {
    pub a: Vec<BigInt>,
    pub b: BigInt,
    anc: Vec<u64>,
}

impl Ineq {
    pub fn new(a: Vec<BigInt>, b: BigInt, id: usize) -> Ineq {
        let mut anc = vec![0u64; id / 64 + 1];
        anc[id / 64] |= 1 << (id % 64);
        Ineq { a, b, anc }
    }

    fn ancestors(&self) -> u32 {
        self.anc.iter().map(|w| w.count_ones()).sum()
    }

    fn normalize(mut self) -> Ineq {
        let mut g = self.b.abs();
        for c in &self.a {
            g = g.gcd(c);
        }
        if !g.is_zero() && !g.is_one() {
            for c in &mut self.a {
                *c /= &g;
            }
            self.b /= &g;
        }
        self
    }

    fn combine(p: &Ineq, q: &Ineq, k: usize) -> Ineq {
        // p.a[k] > 0, q.a[k] < 0
        let (s, t) = (-&q.a[k], p.a[k].clone());
        let a = p.a.iter().zip(&q.a).map(|(x, y)| x * &s + y * &t).collect();
        let b = &p.b * &s + &q.b * &t;
        let n = p.anc.len().max(q.anc.len());
        let anc = (0..n)
            .map(|i| p.anc.get(i).copied().unwrap_or(0) | q.anc.get(i).copied().unwrap_or(0))
            .collect();
        Ineq { a, b, anc }.normalize()
    }
}

/// Successive projections: `levels[k]` constrains only the first `k` variables.
pub(crate) struct Projection {
    levels: Vec<Vec<Ineq>>,
}

fn dedupe(rows: Vec<Ineq>) -> Vec<Ineq> {
    let mut out: Vec<Ineq> = Vec::with_capacity(rows.len());
    for r in rows {
        if let Some(o) = out.iter_mut().find(|o| o.a == r.a) {
            if r.b < o.b || (r.b == o.b && r.ancestors() < o.ancestors()) {
                *o = r;
            }
        } else {
            out.push(r);
        }
    }
    out
}

impl Projection {
    pub fn new(rows: Vec<Ineq>, nvars: usize) -> Projection {
        let mut levels = vec![Vec::new(); nvars + 1];
        let mut cur = dedupe(rows.into_iter().map(Ineq::normalize).collect());
        for k in (0..nvars).rev() {
            levels[k + 1] = cur.clone();
            let eliminated = nvars - k;
            let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
            for r in cur {
                match r.a[k].sign() {
                    num_bigint::Sign::Plus => pos.push(r),
                    num_bigint::Sign::Minus => neg.push(r),
                    num_bigint::Sign::NoSign => rest.push(r),
                }
            }
            for p in &pos {
                for q in &neg {
                    let c = Ineq::combine(p, q, k);
                    if c.ancestors() as usize <= eliminated + 1 {
                        rest.push(c);
                    }
                }
            }
            cur = dedupe(rest);
        }
        levels[0] = cur;
        Projection { levels }
    }

    pub fn feasible(&self) -> bool {
        self.levels[0].iter().all(|r| !r.b.is_negative())
    }

    /// Integer bounds for variable `k` given values of the earlier ones.
    fn bounds(&self, k: usize, fixed: &[BigInt]) -> (Option<BigInt>, Option<BigInt>, bool) {
        let (mut lo, mut hi): (Option<BigInt>, Option<BigInt>) = (None, None);
        for r in &self.levels[k + 1] {
            let mut rhs = r.b.clone();
            for (c, v) in r.a.iter().zip(fixed) {
                rhs -= c * v;
            }
            let c = &r.a[k];
            if c.is_zero() {
                if rhs.is_negative() {
                    return (None, None, false);
                }
            } else if c.is_positive() {
                let u = rhs.div_floor(c);
                hi = Some(match hi {
                    Some(h) if h <= u => h,
                    _ => u,
                });
            } else {
                let l = rhs.div_ceil(c);
                lo = Some(match lo {
                    Some(x) if x >= l => x,
                    _ => l,
                });
            }
        }
        let ok = match (&lo, &hi) {
            (Some(l), Some(h)) => l <= h,
            _ => true,
        };
        (lo, hi, ok)
    }

    /// Depth-first integer search; `Err(())` when the node budget runs out.
    pub fn integer_point(&self, budget: &mut usize) -> Result<Option<Vec<BigInt>>, ()> {
        if !self.feasible() {
            return Ok(None);
        }
        let n = self.levels.len() - 1;
        let mut fixed = Vec::with_capacity(n);
        self.dfs(n, &mut fixed, budget)
    }

    fn dfs(&self, n: usize, fixed: &mut Vec<BigInt>, budget: &mut usize) -> Result<Option<Vec<BigInt>>, ()> {
        let k = fixed.len();
        if k == n {
            return Ok(Some(fixed.clone()));
        }
        let (lo, hi, ok) = self.bounds(k, fixed);
        if !ok {
            return Ok(None);
        }
        let mut exhausted = false;
        for v in Candidates::new(lo, hi) {
            if *budget == 0 {
                return Err(());
            }
            *budget -= 1;
            fixed.push(v);
            let r = self.dfs(n, fixed, budget);
            fixed.pop();
            match r {
                Ok(Some(p)) => return Ok(Some(p)),
                Ok(None) => {}
                Err(()) => {
                    exhausted = true;
                    break;
                }
            }
        }
        if exhausted {
            Err(())
        } else {
            Ok(None)
        }
    }
}

/// Integers in `[lo, hi]`, nearest the middle first; unbounded sides are
/// walked away from the finite end.
struct Candidates {
    lo: Option<BigInt>,
    hi: Option<BigInt>,
    centre: BigInt,
    step: BigInt,
    up: bool,
    done: bool,
}

impl Candidates {
    fn new(lo: Option<BigInt>, hi: Option<BigInt>) -> Candidates {
        let centre = match (&lo, &hi) {
            (Some(l), Some(h)) => (l + h).div_floor(&BigInt::from(2)),
            (Some(l), None) => l.clone(),
            (None, Some(h)) => h.clone(),
            (None, None) => BigInt::zero(),
        };
        Candidates { lo, hi, centre, step: BigInt::zero(), up: true, done: false }
    }

    fn inside(&self, v: &BigInt) -> bool {
        self.lo.as_ref().is_none_or(|l| l <= v) && self.hi.as_ref().is_none_or(|h| v <= h)
    }
}

impl Iterator for Candidates {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        if self.done {
            return None;
        }
        loop {
            let v = if self.up { &self.centre + &self.step } else { &self.centre - &self.step };
            let (up_ok, down_ok) =
                (self.inside(&(&self.centre + &self.step)), self.inside(&(&self.centre - &self.step)));
            if !up_ok && !down_ok {
                self.done = true;
                return None;
            }
            if self.up {
                self.up = false;
                if self.step.is_zero() {
                    self.step += 1;
                    self.up = true;
                }
            } else {
                self.up = true;
                self.step += 1;
            }
            if self.inside(&v) {
                return Some(v);
            }
        }
    }
}
