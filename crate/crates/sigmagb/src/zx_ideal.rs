//! Ideals of `Z[x]` with several generators and the finiteness criterion
//! for the difference ideals they define.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::algebraic::count_positive_roots;
use crate::error::{Error, Result};
use crate::ipsearch::fm::{Ineq, Projection};
use crate::ipsearch::NODE_CAP;
use crate::phi::{in_phi0, membership_phi1, minimal_positivity_exponent, VerdictKind};
use crate::sigma::{lattice_basis, BinomialBasis};
use crate::zx::IntPoly;

/// Reduced strong Gröbner basis of an ideal of `Z[x]`, sorted by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZxGB {
    elements: Vec<IntPoly>,
}

impl ZxGB {
    pub fn elements(&self) -> &[IntPoly] {
        &self.elements
    }

    /// `(c_i, d_i)` for each element.
    pub fn leading(&self) -> Vec<(BigInt, usize)> {
        self.elements.iter().map(|g| (g.lc(), g.deg())).collect()
    }

    /// Degrees strictly increase, leading coefficients divide downward and
    /// differ, and `c_i / c_k` divides `g_i`.
    pub fn has_chain_structure(&self) -> bool {
        let lead = self.leading();
        let k = lead.len();
        let ck = &lead[k - 1].0;
        lead.windows(2).all(|w| w[0].1 < w[1].1 && w[0].0 != w[1].0 && w[0].0.is_multiple_of(&w[1].0))
            && self.elements.iter().zip(&lead).all(|(g, (c, _))| {
                let q = c / ck;
                g.coeffs().iter().all(|a| a.is_multiple_of(&q))
            })
    }
}

fn positive_lc(p: IntPoly) -> IntPoly {
    if p.lc_ref().is_negative() {
        -&p
    } else {
        p
    }
}

/// Cancel leading terms while some element's leading term divides them.
fn top_reduce(mut p: IntPoly, g: &[IntPoly]) -> IntPoly {
    'outer: while !p.is_zero() {
        let (c, d) = (p.lc(), p.deg());
        for h in g {
            if h.deg() <= d && c.is_multiple_of(h.lc_ref()) {
                let q = &c / h.lc_ref();
                p = &p - &h.shift(d - h.deg()).scale(&q);
                continue 'outer;
            }
        }
        break;
    }
    p
}

fn spair(a: &IntPoly, b: &IntPoly) -> (IntPoly, IntPoly) {
    let (a, b) = if a.deg() <= b.deg() { (a, b) } else { (b, a) };
    let (ca, cb) = (a.lc(), b.lc());
    let sa = a.shift(b.deg() - a.deg());
    let l = ca.lcm(&cb);
    let s = &sa.scale(&(&l / &ca)) - &b.scale(&(&l / &cb));
    let e = ca.extended_gcd(&cb);
    let g = &sa.scale(&e.x) + &b.scale(&e.y);
    (s, g)
}

pub fn zx_groebner(gens: &[IntPoly]) -> Result<ZxGB> {
    let mut g: Vec<IntPoly> = gens.iter().filter(|p| !p.is_zero()).cloned().map(positive_lc).collect();
    if g.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let mut pairs: Vec<(usize, usize)> = (0..g.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while let Some((i, j)) = pairs.pop() {
        let (s, gp) = spair(&g[i], &g[j]);
        for p in [gp, s] {
            let r = top_reduce(p, &g);
            if !r.is_zero() {
                let k = g.len();
                g.push(positive_lc(r));
                pairs.extend((0..k).map(|i| (i, k)));
            }
        }
    }
    // minimal: drop elements whose leading term is divisible by another's
    g.sort_by(|a, b| a.deg().cmp(&b.deg()).then_with(|| a.lc().cmp(&b.lc())));
    let mut minimal: Vec<IntPoly> = Vec::new();
    for p in g {
        if !minimal.iter().any(|h| h.deg() <= p.deg() && p.lc_ref().is_multiple_of(h.lc_ref())) {
            minimal.push(p);
        }
    }
    let reduced: Vec<IntPoly> = (0..minimal.len())
        .map(|i| {
            let lt = IntPoly::monomial(minimal[i].lc(), minimal[i].deg());
            let lower: Vec<IntPoly> = minimal[..i].to_vec();
            &lt + &normal_form(&(&minimal[i] - &lt), &lower)
        })
        .collect();
    Ok(ZxGB { elements: reduced })
}

/// Reduce every coefficient, top down, modulo the element of largest
/// degree not exceeding its degree.
fn normal_form(p: &IntPoly, g: &[IntPoly]) -> IntPoly {
    let mut p = p.clone();
    let Some(top) = p.degree() else {
        return p;
    };
    for j in (0..=top).rev() {
        let c = p.coeff(j);
        if c.is_zero() {
            continue;
        }
        let Some(h) = g.iter().filter(|h| h.deg() <= j).max_by_key(|h| h.deg()) else {
            continue;
        };
        let q = c.div_floor(h.lc_ref());
        if !q.is_zero() {
            p = &p - &h.shift(j - h.deg()).scale(&q);
        }
    }
    p
}

/// Normal form of `p`; zero exactly when `p` lies in the ideal.
pub fn zx_reduce(p: &IntPoly, basis: &ZxGB) -> IntPoly {
    normal_form(p, &basis.elements)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CriterionKind {
    Finite,
    Infinite,
    Unknown,
}

impl CriterionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CriterionKind::Finite => "Finite",
            CriterionKind::Infinite => "Infinite",
            CriterionKind::Unknown => "Unknown",
        }
    }
}

/// Outcome of [`finite_sgb_criterion`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionResult {
    pub kind: CriterionKind,
    /// Element of the ideal in `Φ₀` with leading coefficient `c_t`.
    pub witness: Option<IntPoly>,
    /// The degree cap, for `Unknown`.
    pub bound_used: Option<usize>,
    /// Which rule of the cascade settled the question, `a` to `e`.
    pub rule: char,
}

impl CriterionResult {
    fn finite(w: IntPoly, rule: char) -> Self {
        CriterionResult { kind: CriterionKind::Finite, witness: Some(w), bound_used: None, rule }
    }
}

fn valid_witness(h: &IntPoly, basis: &ZxGB) -> bool {
    let ct = basis.elements.last().expect("nonempty basis").lc();
    in_phi0(h) && h.lc() == ct && zx_reduce(h, basis).is_zero()
}

/// Small combinations `x^a g_i ± k g_j` to try for the positive-root test.
fn combinations(basis: &ZxGB) -> Vec<IntPoly> {
    let g = &basis.elements;
    let mut out: Vec<IntPoly> = g.clone();
    for (i, a) in g.iter().enumerate() {
        for (j, b) in g.iter().enumerate() {
            if i == j {
                continue;
            }
            for s in 0..=2 {
                for k in [1i64, 2, -1, -2] {
                    out.push(&a.shift(s) + &b.scale(&BigInt::from(k)));
                }
            }
        }
    }
    out
}

/// Build `x^{m1}(x^{deg h2 - d_t + 1} g_t - M h2)` from `h ∈ L` without positive roots.
fn from_positive_combination(h: &IntPoly, basis: &ZxGB) -> Result<Option<IntPoly>> {
    if h.is_zero() || h.is_constant() && h.coeff(0).is_zero() {
        return Ok(None);
    }
    let m1 = h.valuation();
    let h1 = positive_lc(h.unshift(m1));
    if h1.coeff(0).is_negative() || count_positive_roots(&h1)? != 0 {
        return Ok(None);
    }
    let gt = basis.elements.last().expect("nonempty basis");
    let dt = gt.deg();
    let mut n = if h1.coeffs().iter().all(|c| c.is_positive()) { 0 } else { minimal_positivity_exponent(&h1)? as usize };
    if h1.deg() + n <= dt {
        n = dt + 1 - h1.deg();
    }
    let h2 = &IntPoly::from_i64(&[1, 1]).pow(n) * &h1;
    let lift = gt.shift(h2.deg() - dt + 1);
    let top = lift.deg();
    let mut m = BigInt::zero();
    for (k, c) in lift.coeffs().iter().enumerate().take(top) {
        if c.is_positive() {
            m = m.max(Integer::div_ceil(c, &h2.coeff(k)));
        }
    }
    let m = m + 1;
    let gbar = (&lift - &h2.scale(&m)).shift(m1);
    Ok(valid_witness(&gbar, basis).then_some(gbar))
}

/// Search `h = x^{k-d_t} g_t + Σ z_j e_j ∈ Φ₀` over the triangular lattice
/// basis of the degree-`k` slice.
fn bounded_search(basis: &ZxGB, cap: usize) -> Option<IntPoly> {
    let g = &basis.elements;
    let gt = g.last()?;
    let d1 = g[0].deg();
    for k in gt.deg()..=cap {
        let slice: Vec<IntPoly> = (d1..k)
            .map(|j| {
                let h = g.iter().filter(|h| h.deg() <= j).max_by_key(|h| h.deg()).expect("d1 <= j");
                h.shift(j - h.deg())
            })
            .collect();
        let top = gt.shift(k - gt.deg());
        let rows: Vec<Ineq> = (0..k)
            .map(|i| Ineq::new(slice.iter().map(|e| e.coeff(i)).collect(), -top.coeff(i), i))
            .collect();
        let proj = Projection::new(rows, slice.len());
        let mut budget = NODE_CAP;
        if let Ok(Some(z)) = proj.integer_point(&mut budget) {
            let mut h = top.clone();
            for (e, c) in slice.iter().zip(&z) {
                h = &h + &e.scale(c);
            }
            if valid_witness(&h, basis) {
                return Some(h);
            }
        }
    }
    None
}

/// Decide whether the difference ideal of `basis` has a finite basis.
pub fn finite_sgb_criterion(basis: &ZxGB, degree_cap: usize) -> Result<CriterionResult> {
    let g1 = &basis.elements[0];
    let b1 = g1.primitive();
    if membership_phi1(&positive_lc(b1))?.kind == VerdictKind::No {
        return Ok(CriterionResult { kind: CriterionKind::Infinite, witness: None, bound_used: None, rule: 'a' });
    }
    let gt = basis.elements.last().expect("nonempty basis");
    let v = membership_phi1(gt)?;
    if v.is_member() {
        let w = gt * v.witness.as_ref().expect("members carry a witness");
        if valid_witness(&w, basis) {
            return Ok(CriterionResult::finite(w, 'b'));
        }
    }
    for h in combinations(basis) {
        if let Some(w) = from_positive_combination(&h, basis)? {
            return Ok(CriterionResult::finite(w, 'c'));
        }
    }
    if let Some(w) = bounded_search(basis, degree_cap) {
        return Ok(CriterionResult::finite(w, 'd'));
    }
    Ok(CriterionResult { kind: CriterionKind::Unknown, witness: None, bound_used: Some(degree_cap), rule: 'e' })
}

/// Finite difference basis from a witness `h ∈ L_i ∩ Φ₀`, at truncation `deg h`.
pub fn multi_finite_gb(basis: &ZxGB, witness: &IntPoly) -> Result<BinomialBasis> {
    if !valid_witness(witness, basis) {
        return Err(Error::InvalidArgument("witness must lie in the ideal and in Φ₀ with lc = c_t".into()));
    }
    let ct = basis.elements.last().expect("nonempty basis").lc();
    lattice_basis(&basis.elements, witness.deg(), &ct)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sigma::DiffBinomial;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn groebner_examples() {
        let b = zx_groebner(&[p(&[4]), p(&[0, 2])]).unwrap();
        assert_eq!(b.elements(), &[p(&[4]), p(&[0, 2])]);
        let b = zx_groebner(&[p(&[15]), p(&[0, 5]), p(&[3, 0, 1])]).unwrap();
        assert_eq!(b.elements(), &[p(&[15]), p(&[0, 5]), p(&[3, 0, 1])]);
        let b = zx_groebner(&[p(&[-4, 0, 2]), p(&[-2, -2, 1, 1])]).unwrap();
        assert_eq!(b.elements(), &[p(&[-4, 0, 2]), p(&[-2, -2, 1, 1])]);
        for b in [b, zx_groebner(&[p(&[6, 4]), p(&[0, 0, 3])]).unwrap()] {
            assert!(b.has_chain_structure(), "{b:?}");
        }
        assert!(zx_groebner(&[IntPoly::zero()]).is_err());
    }

    #[test]
    fn reduce_examples() {
        let b = zx_groebner(&[p(&[-4, 0, 2]), p(&[-2, -2, 1, 1])]).unwrap();
        assert!(zx_reduce(&p(&[-2, 0, -1, 0, 1]), &b).is_zero());
        assert!(!zx_reduce(&p(&[-2, 0, 1]), &b).is_zero());
        assert!(zx_reduce(&IntPoly::zero(), &b).is_zero());
    }

    #[test]
    fn criterion_examples() {
        let b = zx_groebner(&[p(&[-4, 0, 2]), p(&[-2, -2, 1, 1])]).unwrap();
        let r = finite_sgb_criterion(&b, 8).unwrap();
        assert_eq!(r.kind, CriterionKind::Finite);
        let w = r.witness.unwrap();
        assert!(in_phi0(&w) && zx_reduce(&w, &b).is_zero());
        let r = finite_sgb_criterion(&zx_groebner(&[p(&[1, -2, 1])]).unwrap(), 8).unwrap();
        assert_eq!(r.kind, CriterionKind::Infinite);
        let r = finite_sgb_criterion(&zx_groebner(&[p(&[1, 1, 1])]).unwrap(), 8).unwrap();
        assert_eq!(r.kind, CriterionKind::Finite);
    }

    #[test]
    fn multi_basis_examples() {
        let b = zx_groebner(&[p(&[-1, 1])]).unwrap();
        let gb = multi_finite_gb(&b, &p(&[-1, 1])).unwrap();
        assert!(gb.certified);
        assert_eq!(gb.elements, vec![DiffBinomial { plus: p(&[0, 1]), minus: p(&[1]) }]);
        let b = zx_groebner(&[p(&[1, 1, 1])]).unwrap();
        let gb = multi_finite_gb(&b, &p(&[-1, 0, 0, 1])).unwrap();
        assert!(gb.certified);
        assert_eq!(gb.elements.len(), 2);
        let b = zx_groebner(&[p(&[-4, 0, 2]), p(&[-2, -2, 1, 1])]).unwrap();
        let gb = multi_finite_gb(&b, &p(&[-2, 0, -1, 0, 1])).unwrap();
        assert!(gb.certified);
        assert!(multi_finite_gb(&b, &p(&[-2, 0, 1])).is_err());
    }
}
