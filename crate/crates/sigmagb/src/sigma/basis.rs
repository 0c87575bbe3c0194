use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::buchberger::{buchberger, nf, spoly, Bin, Mono};
use super::{lex_cmp_poly, to_binomial, DiffBinomial};
use crate::error::{Error, Result};
use crate::ipsearch::{find_witness, series_lower_bound};
use crate::phi::{in_phi0, membership_phi1, normalize, polya_exponent, Step, VerdictKind};
use crate::zx::IntPoly;

/// How the truncated ideal is saturated before elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Saturation {
    /// By the product of shifted initials `J = y^{f⁺ - lt f}`.
    #[default]
    Initials,
    /// By the product of all variables.
    AllVariables,
}

/// A difference basis computed in `F[y, y^x, …, y^{x^D}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialBasis {
    pub elements: Vec<DiffBinomial>,
    pub d: usize,
    pub certified: bool,
}

impl BinomialBasis {
    /// Uncertified basis over truncation `d`.
    pub fn new(elements: Vec<DiffBinomial>, d: usize) -> Self {
        BinomialBasis { elements, d, certified: false }
    }
}

/// Outcome of the finite basis algorithm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiniteGb {
    Basis(BinomialBasis),
    Infinite,
    Undecided,
}

fn check_input(f: &IntPoly, d: usize) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.coeff(0).is_zero() || !f.lc_ref().is_positive() || f.content() != One::one() {
        return Err(Error::Precondition("f must be primitive with f(0) != 0 and lc(f) > 0".into()));
    }
    if d < f.deg() {
        return Err(Error::InvalidArgument(format!("truncation {d} is below deg f = {}", f.deg())));
    }
    Ok(())
}

fn to_mono(p: &IntPoly, len: usize) -> Result<Mono> {
    let mut m = vec![0u64; len];
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if i >= len {
            return Err(Error::Internal("exponent exceeds truncation".into()));
        }
        m[i] = c.to_u64().ok_or_else(|| Error::InvalidArgument("exponent out of range".into()))?;
    }
    Ok(m)
}

fn from_mono(m: &[u64]) -> IntPoly {
    IntPoly::new(m.iter().map(|&e| BigInt::from(e)).collect())
}

fn binomial_bin(b: &DiffBinomial, len: usize) -> Result<Option<Bin>> {
    Ok(Bin::new(to_mono(&b.plus, len)?, to_mono(&b.minus, len)?))
}

/// Generators of the truncated ideal in `D + 2` variables, the last being
/// the saturation variable `w`.
pub fn truncated_generators(f: &IntPoly, d: usize) -> Result<Vec<Bin>> {
    truncated_generators_with(f, d, Saturation::Initials)
}

fn truncated_generators_with(f: &IntPoly, d: usize, sat: Saturation) -> Result<Vec<Bin>> {
    check_input(f, d)?;
    let n = f.deg();
    let shifts: Vec<IntPoly> = (0..=d - n).map(|i| f.shift(i)).collect();
    let lead = match sat {
        Saturation::Initials => {
            let init = f.positive_part() - IntPoly::monomial(f.lc(), n);
            let ones = IntPoly::new(vec![BigInt::one(); d - n + 1]);
            to_mono(&(&init * &ones), d + 2)?
        }
        Saturation::AllVariables => all_variables(d),
    };
    lattice_generators(&shifts, d, lead)
}

fn all_variables(d: usize) -> Mono {
    let mut m = vec![1u64; d + 2];
    m[d + 1] = 0;
    m
}

/// Binomials `P_u` for each `u`, plus `w·lead - 1`.
fn lattice_generators(polys: &[IntPoly], d: usize, mut lead: Mono) -> Result<Vec<Bin>> {
    let len = d + 2;
    let mut gens = Vec::new();
    for u in polys {
        if let Some(b) = binomial_bin(&to_binomial(u), len)? {
            gens.push(b);
        }
    }
    lead[d + 1] = 1;
    gens.push(Bin { lead, tail: vec![0; len] });
    Ok(gens)
}

/// Eliminate `w` and reduce to a difference basis.
fn basis_from_generators(gens: &[Bin], d: usize) -> Vec<DiffBinomial> {
    let g = buchberger(gens);
    let elems: Vec<DiffBinomial> = g
        .iter()
        .filter(|b| b.lead[d + 1] == 0)
        .map(|b| DiffBinomial { plus: from_mono(&b.lead[..=d]), minus: from_mono(&b.tail[..=d]) }.normalized())
        .collect();
    sigma_minimize(elems)
}

/// Difference basis of the ideal of all `x^j g_i` with degree at most
/// `d`, saturated by all variables; certified against `lc`.
pub(crate) fn lattice_basis(gens: &[IntPoly], d: usize, lc: &BigInt) -> Result<BinomialBasis> {
    let polys: Vec<IntPoly> = gens
        .iter()
        .filter(|g| !g.is_zero() && g.deg() <= d)
        .flat_map(|g| (0..=d - g.deg()).map(move |j| g.shift(j)))
        .map(|u| if u.lc_ref().is_negative() { -&u } else { u })
        .collect();
    let gens_b = lattice_generators(&polys, d, all_variables(d))?;
    let mut basis = BinomialBasis::new(basis_from_generators(&gens_b, d), d);
    basis.certified = certify_with(&basis, &polys, lc);
    Ok(basis)
}

/// `x^j·a ≤ b` componentwise for some `j ≥ 0`; returns the least such `j`.
fn shift_dominated(a: &IntPoly, b: &IntPoly) -> Option<usize> {
    let (da, db) = (a.degree()?, b.degree()?);
    if da > db {
        return None;
    }
    let ac = a.coeffs();
    (0..=db - da).find(|&j| ac.iter().enumerate().all(|(i, c)| *c <= b.coeff(i + j)))
}

/// Drop elements whose leading exponent is dominated by a shift of a smaller one.
fn sigma_minimize(mut elems: Vec<DiffBinomial>) -> Vec<DiffBinomial> {
    elems.sort_by(|a, b| lex_cmp_poly(&a.plus, &b.plus).then_with(|| lex_cmp_poly(&a.minus, &b.minus)));
    let mut kept: Vec<DiffBinomial> = Vec::new();
    for b in elems {
        if !kept.iter().any(|a| shift_dominated(&a.plus, &b.plus).is_some()) {
            kept.push(b);
        }
    }
    kept
}

/// Difference basis from the algebraic basis of the truncated ideal.
pub fn gb_truncated(f: &IntPoly, d: usize) -> Result<BinomialBasis> {
    gb_truncated_with(f, d, Saturation::Initials)
}

pub fn gb_truncated_with(f: &IntPoly, d: usize, sat: Saturation) -> Result<BinomialBasis> {
    let gens = truncated_generators_with(f, d, sat)?;
    let mut basis = BinomialBasis::new(basis_from_generators(&gens, d), d);
    basis.certified = certify_sigma_gb(&basis, f);
    Ok(basis)
}

fn reduce_exponent(mut p: IntPoly, basis: &[DiffBinomial]) -> IntPoly {
    'outer: loop {
        for a in basis {
            if let Some(j) = shift_dominated(&a.plus, &p) {
                p = &(&p - &a.plus.shift(j)) + &a.minus.shift(j);
                continue 'outer;
            }
        }
        return p;
    }
}

/// Normal form of `b` modulo all shifts of the basis; `None` when it reduces to zero.
pub fn grem(b: &DiffBinomial, basis: &BinomialBasis) -> Option<DiffBinomial> {
    let p = reduce_exponent(b.plus.clone(), &basis.elements);
    let m = reduce_exponent(b.minus.clone(), &basis.elements);
    if p == m {
        None
    } else {
        Some(DiffBinomial { plus: p, minus: m }.normalized())
    }
}

/// All shifts of the basis elements that fit in the truncation.
fn shifted_set(basis: &BinomialBasis) -> Option<Vec<Bin>> {
    let len = basis.d + 1;
    let mut out = Vec::new();
    for a in &basis.elements {
        let top = a.plus.deg().max(a.minus.degree().unwrap_or(0));
        if top > basis.d {
            return None;
        }
        for j in 0..=basis.d - top {
            let s = DiffBinomial { plus: a.plus.shift(j), minus: a.minus.shift(j) };
            if let Some(b) = binomial_bin(&s, len).ok()? {
                out.push(b);
            }
        }
    }
    out.sort_by(|a, b| super::buchberger::lex_cmp(&a.lead, &b.lead));
    Some(out)
}

/// Check that the basis is a difference Gröbner basis of the ideal of `f`.
pub fn certify_sigma_gb(basis: &BinomialBasis, f: &IntPoly) -> bool {
    let Ok(core) = normalize(f).map(|n| n.core) else {
        return false;
    };
    let Some(n) = core.degree() else {
        return false;
    };
    if n > basis.d {
        return false;
    }
    let shifts: Vec<IntPoly> = (0..=basis.d - n).map(|i| core.shift(i)).collect();
    certify_with(basis, &shifts, core.lc_ref())
}

fn certify_with(basis: &BinomialBasis, polys: &[IntPoly], lc: &BigInt) -> bool {
    let Some(theta) = shifted_set(basis) else {
        return false;
    };
    for i in 0..theta.len() {
        for j in i + 1..theta.len() {
            if let Some(s) = spoly(&theta[i], &theta[j]) {
                if nf(&s, &theta).is_some() {
                    return false;
                }
            }
        }
    }
    for u in polys {
        match binomial_bin(&to_binomial(u), basis.d + 1) {
            Ok(Some(b)) => {
                if nf(&b, &theta).is_some() {
                    return false;
                }
            }
            Ok(None) => {}
            Err(_) => return false,
        }
    }
    basis.elements.iter().any(|a| {
        let h = a.exponent();
        in_phi0(&h) && h.lc_ref() == lc
    })
}

/// Default degree cap for the cofactor search on conjectural inputs.
pub const CONJECTURE_CAP: usize = 12;

fn truncation_degree(f: &IntPoly, first: &Step) -> Result<usize> {
    let n = f.deg();
    Ok(match first {
        Step::InPhi0 => n,
        Step::NoPositiveRoots => {
            let n_f = if f.coeffs().iter().all(|c| c.is_positive()) { 0 } else { polya_exponent(f)?.n_f as usize };
            n_f + n + 1
        }
        Step::RootsOfUnity { delta } => *delta as usize,
        Step::UnitRootDominant { delta: Some(d) } => n + *d as usize - 1,
        Step::Reduce { delta, fstar } => *delta as usize * fstar.deg(),
        _ => return Err(Error::Internal(format!("no truncation degree for step {first}"))),
    })
}

/// Decide finiteness of the difference Gröbner basis of `sat(P_f)` and
/// compute it when finite.
pub fn finite_gb(f: &IntPoly, conjecture_cap: Option<usize>) -> Result<FiniteGb> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f = if f.lc_ref().is_negative() { -f } else { f.clone() };
    let core = normalize(&f)?.core;
    let v = membership_phi1(&core)?;
    let d = match v.kind {
        VerdictKind::No => return Ok(FiniteGb::Infinite),
        VerdictKind::ConjecturalYes => {
            let cap = conjecture_cap.unwrap_or(CONJECTURE_CAP);
            match find_witness(&core, cap)?.witness {
                Some((_, m)) => core.deg() + m,
                None => return Ok(FiniteGb::Undecided),
            }
        }
        VerdictKind::InPhi0 | VerdictKind::Yes => truncation_degree(&core, &v.trace[0])?,
    };
    // a certified basis at any smaller truncation is already the full basis
    let start = core.deg() + series_lower_bound(&core).map(|s| if s.conclusive { s.bound } else { 0 }).unwrap_or(0);
    for t in start.min(d)..d {
        let b = gb_truncated(&core, t)?;
        if b.certified {
            return Ok(FiniteGb::Basis(b));
        }
    }
    let mut basis = gb_truncated(&core, d)?;
    if !basis.certified {
        if let Some(g) = &v.witness {
            let d2 = core.deg() + g.deg();
            if d2 > d {
                basis = gb_truncated(&core, d2)?;
            }
        }
    }
    Ok(FiniteGb::Basis(basis))
}

impl PartialOrd for DiffBinomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DiffBinomial {
    fn cmp(&self, other: &Self) -> Ordering {
        lex_cmp_poly(&self.plus, &other.plus).then_with(|| lex_cmp_poly(&self.minus, &other.minus))
    }
}
