use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{compute_fstar, in_phi0, minimal_delta, normalize, phi0_witness_no_positive_roots};
use crate::algebraic::{count_positive_roots, has_root_outside, isolate_real_roots, roots_on_circle};
use crate::error::{internal, Result};
use crate::zx::{cyclotomic, delta_support, euler_phi, gcd_primitive, sqfree_part, IntPoly};

/// Degree cap for the quick search that precedes the constructed witness.
const SHORT_WITNESS_DEGREE: usize = 3;
const SHORT_WITNESS_NODES: usize = 2_000;

fn short_witness(f: &IntPoly, constructed: usize) -> Result<Option<IntPoly>> {
    let cap = SHORT_WITNESS_DEGREE.min(constructed.saturating_sub(1));
    let w = crate::ipsearch::find_witness_with(f, cap, SHORT_WITNESS_NODES)?;
    Ok(w.witness.map(|(g, _)| g))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VerdictKind {
    InPhi0,
    Yes,
    No,
    ConjecturalYes,
}

impl VerdictKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictKind::InPhi0 => "InPhi0",
            VerdictKind::Yes => "Yes",
            VerdictKind::No => "No",
            VerdictKind::ConjecturalYes => "ConjecturalYes",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NoReason {
    TwoPositiveRoots,
    PositiveRootBelowOne,
    RootOutsideCircle,
    NonUnityRatio,
    FstarFails,
    LcMismatch,
    DeltaSearchFails,
}

impl NoReason {
    pub fn as_str(self) -> &'static str {
        match self {
            NoReason::TwoPositiveRoots => "TwoPositiveRoots",
            NoReason::PositiveRootBelowOne => "PositiveRootBelowOne",
            NoReason::RootOutsideCircle => "RootOutsideCircle",
            NoReason::NonUnityRatio => "NonUnityRatio",
            NoReason::FstarFails => "FstarFails",
            NoReason::LcMismatch => "LcMismatch",
            NoReason::DeltaSearchFails => "DeltaSearchFails",
        }
    }
}

/// One step of the decision cascade.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    InPhi0,
    NoPositiveRoots,
    TwoPositiveRoots,
    RootBelowOne,
    RootsOfUnity { delta: u64 },
    UnitRootDominant { delta: Option<u64> },
    RootOutside,
    NonUnityRatio,
    Reduce { delta: u64, fstar: IntPoly },
    Conjectural,
}

impl Step {
    /// Short identifier of the step in the cascade.
    pub fn id(&self) -> &'static str {
        match self {
            Step::InPhi0 => "1",
            Step::NoPositiveRoots => "2",
            Step::TwoPositiveRoots => "3",
            Step::RootBelowOne => "4.1",
            Step::RootsOfUnity { .. } => "4.2",
            Step::UnitRootDominant { .. } => "4.3",
            Step::RootOutside => "4.4",
            Step::NonUnityRatio => "4.5",
            Step::Reduce { .. } => "4.6",
            Step::Conjectural => "4.7",
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::RootsOfUnity { delta } => write!(f, "{}:delta={delta}", self.id()),
            Step::UnitRootDominant { delta: Some(d) } => write!(f, "{}:delta={d}", self.id()),
            Step::Reduce { delta, fstar } => write!(f, "{}:delta={delta}:fstar={fstar}", self.id()),
            _ => f.write_str(self.id()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Phi1Verdict {
    pub kind: VerdictKind,
    /// Monic `g` with `f·g ∈ Φ₀`, for `InPhi0` and `Yes`.
    pub witness: Option<IntPoly>,
    pub reason: Option<NoReason>,
    pub trace: Vec<Step>,
    /// The normalized polynomial the verdict refers to.
    pub core: IntPoly,
}

impl Phi1Verdict {
    fn new(kind: VerdictKind, core: &IntPoly, trace: Vec<Step>) -> Self {
        Phi1Verdict { kind, witness: None, reason: None, trace, core: core.clone() }
    }

    fn yes(kind: VerdictKind, core: &IntPoly, g: IntPoly, trace: Vec<Step>) -> Self {
        Phi1Verdict { witness: Some(g), ..Self::new(kind, core, trace) }
    }

    fn no(reason: NoReason, core: &IntPoly, trace: Vec<Step>) -> Self {
        Phi1Verdict { reason: Some(reason), ..Self::new(VerdictKind::No, core, trace) }
    }

    /// `InPhi0` or `Yes`.
    pub fn is_member(&self) -> bool {
        matches!(self.kind, VerdictKind::InPhi0 | VerdictKind::Yes)
    }
}

const MAX_DEPTH: usize = 2;

/// Decide whether `f ∈ Φ₁`, with a witness on success.
pub fn membership_phi1(f: &IntPoly) -> Result<Phi1Verdict> {
    let core = normalize(f)?.core;
    let v = decide(&core, 0, Vec::new())?;
    if let Some(g) = &v.witness {
        if !g.is_monic() || !in_phi0(&(&core * g)) {
            return internal("witness check failed");
        }
    }
    Ok(v)
}

/// Product of `gcd(s, Φ_m)` over small `m` equals `s`: all roots are roots of unity.
fn roots_of_unity_order(s: &IntPoly) -> Option<u64> {
    let d = s.deg() as u64;
    let mut acc = IntPoly::one();
    let mut delta = 1u64;
    for m in 1..=2 * d * d.max(1) {
        if euler_phi(m) > d {
            continue;
        }
        let g = gcd_primitive(s, &cyclotomic(m as usize));
        if !g.is_constant() {
            acc = &acc * &g;
            delta = delta.lcm(&m);
        }
    }
    (acc == *s).then_some(delta)
}

fn decide(f: &IntPoly, depth: usize, mut trace: Vec<Step>) -> Result<Phi1Verdict> {
    if in_phi0(f) {
        trace.push(Step::InPhi0);
        return Ok(Phi1Verdict::yes(VerdictKind::InPhi0, f, IntPoly::one(), trace));
    }
    let npos = count_positive_roots(f)?;
    if npos == 0 {
        trace.push(Step::NoPositiveRoots);
        let g = phi0_witness_no_positive_roots(f)?;
        let g = short_witness(f, g.deg())?.unwrap_or(g);
        return Ok(Phi1Verdict::yes(VerdictKind::Yes, f, g, trace));
    }
    if npos >= 2 {
        trace.push(Step::TwoPositiveRoots);
        return Ok(Phi1Verdict::no(NoReason::TwoPositiveRoots, f, trace));
    }
    let f1 = f.eval(&BigInt::one());
    if f1.is_positive() {
        trace.push(Step::RootBelowOne);
        return Ok(Phi1Verdict::no(NoReason::PositiveRootBelowOne, f, trace));
    }
    let x_plus = isolate_real_roots(f)?
        .into_iter()
        .map(|(r, _)| r)
        .find(|r| r.sign() > 0)
        .ok_or_else(|| crate::Error::Internal("positive root vanished".into()))?;
    let mut outside = None;
    if f1.is_zero() {
        let s = sqfree_part(f);
        if let Some(delta) = roots_of_unity_order(&s) {
            trace.push(Step::RootsOfUnity { delta });
            let fstar = compute_fstar(f, delta as usize)?;
            if fstar != IntPoly::from_i64(&[-1, 1]) {
                return Ok(Phi1Verdict::no(NoReason::FstarFails, f, trace));
            }
            let g = IntPoly::x_pow_minus_one(delta as usize).exact_div(f).expect("f divides x^delta - 1");
            return Ok(Phi1Verdict::yes(VerdictKind::Yes, f, g, trace));
        }
        let out = has_root_outside(f, &x_plus)?;
        outside = Some(out);
        if !out && roots_on_circle(f, &x_plus)? == (false, Vec::new()) {
            let h = f.exact_div(&IntPoly::from_i64(&[-1, 1])).expect("x - 1 divides f");
            let ds = if h.is_constant() { 1 } else { delta_support(&h)? };
            for d in (1..=ds).filter(|d| ds % d == 0) {
                let g = IntPoly::x_pow_minus_one(d).exact_div(&IntPoly::from_i64(&[-1, 1])).expect("x - 1 divides");
                if in_phi0(&(f * &g)) {
                    trace.push(Step::UnitRootDominant { delta: Some(d as u64) });
                    return Ok(Phi1Verdict::yes(VerdictKind::Yes, f, g, trace));
                }
            }
            trace.push(Step::UnitRootDominant { delta: None });
            return Ok(Phi1Verdict::no(NoReason::DeltaSearchFails, f, trace));
        }
    }
    let outside = match outside {
        Some(o) => o,
        None => has_root_outside(f, &x_plus)?,
    };
    if outside {
        trace.push(Step::RootOutside);
        return Ok(Phi1Verdict::no(NoReason::RootOutsideCircle, f, trace));
    }
    let (minus, boxes) = roots_on_circle(f, &x_plus)?;
    if !minus && boxes.is_empty() {
        trace.push(Step::Conjectural);
        return Ok(Phi1Verdict::new(VerdictKind::ConjecturalYes, f, trace));
    }
    let Some(delta) = minimal_delta(f, &x_plus)? else {
        trace.push(Step::NonUnityRatio);
        return Ok(Phi1Verdict::no(NoReason::NonUnityRatio, f, trace));
    };
    let fstar = compute_fstar(f, delta as usize)?;
    trace.push(Step::Reduce { delta, fstar: fstar.clone() });
    if fstar.lc() != f.lc() {
        return Ok(Phi1Verdict::no(NoReason::LcMismatch, f, trace));
    }
    if depth >= MAX_DEPTH {
        return internal("recursion depth exceeded in membership decision");
    }
    let inner = decide(&fstar, depth + 1, trace)?;
    let mut out = Phi1Verdict { core: f.clone(), ..inner };
    if let Some(gs) = out.witness.take() {
        // f*(x^δ) = f·s, so f·(s·g*(x^δ)) = (f*·g*)(x^δ)
        let lifted = fstar.compose_pow(delta as usize);
        let s = lifted.exact_div(f).expect("f divides f*(x^delta)");
        out.witness = Some(&s * &gs.compose_pow(delta as usize));
        out.kind = VerdictKind::Yes;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn prod(fs: &[&[i64]]) -> IntPoly {
        fs.iter().fold(IntPoly::one(), |acc, f| &acc * &p(f))
    }

    fn kind(f: &IntPoly) -> VerdictKind {
        membership_phi1(f).unwrap().kind
    }

    #[test]
    fn verdict_examples() {
        let v = membership_phi1(&p(&[1, 1, 1])).unwrap();
        assert_eq!(v.kind, VerdictKind::Yes);
        assert!(in_phi0(&(&p(&[1, 1, 1]) * v.witness.as_ref().unwrap())));

        let v = membership_phi1(&p(&[1, -2, 1])).unwrap();
        assert_eq!((v.kind, v.reason), (VerdictKind::No, Some(NoReason::TwoPositiveRoots)));

        let f = prod(&[&[-1, 1], &[1, 0, 1], &[1, 0, 0, 1]]);
        let v = membership_phi1(&f).unwrap();
        assert_eq!(v.kind, VerdictKind::Yes);
        assert_eq!(v.witness.unwrap(), IntPoly::x_pow_minus_one(12).exact_div(&f).unwrap());

        let f = prod(&[&[-2, 0, 1], &[1, 1]]);
        let v = membership_phi1(&f).unwrap();
        assert_eq!((v.kind, v.reason), (VerdictKind::No, Some(NoReason::TwoPositiveRoots)));
        assert_eq!(v.trace.iter().map(|s| s.id()).collect::<Vec<_>>(), vec!["4.6", "3"]);

        assert_eq!(kind(&p(&[-2, 1, -1, 1])), VerdictKind::ConjecturalYes);
        assert_eq!(kind(&p(&[-1, 0, 0, 1])), VerdictKind::InPhi0);
    }

    #[test]
    fn recursion_composes_witness() {
        let f = prod(&[&[-2, 0, 1], &[2, -2, 1]]);
        let v = membership_phi1(&f).unwrap();
        assert_eq!(v.kind, VerdictKind::Yes);
        let g = v.witness.unwrap();
        assert!(g.is_monic() && in_phi0(&(&f * &g)));
    }

    #[test]
    fn more_no_verdicts() {
        let v = membership_phi1(&prod(&[&[-5, 0, 1], &[5, -2, 1]])).unwrap();
        assert_eq!(v.reason, Some(NoReason::NonUnityRatio));
        let f = prod(&[&[-1, 1], &[1, 0, 1], &[1, 0, 1], &[1, 0, 0, 1]]);
        assert_eq!(membership_phi1(&f).unwrap().reason, Some(NoReason::FstarFails));
        assert_eq!(membership_phi1(&p(&[1, -3, 2])).unwrap().reason, Some(NoReason::TwoPositiveRoots));
        assert_eq!(membership_phi1(&p(&[1, -5, 3, 1])).unwrap().kind, VerdictKind::No);
        assert_eq!(membership_phi1(&p(&[-6, 1, 1])).unwrap().reason, Some(NoReason::RootOutsideCircle));
    }

    #[test]
    fn invariant_under_content_and_shift() {
        for f in [p(&[1, 1, 1]), p(&[1, -2, 1]), p(&[-2, 1, -1, 1])] {
            let g = f.shift(3).scale(&BigInt::from(7));
            assert_eq!(kind(&f), kind(&g));
        }
    }
}
