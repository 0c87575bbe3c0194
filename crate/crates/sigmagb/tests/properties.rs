use num_bigint::BigInt;
use num_traits::{One, Signed};
use proptest::prelude::*;

use sigmagb::algebraic::isolate_complex_roots;
use sigmagb::cli::{parse_poly, render};
use sigmagb::ipsearch::{build_phi0_system, find_witness, quadratic_min_degree, series_lower_bound};
use sigmagb::phi::{compute_fstar, in_phi0, membership_phi1, VerdictKind};
use sigmagb::sigma::{finite_gb, grem, ideal_membership, to_binomial, BinomialBasis, FiniteGb};
use sigmagb::zx::{sqfree_decompose, IntPoly};
use sigmagb::zx_ideal::{zx_groebner, zx_reduce};

fn poly(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-bound..=bound, 1..=max_deg + 1).prop_map(|c| IntPoly::from_i64(&c))
}

/// Primitive, `f(0) != 0`, positive leading coefficient, degree at least one.
fn core_poly(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    (prop::collection::vec(-bound..=bound, 1..=max_deg), 1..=bound.min(3), 1..=bound).prop_filter_map(
        "not a core",
        |(mut c, lc, c0)| {
            c[0] = if c[0] < 0 { -c0 } else { c0 };
            c.push(lc);
            let f = IntPoly::from_i64(&c);
            (f.content() == BigInt::one()).then_some(f)
        },
    )
}

fn x2x1_basis() -> BinomialBasis {
    match finite_gb(&IntPoly::from_i64(&[1, 1, 1]), None).unwrap() {
        FiniteGb::Basis(b) => b,
        other => panic!("{other:?}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn render_parse_round_trip(f in poly(8, 50)) {
        prop_assert_eq!(parse_poly(&render(&f)).unwrap(), f);
    }

    #[test]
    fn square_free_decomposition_reconstructs(f in poly(6, 6), g in poly(2, 3)) {
        let f = &f * &g.pow(2);
        prop_assume!(f.degree().is_some_and(|d| d > 0));
        let dec = sqfree_decompose(&f).unwrap();
        let back = dec.factors.iter().fold(IntPoly::constant(dec.content.clone()), |acc, (s, e)| &acc * &s.pow(*e));
        prop_assert_eq!(back, f);
    }

    #[test]
    fn isolation_accounts_for_every_root(f in poly(8, 9)) {
        prop_assume!(f.degree().is_some_and(|d| d > 0));
        let total: usize = isolate_complex_roots(&f).unwrap().iter().map(|b| b.multiplicity()).sum();
        prop_assert_eq!(total, f.deg());
    }

    #[test]
    fn verdict_witnesses_are_valid(f in core_poly(4, 6)) {
        let v = membership_phi1(&f).unwrap();
        if in_phi0(&f) {
            prop_assert_eq!(v.kind, VerdictKind::InPhi0);
        }
        match v.kind {
            VerdictKind::InPhi0 | VerdictKind::Yes => {
                let g = v.witness.unwrap();
                prop_assert!(g.is_monic());
                prop_assert!(in_phi0(&(&f * &g)));
            }
            _ => prop_assert!(v.witness.is_none()),
        }
    }

    #[test]
    fn fstar_generates_the_contraction(f in core_poly(5, 5), delta in 1usize..=4) {
        let fs = compute_fstar(&f, delta).unwrap();
        if delta == 1 {
            prop_assert_eq!(&fs, &f.primitive());
        }
        prop_assert!(f.divides(&fs.compose_pow(delta)));
    }

    #[test]
    fn linear_system_matches_product(f in core_poly(4, 5), tail in prop::collection::vec(-10i64..=10, 0..=3)) {
        let mut g = tail.clone();
        g.push(1);
        let g = IntPoly::from_i64(&g);
        let sys = build_phi0_system(&f, tail.len()).unwrap();
        prop_assert_eq!(sys.is_satisfied_by(&g), in_phi0(&(&f * &g)));
    }

    #[test]
    fn witness_search_results_are_sound(f in core_poly(3, 5)) {
        let w = find_witness(&f, 6).unwrap();
        if let Some((g, m)) = &w.witness {
            prop_assert!(g.is_monic() && g.deg() == *m);
            prop_assert!(in_phi0(&(&f * g)));
            let s = series_lower_bound(&f).unwrap();
            if s.conclusive {
                prop_assert!(s.bound <= *m);
            }
            let d = f.coeffs();
            if f.deg() == 2 && &d[1] * &d[1] < &d[0] * &d[2] * 4 && w.is_minimal() {
                prop_assert_eq!(quadratic_min_degree(&f).unwrap(), *m);
            }
        }
    }

    #[test]
    fn zx_basis_structure(gens in prop::collection::vec(poly(3, 6), 1..=3)) {
        let gens: Vec<IntPoly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let b = zx_groebner(&gens).unwrap();
        prop_assert!(b.has_chain_structure());
        for g in &gens {
            prop_assert!(zx_reduce(g, &b).is_zero());
        }
        let lc: Vec<_> = b.elements().iter().map(|e| e.lc()).collect();
        prop_assert!(lc.iter().all(|c| c.is_positive()));
    }

    #[test]
    fn basis_decides_principal_membership(q in poly(5, 5), r in poly(1, 3)) {
        let f = IntPoly::from_i64(&[1, 1, 1]);
        let h = &(&f * &q) + &r;
        prop_assume!(!h.is_zero());
        let member = ideal_membership(&h, &f).unwrap();
        prop_assert_eq!(grem(&to_binomial(&h), &x2x1_basis()).is_none(), member);
    }
}
