mod common;

use common::{analytic, nonzero_poly, poly, small_rat};
use proptest::prelude::*;
use rbx_core::functionals::{curve_symbolic, membership_nr, system_equation, system_residual};
use rbx_core::linalg::determinant;
use rbx_core::rat::rat;
use rbx_core::rbops::vanishing_basis_matrix;
use rbx_core::{Eliminator, FunCoords, Poly, Rat, TruncOp};

fn monomial(n: usize) -> Poly {
    Poly::monomial(rat(1), n)
}

#[test]
fn vanishing_matrices_are_invertible() {
    for k in 0..=10 {
        assert_ne!(determinant(vanishing_basis_matrix(k)), rat(0), "k = {k}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn analytic_operators_satisfy_the_identity(op in analytic(3), f in poly(3), g in poly(3)) {
        let rf = op.apply(&f);
        let rg = op.apply(&g);
        prop_assert_eq!(&rf * &rg, op.apply(&(&(&rf * &g) + &(&f * &rg))));
    }

    #[test]
    fn truncations_pass_the_identity(op in analytic(3)) {
        let d = 3;
        let t = op.to_trunc(op.sufficient_truncation(d));
        prop_assert!(t.is_rb_upto(&rat(0), d).unwrap());
        prop_assert!(!t.is_rb_upto(&rat(1), d).unwrap());
    }

    #[test]
    fn derivative_recovers_multiplier(op in analytic(4), f in poly(4)) {
        prop_assert_eq!(op.apply(&f).derive(), op.multiplier() * &f);
        prop_assert_eq!(op.apply(&f).eval(op.base_point()), rat(0));
    }

    #[test]
    fn canonicalization_round_trip(op in analytic(4), extra in 0usize..3) {
        let n = op.multiplier().degree().unwrap() + 1 + extra;
        let t = op.to_trunc(n);
        prop_assert_eq!(t.derived_multiplier().unwrap(), op.multiplier().clone());
        prop_assert_eq!(t.to_analytic().unwrap(), op);
    }

    #[test]
    fn truncated_application_is_linear(op in analytic(2), f in poly(4), g in poly(4), s in small_rat()) {
        let t = op.to_trunc(4);
        let combo = &f + &g.scale(&s);
        prop_assert_eq!(t.apply(&combo).unwrap(), &t.apply(&f).unwrap() + &t.apply(&g).unwrap().scale(&s));
        prop_assert_eq!(t.apply(&f).unwrap(), op.apply(&f));
    }

    #[test]
    fn residual_is_symmetric(r in nonzero_poly(2), c in prop::collection::vec(small_rat(), 12), f in poly(3), g in poly(3)) {
        let fc = FunCoords::new(r, c).unwrap();
        prop_assert_eq!(fc.residual(&f, &g).unwrap(), fc.residual(&g, &f).unwrap());
    }

    #[test]
    fn residual_on_monomials_is_the_system(r in nonzero_poly(2), c in prop::collection::vec(small_rat(), 12), n in 0usize..4, m in 0usize..4) {
        let fc = FunCoords::new(r.clone(), c.clone()).unwrap();
        let by_functional = fc.residual(&monomial(n), &monomial(m)).unwrap();
        prop_assert_eq!(&by_functional, &system_residual(&r, &c, n, m).unwrap());
        prop_assert_eq!(by_functional, system_equation(&r, n, m).eval(&c).unwrap());
    }

    #[test]
    fn curve_points_solve_the_system(r in nonzero_poly(2), a in small_rat(), f in poly(3), g in poly(3)) {
        let fc = FunCoords::on_curve(&r, &a, 10).unwrap();
        prop_assert_eq!(fc.residual(&f, &g).unwrap(), rat(0));
        for n in 0..3 {
            for m in 0..=n {
                prop_assert_eq!(system_residual(&r, fc.coords(), n, m).unwrap(), rat(0));
            }
        }
    }

    #[test]
    fn functionals_match_operators(op in analytic(3)) {
        let t = op.to_trunc(6);
        let fc = FunCoords::from_operator(&t).unwrap();
        let direct = FunCoords::on_curve(op.multiplier(), op.base_point(), 7).unwrap();
        prop_assert_eq!(&fc, &direct);
        prop_assert_eq!(fc.to_operator(6).unwrap(), t);
    }

    #[test]
    fn system_is_symmetric(r in nonzero_poly(3), n in 0usize..5, m in 0usize..5) {
        prop_assert_eq!(system_equation(&r, n, m), system_equation(&r, m, n));
    }

    #[test]
    fn elimination_agrees_with_curve(r in nonzero_poly(2), a in small_rat()) {
        let k = r.degree().unwrap();
        let elim = Eliminator::new(&r).unwrap();
        let curve = FunCoords::on_curve(&r, &a, k + 6).unwrap();
        for t in k + 1..k + 6 {
            let p = elim.elimination_poly(t).unwrap();
            prop_assert!(p.max_var().is_none_or(|v| v < t));
            prop_assert_eq!(&p.eval(curve.coords()).unwrap(), &curve.coords()[t]);
        }
        let extended = elim.extend_head(&curve.coords()[..=k], k + 6).unwrap();
        prop_assert_eq!(extended.as_slice(), curve.coords());
    }

    #[test]
    fn reductions_vanish_on_curve(r in nonzero_poly(2), n in 0usize..3, m in 0usize..3) {
        let elim = Eliminator::new(&r).unwrap();
        let k = r.degree().unwrap();
        let g = elim.reduce(n, m).unwrap();
        prop_assert!(g.max_var().is_none_or(|v| v <= k));
        prop_assert!(elim.annihilated_on_curve(n, m).unwrap());
        // independent check: evaluate g at a curve point
        let at = FunCoords::on_curve(&r, &rat(3), k + 1).unwrap();
        prop_assert_eq!(g.eval(at.coords()).unwrap(), rat(0));
    }

    #[test]
    fn curve_membership(r in nonzero_poly(2), a in small_rat()) {
        let k = r.degree().unwrap();
        let head = FunCoords::on_curve(&r, &a, k + 1).unwrap().coords().to_vec();
        prop_assert_eq!(membership_nr(&r, &head).unwrap(), Some(a));
        prop_assert!(Eliminator::new(&r).unwrap().member_mr(&head, 3).unwrap());
    }

    #[test]
    fn symbolic_curve_matches_numeric(r in nonzero_poly(3), a in small_rat()) {
        let numeric = FunCoords::on_curve(&r, &a, 5).unwrap();
        let values: Vec<Rat> = curve_symbolic(&r, 5).iter().map(|e| e.eval(&a)).collect();
        prop_assert_eq!(values.as_slice(), numeric.coords());
    }
}

#[test]
fn generic_identity_failures() {
    let t = TruncOp::identity(4);
    assert_eq!(t.first_rb_failure(&rat(0), 1).unwrap(), Some((0, 0)));
    assert!(TruncOp::zero(4).is_rb_upto(&rat(0), 2).unwrap());
}
