mod common;

use common::*;
use frontal_kernel::germ::{nash_lift, MapGerm, PrenormalForm};
use frontal_kernel::ring::calculus::{diff, substitute};
use frontal_kernel::ring::quasi::quasihomogeneous_weights;
use frontal_kernel::ring::{int, rat, ExpVec, MonomialOrder, Poly, Rational, Ring};
use frontal_kernel::stdbasis::ops::{eliminate, quotient, saturation};
use frontal_kernel::stdbasis::{IdealSpec, Limits};
use proptest::prelude::*;
use std::cmp::Ordering;

fn lim() -> Limits {
    Limits::default()
}

fn orders(n: usize) -> Vec<MonomialOrder> {
    let w: Vec<u32> = (1..=n as u32).collect();
    vec![
        MonomialOrder::GlobalDegRevLex,
        MonomialOrder::LocalAntiGradedRevLex,
        MonomialOrder::Weighted { weights: w.clone(), local: false },
        MonomialOrder::Weighted { weights: w, local: true },
        MonomialOrder::Block {
            blocks: vec![(1, MonomialOrder::GlobalDegRevLex), (n - 1, MonomialOrder::LocalAntiGradedRevLex)],
        },
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn leibniz(input in props::leibniz_input()) {
        props::leibniz(input)?;
    }

    #[test]
    fn substitution_is_a_homomorphism(
        p in raw_poly_deg(2, 4, 5),
        q in raw_poly_deg(2, 4, 5),
        a in raw_poly_deg(3, 2, 3),
        b in raw_poly_deg(3, 2, 3),
    ) {
        let r = Ring::global(&["x", "y"]);
        let s = Ring::global(&["u", "v", "w"]);
        let images = [build(&s, &a), build(&s, &b)];
        let (p, q) = (build(&r, &p), build(&r, &q));
        let lhs = substitute(&(&p * &q), &images).unwrap();
        let rhs = &substitute(&p, &images).unwrap() * &substitute(&q, &images).unwrap();
        prop_assert_eq!(lhs, rhs);
        let sum = substitute(&(&p + &q), &images).unwrap();
        prop_assert_eq!(sum, &substitute(&p, &images).unwrap() + &substitute(&q, &images).unwrap());
    }

    #[test]
    fn orderings_are_total_and_multiplicative(
        a in prop::collection::vec(0u16..5, 3),
        b in prop::collection::vec(0u16..5, 3),
        m in prop::collection::vec(0u16..5, 3),
    ) {
        let (a, b, m) = (ExpVec::from_slice(&a), ExpVec::from_slice(&b), ExpVec::from_slice(&m));
        for ord in orders(3) {
            let ab = ord.compare(&a, &b);
            prop_assert_eq!(ab, ord.compare(&b, &a).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            prop_assert_eq!(ord.compare(&a.mul(&m), &b.mul(&m)), ab);
        }
    }

    #[test]
    fn quasihomogeneous_weights_recheck(raw in raw_poly(3, 4, 5)) {
        let r = Ring::global(&["x", "y", "z"]);
        let p = build(&r, &raw);
        if let Some(w) = quasihomogeneous_weights(&p) {
            for (e, _) in p.terms() {
                let d: Rational = e.iter().zip(&w.weights).map(|(k, wi)| wi * int(k as i64)).sum();
                prop_assert_eq!(&d, &w.degree);
            }
        }
    }
}

/// Every monomial of weighted degree `d` in two or three variables.
fn monomials_of_degree(weights: &[u32], d: u32) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    fn rec(weights: &[u32], left: u32, acc: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        match weights.split_first() {
            None => {
                if left == 0 {
                    out.push(acc.clone());
                }
            }
            Some((&w, rest)) => {
                for k in 0..=left / w {
                    acc.push(k as u16);
                    rec(rest, left - k * w, acc, out);
                    acc.pop();
                }
            }
        }
    }
    rec(weights, d, &mut Vec::new(), &mut out);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn quasihomogeneous_polynomials_are_detected(
        weights in prop::collection::vec(1u32..=4, 3),
        d in 6u32..=12,
        picks in prop::collection::vec((any::<prop::sample::Index>(), 1i64..=4), 1..5),
    ) {
        let monos = monomials_of_degree(&weights, d);
        prop_assume!(!monos.is_empty());
        let r = Ring::global(&["x", "y", "z"]);
        let p = Poly::from_terms(
            &r,
            picks.iter().map(|(i, c)| (ExpVec::from_slice(&monos[i.index(monos.len())]), int(*c))),
        );
        prop_assume!(!p.is_zero());
        let w = quasihomogeneous_weights(&p);
        prop_assert!(w.is_some(), "{} has weights {:?}", p, weights);
        let w = w.unwrap();
        for (e, _) in p.terms() {
            let deg: Rational = e.iter().zip(&w.weights).map(|(k, wi)| wi * int(k as i64)).sum();
            prop_assert_eq!(&deg, &w.degree);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn colength_is_independent_of_the_ordering(input in props::colength_input()) {
        props::colength_is_order_independent(input)?;
    }

    #[test]
    fn normal_forms_are_idempotent_and_certified(input in props::normal_form_input()) {
        props::normal_forms_are_idempotent(input)?;
    }

    #[test]
    fn saturation_contains_and_is_stable(spec in props::finite_ideal(), f in raw_poly_deg(2, 3, 3)) {
        let ring = Ring::global(&["x", "y", "z"]);
        let (a, b, extra) = spec;
        let mut gens = vec![ring.var(0).pow(a as u32) * ring.var(2), ring.var(1).pow(b as u32)];
        let r2 = Ring::global(&["x", "y"]);
        gens.extend(extra.iter().map(|raw| build(&r2, raw).embed(&ring, &[0, 1])).filter(|p| !p.is_zero()));
        let ideal = IdealSpec::new(&ring, gens).unwrap();
        let f = build(&r2, &f).embed(&ring, &[0, 1]);
        prop_assume!(!f.is_zero());
        let sat = saturation(&ideal, &f, &lim()).unwrap();
        prop_assert!(sat.contains_ideal(&ideal, &lim()).unwrap());
        let again = quotient(&sat, &f, &lim()).unwrap();
        prop_assert!(again.same_ideal(&sat, &lim()).unwrap());
    }

    #[test]
    fn elimination_generators_vanish_on_the_parametrization(
        p in prop::collection::vec(-3i64..=3, 4),
        q in prop::collection::vec(-3i64..=3, 4),
        points in prop::collection::vec((-20i64..=20, 1i64..=7), 25),
    ) {
        let mut p = p;
        let mut q = q;
        p[0] = 0;
        q[0] = 0;
        prop_assume!(p.iter().any(|&c| c != 0) && q.iter().any(|&c| c != 0));
        let ring = Ring::global(&["t", "X", "Y"]);
        let t = Ring::global(&["t"]);
        let (pt, qt) = (univariate(&t, &p), univariate(&t, &q));
        let graph = IdealSpec::new(
            &ring,
            vec![&ring.var(1) - &pt.embed(&ring, &[0]), &ring.var(2) - &qt.embed(&ring, &[0])],
        )
        .unwrap();
        let image = eliminate(&graph, &[0], &lim()).unwrap();
        prop_assert!(!image.is_zero());
        for (n, d) in points {
            let t0 = rat(n, d);
            let pt0 = [pt.eval(&[t0.clone()]), qt.eval(&[t0])];
            for g in image.gens() {
                prop_assert!(g.eval(&pt0) == int(0), "{} at {:?}", g, pt0);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn frontality_is_invariant_under_linear_changes(changes in props::linear_changes()) {
        props::frontality_is_invariant(changes)?;
    }
}

fn residual(pf: &PrenormalForm, nash: &frontal_kernel::germ::NashData) -> Vec<Poly> {
    let c = &pf.components;
    (0..pf.source.nvars())
        .map(|v| {
            let mut r = diff(&c[nash.q_index], v);
            for (l, &i) in nash.lambda.iter().zip(&pf.x_targets) {
                r = &r - &(l * &diff(&c[i], v));
            }
            for (m, &i) in nash.mu.iter().zip(&nash.p_indices) {
                r = &r - &(m * &diff(&c[i], v));
            }
            r
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn nash_residual_vanishes(phi in raw_poly_deg(2, 3, 4), psi in raw_poly_deg(1, 4, 3)) {
        // (x, y^2, y^3 phi(x, y^2) + psi(x)) is frontal in prenormal form
        let src = Ring::global(&["x", "y"]);
        let r2 = Ring::global(&["a", "b"]);
        let phi = build(&r2, &phi);
        let x = src.var(0);
        let y = src.var(1);
        let y2 = y.pow(2);
        let phi = substitute(&phi, &[x.clone(), y2.clone()]).unwrap();
        let psi = substitute(&build(&Ring::global(&["a"]), &psi), &[x.clone()]).unwrap();
        let psi = &psi - &frontal_kernel::ring::calculus::set_zero(&psi, &[0]);
        let q = &(&y.pow(3) * &phi) + &psi;
        prop_assume!(!q.is_zero());
        let f = MapGerm::new(&src, &Ring::global(&["X", "Y", "Z"]), vec![vec![x, y2, q]]).unwrap();
        let pf = PrenormalForm::of_branch(&f, 0).unwrap();
        let nash = nash_lift(&pf, None).unwrap();
        prop_assert!(nash.exact);
        for r in residual(&pf, &nash) {
            prop_assert!(r.is_zero());
        }
    }

    #[test]
    fn image_equations_and_piene_identities_on_curves(curve in plane_curve(3, 2)) {
        props::piene_on_curve(curve)?;
    }
}

#[test]
fn nash_residual_on_fixtures() {
    for (src, comps) in [
        (&["x", "y"][..], &["x", "y^2", "y^3"][..]),
        (&["x", "y"][..], &["x", "y^2", "x*y^3"][..]),
        (&["x"][..], &["x^3", "x^4"][..]),
        (&["a", "y"][..], &["a", "-4*y^3 - 2*a*y", "3*y^4 + a*y^2"][..]),
    ] {
        let f = MapGerm::parse(src, comps).unwrap();
        let pf = PrenormalForm::of_branch(&f, 0).unwrap();
        let nash = nash_lift(&pf, None).unwrap();
        assert!(nash.exact);
        assert!(residual(&pf, &nash).iter().all(|r| r.is_zero()), "{comps:?}");
    }
}
