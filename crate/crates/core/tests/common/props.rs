//! Property bodies shared by the proptest suites and the acceptance summary.

use frontal_kernel::germ::{is_frontal, MapGerm};
use frontal_kernel::invariants::{image_equation, piene_lambda};
use frontal_kernel::ring::calculus::{diff, substitute};
use frontal_kernel::ring::{MonomialOrder, Ring};
use frontal_kernel::stdbasis::ops::{check_lift, lift};
use frontal_kernel::stdbasis::{IdealSpec, Limits};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use super::{build, invertible, linear_change, raw_poly_deg, univariate, RawPoly};

type Outcome = Result<(), TestCaseError>;

fn lim() -> Limits {
    Limits::default()
}

pub fn leibniz_input() -> impl Strategy<Value = (RawPoly, RawPoly, usize)> {
    (raw_poly_deg(4, 6, 6), raw_poly_deg(4, 6, 6), 0usize..4)
}

pub fn leibniz((p, q, i): (RawPoly, RawPoly, usize)) -> Outcome {
    let r = Ring::global(&["a", "b", "c", "d"]);
    let (p, q) = (build(&r, &p), build(&r, &q));
    prop_assert_eq!(diff(&(&p * &q), i), &(&diff(&p, i) * &q) + &(&p * &diff(&q, i)));
    Ok(())
}

/// Ideal with pure powers `x^a, y^b` plus random extra generators: finite colength.
pub fn finite_ideal() -> impl Strategy<Value = (u16, u16, Vec<RawPoly>)> {
    (2u16..=5, 2u16..=5, prop::collection::vec(raw_poly_deg(2, 4, 4), 0..=2))
}

pub fn ideal_in(ring: &Ring, (a, b, extra): &(u16, u16, Vec<RawPoly>)) -> IdealSpec {
    let mut gens = vec![ring.var(0).pow(*a as u32), ring.var(1).pow(*b as u32)];
    gens.extend(extra.iter().map(|raw| build(ring, raw)).filter(|p| !p.is_zero()));
    IdealSpec::new(ring, gens).unwrap()
}

pub fn colength_input() -> impl Strategy<Value = ((u16, u16, Vec<RawPoly>), (u32, u32))> {
    (finite_ideal(), (1u32..=3, 1u32..=3))
}

pub fn colength_is_order_independent((spec, w): ((u16, u16, Vec<RawPoly>), (u32, u32))) -> Outcome {
    let names = ["x", "y"];
    let weights = vec![w.0, w.1];
    let pairs = [
        (MonomialOrder::GlobalDegRevLex, MonomialOrder::Weighted { weights: weights.clone(), local: false }),
        (MonomialOrder::LocalAntiGradedRevLex, MonomialOrder::Weighted { weights, local: true }),
    ];
    for (o1, o2) in pairs {
        let a = ideal_in(&Ring::new(&names, o1).unwrap(), &spec).colength(&lim()).unwrap();
        let b = ideal_in(&Ring::new(&names, o2).unwrap(), &spec).colength(&lim()).unwrap();
        prop_assert!(a.is_finite());
        prop_assert_eq!(a, b);
    }
    Ok(())
}

pub fn normal_form_input() -> impl Strategy<Value = ((u16, u16, Vec<RawPoly>), RawPoly)> {
    (finite_ideal(), raw_poly_deg(2, 6, 5))
}

pub fn normal_forms_are_idempotent((spec, p): ((u16, u16, Vec<RawPoly>), RawPoly)) -> Outcome {
    for ring in [Ring::global(&["x", "y"]), Ring::local(&["x", "y"])] {
        let ideal = ideal_in(&ring, &spec);
        let basis = ideal.std(&lim()).unwrap();
        prop_assert!(basis.is_confluent().unwrap());
        let p = build(&ring, &p);
        let nf = basis.normal_form(&p).unwrap();
        prop_assert_eq!(nf.is_zero(), basis.contains(&p).unwrap());
        if ring.is_global() {
            prop_assert_eq!(&basis.normal_form(&nf).unwrap(), &nf);
            let diff = &p - &nf;
            let l = lift(&ideal, &diff, &lim()).unwrap();
            prop_assert!(l.is_some());
            prop_assert!(check_lift(&ideal, &diff, &l.unwrap()));
        } else {
            prop_assert!(basis.normal_form(&nf).unwrap().is_zero() == nf.is_zero());
        }
    }
    Ok(())
}

pub fn piene_on_curve((p, q): (Vec<i64>, Vec<i64>)) -> Outcome {
    let src = Ring::global(&["x"]);
    let f = MapGerm::new(&src, &Ring::global(&["X", "Y"]), vec![vec![univariate(&src, &p), univariate(&src, &q)]])
        .unwrap();
    let g = image_equation(&f, &lim()).unwrap().equation;
    prop_assert!(substitute(&g, f.branch(0)).unwrap().is_zero());
    let piene = piene_lambda(&f, 0, &g).unwrap();
    prop_assert!(piene.residuals_vanish());
    Ok(())
}

pub fn frontality_fixtures() -> Vec<MapGerm> {
    vec![
        MapGerm::parse(&["x", "y"], &["x", "y^2", "x*y^3"]).unwrap(),
        MapGerm::parse(&["x", "y"], &["x", "y^2", "y^5 + x^3*y"]).unwrap(),
        MapGerm::parse(&["x", "y"], &["x", "y^2", "y^3"]).unwrap(),
        MapGerm::parse(&["x", "y"], &["x", "y^2", "y^7 + x^7*y^5"]).unwrap(),
        MapGerm::parse(&["x"], &["x^3", "x^4"]).unwrap(),
    ]
}

pub type LinearChanges = (Vec<Vec<i64>>, Vec<Vec<i64>>, i64, Vec<Vec<i64>>);

pub fn linear_changes() -> impl Strategy<Value = LinearChanges> {
    (invertible(2), invertible(3), prop_oneof![-3i64..=-1, 1i64..=3], invertible(2))
}

pub fn frontality_is_invariant((phi2, psi3, phi1, psi2): LinearChanges) -> Outcome {
    for f in frontality_fixtures() {
        let g = if f.n() == 2 { linear_change(&f, &phi2, &psi3) } else { linear_change(&f, &[vec![phi1]], &psi2) };
        prop_assert_eq!(is_frontal(&g, &lim()).unwrap().frontal, is_frontal(&f, &lim()).unwrap().frontal);
    }
    Ok(())
}
