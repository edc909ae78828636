//! One test per acceptance criterion. Each prints a single summary line with
//! its pinned tolerance; every tolerance is exact equality of integers,
//! booleans or ideals.

mod common;

use std::path::Path;

use common::props;
use common::{plane_curve, univariate};
use frontal_kernel::cli::app::corpus_document;
use frontal_kernel::cli::{GermFile, Settings};
use frontal_kernel::derlog::{apply, derlog, is_free_divisor};
use frontal_kernel::genfam::check_generating_family;
use frontal_kernel::germ::{is_frontal, MapGerm};
use frontal_kernel::invariants::{
    check_good_equation, frontal_codimension, frontal_milnor_siersma, hat_m_dimension, image_equation, m_f_dimension,
    milnor_number, plane_curve_invariants, samuel_multiplicity_estimate, UnfoldingSpec, Value,
};
use frontal_kernel::ring::calculus::{diff, substitute};
use frontal_kernel::ring::{Poly, Ring};
use frontal_kernel::stdbasis::{Dim, IdealSpec, Limits};
use proptest::strategy::Strategy;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

fn lim() -> Limits {
    Limits::default()
}

fn report(n: u32, what: &str, detail: &str) {
    println!("criterion {n}: PASS  {what}  [{detail}]");
}

fn corpus_file(name: &str) -> GermFile {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name);
    GermFile::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn unfolding(file: &str, name: &str) -> UnfoldingSpec {
    corpus_file(file).unfolding_spec(name).unwrap()
}

fn int_of(v: &Value) -> i64 {
    v.int().unwrap_or_else(|| panic!("no value: {v:?}"))
}

/// Number of gaps of the numerical semigroup generated by coprime `a, b`.
fn semigroup_gaps(a: u64, b: u64) -> u64 {
    let bound = a * b;
    (1..bound).filter(|&n| !(0..=n / a).any(|i| (n - i * a) % b == 0)).count() as u64
}

fn same_local_ideal(a: &[Poly], b: &[Poly]) -> bool {
    let local = a[0].ring().to_local();
    let ia = IdealSpec::new(&local, a.iter().map(|p| p.reinterpret(&local)).collect()).unwrap();
    let ib = IdealSpec::new(&local, b.iter().map(|p| p.reinterpret(&local)).collect()).unwrap();
    ia.same_ideal(&ib, &lim()).unwrap()
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(Config::with_cases(cases), TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run_suite<S, F>(cases: u32, strategy: S, test: F)
where
    S: Strategy,
    S::Value: Clone + std::fmt::Debug,
    F: Fn(S::Value) -> Result<(), TestCaseError>,
{
    runner(cases).run(&strategy, test).unwrap();
}

#[test]
fn criterion_1_e6_chain() {
    let (a, b) = (3u64, 4u64);
    let mu_oracle = (a - 1) * (b - 1);
    let delta_oracle = semigroup_gaps(a, b);
    let mult_oracle = a.min(b);

    let target = Ring::global(&["y1", "y2"]);
    let g = target.parse("y1^4 - y2^3").unwrap();
    assert_eq!(milnor_number(&g, &lim()).unwrap(), Dim::Finite(mu_oracle));
    assert_eq!(mu_oracle, 2 * delta_oracle);

    let f = MapGerm::parse(&["x"], &["x^3", "x^4"]).unwrap();
    let inv = plane_curve_invariants(&f, &lim()).unwrap();
    assert_eq!(int_of(&inv.mu), mu_oracle as i64);
    assert_eq!(int_of(&inv.delta), delta_oracle as i64);
    assert_eq!(int_of(&inv.mu_image), delta_oracle as i64);
    assert_eq!(int_of(&inv.mult), mult_oracle as i64);
    let mu_f_oracle = delta_oracle as i64 - mult_oracle as i64 + 1;
    assert_eq!(int_of(&inv.mu_frontal), mu_f_oracle);
    // quasihomogeneous: codim_Ae equals the image Milnor number
    assert_eq!(int_of(&inv.codim_ae), delta_oracle as i64);
    let codim_fe_formula = int_of(&inv.codim_fe);
    assert_eq!(codim_fe_formula, delta_oracle as i64 - mult_oracle as i64 + 1);
    assert_eq!(inv.flags.quasihomogeneous, Some(true));

    let u = unfolding("e6.germ", "F");
    let siersma = frontal_milnor_siersma(&u, 5, &lim()).unwrap();
    assert_eq!(siersma.value, Dim::Finite(mu_f_oracle as u64));
    let trials: Vec<i64> = siersma.trials.iter().map(|(t, _)| *t).collect();
    assert_eq!(trials, vec![1, 2]);
    assert!(siersma.trials.iter().all(|(_, d)| *d == Dim::Finite(1)));

    let good = check_good_equation(&u, &lim()).unwrap();
    let codim_fe_good = frontal_codimension(&good, &lim()).unwrap();
    assert_eq!(codim_fe_good, Dim::Finite(codim_fe_formula as u64));
    assert_eq!(codim_fe_formula, mu_f_oracle);

    report(
        1,
        "E6: mu=6, mu_I=3, mult=3, mu_F=1 (Siersma t=1,2), codim_Fe=1 (formula and good equation)",
        "tolerance: exact integer equality",
    );
}

#[test]
fn criterion_2_nonfrontal_stabilisation_counts_image_milnor_number() {
    let mu_i_oracle = semigroup_gaps(3, 4);
    let u = unfolding("e6_nonfrontal.germ", "N");
    let siersma = frontal_milnor_siersma(&u, 5, &lim()).unwrap();
    assert_eq!(siersma.value, Dim::Finite(mu_i_oracle));
    assert_ne!(siersma.value, Dim::Finite(1));
    assert!(!is_frontal(u.map(), &lim()).unwrap().frontal);
    report(2, "non-frontal stabilisation: Siersma count 3 = mu_I, not 1", "tolerance: exact");
}

#[test]
fn criterion_3_frontality_criterion() {
    let f = MapGerm::parse(&["x", "y"], &["x", "y^2", "x*y^3"]).unwrap();
    let fr = is_frontal(&f, &lim()).unwrap();
    assert!(fr.frontal);
    let y = f.source().var(1);
    assert!(same_local_ideal(&[fr.branches[0].witness.clone().unwrap()], &[y.clone()]));

    let f = MapGerm::parse(&["x", "y"], &["x", "y^2", "y^5 + x^3*y"]).unwrap();
    let fr = is_frontal(&f, &lim()).unwrap();
    assert!(!fr.frontal);
    let x3 = f.source().var(0).pow(3);
    assert!(same_local_ideal(&fr.branches[0].ramification, &[x3, y]));

    run_suite(50, plane_curve(4, 3), |(p, q)| {
        let src = Ring::global(&["x"]);
        let (p, q) = (univariate(&src, &p), univariate(&src, &q));
        let dp = diff(&p, 0);
        let f = MapGerm::new(&src, &Ring::global(&["X", "Y"]), vec![vec![p, q]]).unwrap();
        let fr = is_frontal(&f, &lim()).unwrap();
        proptest::prop_assert!(fr.frontal);
        let w = fr.branches[0].witness.clone().unwrap();
        proptest::prop_assert!(same_local_ideal(&[w], &[dp]));
        Ok(())
    });
    report(3, "frontality: (x,y^2,xy^3) witness <y>; F4 not frontal, R=<x^3,y>; 50 curves witness <p'>", "tolerance: exact booleans and ideal equality");
}

#[test]
fn criterion_4_hat_m_values() {
    for (comps, expected) in [(["x", "y^2", "y^3"], 0u64), (["x", "y^2", "x*y^3"], 1)] {
        let f = MapGerm::parse(&["x", "y"], &comps).unwrap();
        let g = image_equation(&f, &lim()).unwrap().equation;
        assert!(substitute(&g, f.branch(0)).unwrap().is_zero());
        assert_eq!(hat_m_dimension(&f, &g, &lim()).unwrap(), Dim::Finite(expected), "{comps:?}");
    }
    report(4, "hat_M: cuspidal edge 0, folded Whitney umbrella 1", "tolerance: exact");
}

#[test]
fn criterion_5_m_f_not_finite() {
    let u = unfolding("m_f_not_finite.germ", "F");
    let good = check_good_equation(&u, &lim()).unwrap();
    assert!(substitute(&good.equation, u.map().branch(0)).unwrap().is_zero());
    assert_eq!(m_f_dimension(&good, &lim()).unwrap(), Dim::Infinite);
    report(5, "M_F of (x, y^2, y^7 + x^7 y^5) with its unfolding is INFINITE", "tolerance: exact flag");
}

#[test]
fn criterion_6_generating_families() {
    for (src, comps) in [(&["x", "y"][..], &["x", "y^2", "y^3"][..]), (&["x"][..], &["x^3", "x^4"][..])] {
        let f = MapGerm::parse(src, comps).unwrap();
        let check = check_generating_family(&f, None, &lim()).unwrap();
        assert!(check.equals_image, "{comps:?}");
        assert!(check.critical_set_is_graph, "{comps:?}");
        let disc = check.discriminant.reinterpret(&f.target().to_global());
        assert!(substitute(&disc, f.branch(0)).unwrap().is_zero(), "{comps:?}");
    }
    report(6, "generating family: discriminant = image and critical set = graph for cuspidal edge and E6", "tolerance: exact");
}

#[test]
fn criterion_7_free_divisors() {
    for (src, comps) in [
        (&["x", "y"][..], &["x", "y^2", "y^3"][..]),
        (&["a", "y"][..], &["a", "-4*y^3 - 2*a*y", "3*y^4 + a*y^2"][..]),
    ] {
        let f = MapGerm::parse(src, comps).unwrap();
        let g = image_equation(&f, &lim()).unwrap().equation;
        let d = derlog(&g, &lim()).unwrap();
        for xi in &d.generators {
            assert!(apply(&xi.coeffs, &d.equation).exact_div(&d.equation).is_ok());
        }
        let free = is_free_divisor(&d, &lim()).unwrap();
        assert!(free.free, "{comps:?}");
        let det = free.determinant.unwrap();
        let unit = det.exact_div(&d.equation).unwrap();
        assert!(unit.is_local_unit(), "{comps:?}: det = {det}");
    }
    report(7, "Saito: cuspidal edge and swallowtail are free, det = unit * g", "tolerance: exact");
}

#[test]
fn criterion_8_samuel_equals_siersma() {
    for file in ["e6.germ", "cusp.germ"] {
        let u = unfolding(file, "F");
        let siersma = frontal_milnor_siersma(&u, 5, &lim()).unwrap();
        let good = check_good_equation(&u, &lim()).unwrap();
        let samuel = samuel_multiplicity_estimate(&good, 8, &lim()).unwrap();
        assert_eq!(Dim::Finite(samuel.value), siersma.value, "{file}");
        assert_eq!(samuel.window.1 - samuel.window.0, 2, "{file}");
        assert!(samuel.lengths.len() >= 3, "{file}");
    }
    report(8, "Samuel estimate = Siersma count on E6 (1) and cusp (0), stabilised window", "tolerance: exact");
}

#[test]
fn criterion_9_property_suites() {
    run_suite(200, props::leibniz_input(), props::leibniz);
    run_suite(50, props::normal_form_input(), props::normal_forms_are_idempotent);
    run_suite(50, props::colength_input(), props::colength_is_order_independent);
    run_suite(40, plane_curve(3, 2), props::piene_on_curve);
    run_suite(20, props::linear_changes(), props::frontality_is_invariant);

    let settings = Settings::default();
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    for name in ["e6.germ", "folded_umbrella.germ", "tacnode.germ"] {
        let a = corpus_document(&dir.join(name), &settings).unwrap().to_machine();
        let b = corpus_document(&dir.join(name), &settings).unwrap().to_machine();
        assert_eq!(a.as_bytes(), b.as_bytes(), "{name}");
    }
    report(
        9,
        "properties: Leibniz 200, NF idempotence 50, colength order-independence 50, Piene residuals 40, A-invariance 20, deterministic reports",
        "tolerance: exact",
    );
}
