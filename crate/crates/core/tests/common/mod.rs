#![allow(dead_code)]

use frontal_kernel::germ::MapGerm;
use frontal_kernel::ring::calculus::substitute;
use frontal_kernel::ring::{int, ExpVec, Poly, Ring};
use proptest::prelude::*;

/// Terms as (exponents, coefficient) pairs.
pub type RawPoly = Vec<(Vec<u16>, i64)>;

pub fn raw_poly(nvars: usize, max_exp: u16, max_terms: usize) -> impl Strategy<Value = RawPoly> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, nvars), -5i64..=5), 0..=max_terms)
}

/// Random polynomial of total degree at most `max_deg`.
pub fn raw_poly_deg(nvars: usize, max_deg: u16, max_terms: usize) -> impl Strategy<Value = RawPoly> {
    raw_poly(nvars, max_deg, max_terms).prop_map(move |terms| {
        terms
            .into_iter()
            .map(|(mut e, c)| {
                while e.iter().sum::<u16>() > max_deg {
                    let i = (0..e.len()).max_by_key(|&i| e[i]).unwrap();
                    e[i] -= 1;
                }
                (e, c)
            })
            .collect()
    })
}

pub fn build(ring: &Ring, raw: &RawPoly) -> Poly {
    Poly::from_terms(ring, raw.iter().map(|(e, c)| (ExpVec::from_slice(e), int(*c))))
}

/// Invertible integer matrix with small entries.
pub fn invertible(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, n), n).prop_filter("singular", |m| det(m) != 0)
}

fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..].iter().map(|r| [&r[..j], &r[j + 1..]].concat()).collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] * det(&minor)
        })
        .sum()
}

/// `ψ ∘ f ∘ φ` for linear `φ` (source) and `ψ` (target).
pub fn linear_change(f: &MapGerm, phi: &[Vec<i64>], psi: &[Vec<i64>]) -> MapGerm {
    let src = f.source();
    let images: Vec<Poly> = phi
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .fold(src.zero(), |acc, (j, &a)| &acc + &src.var(j).scale(&int(a)))
        })
        .collect();
    let branches = f
        .branches()
        .iter()
        .map(|b| {
            let pulled: Vec<Poly> = b.iter().map(|c| substitute(c, &images).unwrap()).collect();
            psi.iter()
                .map(|row| {
                    row.iter()
                        .zip(&pulled)
                        .fold(src.zero(), |acc, (&a, c)| &acc + &c.scale(&int(a)))
                })
                .collect()
        })
        .collect();
    MapGerm::new(src, f.target(), branches).unwrap()
}

/// Random plane curve `(p, q)` with `1 <= ord p <= ord q`.
pub fn plane_curve(max_order: usize, max_gap: usize) -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    (1usize..=max_order, 0usize..=max_gap, prop::collection::vec(-3i64..=3, 3), prop::collection::vec(-3i64..=3, 3)).prop_map(
        |(a, gap, pt, qt)| {
            let mut p = vec![0; a + 4];
            p[a] = 1;
            for (k, c) in pt.iter().enumerate() {
                p[a + 1 + k] = *c;
            }
            let b = a + gap;
            let mut q = vec![0; b + 4];
            q[b] = 2;
            for (k, c) in qt.iter().enumerate() {
                q[b + 1 + k] = *c;
            }
            (p, q)
        },
    )
}

pub fn univariate(ring: &Ring, coeffs: &[i64]) -> Poly {
    Poly::from_terms(
        ring,
        coeffs.iter().enumerate().map(|(k, &c)| (ExpVec::from_slice(&[k as u16]), int(c))),
    )
}
pub mod props;
