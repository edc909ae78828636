//! Detection of quasihomogeneity.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::linalg;
use super::poly::{fmt_rational, Poly};
use super::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiWeights {
    /// Positive weights, scaled to coprime integers.
    pub weights: Vec<Rational>,
    pub degree: Rational,
    /// Variables whose weight is not determined by the polynomial.
    pub free: Vec<bool>,
}

impl QuasiWeights {
    pub fn integer_weights(&self) -> Vec<u32> {
        self.weights
            .iter()
            .map(|w| w.to_integer().try_into().expect("weight fits in u32"))
            .collect()
    }

    pub fn integer_degree(&self) -> u64 {
        self.degree.to_integer().try_into().expect("degree fits in u64")
    }
}

#[derive(Serialize)]
struct QuasiWeightsJson {
    weights: Vec<String>,
    degree: String,
    free: Vec<bool>,
}

impl Serialize for QuasiWeights {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        QuasiWeightsJson {
            weights: self.weights.iter().map(fmt_rational).collect(),
            degree: fmt_rational(&self.degree),
            free: self.free.clone(),
        }
        .serialize(s)
    }
}

const SEARCH_BOUND: i64 = 12;

/// Positive weights `w` and degree `d` with `w . a = d` for every exponent `a` of `p`.
///
/// Variables absent from `p` get weight 1 and are flagged free. When the
/// system leaves several weights undetermined, the smallest positive integer
/// completion (by sum of the free parameters, then lexicographically) is used.
pub fn quasihomogeneous_weights(p: &Poly) -> Option<QuasiWeights> {
    if p.is_zero() || p.terms().iter().any(|(e, _)| e.is_one()) {
        return None;
    }
    let n = p.ring().nvars();
    let present: Vec<usize> = (0..n).filter(|&i| p.involves(i)).collect();
    let m = present.len();
    // unknowns: weights of present variables, then d
    let mut rows: Vec<Vec<Rational>> = p
        .terms()
        .iter()
        .map(|(e, _)| {
            let mut row: Vec<Rational> =
                present.iter().map(|&i| Rational::from_integer(e.get(i).into())).collect();
            row.push(-Rational::one());
            row
        })
        .collect();
    let pivots = linalg::rref(&mut rows);
    let cols = m + 1;
    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    if free_cols.is_empty() {
        return None;
    }
    let k = free_cols.len();
    let mut found = None;
    'search: for total in k as i64..=(k as i64 * SEARCH_BOUND) {
        for combo in compositions(total, k, SEARCH_BOUND) {
            let mut sol = vec![Rational::zero(); cols];
            for (j, &c) in free_cols.iter().enumerate() {
                sol[c] = Rational::from_integer(combo[j].into());
            }
            for (r, &pc) in pivots.iter().enumerate() {
                let mut v = Rational::zero();
                for &c in &free_cols {
                    v -= &rows[r][c] * &sol[c];
                }
                sol[pc] = v;
            }
            if sol.iter().all(|x| x.is_positive()) {
                found = Some(sol);
                break 'search;
            }
        }
    }
    let sol = found?;
    let mut weights = vec![Rational::one(); n];
    let mut free = vec![true; n];
    for (j, &i) in present.iter().enumerate() {
        weights[i] = sol[j].clone();
        free[i] = free_cols.contains(&j);
    }
    let mut degree = sol[m].clone();
    // scale present weights and degree to coprime integers, absent ones stay 1
    let mut den = BigInt::one();
    for &i in &present {
        den = den.lcm(weights[i].denom());
    }
    den = den.lcm(degree.denom());
    let mut g = BigInt::zero();
    for &i in &present {
        g = g.gcd(&(&weights[i] * Rational::from_integer(den.clone())).to_integer());
    }
    let scale = Rational::new(den, g);
    for &i in &present {
        weights[i] = &weights[i] * &scale;
    }
    degree = &degree * &scale;
    let q = QuasiWeights { weights, degree, free };
    debug_assert!(check_weights(p, &q));
    Some(q)
}

/// Re-check that every term has the claimed weighted degree.
pub fn check_weights(p: &Poly, q: &QuasiWeights) -> bool {
    p.terms().iter().all(|(e, _)| {
        let d: Rational = e
            .iter()
            .zip(&q.weights)
            .map(|(k, w)| w * Rational::from_integer(k.into()))
            .sum();
        d == q.degree
    })
}

/// Ordered tuples of `k` integers in `1..=bound` summing to `total`, lexicographic.
fn compositions(total: i64, k: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(rem: i64, k: usize, bound: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() + 1 == k {
            if (1..=bound).contains(&rem) {
                cur.push(rem);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        let left = (k - cur.len() - 1) as i64;
        for v in 1..=bound.min(rem - left) {
            cur.push(v);
            rec(rem - v, k, bound, cur, out);
            cur.pop();
        }
    }
    if k > 0 {
        rec(total, k, bound, &mut cur, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::poly::int;
    use crate::ring::Ring;

    #[test]
    fn e6_weights() {
        let r = Ring::global(&["y1", "y2"]);
        let q = quasihomogeneous_weights(&r.parse("y1^4 - y2^3").unwrap()).unwrap();
        assert_eq!(q.weights, vec![int(3), int(4)]);
        assert_eq!(q.degree, int(12));
        assert_eq!(q.free, vec![false, false]);
    }

    #[test]
    fn absent_variable_is_free() {
        let r = Ring::global(&["X", "Y", "Z"]);
        let q = quasihomogeneous_weights(&r.parse("Z^2 - Y^3").unwrap()).unwrap();
        assert_eq!(q.weights, vec![int(1), int(2), int(3)]);
        assert_eq!(q.degree, int(6));
        assert_eq!(q.free, vec![true, false, false]);
    }

    #[test]
    fn not_quasihomogeneous() {
        let r = Ring::global(&["x"]);
        assert!(quasihomogeneous_weights(&r.parse("x + x^2").unwrap()).is_none());
        assert!(quasihomogeneous_weights(&r.parse("1 + x").unwrap()).is_none());
    }

    #[test]
    fn underdetermined_system_gets_minimal_completion() {
        let r = Ring::global(&["x", "y"]);
        let q = quasihomogeneous_weights(&r.parse("x*y").unwrap()).unwrap();
        assert_eq!(q.weights, vec![int(1), int(1)]);
        assert_eq!(q.degree, int(2));
        assert!(check_weights(&r.parse("x*y").unwrap(), &q));
    }

    #[test]
    fn swallowtail_weights() {
        let r = Ring::global(&["u", "v", "w"]);
        let g = r
            .parse("256*w^3 - 128*u^2*w^2 + 144*u*v^2*w - 27*v^4 + 16*u^4*w - 4*u^3*v^2")
            .unwrap();
        let q = quasihomogeneous_weights(&g).unwrap();
        assert_eq!(q.weights, vec![int(2), int(3), int(4)]);
        assert_eq!(q.degree, int(12));
    }
}
