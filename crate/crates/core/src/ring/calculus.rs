//! Derivatives, substitution, Jacobian minors and jets.

use num_traits::Zero;

use super::monomial::ExpVec;
use super::poly::Poly;
use super::ring::Ring;
use super::Rational;
use crate::error::{Error, Result};

/// Formal partial derivative with respect to variable `var`.
pub fn diff(p: &Poly, var: usize) -> Poly {
    assert!(var < p.ring().nvars(), "variable index out of range");
    Poly::from_terms(
        p.ring(),
        p.terms().iter().filter(|(e, _)| e.get(var) > 0).map(|(e, c)| {
            let k = e.get(var);
            let mut ne = e.clone();
            ne.set(var, k - 1);
            (ne, c * Rational::from_integer(k.into()))
        }),
    )
}

pub fn gradient(p: &Poly) -> Vec<Poly> {
    (0..p.ring().nvars()).map(|i| diff(p, i)).collect()
}

/// Composition `p(images)`; all images must share one ring.
pub fn substitute(p: &Poly, images: &[Poly]) -> Result<Poly> {
    if images.len() != p.ring().nvars() {
        return Err(Error::Arity { expected: p.ring().nvars(), found: images.len() });
    }
    let target = match images.first() {
        Some(q) => q.ring().clone(),
        None => {
            return Err(Error::precondition("substitution into a ring without variables"));
        }
    };
    for q in images {
        target.check_same(q.ring())?;
    }
    // cache powers per variable
    let mut powers: Vec<Vec<Poly>> = images.iter().map(|q| vec![Poly::one(&target), q.clone()]).collect();
    let mut acc = Poly::zero(&target);
    for (e, c) in p.terms() {
        let mut t = Poly::constant(&target, c.clone());
        for (i, k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let k = k as usize;
            while powers[i].len() <= k {
                let next = &powers[i][powers[i].len() - 1] * &images[i];
                powers[i].push(next);
            }
            t = &t * &powers[i][k];
        }
        acc = &acc + &t;
    }
    Ok(acc)
}

/// Jacobian matrix `d f_i / d x_j` (rows = components).
pub fn jacobian(components: &[Poly]) -> Vec<Vec<Poly>> {
    components
        .iter()
        .map(|f| (0..f.ring().nvars()).map(|j| diff(f, j)).collect())
        .collect()
}

/// Determinant of a square polynomial matrix by cofactor expansion.
pub fn det(m: &[Vec<Poly>], ring: &Ring) -> Poly {
    let n = m.len();
    match n {
        0 => Poly::one(ring),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        _ => {
            let mut acc = Poly::zero(ring);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect())
                    .collect();
                let term = &m[0][j] * &det(&minor, ring);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All `k x k` minors of the Jacobian of `components`, zero minors dropped.
pub fn jacobian_minors(components: &[Poly], k: usize) -> Vec<Poly> {
    let Some(first) = components.first() else { return Vec::new() };
    let ring = first.ring().clone();
    let jac = jacobian(components);
    let (rows, cols) = (jac.len(), ring.nvars());
    let mut out = Vec::new();
    for rs in subsets(rows, k) {
        for cs in subsets(cols, k) {
            let sub: Vec<Vec<Poly>> =
                rs.iter().map(|&r| cs.iter().map(|&c| jac[r][c].clone()).collect()).collect();
            let d = det(&sub, &ring);
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    out
}

/// Terms of total degree at most `d`.
pub fn jet(p: &Poly, d: u32) -> Poly {
    Poly::from_terms(
        p.ring(),
        p.terms().iter().filter(|(e, _)| e.degree() <= d).cloned(),
    )
}

/// Terms of weighted degree at most `d`.
pub fn weighted_jet(p: &Poly, weights: &[u32], d: u64) -> Poly {
    Poly::from_terms(
        p.ring(),
        p.terms().iter().filter(|(e, _)| e.weighted_degree(weights) <= d).cloned(),
    )
}

/// Homogeneous part of total degree `d`.
pub fn homogeneous_part(p: &Poly, d: u32) -> Poly {
    Poly::from_terms(p.ring(), p.terms().iter().filter(|(e, _)| e.degree() == d).cloned())
}

/// Linear part `d p (0)` as a coefficient vector.
pub fn linear_coeffs(p: &Poly) -> Vec<Rational> {
    let n = p.ring().nvars();
    (0..n).map(|i| p.coeff(&ExpVec::var_power(n, i, 1))).collect()
}

/// Rank of the Jacobian of `components` at the origin.
pub fn rank_at_origin(components: &[Poly]) -> usize {
    let rows: Vec<Vec<Rational>> = components.iter().map(linear_coeffs).collect();
    super::linalg::rank(&rows)
}

/// Set every variable in `vars` to zero.
pub fn set_zero(p: &Poly, vars: &[usize]) -> Poly {
    Poly::from_terms(
        p.ring(),
        p.terms().iter().filter(|(e, _)| vars.iter().all(|&v| e.get(v) == 0)).cloned(),
    )
}

/// Value of variable `var` fixed to `value`.
pub fn specialize(p: &Poly, var: usize, value: &Rational) -> Poly {
    Poly::from_terms(
        p.ring(),
        p.terms().iter().map(|(e, c)| {
            let k = e.get(var);
            let mut ne = e.clone();
            ne.set(var, 0);
            let v = if k == 0 { c.clone() } else { c * num_traits::pow(value.clone(), k as usize) };
            (ne, v)
        }),
    )
}

pub fn is_identically_zero(ps: &[Poly]) -> bool {
    ps.iter().all(|p| p.terms().iter().all(|(_, c)| c.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_rule() {
        let r = Ring::global(&["y1", "y2"]);
        let g = r.parse("y1^4 - y2^3").unwrap();
        assert_eq!(diff(&g, 1), r.parse("-3*y2^2").unwrap());
        assert!(diff(&r.parse("7").unwrap(), 0).is_zero());
        let r3 = Ring::global(&["X", "Y", "Z"]);
        assert_eq!(diff(&r3.parse("Z^2 - Y^3").unwrap(), 2), r3.parse("2*Z").unwrap());
    }

    #[test]
    fn pullback_of_image_equation_vanishes() {
        let src = Ring::global(&["x"]);
        let tgt = Ring::global(&["y1", "y2"]);
        let g = tgt.parse("y1^4 - y2^3").unwrap();
        let f = vec![src.parse("x^3").unwrap(), src.parse("x^4").unwrap()];
        assert!(substitute(&g, &f).unwrap().is_zero());

        let src = Ring::global(&["x", "y"]);
        let tgt = Ring::global(&["X", "Y", "Z"]);
        let g = tgt.parse("Z^2 - Y^3").unwrap();
        let f: Vec<Poly> = ["x", "y^2", "y^3"].iter().map(|s| src.parse(s).unwrap()).collect();
        assert!(substitute(&g, &f).unwrap().is_zero());
        assert_eq!(substitute(&g, &tgt.vars()).unwrap(), g);
    }

    #[test]
    fn jets() {
        let r = Ring::global(&["x"]);
        assert_eq!(jet(&r.parse("x + x^3").unwrap(), 2), r.parse("x").unwrap());
        let p = r.parse("x^5 - 2*x").unwrap();
        assert_eq!(jet(&p, 5), p);
    }

    #[test]
    fn minors_of_folded_umbrella() {
        let r = Ring::global(&["x", "y"]);
        let f: Vec<Poly> = ["x", "y^2", "x*y^3"].iter().map(|s| r.parse(s).unwrap()).collect();
        let m = jacobian_minors(&f, 2);
        assert_eq!(m.len(), 3);
        assert_eq!(m[0], r.parse("2*y").unwrap());
        assert_eq!(rank_at_origin(&f), 1);
    }

    #[test]
    fn determinant_3x3() {
        let r = Ring::global(&["a"]);
        let c = |n: i64| Poly::integer(&r, n);
        let m = vec![
            vec![c(2), c(0), c(1)],
            vec![c(1), c(3), c(2)],
            vec![c(1), c(1), c(1)],
        ];
        assert_eq!(det(&m, &r), c(0));
    }
}
