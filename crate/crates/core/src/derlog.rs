//! Logarithmic vector fields `Der(-log X)` of a hypersurface `X = {g = 0}`,
//! Saito's freeness criterion and the splitting `Der(-log X) = (ε) ⊕ Der(-log g)`.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::calculus::{det, diff, gradient};
use crate::ring::quasi::quasihomogeneous_weights;
use crate::ring::{Poly, Rational, Ring};
use crate::stdbasis::ops::{lift, syzygies};
use crate::stdbasis::{IdealSpec, Limits, SubmoduleSpec};

/// A vector field `Σ ξ_i ∂_i` with `ξ(g) = c g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LogField {
    pub coeffs: Vec<Poly>,
    pub cofactor: Poly,
}

#[derive(Clone, Debug, Serialize)]
pub struct LogDerivations {
    pub equation: Poly,
    /// Minimal generators over the local ring.
    pub generators: Vec<LogField>,
}

/// `ξ(p) = Σ ξ_i ∂p/∂y_i`.
pub fn apply(xi: &[Poly], p: &Poly) -> Poly {
    let mut acc = p.ring().zero();
    for (i, c) in xi.iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &(c * &diff(p, i));
        }
    }
    acc
}

/// Lie bracket `[ξ, η]`.
pub fn bracket(xi: &[Poly], eta: &[Poly]) -> Vec<Poly> {
    (0..xi.len()).map(|i| &apply(xi, &eta[i]) - &apply(eta, &xi[i])).collect()
}

/// `ξ(g) ∈ (g)` in the local ring.
pub fn is_logarithmic(xi: &[Poly], g: &Poly, limits: &Limits) -> Result<bool> {
    let local = g.ring().to_local();
    let ideal = IdealSpec::new(&local, vec![g.reinterpret(&local)])?;
    ideal.contains(&apply(xi, g).reinterpret(&local), limits)
}

/// Drop generators lying in the submodule of the others (Nakayama-minimal
/// in the local ring).
fn prune_vectors(ring: &Ring, rank: usize, gens: &[Vec<Poly>], limits: &Limits) -> Result<Vec<usize>> {
    let mut keep: Vec<usize> = (0..gens.len()).collect();
    let mut i = gens.len();
    while i > 0 {
        i -= 1;
        let others: Vec<Vec<Poly>> =
            keep.iter().filter(|&&k| k != i).map(|&k| gens[k].clone()).collect();
        let redundant = gens[i].iter().all(|p| p.is_zero())
            || (!others.is_empty() && SubmoduleSpec::new(ring, rank, others)?.std(limits)?.contains_vector(&gens[i])?);
        if redundant {
            keep.retain(|&k| k != i);
        }
    }
    Ok(keep)
}

fn local_partials(g: &Poly) -> (Ring, Poly, Vec<Poly>) {
    let local = g.ring().to_local();
    let gl = g.reinterpret(&local);
    let grad = gradient(&gl);
    (local, gl, grad)
}

/// Generators of `Der(-log X)`: syzygies of `(∂g/∂y_1, ..., ∂g/∂y_m, g)`,
/// with the last coordinate giving the cofactor.
pub fn derlog(g: &Poly, limits: &Limits) -> Result<LogDerivations> {
    if g.is_zero() {
        return Err(Error::precondition("Der(-log X) of the zero function"));
    }
    let (local, gl, mut gens) = local_partials(g);
    let m = gens.len();
    gens.push(gl.clone());
    let syz = syzygies(&gens, limits)?;
    let fields: Vec<Vec<Poly>> = syz.gens().iter().map(|v| v[..m].to_vec()).collect();
    let cofactors: Vec<Poly> = syz.gens().iter().map(|v| -&v[m]).collect();
    let keep = prune_vectors(&local, m, &fields, limits)?;
    let global = g.ring().to_global();
    let mut generators = Vec::with_capacity(keep.len());
    for k in keep {
        let f = LogField {
            coeffs: fields[k].iter().map(|p| p.reinterpret(&global)).collect(),
            cofactor: cofactors[k].reinterpret(&global),
        };
        if apply(&f.coeffs, &g.reinterpret(&global)) != &f.cofactor * &g.reinterpret(&global) {
            return Err(Error::precondition("logarithmic certificate failed"));
        }
        generators.push(f);
    }
    Ok(LogDerivations { equation: g.reinterpret(&global), generators })
}

#[derive(Clone, Debug, Serialize)]
pub struct Freeness {
    pub free: bool,
    pub generators: usize,
    /// Saito determinant of the coefficient matrix when there are exactly `m` generators.
    pub determinant: Option<Poly>,
    pub note: Option<String>,
}

/// Saito's criterion: `m` minimal generators whose coefficient determinant
/// generates `(g)` in the local ring.
pub fn is_free_divisor(d: &LogDerivations, limits: &Limits) -> Result<Freeness> {
    let g = &d.equation;
    let m = g.ring().nvars();
    let count = d.generators.len();
    if count != m {
        return Ok(Freeness {
            free: false,
            generators: count,
            determinant: None,
            note: Some(format!("{count} minimal generators, rank {m}")),
        });
    }
    let matrix: Vec<Vec<Poly>> = d.generators.iter().map(|f| f.coeffs.clone()).collect();
    let dt = det(&matrix, g.ring());
    let local = g.ring().to_local();
    let a = IdealSpec::new(&local, vec![dt.reinterpret(&local)])?;
    let b = IdealSpec::new(&local, vec![g.reinterpret(&local)])?;
    let free = !dt.is_zero() && a.same_ideal(&b, limits)?;
    Ok(Freeness { free, generators: count, determinant: Some(dt), note: None })
}

/// `ε` with `ε(g) = g` and generators of `Der(-log g) = {ξ : ξ(g) = 0}`.
#[derive(Clone, Debug, Serialize)]
pub struct EpsilonSplit {
    /// `ε = (1/unit) Σ epsilon_i ∂_i`.
    pub epsilon: Vec<Poly>,
    pub unit: Poly,
    pub annihilators: Vec<Vec<Poly>>,
}

pub fn epsilon_split(g: &Poly, limits: &Limits) -> Result<EpsilonSplit> {
    if g.is_zero() {
        return Err(Error::precondition("epsilon split of the zero function"));
    }
    let global = g.ring().to_global();
    let gg = g.reinterpret(&global);
    let m = global.nvars();
    let (epsilon, unit) = match quasihomogeneous_weights(&gg) {
        Some(w) => {
            // weighted Euler field divided by the degree; variables absent from g get 0
            let d = w.degree.clone();
            let eps: Vec<Poly> = (0..m)
                .map(|i| {
                    if gg.involves(i) {
                        global.var(i).scale(&(&w.weights[i] / &d))
                    } else {
                        global.zero()
                    }
                })
                .collect();
            (eps, global.one())
        }
        None => {
            let (local, gl, grad) = local_partials(&gg);
            let nonzero: Vec<usize> = (0..m).filter(|&i| !grad[i].is_zero()).collect();
            let j = IdealSpec::new(&local, nonzero.iter().map(|&i| grad[i].clone()).collect())?;
            let Some(l) = lift(&j, &gl, limits)? else {
                return Err(Error::precondition("g is not in its Jacobian ideal: no ε exists"));
            };
            let mut eps = vec![global.zero(); m];
            for (k, &i) in nonzero.iter().enumerate() {
                eps[i] = l.cofactors[k].reinterpret(&global);
            }
            let mut unit = l.unit.reinterpret(&global);
            if unit.is_constant() {
                let c: Rational = unit.constant_term();
                eps = eps.iter().map(|p| p.scale(&c.recip())).collect();
                unit = global.one();
            }
            (eps, unit)
        }
    };
    debug_assert!(!unit.constant_term().is_zero());
    if apply(&epsilon, &gg) != &unit * &gg {
        return Err(Error::precondition("ε certificate failed"));
    }
    let (local, _, grad) = local_partials(&gg);
    let syz = syzygies(&grad, limits)?;
    let keep = prune_vectors(&local, m, syz.gens(), limits)?;
    let annihilators = keep.iter().map(|&k| syz.gens()[k].iter().map(|p| p.reinterpret(&global)).collect()).collect();
    Ok(EpsilonSplit { epsilon, unit, annihilators })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    fn poly(vars: &[&str], s: &str) -> Poly {
        Ring::global(vars).parse(s).unwrap()
    }

    fn check_certificates(d: &LogDerivations) {
        for f in &d.generators {
            assert_eq!(apply(&f.coeffs, &d.equation), &f.cofactor * &d.equation);
        }
    }

    #[test]
    fn smooth_divisor() {
        let d = derlog(&poly(&["X", "Y", "Z"], "Z"), &lim()).unwrap();
        check_certificates(&d);
        assert_eq!(d.generators.len(), 3);
        assert!(is_free_divisor(&d, &lim()).unwrap().free);
    }

    #[test]
    fn cuspidal_edge_is_free() {
        let g = poly(&["X", "Y", "Z"], "Z^2 - Y^3");
        let d = derlog(&g, &lim()).unwrap();
        check_certificates(&d);
        assert_eq!(d.generators.len(), 3);
        let euler = vec![g.ring().zero(), g.ring().parse("2*Y").unwrap(), g.ring().parse("3*Z").unwrap()];
        assert!(is_logarithmic(&euler, &g, &lim()).unwrap());
        let fr = is_free_divisor(&d, &lim()).unwrap();
        assert!(fr.free);
        let dt = fr.determinant.unwrap();
        assert!(crate::stdbasis::ops::proportional(&dt, &g));
    }

    #[test]
    fn swallowtail_is_free() {
        let g = poly(
            &["u", "v", "w"],
            "256*w^3 - 128*u^2*w^2 + 144*u*v^2*w - 27*v^4 + 16*u^4*w - 4*u^3*v^2",
        );
        let d = derlog(&g, &lim()).unwrap();
        check_certificates(&d);
        let fr = is_free_divisor(&d, &lim()).unwrap();
        assert!(fr.free, "{fr:?}");
    }

    #[test]
    fn non_free_control() {
        let g = poly(&["X", "Y", "Z"], "Y*(X*Z - Y^2)");
        let d = derlog(&g, &lim()).unwrap();
        check_certificates(&d);
        assert!(d.generators.len() > 3);
        assert!(!is_free_divisor(&d, &lim()).unwrap().free);
    }

    #[test]
    fn brackets_stay_logarithmic() {
        let g = poly(&["X", "Y", "Z"], "Z^2 - Y^3");
        let d = derlog(&g, &lim()).unwrap();
        for a in &d.generators {
            for b in &d.generators {
                assert!(is_logarithmic(&bracket(&a.coeffs, &b.coeffs), &g, &lim()).unwrap());
            }
        }
    }

    #[test]
    fn epsilon_for_cuspidal_edge() {
        let g = poly(&["X", "Y", "Z"], "Z^2 - Y^3");
        let e = epsilon_split(&g, &lim()).unwrap();
        let r = g.ring();
        assert_eq!(e.epsilon, vec![r.zero(), r.parse("1/3*Y").unwrap(), r.parse("1/2*Z").unwrap()]);
        assert!(e.unit.is_one());
        for a in &e.annihilators {
            assert!(apply(a, &g).is_zero());
        }
    }

    #[test]
    fn epsilon_needs_g_in_jacobian() {
        let g = poly(&["y1", "y2"], "y1^8 + y1^7 + 3*y1^5*y2 - y2^3");
        assert!(epsilon_split(&g, &lim()).is_err());
    }

    #[test]
    fn epsilon_by_lift_when_not_quasihomogeneous() {
        // x^3 + y^3 + x^2 y^2 is not quasihomogeneous but lies in its Jacobian ideal
        let g = poly(&["x", "y"], "x^3 + y^3 + x^2*y^2");
        assert!(quasihomogeneous_weights(&g).is_none());
        let e = epsilon_split(&g, &lim()).unwrap();
        assert_eq!(apply(&e.epsilon, &g), &e.unit * &g);
    }
}
