//! Image equations, Piene's conductor generator, Milnor numbers, the
//! Jacobian modules and the frontal invariants built on them.

mod curves;
mod report;
mod unfolding;

pub use curves::{codim_ae, plane_curve_invariants, CodimAe};
pub use report::{Conjecture, Flags, InvariantReport, Value};
pub use unfolding::{
    check_good_equation, frontal_codimension, frontal_milnor_siersma, m_f_dimension, samuel_multiplicity_estimate,
    GoodEquation, SamuelEstimate, SiersmaCount, UnfoldingSpec,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::germ::MapGerm;
use crate::ring::calculus::{det, diff, gradient, jacobian, substitute};
use crate::ring::{MonomialOrder, Poly, Ring};
use crate::stdbasis::ops::{eliminate, intersect, squarefree_part, subquotient_dimension};
use crate::stdbasis::{Dim, IdealSpec, Limits};

/// Reduced equation of the image of a germ, over the global target ring.
#[derive(Clone, Debug, Serialize)]
pub struct ImageData {
    pub equation: Poly,
    /// Eliminant of each branch before taking the reduced product.
    pub branch_equations: Vec<Poly>,
}

/// Ring holding source and target coordinates, source first. Source
/// variables get private names so they never collide with target names.
fn graph_ring(f: &MapGerm) -> Result<Ring> {
    let mut names: Vec<String> = (0..f.n()).map(|i| format!("_s{i}")).collect();
    names.extend(f.target().names().iter().cloned());
    Ring::new(&names, MonomialOrder::GlobalDegRevLex)
}

fn to_graph(p: &Poly, big: &Ring, offset: usize) -> Poly {
    let map: Vec<usize> = (0..p.ring().nvars()).map(|i| i + offset).collect();
    p.embed(big, &map)
}

/// Graph ideal `<Y_j - f_j(x)>` of one branch plus extra source-side generators,
/// with the source variables eliminated.
pub(crate) fn eliminate_from_graph(f: &MapGerm, branch: usize, extra: &[Poly], limits: &Limits) -> Result<IdealSpec> {
    let big = graph_ring(f)?;
    let n = f.n();
    let mut gens: Vec<Poly> = f
        .branch(branch)
        .iter()
        .enumerate()
        .map(|(j, c)| &big.var(n + j) - &to_graph(c, &big, 0))
        .collect();
    gens.extend(extra.iter().map(|p| to_graph(p, &big, 0)));
    let vars: Vec<usize> = (0..n).collect();
    let ideal = eliminate(&IdealSpec::new(&big, gens)?, &vars, limits)?;
    let target = f.target().to_global();
    IdealSpec::new(&target, ideal.gens().iter().map(|g| g.reinterpret(&target)).collect())
}

/// Reduced equation `g` of the image with `g ∘ f = 0` on every branch.
pub fn image_equation(f: &MapGerm, limits: &Limits) -> Result<ImageData> {
    let target = f.target().to_global();
    let mut branch_equations = Vec::new();
    let mut product = target.one();
    for b in 0..f.branches().len() {
        let ideal = eliminate_from_graph(f, b, &[], limits)?;
        let basis = ideal.std(limits)?.polys();
        let g = match basis.as_slice() {
            [g] => g.primitive(),
            [] => return Err(Error::precondition("elimination gave the zero ideal")),
            _ => return Err(Error::precondition("the image is not a hypersurface")),
        };
        product = &product * &g;
        branch_equations.push(g);
    }
    let equation = squarefree_part(&product, limits)?.primitive();
    for b in 0..f.branches().len() {
        let comps: Vec<Poly> = f.branch(b).to_vec();
        if !substitute(&equation, &comps)?.is_zero() {
            return Err(Error::precondition("image equation does not vanish along the germ"));
        }
    }
    Ok(ImageData { equation, branch_equations })
}

/// `λ` with `∂g/∂y_i ∘ f = (-1)^i λ M_i` for all `i`, where `M_i` is the minor of
/// `df` omitting row `i` (1-based `i`).
#[derive(Clone, Debug, Serialize)]
pub struct PieneData {
    pub lambda: Poly,
    /// Pullbacks `∂g/∂y_i ∘ f`.
    pub pullbacks: Vec<Poly>,
    /// Signed minors `(-1)^i M_i`.
    pub minors: Vec<Poly>,
}

impl PieneData {
    /// All identities `pullback_i - λ minor_i` vanish.
    pub fn residuals_vanish(&self) -> bool {
        self.pullbacks.iter().zip(&self.minors).all(|(p, m)| (p - &(&self.lambda * m)).is_zero())
    }
}

/// Piene's generator of the conductor for one branch.
pub fn piene_lambda(f: &MapGerm, branch: usize, g: &Poly) -> Result<PieneData> {
    let comps = f.branch(branch);
    let m = comps.len();
    if m != f.n() + 1 {
        return Err(Error::precondition("Piene's identity needs n+1 components"));
    }
    let g = g.reinterpret(&f.target().to_global());
    let jac = jacobian(comps);
    let mut pullbacks = Vec::with_capacity(m);
    let mut minors = Vec::with_capacity(m);
    for i in 0..m {
        pullbacks.push(substitute(&diff(&g, i), comps)?);
        let rows: Vec<Vec<Poly>> = (0..m).filter(|&r| r != i).map(|r| jac[r].clone()).collect();
        let minor = det(&rows, f.source());
        // 1-based sign (-1)^(i+1)
        minors.push(if i % 2 == 0 { -&minor } else { minor });
    }
    let Some(pivot) = minors.iter().position(|p| !p.is_zero()) else {
        return Err(Error::precondition("all maximal minors vanish"));
    };
    let lambda = pullbacks[pivot].exact_div(&minors[pivot])?;
    let data = PieneData { lambda, pullbacks, minors };
    if !data.residuals_vanish() {
        return Err(Error::Division("Piene identities fail: g not reduced or f not generically one-to-one".into()));
    }
    Ok(data)
}

/// `dim O_n / C(f)` with `C(f) = <λ>`.
pub fn conductor_colength(lambda: &Poly, limits: &Limits) -> Result<Dim> {
    let local = lambda.ring().to_local();
    IdealSpec::new(&local, vec![lambda.reinterpret(&local)])?.colength(limits)
}

/// Local Milnor number `dim O / J(g)` at the origin.
pub fn milnor_number(g: &Poly, limits: &Limits) -> Result<Dim> {
    if g.is_zero() {
        return Err(Error::precondition("Milnor number of the zero function"));
    }
    let local = g.ring().to_local();
    let grad: Vec<Poly> = gradient(&g.reinterpret(&local)).into_iter().filter(|p| !p.is_zero()).collect();
    IdealSpec::new(&local, grad)?.colength(limits)
}

/// Every branch satisfies `f^{-1}(0) = {0}`: the global and local colengths of
/// `<f_1, ..., f_{n+1}>` are finite and agree.
pub fn origin_fibre_certified(f: &MapGerm, limits: &Limits) -> Result<bool> {
    for b in f.branches() {
        let gens: Vec<Poly> = b.iter().filter(|p| !p.is_zero()).cloned().collect();
        let global = f.source().to_global();
        let local = f.source().to_local();
        let gi = IdealSpec::new(&global, gens.iter().map(|p| p.reinterpret(&global)).collect())?;
        let li = gi.with_ring(&local);
        match (gi.colength(limits)?, li.colength(limits)?) {
            (Dim::Finite(a), Dim::Finite(b)) if a == b => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// `(f^*)^{-1}(J(g) O_n)` over the local target ring.
pub fn jacobian_preimage(f: &MapGerm, g: &Poly, limits: &Limits) -> Result<IdealSpec> {
    if !origin_fibre_certified(f, limits)? {
        return Err(Error::Inconclusive("the fibre over the origin has points besides the origin".into()));
    }
    let g = g.reinterpret(&f.target().to_global());
    let local = f.target().to_local();
    let mut result: Option<IdealSpec> = None;
    for b in 0..f.branches().len() {
        let pulled: Vec<Poly> =
            gradient(&g).iter().map(|d| substitute(d, f.branch(b))).collect::<Result<Vec<_>>>()?;
        let pulled: Vec<Poly> = pulled.into_iter().filter(|p| !p.is_zero()).collect();
        let pre = eliminate_from_graph(f, b, &pulled, limits)?.with_ring(&local);
        result = Some(match result {
            None => pre,
            Some(acc) => intersect(&acc, &pre, limits)?,
        });
    }
    Ok(result.expect("at least one branch"))
}

/// `dim M̂(g) = dim (f^*)^{-1}(J(g) O_n) / J(g)`.
pub fn hat_m_dimension(f: &MapGerm, g: &Poly, limits: &Limits) -> Result<Dim> {
    let pre = jacobian_preimage(f, g, limits)?;
    let local = pre.ring().clone();
    let jg: Vec<Poly> = gradient(&g.reinterpret(&local)).into_iter().filter(|p| !p.is_zero()).collect();
    let jg = IdealSpec::new(&local, jg)?;
    subquotient_dimension(&pre, &jg, limits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    fn germ(src: &[&str], comps: &[&str]) -> MapGerm {
        MapGerm::parse(src, comps).unwrap()
    }

    fn proportional_to(p: &Poly, text: &str) -> bool {
        let q = p.ring().parse(text).unwrap();
        crate::stdbasis::ops::proportional(p, &q)
    }

    #[test]
    fn image_equations() {
        let img = image_equation(&germ(&["x"], &["x^3", "x^4"]), &lim()).unwrap();
        assert!(proportional_to(&img.equation, "y1^4 - y2^3"));
        let img = image_equation(&germ(&["x", "y"], &["x", "y^2", "y^3"]), &lim()).unwrap();
        assert!(proportional_to(&img.equation, "Z^2 - Y^3"));
        let img = image_equation(&germ(&["x", "y"], &["x", "y^2", "x*y^3"]), &lim()).unwrap();
        assert!(proportional_to(&img.equation, "Z^2 - X^2*Y^3"));
    }

    #[test]
    fn multi_germ_image_is_reduced_product() {
        let f = MapGerm::parse_multi(&["x"], &[&["x", "0"], &["0", "x"], &["x", "0"]]).unwrap();
        let img = image_equation(&f, &lim()).unwrap();
        assert!(proportional_to(&img.equation, "y1*y2"));
    }

    #[test]
    fn immersed_line_has_no_hypersurface_image() {
        assert!(image_equation(&germ(&["x"], &["x", "x", "0"]), &lim()).is_err());
    }

    #[test]
    fn piene_cuspidal_edge() {
        let f = germ(&["x", "y"], &["x", "y^2", "y^3"]);
        let g = image_equation(&f, &lim()).unwrap().equation;
        let p = piene_lambda(&f, 0, &g).unwrap();
        assert!(p.residuals_vanish());
        assert!(proportional_to(&p.lambda, "y^2"));
        assert_eq!(conductor_colength(&p.lambda, &lim()).unwrap(), Dim::Infinite);
    }

    #[test]
    fn piene_e6_conductor() {
        let f = germ(&["x"], &["x^3", "x^4"]);
        let g = image_equation(&f, &lim()).unwrap().equation;
        let p = piene_lambda(&f, 0, &g).unwrap();
        assert!(proportional_to(&p.lambda, "x^6"));
        // conductor colength 2δ with δ = 3
        assert_eq!(conductor_colength(&p.lambda, &lim()).unwrap(), Dim::Finite(6));
    }

    #[test]
    fn milnor_numbers() {
        let r = Ring::global(&["y1", "y2"]);
        assert_eq!(milnor_number(&r.parse("y1^4 - y2^3").unwrap(), &lim()).unwrap(), Dim::Finite(6));
        assert_eq!(milnor_number(&r.parse("y1 + y2^2").unwrap(), &lim()).unwrap(), Dim::Finite(0));
        let r = Ring::global(&["X", "Y", "Z"]);
        assert_eq!(milnor_number(&r.parse("Z^2 - Y^3").unwrap(), &lim()).unwrap(), Dim::Infinite);
    }

    #[test]
    fn hat_m_values() {
        let f = germ(&["x", "y"], &["x", "y^2", "y^3"]);
        let g = image_equation(&f, &lim()).unwrap().equation;
        assert_eq!(hat_m_dimension(&f, &g, &lim()).unwrap(), Dim::Finite(0));

        let f = germ(&["x", "y"], &["x", "y^2", "x*y^3"]);
        let g = image_equation(&f, &lim()).unwrap().equation;
        assert_eq!(hat_m_dimension(&f, &g, &lim()).unwrap(), Dim::Finite(1));

        let f = germ(&["x", "y"], &["x", "y", "0"]);
        let g = image_equation(&f, &lim()).unwrap().equation;
        assert_eq!(hat_m_dimension(&f, &g, &lim()).unwrap(), Dim::Finite(0));
    }

    #[test]
    fn hat_m_unit_rescaling() {
        let f = germ(&["x", "y"], &["x", "y^2", "x*y^3"]);
        let g = image_equation(&f, &lim()).unwrap().equation;
        let u = g.ring().parse("1 + X").unwrap();
        assert_eq!(hat_m_dimension(&f, &(&u * &g), &lim()).unwrap(), Dim::Finite(1));
    }
}
