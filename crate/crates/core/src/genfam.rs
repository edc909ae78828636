//! Generating families of wave fronts: `h(u, x, y) = (x, u, h'(u, x, y))`
//! with `h' = q + Σ μ_i (u_i - p_i)`, whose discriminant is the front.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::germ::{MapGerm, NashData, PrenormalForm};
use crate::invariants::{eliminate_from_graph, ImageData};
use crate::ring::calculus::{det, diff, substitute};
use crate::ring::{MonomialOrder, Poly, Ring};
use crate::stdbasis::ops::{saturation, squarefree_part};
use crate::stdbasis::{IdealSpec, Limits};

#[derive(Clone, Debug)]
pub struct GeneratingFamily {
    /// `h` over the source variables of the prenormal form followed by `u`.
    pub map: MapGerm,
    pub h_prime: Poly,
    /// Target index carrying `h'`.
    pub h_index: usize,
    /// Indices of `u` and `y` in the source ring of `h`.
    pub u: Vec<usize>,
    pub y: Vec<usize>,
    /// `μ` and `p` embedded in the source ring of `h`.
    pub mu: Vec<Poly>,
    pub p: Vec<Poly>,
    pub exact: bool,
    pub jet_order: Option<u32>,
}

fn u_names(source: &Ring, k: usize) -> Vec<String> {
    (1..=k)
        .map(|j| {
            let mut name = format!("u{j}");
            while source.var_index(&name).is_some() {
                name.push('_');
            }
            name
        })
        .collect()
}

/// Build `h` from a prenormal form and its Nash lift. Fails when
/// `det(∂μ/∂y)(0) = 0`, i.e. when `f` is not a wave front.
pub fn generating_family(pf: &PrenormalForm, nash: &NashData, target: &Ring) -> Result<GeneratingFamily> {
    let k = pf.k();
    let n = pf.source.nvars();
    let dmu: Vec<Vec<Poly>> = nash.mu.iter().map(|m| pf.y.iter().map(|&y| diff(m, y)).collect()).collect();
    let d = det(&dmu, &pf.source);
    if !d.is_local_unit() {
        return Err(Error::precondition("det(dμ/dy)(0) = 0: not a wave front"));
    }
    let names = u_names(&pf.source, k);
    let ring = pf.source.extend(&names, MonomialOrder::GlobalDegRevLex)?;
    let lift_map: Vec<usize> = (0..n).collect();
    let up = |p: &Poly| p.embed(&ring, &lift_map);
    let u: Vec<usize> = (n..n + k).collect();
    let mu: Vec<Poly> = nash.mu.iter().map(up).collect();
    let p: Vec<Poly> = nash.p_indices.iter().map(|&t| up(&pf.components[t])).collect();
    let mut h_prime = up(&pf.components[nash.q_index]);
    for j in 0..k {
        h_prime = &h_prime + &(&mu[j] * &(&ring.var(u[j]) - &p[j]));
    }
    let mut comps = vec![ring.zero(); n + 1];
    for (i, &t) in pf.x_targets.iter().enumerate() {
        comps[t] = ring.var(pf.x[i]);
    }
    for (j, &t) in nash.p_indices.iter().enumerate() {
        comps[t] = ring.var(u[j]);
    }
    comps[nash.q_index] = h_prime.clone();
    let map = MapGerm::new(&ring, target, vec![comps])?;
    Ok(GeneratingFamily {
        map,
        h_prime,
        h_index: nash.q_index,
        u,
        y: pf.y.clone(),
        mu,
        p,
        exact: nash.exact,
        jet_order: nash.jet_order,
    })
}

impl GeneratingFamily {
    fn ring(&self) -> &Ring {
        self.map.source()
    }

    /// `∂h'/∂y_l` for each `l`.
    pub fn critical_equations(&self) -> Vec<Poly> {
        self.y.iter().map(|&y| diff(&self.h_prime, y)).collect()
    }

    /// `det(∂μ/∂y)`.
    pub fn mu_jacobian(&self) -> Poly {
        let m: Vec<Vec<Poly>> = self.mu.iter().map(|mu| self.y.iter().map(|&y| diff(mu, y)).collect()).collect();
        det(&m, self.ring())
    }

    /// `h(p(x, y), x, y) = f(x, y)`.
    pub fn restricts_to(&self, pf: &PrenormalForm) -> Result<bool> {
        let ring = self.ring();
        let mut images: Vec<Poly> = ring.vars();
        for (j, &u) in self.u.iter().enumerate() {
            images[u] = self.p[j].clone();
        }
        let n = pf.source.nvars();
        let back: Vec<usize> = (0..n).collect();
        for (c, f) in self.map.branch(0).iter().zip(&pf.components) {
            if substitute(c, &images)? != f.embed(ring, &back) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The critical set of `h` is the graph `u = p(x, y)`: `<∂h'/∂y> = <u - p>` in the local ring.
    pub fn critical_set_is_graph(&self, limits: &Limits) -> Result<bool> {
        let local = self.ring().to_local();
        let crit: Vec<Poly> = self.critical_equations().iter().map(|p| p.reinterpret(&local)).collect();
        let graph: Vec<Poly> =
            self.u.iter().zip(&self.p).map(|(&u, p)| (&self.ring().var(u) - p).reinterpret(&local)).collect();
        if graph.is_empty() {
            return Ok(crit.iter().all(|c| c.is_zero()));
        }
        IdealSpec::new(&local, crit)?.same_ideal(&IdealSpec::new(&local, graph)?, limits)
    }

    /// Row identity `∂h'/∂y_l = Σ_i ∂μ_i/∂y_l (u_i - p_i)`, exact when the lift is exact.
    pub fn critical_rows_hold(&self) -> bool {
        self.y.iter().zip(self.critical_equations()).all(|(&y, c)| {
            let mut rhs = self.ring().zero();
            for (j, &u) in self.u.iter().enumerate() {
                rhs = &rhs + &(&diff(&self.mu[j], y) * &(&self.ring().var(u) - &self.p[j]));
            }
            c == rhs
        })
    }
}

/// Reduced equation of the discriminant: image of the critical set of `h`,
/// after removing the locus where `det(∂μ/∂y)` vanishes.
pub fn discriminant(h: &GeneratingFamily, limits: &Limits) -> Result<ImageData> {
    let ring = h.ring().clone();
    let crit: Vec<Poly> = h.critical_equations().into_iter().filter(|p| !p.is_zero()).collect();
    let d = h.mu_jacobian();
    let crit = if crit.is_empty() || d.is_constant() {
        crit
    } else {
        saturation(&IdealSpec::new(&ring, crit)?, &d, limits)?.gens().to_vec()
    };
    let ideal = eliminate_from_graph(&h.map, 0, &crit, limits)?;
    let basis = ideal.std(limits)?.polys();
    let g = match basis.as_slice() {
        [g] => g.primitive(),
        [] => return Err(Error::precondition("the discriminant eliminant is zero")),
        _ => return Err(Error::precondition("the discriminant is not a hypersurface")),
    };
    let equation = squarefree_part(&g, limits)?.primitive();
    Ok(ImageData { equation: equation.clone(), branch_equations: vec![equation] })
}

/// The two reduced equations generate the same ideal of the local ring
/// (each divides the other up to a unit).
pub fn verify_discriminant_equals_image(image: &Poly, disc: &Poly, limits: &Limits) -> Result<bool> {
    let local = image.ring().to_local();
    let disc = disc.embed_by_name(image.ring())?;
    let a = IdealSpec::new(&local, vec![image.reinterpret(&local)])?;
    let b = IdealSpec::new(&local, vec![disc.reinterpret(&local)])?;
    a.same_ideal(&b, limits)
}

/// Summary of the generating-family checks for one germ.
#[derive(Clone, Debug, Serialize)]
pub struct GenfamCheck {
    pub h: Vec<Poly>,
    pub discriminant: Poly,
    pub equals_image: bool,
    pub critical_set_is_graph: bool,
    pub restricts_to_f: bool,
    pub exact: bool,
    pub jet_order: Option<u32>,
}

/// Build `h`, compute its discriminant and compare with the image of `f`.
pub fn check_generating_family(f: &MapGerm, jet_order: Option<u32>, limits: &Limits) -> Result<GenfamCheck> {
    if !f.is_monogerm() {
        return Err(Error::precondition("generating families are built for monogerms"));
    }
    let pf = PrenormalForm::of_branch(f, 0)?;
    let nash = crate::germ::nash_lift(&pf, jet_order)?;
    let h = generating_family(&pf, &nash, f.target())?;
    let disc = discriminant(&h, limits)?;
    let image = crate::invariants::image_equation(f, limits)?;
    Ok(GenfamCheck {
        h: h.map.branch(0).to_vec(),
        equals_image: verify_discriminant_equals_image(&image.equation, &disc.equation, limits)?,
        discriminant: disc.equation,
        critical_set_is_graph: h.critical_set_is_graph(limits)?,
        restricts_to_f: h.restricts_to(&pf)?,
        exact: h.exact,
        jet_order: h.jet_order,
    })
}
