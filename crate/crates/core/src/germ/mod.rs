//! Map germs `(C^n, S) -> (C^{n+1}, 0)`: corank, ramification ideal,
//! frontality, Nash lift and wave-front recognition.

mod nash;

pub use nash::{is_wavefront, nash_lift, NashData, PrenormalForm};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::calculus::{jacobian_minors, rank_at_origin};
use crate::ring::{Poly, Ring};
use crate::stdbasis::ops::{min_generator_count, prune_generators};
use crate::stdbasis::{IdealSpec, Limits};

/// A (multi-)germ given by polynomial components, one list per branch. Every
/// branch is parametrized around its own origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapGerm {
    source: Ring,
    target: Ring,
    branches: Vec<Vec<Poly>>,
}

/// Conventional target coordinate names for `m` target variables.
pub fn default_target_names(m: usize) -> Vec<String> {
    match m {
        3 => vec!["X".into(), "Y".into(), "Z".into()],
        _ => (1..=m).map(|i| format!("y{i}")).collect(),
    }
}

impl MapGerm {
    pub fn new(source: &Ring, target: &Ring, branches: Vec<Vec<Poly>>) -> Result<MapGerm> {
        if branches.is_empty() {
            return Err(Error::precondition("a map germ needs at least one branch"));
        }
        for b in &branches {
            if b.len() != target.nvars() {
                return Err(Error::Arity { expected: target.nvars(), found: b.len() });
            }
            for p in b {
                source.check_same(p.ring())?;
                if !p.vanishes_at_origin() {
                    return Err(Error::precondition(format!("component {p} does not vanish at the origin")));
                }
            }
        }
        Ok(MapGerm { source: source.clone(), target: target.clone(), branches })
    }

    /// Monogerm from component strings over global source variables; target
    /// coordinates get the default names.
    pub fn parse(source_vars: &[&str], comps: &[&str]) -> Result<MapGerm> {
        MapGerm::parse_multi(source_vars, &[comps])
    }

    pub fn parse_multi(source_vars: &[&str], branches: &[&[&str]]) -> Result<MapGerm> {
        let source = Ring::new(source_vars, crate::ring::MonomialOrder::GlobalDegRevLex)?;
        let m = branches.first().map_or(0, |b| b.len());
        let target = Ring::global(&default_target_names(m));
        let bs = branches
            .iter()
            .map(|b| b.iter().map(|s| source.parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        MapGerm::new(&source, &target, bs)
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn branches(&self) -> &[Vec<Poly>] {
        &self.branches
    }

    pub fn branch(&self, i: usize) -> &[Poly] {
        &self.branches[i]
    }

    pub fn is_monogerm(&self) -> bool {
        self.branches.len() == 1
    }

    /// Source dimension `n`.
    pub fn n(&self) -> usize {
        self.source.nvars()
    }

    /// Rename the target coordinates.
    pub fn with_target(&self, target: &Ring) -> Result<MapGerm> {
        MapGerm::new(&self.source, target, self.branches.clone())
    }

    /// `n - rank df(0)`, maximized over branches.
    pub fn corank(&self) -> usize {
        self.branches.iter().map(|b| self.n() - rank_at_origin(b)).max().unwrap_or(0)
    }

    /// Ideal of the `k x k` minors of the Jacobian of one branch, in the local ring.
    pub fn jacobian_minors(&self, branch: usize, k: usize) -> Result<IdealSpec> {
        let local = self.source.to_local();
        let b: Vec<Poly> = self.branches[branch].iter().map(|p| p.reinterpret(&local)).collect();
        if k > self.n().min(b.len()) {
            return Err(Error::precondition("minor size exceeds matrix size"));
        }
        IdealSpec::new(&local, jacobian_minors(&b, k))
    }

    /// `R(f)`: maximal minors of `df` for one branch.
    pub fn ramification_ideal(&self, branch: usize) -> Result<IdealSpec> {
        if self.target.nvars() != self.n() + 1 {
            return Err(Error::precondition("ramification ideal needs n+1 components"));
        }
        self.jacobian_minors(branch, self.n())
    }

    /// `mult(f)` for plane curves: sum over branches of the lowest order of the components.
    pub fn multiplicity(&self) -> Result<u32> {
        if self.n() != 1 {
            return Err(Error::precondition("multiplicity is defined here for curves"));
        }
        let mut total = 0;
        for b in &self.branches {
            let m = b.iter().filter_map(|p| p.order_at_origin()).min();
            match m {
                Some(m) => total += m,
                None => return Err(Error::precondition("zero map has no multiplicity")),
            }
        }
        Ok(total)
    }
}

/// Frontality decision for one branch.
#[derive(Clone, Debug, Serialize)]
pub struct BranchFrontality {
    pub frontal: bool,
    /// Minimal number of generators of `R(f)`.
    pub min_generators: u64,
    /// The single generator of `R(f)` when it is principal.
    pub witness: Option<Poly>,
    /// Generators of `R(f)` after pruning.
    pub ramification: Vec<Poly>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Frontality {
    pub frontal: bool,
    pub branches: Vec<BranchFrontality>,
}

impl Frontality {
    pub fn witness(&self) -> Option<&Poly> {
        self.branches.first().and_then(|b| b.witness.as_ref())
    }
}

/// `f` is frontal iff `R(f)` is principal on every branch. A zero ramification
/// ideal (nowhere an immersion) is reported as not frontal.
pub fn is_frontal(f: &MapGerm, limits: &Limits) -> Result<Frontality> {
    let mut out = Vec::new();
    for b in 0..f.branches.len() {
        let r = f.ramification_ideal(b)?;
        if r.is_zero() {
            out.push(BranchFrontality { frontal: false, min_generators: 0, witness: None, ramification: vec![] });
            continue;
        }
        let count = min_generator_count(&r, limits)?;
        let pruned = prune_generators(&r, limits)?;
        debug_assert_eq!(pruned.gens().len() as u64, count);
        let ramification: Vec<Poly> = pruned.gens().iter().map(|g| g.primitive()).collect();
        let frontal = count <= 1;
        let witness = if frontal {
            if r.is_unit(limits)? {
                Some(r.ring().one())
            } else {
                ramification.first().cloned()
            }
        } else {
            None
        };
        out.push(BranchFrontality { frontal, min_generators: count, witness, ramification });
    }
    Ok(Frontality { frontal: out.iter().all(|b| b.frontal), branches: out })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn coranks() {
        assert_eq!(MapGerm::parse(&["x", "y"], &["x", "y^2", "y^3"]).unwrap().corank(), 1);
        assert_eq!(MapGerm::parse(&["x", "y"], &["x", "y", "0"]).unwrap().corank(), 0);
        assert_eq!(MapGerm::parse(&["x"], &["x^3", "x^4"]).unwrap().corank(), 1);
    }

    #[test]
    fn ramification_ideals() {
        let f = MapGerm::parse(&["x", "y"], &["x", "y^2", "x*y^3"]).unwrap();
        let r = f.ramification_ideal(0).unwrap();
        let y = IdealSpec::parse(r.ring(), &["y"]).unwrap();
        assert!(r.same_ideal(&y, &lim()).unwrap());

        let f = MapGerm::parse(&["x", "y"], &["x", "y^2", "y^5 + x^3*y"]).unwrap();
        let r = f.ramification_ideal(0).unwrap();
        let e = IdealSpec::parse(r.ring(), &["x^3", "y"]).unwrap();
        assert!(r.same_ideal(&e, &lim()).unwrap());

        let f = MapGerm::parse(&["x", "y"], &["x", "y", "0"]).unwrap();
        assert!(f.ramification_ideal(0).unwrap().is_unit(&lim()).unwrap());
    }

    #[test]
    fn frontality_decisions() {
        let f = MapGerm::parse(&["x", "y"], &["x", "y^2", "x*y^3"]).unwrap();
        let d = is_frontal(&f, &lim()).unwrap();
        assert!(d.frontal);
        assert_eq!(d.witness().unwrap().to_string(), "y");

        let f = MapGerm::parse(&["x", "y"], &["x", "y^2", "y^5 + x^3*y"]).unwrap();
        let d = is_frontal(&f, &lim()).unwrap();
        assert!(!d.frontal);
        assert_eq!(d.branches[0].min_generators, 2);

        let f = MapGerm::parse(&["x", "y"], &["x", "y^2", "y^7 + x^7*y^5"]).unwrap();
        let d = is_frontal(&f, &lim()).unwrap();
        assert!(d.frontal);
        assert_eq!(d.witness().unwrap().to_string(), "y");
    }

    #[test]
    fn multiplicities() {
        let m = |c: &[&str]| MapGerm::parse(&["x"], c).unwrap().multiplicity().unwrap();
        assert_eq!(m(&["x^3", "x^4"]), 3);
        assert_eq!(m(&["x", "x^2"]), 1);
        assert_eq!(m(&["x^2", "x^3"]), 2);
        assert!(MapGerm::parse(&["x"], &["0", "0"]).unwrap().multiplicity().is_err());
    }

    #[test]
    fn components_must_vanish_at_origin() {
        assert!(MapGerm::parse(&["x"], &["1 + x", "x^2"]).is_err());
    }
}
