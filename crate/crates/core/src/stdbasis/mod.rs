//! Standard bases of ideals and submodules over global and local polynomial rings.

mod engine;
pub mod ops;
mod vector;

use std::fmt;

use serde::{Serialize, Serializer};

pub use engine::Limits;
use engine::Engine;
pub(crate) use vector::{ModOrder, Vector};

use crate::error::{Error, Result};
use crate::ring::{ExpVec, Poly, Ring};

/// Vector-space dimension of a quotient; `Infinite` is a regular outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dim {
    Finite(u64),
    Infinite,
}

impl Dim {
    pub fn is_finite(&self) -> bool {
        matches!(self, Dim::Finite(_))
    }

    pub fn finite(&self) -> Option<u64> {
        match self {
            Dim::Finite(d) => Some(*d),
            Dim::Infinite => None,
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Finite(d) => write!(f, "{d}"),
            Dim::Infinite => write!(f, "INFINITE"),
        }
    }
}

impl Serialize for Dim {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Dim::Finite(d) => s.serialize_u64(*d),
            Dim::Infinite => s.serialize_str("INFINITE"),
        }
    }
}

/// Ideal given by generators over a ring (its ordering decides local vs global).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealSpec {
    ring: Ring,
    gens: Vec<Poly>,
}

impl IdealSpec {
    /// Zero generators are dropped; all generators must live in `ring`.
    pub fn new(ring: &Ring, gens: Vec<Poly>) -> Result<IdealSpec> {
        for g in &gens {
            ring.check_same(g.ring())?;
        }
        Ok(IdealSpec { ring: ring.clone(), gens: gens.into_iter().filter(|g| !g.is_zero()).collect() })
    }

    pub fn parse(ring: &Ring, gens: &[&str]) -> Result<IdealSpec> {
        let gens = gens.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>()?;
        IdealSpec::new(ring, gens)
    }

    /// Maximal ideal of the origin.
    pub fn maximal(ring: &Ring) -> IdealSpec {
        IdealSpec { ring: ring.clone(), gens: ring.vars() }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Same generators, viewed in another ordering of the same variables.
    pub fn with_ring(&self, ring: &Ring) -> IdealSpec {
        IdealSpec { ring: ring.clone(), gens: self.gens.iter().map(|g| g.reinterpret(ring)).collect() }
    }

    pub fn sum(&self, other: &IdealSpec) -> Result<IdealSpec> {
        self.ring.check_same(&other.ring)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(IdealSpec { ring: self.ring.clone(), gens })
    }

    pub fn product(&self, other: &IdealSpec) -> Result<IdealSpec> {
        self.ring.check_same(&other.ring)?;
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * b);
            }
        }
        IdealSpec::new(&self.ring, gens)
    }

    pub fn std(&self, limits: &Limits) -> Result<StdBasis> {
        StdBasis::compute(&self.ring, 1, self.gens.iter().map(|g| Vector::from_poly(g, 0)).collect(), limits)
    }

    /// `dim R/I`, counted in the ring's ordering (local colength for local rings).
    pub fn colength(&self, limits: &Limits) -> Result<Dim> {
        Ok(self.std(limits)?.vs_dimension())
    }

    pub fn contains(&self, p: &Poly, limits: &Limits) -> Result<bool> {
        self.std(limits)?.contains(p)
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &IdealSpec, limits: &Limits) -> Result<bool> {
        let b = self.std(limits)?;
        for g in &other.gens {
            if !b.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality by mutual containment.
    pub fn same_ideal(&self, other: &IdealSpec, limits: &Limits) -> Result<bool> {
        Ok(self.contains_ideal(other, limits)? && other.contains_ideal(self, limits)?)
    }

    pub fn is_unit(&self, limits: &Limits) -> Result<bool> {
        self.contains(&self.ring.one(), limits)
    }
}

impl fmt::Display for IdealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.gens.iter().map(|p| p.to_string()).collect();
        write!(f, "<{}>", g.join(", "))
    }
}

/// Submodule of `R^rank` given by generator vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmoduleSpec {
    ring: Ring,
    rank: usize,
    gens: Vec<Vec<Poly>>,
}

impl SubmoduleSpec {
    /// All-zero generators are dropped.
    pub fn new(ring: &Ring, rank: usize, gens: Vec<Vec<Poly>>) -> Result<SubmoduleSpec> {
        for v in &gens {
            if v.len() != rank {
                return Err(Error::Arity { expected: rank, found: v.len() });
            }
            for p in v {
                ring.check_same(p.ring())?;
            }
        }
        let gens = gens.into_iter().filter(|v| v.iter().any(|p| !p.is_zero())).collect();
        Ok(SubmoduleSpec { ring: ring.clone(), rank, gens })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gens(&self) -> &[Vec<Poly>] {
        &self.gens
    }

    pub fn std(&self, limits: &Limits) -> Result<StdBasis> {
        StdBasis::compute(&self.ring, self.rank, self.gens.iter().map(|v| Vector::from_polys(v)).collect(), limits)
    }

    /// `dim R^rank / M`.
    pub fn colength(&self, limits: &Limits) -> Result<Dim> {
        Ok(self.std(limits)?.vs_dimension())
    }
}

/// A standard basis (Gröbner basis when the ordering is global).
#[derive(Clone, Debug)]
pub struct StdBasis {
    ring: Ring,
    rank: usize,
    ord: ModOrder,
    limits: Limits,
    elems: Vec<Vector>,
}

impl StdBasis {
    pub(crate) fn compute(ring: &Ring, rank: usize, gens: Vec<Vector>, limits: &Limits) -> Result<StdBasis> {
        let ord = ModOrder::new(ring.order().clone());
        let elems = Engine::new(&ord, limits, rank).standard_basis(gens)?;
        Ok(StdBasis { ring: ring.clone(), rank, ord, limits: limits.clone(), elems })
    }

    fn engine(&self) -> Engine<'_> {
        Engine::new(&self.ord, &self.limits, self.rank)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub(crate) fn vectors_raw(&self) -> &[Vector] {
        &self.elems
    }

    /// Weak normal form stopping once the leading term lies in a component `>= first`.
    pub(crate) fn reduce_above(&self, v: Vector, first: u32) -> Result<Vector> {
        self.engine().normal_form(v, &self.elems, Some(first))
    }

    /// Basis elements of a rank-one basis as polynomials.
    pub fn polys(&self) -> Vec<Poly> {
        self.elems.iter().map(|v| v.component(&self.ring, 0)).collect()
    }

    pub fn vectors(&self) -> Vec<Vec<Poly>> {
        self.elems.iter().map(|v| v.to_polys(&self.ring, self.rank)).collect()
    }

    /// Leading monomials as `(component, exponent)`.
    pub fn leading_terms(&self) -> Vec<(usize, ExpVec)> {
        self.elems.iter().map(|v| (v.lead().comp as usize, v.lead().exp.clone())).collect()
    }

    /// Normal form of a polynomial (rank one). Fully reduced and unique for
    /// global orderings; a weak normal form (zero exactly on members) otherwise.
    pub fn normal_form(&self, p: &Poly) -> Result<Poly> {
        self.ring.check_same(p.ring())?;
        let v = Vector::from_poly(p, 0);
        let h = if self.ord.order.is_global() {
            self.engine().reduce_fully(v, &self.elems)?
        } else {
            self.engine().normal_form(v, &self.elems, None)?
        };
        Ok(h.component(&self.ring, 0))
    }

    pub fn normal_form_vector(&self, v: &[Poly]) -> Result<Vec<Poly>> {
        if v.len() != self.rank {
            return Err(Error::Arity { expected: self.rank, found: v.len() });
        }
        let v = Vector::from_polys(v);
        let h = if self.ord.order.is_global() {
            self.engine().reduce_fully(v, &self.elems)?
        } else {
            self.engine().normal_form(v, &self.elems, None)?
        };
        Ok(h.to_polys(&self.ring, self.rank))
    }

    pub fn contains(&self, p: &Poly) -> Result<bool> {
        self.ring.check_same(p.ring())?;
        self.member(Vector::from_poly(p, 0))
    }

    pub fn contains_vector(&self, v: &[Poly]) -> Result<bool> {
        if v.len() != self.rank {
            return Err(Error::Arity { expected: self.rank, found: v.len() });
        }
        self.member(Vector::from_polys(v))
    }

    fn member(&self, v: Vector) -> Result<bool> {
        let engine = self.engine();
        if engine.homogenizes() {
            engine.member_by_leads(v, &self.elems)
        } else {
            Ok(engine.normal_form(v, &self.elems, None)?.is_zero())
        }
    }

    /// Every S-vector reduces to zero.
    pub fn is_confluent(&self) -> Result<bool> {
        self.engine().is_confluent(&self.elems)
    }

    /// Number of standard monomials over all components.
    pub fn vs_dimension(&self) -> Dim {
        self.dimension_from_component(0)
    }

    /// Number of standard monomials in components `first..rank`.
    pub fn dimension_from_component(&self, first: usize) -> Dim {
        let n = self.ring.nvars();
        let mut total = 0u64;
        for c in first..self.rank {
            let leads: Vec<ExpVec> = self
                .elems
                .iter()
                .filter(|v| v.lead().comp as usize == c)
                .map(|v| v.lead().exp.clone())
                .collect();
            match count_standard_monomials(n, &leads) {
                Dim::Finite(d) => total += d,
                Dim::Infinite => return Dim::Infinite,
            }
        }
        Dim::Finite(total)
    }

    /// Standard monomials of a rank-one basis with finite colength.
    pub fn standard_monomials(&self) -> Option<Vec<ExpVec>> {
        let leads: Vec<ExpVec> = self.elems.iter().map(|v| v.lead().exp.clone()).collect();
        let bounds = pure_power_bounds(self.ring.nvars(), &leads)?;
        let mut out = Vec::new();
        let mut cur = ExpVec::zeros(self.ring.nvars());
        walk(0, &bounds, &leads, &mut cur, &mut |e| out.push(e.clone()));
        Some(out)
    }
}

fn pure_power_bounds(n: usize, leads: &[ExpVec]) -> Option<Vec<u16>> {
    if leads.iter().any(|e| e.is_one()) {
        return Some(vec![0; n]);
    }
    (0..n)
        .map(|i| leads.iter().filter(|e| e.pure_power_var() == Some(i)).map(|e| e.get(i)).min())
        .collect()
}

fn walk(var: usize, bounds: &[u16], leads: &[ExpVec], cur: &mut ExpVec, visit: &mut dyn FnMut(&ExpVec)) {
    if leads.iter().any(|l| l.divides(cur)) {
        return;
    }
    if var == bounds.len() {
        visit(cur);
        return;
    }
    for k in 0..bounds[var] {
        cur.set(var, k);
        if k > 0 && leads.iter().any(|l| l.divides(cur)) {
            break;
        }
        walk(var + 1, bounds, leads, cur, visit);
    }
    cur.set(var, 0);
}

/// Monomials in `n` variables outside the monomial ideal generated by `leads`.
pub(crate) fn count_standard_monomials(n: usize, leads: &[ExpVec]) -> Dim {
    if leads.iter().any(|e| e.is_one()) {
        return Dim::Finite(0);
    }
    let Some(bounds) = pure_power_bounds(n, leads) else { return Dim::Infinite };
    let mut count = 0u64;
    let mut cur = ExpVec::zeros(n);
    walk(0, &bounds, leads, &mut cur, &mut |_| count += 1);
    Dim::Finite(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn local_basis_of_frontal_minors() {
        let r = Ring::local(&["x", "y"]);
        let i = IdealSpec::parse(&r, &["2*y", "y^4*(7*y^2 + 5*x^7)", "-14*x^6*y^6"]).unwrap();
        let b = i.std(&lim()).unwrap();
        assert_eq!(b.polys(), vec![r.parse("y").unwrap()]);
        let y = IdealSpec::parse(&r, &["y"]).unwrap();
        assert!(i.same_ideal(&y, &lim()).unwrap());
    }

    #[test]
    fn containment_and_plane_curve_ramification() {
        let r = Ring::local(&["x"]);
        let b = IdealSpec::parse(&r, &["x^2", "x^3"]).unwrap().std(&lim()).unwrap();
        assert_eq!(b.polys(), vec![r.parse("x^2").unwrap()]);
        let b = IdealSpec::parse(&r, &["3*x^2", "4*x^3"]).unwrap().std(&lim()).unwrap();
        assert_eq!(b.polys(), vec![r.parse("x^2").unwrap()]);
    }

    #[test]
    fn normal_forms() {
        let r = Ring::local(&["x", "y"]);
        let b = IdealSpec::parse(&r, &["y"]).unwrap().std(&lim()).unwrap();
        assert!(b.normal_form(&r.parse("y^3").unwrap()).unwrap().is_zero());
        assert_eq!(b.normal_form(&r.parse("x").unwrap()).unwrap(), r.parse("x").unwrap());
    }

    #[test]
    fn colengths() {
        let r = Ring::local(&["X", "Y", "Z"]);
        let j = IdealSpec::parse(&r, &["3*Y^2", "2*Z"]).unwrap();
        assert_eq!(j.colength(&lim()).unwrap(), Dim::Infinite);
        let r1 = Ring::local(&["x"]);
        assert_eq!(IdealSpec::parse(&r1, &["x^2"]).unwrap().colength(&lim()).unwrap(), Dim::Finite(2));
        let r2 = Ring::local(&["y1", "y2"]);
        let j = IdealSpec::parse(&r2, &["4*y1^3", "-3*y2^2"]).unwrap();
        assert_eq!(j.colength(&lim()).unwrap(), Dim::Finite(6));
    }

    #[test]
    fn local_unit_generates_everything() {
        let r = Ring::local(&["x", "y"]);
        let i = IdealSpec::parse(&r, &["1 + x", "y^5"]).unwrap();
        assert_eq!(i.colength(&lim()).unwrap(), Dim::Finite(0));
        let g = Ring::global(&["x", "y"]);
        let i = IdealSpec::parse(&g, &["1 + x", "y^5"]).unwrap();
        assert_eq!(i.colength(&lim()).unwrap(), Dim::Finite(5));
    }

    #[test]
    fn mora_handles_non_homogeneous_local_input() {
        let r = Ring::local(&["x", "y"]);
        let i = IdealSpec::parse(&r, &["x^2 + y^3 + x^5", "x*y + y^7"]).unwrap();
        let b = i.std(&lim()).unwrap();
        assert!(b.is_confluent().unwrap());
        assert_eq!(b.vs_dimension(), Dim::Finite(5));
    }

    #[test]
    fn global_reduced_basis_is_unique() {
        let r = Ring::global(&["x", "y"]);
        let a = IdealSpec::parse(&r, &["x^2 - y", "x*y - 1"]).unwrap().std(&lim()).unwrap();
        let b = IdealSpec::parse(&r, &["x*y - 1", "x^2 - y", "x^3 - x*y"]).unwrap().std(&lim()).unwrap();
        assert_eq!(a.polys(), b.polys());
        assert!(a.is_confluent().unwrap());
        assert_eq!(a.vs_dimension(), Dim::Finite(3));
    }

    #[test]
    fn module_colength() {
        let r = Ring::local(&["x"]);
        let x = r.var(0);
        let m = SubmoduleSpec::new(
            &r,
            2,
            vec![vec![x.pow(2), r.zero()], vec![r.zero(), x.pow(3)], vec![x.clone(), x.clone()]],
        )
        .unwrap();
        // R^2 / <(x^2,0),(0,x^3),(x,x)> has dimension 3
        assert_eq!(m.colength(&lim()).unwrap(), Dim::Finite(3));
    }
}
