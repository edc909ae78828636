//! Ideal operations built on standard bases: elimination, syzygies,
//! quotients, saturation, subquotient dimensions, lifting, gcd.

use num_traits::Zero;

use super::{Dim, IdealSpec, Limits, SubmoduleSpec, Vector};
use crate::error::{Error, Result};
use crate::ring::calculus::diff;
use crate::ring::{MonomialOrder, Poly, Ring};

fn restrict_order(order: &MonomialOrder, keep: &[usize]) -> MonomialOrder {
    match order {
        MonomialOrder::Weighted { weights, local } => MonomialOrder::Weighted {
            weights: keep.iter().map(|&i| weights[i]).collect(),
            local: *local,
        },
        o if o.is_global() => MonomialOrder::GlobalDegRevLex,
        o if o.is_local() => MonomialOrder::LocalAntiGradedRevLex,
        _ => MonomialOrder::GlobalDegRevLex,
    }
}

/// `I ∩ K[remaining variables]`, returned over the ring of remaining variables.
///
/// The eliminated block is ordered globally; the remaining block keeps the
/// ring's ordering, so local rings give the local elimination ideal.
pub fn eliminate(ideal: &IdealSpec, vars: &[usize], limits: &Limits) -> Result<IdealSpec> {
    let ring = ideal.ring();
    let n = ring.nvars();
    if vars.iter().any(|&v| v >= n) {
        return Err(Error::precondition("elimination variable out of range"));
    }
    let keep: Vec<usize> = (0..n).filter(|i| !vars.contains(i)).collect();
    let keep_names: Vec<&str> = keep.iter().map(|&i| ring.name(i)).collect();
    let sub_order = restrict_order(ring.order(), &keep);
    let sub = Ring::new(&keep_names, sub_order.clone())?;
    if vars.is_empty() {
        return IdealSpec::new(&sub, ideal.gens().iter().map(|g| g.reinterpret(&sub)).collect());
    }
    let mut names: Vec<&str> = vars.iter().map(|&i| ring.name(i)).collect();
    names.extend(keep_names.iter());
    let order = MonomialOrder::Block {
        blocks: vec![(vars.len(), MonomialOrder::GlobalDegRevLex), (keep.len(), sub_order)],
    };
    let big = Ring::new(&names, order)?;
    let mut map = vec![0; n];
    for (k, &v) in vars.iter().enumerate() {
        map[v] = k;
    }
    for (k, &v) in keep.iter().enumerate() {
        map[v] = vars.len() + k;
    }
    let gens: Vec<Poly> = ideal.gens().iter().map(|g| g.embed(&big, &map)).collect();
    let basis = IdealSpec::new(&big, gens)?.std(limits)?;
    let k = vars.len();
    let back: Vec<usize> = (0..big.nvars()).map(|i| if i < k { usize::MAX } else { i - k }).collect();
    let mut out = Vec::new();
    for p in basis.polys() {
        if (0..k).any(|i| p.involves(i)) {
            continue;
        }
        out.push(embed_dropping(&p, &sub, &back));
    }
    IdealSpec::new(&sub, out)
}

fn embed_dropping(p: &Poly, ring: &Ring, map: &[usize]) -> Poly {
    Poly::from_terms(
        ring,
        p.terms().iter().map(|(e, c)| {
            let mut ne = crate::ring::ExpVec::zeros(ring.nvars());
            for (i, &k) in map.iter().enumerate() {
                if k != usize::MAX {
                    ne.set(k, e.get(i));
                }
            }
            (ne, c.clone())
        }),
    )
}

/// Submodule of `R^m` formed by all relations `sum a_i gens_i = 0` among vectors of `R^s`.
pub fn syzygies_of_vectors(ring: &Ring, s: usize, gens: &[Vec<Poly>], limits: &Limits) -> Result<SubmoduleSpec> {
    let m = gens.len();
    if m == 0 {
        return Err(Error::precondition("syzygies of an empty list"));
    }
    let mut ext = Vec::with_capacity(m);
    for (i, v) in gens.iter().enumerate() {
        if v.len() != s {
            return Err(Error::Arity { expected: s, found: v.len() });
        }
        let mut w = v.clone();
        for k in 0..m {
            w.push(if k == i { ring.one() } else { ring.zero() });
        }
        ext.push(w);
    }
    let basis = SubmoduleSpec::new(ring, s + m, ext)?.std(limits)?;
    let mut out = Vec::new();
    for v in basis.vectors_raw() {
        if (v.lead().comp as usize) < s {
            continue;
        }
        out.push(v.to_polys(ring, s + m)[s..].to_vec());
    }
    SubmoduleSpec::new(ring, m, out)
}

/// Relations `sum a_i g_i = 0`.
pub fn syzygies(gens: &[Poly], limits: &Limits) -> Result<SubmoduleSpec> {
    let Some(first) = gens.first() else {
        return Err(Error::precondition("syzygies of an empty list"));
    };
    let ring = first.ring().clone();
    let vs: Vec<Vec<Poly>> = gens.iter().map(|g| vec![g.clone()]).collect();
    syzygies_of_vectors(&ring, 1, &vs, limits)
}

/// `(I : f) = {a : a f ∈ I}`, as first coordinates of syzygies of `(f, gens)`.
pub fn quotient(ideal: &IdealSpec, f: &Poly, limits: &Limits) -> Result<IdealSpec> {
    if f.is_zero() {
        return Err(Error::precondition("quotient by zero"));
    }
    let ring = ideal.ring();
    if ideal.is_zero() {
        return IdealSpec::new(ring, vec![]);
    }
    let mut gens = vec![f.clone()];
    gens.extend(ideal.gens().iter().cloned());
    let syz = syzygies(&gens, limits)?;
    IdealSpec::new(ring, syz.gens().iter().map(|v| v[0].clone()).collect())
}

/// `(I : f^∞)` by iterated quotients until the ideal stops growing.
pub fn saturation(ideal: &IdealSpec, f: &Poly, limits: &Limits) -> Result<IdealSpec> {
    let mut cur = ideal.clone();
    for _ in 0..limits.max_degree.max(1) {
        let next = reduced(&quotient(&cur, f, limits)?, limits)?;
        if cur.contains_ideal(&next, limits)? {
            return Ok(cur);
        }
        cur = next;
    }
    Err(Error::ResourceLimit("saturation did not stabilize".into()))
}

/// The ideal presented by its (minimal) standard basis.
pub fn reduced(ideal: &IdealSpec, limits: &Limits) -> Result<IdealSpec> {
    let b = ideal.std(limits)?;
    IdealSpec::new(ideal.ring(), b.polys())
}

/// `I ∩ J` via syzygies of the concatenated generators.
pub fn intersect(a: &IdealSpec, b: &IdealSpec, limits: &Limits) -> Result<IdealSpec> {
    a.ring().check_same(b.ring())?;
    let ring = a.ring();
    if a.is_zero() || b.is_zero() {
        return IdealSpec::new(ring, vec![]);
    }
    let mut gens: Vec<Poly> = a.gens().to_vec();
    gens.extend(b.gens().iter().map(|g| -g));
    let syz = syzygies(&gens, limits)?;
    let m = a.gens().len();
    let out: Vec<Poly> = syz
        .gens()
        .iter()
        .map(|v| {
            let mut acc = ring.zero();
            for (c, g) in v[..m].iter().zip(a.gens()) {
                acc = &acc + &(c * g);
            }
            acc
        })
        .collect();
    reduced(&IdealSpec::new(ring, out)?, limits)
}

/// `dim I1 / I2` for `I2 ⊆ I1`.
///
/// `I1 = <g_1..g_s>` is presented as `R^s -> I1`; the submodule of
/// coefficient vectors landing in `I2` is obtained by eliminating the first
/// component of `<(g_i; e_i), (h_j; 0)>` in `R^{1+s}`.
pub fn subquotient_dimension(i1: &IdealSpec, i2: &IdealSpec, limits: &Limits) -> Result<Dim> {
    i1.ring().check_same(i2.ring())?;
    if !i1.contains_ideal(i2, limits)? {
        return Err(Error::precondition("subquotient requires the second ideal inside the first"));
    }
    subquotient_dimension_unchecked(i1, i2, limits)
}

pub(crate) fn subquotient_dimension_unchecked(i1: &IdealSpec, i2: &IdealSpec, limits: &Limits) -> Result<Dim> {
    let ring = i1.ring();
    let s = i1.gens().len();
    if s == 0 {
        return Ok(Dim::Finite(0));
    }
    let mut gens: Vec<Vec<Poly>> = Vec::new();
    for (i, g) in i1.gens().iter().enumerate() {
        let mut v = vec![g.clone()];
        for k in 0..s {
            v.push(if k == i { ring.one() } else { ring.zero() });
        }
        gens.push(v);
    }
    for h in i2.gens() {
        let mut v = vec![h.clone()];
        v.extend((0..s).map(|_| ring.zero()));
        gens.push(v);
    }
    let basis = SubmoduleSpec::new(ring, 1 + s, gens)?.std(limits)?;
    Ok(basis.dimension_from_component(1))
}

/// Certified ideal membership `u p = sum a_i g_i` with `u` a unit.
#[derive(Clone, Debug)]
pub struct Lift {
    pub unit: Poly,
    pub cofactors: Vec<Poly>,
}

/// Express `p` through the generators of `ideal`, or `None` when `p ∉ I`.
/// The identity is checked exactly before returning.
pub fn lift(ideal: &IdealSpec, p: &Poly, limits: &Limits) -> Result<Option<Lift>> {
    let ring = ideal.ring();
    ring.check_same(p.ring())?;
    let m = ideal.gens().len();
    if p.is_zero() {
        return Ok(Some(Lift { unit: ring.one(), cofactors: vec![ring.zero(); m] }));
    }
    if m == 0 {
        return Ok(None);
    }
    let rank = m + 2;
    let mut gens = Vec::with_capacity(m);
    for (i, g) in ideal.gens().iter().enumerate() {
        let mut v = vec![g.clone()];
        for k in 0..m {
            v.push(if k == i { ring.one() } else { ring.zero() });
        }
        v.push(ring.zero());
        gens.push(v);
    }
    let basis = SubmoduleSpec::new(ring, rank, gens)?.std(limits)?;
    let mut target = vec![p.clone()];
    target.extend((0..m).map(|_| ring.zero()));
    target.push(ring.one());
    let h = basis.reduce_above(Vector::from_polys(&target), 1)?;
    let h = h.to_polys(ring, rank);
    if !h[0].is_zero() {
        return Ok(None);
    }
    let unit = h[m + 1].clone();
    let cofactors: Vec<Poly> = h[1..=m].iter().map(|a| -a).collect();
    let l = Lift { unit, cofactors };
    if !check_lift(ideal, p, &l) {
        return Err(Error::precondition("lift certificate failed to verify"));
    }
    Ok(Some(l))
}

/// `u p == sum a_i g_i` exactly and `u(0) != 0`.
pub fn check_lift(ideal: &IdealSpec, p: &Poly, l: &Lift) -> bool {
    if !l.unit.is_local_unit() || l.cofactors.len() != ideal.gens().len() {
        return false;
    }
    let mut rhs = p.ring().zero();
    for (a, g) in l.cofactors.iter().zip(ideal.gens()) {
        rhs = &rhs + &(a * g);
    }
    &l.unit * p == rhs
}

/// Single-pass pruning of generators lying in the ideal of the others. In a
/// local ring the result is a minimal generating set (Nakayama).
pub fn prune_generators(ideal: &IdealSpec, limits: &Limits) -> Result<IdealSpec> {
    if ideal.ring().is_local() {
        return nakayama_prune(ideal, limits);
    }
    let mut keep: Vec<Poly> = ideal.gens().to_vec();
    let mut i = keep.len();
    while i > 0 {
        i -= 1;
        let others: Vec<Poly> = keep.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, g)| g.clone()).collect();
        if IdealSpec::new(ideal.ring(), others)?.contains(&keep[i], limits)? {
            keep.remove(i);
        }
    }
    IdealSpec::new(ideal.ring(), keep)
}

/// Greedy choice of generators whose images span `I / m I`.
fn nakayama_prune(ideal: &IdealSpec, limits: &Limits) -> Result<IdealSpec> {
    let ring = ideal.ring();
    let mi = IdealSpec::maximal(ring).product(ideal)?;
    let finite = |d: Dim| d.finite().ok_or_else(|| Error::precondition("I/mI infinite for a finitely generated ideal"));
    let mut rest = finite(subquotient_dimension_unchecked(ideal, &mi, limits)?)?;
    let mut keep: Vec<Poly> = Vec::new();
    for g in ideal.gens() {
        if rest == 0 {
            break;
        }
        let mut trial = keep.clone();
        trial.push(g.clone());
        let sub = IdealSpec::new(ring, trial.clone())?.sum(&mi)?;
        let r = finite(subquotient_dimension_unchecked(ideal, &sub, limits)?)?;
        if r < rest {
            keep = trial;
            rest = r;
        }
    }
    IdealSpec::new(ring, keep)
}

/// `dim I / m I` in a local ring: the minimal number of generators.
pub fn min_generator_count(ideal: &IdealSpec, limits: &Limits) -> Result<u64> {
    let ring = ideal.ring();
    if !ring.is_local() {
        return Err(Error::precondition("minimal generators need a local ordering"));
    }
    let mi = IdealSpec::maximal(ring).product(ideal)?;
    match subquotient_dimension_unchecked(ideal, &mi, limits)? {
        Dim::Finite(d) => Ok(d),
        Dim::Infinite => Err(Error::precondition("I/mI infinite for a finitely generated ideal")),
    }
}

fn global_copy(p: &Poly) -> Poly {
    p.reinterpret(&p.ring().to_global())
}

/// Greatest common divisor in `Q[x]`, normalized by [`Poly::primitive`].
pub fn gcd(a: &Poly, b: &Poly, limits: &Limits) -> Result<Poly> {
    a.ring().check_same(b.ring())?;
    if a.is_zero() {
        return Ok(b.primitive());
    }
    if b.is_zero() {
        return Ok(a.primitive());
    }
    if a.is_constant() || b.is_constant() {
        return Ok(a.ring().one());
    }
    let (ga, gb) = (global_copy(a), global_copy(b));
    let ring = ga.ring().clone();
    let lcm = intersect(
        &IdealSpec::new(&ring, vec![ga.clone()])?,
        &IdealSpec::new(&ring, vec![gb.clone()])?,
        limits,
    )?;
    let [l] = lcm.gens() else {
        return Err(Error::precondition("intersection of principal ideals is not principal"));
    };
    let g = (&ga * &gb).exact_div(l)?;
    Ok(g.primitive().reinterpret(a.ring()))
}

/// `g / gcd(g, dg/dx_1, ..., dg/dx_n)`, primitive.
pub fn squarefree_part(g: &Poly, limits: &Limits) -> Result<Poly> {
    if g.is_zero() {
        return Err(Error::precondition("squarefree part of zero"));
    }
    let mut d = g.clone();
    for i in 0..g.ring().nvars() {
        if d.is_constant() {
            break;
        }
        let gi = diff(g, i);
        if !gi.is_zero() {
            d = gcd(&d, &gi, limits)?;
        }
    }
    Ok(global_copy(g).exact_div(&global_copy(&d))?.primitive().reinterpret(g.ring()))
}

pub fn is_squarefree(g: &Poly, limits: &Limits) -> Result<bool> {
    let s = squarefree_part(g, limits)?;
    Ok(s.degree() == g.degree() && s.len() > 0 && !g.is_zero())
}

/// Whether `a` and `b` differ by a nonzero constant factor.
pub fn proportional(a: &Poly, b: &Poly) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_zero() && b.is_zero();
    }
    let c = b.leading_coeff().unwrap() / a.leading_coeff().unwrap();
    !c.is_zero() && &a.scale(&c) == b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn implicitize_e6() {
        let r = Ring::global(&["x", "Y1", "Y2"]);
        let i = IdealSpec::parse(&r, &["Y1 - x^3", "Y2 - x^4"]).unwrap();
        let e = eliminate(&i, &[0], &lim()).unwrap();
        assert_eq!(e.gens().len(), 1);
        let y = e.ring().parse("Y1^4 - Y2^3").unwrap();
        assert!(proportional(&e.gens()[0], &y));
    }

    #[test]
    fn implicitize_cuspidal_edge() {
        let r = Ring::global(&["x", "y", "X", "Y", "Z"]);
        let i = IdealSpec::parse(&r, &["X - x", "Y - y^2", "Z - y^3"]).unwrap();
        let e = eliminate(&i, &[0, 1], &lim()).unwrap();
        let expected = e.ring().parse("Z^2 - Y^3").unwrap();
        assert_eq!(e.gens().len(), 1);
        assert!(proportional(&e.gens()[0], &expected));
        let same = eliminate(&i, &[], &lim()).unwrap();
        assert_eq!(same.gens(), i.gens());
    }

    #[test]
    fn koszul_syzygy() {
        let r = Ring::global(&["x", "y"]);
        let s = syzygies(&[r.var(0), r.var(1)], &lim()).unwrap();
        assert_eq!(s.gens().len(), 1);
        let v = &s.gens()[0];
        assert!(proportional(&v[0], &r.var(1)) && proportional(&v[1], &-r.var(0)));
        assert!(syzygies(&[r.parse("x^2 + y").unwrap()], &lim()).unwrap().gens().is_empty());
    }

    #[test]
    fn saturation_removes_component() {
        let r = Ring::global(&["x", "y"]);
        let i = IdealSpec::parse(&r, &["x*y"]).unwrap();
        let s = saturation(&i, &r.var(1), &lim()).unwrap();
        assert!(s.same_ideal(&IdealSpec::parse(&r, &["x"]).unwrap(), &lim()).unwrap());
        let l = Ring::local(&["x", "y"]);
        let i = IdealSpec::parse(&l, &["x^2", "y^3"]).unwrap();
        let s = saturation(&i, &l.parse("1 + x").unwrap(), &lim()).unwrap();
        assert!(s.same_ideal(&i, &lim()).unwrap());
    }

    #[test]
    fn subquotients() {
        let r = Ring::local(&["x"]);
        let a = IdealSpec::parse(&r, &["x"]).unwrap();
        let b = IdealSpec::parse(&r, &["x^2"]).unwrap();
        assert_eq!(subquotient_dimension(&a, &b, &lim()).unwrap(), Dim::Finite(1));
        assert_eq!(subquotient_dimension(&a, &a, &lim()).unwrap(), Dim::Finite(0));
        assert!(subquotient_dimension(&b, &a, &lim()).is_err());
    }

    #[test]
    fn lift_with_unit() {
        let r = Ring::local(&["x", "y"]);
        let i = IdealSpec::parse(&r, &["x + x*y", "y"]).unwrap();
        let l = lift(&i, &r.parse("x").unwrap(), &lim()).unwrap().unwrap();
        assert!(check_lift(&i, &r.parse("x").unwrap(), &l));
        assert!(lift(&i, &r.parse("x^0 + x").unwrap(), &lim()).unwrap().is_none());
    }

    #[test]
    fn euler_membership_certificate() {
        let r = Ring::local(&["X", "Y", "Z"]);
        let g = r.parse("Z^2 - Y^3").unwrap();
        let j = IdealSpec::new(&r, crate::ring::calculus::gradient(&g)).unwrap();
        let l = lift(&j, &g, &lim()).unwrap().unwrap();
        assert!(check_lift(&j, &g, &l));
    }

    #[test]
    fn gcd_and_squarefree() {
        let r = Ring::global(&["x", "y"]);
        let a = r.parse("(x - y)^2 * (x + 1)").unwrap();
        let b = r.parse("(x - y) * (y + 2)").unwrap();
        assert_eq!(gcd(&a, &b, &lim()).unwrap(), r.parse("x - y").unwrap());
        assert!(!is_squarefree(&a, &lim()).unwrap());
        assert_eq!(squarefree_part(&a, &lim()).unwrap(), r.parse("(x - y)*(x + 1)").unwrap());
        assert!(is_squarefree(&r.parse("y^2 - x^3").unwrap(), &lim()).unwrap());
    }

    #[test]
    fn minimal_generators() {
        let r = Ring::local(&["x", "y"]);
        let i = IdealSpec::parse(&r, &["x^3", "y"]).unwrap();
        assert_eq!(min_generator_count(&i, &lim()).unwrap(), 2);
        let i = IdealSpec::parse(&r, &["2*y", "y^4*(7*y^2 + 5*x^7)", "-14*x^6*y^6"]).unwrap();
        assert_eq!(min_generator_count(&i, &lim()).unwrap(), 1);
        let p = prune_generators(&i, &lim()).unwrap();
        assert_eq!(p.gens(), &[r.parse("2*y").unwrap()]);
        let u = IdealSpec::parse(&r, &["1 + x"]).unwrap();
        assert_eq!(min_generator_count(&u, &lim()).unwrap(), 1);
    }
}
