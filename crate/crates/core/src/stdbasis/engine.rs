//! Buchberger's algorithm for global orderings and Mora's tangent cone
//! algorithm for local and mixed orderings, on submodules of `R^s`.

use serde::Serialize;

use super::vector::{ModOrder, Term, Vector};
use crate::error::{Error, Result};
use crate::ring::{ExpVec, MonomialOrder};

/// Explicit bounds on a basis computation. Exceeding one is an error, never a
/// silently truncated basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Limits {
    /// Maximal number of critical pairs reduced.
    pub max_pairs: usize,
    /// Maximal degree of any intermediate term.
    pub max_degree: u64,
    /// Maximal number of reduction steps in a single normal form.
    pub max_reductions: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_pairs: 20_000, max_degree: 200, max_reductions: 2_000_000 }
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: ExpVec,
    comp: u32,
    sdeg: u64,
    /// Selection key: the sugar for global orderings, else `sdeg`.
    key: u64,
}

pub(crate) struct Engine<'a> {
    pub ord: &'a ModOrder,
    pub limits: &'a Limits,
    /// Whether the ordering is global, so that plain division terminates.
    pub global: bool,
    /// Whether the product criterion may be applied (global, rank one).
    pub product_criterion: bool,
}

impl<'a> Engine<'a> {
    pub fn new(ord: &'a ModOrder, limits: &'a Limits, rank: usize) -> Self {
        let global = ord.order.is_global();
        Engine { ord, limits, global, product_criterion: global && rank == 1 }
    }

    fn check_degree(&self, v: &Vector) -> Result<()> {
        let d = v.max_sdeg(self.ord);
        if d > self.limits.max_degree {
            return Err(Error::ResourceLimit(format!(
                "degree {d} exceeds max-degree {}",
                self.limits.max_degree
            )));
        }
        Ok(())
    }

    fn spoly(&self, f: &Vector, g: &Vector) -> Vector {
        let (lf, lg) = (f.lead(), g.lead());
        let lcm = lf.exp.lcm(&lg.exp);
        let mf = lcm.div(&lf.exp);
        let mg = lcm.div(&lg.exp);
        let a = f.mul_term(&mf, &lg.coeff);
        a.sub_mul(&mg, &lf.coeff, g, self.ord)
    }

    fn divides(a: &Term, b: &Term) -> bool {
        a.comp == b.comp && a.exp.divides(&b.exp)
    }

    /// Weak normal form. With `stop_below` set, reduction stops as soon as the
    /// leading term lies in a component `>= stop_below`.
    pub fn normal_form(&self, h: Vector, basis: &[Vector], stop_below: Option<u32>) -> Result<Vector> {
        if self.global {
            self.nf_buchberger(h, basis, stop_below)
        } else {
            self.nf_mora(h, basis, stop_below).map(|(h, _)| h)
        }
    }

    fn stop(h: &Vector, stop_below: Option<u32>) -> bool {
        h.is_zero() || stop_below.is_some_and(|c| h.lead().comp >= c)
    }

    fn nf_buchberger(&self, mut h: Vector, basis: &[Vector], stop_below: Option<u32>) -> Result<Vector> {
        let mut steps = 0;
        while !Self::stop(&h, stop_below) {
            let lt = h.lead();
            let Some(g) = basis.iter().find(|g| Self::divides(g.lead(), lt)) else { break };
            let m = lt.exp.div(&g.lead().exp);
            let c = &lt.coeff / &g.lead().coeff;
            h = h.sub_mul(&m, &c, g, self.ord);
            steps += 1;
            if steps > self.limits.max_reductions {
                return Err(Error::ResourceLimit("reduction steps exceeded".into()));
            }
        }
        Ok(h)
    }

    /// Full reduction (all terms) for global orderings.
    pub fn reduce_fully(&self, h: Vector, basis: &[Vector]) -> Result<Vector> {
        debug_assert!(self.global);
        let mut rest = h;
        let mut done: Vec<Term> = Vec::new();
        let mut steps = 0;
        while !rest.is_zero() {
            rest = self.nf_buchberger(rest, basis, None)?;
            if rest.is_zero() {
                break;
            }
            done.push(rest.terms.remove(0));
            steps += 1;
            if steps > self.limits.max_reductions {
                return Err(Error::ResourceLimit("reduction steps exceeded".into()));
            }
        }
        done.extend(rest.terms);
        Ok(Vector { terms: done })
    }

    /// Mora's normal form with écart-minimizing reducer choice. The result `h`
    /// satisfies `u * input - h` in the span of `basis` for some unit `u`.
    fn nf_mora(
        &self,
        mut h: Vector,
        basis: &[Vector],
        stop_below: Option<u32>,
    ) -> Result<(Vector, usize)> {
        let mut extra: Vec<(Vector, u64)> = Vec::new();
        let ecarts: Vec<u64> = basis.iter().map(|g| g.ecart(self.ord)).collect();
        let mut steps = 0;
        loop {
            if Self::stop(&h, stop_below) {
                return Ok((h, steps));
            }
            let lt = h.lead();
            let mut best: Option<(u64, usize, bool, usize)> = None;
            for (k, g) in basis.iter().enumerate() {
                if Self::divides(g.lead(), lt) {
                    let key = (ecarts[k], g.terms.len());
                    if best.map_or(true, |b| key < (b.0, b.1)) {
                        best = Some((key.0, key.1, false, k));
                    }
                }
            }
            for (k, (g, e)) in extra.iter().enumerate() {
                if Self::divides(g.lead(), lt) {
                    let key = (*e, g.terms.len());
                    if best.map_or(true, |b| key < (b.0, b.1)) {
                        best = Some((key.0, key.1, true, k));
                    }
                }
            }
            let Some((eg, _, is_extra, k)) = best else { return Ok((h, steps)) };
            let eh = h.ecart(self.ord);
            let g = if is_extra { extra[k].0.clone() } else { basis[k].clone() };
            if eg > eh {
                extra.push((h.clone(), eh));
            }
            let lt = h.lead();
            let m = lt.exp.div(&g.lead().exp);
            let c = &lt.coeff / &g.lead().coeff;
            h = h.sub_mul(&m, &c, &g, self.ord);
            self.check_degree(&h)?;
            steps += 1;
            if steps > self.limits.max_reductions {
                return Err(Error::ResourceLimit("reduction steps exceeded".into()));
            }
        }
    }

    /// Standard basis of the submodule generated by `gens`: minimal, monic,
    /// and fully tail-reduced when the ordering is global.
    pub fn standard_basis(&self, gens: Vec<Vector>) -> Result<Vec<Vector>> {
        if let Some(weights) = self.degree_weights() {
            return self.standard_basis_homogenized(gens, &weights);
        }
        self.standard_basis_mora(gens)
    }

    fn standard_basis_mora(&self, gens: Vec<Vector>) -> Result<Vec<Vector>> {
        let mut basis: Vec<Vector> = Vec::new();
        let mut sugar: Vec<u64> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();
        for mut g in gens.into_iter().filter(|g| !g.is_zero()) {
            self.check_degree(&g)?;
            if self.global {
                g.make_primitive();
            } else {
                g.make_monic();
            }
            let s = g.max_sdeg(self.ord);
            self.add_element(&mut basis, &mut sugar, &mut pairs, g, s);
        }
        let mut processed = 0usize;
        while !pairs.is_empty() {
            let idx = select_pair(&pairs);
            let p = pairs.swap_remove(idx);
            processed += 1;
            if processed > self.limits.max_pairs {
                return Err(Error::ResourceLimit(format!(
                    "more than {} critical pairs",
                    self.limits.max_pairs
                )));
            }
            if p.sdeg > self.limits.max_degree {
                return Err(Error::ResourceLimit(format!(
                    "pair degree {} exceeds max-degree {}",
                    p.sdeg, self.limits.max_degree
                )));
            }
            let s = self.spoly(&basis[p.i], &basis[p.j]);
            let mut h = if self.global {
                let mut h = self.reduce_fully(s, &basis)?;
                h.make_primitive();
                h
            } else {
                self.normal_form(s, &basis, None)?
            };
            if !h.is_zero() {
                if !self.global {
                    h.make_monic();
                }
                let s = p.key.max(h.max_sdeg(self.ord));
                self.add_element(&mut basis, &mut sugar, &mut pairs, h, s);
            }
        }
        self.finalize(basis)
    }

    /// Whether standard bases are computed through homogenization.
    pub fn homogenizes(&self) -> bool {
        self.degree_weights().is_some()
    }

    /// Membership of `h` in the span of the standard basis `basis`, decided
    /// by comparing leading modules: `M ⊆ M + <h>` with equal leading modules
    /// forces equality.
    pub fn member_by_leads(&self, h: Vector, basis: &[Vector]) -> Result<bool> {
        if h.is_zero() {
            return Ok(true);
        }
        let mut gens = basis.to_vec();
        gens.push(h);
        let bigger = self.standard_basis(gens)?;
        Ok(bigger.iter().all(|v| basis.iter().any(|g| Self::divides(g.lead(), v.lead()))))
    }

    /// Degree weights when the ordering is a local degree ordering.
    fn degree_weights(&self) -> Option<Vec<u32>> {
        match &self.ord.order {
            MonomialOrder::LocalAntiGradedRevLex => Some(Vec::new()),
            MonomialOrder::Weighted { weights, local: true } => Some(weights.clone()),
            _ => None,
        }
    }

    /// Lazard's method: homogenize with an extra variable `t`, compute a
    /// Gröbner basis degree by degree (no écart growth), and set `t = 1`.
    fn standard_basis_homogenized(&self, gens: Vec<Vector>, weights: &[u32]) -> Result<Vec<Vector>> {
        let wdeg = |e: &ExpVec| -> u64 {
            if weights.is_empty() {
                e.degree() as u64
            } else {
                e.weighted_degree(weights)
            }
        };
        let Some(n) = gens.iter().flat_map(|g| g.terms.first()).map(|t| t.exp.len()).next() else {
            return Ok(Vec::new());
        };
        let hord = ModOrder::new(MonomialOrder::Block {
            blocks: vec![(n, self.ord.order.clone()), (1, MonomialOrder::GlobalDegRevLex)],
        });
        let homog: Vec<Vector> = gens
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| {
                let top = g.terms.iter().map(|t| wdeg(&t.exp)).max().unwrap_or(0);
                let mut terms: Vec<Term> = g
                    .terms
                    .iter()
                    .map(|t| {
                        let mut e = t.exp.as_slice().to_vec();
                        e.push((top - wdeg(&t.exp)) as u16);
                        Term { comp: t.comp, exp: ExpVec::from_slice(&e), coeff: t.coeff.clone() }
                    })
                    .collect();
                terms.sort_by(|a, b| hord.compare(b, a));
                Vector { terms }
            })
            .collect();
        let inner = Engine { ord: &hord, limits: self.limits, global: false, product_criterion: false };
        let gb = inner.standard_basis_mora(homog)?;
        let basis: Vec<Vector> = gb
            .into_iter()
            .map(|v| {
                let mut terms: Vec<Term> = v
                    .terms
                    .into_iter()
                    .map(|t| Term {
                        comp: t.comp,
                        exp: ExpVec::from_slice(&t.exp.as_slice()[..n]),
                        coeff: t.coeff,
                    })
                    .collect();
                terms.sort_by(|a, b| self.ord.compare(b, a));
                Vector { terms }
            })
            .collect();
        self.finalize(basis)
    }

    fn add_element(
        &self,
        basis: &mut Vec<Vector>,
        sugar: &mut Vec<u64>,
        pairs: &mut Vec<Pair>,
        h: Vector,
        h_sugar: u64,
    ) {
        let k = basis.len();
        let hl = h.lead().clone();
        // chain criterion on existing pairs
        pairs.retain(|p| {
            if p.comp != hl.comp || !hl.exp.divides(&p.lcm) {
                return true;
            }
            let li = basis[p.i].lead().exp.lcm(&hl.exp);
            let lj = basis[p.j].lead().exp.lcm(&hl.exp);
            li == p.lcm || lj == p.lcm
        });
        let mut new: Vec<(Pair, bool)> = Vec::new();
        for (i, g) in basis.iter().enumerate() {
            let gl = g.lead();
            if gl.comp != hl.comp {
                continue;
            }
            let lcm = gl.exp.lcm(&hl.exp);
            let coprime = self.product_criterion && gl.exp.coprime(&hl.exp);
            let sdeg = self.ord.sdeg(&lcm);
            let key = if self.global {
                let gi = sugar[i] + sdeg - self.ord.sdeg(&gl.exp);
                let gk = h_sugar + sdeg - self.ord.sdeg(&hl.exp);
                gi.max(gk)
            } else {
                sdeg
            };
            new.push((Pair { i, j: k, lcm, comp: hl.comp, sdeg, key }, coprime));
        }
        // M criterion: drop (i,k) if some (j,k) has lcm properly dividing it
        let lcms: Vec<ExpVec> = new.iter().map(|(p, _)| p.lcm.clone()).collect();
        let mut keep: Vec<bool> = vec![true; new.len()];
        for a in 0..new.len() {
            for b in 0..new.len() {
                if a != b && lcms[b].divides(&lcms[a]) && lcms[b] != lcms[a] {
                    keep[a] = false;
                    break;
                }
            }
        }
        // F criterion: among equal lcms keep one; if any of them is coprime, drop all
        for a in 0..new.len() {
            if !keep[a] {
                continue;
            }
            let group: Vec<usize> = (0..new.len()).filter(|&b| keep[b] && lcms[b] == lcms[a]).collect();
            let any_coprime = group.iter().any(|&b| new[b].1);
            for (n, &b) in group.iter().enumerate() {
                if any_coprime || n > 0 {
                    keep[b] = false;
                }
            }
        }
        for ((p, _), kp) in new.into_iter().zip(keep) {
            if kp {
                pairs.push(p);
            }
        }
        basis.push(h);
        sugar.push(h_sugar);
    }

    fn finalize(&self, basis: Vec<Vector>) -> Result<Vec<Vector>> {
        // minimize: drop elements whose leading term is divisible by another's
        let n = basis.len();
        let mut keep = vec![true; n];
        for a in 0..n {
            for b in 0..n {
                if a == b || !keep[b] {
                    continue;
                }
                let (la, lb) = (basis[a].lead(), basis[b].lead());
                if Self::divides(lb, la) && (la.exp != lb.exp || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        let mut min: Vec<Vector> = basis.into_iter().zip(keep).filter(|(_, k)| *k).map(|(v, _)| v).collect();
        if self.global {
            for a in 0..min.len() {
                let lead = min[a].terms[0].clone();
                let tail = Vector { terms: min[a].terms[1..].to_vec() };
                let others: Vec<Vector> =
                    min.iter().enumerate().filter(|(b, _)| *b != a).map(|(_, v)| v.clone()).collect();
                let tail = self.reduce_fully(tail, &others)?;
                let mut terms = vec![lead];
                terms.extend(tail.terms);
                min[a] = Vector { terms };
            }
        }
        for v in &mut min {
            v.make_monic();
        }
        min.sort_by(|a, b| self.ord.compare(b.lead(), a.lead()));
        Ok(min)
    }

    /// Every S-vector of `basis` reduces to zero.
    pub fn is_confluent(&self, basis: &[Vector]) -> Result<bool> {
        if self.homogenizes() {
            let again = self.standard_basis(basis.to_vec())?;
            return Ok(again.iter().all(|v| basis.iter().any(|g| Self::divides(g.lead(), v.lead()))));
        }
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                if basis[i].lead().comp != basis[j].lead().comp {
                    continue;
                }
                let s = self.spoly(&basis[i], &basis[j]);
                if !self.normal_form(s, basis, None)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn select_pair(pairs: &[Pair]) -> usize {
    let mut best = 0;
    for (k, p) in pairs.iter().enumerate().skip(1) {
        let b = &pairs[best];
        if (p.key, p.comp, p.j, p.i) < (b.key, b.comp, b.j, b.i) {
            best = k;
        }
    }
    best
}
