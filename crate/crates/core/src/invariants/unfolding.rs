//! Unfoldings, good defining equations and the invariants read off them:
//! `M_F(g)`, the frontal codimension, Siersma's count and the Samuel estimate.

use serde::Serialize;

use super::image_equation;
use crate::error::{Error, Result};
use crate::germ::MapGerm;
use crate::ring::calculus::{gradient, specialize};
use crate::ring::{int, MonomialOrder, Poly, Ring};
use crate::stdbasis::ops::{is_squarefree, lift, proportional, saturation, subquotient_dimension, Lift};
use crate::stdbasis::{Dim, IdealSpec, Limits};

/// `F(x, u) = (f_u(x), u)` unfolding a germ `f = f_0` with `r` parameters.
#[derive(Clone, Debug)]
pub struct UnfoldingSpec {
    base: MapGerm,
    params: Vec<String>,
    map: MapGerm,
    equation: Option<Poly>,
    frontal_stable_asserted: bool,
}

impl UnfoldingSpec {
    /// `branches` holds `f_u` per branch over the source variables followed by the parameters.
    pub fn new<S: AsRef<str>>(base: &MapGerm, params: &[S], branches: Vec<Vec<Poly>>) -> Result<UnfoldingSpec> {
        let n = base.n();
        let params: Vec<String> = params.iter().map(|s| s.as_ref().to_string()).collect();
        let source = base.source().extend(&params, MonomialOrder::GlobalDegRevLex)?;
        let target = base.target().extend(&params, MonomialOrder::GlobalDegRevLex)?;
        if branches.len() != base.branches().len() {
            return Err(Error::Arity { expected: base.branches().len(), found: branches.len() });
        }
        let zero_params: Vec<usize> = (n..source.nvars()).collect();
        let mut full = Vec::with_capacity(branches.len());
        for (b, comps) in branches.into_iter().enumerate() {
            if comps.len() != base.target().nvars() {
                return Err(Error::Arity { expected: base.target().nvars(), found: comps.len() });
            }
            for (c, orig) in comps.iter().zip(base.branch(b)) {
                source.check_same(c.ring())?;
                let at_zero = crate::ring::calculus::set_zero(c, &zero_params);
                if at_zero != orig.embed(&source, &(0..n).collect::<Vec<_>>()) {
                    return Err(Error::precondition(format!("unfolding component {c} does not restrict to {orig}")));
                }
            }
            let mut comps = comps;
            comps.extend((n..source.nvars()).map(|i| source.var(i)));
            full.push(comps);
        }
        let map = MapGerm::new(&source, &target, full)?;
        Ok(UnfoldingSpec { base: base.clone(), params, map, equation: None, frontal_stable_asserted: false })
    }

    /// Unfolding with component strings over source variables and parameters.
    pub fn parse(base: &MapGerm, params: &[&str], branches: &[&[&str]]) -> Result<UnfoldingSpec> {
        let source = base.source().extend(params, MonomialOrder::GlobalDegRevLex)?;
        let bs = branches
            .iter()
            .map(|b| b.iter().map(|s| source.parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        UnfoldingSpec::new(base, params, bs)
    }

    /// `f_u = f` for every `u`.
    pub fn trivial<S: AsRef<str>>(base: &MapGerm, params: &[S]) -> Result<UnfoldingSpec> {
        let names: Vec<String> = params.iter().map(|s| s.as_ref().to_string()).collect();
        let source = base.source().extend(&names, MonomialOrder::GlobalDegRevLex)?;
        let map: Vec<usize> = (0..base.n()).collect();
        let bs = base.branches().iter().map(|b| b.iter().map(|c| c.embed(&source, &map)).collect()).collect();
        UnfoldingSpec::new(base, &names, bs)
    }

    /// Use an explicit `G` over the unfolding's target ring instead of eliminating.
    pub fn with_equation(mut self, g: Poly) -> Result<UnfoldingSpec> {
        let target = self.map.target().to_global();
        let g = g.embed_by_name(&target)?;
        self.equation = Some(g);
        Ok(self)
    }

    pub fn assert_frontal_stable(mut self) -> UnfoldingSpec {
        self.frontal_stable_asserted = true;
        self
    }

    pub fn frontal_stable_asserted(&self) -> bool {
        self.frontal_stable_asserted
    }

    pub fn base(&self) -> &MapGerm {
        &self.base
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn r(&self) -> usize {
        self.params.len()
    }

    /// The unfolding `F` as a map germ.
    pub fn map(&self) -> &MapGerm {
        &self.map
    }

    pub fn explicit_equation(&self) -> Option<&Poly> {
        self.equation.as_ref()
    }

    /// `G`: the declared equation or the reduced image equation of `F`.
    pub fn equation(&self, limits: &Limits) -> Result<Poly> {
        match &self.equation {
            Some(g) => Ok(g.clone()),
            None => Ok(image_equation(&self.map, limits)?.equation),
        }
    }
}

/// Certified good defining equation: reduced, `G ∈ J(G)` and `G(y, 0) = g`.
#[derive(Clone, Debug, Serialize)]
pub struct GoodEquation {
    /// `G` over the target variables followed by the parameters.
    pub equation: Poly,
    pub nparams: usize,
    /// A trivial parameter `s` with `G ↦ (1+s) G` was appended.
    pub augmented: bool,
    /// `unit · G = Σ cofactor_i ∂G/∂v_i` in the local ring.
    #[serde(skip)]
    pub membership: Lift,
}

impl GoodEquation {
    pub fn ring(&self) -> &Ring {
        self.equation.ring()
    }

    /// Number of non-parameter variables.
    pub fn m(&self) -> usize {
        self.ring().nvars() - self.nparams
    }
}

fn fresh_name(ring: &Ring) -> String {
    let mut k = 0;
    loop {
        let name = if k == 0 { "s".to_string() } else { format!("s{k}") };
        if ring.var_index(&name).is_none() {
            return name;
        }
        k += 1;
    }
}

fn jacobian_ideal(g: &Poly, ring: &Ring) -> Result<IdealSpec> {
    let grad: Vec<Poly> = gradient(g).into_iter().filter(|p| !p.is_zero()).map(|p| p.reinterpret(ring)).collect();
    IdealSpec::new(ring, grad)
}

/// Verify the good-equation conditions, appending a trivial parameter when `G ∉ J(G)`.
pub fn check_good_equation(u: &UnfoldingSpec, limits: &Limits) -> Result<GoodEquation> {
    let big = u.equation(limits)?;
    if big.is_zero() {
        return Err(Error::precondition("the unfolding equation is zero"));
    }
    let g = image_equation(&u.base, limits)?.equation;
    let m = u.base.target().nvars();
    let params: Vec<usize> = (m..big.ring().nvars()).collect();
    let restricted = crate::ring::calculus::set_zero(&big, &params).embed_by_name(g.ring())?;
    if !proportional(&restricted, &g) {
        return Err(Error::precondition(format!("G restricted to u = 0 is {restricted}, not a multiple of {g}")));
    }
    if !is_squarefree(&big, limits)? {
        return Err(Error::precondition("G is not reduced"));
    }
    let local = big.ring().to_local();
    let gl = big.reinterpret(&local);
    if let Some(l) = lift(&jacobian_ideal(&gl, &local)?, &gl, limits)? {
        return Ok(GoodEquation { equation: big, nparams: u.r(), augmented: false, membership: l });
    }
    let s = fresh_name(big.ring());
    let ext = big.ring().extend(&[s.as_str()], MonomialOrder::GlobalDegRevLex)?;
    let map: Vec<usize> = (0..big.ring().nvars()).collect();
    let lifted = big.embed(&ext, &map);
    let unit = &ext.one() + &ext.var(ext.nvars() - 1);
    let augmented = &unit * &lifted;
    let local = ext.to_local();
    let al = augmented.reinterpret(&local);
    let Some(l) = lift(&jacobian_ideal(&al, &local)?, &al, limits)? else {
        return Err(Error::precondition("(1+s)G is not in its Jacobian ideal"));
    };
    Ok(GoodEquation { equation: augmented, nparams: u.r() + 1, augmented: true, membership: l })
}

/// Numerator `J(G)` and the fixed part `J_y(G)` of the denominators, over the local ring.
fn jacobian_pieces(good: &GoodEquation) -> Result<(Ring, Vec<Poly>, Vec<Poly>)> {
    let local = good.ring().to_local();
    let g = good.equation.reinterpret(&local);
    let grad = gradient(&g);
    let jy: Vec<Poly> = grad[..good.m()].iter().filter(|p| !p.is_zero()).cloned().collect();
    Ok((local, grad, jy))
}

fn param_monomials(ring: &Ring, first: usize, r: usize, k: u32) -> Vec<Poly> {
    fn rec(ring: &Ring, vars: &[usize], left: u32, acc: Poly, out: &mut Vec<Poly>) {
        match vars.split_first() {
            None => {
                if left == 0 {
                    out.push(acc)
                }
            }
            Some((&v, rest)) => {
                for e in 0..=left {
                    rec(ring, rest, left - e, &acc * &ring.var(v).pow(e), out);
                }
            }
        }
    }
    let vars: Vec<usize> = (first..first + r).collect();
    let mut out = Vec::new();
    rec(ring, &vars, k, ring.one(), &mut out);
    out
}

/// `dim J(G) / (J_y(G) + m_r^k J(G) + extra)`.
fn relative_dimension(good: &GoodEquation, k: u32, with_g: bool, limits: &Limits) -> Result<Dim> {
    let (local, grad, mut denom) = jacobian_pieces(good)?;
    let numer: Vec<Poly> = grad.iter().filter(|p| !p.is_zero()).cloned().collect();
    if numer.is_empty() {
        return Ok(Dim::Finite(0));
    }
    if good.nparams > 0 {
        for mono in param_monomials(&local, good.m(), good.nparams, k) {
            denom.extend(numer.iter().map(|d| &mono * d));
        }
    }
    if with_g {
        denom.push(good.equation.reinterpret(&local));
    }
    let numer = IdealSpec::new(&local, numer)?;
    let denom = IdealSpec::new(&local, denom)?;
    subquotient_dimension(&numer, &denom, limits)
}

/// `dim M_F(g) = dim J(G) / (J_y(G) + m_r J(G))`.
pub fn m_f_dimension(good: &GoodEquation, limits: &Limits) -> Result<Dim> {
    relative_dimension(good, 1, false, limits)
}

/// `codim_Fe = dim J(G) / (J_y(G) + (G) + m_r J(G))`.
pub fn frontal_codimension(good: &GoodEquation, limits: &Limits) -> Result<Dim> {
    relative_dimension(good, 1, true, limits)
}

/// Hilbert–Samuel estimate of `e(m_r; M_y(G))`.
#[derive(Clone, Debug, Serialize)]
pub struct SamuelEstimate {
    pub value: u64,
    /// `d_k = dim M_y(G) / m_r^k M_y(G)` for `k = 1..`.
    pub lengths: Vec<u64>,
    /// First and last `k` of the window where the `r`-th difference was constant.
    pub window: (u32, u32),
}

/// Compute `d_k` for `k = 1..=max_power` until the `r`-th finite difference is
/// constant on three consecutive `k`.
pub fn samuel_multiplicity_estimate(good: &GoodEquation, max_power: u32, limits: &Limits) -> Result<SamuelEstimate> {
    let r = good.nparams;
    if r == 0 {
        let d = relative_dimension(good, 1, false, limits)?;
        let Dim::Finite(v) = d else {
            return Err(Error::Inconclusive("M_F(g) is not finite".into()));
        };
        return Ok(SamuelEstimate { value: v, lengths: vec![v], window: (0, 0) });
    }
    let mut lengths: Vec<u64> = Vec::new();
    for k in 1..=max_power {
        match relative_dimension(good, k, false, limits)? {
            Dim::Finite(d) => lengths.push(d),
            Dim::Infinite => {
                return Err(Error::Inconclusive(format!("M_y(G)/m_r^{k} M_y(G) is not finite")));
            }
        }
        let diffs = finite_differences(&lengths, r);
        if diffs.len() >= 3 {
            let tail = &diffs[diffs.len() - 3..];
            if tail[0] == tail[1] && tail[1] == tail[2] && tail[0] >= 0 {
                let last = lengths.len() as u32;
                return Ok(SamuelEstimate { value: tail[0] as u64, lengths, window: (last - 2, last) });
            }
        }
    }
    Err(Error::Inconclusive(format!("Hilbert–Samuel differences did not stabilize up to k = {max_power}")))
}

/// `r`-th backward differences `Δ^r d_k`; `d_0 = 0` is prepended.
fn finite_differences(lengths: &[u64], r: usize) -> Vec<i128> {
    let mut cur: Vec<i128> = std::iter::once(0).chain(lengths.iter().map(|&d| d as i128)).collect();
    for _ in 0..r {
        cur = cur.windows(2).map(|w| w[1] - w[0]).collect();
    }
    cur
}

/// Siersma count of a one-parameter stabilisation, with its genericity certificate.
#[derive(Clone, Debug, Serialize)]
pub struct SiersmaCount {
    pub value: Dim,
    /// Parameter values tried and the count at each.
    pub trials: Vec<(i64, Dim)>,
}

/// Number of critical points of `g_t = G(·, t)` off `g_t = 0`, counted with
/// multiplicity, at `t = 1, 2, ...` until two consecutive values agree.
pub fn frontal_milnor_siersma(u: &UnfoldingSpec, max_trials: u32, limits: &Limits) -> Result<SiersmaCount> {
    if u.r() != 1 {
        return Err(Error::precondition("Siersma's count needs a one-parameter stabilisation"));
    }
    let big = u.equation(limits)?;
    let m = u.base.target().nvars();
    let target = u.base.target().to_global();
    let mut trials: Vec<(i64, Dim)> = Vec::new();
    for t in 1..=max_trials.max(2) as i64 {
        let gt = specialize(&big, m, &int(t)).embed_by_name(&target)?;
        if gt.is_zero() {
            return Err(Error::precondition(format!("G vanishes identically at t = {t}")));
        }
        let count = critical_points_off_zero_set(&gt, limits)?;
        trials.push((t, count));
        if let [.., (_, a), (_, b)] = trials.as_slice() {
            if a == b {
                return Ok(SiersmaCount { value: *b, trials });
            }
        }
    }
    Err(Error::Inconclusive(format!("Siersma counts did not agree on consecutive parameters: {trials:?}")))
}

/// `dim C[y] / (J(g) : g^∞)`.
pub fn critical_points_off_zero_set(g: &Poly, limits: &Limits) -> Result<Dim> {
    let ring = g.ring().to_global();
    let g = g.reinterpret(&ring);
    let j = jacobian_ideal(&g, &ring)?;
    if j.is_zero() {
        return Ok(Dim::Infinite);
    }
    saturation(&j, &g, limits)?.colength(limits)
}
