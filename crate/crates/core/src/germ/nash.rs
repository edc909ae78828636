//! Prenormal forms and Nash lifts of frontal germs.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::MapGerm;
use crate::error::{Error, Result};
use crate::ring::calculus::{diff, jet, linear_coeffs, rank_at_origin, substitute};
use crate::ring::{linalg, ExpVec, Poly, Rational, Ring};

/// Coordinates in which `f(x, y) = (x, p_1, ..., p_k, q)` up to the order of
/// the target coordinates.
#[derive(Clone, Debug)]
pub struct PrenormalForm {
    /// Source ring of the (possibly linearly changed) coordinates.
    pub source: Ring,
    /// Components in the new source coordinates, original target order.
    pub components: Vec<Poly>,
    /// Source variable indices forming `x`.
    pub x: Vec<usize>,
    /// Source variable indices forming `y`.
    pub y: Vec<usize>,
    /// Target index of the component equal to each `x_i`.
    pub x_targets: Vec<usize>,
    /// Target indices of the remaining `k + 1` components.
    pub rest: Vec<usize>,
    /// Old source variables expressed in the new ones, when a linear change was used.
    pub source_change: Option<Vec<Poly>>,
}

impl PrenormalForm {
    pub fn k(&self) -> usize {
        self.y.len()
    }

    /// Split one branch of `f`. Components that are linear forms with
    /// independent linear parts become the `x` coordinates; a linear change of
    /// source coordinates is applied when they are not already variables.
    pub fn of_branch(f: &MapGerm, branch: usize) -> Result<PrenormalForm> {
        let comps = f.branch(branch).to_vec();
        let source = f.source().clone();
        let n = source.nvars();
        if comps.len() != n + 1 {
            return Err(Error::precondition("prenormal form needs n+1 components"));
        }
        let rank0 = rank_at_origin(&comps);
        let mut chosen: Vec<usize> = Vec::new();
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for (t, p) in comps.iter().enumerate() {
            if p.is_zero() || p.terms().iter().any(|(e, _)| e.degree() != 1) {
                continue;
            }
            let row = linear_coeffs(p);
            let mut trial = rows.clone();
            trial.push(row.clone());
            if linalg::rank(&trial) == trial.len() {
                rows.push(row);
                chosen.push(t);
            }
        }
        if chosen.len() < rank0 {
            return Err(Error::precondition(
                "no prenormal form reachable by a linear change of source coordinates",
            ));
        }
        // pivot variable for each chosen linear form
        let pivots = linalg::rref(&mut rows.clone());
        let mut identity = true;
        for row in &rows {
            let nonzero: Vec<&Rational> = row.iter().filter(|c| !c.is_zero()).collect();
            if nonzero.len() != 1 || !nonzero[0].is_one() {
                identity = false;
            }
        }
        if identity {
            // every chosen component is already a variable; reuse those variables
            let x: Vec<usize> = chosen
                .iter()
                .map(|&t| (0..n).find(|&i| comps[t] == source.var(i)).expect("single variable"))
                .collect();
            let y: Vec<usize> = (0..n).filter(|i| !x.contains(i)).collect();
            let rest: Vec<usize> = (0..=n).filter(|t| !chosen.contains(t)).collect();
            return Ok(PrenormalForm {
                source,
                components: comps,
                x,
                y,
                x_targets: chosen,
                rest,
                source_change: None,
            });
        }
        // new coordinate pivots[r] := l_r(old), other variables unchanged
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut e = vec![Rational::zero(); n];
                e[i] = Rational::one();
                e
            })
            .collect();
        for (r, row) in rows.iter().enumerate() {
            a[pivots[r]] = row.clone();
        }
        // old = A^{-1} new; column `new` of A^{-1} solves A v = e_new
        let mut inverse_cols = Vec::with_capacity(n);
        for new in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[new] = Rational::one();
            inverse_cols.push(linalg::solve(&a, &e, n).ok_or_else(|| Error::precondition("singular change"))?);
        }
        let images: Vec<Poly> = (0..n)
            .map(|old| {
                let terms = (0..n)
                    .filter(|&new| !inverse_cols[new][old].is_zero())
                    .map(|new| (ExpVec::var_power(n, new, 1), inverse_cols[new][old].clone()));
                Poly::from_terms(&source, terms)
            })
            .collect();
        let new_comps = comps.iter().map(|p| substitute(p, &images)).collect::<Result<Vec<_>>>()?;
        let x = pivots.clone();
        let y: Vec<usize> = (0..n).filter(|i| !x.contains(i)).collect();
        let rest: Vec<usize> = (0..=n).filter(|t| !chosen.contains(t)).collect();
        for (r, &t) in chosen.iter().enumerate() {
            debug_assert_eq!(new_comps[t], source.var(x[r]));
        }
        Ok(PrenormalForm { source, components: new_comps, x, y, x_targets: chosen, rest, source_change: Some(images) })
    }
}

/// Coefficients of the Nash lift: `dq = sum lambda_i dx_i + sum mu_j dp_j`.
#[derive(Clone, Debug, Serialize)]
pub struct NashData {
    /// Target index of the component used as `q`.
    pub q_index: usize,
    /// Target indices of the `p_j`, in order.
    pub p_indices: Vec<usize>,
    pub lambda: Vec<Poly>,
    pub mu: Vec<Poly>,
    /// Exact polynomial solution (no truncation).
    pub exact: bool,
    /// Jet order to which the residual was certified; `None` when exact.
    pub jet_order: Option<u32>,
}

/// Default starting jet order: twice the largest component degree plus two.
pub fn default_jet_order(pf: &PrenormalForm) -> u32 {
    2 * pf.components.iter().filter_map(|p| p.degree()).max().unwrap_or(1) + 2
}

const MAX_DOUBLINGS: u32 = 3;

/// Solve `dq = sum lambda dx + sum mu dp`, trying every choice of `q` among
/// the non-`x` components. Exact polynomial solutions are preferred; otherwise
/// jets are computed from `jet_order` (doubling until they stabilize).
pub fn nash_lift(pf: &PrenormalForm, jet_order: Option<u32>) -> Result<NashData> {
    let candidates = pf.rest.clone();
    for &q in candidates.iter().rev() {
        if let Some(d) = try_exact(pf, q)? {
            return Ok(d);
        }
    }
    let start = jet_order.unwrap_or_else(|| default_jet_order(pf));
    let mut inconclusive = None;
    for &q in candidates.iter().rev() {
        match try_jets(pf, q, start) {
            Ok(Some(d)) => return Ok(d),
            Ok(None) => {}
            Err(e @ Error::Inconclusive(_)) => inconclusive = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(inconclusive.unwrap_or_else(|| {
        Error::Division("no choice of q admits a Nash lift: not frontal in these coordinates".into())
    }))
}

fn split(pf: &PrenormalForm, q: usize) -> (Poly, Vec<usize>) {
    let p_idx: Vec<usize> = pf.rest.iter().copied().filter(|&t| t != q).collect();
    (pf.components[q].clone(), p_idx)
}

fn lambdas(pf: &PrenormalForm, q: &Poly, p_idx: &[usize], mu: &[Poly]) -> Vec<Poly> {
    pf.x
        .iter()
        .map(|&xi| {
            let mut l = diff(q, xi);
            for (j, &t) in p_idx.iter().enumerate() {
                l = &l - &(&mu[j] * &diff(&pf.components[t], xi));
            }
            l
        })
        .collect()
}

/// `dq/dy_l - sum_j mu_j dp_j/dy_l` for every `l`.
fn residuals(pf: &PrenormalForm, q: &Poly, p_idx: &[usize], mu: &[Poly]) -> Vec<Poly> {
    pf.y
        .iter()
        .map(|&yl| {
            let mut r = diff(q, yl);
            for (j, &t) in p_idx.iter().enumerate() {
                r = &r - &(&mu[j] * &diff(&pf.components[t], yl));
            }
            r
        })
        .collect()
}

fn try_exact(pf: &PrenormalForm, q_index: usize) -> Result<Option<NashData>> {
    let (q, p_idx) = split(pf, q_index);
    let k = pf.k();
    let mu: Vec<Poly> = match k {
        0 => vec![],
        1 => {
            let py = diff(&pf.components[p_idx[0]], pf.y[0]);
            let qy = diff(&q, pf.y[0]);
            if py.is_zero() {
                return Ok(None);
            }
            match qy.exact_div(&py) {
                Ok(m) => vec![m],
                Err(_) => return Ok(None),
            }
        }
        _ => {
            let deg = pf.components.iter().filter_map(|p| p.degree()).max().unwrap_or(1);
            match solve_jets(pf, &q, &p_idx, deg)? {
                Some(mu) if residuals(pf, &q, &p_idx, &mu).iter().all(|r| r.is_zero()) => mu,
                _ => return Ok(None),
            }
        }
    };
    let lambda = lambdas(pf, &q, &p_idx, &mu);
    Ok(Some(NashData { q_index, p_indices: p_idx, lambda, mu, exact: true, jet_order: None }))
}

fn try_jets(pf: &PrenormalForm, q_index: usize, start: u32) -> Result<Option<NashData>> {
    let (q, p_idx) = split(pf, q_index);
    let mut n = start.max(1);
    let Some(mut prev) = solve_jets(pf, &q, &p_idx, n)? else { return Ok(None) };
    for _ in 0..MAX_DOUBLINGS {
        let Some(next) = solve_jets(pf, &q, &p_idx, 2 * n)? else { return Ok(None) };
        if next.iter().zip(&prev).all(|(a, b)| &jet(a, n) == b) {
            let lambda: Vec<Poly> = lambdas(pf, &q, &p_idx, &prev).iter().map(|l| jet(l, n)).collect();
            return Ok(Some(NashData {
                q_index,
                p_indices: p_idx,
                lambda,
                mu: prev,
                exact: false,
                jet_order: Some(n),
            }));
        }
        prev = next;
        n *= 2;
    }
    Err(Error::Inconclusive(format!("Nash lift jets did not stabilize up to order {n}")))
}

fn monomials_up_to(nvars: usize, d: u32) -> Vec<ExpVec> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; nvars];
    fn rec(i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<ExpVec>) {
        if i == cur.len() {
            out.push(ExpVec::from_slice(cur));
            return;
        }
        for k in 0..=left {
            cur[i] = k as u16;
            rec(i + 1, left - k, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

/// Jets of `mu` up to degree `n` solving the `y`-equations up to degree `n + s`,
/// where `s` is the lowest order among the `dp_j/dy_l`. `None` when inconsistent.
fn solve_jets(pf: &PrenormalForm, q: &Poly, p_idx: &[usize], n: u32) -> Result<Option<Vec<Poly>>> {
    let ring = &pf.source;
    let nv = ring.nvars();
    let k = pf.k();
    let dp: Vec<Vec<Poly>> = pf
        .y
        .iter()
        .map(|&yl| p_idx.iter().map(|&t| diff(&pf.components[t], yl)).collect())
        .collect();
    let s = dp.iter().flatten().filter_map(|p| p.order_at_origin()).min();
    let Some(s) = s else { return Ok(None) };
    let top = n + s;
    let monos = monomials_up_to(nv, n);
    let unknowns = k * monos.len();
    let mut row_of: HashMap<(usize, ExpVec), usize> = HashMap::new();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    let mut row = |key: (usize, ExpVec), rows: &mut Vec<Vec<Rational>>, rhs: &mut Vec<Rational>| -> usize {
        *row_of.entry(key).or_insert_with(|| {
            rows.push(vec![Rational::zero(); unknowns]);
            rhs.push(Rational::zero());
            rows.len() - 1
        })
    };
    for (l, &yl) in pf.y.iter().enumerate() {
        let qy = diff(q, yl);
        for (e, c) in qy.terms() {
            if e.degree() <= top {
                let r = row((l, e.clone()), &mut rows, &mut rhs);
                rhs[r] += c;
            }
        }
        for j in 0..k {
            for (mi, m) in monos.iter().enumerate() {
                for (e, c) in dp[l][j].terms() {
                    let prod = m.mul(e);
                    if prod.degree() <= top {
                        let r = row((l, prod), &mut rows, &mut rhs);
                        rows[r][j * monos.len() + mi] += c;
                    }
                }
            }
        }
    }
    let Some(sol) = linalg::solve(&rows, &rhs, unknowns) else { return Ok(None) };
    let mu = (0..k)
        .map(|j| {
            Poly::from_terms(
                ring,
                monos.iter().enumerate().map(|(mi, m)| (m.clone(), sol[j * monos.len() + mi].clone())),
            )
        })
        .collect();
    Ok(Some(mu))
}

/// `f` together with `(lambda, mu)` has rank `n` at the origin.
pub fn is_wavefront(pf: &PrenormalForm, nash: &NashData) -> bool {
    let mut lifted = pf.components.clone();
    lifted.extend(nash.lambda.iter().cloned());
    lifted.extend(nash.mu.iter().cloned());
    rank_at_origin(&lifted) == pf.source.nvars()
}
