//! Plane-curve invariants: `μ`, `δ`, `μ_I`, multiplicity, `A_e`-codimension
//! and the frontal quantities derived from them.

use num_traits::Zero;
use serde::Serialize;

use super::report::{InvariantReport, Value};
use super::{image_equation, milnor_number};
use crate::error::{Error, Result};
use crate::germ::MapGerm;
use crate::ring::calculus::diff;
use crate::ring::{linalg, Rational};
use crate::stdbasis::{Dim, Limits};

/// `A_e`-codimension of a plane curve with the jet order that certified it.
#[derive(Clone, Debug, Serialize)]
pub struct CodimAe {
    pub value: u64,
    pub jet_order: u32,
}

type Jet = Vec<Rational>;

fn jet_of(p: &crate::ring::Poly, n: usize) -> Jet {
    let mut out = vec![Rational::zero(); n + 1];
    for (e, c) in p.terms() {
        let d = e.get(0) as usize;
        if d <= n {
            out[d] += c;
        }
    }
    out
}

fn jet_mul(a: &Jet, b: &Jet) -> Jet {
    let n = a.len() - 1;
    let mut out = vec![Rational::zero(); n + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n + 1 - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// `dim θ(f) / (TA_e f + m^{N+1} θ(f))` for a plane curve with any number of branches.
fn codim_at(f: &MapGerm, n: u32) -> u64 {
    let nn = n as usize;
    let branches = f.branches();
    let width = nn + 1;
    let total = branches.len() * 2 * width;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    // tf: ξ(x) f'(x) on each branch separately
    for (b, comps) in branches.iter().enumerate() {
        let derivs: Vec<Jet> = comps.iter().map(|c| jet_of(&diff(c, 0), nn)).collect();
        for i in 0..=nn {
            let mut row = vec![Rational::zero(); total];
            for (c, d) in derivs.iter().enumerate() {
                for (k, v) in d.iter().enumerate().take(nn + 1 - i) {
                    row[(b * 2 + c) * width + i + k] = v.clone();
                }
            }
            rows.push(row);
        }
    }
    // ωf: η ∘ f for monomial vector fields η = Y^a ∂_{Y_c}, on all branches at once
    let comp_jets: Vec<Vec<Jet>> = branches.iter().map(|cs| cs.iter().map(|c| jet_of(c, nn)).collect()).collect();
    let mut one = vec![Rational::zero(); width];
    one[0] = Rational::from_integer(1.into());
    let mut pow1: Vec<Jet> = vec![one.clone(); branches.len()];
    for a1 in 0..=nn {
        let mut mono = pow1.clone();
        for _ in 0..=(nn - a1) {
            if mono.iter().all(|j| j.iter().all(|c| c.is_zero())) {
                break;
            }
            for c in 0..2 {
                let mut row = vec![Rational::zero(); total];
                for (b, m) in mono.iter().enumerate() {
                    for (k, v) in m.iter().enumerate() {
                        row[(b * 2 + c) * width + k] = v.clone();
                    }
                }
                rows.push(row);
            }
            mono = mono.iter().zip(&comp_jets).map(|(m, cj)| jet_mul(m, &cj[1])).collect();
        }
        pow1 = pow1.iter().zip(&comp_jets).map(|(m, cj)| jet_mul(m, &cj[0])).collect();
        if pow1.iter().all(|j| j.iter().all(|c| c.is_zero())) {
            break;
        }
    }
    (total - linalg::rank(&rows)) as u64
}

/// `codim_Ae(f)` by jet linear algebra from order `start`, doubling until two
/// consecutive orders agree.
pub fn codim_ae(f: &MapGerm, start: u32, max_doublings: u32) -> Result<CodimAe> {
    if f.n() != 1 || f.target().nvars() != 2 {
        return Err(Error::precondition("codim_Ae is computed for plane curves"));
    }
    let mut n = start.max(2);
    let mut prev = codim_at(f, n);
    for _ in 0..max_doublings {
        let next = codim_at(f, 2 * n);
        if next == prev {
            return Ok(CodimAe { value: prev, jet_order: n });
        }
        prev = next;
        n *= 2;
    }
    Err(Error::Inconclusive(format!("codim_Ae jets did not stabilize up to order {n}")))
}

/// `μ`, `δ`, `μ_I`, `mult`, `codim_Ae` and the frontal values
/// `μ_F = μ_I - mult + 1`, `codim_Fe = codim_Ae - mult + 1`.
pub fn plane_curve_invariants(f: &MapGerm, limits: &Limits) -> Result<InvariantReport> {
    if f.n() != 1 || f.target().nvars() != 2 {
        return Err(Error::precondition("plane-curve invariants need a map C -> C^2"));
    }
    let img = image_equation(f, limits)?;
    let Dim::Finite(mu) = milnor_number(&img.equation, limits)? else {
        return Err(Error::precondition("image equation has a non-isolated singularity"));
    };
    let r = f.branches().len() as u64;
    if (mu + r - 1) % 2 != 0 {
        return Err(Error::precondition("mu + r - 1 is odd"));
    }
    let delta = (mu + r - 1) / 2;
    let mu_i = delta as i64 - r as i64 + 1;
    let mult = f.multiplicity()? as i64;
    let ae = codim_ae(f, 2 * mu as u32 + 2, 4)?;
    let mut report = InvariantReport {
        mu: Value::exact(mu as i64),
        delta: Value::exact(delta as i64),
        mu_image: Value::exact(mu_i),
        mult: Value::exact(mult),
        codim_ae: Value::certified(ae.value as i64, format!("jet order {}", ae.jet_order)),
        ..Default::default()
    };
    report.flags.frontal = Some(true);
    if f.is_monogerm() {
        report.mu_frontal = Value::exact(mu_i - mult + 1);
        report.codim_fe = Value::certified(ae.value as i64 - mult + 1, format!("jet order {}", ae.jet_order));
    } else {
        report.notes.push("frontal formulas are applied to monogerms only".into());
    }
    report.flags.quasihomogeneous = Some(crate::ring::quasi::quasihomogeneous_weights(&img.equation).is_some());
    Ok(report)
}
