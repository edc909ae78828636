//! Analysis pipeline: runs the requested directives on one map or unfolding
//! and assembles a [`Report`].

use std::collections::BTreeSet;

use serde::Serialize;

use super::grammar::{Directive, GermFile};
use crate::derlog::{derlog, is_free_divisor};
use crate::error::{Error, Result};
use crate::genfam::{check_generating_family, GenfamCheck};
use crate::germ::{is_frontal, is_wavefront, nash_lift, Frontality, MapGerm, NashData, PrenormalForm};
use crate::invariants::{
    check_good_equation, frontal_codimension, frontal_milnor_siersma, hat_m_dimension, image_equation, m_f_dimension,
    milnor_number, plane_curve_invariants, samuel_multiplicity_estimate, Conjecture, GoodEquation, InvariantReport,
    SamuelEstimate, SiersmaCount, UnfoldingSpec, Value,
};
use crate::ring::quasi::{quasihomogeneous_weights, QuasiWeights};
use crate::ring::{MonomialOrder, Poly};
use crate::stdbasis::{Dim, Limits};

pub const DEFAULT_PARAM_TRIALS: u32 = 5;
pub const DEFAULT_SAMUEL_MAX_POWER: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Settings {
    pub limits: Limits,
    /// Jet order for Nash lifts; `None` tries exact division first.
    pub jet_order: Option<u32>,
    /// Parameter values tried for Siersma's count.
    pub param_trials: u32,
    pub samuel_max_power: u32,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            limits: Limits::default(),
            jet_order: None,
            param_trials: DEFAULT_PARAM_TRIALS,
            samuel_max_power: DEFAULT_SAMUEL_MAX_POWER,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LogSummary {
    pub generators: Vec<Vec<String>>,
    pub free: bool,
    pub determinant: Option<String>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GoodEquationSummary {
    pub equation: String,
    pub augmented: bool,
    pub parameters: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct UnfoldingSummary {
    pub name: String,
    pub params: Vec<String>,
    pub map: Vec<Vec<String>>,
    /// Frontality of `F` itself.
    pub frontal: Option<bool>,
    pub frontal_stable_asserted: bool,
    pub good_equation: Option<GoodEquationSummary>,
    pub siersma: Option<SiersmaCount>,
    pub samuel: Option<SamuelEstimate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub quantity: String,
    pub left: String,
    pub right: String,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    /// Monomial orderings used for local and global computations.
    pub orderings: Vec<String>,
    pub limits: Limits,
    pub jet_order: Option<u32>,
    pub param_trials: u32,
    pub samuel_max_power: u32,
    /// Hypotheses that were assumed rather than verified.
    pub assumptions: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub name: String,
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub map: Vec<Vec<String>>,
    pub directives: Vec<String>,
    pub frontality: Option<Frontality>,
    pub nash: Vec<NashData>,
    pub image_equation: Option<String>,
    pub weights: Option<QuasiWeights>,
    pub invariants: InvariantReport,
    pub generating_family: Option<GenfamCheck>,
    pub log_derivations: Option<LogSummary>,
    pub unfolding: Option<UnfoldingSummary>,
    pub cross_checks: Vec<CrossCheck>,
    /// Set when the pipeline stopped early.
    pub halted: Option<String>,
    pub provenance: Provenance,
}

fn strings(ps: &[Poly]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

impl Report {
    fn new(name: &str, f: &MapGerm, directives: &BTreeSet<Directive>, settings: &Settings) -> Report {
        let mut orderings = vec![MonomialOrder::LocalAntiGradedRevLex.tag(), MonomialOrder::GlobalDegRevLex.tag()];
        for ring in [f.source(), f.target()] {
            if let Some(w) = ring.integer_weights() {
                orderings.push(MonomialOrder::Weighted { weights: w, local: true }.tag());
            }
        }
        Report {
            name: name.to_string(),
            source: f.source().names().to_vec(),
            target: f.target().names().to_vec(),
            map: f.branches().iter().map(|b| strings(b)).collect(),
            directives: directives.iter().map(|d| d.as_str().to_string()).collect(),
            frontality: None,
            nash: Vec::new(),
            image_equation: None,
            weights: None,
            invariants: InvariantReport::default(),
            generating_family: None,
            log_derivations: None,
            unfolding: None,
            cross_checks: Vec::new(),
            halted: None,
            provenance: Provenance {
                orderings,
                limits: settings.limits.clone(),
                jet_order: settings.jet_order,
                param_trials: settings.param_trials,
                samuel_max_power: settings.samuel_max_power,
                assumptions: Vec::new(),
            },
        }
    }

    fn assume(&mut self, a: impl Into<String>) {
        let a = a.into();
        if !self.provenance.assumptions.contains(&a) {
            self.provenance.assumptions.push(a);
        }
    }

    fn note(&mut self, n: impl Into<String>) {
        self.invariants.notes.push(n.into());
    }
}

/// Does an error from an implied (not explicitly requested) step only skip that step?
fn skippable(e: &Error) -> bool {
    matches!(e, Error::Precondition(_) | Error::Division(_) | Error::Inconclusive(_))
}

struct Run<'a> {
    settings: &'a Settings,
    f: &'a MapGerm,
    unfolding: Option<(String, UnfoldingSpec)>,
    requested: BTreeSet<Directive>,
    all: bool,
    report: Report,
    image: Option<Poly>,
    good: Option<GoodEquation>,
}

impl Run<'_> {
    fn wants(&self, d: Directive) -> bool {
        self.all || self.requested.contains(&d)
    }

    /// Turn an error into a note when the step was only implied by `all`.
    fn soften<T>(&mut self, d: Directive, r: Result<T>) -> Result<Option<T>> {
        match r {
            Ok(v) => Ok(Some(v)),
            Err(e) if !self.requested.contains(&d) && skippable(&e) => {
                self.report.note(format!("{}: {e}", d.as_str()));
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }

    fn image(&mut self) -> Result<Option<Poly>> {
        if self.image.is_none() {
            let img = image_equation(self.f, &self.settings.limits);
            if let Some(img) = self.soften(Directive::Image, img)? {
                let w = quasihomogeneous_weights(&img.equation);
                self.report.invariants.flags.quasihomogeneous = Some(w.is_some());
                self.report.weights = w;
                self.report.image_equation = Some(img.equation.to_string());
                self.image = Some(img.equation);
            }
        }
        Ok(self.image.clone())
    }

    fn good_equation(&mut self) -> Result<Option<GoodEquation>> {
        if self.good.is_none() {
            let Some((_, u)) = &self.unfolding else { return Ok(None) };
            let good = check_good_equation(u, &self.settings.limits);
            if let Some(good) = self.soften(Directive::GoodEquation, good)? {
                if let Some(s) = self.report.unfolding.as_mut() {
                    s.good_equation = Some(GoodEquationSummary {
                        equation: good.equation.to_string(),
                        augmented: good.augmented,
                        parameters: good.nparams,
                    });
                }
                self.good = Some(good);
            }
        }
        Ok(self.good.clone())
    }

    fn cross_check(&mut self, quantity: &str, left: (&str, &Value), right: (&str, &Value)) {
        let (Some(a), Some(b)) = (left.1.int(), right.1.int()) else { return };
        self.report.cross_checks.push(CrossCheck {
            quantity: quantity.to_string(),
            left: format!("{} = {a}", left.0),
            right: format!("{} = {b}", right.0),
            agree: a == b,
        });
    }

    fn execute(mut self) -> Result<Report> {
        let limits = self.settings.limits.clone();
        let fr = is_frontal(self.f, &limits)?;
        let frontal = fr.frontal;
        self.report.invariants.flags.frontal = Some(frontal);
        self.report.frontality = Some(fr);
        if !frontal {
            self.report.halted = Some("not frontal: R(f) is not principal".into());
            return Ok(self.report);
        }
        if let Some((name, u)) = &self.unfolding {
            let uf = is_frontal(u.map(), &limits)?.frontal;
            if u.frontal_stable_asserted() {
                self.report.assume(format!("{name} is frontal stable (asserted, not verified)"));
            }
            self.report.unfolding = Some(UnfoldingSummary {
                name: name.clone(),
                params: u.params().to_vec(),
                map: u.map().branches().iter().map(|b| strings(b)).collect(),
                frontal: Some(uf),
                frontal_stable_asserted: u.frontal_stable_asserted(),
                good_equation: None,
                siersma: None,
                samuel: None,
            });
        }

        if self.wants(Directive::Wavefront) || self.wants(Directive::Genfam) {
            let mut wave = true;
            for b in 0..self.f.branches().len() {
                let step = PrenormalForm::of_branch(self.f, b)
                    .and_then(|pf| nash_lift(&pf, self.settings.jet_order).map(|n| (pf, n)));
                let Some((pf, nash)) = self.soften(Directive::Wavefront, step)? else {
                    wave = false;
                    break;
                };
                wave &= is_wavefront(&pf, &nash);
                self.report.nash.push(nash);
            }
            if self.report.nash.len() == self.f.branches().len() {
                self.report.invariants.flags.wavefront = Some(wave);
                if self.report.nash.iter().any(|n| !n.exact) {
                    self.report.note("Nash lift computed on jets; wave-front test is certified by the jet order");
                }
            }
        }

        let needs_image = [Directive::Image, Directive::Mu, Directive::HatM, Directive::Derlog]
            .iter()
            .any(|&d| self.wants(d));
        if needs_image {
            self.image()?;
        }

        if self.wants(Directive::Mu) {
            if let Some(g) = self.image.clone() {
                self.report.invariants.mu = Value::from_dim(milnor_number(&g, &limits)?);
            }
        }

        let plane_curve = self.f.n() == 1 && self.f.target().nvars() == 2;
        let mut curve_values: Option<InvariantReport> = None;
        if self.requested.contains(&Directive::Curve) || (self.all && plane_curve) {
            let c = plane_curve_invariants(self.f, &limits);
            if let Some(c) = self.soften(Directive::Curve, c)? {
                let inv = &mut self.report.invariants;
                inv.mu = c.mu.clone();
                inv.delta = c.delta.clone();
                inv.mu_image = c.mu_image.clone();
                inv.mult = c.mult.clone();
                inv.codim_ae = c.codim_ae.clone();
                inv.mu_frontal = c.mu_frontal.clone();
                inv.codim_fe = c.codim_fe.clone();
                inv.flags.quasihomogeneous = c.flags.quasihomogeneous;
                inv.notes.extend(c.notes.iter().cloned());
                curve_values = Some(c);
            }
        }

        if self.wants(Directive::HatM) {
            if let Some(g) = self.image.clone() {
                let v = match hat_m_dimension(self.f, &g, &limits) {
                    Ok(d) => Value::from_dim(d),
                    Err(Error::Inconclusive(r)) => Value::inconclusive(r),
                    Err(e) => return Err(e),
                };
                self.report.invariants.hat_m = v;
                self.report.assume("M^(g) computed by global elimination; the fibre over 0 is certified to be {0}");
            }
        }

        let genfam_applies = self.f.is_monogerm() && self.report.invariants.flags.wavefront == Some(true);
        if self.requested.contains(&Directive::Genfam) || (self.all && genfam_applies) {
            let g = check_generating_family(self.f, self.settings.jet_order, &limits);
            self.report.generating_family = self.soften(Directive::Genfam, g)?;
        }

        if self.wants(Directive::Derlog) {
            if let Some(g) = self.image.clone() {
                let d = derlog(&g, &limits);
                if let Some(d) = self.soften(Directive::Derlog, d)? {
                    let fr = is_free_divisor(&d, &limits)?;
                    self.report.invariants.flags.free_divisor = Some(fr.free);
                    self.report.log_derivations = Some(LogSummary {
                        generators: d.generators.iter().map(|x| strings(&x.coeffs)).collect(),
                        free: fr.free,
                        determinant: fr.determinant.map(|p| p.to_string()),
                        note: fr.note,
                    });
                }
            }
        }

        self.unfolding_steps(curve_values)?;

        let inv = &self.report.invariants;
        if inv.mu_frontal.is_computed() && inv.codim_fe.is_computed() {
            self.report.invariants.conjecture = Some(inv.compare_frontal_invariants());
        }
        Ok(self.report)
    }

    fn unfolding_steps(&mut self, curve: Option<InvariantReport>) -> Result<()> {
        let limits = self.settings.limits.clone();
        let unfolding_directives =
            [Directive::Siersma, Directive::GoodEquation, Directive::MF, Directive::CodimFe, Directive::Samuel];
        let Some((name, u)) = self.unfolding.clone() else {
            if unfolding_directives.iter().any(|d| self.requested.contains(d)) {
                return Err(Error::precondition("no unfolding declared for this map"));
            }
            return Ok(());
        };
        let unfolding_frontal = self.report.unfolding.as_ref().and_then(|s| s.frontal) == Some(true);

        if self.requested.contains(&Directive::Siersma) || (self.all && u.r() == 1) {
            let s = frontal_milnor_siersma(&u, self.settings.param_trials, &limits);
            if let Some(s) = self.soften(Directive::Siersma, s)? {
                self.report.assume("no critical point of g_t escapes to infinity as t -> 0");
                if unfolding_frontal {
                    let ts: Vec<String> = s.trials.iter().map(|(t, _)| t.to_string()).collect();
                    let v = match s.value {
                        Dim::Finite(v) => Value::certified(v as i64, format!("Siersma count at t = {}", ts.join(", "))),
                        Dim::Infinite => Value::Infinite,
                    };
                    if let Some(c) = &curve {
                        self.cross_check("mu_F", ("Siersma", &v), ("plane-curve formula", &c.mu_frontal));
                    }
                    self.report.invariants.mu_frontal = v;
                } else {
                    self.report.note(format!("{name} is not frontal; its Siersma count is not mu_F"));
                }
                if let Some(summary) = self.report.unfolding.as_mut() {
                    summary.siersma = Some(s);
                }
            }
        }

        let wants_good = [Directive::GoodEquation, Directive::MF, Directive::CodimFe, Directive::Samuel]
            .iter()
            .any(|&d| self.wants(d));
        if !wants_good || self.good_equation()?.is_none() {
            return Ok(());
        }
        let good = self.good.clone().expect("computed above");

        if self.wants(Directive::MF) {
            self.report.invariants.m_f = Value::from_dim(m_f_dimension(&good, &limits)?);
        }
        if self.wants(Directive::CodimFe) {
            let cert = if u.frontal_stable_asserted() {
                format!("good equation of {name}, frontal stability asserted")
            } else {
                self.report.assume(format!("{name} is taken to be a frontal stable unfolding"));
                format!("good equation of {name}")
            };
            let v = match frontal_codimension(&good, &limits)? {
                Dim::Finite(v) => Value::certified(v as i64, cert),
                Dim::Infinite => Value::Infinite,
            };
            if let Some(c) = &curve {
                self.cross_check("codim_Fe", ("good equation", &v), ("plane-curve formula", &c.codim_fe));
            }
            self.report.invariants.codim_fe = v;
        }
        if self.wants(Directive::Samuel) {
            let est = samuel_multiplicity_estimate(&good, self.settings.samuel_max_power, &limits);
            let v = match est {
                Ok(est) => {
                    let v = Value::certified(
                        est.value as i64,
                        format!("r-th difference constant for k = {}..{}", est.window.0, est.window.1),
                    );
                    if let Some(s) = self.report.unfolding.as_mut() {
                        s.samuel = Some(est);
                    }
                    v
                }
                Err(Error::Inconclusive(r)) => Value::inconclusive(r),
                Err(e) => return Err(e),
            };
            let mu_f = self.report.invariants.mu_frontal.clone();
            self.cross_check("e(m_r; M_y(G))", ("Samuel", &v), ("mu_F", &mu_f));
            self.report.invariants.samuel = v;
        }
        Ok(())
    }
}

/// Map and unfolding behind an analysis target name.
fn resolve(file: &GermFile, target: &str) -> Result<(MapGerm, Option<(String, UnfoldingSpec)>)> {
    if let Some(f) = file.map(target) {
        let u = match file.unfoldings_of(target).first() {
            Some(name) => Some((name.to_string(), file.unfolding_spec(name)?)),
            None => None,
        };
        return Ok((f.clone(), u));
    }
    let base = file.base_of(target).ok_or_else(|| Error::precondition(format!("`{target}` is not defined")))?;
    let f = file.map(base).expect("parser checked the base map").clone();
    Ok((f, Some((target.to_string(), file.unfolding_spec(target)?))))
}

/// Run `directives` on the map or unfolding `target`. An empty list only
/// validates the declaration.
pub fn analyze(file: &GermFile, target: &str, directives: &[Directive], settings: &Settings) -> Result<Report> {
    let (f, unfolding) = resolve(file, target)?;
    let requested: BTreeSet<Directive> = directives.iter().copied().collect();
    let all = requested.contains(&Directive::All);
    let mut report = Report::new(target, &f, &requested, settings);
    if requested.is_empty() {
        report.note("parse only: no directives requested");
        return Ok(report);
    }
    let run = Run { settings, f: &f, unfolding, requested, all, report, image: None, good: None };
    run.execute()
}

/// Every `analyze` statement of the file in order.
pub fn analyze_file(file: &GermFile, settings: &Settings) -> Result<Vec<Report>> {
    file.analyses().map(|(t, ds)| analyze(file, t, ds, settings)).collect()
}

/// Compute `M_F`, `μ_F` and `codim_Fe` for each unfolding of the file and compare
/// `μ_F ≥ codim_Fe` (equality when quasihomogeneous).
pub fn verify(file: &GermFile, settings: &Settings) -> Result<Vec<Report>> {
    let mut out = Vec::new();
    let names: Vec<String> = file
        .statements
        .iter()
        .filter_map(|s| match s {
            super::grammar::Statement::Unfold { name, .. } => Some(name.clone()),
            _ => None,
        })
        .collect();
    if names.is_empty() {
        return Err(Error::precondition("verification needs an unfolding"));
    }
    for name in names {
        out.push(verify_unfolding(file, &name, settings)?);
    }
    Ok(out)
}

fn verify_unfolding(file: &GermFile, name: &str, settings: &Settings) -> Result<Report> {
    let (f, unfolding) = resolve(file, name)?;
    let u = unfolding.as_ref().expect("resolved from an unfolding").1.clone();
    let requested: BTreeSet<Directive> = BTreeSet::new();
    let mut report = Report::new(name, &f, &requested, settings);
    report.directives = vec!["verify".into()];
    let mut run = Run { settings, f: &f, unfolding, requested, all: false, report, image: None, good: None };
    let limits = settings.limits.clone();

    let inconclusive = |mut report: Report, reason: &str| {
        report.invariants.conjecture = Some(Conjecture::Inconclusive { reason: reason.to_string() });
        Ok(report)
    };
    let fr = is_frontal(&f, &limits)?;
    run.report.invariants.flags.frontal = Some(fr.frontal);
    run.report.frontality = Some(fr.clone());
    if !fr.frontal {
        return inconclusive(run.report, "the germ is not frontal");
    }
    let uf = is_frontal(u.map(), &limits)?.frontal;
    run.report.unfolding = Some(UnfoldingSummary {
        name: name.to_string(),
        params: u.params().to_vec(),
        map: u.map().branches().iter().map(|b| strings(b)).collect(),
        frontal: Some(uf),
        frontal_stable_asserted: u.frontal_stable_asserted(),
        good_equation: None,
        siersma: None,
        samuel: None,
    });
    if !uf {
        return inconclusive(run.report, &format!("{name} is not a frontal unfolding"));
    }
    if u.frontal_stable_asserted() {
        run.report.assume(format!("{name} is frontal stable (asserted, not verified)"));
    } else {
        run.report.assume(format!("{name} is taken to be a frontal stable unfolding"));
    }

    let Some(good) = run.good_equation()? else {
        return inconclusive(run.report, "no good defining equation");
    };
    let m_f = m_f_dimension(&good, &limits)?;
    run.report.invariants.m_f = Value::from_dim(m_f);
    if m_f == Dim::Infinite {
        return inconclusive(run.report, "M_F(g) is not finite");
    }
    if run.image()?.is_none() {
        return inconclusive(run.report, "no image equation");
    }

    let plane_curve = f.n() == 1 && f.target().nvars() == 2 && f.is_monogerm();
    let curve = if plane_curve { Some(plane_curve_invariants(&f, &limits)?) } else { None };
    if let Some(c) = &curve {
        run.report.invariants.mu = c.mu.clone();
        run.report.invariants.delta = c.delta.clone();
        run.report.invariants.mu_image = c.mu_image.clone();
        run.report.invariants.mult = c.mult.clone();
        run.report.invariants.codim_ae = c.codim_ae.clone();
    }
    if u.r() == 1 {
        run.requested.insert(Directive::Siersma);
    } else if let Some(c) = &curve {
        run.report.invariants.mu_frontal = c.mu_frontal.clone();
    }
    run.requested.insert(Directive::CodimFe);
    run.requested.insert(Directive::Samuel);
    run.unfolding_steps(curve)?;

    let inv = &run.report.invariants;
    let status = match (inv.mu_frontal.int(), inv.codim_fe.int()) {
        (Some(_), Some(_)) => inv.compare_frontal_invariants(),
        _ => Conjecture::Inconclusive { reason: format!("mu_F = {}, codim_Fe = {}", inv.mu_frontal, inv.codim_fe) },
    };
    run.report.invariants.conjecture = Some(status);
    Ok(run.report)
}
