use std::fmt;

use serde::Serialize;

use crate::stdbasis::Dim;

/// One reported quantity together with how it was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Value {
    Exact { value: i64 },
    /// Valid under the recorded certificate (jet order, parameter trials, ...).
    Certified { value: i64, certificate: String },
    Infinite,
    NotComputed,
    Inconclusive { reason: String },
}

impl Value {
    pub fn exact(value: i64) -> Value {
        Value::Exact { value }
    }

    pub fn certified(value: i64, certificate: impl Into<String>) -> Value {
        Value::Certified { value, certificate: certificate.into() }
    }

    pub fn inconclusive(reason: impl Into<String>) -> Value {
        Value::Inconclusive { reason: reason.into() }
    }

    pub fn from_dim(d: Dim) -> Value {
        match d {
            Dim::Finite(v) => Value::exact(v as i64),
            Dim::Infinite => Value::Infinite,
        }
    }

    /// Integer value when exact or certified.
    pub fn int(&self) -> Option<i64> {
        match self {
            Value::Exact { value } | Value::Certified { value, .. } => Some(*value),
            _ => None,
        }
    }

    pub fn is_computed(&self) -> bool {
        !matches!(self, Value::NotComputed)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact { value } => write!(f, "{value}"),
            Value::Certified { value, certificate } => write!(f, "{value} (certified: {certificate})"),
            Value::Infinite => write!(f, "INFINITE"),
            Value::NotComputed => write!(f, "not computed"),
            Value::Inconclusive { reason } => write!(f, "inconclusive ({reason})"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub frontal: Option<bool>,
    pub wavefront: Option<bool>,
    pub quasihomogeneous: Option<bool>,
    pub free_divisor: Option<bool>,
}

/// Outcome of comparing `μ_F` with `codim_Fe`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Conjecture {
    /// `μ_F ≥ codim_Fe`; `equality` records whether they coincide.
    Holds { mu_frontal: i64, codim_fe: i64, equality: bool },
    Violated { reason: String },
    Inconclusive { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub mu: Value,
    pub mu_image: Value,
    pub mu_frontal: Value,
    pub mult: Value,
    pub delta: Value,
    pub codim_ae: Value,
    pub codim_fe: Value,
    pub hat_m: Value,
    pub m_f: Value,
    pub samuel: Value,
    pub flags: Flags,
    pub conjecture: Option<Conjecture>,
    pub notes: Vec<String>,
}

impl Default for InvariantReport {
    fn default() -> Self {
        InvariantReport {
            mu: Value::NotComputed,
            mu_image: Value::NotComputed,
            mu_frontal: Value::NotComputed,
            mult: Value::NotComputed,
            delta: Value::NotComputed,
            codim_ae: Value::NotComputed,
            codim_fe: Value::NotComputed,
            hat_m: Value::NotComputed,
            m_f: Value::NotComputed,
            samuel: Value::NotComputed,
            flags: Flags::default(),
            conjecture: None,
            notes: Vec::new(),
        }
    }
}

impl InvariantReport {
    /// `μ_F ≥ codim_Fe`, with equality required when the image is quasihomogeneous.
    pub fn compare_frontal_invariants(&self) -> Conjecture {
        let (Some(mf), Some(cf)) = (self.mu_frontal.int(), self.codim_fe.int()) else {
            return Conjecture::Inconclusive {
                reason: format!("mu_F = {}, codim_Fe = {}", self.mu_frontal, self.codim_fe),
            };
        };
        if mf < cf {
            return Conjecture::Violated { reason: format!("mu_F = {mf} < codim_Fe = {cf}") };
        }
        if self.flags.quasihomogeneous == Some(true) && mf != cf {
            return Conjecture::Violated { reason: format!("quasihomogeneous but mu_F = {mf} != codim_Fe = {cf}") };
        }
        Conjecture::Holds { mu_frontal: mf, codim_fe: cf, equality: mf == cf }
    }

    /// Named values in report order.
    pub fn values(&self) -> [(&'static str, &Value); 10] {
        [
            ("mu", &self.mu),
            ("mu_I", &self.mu_image),
            ("mu_F", &self.mu_frontal),
            ("mult", &self.mult),
            ("delta", &self.delta),
            ("codim_Ae", &self.codim_ae),
            ("codim_Fe", &self.codim_fe),
            ("dim M^(g)", &self.hat_m),
            ("dim M_F(g)", &self.m_f),
            ("e(m_r; M_y(G))", &self.samuel),
        ]
    }
}

impl fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, v) in self.values() {
            if v.is_computed() {
                writeln!(f, "  {name:<16} {v}")?;
            }
        }
        let flags = [
            ("frontal", self.flags.frontal),
            ("wave front", self.flags.wavefront),
            ("quasihomogeneous", self.flags.quasihomogeneous),
            ("free divisor", self.flags.free_divisor),
        ];
        for (name, v) in flags {
            if let Some(b) = v {
                writeln!(f, "  {name:<16} {}", if b { "yes" } else { "no" })?;
            }
        }
        match &self.conjecture {
            Some(Conjecture::Holds { mu_frontal, codim_fe, equality }) => {
                let rel = if *equality { "=" } else { ">" };
                writeln!(f, "  mu_F {rel} codim_Fe   {mu_frontal} {rel} {codim_fe}")?;
            }
            Some(Conjecture::Violated { reason }) => writeln!(f, "  VIOLATION        {reason}")?,
            Some(Conjecture::Inconclusive { reason }) => writeln!(f, "  inconclusive     {reason}")?,
            None => {}
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comparison() {
        let mut r = InvariantReport { mu_frontal: Value::exact(1), codim_fe: Value::exact(1), ..Default::default() };
        r.flags.quasihomogeneous = Some(true);
        assert_eq!(r.compare_frontal_invariants(), Conjecture::Holds { mu_frontal: 1, codim_fe: 1, equality: true });
        r.codim_fe = Value::exact(0);
        assert!(matches!(r.compare_frontal_invariants(), Conjecture::Violated { .. }));
        r.flags.quasihomogeneous = Some(false);
        assert!(matches!(r.compare_frontal_invariants(), Conjecture::Holds { equality: false, .. }));
        r.codim_fe = Value::exact(2);
        assert!(matches!(r.compare_frontal_invariants(), Conjecture::Violated { .. }));
        r.m_f = Value::Infinite;
        r.codim_fe = Value::Infinite;
        assert!(matches!(r.compare_frontal_invariants(), Conjecture::Inconclusive { .. }));
    }

    #[test]
    fn serialization_is_tagged() {
        let s = serde_json::to_string(&Value::exact(6)).unwrap();
        assert_eq!(s, r#"{"status":"exact","value":6}"#);
        assert_eq!(serde_json::to_string(&Value::Infinite).unwrap(), r#"{"status":"infinite"}"#);
    }
}
