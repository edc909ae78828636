use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::order::MonomialOrder;
use super::poly::Poly;
use super::Rational;
use crate::error::{Error, Result};

#[derive(Debug, PartialEq, Eq)]
pub struct RingSpec {
    names: Vec<String>,
    weights: Option<Vec<Rational>>,
    order: MonomialOrder,
}

/// Shared handle to a polynomial ring `Q[v_1, ..., v_m]` with a fixed ordering.
///
/// Two handles compare equal when they describe the same variables, weights
/// and ordering, whether or not they share the allocation.
#[derive(Clone)]
pub struct Ring(Arc<RingSpec>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]/{}", self.0.names.join(","), self.0.order.tag())
    }
}

impl Ring {
    pub fn new<S: AsRef<str>>(names: &[S], order: MonomialOrder) -> Result<Ring> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || names[..i].contains(n) {
                return Err(Error::precondition(format!("invalid or duplicate variable name `{n}`")));
            }
        }
        if !order.validate(names.len()) {
            return Err(Error::precondition(format!(
                "ordering {} does not fit {} variables",
                order.tag(),
                names.len()
            )));
        }
        Ok(Ring(Arc::new(RingSpec { names, weights: None, order })))
    }

    /// Polynomial ring with degree reverse lexicographic ordering.
    ///
    /// Panics on duplicate names; use [`Ring::new`] for fallible construction.
    pub fn global<S: AsRef<str>>(names: &[S]) -> Ring {
        Ring::new(names, MonomialOrder::GlobalDegRevLex).expect("valid variable names")
    }

    /// Localization at the origin with the anti-graded reverse lexicographic ordering.
    pub fn local<S: AsRef<str>>(names: &[S]) -> Ring {
        Ring::new(names, MonomialOrder::LocalAntiGradedRevLex).expect("valid variable names")
    }

    pub fn with_order(&self, order: MonomialOrder) -> Result<Ring> {
        if !order.validate(self.nvars()) {
            return Err(Error::precondition(format!(
                "ordering {} does not fit {} variables",
                order.tag(),
                self.nvars()
            )));
        }
        Ok(Ring(Arc::new(RingSpec {
            names: self.0.names.clone(),
            weights: self.0.weights.clone(),
            order,
        })))
    }

    /// Attach positive rational weights; the ordering is left unchanged.
    pub fn with_weights(&self, weights: Vec<Rational>) -> Result<Ring> {
        if weights.len() != self.nvars() {
            return Err(Error::Arity { expected: self.nvars(), found: weights.len() });
        }
        if weights.iter().any(|w| !w.is_positive()) {
            return Err(Error::precondition("weights must be positive"));
        }
        Ok(Ring(Arc::new(RingSpec {
            names: self.0.names.clone(),
            weights: Some(weights),
            order: self.0.order.clone(),
        })))
    }

    /// Same variables, local ordering (weighted when the ring carries weights).
    pub fn to_local(&self) -> Ring {
        let order = match self.integer_weights() {
            Some(w) => MonomialOrder::Weighted { weights: w, local: true },
            None => MonomialOrder::LocalAntiGradedRevLex,
        };
        self.with_order(order).expect("ordering fits")
    }

    /// Same variables, global degree reverse lexicographic ordering.
    pub fn to_global(&self) -> Ring {
        self.with_order(MonomialOrder::GlobalDegRevLex).expect("ordering fits")
    }

    pub fn nvars(&self) -> usize {
        self.0.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn name(&self, var: usize) -> &str {
        &self.0.names[var]
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.0.order
    }

    pub fn weights(&self) -> Option<&[Rational]> {
        self.0.weights.as_deref()
    }

    /// Weights scaled to coprime positive integers.
    pub fn integer_weights(&self) -> Option<Vec<u32>> {
        self.0.weights.as_ref().map(|w| scale_to_integers(w))
    }

    pub fn is_local(&self) -> bool {
        self.0.order.is_local()
    }

    pub fn is_global(&self) -> bool {
        self.0.order.is_global()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::var(self, i)
    }

    pub fn vars(&self) -> Vec<Poly> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self)
    }

    pub fn one(&self) -> Poly {
        Poly::one(self)
    }

    pub fn constant(&self, c: Rational) -> Poly {
        Poly::constant(self, c)
    }

    /// Parse a polynomial expression over the ring's variables.
    pub fn parse(&self, text: &str) -> Result<Poly> {
        super::parse::parse_poly(self, text)
    }

    pub fn check_same(&self, other: &Ring) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("{self:?} vs {other:?}")))
        }
    }

    /// New ring with `extra` variables appended, all under `order`.
    pub fn extend<S: AsRef<str>>(&self, extra: &[S], order: MonomialOrder) -> Result<Ring> {
        let mut names = self.0.names.clone();
        names.extend(extra.iter().map(|s| s.as_ref().to_string()));
        Ring::new(&names, order)
    }
}

fn scale_to_integers(w: &[Rational]) -> Vec<u32> {
    let mut den = num_bigint::BigInt::one();
    for r in w {
        den = den.lcm(r.denom());
    }
    let ints: Vec<num_bigint::BigInt> = w.iter().map(|r| (r * &den).to_integer()).collect();
    let mut g = num_bigint::BigInt::zero();
    for i in &ints {
        g = g.gcd(i);
    }
    if g.is_zero() {
        g = num_bigint::BigInt::one();
    }
    ints.iter().map(|i| (i / &g).to_u32().expect("weight fits in u32")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_names_rejected() {
        assert!(Ring::new(&["x", "x"], MonomialOrder::GlobalDegRevLex).is_err());
    }

    #[test]
    fn structural_equality() {
        let a = Ring::global(&["x", "y"]);
        let b = Ring::global(&["x", "y"]);
        assert_eq!(a, b);
        assert_ne!(a, a.to_local());
    }

    #[test]
    fn rational_weights_scale() {
        let r = Ring::global(&["x", "y"])
            .with_weights(vec![Rational::new(1.into(), 2.into()), Rational::new(3.into(), 4.into())])
            .unwrap();
        assert_eq!(r.integer_weights(), Some(vec![2, 3]));
    }
}
