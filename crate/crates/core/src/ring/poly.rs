use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::ExpVec;
use super::order::MonomialOrder;
use super::ring::Ring;
use super::Rational;
use crate::error::{Error, Result};

/// Polynomial with rational coefficients.
///
/// Terms are kept strictly decreasing in the ring's ordering with no zero
/// coefficients, so the first term is the leading term.
#[derive(Clone)]
pub struct Poly {
    ring: Ring,
    terms: Vec<(ExpVec, Rational)>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(ring: &Ring) -> Poly {
        Poly { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Ring) -> Poly {
        Poly::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Ring, c: Rational) -> Poly {
        Poly::monomial(ring, ExpVec::zeros(ring.nvars()), c)
    }

    pub fn integer(ring: &Ring, c: i64) -> Poly {
        Poly::constant(ring, Rational::from_integer(c.into()))
    }

    pub fn var(ring: &Ring, i: usize) -> Poly {
        assert!(i < ring.nvars(), "variable index out of range");
        Poly::monomial(ring, ExpVec::var_power(ring.nvars(), i, 1), Rational::one())
    }

    pub fn monomial(ring: &Ring, exp: ExpVec, c: Rational) -> Poly {
        assert_eq!(exp.len(), ring.nvars(), "exponent arity");
        if c.is_zero() {
            return Poly::zero(ring);
        }
        Poly { ring: ring.clone(), terms: vec![(exp, c)] }
    }

    /// Build from arbitrary terms; duplicates are merged and zeros dropped.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (ExpVec, Rational)>) -> Poly {
        let mut acc: HashMap<ExpVec, Rational> = HashMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), ring.nvars(), "exponent arity");
            if c.is_zero() {
                continue;
            }
            *acc.entry(e).or_insert_with(Rational::zero) += c;
        }
        Poly::from_map(ring, acc)
    }

    fn from_map(ring: &Ring, acc: HashMap<ExpVec, Rational>) -> Poly {
        let mut terms: Vec<(ExpVec, Rational)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = ring.order();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        Poly { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(ExpVec, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(ExpVec, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn leading_exp(&self) -> Option<&ExpVec> {
        self.terms.first().map(|(e, _)| e)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> Rational {
        self.coeff(&ExpVec::zeros(self.ring.nvars()))
    }

    pub fn coeff(&self, exp: &ExpVec) -> Rational {
        self.terms
            .iter()
            .find(|(e, _)| e == exp)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Units of the local ring: nonzero value at the origin.
    pub fn is_local_unit(&self) -> bool {
        !self.constant_term().is_zero()
    }

    pub fn vanishes_at_origin(&self) -> bool {
        self.constant_term().is_zero()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(e, _)| e.degree()).max()
    }

    /// Order at the origin (lowest total degree); `None` for zero.
    pub fn order_at_origin(&self) -> Option<u32> {
        self.terms.iter().map(|(e, _)| e.degree()).min()
    }

    pub fn degree_in(&self, var: usize) -> Option<u16> {
        self.terms.iter().map(|(e, _)| e.get(var)).max()
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|(e, _)| e.get(var) > 0)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Multiply by `c * x^exp`; the ordering is multiplicative so sortedness is kept.
    pub fn mul_term(&self, exp: &ExpVec, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, a)| (e.mul(exp), a * c)).collect(),
        }
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &other.terms[j];
            match order.compare(ea, eb) {
                Ordering::Greater => {
                    out.push((ea.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((eb.clone(), if negate { -cb } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((ea.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(
            other.terms[j..]
                .iter()
                .map(|(e, c)| (e.clone(), if negate { -c } else { c.clone() })),
        );
        Poly { ring: self.ring.clone(), terms: out }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.ring.check_same(&other.ring)?;
        Ok(self.merge(other, false))
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.ring.check_same(&other.ring)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ring);
        }
        let mut acc: HashMap<ExpVec, Rational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                *acc.entry(ea.mul(eb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        Poly::from_map(&self.ring, acc)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut result = Poly::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact quotient `self / d` by multivariate division in degrevlex.
    pub fn exact_div(&self, d: &Poly) -> Result<Poly> {
        self.ring.check_same(&d.ring)?;
        if d.is_zero() {
            return Err(Error::Division("division by zero".into()));
        }
        let glob = self.ring.to_global();
        let (q, r) = self.reinterpret(&glob).div_rem(&d.reinterpret(&glob));
        if !r.is_zero() {
            return Err(Error::Division(format!("{d} does not divide {self}")));
        }
        Ok(q.reinterpret(&self.ring))
    }

    /// Division by a single polynomial in the current ordering (global orderings only
    /// guarantee termination).
    fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let (le, lc) = (d.terms[0].0.clone(), d.terms[0].1.clone());
        let mut q = Vec::new();
        let mut r = Vec::new();
        let mut p = self.clone();
        while let Some((e, c)) = p.terms.first().cloned() {
            if let Some(m) = e.checked_div(&le) {
                let coef = &c / &lc;
                p = p.merge(&d.mul_term(&m, &coef), true);
                q.push((m, coef));
            } else {
                r.push((e, c));
                p.terms.remove(0);
            }
        }
        (Poly::from_terms(&self.ring, q), Poly::from_terms(&self.ring, r))
    }

    /// Same terms viewed in a ring with identical arity (re-sorted for its ordering).
    pub fn reinterpret(&self, ring: &Ring) -> Poly {
        assert_eq!(ring.nvars(), self.ring.nvars(), "arity mismatch");
        if *ring == self.ring {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        let order = ring.order();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        Poly { ring: ring.clone(), terms }
    }

    /// Move into `ring`, sending variable `i` to variable `var_map[i]`.
    pub fn embed(&self, ring: &Ring, var_map: &[usize]) -> Poly {
        assert_eq!(var_map.len(), self.ring.nvars(), "arity mismatch");
        Poly::from_terms(
            ring,
            self.terms.iter().map(|(e, c)| {
                let mut ne = ExpVec::zeros(ring.nvars());
                for (i, &k) in var_map.iter().enumerate() {
                    ne.set(k, ne.get(k) + e.get(i));
                }
                (ne, c.clone())
            }),
        )
    }

    /// Move into a ring whose variable names include all of ours, matching by name.
    pub fn embed_by_name(&self, ring: &Ring) -> Result<Poly> {
        let mut map = Vec::with_capacity(self.ring.nvars());
        for (i, n) in self.ring.names().iter().enumerate() {
            match ring.var_index(n) {
                Some(k) => map.push(k),
                None if !self.involves(i) => map.push(usize::MAX),
                None => {
                    return Err(Error::RingMismatch(format!("variable `{n}` missing from {ring:?}")))
                }
            }
        }
        Ok(Poly::from_terms(
            ring,
            self.terms.iter().map(|(e, c)| {
                let mut ne = ExpVec::zeros(ring.nvars());
                for (i, &k) in map.iter().enumerate() {
                    if k != usize::MAX {
                        ne.set(k, ne.get(k) + e.get(i));
                    }
                }
                (ne, c.clone())
            }),
        ))
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.ring.nvars(), "arity mismatch");
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, k) in e.iter().enumerate() {
                if k > 0 {
                    t *= num_traits::pow(point[i].clone(), k as usize);
                }
            }
            total += t;
        }
        total
    }

    /// Scale to integer coefficients with gcd 1 and positive leading coefficient
    /// (leading in degrevlex, so the result does not depend on the ring ordering).
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for (_, c) in &self.terms {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        let lead = self
            .terms
            .iter()
            .max_by(|a, b| MonomialOrder::GlobalDegRevLex.compare(&a.0, &b.0))
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false);
        let mut factor = Rational::new(den, num);
        if lead {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) => self.scale(&c.recip()),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&Rational) -> Rational) -> Poly {
        Poly::from_terms(&self.ring, self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }

    /// Terms in descending degrevlex order, independent of the ring ordering.
    pub fn display_terms(&self) -> Vec<(ExpVec, Rational)> {
        let mut t = self.terms.clone();
        t.sort_by(|a, b| MonomialOrder::GlobalDegRevLex.compare(&b.0, &a.0));
        t
    }
}

fn fmt_monomial(names: &[String], e: &ExpVec) -> String {
    let mut parts = Vec::new();
    for (i, k) in e.iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], k)),
        }
    }
    parts.join("*")
}

pub(crate) fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = self.ring.names();
        for (k, (e, c)) in self.display_terms().iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mono = fmt_monomial(names, e);
            if mono.is_empty() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), mono)?;
            }
        }
        Ok(())
    }
}

impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.merge(rhs, false)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.merge(rhs, true)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        self.mul_unchecked(rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
