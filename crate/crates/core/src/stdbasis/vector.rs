//! Sparse vectors of the free module `R^s`, ordered position-over-term.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::ring::{ExpVec, MonomialOrder, Poly, Rational, Ring};

/// Position-over-term extension of a ring ordering: component `0` is the
/// largest, ties are broken by the ring ordering.
#[derive(Clone, Debug)]
pub struct ModOrder {
    pub order: MonomialOrder,
}

impl ModOrder {
    pub fn new(order: MonomialOrder) -> Self {
        ModOrder { order }
    }

    #[inline]
    pub fn compare(&self, a: &Term, b: &Term) -> Ordering {
        b.comp.cmp(&a.comp).then_with(|| self.order.compare(&a.exp, &b.exp))
    }

    #[inline]
    pub fn sdeg(&self, e: &ExpVec) -> u64 {
        self.order.sugar_degree(e.as_slice())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub comp: u32,
    pub exp: ExpVec,
    pub coeff: Rational,
}

/// Terms strictly decreasing in the module ordering, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Vector {
    pub terms: Vec<Term>,
}

impl Vector {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &Term {
        &self.terms[0]
    }

    /// Embed a polynomial (already sorted in its ring ordering) as component `comp`.
    pub fn from_poly(p: &Poly, comp: u32) -> Self {
        Vector {
            terms: p
                .terms()
                .iter()
                .map(|(e, c)| Term { comp, exp: e.clone(), coeff: c.clone() })
                .collect(),
        }
    }

    /// Concatenation of components; position-over-term keeps this sorted.
    pub fn from_polys(ps: &[Poly]) -> Self {
        let mut terms = Vec::new();
        for (k, p) in ps.iter().enumerate() {
            terms.extend(
                p.terms()
                    .iter()
                    .map(|(e, c)| Term { comp: k as u32, exp: e.clone(), coeff: c.clone() }),
            );
        }
        Vector { terms }
    }

    pub fn component(&self, ring: &Ring, comp: u32) -> Poly {
        Poly::from_terms(
            ring,
            self.terms.iter().filter(|t| t.comp == comp).map(|t| (t.exp.clone(), t.coeff.clone())),
        )
    }

    pub fn to_polys(&self, ring: &Ring, rank: usize) -> Vec<Poly> {
        (0..rank as u32).map(|c| self.component(ring, c)).collect()
    }

    pub fn max_sdeg(&self, ord: &ModOrder) -> u64 {
        self.terms.iter().map(|t| ord.sdeg(&t.exp)).max().unwrap_or(0)
    }

    /// Écart: largest degree of a term minus the degree of the leading term.
    pub fn ecart(&self, ord: &ModOrder) -> u64 {
        if self.terms.is_empty() {
            return 0;
        }
        let ld = ord.sdeg(&self.terms[0].exp);
        self.max_sdeg(ord).saturating_sub(ld)
    }

    pub fn scale(&mut self, c: &Rational) {
        for t in &mut self.terms {
            t.coeff *= c;
        }
    }

    pub fn make_monic(&mut self) {
        if let Some(t) = self.terms.first() {
            if !t.coeff.is_one() {
                let inv = t.coeff.recip();
                self.scale(&inv);
            }
        }
    }

    /// Scale to integer coefficients without common factor and a positive
    /// leading coefficient.
    pub fn make_primitive(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for t in &self.terms {
            den = den.lcm(t.coeff.denom());
            num = num.gcd(t.coeff.numer());
        }
        let mut factor = Rational::new(den, num);
        if self.terms[0].coeff.is_negative() {
            factor = -factor;
        }
        if !factor.is_one() {
            self.scale(&factor);
        }
    }

    /// `self - c * x^m * g`.
    pub fn sub_mul(&self, m: &ExpVec, c: &Rational, g: &Vector, ord: &ModOrder) -> Vector {
        let a = &self.terms;
        let b = &g.terms;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let mut pending: Option<Term> = None;
        loop {
            if pending.is_none() && j < b.len() {
                let bt = &b[j];
                pending = Some(Term { comp: bt.comp, exp: bt.exp.mul(m), coeff: -(c * &bt.coeff) });
            }
            match (a.get(i), pending.as_ref()) {
                (None, None) => break,
                (Some(at), None) => {
                    out.push(at.clone());
                    i += 1;
                }
                (None, Some(_)) => {
                    out.push(pending.take().unwrap());
                    j += 1;
                }
                (Some(at), Some(pt)) => match ord.compare(at, pt) {
                    Ordering::Greater => {
                        out.push(at.clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push(pending.take().unwrap());
                        j += 1;
                    }
                    Ordering::Equal => {
                        let s = &at.coeff + &pt.coeff;
                        if !s.is_zero() {
                            out.push(Term { comp: at.comp, exp: at.exp.clone(), coeff: s });
                        }
                        pending = None;
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
        Vector { terms: out }
    }

    /// `x^m * self * c`, sortedness preserved because orderings are multiplicative.
    pub fn mul_term(&self, m: &ExpVec, c: &Rational) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| Term { comp: t.comp, exp: t.exp.mul(m), coeff: &t.coeff * c })
                .collect(),
        }
    }
}
