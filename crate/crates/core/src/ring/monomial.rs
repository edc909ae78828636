use std::fmt;

use smallvec::SmallVec;

/// Exponent vector of a monomial, one entry per ring variable.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExpVec(SmallVec<[u16; 8]>);

impl ExpVec {
    pub fn zeros(n: usize) -> Self {
        ExpVec(SmallVec::from_elem(0, n))
    }

    pub fn from_slice(exps: &[u16]) -> Self {
        ExpVec(SmallVec::from_slice(exps))
    }

    /// `x_var^power` in a ring of `n` variables.
    pub fn var_power(n: usize, var: usize, power: u16) -> Self {
        let mut e = Self::zeros(n);
        e.0[var] = power;
        e
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn as_slice(&self) -> &[u16] {
        &self.0
    }

    #[inline]
    pub fn get(&self, var: usize) -> u16 {
        self.0[var]
    }

    #[inline]
    pub fn set(&mut self, var: usize, value: u16) {
        self.0[var] = value;
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// `true` when `self` divides `other`.
    #[inline]
    pub fn divides(&self, other: &ExpVec) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &ExpVec) -> ExpVec {
        ExpVec(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    /// Quotient `self / other`; caller guarantees `other | self`.
    pub fn div(&self, other: &ExpVec) -> ExpVec {
        debug_assert!(other.divides(self));
        ExpVec(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn checked_div(&self, other: &ExpVec) -> Option<ExpVec> {
        if other.divides(self) {
            Some(self.div(other))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &ExpVec) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Index of the only variable occurring, if the monomial is a pure power.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub fn iter(&self) -> impl Iterator<Item = u16> + '_ {
        self.0.iter().copied()
    }
}

impl fmt::Debug for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl From<Vec<u16>> for ExpVec {
    fn from(v: Vec<u16>) -> Self {
        ExpVec(SmallVec::from_vec(v))
    }
}

impl FromIterator<u16> for ExpVec {
    fn from_iter<I: IntoIterator<Item = u16>>(iter: I) -> Self {
        ExpVec(iter.into_iter().collect())
    }
}
