//! Exact dense linear algebra over Q.

use num_traits::{One, Zero};

use super::Rational;

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut().skip(c) {
            *v *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (k, pv) in pivot_row.iter().enumerate().skip(c) {
                if !pv.is_zero() {
                    row[k] -= &f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Rational>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

/// Basis of `{v : m v = 0}`.
pub fn nullspace(m: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

/// One solution of `m x = b`, or `None` when inconsistent. Free variables are zero.
pub fn solve(m: &[Vec<Rational>], b: &[Rational], cols: usize) -> Option<Vec<Rational>> {
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.resize(cols, Rational::zero());
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut a);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = a[r][cols].clone();
    }
    Some(x)
}

/// Incremental row space used to count dimensions of spans of vectors.
///
/// Rows are kept in echelon form keyed by pivot column.
#[derive(Default, Clone)]
pub struct RowSpace {
    rows: Vec<(usize, Vec<(usize, Rational)>)>,
}

impl RowSpace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduce a sparse vector (sorted by column) against the space.
    pub fn reduce(&self, v: Vec<(usize, Rational)>) -> Vec<(usize, Rational)> {
        let mut v = v;
        for (p, row) in &self.rows {
            let Ok(idx) = v.binary_search_by_key(p, |(c, _)| *c) else { continue };
            let f = v[idx].1.clone();
            v = axpy(&v, row, &f);
        }
        v
    }

    /// Insert a vector; returns `true` when it enlarged the span.
    pub fn insert(&mut self, v: Vec<(usize, Rational)>) -> bool {
        let v = self.reduce(v);
        let Some((p, lead)) = v.first().cloned() else { return false };
        let inv = lead.recip();
        let v: Vec<(usize, Rational)> = v.into_iter().map(|(c, x)| (c, x * &inv)).collect();
        // keep rows fully reduced against the new pivot
        for (_, row) in self.rows.iter_mut() {
            if let Ok(idx) = row.binary_search_by_key(&p, |(c, _)| *c) {
                let f = row[idx].1.clone();
                *row = axpy(row, &v, &f);
            }
        }
        self.rows.push((p, v));
        true
    }

    pub fn contains(&self, v: Vec<(usize, Rational)>) -> bool {
        self.reduce(v).is_empty()
    }
}

/// `a - f * b` for sparse sorted vectors.
fn axpy(a: &[(usize, Rational)], b: &[(usize, Rational)], f: &Rational) -> Vec<(usize, Rational)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|x| x.0);
        let cb = b.get(j).map(|x| x.0);
        match (ca, cb) {
            (Some(x), Some(y)) if x == y => {
                let v = &a[i].1 - f * &b[j].1;
                if !v.is_zero() {
                    out.push((x, v));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push(a[i].clone());
                i += 1;
            }
            (Some(_), None) => {
                out.push(a[i].clone());
                i += 1;
            }
            _ => {
                out.push((b[j].0, -(f * &b[j].1)));
                j += 1;
            }
        }
    }
    out
}
