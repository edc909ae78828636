//! Monomial orderings.
//!
//! Global orderings rank every variable above `1`; local orderings rank `1`
//! above every variable, so units of the local ring have leading monomial `1`.
//! Block orderings compare consecutive variable blocks lexicographically,
//! which is what elimination needs.

use std::cmp::Ordering;

use serde::Serialize;

use super::monomial::ExpVec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MonomialOrder {
    /// Degree reverse lexicographic (`dp`).
    GlobalDegRevLex,
    /// Negative degree reverse lexicographic (`ds`), the default local order.
    LocalAntiGradedRevLex,
    /// Weighted degree first, reverse lexicographic tie-break.
    Weighted { weights: Vec<u32>, local: bool },
    /// Consecutive blocks `(size, order)`, compared block by block.
    Block { blocks: Vec<(usize, MonomialOrder)> },
}

fn revlex(a: &[u16], b: &[u16]) -> Ordering {
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            // smaller exponent in the last differing variable wins
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

fn deg(a: &[u16]) -> u64 {
    a.iter().map(|&e| e as u64).sum()
}

fn wdeg(a: &[u16], w: &[u32]) -> u64 {
    a.iter().zip(w).map(|(&e, &w)| e as u64 * w as u64).sum()
}

impl MonomialOrder {
    /// Elimination order: the first `k` variables form a global block that
    /// dominates the remaining `rest` variables.
    pub fn elimination(k: usize, rest: usize) -> Self {
        MonomialOrder::Block {
            blocks: vec![
                (k, MonomialOrder::GlobalDegRevLex),
                (rest, MonomialOrder::GlobalDegRevLex),
            ],
        }
    }

    pub fn compare(&self, a: &ExpVec, b: &ExpVec) -> Ordering {
        self.compare_slices(a.as_slice(), b.as_slice())
    }

    pub fn compare_slices(&self, a: &[u16], b: &[u16]) -> Ordering {
        match self {
            MonomialOrder::GlobalDegRevLex => deg(a).cmp(&deg(b)).then_with(|| revlex(a, b)),
            MonomialOrder::LocalAntiGradedRevLex => {
                deg(b).cmp(&deg(a)).then_with(|| revlex(a, b))
            }
            MonomialOrder::Weighted { weights, local } => {
                let (da, db) = (wdeg(a, weights), wdeg(b, weights));
                let by_degree = if *local { db.cmp(&da) } else { da.cmp(&db) };
                by_degree.then_with(|| revlex(a, b))
            }
            MonomialOrder::Block { blocks } => {
                let mut start = 0;
                for (size, order) in blocks {
                    let end = start + size;
                    let c = order.compare_slices(&a[start..end], &b[start..end]);
                    if c != Ordering::Equal {
                        return c;
                    }
                    start = end;
                }
                Ordering::Equal
            }
        }
    }

    /// Degree function used for the écart in Mora's normal form.
    pub fn sugar_degree(&self, a: &[u16]) -> u64 {
        match self {
            MonomialOrder::Weighted { weights, .. } => wdeg(a, weights),
            MonomialOrder::Block { blocks } => {
                let mut start = 0;
                let mut total = 0;
                for (size, order) in blocks {
                    total += order.sugar_degree(&a[start..start + size]);
                    start += size;
                }
                total
            }
            _ => deg(a),
        }
    }

    pub fn is_global(&self) -> bool {
        match self {
            MonomialOrder::GlobalDegRevLex => true,
            MonomialOrder::LocalAntiGradedRevLex => false,
            MonomialOrder::Weighted { local, .. } => !local,
            MonomialOrder::Block { blocks } => blocks.iter().all(|(_, o)| o.is_global()),
        }
    }

    pub fn is_local(&self) -> bool {
        match self {
            MonomialOrder::GlobalDegRevLex => false,
            MonomialOrder::LocalAntiGradedRevLex => true,
            MonomialOrder::Weighted { local, .. } => *local,
            MonomialOrder::Block { blocks } => blocks.iter().all(|(_, o)| o.is_local()),
        }
    }

    /// Number of variables the ordering expects, if it is fixed by the ordering.
    pub fn arity(&self) -> Option<usize> {
        match self {
            MonomialOrder::Weighted { weights, .. } => Some(weights.len()),
            MonomialOrder::Block { blocks } => Some(blocks.iter().map(|(s, _)| s).sum()),
            _ => None,
        }
    }

    pub fn validate(&self, nvars: usize) -> bool {
        match self {
            MonomialOrder::Weighted { weights, .. } => {
                weights.len() == nvars && weights.iter().all(|&w| w > 0)
            }
            MonomialOrder::Block { blocks } => {
                blocks.iter().map(|(s, _)| s).sum::<usize>() == nvars
                    && blocks.iter().all(|(s, o)| o.validate(*s))
            }
            _ => true,
        }
    }

    pub fn tag(&self) -> String {
        match self {
            MonomialOrder::GlobalDegRevLex => "dp".into(),
            MonomialOrder::LocalAntiGradedRevLex => "ds".into(),
            MonomialOrder::Weighted { weights, local } => {
                let w: Vec<String> = weights.iter().map(|w| w.to_string()).collect();
                format!("{}({})", if *local { "ws" } else { "wp" }, w.join(","))
            }
            MonomialOrder::Block { blocks } => {
                let parts: Vec<String> =
                    blocks.iter().map(|(s, o)| format!("{}:{}", o.tag(), s)).collect();
                format!("block[{}]", parts.join(" "))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: &[u16]) -> ExpVec {
        ExpVec::from_slice(v)
    }

    #[test]
    fn local_order_puts_one_on_top() {
        let ds = MonomialOrder::LocalAntiGradedRevLex;
        assert_eq!(ds.compare(&e(&[0, 0]), &e(&[1, 0])), Ordering::Greater);
        assert_eq!(ds.compare(&e(&[0, 1]), &e(&[3, 0])), Ordering::Greater);
        let dp = MonomialOrder::GlobalDegRevLex;
        assert_eq!(dp.compare(&e(&[0, 0]), &e(&[1, 0])), Ordering::Less);
        assert!(dp.is_global() && ds.is_local());
    }

    #[test]
    fn revlex_tie_break() {
        // x^2 > xy > y^2 in degrevlex with x > y
        let dp = MonomialOrder::GlobalDegRevLex;
        assert_eq!(dp.compare(&e(&[2, 0]), &e(&[1, 1])), Ordering::Greater);
        assert_eq!(dp.compare(&e(&[1, 1]), &e(&[0, 2])), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let o = MonomialOrder::elimination(1, 2);
        // x * anything beats any pure (y, z) monomial
        assert_eq!(o.compare(&e(&[1, 0, 0]), &e(&[0, 9, 9])), Ordering::Greater);
        assert!(o.validate(3));
        assert!(!o.validate(2));
    }
}
