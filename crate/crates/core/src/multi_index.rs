//! Exponent vectors and the degree-first monomial order shared by every module.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::scalar::binomial;

/// Exponent vector in N^d with its degree cached.
///
/// Ordering compares `(|β|, β_1, …, β_d)` lexicographically: degree first,
/// then exponents left to right. This is the single enumeration order used
/// for jet-matrix labels, diagram bases and series supports.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    exps: Vec<u32>,
    degree: u32,
}

impl MultiIndex {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        MultiIndex { exps, degree }
    }

    pub fn zero(arity: usize) -> Self {
        MultiIndex {
            exps: vec![0; arity],
            degree: 0,
        }
    }

    /// The unit vector e_i.
    pub fn unit(arity: usize, i: usize) -> Self {
        let mut exps = vec![0; arity];
        exps[i] = 1;
        MultiIndex { exps, degree: 1 }
    }

    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_zero(&self) -> bool {
        self.degree == 0
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.arity(), other.arity());
        MultiIndex {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    /// `self - other`, or `None` unless `other <= self` componentwise.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        debug_assert_eq!(self.arity(), other.arity());
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(MultiIndex {
            exps,
            degree: self.degree - other.degree,
        })
    }

    /// Componentwise `self <= other`.
    pub fn divides(&self, other: &MultiIndex) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// Index of the last nonzero entry together with the index with it decremented.
    /// Every nonzero multi-index has exactly one such predecessor, which lets
    /// products φ^β be built from φ^{β - e_i} by a single multiplication.
    pub fn predecessor(&self) -> Option<(usize, MultiIndex)> {
        let i = self.exps.iter().rposition(|&e| e > 0)?;
        let mut exps = self.exps.clone();
        exps[i] -= 1;
        Some((
            i,
            MultiIndex {
                exps,
                degree: self.degree - 1,
            },
        ))
    }

    /// All indices γ with γ <= self componentwise.
    pub fn sub_indices(&self) -> Vec<MultiIndex> {
        let mut out = vec![Vec::with_capacity(self.arity())];
        for &e in &self.exps {
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for prefix in &out {
                for v in 0..=e {
                    let mut p = prefix.clone();
                    p.push(v);
                    next.push(p);
                }
            }
            out = next;
        }
        out.into_iter().map(MultiIndex::new).collect()
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.exps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// All multi-indices of a given arity with degree at most `max_degree`, in
/// monomial order, with reverse lookup.
///
/// Because the order is degree-first, the basis of degree `<= k` is a prefix
/// of the basis of degree `<= l` for `k <= l`.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    arity: usize,
    max_degree: u32,
    indices: Vec<MultiIndex>,
    position: HashMap<MultiIndex, usize>,
}

impl MonomialBasis {
    pub fn new(arity: usize, max_degree: u32) -> Self {
        let mut indices = Vec::with_capacity(binomial(arity + max_degree as usize, arity));
        for d in 0..=max_degree {
            indices.extend(of_degree(arity, d));
        }
        let position = indices
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        MonomialBasis {
            arity,
            max_degree,
            indices,
            position,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    pub fn get(&self, i: usize) -> &MultiIndex {
        &self.indices[i]
    }

    pub fn position(&self, m: &MultiIndex) -> Option<usize> {
        self.position.get(m).copied()
    }

    /// Number of indices of degree `<= k` (a prefix length).
    pub fn prefix_len(&self, k: u32) -> usize {
        binomial(self.arity + k.min(self.max_degree) as usize, self.arity)
    }
}

/// Multi-indices of exactly degree `d`, in monomial order.
pub fn of_degree(arity: usize, d: u32) -> Vec<MultiIndex> {
    fn rec(arity: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if prefix.len() + 1 == arity {
            prefix.push(left);
            out.push(MultiIndex::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            rec(arity, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if arity == 0 {
        if d == 0 {
            out.push(MultiIndex::new(Vec::new()));
        }
        return out;
    }
    rec(arity, d, &mut Vec::with_capacity(arity), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn order_is_degree_then_lex() {
        assert!(mi(&[0, 1]) < mi(&[1, 0]));
        assert!(mi(&[0, 1]) < mi(&[2, 0]));
        assert_eq!(mi(&[2, 3]).cmp(&mi(&[2, 3])), Ordering::Equal);
    }

    #[test]
    fn basis_is_sorted_prefix_closed() {
        let b = MonomialBasis::new(2, 3);
        assert_eq!(b.len(), 10);
        assert!(b.indices().windows(2).all(|w| w[0] < w[1]));
        assert_eq!(b.prefix_len(1), 3);
        assert_eq!(
            b.indices()[..6].to_vec(),
            MonomialBasis::new(2, 2).indices().to_vec()
        );
        assert_eq!(b.position(&mi(&[1, 1])), Some(4));
    }

    #[test]
    fn predecessor_and_sub_indices() {
        let (i, p) = mi(&[2, 1, 0]).predecessor().unwrap();
        assert_eq!(i, 1);
        assert_eq!(p, mi(&[2, 0, 0]));
        assert!(mi(&[0, 0]).predecessor().is_none());
        assert_eq!(mi(&[1, 2]).sub_indices().len(), 6);
    }
}
