//! Power series truncated at a fixed degree.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::multi_index::{MonomialBasis, MultiIndex};
use crate::poly::Poly;
use crate::scalar::Scalar;

/// A formal power series known up to and including degree `degree`.
/// Every stored term has degree `<= degree`; zero coefficients are not stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    arity: usize,
    degree: u32,
    terms: BTreeMap<MultiIndex, Scalar>,
}

impl TruncatedSeries {
    pub fn zero(arity: usize, degree: u32) -> Self {
        TruncatedSeries {
            arity,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_poly(p: &Poly, degree: u32) -> Self {
        TruncatedSeries {
            arity: p.arity(),
            degree,
            terms: p
                .terms()
                .iter()
                .filter(|(m, _)| m.degree() <= degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficients in `basis` order; entries beyond the truncation are ignored.
    pub fn from_coords(basis: &MonomialBasis, coords: &[Scalar], degree: u32) -> Self {
        let terms = basis
            .indices()
            .iter()
            .zip(coords)
            .filter(|(m, c)| m.degree() <= degree && !c.is_zero())
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        TruncatedSeries {
            arity: basis.arity(),
            degree,
            terms,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, Scalar> {
        &self.terms
    }

    pub fn coeff(&self, m: &MultiIndex) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Minimum of the support in monomial order; `None` for zero.
    pub fn initial_exponent(&self) -> Option<&MultiIndex> {
        self.terms.keys().next()
    }

    /// Order of vanishing; `None` for zero (order at least `degree + 1`).
    pub fn order(&self) -> Option<u32> {
        self.initial_exponent().map(MultiIndex::degree)
    }

    pub fn truncate(&self, degree: u32) -> Self {
        TruncatedSeries {
            arity: self.arity,
            degree: degree.min(self.degree),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_terms(self.arity, self.terms.clone())
    }

    /// Dense coefficient vector in `basis` order.
    pub fn to_coords(&self, basis: &MonomialBasis) -> Result<Vec<Scalar>> {
        let mut v = vec![Scalar::zero(); basis.len()];
        for (m, c) in &self.terms {
            let i = basis
                .position(m)
                .ok_or_else(|| Error::dim(format!("term {m} outside the coordinate basis")))?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::input("series arity mismatch"));
        }
        if self.degree != other.degree {
            return Err(Error::input(format!(
                "truncation mismatch: {} vs {}",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return TruncatedSeries::zero(self.arity, self.degree);
        }
        TruncatedSeries {
            arity: self.arity,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Truncated product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = TruncatedSeries::zero(self.arity, self.degree);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if m1.degree() + m2.degree() > self.degree {
                    // `other` is sorted degree-first, nothing further fits
                    break;
                }
                out.add_term(m1.add(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub(crate) fn add_term(&mut self, m: MultiIndex, c: Scalar) {
        if c.is_zero() || m.degree() > self.degree {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

/// Taylor expansion of `p` at `a`, truncated at degree `d`: the coefficient of
/// `(x - a)^α` is `D^α p (a)`.
pub fn taylor(p: &Poly, a: &[Scalar], d: u32) -> Result<TruncatedSeries> {
    Ok(TruncatedSeries::from_poly(&p.shift(a)?, d))
}
