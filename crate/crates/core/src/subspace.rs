//! Subspaces of K^d in canonical reduced echelon form.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::{rref, Matrix};
use crate::scalar::Scalar;

/// A linear subspace of `K^ambient_dim`, stored as the nonzero rows of its
/// reduced row echelon form. The form is canonical, so two subspaces are
/// equal exactly when their stored bases are equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis: Vec<Vec<Scalar>> = Matrix::identity(ambient_dim).row_data().to_vec();
        Subspace {
            ambient_dim,
            basis,
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn from_vectors(ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Self {
        debug_assert!(vectors.iter().all(|v| v.len() == ambient_dim));
        let (basis, pivots) = rref(vectors, ambient_dim);
        Subspace {
            ambient_dim,
            basis,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    /// Leading coordinate of each basis vector, strictly increasing.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::dim(format!(
                "ambient dimensions {} and {} differ",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }

    /// Reduces `v` against the basis; zero result means membership.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut w = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (x, r) in w.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        w
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::dim("vector length differs from ambient dimension"));
        }
        Ok(self.reduce(v).iter().all(Zero::is_zero))
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check(other)?;
        Ok(other
            .basis
            .iter()
            .all(|v| self.reduce(v).iter().all(Zero::is_zero)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Ok(Subspace::from_vectors(self.ambient_dim, &vs))
    }

    /// Intersection via the kernel of `[U | -W]`.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        let (a, b) = (self.dim(), other.dim());
        let mut cols: Vec<Vec<Scalar>> = self.basis.clone();
        cols.extend(other.basis.iter().map(|v| v.iter().map(|x| -x.clone()).collect()));
        let m = Matrix::from_columns(self.ambient_dim, &cols)?;
        let (_, kernel) = m.kernel_vectors();
        let vectors: Vec<Vec<Scalar>> = kernel
            .iter()
            .map(|coef| {
                let mut v = vec![Scalar::zero(); self.ambient_dim];
                for (c, u) in coef[..a].iter().zip(&self.basis) {
                    if c.is_zero() {
                        continue;
                    }
                    for (x, y) in v.iter_mut().zip(u) {
                        *x += c * y;
                    }
                }
                v
            })
            .collect();
        debug_assert!(kernel.iter().all(|c| c.len() == a + b));
        Ok(Subspace::from_vectors(self.ambient_dim, &vectors))
    }

    /// Image under the coordinate projection keeping `coords` (in that order).
    pub fn project(&self, coords: &[usize]) -> Result<Subspace> {
        if let Some(&bad) = coords.iter().find(|&&c| c >= self.ambient_dim) {
            return Err(Error::dim(format!("coordinate {bad} out of range")));
        }
        let vs: Vec<Vec<Scalar>> = self
            .basis
            .iter()
            .map(|v| coords.iter().map(|&c| v[c].clone()).collect())
            .collect();
        Ok(Subspace::from_vectors(coords.len(), &vs))
    }

    /// Projection onto the first `k` coordinates.
    pub fn project_prefix(&self, k: usize) -> Result<Subspace> {
        self.project(&(0..k).collect::<Vec<_>>())
    }
}

/// Projection of `span(vectors)` onto the first `k` coordinates, without
/// canonicalizing the (possibly large) span first.
pub fn project_span_prefix(vectors: &[Vec<Scalar>], k: usize) -> Subspace {
    let vs: Vec<Vec<Scalar>> = vectors.iter().map(|v| v[..k].to_vec()).collect();
    Subspace::from_vectors(k, &vs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn projection_intersection_sum() {
        let s = Subspace::from_vectors(3, &[v(&[0, 0, 1])]);
        assert!(s.project(&[0, 1]).unwrap().is_zero());
        let t = Subspace::from_vectors(3, &[v(&[1, 2, 3]), v(&[0, 1, 1])]);
        assert_eq!(t.intersection(&t).unwrap(), t);
        let e1 = Subspace::from_vectors(2, &[v(&[1, 0])]);
        let e2 = Subspace::from_vectors(2, &[v(&[0, 1])]);
        assert_eq!(e1.sum(&e2).unwrap(), Subspace::full(2));
        assert!(e1.intersection(&e2).unwrap().is_zero());
        assert!(e1.sum(&Subspace::zero(3)).is_err());
    }

    #[test]
    fn intersection_of_planes() {
        let p = Subspace::from_vectors(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let q = Subspace::from_vectors(3, &[v(&[1, 1, 0]), v(&[0, 0, 1])]);
        let i = p.intersection(&q).unwrap();
        assert_eq!(i, Subspace::from_vectors(3, &[v(&[2, 2, 0])]));
        assert!(p.contains(&i).unwrap() && q.contains(&i).unwrap());
    }

    #[test]
    fn canonical_form_ignores_basis_choice() {
        let a = Subspace::from_vectors(3, &[v(&[1, 1, 0]), v(&[1, -1, 2])]);
        let b = Subspace::from_vectors(3, &[v(&[2, 0, 2]), v(&[0, 2, -2]), v(&[3, 1, 2])]);
        assert_eq!(a, b);
    }
}
