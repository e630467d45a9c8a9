//! Jet matrices of a polynomial map at a point or along a fibred tuple.
//!
//! Columns are indexed by `β` with `|β| <= l` (monomials `(y - b)^β` of the
//! target), rows by `(i, α)` with `|α| <= l` (Taylor coefficients at the
//! i-th point of the tuple). The entry is `D^α (φ - b)^β (a^i)`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::multi_index::{MonomialBasis, MultiIndex};
use crate::poly::PolyMap;
use crate::scalar::{format_point, Scalar};
use crate::series::{taylor, TruncatedSeries};
use crate::subspace::{project_span_prefix, Subspace};

/// A named polynomial map `K^m -> K^n`.
#[derive(Clone, Debug)]
pub struct PolyMapInstance {
    pub name: String,
    pub map: PolyMap,
}

impl PolyMapInstance {
    pub fn new(name: impl Into<String>, map: PolyMap) -> Self {
        PolyMapInstance {
            name: name.into(),
            map,
        }
    }

    pub fn m(&self) -> usize {
        self.map.source_arity()
    }

    pub fn n(&self) -> usize {
        self.map.target_arity()
    }
}

/// Points `a^1..a^s` of the source with one common image `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibredTuple {
    points: Vec<Vec<Scalar>>,
    image: Vec<Scalar>,
}

impl FibredTuple {
    /// Checks `φ(a^1) = ⋯ = φ(a^s)` exactly.
    pub fn new(map: &PolyMap, points: Vec<Vec<Scalar>>) -> Result<Self> {
        let first = points
            .first()
            .ok_or_else(|| Error::input("a fibred tuple needs at least one point"))?;
        let image = map.eval(first)?;
        for p in &points[1..] {
            let other = map.eval(p)?;
            if other != image {
                return Err(Error::input(format!(
                    "points ({}) and ({}) have different images ({}) and ({})",
                    format_point(first),
                    format_point(p),
                    format_point(&image),
                    format_point(&other)
                )));
            }
        }
        Ok(FibredTuple { points, image })
    }

    pub fn single(map: &PolyMap, point: Vec<Scalar>) -> Result<Self> {
        FibredTuple::new(map, vec![point])
    }

    pub fn points(&self) -> &[Vec<Scalar>] {
        &self.points
    }

    pub fn image(&self) -> &[Scalar] {
        &self.image
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `a1;a2;…` with coordinates joined by commas.
    pub fn label(&self) -> String {
        self.points
            .iter()
            .map(|p| format_point(p))
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// The stacked matrix `J^l φ(ā)` with its row and column labelings.
#[derive(Clone, Debug)]
pub struct JetMatrix {
    l: u32,
    s: usize,
    source_labels: MonomialBasis,
    target_labels: MonomialBasis,
    entries: Matrix,
}

impl JetMatrix {
    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn points(&self) -> usize {
        self.s
    }

    /// Column labels `β`, `|β| <= l`.
    pub fn source_labels(&self) -> &MonomialBasis {
        &self.source_labels
    }

    /// Row labels `α`, `|α| <= l`, repeated once per point.
    pub fn target_labels(&self) -> &MonomialBasis {
        &self.target_labels
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    /// Number of columns with `|β| <= k`.
    pub fn prefix(&self, k: u32) -> usize {
        self.source_labels.prefix_len(k)
    }
}

/// Jet columns computed once at a maximal order; every `J^l` with `l` up to
/// that order is a submatrix. Column `β` is the truncated series of
/// `(φ - b)^β` at each point, built from its predecessor `β - e_i` by one
/// truncated multiplication.
#[derive(Clone, Debug)]
pub struct JetTower {
    max_l: u32,
    m: usize,
    n: usize,
    s: usize,
    /// `columns[i][j]` = series of the j-th column at point i.
    columns: Vec<Vec<TruncatedSeries>>,
    source: MonomialBasis,
    target: MonomialBasis,
}

impl JetTower {
    pub fn new(map: &PolyMap, tuple: &FibredTuple, max_l: u32) -> Result<Self> {
        let m = map.source_arity();
        let n = map.target_arity();
        if tuple.image().len() != n {
            return Err(Error::input("tuple image arity differs from map target"));
        }
        if let Some(p) = tuple.points().iter().find(|p| p.len() != m) {
            return Err(Error::input(format!(
                "point ({}) does not have the source arity {m}",
                format_point(p)
            )));
        }
        let source = MonomialBasis::new(n, max_l);
        let target = MonomialBasis::new(m, max_l);
        let centered = map.recentered(tuple.image())?;
        let columns = tuple
            .points()
            .par_iter()
            .map(|a| point_columns(&centered, a, &source, max_l))
            .collect::<Result<Vec<_>>>()?;
        Ok(JetTower {
            max_l,
            m,
            n,
            s: tuple.len(),
            columns,
            source,
            target,
        })
    }

    pub fn max_l(&self) -> u32 {
        self.max_l
    }

    pub fn source_arity(&self) -> usize {
        self.m
    }

    pub fn target_arity(&self) -> usize {
        self.n
    }

    pub fn jet(&self, l: u32) -> Result<JetMatrix> {
        if l > self.max_l {
            return Err(Error::input(format!(
                "order {l} exceeds the tower's maximum {}",
                self.max_l
            )));
        }
        let source_labels = MonomialBasis::new(self.n, l);
        let target_labels = MonomialBasis::new(self.m, l);
        let q = source_labels.len();
        let p = target_labels.len();
        let mut entries = Matrix::zeros(self.s * p, q);
        for (i, cols) in self.columns.iter().enumerate() {
            for (j, col) in cols[..q].iter().enumerate() {
                for (alpha, c) in col.terms() {
                    if alpha.degree() > l {
                        continue;
                    }
                    let row = i * p + target_labels.position(alpha).expect("alpha within basis");
                    entries.set(row, j, c.clone());
                }
            }
        }
        let row_labels = (0..self.s).flat_map(|_| target_labels.indices().iter().cloned()).collect();
        let entries = entries.with_labels(Some(row_labels), Some(source_labels.indices().to_vec()))?;
        Ok(JetMatrix {
            l,
            s: self.s,
            source_labels,
            target_labels,
            entries,
        })
    }

    /// Series of `(φ - b)^β` at point `i`, truncated at the tower order.
    pub fn column_series(&self, point: usize, beta: &MultiIndex) -> Option<&TruncatedSeries> {
        self.source.position(beta).map(|j| &self.columns[point][j])
    }

    pub fn source_basis(&self) -> &MonomialBasis {
        &self.source
    }

    pub fn target_basis(&self) -> &MonomialBasis {
        &self.target
    }
}

fn point_columns(
    centered: &PolyMap,
    a: &[Scalar],
    source: &MonomialBasis,
    max_l: u32,
) -> Result<Vec<TruncatedSeries>> {
    let comps: Vec<TruncatedSeries> = centered
        .components()
        .iter()
        .map(|c| taylor(c, a, max_l))
        .collect::<Result<_>>()?;
    let mut cols: Vec<TruncatedSeries> = Vec::with_capacity(source.len());
    for beta in source.indices() {
        let col = match beta.predecessor() {
            None => TruncatedSeries::from_poly(&crate::poly::Poly::one(centered.source_arity()), max_l),
            Some((i, pred)) => {
                let j = source.position(&pred).expect("predecessor precedes in order");
                cols[j].mul(&comps[i])?
            }
        };
        cols.push(col);
    }
    Ok(cols)
}

pub fn jet_matrix(phi: &PolyMapInstance, tuple: &FibredTuple, l: u32) -> Result<JetMatrix> {
    JetTower::new(&phi.map, tuple, l)?.jet(l)
}

/// `(S, T)`: the columns with `|β| <= k` and those with `k < |β| <= l`.
pub fn jet_blocks(j: &JetMatrix, k: u32) -> Result<(Matrix, Matrix)> {
    if k > j.l {
        return Err(Error::input(format!("k = {k} exceeds l = {}", j.l)));
    }
    let qk = j.prefix(k);
    let q = j.entries.cols();
    let s = j.entries.select_columns(&(0..qk).collect::<Vec<_>>());
    let t = j.entries.select_columns(&(qk..q).collect::<Vec<_>>());
    Ok((s, t))
}

/// `E^l(ā) = Ker J^l φ(ā)`.
pub fn e_l(j: &JetMatrix) -> Subspace {
    j.entries.rank_kernel().1
}

/// `E^{lk}(ā)`: image of `E^l` under the projection to jets of order `k`.
pub fn e_lk(j: &JetMatrix, k: u32) -> Result<Subspace> {
    if k > j.l {
        return Err(Error::input(format!("k = {k} exceeds l = {}", j.l)));
    }
    let (_, kernel) = j.entries.kernel_vectors();
    Ok(project_span_prefix(&kernel, j.prefix(k)))
}

/// `d^{lk}(ā) = dim J^k(b) / E^{lk}(ā)`.
pub fn d_lk(j: &JetMatrix, k: u32) -> Result<usize> {
    Ok(j.prefix(k) - e_lk(j, k)?.dim())
}

/// All `E^{lk}` for `k <= l` from one kernel computation.
pub fn e_lk_all(j: &JetMatrix, ks: impl IntoIterator<Item = u32>) -> Result<Vec<(u32, Subspace)>> {
    let (_, kernel) = j.entries.kernel_vectors();
    ks.into_iter()
        .map(|k| {
            if k > j.l {
                return Err(Error::input(format!("k = {k} exceeds l = {}", j.l)));
            }
            Ok((k, project_span_prefix(&kernel, j.prefix(k))))
        })
        .collect()
}
