//! The operator `ad^r B` and the composites `Θ = ad^r T · S`.
//!
//! For `B: E -> F` (an `f × e` matrix) and `r >= 0`, `ad^r B` sends `ω ∈ F` to
//! the map `η_1 ∧ ⋯ ∧ η_r ↦ ω ∧ Bη_1 ∧ ⋯ ∧ Bη_r`. In the lexicographic
//! subset bases of `Λ^r E` and `Λ^{r+1} F` it is a matrix with
//! `C(e, r) · C(f, r+1)` rows and `f` columns. The row for `(I, J)` and the
//! column for `e_c` hold the coefficient of `e_J` in `e_c ∧ B e_{i_1} ∧ ⋯`,
//! which is `±det B[J \ {c}, I]` when `c ∈ J` and zero otherwise.
//!
//! When `r = rk B` the kernel of `ad^r B` is the image of `B`.

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::{det_rows, echelon, Matrix};
use crate::scalar::{binomial_u128, Scalar};
use crate::subspace::Subspace;

/// Default cap on the number of entries of a full `ad^r` matrix.
pub const DEFAULT_WEDGE_CAP: u128 = 1_000_000;

/// Strictly increasing `r`-subsets of `0..f` in lexicographic order.
#[derive(Clone, Debug)]
pub struct WedgeBasis {
    f: usize,
    r: usize,
    subsets: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl WedgeBasis {
    pub fn new(f: usize, r: usize) -> Self {
        let mut subsets = Vec::new();
        let mut cur = Vec::with_capacity(r);
        fn rec(start: usize, f: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == r {
                out.push(cur.clone());
                return;
            }
            for i in start..f {
                if f - i < r - cur.len() {
                    break;
                }
                cur.push(i);
                rec(i + 1, f, r, cur, out);
                cur.pop();
            }
        }
        rec(0, f, r, &mut cur, &mut subsets);
        let index = subsets.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        WedgeBasis { f, r, subsets, index }
    }

    pub fn ambient_dim(&self) -> usize {
        self.f
    }

    pub fn degree(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    pub fn position(&self, subset: &[usize]) -> Option<usize> {
        self.index.get(subset).copied()
    }
}

/// Number of entries of `ad^r B` for an `f × e` matrix `B`.
pub fn ad_r_size(f: usize, e: usize, r: usize) -> u128 {
    binomial_u128(e as u128, r as u128)
        .saturating_mul(binomial_u128(f as u128, r as u128 + 1))
        .saturating_mul(f as u128)
}

fn minor(b: &Matrix, rows: &[usize], cols: &[usize]) -> Scalar {
    let m: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|&i| cols.iter().map(|&j| b.get(i, j).clone()).collect())
        .collect();
    det_rows(&m)
}

/// The matrix of `ad^r B`, refusing when it would exceed `cap` entries.
pub fn ad_r(b: &Matrix, r: usize, cap: u128) -> Result<Matrix> {
    let (f, e) = (b.rows(), b.cols());
    let needed = ad_r_size(f, e, r);
    if needed > cap {
        return Err(Error::WedgeCap { needed, cap });
    }
    let dom = WedgeBasis::new(e, r);
    let cod = WedgeBasis::new(f, r + 1);
    let rowsf = WedgeBasis::new(f, r);
    let mut out = Matrix::zeros(dom.len() * cod.len(), f);
    for (ii, cols) in dom.subsets().iter().enumerate() {
        // minors B[K, I] for every r-subset K of rows, computed once per I
        let minors: Vec<Scalar> = rowsf.subsets().iter().map(|k| minor(b, k, cols)).collect();
        for (jj, j) in cod.subsets().iter().enumerate() {
            let row = ii * cod.len() + jj;
            for (pos, &c) in j.iter().enumerate() {
                let rest: Vec<usize> = j.iter().copied().filter(|&x| x != c).collect();
                let mnr = &minors[rowsf.position(&rest).expect("subset present")];
                if mnr.is_zero() {
                    continue;
                }
                let v = if pos % 2 == 0 { mnr.clone() } else { -mnr.clone() };
                out.set(row, c, v);
            }
        }
    }
    Ok(out)
}

/// Checks `Im B = Ker ad^{rk B} B` exactly.
pub fn image_as_kernel_check(b: &Matrix) -> Result<bool> {
    let r = b.rank();
    let image = Subspace::from_vectors(b.rows(), b.transpose().row_data());
    let ad = ad_r(b, r, DEFAULT_WEDGE_CAP)?;
    let (_, kernel) = ad.rank_kernel();
    Ok(image == kernel)
}

/// `Θ = ad^r T · S` with the full wedge operator.
pub fn theta_lk(s: &Matrix, t: &Matrix, r: usize, cap: u128) -> Result<Matrix> {
    if s.rows() != t.rows() {
        return Err(Error::dim(format!(
            "S has {} rows but T has {}",
            s.rows(),
            t.rows()
        )));
    }
    let needed = ad_r_size(t.rows(), t.cols(), r).saturating_add(
        binomial_u128(t.cols() as u128, r as u128)
            .saturating_mul(binomial_u128(t.rows() as u128, r as u128 + 1))
            .saturating_mul(s.cols() as u128),
    );
    if needed > cap {
        return Err(Error::WedgeCap { needed, cap });
    }
    ad_r(t, r, cap)?.mul(s)
}

/// Rows of `ad^{rk T} T · S` indexed by the bordered minors of one maximal
/// nonzero minor of `T`.
///
/// Let `T[I0, C0]` be a nonsingular `r × r` submatrix with `r = rk T`. The rows
/// `(C0, I0 ∪ {j})`, `j ∉ I0`, of the full operator already cut out `Im T`:
/// `ω ∈ Im T` iff every bordered minor `det[ω | T_{C0}]` on rows `I0 ∪ {j}`
/// vanishes. So this `(f - r)`-row matrix has the same kernel and rank as the
/// full `Θ`, and its rows are literally rows of it. Entries come from Cramer's
/// rule: the bordered minor equals `(-1)^{pos(j)} · det T[I0,C0] · (ω_j - y·ω_{I0})`
/// with `y = T[j, C0] · T[I0, C0]^{-1}`.
pub fn theta_lk_bordered(s: &Matrix, t: &Matrix) -> Result<Matrix> {
    if s.rows() != t.rows() {
        return Err(Error::dim(format!(
            "S has {} rows but T has {}",
            s.rows(),
            t.rows()
        )));
    }
    let f = t.rows();
    let (rows_i0, cols_c0) = maximal_minor(t);
    let r = cols_c0.len();
    let block: Vec<Vec<Scalar>> = rows_i0
        .iter()
        .map(|&i| cols_c0.iter().map(|&j| t.get(i, j).clone()).collect())
        .collect();
    let d = det_rows(&block);
    let inv = inverse(&block)?;
    let in_i0: Vec<bool> = (0..f).map(|i| rows_i0.contains(&i)).collect();
    let mut functionals = Vec::with_capacity(f - r);
    for j in (0..f).filter(|&j| !in_i0[j]) {
        let tj: Vec<Scalar> = cols_c0.iter().map(|&c| t.get(j, c).clone()).collect();
        // y = tj · inv
        let y: Vec<Scalar> = (0..r)
            .map(|col| {
                tj.iter()
                    .zip(&inv)
                    .filter(|(a, row)| !a.is_zero() && !row[col].is_zero())
                    .fold(Scalar::zero(), |acc, (a, row)| acc + a * &row[col])
            })
            .collect();
        let pos = rows_i0.iter().filter(|&&i| i < j).count();
        let sd = if pos % 2 == 0 { d.clone() } else { -d.clone() };
        let mut w = vec![Scalar::zero(); f];
        w[j] = sd.clone();
        for (yi, &i) in y.iter().zip(&rows_i0) {
            if !yi.is_zero() {
                w[i] = -(&sd * yi);
            }
        }
        functionals.push(w);
    }
    Matrix::from_rows(functionals)
        .map(|m| if m.rows() == 0 { Matrix::zeros(0, f) } else { m })?
        .mul(s)
}

/// Row set `I0` and column set `C0` (both sorted) of a nonsingular
/// `rk T × rk T` submatrix.
pub fn maximal_minor(t: &Matrix) -> (Vec<usize>, Vec<usize>) {
    let (_, cols) = echelon(t.row_data(), t.cols());
    let sub = t.select_columns(&cols).transpose();
    let (_, rows) = echelon(sub.row_data(), sub.cols());
    (rows, cols)
}

fn inverse(a: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
    let n = a.len();
    let aug: Vec<Vec<Scalar>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Scalar::from_integer(1.into()) } else { Scalar::zero() }));
            r
        })
        .collect();
    let (red, piv) = crate::matrix::rref(&aug, 2 * n);
    if piv.len() < n || piv[..n] != (0..n).collect::<Vec<_>>()[..] {
        return Err(Error::Certified("selected minor is singular".into()));
    }
    Ok(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Which construction produced a `Θ` matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaForm {
    Full,
    Bordered,
}

/// `Θ^{lk}` with `r = rk T`: the full operator when it fits under `cap`,
/// the bordered-minor rows otherwise.
pub fn theta_auto(s: &Matrix, t: &Matrix, cap: u128) -> Result<(Matrix, ThetaForm)> {
    let r = t.rank();
    match theta_lk(s, t, r, cap) {
        Ok(m) => Ok((m, ThetaForm::Full)),
        Err(Error::WedgeCap { .. }) => Ok((theta_lk_bordered(s, t)?, ThetaForm::Bordered)),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn wedge_basis_order() {
        let w = WedgeBasis::new(4, 2);
        assert_eq!(w.len(), 6);
        assert_eq!(w.subsets()[0], vec![0, 1]);
        assert_eq!(w.subsets()[5], vec![2, 3]);
        assert_eq!(w.position(&[1, 3]), Some(4));
        assert_eq!(WedgeBasis::new(2, 3).len(), 0);
        assert_eq!(WedgeBasis::new(3, 0).len(), 1);
    }

    #[test]
    fn ad_zero_is_identity() {
        let b = Matrix::zeros(2, 2);
        assert_eq!(ad_r(&b, 0, DEFAULT_WEDGE_CAP).unwrap().row_data(), Matrix::identity(2).row_data());
    }

    #[test]
    fn ad_one_of_rank_one_projection() {
        let b = Matrix::from_i64(&[&[1, 0], &[0, 0]]);
        let ad = ad_r(&b, 1, DEFAULT_WEDGE_CAP).unwrap();
        let (_, k) = ad.rank_kernel();
        assert_eq!(k, Subspace::from_vectors(2, &[vec![int(1), int(0)]]));
        assert!(image_as_kernel_check(&b).unwrap());
        assert!(image_as_kernel_check(&Matrix::zeros(2, 2)).unwrap());
    }

    #[test]
    fn ad_above_rank_vanishes() {
        let b = Matrix::identity(2);
        let ad = ad_r(&b, 2, DEFAULT_WEDGE_CAP).unwrap();
        assert_eq!(ad.rows(), 0);
        let c = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert!(ad_r(&c, 3, DEFAULT_WEDGE_CAP).unwrap().is_zero());
        assert!(ad_r(&c, c.rank(), DEFAULT_WEDGE_CAP).unwrap().mul(&c).unwrap().is_zero());
    }

    #[test]
    fn cap_is_enforced() {
        let b = Matrix::zeros(30, 30);
        assert!(matches!(ad_r(&b, 10, DEFAULT_WEDGE_CAP), Err(Error::WedgeCap { .. })));
    }

    #[test]
    fn theta_with_zero_t_is_s() {
        let s = Matrix::from_i64(&[&[1, 2], &[3, 4], &[5, 6]]);
        let t = Matrix::zeros(3, 2);
        assert_eq!(theta_lk(&s, &t, 0, DEFAULT_WEDGE_CAP).unwrap().row_data(), s.row_data());
        assert!(theta_lk(&s, &Matrix::zeros(2, 2), 0, DEFAULT_WEDGE_CAP).is_err());
    }

    #[test]
    fn theta_with_surjective_t_vanishes() {
        let s = Matrix::identity(2);
        let t = Matrix::from_i64(&[&[1, 1, 0], &[0, 1, 1]]);
        let th = theta_lk(&s, &t, 2, DEFAULT_WEDGE_CAP).unwrap();
        assert!(th.is_zero());
        assert_eq!(th.rank_kernel().1, Subspace::full(2));
    }

    #[test]
    fn bordered_rows_are_rows_of_full_theta() {
        let t = Matrix::from_i64(&[&[1, 2, 0], &[2, 4, 0], &[0, 1, 1], &[1, 0, -2]]);
        let s = Matrix::from_i64(&[&[1, 0], &[0, 1], &[3, 1], &[2, 2]]);
        let r = t.rank();
        let full = theta_lk(&s, &t, r, DEFAULT_WEDGE_CAP).unwrap();
        let bordered = theta_lk_bordered(&s, &t).unwrap();
        assert_eq!(bordered.rows(), 4 - r);
        for row in bordered.row_data() {
            assert!(full.row_data().contains(row), "row {row:?} not in full theta");
        }
        assert_eq!(full.rank_kernel().1, bordered.rank_kernel().1);
    }
}
