#![allow(dead_code)]

use chevalley::matrix::Matrix;
use chevalley::multi_index::{MonomialBasis, MultiIndex};
use chevalley::poly::{Poly, PolyMap};
use chevalley::scalar::{ratio, Scalar};
use proptest::prelude::*;

pub fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

pub fn nonzero_scalar() -> impl Strategy<Value = Scalar> {
    (1i64..=6, 1i64..=4, any::<bool>()).prop_map(|(n, d, neg)| ratio(if neg { -n } else { n }, d))
}

pub fn point(arity: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(scalar(), arity)
}

/// Sparse polynomial with at most `terms` terms of degree `<= max_degree`.
pub fn poly(arity: usize, max_degree: u32, terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0..=max_degree, arity), scalar()), 0..=terms).prop_map(
        move |ts| {
            let mut p = Poly::zero(arity);
            for (e, c) in ts {
                let m = MultiIndex::new(e);
                if m.degree() <= max_degree {
                    p.add_term(m, c);
                }
            }
            p
        },
    )
}

pub fn poly_map(m: usize, n: usize, max_degree: u32) -> impl Strategy<Value = PolyMap> {
    prop::collection::vec(poly(m, max_degree, 3), n).prop_map(move |cs| PolyMap::new(m, cs).unwrap())
}

pub fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
    (1..=max_rows, 1..=max_cols)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(scalar(), c), r))
        .prop_map(|rows| Matrix::from_rows(rows).unwrap())
}

/// Low-rank matrices come up rarely from independent entries; build some
/// as products `U V` with a small inner dimension.
pub fn low_rank_matrix(max_dim: usize) -> impl Strategy<Value = Matrix> {
    (1..=max_dim, 1..=max_dim, 0..=max_dim)
        .prop_flat_map(|(r, c, k)| {
            (
                prop::collection::vec(prop::collection::vec(scalar(), k.max(1)), r),
                prop::collection::vec(prop::collection::vec(scalar(), c), k.max(1)),
                Just(k),
            )
        })
        .prop_map(|(u, v, k)| {
            if k == 0 {
                Matrix::zeros(u.len(), v[0].len())
            } else {
                Matrix::from_rows(u).unwrap().mul(&Matrix::from_rows(v).unwrap()).unwrap()
            }
        })
}

/// Taylor coefficients of `p` at `a` up to degree `l`, by expanding
/// `p(x + a)` and reading off coefficients.
pub fn taylor_coeffs(p: &Poly, a: &[Scalar], l: u32) -> Vec<Scalar> {
    let shifted = p.shift(a).unwrap();
    MonomialBasis::new(p.arity(), l)
        .indices()
        .iter()
        .map(|m| shifted.coeff(m))
        .collect()
}

/// `J^l φ(ā)` assembled from fully expanded polynomials `(φ(x + a) - b)^β`,
/// sharing no code with the jet tower.
pub fn oracle_jet(map: &PolyMap, points: &[Vec<Scalar>], l: u32) -> Matrix {
    let n = map.target_arity();
    let b = map.eval(&points[0]).unwrap();
    let targets = MonomialBasis::new(n, l);
    let mut rows = Vec::new();
    for a in points {
        let centered: Vec<Poly> = map
            .components()
            .iter()
            .zip(&b)
            .map(|(c, bi)| &c.shift(a).unwrap() - &Poly::constant(map.source_arity(), bi.clone()))
            .collect();
        let columns: Vec<Vec<Scalar>> = targets
            .indices()
            .iter()
            .map(|beta| {
                let mut prod = Poly::one(map.source_arity());
                for (c, &e) in centered.iter().zip(beta.exps()) {
                    prod = &prod * &c.pow(e);
                }
                taylor_coeffs(&prod, &vec![ratio(0, 1); map.source_arity()], l)
            })
            .collect();
        for r in 0..columns[0].len() {
            rows.push(columns.iter().map(|c| c[r].clone()).collect());
        }
    }
    Matrix::from_rows(rows).unwrap()
}

/// Coordinates of `f` in the basis of monomials of degree `<= l`.
pub fn coords(f: &Poly, l: u32) -> Vec<Scalar> {
    MonomialBasis::new(f.arity(), l)
        .indices()
        .iter()
        .map(|m| f.coeff(m))
        .collect()
}

pub fn square_pair(max_dim: usize) -> impl Strategy<Value = (Matrix, Matrix)> {
    (1..=max_dim).prop_flat_map(|n| {
        let sq = move || prop::collection::vec(prop::collection::vec(scalar(), n), n);
        (sq(), sq())
    })
    .prop_map(|(a, b)| (Matrix::from_rows(a).unwrap(), Matrix::from_rows(b).unwrap()))
}
