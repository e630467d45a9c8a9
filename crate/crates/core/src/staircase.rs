//! Diagrams of initial exponents, truncated division and ν-orders.
//!
//! Everything here is relative to the degree-first monomial order of
//! [`MultiIndex`]. Because the order is degree-compatible, the part of an
//! ideal below degree `d` is spanned by the degree-`d` truncations of the
//! monomial multiples of its generators, so the diagram is exact up to `d`.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_traits::Zero;
use serde::Serialize;

use crate::censored::Censored;
use crate::error::{Error, Result};
use crate::multi_index::{MonomialBasis, MultiIndex};
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::series::TruncatedSeries;
use crate::subspace::Subspace;

pub fn mono_cmp(a: &MultiIndex, b: &MultiIndex) -> Result<Ordering> {
    if a.arity() != b.arity() {
        return Err(Error::input(format!(
            "cannot compare indices of arity {} and {}",
            a.arity(),
            b.arity()
        )));
    }
    Ok(a.cmp(b))
}

/// `exp F = min supp F`; `None` stands for `exp 0 = ∞`.
pub fn initial_exponent(f: &TruncatedSeries) -> Option<MultiIndex> {
    f.initial_exponent().cloned()
}

/// Generators of an ideal in the target variables `y1..yn`, together with the
/// point `b` at which the ideal is considered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealPresentation {
    pub generators: Vec<Poly>,
    pub center: Vec<Scalar>,
}

impl IdealPresentation {
    pub fn new(generators: Vec<Poly>, center: Vec<Scalar>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.arity() != center.len()) {
            return Err(Error::input(format!(
                "generator arity {} differs from center arity {}",
                g.arity(),
                center.len()
            )));
        }
        Ok(IdealPresentation { generators, center })
    }

    /// Parses generators written in `y1..yn`.
    pub fn parse(generators: &[&str], center: Vec<Scalar>) -> Result<Self> {
        let n = center.len();
        let gens = generators
            .iter()
            .map(|g| Poly::parse_in(g, "y", n))
            .collect::<Result<Vec<_>>>()?;
        IdealPresentation::new(gens, center)
    }

    pub fn arity(&self) -> usize {
        self.center.len()
    }

    /// Generators rewritten in the local coordinates `y - b`.
    pub fn recentered(&self) -> Result<Vec<Poly>> {
        self.generators.iter().map(|g| g.shift(&self.center)).collect()
    }

    /// `(I + m^{d+1}) / m^{d+1}` as a subspace of the degree-`<= d` jets,
    /// spanned by truncated monomial multiples of the recentered generators.
    pub fn truncated_span(&self, basis: &MonomialBasis) -> Result<Subspace> {
        let d = basis.max_degree();
        let mut vectors = Vec::new();
        for g in self.recentered()? {
            let Some(ord) = g.order() else { continue };
            if ord > d {
                continue;
            }
            let gs = TruncatedSeries::from_poly(&g, d);
            for gamma in basis.indices() {
                if gamma.degree() + ord > d {
                    break;
                }
                let mut v = vec![Scalar::zero(); basis.len()];
                for (m, c) in gs.terms() {
                    let t = gamma.add(m);
                    if t.degree() <= d {
                        v[basis.position(&t).expect("index within basis")] = c.clone();
                    }
                }
                vectors.push(v);
            }
        }
        Ok(Subspace::from_vectors(basis.len(), &vectors))
    }
}

/// How a diagram's ideal was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagramOrigin {
    /// Computed from explicit generators.
    Generators,
    /// Read off a stabilized jet subspace; no certificate that the
    /// stabilized subspace is the true jet space of the ideal.
    Stabilized,
}

/// The staircase `N ⊂ N^n` of initial exponents of an ideal, known up to a
/// truncation degree, with the reduced basis realizing it.
#[derive(Clone, Debug)]
pub struct Diagram {
    arity: usize,
    truncation_degree: u32,
    basis: MonomialBasis,
    /// Reduced echelon basis of the truncated ideal; pivot `i` is the initial
    /// exponent of row `i`.
    elements: Subspace,
    members: HashSet<MultiIndex>,
    vertices: Vec<MultiIndex>,
    provisional: bool,
    origin: DiagramOrigin,
}

impl Diagram {
    /// Builds the diagram of the ideal whose degree-`<= d` jets form `elements`.
    pub fn from_jet_subspace(
        basis: MonomialBasis,
        elements: Subspace,
        origin: DiagramOrigin,
    ) -> Result<Self> {
        if elements.ambient_dim() != basis.len() {
            return Err(Error::dim("subspace does not live in the jet space of the basis"));
        }
        let arity = basis.arity();
        let d = basis.max_degree();
        let members: HashSet<MultiIndex> = elements
            .pivots()
            .iter()
            .map(|&p| basis.get(p).clone())
            .collect();
        let mut vertices: Vec<MultiIndex> = members
            .iter()
            .filter(|b| !members.iter().any(|g| g != *b && g.divides(b)))
            .cloned()
            .collect();
        vertices.sort();
        let provisional = basis
            .indices()
            .iter()
            .any(|m| m.degree() == d && !members.contains(m));
        let diagram = Diagram {
            arity,
            truncation_degree: d,
            basis,
            elements,
            members,
            vertices,
            provisional,
            origin,
        };
        diagram.check_invariants()?;
        Ok(diagram)
    }

    fn check_invariants(&self) -> Result<()> {
        for b in &self.members {
            if b.degree() >= self.truncation_degree {
                continue;
            }
            for i in 0..self.arity {
                if !self.members.contains(&b.add(&MultiIndex::unit(self.arity, i))) {
                    return Err(Error::Certified(format!(
                        "diagram not closed under N^n at {b}: ideal span is not an ideal"
                    )));
                }
            }
        }
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                if a.divides(b) || b.divides(a) {
                    return Err(Error::Certified(format!("vertices {a} and {b} are comparable")));
                }
            }
        }
        Ok(())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn truncation_degree(&self) -> u32 {
        self.truncation_degree
    }

    pub fn vertices(&self) -> &[MultiIndex] {
        &self.vertices
    }

    /// True when some monomial of the top degree lies outside the diagram, so
    /// vertices beyond the truncation degree cannot be ruled out.
    pub fn provisional(&self) -> bool {
        self.provisional
    }

    pub fn origin(&self) -> DiagramOrigin {
        self.origin
    }

    pub fn basis(&self) -> &MonomialBasis {
        &self.basis
    }

    /// Membership in `N` (meaningful for indices up to the truncation degree).
    pub fn contains(&self, beta: &MultiIndex) -> bool {
        if beta.degree() <= self.truncation_degree {
            self.members.contains(beta)
        } else {
            self.vertices.iter().any(|v| v.divides(beta))
        }
    }

    pub fn is_unit(&self) -> bool {
        self.members.contains(&MultiIndex::zero(self.arity))
    }

    /// Truncated ideal span in jet coordinates.
    pub fn ideal_span(&self) -> &Subspace {
        &self.elements
    }

    pub fn reduced_basis(&self) -> Vec<TruncatedSeries> {
        self.elements
            .basis()
            .iter()
            .map(|v| TruncatedSeries::from_coords(&self.basis, v, self.truncation_degree))
            .collect()
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            arity: self.arity,
            truncation_degree: self.truncation_degree,
            vertices: self.vertices.iter().map(|v| v.exps().to_vec()).collect(),
            provisional: self.provisional,
            origin: self.origin,
            status: match self.origin {
                DiagramOrigin::Generators => "from generators",
                DiagramOrigin::Stabilized => "stabilized, unverified",
            },
            reduced_basis: self
                .reduced_basis()
                .iter()
                .map(|s| s.to_poly().to_text_in("y"))
                .collect(),
        }
    }
}

/// Serialized diagram. Reduced basis elements are written in the local
/// coordinates `y - b`, named `y1..yn`.
#[derive(Serialize, Debug, Clone)]
pub struct DiagramJson {
    pub arity: usize,
    pub truncation_degree: u32,
    pub vertices: Vec<Vec<u32>>,
    pub provisional: bool,
    pub origin: DiagramOrigin,
    pub status: &'static str,
    pub reduced_basis: Vec<String>,
}

pub fn diagram_from_generators(ideal: &IdealPresentation, d: u32) -> Result<Diagram> {
    let max_deg = ideal
        .recentered()?
        .iter()
        .filter_map(Poly::degree)
        .max()
        .unwrap_or(0);
    if d < max_deg {
        return Err(Error::input(format!(
            "truncation degree {d} is below the generator degree {max_deg}"
        )));
    }
    let basis = MonomialBasis::new(ideal.arity(), d);
    let span = ideal.truncated_span(&basis)?;
    Diagram::from_jet_subspace(basis, span, DiagramOrigin::Generators)
}

/// Normal form of `f` modulo the diagram's ideal: the unique series supported
/// off `N` that differs from `f` by an element of the truncated ideal.
pub fn divide(f: &TruncatedSeries, diagram: &Diagram) -> Result<TruncatedSeries> {
    if f.arity() != diagram.arity {
        return Err(Error::input("series arity differs from diagram arity"));
    }
    if f.degree() > diagram.truncation_degree {
        return Err(Error::input(format!(
            "truncation mismatch: series degree {} exceeds diagram degree {}",
            f.degree(),
            diagram.truncation_degree
        )));
    }
    let coords = f.to_coords(&diagram.basis)?;
    let reduced = diagram.elements.reduce(&coords);
    Ok(TruncatedSeries::from_coords(&diagram.basis, &reduced, f.degree()))
}

/// `ν(F) = max{l : F ∈ m^l + I}`, read off as the order of the normal form.
/// Censored at the series' truncation degree when the normal form vanishes
/// or its order reaches the truncation.
pub fn nu_order(f: &TruncatedSeries, diagram: &Diagram) -> Result<Censored> {
    let nf = divide(f, diagram)?;
    let d = f.degree();
    Ok(match nf.order() {
        Some(o) if o < d => Censored::Exact(o),
        _ => Censored::AtLeast(d),
    })
}

/// Number of monomials of degree `<= k` outside the diagram.
pub fn hs_from_diagram(diagram: &Diagram, k: u32) -> Result<usize> {
    if k > diagram.truncation_degree {
        return Err(Error::input(format!(
            "k = {k} exceeds the truncation degree {}",
            diagram.truncation_degree
        )));
    }
    Ok(diagram
        .basis
        .indices()
        .iter()
        .take_while(|m| m.degree() <= k)
        .filter(|m| !diagram.members.contains(*m))
        .count())
}
