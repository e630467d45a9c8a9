//! Jet spaces of the relation ideal, Hilbert–Samuel functions and Chevalley
//! functions at points and fibred tuples.
//!
//! `R^k(ā) ⊆ E^{lk}(ā)` for every `l >= k`, and the chain `E^{lk}` is
//! antitone in `l` with intersection `R^k`. The Chevalley function `l(ā, k)`
//! is the first `l` at which the chain reaches `R^k`. Without explicit
//! relations the engine can only watch the chain settle, so such results are
//! labeled stabilized rather than verified.

use std::sync::OnceLock;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::censored::Censored;
use crate::error::{Error, Result};
use crate::jet::{FibredTuple, JetMatrix, JetTower, PolyMapInstance};
use crate::multi_index::MonomialBasis;
use crate::poly::Poly;
use crate::scalar::{binomial, ratio, Scalar};
use crate::staircase::{diagram_from_generators, hs_from_diagram, Diagram, IdealPresentation};
use crate::subspace::{project_span_prefix, Subspace};
use crate::wedge::{theta_auto, ThetaForm};

pub const DEFAULT_L_MAX: u32 = 12;
pub const DEFAULT_WINDOW: u32 = 3;

/// A map together with a fibred tuple, with jets precomputed up to `l_max`
/// and kernels of `J^l` cached per order.
pub struct Site {
    map: PolyMapInstance,
    tuple: FibredTuple,
    tower: JetTower,
    kernels: Vec<OnceLock<Vec<Vec<Scalar>>>>,
}

impl Site {
    pub fn new(map: PolyMapInstance, tuple: FibredTuple, l_max: u32) -> Result<Self> {
        let tower = JetTower::new(&map.map, &tuple, l_max)?;
        Ok(Site {
            map,
            tuple,
            tower,
            kernels: (0..=l_max).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn map(&self) -> &PolyMapInstance {
        &self.map
    }

    pub fn tuple(&self) -> &FibredTuple {
        &self.tuple
    }

    pub fn l_max(&self) -> u32 {
        self.tower.max_l()
    }

    pub fn n(&self) -> usize {
        self.map.n()
    }

    pub fn jet(&self, l: u32) -> Result<JetMatrix> {
        self.tower.jet(l)
    }

    fn kernel(&self, l: u32) -> Result<&Vec<Vec<Scalar>>> {
        let slot = self
            .kernels
            .get(l as usize)
            .ok_or_else(|| Error::input(format!("order {l} exceeds l_max {}", self.l_max())))?;
        if let Some(k) = slot.get() {
            return Ok(k);
        }
        let j = self.jet(l)?;
        let (_, kernel) = j.entries().kernel_vectors();
        Ok(slot.get_or_init(|| kernel))
    }

    /// Dimension of `J^k(b)`.
    pub fn jet_dim(&self, k: u32) -> usize {
        binomial(self.n() + k as usize, k as usize)
    }

    pub fn e_lk(&self, l: u32, k: u32) -> Result<Subspace> {
        if k > l {
            return Err(Error::input(format!("k = {k} exceeds l = {l}")));
        }
        Ok(project_span_prefix(self.kernel(l)?, self.jet_dim(k)))
    }

    pub fn d_lk(&self, l: u32, k: u32) -> Result<usize> {
        Ok(self.jet_dim(k) - self.e_lk(l, k)?.dim())
    }

    /// The relation ideal's jets `(I + m^{k+1}) / m^{k+1}` at the tuple's image.
    pub fn relations_jets(&self, relations: &IdealPresentation, k: u32) -> Result<Subspace> {
        self.check_relations(relations)?;
        relations.truncated_span(&MonomialBasis::new(self.n(), k))
    }

    fn check_relations(&self, relations: &IdealPresentation) -> Result<()> {
        if relations.arity() != self.n() {
            return Err(Error::input(format!(
                "relations live in {} variables, the map has {} components",
                relations.arity(),
                self.n()
            )));
        }
        if relations.center.as_slice() != self.tuple.image() {
            return Err(Error::input("relations are centered away from the tuple's image"));
        }
        for g in &relations.generators {
            if !g.eval(&relations.center)?.is_zero() {
                return Err(Error::input(format!(
                    "generator {} does not vanish at the image point: the relation ideal is the unit ideal",
                    g.to_text_in("y")
                )));
            }
        }
        // a polynomial is a formal relation at a point iff its pullback is
        // identically zero, so this makes every VERIFIED status sound
        for g in &relations.generators {
            if !self.map.map.pullback(g)?.is_zero() {
                return Err(Error::Certified(format!(
                    "supplied generator {} is not a relation of {}: its pullback is nonzero",
                    g.to_text_in("y"),
                    self.map.name
                )));
            }
        }
        Ok(())
    }

    /// Whether `Θ^{lk}` reproduces `E^{lk}` and `d^{lk}`.
    pub fn theta_identities(&self, l: u32, k: u32, cap: u128) -> Result<ThetaCheck> {
        let j = self.jet(l)?;
        let (s, t) = crate::jet::jet_blocks(&j, k)?;
        let (theta, form) = theta_auto(&s, &t, cap)?;
        let (rank, kernel) = theta.rank_kernel();
        let e = self.e_lk(l, k)?;
        let d = self.jet_dim(k) - e.dim();
        Ok(ThetaCheck {
            l,
            k,
            form,
            kernel_matches: kernel == e,
            rank_matches: rank == d,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThetaCheck {
    pub l: u32,
    pub k: u32,
    pub form: ThetaForm,
    pub kernel_matches: bool,
    pub rank_matches: bool,
}

impl ThetaCheck {
    pub fn ok(&self) -> bool {
        self.kernel_matches && self.rank_matches
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RkStatus {
    /// Equal to the jets of a supplied relation ideal.
    Verified,
    /// The chain `E^{lk}` stopped changing for a full window.
    Stabilized,
    /// `l_max` was reached first; the subspace is only an upper approximation.
    Inconclusive,
}

/// An approximation of `R^k(ā)` together with the chain that produced it.
#[derive(Clone, Debug)]
pub struct RkResult {
    pub k: u32,
    pub subspace: Subspace,
    pub l_stab: Option<u32>,
    pub status: RkStatus,
    /// `E^{lk}` for `l = k, k+1, …` as far as it was computed.
    pub chain: Vec<Subspace>,
    /// Hilbert–Samuel value read off the relations' diagram, when supplied.
    pub diagram_h: Option<usize>,
}

impl RkResult {
    pub fn chain_at(&self, l: u32) -> Option<&Subspace> {
        l.checked_sub(self.k).and_then(|i| self.chain.get(i as usize))
    }
}

/// Walks `E^{lk}` for `l = k, k+1, …, l_max`.
///
/// Without relations, stops once `window` consecutive orders give the same
/// subspace. With relations, compares against their jets: equality at any
/// order certifies `R^k` (the chain is squeezed between the two) and a
/// relation outside some `E^{lk}` is a certified error. A plateau that
/// disagrees with the relations is an input error rather than a certified
/// one, since plateaus can end: the generators may be incomplete or the
/// window too short.
pub fn rk_stabilize(
    site: &Site,
    k: u32,
    window: u32,
    relations: Option<&IdealPresentation>,
) -> Result<RkResult> {
    let l_max = site.l_max();
    if k > l_max {
        return Err(Error::input(format!("k = {k} exceeds l_max = {l_max}")));
    }
    if window == 0 {
        return Err(Error::input("stabilization window must be at least 1"));
    }
    let target = match relations {
        Some(rel) => {
            let rk = site.relations_jets(rel, k)?;
            if rk.pivots().first() == Some(&0) {
                return Err(Error::input(
                    "relation ideal is the unit ideal: the image point is not on the image germ",
                ));
            }
            Some(rk)
        }
        None => None,
    };
    let diagram_h = match (relations, &target) {
        (Some(rel), Some(rk)) => {
            let h = hs_cross_check(rel, k, site.jet_dim(k) - rk.dim())?;
            Some(h)
        }
        _ => None,
    };

    let mut chain: Vec<Subspace> = Vec::new();
    let mut run = 0;
    let mut run_start = k;
    for l in k..=l_max {
        let e = site.e_lk(l, k)?;
        if chain.last() == Some(&e) {
            run += 1;
        } else {
            run = 1;
            run_start = l;
        }
        chain.push(e.clone());
        if let Some(rk) = &target {
            if !e.contains(rk)? {
                return Err(Error::Certified(format!(
                    "supplied relations are not relations at ({}): their {k}-jets leave E^({l},{k})",
                    site.tuple.label()
                )));
            }
            if e == *rk {
                return Ok(RkResult {
                    k,
                    subspace: e,
                    l_stab: Some(run_start),
                    status: RkStatus::Verified,
                    chain,
                    diagram_h,
                });
            }
            if run >= window {
                return Err(Error::input(format!(
                    "E^(l,{k}) held dimension {} for {window} orders from l = {run_start} but the supplied relations give dimension {} at ({}); the generators may be incomplete or the window too short",
                    e.dim(),
                    rk.dim(),
                    site.tuple.label()
                )));
            }
        } else if run >= window {
            return Ok(RkResult {
                k,
                subspace: e,
                l_stab: Some(run_start),
                status: RkStatus::Stabilized,
                chain,
                diagram_h,
            });
        }
    }
    let last = chain.last().cloned().expect("k <= l_max so the chain is nonempty");
    Ok(RkResult {
        k,
        subspace: last,
        l_stab: None,
        status: RkStatus::Inconclusive,
        chain,
        diagram_h,
    })
}

fn hs_cross_check(rel: &IdealPresentation, k: u32, h_jets: usize) -> Result<usize> {
    let max_deg = rel
        .recentered()?
        .iter()
        .filter_map(Poly::degree)
        .max()
        .unwrap_or(0);
    let diagram = diagram_from_generators(rel, k.max(max_deg))?;
    let h = hs_from_diagram(&diagram, k)?;
    if h != h_jets {
        return Err(Error::Certified(format!(
            "Hilbert-Samuel mismatch at k = {k}: diagram gives {h}, relation jets give {h_jets}"
        )));
    }
    Ok(h)
}

/// `H_ā(k) = dim J^k(b) / R^k(ā)`.
pub fn hilbert_samuel(site: &Site, rk: &RkResult) -> Result<usize> {
    let h = site.jet_dim(rk.k) - rk.subspace.dim();
    if let Some(dh) = rk.diagram_h {
        if dh != h {
            return Err(Error::Certified(format!(
                "Hilbert-Samuel mismatch at k = {}: diagram {dh}, jets {h}",
                rk.k
            )));
        }
    }
    Ok(h)
}

/// Least `l` with `E^{lk} = R^k`, censored at `l_max` when `R^k` is unknown.
pub fn chevalley_l(site: &Site, rk: &RkResult) -> Result<Censored> {
    if rk.status == RkStatus::Inconclusive {
        return Ok(Censored::AtLeast(site.l_max()));
    }
    for (i, e) in rk.chain.iter().enumerate() {
        if *e == rk.subspace {
            return Ok(Censored::Exact(rk.k + i as u32));
        }
    }
    // the chain always ends at the returned subspace
    Err(Error::Certified("chain never reached its own limit".into()))
}

/// Decides `l >= l(ā, k)` on jets supported off the diagram: restrict `J^l`
/// to columns `β ∉ N`, split at `|β| = k` into `(A, B)`, and test whether
/// `Aη + Bζ = 0` forces `η = 0`.
pub fn chevalley_via_diagram(site: &Site, k: u32, l: u32, diagram: &Diagram) -> Result<bool> {
    if diagram.arity() != site.n() {
        return Err(Error::input(format!(
            "diagram arity {} differs from target arity {}",
            diagram.arity(),
            site.n()
        )));
    }
    if k > l {
        return Err(Error::input(format!("k = {k} exceeds l = {l}")));
    }
    if diagram.truncation_degree() < l {
        return Err(Error::input(format!(
            "diagram truncated at {} is too coarse for l = {l}",
            diagram.truncation_degree()
        )));
    }
    let j = site.jet(l)?;
    let labels = j.source_labels();
    let keep: Vec<usize> = (0..labels.len())
        .filter(|&c| !diagram.contains(labels.get(c)))
        .collect();
    let eta_len = keep.iter().filter(|&&c| labels.get(c).degree() <= k).count();
    let phi = j.entries().select_columns(&keep);
    let (_, kernel) = phi.kernel_vectors();
    Ok(kernel
        .iter()
        .all(|v| v[..eta_len].iter().all(Zero::is_zero)))
}

/// Least `l` in `k..=l_max` at which [`chevalley_via_diagram`] holds.
pub fn diagram_threshold(site: &Site, k: u32, diagram: &Diagram) -> Result<Censored> {
    for l in k..=site.l_max() {
        if chevalley_via_diagram(site, k, l, diagram)? {
            return Ok(Censored::Exact(l));
        }
    }
    Ok(Censored::AtLeast(site.l_max()))
}

/// One row of a Chevalley table.
#[derive(Clone, Debug, Serialize)]
pub struct ChevalleyEntry {
    pub map: String,
    pub tuple: String,
    pub k: u32,
    pub l: Censored,
    #[serde(rename = "H")]
    pub h: usize,
    pub status: RkStatus,
    pub l_stab: Option<u32>,
}

/// `R^k`, `H(k)` and `l(ā, k)` for one `(tuple, k)`.
pub fn chevalley_entry(
    site: &Site,
    k: u32,
    window: u32,
    relations: Option<&IdealPresentation>,
) -> Result<(ChevalleyEntry, RkResult)> {
    let rk = rk_stabilize(site, k, window, relations)?;
    let h = hilbert_samuel(site, &rk)?;
    let l = chevalley_l(site, &rk)?;
    Ok((
        ChevalleyEntry {
            map: site.map.name.clone(),
            tuple: site.tuple.label(),
            k,
            l,
            h,
            status: rk.status,
            l_stab: rk.l_stab,
        },
        rk,
    ))
}

/// A rational family `t ↦ ā(t)` of fibred tuples, polynomial in the parameters.
#[derive(Clone, Debug)]
pub struct Leaf {
    pub params: Vec<String>,
    /// `point_exprs[i][j]`: the j-th coordinate of the i-th point.
    pub point_exprs: Vec<Vec<Poly>>,
}

impl Leaf {
    pub fn parse(params: &[&str], point_exprs: &[Vec<&str>]) -> Result<Self> {
        let names: Vec<String> = params.iter().map(|s| s.to_string()).collect();
        let exprs = point_exprs
            .iter()
            .map(|pt| pt.iter().map(|e| Poly::parse(e, &names)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Leaf {
            params: names,
            point_exprs: exprs,
        })
    }

    /// Checks `φ(a^1(t)) = ⋯ = φ(a^s(t))` as polynomial identities.
    pub fn check(&self, map: &PolyMapInstance) -> Result<()> {
        let first = self
            .point_exprs
            .first()
            .ok_or_else(|| Error::input("a leaf needs at least one point"))?;
        let image = |pt: &Vec<Poly>| -> Result<Vec<Poly>> {
            if pt.len() != map.m() {
                return Err(Error::input("leaf point does not have the source arity"));
            }
            map.map.components().iter().map(|c| c.compose(pt)).collect()
        };
        let b = image(first)?;
        for pt in &self.point_exprs[1..] {
            if image(pt)? != b {
                return Err(Error::input("leaf points do not share an image identically"));
            }
        }
        Ok(())
    }

    pub fn at(&self, t: &[Scalar]) -> Result<Vec<Vec<Scalar>>> {
        self.point_exprs
            .iter()
            .map(|pt| pt.iter().map(|e| e.eval(t)).collect())
            .collect()
    }
}

/// Per-`k` outcome of sampling a leaf.
#[derive(Clone, Debug, Serialize)]
pub struct GenericEstimate {
    pub k: u32,
    /// Minimum of the sampled `l(ā, k)`.
    pub l_generic: Censored,
    /// `max over samples of d^{lk}` for `l = k..=l_max`.
    pub d_lk_profile: Vec<usize>,
    /// A sample attaining the minimum `l` did not attain the maximal profile.
    pub rank_mismatch: bool,
    pub samples: Vec<String>,
    pub heuristic: bool,
}

/// Samples `trials` rational parameter values and estimates the generic
/// Chevalley function of the leaf for each `k`.
pub fn generic_chevalley_sample(
    map: &PolyMapInstance,
    leaf: &Leaf,
    ks: &[u32],
    trials: usize,
    seed: u64,
    l_max: u32,
    window: u32,
) -> Result<Vec<GenericEstimate>> {
    leaf.check(map)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut params = Vec::with_capacity(trials);
    for _ in 0..trials.max(1) {
        let t: Vec<Scalar> = (0..leaf.params.len())
            .map(|_| ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5)))
            .collect();
        params.push(t);
    }
    let sites = params
        .iter()
        .map(|t| {
            let tuple = FibredTuple::new(&map.map, leaf.at(t)?)?;
            Site::new(map.clone(), tuple, l_max)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for &k in ks {
        let mut per_sample = Vec::new();
        for site in &sites {
            let rk = rk_stabilize(site, k, window, None)?;
            let l = chevalley_l(site, &rk)?;
            let profile = (k..=l_max).map(|l| site.d_lk(l, k)).collect::<Result<Vec<_>>>()?;
            per_sample.push((l, profile));
        }
        let min_l = per_sample
            .iter()
            .map(|(l, _)| *l)
            .min_by_key(|l| match l {
                Censored::Exact(v) => (0, *v),
                Censored::AtLeast(v) => (1, *v),
            })
            .expect("at least one sample");
        let mut profile = vec![0; (l_max - k + 1) as usize];
        for (_, p) in &per_sample {
            for (acc, v) in profile.iter_mut().zip(p) {
                *acc = (*acc).max(*v);
            }
        }
        let rank_mismatch = per_sample
            .iter()
            .filter(|(l, _)| *l == min_l)
            .any(|(_, p)| *p != profile);
        out.push(GenericEstimate {
            k,
            l_generic: min_l,
            d_lk_profile: profile,
            rank_mismatch,
            samples: sites.iter().map(|s| s.tuple.label()).collect(),
            heuristic: true,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyMap;
    use crate::scalar::int;

    fn site(comps: &[&str], m: usize, point: Vec<Scalar>, l_max: u32) -> Site {
        let map = PolyMapInstance::new("t", PolyMap::parse(m, comps).unwrap());
        let tuple = FibredTuple::single(&map.map, point).unwrap();
        Site::new(map, tuple, l_max).unwrap()
    }

    #[test]
    fn squaring_stabilizes_to_zero() {
        let s = site(&["x1^2"], 1, vec![int(0)], 12);
        let rk = rk_stabilize(&s, 1, 2, None).unwrap();
        assert!(rk.subspace.is_zero());
        assert_eq!(rk.l_stab, Some(2));
        assert_eq!(rk.status, RkStatus::Stabilized);
        for k in 1..=3 {
            let rk = rk_stabilize(&s, k, 3, None).unwrap();
            assert_eq!(chevalley_l(&s, &rk).unwrap(), Censored::Exact(2 * k));
        }
        let rk3 = rk_stabilize(&s, 3, 3, None).unwrap();
        assert_eq!(hilbert_samuel(&s, &rk3).unwrap(), 4);
    }

    #[test]
    fn cusp_with_relations_is_verified() {
        let s = site(&["x1^2", "x1^3"], 1, vec![int(0)], 12);
        let rel = IdealPresentation::parse(&["y1^3 - y2^2"], vec![int(0), int(0)]).unwrap();
        let rk = rk_stabilize(&s, 2, 3, Some(&rel)).unwrap();
        assert_eq!(rk.status, RkStatus::Verified);
        // R^2 is spanned by the jet of -y2^2
        assert_eq!(rk.subspace.dim(), 1);
        assert_eq!(hilbert_samuel(&s, &rk).unwrap(), 5);
        assert_eq!(chevalley_l(&s, &rk).unwrap(), Censored::Exact(5));
        let rk1 = rk_stabilize(&s, 1, 3, Some(&rel)).unwrap();
        assert_eq!(chevalley_l(&s, &rk1).unwrap(), Censored::Exact(3));
    }

    #[test]
    fn identity_is_verified_with_empty_relations() {
        let s = site(&["x1", "x2"], 2, vec![int(2), int(-1)], 6);
        let rel = IdealPresentation::new(vec![], vec![int(2), int(-1)]).unwrap();
        for k in 0..=3 {
            let rk = rk_stabilize(&s, k, 3, Some(&rel)).unwrap();
            assert_eq!(rk.status, RkStatus::Verified);
            assert!(rk.subspace.is_zero());
            assert_eq!(chevalley_l(&s, &rk).unwrap(), Censored::Exact(k));
        }
    }

    #[test]
    fn inconclusive_reports_censored_value() {
        let s = site(&["x1^2"], 1, vec![int(0)], 5);
        let rk = rk_stabilize(&s, 3, 3, None).unwrap();
        assert_eq!(rk.status, RkStatus::Inconclusive);
        assert_eq!(chevalley_l(&s, &rk).unwrap(), Censored::AtLeast(5));
    }

    #[test]
    fn corrupted_relations_are_rejected() {
        let s = site(&["x1^2", "x1^3"], 1, vec![int(0)], 12);
        let bad = IdealPresentation::parse(&["y1^2 - y2"], vec![int(0), int(0)]).unwrap();
        assert!(matches!(rk_stabilize(&s, 2, 3, Some(&bad)), Err(Error::Certified(_))));
        let unit = IdealPresentation::parse(&["1 + y1"], vec![int(0), int(0)]).unwrap();
        assert!(matches!(rk_stabilize(&s, 2, 3, Some(&unit)), Err(Error::Input(_))));
        let off = IdealPresentation::parse(&["y1^3 - y2^2"], vec![int(1), int(1)]).unwrap();
        assert!(matches!(rk_stabilize(&s, 2, 3, Some(&off)), Err(Error::Input(_))));
    }

    #[test]
    fn diagram_route_examples() {
        let s = site(&["x1^2", "x1^3"], 1, vec![int(0)], 8);
        let rel = IdealPresentation::parse(&["y1^3 - y2^2"], vec![int(0), int(0)]).unwrap();
        let n = diagram_from_generators(&rel, 8).unwrap();
        assert!(chevalley_via_diagram(&s, 1, 3, &n).unwrap());
        assert!(!chevalley_via_diagram(&s, 1, 2, &n).unwrap());

        let sq = site(&["x1^2"], 1, vec![int(0)], 4);
        let empty = diagram_from_generators(&IdealPresentation::new(vec![], vec![int(0)]).unwrap(), 4).unwrap();
        assert!(chevalley_via_diagram(&sq, 1, 2, &empty).unwrap());
        assert!(!chevalley_via_diagram(&sq, 1, 1, &empty).unwrap());

        let id = site(&["x1"], 1, vec![int(5)], 3);
        let e1 = diagram_from_generators(&IdealPresentation::new(vec![], vec![int(5)]).unwrap(), 3).unwrap();
        assert!(chevalley_via_diagram(&id, 2, 2, &e1).unwrap());
        assert!(chevalley_via_diagram(&id, 2, 3, &n).is_err());
    }

    #[test]
    fn leaf_samples() {
        let sq = PolyMapInstance::new("sq", PolyMap::parse(1, &["x1^2"]).unwrap());
        let leaf = Leaf::parse(&["t"], &[vec!["t"]]).unwrap();
        let est = generic_chevalley_sample(&sq, &leaf, &[1, 2], 4, 7, 8, 3).unwrap();
        assert_eq!(est[0].l_generic, Censored::Exact(1));
        assert_eq!(est[1].l_generic, Censored::Exact(2));

        let cusp = PolyMapInstance::new("cusp", PolyMap::parse(1, &["x1^2", "x1^3"]).unwrap());
        let est = generic_chevalley_sample(&cusp, &leaf, &[1], 4, 7, 8, 3).unwrap();
        assert_eq!(est[0].l_generic, Censored::Exact(1));

        let pair = Leaf::parse(&["t"], &[vec!["t"], vec!["-1 t"]]).unwrap();
        assert!(pair.check(&sq).is_ok());
        assert!(pair.check(&cusp).is_err());
    }

    #[test]
    fn constant_leaf_reproduces_point_value() {
        let sq = PolyMapInstance::new("sq", PolyMap::parse(1, &["x1^2"]).unwrap());
        let leaf = Leaf::parse(&["t"], &[vec!["0"]]).unwrap();
        let est = generic_chevalley_sample(&sq, &leaf, &[2], 3, 1, 8, 3).unwrap();
        assert_eq!(est[0].l_generic, Censored::Exact(4));
        assert!(!est[0].rank_mismatch);
    }
}
