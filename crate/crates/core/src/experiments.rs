//! Batch runs over a [`Scenario`]: Chevalley tables, linear envelopes,
//! ν/μ/product probes and the cross-check report, plus their JSON, CSV and
//! plain-text renderings.
//!
//! Everything here is exact except [`mu_estimate`], which samples in `f64`
//! and only ever produces verdicts labeled `HEURISTIC`. No certified check
//! consumes its output.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::censored::Censored;
use crate::engine::{
    chevalley_entry, diagram_threshold, generic_chevalley_sample, rk_stabilize, ChevalleyEntry,
    GenericEstimate, RkResult, RkStatus, Site,
};
use crate::error::{Error, Result};
use crate::jet::FibredTuple;
use crate::matrix::MatrixJson;
use crate::multi_index::{of_degree, MonomialBasis};
use crate::poly::{Poly, PolyMap};
use crate::scalar::{format_point, int, to_f64};
use crate::scenario::Scenario;
use crate::series::TruncatedSeries;
use crate::staircase::{
    diagram_from_generators, divide, hs_from_diagram, nu_order, Diagram, DiagramJson, DiagramOrigin,
    IdealPresentation,
};

/// Size above which `verify` checks `Θ^{lk}` on its bordered-minor rows
/// rather than building the full operator. Both have the same kernel and rank.
pub const VERIFY_THETA_CAP: u128 = 5_000;

/// One [`Site`] per tuple of the scenario, in scenario order.
pub fn build_sites(sc: &Scenario) -> Result<Vec<Site>> {
    let sites: Vec<Result<Site>> = sc
        .tuples
        .par_iter()
        .map(|t| {
            Site::new(sc.map.clone(), t.clone(), sc.l_max)
                .map_err(|e| e.context(&format!("tuple {}", t.label())))
        })
        .collect();
    sites.into_iter().collect()
}

fn row_context(site: &Site, k: u32) -> String {
    format!("row (map {}, tuple {}, k = {k})", site.map().name, site.tuple().label())
}

/// Table rows with the underlying `R^k` computations, ordered by tuple then `k`.
pub fn run_table_detailed(sc: &Scenario, sites: &[Site]) -> Result<Vec<(ChevalleyEntry, RkResult)>> {
    let jobs: Vec<(usize, u32)> = (0..sites.len())
        .flat_map(|i| sc.ks().into_iter().map(move |k| (i, k)))
        .collect();
    let rows: Vec<Result<_>> = jobs
        .par_iter()
        .map(|&(i, k)| {
            let site = &sites[i];
            chevalley_entry(site, k, sc.window, sc.relations_for(site.tuple()))
                .map_err(|e| e.context(&row_context(site, k)))
        })
        .collect();
    rows.into_iter().collect()
}

/// One row per `(tuple, k)`.
pub fn run_table(sc: &Scenario) -> Result<Vec<ChevalleyEntry>> {
    let sites = build_sites(sc)?;
    Ok(run_table_detailed(sc, &sites)?
        .into_iter()
        .map(|(e, _)| e)
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct LeafReport {
    pub leaf: usize,
    pub params: Vec<String>,
    pub estimates: Vec<GenericEstimate>,
}

/// Generic Chevalley estimates for every leaf; leaf `i` uses seed `seed + i`.
pub fn run_leaves(sc: &Scenario) -> Result<Vec<LeafReport>> {
    let ks = sc.ks();
    sc.leaves
        .iter()
        .enumerate()
        .map(|(i, leaf)| {
            let estimates = generic_chevalley_sample(
                &sc.map,
                leaf,
                &ks,
                sc.leaf_trials,
                sc.seed.wrapping_add(i as u64),
                sc.l_max,
                sc.window,
            )
            .map_err(|e| e.context(&format!("leaf {i}")))?;
            Ok(LeafReport {
                leaf: i,
                params: leaf.params.clone(),
                estimates,
            })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ChevalleyReport {
    pub map: String,
    pub l_max: u32,
    pub window: u32,
    pub seed: u64,
    pub rows: Vec<ChevalleyEntry>,
    pub leaves: Vec<LeafReport>,
}

impl ChevalleyReport {
    pub fn build(sc: &Scenario) -> Result<Self> {
        Ok(ChevalleyReport {
            map: sc.map.name.clone(),
            l_max: sc.l_max,
            window: sc.window,
            seed: sc.seed,
            rows: run_table(sc)?,
            leaves: run_leaves(sc)?,
        })
    }

    /// True when there are rows and none of them reached a decision.
    pub fn inconclusive_only(&self) -> bool {
        !self.rows.is_empty() && self.rows.iter().all(|r| r.status == RkStatus::Inconclusive)
    }

    pub fn text(&self) -> String {
        let mut out = table_text(&self.rows);
        for leaf in &self.leaves {
            let _ = writeln!(out, "\nleaf {} ({}), HEURISTIC", leaf.leaf, leaf.params.join(", "));
            let rows: Vec<Vec<String>> = leaf
                .estimates
                .iter()
                .map(|e| {
                    vec![
                        e.k.to_string(),
                        e.l_generic.to_string(),
                        e.rank_mismatch.to_string(),
                        e.samples.join(" | "),
                    ]
                })
                .collect();
            out.push_str(&aligned(&["k", "l_generic", "rank_mismatch", "samples"], &rows));
        }
        out
    }
}

/// `l <= alpha * k + beta` over a finite table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearBound {
    pub alpha: u32,
    pub beta: u32,
    /// Rows `(k, l)` where the bound is attained.
    pub witnesses: Vec<(u32, u32)>,
}

/// Smallest integer envelope `(α, β)` covering every row.
///
/// Rows are `(k, l)`; a censored `l = AtLeast(v)` contributes the constraint
/// `αk + β >= v` like an exact one, it just cannot be tight evidence of
/// anything beyond its bound. Among feasible pairs the one with the least
/// `α + β` wins, ties going to the smaller `α`.
pub fn fit_linear_bound(rows: &[(u32, Censored)]) -> Result<LinearBound> {
    if rows.is_empty() {
        return Err(Error::input("cannot fit a bound to an empty table"));
    }
    if rows.iter().all(|(_, l)| l.is_censored()) {
        return Err(Error::input("every row is censored; nothing to fit"));
    }
    let max_v = rows.iter().map(|(_, l)| l.bound()).max().unwrap_or(0);
    let beta_for = |alpha: u32| -> u32 {
        rows.iter()
            .map(|&(k, l)| l.bound().saturating_sub(alpha.saturating_mul(k)))
            .max()
            .unwrap_or(0)
    };
    let (alpha, beta) = (0..=max_v)
        .map(|a| (a, beta_for(a)))
        .min_by_key(|&(a, b)| (a + b, a))
        .expect("range is nonempty");
    let mut witnesses: Vec<(u32, u32)> = rows
        .iter()
        .filter(|(k, l)| alpha * k + beta == l.bound())
        .map(|&(k, l)| (k, l.bound()))
        .collect();
    witnesses.sort_unstable();
    witnesses.dedup();
    Ok(LinearBound {
        alpha,
        beta,
        witnesses,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TupleFit {
    pub tuple: String,
    pub bound: Option<LinearBound>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FitReport {
    pub map: String,
    pub per_tuple: Vec<TupleFit>,
    /// One envelope for every listed tuple at once.
    pub overall: Option<LinearBound>,
    /// Envelopes for the sampled generic values of each leaf.
    pub leaves: Vec<TupleFit>,
    pub rows: Vec<ChevalleyEntry>,
}

fn try_fit(points: &[(u32, Censored)]) -> (Option<LinearBound>, Option<String>) {
    match fit_linear_bound(points) {
        Ok(b) => (Some(b), None),
        Err(e) => (None, Some(e.to_string())),
    }
}

impl FitReport {
    pub fn build(sc: &Scenario) -> Result<Self> {
        let report = ChevalleyReport::build(sc)?;
        let mut per_tuple = Vec::new();
        for t in &sc.tuples {
            let label = t.label();
            let pts: Vec<(u32, Censored)> = report
                .rows
                .iter()
                .filter(|r| r.tuple == label)
                .map(|r| (r.k, r.l))
                .collect();
            let (bound, note) = try_fit(&pts);
            per_tuple.push(TupleFit {
                tuple: label,
                bound,
                note,
            });
        }
        let all: Vec<(u32, Censored)> = report.rows.iter().map(|r| (r.k, r.l)).collect();
        let overall = if all.is_empty() { None } else { try_fit(&all).0 };
        let leaves = report
            .leaves
            .iter()
            .map(|lr| {
                let pts: Vec<(u32, Censored)> =
                    lr.estimates.iter().map(|e| (e.k, e.l_generic)).collect();
                let (bound, note) = try_fit(&pts);
                TupleFit {
                    tuple: format!("leaf {}", lr.leaf),
                    bound,
                    note,
                }
            })
            .collect();
        Ok(FitReport {
            map: report.map,
            per_tuple,
            overall,
            leaves,
            rows: report.rows,
        })
    }

    pub fn inconclusive_only(&self) -> bool {
        !self.rows.is_empty() && self.rows.iter().all(|r| r.status == RkStatus::Inconclusive)
    }

    pub fn text(&self) -> String {
        let fmt = |b: &Option<LinearBound>, note: &Option<String>| match (b, note) {
            (Some(b), _) => vec![
                b.alpha.to_string(),
                b.beta.to_string(),
                b.witnesses
                    .iter()
                    .map(|(k, l)| format!("({k},{l})"))
                    .collect::<Vec<_>>()
                    .join(" "),
            ],
            (None, n) => vec!["-".into(), "-".into(), n.clone().unwrap_or_default()],
        };
        let mut rows: Vec<Vec<String>> = Vec::new();
        for f in self.per_tuple.iter().chain(&self.leaves) {
            let mut r = vec![f.tuple.clone()];
            r.extend(fmt(&f.bound, &f.note));
            rows.push(r);
        }
        let mut r = vec!["all tuples".to_string()];
        r.extend(fmt(&self.overall, &None));
        rows.push(r);
        aligned(&["tuple", "alpha", "beta", "witnesses"], &rows)
    }
}

/// ν of a series in local coordinates against a prepared diagram.
fn nu_local(f_local: &Poly, diagram: &Diagram) -> Result<(Censored, TruncatedSeries)> {
    let s = TruncatedSeries::from_poly(f_local, diagram.truncation_degree());
    let nf = divide(&s, diagram)?;
    Ok((nu_order(&s, diagram)?, nf))
}

#[derive(Clone, Debug, Serialize)]
pub struct NuReport {
    pub f: String,
    pub center: String,
    pub d: u32,
    pub nu: Censored,
    /// In local coordinates `y - b`.
    pub normal_form: String,
}

/// `ν(F)` at the center of `relations`, with `F` written in global `y`.
pub fn nu_probe(f: &Poly, relations: &IdealPresentation, d: u32) -> Result<NuReport> {
    if f.arity() != relations.arity() {
        return Err(Error::input("F and the relations live in different variables"));
    }
    let diagram = diagram_from_generators(relations, d)?;
    let local = f.shift(&relations.center)?;
    let (nu, nf) = nu_local(&local, &diagram)?;
    Ok(NuReport {
        f: f.to_text_in("y"),
        center: format_point(&relations.center),
        d,
        nu,
        normal_form: nf.to_poly().to_text_in("y"),
    })
}

pub fn nu_text(reports: &[NuReport]) -> String {
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            vec![
                r.f.clone(),
                r.center.clone(),
                r.d.to_string(),
                r.nu.to_string(),
                r.normal_form.clone(),
            ]
        })
        .collect();
    aligned(&["F", "b", "d", "nu", "normal form (local)"], &rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductTriple {
    pub f: String,
    pub g: String,
    pub nu_f: Censored,
    pub nu_g: Censored,
    pub nu_fg: Censored,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductReport {
    pub center: String,
    pub d: u32,
    pub max_degree: u32,
    pub seed: u64,
    /// Accepted pairs, all three orders exact.
    pub triples: Vec<ProductTriple>,
    /// Drawn pairs dropped because some order was censored.
    pub excluded: usize,
    /// Envelope of `ν(FG) <= α(ν(F) + ν(G)) + β` over the accepted pairs.
    pub fit: Option<LinearBound>,
    pub exploratory: bool,
}

/// `(ν(F), ν(G), ν(FG))` for `F`, `G` given in local coordinates.
pub fn product_triple(
    f_local: &Poly,
    g_local: &Poly,
    diagram: &Diagram,
) -> Result<(Censored, Censored, Censored)> {
    let fg = f_local * g_local;
    Ok((
        nu_local(f_local, diagram)?.0,
        nu_local(g_local, diagram)?.0,
        nu_local(&fg, diagram)?.0,
    ))
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize, max_degree: u32, gens: &[Poly]) -> Poly {
    loop {
        let mut p = Poly::zero(n);
        let monomial = |rng: &mut ChaCha8Rng, deg: u32| {
            let choices = of_degree(n, deg);
            choices[rng.gen_range(0..choices.len())].clone()
        };
        let coeff = |rng: &mut ChaCha8Rng| {
            let c = rng.gen_range(1..=5);
            int(if rng.gen_bool(0.5) { c } else { -c })
        };
        if !gens.is_empty() && rng.gen_ratio(1, 8) {
            let g = &gens[rng.gen_range(0..gens.len())];
            let deg = rng.gen_range(0..=1);
            p = g * &Poly::monomial(n, coeff(rng), monomial(rng, deg));
        } else {
            for _ in 0..rng.gen_range(1..=3) {
                let deg = rng.gen_range(0..=max_degree);
                p.add_term(monomial(rng, deg), coeff(rng));
            }
        }
        if !p.is_zero() {
            return p;
        }
    }
}

/// Draws random `F, G` of degree `<= max_degree` in local coordinates until
/// `trials` pairs have all three orders exact, then fits the envelope.
pub fn product_estimate_probe(
    relations: &IdealPresentation,
    trials: usize,
    seed: u64,
    d: u32,
    max_degree: u32,
) -> Result<ProductReport> {
    let n = relations.arity();
    let diagram = diagram_from_generators(relations, d)?;
    let gens = relations.recentered()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut triples = Vec::new();
    let mut excluded = 0;
    let budget = trials.saturating_mul(50).max(1);
    for _ in 0..budget {
        if triples.len() >= trials {
            break;
        }
        let f = random_poly(&mut rng, n, max_degree, &gens);
        let g = random_poly(&mut rng, n, max_degree, &gens);
        let (nf, ng, nfg) = product_triple(&f, &g, &diagram)?;
        if nf.is_censored() || ng.is_censored() || nfg.is_censored() {
            excluded += 1;
            continue;
        }
        triples.push(ProductTriple {
            f: f.to_text_in("y"),
            g: g.to_text_in("y"),
            nu_f: nf,
            nu_g: ng,
            nu_fg: nfg,
        });
    }
    let pts: Vec<(u32, Censored)> = triples
        .iter()
        .map(|t| (t.nu_f.bound() + t.nu_g.bound(), t.nu_fg))
        .collect();
    let fit = if pts.is_empty() { None } else { Some(fit_linear_bound(&pts)?) };
    Ok(ProductReport {
        center: format_point(&relations.center),
        d,
        max_degree,
        seed,
        triples,
        excluded,
        fit,
        exploratory: true,
    })
}

impl ProductReport {
    pub fn text(&self) -> String {
        let mut out = format!(
            "product probe at ({}), d = {}, {} pairs accepted, {} excluded (exploratory)\n",
            self.center,
            self.d,
            self.triples.len(),
            self.excluded
        );
        match &self.fit {
            Some(b) => {
                let _ = writeln!(out, "envelope: alpha = {}, beta = {}", b.alpha, b.beta);
            }
            None => out.push_str("envelope: none\n"),
        }
        let rows: Vec<Vec<String>> = self
            .triples
            .iter()
            .map(|t| {
                vec![
                    t.nu_f.to_string(),
                    t.nu_g.to_string(),
                    t.nu_fg.to_string(),
                    t.f.clone(),
                    t.g.clone(),
                ]
            })
            .collect();
        out.push_str(&aligned(&["nu(F)", "nu(G)", "nu(FG)", "F (local)", "G (local)"], &rows));
        out
    }
}

/// Sampling plan for [`mu_estimate`].
#[derive(Clone, Debug)]
pub struct Sampler {
    pub box_radius: f64,
    pub shrink: f64,
    pub scales: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for Sampler {
    fn default() -> Self {
        Sampler {
            box_radius: 0.5,
            shrink: 0.5,
            scales: 10,
            samples: 64,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MuVerdict {
    pub l: u32,
    /// Least-squares slope of `log max|T^l F|` against `log max|y - b|`.
    pub slope: Option<f64>,
    /// `T^l F` vanished (to rounding) on every sample.
    pub vanishes: bool,
    pub verdict: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct MuReport {
    pub f: String,
    pub b: String,
    pub label: &'static str,
    pub verdicts: Vec<MuVerdict>,
    pub warnings: Vec<String>,
}

const SLOPE_SLACK: f64 = 0.1;
const RELATIVE_ZERO: f64 = 1e-9;

fn eval_f64(p: &Poly, x: &[f64]) -> f64 {
    p.terms()
        .iter()
        .map(|(m, c)| {
            m.exps()
                .iter()
                .zip(x)
                .fold(to_f64(c), |acc, (&e, &v)| acc * v.powi(e as i32))
        })
        .sum()
}

fn eval_abs_f64(p: &Poly, x: &[f64]) -> f64 {
    p.terms()
        .iter()
        .map(|(m, c)| {
            m.exps()
                .iter()
                .zip(x)
                .fold(to_f64(c).abs(), |acc, (&e, &v)| acc * v.abs().powi(e as i32))
        })
        .sum()
}

fn slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(sxy / sxx)
}

/// Floating-point estimate of which `l` satisfy
/// `|T^l_b F(y)| <= C |y - b|^l` on the image near the fibre points.
///
/// Samples `x` uniformly in boxes of radius `box_radius * shrink^j` around
/// every point of the tuple, maps them through `φ`, and regresses the log of
/// the largest `|T^l_b F|` against the log of the largest `|y - b|`. A slope
/// of at least `l - 0.1` reads as bounded. This certifies nothing.
pub fn mu_estimate(
    f: &Poly,
    map: &PolyMap,
    tuple: &FibredTuple,
    l_range: (u32, u32),
    sampler: &Sampler,
) -> Result<MuReport> {
    if f.arity() != map.target_arity() {
        return Err(Error::input("F does not live on the target of the map"));
    }
    if l_range.0 > l_range.1 {
        return Err(Error::input("empty l range"));
    }
    if !(sampler.shrink > 0.0 && sampler.shrink < 1.0) || sampler.box_radius <= 0.0 {
        return Err(Error::input("sampler needs box_radius > 0 and 0 < shrink < 1"));
    }
    let b = tuple.image();
    let b64: Vec<f64> = b.iter().map(to_f64).collect();
    let local = f.shift(b)?;
    let comps = map.components();
    let mut rng = ChaCha8Rng::seed_from_u64(sampler.seed);
    let mut warnings = Vec::new();

    // deltas[j] = sampled y - b at scale j
    let mut deltas: Vec<Vec<Vec<f64>>> = Vec::with_capacity(sampler.scales);
    let mut radius = sampler.box_radius;
    for j in 0..sampler.scales {
        let mut ds = Vec::new();
        for a in tuple.points() {
            let a64: Vec<f64> = a.iter().map(to_f64).collect();
            for _ in 0..sampler.samples {
                let x: Vec<f64> = a64
                    .iter()
                    .map(|&ai| ai + radius * rng.gen_range(-1.0..=1.0))
                    .collect();
                ds.push(
                    comps
                        .iter()
                        .zip(&b64)
                        .map(|(c, bi)| eval_f64(c, &x) - bi)
                        .collect(),
                );
            }
        }
        if ds.iter().all(|d: &Vec<f64>| d.iter().all(|v| *v == 0.0)) {
            warnings.push(format!(
                "scale {j}: every sample maps to b; b looks isolated in the sampled image"
            ));
        }
        deltas.push(ds);
        radius *= sampler.shrink;
    }

    let verdicts = (l_range.0..=l_range.1)
        .map(|l| {
            let t = Poly::from_terms(
                local.arity(),
                local
                    .terms()
                    .iter()
                    .filter(|(m, _)| m.degree() <= l)
                    .map(|(m, c)| (m.clone(), c.clone())),
            );
            let mut vanishes = true;
            let mut pts = Vec::new();
            for ds in &deltas {
                let mut max_t: f64 = 0.0;
                let mut max_d: f64 = 0.0;
                for d in ds {
                    let v = eval_f64(&t, d).abs();
                    let scale = eval_abs_f64(&t, d);
                    if v > RELATIVE_ZERO * scale {
                        vanishes = false;
                        max_t = max_t.max(v);
                    }
                    max_d = max_d.max(d.iter().map(|x| x * x).sum::<f64>().sqrt());
                }
                if max_t > 0.0 && max_d > 0.0 {
                    pts.push((max_d.ln(), max_t.ln()));
                }
            }
            let s = slope(&pts);
            let verdict = if vanishes {
                "bounded"
            } else {
                match s {
                    Some(s) if s >= l as f64 - SLOPE_SLACK => "bounded",
                    Some(_) => "unbounded",
                    None => "undetermined",
                }
            };
            MuVerdict {
                l,
                slope: s,
                vanishes,
                verdict,
            }
        })
        .collect();
    Ok(MuReport {
        f: f.to_text_in("y"),
        b: format_point(b),
        label: "HEURISTIC",
        verdicts,
        warnings,
    })
}

impl MuReport {
    pub fn text(&self) -> String {
        let mut out = format!("mu estimate of {} at ({}), {}\n", self.f, self.b, self.label);
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        let rows: Vec<Vec<String>> = self
            .verdicts
            .iter()
            .map(|v| {
                vec![
                    v.l.to_string(),
                    v.slope.map(|s| format!("{s:.3}")).unwrap_or_else(|| "-".into()),
                    v.vanishes.to_string(),
                    v.verdict.to_string(),
                ]
            })
            .collect();
        out.push_str(&aligned(&["l", "slope", "vanishes", "verdict"], &rows));
        out
    }
}

/// Relations and sampler settings a scenario's probes point at.
pub fn nu_reports(sc: &Scenario) -> Result<Vec<NuReport>> {
    sc.nu
        .iter()
        .map(|p| {
            let rel = sc.relations_at(&p.at)?;
            let f = Poly::parse_in(&p.f, "y", sc.map.n())?;
            nu_probe(&f, rel, p.d.unwrap_or(sc.l_max))
        })
        .collect()
}

pub fn mu_reports(sc: &Scenario) -> Result<Vec<MuReport>> {
    sc.mu
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let tuple = sc.tuple_by_key(&p.at)?;
            let f = Poly::parse_in(&p.f, "y", sc.map.n())?;
            let sampler = Sampler {
                box_radius: p.box_radius,
                shrink: p.shrink,
                scales: p.scales,
                samples: p.samples,
                seed: sc.seed.wrapping_add(i as u64),
            };
            mu_estimate(&f, &sc.map.map, tuple, (p.l_range[0], p.l_range[1]), &sampler)
        })
        .collect()
}

pub fn product_reports(sc: &Scenario) -> Result<Vec<ProductReport>> {
    sc.product
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let rel = sc.relations_at(&p.at)?;
            let d = p.d.unwrap_or(2 * p.max_degree + 2);
            product_estimate_probe(rel, p.trials, sc.seed.wrapping_add(i as u64), d, p.max_degree)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct JetReport {
    pub tuple: String,
    pub l: u32,
    pub rank: usize,
    /// `(k, d^{lk})` for the scenario's `k` range.
    pub d_lk: Vec<(u32, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixJson>,
}

/// `J^{l_max}` at every tuple; the full matrix only when `dump` is set.
pub fn jet_reports(sc: &Scenario, dump: bool) -> Result<Vec<JetReport>> {
    let sites = build_sites(sc)?;
    sites
        .iter()
        .map(|site| {
            let j = site.jet(sc.l_max)?;
            let d_lk = sc
                .ks()
                .into_iter()
                .map(|k| Ok((k, site.d_lk(sc.l_max, k)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(JetReport {
                tuple: site.tuple().label(),
                l: sc.l_max,
                rank: j.entries().rank(),
                d_lk,
                matrix: dump.then(|| j.entries().to_json()),
            })
        })
        .collect()
}

pub fn jet_text(reports: &[JetReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = writeln!(out, "tuple {}  l = {}  rank = {}", r.tuple, r.l, r.rank);
        for (k, d) in &r.d_lk {
            let _ = writeln!(out, "  d^({},{k}) = {d}", r.l);
        }
        if let Some(m) = &r.matrix {
            let rows: Vec<Vec<String>> = m.entries.clone();
            let label = |e: &Vec<u32>| {
                format!("({})", e.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
            };
            let header: Vec<String> = match &m.col_labels {
                Some(ls) => ls.iter().map(label).collect(),
                None => (0..m.cols).map(|c| format!("c{c}")).collect(),
            };
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            out.push_str(&aligned(&header, &rows));
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagramReport {
    pub tuple: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagram: Option<DiagramJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// The diagram at every tuple: from the supplied relations up to `l_max`,
/// otherwise from the stabilized `R^{k_max}` and labeled unverified.
pub fn diagram_reports(sc: &Scenario) -> Result<Vec<DiagramReport>> {
    let sites = build_sites(sc)?;
    sites
        .iter()
        .map(|site| {
            let label = site.tuple().label();
            if let Some(rel) = sc.relations_for(site.tuple()) {
                let d = diagram_from_generators(rel, sc.l_max)?;
                return Ok(DiagramReport {
                    tuple: label,
                    diagram: Some(d.to_json()),
                    note: None,
                });
            }
            let rk = rk_stabilize(site, sc.k_max, sc.window, None)
                .map_err(|e| e.context(&row_context(site, sc.k_max)))?;
            if rk.status == RkStatus::Inconclusive {
                return Ok(DiagramReport {
                    tuple: label,
                    diagram: None,
                    note: Some(format!("E^(l,{}) did not settle by l = {}", sc.k_max, sc.l_max)),
                });
            }
            let basis = MonomialBasis::new(site.n(), sc.k_max);
            let d = Diagram::from_jet_subspace(basis, rk.subspace, DiagramOrigin::Stabilized)?;
            Ok(DiagramReport {
                tuple: label,
                diagram: Some(d.to_json()),
                note: None,
            })
        })
        .collect()
}

pub fn diagram_text(reports: &[DiagramReport]) -> String {
    let mut out = String::new();
    for r in reports {
        match (&r.diagram, &r.note) {
            (Some(d), _) => {
                let verts: Vec<String> = d
                    .vertices
                    .iter()
                    .map(|v| format!("({})", v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")))
                    .collect();
                let _ = writeln!(
                    out,
                    "tuple {}  d = {}  {}{}\n  vertices: {}\n  basis: {}",
                    r.tuple,
                    d.truncation_degree,
                    d.status,
                    if d.provisional { ", provisional" } else { "" },
                    verts.join(" "),
                    d.reduced_basis.join("; ")
                );
            }
            (None, note) => {
                let _ = writeln!(out, "tuple {}  {}", r.tuple, note.clone().unwrap_or_default());
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub tuple: String,
    pub certified: bool,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub map: String,
    pub checks: Vec<Check>,
    pub certified_failures: usize,
    pub heuristic_failures: usize,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.certified_failures == 0
    }

    pub fn text(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .checks
            .iter()
            .map(|c| {
                vec![
                    if c.passed { "PASS" } else { "FAIL" }.to_string(),
                    if c.certified { "certified" } else { "heuristic" }.to_string(),
                    c.tuple.clone(),
                    c.name.clone(),
                    c.detail.clone(),
                ]
            })
            .collect();
        let mut out = aligned(&["result", "kind", "tuple", "check", "detail"], &rows);
        let _ = writeln!(
            out,
            "{} checks, {} certified failures, {} heuristic failures",
            self.checks.len(),
            self.certified_failures,
            self.heuristic_failures
        );
        out
    }
}

struct Checks<'a> {
    tuple: &'a str,
    out: Vec<Check>,
}

impl Checks<'_> {
    fn push(&mut self, name: impl Into<String>, certified: bool, passed: bool, detail: impl Into<String>) {
        self.out.push(Check {
            name: name.into(),
            tuple: self.tuple.to_string(),
            certified,
            passed,
            detail: detail.into(),
        });
    }
}

fn verify_site(sc: &Scenario, site: &Site) -> Result<Vec<Check>> {
    let label = site.tuple().label();
    let mut c = Checks {
        tuple: &label,
        out: Vec::new(),
    };
    let rel = sc.relations_for(site.tuple());
    let diagram = match rel {
        Some(r) => Some(diagram_from_generators(r, sc.l_max)?),
        None => None,
    };
    let mut prev_l: Option<(u32, Censored)> = None;
    for k in sc.ks() {
        let (entry, rk) = match chevalley_entry(site, k, sc.window, rel) {
            Ok(v) => v,
            Err(Error::Certified(msg)) => {
                c.push(format!("R^k agreement, k = {k}"), true, false, msg);
                continue;
            }
            Err(e) => return Err(e.context(&row_context(site, k))),
        };

        let mut antitone = true;
        for l in k..sc.l_max {
            if !site.e_lk(l, k)?.contains(&site.e_lk(l + 1, k)?)? {
                antitone = false;
                c.push(format!("E chain antitone, k = {k}"), true, false, format!("E^({},{k}) not inside E^({l},{k})", l + 1));
            }
        }
        if antitone {
            c.push(format!("E chain antitone, k = {k}"), true, true, format!("l = {k}..{}", sc.l_max));
        }

        if rk.status != RkStatus::Inconclusive {
            let mut bad = Vec::new();
            for l in k..=sc.l_max {
                let d = site.d_lk(l, k)?;
                let reached = l >= entry.l.bound();
                if d > entry.h || (d == entry.h) != reached {
                    bad.push(format!("l = {l}: d = {d}, H = {}", entry.h));
                }
            }
            c.push(
                format!("d^(l,k) <= H(k), equality from l(a,k), k = {k}"),
                true,
                bad.is_empty(),
                if bad.is_empty() { format!("H = {}, l = {}", entry.h, entry.l) } else { bad.join("; ") },
            );
        }

        if let (Some(r), Some(diagram)) = (rel, &diagram) {
            let max_deg = r.recentered()?.iter().filter_map(Poly::degree).max().unwrap_or(0);
            let hd = diagram_from_generators(r, k.max(max_deg))?;
            let h = hs_from_diagram(&hd, k)?;
            c.push(
                format!("Hilbert-Samuel routes, k = {k}"),
                true,
                h == entry.h,
                format!("diagram {h}, jets {}", entry.h),
            );
            let t = diagram_threshold(site, k, diagram)?;
            c.push(
                format!("diagram route threshold, k = {k}"),
                true,
                t == entry.l,
                format!("diagram {t}, kernel {}", entry.l),
            );
        }

        let mut theta_bad = Vec::new();
        for l in k..=sc.l_max {
            let chk = site.theta_identities(l, k, VERIFY_THETA_CAP)?;
            if !chk.ok() {
                theta_bad.push(format!(
                    "l = {l}: kernel {}, rank {}",
                    chk.kernel_matches, chk.rank_matches
                ));
            }
        }
        c.push(
            format!("Theta kernel and rank, k = {k}"),
            true,
            theta_bad.is_empty(),
            if theta_bad.is_empty() { format!("l = {k}..{}", sc.l_max) } else { theta_bad.join("; ") },
        );

        if let (Some((pk, Censored::Exact(pl))), Censored::Exact(l)) = (prev_l, entry.l) {
            c.push(
                format!("l(a,k) nondecreasing, k = {pk}..{k}"),
                true,
                l >= pl,
                format!("{pl} then {l}"),
            );
        }
        prev_l = Some((k, entry.l));
    }
    Ok(c.out)
}

/// Runs every exact cross-check the scenario supports. Failed certified
/// checks are reported, not raised; input errors are raised.
pub fn verify_consistency(sc: &Scenario) -> Result<VerifyReport> {
    let sites = build_sites(sc)?;
    let per_site: Vec<Result<Vec<Check>>> = sites.par_iter().map(|s| verify_site(sc, s)).collect();
    let mut checks = Vec::new();
    for r in per_site {
        checks.extend(r?);
    }

    // ν <= μ is only literally checkable when F lies in the ideal up to the
    // truncation: then every T^l F should vanish on the image.
    for (i, p) in sc.nu.iter().enumerate() {
        let rel = sc.relations_at(&p.at)?;
        let f = Poly::parse_in(&p.f, "y", sc.map.n())?;
        let nu = nu_probe(&f, rel, p.d.unwrap_or(sc.l_max))?;
        if !nu.nu.is_censored() {
            continue;
        }
        let tuple = sc.tuple_by_key(&p.at)?;
        let sampler = Sampler {
            seed: sc.seed.wrapping_add(i as u64),
            ..Sampler::default()
        };
        let mu = mu_estimate(&f, &sc.map.map, tuple, (0, nu.nu.bound().min(6)), &sampler)?;
        let ok = mu.verdicts.iter().all(|v| v.verdict == "bounded");
        checks.push(Check {
            name: format!("nu <= mu for {}", nu.f),
            tuple: tuple.label(),
            certified: false,
            passed: ok,
            detail: format!("nu {}, mu HEURISTIC", nu.nu),
        });
    }

    let certified_failures = checks.iter().filter(|c| c.certified && !c.passed).count();
    let heuristic_failures = checks.iter().filter(|c| !c.certified && !c.passed).count();
    Ok(VerifyReport {
        map: sc.map.name.clone(),
        checks,
        certified_failures,
        heuristic_failures,
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn table_csv(rows: &[ChevalleyEntry]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::input(format!("csv: {e}")))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::input(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn table_text(rows: &[ChevalleyEntry]) -> String {
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.map.clone(),
                r.tuple.clone(),
                r.k.to_string(),
                r.l.to_string(),
                r.h.to_string(),
                serde_json::to_value(r.status)
                    .ok()
                    .and_then(|v| v.as_str().map(str::to_string))
                    .unwrap_or_default(),
                r.l_stab.map(|v| v.to_string()).unwrap_or_else(|| "-".into()),
            ]
        })
        .collect();
    aligned(&["map", "tuple", "k", "l", "H", "status", "l_stab"], &body)
}

fn aligned(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let mut s = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}
