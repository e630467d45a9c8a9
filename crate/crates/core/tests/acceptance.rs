//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::time::{Duration, Instant};

use chevalley::censored::Censored;
use chevalley::engine::{
    chevalley_entry, diagram_threshold, hilbert_samuel, ChevalleyEntry, RkResult, RkStatus, Site,
};
use chevalley::experiments::{
    fit_linear_bound, mu_reports, product_estimate_probe, product_reports, product_triple, to_json,
    ChevalleyReport, VERIFY_THETA_CAP,
};
use chevalley::jet::{jet_matrix, FibredTuple, PolyMapInstance};
use chevalley::matrix::Matrix;
use chevalley::multi_index::{MonomialBasis, MultiIndex};
use chevalley::poly::{Poly, PolyMap};
use chevalley::scalar::{int, parse_scalar, ratio, Scalar};
use chevalley::scenario::Scenario;
use chevalley::series::TruncatedSeries;
use chevalley::staircase::{diagram_from_generators, divide, hs_from_diagram, IdealPresentation};
use chevalley::subspace::{project_span_prefix, Subspace};
use chevalley::wedge::{ad_r, image_as_kernel_check, DEFAULT_WEDGE_CAP};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const WINDOW: u32 = 3;
const C1_LIMIT: Duration = Duration::from_secs(5);
const C2_LIMIT: Duration = Duration::from_secs(30);
const C4_LIMIT: Duration = Duration::from_secs(60);

struct Table {
    site: Site,
    rows: Vec<(ChevalleyEntry, RkResult)>,
}

type Outcome = Result<String, String>;

/// Components, source arity, relations and five points.
type Case<'a> = (&'a [&'a str], usize, &'a [&'a str], [&'a [&'a str]; 5]);

fn site(comps: &[&str], m: usize, a: Vec<Scalar>, l_max: u32) -> Site {
    let map = PolyMapInstance::new(comps.join(", "), PolyMap::parse(m, comps).unwrap());
    let tuple = FibredTuple::single(&map.map, a).unwrap();
    Site::new(map, tuple, l_max).unwrap()
}

fn pt(coords: &[&str]) -> Vec<Scalar> {
    coords.iter().map(|c| parse_scalar(c).unwrap()).collect()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `E^{lk}` of `x ↦ x²` at 0 without jets: `y^j` pulls back to `x^{2j}`,
/// which vanishes to order `l` iff `2j > l`. Kernel of the coefficient
/// matrix of those pullbacks, projected to degree `<= k`.
fn squaring_oracle(l: u32, k: u32) -> Subspace {
    let phi = Poly::parse_in("x1^2", "x", 1).unwrap();
    let cols: Vec<Vec<Scalar>> = (0..=l)
        .map(|j| {
            let p = phi.pow(j);
            (0..=l).map(|a| p.coeff(&MultiIndex::new(vec![a]))).collect()
        })
        .collect();
    let m = Matrix::from_columns(l as usize + 1, &cols).unwrap();
    project_span_prefix(&m.kernel_vectors().1, k as usize + 1)
}

fn criterion_1(tables: &mut Vec<Table>) -> Outcome {
    let start = Instant::now();
    let s = site(&["x1^2"], 1, vec![int(0)], 14);
    let mut rows = Vec::new();
    for k in 1..=6 {
        let (e, rk) = chevalley_entry(&s, k, WINDOW, None).map_err(|e| e.to_string())?;
        check(e.status == RkStatus::Stabilized, || format!("k = {k}: status {:?}", e.status))?;
        check(e.l == Censored::Exact(2 * k), || format!("k = {k}: l = {}", e.l))?;
        let oracle_l = (k..=14)
            .find(|&l| squaring_oracle(l, k).is_zero())
            .ok_or_else(|| format!("oracle never reaches zero at k = {k}"))?;
        check(oracle_l == 2 * k, || format!("k = {k}: oracle gives {oracle_l}"))?;
        for (i, e) in rk.chain.iter().enumerate() {
            let l = k + i as u32;
            check(*e == squaring_oracle(l, k), || format!("E^({l},{k}) differs from the oracle"))?;
        }
        rows.push((e, rk));
    }
    let took = start.elapsed();
    tables.push(Table { site: s, rows });
    check(took < C1_LIMIT, || format!("took {took:.2?}"))?;
    Ok(format!("l = 2,4,..,12, STABILIZED, oracle agrees, {took:.2?}"))
}

fn criterion_2(tables: &mut Vec<Table>) -> Outcome {
    let start = Instant::now();
    let s = site(&["x1^2", "x1^3"], 1, vec![int(0)], 12);
    let rel = IdealPresentation::parse(&["y1^3 - y2^2"], vec![int(0), int(0)]).unwrap();
    let mut rows = Vec::new();
    for k in 1..=5 {
        let (e, rk) = chevalley_entry(&s, k, WINDOW, Some(&rel)).map_err(|e| e.to_string())?;
        check(e.status == RkStatus::Verified, || format!("k = {k}: status {:?}", e.status))?;
        check(e.l == Censored::Exact(2 * k + 1), || format!("k = {k}: l = {}", e.l))?;
        rows.push((e, rk));
    }
    let fit = fit_linear_bound(&rows.iter().map(|(e, _)| (e.k, e.l)).collect::<Vec<_>>())
        .map_err(|e| e.to_string())?;
    check((fit.alpha, fit.beta) == (2, 1), || format!("fit ({}, {})", fit.alpha, fit.beta))?;
    let took = start.elapsed();
    tables.push(Table { site: s, rows });
    check(took < C2_LIMIT, || format!("took {took:.2?}"))?;
    Ok(format!("l = 3,5,7,9,11 VERIFIED, fit (2, 1), {took:.2?}"))
}

fn criterion_3(tables: &mut Vec<Table>) -> Outcome {
    let start = Instant::now();
    let cases: [Case; 4] = [
        (&["x1", "x2"], 2, &[], [&["0", "0"], &["1", "-1"], &["1/2", "3"], &["-2", "0"], &["2/3", "1/5"]]),
        (&["x1^2"], 1, &[], [&["0"], &["1/2"], &["-1"], &["2"], &["-3/2"]]),
        (&["x1^2", "x1^3"], 1, &["y1^3 - y2^2"], [&["0"], &["1/2"], &["-1"], &["2"], &["1/3"]]),
        (
            &["x1", "x1 x2", "x1 x2^2"],
            2,
            &["y1 y3 - y2^2"],
            [&["0", "0"], &["1", "0"], &["1/2", "1"], &["-2", "3/2"], &["3", "-1"]],
        ),
    ];
    let mut checks = 0;
    for (comps, m, rels, points) in cases {
        for p in points {
            let s = site(comps, m, pt(p), 10);
            let rel = IdealPresentation::parse(rels, s.tuple().image().to_vec()).unwrap();
            let diagram = diagram_from_generators(&rel, 10).map_err(|e| e.to_string())?;
            let mut rows = Vec::new();
            for k in 1..=3 {
                let (e, rk) = chevalley_entry(&s, k, WINDOW, Some(&rel)).map_err(|e| e.to_string())?;
                let t = diagram_threshold(&s, k, &diagram).map_err(|e| e.to_string())?;
                let at = || format!("{} at {} k = {k}", s.map().name, s.tuple().label());
                check(e.status == RkStatus::Verified, || format!("{}: {:?}", at(), e.status))?;
                check(t == e.l, || format!("{}: diagram {t}, kernel {}", at(), e.l))?;
                for l in k..=10 {
                    let c = s.theta_identities(l, k, VERIFY_THETA_CAP).map_err(|e| e.to_string())?;
                    check(c.ok(), || format!("{}: Theta at l = {l}: {c:?}", at()))?;
                    checks += 1;
                }
                rows.push((e, rk));
            }
            tables.push(Table { site: s, rows });
        }
    }
    Ok(format!("20 sites, {checks} Theta identities, 0 mismatches, {:.2?}", start.elapsed()))
}

fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3))
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
    Matrix::from_rows((0..rows).map(|_| (0..cols).map(|_| random_scalar(rng)).collect()).collect()).unwrap()
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut ranks = [0usize; 6];
    for i in 0..500 {
        let (f, e) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        // a third of the cases are forced to low rank
        let b = if i % 3 == 0 {
            let inner = rng.gen_range(1..=f.min(e));
            random_matrix(&mut rng, f, inner).mul(&random_matrix(&mut rng, inner, e)).unwrap()
        } else {
            random_matrix(&mut rng, f, e)
        };
        let r = b.rank();
        ranks[r] += 1;
        let ad = ad_r(&b, r, DEFAULT_WEDGE_CAP).map_err(|e| e.to_string())?;
        check(image_as_kernel_check(&b).map_err(|e| e.to_string())?, || format!("case {i}: Im B != Ker ad^r B"))?;
        check(ad.mul(&b).unwrap().is_zero(), || format!("case {i}: ad^r B . B != 0"))?;
        let next = ad_r(&b, r + 1, DEFAULT_WEDGE_CAP).map_err(|e| e.to_string())?;
        check(next.is_zero(), || format!("case {i}: ad^(r+1) B != 0"))?;
    }
    let took = start.elapsed();
    check(took < C4_LIMIT, || format!("took {took:.2?}"))?;
    Ok(format!("500 matrices, ranks 0..5 seen {ranks:?}, {took:.2?}"))
}

fn random_poly(rng: &mut ChaCha8Rng, arity: usize, max_degree: u32, terms: usize) -> Poly {
    let mut p = Poly::zero(arity);
    for _ in 0..terms {
        let mut exps = vec![0u32; arity];
        for _ in 0..rng.gen_range(0..=max_degree) {
            exps[rng.gen_range(0..arity)] += 1;
        }
        p.add_term(MultiIndex::new(exps), random_scalar(rng));
    }
    p
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..200 {
        let (m, n) = (rng.gen_range(1..=2), rng.gen_range(1..=3));
        let comps = (0..n).map(|_| random_poly(&mut rng, m, 3, 3)).collect();
        let map = PolyMapInstance::new("random", PolyMap::new(m, comps).unwrap());
        let a: Vec<Scalar> = (0..m).map(|_| random_scalar(&mut rng)).collect();
        let l = rng.gen_range(0..=6);
        let tuple = FibredTuple::single(&map.map, a.clone()).unwrap();
        let j = jet_matrix(&map, &tuple, l).map_err(|e| e.to_string())?;
        // F in local coordinates at b, then written globally as F(y - b)
        let f = random_poly(&mut rng, n, l.max(1), 4);
        let coeffs: Vec<Scalar> = MonomialBasis::new(n, l).indices().iter().map(|b| f.coeff(b)).collect();
        let lhs = j.entries().apply(&coeffs).unwrap();
        let neg: Vec<Scalar> = tuple.image().iter().map(|x| -x).collect();
        let pulled = map.map.pullback(&f.shift(&neg).unwrap()).unwrap().shift(&a).unwrap();
        let rhs: Vec<Scalar> = MonomialBasis::new(m, l).indices().iter().map(|al| pulled.coeff(al)).collect();
        check(lhs == rhs, || format!("instance {i}: J.F differs from the expansion of F o phi"))?;
    }
    Ok("200 instances, 0 failures".into())
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let rel = IdealPresentation::parse(&["y1^3 - y2^2"], vec![int(0), int(0)]).unwrap();
    let n = diagram_from_generators(&rel, 8).map_err(|e| e.to_string())?;
    for i in 0..100 {
        let f = TruncatedSeries::from_poly(&random_poly(&mut rng, 2, 8, 6), 8);
        let g = TruncatedSeries::from_poly(&random_poly(&mut rng, 2, 8, 6), 8);
        let c = random_scalar(&mut rng);
        let nf = divide(&f, &n).map_err(|e| e.to_string())?;
        let bad = |what: &str| format!("instance {i}: {what}");
        check(nf.terms().keys().all(|m| !n.contains(m)), || bad("normal form touches the diagram"))?;
        let diff = f.sub(&nf).unwrap().to_coords(n.basis()).unwrap();
        check(n.ideal_span().contains_vector(&diff).unwrap(), || bad("F - NF outside the ideal"))?;
        check(divide(&nf, &n).unwrap() == nf, || bad("division not idempotent"))?;
        let lin = divide(&f.scale(&c).add(&g).unwrap(), &n).unwrap();
        let sep = nf.scale(&c).add(&divide(&g, &n).unwrap()).unwrap();
        check(lin == sep, || bad("division not linear"))?;
        if let (Some(a), Some(b)) = (f.order(), nf.order()) {
            check(b >= a, || bad("order decreased"))?;
        }
    }
    Ok("100 instances at d = 8, 0 failures".into())
}

fn criterion_7() -> Outcome {
    let s = site(&["x1^2", "x1^3"], 1, vec![int(0)], 14);
    let rel = IdealPresentation::parse(&["y1^3 - y2^2"], vec![int(0), int(0)]).unwrap();
    let n = diagram_from_generators(&rel, 6).map_err(|e| e.to_string())?;
    let mut hs = Vec::new();
    for k in 1..=6 {
        let (_, rk) = chevalley_entry(&s, k, WINDOW, Some(&rel)).map_err(|e| e.to_string())?;
        let jets = hilbert_samuel(&s, &rk).map_err(|e| e.to_string())?;
        let diag = hs_from_diagram(&n, k).map_err(|e| e.to_string())?;
        let want = 2 * k as usize + 1;
        check(jets == want && diag == want, || format!("k = {k}: jets {jets}, diagram {diag}"))?;
        hs.push(jets);
    }
    Ok(format!("H(1..6) = {hs:?} on both routes"))
}

fn criterion_8(tables: &[Table]) -> Outcome {
    let mut count = 0;
    for t in tables {
        let s = &t.site;
        let at = s.tuple().label();
        let mut prev: Option<u32> = None;
        for (e, rk) in &t.rows {
            let k = e.k;
            for l in k..s.l_max() {
                let lower = s.e_lk(l + 1, k).unwrap();
                check(s.e_lk(l, k).unwrap().contains(&lower).unwrap(), || {
                    format!("{} at {at}: E^({},{k}) not inside E^({l},{k})", s.map().name, l + 1)
                })?;
                count += 1;
            }
            let l_ak = e.l.exact().ok_or_else(|| format!("{} at {at}: censored l at k = {k}", s.map().name))?;
            if let Some(p) = prev {
                check(l_ak >= p, || format!("{} at {at}: l decreased at k = {k}", s.map().name))?;
            }
            prev = Some(l_ak);
            check(rk.status != RkStatus::Inconclusive, || format!("{} at {at}: inconclusive", s.map().name))?;
            for l in k..=s.l_max() {
                let d = s.d_lk(l, k).unwrap();
                check(d <= e.h && (d == e.h) == (l >= l_ak), || {
                    format!("{} at {at}: d^({l},{k}) = {d}, H = {}, l(a,k) = {l_ak}", s.map().name, e.h)
                })?;
                count += 1;
            }
        }
    }
    Ok(format!("{} tables, {count} comparisons, 0 violations", tables.len()))
}

fn criterion_9() -> Outcome {
    let rel = IdealPresentation::parse(&["y1^3 - y2^2"], vec![int(0), int(0)]).unwrap();
    let r = product_estimate_probe(&rel, 200, 9, 10, 4).map_err(|e| e.to_string())?;
    check(r.triples.len() == 200, || format!("only {} accepted pairs", r.triples.len()))?;
    let fit = r.fit.ok_or("no envelope")?;
    for t in &r.triples {
        check(t.nu_fg.bound() <= fit.alpha * (t.nu_f.bound() + t.nu_g.bound()) + fit.beta, || {
            format!("envelope misses {t:?}")
        })?;
    }
    let n = diagram_from_generators(&rel, 10).map_err(|e| e.to_string())?;
    let y22 = Poly::parse_in("y2^2", "y", 2).unwrap();
    let triple = product_triple(&y22, &y22, &n).map_err(|e| e.to_string())?;
    let e = Censored::Exact;
    check(triple == (e(3), e(3), e(6)), || format!("y2^2 triple {triple:?}"))?;
    Ok(format!(
        "200 pairs ({} excluded), envelope ({}, {}), nu(y2^2) = 3, nu(y2^4) = 6",
        r.excluded, fit.alpha, fit.beta
    ))
}

fn criterion_10() -> Outcome {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/scenarios/cusp.json");
    let render = || -> Result<String, String> {
        let sc = Scenario::load(std::path::Path::new(path)).map_err(|e| e.to_string())?;
        let mut out = to_json(&ChevalleyReport::build(&sc).map_err(|e| e.to_string())?).unwrap();
        out += &to_json(&product_reports(&sc).map_err(|e| e.to_string())?).unwrap();
        out += &to_json(&mu_reports(&sc).map_err(|e| e.to_string())?).unwrap();
        Ok(out)
    };
    let (a, b) = (render()?, render()?);
    check(a == b, || "outputs differ".into())?;
    Ok(format!("{} bytes identical across two runs", a.len()))
}

fn main() {
    let mut tables = Vec::new();
    let mut failed = 0;
    let mut report = |n: u32, name: &str, outcome: Outcome| {
        match outcome {
            Ok(detail) => println!("PASS  criterion {n:>2}: {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {n:>2}: {name}: {why}");
            }
        }
    };
    report(1, "squaring map l = 2k", criterion_1(&mut tables));
    report(2, "cusp l = 2k+1 verified", criterion_2(&mut tables));
    report(3, "route agreement and Theta identities", criterion_3(&mut tables));
    report(4, "wedge lemma on random matrices", criterion_4());
    report(5, "jet matrix defining property", criterion_5());
    report(6, "division identities", criterion_6());
    report(7, "Hilbert-Samuel cross-check", criterion_7());
    report(8, "monotonicity sweeps", criterion_8(&tables));
    report(9, "product-estimate probe", criterion_9());
    report(10, "determinism", criterion_10());
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 10 acceptance criteria passed");
}
