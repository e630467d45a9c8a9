//! ν-orders (exact), μ-orders (sampled, heuristic) and the product probe on
//! the cusp image.
//!
//! ```bash
//! cargo run --example nu_mu_probes
//! ```

use chevalley::experiments::{mu_estimate, nu_probe, product_estimate_probe, Sampler};
use chevalley::jet::FibredTuple;
use chevalley::poly::{Poly, PolyMap};
use chevalley::scalar::int;
use chevalley::staircase::IdealPresentation;

fn main() -> chevalley::Result<()> {
    let map = PolyMap::parse(1, &["x1^2", "x1^3"])?;
    let rel = IdealPresentation::parse(&["y1^3 - y2^2"], vec![int(0), int(0)])?;
    let tuple = FibredTuple::single(&map, vec![int(0)])?;

    for f in ["y2", "y2^2", "y1 + y2^2", "y1^3 - y2^2"] {
        let f = Poly::parse_in(f, "y", 2)?;
        let nu = nu_probe(&f, &rel, 10)?;
        let mu = mu_estimate(&f, &map, &tuple, (0, 4), &Sampler::default())?;
        let bounded: Vec<u32> = mu.verdicts.iter().filter(|v| v.verdict == "bounded").map(|v| v.l).collect();
        println!("{:>14}: nu = {:<4} bounded T^l for l in {bounded:?} ({})", nu.f, nu.nu.to_string(), mu.label);
    }

    let r = product_estimate_probe(&rel, 200, 1, 10, 4)?;
    let fit = r.fit.expect("some pairs are accepted");
    println!(
        "product probe: {} pairs, {} excluded, nu(FG) <= {} (nu(F) + nu(G)) + {}",
        r.triples.len(),
        r.excluded,
        fit.alpha,
        fit.beta
    );
    Ok(())
}
