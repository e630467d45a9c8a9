//! Smallest linear envelopes `l(a, k) <= αk + β` for the squaring map, the
//! cusp and the cone `(x1, x1 x2, x1 x2²)` at the origin.
//!
//! ```bash
//! cargo run --example linear_bound_fit
//! ```

use chevalley::engine::{chevalley_entry, Site};
use chevalley::experiments::fit_linear_bound;
use chevalley::jet::{FibredTuple, PolyMapInstance};
use chevalley::poly::PolyMap;
use chevalley::scalar::int;
use chevalley::staircase::IdealPresentation;

/// Name, source arity, components, relations, k_max, l_max.
type Case<'a> = (&'a str, usize, &'a [&'a str], &'a [&'a str], u32, u32);

fn main() -> chevalley::Result<()> {
    let cases: [Case; 3] = [
        ("squaring", 1, &["x1^2"], &[], 4, 12),
        ("cusp", 1, &["x1^2", "x1^3"], &["y1^3 - y2^2"], 4, 10),
        ("cone", 2, &["x1", "x1 x2", "x1 x2^2"], &["y1 y3 - y2^2"], 2, 7),
    ];
    for (name, m, comps, rels, k_max, l_max) in cases {
        let map = PolyMapInstance::new(name, PolyMap::parse(m, comps)?);
        let tuple = FibredTuple::single(&map.map, vec![int(0); m])?;
        let rel = if rels.is_empty() {
            None
        } else {
            Some(IdealPresentation::parse(rels, tuple.image().to_vec())?)
        };
        let site = Site::new(map, tuple, l_max)?;
        let mut rows = Vec::new();
        for k in 1..=k_max {
            let (e, _) = chevalley_entry(&site, k, 3, rel.as_ref())?;
            rows.push((k, e.l));
        }
        let b = fit_linear_bound(&rows)?;
        let shown: Vec<String> = rows.iter().map(|(k, l)| format!("({k},{l})")).collect();
        println!("{name:>9}: {}  ->  alpha = {}, beta = {}", shown.join(" "), b.alpha, b.beta);
    }
    Ok(())
}
