//! Samples a leaf of fibred tuples and estimates the generic Chevalley
//! function along it. Values are heuristic: a finite sample can miss the
//! generic stratum.
//!
//! ```bash
//! cargo run --example generic_leaf
//! ```

use chevalley::engine::{generic_chevalley_sample, Leaf};
use chevalley::jet::PolyMapInstance;
use chevalley::poly::PolyMap;

fn main() -> chevalley::Result<()> {
    // pairs {t, -t} over the fold x ↦ x²
    let fold = PolyMapInstance::new("fold", PolyMap::parse(1, &["x1^2"])?);
    let pairs = Leaf::parse(&["t"], &[vec!["t"], vec!["-t"]])?;
    for e in generic_chevalley_sample(&fold, &pairs, &[1, 2, 3], 4, 9, 8, 3)? {
        println!("fold  k = {}: l_generic = {}  samples {}", e.k, e.l_generic, e.samples.join(" "));
    }

    // the source plane of the cone map
    let cone = PolyMapInstance::new("cone", PolyMap::parse(2, &["x1", "x1 x2", "x1 x2^2"])?);
    let plane = Leaf::parse(&["s", "t"], &[vec!["s", "t"]])?;
    for e in generic_chevalley_sample(&cone, &plane, &[1, 2], 3, 9, 6, 3)? {
        println!("cone  k = {}: l_generic = {}  d profile {:?}", e.k, e.l_generic, e.d_lk_profile);
    }
    Ok(())
}
