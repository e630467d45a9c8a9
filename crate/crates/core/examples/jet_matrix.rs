//! Jet matrices of the cusp `t ↦ (t², t³)` and the spaces `E^{lk}` they cut out.
//!
//! ```bash
//! cargo run --example jet_matrix
//! ```

use chevalley::jet::{d_lk, e_lk, jet_matrix, FibredTuple, PolyMapInstance};
use chevalley::poly::PolyMap;
use chevalley::scalar::ratio;

fn main() -> chevalley::Result<()> {
    let cusp = PolyMapInstance::new("cusp", PolyMap::parse(1, &["x1^2", "x1^3"])?);

    for a in [ratio(0, 1), ratio(1, 2)] {
        let tuple = FibredTuple::single(&cusp.map, vec![a])?;
        println!("at t = {}", tuple.label());
        let j = jet_matrix(&cusp, &tuple, 4)?;
        let m = j.entries();
        for i in 0..m.rows() {
            let row: Vec<String> = m.row(i).iter().map(|v| format!("{v:>5}")).collect();
            println!("  {}", row.join(" "));
        }
        for k in 1..=3 {
            let e = e_lk(&j, k)?;
            println!("  k = {k}: dim E^(4,{k}) = {}, d^(4,{k}) = {}", e.dim(), d_lk(&j, k)?);
        }
    }

    // two points with one image: the fold x ↦ x² over y = 1
    let fold = PolyMapInstance::new("fold", PolyMap::parse(1, &["x1^2"])?);
    let pair = FibredTuple::new(&fold.map, vec![vec![ratio(1, 1)], vec![ratio(-1, 1)]])?;
    let j = jet_matrix(&fold, &pair, 3)?;
    println!("fold at {}: {} rows, d^(3,3) = {}", pair.label(), j.entries().rows(), d_lk(&j, 3)?);
    Ok(())
}
