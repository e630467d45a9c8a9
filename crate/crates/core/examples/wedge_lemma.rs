//! `Im B = Ker ad^r B` for `r = rk B`, and the operator `Θ^{lk}` whose kernel
//! is `E^{lk}`.
//!
//! ```bash
//! cargo run --example wedge_lemma
//! ```

use chevalley::engine::Site;
use chevalley::jet::{FibredTuple, PolyMapInstance};
use chevalley::matrix::Matrix;
use chevalley::poly::PolyMap;
use chevalley::scalar::int;
use chevalley::wedge::{ad_r, image_as_kernel_check, DEFAULT_WEDGE_CAP};

fn main() -> chevalley::Result<()> {
    let b = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1], &[1, 0, 1]]);
    let r = b.rank();
    let ad = ad_r(&b, r, DEFAULT_WEDGE_CAP)?;
    println!("B is 4x3 of rank {r}; ad^{r} B is {}x{}", ad.rows(), ad.cols());
    println!("ad^r B . B = 0: {}", ad.mul(&b)?.is_zero());
    println!("Im B = Ker ad^r B: {}", image_as_kernel_check(&b)?);
    println!("ad^(r+1) B = 0: {}", ad_r(&b, r + 1, DEFAULT_WEDGE_CAP)?.is_zero());

    let map = PolyMapInstance::new("cusp", PolyMap::parse(1, &["x1^2", "x1^3"])?);
    let tuple = FibredTuple::single(&map.map, vec![int(0)])?;
    let site = Site::new(map, tuple, 6)?;
    for (l, k) in [(2, 1), (3, 1), (5, 2), (6, 2)] {
        let c = site.theta_identities(l, k, DEFAULT_WEDGE_CAP)?;
        println!(
            "Theta^({l},{k}) [{:?}]: kernel = E {}, rank = d {}",
            c.form, c.kernel_matches, c.rank_matches
        );
    }
    Ok(())
}
