//! The diagram of initial exponents of `(y1³ - y2²)`, Hironaka division
//! against it, ν-orders and the Hilbert–Samuel function.
//!
//! ```bash
//! cargo run --example diagram_division
//! ```

use chevalley::poly::Poly;
use chevalley::scalar::int;
use chevalley::series::TruncatedSeries;
use chevalley::staircase::{diagram_from_generators, divide, hs_from_diagram, nu_order, IdealPresentation};

fn main() -> chevalley::Result<()> {
    let ideal = IdealPresentation::parse(&["y1^3 - y2^2"], vec![int(0), int(0)])?;
    let d = 8;
    let n = diagram_from_generators(&ideal, d)?;
    println!("vertices: {:?}", n.vertices().iter().map(|v| v.exps().to_vec()).collect::<Vec<_>>());
    println!("provisional at d = {d}: {}", n.provisional());

    for f in ["y2^2", "y2^4", "y1 + y2^2", "y1^3 - y2^2", "y1^2 y2^3 + y2^5"] {
        let s = TruncatedSeries::from_poly(&Poly::parse_in(f, "y", 2)?, d);
        let nf = divide(&s, &n)?;
        println!("{f:>18}  ->  {:<22} nu = {}", nf.to_poly().to_text_in("y"), nu_order(&s, &n)?);
    }

    let h: Vec<usize> = (0..=6).map(|k| hs_from_diagram(&n, k)).collect::<Result<_, _>>()?;
    println!("H(0..6) = {h:?}");
    Ok(())
}
