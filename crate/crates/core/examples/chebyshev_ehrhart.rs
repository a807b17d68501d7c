//! Lattice points in dilates of the Chebyshev circuit polytope, and the δ
//! vector read off from them.
//!
//!     cargo run --example chebyshev_ehrhart [-- GAMMA]

use facratio::hodge::delta_closed_form;
use facratio::parse_gamma;
use facratio::polytope::{build_polytope, ehrhart_data, EnumerationBudget};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "-30,-1,6,10,15".into());
    let g = parse_gamma(&arg)?;
    let poly = build_polytope(&g);
    println!("gamma {}  d = {}", g.transcript_form(), g.dim());
    for i in 0..g.len() {
        println!("  vertex for {:>4}: {:?}", g.entries()[i], poly.vertex(i));
    }
    let e = ehrhart_data(&poly, EnumerationBudget::default())?;
    for (k, (all, inner)) in e.counts.iter().zip(&e.interior_counts[..]).enumerate() {
        println!("  k = {k}: #(kΔ) = {all:>5}, interior of ({})Δ: {inner}", k + 1);
    }
    println!("δ from counts   {}", e.delta_poly());
    println!("δ closed form   {}", delta_closed_form(&g)?);
    println!("codegree {}  vol {}", e.codegree, g.vol());
    Ok(())
}
