//! Per-modulus δ_N^# tables, Hodge vectors and E-arrays for the three
//! running examples (or any lists given on the command line).
//!
//!     cargo run --example hodge_tables [-- GAMMA ...]

use facratio::hodge::hodge_summary;
use facratio::parse_gamma;

const DEFAULTS: [&str; 3] = ["-30,-1,6,10,15", "-11,-2,1,3,4,5", "-63,-8,-2,1,4,16,21,31"];

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let lists: Vec<&str> = if args.is_empty() {
        DEFAULTS.to_vec()
    } else {
        args.iter().map(String::as_str).collect()
    };
    for text in lists {
        let g = parse_gamma(text)?;
        let h = hodge_summary(&g)?;
        println!("{}", g.transcript_form());
        println!("  {:>4} {:>3} {:>3}  δ_N^#", "N", "m-", "m+");
        for row in &h.per_n_table {
            println!("  {:>4} {:>3} {:>3}  {}", row.n, row.m_minus, row.m_plus, row.delta_n_sharp);
        }
        let hv: Vec<String> = h.hodge_vector.iter().map(ToString::to_string).collect();
        println!("  δ^# = {}   δ = {}", h.delta_sharp, h.delta);
        println!("  Hodge vector {}   effective weight {}", hv.join(" "), h.effective_weight);
        println!("  E-array {}", h.e_poly.array_string());
        println!("  criterion B {}  criterion C {}\n", h.criterion_b, h.criterion_c);
    }
    Ok(())
}
