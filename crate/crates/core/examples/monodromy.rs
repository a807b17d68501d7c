//! Local monodromy at 0 and ∞ as cyclotomic products, with the α/β
//! parameters of the hypergeometric series.
//!
//!     cargo run --example monodromy [-- GAMMA ...]

use facratio::{hypergeom_data, parse_gamma};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let lists = if args.is_empty() {
        vec!["-30,-1,6,10,15".to_string(), "-11,-2,1,3,4,5".to_string()]
    } else {
        args
    };
    for text in &lists {
        let g = parse_gamma(text)?;
        let h = hypergeom_data(&g);
        let show = |v: &[num_rational::Rational64]| {
            v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
        };
        println!("{}  (degree {})", g.transcript_form(), h.degree);
        println!("  q_inf = {} = {}", h.factor_string(true), h.q_inf.display_in("T"));
        println!("  q_0   = {} = {}", h.factor_string(false), h.q_zero.display_in("T"));
        println!("  alpha {}", show(&h.alpha));
        println!("  beta  {}", show(&h.beta));
        println!("  M = {}", h.m_constant);
    }
    Ok(())
}
