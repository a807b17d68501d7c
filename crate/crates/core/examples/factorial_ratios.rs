//! The ratios c_n themselves, and where the Landau function first dips
//! below zero when they fail to be integers.
//!
//!     cargo run --example factorial_ratios [-- GAMMA [N]]

use facratio::gamma::landau_value;
use facratio::{factorial_ratio, landau_check, parse_gamma};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let text = args.next().unwrap_or_else(|| "-5,-1,2,4".into());
    let upto: u64 = args.next().map(|a| a.parse()).transpose()?.unwrap_or(6);
    let g = parse_gamma(&text)?;
    for n in 0..=upto {
        println!("c_{n} = {}", factorial_ratio(&g, n));
    }
    let l = landau_check(&g);
    match l.witness {
        Some(x) => println!("not integral: L({x}) = {}", landau_value(&g, x)),
        None => println!("integral: L(x) >= 0 on [0, 1), minimum {}", l.min_value),
    }
    Ok(())
}
