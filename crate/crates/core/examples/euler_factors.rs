//! Euler factors of the Chebyshev motive at t = 2, rebuilt from traces over
//! F_{p^k} with Newton's identities.
//!
//!     cargo run --example euler_factors -- 7 23

use facratio::ffield::euler_factor;
use facratio::parse_gamma;
use num_rational::BigRational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = parse_gamma("-30,-1,6,10,15")?;
    let primes: Vec<u64> = std::env::args()
        .skip(1)
        .map(|a| a.parse())
        .collect::<Result<_, _>>()?;
    let primes = if primes.is_empty() { vec![7, 23] } else { primes };
    let t = BigRational::from_integer(2.into());
    for p in primes {
        let start = std::time::Instant::now();
        let e = euler_factor(&g, &t, p)?;
        println!(
            "p = {p:>3}  {}   traces {:?}  sign {:+}  max root defect {:.1e}  ({:.2?})",
            e.poly.display_in("x"),
            e.power_sums,
            e.sign,
            e.root_modulus_defect()?,
            start.elapsed()
        );
    }
    Ok(())
}
