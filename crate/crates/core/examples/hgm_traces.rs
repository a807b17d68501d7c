//! Hypergeometric traces H_q(t) of the Chebyshev motive over every t in a
//! prime field, computed from Gauss sums.
//!
//!     cargo run --example hgm_traces -- 23 [k]

use facratio::ffield::{make_field, HgmTracer};
use facratio::parse_gamma;
use num_rational::BigRational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let p: u64 = args.next().map(|a| a.parse()).transpose()?.unwrap_or(23);
    let k: u32 = args.next().map(|a| a.parse()).transpose()?.unwrap_or(1);
    let g = parse_gamma("-30,-1,6,10,15")?;
    let ctx = make_field(p, k)?;
    let tracer = HgmTracer::new(&g, &ctx)?;
    println!("q = {}  generator {}", ctx.q(), ctx.generator());
    let mut values = Vec::new();
    for t in 1..p as i64 {
        let r = tracer.trace(&BigRational::from_integer(t.into()))?;
        let flag = if r.singular_fiber { "  (singular fiber)" } else { "" };
        println!("  t = {t:>3}  H = {:>4}  residual {:.1e}{flag}", r.value, r.residual);
        values.push(r.value);
    }
    println!("{values:?}");
    Ok(())
}
