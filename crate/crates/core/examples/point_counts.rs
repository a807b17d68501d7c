//! Point counts on the explicit families and the traces they imply, next
//! to the character-sum traces.
//!
//!     cargo run --example point_counts

use facratio::ffield::{hgm_trace, make_field, point_count_family, Family};
use num_rational::BigRational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // (family, q, t values); the fivefold is left to the slow test suite
    let runs = [
        (Family::ChebyshevSurface, 7u64, 1..7i64),
        (Family::ChebyshevSurface, 11, 2..6),
        (Family::CubicThreefold, 13, 2..8),
    ];
    for (family, q, ts) in runs {
        let g = family.gamma();
        let ctx = make_field(q, 1)?;
        println!("{family} over F_{q}");
        for t in ts {
            let t = BigRational::from_integer(t.into());
            let pc = point_count_family(&g, family, &t, &ctx, false)?;
            let h = hgm_trace(&g, &t, &ctx)?;
            println!(
                "  t = {t:>2}  #Z = {:>6}  implied H = {:>3}  character sum H = {:>3}",
                pc.count, pc.implied_trace.value, h.value
            );
        }
    }
    Ok(())
}
