//! Every valid gamma list with entries in [-B, B] and a given length,
//! classified by the Landau test and the three geometric criteria.
//!
//!     cargo run --example criteria_survey -- 8 4

use facratio::criteria::criteria_report;
use facratio::GammaList;
use rayon::prelude::*;

fn lists(bound: i64, len: usize) -> Vec<GammaList> {
    // nondecreasing tuples; the last entry closes the sum
    fn extend(prefix: &mut Vec<i64>, bound: i64, len: usize, out: &mut Vec<GammaList>) {
        if prefix.len() == len - 1 {
            let last = -prefix.iter().sum::<i64>();
            if last >= *prefix.last().unwrap() && last <= bound {
                let mut v = prefix.clone();
                v.push(last);
                if let Ok(g) = GammaList::new(v) {
                    out.push(g);
                }
            }
            return;
        }
        let lo = prefix.last().copied().unwrap_or(-bound);
        for x in lo..=bound {
            if x != 0 {
                prefix.push(x);
                extend(prefix, bound, len, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), bound, len, &mut out);
    out
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let bound: i64 = args.next().map(|a| a.parse()).transpose()?.unwrap_or(8);
    let len: usize = args.next().map(|a| a.parse()).transpose()?.unwrap_or(4);
    let all = lists(bound, len);
    let reports: Vec<_> = all.par_iter().map(criteria_report).collect::<Result<_, _>>()?;
    let mut integral = 0;
    for (g, r) in all.iter().zip(&reports) {
        assert!(r.consistent(), "criteria disagree on {}", g.comma_form());
        if r.landau_integral {
            integral += 1;
            println!("{:<28} codegree {}  Hodge {:?}", g.transcript_form(), r.codegree, r.hodge_vector);
        }
    }
    println!("{} lists, {integral} integral, all four verdicts agree", all.len());
    Ok(())
}
