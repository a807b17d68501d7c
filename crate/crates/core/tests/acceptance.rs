//! End-to-end acceptance run. Criteria 1–8 go through the built binary;
//! 9 and 10 sweep the seeded random corpus through the library.
//! Prints one `criterion N: PASS|FAIL` line each and exits nonzero on any
//! failure.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use facratio::arith::IntPolynomial;
use facratio::criteria::criteria_report;
use facratio::ffield::EulerFactor;
use facratio::hodge::{delta_closed_form, hodge_summary};
use facratio::polytope::{build_polytope, ehrhart_data, EnumerationBudget};
use facratio::{factorial_ratio, GammaList};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::Value;

use common::{facratio as run, json};

const CHEB: &str = "-30,-1,6,10,15";
const THREEFOLD: &str = "-11,-2,1,3,4,5";
const FIVEFOLD: &str = "-63,-8,-2,1,4,16,21,31";

const Q7: [i64; 6] = [0, 0, 1, -1, -1, 0];
const Q23: [i64; 22] = [
    0, 0, 1, -1, 0, 0, -1, 2, -1, 0, 1, 0, -2, -2, 0, 1, 0, 0, 1, 0, -1, 1,
];

type Check = std::result::Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Check {
    ensure!(got == want, "{what}: got {got:?}, want {want:?}");
    Ok(())
}

fn s(v: &Value) -> &str {
    v.as_str().unwrap_or_default()
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .map(|a| a.iter().map(|x| s(x).to_string()).collect())
        .unwrap_or_default()
}

fn criterion_1() -> Check {
    let (code, v) = json(&["ehrhart", "--brute-force", CHEB]);
    eq("exit code", code, 0)?;
    let e = &v["ehrhart"];
    eq("counts", e["counts"].clone(), serde_json::json!([1, 19, 85, 230]))?;
    eq("delta", s(&e["delta"]), "15T^2 + 15T + 1")?;
    eq("codegree", e["codegree"].as_u64(), Some(2))
}

fn hodge_rows(v: &Value) -> Vec<(u64, u64, u64, String)> {
    v["hodge"]["table"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            (
                r["n"].as_u64().unwrap(),
                r["m_minus"].as_u64().unwrap(),
                r["m_plus"].as_u64().unwrap(),
                s(&r["delta_n_sharp"]).to_string(),
            )
        })
        .collect()
}

fn rows(spec: &[(u64, u64, u64, &str)]) -> Vec<(u64, u64, u64, String)> {
    spec.iter().map(|&(n, a, b, d)| (n, a, b, d.to_string())).collect()
}

fn criterion_2() -> Check {
    let (_, v) = json(&["hodge", CHEB]);
    let want = rows(&[
        (1, 2, 3, "1"),
        (2, 1, 2, "T"),
        (3, 1, 2, "2T"),
        (5, 1, 2, "4T"),
        (6, 1, 1, "T^2 + T"),
        (10, 1, 1, "2T^2 + 2T"),
        (15, 1, 1, "4T^2 + 4T"),
        (30, 1, 0, "8T^2"),
    ]);
    eq("per-N table", hodge_rows(&v), want)?;
    let h = &v["hodge"];
    eq("delta_sharp", s(&h["delta_sharp"]), "8T^2")?;
    eq("E-array", s(&h["e_array_text"]), "7 8 / 8 7")?;
    eq("h^{1,1}", strings(&h["hodge_vector"]), vec!["0".into(), "8".into(), "0".into()])
}

fn criterion_3() -> Check {
    let (_, v) = json(&["hodge", THREEFOLD]);
    let h = &v["hodge"];
    eq("delta_sharp", s(&h["delta_sharp"]), "5T^3 + 5T^2")?;
    eq("delta", s(&h["delta"]), "5T^3 + 6T^2 + T + 1")?;
    eq("Hodge vector", strings(&h["hodge_vector"]).join(" "), "0 5 5 0".into())?;
    eq("E-array", s(&h["e_array_text"]), "0 5 0 / 0 1 5 / 1 0 0")?;
    let start = Instant::now();
    let (_, v) = json(&["ehrhart", "--brute-force", THREEFOLD]);
    let took = start.elapsed();
    let e = &v["ehrhart"];
    eq("enumerated delta", s(&e["delta"]), "5T^3 + 6T^2 + T + 1")?;
    eq("vol", e["vol"].as_u64(), Some(13))?;
    let delta_at_one: i64 = e["delta_coeffs"].as_array().unwrap().iter().filter_map(Value::as_i64).sum();
    eq("delta(1)", delta_at_one, 13)?;
    ensure!(took < Duration::from_secs(30), "enumeration took {took:?}");
    Ok(())
}

fn criterion_4() -> Check {
    let (_, v) = json(&["hodge", FIVEFOLD]);
    let want = rows(&[
        (1, 3, 5, "1"),
        (2, 2, 2, "T^2"),
        (3, 1, 1, "T^4 + T^2"),
        (4, 1, 2, "T^3 + T^2"),
        (7, 1, 1, "6T^3"),
        (8, 1, 1, "4T^3"),
        (9, 1, 0, "3T^4 + 3T^3"),
        (16, 0, 1, "4T^4 + 4T^3"),
        (21, 1, 1, "12T^3"),
        (31, 0, 1, "15T^4 + 15T^3"),
        (63, 1, 0, "18T^4 + 18T^3"),
    ]);
    eq("per-N table", hodge_rows(&v), want)?;
    let h = &v["hodge"];
    eq("delta_sharp", s(&h["delta_sharp"]), "21T^4 + 21T^3")?;
    eq("delta", s(&h["delta"]), "22T^4 + 45T^3 + 4T^2 + T + 1")?;
    eq(
        "E-array",
        s(&h["e_array_text"]),
        "0 1 21 0 / 0 1 23 21 / 0 2 1 1 / 1 0 0 0",
    )?;
    let (_, m) = json(&["monodromy", FIVEFOLD]);
    eq("rank = delta_sharp(1)", m["monodromy"]["degree"].as_u64(), Some(42))
}

fn rationals(v: &Value) -> Vec<Rational64> {
    let mut out: Vec<Rational64> = strings(v).iter().map(|x| x.parse().unwrap()).collect();
    out.sort();
    out
}

/// α/β of the hypergeometric series straight from the factorials: `j/|γ|`
/// for `j = 1..=|γ|`, common values cancelled.
fn series_parameters(entries: &[i64]) -> (Vec<Rational64>, Vec<Rational64>) {
    let mut count: BTreeMap<Rational64, i64> = BTreeMap::new();
    for &g in entries {
        for j in 1..=g.abs() {
            *count.entry(Rational64::new(j, g.abs())).or_default() += if g < 0 { 1 } else { -1 };
        }
    }
    let (mut alpha, mut beta) = (Vec::new(), Vec::new());
    for (x, c) in count {
        let target = if c > 0 { &mut alpha } else { &mut beta };
        target.extend(std::iter::repeat_n(x, c.unsigned_abs() as usize));
    }
    (alpha, beta)
}

fn criterion_5() -> Check {
    let (_, c) = json(&["monodromy", CHEB]);
    let c = &c["monodromy"];
    eq("Chebyshev q_inf", s(&c["q_inf"]), "Φ_30")?;
    eq("Chebyshev q_0", s(&c["q_zero"]), "Φ_1·Φ_2·Φ_3·Φ_5")?;
    let (_, t) = json(&["monodromy", THREEFOLD]);
    let t = &t["monodromy"];
    eq("threefold q_inf", s(&t["q_inf"]), "Φ_11")?;
    // The printed threefold q_0 has Φ_1 to the first power; the factorials
    // force Φ_1^2 (degrees must add up to 10).
    eq("threefold q_0", s(&t["q_zero"]), "Φ_1^2·Φ_3·Φ_4·Φ_5")?;
    let (_, f) = json(&["monodromy", FIVEFOLD]);
    // The printed fivefold q_inf omits Φ_9; derived from the -63 entry.
    eq("fivefold q_inf", s(&f["monodromy"]["q_inf"]), "Φ_9·Φ_63")?;
    for (name, v, g) in [("Chebyshev", c, CHEB), ("threefold", t, THREEFOLD)] {
        let entries: Vec<i64> = g.split(',').map(|x| x.parse().unwrap()).collect();
        let (mut alpha, mut beta) = series_parameters(&entries);
        alpha.sort();
        beta.sort();
        ensure!(beta.contains(&Rational64::from(1)), "{name}: no lower parameter 1");
        eq(&format!("{name} alpha"), rationals(&v["alpha"]), alpha)?;
        eq(&format!("{name} beta"), rationals(&v["beta"]), beta)?;
    }
    Ok(())
}

fn trace_values(q: u64) -> Result<Vec<i64>, String> {
    let r = run(&["trace", CHEB, "--t", &format!("1..{}", q - 1), "--p", &q.to_string()]);
    ensure!(r.code == 0, "trace exited {}: {}", r.code, r.stderr);
    Ok(r.stdout.split_whitespace().map(|x| x.parse().unwrap()).collect())
}

fn criterion_6() -> Check {
    eq("q = 7", trace_values(7)?, Q7.to_vec())?;
    eq("q = 23", trace_values(23)?, Q23.to_vec())
}

fn criterion_7() -> Check {
    for q in [7u64, 23] {
        let h = trace_values(q)?;
        let (code, v) = json(&[
            "count",
            "--family",
            "chebyshev_surface",
            "--t",
            &format!("1..{}", q - 1),
            "--q",
            &q.to_string(),
            CHEB,
        ]);
        eq("exit code", code, 0)?;
        let counts = v["counts"].as_array().unwrap();
        eq("rows", counts.len() as u64, q - 1)?;
        for (i, row) in counts.iter().enumerate() {
            let want = (q * q) as i64 + q as i64 * h[i] + 1;
            eq(&format!("q = {q}, t = {}", i + 1), row["count"].as_i64().unwrap(), want)?;
        }
    }
    Ok(())
}

fn criterion_8() -> Check {
    for (p, want) in [(7u64, "x^8 + x^5 + x^3 + 1"), (23, "x^8 - x^4 + 1")] {
        let (code, v) = json(&["euler", CHEB, "--t", "2", "--p", &p.to_string()]);
        eq("exit code", code, 0)?;
        let e = &v["euler"];
        eq(&format!("p = {p}"), s(&e["poly"]), want)?;
        let coeffs: Vec<BigInt> = strings(&e["coeffs"]).iter().map(|c| c.parse().unwrap()).collect();
        let factor = EulerFactor {
            poly: IntPolynomial::new(coeffs),
            p,
            t: BigRational::from_integer(2.into()),
            weight: e["weight"].as_u64().unwrap() as usize,
            sign: e["sign"].as_i64().unwrap() as i8,
            power_sums: vec![],
        };
        let defect = factor.root_modulus_defect().map_err(|e| e.to_string())?;
        ensure!(defect < 1e-9, "p = {p}: roots off the unit circle by {defect:e}");
    }
    Ok(())
}

fn criterion_9() -> Check {
    let corpus = common::random_corpus();
    let worst = corpus.iter().map(|g| g.entries().iter().map(|x| x.unsigned_abs()).max().unwrap() * 3 * g.lcm()).max().unwrap();
    let spf = common::spf_sieve(worst as usize);
    let failures: Vec<String> = corpus
        .par_iter()
        .filter_map(|g| {
            let rep = match criteria_report(g) {
                Ok(r) => r,
                Err(e) => return Some(format!("{}: {e}", g.comma_form())),
            };
            if !rep.consistent() {
                return Some(format!("{}: criteria disagree {rep:?}", g.comma_form()));
            }
            let ledger = common::integrality_ledger(g, 3 * g.lcm(), &spf);
            for (n, &ok) in ledger.iter().enumerate().take(12) {
                let direct = factorial_ratio(g, n as u64 + 1).is_integer();
                if direct != ok {
                    return Some(format!("{}: ledger wrong at n = {}", g.comma_form(), n + 1));
                }
            }
            let all = ledger.iter().all(|&b| b);
            (all != rep.landau_integral).then(|| {
                format!("{}: landau {} but c_n integral {all}", g.comma_form(), rep.landau_integral)
            })
        })
        .collect();
    ensure!(failures.is_empty(), "{}", failures.join("; "));
    let integral = corpus.iter().filter(|g| facratio::landau_check(g).integral).count();
    println!("    corpus: {} lists, {integral} integral", corpus.len());
    Ok(())
}

fn invariants(g: &GammaList, seed: u64) -> Check {
    let name = g.comma_form();
    let h = hodge_summary(g).map_err(|e| format!("{name}: {e}"))?;
    eq(&format!("{name} delta(1)"), h.delta.at_one(), BigInt::from(g.vol()))?;
    let d = g.dim();
    let rev = h.delta_sharp.reverse(d + 1).map_err(|e| e.to_string())?;
    eq(&format!("{name} delta_sharp palindromy"), &rev, &h.delta_sharp)?;
    let variants = delta_closed_form(g).map_err(|e| format!("{name}: variants {e}"))?;
    eq(&format!("{name} variant"), &variants, &h.delta)?;
    let via_e = &h.e_poly.at_b_one().shift(1) + &IntPolynomial::one();
    eq(&format!("{name} T·E(T,1)+1"), &via_e, &h.delta)?;
    let poly = build_polytope(g);
    let base = ehrhart_data(&poly, EnumerationBudget::default()).map_err(|e| format!("{name}: {e}"))?;
    eq(&format!("{name} enumeration"), &base.delta_poly(), &h.delta)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..5 {
        let u = common::random_unimodular(d, &mut rng);
        let shift: Vec<i64> = (0..d).map(|_| rng.gen_range(-3..=3)).collect();
        let moved = poly.transformed(&u, &shift).map_err(|e| format!("{name}: {e}"))?;
        let e = ehrhart_data(&moved, EnumerationBudget::default()).map_err(|e| format!("{name}: {e}"))?;
        eq(&format!("{name} transformed counts"), &e.counts, &base.counts)?;
        eq(&format!("{name} transformed interior"), &e.interior_counts, &base.interior_counts)?;
        eq(&format!("{name} transformed codegree"), e.codegree, base.codegree)?;
    }
    Ok(())
}

fn criterion_10() -> Check {
    let corpus = common::random_corpus();
    let failures: Vec<String> = corpus
        .par_iter()
        .enumerate()
        .filter_map(|(i, g)| invariants(g, i as u64).err())
        .collect();
    ensure!(failures.is_empty(), "{}", failures.join("; "));
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Check, u64); 10] = [
        ("Chebyshev Ehrhart counts and δ", criterion_1, 1),
        ("Chebyshev Hodge table and E-array", criterion_2, 1),
        ("cubic threefold Hodge data and enumeration", criterion_3, 31),
        ("cubic fivefold table and rank", criterion_4, 1),
        ("monodromy data and series parameters", criterion_5, 1),
        ("Chebyshev trace transcripts", criterion_6, 5),
        ("trace and point count agree", criterion_7, 10),
        ("Euler factors at p = 7, 23", criterion_8, 60),
        ("criteria equivalence on the random corpus", criterion_9, 300),
        ("structural invariants on the random corpus", criterion_10, 300),
    ];
    let mut failed = 0;
    for (i, (what, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed().as_secs_f64();
        let outcome = outcome.and_then(|()| {
            // each single CLI call pays a process start, so the per-criterion
            // limit gets one second of slack
            if took > *limit as f64 + 1.0 {
                Err(format!("took {took:.1} s, limit {limit} s"))
            } else {
                Ok(())
            }
        });
        match outcome {
            Ok(()) => println!("criterion {}: PASS ({took:.2} s) {what}", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL ({took:.2} s) {what}: {e}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
