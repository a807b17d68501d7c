//! Shared fixtures for the integration tests: the seeded random corpus, an
//! exact factorial-ratio oracle and a binary runner.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::process::Command;

use facratio::arith::IntMatrix;
use facratio::GammaList;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CORPUS_SEED: u64 = 0x6661_6372;
pub const CORPUS_SIZE: usize = 200;

/// `CORPUS_SIZE` distinct valid gamma lists, entries in `[−12, 12]`,
/// length 3..=6 (so `d ≤ 4`).
pub fn random_corpus() -> Vec<GammaList> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    while out.len() < CORPUS_SIZE {
        let l = rng.gen_range(3..=6);
        let mut v: Vec<i64> = (0..l - 1)
            .map(|_| loop {
                let x = rng.gen_range(-12..=12);
                if x != 0 {
                    break x;
                }
            })
            .collect();
        let last = -v.iter().sum::<i64>();
        if last == 0 || last.abs() > 12 {
            continue;
        }
        v.push(last);
        let g = match GammaList::new(v.clone()).or_else(|_| GammaList::new_flipped(v)) {
            Ok(g) => g,
            Err(_) => continue,
        };
        if seen.insert(g.entries().to_vec()) {
            out.push(g);
        }
    }
    out
}

/// Smallest-prime-factor table on `0..=n`.
pub fn spf_sieve(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            for j in (i..=n).step_by(i) {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
            }
        }
    }
    spf
}

/// Integrality of `c_1, …, c_nmax`, tracked as exact prime exponents of
/// `c_n` updated from `c_{n−1}` one factor at a time.
pub fn integrality_ledger(g: &GammaList, nmax: u64, spf: &[u32]) -> Vec<bool> {
    let top = g.entries().iter().map(|x| x.unsigned_abs()).max().unwrap() * nmax;
    assert!(spf.len() as u64 > top, "sieve too small");
    let mut exps = vec![0i64; top as usize + 1];
    let mut negative = 0usize;
    let mut out = Vec::with_capacity(nmax as usize);
    for n in 1..=nmax {
        for &gi in g.entries() {
            let a = gi.unsigned_abs();
            // negative entries sit in the numerator
            let sign = if gi < 0 { 1 } else { -1 };
            for mut m in a * (n - 1) + 1..=a * n {
                while m > 1 {
                    let p = spf[m as usize] as u64;
                    let mut e = 0;
                    while m % p == 0 {
                        m /= p;
                        e += 1;
                    }
                    let slot = &mut exps[p as usize];
                    let before = *slot < 0;
                    *slot += sign * e;
                    match (before, *slot < 0) {
                        (false, true) => negative += 1,
                        (true, false) => negative -= 1,
                        _ => {}
                    }
                }
            }
        }
        out.push(negative == 0);
    }
    out
}

/// A small random unimodular matrix: permutation, sign flips and a few
/// elementary row operations.
pub fn random_unimodular(d: usize, rng: &mut ChaCha8Rng) -> IntMatrix {
    let mut rows: Vec<Vec<i64>> = (0..d)
        .map(|i| (0..d).map(|j| i64::from(i == j)).collect())
        .collect();
    for i in (1..d).rev() {
        rows.swap(i, rng.gen_range(0..=i));
    }
    for row in rows.iter_mut() {
        if rng.gen_bool(0.5) {
            row.iter_mut().for_each(|x| *x = -*x);
        }
    }
    if d > 1 {
        for _ in 0..3 {
            let i = rng.gen_range(0..d);
            let j = (i + rng.gen_range(1..d)) % d;
            let c = if rng.gen_bool(0.5) { 1 } else { -1 };
            let src = rows[j].clone();
            rows[i].iter_mut().zip(&src).for_each(|(a, b)| *a += c * b);
        }
    }
    IntMatrix::from_rows_i64(&rows)
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Run the built binary.
pub fn facratio(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_facratio"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

pub fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let r = facratio(&full);
    let v = serde_json::from_str(&r.stdout)
        .unwrap_or_else(|e| panic!("bad JSON from {args:?}: {e}\n{}", r.stdout));
    (r.code, v)
}
