use crate::arith::{factorize, is_prime};
use crate::error::{Error, Result};

/// Largest field size built by default.
pub const DEFAULT_FIELD_LIMIT: u64 = 1 << 24;

/// Arithmetic in `F_q`, `q = p^k`.
///
/// Elements are encoded as integers `0..q` whose base-`p` digits are the
/// coefficients of a polynomial in the root `X` of `modulus`. For `k = 1`
/// this is the usual residue. Multiplication goes through log/exp tables.
#[derive(Clone, Debug)]
pub struct FiniteFieldCtx {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, coefficients `c_0..c_k` low to high.
    modulus: Vec<u32>,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    trace: Vec<u32>,
}

/// Build `F_{p^k}` if `p^k ≤ DEFAULT_FIELD_LIMIT`.
pub fn make_field(p: u64, k: u32) -> Result<FiniteFieldCtx> {
    make_field_with_limit(p, k, DEFAULT_FIELD_LIMIT)
}

pub fn make_field_with_limit(p: u64, k: u32, limit: u64) -> Result<FiniteFieldCtx> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::Invalid("extension degree must be positive".into()));
    }
    let limit = limit.min(u32::MAX as u64);
    let q = p
        .checked_pow(k)
        .filter(|&q| q <= limit)
        .ok_or(Error::FieldLimit { p, k, limit })?;
    let (p32, q32) = (p as u32, q as u32);
    let (modulus, generator) = if k == 1 {
        (vec![0, 1], least_primitive_root(p))
    } else {
        (primitive_modulus(p, k), p32)
    };

    // exp[a] = generator^a, stepping by multiplication by the generator
    let n = (q - 1) as usize;
    let mut exp = Vec::with_capacity(n);
    let mut log = vec![u32::MAX; q as usize];
    let mut digits = vec![0u64; k as usize];
    digits[0] = 1;
    for a in 0..n {
        let x = if k == 1 { digits[0] as u32 } else { encode(&digits, p) };
        if log[x as usize] != u32::MAX {
            return Err(Error::Internal(format!("generator of F_{q} has small order {a}")));
        }
        log[x as usize] = a as u32;
        exp.push(x);
        if k == 1 {
            digits[0] = digits[0] * generator as u64 % p;
        } else {
            times_x(&mut digits, &modulus, p);
        }
    }

    let trace = trace_table(p, k, &modulus);
    Ok(FiniteFieldCtx {
        p: p32,
        k,
        q: q32,
        modulus: modulus.iter().map(|&c| c as u32).collect(),
        generator,
        exp,
        log,
        trace,
    })
}

fn least_primitive_root(p: u64) -> u32 {
    if p == 2 {
        return 1;
    }
    let primes: Vec<u64> = factorize(p - 1).into_iter().map(|(l, _)| l).collect();
    (2..p)
        .find(|&g| primes.iter().all(|&l| pow_mod(g, (p - 1) / l, p) != 1))
        .expect("a primitive root exists modulo a prime") as u32
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn encode(digits: &[u64], p: u64) -> u32 {
    digits.iter().rev().fold(0u64, |acc, &d| acc * p + d) as u32
}

/// `digits ← digits·X mod modulus`.
fn times_x(digits: &mut [u64], modulus: &[u64], p: u64) {
    let k = digits.len();
    let top = digits[k - 1];
    for i in (1..k).rev() {
        digits[i] = digits[i - 1];
    }
    digits[0] = 0;
    for i in 0..k {
        digits[i] = (digits[i] + (p - modulus[i]) * top) % p;
    }
}

/// Product of residue polynomials modulo a monic `modulus` of degree `k`.
fn poly_mulmod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let k = a.len();
    let mut prod = vec![0u64; 2 * k - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for d in (k..prod.len()).rev() {
        let top = prod[d];
        if top != 0 {
            for i in 0..k {
                prod[d - k + i] = (prod[d - k + i] + (p - modulus[i]) * top) % p;
            }
        }
    }
    prod.truncate(k);
    prod
}

fn poly_powmod(base: &[u64], mut e: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let k = base.len();
    let mut acc = vec![0u64; k];
    acc[0] = 1;
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, modulus, p);
        }
        b = poly_mulmod(&b, &b, modulus, p);
        e >>= 1;
    }
    acc
}

/// First monic degree-`k` polynomial, in increasing order of its encoded
/// lower coefficients, for which `X` has order `q − 1`. Such a polynomial is
/// irreducible, and `X` is then a generator.
fn primitive_modulus(p: u64, k: u32) -> Vec<u64> {
    let q = p.pow(k);
    let primes: Vec<u64> = factorize(q - 1).into_iter().map(|(l, _)| l).collect();
    let k = k as usize;
    let mut x = vec![0u64; k];
    x[1] = 1;
    let is_one = |v: &[u64]| v[0] == 1 && v[1..].iter().all(|&c| c == 0);
    for code in 1..q {
        let mut modulus = vec![0u64; k + 1];
        let mut c = code;
        for slot in modulus.iter_mut().take(k) {
            *slot = c % p;
            c /= p;
        }
        modulus[k] = 1;
        if modulus[0] == 0 {
            continue;
        }
        if is_one(&poly_powmod(&x, q - 1, &modulus, p))
            && primes
                .iter()
                .all(|&l| !is_one(&poly_powmod(&x, (q - 1) / l, &modulus, p)))
        {
            return modulus;
        }
    }
    unreachable!("primitive polynomials of every degree exist over F_p")
}

/// `Tr(x)` for every encoded `x`, from `Tr(Σ c_j X^j) = Σ c_j Tr(X^j)`, where
/// `Tr(X^j)` is the trace of multiplication by `X^j` on the basis `1..X^{k−1}`.
fn trace_table(p: u64, k: u32, modulus: &[u64]) -> Vec<u32> {
    let q = p.pow(k) as usize;
    if k == 1 {
        return (0..q as u32).collect();
    }
    let k = k as usize;
    let basis = |i: usize| {
        let mut v = vec![0u64; k];
        v[i] = 1;
        v
    };
    let basis_trace: Vec<u64> = (0..k)
        .map(|j| {
            (0..k)
                .map(|i| poly_mulmod(&basis(j), &basis(i), modulus, p)[i])
                .sum::<u64>()
                % p
        })
        .collect();
    let mut table = Vec::with_capacity(q);
    let mut digits = vec![0u64; k];
    for _ in 0..q {
        let t: u64 = digits.iter().zip(&basis_trace).map(|(d, t)| d * t).sum();
        table.push((t % p) as u32);
        for d in digits.iter_mut() {
            *d += 1;
            if *d < p {
                break;
            }
            *d = 0;
        }
    }
    table
}

impl FiniteFieldCtx {
    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.q as u64
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The fixed generator `g`; `X` (encoded as `p`) when `k > 1`.
    pub fn generator(&self) -> u32 {
        self.generator
    }

    /// `g^a` for `a` taken mod `q − 1`.
    pub fn exp(&self, a: u64) -> u32 {
        self.exp[(a % (self.q as u64 - 1)) as usize]
    }

    /// Discrete log base the generator; `None` for zero.
    pub fn dlog(&self, x: u32) -> Option<u32> {
        let l = self.log[x as usize];
        (l != u32::MAX).then_some(l)
    }

    /// `Tr_{F_q/F_p}(x)` as a residue mod `p`.
    pub fn trace(&self, x: u32) -> u32 {
        self.trace[x as usize]
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0u32, 1u32);
        while a > 0 || b > 0 {
            let d = (a % self.p + b % self.p) % self.p;
            out += d * place;
            place = place.wrapping_mul(self.p);
            a /= self.p;
            b /= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.k == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        let (mut a, mut out, mut place) = (a, 0u32, 1u32);
        while a > 0 {
            out += ((self.p - a % self.p) % self.p) * place;
            place = place.wrapping_mul(self.p);
            a /= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] as u64 + self.log[b as usize] as u64;
        self.exp(s)
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        match self.dlog(a) {
            None if e == 0 => 1,
            None => 0,
            Some(l) => self.exp((l as u64 * (e % (self.q as u64 - 1))) % (self.q as u64 - 1)),
        }
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        let l = self.dlog(a)? as u64;
        Some(self.exp(self.q as u64 - 1 - l))
    }

    /// Quadratic character: 0, 1 or −1 (odd `q` only).
    pub fn quadratic_char(&self, a: u32) -> i32 {
        match self.dlog(a) {
            None => 0,
            Some(l) if l % 2 == 0 => 1,
            Some(_) => -1,
        }
    }
}
