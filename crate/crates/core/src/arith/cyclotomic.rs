use super::{divisors, IntPolynomial};

/// The `n`th cyclotomic polynomial, by dividing `T^n − 1` by `Φ_d` for every
/// proper divisor `d` of `n`.
pub fn cyclotomic(n: u64) -> IntPolynomial {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut acc = IntPolynomial::x_pow_minus_one(n as usize);
    for d in divisors(n) {
        if d < n {
            acc = acc
                .exact_div(&cyclotomic(d))
                .expect("Φ_d divides T^n − 1 for d | n");
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::euler_phi;

    #[test]
    fn small_cases() {
        assert_eq!(cyclotomic(1), IntPolynomial::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(2), IntPolynomial::from_i64(&[1, 1]));
        assert_eq!(cyclotomic(6), IntPolynomial::from_i64(&[1, -1, 1]));
    }

    #[test]
    fn phi30_from_chebyshev_ratio() {
        // Φ_30 = (T^30 − 1)(T − 1)·Φ_1Φ_2Φ_3Φ_5 / ((T^6 − 1)(T^10 − 1)(T^15 − 1))
        let small: IntPolynomial = [1, 2, 3, 5].into_iter().map(cyclotomic).product();
        let num = &(&IntPolynomial::x_pow_minus_one(30) * &IntPolynomial::x_pow_minus_one(1)) * &small;
        let den: IntPolynomial = [6, 10, 15]
            .iter()
            .map(|&n| IntPolynomial::x_pow_minus_one(n))
            .product();
        let quotient = num.exact_div(&den).unwrap();
        assert_eq!(quotient, IntPolynomial::from_i64(&[1, 1, 0, -1, -1, -1, 0, 1, 1]));
        assert_eq!(cyclotomic(30), quotient);
    }

    #[test]
    fn divisor_product_identity() {
        for n in 1..=100u64 {
            let prod: IntPolynomial = divisors(n).into_iter().map(cyclotomic).product();
            assert_eq!(prod, IntPolynomial::x_pow_minus_one(n as usize), "n = {n}");
            assert_eq!(cyclotomic(n).degree(), Some(euler_phi(n) as usize));
        }
    }
}
