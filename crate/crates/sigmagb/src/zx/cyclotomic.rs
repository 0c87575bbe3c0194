use super::IntPoly;

fn mobius(mut n: u64) -> i32 {
    let mut result = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Euler's totient.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            while n % d == 0 {
                n /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The `m`-th cyclotomic polynomial, `prod_{d | m} (x^d - 1)^{μ(m/d)}`.
pub fn cyclotomic(m: usize) -> IntPoly {
    assert!(m >= 1, "cyclotomic index must be positive");
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for d in 1..=m {
        if m % d != 0 {
            continue;
        }
        match mobius((m / d) as u64) {
            1 => num = &num * &IntPoly::x_pow_minus_one(d),
            -1 => den = &den * &IntPoly::x_pow_minus_one(d),
            _ => {}
        }
    }
    num.exact_div(&den).expect("cyclotomic quotient is exact")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(4), IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic(12), IntPoly::from_i64(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(6), IntPoly::from_i64(&[1, -1, 1]));
    }

    #[test]
    fn divisor_products_give_x_m_minus_one() {
        for m in 1..=30 {
            let prod = (1..=m)
                .filter(|d| m % d == 0)
                .fold(IntPoly::one(), |acc, d| &acc * &cyclotomic(d));
            assert_eq!(prod, IntPoly::x_pow_minus_one(m), "m = {m}");
            assert_eq!(cyclotomic(m).deg() as u64, euler_phi(m as u64));
        }
    }
}
