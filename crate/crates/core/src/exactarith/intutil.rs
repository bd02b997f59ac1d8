//! Machine-integer number theory helpers: primality, modular powers, small factorizations.

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct prime factors by trial division.
pub fn prime_factors_u128(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d: u128 = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Value of the `d`-th cyclotomic polynomial at `q`, by Moebius inversion of `q^m - 1`.
fn cyclotomic_value(d: u32, q: u128) -> u128 {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for m in 1..=d {
        if d % m != 0 {
            continue;
        }
        match moebius(d / m) {
            1 => num = num.checked_mul(q.pow(m) - 1).expect("q^k - 1 too large"),
            -1 => den = den.checked_mul(q.pow(m) - 1).expect("q^k - 1 too large"),
            _ => {}
        }
    }
    num / den
}

fn moebius(mut n: u32) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Distinct primes dividing `q^k - 1`, factoring each cyclotomic piece separately.
pub fn prime_factors_of_qk_minus_one(q: u64, k: u32) -> Vec<u128> {
    let mut primes: Vec<u128> = Vec::new();
    for d in 1..=k {
        if k % d == 0 {
            for p in prime_factors_u128(cyclotomic_value(d, q as u128)) {
                if !primes.contains(&p) {
                    primes.push(p);
                }
            }
        }
    }
    primes.sort_unstable();
    primes
}

/// Multiplicative order of `q` modulo `n` (gcd(q, n) = 1).
pub fn multiplicative_order(q: u64, n: u64) -> u64 {
    let mut x = q % n;
    let mut k = 1;
    while x != 1 {
        x = mul_mod(x, q, n);
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small_range() {
        let brute = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..5000 {
            assert_eq!(is_prime(n), brute(n), "n = {n}");
        }
        assert!(is_prime(2_305_843_009_213_693_951));
    }

    #[test]
    fn cyclotomic_factorization_of_group_orders() {
        // 2^12 - 1 = 3^2 * 5 * 7 * 13
        assert_eq!(prime_factors_of_qk_minus_one(2, 12), vec![3, 5, 7, 13]);
        let n: u128 = 41u128.pow(12) - 1;
        let ps = prime_factors_of_qk_minus_one(41, 12);
        let mut m = n;
        for &p in &ps {
            assert_eq!(n % p, 0);
            while m % p == 0 {
                m /= p;
            }
        }
        assert_eq!(m, 1);
    }

    #[test]
    fn orders_mod_13() {
        assert_eq!(multiplicative_order(2, 13), 12);
        assert_eq!(multiplicative_order(23, 13), 6);
        assert_eq!(multiplicative_order(29, 13), 3);
        assert_eq!(multiplicative_order(3, 13), 3);
    }
}
