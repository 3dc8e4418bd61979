//! Small integer helpers shared by the modules.

use num_integer::Integer;

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Positive divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n > 0, "divisors of zero");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            small.push(i);
            if i * i != n {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Möbius function.
pub fn mobius(mut n: u64) -> i64 {
    assert!(n > 0, "mobius of zero");
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Euler's totient.
pub fn totient(mut n: u64) -> u64 {
    assert!(n > 0, "totient of zero");
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Every `d` with `totient(d) <= n`, ascending.
///
/// Uses `totient(d) > d / (e^gamma ln ln d + 3 / ln ln d)` for `d >= 3` to
/// stop the search.
pub fn indices_with_totient_at_most(n: u64) -> Vec<u64> {
    const EXP_GAMMA: f64 = 1.781_072_417_990_198;
    let mut out = Vec::new();
    let mut d: u64 = 1;
    loop {
        if d >= 30 {
            let ll = (d as f64).ln().ln();
            if d as f64 / (EXP_GAMMA * ll + 3.0 / ll) > n as f64 {
                break;
            }
        }
        if totient(d) <= n {
            out.push(d);
        }
        d += 1;
    }
    out
}

/// Inverse of `a` modulo `m` as a representative in `[0, m)`, if it exists.
pub fn mod_inverse(a: i64, m: u64) -> Option<u64> {
    let m_i = m as i128;
    let ext = (a as i128).rem_euclid(m_i).extended_gcd(&m_i);
    if ext.gcd != 1 {
        return None;
    }
    Some(ext.x.rem_euclid(m_i) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisors_sorted() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(30), vec![1, 2, 3, 5, 6, 10, 15, 30]);
        assert_eq!(divisors(36), vec![1, 2, 3, 4, 6, 9, 12, 18, 36]);
    }

    #[test]
    fn mobius_values() {
        let expected = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (n, &mu) in (1..=12).zip(expected.iter()) {
            assert_eq!(mobius(n), mu, "mu({n})");
        }
    }

    #[test]
    fn inverses() {
        assert_eq!(mod_inverse(-1, 5), Some(4));
        assert_eq!(mod_inverse(-2, 3), Some(1));
        assert_eq!(mod_inverse(2, 4), None);
        assert_eq!(mod_inverse(7, 1), Some(0));
    }

    #[test]
    fn totients() {
        assert_eq!(totient(1), 1);
        assert_eq!(totient(30), 8);
        for n in 1..200u64 {
            let naive = (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64;
            assert_eq!(totient(n), naive, "phi({n})");
        }
    }

    #[test]
    fn small_totient_indices() {
        assert_eq!(indices_with_totient_at_most(1), vec![1, 2]);
        assert_eq!(indices_with_totient_at_most(2), vec![1, 2, 3, 4, 6]);
        // phi(d) <= 8 ends at 30
        assert_eq!(*indices_with_totient_at_most(8).last().unwrap(), 30);
        // brute-force oracle over a generous range
        for n in [1u64, 4, 10, 24, 60] {
            let brute: Vec<u64> = (1..5000).filter(|&d| totient(d) <= n).collect();
            assert_eq!(indices_with_totient_at_most(n), brute, "n = {n}");
        }
    }
}
