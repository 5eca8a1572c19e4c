//! Small integer helpers shared across modules.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorisation as (prime, multiplicity) pairs in ascending order.
pub fn factorize(mut n: u128) -> alloc::vec::Vec<(u128, u32)> {
    let mut out = alloc::vec::Vec::new();
    let mut d: u128 = 2;
    while d * d <= n {
        let mut m = 0;
        while n.is_multiple_of(d) {
            n /= d;
            m += 1;
        }
        if m > 0 {
            out.push((d, m));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `Some(e)` when `n == p^e`.
pub fn log_exact(n: u128, p: u128) -> Option<u32> {
    if p < 2 || n == 0 {
        return None;
    }
    let mut e = 0;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
        e += 1;
    }
    (m == 1).then_some(e)
}

pub fn pow_u128(base: u128, exp: u32) -> u128 {
    base.pow(exp)
}

/// Renders an order as `p^e` when it is a prime power, otherwise in decimal.
pub fn format_order(n: u128) -> alloc::string::String {
    use alloc::format;
    let f = factorize(n);
    if f.len() == 1 {
        format!("{}^{}", f[0].0, f[0].1)
    } else {
        format!("{n}")
    }
}

pub fn factorial(n: u64) -> u128 {
    (1..=n as u128).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_helpers() {
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(lcm(4, 6), 12);
        assert!(is_prime(7) && !is_prime(15));
        assert_eq!(log_exact(1024, 2), Some(10));
        assert_eq!(log_exact(12, 2), None);
        assert_eq!(format_order(1 << 19), "2^19");
        assert_eq!(format_order(19683), "3^9");
        assert_eq!(format_order(1), "1");
        assert_eq!(factorial(5), 120);
    }
}
