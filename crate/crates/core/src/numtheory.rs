//! Small-integer number theory used throughout the crate.

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

pub fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1 % m;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mod_mul(result, b, m);
        }
        b = mod_mul(b, b, m);
        exp >>= 1;
    }
    result
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Canonical residue of a signed integer.
pub fn modulo(a: i64, m: u64) -> u64 {
    (a as i128).rem_euclid(m as i128) as u64
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

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    prime_factors(n).into_iter().fold(n, |acc, q| acc / q * (q - 1))
}

/// Units of `Z/m`, in increasing order.
pub fn units(m: u64) -> Vec<u64> {
    if m == 1 {
        return vec![0];
    }
    (1..m).filter(|&u| gcd(u, m) == 1).collect()
}

/// Least primitive root modulo the prime `p`.
pub fn least_primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&q| mod_pow(g, (p - 1) / q, p) != 1))
        .expect("every prime has a primitive root")
}

/// Representative of `a mod m` in the symmetric range `[(1-m)/2, (m-1)/2]`.
/// For even `m` the representative lies in `(-m/2, m/2]`.
pub fn symmetric_residue(a: i64, m: u64) -> i64 {
    let r = modulo(a, m) as i64;
    if 2 * r > m as i64 {
        r - m as i64
    } else {
        r
    }
}

/// `Some(k)` when `n = base^k` exactly.
pub fn exact_power_base(n: u64, base: u64) -> Option<u32> {
    if base < 2 || n == 0 {
        return None;
    }
    let mut k = 0;
    let mut x = n;
    while x.is_multiple_of(base) {
        x /= base;
        k += 1;
    }
    (x == 1).then_some(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(lcm(4, 6), 12);
        assert_eq!(mod_inverse(2, 7), Some(4));
        assert_eq!(mod_inverse(2, 4), None);
        assert_eq!(mod_pow(2, 5, 25), 7);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(euler_phi(2162), 1012);
        assert_eq!(units(9), vec![1, 2, 4, 5, 7, 8]);
        assert_eq!(least_primitive_root(7), 3);
        assert_eq!(least_primitive_root(41), 6);
        assert_eq!(exact_power_base(81, 3), Some(4));
        assert_eq!(exact_power_base(6, 3), None);
    }

    #[test]
    fn symmetric_range() {
        assert_eq!(symmetric_residue(3, 7), 3);
        assert_eq!(symmetric_residue(4, 7), -3);
        assert_eq!(symmetric_residue(-8, 7), -1);
        for p in [3u64, 5, 7, 11, 13] {
            for i in 0..p as i64 {
                let c = symmetric_residue(i, p);
                assert!(2 * c.abs() < p as i64);
                assert_eq!(c + symmetric_residue(-i, p), 0);
            }
        }
    }
}
