//! Primality, prime searches and the Chebyshev-type sum `theta(x; k, l)`.

/// Modular exponentiation on `u64` through `u128` products.
pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

// Witness set valid for every n < 3.3e24, so in particular for all u64.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &b in &MR_BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime `>= u`.
pub fn next_prime(u: u64) -> u64 {
    (u..)
        .find(|&n| is_prime(n))
        .expect("prime search ran off u64")
}

/// Smallest prime `>= u` congruent to 3 mod 8.
pub fn next_prime_3mod8(u: u64) -> u64 {
    (u..)
        .find(|&n| n % 8 == 3 && is_prime(n))
        .expect("prime search ran off u64")
}

/// Sieve of Eratosthenes: `flags[n]` is true iff `n` is prime, for `n <= limit`.
pub fn sieve(limit: usize) -> Vec<bool> {
    let mut flags = vec![true; limit + 1];
    flags[0] = false;
    if limit >= 1 {
        flags[1] = false;
    }
    let mut i = 2;
    while i * i <= limit {
        if flags[i] {
            for m in (i * i..=limit).step_by(i) {
                flags[m] = false;
            }
        }
        i += 1;
    }
    flags
}

pub fn primes_up_to(limit: usize) -> Vec<u64> {
    sieve(limit)
        .iter()
        .enumerate()
        .filter_map(|(n, &p)| p.then_some(n as u64))
        .collect()
}

/// `sum of ln(p)` over primes `p <= x` with `p = l (mod k)`.
pub fn theta(x: u64, k: u64, l: u64) -> f64 {
    assert!(k > 0 && l < k, "theta needs 0 <= l < k");
    primes_up_to(x as usize)
        .into_iter()
        .filter(|p| p % k == l)
        .map(|p| (p as f64).ln())
        .sum()
}

/// Integer `k`-th root, rounded down.
fn iroot(n: u64, k: u32) -> u64 {
    if k == 1 {
        return n;
    }
    let mut r = (n as f64).powf(1.0 / k as f64).round() as u64;
    while r > 0 && r.checked_pow(k).is_none_or(|v| v > n) {
        r -= 1;
    }
    while (r + 1).checked_pow(k).is_some_and(|v| v <= n) {
        r += 1;
    }
    r
}

/// `Some((r, e))` with `n = r^e`, `r` prime, `e >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    (1..=63u32).rev().find_map(|e| {
        let r = iroot(n, e);
        (r >= 2 && r.checked_pow(e) == Some(n) && is_prime(r)).then_some((r, e))
    })
}

pub fn is_prime_power(n: u64) -> bool {
    prime_power(n).is_some()
}

/// Legendre's criterion: `n` is a sum of three squares iff it is not of the
/// form `4^a (8b + 7)`.
pub fn is_sum_of_three_squares(mut n: u64) -> bool {
    if n == 0 {
        return true;
    }
    while n.is_multiple_of(4) {
        n /= 4;
    }
    n % 8 != 7
}
