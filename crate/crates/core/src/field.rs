//! Prime field arithmetic, Legendre symbols, square roots and the splitting
//! pair `(x, y)` with `x^2 + y^2 + 1 = 0`.

use crate::error::{Error, Result};
use crate::primes::{is_prime, pow_mod};

/// Largest field size handled; projective elements pack into 16-bit lanes.
pub const MAX_FIELD: u64 = u16::MAX as u64;

/// Legendre symbol `(a / q)` for an odd prime `q`, by Euler's criterion.
pub fn legendre(a: i64, q: u64) -> i8 {
    let r = a.rem_euclid(q as i64) as u64;
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (q - 1) / 2, q) == 1 {
        1
    } else {
        -1
    }
}

/// Square root mod an odd prime by Tonelli-Shanks, using the smallest
/// non-residue as auxiliary. Returns the smaller of the two roots.
pub fn sqrt_mod(a: u64, q: u64) -> Result<u64> {
    let a = a % q;
    if a == 0 {
        return Ok(0);
    }
    if legendre(a as i64, q) != 1 {
        return Err(Error::NonResidue { a, q });
    }
    let mul = |x: u64, y: u64| ((x as u128 * y as u128) % q as u128) as u64;

    let s = (q - 1).trailing_zeros();
    let odd = (q - 1) >> s;
    let z = (2..q)
        .find(|&z| legendre(z as i64, q) == -1)
        .expect("odd prime has a non-residue");

    let mut m = s;
    let mut c = pow_mod(z, odd, q);
    let mut t = pow_mod(a, odd, q);
    let mut r = pow_mod(a, odd.div_ceil(2), q);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul(t2, t2);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), q);
        m = i;
        c = mul(b, b);
        t = mul(t, c);
        r = mul(r, b);
    }
    Ok(r.min(q - r))
}

/// `F_q` together with a fixed splitting pair `(x, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldContext {
    pub q: u64,
    pub x: u64,
    pub y: u64,
}

impl FieldContext {
    /// Smallest `x >= 0` with `-1 - x^2` a square, then `y` its smaller root.
    pub fn new(q: u64) -> Result<Self> {
        if q.is_multiple_of(2) || !is_prime(q) {
            return Err(Error::NotOddPrime(q));
        }
        if q > MAX_FIELD {
            return Err(Error::FieldTooLarge(q));
        }
        let (x, y) = (0..q)
            .find_map(|x| {
                let target = (q - 1 + q - (x * x) % q) % q;
                sqrt_mod(target, q).ok().map(|y| (x, y))
            })
            .expect("x^2 + y^2 + 1 = 0 is solvable over every odd prime field");
        Ok(FieldContext { q, x, y })
    }

    #[inline]
    pub fn reduce(&self, a: i64) -> u64 {
        a.rem_euclid(self.q as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.q
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.q - b) % self.q
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.q
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.q));
        pow_mod(a, self.q - 2, self.q)
    }

    /// `inv_table()[a] = a^-1` for `a != 0`; slot 0 holds 0.
    pub fn inv_table(&self) -> Vec<u32> {
        let mut t = vec![0u32; self.q as usize];
        for a in 1..self.q {
            t[a as usize] = self.inv(a) as u32;
        }
        t
    }

    /// `residues()[a]` is true iff `a` is a nonzero square.
    pub fn residues(&self) -> Vec<bool> {
        let mut t = vec![false; self.q as usize];
        for a in 1..self.q {
            t[(a * a % self.q) as usize] = true;
        }
        t
    }
}
