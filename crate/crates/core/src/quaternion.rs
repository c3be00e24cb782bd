//! Integral Hamilton quaternions `a0 + a1 i + a2 j + a3 k` with
//! `i^2 = j^2 = k^2 = -1` and `k = ij = -ji`.
//!
//! All arithmetic is checked. The `Mul` impl panics on overflow; use
//! [`Quaternion::checked_mul`] where overflow has to be handled.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quaternion {
    pub a0: i64,
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
}

/// The eight units `1, -1, i, -i, j, -j, k, -k`.
pub const UNITS: [Quaternion; 8] = [
    Quaternion::new(1, 0, 0, 0),
    Quaternion::new(-1, 0, 0, 0),
    Quaternion::new(0, 1, 0, 0),
    Quaternion::new(0, -1, 0, 0),
    Quaternion::new(0, 0, 1, 0),
    Quaternion::new(0, 0, -1, 0),
    Quaternion::new(0, 0, 0, 1),
    Quaternion::new(0, 0, 0, -1),
];

pub fn units() -> [Quaternion; 8] {
    UNITS
}

fn ck(v: Option<i64>) -> Result<i64> {
    v.ok_or(Error::Overflow("quaternion arithmetic"))
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0, 0, 0, 0);
    pub const ONE: Quaternion = Quaternion::new(1, 0, 0, 0);
    pub const I: Quaternion = Quaternion::new(0, 1, 0, 0);
    pub const J: Quaternion = Quaternion::new(0, 0, 1, 0);
    pub const K: Quaternion = Quaternion::new(0, 0, 0, 1);

    pub const fn new(a0: i64, a1: i64, a2: i64, a3: i64) -> Self {
        Quaternion { a0, a1, a2, a3 }
    }

    pub const fn scalar(a: i64) -> Self {
        Quaternion::new(a, 0, 0, 0)
    }

    pub const fn coords(&self) -> [i64; 4] {
        [self.a0, self.a1, self.a2, self.a3]
    }

    pub fn from_coords(c: [i64; 4]) -> Self {
        Quaternion::new(c[0], c[1], c[2], c[3])
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }

    /// Real part zero: such elements of norm `p` satisfy `conj(q) = -q`.
    pub fn is_pure(&self) -> bool {
        self.a0 == 0
    }

    pub fn conj(&self) -> Self {
        Quaternion::new(self.a0, -self.a1, -self.a2, -self.a3)
    }

    /// Sum of squares of the coordinates.
    pub fn try_norm(&self) -> Result<u128> {
        self.coords()
            .iter()
            .map(|&c| (c.unsigned_abs() as u128).pow(2))
            .try_fold(0u128, |acc, s| acc.checked_add(s))
            .ok_or(Error::Overflow("quaternion norm"))
    }

    /// Panics only when all four coordinates are `i64::MIN`.
    pub fn norm(&self) -> u128 {
        self.try_norm().expect("quaternion norm overflow")
    }

    /// gcd of the coordinates; 0 for the zero quaternion.
    pub fn content(&self) -> u64 {
        self.coords()
            .iter()
            .fold(0u64, |g, &c| g.gcd(&c.unsigned_abs()))
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    pub fn checked_mul(&self, rhs: &Quaternion) -> Result<Quaternion> {
        let [a0, a1, a2, a3] = self.coords();
        let [b0, b1, b2, b3] = rhs.coords();
        let m = |x: i64, y: i64| ck(x.checked_mul(y));
        let sum = |terms: [Result<i64>; 4], signs: [bool; 4]| -> Result<i64> {
            let mut acc = 0i64;
            for (t, plus) in terms.into_iter().zip(signs) {
                let t = t?;
                acc = ck(if plus {
                    acc.checked_add(t)
                } else {
                    acc.checked_sub(t)
                })?;
            }
            Ok(acc)
        };
        Ok(Quaternion {
            a0: sum(
                [m(a0, b0), m(a1, b1), m(a2, b2), m(a3, b3)],
                [true, false, false, false],
            )?,
            a1: sum(
                [m(a0, b1), m(a1, b0), m(a2, b3), m(a3, b2)],
                [true, true, true, false],
            )?,
            a2: sum(
                [m(a0, b2), m(a1, b3), m(a2, b0), m(a3, b1)],
                [true, false, true, true],
            )?,
            a3: sum(
                [m(a0, b3), m(a1, b2), m(a2, b1), m(a3, b0)],
                [true, true, false, true],
            )?,
        })
    }

    pub fn checked_scale(&self, s: i64) -> Result<Quaternion> {
        let c = self.coords();
        Ok(Quaternion::new(
            ck(c[0].checked_mul(s))?,
            ck(c[1].checked_mul(s))?,
            ck(c[2].checked_mul(s))?,
            ck(c[3].checked_mul(s))?,
        ))
    }

    /// Coordinate-wise exact division; `None` unless `s` divides every coordinate.
    pub fn div_exact(&self, s: i64) -> Option<Quaternion> {
        if s == 0 || self.coords().iter().any(|c| c % s != 0) {
            return None;
        }
        Some(Quaternion::new(
            self.a0 / s,
            self.a1 / s,
            self.a2 / s,
            self.a3 / s,
        ))
    }

    /// `true` when every coordinate is divisible by `m`.
    pub fn divisible_by(&self, m: i64) -> bool {
        self.coords().iter().all(|c| c % m == 0)
    }

    /// `{ e * self : e unit }`, sorted and deduplicated.
    pub fn unit_orbit(&self) -> Vec<Quaternion> {
        let mut orbit: Vec<Quaternion> = UNITS.iter().map(|u| *u * *self).collect();
        orbit.sort();
        orbit.dedup();
        orbit
    }

    pub fn is_unit(&self) -> bool {
        UNITS.contains(self)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;

    fn mul(self, rhs: Quaternion) -> Quaternion {
        self.checked_mul(&rhs)
            .expect("quaternion multiplication overflow")
    }
}

impl Add for Quaternion {
    type Output = Quaternion;

    fn add(self, rhs: Quaternion) -> Quaternion {
        let c: Option<[i64; 4]> = (|| {
            Some([
                self.a0.checked_add(rhs.a0)?,
                self.a1.checked_add(rhs.a1)?,
                self.a2.checked_add(rhs.a2)?,
                self.a3.checked_add(rhs.a3)?,
            ])
        })();
        Quaternion::from_coords(c.expect("quaternion addition overflow"))
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;

    fn sub(self, rhs: Quaternion) -> Quaternion {
        self + (-rhs)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;

    fn neg(self) -> Quaternion {
        Quaternion::new(-self.a0, -self.a1, -self.a2, -self.a3)
    }
}

impl fmt::Display for Quaternion {
    /// `a0+a1i+a2j+a3k` with explicit signs, e.g. `1-2i+0j+0k`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.a0)?;
        for (c, unit) in [(self.a1, 'i'), (self.a2, 'j'), (self.a3, 'k')] {
            if c < 0 {
                write!(f, "-{}{unit}", c.unsigned_abs())?;
            } else {
                write!(f, "+{c}{unit}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Quaternion {
    type Err = Error;

    /// Accepts the display form `a0+a1i+a2j+a3k` or four comma-separated
    /// integers `a0,a1,a2,a3`.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::ParseQuaternion(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.contains(',') {
            let parts: Vec<i64> = t
                .split(',')
                .map(|x| x.parse::<i64>().map_err(|_| err()))
                .collect::<Result<_>>()?;
            return match parts.as_slice() {
                [a, b, c, d] => Ok(Quaternion::new(*a, *b, *c, *d)),
                _ => Err(err()),
            };
        }

        // Split into signed terms, then match on the trailing unit letter.
        let mut terms = Vec::new();
        let mut start = 0;
        for (idx, ch) in t.char_indices() {
            if idx > start && (ch == '+' || ch == '-') {
                terms.push(&t[start..idx]);
                start = idx;
            }
        }
        if start < t.len() {
            terms.push(&t[start..]);
        }
        let expected = ['\0', 'i', 'j', 'k'];
        if terms.len() != 4 {
            return Err(err());
        }
        let mut c = [0i64; 4];
        for (slot, (term, unit)) in terms.iter().zip(expected).enumerate() {
            let digits = if unit == '\0' {
                *term
            } else {
                term.strip_suffix(unit).ok_or_else(err)?
            };
            let digits = digits.strip_prefix('+').unwrap_or(digits);
            c[slot] = digits.parse().map_err(|_| err())?;
        }
        Ok(Quaternion::from_coords(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: fn(i64, i64, i64, i64) -> Quaternion = Quaternion::new;

    #[test]
    fn multiplication_table() {
        let (i, j, k) = (Quaternion::I, Quaternion::J, Quaternion::K);
        let m1 = Quaternion::scalar(-1);
        assert_eq!(i * j, k);
        assert_eq!(j * i, -k);
        assert_eq!(j * k, i);
        assert_eq!(k * i, j);
        assert_eq!(i * i, m1);
        assert_eq!(j * j, m1);
        assert_eq!(k * k, m1);
    }

    #[test]
    fn product_examples() {
        let p = Q(1, 2, 0, 0) * Q(1, 0, 2, 0);
        assert_eq!(p, Q(1, 2, 2, 4));
        assert_eq!(p.norm(), 25);
        assert_eq!(Q(1, 2, 0, 0) * Q(1, 2, 0, 0).conj(), Quaternion::scalar(5));
    }

    #[test]
    fn conj_examples() {
        assert_eq!(Q(1, 1, 0, 0).conj(), Q(1, -1, 0, 0));
        assert_eq!(Q(0, 3, 1, 1).conj(), Q(0, -3, -1, -1));
    }

    #[test]
    fn norm_and_content() {
        assert_eq!(Q(1, 1, 1, 1).norm(), 4);
        assert_eq!(Quaternion::ZERO.norm(), 0);
        assert_eq!(Q(1, 2, 0, 0).norm(), 5);
        assert_eq!(Q(2, 4, 6, 0).content(), 2);
        assert_eq!(Q(3, 3, 3, 3).content(), 3);
        assert_eq!(Quaternion::ZERO.content(), 0);
        assert!(Q(1, 2, 0, 0).is_primitive());
        assert!(!Quaternion::ZERO.is_primitive());
    }

    #[test]
    fn units_and_orbits() {
        let u = units();
        let mut sorted = u.to_vec();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 8);
        assert!(u.iter().all(|x| x.norm() == 1));
        for a in u {
            for b in u {
                assert!((a * b).is_unit());
            }
            assert!(a.conj().is_unit());
            assert_eq!(a * a.conj(), Quaternion::ONE);
        }

        // Brute-force: the 8 products, deduplicated by hand.
        let a = Q(1, 2, 0, 0);
        let mut seen: Vec<Quaternion> = Vec::new();
        for e in UNITS {
            let p = e * a;
            if !seen.contains(&p) {
                seen.push(p);
            }
        }
        assert_eq!(seen.len(), 8);
        assert_eq!(a.unit_orbit().len(), 8);
        assert_eq!(Quaternion::ZERO.unit_orbit(), vec![Quaternion::ZERO]);
    }

    #[test]
    fn overflow_is_reported() {
        let big = Q(i64::MAX, 1, 0, 0);
        assert_eq!(
            big.checked_mul(&big),
            Err(Error::Overflow("quaternion arithmetic"))
        );
        assert!(Q(i64::MIN, i64::MIN, i64::MIN, i64::MIN)
            .try_norm()
            .is_err());
        assert_eq!(
            Q(i64::MIN, i64::MIN, i64::MIN, 0).try_norm().unwrap(),
            3u128 << 126
        );
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn mul_operator_panics_on_overflow() {
        let big = Q(i64::MAX / 2, i64::MAX / 2, 0, 0);
        let _ = big * big;
    }

    #[test]
    fn text_form() {
        assert_eq!(Q(1, -2, 0, 0).to_string(), "1-2i+0j+0k");
        assert_eq!(Q(-3, 0, 5, -7).to_string(), "-3+0i+5j-7k");
        assert_eq!("1-2i+0j+0k".parse::<Quaternion>().unwrap(), Q(1, -2, 0, 0));
        assert_eq!(
            "-3+0i+5j-7k".parse::<Quaternion>().unwrap(),
            Q(-3, 0, 5, -7)
        );
        assert_eq!("1, 2, -2, 4".parse::<Quaternion>().unwrap(), Q(1, 2, -2, 4));
        assert!("1+2i".parse::<Quaternion>().is_err());
        assert!("1+2i+3k+4j".parse::<Quaternion>().is_err());
        assert!("1,2,3".parse::<Quaternion>().is_err());
    }

    fn coord() -> impl Strategy<Value = i64> {
        -1000i64..=1000
    }

    fn quat() -> impl Strategy<Value = Quaternion> {
        (coord(), coord(), coord(), coord()).prop_map(|(a, b, c, d)| Q(a, b, c, d))
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(a in quat(), b in quat()) {
            prop_assert_eq!((a * b).norm(), a.norm() * b.norm());
        }

        #[test]
        fn conj_is_anti_homomorphism(a in quat(), b in quat()) {
            prop_assert_eq!((a * b).conj(), b.conj() * a.conj());
            prop_assert_eq!(a.conj().conj(), a);
        }

        #[test]
        fn mul_is_associative(a in quat(), b in quat(), c in quat()) {
            prop_assert_eq!((a * b) * c, a * (b * c));
        }

        #[test]
        fn content_divides_product_content(a in quat(), b in quat()) {
            let ca = a.content() as u128;
            let cb = b.content() as u128;
            let cab = (a * b).content() as u128;
            if ca * cb != 0 {
                prop_assert_eq!(cab % (ca * cb), 0);
            }
        }

        #[test]
        fn norm_identity(a in quat()) {
            prop_assert_eq!(a * a.conj(), Quaternion::scalar(a.norm() as i64));
            prop_assert_eq!(a.norm() == 0, a.is_zero());
            let c = a.content() as i64;
            if c != 0 {
                prop_assert!(a.divisible_by(c));
            }
        }

        #[test]
        fn text_round_trip(a in quat()) {
            prop_assert_eq!(a.to_string().parse::<Quaternion>().unwrap(), a);
        }
    }
}
