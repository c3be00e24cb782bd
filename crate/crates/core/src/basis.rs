//! Family parameters, the canonical set `P(p)` of norm-`p` quaternions
//! (one per unit orbit) and the generator set `D(d)`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{FromPrimitive, Pow};

use crate::error::{Error, Result};
use crate::primes::{is_prime, is_prime_power, next_prime, next_prime_3mod8};
use crate::quaternion::Quaternion;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParityRule {
    /// Odd `d`: smallest prime `>= d`.
    NextPrime,
    /// Even `d`: smallest prime `>= d` that is `3 mod 8`.
    NextPrime3Mod8,
    /// `p` supplied by the caller.
    Explicit,
}

impl fmt::Display for ParityRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParityRule::NextPrime => "next_prime",
            ParityRule::NextPrime3Mod8 => "next_prime_3mod8",
            ParityRule::Explicit => "explicit",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyParams {
    pub d: u64,
    pub p: u64,
    /// `log_d p`, so that `p = d^kappa`.
    pub kappa: f64,
    /// `4 / (3 kappa)`.
    pub c_d: f64,
    /// `max{p^8, ceil(120^kappa * p)}`; `q` above this is the proven regime.
    pub q_bound: BigUint,
    pub parity_rule: ParityRule,
    /// `d` is not a prime power.
    pub theorem_hypothesis: bool,
}

impl FamilyParams {
    /// Parameters of the `d`-family: odd `d` uses the next prime, even `d`
    /// the next prime `3 mod 8`.
    pub fn new(d: u64) -> Result<Self> {
        if d < 10 {
            return Err(Error::DegreeOutOfRange(d));
        }
        let (p, rule) = if d % 2 == 1 {
            (next_prime(d), ParityRule::NextPrime)
        } else {
            (next_prime_3mod8(d), ParityRule::NextPrime3Mod8)
        };
        Ok(Self::assemble(d, p, rule))
    }

    /// Parameters for a caller-chosen odd prime `p`.
    pub fn with_prime(d: u64, p: u64) -> Result<Self> {
        if d < 10 {
            return Err(Error::DegreeOutOfRange(d));
        }
        if p.is_multiple_of(2) || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        Ok(Self::assemble(d, p, ParityRule::Explicit))
    }

    fn assemble(d: u64, p: u64, parity_rule: ParityRule) -> Self {
        let kappa = kappa(d, p);
        FamilyParams {
            d,
            p,
            kappa,
            c_d: 4.0 / (3.0 * kappa),
            q_bound: q_bound(d, p),
            parity_rule,
            theorem_hypothesis: !is_prime_power(d),
        }
    }

    /// `q > Q_d(p)`.
    pub fn in_regime(&self, q: u64) -> bool {
        BigUint::from(q) > self.q_bound
    }
}

pub fn kappa(d: u64, p: u64) -> f64 {
    (p as f64).ln() / (d as f64).ln()
}

/// `max{p^8, ceil(120^kappa * p)}`, with the floating factor nudged upward
/// before the ceiling.
pub fn q_bound(d: u64, p: u64) -> BigUint {
    let p8: BigUint = BigUint::from(p).pow(8u32);
    let scaled = 120f64.powf(kappa(d, p)) * p as f64;
    let scaled = (scaled * (1.0 + 4.0 * f64::EPSILON)).ceil();
    let scaled = BigUint::from_f64(scaled).expect("finite positive bound");
    p8.max(scaled)
}

/// All `(a0, a1, a2, a3)` with `a0^2 + a1^2 + a2^2 + a3^2 = n`, sorted.
pub fn enumerate_norm(n: u64) -> Vec<Quaternion> {
    let r = n.isqrt() as i64;
    let mut out = Vec::new();
    for a0 in -r..=r {
        let r0 = n - (a0 * a0) as u64;
        let r1 = r0.isqrt() as i64;
        for a1 in -r1..=r1 {
            let s1 = r0 - (a1 * a1) as u64;
            let r2 = s1.isqrt() as i64;
            for a2 in -r2..=r2 {
                let rest = s1 - (a2 * a2) as u64;
                let a3 = rest.isqrt();
                if a3 * a3 == rest {
                    out.push(Quaternion::new(a0, a1, a2, a3 as i64));
                    if a3 != 0 {
                        out.push(Quaternion::new(a0, a1, a2, -(a3 as i64)));
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// All quaternions of norm `p`; exactly `8(p + 1)` of them for an odd prime.
pub fn enumerate_norm_p(p: u64) -> Result<Vec<Quaternion>> {
    if p.is_multiple_of(2) || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(enumerate_norm(p))
}

/// Membership test for `P(p)`, given `N(q) = p`.
pub fn in_canonical_set(q: &Quaternion, p: u64) -> bool {
    let [a0, a1, a2, a3] = q.coords();
    let even = |x: i64| x.rem_euclid(2) == 0;
    if p % 4 == 1 {
        a0 > 0 && !even(a0) && even(a1) && even(a2) && even(a3)
    } else {
        let sign_ok = if a0 != 0 { a0 > 0 } else { a1 > 0 };
        sign_ok && even(a0) && !even(a1) && !even(a2) && !even(a3)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pairing {
    /// `mu` type: the conjugate is the element at this index.
    Conjugate(usize),
    /// `nu` type: real part 0, the conjugate `-pi` is not in the set.
    Pure,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeBasis {
    pub p: u64,
    /// Sorted lexicographically by coordinates.
    pub elements: Vec<Quaternion>,
    pub pairing: Vec<Pairing>,
    pub s: usize,
    pub t: usize,
}

impl PrimeBasis {
    pub fn build(p: u64) -> Result<Self> {
        let elements: Vec<Quaternion> = enumerate_norm_p(p)?
            .into_iter()
            .filter(|q| in_canonical_set(q, p))
            .collect();
        let pairing: Vec<Pairing> = elements
            .iter()
            .map(|e| {
                if e.is_pure() {
                    Pairing::Pure
                } else {
                    let idx = elements
                        .binary_search(&e.conj())
                        .expect("conjugate of a non-pure element stays in P(p)");
                    Pairing::Conjugate(idx)
                }
            })
            .collect();
        let t = pairing.iter().filter(|&&x| x == Pairing::Pure).count();
        Ok(PrimeBasis {
            p,
            s: elements.len() - t,
            t,
            elements,
            pairing,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, q: &Quaternion) -> Option<usize> {
        self.elements.binary_search(q).ok()
    }

    /// Index of the inverse letter: the conjugate for paired elements, the
    /// element itself for pure ones.
    pub fn inverse_index(&self, idx: usize) -> usize {
        match self.pairing[idx] {
            Pairing::Conjugate(j) => j,
            Pairing::Pure => idx,
        }
    }

    /// Select `D(d)`: `k1` conjugate pairs followed by `d + 1 - 2 k1` pure
    /// elements, both taken in lexicographic order, where
    /// `k1 = min(floor((d+1)/2), s/2)` for odd `d` and `min(d/2, s/2)` for even `d`.
    pub fn select_generators(&self, d: u64) -> Result<GeneratorSet> {
        let needed = d as usize + 1;
        let infeasible = |reason: String| Error::InfeasibleSelection {
            p: self.p,
            needed,
            reason,
        };
        if needed > self.len() {
            return Err(infeasible(format!("P(p) has only {} elements", self.len())));
        }
        if d.is_multiple_of(2) && self.t == 0 {
            return Err(infeasible(
                "even d needs a pure element, which requires p = 3 mod 8".into(),
            ));
        }
        let pair_cap = if d % 2 == 1 {
            needed / 2
        } else {
            d as usize / 2
        };
        let k1 = pair_cap.min(self.s / 2);
        let pure_needed = needed - 2 * k1;
        if pure_needed > self.t {
            return Err(infeasible(format!(
                "needs {pure_needed} pure elements, P(p) has {}",
                self.t
            )));
        }

        let mut chosen = Vec::with_capacity(needed);
        for (i, pairing) in self.pairing.iter().enumerate() {
            if chosen.len() == 2 * k1 {
                break;
            }
            if let Pairing::Conjugate(j) = *pairing {
                if j > i {
                    chosen.push(i);
                    chosen.push(j);
                }
            }
        }
        chosen.extend(
            self.pairing
                .iter()
                .enumerate()
                .filter(|(_, p)| **p == Pairing::Pure)
                .map(|(i, _)| i)
                .take(pure_needed),
        );
        chosen.sort_unstable();
        Ok(GeneratorSet::from_basis_indices(self, d, chosen))
    }
}

/// `D(d)`: the `d + 1` selected elements of `P(p)`, closed under available
/// conjugation. Words index into [`GeneratorSet::elements`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub d: u64,
    pub p: u64,
    pub basis_indices: Vec<usize>,
    pub elements: Vec<Quaternion>,
    /// `inverse[i]` is the letter cancelling letter `i`.
    pub inverse: Vec<usize>,
    pub pure: Vec<bool>,
}

impl GeneratorSet {
    fn from_basis_indices(basis: &PrimeBasis, d: u64, basis_indices: Vec<usize>) -> Self {
        let elements: Vec<Quaternion> = basis_indices.iter().map(|&i| basis.elements[i]).collect();
        let pure: Vec<bool> = basis_indices
            .iter()
            .map(|&i| basis.pairing[i] == Pairing::Pure)
            .collect();
        let inverse = basis_indices
            .iter()
            .enumerate()
            .map(|(pos, &i)| {
                let inv = basis.inverse_index(i);
                basis_indices
                    .iter()
                    .position(|&x| x == inv)
                    .unwrap_or_else(|| panic!("generator {pos} selected without its conjugate"))
            })
            .collect();
        GeneratorSet {
            d,
            p: basis.p,
            basis_indices,
            elements,
            inverse,
            pure,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn paired_count(&self) -> usize {
        self.pure.iter().filter(|&&x| !x).count()
    }

    pub fn pure_count(&self) -> usize {
        self.pure.iter().filter(|&&x| x).count()
    }

    pub fn selection_rule(&self) -> &'static str {
        "lexicographic: conjugate pairs first, then pure elements"
    }
}
