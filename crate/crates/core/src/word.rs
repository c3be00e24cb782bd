//! Irreducible words over `D(d)`, unique factorization of norm-`p^k`
//! quaternions, and the reduced product that makes the words a free product
//! group whose Cayley graph is the `(d+1)`-regular tree.

use std::fmt;

use crate::basis::{GeneratorSet, PrimeBasis};
use crate::error::{Error, Result};
use crate::quaternion::Quaternion;

/// A sequence of generator indices. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// First position `i` where `w[i+1]` cancels `w[i]`, or an index error.
    pub fn validate(&self, gens: &GeneratorSet) -> Result<()> {
        if let Some(&index) = self.0.iter().find(|&&x| x >= gens.len()) {
            return Err(Error::IndexOutOfRange {
                index,
                len: gens.len(),
            });
        }
        match self.0.windows(2).position(|w| w[1] == gens.inverse[w[0]]) {
            Some(pos) => Err(Error::Reducible(pos)),
            None => Ok(()),
        }
    }

    /// No two consecutive letters are conjugate (paired type) or equal
    /// (pure type).
    pub fn is_irreducible(&self, gens: &GeneratorSet) -> bool {
        self.validate(gens).is_ok()
    }

    /// Left-to-right Hamilton product of the letters.
    pub fn to_quaternion(&self, gens: &GeneratorSet) -> Result<Quaternion> {
        self.validate(gens)?;
        self.0.iter().try_fold(Quaternion::ONE, |acc, &g| {
            acc.checked_mul(&gens.elements[g])
        })
    }

    /// Reversed word with each letter replaced by its inverse letter.
    pub fn inverse(&self, gens: &GeneratorSet) -> Word {
        Word(self.0.iter().rev().map(|&g| gens.inverse[g]).collect())
    }

    /// Number of letters cancelled at the junction of `self` and `rhs`.
    pub fn junction_cancellation(&self, rhs: &Word, gens: &GeneratorSet) -> usize {
        self.0
            .iter()
            .rev()
            .zip(&rhs.0)
            .take_while(|(&a, &b)| a == gens.inverse[b])
            .count()
    }

    /// Reduced product: cancel at the junction as far as possible.
    pub fn star(&self, rhs: &Word, gens: &GeneratorSet) -> Word {
        let l = self.junction_cancellation(rhs, gens);
        let mut out = self.0[..self.len() - l].to_vec();
        out.extend_from_slice(&rhs.0[l..]);
        Word(out)
    }

    /// The `d + 1` tree neighbours: the one-letter-shorter prefix and the
    /// irreducible one-letter extensions.
    pub fn tree_neighbors(&self, gens: &GeneratorSet) -> Vec<Word> {
        let mut out = Vec::with_capacity(gens.len());
        let forbidden = match self.0.last() {
            Some(&last) => {
                out.push(Word(self.0[..self.len() - 1].to_vec()));
                Some(gens.inverse[last])
            }
            None => None,
        };
        for g in 0..gens.len() {
            if Some(g) != forbidden {
                let mut w = self.0.clone();
                w.push(g);
                out.push(Word(w));
            }
        }
        out
    }

    pub fn display<'a>(&'a self, gens: &'a GeneratorSet) -> impl fmt::Display + 'a {
        DisplayWord(self, gens)
    }
}

struct DisplayWord<'a>(&'a Word, &'a GeneratorSet);

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, &g) in self.0 .0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", self.1.elements[g])?;
        }
        f.write_str("]")
    }
}

/// All irreducible words of exactly `len` letters, in lexicographic order.
pub fn irreducible_words(gens: &GeneratorSet, len: usize) -> Vec<Word> {
    let mut level = vec![Word::empty()];
    for _ in 0..len {
        level = level
            .iter()
            .flat_map(|w| {
                let forbidden = w.0.last().map(|&l| gens.inverse[l]);
                (0..gens.len())
                    .filter(move |&g| Some(g) != forbidden)
                    .map(move |g| {
                        let mut v = w.0.clone();
                        v.push(g);
                        Word(v)
                    })
            })
            .collect();
    }
    level
}

/// `a = p^content_exponent * unit * P[word[0]] * ... * P[word[last]]`, with
/// `word` indexing into the full prime basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub content_exponent: u32,
    pub unit: Quaternion,
    pub word: Vec<usize>,
}

impl Factorization {
    pub fn reconstruct(&self, basis: &PrimeBasis) -> Result<Quaternion> {
        let content = (basis.p as i64)
            .checked_pow(self.content_exponent)
            .ok_or(Error::Overflow("content power"))?;
        let mut acc = self.unit.checked_scale(content)?;
        for &i in &self.word {
            acc = acc.checked_mul(&basis.elements[i])?;
        }
        Ok(acc)
    }

    pub fn quaternions<'a>(
        &'a self,
        basis: &'a PrimeBasis,
    ) -> impl Iterator<Item = Quaternion> + 'a {
        self.word.iter().map(|&i| basis.elements[i])
    }
}

/// Exponent `k` with `n = p^k`, if any.
fn log_exact(mut n: u128, p: u64) -> Option<u32> {
    let p = p as u128;
    let mut k = 0;
    while n > 1 {
        if !n.is_multiple_of(p) {
            return None;
        }
        n /= p;
        k += 1;
    }
    (n == 1).then_some(k)
}

/// Unique factorization of a quaternion of norm `p^k`. Prime factors are
/// peeled from the right: `pi` is a right divisor of `a` exactly when
/// `a * conj(pi)` is divisible by `p`.
pub fn factor(a: &Quaternion, basis: &PrimeBasis) -> Result<Factorization> {
    let p = basis.p;
    let norm = a.try_norm()?;
    let k = log_exact(norm, p).ok_or(Error::NormNotPrimePower { norm, p })?;
    let pi = p as i64;

    let mut rest = *a;
    let mut content_exponent = 0u32;
    while let Some(r) = rest.div_exact(pi) {
        rest = r;
        content_exponent += 1;
    }

    let len = k as usize - 2 * content_exponent as usize;
    let mut word = Vec::with_capacity(len);
    for _ in 0..len {
        let (idx, quotient) = basis
            .elements
            .iter()
            .enumerate()
            .find_map(|(i, prime)| {
                let prod = rest.checked_mul(&prime.conj()).ok()?;
                prod.div_exact(pi).map(|q| (i, q))
            })
            .ok_or_else(|| Error::Invariant(format!("no right divisor of {rest} in P({p})")))?;
        word.push(idx);
        rest = quotient;
    }
    word.reverse();
    if !rest.is_unit() {
        return Err(Error::Invariant(format!("left over {rest} is not a unit")));
    }
    Ok(Factorization {
        content_exponent,
        unit: rest,
        word,
    })
}
