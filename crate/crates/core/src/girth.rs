//! Girth as the shortest nontrivial reduced word over `D(d)` whose image in
//! `PGL2(F_q)` is the identity, found by meet-in-the-middle on the tree.
//!
//! A reduced relator `w` of length `t` splits as `u * inverse(v)` with
//! `|u| = ceil(t/2)`, `|v| = floor(t/2)`, equal images, and different last
//! letters (otherwise the junction would cancel). Levels of the tree are
//! generated breadth first and sorted by packed image, so each `t` is a
//! merge-join between two levels. Nothing of size `|G|` is ever allocated.

use crate::error::{Error, Result};
use crate::graph::DEFAULT_MEMORY_BYTES;
use crate::projective::{GraphSpec, ProjElement};
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordGirth {
    /// Shortest relator length and one relator realizing it.
    Found { girth: u32, witness: Word },
    /// No relator of length `<= searched_up_to`.
    NotFound { searched_up_to: u32 },
}

impl WordGirth {
    pub fn girth(&self) -> Option<u32> {
        match self {
            WordGirth::Found { girth, .. } => Some(*girth),
            WordGirth::NotFound { .. } => None,
        }
    }
}

const NONE: u32 = u32::MAX;
const ENTRY_BYTES: u64 = 8 + 4 + 4 + 12;

/// One level of the tree: all reduced words of a fixed length.
struct Level {
    keys: Vec<u64>,
    parent: Vec<u32>,
    letter: Vec<u32>,
    /// Entry indices sorted by key.
    order: Vec<u32>,
}

impl Level {
    fn root() -> Self {
        Level {
            keys: vec![ProjElement::IDENTITY.pack()],
            parent: vec![NONE],
            letter: vec![NONE],
            order: vec![0],
        }
    }

    fn len(&self) -> usize {
        self.keys.len()
    }

    fn extend(&self, spec: &GraphSpec) -> Level {
        let gens = &spec.generators;
        let branching = if self.letter[0] == NONE {
            gens.len()
        } else {
            gens.len() - 1
        };
        let size = self.len() * branching;
        let mut keys = Vec::with_capacity(size);
        let mut parent = Vec::with_capacity(size);
        let mut letter = Vec::with_capacity(size);
        for i in 0..self.len() {
            let elem = ProjElement::unpack(self.keys[i]);
            let forbidden = match self.letter[i] {
                NONE => None,
                l => Some(gens.inverse[l as usize]),
            };
            for (g, image) in spec.generator_images.iter().enumerate() {
                if Some(g) == forbidden {
                    continue;
                }
                keys.push(spec.group.mul(&elem, image).pack());
                parent.push(i as u32);
                letter.push(g as u32);
            }
        }
        let mut order: Vec<u32> = (0..keys.len() as u32).collect();
        order.sort_unstable_by_key(|&i| keys[i as usize]);
        Level {
            keys,
            parent,
            letter,
            order,
        }
    }

    /// Equal-key runs of the sorted order, as `(key, slice of entry indices)`.
    fn runs(&self) -> impl Iterator<Item = (u64, &[u32])> {
        self.order
            .chunk_by(move |&a, &b| self.keys[a as usize] == self.keys[b as usize])
            .map(move |run| (self.keys[run[0] as usize], run))
    }
}

fn word_at(levels: &[Level], depth: usize, mut idx: u32) -> Word {
    let mut letters = Vec::with_capacity(depth);
    for level in levels[1..=depth].iter().rev() {
        letters.push(level.letter[idx as usize] as usize);
        idx = level.parent[idx as usize];
    }
    letters.reverse();
    Word(letters)
}

/// Two entries with equal images and different last letters.
fn pick_pair(a: &Level, run_a: &[u32], b: &Level, run_b: &[u32]) -> Option<(u32, u32)> {
    run_a.iter().find_map(|&i| {
        run_b
            .iter()
            .find(|&&j| a.letter[i as usize] != b.letter[j as usize])
            .map(|&j| (i, j))
    })
}

fn collide_within(level: &Level) -> Option<(u32, u32)> {
    level
        .runs()
        .filter(|(_, run)| run.len() > 1)
        .find_map(|(_, run)| pick_pair(level, run, level, run))
}

fn collide_between(long: &Level, short: &Level) -> Option<(u32, u32)> {
    let mut short_runs = short.runs().peekable();
    for (key, run) in long.runs() {
        while short_runs.peek().is_some_and(|(k, _)| *k < key) {
            short_runs.next();
        }
        if let Some((k, other)) = short_runs.peek() {
            if *k == key {
                if let Some(pair) = pick_pair(long, run, short, other) {
                    return Some(pair);
                }
            }
        }
    }
    None
}

/// Bytes held by the tree levels needed to search relators up to `t`.
pub fn search_bytes(degree: u64, t: u32) -> u64 {
    let depth = t.div_ceil(2);
    let mut total = 1u64;
    let mut level = 1u64;
    for l in 1..=depth {
        level = if l == 1 {
            degree
        } else {
            level.saturating_mul(degree - 1)
        };
        total = total.saturating_add(level);
    }
    total.saturating_mul(ENTRY_BYTES)
}

pub fn girth_words(spec: &GraphSpec, max_len: u32) -> Result<WordGirth> {
    girth_words_with_budget(spec, max_len, DEFAULT_MEMORY_BYTES)
}

/// Smallest `t <= max_len` admitting a reduced relator of length `t`.
pub fn girth_words_with_budget(
    spec: &GraphSpec,
    max_len: u32,
    budget_bytes: u64,
) -> Result<WordGirth> {
    let mut levels = vec![Level::root()];
    // Generators are distinct and never the identity, so t = 1, 2 are impossible.
    for t in 3..=max_len {
        let half = t.div_ceil(2) as usize;
        while levels.len() <= half {
            let required = search_bytes(spec.degree() as u64, 2 * levels.len() as u32);
            if required > budget_bytes {
                return Err(Error::MemoryBudget {
                    required,
                    budget: budget_bytes,
                });
            }
            let next = levels.last().expect("root level").extend(spec);
            levels.push(next);
        }
        let hit = if t % 2 == 0 {
            collide_within(&levels[half])
        } else {
            collide_between(&levels[half], &levels[half - 1])
        };
        if let Some((i, j)) = hit {
            let u = word_at(&levels, half, i);
            let v = word_at(&levels, t as usize / 2, j);
            let mut letters = u.0;
            letters.extend(v.inverse(&spec.generators).0);
            let witness = Word(letters);
            witness.validate(&spec.generators).map_err(|e| {
                Error::Invariant(format!("meet-in-the-middle produced a reducible word: {e}"))
            })?;
            if word_image(spec, &witness) != ProjElement::IDENTITY {
                return Err(Error::Invariant(
                    "relator does not map to the identity".into(),
                ));
            }
            return Ok(WordGirth::Found { girth: t, witness });
        }
    }
    Ok(WordGirth::NotFound {
        searched_up_to: max_len,
    })
}

/// Image of a word in the projective group.
pub fn word_image(spec: &GraphSpec, w: &Word) -> ProjElement {
    w.letters().iter().fold(ProjElement::IDENTITY, |acc, &g| {
        spec.group.mul(&acc, &spec.generator_images[g])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::PrimeBasis;
    use crate::graph::CayleyGraph;
    use crate::projective::image_generators;
    use crate::word::irreducible_words;

    fn spec(d: u64, p: u64, q: u64) -> GraphSpec {
        let gens = PrimeBasis::build(p).unwrap().select_generators(d).unwrap();
        image_generators(&gens, q).unwrap()
    }

    // Oracle: plain enumeration of every reduced word, shortest first.
    fn brute_force_girth(spec: &GraphSpec, max_len: usize) -> Option<u32> {
        (1..=max_len).find_map(|t| {
            irreducible_words(&spec.generators, t)
                .iter()
                .filter(|w| {
                    // Cyclically reduced is not required: any reduced relator counts.
                    word_image(spec, w) == ProjElement::IDENTITY
                })
                .map(|_| t as u32)
                .next()
        })
    }

    #[test]
    fn agrees_with_bfs_on_small_graphs() {
        for (d, p, q) in [(10, 11, 13), (10, 11, 7), (14, 19, 11), (14, 19, 13)] {
            let s = spec(d, p, q);
            let g = CayleyGraph::build(&s, DEFAULT_MEMORY_BYTES).unwrap();
            let bfs = g.girth_bfs().unwrap();
            let words = girth_words(&s, 12).unwrap();
            assert_eq!(words.girth(), Some(bfs), "(d, p, q) = ({d}, {p}, {q})");
        }
    }

    #[test]
    fn agrees_with_brute_force_enumeration() {
        let s = spec(10, 11, 7);
        let words = girth_words(&s, 6).unwrap().girth();
        assert_eq!(words, brute_force_girth(&s, 4));
    }

    #[test]
    fn short_limits_give_sentinel() {
        let s = spec(10, 11, 13);
        assert_eq!(
            girth_words(&s, 2).unwrap(),
            WordGirth::NotFound { searched_up_to: 2 }
        );
        assert_eq!(
            girth_words(&s, 3).unwrap(),
            WordGirth::NotFound { searched_up_to: 3 }
        );
    }

    #[test]
    fn witness_is_a_reduced_relator() {
        let s = spec(14, 19, 13);
        let WordGirth::Found { girth, witness } = girth_words(&s, 12).unwrap() else {
            panic!("no cycle found");
        };
        assert_eq!(witness.len() as u32, girth);
        assert!(witness.is_irreducible(&s.generators));
        assert_eq!(word_image(&s, &witness), ProjElement::IDENTITY);
    }

    #[test]
    fn witness_lies_in_the_kernel() {
        // A relator maps to x0 + q (y1 i + y2 j + y3 k) with some y != 0.
        for (d, p, q) in [(10, 11, 13), (18, 19, 29)] {
            let s = spec(d, p, q);
            let WordGirth::Found { witness, .. } = girth_words(&s, 12).unwrap() else {
                panic!("no cycle found");
            };
            let [_, a, b, c] = witness.to_quaternion(&s.generators).unwrap().coords();
            assert!([a, b, c].iter().all(|v| v % q as i64 == 0));
            assert!([a, b, c].iter().any(|&v| v != 0));
        }
    }

    #[test]
    fn budget_is_enforced() {
        let s = spec(10, 11, 13);
        assert!(matches!(
            girth_words_with_budget(&s, 12, 1000),
            Err(Error::MemoryBudget { .. })
        ));
        assert_eq!(search_bytes(11, 4), (1 + 11 + 110) * ENTRY_BYTES);
    }
}
