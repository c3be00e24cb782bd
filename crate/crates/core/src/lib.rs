//! Explicit large-girth Cayley graphs on `PGL2(F_q)` / `PSL2(F_q)`.
//!
//! The generators come from integral Hamilton quaternions of prime norm `p`.
//! Words over them form a free product whose Cayley graph is a regular tree,
//! and reducing modulo a second prime `q` folds that tree into a finite
//! Cayley graph whose girth is bounded below by the arithmetic of `p` and `q`.
//!
//! Module map:
//!
//! - [`quaternion`]: exact arithmetic in `H(Z)`.
//! - [`primes`]: primality, prime searches, `theta(x; k, l)`.
//! - [`basis`]: family parameters, the canonical prime set `P(p)` and the
//!   generator set `D(d)`.
//! - [`word`]: irreducible words, unique factorization, the reduced product.
//! - [`field`] and [`projective`]: `F_q` arithmetic, the splitting map into
//!   2x2 matrices and the projective groups.
//! - [`graph`], [`girth`], [`bounds`], [`report`], [`export`]: graph
//!   construction and verification.
//! - [`family`]: constant tables, family listings and verification grids.

pub mod basis;
pub mod bounds;
pub mod error;
pub mod export;
pub mod family;
pub mod field;
pub mod girth;
pub mod graph;
pub mod primes;
pub mod projective;
pub mod quaternion;
pub mod report;
pub mod word;

pub use basis::{FamilyParams, GeneratorSet, Pairing, ParityRule, PrimeBasis};
pub use error::{Error, Result};
pub use field::FieldContext;
pub use graph::{CayleyGraph, RegularGraph};
pub use projective::{GraphSpec, GroupKind, ProjElement};
pub use quaternion::Quaternion;
pub use report::GraphReport;
pub use word::{Factorization, Word};
