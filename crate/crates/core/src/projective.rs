//! The splitting map `H(F_q) -> M2(F_q)`, projective classes in
//! `PGL2(F_q)`, the index-2 subgroup `PSL2(F_q)` and the reduced generator
//! set `D_{p,q}`.

use std::fmt;

use crate::basis::{q_bound, GeneratorSet};
use crate::error::{Error, Result};
use crate::field::{legendre, FieldContext};
use crate::quaternion::Quaternion;

/// Row-major 2x2 matrix over `F_q`: `[m00, m01, m10, m11]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mat2(pub [u64; 4]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([1, 0, 0, 1]);

    pub fn mul(&self, rhs: &Mat2, ctx: &FieldContext) -> Mat2 {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = rhs.0;
        let q = ctx.q;
        Mat2([
            (a * e + b * g) % q,
            (a * f + b * h) % q,
            (c * e + d * g) % q,
            (c * f + d * h) % q,
        ])
    }

    pub fn det(&self, ctx: &FieldContext) -> u64 {
        let [a, b, c, d] = self.0;
        ctx.sub(ctx.mul(a, d), ctx.mul(b, c))
    }

    pub fn scale(&self, s: u64, ctx: &FieldContext) -> Mat2 {
        Mat2(self.0.map(|v| ctx.mul(v, s % ctx.q)))
    }
}

/// The algebra isomorphism `H(F_q) -> M2(F_q)`:
///
/// ```text
/// [ a0 + a1 x + a3 y    -a1 y + a2 + a3 x ]
/// [ -a1 y - a2 + a3 x    a0 - a1 x - a3 y ]
/// ```
pub fn phi(a: &Quaternion, ctx: &FieldContext) -> Mat2 {
    let [a0, a1, a2, a3] = a.coords().map(|c| ctx.reduce(c));
    let (x, y) = (ctx.x, ctx.y);
    let a1x = ctx.mul(a1, x);
    let a1y = ctx.mul(a1, y);
    let a3x = ctx.mul(a3, x);
    let a3y = ctx.mul(a3, y);
    Mat2([
        ctx.add(a0, ctx.add(a1x, a3y)),
        ctx.add(ctx.sub(a2, a1y), a3x),
        ctx.sub(ctx.sub(a3x, a1y), a2),
        ctx.sub(ctx.sub(a0, a1x), a3y),
    ])
}

/// Canonical representative of a class in `PGL2(F_q)`: the first nonzero
/// entry in reading order is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjElement(pub [u32; 4]);

impl ProjElement {
    pub const IDENTITY: ProjElement = ProjElement([1, 0, 0, 1]);

    /// Entries packed into 16-bit lanes.
    #[inline]
    pub fn pack(&self) -> u64 {
        let [a, b, c, d] = self.0.map(u64::from);
        a << 48 | b << 32 | c << 16 | d
    }

    #[inline]
    pub fn unpack(key: u64) -> Self {
        ProjElement([
            (key >> 48) as u32,
            (key >> 32 & 0xffff) as u32,
            (key >> 16 & 0xffff) as u32,
            (key & 0xffff) as u32,
        ])
    }

    pub fn to_mat(&self) -> Mat2 {
        Mat2(self.0.map(u64::from))
    }
}

impl fmt::Display for ProjElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

/// Projective class of an invertible matrix.
pub fn project(m: &Mat2, ctx: &FieldContext) -> Result<ProjElement> {
    if m.det(ctx) == 0 {
        return Err(Error::Singular);
    }
    let lead = *m.0.iter().find(|&&v| v != 0).expect("nonzero determinant");
    let s = ctx.inv(lead);
    Ok(ProjElement(m.scale(s, ctx).0.map(|v| v as u32)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Pgl2,
    Psl2,
}

impl GroupKind {
    /// `PGL2` when `(p/q) = -1`, `PSL2` when `(p/q) = 1`.
    pub fn for_legendre(symbol: i8) -> Self {
        if symbol == 1 {
            GroupKind::Psl2
        } else {
            GroupKind::Pgl2
        }
    }

    pub fn order(&self, q: u64) -> u64 {
        match self {
            GroupKind::Pgl2 => q * q * q - q,
            GroupKind::Psl2 => (q * q * q - q) / 2,
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::Pgl2 => "PGL2",
            GroupKind::Psl2 => "PSL2",
        })
    }
}

impl std::str::FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "PGL2" => Ok(GroupKind::Pgl2),
            "PSL2" => Ok(GroupKind::Psl2),
            _ => Err(Error::Format(format!("unknown group kind {s:?}"))),
        }
    }
}

/// Multiplication tables for `PGL2(F_q)` on canonical representatives.
#[derive(Clone, Debug)]
pub struct ProjectiveGroup {
    pub ctx: FieldContext,
    inv: Vec<u32>,
    residue: Vec<bool>,
}

impl ProjectiveGroup {
    pub fn new(ctx: FieldContext) -> Self {
        ProjectiveGroup {
            inv: ctx.inv_table(),
            residue: ctx.residues(),
            ctx,
        }
    }

    pub fn q(&self) -> u64 {
        self.ctx.q
    }

    #[inline]
    fn canonical(&self, m: [u64; 4]) -> ProjElement {
        let lead = if m[0] != 0 { m[0] } else { m[1] };
        debug_assert!(lead != 0, "singular product");
        let s = self.inv[lead as usize] as u64;
        let q = self.ctx.q;
        ProjElement(m.map(|v| (v * s % q) as u32))
    }

    #[inline]
    pub fn mul(&self, a: &ProjElement, b: &ProjElement) -> ProjElement {
        let q = self.ctx.q;
        let [a0, a1, a2, a3] = a.0.map(u64::from);
        let [b0, b1, b2, b3] = b.0.map(u64::from);
        self.canonical([
            (a0 * b0 + a1 * b2) % q,
            (a0 * b1 + a1 * b3) % q,
            (a2 * b0 + a3 * b2) % q,
            (a2 * b1 + a3 * b3) % q,
        ])
    }

    pub fn inverse(&self, a: &ProjElement) -> ProjElement {
        let q = self.ctx.q;
        let [m0, m1, m2, m3] = a.0.map(u64::from);
        self.canonical([m3, (q - m1) % q, (q - m2) % q, m0])
    }

    pub fn det(&self, a: &ProjElement) -> u64 {
        a.to_mat().det(&self.ctx)
    }

    /// Determinant of the canonical representative is a square. Rescaling
    /// multiplies the determinant by a square, so this is a class property.
    pub fn in_psl(&self, a: &ProjElement) -> bool {
        self.residue[self.det(a) as usize]
    }

    pub fn image(&self, a: &Quaternion) -> Result<ProjElement> {
        project(&phi(a, &self.ctx), &self.ctx)
    }

    /// Number of slots in the perfect index over canonical forms.
    pub fn slot_count(&self) -> usize {
        let q = self.ctx.q as usize;
        q * q * q + q * q
    }

    /// Position of a canonical form in `[0, q^3 + q^2)`.
    #[inline]
    pub fn slot(&self, e: &ProjElement) -> usize {
        let q = self.ctx.q as usize;
        let [m0, m1, m2, m3] = e.0.map(|v| v as usize);
        if m0 == 1 {
            (m1 * q + m2) * q + m3
        } else {
            debug_assert_eq!((m0, m1), (0, 1));
            q * q * q + m2 * q + m3
        }
    }

    /// Every class of the group in slot order.
    pub fn elements(&self, kind: GroupKind) -> Vec<ProjElement> {
        let q = self.ctx.q as u32;
        let mut out = Vec::with_capacity(kind.order(q as u64) as usize);
        let keep = |e: &ProjElement| kind == GroupKind::Pgl2 || self.in_psl(e);
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    let e = ProjElement([1, b, c, d]);
                    if !(d as u64 + q as u64 - (b as u64 * c as u64) % q as u64)
                        .is_multiple_of(q as u64)
                        && keep(&e)
                    {
                        out.push(e);
                    }
                }
            }
        }
        for c in 1..q {
            for d in 0..q {
                let e = ProjElement([0, 1, c, d]);
                if keep(&e) {
                    out.push(e);
                }
            }
        }
        out
    }
}

/// Duplicate-free enumeration of `PGL2` or `PSL2` with O(1) lookup.
#[derive(Clone, Debug)]
pub struct GroupIndex {
    pub kind: GroupKind,
    pub elements: Vec<ProjElement>,
    slot_to_vertex: Vec<u32>,
}

pub const NO_VERTEX: u32 = u32::MAX;

impl GroupIndex {
    pub fn new(group: &ProjectiveGroup, kind: GroupKind) -> Self {
        let elements = group.elements(kind);
        let mut slot_to_vertex = vec![NO_VERTEX; group.slot_count()];
        for (i, e) in elements.iter().enumerate() {
            slot_to_vertex[group.slot(e)] = i as u32;
        }
        GroupIndex {
            kind,
            elements,
            slot_to_vertex,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    #[inline]
    pub fn index_of(&self, group: &ProjectiveGroup, e: &ProjElement) -> Option<u32> {
        let v = self.slot_to_vertex[group.slot(e)];
        (v != NO_VERTEX).then_some(v)
    }

    /// Bytes held by the element list and slot table.
    pub fn footprint(q: u64, kind: GroupKind) -> u64 {
        let slots = q * q * q + q * q;
        slots * 4 + kind.order(q) * std::mem::size_of::<ProjElement>() as u64
    }
}

pub fn enumerate_group(q: u64, kind: GroupKind) -> Result<GroupIndex> {
    let group = ProjectiveGroup::new(FieldContext::new(q)?);
    Ok(GroupIndex::new(&group, kind))
}

/// The reduction `D_{p,q}` of a generator set together with the data that
/// fixes the graph `G_{d,p,q}`.
#[derive(Clone, Debug)]
pub struct GraphSpec {
    pub d: u64,
    pub p: u64,
    pub q: u64,
    pub group: ProjectiveGroup,
    pub generators: GeneratorSet,
    pub generator_images: Vec<ProjElement>,
    pub legendre_pq: i8,
    pub group_kind: GroupKind,
    /// `q > Q_d(p)`, the regime where connectedness is proven.
    pub theoretical_regime: bool,
}

impl GraphSpec {
    pub fn ctx(&self) -> &FieldContext {
        &self.group.ctx
    }

    pub fn degree(&self) -> usize {
        self.generator_images.len()
    }

    pub fn order(&self) -> u64 {
        self.group_kind.order(self.q)
    }
}

/// Reduce `D(d)` modulo `q` and check the resulting Cayley set: `d + 1`
/// distinct non-identity classes, closed under inversion, all inside `PSL2`
/// exactly when `(p/q) = 1`.
pub fn image_generators(gens: &GeneratorSet, q: u64) -> Result<GraphSpec> {
    let p = gens.p;
    let too_small = |reason: String| Error::QTooSmall { p, q, reason };
    if q == p {
        return Err(too_small("q must differ from p".into()));
    }
    if q * q <= 4 * p {
        return Err(too_small("q must exceed 2 sqrt(p)".into()));
    }
    let group = ProjectiveGroup::new(FieldContext::new(q)?);
    let images = gens
        .elements
        .iter()
        .map(|g| group.image(g))
        .collect::<Result<Vec<_>>>()
        .map_err(|_| too_small("a generator reduces to a singular matrix".into()))?;

    if images.contains(&ProjElement::IDENTITY) {
        return Err(too_small("a generator reduces to the identity".into()));
    }
    let mut sorted = images.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != images.len() {
        return Err(too_small("two generators have the same image".into()));
    }
    for (i, img) in images.iter().enumerate() {
        if group.inverse(img) != images[gens.inverse[i]] {
            return Err(Error::Invariant(format!(
                "image of generator {i} is not inverted by its partner"
            )));
        }
    }

    let legendre_pq = legendre(p as i64, q);
    let expect_psl = legendre_pq == 1;
    if images.iter().any(|e| group.in_psl(e) != expect_psl) {
        return Err(Error::Invariant(
            "generator images straddle PSL2 and its complement".into(),
        ));
    }

    Ok(GraphSpec {
        d: gens.d,
        p,
        q,
        generators: gens.clone(),
        generator_images: images,
        legendre_pq,
        group_kind: GroupKind::for_legendre(legendre_pq),
        theoretical_regime: num_bigint::BigUint::from(q) > q_bound(gens.d, p),
        group,
    })
}
