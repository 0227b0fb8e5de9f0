//! Independent brute-force oracles.
//!
//! Everything here recomputes results of the main modules along a different
//! route: point shapes through plain finite sets, star topologies through
//! exhaustive enumeration of set topologies, generated topologies through
//! the join-of-meets normal form, and preimages through enumeration of
//! fragment sums. The verification suite treats any divergence from the
//! main modules as a hard failure.

use crate::error::{Error, Result};
use crate::geom::{Point, Segment};
use crate::mapping::{Mapping, Preimage};
use crate::scalar::Scalar;
use crate::shape::{Kind, Shape};
use std::collections::BTreeSet;

fn require_points(s: &Shape) -> Result<BTreeSet<Point>> {
    if s.kind() != Kind::U0 {
        return Err(Error::KindMismatch { left: s.kind(), right: Kind::U0 });
    }
    Ok(s.points().cloned().collect())
}

/// Point-shape sum recomputed as set union.
pub fn u0_sum(a: &Shape, b: &Shape) -> Result<Shape> {
    let (sa, sb) = (require_points(a)?, require_points(b)?);
    Ok(Shape::from_points(sa.union(&sb).cloned()))
}

/// Point-shape product recomputed as set intersection.
pub fn u0_product(a: &Shape, b: &Shape) -> Result<Shape> {
    let (sa, sb) = (require_points(a)?, require_points(b)?);
    Ok(Shape::from_points(sa.intersection(&sb).cloned()))
}

/// Point-shape difference recomputed as set difference.
pub fn u0_difference(a: &Shape, b: &Shape) -> Result<Shape> {
    let (sa, sb) = (require_points(a)?, require_points(b)?);
    Ok(Shape::from_points(sa.difference(&sb).cloned()))
}

/// Point-shape part relation recomputed as the subset relation.
pub fn u0_part_of(a: &Shape, b: &Shape) -> Result<bool> {
    let (sa, sb) = (require_points(a)?, require_points(b)?);
    Ok(sa.is_subset(&sb))
}

/// Largest point count supported by [`enumerate_set_topologies`].
pub const MAX_ENUMERATION_POINTS: usize = 4;

/// Every topology on `n` labeled points, as families of index sets.
///
/// Exhaustively filters all families of subsets for the closure conditions.
/// The counts are 1, 4, 29 and 355 for one through four points.
pub fn enumerate_set_topologies(n: usize) -> Result<Vec<BTreeSet<BTreeSet<usize>>>> {
    if n == 0 || n > MAX_ENUMERATION_POINTS {
        return Err(Error::TooLarge { n, max: MAX_ENUMERATION_POINTS });
    }
    let subsets = 1usize << n; // subsets of the point set, as bitmasks
    let full = subsets - 1;
    let mut found = Vec::new();
    // A family is a set of subsets: one bit per subset mask.
    for family in 0u64..(1u64 << subsets) {
        let has = |mask: usize| family & (1 << mask) != 0;
        if !has(0) || !has(full) {
            continue;
        }
        let members: Vec<usize> = (0..subsets).filter(|&m| has(m)).collect();
        let closed = members.iter().all(|&a| {
            members.iter().all(|&b| has(a | b) && has(a & b))
        });
        if closed {
            found.push(
                members
                    .iter()
                    .map(|&m| (0..n).filter(|i| m & (1 << i) != 0).collect())
                    .collect(),
            );
        }
    }
    Ok(found)
}

/// The smallest family containing the parts and closed under sum and
/// product, computed through the distributive normal form: every element
/// is a join of meets of nonempty subsets of the parts.
///
/// An independent route to the generated topology (without the carrier
/// bookkeeping): meets are enumerated over all nonempty subsets, joins
/// over subsets of the meets.
pub fn normal_form_closure(parts: &[Shape], kind: Kind) -> Result<BTreeSet<Shape>> {
    for p in parts {
        if p.kind() != kind {
            return Err(Error::KindMismatch { left: kind, right: p.kind() });
        }
    }
    let mut meets: BTreeSet<Shape> = BTreeSet::new();
    for mask in 1usize..(1 << parts.len()) {
        let mut meet: Option<Shape> = None;
        for (i, part) in parts.iter().enumerate() {
            if mask & (1 << i) != 0 {
                meet = Some(match meet {
                    None => part.clone(),
                    Some(m) => m.product_k(part),
                });
            }
        }
        meets.insert(meet.expect("nonempty subset"));
    }
    // Subset joins via incremental extension.
    let mut joins: BTreeSet<Shape> = BTreeSet::new();
    joins.insert(Shape::empty(kind));
    for meet in &meets {
        let extended: Vec<Shape> = joins.iter().map(|j| j.sum_k(meet)).collect();
        joins.extend(extended);
    }
    Ok(joins)
}

/// Cap on fragments accepted by [`brute_preimage`].
pub const MAX_FRAGMENTS: usize = 20;

/// Pairwise-disjoint atoms refining a family of shapes: every source is a
/// sum of fragments.
#[derive(Clone, Debug)]
pub struct FragmentDecomposition {
    sources: Vec<Shape>,
    fragments: Vec<Shape>,
}

impl FragmentDecomposition {
    /// Cuts the union of the sources at every endpoint and pairwise
    /// intersection the sources induce on it.
    pub fn new(sources: &[Shape]) -> Result<FragmentDecomposition> {
        let kind = match sources.first() {
            None => {
                return Ok(FragmentDecomposition { sources: Vec::new(), fragments: Vec::new() })
            }
            Some(s) => s.kind(),
        };
        let mut arena = Shape::empty(kind);
        for s in sources {
            arena = arena.sum(s)?;
        }
        let fragments = match kind {
            Kind::U0 => arena.points().map(|p| Shape::point(p.clone())).collect(),
            Kind::U1 => {
                let all_segments: Vec<&Segment> =
                    sources.iter().flat_map(|s| s.segments()).collect();
                let mut fragments = Vec::new();
                for max_seg in arena.segments() {
                    let key = max_seg.line_key();
                    let (lo, hi) = max_seg.span();
                    let mut cuts: BTreeSet<Scalar> = BTreeSet::new();
                    cuts.insert(lo.clone());
                    cuts.insert(hi.clone());
                    for seg in &all_segments {
                        if seg.line_key() == key {
                            // Collinear: cut at its endpoints.
                            for p in [seg.a(), seg.b()] {
                                let t = key.param_of(p);
                                if lo < t && t < hi {
                                    cuts.insert(t);
                                }
                            }
                        } else if let Some(p) = key.intersection(&seg.line_key()) {
                            // Crossing: cut where the lines meet, if the
                            // point lies inside both segments.
                            if seg.contains_point(&p) && max_seg.contains_point(&p) {
                                let t = key.param_of(&p);
                                if lo < t && t < hi {
                                    cuts.insert(t);
                                }
                            }
                        }
                    }
                    let params: Vec<&Scalar> = cuts.iter().collect();
                    for pair in params.windows(2) {
                        fragments.push(
                            Shape::segment(key.point_at(pair[0]), key.point_at(pair[1]))
                                .expect("cut points are distinct"),
                        );
                    }
                }
                fragments
            }
        };
        Ok(FragmentDecomposition { sources: sources.to_vec(), fragments })
    }

    pub fn sources(&self) -> &[Shape] {
        &self.sources
    }

    pub fn fragments(&self) -> &[Shape] {
        &self.fragments
    }

    /// Checks the decomposition invariants: fragments pairwise disjoint,
    /// every source a sum of fragments.
    pub fn verify(&self) -> bool {
        for (i, a) in self.fragments.iter().enumerate() {
            for b in self.fragments.iter().skip(i + 1) {
                if !a.product_k(b).is_empty() {
                    return false;
                }
            }
        }
        self.sources.iter().all(|s| {
            let mut total = Shape::empty(s.kind());
            for f in &self.fragments {
                if f.part_of_k(s) {
                    total = total.sum_k(f);
                }
            }
            total == *s
        })
    }
}

/// Brute-force preimage: enumerates every sum of domain fragments, keeps
/// the ones whose image embeds in `y`, and returns their maximum.
///
/// The fragment arena is the domain together with `y` and the step shapes
/// pulled back into the domain frame, so the closed-form preimage is a
/// fragment sum whenever the inputs decompose at all. The filtered set
/// always contains its own supremum; an empty filtered set means the
/// preimage is undefined.
pub fn brute_preimage(f: &Mapping, y: &Shape, domain: &Shape) -> Result<Preimage> {
    if y.kind() != domain.kind() {
        return Err(Error::KindMismatch { left: domain.kind(), right: y.kind() });
    }
    // Pull the relevant geometry back into the domain frame step by step.
    let mut relevant: Vec<Shape> = vec![y.clone()];
    for step in f.steps().iter().rev() {
        match step {
            crate::mapping::Step::Affine(g) => {
                let inv = g.inverse();
                for s in &mut relevant {
                    *s = inv.apply_shape(s);
                }
            }
            crate::mapping::Step::Add(a) => relevant.push(a.clone()),
            crate::mapping::Step::Subtract(b) => relevant.push(b.clone()),
        }
    }
    let mut arena = vec![domain.clone()];
    arena.extend(relevant);
    let decomposition = FragmentDecomposition::new(&arena)?;
    let alphabet: Vec<&Shape> = decomposition
        .fragments()
        .iter()
        .filter(|frag| frag.part_of_k(domain))
        .collect();
    if alphabet.len() > MAX_FRAGMENTS {
        return Err(Error::TooManyFragments { count: alphabet.len(), limit: MAX_FRAGMENTS });
    }

    // Depth-first over include/exclude, carrying the running sum.
    let mut kept: Vec<u32> = Vec::new();
    let mut stack: Vec<(usize, Shape, u32)> = vec![(0, Shape::empty(domain.kind()), 0)];
    while let Some((i, sum, mask)) = stack.pop() {
        if i == alphabet.len() {
            if f.image(&sum)?.part_of(y)? {
                kept.push(mask);
            }
            continue;
        }
        stack.push((i + 1, sum.clone(), mask));
        stack.push((i + 1, sum.sum_k(alphabet[i]), mask | (1 << i)));
    }
    if kept.is_empty() {
        return Ok(Preimage::Undefined);
    }
    let union = kept.iter().fold(0u32, |acc, m| acc | m);
    assert!(
        kept.contains(&union),
        "filtered preimage set must contain its own supremum"
    );
    let mut best = Shape::empty(domain.kind());
    for (i, frag) in alphabet.iter().enumerate() {
        if union & (1 << i) != 0 {
            best = best.sum_k(frag);
        }
    }
    Ok(Preimage::Defined(best))
}
