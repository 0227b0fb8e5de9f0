//! The space of a shape relative to a topology.
//!
//! A shape has no points of its own. Relative to a topology, though, the
//! elements of the unique reduced basis play the role of points: each open
//! part corresponds to the set of basis elements embedded in it, and those
//! index sets form an honest set topology that is order-isomorphic to the
//! lattice of open parts. Different topologies on the same shape induce
//! different spaces.
//!
//! ```
//! use shapetop::space::{check_isomorphism, space_of, star_topology};
//! use shapetop::{GenerateOptions, Point, Shape, Topology};
//!
//! let carrier = Shape::segment(Point::at(0, 0), Point::at(3, 0))?;
//! let left = Shape::segment(Point::at(0, 0), Point::at(2, 0))?;
//! let right = Shape::segment(Point::at(1, 0), Point::at(3, 0))?;
//! let t = Topology::generate(&[left, right], &carrier, GenerateOptions::default())?;
//!
//! // Three points: [0,2], [1,3] and their overlap [1,2].
//! assert_eq!(space_of(&t).len(), 3);
//! let star = star_topology(&t);
//! assert!(check_isomorphism(&t, &star).isomorphic);
//! # Ok::<(), shapetop::Error>(())
//! ```

use crate::error::{Error, Result};
use crate::shape::Shape;
use crate::topology::Topology;
use std::collections::{BTreeMap, BTreeSet};

/// A point of the space of a shape: a reduced-basis element with its
/// canonical index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpacePoint {
    /// Position in the canonical point list.
    pub index: usize,
    /// The reduced-basis element this point stands for.
    pub shape: Shape,
}

/// A finite topology on abstract points: families of index sets closed
/// under union and intersection, containing the empty set and the full set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetTopology {
    points: Vec<SpacePoint>,
    open_sets: BTreeSet<BTreeSet<usize>>,
}

impl SetTopology {
    /// Wraps points and open sets after checking the structural invariants.
    pub fn new(
        points: Vec<SpacePoint>,
        open_sets: BTreeSet<BTreeSet<usize>>,
    ) -> Result<SetTopology> {
        let n = points.len();
        for (i, p) in points.iter().enumerate() {
            if p.index != i {
                return Err(Error::InvalidSetTopology {
                    reason: format!("point at position {i} carries index {}", p.index),
                });
            }
        }
        let distinct: BTreeSet<&Shape> = points.iter().map(|p| &p.shape).collect();
        if distinct.len() != n {
            return Err(Error::InvalidSetTopology { reason: "duplicate point shapes".into() });
        }
        let full: BTreeSet<usize> = (0..n).collect();
        if !open_sets.contains(&BTreeSet::new()) {
            return Err(Error::InvalidSetTopology { reason: "missing the empty set".into() });
        }
        if !open_sets.contains(&full) {
            return Err(Error::InvalidSetTopology { reason: "missing the full point set".into() });
        }
        for set in &open_sets {
            if let Some(&bad) = set.iter().find(|&&i| i >= n) {
                return Err(Error::InvalidSetTopology {
                    reason: format!("open set uses unknown point index {bad}"),
                });
            }
        }
        for a in &open_sets {
            for b in &open_sets {
                let union: BTreeSet<usize> = a.union(b).copied().collect();
                if !open_sets.contains(&union) {
                    return Err(Error::InvalidSetTopology {
                        reason: format!("union of {a:?} and {b:?} is not open"),
                    });
                }
                let meet: BTreeSet<usize> = a.intersection(b).copied().collect();
                if !open_sets.contains(&meet) {
                    return Err(Error::InvalidSetTopology {
                        reason: format!("intersection of {a:?} and {b:?} is not open"),
                    });
                }
            }
        }
        Ok(SetTopology { points, open_sets })
    }

    pub fn points(&self) -> &[SpacePoint] {
        &self.points
    }

    /// The open sets as a family of index sets.
    pub fn open_sets(&self) -> &BTreeSet<BTreeSet<usize>> {
        &self.open_sets
    }
}

/// The points of the space of a shape relative to a topology: the reduced
/// basis, indexed in canonical order.
pub fn space_of(t: &Topology) -> Vec<SpacePoint> {
    t.reduced_basis()
        .elements_sorted()
        .into_iter()
        .cloned()
        .enumerate()
        .map(|(index, shape)| SpacePoint { index, shape })
        .collect()
}

/// The set topology induced on the space: one open set per open part,
/// holding the points embedded in it.
///
/// The empty open part maps to the empty set, and the points of each open
/// set sum back to their open part.
pub fn star_topology(t: &Topology) -> SetTopology {
    let points = space_of(t);
    let open_sets: BTreeSet<BTreeSet<usize>> = t
        .opens()
        .iter()
        .map(|open| {
            points
                .iter()
                .filter(|p| p.shape.part_of_k(open))
                .map(|p| p.index)
                .collect()
        })
        .collect();
    SetTopology { points, open_sets }
}

/// Outcome of an isomorphism check, with a human-readable witness when the
/// structures disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsomorphismReport {
    pub isomorphic: bool,
    /// Why the check failed, if it did.
    pub witness: Option<String>,
}

impl IsomorphismReport {
    fn fail(witness: String) -> IsomorphismReport {
        IsomorphismReport { isomorphic: false, witness: Some(witness) }
    }
}

/// Verifies that a set topology is the space-theoretic version of `t`:
/// the map from each open part to its embedded-point set is a bijection
/// onto the open sets, preserves the order both ways, and the points of
/// each image sum back to their open part.
pub fn check_isomorphism(t: &Topology, st: &SetTopology) -> IsomorphismReport {
    let points = st.points();
    let mut image: BTreeMap<&Shape, BTreeSet<usize>> = BTreeMap::new();
    for open in t.opens() {
        let set: BTreeSet<usize> = points
            .iter()
            .filter(|p| p.shape.kind() == open.kind() && p.shape.part_of_k(open))
            .map(|p| p.index)
            .collect();
        image.insert(open, set);
    }

    // Bijectivity: distinct opens induce distinct sets, and the induced
    // family is exactly the given one.
    let induced: BTreeSet<&BTreeSet<usize>> = image.values().collect();
    if induced.len() != t.opens().len() {
        let mut seen: BTreeMap<&BTreeSet<usize>, &Shape> = BTreeMap::new();
        for (open, set) in &image {
            if let Some(first) = seen.get(set) {
                return IsomorphismReport::fail(format!(
                    "opens {{{first}}} and {{{open}}} induce the same point set {set:?}"
                ));
            }
            seen.insert(set, open);
        }
    }
    if t.opens().len() != st.open_sets().len() {
        return IsomorphismReport::fail(format!(
            "{} opens against {} open sets",
            t.opens().len(),
            st.open_sets().len()
        ));
    }
    for (open, set) in &image {
        if !st.open_sets().contains(set) {
            return IsomorphismReport::fail(format!(
                "open {{{open}}} induces {set:?}, which is not an open set"
            ));
        }
    }
    if let Some(empty_image) = image.get(&Shape::empty(t.carrier().kind())) {
        if !empty_image.is_empty() {
            return IsomorphismReport::fail(
                "the empty shape does not map to the empty set".into(),
            );
        }
    }

    // Order preservation in both directions.
    for (c, bc) in &image {
        for (d, bd) in &image {
            let shape_leq = c.part_of_k(d);
            let set_leq = bc.is_subset(bd);
            if shape_leq != set_leq {
                return IsomorphismReport::fail(format!(
                    "order disagrees on {{{c}}} vs {{{d}}}: part relation {shape_leq}, \
                     inclusion {set_leq}"
                ));
            }
        }
    }

    // Sum recovery: the points of each open set reconstruct the open part.
    for (open, set) in &image {
        let mut total = Shape::empty(t.carrier().kind());
        for &i in set.iter() {
            total = total.sum_k(&points[i].shape);
        }
        if &total != *open {
            return IsomorphismReport::fail(format!(
                "points of {set:?} sum to {{{total}}}, not {{{open}}}"
            ));
        }
    }

    IsomorphismReport { isomorphic: true, witness: None }
}
