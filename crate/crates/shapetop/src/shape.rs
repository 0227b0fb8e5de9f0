//! Shapes in maximal-element form and their algebra.
//!
//! A [`Shape`] is a finite arrangement of basic elements of one kind:
//! points, or line segments. Segment shapes are kept in *maximal* form —
//! the fewest, biggest segments that draw the same figure — so structural
//! equality coincides with shape equality. The algebra of sum, product and
//! difference is driven entirely by the part relation: sum is drawing one
//! shape over another, product is the largest common part, difference is
//! erasing.
//!
//! ```
//! use shapetop::{Point, Shape};
//!
//! let left = Shape::segment(Point::at(0, 0), Point::at(2, 0))?;
//! let right = Shape::segment(Point::at(1, 0), Point::at(4, 0))?;
//! // Overlapping collinear segments fuse into one maximal segment.
//! let both = left.sum(&right)?;
//! assert_eq!(both, Shape::segment(Point::at(0, 0), Point::at(4, 0))?);
//! assert!(left.part_of(&both)?);
//! # Ok::<(), shapetop::Error>(())
//! ```

use crate::error::{Error, Result};
use crate::geom::{LineKey, Point, Segment};
use crate::interval::{self, Iv};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// The kind of basic element a shape is made of.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Kind {
    /// Shapes made of points.
    U0,
    /// Shapes made of line segments.
    U1,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::U0 => write!(f, "U0"),
            Kind::U1 => write!(f, "U1"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Repr {
    Points(BTreeSet<Point>),
    Segments(Vec<Segment>),
}

/// A shape in canonical maximal form.
///
/// The empty shape of each kind is the shape with no elements; it is the
/// bottom of the part order and is distinct from the empty shape of the
/// other kind. Cross-kind operations are errors, never coercions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Shape(Repr);

impl Shape {
    /// The empty shape of a kind.
    pub fn empty(kind: Kind) -> Shape {
        match kind {
            Kind::U0 => Shape(Repr::Points(BTreeSet::new())),
            Kind::U1 => Shape(Repr::Segments(Vec::new())),
        }
    }

    /// A point shape; duplicates collapse.
    pub fn from_points<I: IntoIterator<Item = Point>>(points: I) -> Shape {
        Shape(Repr::Points(points.into_iter().collect()))
    }

    /// The shape of a single point.
    pub fn point(p: Point) -> Shape {
        Shape::from_points([p])
    }

    /// A segment shape reduced to its maximal elements.
    ///
    /// Collinear segments that overlap or touch end to end merge into one.
    pub fn from_segments<I: IntoIterator<Item = Segment>>(segments: I) -> Shape {
        let mut lines: BTreeMap<LineKey, Vec<Iv>> = BTreeMap::new();
        for seg in segments {
            let (lo, hi) = seg.span();
            lines.entry(seg.line_key()).or_default().push((lo, hi));
        }
        for ivs in lines.values_mut() {
            let merged = interval::union(ivs, &[]);
            *ivs = merged;
        }
        Shape::from_lines(lines)
    }

    /// Builds a segment shape from raw endpoint pairs.
    ///
    /// Returns [`Error::DegenerateElement`] if any pair coincides.
    pub fn from_endpoints<I: IntoIterator<Item = (Point, Point)>>(pairs: I) -> Result<Shape> {
        let segments: Result<Vec<Segment>> =
            pairs.into_iter().map(|(p, q)| Segment::new(p, q)).collect();
        Ok(Shape::from_segments(segments?))
    }

    /// The shape of a single segment.
    pub fn segment(p: Point, q: Point) -> Result<Shape> {
        Ok(Shape::from_segments([Segment::new(p, q)?]))
    }

    fn from_lines(lines: BTreeMap<LineKey, Vec<Iv>>) -> Shape {
        let mut segments = Vec::new();
        for (key, ivs) in &lines {
            for (lo, hi) in ivs {
                let seg = Segment::new(key.point_at(lo), key.point_at(hi))
                    .expect("canonical intervals have positive length");
                segments.push(seg);
            }
        }
        segments.sort();
        Shape(Repr::Segments(segments))
    }

    /// Per-carrier-line interval view of a segment shape.
    pub(crate) fn lines(&self) -> BTreeMap<LineKey, Vec<Iv>> {
        let mut lines: BTreeMap<LineKey, Vec<Iv>> = BTreeMap::new();
        if let Repr::Segments(segs) = &self.0 {
            for seg in segs {
                let (lo, hi) = seg.span();
                lines.entry(seg.line_key()).or_default().push((lo, hi));
            }
        }
        // Canonical shapes keep collinear intervals sorted and separated
        // already; the grouping preserves that.
        lines
    }

    pub fn kind(&self) -> Kind {
        match &self.0 {
            Repr::Points(_) => Kind::U0,
            Repr::Segments(_) => Kind::U1,
        }
    }

    pub fn is_empty(&self) -> bool {
        match &self.0 {
            Repr::Points(ps) => ps.is_empty(),
            Repr::Segments(ss) => ss.is_empty(),
        }
    }

    /// Number of maximal elements.
    pub fn element_count(&self) -> usize {
        match &self.0 {
            Repr::Points(ps) => ps.len(),
            Repr::Segments(ss) => ss.len(),
        }
    }

    /// The points of a point shape, in canonical order; empty for segment shapes.
    pub fn points(&self) -> impl Iterator<Item = &Point> + '_ {
        let set = match &self.0 {
            Repr::Points(ps) => Some(ps),
            Repr::Segments(_) => None,
        };
        set.into_iter().flatten()
    }

    /// The maximal segments of a segment shape, in canonical order; empty
    /// for point shapes.
    pub fn segments(&self) -> impl Iterator<Item = &Segment> + '_ {
        let list = match &self.0 {
            Repr::Segments(ss) => Some(ss),
            Repr::Points(_) => None,
        };
        list.into_iter().flatten()
    }

    fn check_kind(&self, other: &Shape) -> Result<()> {
        if self.kind() == other.kind() {
            Ok(())
        } else {
            Err(Error::KindMismatch { left: self.kind(), right: other.kind() })
        }
    }

    /// Sum: the shape drawn by drawing both shapes.
    pub fn sum(&self, other: &Shape) -> Result<Shape> {
        self.check_kind(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Points(a), Repr::Points(b)) => {
                Shape(Repr::Points(a.union(b).cloned().collect()))
            }
            _ => {
                let mut lines = self.lines();
                for (key, ivs) in other.lines() {
                    let entry = lines.entry(key).or_default();
                    *entry = interval::union(entry, &ivs);
                }
                Shape::from_lines(lines)
            }
        })
    }

    /// Product: the largest part shared by both shapes; empty when they
    /// share no part.
    pub fn product(&self, other: &Shape) -> Result<Shape> {
        self.check_kind(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Points(a), Repr::Points(b)) => {
                Shape(Repr::Points(a.intersection(b).cloned().collect()))
            }
            _ => {
                let theirs = other.lines();
                let mut lines = BTreeMap::new();
                for (key, ivs) in self.lines() {
                    if let Some(other_ivs) = theirs.get(&key) {
                        let meet = interval::intersection(&ivs, other_ivs);
                        if !meet.is_empty() {
                            lines.insert(key, meet);
                        }
                    }
                }
                Shape::from_lines(lines)
            }
        })
    }

    /// Difference: erases from `self` every part shared with `other`.
    pub fn difference(&self, other: &Shape) -> Result<Shape> {
        self.check_kind(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Points(a), Repr::Points(b)) => {
                Shape(Repr::Points(a.difference(b).cloned().collect()))
            }
            _ => {
                let theirs = other.lines();
                let mut lines = BTreeMap::new();
                for (key, ivs) in self.lines() {
                    let rest = match theirs.get(&key) {
                        Some(other_ivs) => interval::difference(&ivs, other_ivs),
                        None => ivs,
                    };
                    if !rest.is_empty() {
                        lines.insert(key, rest);
                    }
                }
                Shape::from_lines(lines)
            }
        })
    }

    /// The part relation: every maximal element of `self` is embedded in a
    /// maximal element of `other`. A partial order on canonical forms; on
    /// point shapes it is the subset relation.
    pub fn part_of(&self, other: &Shape) -> Result<bool> {
        self.check_kind(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Points(a), Repr::Points(b)) => a.is_subset(b),
            _ => {
                let theirs = other.lines();
                self.lines().iter().all(|(key, ivs)| match theirs.get(key) {
                    Some(other_ivs) => {
                        ivs.iter().all(|(lo, hi)| interval::contains(other_ivs, lo, hi))
                    }
                    None => false,
                })
            }
        })
    }

    /// Strict part: part of, and not equal.
    pub fn proper_part_of(&self, other: &Shape) -> Result<bool> {
        Ok(self != other && self.part_of(other)?)
    }

    /// True when the two shapes share no part (their product is empty).
    pub fn disjoint_from(&self, other: &Shape) -> Result<bool> {
        Ok(self.product(other)?.is_empty())
    }

    /// The boundary of a nonempty segment shape: the point shape of the
    /// endpoints of its maximal segments. The result is of one dimension
    /// lower, so it is never part of the original shape.
    ///
    /// Point shapes have no boundary ([`Error::KindMismatch`]) and the
    /// empty shape has no boundary ([`Error::EmptyShape`]).
    pub fn boundary(&self) -> Result<Shape> {
        match &self.0 {
            Repr::Points(_) => Err(Error::KindMismatch { left: self.kind(), right: Kind::U1 }),
            Repr::Segments(segs) => {
                if segs.is_empty() {
                    return Err(Error::EmptyShape);
                }
                let mut points = BTreeSet::new();
                for seg in segs {
                    points.insert(seg.a().clone());
                    points.insert(seg.b().clone());
                }
                Ok(Shape(Repr::Points(points)))
            }
        }
    }

    /// True when a maximal element of `self` shares at least one point with
    /// a maximal element of `other`.
    pub fn touches(&self, other: &Shape) -> Result<bool> {
        self.check_kind(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Points(a), Repr::Points(b)) => !a.is_disjoint(b),
            (Repr::Segments(a), Repr::Segments(b)) => {
                a.iter().any(|s| b.iter().any(|t| s.intersects(t)))
            }
            _ => unreachable!("kinds checked above"),
        })
    }

    /// True when the shape looks like one piece: its maximal elements form
    /// a connected intersection graph. Point shapes look connected only
    /// with at most one point, since distinct points never touch.
    pub fn visually_connected(&self) -> bool {
        match &self.0 {
            Repr::Points(ps) => ps.len() <= 1,
            Repr::Segments(segs) => {
                if segs.len() <= 1 {
                    return true;
                }
                // Breadth-first walk over the intersection graph.
                let mut seen = vec![false; segs.len()];
                let mut queue = vec![0usize];
                seen[0] = true;
                let mut reached = 1;
                while let Some(i) = queue.pop() {
                    for (j, other) in segs.iter().enumerate() {
                        if !seen[j] && segs[i].intersects(other) {
                            seen[j] = true;
                            reached += 1;
                            queue.push(j);
                        }
                    }
                }
                reached == segs.len()
            }
        }
    }

    // Same-kind helpers for internal callers that already hold the
    // kind invariant.
    pub(crate) fn sum_k(&self, other: &Shape) -> Shape {
        self.sum(other).expect("same-kind invariant")
    }

    pub(crate) fn product_k(&self, other: &Shape) -> Shape {
        self.product(other).expect("same-kind invariant")
    }

    pub(crate) fn difference_k(&self, other: &Shape) -> Shape {
        self.difference(other).expect("same-kind invariant")
    }

    pub(crate) fn part_of_k(&self, other: &Shape) -> bool {
        self.part_of(other).expect("same-kind invariant")
    }
}

impl fmt::Display for Shape {
    /// The empty shape prints as `0`; otherwise elements print in file
    /// syntax joined by `; `, e.g. `seg 0 0 2 0; seg 0 1 2 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        match &self.0 {
            Repr::Points(ps) => {
                let parts: Vec<String> =
                    ps.iter().map(|p| format!("pt {} {}", p.x, p.y)).collect();
                write!(f, "{}", parts.join("; "))
            }
            Repr::Segments(ss) => {
                let parts: Vec<String> = ss
                    .iter()
                    .map(|s| format!("seg {} {} {} {}", s.a().x, s.a().y, s.b().x, s.b().y))
                    .collect();
                write!(f, "{}", parts.join("; "))
            }
        }
    }
}
