//! Points, segments and carrier lines with exact rational coordinates.
//!
//! A [`Segment`] is a closed, positive-length piece of a line. Its carrier
//! line is identified by a [`LineKey`], an integer normal form of
//! `a·x + b·y = c`; two segments are collinear exactly when their keys are
//! equal. Collinear segments are ordered along their carrier by a single
//! rational parameter, which is what the maximal-element machinery in
//! [`crate::shape`] works with.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use num::{BigInt, BigRational, Integer, Signed, Zero};
use std::fmt;

/// A point in the plane.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Point {
    /// Horizontal coordinate.
    pub x: Scalar,
    /// Vertical coordinate.
    pub y: Scalar,
}

impl Point {
    pub fn new(x: Scalar, y: Scalar) -> Point {
        Point { x, y }
    }

    /// Convenience constructor from integer coordinates.
    pub fn at(x: i64, y: i64) -> Point {
        Point::new(Scalar::from(x), Scalar::from(y))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A closed line segment with distinct endpoints, stored with the
/// lexicographically smaller endpoint first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Segment {
    a: Point,
    b: Point,
}

impl Segment {
    /// Builds a segment, ordering the endpoints canonically.
    ///
    /// Returns [`Error::DegenerateElement`] when the endpoints coincide:
    /// a line has positive length, so zero-length segments are not shapes.
    pub fn new(p: Point, q: Point) -> Result<Segment> {
        match p.cmp(&q) {
            std::cmp::Ordering::Less => Ok(Segment { a: p, b: q }),
            std::cmp::Ordering::Greater => Ok(Segment { a: q, b: p }),
            std::cmp::Ordering::Equal => Err(Error::DegenerateElement),
        }
    }

    /// The lexicographically smaller endpoint.
    pub fn a(&self) -> &Point {
        &self.a
    }

    /// The lexicographically larger endpoint.
    pub fn b(&self) -> &Point {
        &self.b
    }

    /// Normal form of the carrier line.
    pub fn line_key(&self) -> LineKey {
        LineKey::through(&self.a, &self.b)
    }

    /// Carrier-line parameters of the two endpoints, smaller first.
    ///
    /// Endpoint order agrees with parameter order: the parameter is `x`
    /// except on vertical lines where it is `y`, and lexicographic
    /// comparison looks at `x` first.
    pub fn span(&self) -> (Scalar, Scalar) {
        let key = self.line_key();
        (key.param_of(&self.a), key.param_of(&self.b))
    }

    /// True when `p` lies on this closed segment.
    pub fn contains_point(&self, p: &Point) -> bool {
        let key = self.line_key();
        if !key.contains(p) {
            return false;
        }
        let t = key.param_of(p);
        let (lo, hi) = self.span();
        lo <= t && t <= hi
    }

    /// True when the two closed segments share at least one point.
    pub fn intersects(&self, other: &Segment) -> bool {
        let k1 = self.line_key();
        let k2 = other.line_key();
        if k1 == k2 {
            let (lo1, hi1) = self.span();
            let (lo2, hi2) = other.span();
            return lo1.max(lo2) <= hi1.min(hi2);
        }
        match k1.intersection(&k2) {
            None => false,
            Some(p) => self.contains_point(&p) && other.contains_point(&p),
        }
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

/// Integer normal form `a·x + b·y = c` of a line.
///
/// Invariants: `gcd(|a|, |b|, |c|) = 1`, `(a, b) != (0, 0)`, and the first
/// nonzero of `(a, b)` is positive. Two segments are collinear iff their
/// keys are equal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct LineKey {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl LineKey {
    /// The line through two distinct points.
    pub fn through(p: &Point, q: &Point) -> LineKey {
        debug_assert!(p != q);
        // Normal vector is the direction rotated a quarter turn.
        let a = q.y.ratio() - p.y.ratio();
        let b = p.x.ratio() - q.x.ratio();
        let c = &a * p.x.ratio() + &b * p.y.ratio();
        LineKey::normalize(a, b, c)
    }

    fn normalize(a: BigRational, b: BigRational, c: BigRational) -> LineKey {
        // Clear denominators, then divide by the gcd and fix the sign.
        let scale = a.denom().lcm(b.denom()).lcm(c.denom());
        let mut ai = (a * BigRational::from_integer(scale.clone())).to_integer();
        let mut bi = (b * BigRational::from_integer(scale.clone())).to_integer();
        let mut ci = (c * BigRational::from_integer(scale)).to_integer();
        let g = ai.gcd(&bi).gcd(&ci);
        debug_assert!(!g.is_zero());
        ai /= &g;
        bi /= &g;
        ci /= &g;
        let flip = if ai.is_zero() { bi.is_negative() } else { ai.is_negative() };
        if flip {
            ai = -ai;
            bi = -bi;
            ci = -ci;
        }
        LineKey { a: ai, b: bi, c: ci }
    }

    /// True when the point satisfies the line equation.
    pub fn contains(&self, p: &Point) -> bool {
        let lhs = BigRational::from_integer(self.a.clone()) * p.x.ratio()
            + BigRational::from_integer(self.b.clone()) * p.y.ratio();
        lhs == BigRational::from_integer(self.c.clone())
    }

    /// True for vertical lines (`x` constant), which are parameterized by `y`.
    pub fn is_vertical(&self) -> bool {
        self.b.is_zero()
    }

    /// The parameter of a point on this line: its `x` coordinate, or its
    /// `y` coordinate on vertical lines.
    pub fn param_of(&self, p: &Point) -> Scalar {
        debug_assert!(self.contains(p));
        if self.is_vertical() {
            p.y.clone()
        } else {
            p.x.clone()
        }
    }

    /// The point of this line at a given parameter value.
    pub fn point_at(&self, t: &Scalar) -> Point {
        if self.is_vertical() {
            // x = c / a
            let x = BigRational::new(self.c.clone(), self.a.clone());
            Point::new(Scalar::from_ratio(x), t.clone())
        } else {
            // y = (c - a·x) / b
            let num = BigRational::from_integer(self.c.clone())
                - BigRational::from_integer(self.a.clone()) * t.ratio();
            let y = num / BigRational::from_integer(self.b.clone());
            Point::new(t.clone(), Scalar::from_ratio(y))
        }
    }

    /// The unique intersection point of two non-parallel lines.
    ///
    /// Returns `None` for parallel (including equal) lines.
    pub fn intersection(&self, other: &LineKey) -> Option<Point> {
        let det = &self.a * &other.b - &other.a * &self.b;
        if det.is_zero() {
            return None;
        }
        let x = BigRational::new(&self.c * &other.b - &other.c * &self.b, det.clone());
        let y = BigRational::new(&self.a * &other.c - &other.a * &self.c, det);
        Some(Point::new(Scalar::from_ratio(x), Scalar::from_ratio(y)))
    }
}
