//! Mappings between shapes, images, preimages and continuity.
//!
//! A mapping is a composition of primitive steps — an invertible affine
//! transformation, drawing a fixed shape on top (`Add`), or erasing one
//! (`Subtract`). Every step has an exact closed-form preimage, composed in
//! reverse step order, so the preimage of a part is computed rather than
//! searched for.
//!
//! The preimage of `y` is the largest part of the domain whose image is
//! embedded in `y`. It may not exist: adding `A` means every image contains
//! `A`, so a target part that lacks `A` has no preimage at all. An absent
//! preimage is the [`Preimage::Undefined`] value, never the empty shape —
//! erasing everything still leaves an empty drawing, while "no preimage"
//! leaves nothing to draw.
//!
//! A mapping is continuous between two topologies when pulling opens back
//! lands on opens and respects sums and products — a lattice homomorphism
//! of the open-part lattices that preserves the top element.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::shape::{Kind, Shape};
use crate::topology::Topology;
use std::collections::BTreeMap;
use std::fmt;

/// An invertible affine transformation of the plane: `p -> M p + v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    m: [[Scalar; 2]; 2],
    v: [Scalar; 2],
}

impl AffineMap {
    /// Builds the map from a matrix and translation.
    ///
    /// Returns [`Error::SingularAffine`] when the matrix has zero
    /// determinant; preimages need the inverse.
    pub fn new(m: [[Scalar; 2]; 2], v: [Scalar; 2]) -> Result<AffineMap> {
        let map = AffineMap { m, v };
        if map.determinant().is_zero() {
            return Err(Error::SingularAffine);
        }
        Ok(map)
    }

    /// The identity transformation.
    pub fn identity() -> AffineMap {
        AffineMap {
            m: [[Scalar::one(), Scalar::zero()], [Scalar::zero(), Scalar::one()]],
            v: [Scalar::zero(), Scalar::zero()],
        }
    }

    /// Pure translation by `(dx, dy)`.
    pub fn translation(dx: Scalar, dy: Scalar) -> AffineMap {
        AffineMap {
            m: [[Scalar::one(), Scalar::zero()], [Scalar::zero(), Scalar::one()]],
            v: [dx, dy],
        }
    }

    /// Quarter-turn counterclockwise about the origin.
    pub fn rotation_quarter() -> AffineMap {
        AffineMap {
            m: [[Scalar::zero(), -Scalar::one()], [Scalar::one(), Scalar::zero()]],
            v: [Scalar::zero(), Scalar::zero()],
        }
    }

    pub fn matrix(&self) -> &[[Scalar; 2]; 2] {
        &self.m
    }

    pub fn translation_part(&self) -> &[Scalar; 2] {
        &self.v
    }

    fn determinant(&self) -> Scalar {
        &self.m[0][0] * &self.m[1][1] - &self.m[0][1] * &self.m[1][0]
    }

    /// The inverse transformation.
    pub fn inverse(&self) -> AffineMap {
        let det = self.determinant();
        let inv = [
            [&self.m[1][1] / &det, (-&self.m[0][1]) / &det],
            [(-&self.m[1][0]) / &det, &self.m[0][0] / &det],
        ];
        // v' = -M⁻¹ v
        let vx = -(&inv[0][0] * &self.v[0] + &inv[0][1] * &self.v[1]);
        let vy = -(&inv[1][0] * &self.v[0] + &inv[1][1] * &self.v[1]);
        AffineMap { m: inv, v: [vx, vy] }
    }

    /// Applies the map to a point.
    pub fn apply_point(&self, p: &crate::geom::Point) -> crate::geom::Point {
        let x = &self.m[0][0] * &p.x + &self.m[0][1] * &p.y + &self.v[0];
        let y = &self.m[1][0] * &p.x + &self.m[1][1] * &p.y + &self.v[1];
        crate::geom::Point::new(x, y)
    }

    /// Applies the map to every maximal element of a shape exactly.
    ///
    /// Invertible affine maps preserve collinearity and betweenness, so
    /// mapping the endpoints maps the segments.
    pub fn apply_shape(&self, s: &Shape) -> Shape {
        match s.kind() {
            Kind::U0 => Shape::from_points(s.points().map(|p| self.apply_point(p))),
            Kind::U1 => Shape::from_segments(s.segments().map(|seg| {
                crate::geom::Segment::new(
                    self.apply_point(seg.a()),
                    self.apply_point(seg.b()),
                )
                .expect("invertible maps keep endpoints distinct")
            })),
        }
    }
}

/// One primitive step of a mapping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    /// Transform by an invertible affine map.
    Affine(AffineMap),
    /// Draw a fixed shape on top: `x -> x + a`.
    Add(Shape),
    /// Erase a fixed shape: `x -> x - b`.
    Subtract(Shape),
}

impl Step {
    fn shape(&self) -> Option<&Shape> {
        match self {
            Step::Affine(_) => None,
            Step::Add(s) | Step::Subtract(s) => Some(s),
        }
    }
}

/// The preimage of a part: a shape, or nothing at all.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preimage {
    /// The largest part of the domain whose image embeds in the target part.
    Defined(Shape),
    /// No part of the domain has its image embedded in the target part.
    Undefined,
}

impl Preimage {
    pub fn is_defined(&self) -> bool {
        matches!(self, Preimage::Defined(_))
    }

    pub fn shape(&self) -> Option<&Shape> {
        match self {
            Preimage::Defined(s) => Some(s),
            Preimage::Undefined => None,
        }
    }
}

impl fmt::Display for Preimage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preimage::Defined(s) => write!(f, "{s}"),
            Preimage::Undefined => write!(f, "undefined"),
        }
    }
}

/// A mapping: an ordered composition of steps, applied left to right.
///
/// The empty composition is the identity mapping.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Mapping {
    steps: Vec<Step>,
}

impl Mapping {
    /// The identity mapping.
    pub fn identity() -> Mapping {
        Mapping { steps: Vec::new() }
    }

    /// Builds a mapping, checking that all step shapes share one kind.
    pub fn new(steps: Vec<Step>) -> Result<Mapping> {
        let mut kind: Option<Kind> = None;
        for step in &steps {
            if let Some(shape) = step.shape() {
                match kind {
                    None => kind = Some(shape.kind()),
                    Some(k) if k == shape.kind() => {}
                    Some(k) => {
                        return Err(Error::KindMismatch { left: k, right: shape.kind() })
                    }
                }
            }
        }
        Ok(Mapping { steps })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// The kind this mapping works on, if any step pins it down. A purely
    /// affine mapping applies to either kind.
    pub fn kind(&self) -> Option<Kind> {
        self.steps.iter().find_map(|s| s.shape().map(Shape::kind))
    }

    /// The composite mapping: this one, then `other`.
    pub fn then(&self, other: &Mapping) -> Result<Mapping> {
        let mut steps = self.steps.clone();
        steps.extend(other.steps.iter().cloned());
        Mapping::new(steps)
    }

    fn check_kind(&self, x: &Shape) -> Result<()> {
        if let Some(k) = self.kind() {
            if k != x.kind() {
                return Err(Error::KindMismatch { left: x.kind(), right: k });
            }
        }
        Ok(())
    }

    /// The image of a part: the steps applied left to right.
    ///
    /// The image operation is order-preserving: `x <= x'` implies
    /// `f(x) <= f(x')`.
    pub fn image(&self, x: &Shape) -> Result<Shape> {
        self.check_kind(x)?;
        let mut cur = x.clone();
        for step in &self.steps {
            cur = match step {
                Step::Affine(g) => g.apply_shape(&cur),
                Step::Add(a) => cur.sum(a)?,
                Step::Subtract(b) => cur.difference(b)?,
            };
        }
        Ok(cur)
    }

    /// The preimage of `y`: the largest part of `domain` whose image is
    /// embedded in `y`, or [`Preimage::Undefined`] when no part qualifies.
    ///
    /// Closed forms compose in reverse step order: an affine step pulls `y`
    /// back through its inverse, a subtract step allows the erased shape
    /// back in (`y + b`), and an add step demands `a <= y` — the image
    /// always contains `a`, so nothing maps into a part that lacks it.
    pub fn preimage(&self, y: &Shape, domain: &Shape) -> Result<Preimage> {
        self.check_kind(y)?;
        if y.kind() != domain.kind() {
            return Err(Error::KindMismatch { left: domain.kind(), right: y.kind() });
        }
        let mut pulled = y.clone();
        for step in self.steps.iter().rev() {
            match step {
                Step::Affine(g) => pulled = g.inverse().apply_shape(&pulled),
                Step::Subtract(b) => pulled = pulled.sum(b)?,
                Step::Add(a) => {
                    if !a.part_of(&pulled)? {
                        return Ok(Preimage::Undefined);
                    }
                }
            }
        }
        Ok(Preimage::Defined(domain.product(&pulled)?))
    }

    /// Checks continuity between a source and a target topology.
    ///
    /// Requires the mapping to send the source carrier onto the target
    /// carrier. The verdict is positive exactly when every target open
    /// pulls back to a defined, open part of the source, pulling back
    /// commutes with sums and products, and the target carrier pulls back
    /// to the source carrier.
    pub fn is_continuous(
        &self,
        source: &Topology,
        target: &Topology,
    ) -> Result<ContinuityReport> {
        if &self.image(source.carrier())? != target.carrier() {
            return Err(Error::NotOnto);
        }
        let mut table = Vec::new();
        for open in target.opens_sorted() {
            table.push((open.clone(), self.preimage(open, source.carrier())?));
        }

        let violation = self.find_violation(&table, source, target);
        let continuous = violation.is_none();
        let injective = {
            let defined: Vec<&Shape> = table.iter().filter_map(|(_, p)| p.shape()).collect();
            let distinct: std::collections::BTreeSet<&Shape> = defined.iter().copied().collect();
            defined.len() == table.len() && distinct.len() == defined.len()
        };
        Ok(ContinuityReport { continuous, violation, injective, table })
    }

    fn find_violation(
        &self,
        table: &[(Shape, Preimage)],
        source: &Topology,
        target: &Topology,
    ) -> Option<ContinuityViolation> {
        for (open, pre) in table {
            if !pre.is_defined() {
                return Some(ContinuityViolation::UndefinedPreimage { open: open.clone() });
            }
        }
        let pulled: BTreeMap<&Shape, &Shape> = table
            .iter()
            .map(|(open, pre)| (open, pre.shape().expect("checked defined")))
            .collect();
        for (open, pre) in &pulled {
            if !source.is_open(pre) {
                return Some(ContinuityViolation::PreimageNotOpen {
                    open: (*open).clone(),
                    preimage: (*pre).clone(),
                });
            }
        }
        // Homomorphism over all open pairs; products and sums of opens are
        // opens, so their pullbacks are already in the table.
        let opens = target.opens_sorted();
        for (i, c) in opens.iter().enumerate() {
            for d in opens.iter().skip(i) {
                let meet = c.product_k(d);
                let join = c.sum_k(d);
                let lhs_meet = pulled[&meet];
                let rhs_meet = pulled[*c].product_k(pulled[*d]);
                if lhs_meet != &rhs_meet {
                    return Some(ContinuityViolation::ProductNotPreserved {
                        left: (*c).clone(),
                        right: (*d).clone(),
                    });
                }
                let lhs_join = pulled[&join];
                let rhs_join = pulled[*c].sum_k(pulled[*d]);
                if lhs_join != &rhs_join {
                    return Some(ContinuityViolation::SumNotPreserved {
                        left: (*c).clone(),
                        right: (*d).clone(),
                    });
                }
            }
        }
        if pulled[target.carrier()] != source.carrier() {
            return Some(ContinuityViolation::TopNotPreserved {
                preimage: pulled[target.carrier()].clone(),
            });
        }
        None
    }

    /// The closure-image inequality `f(closure(x)) <= closure(f(x))`,
    /// which holds for every part when the mapping is continuous.
    ///
    /// Errors with [`Error::NotContinuous`] when it is not; this operator
    /// is a verification utility for continuous mappings.
    pub fn check_closure_image(
        &self,
        x: &Shape,
        source: &Topology,
        target: &Topology,
    ) -> Result<bool> {
        if !self.is_continuous(source, target)?.continuous {
            return Err(Error::NotContinuous);
        }
        let lhs = self.image(&source.closure(x)?)?;
        let rhs = target.closure(&self.image(x)?)?;
        lhs.part_of(&rhs)
    }
}

/// Outcome of a continuity check, with the pullback table for reporting.
#[derive(Clone, Debug)]
pub struct ContinuityReport {
    pub continuous: bool,
    /// First failing witness, in canonical scan order.
    pub violation: Option<ContinuityViolation>,
    /// Whether the pullback is one-to-one — a structure embedding of the
    /// target lattice into the source lattice.
    pub injective: bool,
    /// Every target open with its pullback, in canonical open order.
    pub table: Vec<(Shape, Preimage)>,
}

/// The first reason a mapping fails to be continuous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ContinuityViolation {
    /// A target open has no preimage.
    UndefinedPreimage { open: Shape },
    /// A target open pulls back to a part that is not open in the source.
    PreimageNotOpen { open: Shape, preimage: Shape },
    /// Pulling back does not commute with the product of two opens.
    ProductNotPreserved { left: Shape, right: Shape },
    /// Pulling back does not commute with the sum of two opens.
    SumNotPreserved { left: Shape, right: Shape },
    /// The target carrier does not pull back to the source carrier.
    TopNotPreserved { preimage: Shape },
}

impl fmt::Display for ContinuityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContinuityViolation::UndefinedPreimage { open } => {
                write!(f, "open {{{open}}} has no preimage")
            }
            ContinuityViolation::PreimageNotOpen { open, preimage } => {
                write!(f, "preimage {{{preimage}}} of open {{{open}}} is not open in the source")
            }
            ContinuityViolation::ProductNotPreserved { left, right } => {
                write!(f, "pullback breaks the product of {{{left}}} and {{{right}}}")
            }
            ContinuityViolation::SumNotPreserved { left, right } => {
                write!(f, "pullback breaks the sum of {{{left}}} and {{{right}}}")
            }
            ContinuityViolation::TopNotPreserved { preimage } => {
                write!(f, "target carrier pulls back to {{{preimage}}}, not the source carrier")
            }
        }
    }
}
