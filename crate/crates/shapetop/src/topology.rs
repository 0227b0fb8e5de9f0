//! Finite topologies on a carrier shape.
//!
//! A topology is a finite family of parts of a carrier shape that contains
//! the empty shape and the carrier and is closed under sum and product.
//! Ordered by the part relation it is a finite distributive lattice — the
//! lattice of open parts. The family can be described by a basis, and every
//! topology has a unique reduced basis: the elements that are not sums of
//! other elements.
//!
//! ```
//! use shapetop::{GenerateOptions, Point, Shape, Topology};
//!
//! let carrier = Shape::segment(Point::at(0, 0), Point::at(3, 0))?;
//! let left = Shape::segment(Point::at(0, 0), Point::at(2, 0))?;
//! let right = Shape::segment(Point::at(1, 0), Point::at(3, 0))?;
//! let t = Topology::generate(&[left, right], &carrier, GenerateOptions::default())?;
//! // 0, [0,2], [1,3], their product [1,2], and the carrier.
//! assert_eq!(t.opens().len(), 5);
//! # Ok::<(), shapetop::Error>(())
//! ```

use crate::error::{Error, Result};
use crate::shape::Shape;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Default cap on the number of open parts a generation may produce.
///
/// The distributive lattice generated by even a few parts can blow up;
/// exceeding the cap is an explicit error, never a truncation.
pub const DEFAULT_MAX_OPENS: usize = 4096;

/// Knobs for [`Topology::generate`].
#[derive(Clone, Copy, Debug)]
pub struct GenerateOptions {
    /// Add the carrier to the generators when they do not sum to it.
    /// When unset, non-exhausting generators are an error.
    pub add_carrier: bool,
    /// Cap on the number of opens.
    pub max_opens: usize,
}

impl Default for GenerateOptions {
    fn default() -> Self {
        GenerateOptions { add_carrier: false, max_opens: DEFAULT_MAX_OPENS }
    }
}

impl GenerateOptions {
    /// Default options with the carrier auto-added when needed.
    pub fn with_carrier() -> Self {
        GenerateOptions { add_carrier: true, ..Default::default() }
    }
}

/// Verdict of a topology-conditions check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopologyCheck {
    /// Whether the family satisfies all three conditions.
    pub ok: bool,
    /// The first violation found, in canonical scan order.
    pub violation: Option<TopologyViolation>,
}

/// The first reason a family of parts fails to be a topology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TopologyViolation {
    /// The empty shape is missing.
    MissingEmpty,
    /// The carrier is missing.
    MissingCarrier,
    /// The sum of two members is not a member.
    SumNotClosed(Shape, Shape),
    /// The product of two members is not a member.
    ProductNotClosed(Shape, Shape),
}

impl fmt::Display for TopologyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TopologyViolation::MissingEmpty => write!(f, "the empty shape is not a member"),
            TopologyViolation::MissingCarrier => write!(f, "the carrier is not a member"),
            TopologyViolation::SumNotClosed(a, b) => {
                write!(f, "sum of {{{a}}} and {{{b}}} is not a member")
            }
            TopologyViolation::ProductNotClosed(a, b) => {
                write!(f, "product of {{{a}}} and {{{b}}} is not a member")
            }
        }
    }
}

/// Result of [`Topology::refine`].
#[derive(Clone, Debug)]
pub struct Refinement {
    /// The refined topology; always at least as fine as the original.
    pub topology: Topology,
    /// Parts that were already open and therefore changed nothing.
    pub already_open: Vec<Shape>,
}

/// Verdict of comparing two topologies (or two reduced bases) on one
/// carrier. `Finer` means the left operand recognizes every part the right
/// one does.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    Finer,
    Coarser,
    Incomparable,
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Comparison::Equal => write!(f, "equal"),
            Comparison::Finer => write!(f, "finer"),
            Comparison::Coarser => write!(f, "coarser"),
            Comparison::Incomparable => write!(f, "incomparable"),
        }
    }
}

/// Topological classification of an arbitrary part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartClass {
    /// Member of the topology.
    pub open: bool,
    /// Relative complement is a member.
    pub closed: bool,
    /// Both open and closed.
    pub clopen: bool,
    /// Meets every nonempty open part.
    pub dense: bool,
    /// Largest open embedded in the part.
    pub interior: Shape,
    /// Smallest open the part is embedded in.
    pub closure: Shape,
}

/// A finite topology: deduplicated open parts over a carrier shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Topology {
    carrier: Shape,
    opens: BTreeSet<Shape>,
}

impl Topology {
    /// The smallest topology on a carrier: `{0, S}`.
    pub fn minimal(carrier: Shape) -> Result<Topology> {
        if carrier.is_empty() {
            return Err(Error::EmptyShape);
        }
        let opens = BTreeSet::from([Shape::empty(carrier.kind()), carrier.clone()]);
        Ok(Topology { carrier, opens })
    }

    /// Generates the smallest topology containing `parts`.
    ///
    /// Runs the recursive closure: starting from the parts and the empty
    /// shape, keep adding pairwise sums and products until nothing new
    /// appears. Generators must be nonempty parts of the carrier. When they
    /// do not sum to the carrier, the carrier itself joins the generators
    /// under [`GenerateOptions::add_carrier`]; otherwise the call fails
    /// with [`Error::DoesNotExhaust`].
    pub fn generate(parts: &[Shape], carrier: &Shape, opts: GenerateOptions) -> Result<Topology> {
        if carrier.is_empty() {
            return Err(Error::EmptyShape);
        }
        let mut seed: BTreeSet<Shape> = BTreeSet::new();
        seed.insert(Shape::empty(carrier.kind()));
        let mut total = Shape::empty(carrier.kind());
        for part in parts {
            if part.is_empty() {
                return Err(Error::EmptyShape);
            }
            if !part.part_of(carrier)? {
                return Err(Error::MemberNotPart { member: part.to_string() });
            }
            total = total.sum_k(part);
            seed.insert(part.clone());
        }
        if &total != carrier {
            if !opts.add_carrier {
                return Err(Error::DoesNotExhaust);
            }
            seed.insert(carrier.clone());
        }
        let opens = close_under_sum_and_product(seed, opts.max_opens)?;
        Ok(Topology { carrier: carrier.clone(), opens })
    }

    /// Wraps an existing family after checking the topology conditions.
    pub fn from_opens<I: IntoIterator<Item = Shape>>(opens: I, carrier: Shape) -> Result<Topology> {
        if carrier.is_empty() {
            return Err(Error::EmptyShape);
        }
        let family: BTreeSet<Shape> = opens.into_iter().collect();
        let check = Topology::check_family(&family, &carrier)?;
        match check.violation {
            None => Ok(Topology { carrier, opens: family }),
            Some(v) => Err(Error::NotATopology { reason: v.to_string() }),
        }
    }

    /// Checks the three topology conditions on a candidate family, reporting
    /// the first violation. Members that are not parts of the carrier are an
    /// error, not a verdict.
    pub fn check_family(family: &BTreeSet<Shape>, carrier: &Shape) -> Result<TopologyCheck> {
        for member in family {
            if !member.part_of(carrier)? {
                return Err(Error::MemberNotPart { member: member.to_string() });
            }
        }
        let violation = first_violation(family, carrier);
        Ok(TopologyCheck { ok: violation.is_none(), violation })
    }

    pub fn carrier(&self) -> &Shape {
        &self.carrier
    }

    /// The open parts, ordered by the derived shape order.
    pub fn opens(&self) -> &BTreeSet<Shape> {
        &self.opens
    }

    /// The open parts sorted by (element count, shape order) — the order
    /// used by writers, diagrams and reports.
    pub fn opens_sorted(&self) -> Vec<&Shape> {
        let mut v: Vec<&Shape> = self.opens.iter().collect();
        v.sort_by_key(|s| (s.element_count(), (*s).clone()));
        v
    }

    pub fn is_open(&self, x: &Shape) -> bool {
        self.opens.contains(x)
    }

    /// Refines this topology with newly recognized parts.
    ///
    /// Parts that are already open are reported rather than rejected; parts
    /// that are not parts of the carrier are an error.
    pub fn refine(&self, parts: &[Shape]) -> Result<Refinement> {
        let mut already_open = Vec::new();
        let mut seed = self.opens.clone();
        let mut fresh = Vec::new();
        for part in parts {
            if !part.part_of(&self.carrier)? {
                return Err(Error::MemberNotPart { member: part.to_string() });
            }
            if self.is_open(part) {
                already_open.push(part.clone());
            } else {
                seed.insert(part.clone());
                fresh.push(part.clone());
            }
        }
        // The existing opens are already closed; only pairs touching a new
        // part can produce anything.
        let opens = close_from_frontier(seed, fresh, DEFAULT_MAX_OPENS)?;
        Ok(Refinement {
            topology: Topology { carrier: self.carrier.clone(), opens },
            already_open,
        })
    }

    /// True when the proper opens already draw the whole carrier.
    pub fn exhausts(&self) -> bool {
        let mut total = Shape::empty(self.carrier.kind());
        for open in &self.opens {
            if open != &self.carrier {
                total = total.sum_k(open);
            }
        }
        total == self.carrier
    }

    /// The subshape topology `{x · C}` on an arbitrary nonempty part `x`.
    ///
    /// `x` need not be open. When it is, every relative open is also open
    /// here (openness is transitive through open parts).
    pub fn subshape(&self, x: &Shape) -> Result<Topology> {
        if x.is_empty() {
            return Err(Error::EmptyShape);
        }
        if !x.part_of(&self.carrier)? {
            return Err(Error::MemberNotPart { member: x.to_string() });
        }
        let opens: BTreeSet<Shape> = self.opens.iter().map(|c| x.product_k(c)).collect();
        Ok(Topology { carrier: x.clone(), opens })
    }

    /// Compares two topologies on the same carrier by inclusion of their
    /// open families.
    pub fn compare(&self, other: &Topology) -> Result<Comparison> {
        if self.carrier != other.carrier {
            return Err(Error::CarrierMismatch);
        }
        let sup = other.opens.is_subset(&self.opens);
        let sub = self.opens.is_subset(&other.opens);
        Ok(match (sup, sub) {
            (true, true) => Comparison::Equal,
            (true, false) => Comparison::Finer,
            (false, true) => Comparison::Coarser,
            (false, false) => Comparison::Incomparable,
        })
    }

    /// The unique reduced basis: open parts that are not sums of other
    /// open parts.
    pub fn reduced_basis(&self) -> Basis {
        let elements: BTreeSet<Shape> =
            self.opens.iter().filter(|o| !o.is_empty()).cloned().collect();
        Basis::reduce_family(elements, self.carrier.clone())
    }

    fn require_part(&self, x: &Shape) -> Result<()> {
        if !x.part_of(&self.carrier)? {
            return Err(Error::MemberNotPart { member: x.to_string() });
        }
        Ok(())
    }

    /// Largest open embedded in `x`: the sum of all opens that are parts of `x`.
    pub fn interior(&self, x: &Shape) -> Result<Shape> {
        self.require_part(x)?;
        let mut int = Shape::empty(self.carrier.kind());
        for open in &self.opens {
            if open.part_of_k(x) {
                int = int.sum_k(open);
            }
        }
        Ok(int)
    }

    /// Smallest open that `x` is embedded in: the product of all opens
    /// having `x` as a part. The carrier always qualifies, so the product
    /// is finite and nontrivial.
    pub fn closure(&self, x: &Shape) -> Result<Shape> {
        self.require_part(x)?;
        let mut clo = self.carrier.clone();
        for open in &self.opens {
            if x.part_of_k(open) {
                clo = clo.product_k(open);
            }
        }
        Ok(clo)
    }

    /// True when the relative complement of `x` is open.
    pub fn is_closed_part(&self, x: &Shape) -> Result<bool> {
        self.require_part(x)?;
        Ok(self.is_open(&self.carrier.difference_k(x)))
    }

    /// True when `x` meets every nonempty open part.
    pub fn is_dense(&self, x: &Shape) -> Result<bool> {
        self.require_part(x)?;
        Ok(self
            .opens
            .iter()
            .filter(|o| !o.is_empty())
            .all(|o| !x.product_k(o).is_empty()))
    }

    /// Full classification of an arbitrary part of the carrier.
    pub fn classify(&self, x: &Shape) -> Result<PartClass> {
        self.require_part(x)?;
        let open = self.is_open(x);
        let closed = self.is_closed_part(x)?;
        Ok(PartClass {
            open,
            closed,
            clopen: open && closed,
            dense: self.is_dense(x)?,
            interior: self.interior(x)?,
            closure: self.closure(x)?,
        })
    }

    /// Index tables over the opens: sums, products and the part order as
    /// lookups. Internal helper for the quadratic/cubic scans.
    pub(crate) fn tables(&self) -> OpenTables {
        let opens: Vec<Shape> = self.opens_sorted().into_iter().cloned().collect();
        let n = opens.len();
        let index: BTreeMap<Shape, usize> =
            opens.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let mut sum = vec![vec![0usize; n]; n];
        let mut prod = vec![vec![0usize; n]; n];
        for i in 0..n {
            for j in i..n {
                let s = index[&opens[i].sum_k(&opens[j])];
                let p = index[&opens[i].product_k(&opens[j])];
                sum[i][j] = s;
                sum[j][i] = s;
                prod[i][j] = p;
                prod[j][i] = p;
            }
        }
        let empty = index[&Shape::empty(self.carrier.kind())];
        let carrier = index[&self.carrier];
        OpenTables { opens, sum, prod, empty, carrier }
    }
}

/// Closed sum/product tables over a topology's opens; `a <= b` iff
/// `sum[a][b] == b`.
pub(crate) struct OpenTables {
    pub opens: Vec<Shape>,
    pub sum: Vec<Vec<usize>>,
    pub prod: Vec<Vec<usize>>,
    pub empty: usize,
    pub carrier: usize,
}

impl OpenTables {
    pub fn len(&self) -> usize {
        self.opens.len()
    }
}

/// True when `x` is embedded in the sum of the family.
///
/// An empty family covers only the empty shape.
pub fn covers(family: &[Shape], x: &Shape) -> Result<bool> {
    let mut total = Shape::empty(x.kind());
    for member in family {
        total = total.sum(member)?;
    }
    x.part_of(&total)
}

fn first_violation(family: &BTreeSet<Shape>, carrier: &Shape) -> Option<TopologyViolation> {
    if !family.contains(&Shape::empty(carrier.kind())) {
        return Some(TopologyViolation::MissingEmpty);
    }
    if !family.contains(carrier) {
        return Some(TopologyViolation::MissingCarrier);
    }
    let mut members: Vec<&Shape> = family.iter().collect();
    members.sort_by_key(|s| (s.element_count(), (*s).clone()));
    for (i, a) in members.iter().enumerate() {
        for b in members.iter().skip(i + 1) {
            if !family.contains(&a.sum_k(b)) {
                return Some(TopologyViolation::SumNotClosed((*a).clone(), (*b).clone()));
            }
            if !family.contains(&a.product_k(b)) {
                return Some(TopologyViolation::ProductNotClosed((*a).clone(), (*b).clone()));
            }
        }
    }
    None
}

/// Least-fixpoint closure under pairwise sum and product.
fn close_under_sum_and_product(seed: BTreeSet<Shape>, max_opens: usize) -> Result<BTreeSet<Shape>> {
    let frontier: Vec<Shape> = seed.iter().cloned().collect();
    close_from_frontier(seed, frontier, max_opens)
}

/// Closure rounds where only pairs touching the frontier are recombined;
/// pairs of older members were already processed in earlier rounds.
fn close_from_frontier(
    mut opens: BTreeSet<Shape>,
    mut frontier: Vec<Shape>,
    max_opens: usize,
) -> Result<BTreeSet<Shape>> {
    while !frontier.is_empty() {
        let mut fresh: BTreeSet<Shape> = BTreeSet::new();
        for f in &frontier {
            for o in &opens {
                let s = f.sum_k(o);
                if !opens.contains(&s) {
                    fresh.insert(s);
                }
                let p = f.product_k(o);
                if !opens.contains(&p) {
                    fresh.insert(p);
                }
            }
        }
        if opens.len() + fresh.len() > max_opens {
            return Err(Error::BudgetExceeded { limit: max_opens });
        }
        frontier = fresh.iter().cloned().collect();
        opens.extend(fresh);
    }
    Ok(opens)
}

/// A family of nonempty parts that generates a topology by sums.
///
/// Conditions: the elements sum to the carrier, and every pairwise product
/// is an element or a sum of elements. A basis is *reduced* when no element
/// is a sum of the other elements; the reduced basis of a topology is
/// unique, and its elements double as the points of the shape's space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    carrier: Shape,
    elements: BTreeSet<Shape>,
    reduced: bool,
}

impl Basis {
    /// Validates the basis conditions and wraps the family.
    ///
    /// Empty shapes among the elements are dropped (the empty shape is
    /// implicitly a member of every basis).
    pub fn new<I: IntoIterator<Item = Shape>>(elements: I, carrier: Shape) -> Result<Basis> {
        if carrier.is_empty() {
            return Err(Error::EmptyShape);
        }
        let elements: BTreeSet<Shape> =
            elements.into_iter().filter(|e| !e.is_empty()).collect();
        let mut total = Shape::empty(carrier.kind());
        for e in &elements {
            if !e.part_of(&carrier)? {
                return Err(Error::MemberNotPart { member: e.to_string() });
            }
            total = total.sum_k(e);
        }
        if total != carrier {
            return Err(Error::NotABasis {
                reason: "elements do not sum to the carrier".into(),
            });
        }
        let members: Vec<&Shape> = {
            let mut v: Vec<&Shape> = elements.iter().collect();
            v.sort_by_key(|s| (s.element_count(), (*s).clone()));
            v
        };
        for (i, a) in members.iter().enumerate() {
            for b in members.iter().skip(i) {
                let p = a.product_k(b);
                if sum_of_members_below(&elements, &p) != p {
                    return Err(Error::NotABasis {
                        reason: format!(
                            "product of {{{a}}} and {{{b}}} is not an element or a sum of elements"
                        ),
                    });
                }
            }
        }
        let reduced = is_reduced(&elements);
        Ok(Basis { carrier, elements, reduced })
    }

    pub fn carrier(&self) -> &Shape {
        &self.carrier
    }

    pub fn elements(&self) -> &BTreeSet<Shape> {
        &self.elements
    }

    /// Elements sorted by (element count, shape order).
    pub fn elements_sorted(&self) -> Vec<&Shape> {
        let mut v: Vec<&Shape> = self.elements.iter().collect();
        v.sort_by_key(|s| (s.element_count(), (*s).clone()));
        v
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// The topology generated by this basis: the empty shape plus every sum
    /// of elements. Sums suffice; products are covered by the basis
    /// conditions.
    pub fn generate_topology(&self) -> Result<Topology> {
        self.generate_topology_capped(DEFAULT_MAX_OPENS)
    }

    /// As [`Basis::generate_topology`] with an explicit open-part cap.
    pub fn generate_topology_capped(&self, max_opens: usize) -> Result<Topology> {
        let mut opens: BTreeSet<Shape> = BTreeSet::new();
        opens.insert(Shape::empty(self.carrier.kind()));
        for e in &self.elements {
            let sums: Vec<Shape> = opens.iter().map(|s| s.sum_k(e)).collect();
            opens.extend(sums);
            if opens.len() > max_opens {
                return Err(Error::BudgetExceeded { limit: max_opens });
            }
        }
        Ok(Topology { carrier: self.carrier.clone(), opens })
    }

    /// Removes every element that is a sum of the other elements. The
    /// result is the unique reduced basis of the generated topology, no
    /// matter which basis of it was given or in which order elements are
    /// removed.
    pub fn reduce(&self) -> Basis {
        Basis::reduce_family(self.elements.clone(), self.carrier.clone())
    }

    fn reduce_family(mut elements: BTreeSet<Shape>, carrier: Shape) -> Basis {
        loop {
            let removable = elements.iter().find_map(|e| {
                let rest: BTreeSet<Shape> =
                    elements.iter().filter(|o| *o != e).cloned().collect();
                (sum_of_members_below(&rest, e) == *e).then(|| e.clone())
            });
            match removable {
                Some(e) => {
                    elements.remove(&e);
                }
                None => break,
            }
        }
        Basis { carrier, elements, reduced: true }
    }

    /// The subshape basis `{x · b}` on a nonempty part `x` of the carrier,
    /// with empty products dropped. Generates exactly the subshape topology
    /// of the generated topology.
    pub fn subshape_basis(&self, x: &Shape) -> Result<Basis> {
        if x.is_empty() {
            return Err(Error::EmptyShape);
        }
        if !x.part_of(&self.carrier)? {
            return Err(Error::MemberNotPart { member: x.to_string() });
        }
        let elements: BTreeSet<Shape> = self
            .elements
            .iter()
            .map(|b| x.product_k(b))
            .filter(|p| !p.is_empty())
            .collect();
        let reduced = is_reduced(&elements);
        Ok(Basis { carrier: x.clone(), elements, reduced })
    }

    /// Compares the generated topologies through the reduced bases alone:
    /// one basis is finer when every element of the other is a sum of a
    /// nonempty subset of its elements.
    ///
    /// Both bases must be reduced and share the carrier.
    pub fn compare_reduced(&self, other: &Basis) -> Result<Comparison> {
        if !self.reduced || !other.reduced {
            return Err(Error::BasisNotReduced);
        }
        if self.carrier != other.carrier {
            return Err(Error::CarrierMismatch);
        }
        let self_describes_other =
            other.elements.iter().all(|b| sum_of_members_below(&self.elements, b) == *b);
        let other_describes_self =
            self.elements.iter().all(|b| sum_of_members_below(&other.elements, b) == *b);
        Ok(match (self_describes_other, other_describes_self) {
            (true, true) => Comparison::Equal,
            (true, false) => Comparison::Finer,
            (false, true) => Comparison::Coarser,
            (false, false) => Comparison::Incomparable,
        })
    }
}

/// The sum of every member embedded in `x` — the largest sum of members
/// that can possibly equal `x`.
fn sum_of_members_below(family: &BTreeSet<Shape>, x: &Shape) -> Shape {
    let mut total = Shape::empty(x.kind());
    for member in family {
        if member.part_of_k(x) {
            total = total.sum_k(member);
        }
    }
    total
}

fn is_reduced(elements: &BTreeSet<Shape>) -> bool {
    elements.iter().all(|e| {
        let rest: BTreeSet<Shape> = elements.iter().filter(|o| *o != e).cloned().collect();
        sum_of_members_below(&rest, e) != *e
    })
}
