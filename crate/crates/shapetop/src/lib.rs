//! Point-free finite topologies on shapes, in exact rational arithmetic.
//!
//! Shapes here are arrangements of points or line segments kept in maximal
//! form, ordered by embedding rather than by point membership. On top of
//! the shape algebra — sum, product, difference — the crate builds finite
//! topologies from recognized parts, reduces their bases to a unique
//! minimal form, relativizes them to subshapes, computes interiors and
//! closures, constructs the space a topology induces on its shape, checks
//! continuity of mappings as lattice homomorphisms, and separates
//! structural from visual connectedness.
//!
//! ```
//! use shapetop::{connect, GenerateOptions, Point, Shape, Topology};
//!
//! // One straight line, interpreted as two touching halves.
//! let line = Shape::segment(Point::at(0, 0), Point::at(2, 0))?;
//! let halves = [
//!     Shape::segment(Point::at(0, 0), Point::at(1, 0))?,
//!     Shape::segment(Point::at(1, 0), Point::at(2, 0))?,
//! ];
//! let t = Topology::generate(&halves, &line, GenerateOptions::default())?;
//!
//! // It looks like one piece, but the topology splits it.
//! let report = connect::connectivity_report(&line, &t)?;
//! assert!(report.visually_connected);
//! assert!(!report.structurally_connected);
//! # Ok::<(), shapetop::Error>(())
//! ```
//!
//! The guide under `book/` walks through every concept with runnable
//! examples; its code blocks compile and run as doctests of this crate.

#![forbid(unsafe_code)]

mod error;
mod interval;

pub mod connect;
pub mod dot;
pub mod geom;
pub mod io;
pub mod mapping;
pub mod oracle;
pub mod scalar;
pub mod shape;
pub mod space;
pub mod topology;

pub use error::{Error, Result};
pub use geom::{LineKey, Point, Segment};
pub use mapping::{AffineMap, ContinuityReport, Mapping, Preimage, Step};
pub use scalar::Scalar;
pub use shape::{Kind, Shape};
pub use topology::{
    covers, Basis, Comparison, GenerateOptions, PartClass, Refinement, Topology, TopologyCheck,
    TopologyViolation, DEFAULT_MAX_OPENS,
};

#[cfg(doctest)]
mod book;
