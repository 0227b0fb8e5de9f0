//! Compiles and runs every code block of the guide as doctests, keeping
//! the book in sync with the library.

#[doc = include_str!("../../../book/src/shapes.md")]
mod shapes {}

#[doc = include_str!("../../../book/src/topologies.md")]
mod topologies {}

#[doc = include_str!("../../../book/src/parts.md")]
mod parts {}

#[doc = include_str!("../../../book/src/space.md")]
mod space {}

#[doc = include_str!("../../../book/src/continuity.md")]
mod continuity {}

#[doc = include_str!("../../../book/src/connectedness.md")]
mod connectedness {}
