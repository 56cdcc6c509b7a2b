//! Knot clusters of prime link diagrams.
//!
//! A diagram's segments index a quiver; a fixed mutation sequence built from
//! bigon reductions and triangle moves reaches a seed whose F-polynomials are
//! Kauffman-state generating functions and specialize to the Alexander
//! polynomial.

pub mod alexander;
pub mod cluster;
pub mod kauffman;
pub mod linkdiag;
pub mod planner;
pub mod poly;
pub mod quiver;

pub use linkdiag::{LinkDiagram, SegmentClass};
pub use poly::{LaurentPoly, Vars};
pub use quiver::{Perm, Quiver};
