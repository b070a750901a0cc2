//! Exact combinatorics of two-dimensional threshold functions on an
//! m x n grid: teaching-set cardinalities, closed-form counts, and the
//! associated parameter-space line arrangements, with integer/rational
//! arithmetic throughout and independent brute-force oracles for every
//! closed form.

pub mod arrangement;
pub mod error;
pub mod exact;
pub mod formulas;
pub mod gridfn;
pub(crate) mod hull;
pub mod teaching;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{
    gcd, line_intersection, orientation, IntPoint, Line, LineIntersection, Rat, RatPoint,
};
pub use formulas::{CountReport, GridDims, PlaneStats, TriangleStats, UCounts};
pub use gridfn::{BinaryGridFunction, Side};
pub use teaching::TeachingProfile;
