//! Exact Euler characteristics of p-subgroup categories.
//!
//! Given a finite permutation group `G` and a prime `p`, this crate enumerates
//! the conjugacy classes of `p`-subgroups of `G` and computes weightings,
//! coweightings and Euler characteristics of the poset, transporter, linking,
//! Frobenius, orbit and exterior-quotient categories built on them. All
//! arithmetic is exact.

pub mod catalog;
pub mod error;
pub mod eulercat;
pub mod groupcore;
pub mod moebius;
pub mod psub;
pub mod verify;

pub use error::{Error, Result};
