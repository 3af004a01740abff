//! Exact computations in the extended affine Weyl group of type `Ã_{n-1}`,
//! its Hecke algebra and the affine q-Schur algebra: Kazhdan–Lusztig bases,
//! cells, star operations, the asymptotic lattice and the affine cellular
//! structure.

pub mod asymptotic;
pub mod cells;
pub mod cellular;
pub mod coeff;
pub mod error;
pub mod hecke;
pub mod parse;
pub mod schur;
pub mod verify;
pub mod weyl;

pub use coeff::LaurentHalf;
pub use error::{Error, Result};
pub use hecke::{Basis, HeckeElt, KlCache};
pub use weyl::{AffinePerm, GenSet, Partition, PartitionData, Truncation};
