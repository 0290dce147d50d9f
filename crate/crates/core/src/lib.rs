//! Exact integer lattice computations for wall divisors, Eichler orbits and
//! monodromy of hyperkähler lattices.
//!
//! All arithmetic is over arbitrary-precision integers and rationals; no
//! result depends on floating point.

pub mod arith;
pub mod discriminant;
pub mod error;
pub mod io;
pub mod isometry;
pub mod lattice;
pub mod matrix;
pub mod monodromy;
pub mod report;
pub mod walls;

pub use discriminant::{classify_pm1, disc_image, discriminant_group, DiscAction, DiscElement, PmOne};
pub use error::{Error, Result};
pub use isometry::{
    eichler_reduce, eichler_transvection, is_isometry, mapping_isometry, orbit_equivalent, reflection, Isometry,
};
pub use lattice::standard::{StandardLattice, Surface};
pub use lattice::{make_lattice, Lattice, LatticeVector, RationalVector, Sublattice};
pub use matrix::IntMatrix;
pub use walls::{bm_wall, mz_wall, yoshioka_wall, Clause, Criterion, WallVerdict, Window};
