//! Characters of the lattice and of the centralizer `L`, the dual action of
//! the point group, orbits, and the search for characters with full orbits.

mod character;
mod extension;
mod principal;

pub use character::{lattice_points, DualChar, OrbitData, DEFAULT_CENSUS_BUDGET};
pub use extension::LChar;
pub use principal::{
    CrystalLike, Lattice, NotCrystalLike, PrincipalWitness, UnavoidableStabilizer,
    DEFAULT_PRIME_BOUND, DEFAULT_SEARCH_BUDGET,
};
