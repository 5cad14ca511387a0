mod definition;
mod finite_abelian;
mod invariants;
mod model;
mod point_group;

pub use definition::{GeneratorSpec, GroupDefinition, RationalEntry};
pub use finite_abelian::FiniteAbelian;
pub use invariants::{CentralizerData, FGAbelianGroup, LAbelianization, OrderCensus};
pub use model::{GroupElement, LatticeVec, Translation, VAGroup, DEFAULT_POINT_GROUP_BOUND};
pub use point_group::{PointGroup, Quotient};

#[cfg(test)]
pub(crate) use point_group::tests as point_group_tests;
