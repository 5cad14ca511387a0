//! Induced representations, irreducibility and equivalence tests, and the
//! accounting of irreducible representations over character orbits.

mod cyclotomic;
mod fiber;
mod finite;
mod monomial;

pub use fiber::{DimensionCensus, Fiber, IrrepDescriptor, MaxDimension};
pub use finite::finite_irr_dims;
pub use monomial::{
    irreducibility_check, InducingCharacter, Irreducibility, Monomial, MonomialRep,
    DEFAULT_IMAGE_CAP,
};
