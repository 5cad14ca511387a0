//! Exact computations for finitely generated virtually abelian groups given
//! as extensions `1 → Z^r × F → G → D → 1`.

pub mod catalog;
pub mod dual;
pub mod error;
pub mod group;
pub mod linalg;
pub mod mackey;
pub mod rigidity;

pub use error::{Error, Result};
