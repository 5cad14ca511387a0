//! Exact integer and rational linear algebra: Smith and Hermite normal forms,
//! integer linear systems, and vectors of rationals modulo 1.

mod diophantine;
mod matrix;
pub mod mod1;
mod snf;

pub use diophantine::{solve_diophantine, solve_mod1, DiophantineSolution};
pub use matrix::IntMatrix;
pub use mod1::{act_mod1, frac, rational, RatVecMod1};
pub use snf::{hermite_normal_form, smith_normal_form, SnfDecomposition};
