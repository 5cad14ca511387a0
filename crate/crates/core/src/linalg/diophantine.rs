use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use super::mod1::frac;
use super::{hermite_normal_form, smith_normal_form, IntMatrix};
use crate::error::{Error, Result};

/// Integer solution set `particular + span_Z(kernel)` of `A x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiophantineSolution {
    pub particular: Vec<BigInt>,
    /// Z-basis of `{x : A x = 0}` in Hermite normal form.
    pub kernel: Vec<Vec<BigInt>>,
}

/// Solves `A x = b` over the integers; `Ok(None)` when no integer solution exists.
pub fn solve_diophantine(a: &IntMatrix, b: &[BigInt]) -> Result<Option<DiophantineSolution>> {
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "system has {} rows but right-hand side has length {}",
            a.rows(),
            b.len()
        )));
    }
    let snf = smith_normal_form(a);
    let ub = snf.u.mul_vec(b)?;
    let diag = snf.diagonal();
    let rank = snf.rank();

    let mut y = vec![BigInt::zero(); a.cols()];
    for i in 0..rank {
        let (q, r) = ub[i].div_rem(&diag[i]);
        if !r.is_zero() {
            return Ok(None);
        }
        y[i] = q;
    }
    if ub[rank..].iter().any(|c| !c.is_zero()) {
        return Ok(None);
    }
    let particular = snf.v.mul_vec(&y)?;

    let kernel_cols: Vec<Vec<BigInt>> = (rank..a.cols()).map(|j| snf.v.column(j)).collect();
    let kernel = if kernel_cols.is_empty() {
        Vec::new()
    } else {
        hermite_normal_form(&IntMatrix::from_rows(&kernel_cols)?).to_rows()
    };
    Ok(Some(DiophantineSolution { particular, kernel }))
}

/// Finds rational `x` with `R x ≡ b (mod 1)` coordinate-wise, entries of `x`
/// reduced into `[0, 1)`. Free coordinates are set to zero and each
/// constrained coordinate takes its smallest nonnegative solution in the
/// Smith basis. Returns `None` when the congruence has no solution.
pub fn solve_mod1(r: &IntMatrix, b: &[BigRational]) -> Result<Option<Vec<BigRational>>> {
    if r.rows() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "congruence has {} rows but right-hand side has length {}",
            r.rows(),
            b.len()
        )));
    }
    let snf = smith_normal_form(r);
    let diag = snf.diagonal();
    let rank = snf.rank();
    let ub: Vec<BigRational> = (0..r.rows())
        .map(|i| {
            snf.u
                .row(i)
                .iter()
                .zip(b)
                .map(|(u, q)| q * BigRational::from_integer(u.clone()))
                .sum()
        })
        .collect();
    if ub[rank..].iter().any(|q| !q.is_integer()) {
        return Ok(None);
    }
    let mut y = vec![BigRational::zero(); r.cols()];
    for i in 0..rank {
        y[i] = frac(&ub[i]) / BigRational::from_integer(diag[i].clone());
    }
    let x = (0..r.cols())
        .map(|i| {
            let s: BigRational = snf
                .v
                .row(i)
                .iter()
                .zip(&y)
                .map(|(v, q)| q * BigRational::from_integer(v.clone()))
                .sum();
            frac(&s)
        })
        .collect();
    Ok(Some(x))
}
