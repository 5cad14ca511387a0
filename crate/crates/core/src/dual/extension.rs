use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::DualChar;
use crate::error::{Error, Result};
use crate::group::{GroupElement, VAGroup};
use crate::linalg::mod1::format_rational;
use crate::linalg::{frac, solve_mod1, IntMatrix, RatVecMod1};

/// One-dimensional character of the centralizer `L`, stored by its angles
/// on the presentation generators `e_1..e_r`, `f_1..f_t` and `(0, d)` for
/// `d` in `D₀` (in increasing label order).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LChar {
    angles: Vec<BigRational>,
    kernel: Vec<usize>,
    rank: usize,
    torsion_len: usize,
}

impl LChar {
    pub fn angles(&self) -> &[BigRational] {
        &self.angles
    }

    /// Labels of `D₀`.
    pub fn kernel(&self) -> &[usize] {
        &self.kernel
    }

    /// Restriction to the free lattice.
    pub fn free_part(&self) -> RatVecMod1 {
        RatVecMod1::new(self.angles[..self.rank].to_vec())
    }

    /// Restriction to `Z^r × F` as a lattice character.
    pub fn lattice_part(&self, g: &VAGroup) -> DualChar {
        let torsion = self.angles[self.rank..self.rank + self.torsion_len]
            .iter()
            .zip(g.torsion().factors())
            .map(|(a, m)| (a * BigRational::from_integer(m.clone())).to_integer())
            .collect();
        DualChar::new(self.free_part(), torsion)
    }

    /// Angle of the value on an element of `L`; `None` outside `L`.
    pub fn eval(&self, g: &GroupElement) -> Option<BigRational> {
        let pos = self.kernel.iter().position(|&d| d == g.d)?;
        let r = self.rank;
        let t = self.torsion_len;
        let mut sum = self.angles[r + t + pos].clone();
        for (a, x) in self.angles[..r].iter().zip(&g.v.free) {
            sum += a * BigRational::from_integer(x.clone());
        }
        for (a, x) in self.angles[r..r + t].iter().zip(&g.v.torsion) {
            sum += a * BigRational::from_integer(x.clone());
        }
        Some(frac(&sum))
    }
}

impl fmt::Display for LChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |s: &[BigRational]| s.iter().map(format_rational).collect::<Vec<_>>().join(",");
        let (r, t) = (self.rank, self.torsion_len);
        write!(
            f,
            "{};{};{}",
            part(&self.angles[..r]),
            part(&self.angles[r..r + t]),
            part(&self.angles[r + t..])
        )
    }
}

impl fmt::Debug for LChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LChar({self})")
    }
}

impl VAGroup {
    /// Relation matrix of the abelianized presentation of `L` as rows
    /// acting on angle vectors: a character `x` must satisfy `R x ≡ 0 mod 1`.
    fn l_relation_matrix(&self, kernel: &[usize]) -> IntMatrix {
        let (r, t) = (self.rank(), self.torsion().len());
        let n = r + t + kernel.len();
        let pos = |d: usize| r + t + kernel.iter().position(|&x| x == d).expect("closed");
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for &d in kernel {
            let tr = self.torsion_action(d);
            for i in 0..t {
                let mut row = vec![BigInt::zero(); n];
                for j in 0..t {
                    row[r + j] = tr[(j, i)].clone();
                }
                row[r + i] -= 1;
                rows.push(row);
            }
        }
        for &a in kernel {
            for &b in kernel {
                let ab = self.point_group().mul(a, b);
                let c = self.cocycle(a, b);
                let mut row = vec![BigInt::zero(); n];
                row[pos(a)] += 1;
                row[pos(b)] += 1;
                row[pos(ab)] -= 1;
                for (x, ci) in row[..r].iter_mut().zip(&c.free) {
                    *x -= ci;
                }
                for (x, cj) in row[r..r + t].iter_mut().zip(&c.torsion) {
                    *x -= cj;
                }
                rows.push(row);
            }
        }
        for (j, m) in self.torsion().factors().iter().enumerate() {
            let mut row = vec![BigInt::zero(); n];
            row[r + j] = m.clone();
            rows.push(row);
        }
        IntMatrix::from_rows(&rows).expect("rectangular")
    }

    /// Solves for a character of `L` with prescribed angles on some
    /// generators; the other angles take the deterministic choice of
    /// [`solve_mod1`] (free choices 0).
    fn extend_fixing(&self, fixed: &[(usize, BigRational)]) -> Option<LChar> {
        let kernel = self.centralizer_data().kernel;
        let (r, t) = (self.rank(), self.torsion().len());
        let n = r + t + kernel.len();
        let rel = self.l_relation_matrix(&kernel);
        let is_fixed = |i: usize| fixed.iter().any(|(j, _)| *j == i);
        let rest: Vec<usize> = (0..n).filter(|&i| !is_fixed(i)).collect();
        let rhs: Vec<BigRational> = (0..rel.rows())
            .map(|k| {
                -fixed
                    .iter()
                    .map(|(j, a)| a * BigRational::from_integer(rel[(k, *j)].clone()))
                    .sum::<BigRational>()
            })
            .collect();
        let mut sub = IntMatrix::zeros(rel.rows(), rest.len());
        for k in 0..rel.rows() {
            for (c, &i) in rest.iter().enumerate() {
                sub[(k, c)] = rel[(k, i)].clone();
            }
        }
        let solution = if rest.is_empty() {
            rhs.iter().all(|q| q.is_integer()).then(Vec::new)
        } else {
            solve_mod1(&sub, &rhs).expect("sizes agree")
        }?;
        let mut angles = vec![BigRational::zero(); n];
        for (j, a) in fixed {
            angles[*j] = frac(a);
        }
        for (&i, a) in rest.iter().zip(solution) {
            angles[i] = a;
        }
        Some(LChar {
            angles,
            kernel,
            rank: r,
            torsion_len: t,
        })
    }

    /// Extends a character of the free lattice to a one-dimensional
    /// character of `L`. Always possible since the lattice basis stays
    /// independent in the abelianization of `L`.
    pub fn extend_character(&self, theta: &RatVecMod1) -> Result<LChar> {
        if theta.len() != self.rank() {
            return Err(Error::InvalidCharacter(format!(
                "expected {} angles, got {}",
                self.rank(),
                theta.len()
            )));
        }
        let fixed: Vec<(usize, BigRational)> = theta.coords().iter().cloned().enumerate().collect();
        let chi = self
            .extend_fixing(&fixed)
            .ok_or_else(|| Error::InvalidCharacter(format!("`{theta}` does not extend to L")))?;
        debug_assert_eq!(chi.free_part(), *theta);
        Ok(chi)
    }

    /// Extends a full lattice character to `L` when its torsion part is
    /// compatible with the relations of `L`; `None` otherwise.
    pub fn extend_lattice_character(&self, chi: &DualChar) -> Option<LChar> {
        let r = self.rank();
        let fixed: Vec<(usize, BigRational)> = chi
            .free
            .coords()
            .iter()
            .cloned()
            .chain(chi.torsion_angles(self))
            .enumerate()
            .collect();
        debug_assert!(fixed.len() >= r);
        self.extend_fixing(&fixed)
    }

    /// `(d·χ̃)(x) = χ̃((0,d)⁻¹ x (0,d))` for any `d` in `D`.
    pub fn act_l(&self, d: usize, chi: &LChar) -> LChar {
        let s = self.section(d);
        let s_inv = self.inverse(&s);
        let (r, t) = (self.rank(), self.torsion().len());
        let mut generators: Vec<GroupElement> = Vec::with_capacity(chi.angles.len());
        for i in 0..r + t {
            let mut v = self.lattice_zero();
            if i < r {
                v.free[i] = 1.into();
            } else {
                v.torsion[i - r] = 1.into();
            }
            generators.push(self.translation(v));
        }
        generators.extend(chi.kernel.iter().map(|&k| self.section(k)));
        let angles = generators
            .iter()
            .map(|x| {
                let y = self.multiply(&self.multiply(&s_inv, x), &s);
                chi.eval(&y).expect("L is normal")
            })
            .collect();
        LChar {
            angles,
            ..chi.clone()
        }
    }

    /// Orbit under `D₁`, one image per coset representative.
    pub fn l_orbit(&self, chi: &LChar) -> Vec<LChar> {
        let q = self.centralizer_data().quotient;
        q.representatives
            .iter()
            .map(|&d| self.act_l(d, chi))
            .collect()
    }

    /// Whether the restriction to `Z^r` has stabilizer exactly `D₀`, that is
    /// trivial stabilizer in `D₁`.
    pub fn in_n_k(&self, chi: &LChar) -> bool {
        self.free_stabilizer(&chi.free_part()).len() == chi.kernel.len()
    }
}
