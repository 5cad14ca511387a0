use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// Finite abelian group `Z_{m_1} × … × Z_{m_t}` in invariant-factor form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FiniteAbelian {
    factors: Vec<BigInt>,
}

impl FiniteAbelian {
    pub fn new(factors: Vec<BigInt>) -> Result<Self> {
        if let Some(bad) = factors.iter().find(|m| **m < BigInt::from(2)) {
            return Err(Error::InvalidGroup(format!(
                "torsion invariant factor {bad} must be at least 2"
            )));
        }
        for w in factors.windows(2) {
            if !w[1].is_multiple_of(&w[0]) {
                return Err(Error::InvalidGroup(format!(
                    "torsion invariant factors must form a divisibility chain ({} does not divide {})",
                    w[0], w[1]
                )));
            }
        }
        Ok(FiniteAbelian { factors })
    }

    pub fn from_u64(factors: &[u64]) -> Result<Self> {
        Self::new(factors.iter().map(|&m| BigInt::from(m)).collect())
    }

    pub fn trivial() -> Self {
        FiniteAbelian::default()
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    /// Number of cyclic factors.
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn order(&self) -> BigInt {
        self.factors.iter().product()
    }

    /// Exponent (largest invariant factor).
    pub fn exponent(&self) -> BigInt {
        self.factors.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        v.iter()
            .zip(&self.factors)
            .map(|(x, m)| x.mod_floor(m))
            .collect()
    }

    pub fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.len()]
    }

    pub fn is_zero(&self, v: &[BigInt]) -> bool {
        v.iter()
            .zip(&self.factors)
            .all(|(x, m)| x.is_multiple_of(m))
    }

    pub fn element_order(&self, v: &[BigInt]) -> BigInt {
        v.iter()
            .zip(&self.factors)
            .fold(BigInt::one(), |acc, (x, m)| acc.lcm(&(m / x.gcd(m))))
    }

    /// All elements in lexicographic order of residues.
    pub fn elements(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![Vec::new()];
        for m in &self.factors {
            let m = m.to_u64().expect("torsion factor fits in u64");
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..m).map(move |x| {
                        let mut p = prefix.clone();
                        p.push(BigInt::from(x));
                        p
                    })
                })
                .collect();
        }
        out
    }

    /// Checks that an integer matrix defines an endomorphism: entry `(j, k)`
    /// maps `Z_{m_k}` into `Z_{m_j}`, so `m_k · T[j][k] ≡ 0 (mod m_j)`.
    pub fn check_endomorphism(&self, t: &IntMatrix) -> Result<()> {
        let n = self.len();
        if t.rows() != n || t.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "torsion matrix must be {n}x{n}, got {}x{}",
                t.rows(),
                t.cols()
            )));
        }
        for j in 0..n {
            for k in 0..n {
                if !(&self.factors[k] * &t[(j, k)]).is_multiple_of(&self.factors[j]) {
                    return Err(Error::InvalidGroup(format!(
                        "torsion matrix entry ({j}, {k}) does not define a map Z_{} -> Z_{}",
                        self.factors[k], self.factors[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Reduces row `j` modulo `m_j`, giving a canonical matrix for the endomorphism.
    pub fn canonical_endomorphism(&self, t: &IntMatrix) -> IntMatrix {
        let mut c = t.clone();
        for j in 0..self.len() {
            for k in 0..self.len() {
                c[(j, k)] = t[(j, k)].mod_floor(&self.factors[j]);
            }
        }
        c
    }

    pub fn apply(&self, t: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
        self.reduce(&t.mul_vec(v).expect("torsion matrix size"))
    }
}

impl fmt::Display for FiniteAbelian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(|m| format!("Z{m}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

impl fmt::Debug for FiniteAbelian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteAbelian({self})")
    }
}
