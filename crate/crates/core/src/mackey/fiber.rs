use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::finite::finite_irr_dims;
use super::monomial::MonomialRep;
use crate::dual::{CrystalLike, DualChar, Lattice, OrbitData, PrincipalWitness};
use crate::error::{Error, Result};
use crate::group::VAGroup;
use crate::linalg::{solve_mod1, IntMatrix};

/// Mackey parameter of an irreducible representation: a lattice character
/// orbit and an irreducible representation of the stabilizer quotient,
/// twisted by a fixed extension of the character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrrepDescriptor {
    pub base: DualChar,
    pub orbit: OrbitData,
    /// Index into the increasing degree list of the stabilizer.
    pub fiber_index: usize,
    pub fiber_dimension: usize,
    /// `|orbit| · fiber_dimension`.
    pub dimension: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fiber {
    /// The character extends to its stabilizer in `G`; one descriptor per
    /// irreducible representation of the stabilizer `S ≤ D`.
    Split {
        orbit: OrbitData,
        /// Angles `m(d)` of the extension `(v, d) ↦ χ(v) + m(d)` on the stabilizer labels.
        extension: Vec<(usize, BigRational)>,
        irreps: Vec<IrrepDescriptor>,
    },
    /// The character does not extend; the class of `(d₁, d₂) ↦ χ(c(d₁, d₂))`
    /// is a nontrivial obstruction and projective representations would be needed.
    Unsupported {
        orbit: OrbitData,
        obstruction: Vec<((usize, usize), BigRational)>,
    },
}

impl Fiber {
    pub fn orbit(&self) -> &OrbitData {
        match self {
            Fiber::Split { orbit, .. } | Fiber::Unsupported { orbit, .. } => orbit,
        }
    }

    pub fn irreps(&self) -> Option<&[IrrepDescriptor]> {
        match self {
            Fiber::Split { irreps, .. } => Some(irreps),
            Fiber::Unsupported { .. } => None,
        }
    }
}

/// Counts of Mackey parameters by irreducible dimension at one denominator.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DimensionCensus {
    pub dimensions: BTreeMap<usize, usize>,
    /// Orbits whose fiber is not split.
    pub unsupported_orbits: usize,
}

#[derive(Clone, Debug)]
pub struct MaxDimension {
    pub dimension: usize,
    pub witness: PrincipalWitness,
    pub representation: MonomialRep,
}

impl VAGroup {
    /// Irreducible representations lying over the orbit of `χ`.
    pub fn fiber_irreps(&self, chi: &DualChar) -> Result<Fiber> {
        let chi = chi.clone().for_group(self)?;
        let orbit = self.orbit_stabilizer(&chi);
        let stab = orbit.stabilizer.clone();
        let pos = |d: usize| stab.iter().position(|&x| x == d).expect("subgroup");
        let mut rows = Vec::with_capacity(stab.len() * stab.len());
        let mut rhs = Vec::with_capacity(stab.len() * stab.len());
        let mut obstruction = Vec::new();
        for &a in &stab {
            for &b in &stab {
                let ab = self.point_group().mul(a, b);
                let mut row = vec![BigInt::zero(); stab.len()];
                row[pos(a)] += 1;
                row[pos(b)] += 1;
                row[pos(ab)] -= 1;
                rows.push(row);
                let angle = chi.eval(self, self.cocycle(a, b));
                if !angle.is_zero() {
                    obstruction.push(((a, b), angle.clone()));
                }
                rhs.push(angle);
            }
        }
        let system = IntMatrix::from_rows(&rows)?;
        let Some(m) = solve_mod1(&system, &rhs)? else {
            return Ok(Fiber::Unsupported { orbit, obstruction });
        };
        let (sub, _) = self.point_group().subgroup(&stab)?;
        let dims = finite_irr_dims(&sub)?;
        let irreps = dims
            .iter()
            .enumerate()
            .map(|(i, &d)| IrrepDescriptor {
                base: chi.clone(),
                orbit: orbit.clone(),
                fiber_index: i,
                fiber_dimension: d,
                dimension: orbit.size() * d,
            })
            .collect();
        Ok(Fiber::Split {
            extension: stab.iter().copied().zip(m).collect(),
            orbit,
            irreps,
        })
    }

    /// Largest irreducible dimension `[G : lattice]`, certified by a
    /// principal character and its induced representation.
    pub fn max_irrep_dimension(
        &self,
        lattice: Lattice,
        prime_bound: u64,
        budget: u128,
    ) -> Result<MaxDimension> {
        let witness = match self.find_principal_character(lattice, prime_bound, budget)? {
            CrystalLike::Yes(w) => w,
            CrystalLike::No(cert) => {
                return Err(Error::NoCertificate(format!(
                    "no character has a full orbit; orbit sizes are at most {} < {}",
                    cert.orbit_size_bound, cert.index
                )))
            }
            CrystalLike::Inconclusive { reason, .. } => return Err(Error::NoCertificate(reason)),
        };
        let representation = match &witness.extension {
            Some(ext) => self.induce(ext)?,
            None => self.induce_from_lattice(&witness.character),
        };
        Ok(MaxDimension {
            dimension: representation.dimension(),
            witness,
            representation,
        })
    }

    /// Irreducible dimensions over all orbits with free denominator `N`.
    pub fn dimension_census(&self, denominator: u64, budget: u128) -> Result<DimensionCensus> {
        let mut census = DimensionCensus::default();
        for (rep, _) in self.orbit_representatives(denominator, budget)? {
            match self.fiber_irreps(&rep)? {
                Fiber::Split { irreps, .. } => {
                    for d in irreps {
                        *census.dimensions.entry(d.dimension).or_insert(0) += 1;
                    }
                }
                Fiber::Unsupported { .. } => census.unsupported_orbits += 1,
            }
        }
        Ok(census)
    }

    /// Whether the descriptor is induced from a character of `L` in `N_K`:
    /// the stabilizer of its character and of the free part are both `D₀`,
    /// and the fiber is one-dimensional.
    pub fn phi_image_membership(&self, desc: &IrrepDescriptor) -> bool {
        let kernel = self.centralizer_data().kernel;
        desc.fiber_dimension == 1
            && desc.orbit.stabilizer == kernel
            && self.free_stabilizer(&desc.base.free) == kernel
    }
}
