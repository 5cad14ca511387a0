use num_bigint::BigInt;

use super::{lattice_points, DualChar, LChar};
use crate::error::{Error, Result};
use crate::group::VAGroup;

pub const DEFAULT_PRIME_BOUND: u64 = 101;
pub const DEFAULT_SEARCH_BUDGET: u128 = 10_000_000;

/// Which finite-index abelian subgroup plays the role of the lattice.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Lattice {
    /// `Z^r × F` from the group definition.
    #[default]
    Model,
    /// The centralizer `L` of `Z^r`; only allowed when `L` is abelian.
    Centralizer,
}

/// A character with a full orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalWitness {
    pub character: DualChar,
    /// Extension to `L`, present for [`Lattice::Centralizer`].
    pub extension: Option<LChar>,
    /// Denominator of the free part at which the search succeeded.
    pub prime: u64,
    /// `[G : lattice]`.
    pub orbit_size: usize,
    /// Stabilizer of the character in `D` (equal to the lattice's own labels).
    pub stabilizer: Vec<usize>,
}

/// Torsion character whose stabilizer contains a nontrivial element acting
/// trivially on the free lattice; that element fixes every extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnavoidableStabilizer {
    pub torsion: Vec<BigInt>,
    pub element: usize,
    /// `|S_ψ ∩ D₀|`.
    pub fixed_order: usize,
}

/// Proof that no character of the lattice has a full orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotCrystalLike {
    pub per_torsion: Vec<UnavoidableStabilizer>,
    /// Upper bound for every orbit size, `max_ψ |D| / |S_ψ ∩ D₀|`.
    pub orbit_size_bound: usize,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CrystalLike {
    Yes(PrincipalWitness),
    No(NotCrystalLike),
    Inconclusive { prime_bound: u64, reason: String },
}

impl CrystalLike {
    pub fn witness(&self) -> Option<&PrincipalWitness> {
        match self {
            CrystalLike::Yes(w) => Some(w),
            _ => None,
        }
    }
}

fn primes_up_to(bound: u64) -> impl Iterator<Item = u64> {
    (2..=bound).filter(|&p| (2..p).take_while(|q| q * q <= p).all(|q| p % q != 0))
}

impl VAGroup {
    /// Searches for a character of the lattice with trivial stabilizer.
    pub fn find_principal_character(
        &self,
        lattice: Lattice,
        prime_bound: u64,
        budget: u128,
    ) -> Result<CrystalLike> {
        match lattice {
            Lattice::Model => Ok(self.principal_in_model(prime_bound, budget)),
            Lattice::Centralizer => self.principal_in_centralizer(prime_bound, budget),
        }
    }

    pub fn is_crystal_like(&self, lattice: Lattice) -> Result<CrystalLike> {
        self.find_principal_character(lattice, DEFAULT_PRIME_BOUND, DEFAULT_SEARCH_BUDGET)
    }

    /// Searches `θ ∈ ((1/p)Z)^r` for primes `p ≤ prime_bound`, returning the
    /// first `θ` whose stabilizer within `allowed` is exactly `target` long.
    fn search_free_part(
        &self,
        allowed: &[usize],
        target: usize,
        prime_bound: u64,
        spent: &mut u128,
        budget: u128,
    ) -> std::result::Result<Option<(u64, crate::linalg::RatVecMod1)>, String> {
        if allowed.len() == target {
            return Ok(Some((1, crate::linalg::RatVecMod1::zero(self.rank()))));
        }
        for p in primes_up_to(prime_bound) {
            for theta in lattice_points(self.rank(), p) {
                *spent += allowed.len() as u128;
                if *spent > budget {
                    return Err(format!(
                        "search budget of {budget} action evaluations exhausted"
                    ));
                }
                let fixed = allowed
                    .iter()
                    .filter(|&&d| self.act_free(d, &theta) == theta)
                    .count();
                if fixed == target {
                    return Ok(Some((p, theta)));
                }
            }
        }
        Ok(None)
    }

    fn principal_in_model(&self, prime_bound: u64, budget: u128) -> CrystalLike {
        let kernel = self.centralizer_data().kernel;
        let index = self.point_group().order();
        let mut failures = Vec::new();
        let mut spent = 0u128;
        let mut exhausted = false;
        for psi in self.torsion().elements() {
            let s_psi = self.torsion_stabilizer(&psi);
            let fixed: Vec<usize> = s_psi
                .iter()
                .copied()
                .filter(|d| kernel.contains(d))
                .collect();
            if fixed.len() > 1 {
                failures.push(UnavoidableStabilizer {
                    torsion: psi,
                    element: fixed[1],
                    fixed_order: fixed.len(),
                });
                continue;
            }
            match self.search_free_part(&s_psi, 1, prime_bound, &mut spent, budget) {
                Ok(Some((prime, theta))) => {
                    let character = DualChar::new(theta, psi);
                    let data = self.orbit_stabilizer(&character);
                    debug_assert_eq!(data.size(), index);
                    return CrystalLike::Yes(PrincipalWitness {
                        character,
                        extension: None,
                        prime,
                        orbit_size: data.size(),
                        stabilizer: data.stabilizer,
                    });
                }
                Ok(None) => exhausted = true,
                Err(reason) => {
                    return CrystalLike::Inconclusive {
                        prime_bound,
                        reason,
                    }
                }
            }
        }
        if exhausted {
            return CrystalLike::Inconclusive {
                prime_bound,
                reason: format!(
                    "no principal character with free denominator prime <= {prime_bound}"
                ),
            };
        }
        let orbit_size_bound = failures
            .iter()
            .map(|f| index / f.fixed_order)
            .max()
            .unwrap_or(1);
        CrystalLike::No(NotCrystalLike {
            per_torsion: failures,
            orbit_size_bound,
            index,
        })
    }

    fn principal_in_centralizer(&self, prime_bound: u64, budget: u128) -> Result<CrystalLike> {
        let cd = self.centralizer_data();
        let (sub, _) = self.point_group().subgroup(&cd.kernel)?;
        let l_abelian = sub.is_abelian()
            && cd
                .kernel
                .iter()
                .all(|&d| self.torsion_action(d).is_identity())
            && cd.kernel.iter().all(|&a| {
                cd.kernel.iter().all(|&b| {
                    let x = self.section(a);
                    let y = self.section(b);
                    self.multiply(&x, &y) == self.multiply(&y, &x)
                })
            });
        if !l_abelian {
            return Err(Error::UnsupportedLattice(
                "the centralizer of the free lattice is not abelian".into(),
            ));
        }
        let all: Vec<usize> = self.point_group().elements().collect();
        let mut spent = 0;
        match self.search_free_part(&all, cd.kernel.len(), prime_bound, &mut spent, budget) {
            Ok(Some((prime, theta))) => {
                let extension = self.extend_character(&theta)?;
                Ok(CrystalLike::Yes(PrincipalWitness {
                    character: DualChar::new(theta, self.torsion().zero()),
                    extension: Some(extension),
                    prime,
                    orbit_size: cd.k,
                    stabilizer: cd.kernel,
                }))
            }
            Ok(None) => Ok(CrystalLike::Inconclusive {
                prime_bound,
                reason: format!("no free character with stabilizer D0 at primes <= {prime_bound}"),
            }),
            Err(reason) => Ok(CrystalLike::Inconclusive {
                prime_bound,
                reason,
            }),
        }
    }
}
