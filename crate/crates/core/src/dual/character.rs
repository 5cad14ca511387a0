use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::group::{LatticeVec, VAGroup};
use crate::linalg::{act_mod1, frac, RatVecMod1};

pub const DEFAULT_CENSUS_BUDGET: u128 = 10_000_000;

/// Character of the lattice `Z^r × F`: angles `θ` on the free part and
/// residues `ψ` on the torsion part. The value on `(v_free, v_tor)` is
/// `exp(2πi (θ·v_free + Σ ψ_k v_k / m_k))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualChar {
    pub free: RatVecMod1,
    pub torsion: Vec<BigInt>,
}

impl DualChar {
    pub fn new(free: RatVecMod1, torsion: Vec<BigInt>) -> Self {
        DualChar { free, torsion }
    }

    pub fn trivial(g: &VAGroup) -> Self {
        DualChar {
            free: RatVecMod1::zero(g.rank()),
            torsion: g.torsion().zero(),
        }
    }

    pub fn free_only(free: RatVecMod1) -> Self {
        DualChar {
            free,
            torsion: Vec::new(),
        }
    }

    /// Checks sizes against `g` and reduces the torsion residues.
    pub fn for_group(self, g: &VAGroup) -> Result<Self> {
        if self.free.len() != g.rank() {
            return Err(Error::InvalidCharacter(format!(
                "free part has {} angles, group rank is {}",
                self.free.len(),
                g.rank()
            )));
        }
        let torsion = if self.torsion.is_empty() {
            g.torsion().zero()
        } else if self.torsion.len() == g.torsion().len() {
            g.torsion().reduce(&self.torsion)
        } else {
            return Err(Error::InvalidCharacter(format!(
                "torsion part has {} residues, group has {} torsion factors",
                self.torsion.len(),
                g.torsion().len()
            )));
        };
        Ok(DualChar {
            free: self.free,
            torsion,
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.free.is_zero() && self.torsion.iter().all(Zero::is_zero)
    }

    /// Torsion angles `ψ_k / m_k`.
    pub fn torsion_angles(&self, g: &VAGroup) -> Vec<BigRational> {
        self.torsion
            .iter()
            .zip(g.torsion().factors())
            .map(|(p, m)| BigRational::new(p.clone(), m.clone()))
            .collect()
    }

    /// Angle in `[0, 1)` of the value on a lattice vector.
    pub fn eval(&self, g: &VAGroup, v: &LatticeVec) -> BigRational {
        let tor: BigRational = self
            .torsion_angles(g)
            .iter()
            .zip(&v.torsion)
            .map(|(a, x)| a * BigRational::from_integer(x.clone()))
            .sum();
        frac(&(self.free.dot(&v.free) + tor))
    }
}

impl fmt::Display for DualChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tor: Vec<String> = self.torsion.iter().map(ToString::to_string).collect();
        write!(f, "{};{}", self.free, tor.join(","))
    }
}

impl fmt::Debug for DualChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DualChar({self})")
    }
}

impl FromStr for DualChar {
    type Err = Error;

    /// `"a1/b1,a2/b2;t1,t2"`; the part after `;` may be omitted.
    fn from_str(s: &str) -> Result<Self> {
        let (free, tor) = s.split_once(';').unwrap_or((s, ""));
        let free: RatVecMod1 = free
            .parse()
            .map_err(|e: Error| Error::InvalidCharacter(format!("`{s}`: {e}")))?;
        let torsion = tor
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<BigInt>()
                    .map_err(|_| Error::InvalidCharacter(format!("`{s}`: bad residue `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DualChar { free, torsion })
    }
}

/// Orbit of a character under the point group and its stabilizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitData {
    /// Distinct images in order of first appearance over the labels of `D`.
    pub orbit: Vec<DualChar>,
    /// Sorted labels of the stabilizer in `D`.
    pub stabilizer: Vec<usize>,
}

impl OrbitData {
    pub fn size(&self) -> usize {
        self.orbit.len()
    }
}

impl VAGroup {
    /// `θ ↦ φ(d⁻¹)ᵀ θ mod 1` on the free part.
    pub fn act_free(&self, d: usize, theta: &RatVecMod1) -> RatVecMod1 {
        let inv = self.point_group().inv(d);
        act_mod1(&self.free_action(inv).transpose(), theta).expect("rank")
    }

    /// Torsion residues of `ψ ∘ φ_tor(d⁻¹)`.
    pub fn act_torsion(&self, d: usize, psi: &[BigInt]) -> Vec<BigInt> {
        let inv = self.point_group().inv(d);
        let m = self.torsion_action(inv);
        let factors = self.torsion().factors();
        (0..factors.len())
            .map(|j| {
                let angle: BigRational = (0..factors.len())
                    .map(|k| BigRational::new(&psi[k] * &m[(k, j)], factors[k].clone()))
                    .sum();
                (frac(&angle) * BigRational::from_integer(factors[j].clone())).to_integer()
            })
            .collect()
    }

    /// Dual action `(d·χ)(a) = χ(φ(d⁻¹) a)`.
    pub fn act(&self, d: usize, chi: &DualChar) -> DualChar {
        DualChar {
            free: self.act_free(d, &chi.free),
            torsion: self.act_torsion(d, &chi.torsion),
        }
    }

    pub fn orbit_stabilizer(&self, chi: &DualChar) -> OrbitData {
        let mut orbit: Vec<DualChar> = Vec::new();
        let mut stabilizer = Vec::new();
        for d in self.point_group().elements() {
            let image = self.act(d, chi);
            if image == *chi {
                stabilizer.push(d);
            }
            if !orbit.contains(&image) {
                orbit.push(image);
            }
        }
        OrbitData { orbit, stabilizer }
    }

    /// Labels fixing the free part `θ`; always contains `D₀`.
    pub fn free_stabilizer(&self, theta: &RatVecMod1) -> Vec<usize> {
        self.point_group()
            .elements()
            .filter(|&d| self.act_free(d, theta) == *theta)
            .collect()
    }

    /// Labels fixing the torsion residues `ψ`.
    pub fn torsion_stabilizer(&self, psi: &[BigInt]) -> Vec<usize> {
        self.point_group()
            .elements()
            .filter(|&d| self.act_torsion(d, psi) == psi)
            .collect()
    }

    /// Counts orbit sizes over all characters with free part in
    /// `((1/N)Z)^r mod 1` and arbitrary torsion part.
    pub fn orbit_census(&self, denominator: u64, budget: u128) -> Result<BTreeMap<usize, usize>> {
        let mut census = BTreeMap::new();
        for rep in self.orbit_representatives(denominator, budget)? {
            *census.entry(rep.1.size()).or_insert(0) += 1;
        }
        Ok(census)
    }

    /// One entry per orbit at denominator `N`: the smallest character of the
    /// orbit (in the order of [`DualChar`]) and its orbit data.
    pub fn orbit_representatives(
        &self,
        denominator: u64,
        budget: u128,
    ) -> Result<Vec<(DualChar, OrbitData)>> {
        if denominator == 0 {
            return Err(Error::InvalidCharacter(
                "denominator must be at least 1".into(),
            ));
        }
        let needed = (denominator as u128)
            .checked_pow(self.rank() as u32)
            .and_then(|x| x.checked_mul(self.torsion().order().to_u128()?))
            .and_then(|x| x.checked_mul(self.point_group().order() as u128))
            .unwrap_or(u128::MAX);
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        let mut seen: HashSet<DualChar> = HashSet::new();
        let mut out = Vec::new();
        for free in lattice_points(self.rank(), denominator) {
            for psi in self.torsion().elements() {
                let chi = DualChar::new(free.clone(), psi);
                if seen.contains(&chi) {
                    continue;
                }
                let data = self.orbit_stabilizer(&chi);
                seen.extend(data.orbit.iter().cloned());
                let rep = data.orbit.iter().min().expect("nonempty").clone();
                out.push((rep, data));
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }
}

/// All of `((1/N)Z)^r mod 1` in lexicographic order of numerators.
pub fn lattice_points(rank: usize, denominator: u64) -> impl Iterator<Item = RatVecMod1> {
    let total = (denominator as u128).pow(rank as u32);
    let den = BigInt::from(denominator);
    (0..total).map(move |mut idx| {
        let mut coords = vec![BigRational::zero(); rank];
        for c in coords.iter_mut().rev() {
            let (q, rem) = idx.div_rem(&(denominator as u128));
            *c = BigRational::new(BigInt::from(rem), den.clone());
            idx = q;
        }
        RatVecMod1::new(coords)
    })
}
