use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::cyclotomic::reduce_root_sum;
use crate::dual::{DualChar, LChar};
use crate::error::{Error, Result};
use crate::group::{GroupElement, VAGroup};
use crate::linalg::frac;
use crate::linalg::mod1::format_rational;

pub const DEFAULT_IMAGE_CAP: usize = 1_000_000;

/// Monomial unitary matrix: column `j` has its single nonzero entry
/// `exp(2πi phases[j])` in row `perm[j]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub perm: Vec<usize>,
    pub phases: Vec<BigRational>,
}

impl Monomial {
    pub fn identity(n: usize) -> Self {
        Monomial {
            perm: (0..n).collect(),
            phases: vec![BigRational::zero(); n],
        }
    }

    pub fn diagonal(phases: Vec<BigRational>) -> Self {
        Monomial {
            perm: (0..phases.len()).collect(),
            phases: phases.iter().map(frac).collect(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.perm.len()
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &Monomial) -> Monomial {
        let perm = other.perm.iter().map(|&k| self.perm[k]).collect();
        let phases = other
            .perm
            .iter()
            .zip(&other.phases)
            .map(|(&k, b)| frac(&(b + &self.phases[k])))
            .collect();
        Monomial { perm, phases }
    }

    pub fn inverse(&self) -> Monomial {
        let n = self.dimension();
        let mut perm = vec![0; n];
        let mut phases = vec![BigRational::zero(); n];
        for j in 0..n {
            perm[self.perm[j]] = j;
            phases[self.perm[j]] = frac(&-&self.phases[j]);
        }
        Monomial { perm, phases }
    }

    pub fn is_diagonal(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Diagonal angles, `None` on off-diagonal positions.
    pub fn diagonal_angles(&self) -> Vec<Option<BigRational>> {
        (0..self.dimension())
            .map(|j| (self.perm[j] == j).then(|| self.phases[j].clone()))
            .collect()
    }

    /// Block sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Monomial) -> Monomial {
        let n = self.dimension();
        Monomial {
            perm: self
                .perm
                .iter()
                .copied()
                .chain(other.perm.iter().map(|p| p + n))
                .collect(),
            phases: self.phases.iter().chain(&other.phases).cloned().collect(),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let perm: Vec<String> = self.perm.iter().map(ToString::to_string).collect();
        let phases: Vec<String> = self.phases.iter().map(format_rational).collect();
        write!(f, "perm=[{}] phases=[{}]", perm.join(","), phases.join(","))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial({self})")
    }
}

/// The character a representation is induced from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InducingCharacter {
    /// One-dimensional character of the centralizer `L`.
    Centralizer(LChar),
    /// Character of the lattice `Z^r × F`.
    Lattice(DualChar),
}

impl InducingCharacter {
    fn eval(&self, g: &VAGroup, h: &GroupElement) -> BigRational {
        match self {
            InducingCharacter::Centralizer(chi) => chi.eval(h).expect("element of L"),
            InducingCharacter::Lattice(chi) => {
                debug_assert_eq!(h.d, 0);
                chi.eval(g, &h.v)
            }
        }
    }
}

/// Representation induced from a character of the preimage of a subgroup
/// `P ≤ D`, realised on the transversal `(0, t_i)` where `t_i` is the
/// smallest label of the `i`-th left coset `t_i P` (cosets ordered by that label).
#[derive(Clone, Debug)]
pub struct MonomialRep {
    character: InducingCharacter,
    coset_of: Vec<usize>,
    transversal: Vec<usize>,
    generators: Vec<GroupElement>,
    images: Vec<Monomial>,
}

impl MonomialRep {
    fn build(g: &VAGroup, subgroup: &[usize], character: InducingCharacter) -> Self {
        let pg = g.point_group();
        let mut coset_of = vec![usize::MAX; pg.order()];
        let mut transversal = Vec::new();
        for d in pg.elements() {
            if coset_of[d] != usize::MAX {
                continue;
            }
            for &p in subgroup {
                coset_of[pg.mul(d, p)] = transversal.len();
            }
            transversal.push(d);
        }
        let mut rep = MonomialRep {
            character,
            coset_of,
            transversal,
            generators: g.generators(),
            images: Vec::new(),
        };
        rep.images = rep.generators.iter().map(|x| rep.image(g, x)).collect();
        rep
    }

    pub fn dimension(&self) -> usize {
        self.transversal.len()
    }

    pub fn character(&self) -> &InducingCharacter {
        &self.character
    }

    /// Coset representatives in matrix order.
    pub fn transversal(&self) -> &[usize] {
        &self.transversal
    }

    /// Lattice basis, torsion generators, then sections of the point-group generators.
    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn images(&self) -> &[Monomial] {
        &self.images
    }

    /// Image of an arbitrary element: `x·s_j = s_i·h` places `χ(h)` at `(i, j)`.
    pub fn image(&self, g: &VAGroup, x: &GroupElement) -> Monomial {
        let pg = g.point_group();
        let k = self.dimension();
        let mut perm = Vec::with_capacity(k);
        let mut phases = Vec::with_capacity(k);
        for &tj in &self.transversal {
            let i = self.coset_of[pg.mul(x.d, tj)];
            let si_inv = g.inverse(&g.section(self.transversal[i]));
            let h = g.multiply(&g.multiply(&si_inv, x), &g.section(tj));
            perm.push(i);
            phases.push(self.character.eval(g, &h));
        }
        Monomial { perm, phases }
    }

    /// Checks irreducibility exactly; see [`irreducibility_check`].
    pub fn check_irreducible(&self, cap: usize) -> Irreducibility {
        irreducibility_check(&self.images, cap)
    }
}

impl VAGroup {
    /// `ind_L^G χ̃` for a character of `L` in `N_K`; dimension `K`.
    pub fn induce(&self, chi: &LChar) -> Result<MonomialRep> {
        if !self.in_n_k(chi) {
            return Err(Error::NotMaximalOrbit);
        }
        let kernel = chi.kernel().to_vec();
        Ok(MonomialRep::build(
            self,
            &kernel,
            InducingCharacter::Centralizer(chi.clone()),
        ))
    }

    /// `ind_A^G χ` from the lattice `A = Z^r × F`; dimension `|D|`.
    /// Irreducible exactly when `χ` has trivial stabilizer.
    pub fn induce_from_lattice(&self, chi: &DualChar) -> MonomialRep {
        MonomialRep::build(self, &[0], InducingCharacter::Lattice(chi.clone()))
    }

    /// Whether `χ̃₁` and `χ̃₂` induce equivalent representations, decided by
    /// orbit membership under `D₁`.
    pub fn equivalent(&self, a: &LChar, b: &LChar) -> bool {
        self.l_orbit(a).contains(b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible {
        image_order: usize,
    },
    /// `average` is `Σ|tr|² / |image|`, at least 2.
    Reducible {
        image_order: usize,
        average: BigRational,
    },
    Inconclusive {
        cap: usize,
    },
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible { .. })
    }
}

/// Enumerates the finite matrix group generated by `generators` and
/// evaluates `Σ |tr ρ(x)|² / |image|` exactly in the cyclotomic field
/// spanned by the phases. The representation is irreducible iff this is 1.
pub fn irreducibility_check(generators: &[Monomial], cap: usize) -> Irreducibility {
    let Some(first) = generators.first() else {
        return Irreducibility::Irreducible { image_order: 1 };
    };
    let dim = first.dimension();
    let identity = Monomial::identity(dim);
    let mut seen: HashSet<Monomial> = HashSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    let mut elements = Vec::new();
    while let Some(x) = queue.pop_front() {
        for gen in generators {
            let y = x.compose(gen);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Irreducibility::Inconclusive { cap };
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
        elements.push(x);
    }
    let order = elements.len();
    let n = elements
        .iter()
        .flat_map(|m| m.phases.iter())
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
        .to_usize()
        .expect("phase denominators are small");
    let mut counts = vec![0i128; n];
    let to_exp = |q: &BigRational| -> usize {
        (q * BigRational::from_integer(BigInt::from(n)))
            .to_integer()
            .to_usize()
            .expect("reduced phase")
    };
    for m in &elements {
        let fixed: Vec<usize> = m
            .diagonal_angles()
            .into_iter()
            .flatten()
            .map(|q| to_exp(&q))
            .collect();
        for &a in &fixed {
            for &b in &fixed {
                counts[(a + n - b) % n] += 1;
            }
        }
    }
    let reduced = reduce_root_sum(&counts);
    assert!(
        reduced.len() <= 1,
        "sum of squared trace moduli is rational"
    );
    let total = reduced.first().copied().unwrap_or(0);
    let average = BigRational::new(BigInt::from(total), BigInt::from(order));
    if average.is_one() {
        Irreducibility::Irreducible { image_order: order }
    } else {
        Irreducibility::Reducible {
            image_order: order,
            average,
        }
    }
}
