use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::definition::{GroupDefinition, RationalEntry};
use super::{FiniteAbelian, PointGroup};
use crate::error::{Error, Result};
use crate::linalg::mod1::{format_rational, parse_rational};
use crate::linalg::{frac, IntMatrix};

pub const DEFAULT_POINT_GROUP_BOUND: usize = 192;

/// Element of the lattice `Z^r × F`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVec {
    pub free: Vec<BigInt>,
    pub torsion: Vec<BigInt>,
}

impl LatticeVec {
    pub fn zero(rank: usize, torsion_len: usize) -> Self {
        LatticeVec {
            free: vec![BigInt::zero(); rank],
            torsion: vec![BigInt::zero(); torsion_len],
        }
    }

    pub fn from_i64(free: &[i64], torsion: &[i64]) -> Self {
        LatticeVec {
            free: free.iter().map(|&x| x.into()).collect(),
            torsion: torsion.iter().map(|&x| x.into()).collect(),
        }
    }
}

impl fmt::Display for LatticeVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let free: Vec<String> = self.free.iter().map(ToString::to_string).collect();
        let tor: Vec<String> = self.torsion.iter().map(ToString::to_string).collect();
        write!(f, "({};{})", free.join(","), tor.join(","))
    }
}

impl fmt::Debug for LatticeVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `(v, d)`: lattice part and point-group label.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupElement {
    pub v: LatticeVec,
    pub d: usize,
}

/// Affine data of one point-group element: rational translation part.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Translation {
    pub free: Vec<BigRational>,
    pub torsion: Vec<BigInt>,
}

/// A finitely generated virtually abelian group as an extension
/// `1 → Z^r × F → G → D → 1`, with multiplication
/// `(v₁,d₁)(v₂,d₂) = (v₁ + φ(d₁)v₂ + c(d₁,d₂), d₁d₂)`.
#[derive(Clone, Debug)]
pub struct VAGroup {
    name: Option<String>,
    rank: usize,
    torsion: FiniteAbelian,
    point_group: PointGroup,
    free_action: Vec<IntMatrix>,
    torsion_action: Vec<IntMatrix>,
    tags: Vec<Vec<usize>>,
    vector_system: Vec<Translation>,
    cocycle: Vec<Vec<LatticeVec>>,
    definition: GroupDefinition,
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct PointKey {
    free: IntMatrix,
    torsion: IntMatrix,
    tag: Vec<usize>,
}

struct ParsedGenerator {
    key: PointKey,
    translation: Translation,
}

impl VAGroup {
    pub fn from_definition(def: &GroupDefinition) -> Result<Self> {
        Self::from_definition_bounded(def, DEFAULT_POINT_GROUP_BOUND)
    }

    /// Closes the point parts of the generators, derives the vector system
    /// and the cocycle `c(d₁,d₂) = t(d₁) + φ(d₁)t(d₂) − t(d₁d₂)`, and checks
    /// that the cocycle lands in `Z^r × F`.
    pub fn from_definition_bounded(def: &GroupDefinition, bound: usize) -> Result<Self> {
        let r = def.rank;
        let torsion = FiniteAbelian::from_u64(&def.torsion)?;
        let t = torsion.len();
        let tag_len = def
            .generators
            .iter()
            .find_map(|g| g.label.as_ref().map(Vec::len))
            .unwrap_or(0);

        let mut gens = Vec::with_capacity(def.generators.len());
        for (i, g) in def.generators.iter().enumerate() {
            let free = IntMatrix::from_rows(&g.matrix)?;
            if free.rows() != r || free.cols() != r {
                return Err(Error::DimensionMismatch(format!(
                    "generator {i}: matrix must be {r}x{r}"
                )));
            }
            if !free.is_unimodular() {
                return Err(Error::InvalidGroup(format!(
                    "generator {i}: matrix is not invertible over Z"
                )));
            }
            let tor = match &g.torsion_matrix {
                Some(m) if t > 0 => IntMatrix::from_rows(m)?,
                _ => IntMatrix::identity(t),
            };
            torsion.check_endomorphism(&tor)?;
            let tag = match &g.label {
                Some(l) if l.len() == tag_len => l.clone(),
                Some(_) => {
                    return Err(Error::InvalidGroup(format!(
                        "generator {i}: label length differs from other labels"
                    )))
                }
                None => (0..tag_len).collect(),
            };
            let translation_free = if g.translation.is_empty() {
                vec![BigRational::zero(); r]
            } else if g.translation.len() == r {
                g.translation
                    .iter()
                    .map(|e| match e {
                        RationalEntry::Int(v) => Ok(BigRational::from_integer((*v).into())),
                        RationalEntry::Text(s) => parse_rational(s)
                            .map_err(|m| Error::InvalidGroup(format!("generator {i}: {m}"))),
                    })
                    .collect::<Result<Vec<_>>>()?
            } else {
                return Err(Error::DimensionMismatch(format!(
                    "generator {i}: translation must have {r} entries"
                )));
            };
            let translation_tor = if g.torsion_translation.is_empty() {
                torsion.zero()
            } else if g.torsion_translation.len() == t {
                let v: Vec<BigInt> = g.torsion_translation.iter().map(|&x| x.into()).collect();
                torsion.reduce(&v)
            } else {
                return Err(Error::DimensionMismatch(format!(
                    "generator {i}: torsion_translation must have {t} entries"
                )));
            };
            gens.push(ParsedGenerator {
                key: PointKey {
                    free,
                    torsion: torsion.canonical_endomorphism(&tor),
                    tag,
                },
                translation: Translation {
                    free: translation_free,
                    torsion: translation_tor,
                },
            });
        }

        let identity = PointKey {
            free: IntMatrix::identity(r),
            torsion: torsion.canonical_endomorphism(&IntMatrix::identity(t)),
            tag: (0..tag_len).collect(),
        };
        let compose = |a: &PointKey, b: &PointKey| PointKey {
            free: &a.free * &b.free,
            torsion: torsion.canonical_endomorphism(&(&a.torsion * &b.torsion)),
            tag: b.tag.iter().map(|&i| a.tag[i]).collect(),
        };
        let apply_tr = |key: &PointKey, tr: &Translation| Translation {
            free: (0..r)
                .map(|i| {
                    key.free
                        .row(i)
                        .iter()
                        .zip(&tr.free)
                        .map(|(m, x)| x * BigRational::from_integer(m.clone()))
                        .sum()
                })
                .collect(),
            torsion: torsion.apply(&key.torsion, &tr.torsion),
        };
        let add_tr = |a: &Translation, b: &Translation| Translation {
            free: a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
            torsion: torsion.reduce(
                &a.torsion
                    .iter()
                    .zip(&b.torsion)
                    .map(|(x, y)| x + y)
                    .collect::<Vec<_>>(),
            ),
        };
        let reduce_tr = |a: Translation| Translation {
            free: a.free.iter().map(frac).collect(),
            torsion: a.torsion,
        };

        // closure of the point parts; labels in discovery order, 0 = identity
        let mut keys = vec![identity.clone()];
        let mut index: HashMap<PointKey, usize> = HashMap::from([(identity, 0)]);
        let mut vector_system = vec![Translation {
            free: vec![BigRational::zero(); r],
            torsion: torsion.zero(),
        }];
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            for g in &gens {
                let key = compose(&keys[a], &g.key);
                if index.contains_key(&key) {
                    continue;
                }
                if keys.len() >= bound {
                    return Err(Error::PointGroupTooLarge { bound });
                }
                let tr = add_tr(&vector_system[a], &apply_tr(&keys[a], &g.translation));
                index.insert(key.clone(), keys.len());
                queue.push_back(keys.len());
                keys.push(key);
                vector_system.push(reduce_tr(tr));
            }
        }
        let n = keys.len();
        let mut table = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                table[a][b] = *index.get(&compose(&keys[a], &keys[b])).ok_or_else(|| {
                    Error::InvalidGroup("point parts do not close to a finite group".into())
                })?;
            }
        }
        let mut generator_labels: Vec<usize> = gens
            .iter()
            .map(|g| index[&g.key])
            .filter(|&l| l != 0)
            .collect();
        generator_labels.sort_unstable();
        generator_labels.dedup();
        let point_group = PointGroup::from_table(table, generator_labels)?;

        for (i, g) in gens.iter().enumerate() {
            let l = index[&g.key];
            if g.translation
                .free
                .iter()
                .zip(&vector_system[l].free)
                .any(|(x, y)| !(x - y).is_integer())
            {
                return Err(Error::InconsistentGenerators(format!(
                    "generator {i} differs from the derived translation of its point part by a non-lattice vector"
                )));
            }
        }

        let mut cocycle = vec![vec![LatticeVec::zero(r, t); n]; n];
        for a in 0..n {
            for b in 0..n {
                let ab = point_group.mul(a, b);
                let lhs = add_tr(&vector_system[a], &apply_tr(&keys[a], &vector_system[b]));
                let mut free = Vec::with_capacity(r);
                for (x, y) in lhs.free.iter().zip(&vector_system[ab].free) {
                    let diff = x - y;
                    if !diff.is_integer() {
                        return Err(Error::InconsistentGenerators(format!(
                            "derived cocycle c({a},{b}) is not integral"
                        )));
                    }
                    free.push(diff.to_integer());
                }
                let tor: Vec<BigInt> = lhs
                    .torsion
                    .iter()
                    .zip(&vector_system[ab].torsion)
                    .map(|(x, y)| x - y)
                    .collect();
                cocycle[a][b] = LatticeVec {
                    free,
                    torsion: torsion.reduce(&tor),
                };
            }
        }

        let (free_action, rest): (Vec<_>, Vec<_>) = keys
            .into_iter()
            .map(|k| (k.free, (k.torsion, k.tag)))
            .unzip();
        let (torsion_action, tags) = rest.into_iter().unzip();
        Ok(VAGroup {
            name: def.name.clone(),
            rank: r,
            torsion,
            point_group,
            free_action,
            torsion_action,
            tags,
            vector_system,
            cocycle,
            definition: def.clone(),
        })
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn display_name(&self) -> String {
        self.name.clone().unwrap_or_else(|| "<unnamed>".into())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &FiniteAbelian {
        &self.torsion
    }

    pub fn point_group(&self) -> &PointGroup {
        &self.point_group
    }

    pub fn free_action(&self, d: usize) -> &IntMatrix {
        &self.free_action[d]
    }

    pub fn torsion_action(&self, d: usize) -> &IntMatrix {
        &self.torsion_action[d]
    }

    pub fn tag(&self, d: usize) -> &[usize] {
        &self.tags[d]
    }

    pub fn vector_system(&self, d: usize) -> &Translation {
        &self.vector_system[d]
    }

    pub fn cocycle(&self, a: usize, b: usize) -> &LatticeVec {
        &self.cocycle[a][b]
    }

    pub fn definition(&self) -> &GroupDefinition {
        &self.definition
    }

    /// Whether the cocycle vanishes identically for the chosen vector system.
    pub fn is_split_presentation(&self) -> bool {
        self.cocycle
            .iter()
            .flatten()
            .all(|c| c.free.iter().all(Zero::is_zero) && self.torsion.is_zero(&c.torsion))
    }

    pub fn lattice_zero(&self) -> LatticeVec {
        LatticeVec::zero(self.rank, self.torsion.len())
    }

    pub fn reduce(&self, v: LatticeVec) -> LatticeVec {
        LatticeVec {
            torsion: self.torsion.reduce(&v.torsion),
            free: v.free,
        }
    }

    /// `φ(d) v`.
    pub fn act_lattice(&self, d: usize, v: &LatticeVec) -> LatticeVec {
        LatticeVec {
            free: self.free_action[d].mul_vec(&v.free).expect("rank"),
            torsion: self.torsion.apply(&self.torsion_action[d], &v.torsion),
        }
    }

    pub fn add_lattice(&self, a: &LatticeVec, b: &LatticeVec) -> LatticeVec {
        LatticeVec {
            free: a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
            torsion: self.torsion.reduce(
                &a.torsion
                    .iter()
                    .zip(&b.torsion)
                    .map(|(x, y)| x + y)
                    .collect::<Vec<_>>(),
            ),
        }
    }

    pub fn neg_lattice(&self, a: &LatticeVec) -> LatticeVec {
        LatticeVec {
            free: a.free.iter().map(|x| -x).collect(),
            torsion: self
                .torsion
                .reduce(&a.torsion.iter().map(|x| -x).collect::<Vec<_>>()),
        }
    }

    pub fn is_lattice_zero(&self, v: &LatticeVec) -> bool {
        v.free.iter().all(Zero::is_zero) && self.torsion.is_zero(&v.torsion)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            v: self.lattice_zero(),
            d: 0,
        }
    }

    pub fn element(&self, v: LatticeVec, d: usize) -> GroupElement {
        GroupElement {
            v: self.reduce(v),
            d,
        }
    }

    /// The section element `(0, d)`.
    pub fn section(&self, d: usize) -> GroupElement {
        GroupElement {
            v: self.lattice_zero(),
            d,
        }
    }

    pub fn translation(&self, v: LatticeVec) -> GroupElement {
        self.element(v, 0)
    }

    pub fn multiply(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        let moved = self.act_lattice(g.d, &h.v);
        let v = self.add_lattice(&self.add_lattice(&g.v, &moved), &self.cocycle[g.d][h.d]);
        GroupElement {
            v,
            d: self.point_group.mul(g.d, h.d),
        }
    }

    /// `(v,d)⁻¹ = (−φ(d⁻¹)(v + c(d,d⁻¹)), d⁻¹)`.
    pub fn inverse(&self, g: &GroupElement) -> GroupElement {
        let di = self.point_group.inv(g.d);
        let inner = self.add_lattice(&g.v, &self.cocycle[g.d][di]);
        GroupElement {
            v: self.neg_lattice(&self.act_lattice(di, &inner)),
            d: di,
        }
    }

    pub fn power(&self, g: &GroupElement, k: usize) -> GroupElement {
        (0..k).fold(self.identity(), |acc, _| self.multiply(&acc, g))
    }

    pub fn conjugate(&self, g: &GroupElement, x: &GroupElement) -> GroupElement {
        self.multiply(&self.multiply(g, x), &self.inverse(g))
    }

    /// Generators of G: lattice basis vectors, torsion generators, then the
    /// sections of the point-group generators.
    pub fn generators(&self) -> Vec<GroupElement> {
        let (r, t) = (self.rank, self.torsion.len());
        let mut out = Vec::with_capacity(r + t + self.point_group.generators().len());
        for i in 0..r {
            let mut v = self.lattice_zero();
            v.free[i] = BigInt::one();
            out.push(self.translation(v));
        }
        for j in 0..t {
            let mut v = self.lattice_zero();
            v.torsion[j] = BigInt::one();
            out.push(self.translation(v));
        }
        out.extend(
            self.point_group
                .generators()
                .iter()
                .map(|&d| self.section(d)),
        );
        out
    }

    /// Human-readable affine form `(t(d) + v, φ(d))` of an element.
    pub fn describe(&self, g: &GroupElement) -> String {
        let tr = &self.vector_system[g.d];
        let free: Vec<String> = tr
            .free
            .iter()
            .zip(&g.v.free)
            .map(|(t, v)| format_rational(&(t + BigRational::from_integer(v.clone()))))
            .collect();
        format!(
            "x -> {} x + ({}), lattice part {}",
            self.free_action[g.d],
            free.join(","),
            g.v
        )
    }
}

#[cfg(test)]
mod tests {
    use super::super::definition::GeneratorSpec;
    use super::*;

    fn pg() -> VAGroup {
        let def = GroupDefinition::new(2, &[])
            .generator(GeneratorSpec::new(&[&[1, 0], &[0, -1]]).translation(["1/2", "0"]));
        VAGroup::from_definition(&def).unwrap()
    }

    #[test]
    fn trivial_point_group() {
        let def = GroupDefinition::new(2, &[]).generator(GeneratorSpec::new(&[&[1, 0], &[0, 1]]));
        let g = VAGroup::from_definition(&def).unwrap();
        assert_eq!(g.point_group().order(), 1);
        assert!(g.is_split_presentation());
    }

    #[test]
    fn glide_squares_to_translation() {
        let g = pg();
        assert_eq!(g.point_group().order(), 2);
        assert_eq!(g.cocycle(1, 1), &LatticeVec::from_i64(&[1, 0], &[]));
        let glide = g.section(1);
        assert_eq!(
            g.multiply(&glide, &glide),
            g.translation(LatticeVec::from_i64(&[1, 0], &[]))
        );
        // affine oracle: (x + 1/2, -y) applied twice is (x + 1, y)
        let tr = g.vector_system(1);
        let m = g.free_action(1);
        let twice: Vec<BigRational> = (0..2)
            .map(|i| {
                &tr.free[i]
                    + (0..2)
                        .map(|k| &tr.free[k] * BigRational::from_integer(m[(i, k)].clone()))
                        .sum::<BigRational>()
            })
            .collect();
        assert_eq!(twice, vec![BigRational::one(), BigRational::zero()]);
    }

    #[test]
    fn p4_is_split() {
        let def = GroupDefinition::new(2, &[]).generator(GeneratorSpec::new(&[&[0, -1], &[1, 0]]));
        let g = VAGroup::from_definition(&def).unwrap();
        assert_eq!(g.point_group().order(), 4);
        assert!(g.is_split_presentation());
    }

    #[test]
    fn p2_elements_have_order_two() {
        let def = GroupDefinition::new(2, &[]).generator(GeneratorSpec::new(&[&[-1, 0], &[0, -1]]));
        let g = VAGroup::from_definition(&def).unwrap();
        for x in -3..=3 {
            for y in -3..=3 {
                let e = g.element(LatticeVec::from_i64(&[x, y], &[]), 1);
                assert_eq!(g.multiply(&e, &e), g.identity());
            }
        }
    }

    #[test]
    fn inverse_is_two_sided() {
        let g = pg();
        let e = g.element(LatticeVec::from_i64(&[3, -2], &[]), 1);
        let inv = g.inverse(&e);
        assert_eq!(g.multiply(&inv, &e), g.identity());
        assert_eq!(g.multiply(&e, &inv), g.identity());
    }

    #[test]
    fn non_integral_cocycle_rejected() {
        let def = GroupDefinition::new(1, &[])
            .generator(GeneratorSpec::new(&[&[1]]).translation(["1/2"]));
        assert!(matches!(
            VAGroup::from_definition(&def),
            Err(Error::InconsistentGenerators(_))
        ));
    }

    #[test]
    fn infinite_point_group_rejected() {
        let def = GroupDefinition::new(2, &[]).generator(GeneratorSpec::new(&[&[1, 1], &[0, 1]]));
        assert!(matches!(
            VAGroup::from_definition(&def),
            Err(Error::PointGroupTooLarge { bound: 192 })
        ));
    }

    #[test]
    fn non_invertible_matrix_rejected() {
        let def = GroupDefinition::new(1, &[]).generator(GeneratorSpec::new(&[&[2]]));
        assert!(VAGroup::from_definition(&def).is_err());
    }
}
