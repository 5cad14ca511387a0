use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::model::{GroupElement, LatticeVec, VAGroup};
use super::point_group::Quotient;
use crate::linalg::{smith_normal_form, solve_diophantine, IntMatrix};

/// Finitely generated abelian group `Z^f × Z_{m_1} × … × Z_{m_k}` together
/// with the images of the generators of the presentation it was computed from.
#[derive(Clone, PartialEq, Eq)]
pub struct FGAbelianGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
    /// Row `i`: coordinates of presentation generator `i`, torsion
    /// coordinates first (reduced), then free coordinates.
    coordinates: Vec<Vec<BigInt>>,
}

impl FGAbelianGroup {
    /// Abelian group `Z^n / rowspace(relations)`.
    pub fn from_relations(relations: &IntMatrix, generators: usize) -> Self {
        let rel = if relations.rows() == 0 {
            IntMatrix::zeros(1, generators)
        } else {
            relations.clone()
        };
        let snf = smith_normal_form(&rel);
        let diag = snf.diagonal();
        let mut torsion_idx = Vec::new();
        let mut free_idx = Vec::new();
        for k in 0..generators {
            match diag.get(k) {
                Some(s) if s.is_one() => {}
                Some(s) if !s.is_zero() => torsion_idx.push(k),
                _ => free_idx.push(k),
            }
        }
        let torsion: Vec<BigInt> = torsion_idx.iter().map(|&k| diag[k].clone()).collect();
        let coordinates = (0..generators)
            .map(|i| {
                let row = snf.v.row(i);
                torsion_idx
                    .iter()
                    .map(|&k| row[k].mod_floor(&diag[k]))
                    .chain(free_idx.iter().map(|&k| row[k].clone()))
                    .collect()
            })
            .collect();
        FGAbelianGroup {
            free_rank: free_idx.len(),
            torsion,
            coordinates,
        }
    }

    /// Normalizes a list of cyclic orders (0 meaning `Z`) to invariant-factor form.
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let n = orders.len();
        let diag: Vec<BigInt> = orders.iter().map(|&m| BigInt::from(m)).collect();
        Self::from_relations(&IntMatrix::diagonal(&diag), n)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Torsion invariant factors `m_1 | m_2 | …`, all at least 2.
    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn coordinates(&self) -> &[Vec<BigInt>] {
        &self.coordinates
    }

    /// Same abstract group (coordinates ignored).
    pub fn isomorphic(&self, other: &FGAbelianGroup) -> bool {
        self.free_rank == other.free_rank && self.torsion == other.torsion
    }

    /// Image of an integer combination of presentation generators.
    pub fn project(&self, combination: &[BigInt]) -> Vec<BigInt> {
        let width = self.torsion.len() + self.free_rank;
        let mut out = vec![BigInt::zero(); width];
        for (c, row) in combination.iter().zip(&self.coordinates) {
            for (o, x) in out.iter_mut().zip(row) {
                *o += c * x;
            }
        }
        for (o, m) in out.iter_mut().zip(&self.torsion) {
            *o = o.mod_floor(m);
        }
        out
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            n => parts.push(format!("Z^{n}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let m = &self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|x| *x == m).count();
            parts.push(if run == 1 {
                format!("Z{m}")
            } else {
                format!("Z{m}^{run}")
            });
            i += run;
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

impl fmt::Debug for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FGAbelianGroup({self})")
    }
}

/// Kernel `D₀` of the free action, the quotient `D₁ = D/D₀` and `K = |D₁|`.
#[derive(Clone, Debug)]
pub struct CentralizerData {
    /// Sorted labels of `D₀` in `D`.
    pub kernel: Vec<usize>,
    pub quotient: Quotient,
    pub k: usize,
}

/// Abelianization of `L` with the coordinates of the lattice basis vectors.
#[derive(Clone, Debug)]
pub struct LAbelianization {
    pub group: FGAbelianGroup,
    /// Labels of `D₀`; generator `r + t + i` of the presentation is `(0, kernel[i])`.
    pub kernel: Vec<usize>,
}

impl LAbelianization {
    /// `r × f` block of free coordinates of `ē_1 … ē_r`.
    pub fn lattice_free_block(&self, rank: usize) -> IntMatrix {
        let t = self.group.torsion().len();
        let rows: Vec<Vec<BigInt>> = self.group.coordinates()[..rank]
            .iter()
            .map(|c| c[t..].to_vec())
            .collect();
        if rows.is_empty() {
            return IntMatrix::zeros(0, self.group.free_rank());
        }
        IntMatrix::from_rows(&rows).expect("rectangular")
    }
}

/// Elements of order `k` for `k = 1..=bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderCensus {
    pub bound: usize,
    /// `present[k - 1]` tells whether an element of exact order `k` exists.
    pub present: Vec<bool>,
}

impl OrderCensus {
    pub fn has_order(&self, k: usize) -> bool {
        k >= 1 && k <= self.bound && self.present[k - 1]
    }

    pub fn orders(&self) -> Vec<usize> {
        (1..=self.bound).filter(|&k| self.has_order(k)).collect()
    }
}

/// Finite-order elements with point part `d`, described by a free-part
/// solution and the achievable orders over the torsion part.
struct FiniteOrderFamily {
    d: usize,
    free_solution: Vec<BigInt>,
    /// Pairs `(torsion part of v, order of (v, d))`.
    orders: Vec<(Vec<BigInt>, BigInt)>,
}

impl VAGroup {
    pub fn hirsch_length(&self) -> usize {
        self.rank()
    }

    pub fn centralizer_data(&self) -> CentralizerData {
        let pg = self.point_group();
        let kernel: Vec<usize> = pg
            .elements()
            .filter(|&d| self.free_action(d).is_identity())
            .collect();
        let quotient = pg
            .quotient(&kernel)
            .expect("kernel of a homomorphism is normal");
        let k = quotient.group.order();
        CentralizerData {
            kernel,
            quotient,
            k,
        }
    }

    /// Torsion-free lattice with faithful point-group action.
    pub fn is_crystallographic(&self) -> bool {
        self.torsion().is_empty() && self.centralizer_data().kernel.len() == 1
    }

    /// Relation matrix of the abelianized presentation of the preimage of
    /// `labels` (a subgroup of `D`). Generators: `e_1..e_r`, `f_1..f_t`, then
    /// `g_d` for `d` in `labels`.
    fn abelian_relations(&self, labels: &[usize]) -> (IntMatrix, usize) {
        let (r, t) = (self.rank(), self.torsion().len());
        let n = r + t + labels.len();
        let pos = |d: usize| r + t + labels.iter().position(|&x| x == d).expect("closed");
        let mut rel = IntMatrix::zeros(0, n);
        let mut push = |row: Vec<BigInt>| {
            if row.iter().any(|x| !x.is_zero()) {
                rel.push_row(row);
            }
        };
        for &d in labels {
            let fr = self.free_action(d);
            for i in 0..r {
                let mut row = vec![BigInt::zero(); n];
                for j in 0..r {
                    row[j] = fr[(j, i)].clone();
                }
                row[i] -= 1;
                push(row);
            }
            let tr = self.torsion_action(d);
            for i in 0..t {
                let mut row = vec![BigInt::zero(); n];
                for j in 0..t {
                    row[r + j] = tr[(j, i)].clone();
                }
                row[r + i] -= 1;
                push(row);
            }
        }
        for &a in labels {
            for &b in labels {
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
                push(row);
            }
        }
        for (j, m) in self.torsion().factors().iter().enumerate() {
            let mut row = vec![BigInt::zero(); n];
            row[r + j] = m.clone();
            push(row);
        }
        (rel, n)
    }

    /// `H₁(G) = G/[G,G]` in invariant-factor form.
    pub fn abelianization(&self) -> FGAbelianGroup {
        let labels: Vec<usize> = self.point_group().elements().collect();
        let (rel, n) = self.abelian_relations(&labels);
        FGAbelianGroup::from_relations(&rel, n)
    }

    /// Abelianization of the centralizer `L` of the free lattice.
    pub fn l_abelianization(&self) -> LAbelianization {
        let kernel = self.centralizer_data().kernel;
        let (rel, n) = self.abelian_relations(&kernel);
        LAbelianization {
            group: FGAbelianGroup::from_relations(&rel, n),
            kernel,
        }
    }

    /// Image in `H₁(G)` of an element, given the output of [`abelianization`].
    pub fn abelian_image(&self, h1: &FGAbelianGroup, g: &GroupElement) -> Vec<BigInt> {
        let (r, t) = (self.rank(), self.torsion().len());
        let mut comb = vec![BigInt::zero(); r + t + self.point_group().order()];
        comb[..r].clone_from_slice(&g.v.free);
        comb[r..r + t].clone_from_slice(&g.v.torsion);
        comb[r + t + g.d] = BigInt::one();
        h1.project(&comb)
    }

    fn finite_order_family(&self, d: usize) -> Option<FiniteOrderFamily> {
        let pg = self.point_group();
        let n = pg.element_order(d);
        let s = self.power(&self.section(d), n).v;
        let r = self.rank();
        let mut norm_free = IntMatrix::zeros(r, r);
        let mut norm_tor = IntMatrix::zeros(self.torsion().len(), self.torsion().len());
        let mut x = 0;
        for _ in 0..n {
            norm_free = norm_free.add(self.free_action(x)).expect("square");
            norm_tor = norm_tor.add(self.torsion_action(x)).expect("square");
            x = pg.mul(x, d);
        }
        let rhs: Vec<BigInt> = s.free.iter().map(|v| -v).collect();
        let free_solution = solve_diophantine(&norm_free, &rhs).ok()??.particular;
        let orders = self
            .torsion()
            .elements()
            .into_iter()
            .map(|vt| {
                let mut w = self.torsion().apply(&norm_tor, &vt);
                for (wi, si) in w.iter_mut().zip(&s.torsion) {
                    *wi += si;
                }
                let w = self.torsion().reduce(&w);
                let order = BigInt::from(n) * self.torsion().element_order(&w);
                (vt, order)
            })
            .collect();
        Some(FiniteOrderFamily {
            d,
            free_solution,
            orders,
        })
    }

    fn torsion_witness_among(&self, labels: &[usize]) -> Option<GroupElement> {
        labels.iter().find_map(|&d| {
            let fam = self.finite_order_family(d)?;
            let (vt, _) = fam.orders.into_iter().find(|(_, o)| !o.is_one())?;
            Some(self.element(
                LatticeVec {
                    free: fam.free_solution,
                    torsion: vt,
                },
                fam.d,
            ))
        })
    }

    /// A nontrivial element of finite order, if one exists.
    pub fn torsion_witness(&self) -> Option<GroupElement> {
        let labels: Vec<usize> = self.point_group().elements().collect();
        self.torsion_witness_among(&labels)
    }

    pub fn has_torsion(&self) -> bool {
        self.torsion_witness().is_some()
    }

    /// Exact finite element orders up to `bound`.
    pub fn element_order_census(&self, bound: usize) -> OrderCensus {
        let mut present = vec![false; bound];
        for d in self.point_group().elements() {
            let Some(fam) = self.finite_order_family(d) else {
                continue;
            };
            for (_, o) in fam.orders {
                if let Some(k) = o.to_usize() {
                    if (1..=bound).contains(&k) {
                        present[k - 1] = true;
                    }
                }
            }
        }
        OrderCensus { bound, present }
    }

    /// Order of an element, `None` when infinite.
    pub fn element_order(&self, g: &GroupElement) -> Option<BigInt> {
        let n = self.point_group().element_order(g.d);
        let w = self.power(g, n).v;
        if w.free.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(BigInt::from(n) * self.torsion().element_order(&w.torsion))
    }

    /// Whether `L`, the finite-conjugacy part of the group in this model, is torsion-free.
    pub fn fc_center_is_torsion_free(&self) -> bool {
        self.torsion_witness_among(&self.centralizer_data().kernel)
            .is_none()
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::super::definition::{GeneratorSpec, GroupDefinition};
    use super::*;

    fn build(def: GroupDefinition) -> VAGroup {
        VAGroup::from_definition(&def).unwrap()
    }

    fn lattice(r: usize) -> VAGroup {
        build(GroupDefinition::new(r, &[]))
    }

    fn p2() -> VAGroup {
        build(GroupDefinition::new(2, &[]).generator(GeneratorSpec::new(&[&[-1, 0], &[0, -1]])))
    }

    fn pg() -> VAGroup {
        build(
            GroupDefinition::new(2, &[])
                .generator(GeneratorSpec::new(&[&[1, 0], &[0, -1]]).translation(["1/2", "0"])),
        )
    }

    fn cm() -> VAGroup {
        build(GroupDefinition::new(2, &[]).generator(GeneratorSpec::new(&[&[0, 1], &[1, 0]])))
    }

    /// `Z × Z2` with `D₀ = Z2` acting trivially: split direct product.
    fn direct_z2() -> VAGroup {
        build(GroupDefinition::new(1, &[]).generator(GeneratorSpec::new(&[&[1]]).label(&[1, 0])))
    }

    #[test]
    fn lattice_invariants() {
        let g = lattice(3);
        assert_eq!(g.hirsch_length(), 3);
        assert!(g.is_crystallographic());
        let h1 = g.abelianization();
        assert_eq!(h1.free_rank(), 3);
        assert!(h1.torsion().is_empty());
        let cd = g.centralizer_data();
        assert_eq!((cd.kernel.len(), cd.k), (1, 1));
        assert!(!g.has_torsion());
        assert_eq!(g.element_order_census(6).orders(), vec![1]);
        assert!(g.fc_center_is_torsion_free());
    }

    #[test]
    fn p2_abelianization() {
        let h1 = p2().abelianization();
        assert_eq!(h1.to_string(), "Z2^3");
    }

    #[test]
    fn pg_abelianization_and_torsion() {
        let g = pg();
        assert_eq!(g.abelianization().to_string(), "Z x Z2");
        assert!(!g.has_torsion());
        assert_eq!(g.element_order_census(8).orders(), vec![1]);
    }

    #[test]
    fn cm_reflection_witness() {
        let g = cm();
        let w = g.torsion_witness().unwrap();
        assert_eq!(g.element_order(&w), Some(BigInt::from(2)));
        assert_eq!(g.multiply(&w, &w), g.identity());
    }

    #[test]
    fn abelian_image_is_a_homomorphism() {
        let g = pg();
        let h1 = g.abelianization();
        let x = g.element(LatticeVec::from_i64(&[2, -1], &[]), 1);
        let y = g.element(LatticeVec::from_i64(&[-3, 5], &[]), 1);
        let sum: Vec<BigInt> = g
            .abelian_image(&h1, &x)
            .iter()
            .zip(g.abelian_image(&h1, &y))
            .map(|(a, b)| a + b)
            .collect();
        let xy = g.abelian_image(&h1, &g.multiply(&x, &y));
        assert_eq!(h1.project(&[]).len(), xy.len());
        let t = h1.torsion().len();
        for i in 0..xy.len() {
            if i < t {
                assert_eq!(sum[i].mod_floor(&h1.torsion()[i]), xy[i]);
            } else {
                assert_eq!(sum[i], xy[i]);
            }
        }
    }

    #[test]
    fn split_trivial_kernel_gives_direct_product() {
        let g = direct_z2();
        assert_eq!(g.point_group().order(), 2);
        let cd = g.centralizer_data();
        assert_eq!((cd.kernel.len(), cd.k), (2, 1));
        let la = g.l_abelianization();
        assert_eq!(la.group.to_string(), "Z x Z2");
        assert!(!la.lattice_free_block(1).determinant().unwrap().is_zero());
        assert!(!g.is_crystallographic());
        assert!(!g.fc_center_is_torsion_free());
    }

    #[test]
    fn normalizes_cyclic_orders() {
        assert_eq!(
            FGAbelianGroup::from_cyclic_orders(&[3, 2]).to_string(),
            "Z6"
        );
        assert_eq!(
            FGAbelianGroup::from_cyclic_orders(&[0, 2, 2]).to_string(),
            "Z x Z2^2"
        );
        assert_eq!(FGAbelianGroup::from_cyclic_orders(&[]).to_string(), "0");
    }

    /// Elements outside `L` have conjugacy classes that keep growing with the
    /// radius of the conjugating ball; elements of `L` do not.
    #[test]
    fn finite_conjugacy_part_is_l() {
        let g = build(
            GroupDefinition::new(2, &[])
                .generator(GeneratorSpec::new(&[&[0, 1], &[1, 0]]))
                .generator(GeneratorSpec::new(&[&[1, 0], &[0, 1]]).label(&[1, 0])),
        );
        let ball = |radius: i64| {
            let mut out = Vec::new();
            for x in -radius..=radius {
                for y in -radius..=radius {
                    for d in g.point_group().elements() {
                        out.push(g.element(LatticeVec::from_i64(&[x, y], &[]), d));
                    }
                }
            }
            out
        };
        let kernel = g.centralizer_data().kernel;
        for d in g.point_group().elements() {
            let x = g.element(LatticeVec::from_i64(&[1, 0], &[]), d);
            let count = |radius| {
                ball(radius)
                    .iter()
                    .map(|h| g.conjugate(h, &x))
                    .collect::<HashSet<_>>()
                    .len()
            };
            let (small, large) = (count(2), count(4));
            assert_eq!(
                kernel.contains(&d),
                small == large,
                "d = {d}: {small} vs {large}"
            );
        }
    }
}
