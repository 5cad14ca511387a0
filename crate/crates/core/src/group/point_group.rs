use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Finite group given by its full multiplication table. Label 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointGroup {
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    generators: Vec<usize>,
}

/// A quotient `D / N` with its coset bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub group: PointGroup,
    /// Quotient label of each element of the parent.
    pub coset_of: Vec<usize>,
    /// Smallest parent label in each coset, indexed by quotient label.
    pub representatives: Vec<usize>,
}

impl PointGroup {
    /// Verifies the group axioms (closure, identity at 0, inverses, associativity).
    pub fn from_table(table: Vec<Vec<usize>>, generators: Vec<usize>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty multiplication table".into()));
        }
        if table
            .iter()
            .any(|row| row.len() != n || row.iter().any(|&x| x >= n))
        {
            return Err(Error::InvalidGroup(
                "multiplication table is not closed".into(),
            ));
        }
        for (a, row) in table.iter().enumerate() {
            if row[0] != a || table[0][a] != a {
                return Err(Error::InvalidGroup("label 0 is not the identity".into()));
            }
        }
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| table[a][b] == 0 && table[b][a] == 0)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(
                            "multiplication is not associative".into(),
                        ));
                    }
                }
            }
        }
        if generators.iter().any(|&g| g >= n) {
            return Err(Error::InvalidGroup("generator label out of range".into()));
        }
        Ok(PointGroup {
            table,
            inverse,
            generators,
        })
    }

    pub fn trivial() -> Self {
        PointGroup {
            table: vec![vec![0]],
            inverse: vec![0],
            generators: Vec::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        self.elements()
            .map(|a| self.element_order(a))
            .fold(1, num_integer::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn power(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// Conjugacy classes, each sorted, ordered by smallest member (identity class first).
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut classes = Vec::new();
        for x in self.elements() {
            if seen[x] {
                continue;
            }
            let class: BTreeSet<usize> = self.elements().map(|g| self.conjugate(g, x)).collect();
            for &c in &class {
                seen[c] = true;
            }
            classes.push(class.into_iter().collect());
        }
        classes
    }

    /// Subgroup generated by `gens`, as sorted labels.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut members: BTreeSet<usize> = BTreeSet::from([0]);
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if members.insert(y) {
                    frontier.push(y);
                }
            }
        }
        members.into_iter().collect()
    }

    pub fn is_subgroup(&self, members: &[usize]) -> bool {
        let set: BTreeSet<usize> = members.iter().copied().collect();
        set.contains(&0)
            && members
                .iter()
                .all(|&a| members.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    pub fn is_normal(&self, members: &[usize]) -> bool {
        let set: BTreeSet<usize> = members.iter().copied().collect();
        self.is_subgroup(members)
            && self
                .elements()
                .all(|g| members.iter().all(|&x| set.contains(&self.conjugate(g, x))))
    }

    /// The subgroup on `members` as a standalone group, with the map from new
    /// labels back to parent labels. Members are relabelled in increasing order.
    pub fn subgroup(&self, members: &[usize]) -> Result<(PointGroup, Vec<usize>)> {
        let mut labels: Vec<usize> = members.to_vec();
        labels.sort_unstable();
        labels.dedup();
        if !self.is_subgroup(&labels) {
            return Err(Error::InvalidGroup("labels do not form a subgroup".into()));
        }
        let index_of = |x: usize| labels.binary_search(&x).expect("closed under products");
        let table = labels
            .iter()
            .map(|&a| labels.iter().map(|&b| index_of(self.mul(a, b))).collect())
            .collect();
        let generators = labels.iter().enumerate().skip(1).map(|(i, _)| i).collect();
        let sub = PointGroup::from_table(table, generators)?;
        Ok((sub, labels))
    }

    /// Quotient by a normal subgroup. Cosets are ordered by their smallest label.
    pub fn quotient(&self, normal: &[usize]) -> Result<Quotient> {
        if !self.is_normal(normal) {
            return Err(Error::InvalidGroup(
                "quotient by a non-normal subgroup".into(),
            ));
        }
        let mut coset_of = vec![usize::MAX; self.order()];
        let mut representatives = Vec::new();
        for x in self.elements() {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let label = representatives.len();
            representatives.push(x);
            for &n in normal {
                coset_of[self.mul(x, n)] = label;
            }
        }
        let table = representatives
            .iter()
            .map(|&a| {
                representatives
                    .iter()
                    .map(|&b| coset_of[self.mul(a, b)])
                    .collect()
            })
            .collect();
        let mut generators: Vec<usize> = self
            .generators
            .iter()
            .map(|&g| coset_of[g])
            .filter(|&g| g != 0)
            .collect();
        generators.dedup();
        let group = PointGroup::from_table(table, generators)?;
        Ok(Quotient {
            group,
            coset_of,
            representatives,
        })
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn cyclic(n: usize) -> PointGroup {
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        PointGroup::from_table(table, if n > 1 { vec![1] } else { vec![] }).unwrap()
    }

    /// Symmetric group on `k` points via permutation composition.
    pub(crate) fn symmetric(k: usize) -> PointGroup {
        fn perms(k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(k - 1) {
                for pos in 0..k {
                    let mut q = p.clone();
                    q.insert(pos, k - 1);
                    out.push(q);
                }
            }
            out
        }
        let mut all = perms(k);
        all.sort();
        let idx = |p: &Vec<usize>| all.iter().position(|q| q == p).unwrap();
        let table = all
            .iter()
            .map(|a| {
                all.iter()
                    .map(|b| idx(&b.iter().map(|&i| a[i]).collect()))
                    .collect()
            })
            .collect();
        PointGroup::from_table(table, vec![]).unwrap()
    }

    #[test]
    fn cyclic_basics() {
        let z6 = cyclic(6);
        assert_eq!(z6.order(), 6);
        assert_eq!(z6.element_order(2), 3);
        assert_eq!(z6.exponent(), 6);
        assert!(z6.is_abelian());
        assert_eq!(z6.conjugacy_classes().len(), 6);
    }

    #[test]
    fn s3_classes_and_quotient() {
        let s3 = symmetric(3);
        assert!(!s3.is_abelian());
        let classes = s3.conjugacy_classes();
        assert_eq!(classes.len(), 3);
        let mut sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        // the alternating subgroup is generated by any 3-cycle
        let three_cycle = s3.elements().find(|&a| s3.element_order(a) == 3).unwrap();
        let a3 = s3.generated_subgroup(&[three_cycle]);
        assert_eq!(a3.len(), 3);
        let q = s3.quotient(&a3).unwrap();
        assert_eq!(q.group.order(), 2);
        let (sub, labels) = s3.subgroup(&a3).unwrap();
        assert_eq!(sub.order(), 3);
        assert_eq!(labels[0], 0);
    }

    #[test]
    fn rejects_non_group() {
        // {0, 1} with 1·1 = 1 has no inverse for 1
        assert!(PointGroup::from_table(vec![vec![0, 1], vec![1, 1]], vec![]).is_err());
    }
}
