//! Built-in groups: the 17 plane crystallographic (wallpaper) groups with
//! reference data, and a few virtually abelian examples that are not
//! crystallographic.
//!
//! Wallpaper generators are given in a primitive lattice basis. Square
//! lattices use the standard basis; hexagonal lattices use basis vectors at
//! 120°, where the rotation by 60° is `[[1,-1],[1,0]]`.

use crate::error::{Error, Result};
use crate::group::{FGAbelianGroup, GeneratorSpec, GroupDefinition, VAGroup};

pub const WALLPAPER_NAMES: [&str; 17] = [
    "p1", "p2", "pm", "pg", "cm", "p2mm", "p2mg", "p2gg", "c2mm", "p4", "p4mm", "p4gm", "p3",
    "p3m1", "p31m", "p6", "p6mm",
];

pub const EXAMPLE_NAMES: [&str; 5] = [
    "not-crystal-like",
    "nonabelian-centralizer",
    "phi-not-surjective",
    "swap-pair-g1",
    "swap-pair-g2",
];

/// Published invariants of a wallpaper group. Abelian groups are written as
/// lists of cyclic orders, `0` standing for `Z`. The K-theory columns are
/// stored as given and are never recomputed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceData {
    pub point_group: &'static str,
    pub point_group_order: usize,
    pub h1: &'static [u64],
    pub k0: &'static [u64],
    pub k1: &'static [u64],
    pub torsion_free: bool,
}

impl ReferenceData {
    pub fn h1_group(&self) -> FGAbelianGroup {
        FGAbelianGroup::from_cyclic_orders(self.h1)
    }

    pub fn k0_group(&self) -> FGAbelianGroup {
        FGAbelianGroup::from_cyclic_orders(self.k0)
    }

    pub fn k1_group(&self) -> FGAbelianGroup {
        FGAbelianGroup::from_cyclic_orders(self.k1)
    }
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub definition: GroupDefinition,
    pub reference: Option<ReferenceData>,
}

impl CatalogEntry {
    pub fn group(&self) -> Result<VAGroup> {
        VAGroup::from_definition(&self.definition)
    }
}

const fn reference(
    point_group: &'static str,
    point_group_order: usize,
    h1: &'static [u64],
    k0: &'static [u64],
    k1: &'static [u64],
    torsion_free: bool,
) -> ReferenceData {
    ReferenceData {
        point_group,
        point_group_order,
        h1,
        k0,
        k1,
        torsion_free,
    }
}

fn wallpaper_reference(name: &str) -> Option<ReferenceData> {
    let z = |n: usize| -> &'static [u64] { &[0; 10][..n] };
    Some(match name {
        "p1" => reference("{e}", 1, &[0, 0], z(2), z(2), true),
        "p2" => reference("Z2", 2, &[2, 2, 2], z(6), &[], false),
        "pm" => reference("Z2", 2, &[0, 2, 2], z(3), z(3), false),
        "pg" => reference("Z2", 2, &[0, 2], z(1), &[0, 2], true),
        "cm" => reference("Z2", 2, &[0, 2], z(2), z(2), false),
        "p2mm" => reference("Z2 x Z2", 4, &[2, 2, 2, 2], z(9), &[], false),
        "p2mg" => reference("Z2 x Z2", 4, &[2, 2, 2], z(4), z(1), false),
        "p2gg" => reference("Z2 x Z2", 4, &[4, 2], z(3), &[2], false),
        "c2mm" => reference("Z2 x Z2", 4, &[2, 2, 2], z(5), &[], false),
        "p4" => reference("Z4", 4, &[4, 2], z(9), &[], false),
        "p4mm" => reference("D8", 8, &[2, 2, 2], z(9), &[], false),
        "p4gm" => reference("D8", 8, &[4, 2], z(6), &[], false),
        "p3" => reference("Z3", 3, &[3, 3], z(8), &[], false),
        "p3m1" => reference("S3", 6, &[2], z(5), z(1), false),
        "p31m" => reference("S3", 6, &[3, 2], z(5), z(1), false),
        "p6" => reference("Z6", 6, &[3, 2], z(10), &[], false),
        "p6mm" => reference("D12", 12, &[2, 2], z(8), &[], false),
        _ => return None,
    })
}

const ROT2: &[&[i64]] = &[&[-1, 0], &[0, -1]];
const ROT4: &[&[i64]] = &[&[0, -1], &[1, 0]];
const ROT3: &[&[i64]] = &[&[0, -1], &[1, -1]];
const ROT6: &[&[i64]] = &[&[1, -1], &[1, 0]];
const MIRROR_Y: &[&[i64]] = &[&[1, 0], &[0, -1]];
const MIRROR_X: &[&[i64]] = &[&[-1, 0], &[0, 1]];
const SWAP: &[&[i64]] = &[&[0, 1], &[1, 0]];
const ANTI_SWAP: &[&[i64]] = &[&[0, -1], &[-1, 0]];

pub fn wallpaper_definition(name: &str) -> Result<GroupDefinition> {
    let g = GeneratorSpec::new;
    let half = ["1/2", "0"];
    let half_half = ["1/2", "1/2"];
    let gens: Vec<GeneratorSpec> = match name {
        "p1" => vec![],
        "p2" => vec![g(ROT2)],
        "pm" => vec![g(MIRROR_Y)],
        "pg" => vec![g(MIRROR_Y).translation(half)],
        "cm" => vec![g(SWAP)],
        "p2mm" => vec![g(ROT2), g(MIRROR_Y)],
        "p2mg" => vec![g(ROT2), g(MIRROR_X).translation(half)],
        "p2gg" => vec![g(ROT2), g(MIRROR_X).translation(half_half)],
        "c2mm" => vec![g(ROT2), g(SWAP)],
        "p4" => vec![g(ROT4)],
        "p4mm" => vec![g(ROT4), g(MIRROR_Y)],
        "p4gm" => vec![g(ROT4), g(MIRROR_X).translation(half_half)],
        "p3" => vec![g(ROT3)],
        "p3m1" => vec![g(ROT3), g(ANTI_SWAP)],
        "p31m" => vec![g(ROT3), g(SWAP)],
        "p6" => vec![g(ROT6)],
        "p6mm" => vec![g(ROT6), g(SWAP)],
        _ => return Err(Error::UnknownGroup(name.to_string())),
    };
    Ok(gens.into_iter().fold(
        GroupDefinition::new(2, &[]).named(name),
        GroupDefinition::generator,
    ))
}

pub fn wallpaper(name: &str) -> Result<VAGroup> {
    VAGroup::from_definition(&wallpaper_definition(name)?)
}

fn identity(r: usize) -> Vec<Vec<i64>> {
    (0..r)
        .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
        .collect()
}

fn spec(matrix: Vec<Vec<i64>>) -> GeneratorSpec {
    GeneratorSpec {
        matrix,
        translation: Vec::new(),
        torsion_matrix: None,
        torsion_translation: Vec::new(),
        label: None,
    }
}

/// Matrix of the coordinate permutation `e_i ↦ e_{σ(i)}`.
fn permutation_matrix(sigma: &[usize]) -> Vec<Vec<i64>> {
    let n = sigma.len();
    let mut m = vec![vec![0; n]; n];
    for (i, &s) in sigma.iter().enumerate() {
        m[s][i] = 1;
    }
    m
}

/// `(Z × F) ⋊ Aut(F)` with `F = Z2 × Z2`; `Aut(F) ≅ S3` acts trivially on `Z`.
pub fn example_not_crystal_like() -> GroupDefinition {
    let mut swap = spec(identity(1));
    swap.torsion_matrix = Some(vec![vec![0, 1], vec![1, 0]]);
    let mut shear = spec(identity(1));
    shear.torsion_matrix = Some(vec![vec![1, 1], vec![0, 1]]);
    GroupDefinition::new(1, &[2, 2])
        .named("not-crystal-like")
        .generator(swap)
        .generator(shear)
}

/// `(Z^r × (Z_n)^n) ⋊ S_n`, with `S_n` permuting the torsion coordinates and
/// acting trivially on `Z^r`. Requires `2 <= n <= 5`.
pub fn example_nonabelian_centralizer(n: usize, r: usize) -> Result<GroupDefinition> {
    if !(2..=5).contains(&n) {
        return Err(Error::InvalidGroup(format!("n = {n} must lie in 2..=5")));
    }
    let mut transposition: Vec<usize> = (0..n).collect();
    transposition.swap(0, 1);
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let mut def = GroupDefinition::new(r, &vec![n as u64; n]).named("nonabelian-centralizer");
    for sigma in [transposition, cycle] {
        let mut g = spec(identity(r));
        g.torsion_matrix = Some(permutation_matrix(&sigma));
        def = def.generator(g);
    }
    Ok(def)
}

/// `Z^l ⋊ (S3 × Z_l)`: `S3` acts trivially, `Z_l` cycles the coordinates.
/// The trivially acting factor is carried by permutation labels.
pub fn example_phi_not_surjective(l: usize) -> Result<GroupDefinition> {
    if l < 2 {
        return Err(Error::InvalidGroup(format!("l = {l} must be at least 2")));
    }
    let cycle: Vec<usize> = (0..l).map(|i| (i + 1) % l).collect();
    let mut transposition = spec(identity(l));
    transposition.label = Some(vec![1, 0, 2]);
    let mut three_cycle = spec(identity(l));
    three_cycle.label = Some(vec![1, 2, 0]);
    let mut rotate = spec(permutation_matrix(&cycle));
    rotate.label = Some(vec![0, 1, 2]);
    Ok(GroupDefinition::new(l, &[])
        .named("phi-not-surjective")
        .generator(transposition)
        .generator(three_cycle)
        .generator(rotate))
}

/// The split pair `(Z^r × Z2 × Z2) ⋊ Z2` (coordinate swap) and
/// `(Z^r × Z4) ⋊ Z2` (inversion).
pub fn example_swap_pair(r: usize) -> (GroupDefinition, GroupDefinition) {
    let mut swap = spec(identity(r));
    swap.torsion_matrix = Some(vec![vec![0, 1], vec![1, 0]]);
    let mut invert = spec(identity(r));
    invert.torsion_matrix = Some(vec![vec![-1]]);
    (
        GroupDefinition::new(r, &[2, 2])
            .named("swap-pair-g1")
            .generator(swap),
        GroupDefinition::new(r, &[4])
            .named("swap-pair-g2")
            .generator(invert),
    )
}

fn example_definition(name: &str) -> Option<(GroupDefinition, &'static str)> {
    Some(match name {
        "not-crystal-like" => (
            example_not_crystal_like(),
            "(Z x Z2^2) x| Aut(Z2^2); no character has a full orbit",
        ),
        "nonabelian-centralizer" => (
            example_nonabelian_centralizer(3, 1).expect("valid size"),
            "(Z x Z3^3) x| S3; crystal-like with a nonabelian centralizer",
        ),
        "phi-not-surjective" => (
            example_phi_not_surjective(2).expect("valid size"),
            "Z^2 x| (S3 x Z2) with S3 acting trivially",
        ),
        "swap-pair-g1" => (
            example_swap_pair(1).0,
            "(Z x Z2^2) x| Z2 by coordinate swap",
        ),
        "swap-pair-g2" => (example_swap_pair(1).1, "(Z x Z4) x| Z2 by inversion"),
        _ => return None,
    })
}

pub fn lookup(name: &str) -> Result<CatalogEntry> {
    if let Some(i) = WALLPAPER_NAMES.iter().position(|n| *n == name) {
        return Ok(CatalogEntry {
            name: WALLPAPER_NAMES[i],
            description: "wallpaper group",
            definition: wallpaper_definition(name)?,
            reference: wallpaper_reference(name),
        });
    }
    let i = EXAMPLE_NAMES
        .iter()
        .position(|n| *n == name)
        .ok_or_else(|| Error::UnknownGroup(name.to_string()))?;
    let (definition, description) = example_definition(name).expect("listed example");
    Ok(CatalogEntry {
        name: EXAMPLE_NAMES[i],
        description,
        definition,
        reference: None,
    })
}

/// All entries, wallpaper groups first.
pub fn entries() -> Vec<CatalogEntry> {
    WALLPAPER_NAMES
        .iter()
        .chain(EXAMPLE_NAMES.iter())
        .map(|n| lookup(n).expect("listed"))
        .collect()
}

/// Group-definition document for a catalog entry.
pub fn export(name: &str) -> Result<String> {
    Ok(lookup(name)?.definition.to_toml())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_name() {
        assert!(matches!(wallpaper("p7"), Err(Error::UnknownGroup(_))));
        assert!(lookup("nope").is_err());
    }

    #[test]
    fn wallpaper_point_group_orders() {
        for name in WALLPAPER_NAMES {
            let g = wallpaper(name).unwrap();
            let reference = wallpaper_reference(name).unwrap();
            assert_eq!(
                g.point_group().order(),
                reference.point_group_order,
                "{name}"
            );
            assert_eq!(g.rank(), 2);
            assert!(g.is_crystallographic(), "{name}");
        }
    }

    #[test]
    fn wallpaper_abelianizations() {
        for name in WALLPAPER_NAMES {
            let g = wallpaper(name).unwrap();
            let reference = wallpaper_reference(name).unwrap();
            assert_eq!(
                g.abelianization().to_string(),
                reference.h1_group().to_string(),
                "{name}"
            );
            assert_eq!(g.has_torsion(), !reference.torsion_free, "{name}");
        }
    }

    #[test]
    fn export_round_trips() {
        for entry in entries() {
            let text = export(entry.name).unwrap();
            assert_eq!(
                GroupDefinition::parse(&text).unwrap(),
                entry.definition,
                "{}",
                entry.name
            );
        }
    }

    #[test]
    fn example_shapes() {
        let g = VAGroup::from_definition(&example_not_crystal_like()).unwrap();
        assert_eq!((g.rank(), g.point_group().order()), (1, 6));
        let g = VAGroup::from_definition(&example_nonabelian_centralizer(3, 1).unwrap()).unwrap();
        assert_eq!(g.point_group().order(), 6);
        assert_eq!(g.centralizer_data().kernel.len(), 6);
        let g = VAGroup::from_definition(&example_phi_not_surjective(2).unwrap()).unwrap();
        assert_eq!(g.point_group().order(), 12);
        assert_eq!(g.centralizer_data().k, 2);
        let (a, b) = example_swap_pair(2);
        for def in [a, b] {
            let g = VAGroup::from_definition(&def).unwrap();
            assert_eq!((g.rank(), g.point_group().order()), (2, 2));
            assert!(g.is_split_presentation());
        }
    }
}
