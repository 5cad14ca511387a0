//! Invariant fingerprints of virtually abelian groups, pairwise comparison
//! reports and the separation matrix of the wallpaper groups.
//!
//! Every fingerprint field except the reference K-theory is recomputed from
//! the group definition. Fields carry a provenance label saying how much
//! they say about the group C*-algebra.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::Serialize;

use crate::catalog::{self, ReferenceData, WALLPAPER_NAMES};
use crate::dual::{CrystalLike, Lattice, DEFAULT_CENSUS_BUDGET, DEFAULT_PRIME_BOUND};
use crate::error::{Error, Result};
use crate::group::{FGAbelianGroup, GroupDefinition, VAGroup};

/// A group together with where it came from.
#[derive(Clone, Debug)]
pub struct LoadedGroup {
    pub name: String,
    pub group: VAGroup,
    pub reference: Option<ReferenceData>,
}

/// Resolves a catalog name, falling back to a group-definition file.
pub fn load_group(source: &str) -> Result<LoadedGroup> {
    match catalog::lookup(source) {
        Ok(entry) => Ok(LoadedGroup {
            name: entry.name.to_string(),
            group: entry.group()?,
            reference: entry.reference,
        }),
        Err(Error::UnknownGroup(_)) if Path::new(source).is_file() => {
            let text = std::fs::read_to_string(source)
                .map_err(|e| Error::InvalidGroup(format!("cannot read {source}: {e}")))?;
            let definition = GroupDefinition::parse(&text)?;
            let group = VAGroup::from_definition(&definition)?;
            Ok(LoadedGroup {
                name: group.display_name().to_string(),
                group,
                reference: None,
            })
        }
        Err(e) => Err(e),
    }
}

#[derive(Clone, Copy, Debug)]
pub struct FingerprintOptions {
    /// Orbit censuses are taken at denominators `1..=max_denominator`.
    pub max_denominator: u64,
    pub prime_bound: u64,
    pub budget: u128,
}

impl Default for FingerprintOptions {
    fn default() -> Self {
        FingerprintOptions {
            max_denominator: 3,
            prime_bound: DEFAULT_PRIME_BOUND,
            budget: DEFAULT_CENSUS_BUDGET,
        }
    }
}

/// Abelian group summary: `Z^free_rank` plus invariant factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianSummary {
    pub display: String,
    pub free_rank: usize,
    pub invariant_factors: Vec<String>,
}

impl From<&FGAbelianGroup> for AbelianSummary {
    fn from(g: &FGAbelianGroup) -> Self {
        AbelianSummary {
            display: g.to_string(),
            free_rank: g.free_rank(),
            invariant_factors: g.torsion().iter().map(ToString::to_string).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum CrystalLikeStatus {
    Yes {
        character: String,
        prime: u64,
        orbit_size: usize,
    },
    No {
        orbit_size_bound: usize,
        index: usize,
    },
    Inconclusive {
        prime_bound: u64,
        reason: String,
    },
}

impl CrystalLikeStatus {
    fn label(&self) -> &'static str {
        match self {
            CrystalLikeStatus::Yes { .. } => "yes",
            CrystalLikeStatus::No { .. } => "no",
            CrystalLikeStatus::Inconclusive { .. } => "inconclusive",
        }
    }
}

impl From<&CrystalLike> for CrystalLikeStatus {
    fn from(c: &CrystalLike) -> Self {
        match c {
            CrystalLike::Yes(w) => CrystalLikeStatus::Yes {
                character: w.character.to_string(),
                prime: w.prime,
                orbit_size: w.orbit_size,
            },
            CrystalLike::No(cert) => CrystalLikeStatus::No {
                orbit_size_bound: cert.orbit_size_bound,
                index: cert.index,
            },
            CrystalLike::Inconclusive {
                prime_bound,
                reason,
            } => CrystalLikeStatus::Inconclusive {
                prime_bound: *prime_bound,
                reason: reason.clone(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitCensus {
    pub denominator: u64,
    /// Orbit size to number of orbits.
    pub orbits: BTreeMap<usize, usize>,
}

/// K-groups copied from the literature; never recomputed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KReference {
    pub k0: AbelianSummary,
    pub k1: AbelianSummary,
    pub note: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub name: String,
    pub hirsch_length: usize,
    /// Equal to the Hirsch length.
    pub nuclear_dimension: usize,
    pub crystallographic: bool,
    pub crystal_like: CrystalLikeStatus,
    /// `[G : lattice]`, read off a principal orbit; absent without a certificate.
    pub point_group_order_recovered: Option<usize>,
    pub h1: AbelianSummary,
    pub has_torsion: bool,
    pub fc_center_torsion_free: bool,
    pub orbit_censuses: Vec<OrbitCensus>,
    pub reference_k_theory: Option<KReference>,
}

impl Fingerprint {
    pub fn is_inconclusive(&self) -> bool {
        matches!(self.crystal_like, CrystalLikeStatus::Inconclusive { .. })
    }
}

fn k_reference(reference: &Option<ReferenceData>) -> Option<KReference> {
    reference.as_ref().map(|r| KReference {
        k0: (&r.k0_group()).into(),
        k1: (&r.k1_group()).into(),
        note: "reference data, not recomputed",
    })
}

pub fn fingerprint(loaded: &LoadedGroup, options: &FingerprintOptions) -> Result<Fingerprint> {
    let g = &loaded.group;
    let crystal_like =
        g.find_principal_character(Lattice::Model, options.prime_bound, options.budget)?;
    let orbit_censuses = (1..=options.max_denominator)
        .map(|n| {
            Ok(OrbitCensus {
                denominator: n,
                orbits: g.orbit_census(n, options.budget)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Fingerprint {
        name: loaded.name.clone(),
        hirsch_length: g.hirsch_length(),
        nuclear_dimension: g.hirsch_length(),
        crystallographic: g.is_crystallographic(),
        point_group_order_recovered: crystal_like.witness().map(|w| w.orbit_size),
        crystal_like: (&crystal_like).into(),
        h1: (&g.abelianization()).into(),
        has_torsion: g.has_torsion(),
        fc_center_torsion_free: g.fc_center_is_torsion_free(),
        orbit_censuses,
        reference_k_theory: k_reference(&loaded.reference),
    })
}

fn census_text(census: &BTreeMap<usize, usize>) -> String {
    let parts: Vec<String> = census.iter().map(|(s, c)| format!("{s}:{c}")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn option_text(v: Option<usize>) -> String {
    v.map_or_else(|| "unknown".to_string(), |x| x.to_string())
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "group                      {}", self.name)?;
        writeln!(f, "hirsch length              {}", self.hirsch_length)?;
        writeln!(f, "nuclear dimension          {}", self.nuclear_dimension)?;
        writeln!(f, "crystallographic           {}", self.crystallographic)?;
        match &self.crystal_like {
            CrystalLikeStatus::Yes { character, prime, orbit_size } => writeln!(
                f,
                "crystal-like               yes (character {character}, p = {prime}, orbit {orbit_size})"
            )?,
            CrystalLikeStatus::No { orbit_size_bound, index } => writeln!(
                f,
                "crystal-like               no (orbits at most {orbit_size_bound} < {index})"
            )?,
            CrystalLikeStatus::Inconclusive { prime_bound, reason } => writeln!(
                f,
                "crystal-like               inconclusive up to p = {prime_bound}: {reason}"
            )?,
        }
        writeln!(
            f,
            "point group order          {}",
            option_text(self.point_group_order_recovered)
        )?;
        writeln!(f, "H1                         {}", self.h1.display)?;
        writeln!(f, "has torsion                {}", self.has_torsion)?;
        writeln!(
            f,
            "FC-center torsion-free     {}",
            self.fc_center_torsion_free
        )?;
        for c in &self.orbit_censuses {
            writeln!(
                f,
                "orbit census N={:<2}          {}",
                c.denominator,
                census_text(&c.orbits)
            )?;
        }
        match &self.reference_k_theory {
            Some(k) => {
                writeln!(f, "K0 (reference)             {}", k.k0.display)?;
                write!(f, "K1 (reference)             {}", k.k1.display)
            }
            None => write!(f, "K-theory                   no reference data"),
        }
    }
}

/// How much a compared field says about the group C*-algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Provenance {
    #[serde(rename = "C*-invariant")]
    CStarInvariant,
    #[serde(rename = "C*-invariant (cited)")]
    CStarInvariantCited,
    #[serde(rename = "group invariant only")]
    GroupInvariantOnly,
    #[serde(rename = "heuristic evidence")]
    HeuristicEvidence,
    #[serde(rename = "reference data")]
    ReferenceData,
}

impl Provenance {
    pub fn is_c_star_invariant(self) -> bool {
        matches!(
            self,
            Provenance::CStarInvariant | Provenance::CStarInvariantCited
        )
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::CStarInvariant => "C*-invariant",
            Provenance::CStarInvariantCited => "C*-invariant (cited)",
            Provenance::GroupInvariantOnly => "group invariant only",
            Provenance::HeuristicEvidence => "heuristic evidence",
            Provenance::ReferenceData => "reference data",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonRow {
    pub invariant: String,
    pub provenance: Provenance,
    pub left: String,
    pub right: String,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    SeparatedByCStarInvariants,
    SeparatedByReferenceKTheory,
    NotSeparated,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::SeparatedByCStarInvariants => "separated by computed C*-invariants",
            Verdict::SeparatedByReferenceKTheory => "separated only by reference K-theory",
            Verdict::NotSeparated => "not separated",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub left: String,
    pub right: String,
    pub rows: Vec<ComparisonRow>,
    /// First C*-invariant row that differs.
    pub first_difference: Option<String>,
    pub verdict: Verdict,
    pub inconclusive: bool,
}

impl Comparison {
    pub fn row(&self, invariant: &str) -> Option<&ComparisonRow> {
        self.rows.iter().find(|r| r.invariant == invariant)
    }
}

pub fn compare(a: &Fingerprint, b: &Fingerprint) -> Comparison {
    let mut rows = Vec::new();
    let mut push = |invariant: &str, provenance, left: String, right: String| {
        rows.push(ComparisonRow {
            invariant: invariant.to_string(),
            provenance,
            equal: left == right,
            left,
            right,
        });
    };
    push(
        "hirsch length",
        Provenance::CStarInvariant,
        a.hirsch_length.to_string(),
        b.hirsch_length.to_string(),
    );
    push(
        "crystallographic",
        Provenance::CStarInvariant,
        a.crystallographic.to_string(),
        b.crystallographic.to_string(),
    );
    push(
        "point group order",
        Provenance::CStarInvariant,
        option_text(a.point_group_order_recovered),
        option_text(b.point_group_order_recovered),
    );
    push(
        "H1",
        Provenance::CStarInvariantCited,
        a.h1.display.clone(),
        b.h1.display.clone(),
    );
    push(
        "FC-center torsion-free",
        Provenance::CStarInvariantCited,
        a.fc_center_torsion_free.to_string(),
        b.fc_center_torsion_free.to_string(),
    );
    push(
        "has torsion",
        Provenance::GroupInvariantOnly,
        a.has_torsion.to_string(),
        b.has_torsion.to_string(),
    );
    push(
        "crystal-like",
        Provenance::GroupInvariantOnly,
        a.crystal_like.label().to_string(),
        b.crystal_like.label().to_string(),
    );
    let censuses: BTreeMap<u64, (Option<&OrbitCensus>, Option<&OrbitCensus>)> = a
        .orbit_censuses
        .iter()
        .map(|c| (c.denominator, (Some(c), None)))
        .chain(
            b.orbit_censuses
                .iter()
                .map(|c| (c.denominator, (None, Some(c)))),
        )
        .fold(BTreeMap::new(), |mut acc, (n, (l, r))| {
            let e = acc.entry(n).or_insert((None, None));
            e.0 = e.0.or(l);
            e.1 = e.1.or(r);
            acc
        });
    for (n, (l, r)) in censuses {
        let text = |c: Option<&OrbitCensus>| c.map_or("-".to_string(), |c| census_text(&c.orbits));
        push(
            &format!("orbit census N={n}"),
            Provenance::HeuristicEvidence,
            text(l),
            text(r),
        );
    }
    let k_text = |k: &Option<KReference>, zero: bool| match k {
        Some(k) if zero => k.k0.display.clone(),
        Some(k) => k.k1.display.clone(),
        None => "-".to_string(),
    };
    push(
        "K0",
        Provenance::ReferenceData,
        k_text(&a.reference_k_theory, true),
        k_text(&b.reference_k_theory, true),
    );
    push(
        "K1",
        Provenance::ReferenceData,
        k_text(&a.reference_k_theory, false),
        k_text(&b.reference_k_theory, false),
    );
    let first_difference = rows
        .iter()
        .find(|r| r.provenance.is_c_star_invariant() && !r.equal)
        .map(|r| r.invariant.clone());
    let k_differs = a.reference_k_theory.is_some()
        && b.reference_k_theory.is_some()
        && rows
            .iter()
            .any(|r| r.provenance == Provenance::ReferenceData && !r.equal);
    let verdict = if first_difference.is_some() {
        Verdict::SeparatedByCStarInvariants
    } else if k_differs {
        Verdict::SeparatedByReferenceKTheory
    } else {
        Verdict::NotSeparated
    };
    Comparison {
        left: a.name.clone(),
        right: b.name.clone(),
        rows,
        first_difference,
        verdict,
        inconclusive: a.is_inconclusive() || b.is_inconclusive(),
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .rows
            .iter()
            .map(|r| r.left.len())
            .max()
            .unwrap_or(0)
            .max(self.left.len());
        writeln!(
            f,
            "{:<24} {:<width$}  {:<width$}  {:<9} provenance",
            "invariant", self.left, self.right, "verdict"
        )?;
        for r in &self.rows {
            writeln!(
                f,
                "{:<24} {:<width$}  {:<width$}  {:<9} {}",
                r.invariant,
                r.left,
                r.right,
                if r.equal { "equal" } else { "different" },
                r.provenance
            )?;
        }
        write!(f, "verdict: {}", self.verdict)?;
        if let Some(first) = &self.first_difference {
            write!(f, " (first: {first})")?;
        }
        Ok(())
    }
}

/// Invariants used by the survey, in priority order.
pub const SURVEY_PRIORITY: [&str; 4] = ["h", "|D|", "H1", "K"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurveyRow {
    pub name: String,
    pub hirsch_length: usize,
    pub point_group_order: Option<usize>,
    pub h1: String,
    pub k0: String,
    pub k1: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurveyPair {
    pub left: String,
    pub right: String,
    /// First separating invariant from [`SURVEY_PRIORITY`].
    pub separated_by: Option<&'static str>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Survey {
    pub groups: Vec<SurveyRow>,
    /// Symmetric; the diagonal is empty.
    pub matrix: Vec<Vec<Option<&'static str>>>,
    pub pairs: Vec<SurveyPair>,
    pub k_theory_dependent: Vec<(String, String)>,
    pub all_separated: bool,
}

fn first_separator(a: &SurveyRow, b: &SurveyRow) -> Option<&'static str> {
    // an unrecovered order never counts as a separation
    let orders_differ =
        matches!((a.point_group_order, b.point_group_order), (Some(x), Some(y)) if x != y);
    if a.hirsch_length != b.hirsch_length {
        Some("h")
    } else if orders_differ {
        Some("|D|")
    } else if a.h1 != b.h1 {
        Some("H1")
    } else if a.k0 != b.k0 || a.k1 != b.k1 {
        Some("K")
    } else {
        None
    }
}

pub fn survey_wallpaper(prime_bound: u64, budget: u128) -> Result<Survey> {
    let groups = WALLPAPER_NAMES
        .iter()
        .map(|name| {
            let entry = catalog::lookup(name)?;
            let g = entry.group()?;
            let certificate = g.find_principal_character(Lattice::Model, prime_bound, budget)?;
            let reference = entry.reference.expect("wallpaper reference");
            Ok(SurveyRow {
                name: name.to_string(),
                hirsch_length: g.hirsch_length(),
                point_group_order: certificate.witness().map(|w| w.orbit_size),
                h1: g.abelianization().to_string(),
                k0: reference.k0_group().to_string(),
                k1: reference.k1_group().to_string(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let n = groups.len();
    let mut matrix = vec![vec![None; n]; n];
    let mut pairs = Vec::new();
    let mut k_theory_dependent = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let sep = first_separator(&groups[i], &groups[j]);
            matrix[i][j] = sep;
            matrix[j][i] = sep;
            if sep == Some("K") {
                k_theory_dependent.push((groups[i].name.clone(), groups[j].name.clone()));
            }
            pairs.push(SurveyPair {
                left: groups[i].name.clone(),
                right: groups[j].name.clone(),
                separated_by: sep,
            });
        }
    }
    let all_separated = pairs.iter().all(|p| p.separated_by.is_some());
    Ok(Survey {
        groups,
        matrix,
        pairs,
        k_theory_dependent,
        all_separated,
    })
}

impl fmt::Display for Survey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<6}", "")?;
        for g in &self.groups {
            write!(f, "{:>5}", g.name)?;
        }
        writeln!(f)?;
        for (g, row) in self.groups.iter().zip(&self.matrix) {
            write!(f, "{:<6}", g.name)?;
            for cell in row {
                write!(f, "{:>5}", cell.unwrap_or("."))?;
            }
            writeln!(f)?;
        }
        let separated = self
            .pairs
            .iter()
            .filter(|p| p.separated_by.is_some())
            .count();
        writeln!(f, "separated pairs: {separated}/{}", self.pairs.len())?;
        let k: Vec<String> = self
            .k_theory_dependent
            .iter()
            .map(|(a, b)| format!("({a}, {b})"))
            .collect();
        write!(f, "pairs needing reference K-theory: {}", k.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn print(name: &str) -> Fingerprint {
        fingerprint(&load_group(name).unwrap(), &FingerprintOptions::default()).unwrap()
    }

    #[test]
    fn wallpaper_fingerprints() {
        let f = print("p4gm");
        assert_eq!(
            (f.hirsch_length, f.point_group_order_recovered),
            (2, Some(8))
        );
        assert_eq!(f.h1.display, "Z2 x Z4");
        assert!(f.has_torsion);
        let f = print("pg");
        assert_eq!(
            (f.hirsch_length, f.point_group_order_recovered),
            (2, Some(2))
        );
        assert_eq!(f.h1.display, "Z x Z2");
        assert!(!f.has_torsion);
        let f = print("p1");
        assert_eq!(f.point_group_order_recovered, Some(1));
        assert_eq!(f.h1.display, "Z^2");
        assert_eq!(f.orbit_censuses[1].orbits, BTreeMap::from([(1, 4)]));
    }

    #[test]
    fn not_crystal_like_has_no_recovered_order() {
        let f = print("not-crystal-like");
        assert!(matches!(
            f.crystal_like,
            CrystalLikeStatus::No {
                orbit_size_bound: 3,
                ..
            }
        ));
        assert_eq!(f.point_group_order_recovered, None);
        assert!(f.reference_k_theory.is_none());
    }

    #[test]
    fn cm_against_pg() {
        let c = compare(&print("cm"), &print("pg"));
        for field in ["hirsch length", "point group order", "H1"] {
            assert!(c.row(field).unwrap().equal, "{field}");
        }
        assert!(!c.row("has torsion").unwrap().equal);
        assert_eq!(c.row("K0").unwrap().left, "Z^2");
        assert_eq!(c.row("K0").unwrap().right, "Z");
        assert_eq!(c.verdict, Verdict::SeparatedByReferenceKTheory);
    }

    #[test]
    fn p2_against_pm() {
        let c = compare(&print("p2"), &print("pm"));
        let h1 = c.row("H1").unwrap();
        assert_eq!((h1.left.as_str(), h1.right.as_str()), ("Z2^3", "Z x Z2^2"));
        assert_eq!(c.first_difference.as_deref(), Some("H1"));
    }

    #[test]
    fn self_comparison_is_equal() {
        for entry in catalog::entries() {
            let f = print(entry.name);
            let c = compare(&f, &f);
            assert!(c.rows.iter().all(|r| r.equal), "{}", entry.name);
            assert_eq!(c.verdict, Verdict::NotSeparated);
        }
    }

    #[test]
    fn fingerprint_is_deterministic() {
        let a = serde_json::to_string(&print("p31m")).unwrap();
        let b = serde_json::to_string(&print("p31m")).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn survey() {
        let s = survey_wallpaper(DEFAULT_PRIME_BOUND, DEFAULT_CENSUS_BUDGET).unwrap();
        assert_eq!(s.pairs.len(), 136);
        assert!(s.all_separated);
        for i in 0..17 {
            for j in 0..17 {
                assert_eq!(s.matrix[i][j], s.matrix[j][i]);
            }
        }
        let expected: Vec<(String, String)> = [
            ("pg", "cm"),
            ("p2mg", "c2mm"),
            ("p2gg", "p4"),
            ("p31m", "p6"),
        ]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
        assert_eq!(s.k_theory_dependent, expected);
        let p1 = s.pairs.iter().filter(|p| p.left == "p1");
        assert!(p1
            .clone()
            .all(|p| p.separated_by == Some("|D|") || p.separated_by == Some("H1")));
        assert_eq!(p1.count(), 16);
    }
}
