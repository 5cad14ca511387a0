//! Acceptance criteria. Runs every criterion, prints one PASS/FAIL line for
//! each and exits nonzero if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vagroup::catalog::{
    example_nonabelian_centralizer, example_not_crystal_like, example_phi_not_surjective,
    example_swap_pair, lookup, wallpaper, WALLPAPER_NAMES,
};
use vagroup::dual::{
    CrystalLike, DualChar, LChar, Lattice, DEFAULT_CENSUS_BUDGET, DEFAULT_SEARCH_BUDGET,
};
use vagroup::group::{LatticeVec, VAGroup};
use vagroup::linalg::{frac, smith_normal_form, solve_diophantine, IntMatrix, RatVecMod1};
use vagroup::mackey::{Fiber, Irreducibility, DEFAULT_IMAGE_CAP};
use vagroup::rigidity::{compare, fingerprint, load_group, survey_wallpaper, FingerprintOptions};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn within(elapsed: Duration, limit_secs: u64) -> Result<(), String> {
    if elapsed <= Duration::from_secs(limit_secs) {
        Ok(())
    } else {
        Err(format!(
            "took {:.2}s, limit {limit_secs}s",
            elapsed.as_secs_f64()
        ))
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    for name in WALLPAPER_NAMES {
        let expected = lookup(name).unwrap().reference.unwrap().h1_group();
        let got = wallpaper(name).unwrap().abelianization();
        if !got.isomorphic(&expected) {
            mismatches.push(format!("{name}: {got} vs {expected}"));
        }
    }
    within(start.elapsed(), 5)?;
    check(
        mismatches.is_empty(),
        format!("H1 of 17 wallpaper groups, mismatches {mismatches:?}"),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    for name in WALLPAPER_NAMES {
        let order = lookup(name).unwrap().reference.unwrap().point_group_order;
        let g = wallpaper(name).unwrap();
        match g.max_irrep_dimension(Lattice::Model, 7, DEFAULT_SEARCH_BUDGET) {
            Ok(m) if m.dimension == order && m.witness.prime <= 7 => {}
            Ok(m) => mismatches.push(format!(
                "{name}: {} at p = {}",
                m.dimension, m.witness.prime
            )),
            Err(e) => mismatches.push(format!("{name}: {e}")),
        }
    }
    within(start.elapsed(), 10)?;
    check(
        mismatches.is_empty(),
        format!(
            "max irrep dimension equals |D|, certificates at p <= 7, mismatches {mismatches:?}"
        ),
    )
}

fn criterion_3() -> Outcome {
    let free: Vec<&str> = WALLPAPER_NAMES
        .iter()
        .copied()
        .filter(|n| !wallpaper(n).unwrap().has_torsion())
        .collect();
    check(
        free == ["p1", "pg"],
        format!("torsion-free groups {free:?}"),
    )
}

fn criterion_4() -> Outcome {
    let options = FingerprintOptions::default();
    let cm = fingerprint(&load_group("cm").unwrap(), &options).unwrap();
    let pg = fingerprint(&load_group("pg").unwrap(), &options).unwrap();
    let c = compare(&cm, &pg);
    let equal = |f: &str| c.row(f).unwrap().equal;
    let k0 = c.row("K0").unwrap();
    let ok = equal("hirsch length")
        && equal("point group order")
        && equal("H1")
        && !equal("has torsion")
        && k0.left == "Z^2"
        && k0.right == "Z";
    check(
        ok,
        format!(
            "cm vs pg: h/|D|/H1 equal, torsion {} vs {}, K0 {} vs {}",
            cm.has_torsion, pg.has_torsion, k0.left, k0.right
        ),
    )
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let first = survey_wallpaper(101, DEFAULT_SEARCH_BUDGET).unwrap();
    let second = survey_wallpaper(101, DEFAULT_SEARCH_BUDGET).unwrap();
    within(start.elapsed(), 30)?;
    let deterministic =
        serde_json::to_string(&first).unwrap() == serde_json::to_string(&second).unwrap();
    let has_cm_pg = first
        .k_theory_dependent
        .iter()
        .any(|(a, b)| (a == "cm" && b == "pg") || (a == "pg" && b == "cm"));
    check(
        deterministic && first.all_separated && first.pairs.len() == 136 && has_cm_pg,
        format!(
            "{} pairs, all separated {}, K-dependent {:?}",
            first.pairs.len(),
            first.all_separated,
            first.k_theory_dependent
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut bad = Vec::new();
    for name in WALLPAPER_NAMES {
        let g = wallpaper(name).unwrap();
        let fiber = g.fiber_irreps(&DualChar::trivial(&g)).unwrap();
        let sum: usize = fiber
            .irreps()
            .map_or(0, |ir| ir.iter().map(|d| d.fiber_dimension.pow(2)).sum());
        if sum != g.point_group().order() {
            bad.push(format!("{name}: {sum}"));
        }
    }
    check(
        bad.is_empty(),
        format!("sum of squared fiber degrees equals |D|, failures {bad:?}"),
    )
}

fn random_theta(rng: &mut ChaCha8Rng, rank: usize) -> RatVecMod1 {
    let den: i64 = rng.gen_range(1..=12);
    RatVecMod1::new(
        (0..rank)
            .map(|_| BigRational::new(rng.gen_range(0..den).into(), den.into()))
            .collect(),
    )
}

/// `{φ(d)ᵀ θ mod 1}` over the whole point group.
fn free_orbit(g: &VAGroup, theta: &RatVecMod1) -> BTreeSet<Vec<BigRational>> {
    g.point_group()
        .elements()
        .map(|d| {
            let m = g.free_action(d);
            (0..m.cols())
                .map(|j| {
                    let s: BigRational = (0..m.rows())
                        .map(|i| BigRational::from(m[(i, j)].clone()) * &theta.coords()[i])
                        .sum();
                    frac(&s)
                })
                .collect()
        })
        .collect()
}

fn random_n_k(g: &VAGroup, rng: &mut ChaCha8Rng) -> LChar {
    loop {
        let chi = g.extend_character(&random_theta(rng, g.rank())).unwrap();
        if g.in_n_k(&chi) {
            return chi;
        }
    }
}

/// Per coset, the tuple of diagonal angles on the lattice generators.
fn diagonal_profile(g: &VAGroup, chi: &LChar) -> BTreeMap<Vec<BigRational>, usize> {
    let rep = g.induce(chi).unwrap();
    let images: Vec<Vec<BigRational>> = (0..g.rank())
        .map(|i| {
            let mut v = vec![0i64; g.rank()];
            v[i] = 1;
            let t = g.translation(LatticeVec::from_i64(&v, &[]));
            let image = rep.image(g, &t);
            image
                .diagonal_angles()
                .into_iter()
                .map(|a| a.unwrap())
                .collect()
        })
        .collect();
    let mut profile = BTreeMap::new();
    for j in 0..rep.dimension() {
        let key: Vec<BigRational> = images.iter().map(|col| col[j].clone()).collect();
        *profile.entry(key).or_insert(0) += 1;
    }
    profile
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut counterexamples = Vec::new();
    let (mut same, mut total) = (0, 0);
    for name in WALLPAPER_NAMES {
        let g = wallpaper(name).unwrap();
        for _ in 0..100 {
            let a = random_n_k(&g, &mut rng);
            let b = if rng.gen_bool(0.5) {
                let orbit: Vec<Vec<BigRational>> =
                    free_orbit(&g, &a.free_part()).into_iter().collect();
                let pick = RatVecMod1::new(orbit[rng.gen_range(0..orbit.len())].clone());
                g.extend_character(&pick).unwrap()
            } else {
                random_n_k(&g, &mut rng)
            };
            let equivalent = g.equivalent(&a, &b);
            let same_orbit = free_orbit(&g, &a.free_part()).contains(b.free_part().coords());
            let diagonals_match = diagonal_profile(&g, &a) == diagonal_profile(&g, &b);
            total += 1;
            same += usize::from(same_orbit);
            if equivalent != same_orbit || same_orbit != diagonals_match {
                counterexamples.push(format!("{name}: {a} vs {b}"));
            }
        }
    }
    check(
        counterexamples.is_empty(),
        format!(
            "{total} pairs ({same} in one orbit), counterexamples {}",
            counterexamples.len()
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures = Vec::new();
    let mut checked = 0;
    for name in WALLPAPER_NAMES {
        let g = wallpaper(name).unwrap();
        let witness = g
            .max_irrep_dimension(Lattice::Model, 101, DEFAULT_SEARCH_BUDGET)
            .unwrap();
        let mut reps = vec![witness.representation];
        for _ in 0..5 {
            reps.push(g.induce(&random_n_k(&g, &mut rng)).unwrap());
        }
        for rep in reps {
            checked += 1;
            if !matches!(
                rep.check_irreducible(DEFAULT_IMAGE_CAP),
                Irreducibility::Irreducible { .. }
            ) {
                failures.push(name);
            }
        }
    }
    let g = wallpaper("p2").unwrap();
    let control = g
        .induce_from_lattice(&DualChar::trivial(&g))
        .check_irreducible(DEFAULT_IMAGE_CAP);
    let control_ok = matches!(
        &control,
        Irreducibility::Reducible { average, .. } if *average == BigRational::from(BigInt::from(2))
    );
    check(
        failures.is_empty() && control_ok,
        format!("{checked} induced representations irreducible, failures {failures:?}, reducible control {control:?}"),
    )
}

fn criterion_9() -> Outcome {
    let g = VAGroup::from_definition(&example_not_crystal_like()).unwrap();
    let bound = match g.is_crystal_like(Lattice::Model).unwrap() {
        CrystalLike::No(cert) => Some(cert.orbit_size_bound),
        _ => None,
    };
    let g = VAGroup::from_definition(&example_phi_not_surjective(2).unwrap()).unwrap();
    let outside_image = match g.fiber_irreps(&DualChar::trivial(&g)).unwrap() {
        Fiber::Split { irreps, .. } => irreps
            .iter()
            .any(|d| d.dimension == 2 && !g.phi_image_membership(d)),
        Fiber::Unsupported { .. } => false,
    };
    let g = VAGroup::from_definition(&example_nonabelian_centralizer(3, 1).unwrap()).unwrap();
    let psi = DualChar::new(RatVecMod1::zero(1), vec![0.into(), 1.into(), 2.into()]);
    let principal = g.orbit_stabilizer(&psi).size();
    check(
        bound == Some(3) && outside_image && principal == 6,
        format!("no-certificate bound {bound:?}, dim-2 descriptor outside image {outside_image}, orbit of (0,1,2) {principal}"),
    )
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let (a, b) = example_swap_pair(1);
    let g1 = VAGroup::from_definition(&a).unwrap();
    let g2 = VAGroup::from_definition(&b).unwrap();
    let mut disagree = Vec::new();
    for n in 1..=8 {
        let c1 = g1.dimension_census(n, DEFAULT_CENSUS_BUDGET).unwrap();
        let c2 = g2.dimension_census(n, DEFAULT_CENSUS_BUDGET).unwrap();
        if c1 != c2 {
            disagree.push(n);
        }
    }
    let o1 = g1.element_order_census(12);
    let o2 = g2.element_order_census(12);
    within(start.elapsed(), 60)?;
    let detail = format!(
        "dimension censuses disagree at N = {disagree:?}; element orders {:?} vs {:?}",
        o1.orders(),
        o2.orders()
    );
    check(
        disagree.is_empty() && o1.has_order(4) != o2.has_order(4),
        detail,
    )
}

fn criterion_11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut snf_failures = 0;
    for _ in 0..1000 {
        let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let rows: Vec<Vec<i64>> = (0..r)
            .map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect())
            .collect();
        let m = IntMatrix::from_rows(&rows).unwrap();
        let snf = smith_normal_form(&m);
        let product = snf.u.checked_mul(&m).unwrap().checked_mul(&snf.v).unwrap();
        let diagonal = (0..r).all(|i| (0..c).all(|j| i == j || snf.s[(i, j)].is_zero()));
        let d = snf.diagonal();
        let divides = d.windows(2).all(|w| {
            !w[0].is_negative()
                && if w[0].is_zero() {
                    w[1].is_zero()
                } else {
                    (&w[1] % &w[0]).is_zero()
                }
        }) && d.iter().all(|x| !x.is_negative());
        let unimodular = snf.u.determinant().unwrap().abs().is_one()
            && snf.v.determinant().unwrap().abs().is_one();
        if product != snf.s || !diagonal || !divides || !unimodular {
            snf_failures += 1;
        }
    }
    let mut solver_failures = 0;
    for _ in 0..200 {
        let rows: Vec<Vec<i64>> = (0..2)
            .map(|_| (0..3).map(|_| rng.gen_range(-4..=4)).collect())
            .collect();
        let b: Vec<i64> = (0..2).map(|_| rng.gen_range(-6..=6)).collect();
        let a = IntMatrix::from_rows(&rows).unwrap();
        let rhs: Vec<BigInt> = b.iter().map(|&x| x.into()).collect();
        let satisfies = |x: &[i64; 3]| {
            rows.iter()
                .zip(&b)
                .all(|(row, bi)| row.iter().zip(x).map(|(p, q)| p * q).sum::<i64>() == *bi)
        };
        let brute = (-8i64..=8)
            .flat_map(|x| (-8i64..=8).flat_map(move |y| (-8i64..=8).map(move |z| [x, y, z])))
            .find(satisfies);
        let ok = match solve_diophantine(&a, &rhs).unwrap() {
            Some(sol) => {
                a.mul_vec(&sol.particular).unwrap() == rhs
                    && sol
                        .kernel
                        .iter()
                        .all(|k| a.mul_vec(k).unwrap().iter().all(Zero::is_zero))
            }
            None => brute.is_none(),
        };
        solver_failures += usize::from(!ok);
    }
    check(
        snf_failures == 0 && solver_failures == 0,
        format!("SNF failures {snf_failures}/1000, Diophantine failures {solver_failures}/200"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("H1 of the wallpaper groups", criterion_1),
        (
            "point group order from maximal irreducible dimension",
            criterion_2,
        ),
        ("torsion flags", criterion_3),
        ("cm vs pg near-collision", criterion_4),
        ("wallpaper separation matrix", criterion_5),
        ("dimension accounting at the trivial character", criterion_6),
        ("induction equivalence", criterion_7),
        ("irreducibility of induced representations", criterion_8),
        ("non-crystallographic examples", criterion_9),
        ("swap pair censuses", criterion_10),
        ("kernel properties", criterion_11),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|e| Err(format!("panicked: {:?}", e.downcast_ref::<String>())));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2} {title} ({secs:.2}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {:>2} {title} ({secs:.2}s): {detail}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
