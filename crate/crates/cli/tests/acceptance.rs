//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Runs without the libtest harness so the lines are always
//! printed.

use std::process::{Command, ExitCode};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subsets_core::delta_complex::DeltaComplex;
use subsets_core::format::complex_to_json;
use subsets_core::fundamental_group::presentation;
use subsets_core::groups::{
    equal_in_trefoil_group, is_trivial_certified, match_torus_relator, simplify, trefoil_normal_form, Letter,
    Presentation, TrivialityVerdict, Word,
};
use subsets_core::homology::{boundary_matrix, format_homology, homology, HomologyGroup};
use subsets_core::knot_geometry::{
    max_equation_residual, max_sphere_defect, winding_numbers, CurveVariant, KnotCurveConfig,
};
use subsets_core::smith::{smith_normal_form, verify_snf, IntegerMatrix};
use subsets_core::spaces::{self, BuiltSpace, SpaceName};

/// `|u|^2 + |w|^2 = 1` must hold to this absolute error at every sample.
const SPHERE_TOLERANCE: f64 = 1e-12;
/// `max |u^3 - w^2|` over the equation-locus samples.
const EQUATION_RESIDUAL_TOLERANCE: f64 = 1e-9;
const KNOT_SAMPLES: usize = 1000;
const RANDOM_CONJUGATES: usize = 100;
const RANDOM_SNF_MATRICES: usize = 1000;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn free(ranks: &[usize]) -> Vec<HomologyGroup> {
    ranks.iter().map(|&b| HomologyGroup::free(b)).collect()
}

fn pi1_of_sub3_circle() -> Check {
    let p = presentation(&spaces::build_sub3_circle()).map_err(|e| e.to_string())?;
    let expected = Presentation::parse(&["α", "β"], &["α^2 β^-1", "α"]).unwrap();
    ensure(p.matches_up_to_renaming(&expected), format!("got {p}"))?;
    match is_trivial_certified(&p) {
        TrivialityVerdict::TrivialWithTrace(t) => Ok(format!("{p}, trivial-with-trace in {} steps", t.steps.len())),
        other => Err(format!("verdict {}", other.label())),
    }
}

fn s2xs1_rejection() -> Check {
    let p = presentation(&spaces::build_sub3_circle()).map_err(|e| e.to_string())?;
    let ab = p.abelianization();
    ensure(ab.betti == 0, format!("abelianization {ab} has rank {}", ab.betti))?;
    Ok(format!("abelianization {ab}: rank 0, S2×S1 needs rank 1"))
}

fn s3_homology() -> Check {
    let c = spaces::build_sub3_circle();
    let h = homology(&c).map_err(|e| e.to_string())?;
    let chi = c.euler_characteristic();
    ensure(h == free(&[1, 0, 0, 1]) && chi == 0, format!("homology {}, euler {chi}", format_homology(&h)))?;
    Ok(format!("homology {}, euler {chi}", format_homology(&h)))
}

fn mobius_band() -> Check {
    let c = spaces::build_sub2_circle();
    let h = homology(&c).map_err(|e| e.to_string())?;
    ensure(h == free(&[1, 1, 0]), format!("homology {}", format_homology(&h)))?;
    let b = c.boundary_subcomplex().map_err(|e| e.to_string())?;
    let bh = homology(&b).map_err(|e| e.to_string())?;
    ensure(
        b.connected_components() == 1 && bh == free(&[1, 1]) && b.num_cells(0) == b.num_cells(1),
        format!("boundary counts {:?}, homology {}", b.counts(), format_homology(&bh)),
    )?;
    let boundary_gen = b.display_name(b.cells(1).next().ok_or("boundary has no edges")?);
    let p = presentation(&c).map_err(|e| e.to_string())?;
    let trace = simplify(&p);
    let core = &trace.presentation;
    let image = trace.substitution_for(&boundary_gen).ok_or(format!("{boundary_gen} was not eliminated"))?;
    let syl = image.syllables();
    ensure(
        core.generators() == ["γ".to_string()] && syl.len() == 1 && syl[0].1.abs() == 2,
        format!("{boundary_gen} ↦ {} in {core}", image.format(core.generators())),
    )?;
    Ok(format!(
        "homology {}, one boundary circle, {boundary_gen} ↦ {}",
        format_homology(&h),
        image.format(core.generators())
    ))
}

fn ball() -> Check {
    let c = spaces::build_sub3_interval();
    let h = homology(&c).map_err(|e| e.to_string())?;
    let chi = c.euler_characteristic();
    ensure(h == free(&[1, 0, 0, 0]) && chi == 1, format!("homology {}, euler {chi}", format_homology(&h)))?;
    Ok(format!("homology {}, euler {chi}", format_homology(&h)))
}

fn knot_group() -> Check {
    let p = spaces::build_trefoil_complement();
    let mut orders = Vec::new();
    permute(&mut vec![0, 1, 2, 3], 0, &mut orders);
    ensure(orders.len() == 24, "expected 24 orderings")?;
    let reference = simplify(&p).presentation;
    for order in &orders {
        let q = p.with_relator_order(order);
        let result = simplify(&q).presentation;
        ensure(
            result.generators().len() == 2
                && result.relators().len() == 1
                && match_torus_relator(&result) == Some((2, 3)),
            format!("order {order:?} gave {result}"),
        )?;
        ensure(result == reference, format!("order {order:?} gave {result}, not {reference}"))?;
    }
    Ok(format!("all 24 relator orders give {reference}, a (2,3) torus relator"))
}

fn permute(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, out);
        v.swap(k, i);
    }
}

fn braid_relation() -> Check {
    let names = ["x".to_string(), "y".to_string()];
    let w = |s: &str| Word::parse(s, &names).unwrap();
    let (s, t) = (w("y^-1 x"), w("x^-1 y^2"));
    let sts = &(&s * &t) * &s;
    let tst = &(&t * &s) * &t;
    ensure(equal_in_trefoil_group(&sts, &tst).unwrap(), "sts ≠ tst")?;
    let rel = w("x^2 y^-3");
    ensure(trefoil_normal_form(&rel).unwrap().is_identity(), "relator is not the identity")?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..RANDOM_CONJUGATES {
        let len = rng.gen_range(1..=12);
        let c = Word::new((0..len).map(|_| Letter::new(rng.gen_range(0..2), if rng.gen() { 1 } else { -1 })).collect());
        let conj = &(&c * &rel) * &c.inverse();
        ensure(
            trefoil_normal_form(&conj).unwrap().is_identity(),
            format!("conjugate by {} survives", c.format(&names)),
        )?;
    }
    Ok(format!("sts = tst; relator and {RANDOM_CONJUGATES} random conjugates normalize to 1"))
}

fn knot_geometry() -> Check {
    let mut parts = Vec::new();
    for variant in [CurveVariant::Clifford, CurveVariant::EquationLocus] {
        let config = KnotCurveConfig::new(variant, KNOT_SAMPLES).map_err(|e| e.to_string())?;
        let winding = winding_numbers(&config);
        ensure(winding == (2, 3), format!("{variant}: winding {winding:?}"))?;
        let sphere = max_sphere_defect(&config.sample_points());
        ensure(sphere <= SPHERE_TOLERANCE, format!("{variant}: sphere defect {sphere:e}"))?;
        parts.push(format!("{variant} winding (2, 3), sphere defect {sphere:.1e}"));
    }
    let config = KnotCurveConfig::new(CurveVariant::EquationLocus, KNOT_SAMPLES).unwrap();
    let residual = max_equation_residual(&config).map_err(|e| e.to_string())?;
    ensure(residual <= EQUATION_RESIDUAL_TOLERANCE, format!("residual {residual:e}"))?;
    parts.push(format!("max |u^3 - w^2| {residual:.1e}"));
    Ok(parts.join("; "))
}

fn built_complexes() -> Vec<(&'static str, DeltaComplex)> {
    SpaceName::ALL
        .iter()
        .filter_map(|n| match n.build() {
            BuiltSpace::Complex(c) => Some((n.as_str(), c)),
            BuiltSpace::Presentation(_) => None,
        })
        .collect()
}

fn property_suites() -> Check {
    let complexes = built_complexes();
    for (name, c) in &complexes {
        let top = c.top_dim().unwrap_or(0);
        for n in 2..=top {
            let prod = boundary_matrix(c, n - 1).unwrap().mul(&boundary_matrix(c, n).unwrap()).unwrap();
            ensure(prod.is_zero(), format!("{name}: ∂{} ∂{n} ≠ 0", n - 1))?;
        }
        let h = homology(c).map_err(|e| e.to_string())?;
        let alt: i64 =
            h.iter().enumerate().map(|(n, g)| if n % 2 == 0 { g.betti as i64 } else { -(g.betti as i64) }).sum();
        ensure(alt == c.euler_characteristic(), format!("{name}: Euler–Poincaré fails"))?;
        let h1 = h.get(1).cloned().unwrap_or_else(HomologyGroup::trivial);
        let ab = presentation(c).map_err(|e| e.to_string())?.abelianization();
        ensure(ab == h1, format!("{name}: abelianization {ab} ≠ H1 {h1}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..RANDOM_SNF_MATRICES {
        let (rows, cols) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let entries: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-5..=5)).collect()).collect();
        let a = IntegerMatrix::from_rows(&entries);
        ensure(verify_snf(&a, &smith_normal_form(&a)).unwrap(), format!("verify_snf rejects SNF of {entries:?}"))?;
    }
    Ok(format!(
        "∂∂ = 0, Euler–Poincaré and π1^ab = H1 on {} complexes; {RANDOM_SNF_MATRICES} random SNFs verified",
        complexes.len()
    ))
}

fn mutation_sensitivity() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("misglued.json");
    std::fs::write(&path, complex_to_json(&spaces::build_sub3_circle_misglued())).map_err(|e| e.to_string())?;
    let out = Command::new(env!("CARGO_BIN_EXE_subsets"))
        .args(["report", "--sub3-circle", path.to_str().unwrap()])
        .output()
        .map_err(|e| e.to_string())?;
    let stdout = String::from_utf8_lossy(&out.stdout);
    let fails: Vec<&str> = stdout.lines().filter(|l| l.starts_with("[FAIL]")).collect();
    ensure(!fails.is_empty(), "report emitted no FAIL for the misglued complex")?;
    ensure(out.status.code() == Some(1), format!("exit code {:?}", out.status.code()))?;
    Ok(format!("{} FAIL verdict(s), exit 1; first: {}", fails.len(), fails[0]))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("π1 of Sub3(S1) is ⟨α, β | α^2 β^-1, α⟩ and certified trivial", pi1_of_sub3_circle),
        ("S2×S1 rejected by abelianization rank", s2xs1_rejection),
        ("Sub3(S1) has the homology of S3", s3_homology),
        ("Sub2(S1) is a Möbius band", mobius_band),
        ("Sub3(I) is a ball", ball),
        ("knot group reaches ⟨b, d | b^2 = d^3⟩", knot_group),
        ("braid relation in the trefoil group", braid_relation),
        ("knot geometry", knot_geometry),
        ("property suites", property_suites),
        ("mutation sensitivity", mutation_sensitivity),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(evidence) => println!("criterion {:>2} PASS  {name}: {evidence}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
