//! The full chain of checks, one verdict per claim.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::delta_complex::DeltaComplex;
use crate::fundamental_group::presentation;
use crate::groups::{
    equal_in_trefoil_group, is_trivial_certified, simplify, torus_relator_shape, Presentation, TrivialityVerdict, Word,
};
use crate::homology::{format_homology, homology, HomologyGroup};
use crate::knot_geometry::{knot_report, CurveVariant, KnotCurveConfig};
use crate::spaces;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimVerdict {
    pub claim: String,
    pub status: Status,
    pub evidence: String,
}

impl ClaimVerdict {
    fn new(claim: &str, ok: bool, evidence: impl Into<String>) -> Self {
        ClaimVerdict { claim: claim.into(), status: Status::from_bool(ok), evidence: evidence.into() }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for ClaimVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}: {}", self.status, self.claim, self.evidence)
    }
}

/// The objects the report inspects. Defaults to the library builders; tests
/// swap in deliberately broken complexes.
#[derive(Debug, Clone)]
pub struct ReportInputs {
    pub sub2_circle: DeltaComplex,
    pub sub3_interval: DeltaComplex,
    pub sub3_circle: DeltaComplex,
    pub trefoil_complement: Presentation,
    pub knot_samples: usize,
}

impl Default for ReportInputs {
    fn default() -> Self {
        ReportInputs {
            sub2_circle: spaces::build_sub2_circle(),
            sub3_interval: spaces::build_sub3_interval(),
            sub3_circle: spaces::build_sub3_circle(),
            trefoil_complement: spaces::build_trefoil_complement(),
            knot_samples: 1000,
        }
    }
}

fn free_groups(ranks: &[usize]) -> Vec<HomologyGroup> {
    ranks.iter().map(|&b| HomologyGroup::free(b)).collect()
}

fn homology_claim(claim: &str, c: &DeltaComplex, expected: &[usize], euler: i64) -> ClaimVerdict {
    match homology(c) {
        Ok(h) => {
            let chi = c.euler_characteristic();
            let ok = h == free_groups(expected) && chi == euler;
            ClaimVerdict::new(claim, ok, format!("homology {}, euler {chi}", format_homology(&h)))
        }
        Err(e) => ClaimVerdict::new(claim, false, e.to_string()),
    }
}

fn mobius_claims(c: &DeltaComplex) -> Vec<ClaimVerdict> {
    let mut out = vec![homology_claim("Sub2(S1) has the homology of a Möbius band", c, &[1, 1, 0], 0)];

    let boundary = c.boundary_subcomplex();
    let circle = match &boundary {
        Ok(b) => {
            let h = homology(b);
            let ok = b.connected_components() == 1 && h.as_ref().map(|h| h == &free_groups(&[1, 1])).unwrap_or(false);
            let evidence = format!(
                "boundary has counts {:?}, {} component(s), homology {}",
                b.counts(),
                b.connected_components(),
                h.map(|h| format_homology(&h)).unwrap_or_else(|e| e.to_string())
            );
            ClaimVerdict::new("the boundary of Sub2(S1) is a single circle", ok, evidence)
        }
        Err(e) => ClaimVerdict::new("the boundary of Sub2(S1) is a single circle", false, e.to_string()),
    };
    out.push(circle);

    const WRAP: &str = "the boundary circle wraps twice around the core";
    let witness = (|| {
        let b = boundary.as_ref().ok()?;
        // The boundary edge's label names the generator it contributes.
        let edge = b.cells(1).next()?;
        let name = b.display_name(edge);
        let p = presentation(c).ok()?;
        let trace = simplify(&p);
        let result = &trace.presentation;
        let value = trace.substitution_for(&name)?;
        let syl = value.syllables();
        let ok =
            result.generators().len() == 1 && result.relators().is_empty() && syl.len() == 1 && syl[0].1.abs() == 2;
        Some(ClaimVerdict::new(WRAP, ok, format!("{p}: {name} ↦ {} in {result}", value.format(result.generators()))))
    })();
    out.push(witness.unwrap_or_else(|| ClaimVerdict::new(WRAP, false, "no substitution for the boundary generator")));
    out
}

fn sub3_circle_claims(c: &DeltaComplex) -> Vec<ClaimVerdict> {
    let violations = c.validate();
    let mut out = vec![ClaimVerdict::new(
        "the tetrahedral model of Sub3(S1) is a valid Δ-complex with cell counts (1, 2, 2, 1)",
        violations.is_empty() && c.counts() == [1, 2, 2, 1],
        match violations.first() {
            None => format!("counts {:?}", c.counts()),
            Some(v) => format!("{} violation(s), first: {v}", violations.len()),
        },
    )];

    const MATCH: &str = "π1(Sub3(S1)) = ⟨α, β | α, α^2 β^-1⟩";
    const TRIVIAL: &str = "π1(Sub3(S1)) is trivial";
    const NOT_S2S1: &str = "Sub3(S1) is not S2×S1: rank of π1^ab is 0, not 1";
    match presentation(c) {
        Ok(p) => {
            let expected = Presentation::parse(&["α", "β"], &["α", "α^2 β^-1"]).expect("fixed presentation");
            out.push(ClaimVerdict::new(MATCH, p.matches_up_to_renaming(&expected), p.to_string()));
            let verdict = is_trivial_certified(&p);
            let evidence = match &verdict {
                TrivialityVerdict::TrivialWithTrace(t) => format!("{}, {} step(s)", verdict.label(), t.steps.len()),
                TrivialityVerdict::NotTrivial { abelianization } => {
                    format!("{}: abelianization {abelianization}", verdict.label())
                }
                TrivialityVerdict::Unknown(t) => format!("{}: stuck at {}", verdict.label(), t.presentation),
            };
            out.push(ClaimVerdict::new(TRIVIAL, verdict.is_trivial(), evidence));
            let ab = p.abelianization();
            out.push(ClaimVerdict::new(NOT_S2S1, ab.betti == 0, format!("abelianization {ab}")));
        }
        Err(e) => {
            for claim in [MATCH, TRIVIAL, NOT_S2S1] {
                out.push(ClaimVerdict::new(claim, false, e.to_string()));
            }
        }
    }
    out.push(homology_claim("Sub3(S1) has the homology of S3", c, &[1, 0, 0, 1], 0));
    out
}

fn knot_group_claim(p: &Presentation) -> ClaimVerdict {
    const CLAIM: &str = "the complement of Sub1(S1) has group ⟨b, d | b^2 = d^3⟩";
    let trace = simplify(p);
    let result = &trace.presentation;
    let Some(shape) = torus_relator_shape(result) else {
        return ClaimVerdict::new(CLAIM, false, format!("simplified to {result}, not a torus relator"));
    };
    // Every original relator must die in the torus group under the trace's
    // substitutions, which cross-checks the simplification itself.
    let group = shape.group();
    let consistent = p.relators().iter().all(|r| {
        let image = shape.to_standard(&trace.map_word(r));
        group.normal_form(&image).map(|nf| nf.is_identity()).unwrap_or(false)
    });
    let ok = (shape.p, shape.q) == (2, 3) && consistent;
    ClaimVerdict::new(
        CLAIM,
        ok,
        format!("simplified to {result}, torus type ({}, {}), relators consistent: {consistent}", shape.p, shape.q),
    )
}

fn braid_claim() -> ClaimVerdict {
    let names = ["x".to_string(), "y".to_string()];
    let s = Word::parse("y^-1 x", &names).expect("fixed word");
    let t = Word::parse("x^-1 y^2", &names).expect("fixed word");
    let sts = &(&s * &t) * &s;
    let tst = &(&t * &s) * &t;
    let ok = equal_in_trefoil_group(&sts, &tst).unwrap_or(false) && !equal_in_trefoil_group(&s, &t).unwrap_or(true);
    ClaimVerdict::new(
        "the knot group is the braid group on 3 strands",
        ok,
        "s = y^-1 x, t = x^-1 y^2 satisfy sts = tst in ⟨x, y | x^2 = y^3⟩, s ≠ t",
    )
}

fn knot_geometry_claims(samples: usize) -> Vec<ClaimVerdict> {
    [CurveVariant::Clifford, CurveVariant::EquationLocus]
        .into_iter()
        .map(|variant| {
            let claim = format!("Sub1(S1) is a (2,3) torus knot on S3 ({variant} parametrisation)");
            match KnotCurveConfig::new(variant, samples) {
                Ok(config) => {
                    let r = knot_report(&config);
                    let residual = r.max_residual.map(|x| format!(", max |u^3 - w^2| {x:.2e}")).unwrap_or_default();
                    ClaimVerdict::new(
                        &claim,
                        r.ok,
                        format!(
                            "winding ({}, {}), sphere defect {:.2e}{residual}, {} samples",
                            r.winding[0], r.winding[1], r.max_sphere_defect, r.samples
                        ),
                    )
                }
                Err(e) => ClaimVerdict::new(&claim, false, e.to_string()),
            }
        })
        .collect()
}

pub fn run_report(inputs: &ReportInputs) -> Vec<ClaimVerdict> {
    let mut out = mobius_claims(&inputs.sub2_circle);
    out.push(homology_claim("Sub3(I) is a closed ball", &inputs.sub3_interval, &[1, 0, 0, 0], 1));
    out.extend(sub3_circle_claims(&inputs.sub3_circle));
    out.push(knot_group_claim(&inputs.trefoil_complement));
    out.push(braid_claim());
    out.extend(knot_geometry_claims(inputs.knot_samples));
    out
}

pub fn all_pass(verdicts: &[ClaimVerdict]) -> bool {
    verdicts.iter().all(ClaimVerdict::passed)
}
