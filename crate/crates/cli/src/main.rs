use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use subsets_core::delta_complex::DeltaComplex;
use subsets_core::format::{self, Document, FORMAT_VERSION};
use subsets_core::fundamental_group::presentation;
use subsets_core::groups::{is_trivial_certified, match_torus_relator, Presentation};
use subsets_core::homology::{format_homology, homology};
use subsets_core::knot_geometry::{knot_report, CurveVariant, KnotCurveConfig, MIN_SAMPLES};
use subsets_core::report::{all_pass, run_report, ReportInputs};
use subsets_core::spaces::{BuiltSpace, SpaceName};

#[derive(Parser)]
#[command(name = "subsets", version, about = "Builders and invariants for spaces of finite subsets of the circle")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named space and write it as JSON.
    Build {
        #[arg(value_parser = parse_space)]
        space: SpaceName,
        /// Output file; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Euler characteristic, components, homology and boundary of a complex.
    Invariants { input: PathBuf },
    /// Fundamental group presentation of a complex, or a presentation file.
    Pi1 {
        input: PathBuf,
        /// Run Tietze simplification and report the triviality verdict.
        #[arg(long)]
        simplify: bool,
    },
    /// Sample the (2,3) torus knot on the unit 3-sphere.
    Knot {
        #[arg(long, default_value = "clifford", value_parser = parse_variant)]
        variant: CurveVariant,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(MIN_SAMPLES as u64..))]
        samples: u64,
    },
    /// Run every check and print one verdict per claim.
    Report {
        /// Replace the built Sub3(S1) complex with one read from a file.
        #[arg(long)]
        sub3_circle: Option<PathBuf>,
    },
}

fn parse_space(s: &str) -> Result<SpaceName, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = SpaceName::ALL.iter().map(|n| n.as_str()).collect();
        format!("expected one of: {}", names.join(", "))
    })
}

fn parse_variant(s: &str) -> Result<CurveVariant, String> {
    s.parse().map_err(|e: subsets_core::knot_geometry::KnotError| e.to_string())
}

/// Printed output plus whether every check held.
struct Outcome {
    text: String,
    json: Value,
    ok: bool,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome { text, json, ok: true }
    }
}

fn read_document(path: &Path) -> Result<Document> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    format::parse_document(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_complex(path: &Path) -> Result<DeltaComplex> {
    match read_document(path)? {
        Document::Complex(c) => {
            if let Some(v) = c.validate().into_iter().next() {
                bail!("{} is not a valid Δ-complex: {v}", path.display());
            }
            Ok(c)
        }
        Document::Presentation(_) => bail!("{} holds a presentation, not a complex", path.display()),
    }
}

fn cmd_build(space: SpaceName, out: Option<&Path>) -> Result<Outcome> {
    let (doc, summary) = match space.build() {
        BuiltSpace::Complex(c) => {
            if let Some(v) = c.validate().into_iter().next() {
                bail!("built {space} is invalid: {v}");
            }
            (format::complex_to_value(&c), format!("{space}: cell counts {:?}", c.counts()))
        }
        BuiltSpace::Presentation(p) => (format::presentation_to_value(&p), format!("{space}: {p}")),
    };
    let pretty = serde_json::to_string_pretty(&doc)?;
    match out {
        Some(path) => {
            fs::write(path, pretty + "\n").with_context(|| format!("writing {}", path.display()))?;
            let json =
                json!({ "format": FORMAT_VERSION, "space": space.as_str(), "written": path.display().to_string() });
            Ok(Outcome::ok(format!("{summary}\nwrote {}", path.display()), json))
        }
        None => Ok(Outcome::ok(pretty, doc)),
    }
}

fn cmd_invariants(input: &Path) -> Result<Outcome> {
    let c = read_complex(input)?;
    let h = homology(&c)?;
    let mut json = json!({
        "format": FORMAT_VERSION,
        "counts": c.counts(),
        "euler": c.euler_characteristic(),
        "components": c.connected_components(),
        "homology": format::homology_value(&h),
    });
    let mut text = format!(
        "cell counts: {:?}\neuler characteristic: {}\ncomponents: {}\nhomology: {}",
        c.counts(),
        c.euler_characteristic(),
        c.connected_components(),
        format_homology(&h)
    );
    if c.top_dim() == Some(2) {
        let b = c.boundary_subcomplex()?;
        let bh = homology(&b)?;
        // A graph in which every vertex has degree two is a disjoint union of circles.
        let mut degree = vec![0usize; b.num_cells(0)];
        for e in b.cells(1) {
            for v in b.faces_of(e) {
                degree[v.index] += 1;
            }
        }
        let circles = if degree.iter().all(|&d| d == 2) { b.connected_components() } else { 0 };
        json["boundary"] = json!({
            "counts": b.counts(),
            "components": b.connected_components(),
            "circles": circles,
            "homology": format::homology_value(&bh),
        });
        text.push_str(&format!(
            "\nboundary: cell counts {:?}, {} component(s), {circles} circle(s), homology {}",
            b.counts(),
            b.connected_components(),
            format_homology(&bh)
        ));
    }
    Ok(Outcome::ok(text, json))
}

fn cmd_pi1(input: &Path, simplify: bool) -> Result<Outcome> {
    let p: Presentation = match read_document(input)? {
        Document::Complex(c) => presentation(&c)?,
        Document::Presentation(p) => p,
    };
    let doc = format::presentation_to_value(&p);
    if !simplify {
        return Ok(Outcome::ok(p.to_string(), doc));
    }
    let verdict = is_trivial_certified(&p);
    let trace = subsets_core::groups::simplify(&p);
    let torus = match_torus_relator(&trace.presentation);
    let mut text = format!("presentation: {p}\nsimplified: {}", trace.presentation);
    for (g, w) in &trace.substitutions {
        text.push_str(&format!("\n  {g} ↦ {}", trace.presentation.format_word(w)));
    }
    text.push_str(&format!("\nverdict: {}", verdict.label()));
    if let Some((a, b)) = torus {
        text.push_str(&format!("\ntorus relator: ({a}, {b})"));
    }
    let json = json!({
        "format": FORMAT_VERSION,
        "presentation": doc,
        "trace": format::trace_value(&trace),
        "verdict": format::verdict_value(&verdict),
        "abelianization": format::group_value(&p.abelianization()),
        "exponent_matrix": format::matrix_value(&p.exponent_matrix()),
        "torus_relator": torus.map(|(a, b)| [a, b]),
    });
    Ok(Outcome::ok(text, json))
}

fn cmd_knot(variant: CurveVariant, samples: u64) -> Result<Outcome> {
    let config = KnotCurveConfig::new(variant, samples as usize)?;
    let r = knot_report(&config);
    let mut json = serde_json::to_value(&r)?;
    json["format"] = json!(FORMAT_VERSION);
    let residual = r.max_residual.map(|x| format!("\nmax |u^3 - w^2|: {x:e}")).unwrap_or_default();
    let text = format!(
        "variant: {}\nsamples: {}\nwinding: ({}, {})\nmax sphere defect: {:e}{residual}\nmin pairwise distance: {:e}\n{}",
        r.variant,
        r.samples,
        r.winding[0],
        r.winding[1],
        r.max_sphere_defect,
        r.min_pairwise_distance,
        if r.ok { "OK" } else { "FAILED" }
    );
    Ok(Outcome { text, json, ok: r.ok })
}

fn cmd_report(sub3_circle: Option<&Path>) -> Result<Outcome> {
    let mut inputs = ReportInputs::default();
    if let Some(path) = sub3_circle {
        // An invalid complex is reported as a failed claim rather than an error.
        inputs.sub3_circle = match read_document(path)? {
            Document::Complex(c) => c,
            Document::Presentation(_) => bail!("{} holds a presentation, not a complex", path.display()),
        };
    }
    let verdicts = run_report(&inputs);
    let text = verdicts.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("\n");
    Ok(Outcome { text, json: serde_json::to_value(&verdicts)?, ok: all_pass(&verdicts) })
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Build { space, out } => cmd_build(*space, out.as_deref()),
        Command::Invariants { input } => cmd_invariants(input),
        Command::Pi1 { input, simplify } => cmd_pi1(input, *simplify),
        Command::Knot { variant, samples } => cmd_knot(*variant, *samples),
        Command::Report { sub3_circle } => cmd_report(sub3_circle.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let body = if cli.json {
                serde_json::to_string_pretty(&outcome.json).expect("value serializes")
            } else {
                outcome.text
            };
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = writeln!(io::stdout(), "{body}");
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if cli.json {
                let _ = writeln!(io::stdout(), "{}", json!({ "error": format!("{e:#}") }));
            }
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
