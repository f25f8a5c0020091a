//! Versioned JSON documents for complexes, presentations and reports.
//!
//! Every document carries `"format": 1` and a `"kind"` tag, so a reader can
//! accept either a complex or a presentation from the same file.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::delta_complex::{CellId, ComplexError, DeltaComplex};
use crate::groups::{GroupError, Letter, Presentation, SimplificationTrace, TrivialityVerdict, Word};
use crate::homology::HomologyGroup;
use crate::smith::IntegerMatrix;

pub const FORMAT_VERSION: u32 = 1;

const COMPLEX_KIND: &str = "delta-complex";
const PRESENTATION_KIND: &str = "presentation";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format version {0}")]
    Version(u32),
    #[error("unknown document kind `{0}`")]
    Kind(String),
    #[error("malformed document: {0}")]
    Shape(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexDoc {
    format: u32,
    kind: String,
    dims: Vec<usize>,
    #[serde(default)]
    faces: BTreeMap<String, Vec<Vec<usize>>>,
    #[serde(default)]
    labels: BTreeMap<String, Vec<Option<String>>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationDoc {
    format: u32,
    kind: String,
    generators: Vec<String>,
    relators: Vec<Vec<(String, i64)>>,
}

#[derive(Deserialize)]
struct Header {
    format: u32,
    kind: String,
}

/// Either kind of document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Complex(DeltaComplex),
    Presentation(Presentation),
}

pub fn complex_to_value(c: &DeltaComplex) -> Value {
    let faces = (1..c.counts().len())
        .map(|dim| {
            let lists: Vec<Vec<usize>> =
                c.cells(dim).map(|cell| c.faces_of(cell).iter().map(|f| f.index).collect()).collect();
            (dim.to_string(), lists)
        })
        .collect();
    let labels = c.labels().iter().enumerate().map(|(dim, l)| (dim.to_string(), l.clone())).collect();
    let doc =
        ComplexDoc { format: FORMAT_VERSION, kind: COMPLEX_KIND.into(), dims: c.counts().to_vec(), faces, labels };
    serde_json::to_value(doc).expect("complex document serializes")
}

pub fn complex_to_json(c: &DeltaComplex) -> String {
    serde_json::to_string_pretty(&complex_to_value(c)).expect("value serializes")
}

fn complex_from_doc(doc: ComplexDoc) -> Result<DeltaComplex, FormatError> {
    let dims = doc.dims.len();
    for key in doc.faces.keys().chain(doc.labels.keys()) {
        match key.parse::<usize>() {
            Ok(d) if d < dims => {}
            _ => return Err(FormatError::Shape(format!("unexpected dimension key `{key}`"))),
        }
    }
    let mut faces = Vec::new();
    for dim in 1..dims {
        let lists = doc.faces.get(&dim.to_string()).cloned().unwrap_or_default();
        faces.push(
            lists.into_iter().map(|slots| slots.into_iter().map(|i| CellId::new(dim - 1, i)).collect()).collect(),
        );
    }
    if doc.faces.contains_key("0") {
        return Err(FormatError::Shape("vertices have no faces".into()));
    }
    let labels = (0..dims)
        .map(|dim| doc.labels.get(&dim.to_string()).cloned().unwrap_or_else(|| vec![None; doc.dims[dim]]))
        .collect();
    Ok(DeltaComplex::new(doc.dims, faces, Some(labels))?)
}

pub fn presentation_to_value(p: &Presentation) -> Value {
    let relators = p.relators().iter().map(|r| word_syllables(r, p.generators())).collect();
    let doc = PresentationDoc {
        format: FORMAT_VERSION,
        kind: PRESENTATION_KIND.into(),
        generators: p.generators().to_vec(),
        relators,
    };
    serde_json::to_value(doc).expect("presentation document serializes")
}

pub fn presentation_to_json(p: &Presentation) -> String {
    serde_json::to_string_pretty(&presentation_to_value(p)).expect("value serializes")
}

/// A word as `[[name, exponent], ...]`, merging adjacent equal generators.
fn word_syllables(w: &Word, names: &[String]) -> Vec<(String, i64)> {
    let mut out: Vec<(String, i64)> = Vec::new();
    for l in w.letters() {
        let name = &names[l.gen];
        match out.last_mut() {
            Some((n, e)) if n == name && (*e > 0) == (l.exp > 0) => *e += l.exp as i64,
            _ => out.push((name.clone(), l.exp as i64)),
        }
    }
    out
}

fn presentation_from_doc(doc: PresentationDoc) -> Result<Presentation, FormatError> {
    let relators = doc
        .relators
        .iter()
        .map(|syllables| {
            let mut letters = Vec::new();
            for (name, exp) in syllables {
                let gen = doc
                    .generators
                    .iter()
                    .position(|g| g == name)
                    .ok_or_else(|| GroupError::UnknownName(name.clone()))?;
                if *exp == 0 {
                    return Err(FormatError::Shape(format!("zero exponent on `{name}`")));
                }
                let sign = if *exp > 0 { 1 } else { -1 };
                letters.extend(std::iter::repeat_n(Letter::new(gen, sign), exp.unsigned_abs() as usize));
            }
            Ok(Word::new(letters))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Presentation::new(doc.generators, relators)?)
}

pub fn parse_document(text: &str) -> Result<Document, FormatError> {
    let value: Value = serde_json::from_str(text)?;
    let header: Header =
        serde_json::from_value(value.clone()).map_err(|e| FormatError::Shape(format!("missing header: {e}")))?;
    if header.format != FORMAT_VERSION {
        return Err(FormatError::Version(header.format));
    }
    match header.kind.as_str() {
        COMPLEX_KIND => Ok(Document::Complex(complex_from_doc(serde_json::from_value(value)?)?)),
        PRESENTATION_KIND => Ok(Document::Presentation(presentation_from_doc(serde_json::from_value(value)?)?)),
        other => Err(FormatError::Kind(other.into())),
    }
}

pub fn complex_from_json(text: &str) -> Result<DeltaComplex, FormatError> {
    match parse_document(text)? {
        Document::Complex(c) => Ok(c),
        Document::Presentation(_) => Err(FormatError::Kind(PRESENTATION_KIND.into())),
    }
}

pub fn presentation_from_json(text: &str) -> Result<Presentation, FormatError> {
    match parse_document(text)? {
        Document::Presentation(p) => Ok(p),
        Document::Complex(_) => Err(FormatError::Kind(COMPLEX_KIND.into())),
    }
}

/// Small integers as JSON numbers, anything larger as a decimal string.
pub fn bigint_value(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

pub fn matrix_value(m: &IntegerMatrix) -> Value {
    Value::Array(
        (0..m.rows()).map(|r| Value::Array((0..m.cols()).map(|c| bigint_value(m.get(r, c))).collect())).collect(),
    )
}

pub fn group_value(g: &HomologyGroup) -> Value {
    json!({
        "betti": g.betti,
        "torsion": g.torsion.iter().map(bigint_value).collect::<Vec<_>>(),
    })
}

/// `{"0": {betti, torsion}, "1": ...}`.
pub fn homology_value(groups: &[HomologyGroup]) -> Value {
    Value::Object(groups.iter().enumerate().map(|(n, g)| (n.to_string(), group_value(g))).collect())
}

pub fn trace_value(trace: &SimplificationTrace) -> Value {
    let names = trace.presentation.generators();
    json!({
        "result": presentation_to_value(&trace.presentation),
        "substitutions": trace
            .substitutions
            .iter()
            .map(|(g, w)| json!({ "generator": g, "value": w.format(names) }))
            .collect::<Vec<_>>(),
        "steps": trace.steps,
    })
}

pub fn verdict_value(v: &TrivialityVerdict) -> Value {
    match v {
        TrivialityVerdict::TrivialWithTrace(_) | TrivialityVerdict::Unknown(_) => json!({ "verdict": v.label() }),
        TrivialityVerdict::NotTrivial { abelianization } => json!({
            "verdict": v.label(),
            "abelianization": group_value(abelianization),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces;

    #[test]
    fn complex_round_trip() {
        for c in [spaces::build_sub2_circle(), spaces::build_sub3_circle(), DeltaComplex::point()] {
            let text = complex_to_json(&c);
            assert_eq!(complex_from_json(&text).unwrap(), c);
        }
    }

    #[test]
    fn complex_layout() {
        let v = complex_to_value(&spaces::build_circle());
        assert_eq!(v["format"], 1);
        assert_eq!(v["kind"], "delta-complex");
        assert_eq!(v["dims"], json!([1, 1]));
        assert_eq!(v["faces"]["1"], json!([[0, 0]]));
        assert_eq!(v["labels"]["1"], json!(["γ"]));
    }

    #[test]
    fn presentation_round_trip() {
        let p = spaces::build_trefoil_complement();
        let v = presentation_to_value(&p);
        assert_eq!(v["relators"][0], json!([["b", 1], ["c", 1], ["d", -1]]));
        assert_eq!(presentation_from_json(&v.to_string()).unwrap(), p);
    }

    #[test]
    fn powers_merge() {
        let p = Presentation::parse(&["x", "y"], &["x^2 y^-3"]).unwrap();
        let v = presentation_to_value(&p);
        assert_eq!(v["relators"], json!([[["x", 2], ["y", -3]]]));
        assert_eq!(presentation_from_json(&v.to_string()).unwrap(), p);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(parse_document("{"), Err(FormatError::Json(_))));
        assert!(matches!(parse_document(r#"{"format": 2, "kind": "presentation"}"#), Err(FormatError::Version(2))));
        assert!(matches!(parse_document(r#"{"format": 1, "kind": "torus"}"#), Err(FormatError::Kind(_))));
        let bad = r#"{"format": 1, "kind": "delta-complex", "dims": [1, 1], "faces": {"1": [[0, 3]]}}"#;
        assert!(matches!(parse_document(bad), Err(FormatError::Complex(_))));
        let bad = r#"{"format": 1, "kind": "presentation", "generators": ["a"], "relators": [[["b", 1]]]}"#;
        assert!(matches!(parse_document(bad), Err(FormatError::Group(_))));
    }

    #[test]
    fn homology_layout() {
        let h = vec![HomologyGroup::free(1), HomologyGroup { betti: 0, torsion: vec![BigInt::from(2)] }];
        assert_eq!(homology_value(&h), json!({"0": {"betti": 1, "torsion": []}, "1": {"betti": 0, "torsion": [2]}}));
    }
}
