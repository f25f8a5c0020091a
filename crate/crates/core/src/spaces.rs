//! Builders for the interval, the circle, and the spaces of at most two or
//! three element subsets of each.
//!
//! Points of `Sub_n(I)` are ordered tuples `x_1 <= ... <= x_n`, so `Sub_2(I)`
//! is the triangle `0 <= x <= y <= 1` and `Sub_3(I)` a quotient of the
//! tetrahedron `0 <= x <= y <= z <= 1` with vertices
//! `A = (0,0,0)`, `B = (0,0,1)`, `C = (0,1,1)`, `D = (1,1,1)`.
//! Passing to the circle glues every occurrence of 0 to 1.

use std::fmt;
use std::str::FromStr;

use crate::delta_complex::{CellId, DeltaComplex, IdentificationSpec};
use crate::groups::{Presentation, Word};

/// Spaces that can be built by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpaceName {
    Interval,
    Circle,
    Sub2Interval,
    Sub2Circle,
    Sub3Interval,
    Sub3Circle,
    TrefoilComplement,
}

impl SpaceName {
    pub const ALL: [SpaceName; 7] = [
        SpaceName::Interval,
        SpaceName::Circle,
        SpaceName::Sub2Interval,
        SpaceName::Sub2Circle,
        SpaceName::Sub3Interval,
        SpaceName::Sub3Circle,
        SpaceName::TrefoilComplement,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SpaceName::Interval => "interval",
            SpaceName::Circle => "circle",
            SpaceName::Sub2Interval => "sub2-interval",
            SpaceName::Sub2Circle => "sub2-circle",
            SpaceName::Sub3Interval => "sub3-interval",
            SpaceName::Sub3Circle => "sub3-circle",
            SpaceName::TrefoilComplement => "trefoil-complement",
        }
    }

    pub fn build(self) -> BuiltSpace {
        match self {
            SpaceName::Interval => BuiltSpace::Complex(build_interval()),
            SpaceName::Circle => BuiltSpace::Complex(build_circle()),
            SpaceName::Sub2Interval => BuiltSpace::Complex(build_sub2_interval()),
            SpaceName::Sub2Circle => BuiltSpace::Complex(build_sub2_circle()),
            SpaceName::Sub3Interval => BuiltSpace::Complex(build_sub3_interval()),
            SpaceName::Sub3Circle => BuiltSpace::Complex(build_sub3_circle()),
            SpaceName::TrefoilComplement => BuiltSpace::Presentation(build_trefoil_complement()),
        }
    }
}

impl fmt::Display for SpaceName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown space `{0}`")]
pub struct UnknownSpace(pub String);

impl FromStr for SpaceName {
    type Err = UnknownSpace;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SpaceName::ALL.into_iter().find(|n| n.as_str() == s).ok_or_else(|| UnknownSpace(s.to_string()))
    }
}

/// Output of a named builder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuiltSpace {
    Complex(DeltaComplex),
    Presentation(Presentation),
}

// Cells of the tetrahedron ABCD in the numbering of `tetrahedron_abcd`.
pub const AB: CellId = CellId::edge(0);
pub const AC: CellId = CellId::edge(1);
pub const AD: CellId = CellId::edge(2);
pub const BC: CellId = CellId::edge(3);
pub const BD: CellId = CellId::edge(4);
pub const CD: CellId = CellId::edge(5);
pub const ABC: CellId = CellId::triangle(0);
pub const ABD: CellId = CellId::triangle(1);
pub const ACD: CellId = CellId::triangle(2);
pub const BCD: CellId = CellId::triangle(3);

fn letters(dim_labels: &[Option<String>]) -> Vec<Option<String>> {
    const NAMES: [char; 4] = ['A', 'B', 'C', 'D'];
    dim_labels
        .iter()
        .map(|l| l.as_ref().map(|digits| digits.chars().map(|d| NAMES[d.to_digit(10).unwrap() as usize]).collect()))
        .collect()
}

/// The tetrahedron with vertices A, B, C, D, lexicographically numbered.
pub fn tetrahedron_abcd() -> DeltaComplex {
    let t = DeltaComplex::standard_simplex(3).expect("3-simplex");
    let labels = t.labels().iter().map(|l| letters(l)).collect();
    let faces = (1..=3).map(|d| t.cells(d).map(|c| t.faces_of(c).to_vec()).collect()).collect();
    DeltaComplex::new(t.counts().to_vec(), faces, Some(labels)).expect("relabelled tetrahedron")
}

/// `I` as a single edge from vertex `0` to vertex `1`.
pub fn build_interval() -> DeltaComplex {
    DeltaComplex::new(
        vec![2, 1],
        vec![vec![vec![CellId::vertex(1), CellId::vertex(0)]]],
        Some(vec![vec![Some("0".into()), Some("1".into())], vec![Some("I".into())]]),
    )
    .expect("interval")
}

/// `S^1 = I / 0 ~ 1`: one vertex and one loop.
pub fn build_circle() -> DeltaComplex {
    build_interval()
        .quotient(&IdentificationSpec::new().glue(CellId::vertex(0), CellId::vertex(1)))
        .expect("circle quotient")
        .with_label(CellId::edge(0), "γ")
}

/// The triangle `{(x, y) : 0 <= x <= y <= 1}` on the vertices `(0,0)`,
/// `(0,1)`, `(1,1)`. Edge 0 is the left edge `(0, x)`, edge 1 the top edge
/// `(x, 1)` and edge 2 the diagonal of singletons `(x, x)`.
pub fn build_sub2_interval() -> DeltaComplex {
    let v = CellId::vertex;
    let e = CellId::edge;
    DeltaComplex::new(
        vec![3, 3, 1],
        vec![vec![vec![v(1), v(0)], vec![v(2), v(1)], vec![v(2), v(0)]], vec![vec![e(1), e(2), e(0)]]],
        Some(vec![
            vec![Some("(0,0)".into()), Some("(0,1)".into()), Some("(1,1)".into())],
            vec![Some("left".into()), Some("top".into()), Some("diagonal".into())],
            vec![Some("Sub2(I)".into())],
        ]),
    )
    .expect("sub2 interval")
}

/// The triangle with `(0, x) ~ (x, 1)`: the left edge glued onto the top
/// edge. The glued edge is named `γ` and the diagonal `δ`.
pub fn build_sub2_circle() -> DeltaComplex {
    build_sub2_interval()
        .quotient(&IdentificationSpec::new().glue(CellId::edge(0), CellId::edge(1)))
        .expect("sub2 circle quotient")
        .with_label(CellId::edge(0), "γ")
        .with_label(CellId::edge(1), "δ")
}

/// The tetrahedron ABCD with `(x, x, z) ~ (x, z, z)`, i.e. face ABD glued to ACD.
pub fn build_sub3_interval() -> DeltaComplex {
    tetrahedron_abcd().quotient(&IdentificationSpec::new().glue(ABD, ACD)).expect("sub3 interval quotient")
}

/// `Sub_3(I)` with `(0, y, z) ~ (y, z, 1)` added, i.e. face ABC glued to
/// BCD. The two remaining edge classes are named `α` (containing AB) and
/// `β` (the diagonal AD of singletons).
pub fn build_sub3_circle() -> DeltaComplex {
    sub3_circle_from(&IdentificationSpec::new().glue(ABD, ACD).glue(ABC, BCD))
}

/// A deliberately wrong model of `Sub_3(S^1)`: ABD is glued to BCD in place
/// of ABC. Used to check that the report notices a bad identification.
pub fn build_sub3_circle_misglued() -> DeltaComplex {
    sub3_circle_from(&IdentificationSpec::new().glue(ABD, ACD).glue(ABD, BCD))
}

fn sub3_circle_from(spec: &IdentificationSpec) -> DeltaComplex {
    let mut q = tetrahedron_abcd().quotient(spec).expect("sub3 circle quotient");
    if q.num_cells(1) == 2 {
        q = q.with_label(CellId::edge(0), "α").with_label(CellId::edge(1), "β");
    }
    q
}

/// Presentation read off the pyramid left after removing a neighbourhood of
/// the singleton knot from `Sub_3(S^1)`: generators `a, b, c, d` and one
/// relator per face, in the order top RTS, front QTRP, left SPR (= right
/// QTS), back SPQ.
pub fn build_trefoil_complement() -> Presentation {
    let names = ["a", "b", "c", "d"].map(String::from).to_vec();
    let (a, b, c, d) = (0, 1, 2, 3);
    let w = |letters: &[(usize, i8)]| Word::from_letters(letters.iter().copied());
    let relators = vec![
        w(&[(b, 1), (c, 1), (d, -1)]),
        w(&[(a, 1), (b, -1), (c, -1), (b, 1)]),
        w(&[(a, 1), (c, 1), (d, 1)]),
        w(&[(a, 1), (b, 1), (d, -1)]),
    ];
    Presentation::new(names, relators).expect("trefoil complement presentation")
}
