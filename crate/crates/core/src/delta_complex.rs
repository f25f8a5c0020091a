//! Combinatorial Δ-complexes.
//!
//! A Δ-complex is stored as a list of cell counts per dimension together with
//! ordered face maps: slot `i` of an `n`-cell is the `(n-1)`-cell obtained by
//! omitting vertex `i`. Distinct slots may point at the same cell, which is
//! what makes quotients such as the circle (one vertex, one edge) expressible.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Highest dimension a complex may have.
pub const MAX_DIM: usize = 3;

/// A cell of a complex, addressed by dimension and 0-based index within it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellId {
    pub dim: usize,
    pub index: usize,
}

impl CellId {
    pub const fn new(dim: usize, index: usize) -> Self {
        CellId { dim, index }
    }

    pub const fn vertex(index: usize) -> Self {
        CellId { dim: 0, index }
    }

    pub const fn edge(index: usize) -> Self {
        CellId { dim: 1, index }
    }

    pub const fn triangle(index: usize) -> Self {
        CellId { dim: 2, index }
    }

    pub const fn tetrahedron(index: usize) -> Self {
        CellId { dim: 3, index }
    }
}

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-cell #{}", self.dim, self.index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("complex has {0} dimensions, at most {max} are supported", max = MAX_DIM + 1)]
    TooManyDimensions(usize),
    #[error("expected face lists for {expected} dimensions, got {found}")]
    FaceListCount { expected: usize, found: usize },
    #[error("dimension {dim} declares {declared} cells but {found} face lists were given")]
    CellCountMismatch { dim: usize, declared: usize, found: usize },
    #[error("dimension {dim} declares {declared} cells but {found} labels were given")]
    LabelCountMismatch { dim: usize, declared: usize, found: usize },
    #[error("{cell} has {found} face slots, expected {expected}")]
    FaceArity { cell: CellId, expected: usize, found: usize },
    #[error("face slot {slot} of {cell} refers to {target}, which has the wrong dimension")]
    FaceDimension { cell: CellId, slot: usize, target: CellId },
    #[error("face slot {slot} of {cell} refers to missing {target}")]
    FaceOutOfRange { cell: CellId, slot: usize, target: CellId },
    #[error("cannot glue {0} to {1}: cells of different dimensions")]
    DimensionMismatch(CellId, CellId),
    #[error("gluing refers to missing {0}")]
    UnknownCell(CellId),
    #[error("vertex correspondence {map:?} for gluing {a} to {b} is not order-preserving")]
    NotOrderPreserving { a: CellId, b: CellId, map: Vec<usize> },
    #[error("complex is invalid: {0}")]
    Invalid(Violation),
    #[error("expected a complex of top dimension {expected}, found {found:?}")]
    TopDimension { expected: usize, found: Option<usize> },
}

/// A single failed invariant reported by [`DeltaComplex::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    TooManyDimensions(usize),
    FaceArity {
        cell: CellId,
        expected: usize,
        found: usize,
    },
    FaceDimension {
        cell: CellId,
        slot: usize,
        target: CellId,
    },
    FaceOutOfRange {
        cell: CellId,
        slot: usize,
        target: CellId,
    },
    /// `face_{j-1}(face_i(cell)) != face_i(face_j(cell))` for `i < j`.
    SimplicialIdentity {
        cell: CellId,
        i: usize,
        j: usize,
        left: CellId,
        right: CellId,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooManyDimensions(n) => write!(f, "{n} dimensions exceed the maximum"),
            Violation::FaceArity { cell, expected, found } => {
                write!(f, "{cell} has {found} face slots, expected {expected}")
            }
            Violation::FaceDimension { cell, slot, target } => {
                write!(f, "face slot {slot} of {cell} refers to {target} of the wrong dimension")
            }
            Violation::FaceOutOfRange { cell, slot, target } => {
                write!(f, "face slot {slot} of {cell} refers to missing {target}")
            }
            Violation::SimplicialIdentity { cell, i, j, left, right } => {
                write!(f, "{cell}: face {}(face {i}) = {left} but face {i}(face {j}) = {right}", j - 1)
            }
        }
    }
}

/// Cell counts, ordered face maps and optional labels, graded by dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaComplex {
    counts: Vec<usize>,
    /// `faces[n]` lists the face slots of every `n`-cell; `faces[0]` is empty.
    faces: Vec<Vec<Vec<CellId>>>,
    labels: Vec<Vec<Option<String>>>,
}

impl DeltaComplex {
    /// Builds a complex, checking that every face reference has the right
    /// dimension and exists. Simplicial identities are left to [`validate`].
    ///
    /// `faces[n - 1]` holds the face slots of the `n`-cells.
    ///
    /// [`validate`]: DeltaComplex::validate
    pub fn new(
        cells_per_dim: Vec<usize>,
        faces: Vec<Vec<Vec<CellId>>>,
        labels: Option<Vec<Vec<Option<String>>>>,
    ) -> Result<Self, ComplexError> {
        let dims = cells_per_dim.len();
        if dims > MAX_DIM + 1 {
            return Err(ComplexError::TooManyDimensions(dims));
        }
        let expected = dims.saturating_sub(1);
        if faces.len() != expected {
            return Err(ComplexError::FaceListCount { expected, found: faces.len() });
        }
        for (k, list) in faces.iter().enumerate() {
            let dim = k + 1;
            if list.len() != cells_per_dim[dim] {
                return Err(ComplexError::CellCountMismatch { dim, declared: cells_per_dim[dim], found: list.len() });
            }
            for (index, slots) in list.iter().enumerate() {
                let cell = CellId::new(dim, index);
                if slots.len() != dim + 1 {
                    return Err(ComplexError::FaceArity { cell, expected: dim + 1, found: slots.len() });
                }
                for (slot, &target) in slots.iter().enumerate() {
                    if target.dim + 1 != dim {
                        return Err(ComplexError::FaceDimension { cell, slot, target });
                    }
                    if target.index >= cells_per_dim[dim - 1] {
                        return Err(ComplexError::FaceOutOfRange { cell, slot, target });
                    }
                }
            }
        }
        let labels = match labels {
            Some(labels) => {
                if labels.len() != dims {
                    return Err(ComplexError::LabelCountMismatch {
                        dim: labels.len().min(dims),
                        declared: dims,
                        found: labels.len(),
                    });
                }
                for (dim, (l, &c)) in labels.iter().zip(&cells_per_dim).enumerate() {
                    if l.len() != c {
                        return Err(ComplexError::LabelCountMismatch { dim, declared: c, found: l.len() });
                    }
                }
                labels
            }
            None => cells_per_dim.iter().map(|&c| vec![None; c]).collect(),
        };
        let mut all_faces = Vec::with_capacity(dims);
        if dims > 0 {
            all_faces.push(Vec::new());
        }
        all_faces.extend(faces);
        Ok(DeltaComplex { counts: cells_per_dim, faces: all_faces, labels })
    }

    /// Like [`new`](DeltaComplex::new) but with faces given as plain indices
    /// into the next dimension down.
    pub fn from_indices(cells_per_dim: Vec<usize>, faces: Vec<Vec<Vec<usize>>>) -> Result<Self, ComplexError> {
        let faces = faces
            .into_iter()
            .enumerate()
            .map(|(k, list)| {
                list.into_iter().map(|slots| slots.into_iter().map(|i| CellId::new(k, i)).collect()).collect()
            })
            .collect();
        Self::new(cells_per_dim, faces, None)
    }

    /// Assembles a complex without any structural checks. The result may
    /// violate every invariant; [`validate`](DeltaComplex::validate) reports
    /// what is wrong with it.
    pub fn from_raw_parts(
        cells_per_dim: Vec<usize>,
        faces: Vec<Vec<Vec<CellId>>>,
        labels: Vec<Vec<Option<String>>>,
    ) -> Self {
        let mut all_faces = vec![Vec::new()];
        all_faces.extend(faces);
        all_faces.truncate(cells_per_dim.len().max(1));
        DeltaComplex { counts: cells_per_dim, faces: all_faces, labels }
    }

    /// The single-vertex complex.
    pub fn point() -> Self {
        DeltaComplex { counts: vec![1], faces: vec![Vec::new()], labels: vec![vec![None]] }
    }

    /// The standard `n`-simplex on vertices `0..=n`, with faces in
    /// lexicographic order of their vertex sets.
    pub fn standard_simplex(n: usize) -> Result<Self, ComplexError> {
        if n > MAX_DIM {
            return Err(ComplexError::TooManyDimensions(n + 1));
        }
        // Every subset of {0..=n} of size k+1 is a k-cell, numbered lexicographically.
        let mut subsets: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n + 1];
        for mask in 1u32..(1 << (n + 1)) {
            let verts: Vec<usize> = (0..=n).filter(|v| mask & (1 << v) != 0).collect();
            subsets[verts.len() - 1].push(verts);
        }
        for s in &mut subsets {
            s.sort();
        }
        let counts = subsets.iter().map(Vec::len).collect();
        let faces = (1..=n)
            .map(|k| {
                subsets[k]
                    .iter()
                    .map(|verts| {
                        (0..=k)
                            .map(|omit| {
                                let face: Vec<usize> =
                                    verts.iter().enumerate().filter(|&(p, _)| p != omit).map(|(_, &v)| v).collect();
                                let idx = subsets[k - 1].binary_search(&face).expect("face of a simplex");
                                CellId::new(k - 1, idx)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let labels = subsets
            .iter()
            .map(|list| {
                list.iter()
                    .map(|verts| Some(verts.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("")))
                    .collect()
            })
            .collect();
        Self::new(counts, faces, Some(labels))
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// Number of cells of dimension `dim`; zero above the top dimension.
    pub fn num_cells(&self, dim: usize) -> usize {
        self.counts.get(dim).copied().unwrap_or(0)
    }

    /// Highest dimension with a slot in the count list, `None` for the empty complex.
    pub fn top_dim(&self) -> Option<usize> {
        self.counts.len().checked_sub(1)
    }

    pub fn cells(&self, dim: usize) -> impl Iterator<Item = CellId> {
        (0..self.num_cells(dim)).map(move |i| CellId::new(dim, i))
    }

    /// The ordered face slots of `cell` (empty for vertices).
    pub fn faces_of(&self, cell: CellId) -> &[CellId] {
        if cell.dim == 0 {
            return &[];
        }
        &self.faces[cell.dim][cell.index]
    }

    /// Face slot `slot` of `cell`: the face omitting vertex `slot`.
    pub fn face(&self, cell: CellId, slot: usize) -> CellId {
        self.faces_of(cell)[slot]
    }

    /// Ordered vertices of a cell: vertex `k` is reached by dropping every
    /// other vertex. Requires a structurally sound complex.
    pub fn vertices_of(&self, cell: CellId) -> Vec<CellId> {
        (0..=cell.dim)
            .map(|k| {
                let mut c = cell;
                while c.dim > 0 {
                    // Drop the last vertex while it is not `k`, otherwise the first.
                    let slot = if k < c.dim { c.dim } else { 0 };
                    c = self.face(c, slot);
                }
                c
            })
            .collect()
    }

    pub fn label(&self, cell: CellId) -> Option<&str> {
        self.labels.get(cell.dim)?.get(cell.index)?.as_deref()
    }

    pub fn labels(&self) -> &[Vec<Option<String>>] {
        &self.labels
    }

    /// Label if present, otherwise a positional name such as `e3`.
    pub fn display_name(&self, cell: CellId) -> String {
        match self.label(cell) {
            Some(l) => l.to_string(),
            None => {
                let prefix = ["v", "e", "f", "t"][cell.dim.min(3)];
                format!("{prefix}{}", cell.index)
            }
        }
    }

    /// Returns a copy with `cell` relabelled.
    pub fn with_label(mut self, cell: CellId, label: impl Into<String>) -> Self {
        self.labels[cell.dim][cell.index] = Some(label.into());
        self
    }

    /// Lists every violated invariant; an empty list means the complex is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.counts.len() > MAX_DIM + 1 {
            out.push(Violation::TooManyDimensions(self.counts.len()));
            return out;
        }
        let mut structural_ok = true;
        for dim in 1..self.counts.len() {
            let list = self.faces.get(dim).map(Vec::as_slice).unwrap_or(&[]);
            for index in 0..self.counts[dim] {
                let cell = CellId::new(dim, index);
                let slots = list.get(index).map(Vec::as_slice).unwrap_or(&[]);
                if slots.len() != dim + 1 {
                    out.push(Violation::FaceArity { cell, expected: dim + 1, found: slots.len() });
                    structural_ok = false;
                    continue;
                }
                for (slot, &target) in slots.iter().enumerate() {
                    if target.dim + 1 != dim {
                        out.push(Violation::FaceDimension { cell, slot, target });
                        structural_ok = false;
                    } else if target.index >= self.counts[dim - 1] {
                        out.push(Violation::FaceOutOfRange { cell, slot, target });
                        structural_ok = false;
                    }
                }
            }
        }
        if !structural_ok {
            return out;
        }
        for dim in 2..self.counts.len() {
            for cell in self.cells(dim) {
                for j in 1..=dim {
                    for i in 0..j {
                        let left = self.face(self.face(cell, i), j - 1);
                        let right = self.face(self.face(cell, j), i);
                        if left != right {
                            out.push(Violation::SimplicialIdentity { cell, i, j, left, right });
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    fn ensure_valid(&self) -> Result<(), ComplexError> {
        match self.validate().into_iter().next() {
            Some(v) => Err(ComplexError::Invalid(v)),
            None => Ok(()),
        }
    }

    /// Glues cells according to `spec` and closes the identification under
    /// faces: gluing two `n`-cells glues their `i`-th faces for every `i`.
    ///
    /// Each class is represented by its lowest original index, and the
    /// classes keep the relative order of their representatives. Labels of a
    /// class are joined with `=` in index order.
    pub fn quotient(&self, spec: &IdentificationSpec) -> Result<DeltaComplex, ComplexError> {
        self.quotient_with_projection(spec).map(|(q, _)| q)
    }

    /// [`quotient`](DeltaComplex::quotient) together with the projection:
    /// `projection[dim][i]` is the index of the class of cell `(dim, i)`.
    pub fn quotient_with_projection(
        &self,
        spec: &IdentificationSpec,
    ) -> Result<(DeltaComplex, Vec<Vec<usize>>), ComplexError> {
        self.ensure_valid()?;
        let mut sets: Vec<MinUnionFind> = self.counts.iter().map(|&c| MinUnionFind::new(c)).collect();
        let mut pending = Vec::with_capacity(spec.pairs.len());
        for &(a, b) in &spec.pairs {
            if a.dim != b.dim {
                return Err(ComplexError::DimensionMismatch(a, b));
            }
            for c in [a, b] {
                if c.index >= self.num_cells(c.dim) {
                    return Err(ComplexError::UnknownCell(c));
                }
            }
            pending.push((a, b));
        }
        while let Some((a, b)) = pending.pop() {
            if a.dim != b.dim {
                return Err(ComplexError::DimensionMismatch(a, b));
            }
            if sets[a.dim].union(a.index, b.index) {
                pending.extend(self.faces_of(a).iter().copied().zip(self.faces_of(b).iter().copied()));
            }
        }

        let mut renumber: Vec<Vec<usize>> = Vec::with_capacity(self.counts.len());
        let mut reps: Vec<Vec<usize>> = Vec::with_capacity(self.counts.len());
        for set in &mut sets {
            let roots: Vec<usize> = (0..set.len()).map(|i| set.find(i)).collect();
            let dim_reps: Vec<usize> = (0..roots.len()).filter(|&i| roots[i] == i).collect();
            let map: Vec<usize> =
                roots.iter().map(|r| dim_reps.binary_search(r).expect("root is a representative")).collect();
            renumber.push(map);
            reps.push(dim_reps);
        }

        let counts: Vec<usize> = reps.iter().map(Vec::len).collect();
        let faces = (1..self.counts.len())
            .map(|dim| {
                reps[dim]
                    .iter()
                    .map(|&r| {
                        self.faces_of(CellId::new(dim, r))
                            .iter()
                            .map(|f| CellId::new(dim - 1, renumber[dim - 1][f.index]))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let labels = (0..self.counts.len())
            .map(|dim| {
                let mut joined: Vec<Vec<&str>> = vec![Vec::new(); counts[dim]];
                for (i, l) in self.labels[dim].iter().enumerate() {
                    if let Some(l) = l {
                        joined[renumber[dim][i]].push(l);
                    }
                }
                joined.into_iter().map(|parts| (!parts.is_empty()).then(|| parts.join("="))).collect()
            })
            .collect();
        let out = DeltaComplex::new(counts, faces, Some(labels))?;
        debug_assert!(out.is_valid());
        Ok((out, renumber))
    }

    /// Alternating sum of cell counts.
    pub fn euler_characteristic(&self) -> i64 {
        self.counts.iter().enumerate().map(|(n, &c)| if n % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }

    /// Edges occupying exactly one face slot across all triangles, with
    /// their vertices. Requires top dimension exactly 2.
    pub fn boundary_subcomplex(&self) -> Result<DeltaComplex, ComplexError> {
        if self.top_dim() != Some(2) {
            return Err(ComplexError::TopDimension { expected: 2, found: self.top_dim() });
        }
        let mut slot_counts = vec![0usize; self.num_cells(1)];
        for t in self.cells(2) {
            for e in self.faces_of(t) {
                slot_counts[e.index] += 1;
            }
        }
        let edges: Vec<usize> = (0..slot_counts.len()).filter(|&e| slot_counts[e] == 1).collect();
        let verts: BTreeSet<usize> =
            edges.iter().flat_map(|&e| self.faces_of(CellId::edge(e)).iter().map(|v| v.index)).collect();
        let verts: Vec<usize> = verts.into_iter().collect();
        let edge_faces = edges
            .iter()
            .map(|&e| {
                self.faces_of(CellId::edge(e))
                    .iter()
                    .map(|v| CellId::vertex(verts.binary_search(&v.index).expect("endpoint collected")))
                    .collect()
            })
            .collect();
        let labels = vec![
            verts.iter().map(|&v| self.labels[0][v].clone()).collect(),
            edges.iter().map(|&e| self.labels[1][e].clone()).collect(),
        ];
        DeltaComplex::new(vec![verts.len(), edges.len()], vec![edge_faces], Some(labels))
    }

    /// Number of connected components of the 1-skeleton.
    pub fn connected_components(&self) -> usize {
        let mut uf = MinUnionFind::new(self.num_cells(0));
        for e in self.cells(1) {
            let f = self.faces_of(e);
            uf.union(f[0].index, f[1].index);
        }
        (0..uf.len()).filter(|&v| uf.find(v) == v).count()
    }
}

/// Pairs of equal-dimensional cells to be glued slot by slot.
///
/// Gluing `a` to `b` sends the `k`-th vertex of `a` to the `k`-th vertex of
/// `b`, so every gluing is order-preserving.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IdentificationSpec {
    pub pairs: Vec<(CellId, CellId)>,
}

impl IdentificationSpec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn glue(mut self, a: CellId, b: CellId) -> Self {
        self.pairs.push((a, b));
        self
    }

    /// Glues `a` to `b` sending vertex `k` of `a` to vertex `map[k]` of `b`.
    /// Only the order-preserving correspondence (the identity on positions)
    /// is accepted.
    pub fn glue_with_vertex_map(mut self, a: CellId, b: CellId, map: &[usize]) -> Result<Self, ComplexError> {
        if a.dim != b.dim {
            return Err(ComplexError::DimensionMismatch(a, b));
        }
        let monotone = map.len() == a.dim + 1 && map.iter().enumerate().all(|(k, &m)| k == m);
        if !monotone {
            return Err(ComplexError::NotOrderPreserving { a, b, map: map.to_vec() });
        }
        self.pairs.push((a, b));
        Ok(self)
    }
}

/// Union-find whose class roots are always the least element of the class.
#[derive(Debug, Clone)]
pub(crate) struct MinUnionFind {
    parent: Vec<usize>,
}

impl MinUnionFind {
    pub(crate) fn new(n: usize) -> Self {
        MinUnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn len(&self) -> usize {
        self.parent.len()
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    /// Merges the classes of `a` and `b`; returns false if they already coincided.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}
