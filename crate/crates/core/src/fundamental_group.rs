//! Presentations of the fundamental group read off the 2-skeleton.
//!
//! Edges not in a spanning tree generate; each triangle `[v0, v1, v2]`
//! contributes the loop `face_2 · face_0 · face_1⁻¹`
//! (`v0 → v1 → v2 → v0`) with tree edges contracted.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::delta_complex::{CellId, ComplexError, DeltaComplex};
use crate::groups::{Letter, Presentation, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Pi1Error {
    #[error("complex has {0} connected components; a presentation needs exactly one")]
    Disconnected(usize),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Edges of a breadth-first spanning tree rooted at vertex 0. Edges are
/// scanned in index order and loops are never selected.
pub fn spanning_tree(complex: &DeltaComplex) -> Result<BTreeSet<CellId>, Pi1Error> {
    let components = complex.connected_components();
    if components != 1 {
        return Err(Pi1Error::Disconnected(components));
    }
    let mut seen = vec![false; complex.num_cells(0)];
    let mut tree = BTreeSet::new();
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for e in complex.cells(1) {
            let f = complex.faces_of(e);
            let (head, tail) = (f[0].index, f[1].index);
            let other = if tail == v {
                head
            } else if head == v {
                tail
            } else {
                continue;
            };
            if !seen[other] {
                seen[other] = true;
                tree.insert(e);
                queue.push_back(other);
            }
        }
    }
    Ok(tree)
}

/// One generator per non-tree edge (named by label, else `e<index>`) and one
/// freely reduced relator per triangle. Higher cells do not affect the group.
pub fn presentation(complex: &DeltaComplex) -> Result<Presentation, Pi1Error> {
    if let Some(v) = complex.validate().into_iter().next() {
        return Err(ComplexError::Invalid(v).into());
    }
    let tree = spanning_tree(complex)?;
    let mut generator_of = vec![None; complex.num_cells(1)];
    let mut names: Vec<String> = Vec::new();
    for e in complex.cells(1).filter(|e| !tree.contains(e)) {
        let mut name = complex.display_name(e);
        if names.contains(&name) {
            name = format!("{name}#{}", e.index);
        }
        generator_of[e.index] = Some(names.len());
        names.push(name);
    }
    let relators = complex
        .cells(2)
        .map(|t| {
            let f = complex.faces_of(t);
            [(f[2], 1), (f[0], 1), (f[1], -1)]
                .into_iter()
                .filter_map(|(e, exp)| generator_of[e.index].map(|g| Letter::new(g, exp)))
                .collect::<Vec<_>>()
        })
        .map(|letters| Word::new(letters).free_reduce())
        .collect();
    Ok(Presentation::new(names, relators).expect("generators indexed from edge list"))
}
