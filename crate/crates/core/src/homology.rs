//! Integer simplicial homology of Δ-complexes.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::delta_complex::{ComplexError, DeltaComplex};
use crate::smith::{smith_normal_form, IntegerMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("boundary dimension {n} out of range 1..={top}")]
    DimensionOutOfRange { n: usize, top: usize },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A finitely generated abelian group `Z^betti ⊕ Z/t_1 ⊕ ... ⊕ Z/t_k` with
/// `t_1 | t_2 | ... | t_k` and every `t_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn free(betti: usize) -> Self {
        HomologyGroup { betti, torsion: Vec::new() }
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// Matrix of the boundary map from `n`-chains to `(n-1)`-chains.
///
/// Rows are `(n-1)`-cells, columns `n`-cells; the entry for `(τ, σ)` sums
/// `(-1)^i` over the slots `i` of `σ` whose face is `τ`.
pub fn boundary_matrix(complex: &DeltaComplex, n: usize) -> Result<IntegerMatrix, HomologyError> {
    let top = complex.top_dim().unwrap_or(0);
    if n == 0 || n > top {
        return Err(HomologyError::DimensionOutOfRange { n, top });
    }
    let mut m = vec![vec![0i64; complex.num_cells(n)]; complex.num_cells(n - 1)];
    for sigma in complex.cells(n) {
        for (i, tau) in complex.faces_of(sigma).iter().enumerate() {
            m[tau.index][sigma.index] += if i % 2 == 0 { 1 } else { -1 };
        }
    }
    Ok(IntegerMatrix::from_rows_with_cols(&m, complex.num_cells(n)))
}

/// `H_0, ..., H_top` of a valid complex.
pub fn homology(complex: &DeltaComplex) -> Result<Vec<HomologyGroup>, HomologyError> {
    if let Some(v) = complex.validate().into_iter().next() {
        return Err(ComplexError::Invalid(v).into());
    }
    let Some(top) = complex.top_dim() else {
        return Ok(Vec::new());
    };
    // ranks[n] = rank of ∂_n, torsion[n] = invariant factors > 1 of ∂_n.
    let mut ranks = vec![0usize; top + 2];
    let mut torsion = vec![Vec::new(); top + 2];
    for n in 1..=top {
        let snf = smith_normal_form(&boundary_matrix(complex, n)?);
        ranks[n] = snf.rank();
        torsion[n] = snf.torsion();
    }
    Ok((0..=top)
        .map(|n| HomologyGroup {
            betti: complex.num_cells(n) - ranks[n] - ranks[n + 1],
            torsion: torsion[n + 1].clone(),
        })
        .collect())
}

/// Compact rendering such as `[Z, Z, 0]`.
pub fn format_homology(groups: &[HomologyGroup]) -> String {
    let parts: Vec<String> = groups.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}
