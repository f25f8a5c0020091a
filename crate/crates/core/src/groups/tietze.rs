//! Tietze simplification of presentations.
//!
//! Moves used: free and cyclic reduction of relators, deletion of empty and
//! duplicate relators (equal up to rotation and inversion), and elimination
//! of a generator occurring exactly once in some relator. Because the end
//! result depends on which eliminations are chosen, every elimination order
//! is explored (depth-first, bounded) and the simplest fixpoint is kept:
//! fewest generators, then fewest relators, then fewest syllables, then
//! shortest total length.

use std::collections::HashSet;

use serde::Serialize;

use super::{Presentation, Word};
use crate::homology::HomologyGroup;

/// Expansion budget for the elimination search. Once it is spent the search
/// follows the first available move until a fixpoint.
const SEARCH_BUDGET: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DropReason {
    Empty,
    Duplicate,
}

/// One logged move. Words are rendered with the original generator names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "move", rename_all = "kebab-case")]
pub enum TietzeStep {
    ReduceRelator { before: String, after: String },
    RotateRelator { before: String, after: String },
    DropRelator { relator: String, reason: DropReason },
    EliminateGenerator { generator: String, relator: String, replacement: String },
}

/// Result of [`simplify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplificationTrace {
    pub presentation: Presentation,
    /// Eliminated generators (original names) in elimination order, each
    /// with its value as a word in the resulting generators.
    pub substitutions: Vec<(String, Word)>,
    pub steps: Vec<TietzeStep>,
    /// Image of every original generator in the resulting group.
    images: Vec<Word>,
    original_generators: Vec<String>,
}

impl SimplificationTrace {
    pub fn substitution_for(&self, generator: &str) -> Option<&Word> {
        self.substitutions.iter().find(|(g, _)| g == generator).map(|(_, w)| w)
    }

    pub fn original_generators(&self) -> &[String] {
        &self.original_generators
    }

    /// Rewrites a word in the original generators into the resulting ones.
    pub fn map_word(&self, w: &Word) -> Word {
        let mut out = Word::empty();
        for l in w.letters() {
            let img = &self.images[l.gen];
            out = out * if l.exp > 0 { img.clone() } else { img.inverse() };
        }
        out.free_reduce()
    }
}

#[derive(Debug, Clone)]
struct State {
    alive: Vec<bool>,
    relators: Vec<Word>,
    /// Value of each eliminated generator in terms of the live ones.
    images: Vec<Option<Word>>,
    eliminated: Vec<usize>,
    steps: Vec<TietzeStep>,
}

type Score = (usize, usize, usize, usize, Vec<Word>);

impl State {
    fn new(p: &Presentation) -> Self {
        State {
            alive: vec![true; p.generators.len()],
            relators: p.relators.clone(),
            images: vec![None; p.generators.len()],
            eliminated: Vec::new(),
            steps: Vec::new(),
        }
    }

    fn normalize(&mut self, names: &[String]) {
        let mut seen = HashSet::new();
        let mut kept = Vec::with_capacity(self.relators.len());
        for r in std::mem::take(&mut self.relators) {
            let c = r.cyclic_reduce();
            if c != r {
                self.steps.push(TietzeStep::ReduceRelator { before: r.format(names), after: c.format(names) });
            }
            if c.is_empty() {
                self.steps.push(TietzeStep::DropRelator { relator: r.format(names), reason: DropReason::Empty });
                continue;
            }
            if !seen.insert(c.cyclic_canonical()) {
                self.steps.push(TietzeStep::DropRelator { relator: c.format(names), reason: DropReason::Duplicate });
                continue;
            }
            kept.push(c);
        }
        self.relators = kept;
    }

    /// Available eliminations `(relator index, generator)`, shortest relator
    /// first, then by the relator's canonical form, then by generator index.
    fn moves(&self) -> Vec<(usize, usize)> {
        let mut moves: Vec<(usize, Word, usize, usize)> = Vec::new();
        for (ri, r) in self.relators.iter().enumerate() {
            let canon = r.cyclic_canonical();
            for g in (0..self.alive.len()).filter(|&g| self.alive[g]) {
                if r.occurrences(g) == 1 {
                    moves.push((r.len(), canon.clone(), g, ri));
                }
            }
        }
        moves.sort();
        moves.into_iter().map(|(_, _, g, ri)| (ri, g)).collect()
    }

    fn eliminate(&self, ri: usize, g: usize, names: &[String]) -> State {
        let rel = &self.relators[ri];
        let pos = rel.letters().iter().position(|l| l.gen == g).expect("generator occurs once");
        let u = Word::new(rel.letters()[..pos].to_vec());
        let v = Word::new(rel.letters()[pos + 1..].to_vec());
        // u g v = 1  =>  g = u⁻¹ v⁻¹;   u g⁻¹ v = 1  =>  g = v u.
        let replacement = if rel.letters()[pos].exp > 0 { u.inverse() * v.inverse() } else { v * u }.free_reduce();

        let mut next = self.clone();
        next.steps.push(TietzeStep::EliminateGenerator {
            generator: names[g].clone(),
            relator: rel.format(names),
            replacement: replacement.format(names),
        });
        next.relators = self
            .relators
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != ri)
            .map(|(_, r)| r.substitute(g, &replacement))
            .collect();
        for img in next.images.iter_mut().flatten() {
            *img = img.substitute(g, &replacement);
        }
        next.images[g] = Some(replacement);
        next.alive[g] = false;
        next.eliminated.push(g);
        next.normalize(names);
        next
    }

    fn key(&self) -> (Vec<bool>, Vec<Word>) {
        let mut rels: Vec<Word> = self.relators.iter().map(Word::cyclic_canonical).collect();
        rels.sort();
        (self.alive.clone(), rels)
    }

    fn score(&self) -> Score {
        let mut rels: Vec<Word> = self.relators.iter().map(Word::cyclic_canonical).collect();
        rels.sort();
        (
            self.alive.iter().filter(|&&a| a).count(),
            self.relators.len(),
            self.relators.iter().map(Word::cyclic_syllable_count).sum(),
            self.relators.iter().map(Word::len).sum(),
            rels,
        )
    }
}

struct Search<'a> {
    names: &'a [String],
    budget: usize,
    visited: HashSet<(Vec<bool>, Vec<Word>)>,
    best: Option<(Score, State)>,
}

impl Search<'_> {
    fn offer(&mut self, state: State) {
        let score = state.score();
        if self.best.as_ref().is_none_or(|(s, _)| score < *s) {
            self.best = Some((score, state));
        }
    }

    fn run(&mut self, state: State) {
        let moves = state.moves();
        if moves.is_empty() {
            self.offer(state);
            return;
        }
        if self.budget == 0 {
            let mut s = state;
            while let Some(&(ri, g)) = s.moves().first() {
                s = s.eliminate(ri, g, self.names);
            }
            self.offer(s);
            return;
        }
        for (ri, g) in moves {
            self.budget = self.budget.saturating_sub(1);
            let child = state.eliminate(ri, g, self.names);
            if self.visited.insert(child.key()) {
                self.run(child);
            }
        }
    }
}

/// The cyclic rotation of a cyclically reduced word that starts at a
/// syllable boundary and lists the lowest generator first, preferring
/// positive powers, so `d^-1 b^2 d^-2` reads `b^2 d^-3`.
fn presentable_rotation(w: &Word) -> Word {
    let letters = w.letters();
    let n = letters.len();
    (0..n)
        .filter(|&k| {
            let (prev, cur) = (letters[(k + n - 1) % n], letters[k]);
            n == 1 || prev != cur
        })
        .map(|k| w.rotate(k))
        .min_by_key(|r| r.letters().iter().map(|l| (l.gen, -l.exp)).collect::<Vec<_>>())
        .unwrap_or_else(|| w.clone())
}

/// Simplifies `p` by Tietze moves and records how each eliminated generator
/// is expressed in the survivors.
pub fn simplify(p: &Presentation) -> SimplificationTrace {
    let names = &p.generators;
    let mut start = State::new(p);
    start.normalize(names);
    let mut search = Search { names, budget: SEARCH_BUDGET, visited: HashSet::new(), best: None };
    search.visited.insert(start.key());
    search.run(start);
    let (_, mut end) = search.best.expect("search visits at least one fixpoint");
    for i in 0..end.relators.len() {
        let rotated = presentable_rotation(&end.relators[i]);
        if rotated != end.relators[i] {
            end.steps.push(TietzeStep::RotateRelator {
                before: end.relators[i].format(names),
                after: rotated.format(names),
            });
            end.relators[i] = rotated;
        }
    }

    let survivors: Vec<usize> = (0..names.len()).filter(|&g| end.alive[g]).collect();
    let mut new_index = vec![usize::MAX; names.len()];
    for (k, &g) in survivors.iter().enumerate() {
        new_index[g] = k;
    }
    let remap = |w: &Word| w.map_generators(|g| new_index[g]);
    let presentation = Presentation {
        generators: survivors.iter().map(|&g| names[g].clone()).collect(),
        relators: end.relators.iter().map(remap).collect(),
    };
    let images = (0..names.len())
        .map(|g| match &end.images[g] {
            Some(w) => remap(w),
            None => Word::letter(new_index[g], 1),
        })
        .collect::<Vec<_>>();
    let substitutions = end.eliminated.iter().map(|&g| (names[g].clone(), images[g].clone())).collect();
    SimplificationTrace { presentation, substitutions, steps: end.steps, images, original_generators: names.clone() }
}

/// Outcome of [`is_trivial_certified`]. Triviality of a finitely presented
/// group is undecidable in general, so the answer may be `Unknown`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TrivialityVerdict {
    /// Simplification eliminated every generator.
    TrivialWithTrace(SimplificationTrace),
    /// The abelianization is nonzero.
    NotTrivial {
        abelianization: HomologyGroup,
    },
    Unknown(SimplificationTrace),
}

impl TrivialityVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            TrivialityVerdict::TrivialWithTrace(_) => "trivial-with-trace",
            TrivialityVerdict::NotTrivial { .. } => "not-trivial-abelian-witness",
            TrivialityVerdict::Unknown(_) => "unknown",
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, TrivialityVerdict::TrivialWithTrace(_))
    }
}

pub fn is_trivial_certified(p: &Presentation) -> TrivialityVerdict {
    let trace = simplify(p);
    if trace.presentation.generators.is_empty() {
        return TrivialityVerdict::TrivialWithTrace(trace);
    }
    let ab = p.abelianization();
    if !ab.is_trivial() {
        return TrivialityVerdict::NotTrivial { abelianization: ab };
    }
    TrivialityVerdict::Unknown(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::match_torus_relator;

    #[test]
    fn sub3_circle_group_is_trivial() {
        let p = Presentation::parse(&["α", "β"], &["α", "α^2 β^-1"]).unwrap();
        let t = simplify(&p);
        assert!(t.presentation.generators().is_empty());
        assert!(t.presentation.relators().is_empty());
        assert!(is_trivial_certified(&p).is_trivial());
    }

    #[test]
    fn mobius_boundary_wraps_twice() {
        let p = Presentation::parse(&["γ", "δ"], &["γ^2 δ^-1"]).unwrap();
        let t = simplify(&p);
        assert_eq!(t.presentation.generators(), &["γ".to_string()]);
        assert!(t.presentation.relators().is_empty());
        assert_eq!(t.substitution_for("δ"), Some(&Word::from_powers(&[(0, 2)])));
    }

    #[test]
    fn knot_group_reaches_torus_form() {
        let p =
            Presentation::parse(&["a", "b", "c", "d"], &["b c d^-1", "a b^-1 c^-1 b", "a c d", "a b d^-1"]).unwrap();
        let t = simplify(&p);
        assert_eq!(t.presentation.generators().len(), 2);
        assert_eq!(t.presentation.relators().len(), 1);
        assert_eq!(match_torus_relator(&t.presentation), Some((2, 3)));
        assert_eq!(t.presentation.generators(), &["b".to_string(), "d".to_string()]);
        assert_eq!(t.presentation.format_relator(0), "b^2 d^-3");
    }

    #[test]
    fn free_group_is_left_alone() {
        let p = Presentation::parse(&["x"], &[]).unwrap();
        let t = simplify(&p);
        assert_eq!(t.presentation, p);
        assert!(t.steps.is_empty());
        assert!(matches!(is_trivial_certified(&p), TrivialityVerdict::NotTrivial { .. }));
    }

    #[test]
    fn trefoil_relator_is_not_trivial() {
        let p = Presentation::parse(&["x", "y"], &["x^2 y^-3"]).unwrap();
        match is_trivial_certified(&p) {
            TrivialityVerdict::NotTrivial { abelianization } => assert_eq!(abelianization, HomologyGroup::free(1)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn perfect_group_is_unknown() {
        // Binary icosahedral group ⟨x, y | (xy)^2 = x^3 = y^5⟩: nontrivial but perfect.
        let p = Presentation::parse(&["x", "y"], &["x y x y x^-3", "x^3 y^-5"]).unwrap();
        assert!(p.abelianization().is_trivial());
        assert_eq!(is_trivial_certified(&p).label(), "unknown");
    }

    #[test]
    fn duplicate_and_empty_relators_dropped() {
        let p =
            Presentation::parse(&["x", "y"], &["x y x^-1 y^-1", "y x y^-1 x^-1", "x x^-1", "y^-1 x^-1 y x"]).unwrap();
        let t = simplify(&p);
        assert_eq!(t.presentation.relators().len(), 1);
        assert!(t.steps.iter().any(|s| matches!(s, TietzeStep::DropRelator { reason: DropReason::Empty, .. })));
        assert!(t.steps.iter().any(|s| matches!(s, TietzeStep::DropRelator { reason: DropReason::Duplicate, .. })));
    }

    #[test]
    fn map_word_sends_relators_to_consequences() {
        let p = Presentation::parse(&["γ", "δ"], &["γ^2 δ^-1"]).unwrap();
        let t = simplify(&p);
        assert!(t.map_word(&p.relators()[0]).is_empty());
    }
}
