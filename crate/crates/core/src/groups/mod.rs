//! Free-group words, finite presentations and their invariants.

mod tietze;
mod torus;

use std::fmt;
use std::ops::Mul;

use thiserror::Error;

use crate::homology::HomologyGroup;
use crate::smith::{smith_normal_form, IntegerMatrix};

pub use tietze::{is_trivial_certified, simplify, DropReason, SimplificationTrace, TietzeStep, TrivialityVerdict};
pub use torus::{
    equal_in_trefoil_group, match_torus_relator, torus_relator_shape, trefoil_normal_form, Syllable, TorusKnotGroup,
    TorusNormalForm, TorusRelatorShape, TrefoilNormalForm,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("letter refers to generator {gen}, but only {count} generators exist")]
    UnknownGenerator { gen: usize, count: usize },
    #[error("unknown generator name `{0}`")]
    UnknownName(String),
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("exponent must be +1 or -1, got {0}")]
    BadExponent(i64),
    #[error("cannot parse `{0}` as a letter")]
    BadToken(String),
    #[error("word uses generator {0}, outside the two-generator group")]
    ForeignGenerator(usize),
}

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    /// Either `1` or `-1`.
    pub exp: i8,
}

impl Letter {
    pub fn new(gen: usize, exp: i8) -> Self {
        assert!(exp == 1 || exp == -1, "letter exponent must be ±1");
        Letter { gen, exp }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, exp: -self.exp }
    }
}

/// A word in the free group; the empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// Builds a word from `(generator, ±1)` pairs. Panics on other exponents.
    pub fn from_letters(letters: impl IntoIterator<Item = (usize, i8)>) -> Self {
        Word(letters.into_iter().map(|(g, e)| Letter::new(g, e)).collect())
    }

    /// Builds a word from `(generator, power)` pairs, e.g. `[(0, 2), (1, -3)]`
    /// for `x^2 y^-3`.
    pub fn from_powers(powers: &[(usize, i64)]) -> Self {
        let mut letters = Vec::new();
        for &(g, k) in powers {
            let e = if k < 0 { -1 } else { 1 };
            letters.extend(std::iter::repeat_n(Letter::new(g, e), k.unsigned_abs() as usize));
        }
        Word(letters)
    }

    pub fn letter(gen: usize, exp: i8) -> Self {
        Word(vec![Letter::new(gen, exp)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            out.extend_from_slice(&base.0);
        }
        Word(out)
    }

    /// Cancels adjacent inverse pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Free reduction followed by stripping inverse pairs from the two ends.
    pub fn cyclic_reduce(&self) -> Word {
        let w = self.free_reduce().0;
        let (mut lo, mut hi) = (0, w.len());
        while hi - lo >= 2 && w[lo] == w[hi - 1].inverse() {
            lo += 1;
            hi -= 1;
        }
        Word(w[lo..hi].to_vec())
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[0] != p[1].inverse())
    }

    /// Number of letters involving `gen`, regardless of sign.
    pub fn occurrences(&self, gen: usize) -> usize {
        self.0.iter().filter(|l| l.gen == gen).count()
    }

    pub fn exponent_sum(&self, gen: usize) -> i64 {
        self.0.iter().filter(|l| l.gen == gen).map(|l| l.exp as i64).sum()
    }

    /// Replaces every occurrence of `gen` by `replacement` (and of its
    /// inverse by the inverse of `replacement`), then freely reduces.
    pub fn substitute(&self, gen: usize, replacement: &Word) -> Word {
        let inv = replacement.inverse();
        let mut out = Vec::with_capacity(self.len());
        for &l in &self.0 {
            if l.gen == gen {
                out.extend_from_slice(if l.exp > 0 { &replacement.0 } else { &inv.0 });
            } else {
                out.push(l);
            }
        }
        Word(out).free_reduce()
    }

    /// Applies `f` to every generator index.
    pub fn map_generators(&self, f: impl Fn(usize) -> usize) -> Word {
        Word(self.0.iter().map(|l| Letter { gen: f(l.gen), exp: l.exp }).collect())
    }

    /// Rotation by `k` letters to the left.
    pub fn rotate(&self, k: usize) -> Word {
        let mut v = self.0.clone();
        if !v.is_empty() {
            let k = k % v.len();
            v.rotate_left(k);
        }
        Word(v)
    }

    /// Least representative (by letter order) among all cyclic rotations of
    /// the cyclic reduction and of its inverse. Two relators define the same
    /// normal closure element up to conjugation and inversion iff their
    /// canonical forms agree.
    pub fn cyclic_canonical(&self) -> Word {
        let w = self.cyclic_reduce();
        let inv = w.inverse();
        (0..w.len().max(1)).flat_map(|k| [w.rotate(k), inv.rotate(k)]).min().unwrap_or_default()
    }

    /// Maximal runs of a single generator with a single sign, as
    /// `(generator, power)`.
    pub fn syllables(&self) -> Vec<(usize, i64)> {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for l in &self.0 {
            match out.last_mut() {
                Some((g, k)) if *g == l.gen && (*k > 0) == (l.exp > 0) => *k += l.exp as i64,
                _ => out.push((l.gen, l.exp as i64)),
            }
        }
        out
    }

    /// Syllable count of the word read cyclically.
    pub fn cyclic_syllable_count(&self) -> usize {
        let s = self.syllables();
        match (s.first(), s.last()) {
            (Some(a), Some(b)) if s.len() > 1 && a.0 == b.0 && (a.1 > 0) == (b.1 > 0) => s.len() - 1,
            _ => s.len(),
        }
    }

    /// Renders the word with powers, e.g. `b^2 d^-3`; the empty word is `1`.
    pub fn format(&self, names: &[String]) -> String {
        if self.is_empty() {
            return "1".into();
        }
        self.syllables()
            .iter()
            .map(|&(g, k)| {
                let name = names.get(g).cloned().unwrap_or_else(|| format!("g{g}"));
                if k == 1 {
                    name
                } else {
                    format!("{name}^{k}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses whitespace-separated tokens `name` or `name^k`; `1` is the
    /// empty word.
    pub fn parse(text: &str, names: &[String]) -> Result<Word, GroupError> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, power) = match tok.split_once('^') {
                Some((n, p)) => (n, p.parse::<i64>().map_err(|_| GroupError::BadToken(tok.into()))?),
                None => (tok, 1),
            };
            let gen = names.iter().position(|n| n == name).ok_or_else(|| GroupError::UnknownName(name.into()))?;
            letters.extend(Word::from_powers(&[(gen, power)]).0);
        }
        Ok(Word(letters))
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&rhs.0);
        Word(v)
    }
}

impl Mul for Word {
    type Output = Word;

    fn mul(mut self, rhs: Word) -> Word {
        self.0.extend(rhs.0);
        self
    }
}

/// `⟨generators | relators⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, GroupError> {
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(GroupError::DuplicateName(g.clone()));
            }
        }
        let count = generators.len();
        for r in &relators {
            if let Some(l) = r.letters().iter().find(|l| l.gen >= count) {
                return Err(GroupError::UnknownGenerator { gen: l.gen, count });
            }
        }
        Ok(Presentation { generators, relators })
    }

    /// Parses relators written as in [`Word::parse`].
    pub fn parse(generators: &[&str], relators: &[&str]) -> Result<Self, GroupError> {
        let names: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
        let relators = relators.iter().map(|r| Word::parse(r, &names)).collect::<Result<_, _>>()?;
        Self::new(names, relators)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn format_relator(&self, i: usize) -> String {
        self.relators[i].format(&self.generators)
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.format(&self.generators)
    }

    /// Same presentation with relators permuted: `order[k]` is the index of
    /// the relator placed at position `k`.
    pub fn with_relator_order(&self, order: &[usize]) -> Presentation {
        Presentation {
            generators: self.generators.clone(),
            relators: order.iter().map(|&i| self.relators[i].clone()).collect(),
        }
    }

    /// Relator exponent sums: rows are generators, columns relators.
    pub fn exponent_matrix(&self) -> IntegerMatrix {
        let rows: Vec<Vec<i64>> =
            (0..self.generators.len()).map(|g| self.relators.iter().map(|r| r.exponent_sum(g)).collect()).collect();
        IntegerMatrix::from_rows_with_cols(&rows, self.relators.len())
    }

    /// Abelianization as `Z^rank ⊕ torsion`, via the Smith normal form of the
    /// exponent matrix.
    pub fn abelianization(&self) -> HomologyGroup {
        let snf = smith_normal_form(&self.exponent_matrix());
        HomologyGroup { betti: self.generators.len() - snf.rank(), torsion: snf.torsion() }
    }

    /// True if some bijection of generators carries the relators of `self`
    /// onto those of `other` as a multiset of exact words.
    pub fn matches_up_to_renaming(&self, other: &Presentation) -> bool {
        let n = self.generators.len();
        if n != other.generators.len() || self.relators.len() != other.relators.len() {
            return false;
        }
        let mut target = other.relators.clone();
        target.sort();
        permutations(n).into_iter().any(|perm| {
            let mut mapped: Vec<Word> = self.relators.iter().map(|r| r.map_generators(|g| perm[g])).collect();
            mapped.sort();
            mapped == target
        })
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = (0..self.relators.len()).map(|i| self.format_relator(i)).collect();
        write!(f, "⟨{} | {}⟩", self.generators.join(", "), rels.join(", "))
    }
}

/// Free abelian rank and torsion of `⟨generators | relators⟩`.
pub fn abelianization(p: &Presentation) -> HomologyGroup {
    p.abelianization()
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn names(n: &[&str]) -> Vec<String> {
        n.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn free_reduce_examples() {
        let ab = names(&["α", "β"]);
        let w = Word::parse("α α α^-1", &ab).unwrap();
        assert_eq!(w.free_reduce(), Word::letter(0, 1));
        assert!(Word::from_letters([(0, 1), (0, -1)]).free_reduce().is_empty());
        let bd = names(&["b", "d"]);
        let w = Word::parse("b^-2 d b^2 d^-1", &bd).unwrap();
        assert_eq!(w.free_reduce(), w);
    }

    #[test]
    fn cyclic_reduce_examples() {
        let xy = names(&["x", "y"]);
        assert_eq!(Word::parse("x^-1 y x", &xy).unwrap().cyclic_reduce(), Word::letter(1, 1));
        let w = Word::parse("x^2 y^-1", &xy).unwrap();
        assert_eq!(w.cyclic_reduce(), w);
        assert!(Word::empty().cyclic_reduce().is_empty());
        assert!(Word::parse("x y y^-1 x^-1", &xy).unwrap().cyclic_reduce().is_empty());
    }

    #[test]
    fn abelianization_examples() {
        let p = Presentation::parse(&["α", "β"], &["α", "α^2 β^-1"]).unwrap();
        assert_eq!(p.exponent_matrix().to_i64_rows().unwrap(), vec![vec![1, 2], vec![0, -1]]);
        assert_eq!(p.abelianization(), HomologyGroup::free(0));

        let p = Presentation::parse(&["b", "d"], &["b^2 d^-3"]).unwrap();
        assert_eq!(p.abelianization(), HomologyGroup::free(1));

        let p = Presentation::parse(&["x"], &[]).unwrap();
        assert_eq!(p.abelianization(), HomologyGroup::free(1));

        let p = Presentation::parse(&["x", "y"], &["x^2", "y^3", "x y x^-1 y^-1"]).unwrap();
        assert_eq!(p.abelianization(), HomologyGroup { betti: 0, torsion: vec![BigInt::from(6)] });
    }

    #[test]
    fn presentation_rejects_foreign_letters() {
        let err = Presentation::new(names(&["x"]), vec![Word::letter(1, 1)]).unwrap_err();
        assert_eq!(err, GroupError::UnknownGenerator { gen: 1, count: 1 });
        assert!(Presentation::new(names(&["x", "x"]), vec![]).is_err());
    }

    #[test]
    fn format_and_parse_agree() {
        let n = names(&["b", "d"]);
        let w = Word::parse("b^2 d^-3", &n).unwrap();
        assert_eq!(w.format(&n), "b^2 d^-3");
        assert_eq!(Word::empty().format(&n), "1");
        assert!(Word::parse("q", &n).is_err());
        assert!(Word::parse("b^x", &n).is_err());
    }

    #[test]
    fn canonical_identifies_rotations_and_inverses() {
        let n = names(&["b", "d"]);
        let a = Word::parse("b^2 d^-3", &n).unwrap();
        let b = Word::parse("d^-1 b^2 d^-2", &n).unwrap();
        let c = Word::parse("d^3 b^-2", &n).unwrap();
        assert_eq!(a.cyclic_canonical(), b.cyclic_canonical());
        assert_eq!(a.cyclic_canonical(), c.cyclic_canonical());
        assert_eq!(a.cyclic_syllable_count(), 2);
        assert_eq!(b.cyclic_syllable_count(), 2);
    }

    #[test]
    fn renaming_match() {
        let p = Presentation::parse(&["α", "β"], &["α", "α^2 β^-1"]).unwrap();
        let q = Presentation::parse(&["u", "v"], &["v^2 u^-1", "v"]).unwrap();
        assert!(p.matches_up_to_renaming(&q));
        let r = Presentation::parse(&["u", "v"], &["v^2 u^-1", "u"]).unwrap();
        assert!(!p.matches_up_to_renaming(&r));
    }
}
