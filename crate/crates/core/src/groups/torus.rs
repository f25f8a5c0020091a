//! Torus-knot groups `⟨x, y | x^p = y^q⟩`.
//!
//! `z = x^p = y^q` is central and the quotient by it is the free product
//! `Z/p * Z/q`, so every element is uniquely `z^k` times an alternating
//! product of syllables `x^i` (`0 < i < p`) and `y^j` (`0 < j < q`).

use serde::Serialize;

use super::{GroupError, Letter, Presentation, Word};

/// Which generator plays `x` (exponent `p`) and which plays `y`
/// (exponent `q`) in a relator of the form `x^±p y^±q`, `2 <= p < q`.
/// The flips record which generators must be inverted to reach the form
/// `x^p y^-q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorusRelatorShape {
    pub p: u32,
    pub q: u32,
    pub x: usize,
    pub y: usize,
    pub flip_x: bool,
    pub flip_y: bool,
}

impl TorusRelatorShape {
    pub fn group(&self) -> TorusKnotGroup {
        TorusKnotGroup::new(self.p, self.q)
    }

    /// Rewrites a word in the presentation's generators as a word in the
    /// standard generators `x` (0) and `y` (1) of [`TorusKnotGroup`].
    pub fn to_standard(&self, w: &Word) -> Word {
        let letters = w
            .letters()
            .iter()
            .map(|l| {
                let (gen, flip) = if l.gen == self.x { (0, self.flip_x) } else { (1, self.flip_y) };
                Letter::new(gen, if flip { -l.exp } else { l.exp })
            })
            .collect();
        Word::new(letters)
    }
}

/// Recognises a two-generator, one-relator presentation whose relator is,
/// up to rotation, inversion, swapping and inverting generators, `x^p y^-q`
/// with `2 <= p < q`.
pub fn torus_relator_shape(p: &Presentation) -> Option<TorusRelatorShape> {
    if p.generators().len() != 2 || p.relators().len() != 1 {
        return None;
    }
    let w = p.relators()[0].cyclic_reduce();
    let mut syl = w.syllables();
    // Fold a syllable split across the ends of the word.
    if syl.len() > 2 {
        let (first, last) = (syl[0], syl[syl.len() - 1]);
        if first.0 == last.0 && (first.1 > 0) == (last.1 > 0) {
            syl.pop();
            syl[0].1 += last.1;
        }
    }
    let [(g1, e1), (g2, e2)] = syl[..] else { return None };
    if g1 == g2 {
        return None;
    }
    let ((x, ex), (y, ey)) =
        if e1.unsigned_abs() <= e2.unsigned_abs() { ((g1, e1), (g2, e2)) } else { ((g2, e2), (g1, e1)) };
    let (p, q) = (ex.unsigned_abs() as u32, ey.unsigned_abs() as u32);
    (2 <= p && p < q).then_some(TorusRelatorShape { p, q, x, y, flip_x: ex < 0, flip_y: ey > 0 })
}

/// `(p, q)` if the presentation is syntactically a torus-knot group.
pub fn match_torus_relator(p: &Presentation) -> Option<(u32, u32)> {
    torus_relator_shape(p).map(|s| (s.p, s.q))
}

/// A power of one generator in a normal-form tail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Syllable {
    /// 0 for `x`, 1 for `y`.
    pub gen: usize,
    pub power: u32,
}

/// `z^central · tail` with `tail` alternating between `x` and `y` syllables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TorusNormalForm {
    pub central: i64,
    pub tail: Vec<Syllable>,
}

/// Normal form in the trefoil group `⟨x, y | x^2 = y^3⟩`.
pub type TrefoilNormalForm = TorusNormalForm;

impl TorusNormalForm {
    pub fn is_identity(&self) -> bool {
        self.central == 0 && self.tail.is_empty()
    }

    /// Renders as e.g. `z^-1 · x y^2`.
    pub fn format(&self) -> String {
        let tail: Vec<String> = self
            .tail
            .iter()
            .map(|s| {
                let n = if s.gen == 0 { "x" } else { "y" };
                if s.power == 1 {
                    n.to_string()
                } else {
                    format!("{n}^{}", s.power)
                }
            })
            .collect();
        match (self.central, tail.is_empty()) {
            (0, true) => "1".into(),
            (0, false) => tail.join(" "),
            (k, true) => format!("z^{k}"),
            (k, false) => format!("z^{k} · {}", tail.join(" ")),
        }
    }
}

/// The group `⟨x, y | x^p = y^q⟩`; generator 0 is `x`, generator 1 is `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorusKnotGroup {
    pub p: u32,
    pub q: u32,
}

impl TorusKnotGroup {
    pub const TREFOIL: TorusKnotGroup = TorusKnotGroup { p: 2, q: 3 };

    pub fn new(p: u32, q: u32) -> Self {
        assert!(p >= 2 && q >= 2, "torus knot exponents must be at least 2");
        TorusKnotGroup { p, q }
    }

    fn order(&self, gen: usize) -> u32 {
        if gen == 0 {
            self.p
        } else {
            self.q
        }
    }

    /// Rewrites `x⁻¹ → x^(p-1) z⁻¹`, `y⁻¹ → y^(q-1) z⁻¹`, collapses
    /// `x^p → z` and `y^q → z`, and collects the central powers.
    pub fn normal_form(&self, w: &Word) -> Result<TorusNormalForm, GroupError> {
        let mut central = 0i64;
        let mut tail: Vec<Syllable> = Vec::new();
        for l in w.letters() {
            if l.gen > 1 {
                return Err(GroupError::ForeignGenerator(l.gen));
            }
            let order = self.order(l.gen);
            let power = if l.exp > 0 {
                1
            } else {
                central -= 1;
                order - 1
            };
            if power == 0 {
                continue;
            }
            match tail.last_mut() {
                Some(top) if top.gen == l.gen => {
                    top.power += power;
                    if top.power >= order {
                        top.power -= order;
                        central += 1;
                    }
                    if top.power == 0 {
                        tail.pop();
                    }
                }
                _ => tail.push(Syllable { gen: l.gen, power }),
            }
        }
        Ok(TorusNormalForm { central, tail })
    }

    pub fn equal(&self, a: &Word, b: &Word) -> Result<bool, GroupError> {
        Ok(self.normal_form(a)? == self.normal_form(b)?)
    }

    /// The defining relator `x^p y^-q`.
    pub fn relator(&self) -> Word {
        Word::from_powers(&[(0, self.p as i64), (1, -(self.q as i64))])
    }

    /// The central element `z = x^p`.
    pub fn center(&self) -> Word {
        Word::from_powers(&[(0, self.p as i64)])
    }
}

pub fn trefoil_normal_form(w: &Word) -> Result<TrefoilNormalForm, GroupError> {
    TorusKnotGroup::TREFOIL.normal_form(w)
}

pub fn equal_in_trefoil_group(a: &Word, b: &Word) -> Result<bool, GroupError> {
    TorusKnotGroup::TREFOIL.equal(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy(s: &str) -> Word {
        Word::parse(s, &["x".to_string(), "y".to_string()]).unwrap()
    }

    #[test]
    fn relator_is_identity() {
        assert!(trefoil_normal_form(&xy("x^2 y^-3")).unwrap().is_identity());
    }

    #[test]
    fn single_letter() {
        let nf = trefoil_normal_form(&xy("x")).unwrap();
        assert_eq!(nf, TorusNormalForm { central: 0, tail: vec![Syllable { gen: 0, power: 1 }] });
        assert_eq!(nf.format(), "x");
    }

    #[test]
    fn inverse_letters() {
        let nf = trefoil_normal_form(&xy("y^-1")).unwrap();
        assert_eq!(nf, TorusNormalForm { central: -1, tail: vec![Syllable { gen: 1, power: 2 }] });
        assert_eq!(nf.format(), "z^-1 · y^2");
    }

    #[test]
    fn product_collapses_to_x() {
        let w = xy("y^-1 x x^-1 y^2 y^-1 x");
        assert_eq!(trefoil_normal_form(&w).unwrap(), trefoil_normal_form(&xy("x")).unwrap());
    }

    #[test]
    fn braid_relation() {
        let s = xy("y^-1 x");
        let t = xy("x^-1 y^2");
        let sts = &(&s * &t) * &s;
        let tst = &(&t * &s) * &t;
        assert!(equal_in_trefoil_group(&sts, &tst).unwrap());
        assert!(!equal_in_trefoil_group(&s, &t).unwrap());
    }

    #[test]
    fn x_and_y_differ() {
        assert!(!equal_in_trefoil_group(&xy("x"), &xy("y")).unwrap());
    }

    #[test]
    fn center_commutes() {
        let z = xy("x^2");
        let x = xy("x");
        assert!(equal_in_trefoil_group(&(&z * &x), &(&x * &z)).unwrap());
        let y = xy("y");
        assert!(equal_in_trefoil_group(&(&z * &y), &(&y * &z)).unwrap());
    }

    #[test]
    fn foreign_generator_rejected() {
        assert_eq!(trefoil_normal_form(&Word::letter(2, 1)).unwrap_err(), GroupError::ForeignGenerator(2));
    }

    #[test]
    fn torus_shapes() {
        let p = Presentation::parse(&["b", "d"], &["b^2 d^-3"]).unwrap();
        assert_eq!(match_torus_relator(&p), Some((2, 3)));
        let p = Presentation::parse(&["b", "d"], &["d^-3 b^2"]).unwrap();
        assert_eq!(match_torus_relator(&p), Some((2, 3)));
        let p = Presentation::parse(&["b", "d"], &["d^-1 b^2 d^-2"]).unwrap();
        assert_eq!(match_torus_relator(&p), Some((2, 3)));
        let p = Presentation::parse(&["u", "v"], &["v^5 u^2"]).unwrap();
        assert_eq!(
            torus_relator_shape(&p),
            Some(TorusRelatorShape { p: 2, q: 5, x: 0, y: 1, flip_x: false, flip_y: true })
        );
        let shape = torus_relator_shape(&p).unwrap();
        let std = shape.to_standard(&p.relators()[0]);
        assert!(shape.group().normal_form(&std).unwrap().is_identity());
        let p = Presentation::parse(&["x"], &["x"]).unwrap();
        assert_eq!(match_torus_relator(&p), None);
        let p = Presentation::parse(&["x", "y"], &["x y x^-1 y^-1"]).unwrap();
        assert_eq!(match_torus_relator(&p), None);
        let p = Presentation::parse(&["x", "y"], &["x y^-3"]).unwrap();
        assert_eq!(match_torus_relator(&p), None);
    }

    #[test]
    fn general_torus_group() {
        let g = TorusKnotGroup::new(3, 5);
        assert!(g.normal_form(&g.relator()).unwrap().is_identity());
        let x = Word::letter(0, 1);
        let conj = &(&x * &g.relator()) * &x.inverse();
        assert!(g.normal_form(&conj).unwrap().is_identity());
    }
}
