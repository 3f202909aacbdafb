//! Generators acting on the moduli of operators `J_a ∘ l_r`, and words in them.
//!
//! | generator      | action on `(a, r)`          | condition  |
//! |----------------|-----------------------------|------------|
//! | `HB{b, s}`     | `(a, r + r(b) s)`           | `s(b) = 0` |
//! | `HB2{b, s}`    | `(a, r + r(b)^2 s)`         | `s(b) = 0` |
//! | `GA{nu}`       | `(a - nu, r(x + nu))`       |            |
//! | `GM{mu}`       | `(a / mu, r(mu x))`         | `mu ≠ 0`   |
//!
//! `r(b)` is fixed by both `HB` kinds, which keeps the multiplier nonzero and
//! makes `HB{b, -s}` and `HB2{b, -s}` the inverses.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactpoly::Poly;
use crate::rat::{rational_kth_roots, Rat};
use crate::rbops::AnalyticOp;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    Hb { b: Rat, s: Poly },
    Hb2 { b: Rat, s: Poly },
    Ga { nu: Rat },
    Gm { mu: Rat },
}

/// A validated [`GeneratorKind`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator(GeneratorKind);

impl Generator {
    pub fn new(kind: GeneratorKind) -> Result<Self> {
        match &kind {
            GeneratorKind::Hb { b, s } | GeneratorKind::Hb2 { b, s } if !s.eval(b).is_zero() => {
                Err(Error::InvalidGenerator("s must vanish at b"))
            }
            GeneratorKind::Gm { mu } if mu.is_zero() => Err(Error::InvalidGenerator("mu must be nonzero")),
            _ => Ok(Generator(kind)),
        }
    }

    pub fn hb(b: Rat, s: Poly) -> Result<Self> {
        Generator::new(GeneratorKind::Hb { b, s })
    }

    pub fn hb2(b: Rat, s: Poly) -> Result<Self> {
        Generator::new(GeneratorKind::Hb2 { b, s })
    }

    pub fn ga(nu: Rat) -> Self {
        Generator(GeneratorKind::Ga { nu })
    }

    pub fn gm(mu: Rat) -> Result<Self> {
        Generator::new(GeneratorKind::Gm { mu })
    }

    pub fn kind(&self) -> &GeneratorKind {
        &self.0
    }

    pub fn apply(&self, op: &AnalyticOp) -> AnalyticOp {
        let (a, r) = (op.base_point(), op.multiplier());
        let (a, r) = match &self.0 {
            GeneratorKind::Hb { b, s } => (a.clone(), r + &s.scale(&r.eval(b))),
            GeneratorKind::Hb2 { b, s } => {
                let rb = r.eval(b);
                (a.clone(), r + &s.scale(&(&rb * &rb)))
            }
            GeneratorKind::Ga { nu } => (a - nu, r.affine_subst(&Rat::one(), nu)),
            GeneratorKind::Gm { mu } => (a / mu, r.affine_subst(mu, &Rat::zero())),
        };
        AnalyticOp::new(a, r).expect("generators keep the multiplier nonzero")
    }

    pub fn inverse(&self) -> Generator {
        Generator(match &self.0 {
            GeneratorKind::Hb { b, s } => GeneratorKind::Hb { b: b.clone(), s: -s },
            GeneratorKind::Hb2 { b, s } => GeneratorKind::Hb2 { b: b.clone(), s: -s },
            GeneratorKind::Ga { nu } => GeneratorKind::Ga { nu: -nu },
            GeneratorKind::Gm { mu } => GeneratorKind::Gm { mu: mu.recip() },
        })
    }
}

/// Generators applied left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Generator>);

impl Word {
    pub fn new(gens: Vec<Generator>) -> Self {
        Word(gens)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn generators(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, g: Generator) {
        self.0.push(g);
    }

    pub fn extend(&mut self, other: Word) {
        self.0.extend(other.0);
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn apply(&self, op: &AnalyticOp) -> AnalyticOp {
        self.0.iter().fold(op.clone(), |acc, g| g.apply(&acc))
    }

    pub fn apply_tuple(&self, ops: &[AnalyticOp]) -> Vec<AnalyticOp> {
        ops.iter().map(|op| self.apply(op)).collect()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(Generator::inverse).collect())
    }
}

impl From<Generator> for Word {
    fn from(g: Generator) -> Self {
        Word(alloc::vec![g])
    }
}

impl FromIterator<Generator> for Word {
    fn from_iter<I: IntoIterator<Item = Generator>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl IntoIterator for Word {
    type Item = Generator;
    type IntoIter = alloc::vec::IntoIter<Generator>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

/// `r(b)`.
pub fn pi_b(op: &AnalyticOp, b: &Rat) -> Rat {
    op.multiplier().eval(b)
}

/// `(a, r(b))`, constant along `HB` orbits at `b`.
pub fn modality_chart(op: &AnalyticOp, b: &Rat) -> (Rat, Rat) {
    (op.base_point().clone(), pi_b(op, b))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutOrbit {
    /// `[GA{nu}, GM{mu}]` sending the first operator to the second.
    Witness(Word),
    NotInOrbit,
}

/// Decides whether the affine substitutions relate `op1` to `op2` over `Q`.
pub fn same_aut_orbit(op1: &AnalyticOp, op2: &AnalyticOp) -> AutOrbit {
    let (r1, r2) = (op1.multiplier(), op2.multiplier());
    let (Some(k), Some(k2)) = (r1.degree(), r2.degree()) else {
        return AutOrbit::NotInOrbit;
    };
    if k != k2 {
        return AutOrbit::NotInOrbit;
    }
    let ratio = r2.leading_coeff().unwrap() / r1.leading_coeff().unwrap();
    let mus = if k == 0 { alloc::vec![Rat::one()] } else { rational_kth_roots(&ratio, k as u32) };
    for mu in mus {
        // a2 = (a1 - nu) / mu
        let nu = op1.base_point() - &mu * op2.base_point();
        let word = Word(alloc::vec![Generator::ga(nu), Generator(GeneratorKind::Gm { mu })]);
        if word.apply(op1) == *op2 {
            return AutOrbit::Witness(word);
        }
    }
    AutOrbit::NotInOrbit
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn op(a: i64, r: &str) -> AnalyticOp {
        AnalyticOp::new(rat(a), p(r)).unwrap()
    }

    #[test]
    fn generator_examples() {
        assert_eq!(Generator::hb(rat(1), p("x - 1")).unwrap().apply(&op(0, "1")), op(0, "x"));
        let fixed = op(3, "x^2 - 4");
        assert_eq!(Generator::hb(rat(2), p("x^2 - 2x")).unwrap().apply(&fixed), fixed);
        assert_eq!(Generator::ga(rat(2)).apply(&op(2, "x")), op(0, "x + 2"));
        assert_eq!(Generator::gm(rat(2)).unwrap().apply(&op(2, "x")), op(1, "2x"));
        // r(1)^2 = 4
        assert_eq!(Generator::hb2(rat(1), p("x - 1")).unwrap().apply(&op(0, "2")), op(0, "4x - 2"));
    }

    #[test]
    fn invariants_enforced() {
        assert!(Generator::hb(rat(1), p("x")).is_err());
        assert!(Generator::hb2(rat(0), p("1")).is_err());
        assert!(Generator::gm(rat(0)).is_err());
        assert!(Generator::hb(rat(0), Poly::zero()).is_ok());
    }

    #[test]
    fn words() {
        let o = op(1, "x^3 - x + 2");
        assert_eq!(Word::empty().apply(&o), o);
        let s = p("x^2 - 3x");
        let w = Word::new(alloc::vec![Generator::hb(rat(0), s.clone()).unwrap(), Generator::hb(rat(0), -&s).unwrap(),]);
        assert_eq!(w.apply(&o), o);
        assert_eq!(Word::from(Generator::ga(rat(3))).inverse(), Word::from(Generator::ga(rat(-3))));
        assert_eq!(
            Word::from(Generator::hb2(rat(3), s.clone()).unwrap()).inverse(),
            Word::from(Generator::hb2(rat(3), -&s).unwrap())
        );
        assert_eq!(Word::empty().inverse(), Word::empty());
        let mixed = Word::new(alloc::vec![
            Generator::hb2(rat(3), s).unwrap(),
            Generator::gm(rat(-2)).unwrap(),
            Generator::ga(rat(5)),
        ]);
        assert_eq!(mixed.concat(&mixed.inverse()).apply(&o), o);
        assert_eq!(mixed.inverse().concat(&mixed).apply(&o), o);
    }

    #[test]
    fn charts() {
        assert_eq!(pi_b(&op(0, "x"), &rat(2)), rat(2));
        assert_eq!(pi_b(&op(0, "x^2 - 1"), &rat(-1)), rat(0));
        assert_eq!(modality_chart(&op(2, "x"), &rat(1)), (rat(2), rat(1)));
        let o = op(4, "x^2 + x");
        let moved = Generator::hb(rat(1), p("x^3 - 1")).unwrap().apply(&o);
        assert_eq!(modality_chart(&moved, &rat(1)), modality_chart(&o, &rat(1)));
    }

    #[test]
    fn aut_orbits() {
        let (o1, o2) = (op(0, "x"), op(1, "2x - 2"));
        match same_aut_orbit(&o1, &o2) {
            AutOrbit::Witness(w) => assert_eq!(w.apply(&o1), o2),
            AutOrbit::NotInOrbit => panic!("expected a witness"),
        }
        match same_aut_orbit(&o1, &o1) {
            AutOrbit::Witness(w) => assert_eq!(w.apply(&o1), o1),
            AutOrbit::NotInOrbit => panic!("expected a witness"),
        }
        assert_eq!(same_aut_orbit(&op(0, "x"), &op(0, "x^2")), AutOrbit::NotInOrbit);
        // lead ratio 2 has no rational square root
        assert_eq!(same_aut_orbit(&op(0, "x^2"), &op(0, "2x^2")), AutOrbit::NotInOrbit);
        assert!(matches!(same_aut_orbit(&op(0, "x^2"), &op(5, "4x^2 - 40x + 100")), AutOrbit::Witness(_)));
        assert_eq!(same_aut_orbit(&op(0, "x^2"), &op(5, "4x^2")), AutOrbit::NotInOrbit);
        assert!(matches!(same_aut_orbit(&op(0, "3"), &op(7, "3")), AutOrbit::Witness(_)));
        assert_eq!(same_aut_orbit(&op(0, "3"), &op(7, "2")), AutOrbit::NotInOrbit);
    }
}
