//! Sparse multivariate polynomials over [`Rat`] in the variables
//! `c0, c1, c2, ...`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactpoly::Poly;
use crate::rat::Rat;

/// Variable index: `c_i` is variable `i`.
pub type Var = usize;

/// Default total-degree cap for capped multiplication and substitution.
pub const DEFAULT_DEGREE_CAP: u32 = 64;

/// Sparse exponent vector, sorted by variable, exponents positive.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of `c0`, then `c1`, and so on.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(alloc::vec![(v, 1)])
    }

    /// From `(var, exp)` pairs in any order; zero exponents are dropped and
    /// repeated variables merged.
    pub fn from_pairs(pairs: &[(Var, u32)]) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for &(v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn exponents(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, e)| e)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Splits off variable `v`: returns its exponent and the rest.
    fn split(&self, v: Var) -> (u32, Monomial) {
        let e = self.exponent(v);
        (e, Monomial(self.0.iter().copied().filter(|&(w, _)| w != v).collect()))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree().cmp(&other.total_degree()).then_with(|| {
            let (mut i, mut j) = (0, 0);
            while i < self.0.len() && j < other.0.len() {
                let (a, b) = (self.0[i], other.0[j]);
                match a.0.cmp(&b.0) {
                    // self has a positive exponent on an earlier variable
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal if a.1 != b.1 => return a.1.cmp(&b.1),
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                    }
                }
            }
            (self.0.len() - i).cmp(&(other.0.len() - j))
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::term(c, Monomial::one())
    }

    /// The variable `c_v`.
    pub fn var(v: Var) -> Self {
        Self::term(Rat::one(), Monomial::var(v))
    }

    pub fn term(c: Rat, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        // graded order: the last key has the largest total degree
        self.terms.keys().next_back().map(Monomial::total_degree)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn max_var(&self) -> Option<Var> {
        self.terms.keys().filter_map(|m| m.0.last().map(|&(v, _)| v)).max()
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    /// Product, failing if the result's total degree exceeds `cap`.
    pub fn checked_mul(&self, other: &MPoly, cap: u32) -> Result<MPoly> {
        if let (Some(a), Some(b)) = (self.total_degree(), other.total_degree()) {
            if a + b > cap {
                return Err(Error::DegreeOverflow { degree: a + b, cap });
            }
        }
        let mut out = MPoly::zero();
        for (m1, a) in &self.terms {
            for (m2, b) in &other.terms {
                out.add_term(m1.mul(m2), a * b);
            }
        }
        Ok(out)
    }

    /// Replaces every occurrence of `c_var` by `repl` and expands.
    pub fn subst(&self, var: Var, repl: &MPoly, cap: u32) -> Result<MPoly> {
        if !self.contains_var(var) {
            return Ok(self.clone());
        }
        let mut powers: Vec<MPoly> = alloc::vec![MPoly::one()];
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(var);
            while powers.len() <= e as usize {
                let next = powers[powers.len() - 1].checked_mul(repl, cap)?;
                powers.push(next);
            }
            let piece = MPoly::term(c.clone(), rest).checked_mul(&powers[e as usize], cap)?;
            out = &out + &piece;
        }
        Ok(out)
    }

    /// Evaluates at `point[i] = c_i`.
    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in &m.0 {
                let x = point.get(v).ok_or(Error::UnassignedVariable(v))?;
                t *= num_traits::pow(x.clone(), e as usize);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitutes the univariate polynomial `assign[i]` for `c_i`.
    pub fn eval_univariate(&self, assign: &[Poly]) -> Result<Poly> {
        let mut acc = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for &(v, e) in &m.0 {
                let x = assign.get(v).ok_or(Error::UnassignedVariable(v))?;
                for _ in 0..e {
                    t = &t * x;
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }
}

impl Add<&MPoly> for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Sub<&MPoly> for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self + &(-rhs)
    }
}

/// Uncapped product.
impl Mul<&MPoly> for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.checked_mul(rhs, u32::MAX).expect("uncapped product")
    }
}

/// Terms as `coef*c0^e0*c1^e1`, highest graded-lex term first.
impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            match (idx == 0, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if m.0.is_empty() {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            for (k, &(v, e)) in m.0.iter().enumerate() {
                if k > 0 {
                    f.write_str("*")?;
                }
                write!(f, "c{v}")?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}
