//! Dense univariate polynomials over [`Rat`].
//!
//! `coeffs[i]` is the coefficient of `x^i`. The vector is empty for the zero
//! polynomial and has a nonzero last entry otherwise, so derived equality is
//! polynomial equality.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{divisors, Rat};

/// Exponents above this are rejected by the text parser.
pub const MAX_PARSE_DEGREE: usize = 1 << 16;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn x() -> Self {
        Self::monomial(Rat::one(), 1)
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^n`.
    pub fn monomial(c: Rat, n: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rat::zero(); n + 1];
        coeffs[n] = c;
        Poly { coeffs }
    }

    /// From ascending coefficients; trailing zeros are dropped.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = Poly { coeffs };
        p.normalize();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Rat::from_integer(BigInt::from(c))).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rat> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    /// `None` stands for the degree of the zero polynomial, minus infinity.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiplication by `x^n`.
    pub fn shift(&self, n: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Formal derivative `x^n ↦ n x^{n-1}`.
    pub fn derive(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * Rat::from_integer(BigInt::from(i))).collect(),
        )
    }

    /// The constant-free antiderivative `I = J_0`.
    pub fn integrate(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rat::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / Rat::from_integer(BigInt::from(i + 1)));
        }
        Poly { coeffs }
    }

    /// Formal integration from `a`: the antiderivative vanishing at `a`,
    /// `x^n ↦ (x^{n+1} - a^{n+1}) / (n+1)`.
    pub fn integrate_at(&self, a: &Rat) -> Poly {
        let prim = self.integrate();
        let at_a = prim.eval(a);
        prim - Poly::constant(at_a)
    }

    /// Horner evaluation.
    pub fn eval(&self, t: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * t + c)
    }

    /// `p(mu*x + nu)`.
    pub fn affine_subst(&self, mu: &Rat, nu: &Rat) -> Poly {
        let lin = Poly::from_coeffs(vec![nu.clone(), mu.clone()]);
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| &(&acc * &lin) + &Poly::constant(c.clone()))
    }

    /// The interpolating polynomial of degree `< points.len()`.
    pub fn lagrange(points: &[(Rat, Rat)]) -> Result<Poly> {
        for (i, (b, _)) in points.iter().enumerate() {
            if points[..i].iter().any(|(c, _)| c == b) {
                return Err(Error::DuplicateAbscissa);
            }
        }
        let nodes: Vec<Rat> = points.iter().map(|(b, _)| b.clone()).collect();
        let mut acc = Poly::zero();
        for (l, (_, y)) in points.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            acc = &acc + &lagrange_selector(&nodes, l).scale(y);
        }
        Ok(acc)
    }

    /// Distinct rational roots in ascending order.
    ///
    /// Clears denominators, then tests every `±p/q` with `p` dividing the
    /// trailing and `q` the leading integer coefficient.
    pub fn rational_roots(&self) -> Result<Vec<Rat>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let ints = self.primitive_integer_coeffs();
        let lowest = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
        let f = &ints[lowest..];
        let mut roots = Vec::new();
        if lowest > 0 {
            roots.push(Rat::zero());
        }
        if f.len() > 1 {
            let at_one: BigInt = f.iter().sum();
            let at_minus_one: BigInt = f.iter().enumerate().map(|(i, c)| if i % 2 == 0 { c.clone() } else { -c }).sum();
            let ps = divisors(&f[0].magnitude().clone());
            let qs = divisors(&f[f.len() - 1].magnitude().clone());
            for q in &qs {
                let q = BigInt::from(q.clone());
                for p in &ps {
                    let p = BigInt::from(p.clone());
                    if !p.gcd(&q).is_one() {
                        continue;
                    }
                    for cand in [p.clone(), -p.clone()] {
                        if divides_or_zero(&(&q - &cand), &at_one)
                            && divides_or_zero(&(&q + &cand), &at_minus_one)
                            && homogeneous_eval(f, &cand, &q).is_zero()
                        {
                            roots.push(Rat::new(cand, q.clone()));
                        }
                    }
                }
            }
        }
        roots.sort();
        roots.dedup();
        Ok(roots)
    }

    /// Integer coefficients proportional to `self` with content one.
    fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        let lcm = self.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        let content = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if content.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &content).collect()
    }
}

/// `s_l = Π_{j≠l} (x - b_j) / (b_l - b_j)`: one at node `l`, zero at the
/// other nodes. Nodes must be pairwise distinct.
pub fn lagrange_selector(nodes: &[Rat], l: usize) -> Poly {
    let mut sel = Poly::one();
    for (j, b) in nodes.iter().enumerate() {
        if j == l {
            continue;
        }
        let denom = &nodes[l] - b;
        let factor = Poly::from_coeffs(vec![-b / &denom, Rat::one() / &denom]);
        sel = &sel * &factor;
    }
    sel
}

fn divides_or_zero(d: &BigInt, n: &BigInt) -> bool {
    if d.is_zero() {
        n.is_zero()
    } else {
        (n % d).is_zero()
    }
}

/// `Σ f_i p^i q^{n-i}`, zero iff `p/q` is a root.
fn homogeneous_eval(f: &[BigInt], p: &BigInt, q: &BigInt) -> BigInt {
    let n = f.len() - 1;
    let mut acc = f[n].clone();
    let mut qpow = BigInt::one();
    for c in f[..n].iter().rev() {
        qpow *= q;
        acc = acc * p + c * &qpow;
    }
    acc
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = long.coeffs.clone();
        for (c, d) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += d;
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { (&self).$m(&rhs) }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Terms in descending degree, e.g. `-1/2*x^2 + x - 3`; unit coefficients
/// are omitted on non-constant terms.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let mag = c.abs();
            if i == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            f.write_str("x")?;
            if i > 1 {
                write!(f, "^{i}")?;
            }
        }
        Ok(())
    }
}

/// Grammar: a sum of terms `[±] coef ['*'] ['x' ['^' exp]]` with `coef` of
/// the form `int['/'posint]`. Whitespace is ignored.
impl FromStr for Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Poly> {
        let src: Vec<(usize, u8)> = s.bytes().enumerate().filter(|(_, b)| !b.is_ascii_whitespace()).collect();
        if src.is_empty() {
            return Err(Error::Parse { pos: 0, msg: "empty polynomial" });
        }
        let mut cur = Cursor { src: &src, at: 0, len: s.len() };
        let mut coeffs: Vec<Rat> = Vec::new();
        let mut first = true;
        while !cur.done() {
            let negative = match cur.peek() {
                Some(b'+') => {
                    cur.bump();
                    false
                }
                Some(b'-') => {
                    cur.bump();
                    true
                }
                _ if first => false,
                _ => return Err(cur.error("expected '+' or '-' between terms")),
            };
            first = false;
            let coef = match cur.peek() {
                Some(b) if b.is_ascii_digit() => {
                    let num = cur.digits()?;
                    if cur.peek() == Some(b'/') {
                        cur.bump();
                        let den = cur.digits()?;
                        if den.is_zero() {
                            return Err(cur.error("zero denominator"));
                        }
                        Some(Rat::new(num, den))
                    } else {
                        Some(Rat::from_integer(num))
                    }
                }
                _ => None,
            };
            let starred = coef.is_some() && cur.peek() == Some(b'*');
            if starred {
                cur.bump();
            }
            let exp = if cur.peek() == Some(b'x') {
                cur.bump();
                if cur.peek() == Some(b'^') {
                    cur.bump();
                    let e = cur.digits()?;
                    let e: usize = e
                        .try_into()
                        .ok()
                        .filter(|&e| e <= MAX_PARSE_DEGREE)
                        .ok_or_else(|| cur.error("exponent too large"))?;
                    Some(e)
                } else {
                    Some(1)
                }
            } else {
                if starred {
                    return Err(cur.error("expected 'x' after '*'"));
                }
                None
            };
            if coef.is_none() && exp.is_none() {
                return Err(cur.error("expected a coefficient or 'x'"));
            }
            let mut c = coef.unwrap_or_else(Rat::one);
            if negative {
                c = -c;
            }
            let e = exp.unwrap_or(0);
            if coeffs.len() <= e {
                coeffs.resize(e + 1, Rat::zero());
            }
            coeffs[e] += c;
        }
        Ok(Poly::from_coeffs(coeffs))
    }
}

struct Cursor<'a> {
    src: &'a [(usize, u8)],
    at: usize,
    len: usize,
}

impl Cursor<'_> {
    fn done(&self) -> bool {
        self.at >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.at).map(|&(_, b)| b)
    }

    fn bump(&mut self) {
        self.at += 1;
    }

    fn pos(&self) -> usize {
        self.src.get(self.at).map_or(self.len, |&(p, _)| p)
    }

    fn error(&self, msg: &'static str) -> Error {
        Error::Parse { pos: self.pos(), msg }
    }

    fn digits(&mut self) -> Result<BigInt> {
        let mut buf = String::new();
        while let Some(b) = self.peek().filter(u8::is_ascii_digit) {
            buf.push(b as char);
            self.bump();
        }
        if buf.is_empty() {
            return Err(self.error("expected digits"));
        }
        BigInt::parse_bytes(buf.as_bytes(), 10).ok_or_else(|| self.error("expected digits"))
    }
}
