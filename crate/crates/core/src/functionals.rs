//! The functional side of the classification.
//!
//! An operator with `δ∘R = l_r` is `R = I∘l_r + c` for the linear functional
//! `c(f) = R(f)(0)`, and `R` is Rota–Baxter iff
//!
//! ```text
//! c(f)c(g) + c(I(rf)g + fI(rg)) = 0        for all f, g.
//! ```
//!
//! In the coordinates `c_i = c(x^i)` and with `r = r_0 + ... + r_k x^k` this
//! becomes the quadratic system
//!
//! ```text
//! c_n c_m + Σ_{i=0..k} (1/(i+n+1) + 1/(i+m+1)) r_i c_{i+n+m+1} = 0.
//! ```
//!
//! The solutions `M_r` contain the curve `N_r = { c_{r,a} : f ↦ -I(rf)(a) }`,
//! whose points correspond to the operators `J_a ∘ l_r`. The instance with
//! `m = 0, n = t-1-k` solves for `c_t` as a polynomial `P_t` in lower
//! coordinates, and substituting every `P_t` reduces any other instance to a
//! polynomial `g_{m,n}` in `c_0..c_k` alone.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cell::RefCell;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactpoly::Poly;
use crate::multipoly::{MPoly, DEFAULT_DEGREE_CAP};
use crate::rat::Rat;
use crate::rbops::TruncOp;

/// Budget used by membership checks when the caller has no preference.
pub const DEFAULT_MEMBERSHIP_BUDGET: usize = 8;

/// A multiplier `r` together with the first `L` functional coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FunCoords {
    r: Poly,
    c: Vec<Rat>,
}

impl FunCoords {
    pub fn new(r: Poly, c: Vec<Rat>) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::ZeroMultiplier);
        }
        if c.is_empty() {
            return Err(Error::HeadLength { got: 0, expected: 1 });
        }
        Ok(FunCoords { r, c })
    }

    /// `c_i = R(x^i)(0)` for a truncated operator with a multiplier.
    pub fn from_operator(t: &TruncOp) -> Result<Self> {
        let r = t.derived_multiplier()?;
        let c = t.images().iter().map(|img| img.coeff(0)).collect();
        Ok(FunCoords { r, c })
    }

    /// The curve point `c_{r,a}`, first `len` coordinates.
    pub fn on_curve(r: &Poly, a: &Rat, len: usize) -> Result<Self> {
        let c = curve_symbolic(r, len).iter().map(|e| e.eval(a)).collect();
        FunCoords::new(r.clone(), c)
    }

    pub fn multiplier(&self) -> &Poly {
        &self.r
    }

    pub fn coords(&self) -> &[Rat] {
        &self.c
    }

    /// `c(p)` by linearity; needs `deg p < L`.
    pub fn apply(&self, p: &Poly) -> Result<Rat> {
        if let Some(d) = p.degree() {
            if d >= self.c.len() {
                return Err(Error::TruncationTooSmall { needed: d, available: self.c.len() - 1 });
            }
        }
        Ok(p.coeffs().iter().zip(&self.c).map(|(a, b)| a * b).sum())
    }

    /// `c(f)c(g) + c(I(rf)g + fI(rg))`.
    pub fn residual(&self, f: &Poly, g: &Poly) -> Result<Rat> {
        let arg = &(&(&self.r * f).integrate() * g) + &(f * &(&self.r * g).integrate());
        let linear = self.apply(&arg)?;
        Ok(self.apply(f)? * self.apply(g)? + linear)
    }

    /// The operator `I∘l_r + c` on `x^0 ..= x^n`.
    pub fn to_operator(&self, n: usize) -> Result<TruncOp> {
        if self.c.len() < n + 1 {
            return Err(Error::TruncationTooSmall { needed: n, available: self.c.len() - 1 });
        }
        let images = (0..=n).map(|i| &self.r.shift(i).integrate() + &Poly::constant(self.c[i].clone())).collect();
        TruncOp::new(images)
    }
}

/// Entry `i` is `-I(r x^i)`, read as a polynomial in the base point `a`;
/// its degree is `i + deg r + 1`.
pub fn curve_symbolic(r: &Poly, len: usize) -> Vec<Poly> {
    (0..len).map(|i| -r.shift(i).integrate()).collect()
}

fn unit_fraction(d: usize) -> Rat {
    Rat::new(BigInt::one(), BigInt::from(d))
}

/// Coefficient of `c_{i+n+m+1}` in the `(n, m)` instance, before `r_i`.
fn pair_weight(i: usize, n: usize, m: usize) -> Rat {
    unit_fraction(i + n + 1) + unit_fraction(i + m + 1)
}

/// The `(n, m)` instance of the quadratic system as a polynomial in the `c_i`.
pub fn system_equation(r: &Poly, n: usize, m: usize) -> MPoly {
    let mut eq = &MPoly::var(n) * &MPoly::var(m);
    for (i, ri) in r.coeffs().iter().enumerate() {
        if ri.is_zero() {
            continue;
        }
        let coef = pair_weight(i, n, m) * ri;
        eq = &eq + &MPoly::var(i + n + m + 1).scale(&coef);
    }
    eq
}

/// The `(n, m)` instance evaluated at numeric coordinates.
pub fn system_residual(r: &Poly, c: &[Rat], n: usize, m: usize) -> Result<Rat> {
    let top = n + m + r.degree().unwrap_or(0) + 1;
    if top >= c.len() {
        return Err(Error::TruncationTooSmall { needed: top, available: c.len().saturating_sub(1) });
    }
    let mut acc = &c[n] * &c[m];
    for (i, ri) in r.coeffs().iter().enumerate() {
        if !ri.is_zero() {
            acc += pair_weight(i, n, m) * ri * &c[i + n + m + 1];
        }
    }
    Ok(acc)
}

/// Elimination of the coordinates above `deg r` for one multiplier.
///
/// Caches every `P_t` it builds. The cache sits behind a `RefCell`, so an
/// `Eliminator` is meant to be owned by one thread; build one per worker.
#[derive(Debug)]
pub struct Eliminator {
    r: Poly,
    k: usize,
    cap: u32,
    cache: RefCell<BTreeMap<usize, MPoly>>,
}

impl Eliminator {
    pub fn new(r: &Poly) -> Result<Self> {
        let k = r.degree().ok_or(Error::ZeroMultiplier)?;
        Ok(Eliminator { r: r.clone(), k, cap: DEFAULT_DEGREE_CAP, cache: RefCell::new(BTreeMap::new()) })
    }

    pub fn with_degree_cap(mut self, cap: u32) -> Self {
        self.cap = cap;
        self
    }

    pub fn multiplier(&self) -> &Poly {
        &self.r
    }

    /// `P_t` with `c_t = P_t(c_0, ..., c_{t-1})`, from the instance
    /// `m = 0, n = t-1-k`. The coefficient of `c_t` there is
    /// `(1/t + 1/(k+1)) r_k`, never zero.
    pub fn elimination_poly(&self, t: usize) -> Result<MPoly> {
        if t <= self.k {
            return Err(Error::IndexTooSmall { t, k: self.k });
        }
        if let Some(p) = self.cache.borrow().get(&t) {
            return Ok(p.clone());
        }
        let n = t - 1 - self.k;
        let eq = system_equation(&self.r, n, 0);
        let lead = pair_weight(self.k, n, 0) * &self.r.coeffs()[self.k];
        let rest = &eq - &MPoly::var(t).scale(&lead);
        let p = rest.scale(&(-Rat::one() / lead));
        self.cache.borrow_mut().insert(t, p.clone());
        Ok(p)
    }

    /// `g_{m,n}`: the `(n, m)` instance with every `c_t`, `t > k`, replaced
    /// by `P_t`, highest index first.
    pub fn reduce(&self, n: usize, m: usize) -> Result<MPoly> {
        let mut eq = system_equation(&self.r, n, m);
        let top = eq.max_var().unwrap_or(0);
        for t in (self.k + 1..=top).rev() {
            if eq.contains_var(t) {
                let p = self.elimination_poly(t)?;
                eq = eq.subst(t, &p, self.cap)?;
            }
        }
        Ok(eq)
    }

    /// Whether `g_{m,n}` vanishes identically on the curve `N_r`.
    pub fn annihilated_on_curve(&self, n: usize, m: usize) -> Result<bool> {
        let g = self.reduce(n, m)?;
        let curve = curve_symbolic(&self.r, self.k + 1);
        Ok(g.eval_univariate(&curve)?.is_zero())
    }

    /// Extends `c_0..c_k` to `len` coordinates through `c_t = P_t(...)`.
    pub fn extend_head(&self, head: &[Rat], len: usize) -> Result<Vec<Rat>> {
        self.check_head(head)?;
        let mut c = head.to_vec();
        for t in self.k + 1..len {
            let next = self.elimination_poly(t)?.eval(&c)?;
            c.push(next);
        }
        Ok(c)
    }

    /// Whether the unique extension of `head` solves every instance with
    /// `n, m <= d`.
    pub fn member_mr(&self, head: &[Rat], d: usize) -> Result<bool> {
        // the (d, d) instance reaches c_{2d+k+1}
        let c = self.extend_head(head, 2 * d + self.k + 2)?;
        for m in 0..=d {
            for n in 0..=m {
                if !system_residual(&self.r, &c, n, m)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn check_head(&self, head: &[Rat]) -> Result<()> {
        if head.len() != self.k + 1 {
            return Err(Error::HeadLength { got: head.len(), expected: self.k + 1 });
        }
        Ok(())
    }
}

pub fn eliminate_p(r: &Poly, t: usize) -> Result<MPoly> {
    Eliminator::new(r)?.elimination_poly(t)
}

pub fn reduce_g(r: &Poly, n: usize, m: usize) -> Result<MPoly> {
    Eliminator::new(r)?.reduce(n, m)
}

pub fn verify_nr_annihilated(r: &Poly, n: usize, m: usize) -> Result<bool> {
    Eliminator::new(r)?.annihilated_on_curve(n, m)
}

pub fn membership_mr(r: &Poly, head: &[Rat], d: usize) -> Result<bool> {
    Eliminator::new(r)?.member_mr(head, d)
}

/// The base point `a` with `c_{r,a}` starting with `head`, if rational.
///
/// `head` needs at least `deg r + 1` entries; all of them are matched.
pub fn membership_nr(r: &Poly, head: &[Rat]) -> Result<Option<Rat>> {
    let k = r.degree().ok_or(Error::ZeroMultiplier)?;
    if head.len() < k + 1 {
        return Err(Error::HeadLength { got: head.len(), expected: k + 1 });
    }
    let curve = curve_symbolic(r, head.len());
    let first = &curve[0] - &Poly::constant(head[0].clone());
    Ok(first.rational_roots()?.into_iter().find(|a| curve.iter().zip(head).all(|(e, h)| e.eval(a) == *h)))
}
