//! Rota–Baxter operators on `Q[x]`: the analytic form `J_a ∘ l_r`, truncated
//! generic operators, identity residuals and canonicalization.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactpoly::Poly;
use crate::rat::Rat;

/// The moduli point `(a, r)` of the operator `f ↦ J_a(r f)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AnalyticOp {
    a: Rat,
    r: Poly,
}

impl AnalyticOp {
    pub fn new(a: Rat, r: Poly) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::ZeroMultiplier);
        }
        Ok(AnalyticOp { a, r })
    }

    /// Integration base point `a`.
    pub fn base_point(&self) -> &Rat {
        &self.a
    }

    /// Multiplier `r`, never zero.
    pub fn multiplier(&self) -> &Poly {
        &self.r
    }

    /// `J_a(r f)`.
    pub fn apply(&self, f: &Poly) -> Poly {
        (&self.r * f).integrate_at(&self.a)
    }

    /// Images of `x^0 ..= x^n`.
    pub fn to_trunc(&self, n: usize) -> TruncOp {
        TruncOp { images: (0..=n).map(|i| self.apply(&Poly::monomial(Rat::one(), i))).collect() }
    }

    /// Truncation degree large enough for `is_rb_upto(_, d)`.
    pub fn sufficient_truncation(&self, d: usize) -> usize {
        2 * d + self.r.degree().unwrap_or(0) + 1
    }
}

/// A linear operator known on the monomials `x^0 ..= x^N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncOp {
    images: Vec<Poly>,
}

impl TruncOp {
    /// `images[n]` is the image of `x^n`; at least one image is required.
    pub fn new(images: Vec<Poly>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::TruncationTooSmall { needed: 0, available: 0 });
        }
        Ok(TruncOp { images })
    }

    pub fn identity(n: usize) -> Self {
        TruncOp { images: (0..=n).map(|i| Poly::monomial(Rat::one(), i)).collect() }
    }

    pub fn zero(n: usize) -> Self {
        TruncOp { images: alloc::vec![Poly::zero(); n + 1] }
    }

    /// The non-injective operator sending `x^{2n}` to zero and `x^{2n+1}`
    /// to `x^{2n+2} / (2n+2)`.
    pub fn odd_halving(n: usize) -> Self {
        let images = (0..=n)
            .map(|i| {
                if i % 2 == 0 {
                    Poly::zero()
                } else {
                    Poly::monomial(Rat::new(BigInt::one(), BigInt::from(i + 1)), i + 1)
                }
            })
            .collect();
        TruncOp { images }
    }

    /// Truncation degree `N`.
    pub fn truncation(&self) -> usize {
        self.images.len() - 1
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    fn need(&self, degree: usize) -> Result<()> {
        if degree > self.truncation() {
            return Err(Error::TruncationTooSmall { needed: degree, available: self.truncation() });
        }
        Ok(())
    }

    /// The operator applied by linearity to `p` with `deg p <= N`.
    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        if let Some(d) = p.degree() {
            self.need(d)?;
        }
        Ok(p.coeffs()
            .iter()
            .zip(&self.images)
            .filter(|(c, _)| !c.is_zero())
            .fold(Poly::zero(), |acc, (c, img)| &acc + &img.scale(c)))
    }

    /// `R(x^n)R(x^m) - R(R(x^n)x^m + x^n R(x^m)) - λ R(x^{n+m})`.
    ///
    /// Every image the expansion touches must lie inside the truncation;
    /// nothing is silently dropped.
    pub fn rb_residual(&self, lambda: &Rat, n: usize, m: usize) -> Result<Poly> {
        self.need(n.max(m))?;
        self.need(n + m)?;
        let rn = &self.images[n];
        let rm = &self.images[m];
        if let Some(d) = rn.degree() {
            self.need(d + m)?;
        }
        if let Some(d) = rm.degree() {
            self.need(d + n)?;
        }
        let lhs = rn * rm;
        let inner = &rn.shift(m) + &rm.shift(n);
        let rhs = self.apply(&inner)?;
        let weighted = self.images[n + m].scale(lambda);
        Ok(&(&lhs - &rhs) - &weighted)
    }

    /// First monomial pair `n <= m <= d` with a nonzero residual.
    pub fn first_rb_failure(&self, lambda: &Rat, d: usize) -> Result<Option<(usize, usize)>> {
        for m in 0..=d {
            for n in 0..=m {
                if !self.rb_residual(lambda, n, m)?.is_zero() {
                    return Ok(Some((n, m)));
                }
            }
        }
        Ok(None)
    }

    /// Whether the weight-`λ` identity holds for all `f, g` of degree `<= d`.
    pub fn is_rb_upto(&self, lambda: &Rat, d: usize) -> Result<bool> {
        Ok(self.first_rb_failure(lambda, d)?.is_none())
    }

    /// The `r` with `δ∘R = l_r` on the truncation.
    pub fn derived_multiplier(&self) -> Result<Poly> {
        self.need(1)?;
        let r = self.images[0].derive();
        for (n, img) in self.images.iter().enumerate().skip(1) {
            if img.derive() != r.shift(n) {
                return Err(Error::NotMultiplierType { index: n });
            }
        }
        if r.is_zero() {
            return Err(Error::ZeroMultiplier);
        }
        Ok(r)
    }

    /// Recovers `(a, r)` with `to_trunc((a, r), N) == self`.
    ///
    /// `a` is searched among the rational roots of `R(1)` that also kill
    /// `R(x^j)` for `j <= deg r`; at most one candidate can survive.
    pub fn to_analytic(&self) -> Result<AnalyticOp> {
        let r = self.derived_multiplier()?;
        let k = r.degree().unwrap_or(0);
        self.need(k)?;
        let a = self.images[0]
            .rational_roots()?
            .into_iter()
            .find(|a| self.images[..=k].iter().all(|img| img.eval(a).is_zero()))
            .ok_or(Error::NoRationalBasePoint)?;
        let op = AnalyticOp::new(a, r)?;
        if op.to_trunc(self.truncation()) != *self {
            return Err(Error::Inconsistent);
        }
        Ok(op)
    }
}

/// Rows `u_j = (1/(j+1), ..., 1/(j+k+1))` for `j = 0..=k`.
pub fn vanishing_basis_matrix(k: usize) -> Vec<Vec<Rat>> {
    (0..=k).map(|j| (0..=k).map(|i| Rat::new(BigInt::one(), BigInt::from(i + j + 1))).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};
    use alloc::vec;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn op(a: Rat, r: &str) -> AnalyticOp {
        AnalyticOp::new(a, p(r)).unwrap()
    }

    #[test]
    fn apply_examples() {
        let int0 = op(rat(0), "1");
        for n in 0..6 {
            let xn = Poly::monomial(rat(1), n);
            assert_eq!(int0.apply(&xn), Poly::monomial(Rat::new(1.into(), (n as i64 + 1).into()), n + 1));
        }
        assert!(op(rat(3), "x^2 - 1").apply(&Poly::zero()).is_zero());
        assert_eq!(op(rat(2), "x").apply(&Poly::one()), p("1/2*x^2 - 2"));
        assert_eq!(AnalyticOp::new(rat(0), Poly::zero()), Err(Error::ZeroMultiplier));
    }

    #[test]
    fn trunc_examples() {
        assert_eq!(op(rat(0), "1").to_trunc(1).images(), &[p("x"), p("1/2*x^2")]);
        assert_eq!(op(rat(1), "1").to_trunc(0).images(), &[p("x - 1")]);
    }

    #[test]
    fn residual_examples() {
        let t = op(ratio(3, 2), "x^2 - 2x + 1/2").to_trunc(20);
        for n in 0..5 {
            for m in 0..5 {
                assert!(t.rb_residual(&rat(0), n, m).unwrap().is_zero());
            }
        }
        let odd = TruncOp::odd_halving(6);
        assert!(odd.rb_residual(&rat(0), 1, 1).unwrap().is_zero());
        assert_eq!(TruncOp::identity(4).rb_residual(&rat(0), 0, 0).unwrap(), rat_poly(-1));
    }

    fn rat_poly(c: i64) -> Poly {
        Poly::constant(rat(c))
    }

    #[test]
    fn residual_refuses_short_truncation() {
        let t = op(rat(0), "x").to_trunc(4);
        // deg R(x^2) = 4, so m = 1 needs N >= 5
        assert_eq!(t.rb_residual(&rat(0), 2, 1), Err(Error::TruncationTooSmall { needed: 5, available: 4 }));
        assert!(t.rb_residual(&rat(0), 5, 0).is_err());
    }

    #[test]
    fn is_rb_examples() {
        let a = op(rat(-1), "2x^3 + x");
        assert!(a.to_trunc(a.sufficient_truncation(4)).is_rb_upto(&rat(0), 4).unwrap());
        assert_eq!(TruncOp::identity(4).first_rb_failure(&rat(0), 1).unwrap(), Some((0, 0)));
        assert!(TruncOp::zero(6).is_rb_upto(&rat(0), 3).unwrap());
    }

    #[test]
    fn odd_halving_images() {
        let t = TruncOp::odd_halving(4);
        assert_eq!(t.images()[0], Poly::zero());
        assert_eq!(t.images()[1], p("1/2*x^2"));
        assert_eq!(t.images()[3], p("1/4*x^4"));
    }

    #[test]
    fn multiplier_examples() {
        assert_eq!(op(rat(2), "x").to_trunc(4).derived_multiplier().unwrap(), p("x"));
        assert_eq!(TruncOp::odd_halving(4).derived_multiplier(), Err(Error::NotMultiplierType { index: 1 }));
        assert_eq!(op(rat(0), "1").to_trunc(3).derived_multiplier().unwrap(), Poly::one());
        assert_eq!(TruncOp::zero(3).derived_multiplier(), Err(Error::ZeroMultiplier));
        assert!(TruncOp::zero(0).derived_multiplier().is_err());
    }

    #[test]
    fn canonicalization_examples() {
        let t = op(rat(2), "x").to_trunc(4);
        // roots of R(1) = x^2/2 - 2 are ±2; only 2 kills R(x) = x^3/3 - 8/3
        assert_eq!(t.images()[0].rational_roots().unwrap(), vec![rat(-2), rat(2)]);
        assert_eq!(t.to_analytic().unwrap(), op(rat(2), "x"));
        assert_eq!(op(rat(0), "1 + x").to_trunc(3).to_analytic().unwrap(), op(rat(0), "1 + x"));
    }

    #[test]
    fn canonicalization_failures() {
        // shifting one image by a constant breaks the common root
        let mut images = op(rat(1), "x").to_trunc(3).images().to_vec();
        images[1] = &images[1] + &Poly::one();
        assert_eq!(TruncOp::new(images).unwrap().to_analytic(), Err(Error::NoRationalBasePoint));

        // J_a∘l_{2x} with a = sqrt 2
        let images = vec![p("x^2 - 2"), p("2/3*x^3 - 4/3")];
        assert_eq!(TruncOp::new(images).unwrap().to_analytic(), Err(Error::NoRationalBasePoint));

        // a consistent head with a broken tail image
        let mut images = op(rat(1), "1").to_trunc(3).images().to_vec();
        images[3] = &images[3] + &Poly::one();
        assert_eq!(TruncOp::new(images).unwrap().to_analytic(), Err(Error::Inconsistent));
    }

    #[test]
    fn basis_matrix_shape() {
        let m = vanishing_basis_matrix(2);
        assert_eq!(m[0], vec![rat(1), ratio(1, 2), ratio(1, 3)]);
        assert_eq!(m[2], vec![ratio(1, 3), ratio(1, 4), ratio(1, 5)]);
    }
}
