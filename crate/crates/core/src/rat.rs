//! Exact rational scalars.
//!
//! [`Rat`] is `num_rational::BigRational`, which keeps every value reduced
//! with a positive denominator, so structural equality is numeric equality.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use num_rational::BigRational as Rat;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d`, reduced. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `int['/'posint]`, allowing a leading sign and surrounding blanks.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    let offset = s.len() - s.trim_start().len();
    let (num, den) = match t.find('/') {
        Some(i) => (&t[..i], Some((&t[i + 1..], i + 1))),
        None => (t, None),
    };
    let numer = parse_int(num, offset)?;
    let denom = match den {
        None => BigInt::one(),
        Some((d, at)) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Parse { pos: offset + at, msg: "expected a positive integer denominator" });
            }
            let d = parse_int(d, offset + at)?;
            if d.is_zero() {
                return Err(Error::Parse { pos: offset + at, msg: "zero denominator" });
            }
            d
        }
    };
    Ok(Rat::new(numer, denom))
}

fn parse_int(s: &str, pos: usize) -> Result<BigInt> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse { pos, msg: "expected an integer" });
    }
    let mag = BigUint::parse_bytes(digits.as_bytes(), 10).ok_or(Error::Parse { pos, msg: "expected an integer" })?;
    let sign = if s.starts_with('-') { Sign::Minus } else { Sign::Plus };
    Ok(BigInt::from_biguint(sign, mag))
}

/// All rational `k`-th roots of `q`, ascending.
///
/// Odd `k` gives at most one root, even `k` gives `±` or nothing. For
/// `k == 0` the equation `μ^0 = q` has no finite witness set, so the result
/// is empty.
pub fn rational_kth_roots(q: &Rat, k: u32) -> Vec<Rat> {
    if k == 0 {
        return Vec::new();
    }
    if q.is_zero() {
        return alloc::vec![Rat::zero()];
    }
    if k.is_multiple_of(2) && q.is_negative() {
        return Vec::new();
    }
    let (Some(n), Some(d)) = (exact_root(&q.numer().abs(), k), exact_root(q.denom(), k)) else {
        return Vec::new();
    };
    let root = Rat::new(n, d);
    if k % 2 == 1 {
        alloc::vec![if q.is_negative() { -root } else { root }]
    } else {
        alloc::vec![-root.clone(), root]
    }
}

fn exact_root(n: &BigInt, k: u32) -> Option<BigInt> {
    let r = n.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *n {
        Some(r)
    } else {
        None
    }
}

/// Positive divisors of `n > 0`, ascending.
pub(crate) fn divisors(n: &BigUint) -> Vec<BigUint> {
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    let mut rest = n.clone();
    let two = BigUint::from(2u32);
    let mut p = two.clone();
    while &p * &p <= rest {
        let mut e = 0;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            factors.push((p.clone(), e));
        }
        p = if p == two { BigUint::from(3u32) } else { p + 2u32 };
    }
    if rest > BigUint::one() {
        factors.push((rest, 1));
    }
    let mut divs = alloc::vec![BigUint::one()];
    for (p, e) in factors {
        let base = divs.clone();
        let mut pk = BigUint::one();
        for _ in 0..e {
            pk *= &p;
            divs.extend(base.iter().map(|d| d * &pk));
        }
    }
    divs.sort();
    divs
}
