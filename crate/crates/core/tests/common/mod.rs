#![allow(dead_code)]

use proptest::prelude::*;
use rbx_core::rat::ratio;
use rbx_core::{AnalyticOp, Poly, Rat};

pub fn small_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

pub fn nonzero_rat() -> impl Strategy<Value = Rat> {
    small_rat().prop_filter("nonzero", |q| *q != ratio(0, 1))
}

pub fn poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(small_rat(), 0..=max_deg + 1).prop_map(Poly::from_coeffs)
}

pub fn nonzero_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    poly(max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

pub fn analytic(max_deg: usize) -> impl Strategy<Value = AnalyticOp> {
    (small_rat(), nonzero_poly(max_deg)).prop_map(|(a, r)| AnalyticOp::new(a, r).unwrap())
}

/// `p - p(b)`, which vanishes at `b`.
pub fn vanishing_at(p: &Poly, b: &Rat) -> Poly {
    p - &Poly::constant(p.eval(b))
}
