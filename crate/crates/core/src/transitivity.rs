//! Word synthesis for the transitive actions on operators `J_a ∘ l_r`.
//!
//! Every solver checks its answer by applying the word and comparing the
//! result with the target exactly; a mismatch is reported as
//! [`Error::Internal`].

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::actions::{Generator, Word};
use crate::error::{Error, Result};
use crate::exactpoly::{lagrange_selector, Poly};
use crate::linalg::{linearly_independent, rank};
use crate::rat::{rat, Rat};
use crate::rbops::AnalyticOp;

/// Operators with multipliers satisfying `r_i(b_j) = c_i δ_ij`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ATuple {
    base_points: Vec<Rat>,
    values: Vec<Rat>,
    ops: Vec<AnalyticOp>,
}

impl ATuple {
    pub fn new(base_points: Vec<Rat>, values: Vec<Rat>, ops: Vec<AnalyticOp>) -> Result<Self> {
        let m = ops.len();
        if base_points.len() != m || values.len() != m {
            return Err(Error::LengthMismatch);
        }
        shared_base_point(&ops)?;
        if !pairwise_distinct(&base_points) {
            return Err(Error::BasePointCollision);
        }
        if values.iter().any(Zero::is_zero) {
            return Err(Error::BrokenTuple);
        }
        for (i, op) in ops.iter().enumerate() {
            for (j, b) in base_points.iter().enumerate() {
                let want = if i == j { values[i].clone() } else { Rat::zero() };
                if op.multiplier().eval(b) != want {
                    return Err(Error::BrokenTuple);
                }
            }
        }
        Ok(ATuple { base_points, values, ops })
    }

    pub fn base_points(&self) -> &[Rat] {
        &self.base_points
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn ops(&self) -> &[AnalyticOp] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }
}

/// Upper bound asserted on words from [`solve_tuple_independent`].
pub fn word_length_cap(m: usize) -> usize {
    10 * m * m + 20 * m
}

fn pairwise_distinct<T: PartialEq>(items: &[T]) -> bool {
    items.iter().enumerate().all(|(i, x)| !items[..i].contains(x))
}

/// The common base point of `ops`, or `None` for an empty slice.
fn shared_base_point(ops: &[AnalyticOp]) -> Result<Option<&Rat>> {
    let Some(first) = ops.first() else {
        return Ok(None);
    };
    let a = first.base_point();
    if ops.iter().any(|op| op.base_point() != a) {
        return Err(Error::BasePointMismatch);
    }
    Ok(Some(a))
}

fn multipliers(ops: &[AnalyticOp]) -> Vec<Poly> {
    ops.iter().map(|op| op.multiplier().clone()).collect()
}

fn independent(ops: &[AnalyticOp]) -> bool {
    linearly_independent(&multipliers(ops))
}

fn check_applies(word: &Word, src: &[AnalyticOp], dst: &[AnalyticOp]) -> Result<()> {
    if word.apply_tuple(src) != dst {
        return Err(Error::Internal("word does not reach its target"));
    }
    Ok(())
}

fn op_with(a: &Rat, r: Poly) -> Result<AnalyticOp> {
    AnalyticOp::new(a.clone(), r)
}

/// `HB{b, (r_dst - r_src)/c}` with `c = r_src(b) = r_dst(b) ≠ 0`.
pub fn fiber_move(src: &AnalyticOp, dst: &AnalyticOp, b: &Rat) -> Result<Generator> {
    if src.base_point() != dst.base_point() {
        return Err(Error::BasePointMismatch);
    }
    let c = src.multiplier().eval(b);
    if c.is_zero() || dst.multiplier().eval(b) != c {
        return Err(Error::ZeroFiberValue);
    }
    let s = (dst.multiplier() - src.multiplier()).scale(&c.recip());
    Generator::hb(b.clone(), s)
}

/// At most three generators sending `op1` to `op2`.
pub fn solve_single(op1: &AnalyticOp, op2: &AnalyticOp) -> Result<Word> {
    let mut word = Word::empty();
    let shift = op1.base_point() - op2.base_point();
    if !shift.is_zero() {
        word.push(Generator::ga(shift));
    }
    let cur = word.apply(op1);
    if cur == *op2 {
        return Ok(word);
    }
    let (r1, r2) = (cur.multiplier(), op2.multiplier());
    let mut good = (0i64..).map(rat).filter(|t| !r1.eval(t).is_zero() && !r2.eval(t).is_zero());
    let a = good.next().unwrap();
    let a2 = good.next().unwrap();
    // after HB{a, γ(x - a)} the multiplier takes the value r2(a') at a'
    let gamma = (r2.eval(&a2) - r1.eval(&a2)) / (r1.eval(&a) * (&a2 - &a));
    let lift = Poly::from_coeffs(vec![-&gamma * &a, gamma]);
    let g = Generator::hb(a, lift)?;
    let mid = g.apply(&cur);
    if !lift_is_trivial(&g) {
        word.push(g);
    }
    if mid != *op2 {
        word.push(fiber_move(&mid, op2, &a2)?);
    }
    check_applies(&word, core::slice::from_ref(op1), core::slice::from_ref(op2))?;
    Ok(word)
}

fn lift_is_trivial(g: &Generator) -> bool {
    matches!(g.kind(), crate::actions::GeneratorKind::Hb { s, .. } if s.is_zero())
}

/// `m` integers from `0` upward at which the multipliers have an
/// invertible evaluation matrix.
pub fn select_basepoints(rs: &[Poly]) -> Result<Vec<Rat>> {
    if !linearly_independent(rs) {
        return Err(Error::LinearlyDependent);
    }
    let m = rs.len();
    let max_deg = rs.iter().filter_map(Poly::degree).max().unwrap_or(0);
    let mut chosen: Vec<Rat> = Vec::with_capacity(m);
    let mut columns: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for t in 0..=(m + m * max_deg) as i64 {
        if chosen.len() == m {
            break;
        }
        let b = rat(t);
        columns.push(rs.iter().map(|r| r.eval(&b)).collect());
        if rank(columns.clone()) == columns.len() {
            chosen.push(b);
        } else {
            columns.pop();
        }
    }
    if chosen.len() < m {
        return Err(Error::Internal("no invertible evaluation matrix in scan range"));
    }
    Ok(chosen)
}

/// Column Gauss–Jordan on `(r_i(b_j))` through `HB{b_p, λ s_l}`, which adds
/// `λ` times column `p` to column `l`.
pub fn diagonalize_tuple(ops: &[AnalyticOp], bs: &[Rat]) -> Result<(Word, ATuple)> {
    let m = ops.len();
    if bs.len() != m {
        return Err(Error::LengthMismatch);
    }
    shared_base_point(ops)?;
    if !pairwise_distinct(bs) {
        return Err(Error::BasePointCollision);
    }
    let selectors: Vec<Poly> = (0..m).map(|l| lagrange_selector(bs, l)).collect();
    let mut cur = ops.to_vec();
    let mut matrix: Vec<Vec<Rat>> = cur.iter().map(|op| bs.iter().map(|b| op.multiplier().eval(b)).collect()).collect();
    let mut word = Word::empty();
    let mut pivots: Vec<usize> = Vec::with_capacity(m);
    for i in 0..m {
        let p = (0..m).find(|c| !pivots.contains(c) && !matrix[i][*c].is_zero()).ok_or(Error::LinearlyDependent)?;
        for l in 0..m {
            if l == p || matrix[i][l].is_zero() {
                continue;
            }
            let lambda = -&matrix[i][l] / &matrix[i][p];
            let g = Generator::hb(bs[p].clone(), selectors[l].scale(&lambda))?;
            cur = cur.iter().map(|op| g.apply(op)).collect();
            for row in matrix.iter_mut() {
                let delta = &lambda * &row[p];
                row[l] += delta;
            }
            word.push(g);
        }
        pivots.push(p);
    }
    let base_points = pivots.iter().map(|&p| bs[p].clone()).collect();
    let values = pivots.iter().enumerate().map(|(i, &p)| matrix[i][p].clone()).collect();
    let tuple = ATuple::new(base_points, values, cur)?;
    Ok((word, tuple))
}

/// Moves `src` member by member onto operators with the multipliers
/// `targets`, which must satisfy the same `A(b | c)` pattern.
pub fn move_within(src: &ATuple, targets: &[Poly]) -> Result<(Word, ATuple)> {
    if targets.len() != src.len() {
        return Err(Error::LengthMismatch);
    }
    let Some(a) = shared_base_point(src.ops())? else {
        return Ok((Word::empty(), src.clone()));
    };
    let goal: Vec<AnalyticOp> = targets.iter().map(|r| op_with(a, r.clone())).collect::<Result<_>>()?;
    let goal = ATuple::new(src.base_points.clone(), src.values.clone(), goal)?;
    let mut cur = src.ops.clone();
    let mut word = Word::empty();
    for k in 0..src.len() {
        if cur[k] == goal.ops[k] {
            continue;
        }
        // the other members vanish at b_k, so only member k moves
        let g = fiber_move(&cur[k], &goal.ops[k], &src.base_points[k])?;
        cur = cur.iter().map(|op| g.apply(op)).collect();
        word.push(g);
    }
    check_applies(&word, src.ops(), goal.ops())?;
    Ok((word, goal))
}

/// Moves `src` into `A(dst_bs | dst_cs)` through the tuple lying in both
/// `A` sets.
pub fn bridge_tuple(src: &ATuple, dst_bs: &[Rat], dst_cs: &[Rat]) -> Result<(Word, ATuple)> {
    let m = src.len();
    if dst_bs.len() != m || dst_cs.len() != m {
        return Err(Error::LengthMismatch);
    }
    if !pairwise_distinct(dst_bs) || dst_bs.iter().any(|b| src.base_points.contains(b)) {
        return Err(Error::BasePointCollision);
    }
    if dst_cs.iter().any(Zero::is_zero) {
        return Err(Error::BrokenTuple);
    }
    let mut targets = Vec::with_capacity(m);
    for (k, ck) in dst_cs.iter().enumerate() {
        let nodes: Vec<(Rat, Rat)> = (0..m)
            .map(|i| {
                let v = if i == k { src.values[k].clone() } else { Rat::zero() };
                (src.base_points[i].clone(), v)
            })
            .chain((0..m).map(|i| {
                let v = if i == k { ck.clone() } else { Rat::zero() };
                (dst_bs[i].clone(), v)
            }))
            .collect();
        targets.push(Poly::lagrange(&nodes)?);
    }
    let (word, mid) = move_within(src, &targets)?;
    let tuple = ATuple::new(dst_bs.to_vec(), dst_cs.to_vec(), mid.ops)?;
    Ok((word, tuple))
}

/// The tuple `J_a ∘ l_{s_l}` with `s_l` the selectors on `1..=m`.
pub fn canonical_tuple(a: &Rat, m: usize) -> Vec<AnalyticOp> {
    let nodes: Vec<Rat> = (1..=m as i64).map(rat).collect();
    (0..m).map(|l| AnalyticOp::new(a.clone(), lagrange_selector(&nodes, l)).expect("selectors are nonzero")).collect()
}

/// A word to [`canonical_tuple`] and the intermediate tuples: diagonalized,
/// bridged to auxiliary base points, bridged to `1..=m`, canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonicalization {
    pub word: Word,
    pub stages: Vec<ATuple>,
}

pub fn canonicalize_independent(ops: &[AnalyticOp]) -> Result<Canonicalization> {
    let Some(a) = shared_base_point(ops)? else {
        return Ok(Canonicalization { word: Word::empty(), stages: Vec::new() });
    };
    let m = ops.len();
    let bs = select_basepoints(&multipliers(ops))?;
    let (w1, t1) = diagonalize_tuple(ops, &bs)?;
    let ones = vec![Rat::one(); m];
    let aux: Vec<Rat> = (0i64..)
        .map(rat)
        .filter(|t| !t1.base_points.contains(t) && !(rat(1)..=rat(m as i64)).contains(t))
        .take(m)
        .collect();
    let (w2, t2) = bridge_tuple(&t1, &aux, &ones)?;
    let home: Vec<Rat> = (1..=m as i64).map(rat).collect();
    let (w3, t3) = bridge_tuple(&t2, &home, &ones)?;
    let canon = multipliers(&canonical_tuple(a, m));
    let (w4, t4) = move_within(&t3, &canon)?;
    let word = w1.concat(&w2).concat(&w3).concat(&w4);
    Ok(Canonicalization { word, stages: vec![t1, t2, t3, t4] })
}

fn check_pair(src: &[AnalyticOp], dst: &[AnalyticOp]) -> Result<()> {
    if src.len() != dst.len() {
        return Err(Error::LengthMismatch);
    }
    if let (Some(a), Some(b)) = (shared_base_point(src)?, shared_base_point(dst)?) {
        if a != b {
            return Err(Error::BasePointMismatch);
        }
    }
    Ok(())
}

/// An `HB` word sending one independent tuple to another.
pub fn solve_tuple_independent(src: &[AnalyticOp], dst: &[AnalyticOp]) -> Result<Word> {
    check_pair(src, dst)?;
    if !independent(src) || !independent(dst) {
        return Err(Error::LinearlyDependent);
    }
    let to_canon = canonicalize_independent(src)?.word;
    let from_canon = canonicalize_independent(dst)?.word.inverse();
    let word = to_canon.concat(&from_canon);
    if word.len() > word_length_cap(src.len()) {
        return Err(Error::Internal("word length cap exceeded"));
    }
    check_applies(&word, src, dst)?;
    Ok(word)
}

/// `HB`/`HB2` word making pairwise distinct operators linearly independent.
pub fn make_independent(ops: &[AnalyticOp]) -> Result<Word> {
    let Some(a) = shared_base_point(ops)? else {
        return Ok(Word::empty());
    };
    if !pairwise_distinct(ops) {
        return Err(Error::DuplicateOperators);
    }
    if independent(ops) {
        return Ok(Word::empty());
    }
    let m = ops.len();
    // m >= 2 here: a single operator has a nonzero multiplier
    let prefix: Vec<AnalyticOp> =
        (0..m - 1).map(|i| op_with(a, Poly::monomial(Rat::one(), i))).collect::<Result<_>>()?;
    let mut word = solve_distinct_tuple(&ops[..m - 1], &prefix)?;
    let mut cur = word.apply_tuple(ops);
    let mut swapped = false;
    while !independent(&cur) {
        // the prefix is 1, x, ..., x^{m-2}, so the last multiplier lies in its span
        let r = cur[m - 1].multiplier().clone();
        let r0 = r.coeff(0);
        if r0.is_zero() {
            return Ok(word.concat(&retarget_tail(&cur)?));
        }
        if !r0.is_one() {
            let g = Generator::hb2(Rat::zero(), Poly::monomial(Rat::one(), m))?;
            cur = cur.iter().map(|op| g.apply(op)).collect();
            word.push(g);
            continue;
        }
        let odd = (1..m - 1).find(|&i| !r.coeff(i).is_zero() && !r.coeff(i).is_one());
        let zero = (1..m - 1).find(|&i| r.coeff(i).is_zero());
        match odd.or(zero) {
            Some(i) if !swapped => {
                let mut target = prefix.clone();
                target.swap(0, i);
                let w = solve_tuple_independent(&cur[..m - 1], &target)?;
                cur = w.apply_tuple(&cur);
                word.extend(w);
                swapped = true;
            }
            Some(_) => return Err(Error::Internal("coefficient permutation did not settle")),
            None => {
                let s = &Poly::monomial(Rat::one(), m) - &Poly::one();
                let g = Generator::hb2(Rat::one(), s)?;
                cur = cur.iter().map(|op| g.apply(op)).collect();
                word.push(g);
                if !independent(&cur) {
                    return Err(Error::Internal("all-ones reduction left a dependency"));
                }
            }
        }
    }
    check_applies(&word, ops, &cur)?;
    Ok(word)
}

/// Last member has multiplier `Σ_{i≥1} r_i x^i`: send members `2..=m` to a
/// sequence of monomial targets until the full tuple is independent.
fn retarget_tail(cur: &[AnalyticOp]) -> Result<Word> {
    let m = cur.len();
    let a = cur[0].base_point();
    for shift in 1..=m + 2 {
        let target: Vec<AnalyticOp> =
            (0..m - 1).map(|i| op_with(a, Poly::monomial(Rat::one(), i + shift))).collect::<Result<_>>()?;
        let w = solve_distinct_tuple(&cur[1..], &target)?;
        if independent(&w.apply_tuple(cur)) {
            return Ok(w);
        }
    }
    Err(Error::Internal("no independent retarget within the attempt bound"))
}

/// A word sending one tuple of pairwise distinct operators to another.
pub fn solve_distinct_tuple(src: &[AnalyticOp], dst: &[AnalyticOp]) -> Result<Word> {
    check_pair(src, dst)?;
    if !pairwise_distinct(src) || !pairwise_distinct(dst) {
        return Err(Error::DuplicateOperators);
    }
    let ws = make_independent(src)?;
    let wd = make_independent(dst)?;
    let wm = solve_tuple_independent(&ws.apply_tuple(src), &wd.apply_tuple(dst))?;
    let word = ws.concat(&wm).concat(&wd.inverse());
    check_applies(&word, src, dst)?;
    Ok(word)
}
