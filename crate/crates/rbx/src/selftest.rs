//! Seeded release checks. Each criterion draws its instances from a ChaCha8
//! stream derived from the seed and the criterion number, so a run is
//! reproducible bit for bit.

use std::fmt;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rbx_core::actions::{modality_chart, pi_b, same_aut_orbit};
use rbx_core::functionals::membership_nr;
use rbx_core::linalg::{determinant, linearly_independent};
use rbx_core::rat::{rat, ratio};
use rbx_core::rbops::vanishing_basis_matrix;
use rbx_core::transitivity::{
    canonical_tuple, canonicalize_independent, solve_distinct_tuple, solve_single, solve_tuple_independent,
    word_length_cap,
};
use rbx_core::{ATuple, AnalyticOp, AutOrbit, Eliminator, Error, FunCoords, Generator, Poly, Rat, TruncOp, Word};

pub const DEFAULT_SEED: u64 = 20_240_917;

pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub budget: Duration,
    check: fn(&mut Sampler) -> Check,
}

type Check = Result<String, String>;

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

pub const CRITERIA: [Criterion; 11] = [
    Criterion { id: 1, title: "identity for analytic operators", budget: secs(5), check: rb_identity },
    Criterion { id: 2, title: "non-injective odd halving", budget: secs(1), check: odd_halving },
    Criterion { id: 3, title: "functional round trip", budget: secs(5), check: functional_round_trip },
    Criterion { id: 4, title: "elimination", budget: secs(30), check: elimination },
    Criterion { id: 5, title: "curve membership", budget: secs(30), check: membership },
    Criterion { id: 6, title: "group laws", budget: secs(5), check: group_laws },
    Criterion { id: 7, title: "vanishing basis determinants", budget: secs(1), check: determinants },
    Criterion { id: 8, title: "single transitivity", budget: secs(5), check: single },
    Criterion { id: 9, title: "independent tuple transitivity", budget: secs(60), check: independent_tuples },
    Criterion { id: 10, title: "infinite transitivity", budget: secs(60), check: distinct_tuples },
    Criterion { id: 11, title: "affine orbits", budget: secs(5), check: aut_orbits },
];

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2}  {}  {:<32} {:>7.2}s (budget {}s)  {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs(),
            self.detail
        )
    }
}

pub fn run(c: &Criterion, seed: u64) -> Outcome {
    let mut sampler = Sampler::new(seed, c.id);
    let start = Instant::now();
    let result = (c.check)(&mut sampler);
    let elapsed = start.elapsed();
    let (passed, detail) = match result {
        Ok(d) if elapsed > c.budget => (false, format!("over the time budget; {d}")),
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Outcome { id: c.id, title: c.title, passed, detail, elapsed, budget: c.budget }
}

pub fn run_all(seed: u64) -> Vec<Outcome> {
    CRITERIA.iter().map(|c| run(c, seed)).collect()
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn core<T>(r: Result<T, Error>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

/// Random instances for the checks.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64, stream: u8) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(u64::from(stream));
        Sampler { rng }
    }

    /// A multiple of 1/2 in [-3, 3].
    pub fn half(&mut self) -> Rat {
        ratio(self.rng.gen_range(-6..=6), 2)
    }

    pub fn small_rat(&mut self) -> Rat {
        ratio(self.rng.gen_range(-5..=5), self.rng.gen_range(1..=3))
    }

    pub fn nonzero_rat(&mut self) -> Rat {
        loop {
            let q = self.small_rat();
            if !q.is_zero() {
                return q;
            }
        }
    }

    pub fn index(&mut self, below: usize) -> usize {
        self.rng.gen_range(0..below)
    }

    /// Degree exactly `deg`, mostly integer coefficients.
    pub fn poly_of_degree(&mut self, deg: usize) -> Poly {
        let mut coeffs: Vec<Rat> = (0..deg)
            .map(|_| if self.rng.gen_bool(0.8) { rat(self.rng.gen_range(-4..=4)) } else { self.small_rat() })
            .collect();
        coeffs.push(self.nonzero_rat());
        Poly::from_coeffs(coeffs)
    }

    /// Nonzero, degree at most `max_deg`.
    pub fn poly(&mut self, max_deg: usize) -> Poly {
        let deg = self.rng.gen_range(0..=max_deg);
        self.poly_of_degree(deg)
    }

    pub fn op(&mut self, max_deg: usize) -> AnalyticOp {
        let a = self.half();
        let r = self.poly(max_deg);
        AnalyticOp::new(a, r).expect("sampled multipliers are nonzero")
    }

    /// `p - p(b)`.
    pub fn vanishing_at(&mut self, b: &Rat, max_deg: usize) -> Poly {
        let p = self.poly(max_deg);
        &p - &Poly::constant(p.eval(b))
    }

    pub fn generator(&mut self) -> Generator {
        let b = self.half();
        match self.index(4) {
            0 => Generator::hb(b.clone(), self.vanishing_at(&b, 3)).unwrap(),
            1 => Generator::hb2(b.clone(), self.vanishing_at(&b, 3)).unwrap(),
            2 => Generator::ga(self.small_rat()),
            _ => Generator::gm(self.nonzero_rat()).unwrap(),
        }
    }

    pub fn independent_multipliers(&mut self, m: usize, max_deg: usize) -> Vec<Poly> {
        loop {
            let rs: Vec<Poly> = (0..m).map(|_| self.poly(max_deg)).collect();
            if linearly_independent(&rs) {
                return rs;
            }
        }
    }

    /// Pairwise distinct multipliers; with `dependent` the last one is a
    /// combination of the others.
    pub fn distinct_multipliers(&mut self, m: usize, max_deg: usize, dependent: bool) -> Vec<Poly> {
        loop {
            let mut rs: Vec<Poly> = (0..m).map(|_| self.poly(max_deg)).collect();
            if dependent {
                let combo = rs[..m - 1].iter().fold(Poly::zero(), |acc, r| {
                    let lam = self.small_rat();
                    &acc + &r.scale(&lam)
                });
                rs[m - 1] = combo;
            }
            let distinct = rs.iter().enumerate().all(|(i, r)| !rs[..i].contains(r));
            if distinct && rs.iter().all(|r| !r.is_zero()) {
                return rs;
            }
        }
    }
}

fn tuple(a: &Rat, rs: Vec<Poly>) -> Vec<AnalyticOp> {
    rs.into_iter().map(|r| AnalyticOp::new(a.clone(), r).unwrap()).collect()
}

fn monomial(n: usize) -> Poly {
    Poly::monomial(Rat::one(), n)
}

fn rb_identity(s: &mut Sampler) -> Check {
    let d = 10;
    for _ in 0..20 {
        let op = s.op(5);
        let t = op.to_trunc(op.sufficient_truncation(d));
        ensure!(core(t.is_rb_upto(&rat(0), d), "identity check")?, "identity fails for {op:?}");
    }
    Ok("20 operators, n, m <= 10".into())
}

fn odd_halving(_: &mut Sampler) -> Check {
    let t = TruncOp::odd_halving(26);
    ensure!(core(t.is_rb_upto(&rat(0), 12), "identity check")?, "odd halving fails the identity");
    match t.derived_multiplier() {
        Err(Error::NotMultiplierType { index }) => Ok(format!("no multiplier, first bad image x^{index}")),
        other => Err(format!("expected NotMultiplierType, got {other:?}")),
    }
}

fn functional_round_trip(s: &mut Sampler) -> Check {
    let budget = 3;
    for _ in 0..20 {
        let r = s.poly(3);
        let a = s.half();
        // residuals on f, g of degree <= 3 read c up to index 2*3 + deg r + 1
        let len = 2 * budget + r.degree().unwrap() + 2;
        let fc = core(FunCoords::on_curve(&r, &a, len), "curve point")?;
        let op = core(fc.to_operator(len - 1), "functional to operator")?;
        let back = core(FunCoords::from_operator(&op), "operator to functional")?;
        ensure!(back == fc, "round trip changed the coordinates for r = {r}, a = {a}");
        for n in 0..=budget {
            for m in 0..=budget {
                let res = core(fc.residual(&monomial(n), &monomial(m)), "residual")?;
                ensure!(res.is_zero(), "nonzero residual at ({n}, {m}) for r = {r}, a = {a}");
            }
        }
        for i in 0..len {
            let mut c = fc.coords().to_vec();
            c[i] += Rat::one();
            let bumped = core(FunCoords::new(r.clone(), c), "perturbed functional")?;
            let mut detected = false;
            'pairs: for n in 0..=budget {
                for m in 0..=n {
                    if !core(bumped.residual(&monomial(n), &monomial(m)), "residual")?.is_zero() {
                        detected = true;
                        break 'pairs;
                    }
                }
            }
            ensure!(detected, "perturbing c_{i} went unnoticed for r = {r}, a = {a}");
        }
    }
    Ok("20 curve points, every single-coordinate bump detected".into())
}

fn elimination(s: &mut Sampler) -> Check {
    let multipliers = ["1", "x", "1 + x", "1 + x^2"];
    for text in multipliers {
        let r: Poly = text.parse().unwrap();
        let k = r.degree().unwrap();
        let elim = core(Eliminator::new(&r), "eliminator")?;
        for _ in 0..4 {
            let a = s.small_rat();
            let curve = core(FunCoords::on_curve(&r, &a, 9), "curve point")?;
            for t in k + 1..=8 {
                let p = core(elim.elimination_poly(t), "P_t")?;
                let value = core(p.eval(curve.coords()), "P_t evaluation")?;
                ensure!(value == curve.coords()[t], "P_{t} misses the curve for r = {r}, a = {a}");
            }
        }
        for n in 0..=4 {
            for m in 0..=4 {
                ensure!(
                    core(elim.annihilated_on_curve(n, m), "reduction")?,
                    "g_({m},{n}) survives on the curve for r = {r}"
                );
            }
        }
    }
    let elim = core(Eliminator::new(&Poly::one()), "eliminator")?;
    for n in 0..=6 {
        for m in 0..=6 {
            ensure!(core(elim.reduce(n, m), "reduction")?.is_zero(), "g_({m},{n}) is not zero for r = 1");
        }
    }
    Ok(format!("r in {{{}}}", multipliers.join(", ")))
}

fn membership(s: &mut Sampler) -> Check {
    let d = 8;
    let mut off_curve = 0;
    for text in ["1", "x", "1 + x", "x^2"] {
        let r: Poly = text.parse().unwrap();
        let k = r.degree().unwrap();
        let elim = core(Eliminator::new(&r), "eliminator")?;
        let mut off_for_r = 0;
        for _ in 0..5 {
            let a = s.half();
            let head = core(FunCoords::on_curve(&r, &a, k + 1), "curve point")?.coords().to_vec();
            ensure!(core(elim.member_mr(&head, d), "membership")?, "curve head rejected, r = {r}, a = {a}");
            ensure!(
                core(membership_nr(&r, &head), "curve membership")? == Some(a.clone()),
                "base point not recovered, r = {r}, a = {a}"
            );
            for i in 0..=k {
                let mut bumped = head.clone();
                bumped[i] += Rat::one();
                let in_mr = core(elim.member_mr(&bumped, d), "membership")?;
                let on_curve = core(membership_nr(&r, &bumped), "curve membership")?.is_some();
                ensure!(in_mr == on_curve, "solution set and curve disagree at r = {r}, head {bumped:?}");
                if !on_curve {
                    off_for_r += 1;
                }
            }
        }
        // with k = 0 every head lies on the curve
        ensure!(k == 0 || off_for_r > 0, "no off-curve perturbation produced for r = {r}");
        off_curve += off_for_r;
    }
    Ok(format!("20 curve heads accepted, {off_curve} off-curve perturbations rejected"))
}

fn group_laws(s: &mut Sampler) -> Check {
    let trials = 100;
    for _ in 0..trials {
        let op = s.op(4);
        let b = s.half();
        let (s1, s2) = (s.vanishing_at(&b, 3), s.vanishing_at(&b, 3));
        let h1 = Generator::hb(b.clone(), s1.clone()).unwrap();
        let h2 = Generator::hb(b.clone(), s2.clone()).unwrap();
        let sum = Generator::hb(b.clone(), &s1 + &s2).unwrap();
        ensure!(h1.apply(&h2.apply(&op)) == sum.apply(&op), "HB composition fails");
        ensure!(h1.inverse().apply(&h1.apply(&op)) == op, "HB inversion fails");

        let (j, l) = (1 + s.index(4), 1 + s.index(4));
        let (gj, gl) = (s.small_rat(), s.small_rat());
        let one_param = |k: usize, g: &Rat| {
            let shift = Poly::constant(g * b.pow(k as i32));
            Generator::hb(b.clone(), &Poly::monomial(g.clone(), k) - &shift).unwrap()
        };
        let (hj, hl) = (one_param(j, &gj), one_param(l, &gl));
        ensure!(hj.apply(&hl.apply(&op)) == hl.apply(&hj.apply(&op)), "H^b_{j} and H^b_{l} do not commute");

        let h2b = Generator::hb2(b.clone(), s1.clone()).unwrap();
        ensure!(h2b.inverse().apply(&h2b.apply(&op)) == op, "HB2 inversion fails");
        let ga = Generator::ga(s.small_rat());
        ensure!(ga.inverse().apply(&ga.apply(&op)) == op, "GA inversion fails");
        let gm = Generator::gm(s.nonzero_rat()).unwrap();
        ensure!(gm.inverse().apply(&gm.apply(&op)) == op, "GM inversion fails");

        ensure!(pi_b(&h1.apply(&op), &b) == pi_b(&op, &b), "HB moves r(b)");
        ensure!(pi_b(&h2b.apply(&op), &b) == pi_b(&op, &b), "HB2 moves r(b)");
        ensure!(modality_chart(&h1.apply(&op), &b) == modality_chart(&op, &b), "HB moves the chart");

        let word: Word = (0..3)
            .map(|_| {
                let c = s.half();
                Generator::hb(c.clone(), s.vanishing_at(&c, 3)).unwrap()
            })
            .collect();
        let (r1, r2, lam) = (s.poly(3), s.poly(3), s.nonzero_rat());
        let r3 = &r1 + &r2.scale(&lam);
        if !r3.is_zero() {
            let moved = word.apply_tuple(&tuple(op.base_point(), vec![r1, r2, r3]));
            let expect = moved[0].multiplier() + &moved[1].multiplier().scale(&lam);
            ensure!(*moved[2].multiplier() == expect, "HB word broke a linear relation");
        }

        let any: Word = (0..4).map(|_| s.generator()).collect();
        ensure!(any.concat(&any.inverse()).apply(&op) == op, "word inverse fails");
    }
    Ok(format!("{trials} instances per law"))
}

/// `det` of the `n x n` matrix `1/(i+j+1)` is `c_n^4 / c_{2n}` with
/// `c_n = 1! 2! ... (n-1)!`.
fn hilbert_closed_form(n: usize) -> Rat {
    let superfactorial = |n: usize| {
        let mut acc = Rat::one();
        let mut fact = Rat::one();
        for i in 1..n {
            fact *= rat(i as i64);
            acc *= &fact;
        }
        acc
    };
    superfactorial(n).pow(4) / superfactorial(2 * n)
}

fn determinants(_: &mut Sampler) -> Check {
    for k in 0..=10 {
        let det = determinant(vanishing_basis_matrix(k));
        ensure!(!det.is_zero(), "singular for k = {k}");
        ensure!(det == hilbert_closed_form(k + 1), "determinant for k = {k} disagrees with the closed form");
    }
    Ok(format!("k = 0..10, smallest 1/{}", hilbert_closed_form(11).recip()))
}

fn single(s: &mut Sampler) -> Check {
    let mut total = 0;
    for _ in 0..50 {
        let (op1, op2) = (s.op(6), s.op(6));
        let w = core(solve_single(&op1, &op2), "single solver")?;
        ensure!(w.len() <= 3, "word of length {} for {op1:?} -> {op2:?}", w.len());
        ensure!(w.apply(&op1) == op2, "word misses its target");
        total += w.len();
    }
    Ok(format!("50 pairs, total word length {total}"))
}

fn check_stages(ops: &[AnalyticOp]) -> Result<usize, String> {
    let canon = core(canonicalize_independent(ops), "canonicalization")?;
    for stage in &canon.stages {
        let rebuilt = ATuple::new(stage.base_points().to_vec(), stage.values().to_vec(), stage.ops().to_vec());
        ensure!(rebuilt.as_ref() == Ok(stage), "stage violates the A-tuple pattern");
    }
    let a = ops[0].base_point();
    ensure!(canon.word.apply_tuple(ops) == canonical_tuple(a, ops.len()), "canonical form not reached");
    Ok(canon.stages.len())
}

fn independent_tuples(s: &mut Sampler) -> Check {
    let mut total = 0;
    for m in 1..=4 {
        for _ in 0..10 {
            let a = s.half();
            let src = tuple(&a, s.independent_multipliers(m, m + 1));
            let dst = tuple(&a, s.independent_multipliers(m, m + 1));
            check_stages(&src)?;
            check_stages(&dst)?;
            let w = core(solve_tuple_independent(&src, &dst), "tuple solver")?;
            ensure!(w.len() <= word_length_cap(m), "word length {} over the cap for m = {m}", w.len());
            ensure!(w.apply_tuple(&src) == dst, "word misses its target for m = {m}");
            total += w.len();
        }
    }
    Ok(format!("40 tuple pairs, total word length {total}"))
}

fn distinct_tuples(s: &mut Sampler) -> Check {
    let mut total = 0;
    let mut dependent = 0;
    for m in 2..=4 {
        for i in 0..10 {
            let a = s.half();
            let src_rs = s.distinct_multipliers(m, 3, i % 2 == 0);
            let dst_rs = s.distinct_multipliers(m, 3, i % 3 == 0);
            dependent += usize::from(!linearly_independent(&src_rs)) + usize::from(!linearly_independent(&dst_rs));
            let (src, dst) = (tuple(&a, src_rs), tuple(&a, dst_rs));
            let w = core(solve_distinct_tuple(&src, &dst), "distinct tuple solver")?;
            ensure!(w.apply_tuple(&src) == dst, "word misses its target for m = {m}");
            total += w.len();
        }
    }
    Ok(format!("30 tuple pairs ({dependent} dependent tuples), total word length {total}"))
}

fn aut_orbits(s: &mut Sampler) -> Check {
    for _ in 0..20 {
        let op = s.op(4);
        let conj = Word::new(vec![Generator::ga(s.small_rat()), Generator::gm(s.nonzero_rat()).unwrap()]);
        let target = conj.apply(&op);
        match same_aut_orbit(&op, &target) {
            AutOrbit::Witness(w) => ensure!(w.apply(&op) == target, "witness misses its target"),
            AutOrbit::NotInOrbit => return Err(format!("missed orbit {op:?} -> {target:?}")),
        }
    }
    for _ in 0..10 {
        let op = s.op(3);
        let k = op.multiplier().degree().unwrap();
        let deg = k + 1 + s.index(2);
        let other = AnalyticOp::new(s.half(), s.poly_of_degree(deg)).unwrap();
        ensure!(same_aut_orbit(&op, &other) == AutOrbit::NotInOrbit, "degree mismatch reported in orbit");
    }
    for _ in 0..10 {
        let k = 2 + s.index(3);
        let r = s.poly_of_degree(k);
        // 2 has no rational k-th root for k >= 2; -1 has none for even k
        let factor = if k.is_multiple_of(2) && s.index(2) == 0 { rat(-1) } else { rat(2) };
        let op = AnalyticOp::new(s.half(), r.clone()).unwrap();
        let other = AnalyticOp::new(s.half(), r.scale(&factor)).unwrap();
        ensure!(same_aut_orbit(&op, &other) == AutOrbit::NotInOrbit, "irrational scaling reported in orbit");
    }
    Ok("20 conjugates found, 20 non-orbit pairs rejected".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samplers_are_deterministic() {
        let mut s1 = Sampler::new(7, 3);
        let mut s2 = Sampler::new(7, 3);
        for _ in 0..10 {
            assert_eq!(s1.poly(4), s2.poly(4));
        }
        let mut other = Sampler::new(7, 4);
        let mut s3 = Sampler::new(7, 3);
        assert_ne!((0..5).map(|_| other.poly(4)).collect::<Vec<_>>(), (0..5).map(|_| s3.poly(4)).collect::<Vec<_>>());
    }

    #[test]
    fn closed_form_small_cases() {
        assert_eq!(hilbert_closed_form(1), rat(1));
        assert_eq!(hilbert_closed_form(2), ratio(1, 12));
        assert_eq!(hilbert_closed_form(3), ratio(1, 2160));
    }
}
