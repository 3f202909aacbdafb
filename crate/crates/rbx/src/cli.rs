//! Command dispatch. Exit codes: 0 success, 1 a check came out false or the
//! input has no answer, 2 the input could not be read or parsed.

use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use rbx_core::actions::modality_chart;
use rbx_core::functionals::{membership_nr, system_equation, DEFAULT_MEMBERSHIP_BUDGET};
use rbx_core::rat::parse_rat;
use rbx_core::transitivity::{solve_distinct_tuple, solve_single, solve_tuple_independent};
use rbx_core::{AnalyticOp, AutOrbit, Eliminator, FunCoords, Poly, Rat};
use serde_json::json;

use crate::format::{self, FormatError, OperatorFile};
use crate::selftest;

#[derive(Parser, Debug)]
#[command(name = "rbx", version, about = "Exact computations with Rota-Baxter operators J_a∘l_r on Q[x]")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the Rota-Baxter identity on x^n, x^m for n, m <= degree
    Verify {
        /// Operator file, analytic or truncated; `-` reads stdin
        file: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value_t = 8)]
        degree: usize,
    },
    /// Recover (a, r) from a truncated operator
    Canon { file: String },
    /// Functional-coordinate system and its elimination
    Functional(FunctionalArgs),
    /// Apply a word to an operator or a tuple
    Act {
        #[arg(long)]
        word: String,
        #[arg(long)]
        op: String,
    },
    /// Find a word sending one operator or tuple to another
    Transit {
        #[arg(long)]
        src: String,
        #[arg(long)]
        dst: String,
        #[arg(long, value_enum, default_value_t = Mode::Single)]
        mode: Mode,
    },
    /// Affine orbits and evaluation charts
    Orbit {
        /// Two operator files
        #[arg(long, num_args = 2, value_names = ["OP1", "OP2"], conflicts_with = "chart", required_unless_present = "chart")]
        aut: Option<Vec<String>>,
        /// A point b and an operator file
        #[arg(long, num_args = 2, value_names = ["B", "OP"], allow_hyphen_values = true)]
        chart: Option<Vec<String>>,
    },
    /// Run the seeded release checks
    Selftest {
        #[arg(long, default_value_t = selftest::DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
pub struct FunctionalArgs {
    #[arg(value_enum)]
    pub action: FunctionalAction,
    /// key=value pairs: r=<poly>, t=<int>, n=<int>, m=<int>, head=<q,q,...>
    pub params: Vec<String>,
    /// Largest n, m checked when testing membership
    #[arg(long, default_value_t = DEFAULT_MEMBERSHIP_BUDGET)]
    pub budget: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FunctionalAction {
    System,
    Eliminate,
    Reduce,
    Check,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Single,
    Independent,
    Distinct,
}

/// What a command prints and how it exits.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Report {
    fn ok(stdout: impl Into<String>) -> Self {
        Report { code: 0, stdout: stdout.into(), stderr: String::new() }
    }

    fn negative(stdout: impl Into<String>) -> Self {
        Report { code: 1, stdout: stdout.into(), stderr: String::new() }
    }

    fn no_answer(msg: impl std::fmt::Display) -> Self {
        Report { code: 1, stdout: String::new(), stderr: format!("rbx: {msg}") }
    }
}

/// Unreadable or malformed input, reported with exit code 2.
#[derive(Debug)]
pub struct InputError(String);

impl<E: Into<FormatError>> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.into().to_string())
    }
}

type Outcome = Result<Report, InputError>;

fn input(msg: impl Into<String>) -> InputError {
    InputError(msg.into())
}

/// File contents, or stdin for `-`.
pub fn read_source(path: &str) -> Result<String, InputError> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(|e| input(format!("stdin: {e}")))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(|e| input(format!("{path}: {e}")))
    }
}

pub fn run(cli: Cli) -> Report {
    let result = match cli.command {
        Command::Verify { file, lambda, degree } => verify(&file, &lambda, degree),
        Command::Canon { file } => canon(&file),
        Command::Functional(args) => functional(&args),
        Command::Act { word, op } => act(&word, &op),
        Command::Transit { src, dst, mode } => transit(&src, &dst, mode),
        Command::Orbit { aut, chart } => orbit(aut, chart),
        Command::Selftest { seed } => Ok(run_selftest(seed)),
    };
    result.unwrap_or_else(|InputError(msg)| Report { code: 2, stdout: String::new(), stderr: format!("rbx: {msg}") })
}

fn verify(file: &str, lambda: &str, degree: usize) -> Outcome {
    let lambda = parse_rat(lambda)?;
    let t = match format::parse_operator(&read_source(file)?)? {
        OperatorFile::Analytic(op) => op.to_trunc(op.sufficient_truncation(degree)),
        OperatorFile::Trunc(t) => t,
    };
    match t.first_rb_failure(&lambda, degree)? {
        None => {
            Ok(Report::ok(json!({"rota_baxter": true, "lambda": lambda.to_string(), "degree": degree}).to_string()))
        }
        Some((n, m)) => Ok(Report::negative(
            json!({"rota_baxter": false, "lambda": lambda.to_string(), "degree": degree, "first_failure": [n, m]})
                .to_string(),
        )),
    }
}

fn canon(file: &str) -> Outcome {
    let t = match format::parse_operator(&read_source(file)?)? {
        OperatorFile::Analytic(op) => return Ok(Report::ok(format::analytic_json(&op))),
        OperatorFile::Trunc(t) => t,
    };
    match t.to_analytic() {
        Ok(op) => Ok(Report::ok(format::analytic_json(&op))),
        Err(e) => Ok(Report::no_answer(e)),
    }
}

/// `key=value` parameters of `functional`.
struct Params(Vec<(String, String)>);

impl Params {
    fn parse(raw: &[String]) -> Result<Self, InputError> {
        raw.iter()
            .map(|p| {
                p.split_once('=')
                    .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                    .ok_or_else(|| input(format!("expected key=value, got {p:?}")))
            })
            .collect::<Result<_, _>>()
            .map(Params)
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    fn require(&self, key: &str) -> Result<&str, InputError> {
        self.get(key).ok_or_else(|| input(format!("missing parameter {key}=")))
    }

    fn index(&self, key: &str) -> Result<usize, InputError> {
        let v = self.require(key)?;
        v.parse().map_err(|_| input(format!("{key}={v} is not a non-negative integer")))
    }

    fn multiplier(&self) -> Result<Poly, InputError> {
        let r: Poly = self.require("r")?.parse()?;
        if r.is_zero() {
            return Err(input("r must be nonzero"));
        }
        Ok(r)
    }

    fn head(&self) -> Result<Option<Vec<Rat>>, InputError> {
        self.get("head").map(|h| h.split(',').map(|q| parse_rat(q).map_err(InputError::from)).collect()).transpose()
    }
}

fn functional(args: &FunctionalArgs) -> Outcome {
    let p = Params::parse(&args.params)?;
    let r = p.multiplier()?;
    let elim = Eliminator::new(&r)?;
    match args.action {
        FunctionalAction::System => Ok(Report::ok(system_equation(&r, p.index("n")?, p.index("m")?).to_string())),
        FunctionalAction::Eliminate => Ok(Report::ok(elim.elimination_poly(p.index("t")?)?.to_string())),
        FunctionalAction::Reduce => Ok(Report::ok(elim.reduce(p.index("n")?, p.index("m")?)?.to_string())),
        FunctionalAction::Check => match p.head()? {
            Some(head) => check_head(&elim, &r, &head, args.budget),
            None => check_samples(&elim, &r, args.budget),
        },
    }
}

fn check_head(elim: &Eliminator, r: &Poly, head: &[Rat], budget: usize) -> Outcome {
    let in_mr = elim.member_mr(head, budget)?;
    let a = membership_nr(r, head)?;
    let out = json!({"member_Mr": in_mr, "a": a.as_ref().map(ToString::to_string)}).to_string();
    // a solution of the system off the curve is a counterexample
    if in_mr && a.is_none() {
        Ok(Report::negative(out))
    } else {
        Ok(Report::ok(out))
    }
}

/// Curve heads for `a` in `-3..3` by halves, each also bumped by one in every
/// coordinate: solutions of the system must be exactly the heads on the curve.
fn check_samples(elim: &Eliminator, r: &Poly, budget: usize) -> Outcome {
    let k = r.degree().unwrap();
    let (mut samples, mut solutions, mut agree) = (0, 0, true);
    for twice_a in -6..=6 {
        let a = Rat::new(twice_a.into(), 2.into());
        let head = FunCoords::on_curve(r, &a, k + 1)?.coords().to_vec();
        let mut heads = vec![head.clone()];
        for i in 0..=k {
            let mut bumped = head.clone();
            bumped[i] += Rat::from_integer(1.into());
            heads.push(bumped);
        }
        for h in heads {
            let in_mr = elim.member_mr(&h, budget)?;
            let on_curve = membership_nr(r, &h)?.is_some();
            samples += 1;
            solutions += usize::from(in_mr);
            agree &= in_mr == on_curve;
        }
    }
    let out =
        json!({"r": r.to_string(), "budget": budget, "samples": samples, "member_Mr": solutions, "consistent": agree})
            .to_string();
    Ok(if agree { Report::ok(out) } else { Report::negative(out) })
}

fn act(word: &str, op: &str) -> Outcome {
    let w = format::parse_word(&read_source(word)?)?;
    let (ops, many) = format::parse_ops(&read_source(op)?)?;
    let image = w.apply_tuple(&ops);
    Ok(Report::ok(if many { format::tuple_json(&image) } else { format::analytic_json(&image[0]) }))
}

fn transit(src: &str, dst: &str, mode: Mode) -> Outcome {
    let (src, _) = format::parse_ops(&read_source(src)?)?;
    let (dst, _) = format::parse_ops(&read_source(dst)?)?;
    let solved = match mode {
        Mode::Single => {
            if src.len() != 1 || dst.len() != 1 {
                return Err(input("single mode takes one operator on each side"));
            }
            solve_single(&src[0], &dst[0])
        }
        Mode::Independent => solve_tuple_independent(&src, &dst),
        Mode::Distinct => solve_distinct_tuple(&src, &dst),
    };
    let word = match solved {
        Ok(w) => w,
        Err(e) => return Ok(Report::no_answer(e)),
    };
    let verified = word.apply_tuple(&src) == dst;
    let out = json!({"word": format::word_value(&word), "verified": verified, "word_length": word.len()}).to_string();
    Ok(if verified { Report::ok(out) } else { Report::negative(out) })
}

fn read_analytic(path: &str) -> Result<AnalyticOp, InputError> {
    Ok(format::parse_analytic(&read_source(path)?)?)
}

fn orbit(aut: Option<Vec<String>>, chart: Option<Vec<String>>) -> Outcome {
    if let Some(files) = aut {
        let (op1, op2) = (read_analytic(&files[0])?, read_analytic(&files[1])?);
        return Ok(match rbx_core::actions::same_aut_orbit(&op1, &op2) {
            AutOrbit::Witness(w) => Report::ok(json!({"word": format::word_value(&w)}).to_string()),
            AutOrbit::NotInOrbit => Report::negative("NotInOrbit"),
        });
    }
    let args = chart.ok_or_else(|| input("orbit needs --aut or --chart"))?;
    let b = parse_rat(&args[0])?;
    let op = read_analytic(&args[1])?;
    let (a, rb) = modality_chart(&op, &b);
    let out = json!({"a": a.to_string(), "r_b": rb.to_string()}).to_string();
    // r(b) = 0 lies outside the chart
    Ok(if rb.is_zero() { Report::negative(out) } else { Report::ok(out) })
}

fn run_selftest(seed: u64) -> Report {
    let outcomes = selftest::run_all(seed);
    let mut lines: Vec<String> = outcomes.iter().map(ToString::to_string).collect();
    let passed = outcomes.iter().filter(|o| o.passed).count();
    lines.push(format!("seed {seed}: {passed}/{} criteria passed", outcomes.len()));
    let mut report = Report::ok(lines.join("\n"));
    if passed != outcomes.len() {
        report.code = 1;
    }
    report
}
