//! JSON file formats. Scalars and polynomials are stored as their text forms.
//!
//! ```text
//! operator   {"a":"1/2","r":"x^2 - 1"}
//! truncated  {"N":2,"images":["x","1/2*x^2","1/3*x^3"]}
//! tuple      [operator, ...]
//! word       [{"type":"HB","b":"1","s":"x - 1"}, {"type":"GA","nu":"2"}, ...]
//! ```

use rbx_core::rat::parse_rat;
use rbx_core::{AnalyticOp, Generator, GeneratorKind, Poly, Rat, TruncOp, Word};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Core(#[from] rbx_core::Error),
    #[error("{0}")]
    Shape(String),
}

pub type Result<T> = std::result::Result<T, FormatError>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OpJson {
    a: String,
    r: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TruncJson {
    #[serde(rename = "N")]
    n: usize,
    images: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GenJson {
    #[serde(rename = "type")]
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    b: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    s: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nu: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mu: Option<String>,
}

/// Contents of an operator file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorFile {
    Analytic(AnalyticOp),
    Trunc(TruncOp),
}

fn poly(s: &str) -> Result<Poly> {
    Ok(s.parse()?)
}

fn scalar(s: &str) -> Result<Rat> {
    Ok(parse_rat(s)?)
}

fn field(value: Option<String>, kind: &str, name: &str) -> Result<String> {
    value.ok_or_else(|| FormatError::Shape(format!("{kind} generator needs \"{name}\"")))
}

fn op_from_json(j: OpJson) -> Result<AnalyticOp> {
    Ok(AnalyticOp::new(scalar(&j.a)?, poly(&j.r)?)?)
}

fn op_to_json(op: &AnalyticOp) -> OpJson {
    OpJson { a: op.base_point().to_string(), r: op.multiplier().to_string() }
}

fn trunc_from_json(j: TruncJson) -> Result<TruncOp> {
    if j.images.len() != j.n + 1 {
        return Err(FormatError::Shape(format!("N = {} needs {} images, got {}", j.n, j.n + 1, j.images.len())));
    }
    let images = j.images.iter().map(|s| poly(s)).collect::<Result<_>>()?;
    Ok(TruncOp::new(images)?)
}

pub fn parse_operator(text: &str) -> Result<OperatorFile> {
    let value: Value = serde_json::from_str(text)?;
    let is_trunc = value.get("images").is_some();
    if is_trunc {
        Ok(OperatorFile::Trunc(trunc_from_json(serde_json::from_value(value)?)?))
    } else {
        Ok(OperatorFile::Analytic(op_from_json(serde_json::from_value(value)?)?))
    }
}

pub fn parse_analytic(text: &str) -> Result<AnalyticOp> {
    op_from_json(serde_json::from_str(text)?)
}

pub fn parse_trunc(text: &str) -> Result<TruncOp> {
    trunc_from_json(serde_json::from_str(text)?)
}

/// A tuple file, or a single operator read as a one-element tuple. The flag
/// records which form was given.
pub fn parse_ops(text: &str) -> Result<(Vec<AnalyticOp>, bool)> {
    let value: Value = serde_json::from_str(text)?;
    if value.is_array() {
        let items: Vec<OpJson> = serde_json::from_value(value)?;
        Ok((items.into_iter().map(op_from_json).collect::<Result<_>>()?, true))
    } else {
        Ok((vec![op_from_json(serde_json::from_value(value)?)?], false))
    }
}

pub fn parse_word(text: &str) -> Result<Word> {
    let items: Vec<GenJson> = serde_json::from_str(text)?;
    items.into_iter().map(generator_from_json).collect()
}

fn generator_from_json(j: GenJson) -> Result<Generator> {
    let kind = match j.kind.as_str() {
        "HB" | "HB2" => {
            let b = scalar(&field(j.b, &j.kind, "b")?)?;
            let s = poly(&field(j.s, &j.kind, "s")?)?;
            if j.kind == "HB" {
                GeneratorKind::Hb { b, s }
            } else {
                GeneratorKind::Hb2 { b, s }
            }
        }
        "GA" => GeneratorKind::Ga { nu: scalar(&field(j.nu, "GA", "nu")?)? },
        "GM" => GeneratorKind::Gm { mu: scalar(&field(j.mu, "GM", "mu")?)? },
        other => return Err(FormatError::Shape(format!("unknown generator type {other:?}"))),
    };
    Ok(Generator::new(kind)?)
}

fn generator_to_json(g: &Generator) -> GenJson {
    let mut j = GenJson { kind: String::new(), b: None, s: None, nu: None, mu: None };
    match g.kind() {
        GeneratorKind::Hb { b, s } | GeneratorKind::Hb2 { b, s } => {
            j.kind = if matches!(g.kind(), GeneratorKind::Hb { .. }) { "HB" } else { "HB2" }.into();
            j.b = Some(b.to_string());
            j.s = Some(s.to_string());
        }
        GeneratorKind::Ga { nu } => {
            j.kind = "GA".into();
            j.nu = Some(nu.to_string());
        }
        GeneratorKind::Gm { mu } => {
            j.kind = "GM".into();
            j.mu = Some(mu.to_string());
        }
    }
    j
}

fn to_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain structs serialize")
}

pub fn analytic_json(op: &AnalyticOp) -> String {
    to_string(&op_to_json(op))
}

pub fn trunc_json(t: &TruncOp) -> String {
    let images = t.images().iter().map(ToString::to_string).collect();
    to_string(&TruncJson { n: t.truncation(), images })
}

pub fn tuple_json(ops: &[AnalyticOp]) -> String {
    to_string(&ops.iter().map(op_to_json).collect::<Vec<_>>())
}

pub fn word_value(w: &Word) -> Value {
    serde_json::to_value(w.generators().iter().map(generator_to_json).collect::<Vec<_>>())
        .expect("plain structs serialize")
}

pub fn word_json(w: &Word) -> String {
    word_value(w).to_string()
}
