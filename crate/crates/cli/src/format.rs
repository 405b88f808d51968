//! JSON file formats.
//!
//! Rationals are strings in lowest terms (`"3/4"`, `"-2"`), matrices are
//! row-major arrays of rationals, and a group reference is either the name
//! of a built-in group (`"S3"`), a path to a group file relative to the
//! referencing file, or an inline group spec. [`to_canonical`] sorts object
//! keys, so a canonical file survives parse and reprint byte for byte.

use std::collections::BTreeMap;

use eqalg_core::group::GroupSpec;
use eqalg_core::linalg::{format_q, parse_q};
use eqalg_core::{QMatrix, Q};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Name(String),
    Spec(GroupSpec),
}

pub type Matrix = Vec<Vec<String>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitEntry {
    pub stabilizer_class: usize,
    pub multiplicity: usize,
}

/// A G-set by orbit multiplicities, or by an explicit action table
/// (`action[g][x]`), which is normalized to orbits on load.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GSetBody {
    Orbits { orbits: Vec<OrbitEntry> },
    Action { size: usize, action: Vec<Vec<usize>> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GSetFile {
    pub group: GroupRef,
    #[serde(flatten)]
    pub body: GSetBody,
}

/// A span `left <- apex -> right` between canonical G-sets; `back` and
/// `fwd` are point assignments out of the apex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpanFile {
    pub group: GroupRef,
    pub left: Vec<OrbitEntry>,
    pub apex: Vec<OrbitEntry>,
    pub right: Vec<OrbitEntry>,
    pub back: Vec<usize>,
    pub fwd: Vec<usize>,
}

/// Nonzero coefficients keyed by class index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BurnsideFile {
    pub group: GroupRef,
    pub coeffs: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MackeyMapEntry {
    pub source: usize,
    pub target: usize,
    pub index: usize,
    /// `M(G/H_target) -> M(G/H_source)`.
    pub res: Matrix,
    /// `M(G/H_source) -> M(G/H_target)`.
    pub tr: Matrix,
}

/// One entry per orbit-category map, ordered by `(source, target, index)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MackeyFile {
    pub group: GroupRef,
    pub dims: Vec<usize>,
    pub maps: Vec<MackeyMapEntry>,
}

/// Pairs `[k_class, h_class]` of canonical representatives, with a third
/// entry selecting the pair orbit when a class pair has several.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransferFile {
    pub group: GroupRef,
    pub pairs: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    /// Degree of each basis element, ascending.
    pub degrees: Vec<i64>,
    /// Nonzero structure constants `[i, j, k, "c"]`: `b_i b_j` has `c` at `b_k`.
    pub products: Vec<(usize, usize, usize, String)>,
    pub unit: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub differential: Option<Matrix>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismEntry {
    pub source: usize,
    pub target: usize,
    /// Orbit-category index of the map.
    pub index: usize,
    pub matrix: Matrix,
}

/// A diagram over the norm category of `(group, pairs)`, one algebra per
/// subgroup class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramFile {
    pub group: GroupRef,
    pub pairs: Vec<Vec<usize>>,
    pub algebras: Vec<AlgebraFile>,
    pub morphisms: Vec<MorphismEntry>,
}

fn sort_keys(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            let sorted: BTreeMap<String, Value> = map.into_iter().map(|(k, v)| (k, sort_keys(v))).collect();
            Value::Object(sorted.into_iter().collect())
        }
        Value::Array(items) => Value::Array(items.into_iter().map(sort_keys).collect()),
        other => other,
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_canonical<T: Serialize>(value: &T) -> String {
    let v = sort_keys(serde_json::to_value(value).expect("file types serialize"));
    let mut out = serde_json::to_string_pretty(&v).expect("values serialize");
    out.push('\n');
    out
}

pub fn rational(x: &Q) -> String {
    format_q(x)
}

pub fn parse_rational(s: &str) -> Result<Q, CliError> {
    parse_q(s).ok_or_else(|| CliError::Malformed(format!("not a rational: {s:?}")))
}

pub fn matrix(m: &QMatrix) -> Matrix {
    m.to_rows().iter().map(|r| r.iter().map(rational).collect()).collect()
}

/// Parses a row-major matrix with the expected shape; an empty row list
/// stands for any `0 x cols` matrix.
pub fn parse_matrix(m: &Matrix, rows: usize, cols: usize) -> Result<QMatrix, CliError> {
    if m.len() != rows || m.iter().any(|r| r.len() != cols) {
        return Err(CliError::Malformed(format!("expected a {rows}x{cols} matrix")));
    }
    let parsed = m
        .iter()
        .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<Q>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(QMatrix::from_rows(parsed, cols)?)
}
