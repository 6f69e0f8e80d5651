//! Star-shaped resolution graphs, their expansion into plumbing trees, and
//! intersection matrices.
//!
//! A star graph has a central curve `C` of genus `g` and self-intersection
//! `-d`, with `t` arms. Arm `i` is the Hirzebruch–Jung string of `n_i/q_i`,
//! stored node-outward: `E_1` meets `C`, `E_s` is the free end.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::{hj_expand, int, is_positive, rat, HJExpansion, Rational};
use crate::matrix::IntMatrix;

/// One arm `n/q` of a star graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arm {
    pub n: i64,
    pub q: i64,
}

impl Arm {
    pub const fn new(n: i64, q: i64) -> Self {
        Arm { n, q }
    }

    /// `n >= 2`, `0 < q < n`, `gcd(n, q) = 1`.
    pub fn check(&self) -> Result<()> {
        let Arm { n, q } = *self;
        if n < 2 {
            return Err(Error::validation(format!("arm {self}: n = {n} must be >= 2")));
        }
        if q <= 0 || q >= n {
            return Err(Error::validation(format!(
                "arm {self}: q = {q} must satisfy 0 < q < n"
            )));
        }
        if n.gcd(&q) != 1 {
            return Err(Error::validation(format!(
                "arm {self}: gcd(n, q) = {} must be 1",
                n.gcd(&q)
            )));
        }
        Ok(())
    }

    pub fn expansion(&self) -> Result<HJExpansion> {
        self.check()?;
        hj_expand(self.n, self.q)
    }
}

impl fmt::Display for Arm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.n, self.q)
    }
}

/// The star-shaped dual graph `(g, d, [(n_i, q_i)])`.
///
/// Any `d` and any arm data are representable; [`validate_star`] reports what
/// is wrong with a given graph, and the computations refuse invalid input.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StarGraph {
    pub genus: u32,
    #[serde(rename = "d")]
    pub central_weight: i64,
    #[serde(with = "arm_pairs")]
    pub arms: Vec<Arm>,
}

mod arm_pairs {
    use super::Arm;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(arms: &[Arm], s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[i64; 2]> = arms.iter().map(|a| [a.n, a.q]).collect();
        pairs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Arm>, D::Error> {
        let pairs = Vec::<[i64; 2]>::deserialize(d)?;
        Ok(pairs.into_iter().map(|[n, q]| Arm::new(n, q)).collect())
    }
}

impl StarGraph {
    pub fn new(genus: u32, central_weight: i64, arms: Vec<Arm>) -> Self {
        StarGraph {
            genus,
            central_weight,
            arms,
        }
    }

    /// Shorthand for tests and examples: `StarGraph::from_pairs(0, 2, &[(2, 1), (3, 2)])`.
    pub fn from_pairs(genus: u32, central_weight: i64, arms: &[(i64, i64)]) -> Self {
        Self::new(
            genus,
            central_weight,
            arms.iter().map(|&(n, q)| Arm::new(n, q)).collect(),
        )
    }

    pub fn arm_count(&self) -> usize {
        self.arms.len()
    }

    pub fn check_arms(&self) -> Result<()> {
        self.arms.iter().try_for_each(Arm::check)
    }

    /// `e = d - sum q_i/n_i`.
    pub fn euler_number(&self) -> Result<Rational> {
        self.check_arms()?;
        Ok(self
            .arms
            .iter()
            .fold(int(self.central_weight), |acc, a| acc - rat(a.q, a.n)))
    }

    /// `chi = 2g - 2 + sum (1 - 1/n_i)`.
    pub fn orbifold_euler_characteristic(&self) -> Result<Rational> {
        self.check_arms()?;
        let base = int(2 * i64::from(self.genus) - 2);
        Ok(self
            .arms
            .iter()
            .fold(base, |acc, a| acc + rat(a.n - 1, a.n)))
    }

    /// Genus zero with at most two arms: cyclic quotient (or non-minimal).
    pub fn is_cyclic_quotient_range(&self) -> bool {
        self.genus == 0 && self.arms.len() <= 2
    }

    /// Arms valid and `e > 0`.
    pub fn require_valid(&self) -> Result<Rational> {
        let e = self.euler_number()?;
        if !is_positive(&e) {
            return Err(Error::NotNegativeDefinite { e: e.to_string() });
        }
        Ok(e)
    }

    /// Valid and outside the cyclic-quotient range; returns `e`.
    pub fn require_star_formulas(&self) -> Result<Rational> {
        let e = self.require_valid()?;
        if self.is_cyclic_quotient_range() {
            return Err(Error::CyclicQuotient {
                arms: self.arms.len(),
            });
        }
        Ok(e)
    }

    pub fn require_genus_zero(&self, what: &'static str) -> Result<()> {
        if self.genus > 0 {
            return Err(Error::PositiveGenus {
                genus: self.genus,
                what,
            });
        }
        Ok(())
    }

    /// The same graph with arms sorted by `(n, q)`.
    pub fn canonical(&self) -> StarGraph {
        let mut arms = self.arms.clone();
        arms.sort();
        StarGraph::new(self.genus, self.central_weight, arms)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("star graph serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("star graph JSON: {e}")))
    }

    /// Parses either the text form or the JSON form.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            Self::from_json(s)
        } else {
            parse_text(s)
        }
    }
}

/// `star g=<int> d=<int> arms=<n1>/<q1>,<n2>/<q2>,...`
impl fmt::Display for StarGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "star g={} d={} arms=", self.genus, self.central_weight)?;
        for (i, a) in self.arms.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl FromStr for StarGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StarGraph::parse(s)
    }
}

fn parse_text(s: &str) -> Result<StarGraph> {
    let mut tokens = s.split_whitespace();
    if tokens.next() != Some("star") {
        return Err(Error::Parse(format!(
            "expected `star g=<int> d=<int> arms=...`, got {s:?}"
        )));
    }
    let (mut genus, mut d, mut arms) = (None, None, None);
    for tok in tokens {
        let (key, value) = tok
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got {tok:?}")))?;
        let slot_taken = match key {
            "g" => genus
                .replace(value.parse::<u32>().map_err(|_| {
                    Error::Parse(format!("g must be a nonnegative integer, got {value:?}"))
                })?)
                .is_some(),
            "d" => d
                .replace(value.parse::<i64>().map_err(|_| {
                    Error::Parse(format!("d must be an integer, got {value:?}"))
                })?)
                .is_some(),
            "arms" => arms.replace(parse_arms(value)?).is_some(),
            _ => return Err(Error::Parse(format!("unknown key {key:?}"))),
        };
        if slot_taken {
            return Err(Error::Parse(format!("duplicate key {key:?}")));
        }
    }
    Ok(StarGraph::new(
        genus.ok_or_else(|| Error::Parse("missing g=".into()))?,
        d.ok_or_else(|| Error::Parse("missing d=".into()))?,
        arms.ok_or_else(|| Error::Parse("missing arms=".into()))?,
    ))
}

fn parse_arms(value: &str) -> Result<Vec<Arm>> {
    if value.is_empty() {
        return Ok(Vec::new());
    }
    value
        .split(',')
        .map(|item| {
            let (n, q) = item
                .split_once('/')
                .ok_or_else(|| Error::Parse(format!("arm must be n/q, got {item:?}")))?;
            let n = n
                .parse()
                .map_err(|_| Error::Parse(format!("bad n in arm {item:?}")))?;
            let q = q
                .parse()
                .map_err(|_| Error::Parse(format!("bad q in arm {item:?}")))?;
            Ok(Arm::new(n, q))
        })
        .collect()
}

/// Which curve a plumbing vertex is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexLabel {
    Central,
    /// Zero-based arm index and zero-based position counted out from `C`.
    String { arm: usize, position: usize },
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Central => f.write_str("C"),
            VertexLabel::String { arm, position } => write!(f, "A{}.{}", arm + 1, position + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlumbingVertex {
    pub self_intersection: i64,
    pub genus: u32,
    pub label: VertexLabel,
}

/// A plumbing tree: curves with self-intersection and genus, joined by
/// transverse (+1) intersections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlumbingGraph {
    pub vertices: Vec<PlumbingVertex>,
    pub edges: Vec<(usize, usize)>,
}

impl PlumbingGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn labels(&self) -> Vec<VertexLabel> {
        self.vertices.iter().map(|v| v.label).collect()
    }

    /// Index of the vertex with the given label.
    pub fn index_of(&self, label: VertexLabel) -> Option<usize> {
        self.vertices.iter().position(|v| v.label == label)
    }

    /// Connected and `|V| = |E| + 1`.
    pub fn is_tree(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 || self.edges.len() + 1 != n {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                let w = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Replaces every arm by its Hirzebruch–Jung string.
///
/// Vertex 0 is the central curve; each string follows in arm order, node-outward.
pub fn expand(sg: &StarGraph) -> Result<PlumbingGraph> {
    sg.check_arms()?;
    let mut vertices = vec![PlumbingVertex {
        self_intersection: -sg.central_weight,
        genus: sg.genus,
        label: VertexLabel::Central,
    }];
    let mut edges = Vec::new();
    for (arm_index, arm) in sg.arms.iter().enumerate() {
        let cf = arm.expansion()?;
        let mut previous = 0;
        for (position, &b) in cf.entries().iter().enumerate() {
            let v = vertices.len();
            vertices.push(PlumbingVertex {
                self_intersection: -b,
                genus: 0,
                label: VertexLabel::String {
                    arm: arm_index,
                    position,
                },
            });
            edges.push((previous, v));
            previous = v;
        }
    }
    Ok(PlumbingGraph { vertices, edges })
}

/// The intersection form of a plumbing graph, with its vertex labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionMatrix {
    pub matrix: IntMatrix,
    pub labels: Vec<VertexLabel>,
}

impl IntersectionMatrix {
    pub fn size(&self) -> usize {
        self.labels.len()
    }
}

pub fn intersection_matrix(pg: &PlumbingGraph) -> IntersectionMatrix {
    let n = pg.vertices.len();
    let mut m = IntMatrix::zeros(n, n);
    for (i, v) in pg.vertices.iter().enumerate() {
        m[(i, i)] = v.self_intersection.into();
    }
    for &(a, b) in &pg.edges {
        m[(a, b)] = 1.into();
        m[(b, a)] = 1.into();
    }
    IntersectionMatrix {
        matrix: m,
        labels: pg.labels(),
    }
}

pub fn is_negative_definite(m: &IntersectionMatrix) -> bool {
    m.matrix.is_negative_definite()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Ok,
    Warning,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationIssue {
    /// An arm violates `n >= 2`, `0 < q < n` or coprimality.
    InvalidArm { index: usize, message: String },
    /// `e <= 0`: the star graph is not negative definite.
    NonPositiveEuler { e: Rational },
    /// `g = 0` with at most two arms.
    CyclicQuotientRange { arms: usize },
}

impl ValidationIssue {
    pub fn severity(&self) -> Severity {
        match self {
            ValidationIssue::InvalidArm { .. } | ValidationIssue::NonPositiveEuler { .. } => {
                Severity::Error
            }
            ValidationIssue::CyclicQuotientRange { .. } => Severity::Warning,
        }
    }
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationIssue::InvalidArm { index, message } => {
                write!(f, "arm {}: {message}", index + 1)
            }
            ValidationIssue::NonPositiveEuler { e } => {
                write!(f, "e = {e}: not negative definite (not a singularity graph)")
            }
            ValidationIssue::CyclicQuotientRange { arms } => write!(
                f,
                "g = 0 with t = {arms} <= 2: cyclic-quotient or non-minimal range; star formulas refuse this graph"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
    /// `e`, when the arms are valid enough to compute it.
    pub e: Option<Rational>,
}

impl ValidationReport {
    pub fn severity(&self) -> Severity {
        self.issues
            .iter()
            .map(ValidationIssue::severity)
            .max()
            .unwrap_or(Severity::Ok)
    }

    pub fn is_ok(&self) -> bool {
        self.severity() == Severity::Ok
    }

    pub fn has_errors(&self) -> bool {
        self.severity() == Severity::Error
    }
}

pub fn validate_star(sg: &StarGraph) -> ValidationReport {
    let mut issues: Vec<ValidationIssue> = sg
        .arms
        .iter()
        .enumerate()
        .filter_map(|(index, arm)| {
            arm.check().err().map(|e| ValidationIssue::InvalidArm {
                index,
                message: match e {
                    Error::Validation(m) => m,
                    other => other.to_string(),
                },
            })
        })
        .collect();
    let e = if issues.is_empty() {
        sg.euler_number().ok()
    } else {
        None
    };
    if let Some(e) = &e {
        if e.is_zero() || !is_positive(e) {
            issues.push(ValidationIssue::NonPositiveEuler { e: e.clone() });
        }
    }
    if sg.is_cyclic_quotient_range() {
        issues.push(ValidationIssue::CyclicQuotientRange {
            arms: sg.arms.len(),
        });
    }
    ValidationReport { issues, e }
}
