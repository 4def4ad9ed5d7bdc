//! JSON instance schemas.
//!
//! A file holds one instance. The `problem` field selects the schema; it
//! may be omitted for intersection (`m1`/`m2`) and matching (`matroid`)
//! instances.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::applications::{BipartiteInstance, ColoredGraph, DegreeConstrainedInstance};
use crate::brute::instance_digest;
use crate::error::{input, Error, Result};
use crate::graph::Graph;
use crate::matching::{SolverKind, TractablePair};
use crate::matroid::Matroid;
use crate::set::ElementSet;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum MatroidSpec {
    Free { n: usize },
    Uniform { n: usize, rank: usize },
    /// Element `i` lies in block `labels[i]`.
    Partition { labels: Vec<usize>, capacities: Vec<usize> },
    Graphic(Graph),
    Cographic(Graph),
    /// Columns of a 0/1 matrix over GF(2), one string per row.
    LinearGf2 { rows: Vec<String> },
    /// Explicit bases; independence is containment in a listed base. The
    /// listed family is not required to satisfy the matroid axioms.
    Bases { n: usize, bases: Vec<ElementSet> },
}

impl MatroidSpec {
    pub fn build(&self) -> Result<Matroid> {
        match self {
            MatroidSpec::Free { n } => Ok(Matroid::free(*n)),
            MatroidSpec::Uniform { n, rank } => Ok(Matroid::uniform(*n, *rank)),
            MatroidSpec::Partition { labels, capacities } => Matroid::partition_by_label(labels, capacities),
            MatroidSpec::Graphic(g) => Matroid::graphic(g.clone()),
            MatroidSpec::Cographic(g) => Matroid::cographic(g.clone()),
            MatroidSpec::LinearGf2 { rows } => Matroid::linear_gf2(rows),
            MatroidSpec::Bases { n, bases } => Matroid::from_bases(*n, bases.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeList {
    pub edges: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "problem", rename_all = "kebab-case")]
pub enum Instance {
    Intersection {
        m1: MatroidSpec,
        m2: MatroidSpec,
    },
    Matching {
        matroid: MatroidSpec,
        graph: EdgeList,
        #[serde(default = "default_solver")]
        solver: SolverKind,
    },
    BMatching(BipartiteInstance),
    ColorfulForest(ColoredGraph),
    Dcs(DegreeConstrainedInstance),
    Cvc {
        graph: Graph,
    },
}

fn default_solver() -> SolverKind {
    SolverKind::Brute
}

impl Instance {
    pub fn problem(&self) -> &'static str {
        match self {
            Instance::Intersection { .. } => "intersection",
            Instance::Matching { .. } => "matching",
            Instance::BMatching(_) => "b-matching",
            Instance::ColorfulForest(_) => "colorful-forest",
            Instance::Dcs(_) => "dcs",
            Instance::Cvc { .. } => "cvc",
        }
    }

    /// The two matroids of an intersection-type instance, including the
    /// encoded applications.
    pub fn matroid_pair(&self) -> Result<(Matroid, Matroid)> {
        match self {
            Instance::Intersection { m1, m2 } => {
                let (a, b) = (m1.build()?, m2.build()?);
                if a.ground() != b.ground() {
                    return input("m1 and m2 have different ground sets");
                }
                Ok((a, b))
            }
            Instance::BMatching(inst) => crate::applications::encode_b_matching(inst),
            Instance::ColorfulForest(g) => {
                g.graph.validate()?;
                crate::applications::encode_colorful_forest(g)
            }
            Instance::Dcs(inst) => crate::applications::encode_degree_constrained(inst),
            _ => input(format!("a {} instance is not a matroid pair", self.problem())),
        }
    }

    pub fn tractable_pair(&self) -> Result<TractablePair> {
        match self {
            Instance::Matching {
                matroid,
                graph,
                solver,
            } => TractablePair::with_solver(matroid.build()?, graph.edges.clone(), *solver),
            _ => input(format!("a {} instance is not a matroid/graph pair", self.problem())),
        }
    }

    pub fn cvc_graph(&self) -> Result<&Graph> {
        match self {
            Instance::Cvc { graph } => {
                graph.validate()?;
                Ok(graph)
            }
            _ => input(format!("a {} instance is not a CVC instance", self.problem())),
        }
    }
}

/// A parsed instance and the digest of its canonical JSON.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub instance: Instance,
    pub digest: String,
}

pub fn parse_instance(text: &str) -> Result<Loaded> {
    let mut value: Value = serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed JSON: {e}")))?;
    let Some(object) = value.as_object_mut() else {
        return input("an instance must be a JSON object");
    };
    if !object.contains_key("problem") {
        let inferred = if object.contains_key("m1") {
            "intersection"
        } else if object.contains_key("matroid") {
            "matching"
        } else {
            return input("missing \"problem\" field");
        };
        object.insert("problem".into(), Value::from(inferred));
    }
    // serde_json's default map is ordered by key, so this is canonical.
    let digest = instance_digest(&serde_json::to_vec(&value).expect("a Value always serializes"));
    let instance = serde_json::from_value(value).map_err(|e| Error::Input(format!("invalid instance: {e}")))?;
    Ok(Loaded { instance, digest })
}

/// Parses a set given as ids separated by commas and/or whitespace.
pub fn parse_set(text: &str) -> Result<ElementSet> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| Error::Input(format!("bad element id {t:?}"))))
        .collect()
}
