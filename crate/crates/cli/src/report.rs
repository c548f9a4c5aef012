//! Report types emitted by the subcommands, and their CSV form.

use dualnfg_core::topo::FundamentalCycle;
use dualnfg_core::verify::SuiteReport;
use dualnfg_core::{McEstimate, PartitionValue, Scale, SpanningTree, Word};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualGraphReport {
    pub vertices: Vec<String>,
    pub connection_matrix: Vec<Vec<i64>>,
    pub betti: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopoReport {
    pub vertices: Vec<String>,
    pub edges: Vec<String>,
    /// Rows are edges, columns vertices.
    pub connection_matrix: Vec<Vec<i64>>,
    pub betti: (usize, usize),
    pub spanning_tree: Vec<String>,
    /// Each cut set starts with its tree edge.
    pub fundamental_cut_sets: Vec<Vec<String>>,
    pub fundamental_cycles: Vec<FundamentalCycle>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<String>>,
    /// Rows are faces, columns edges.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second_connection_matrix: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual_graph: Option<DualGraphReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceReport {
    pub name: String,
    pub size: u128,
    pub generators: Vec<Word>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealizationRow {
    pub construction: String,
    pub unobservability: u128,
    pub uncontrollability: u128,
    pub observable: bool,
    pub controllable: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpacesReport {
    pub alphabet: String,
    /// Coordinate labels of the vertex spaces and the edge spaces.
    pub vertex_labels: Vec<String>,
    pub edge_labels: Vec<String>,
    pub spaces: Vec<SpaceReport>,
    pub realizations: Vec<RealizationRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValueReport {
    pub method: String,
    pub value: (f64, f64),
    pub declared_scale: Scale,
    pub normalized: (f64, f64),
    pub info_set_size: Option<usize>,
}

impl From<&PartitionValue> for ValueReport {
    fn from(v: &PartitionValue) -> Self {
        let n = v.normalized();
        ValueReport {
            method: v.method.clone(),
            value: (v.value.re, v.value.im),
            declared_scale: v.declared_scale,
            normalized: (n.re, n.im),
            info_set_size: v.info_set_size,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionReport {
    pub model: String,
    pub method: String,
    pub values: Vec<ValueReport>,
    /// The same representations of the dual graph model (planar4 only).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub dual_graph_values: Vec<ValueReport>,
    /// Excluded from determinism comparisons.
    pub wall_time_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McReport {
    pub model: String,
    pub estimate: f64,
    pub std_error: f64,
    pub declared_scale: Scale,
    pub normalized: f64,
    pub normalized_std_error: f64,
    pub num_samples: u64,
    pub seed: u64,
    pub tree: SpanningTree,
    pub wall_time_ms: f64,
}

impl McReport {
    pub fn new(model: String, e: &McEstimate, wall_time_ms: f64) -> Self {
        McReport {
            model,
            estimate: e.estimate,
            std_error: e.std_error,
            declared_scale: e.declared_scale,
            normalized: e.normalized(),
            normalized_std_error: e.normalized_std_error(),
            num_samples: e.num_samples,
            seed: e.seed,
            tree: e.tree_used.clone(),
            wall_time_ms,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suites: Vec<SuiteReport>,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Renders any report. CSV has one `path,value` row per leaf of the JSON
/// form; array indices and object keys are joined with dots.
pub fn render<T: Serialize>(report: &T, format: Format) -> String {
    let value = serde_json::to_value(report).expect("reports serialize");
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&value).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut rows = Vec::new();
            flatten("", &value, &mut rows);
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["path", "value"]).expect("in-memory write");
            for (k, v) in rows {
                w.write_record([k, v]).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8")
        }
    }
}

pub fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| flatten(&join(k), x, out)),
        Value::Array(a) => a
            .iter()
            .enumerate()
            .for_each(|(i, x)| flatten(&join(&i.to_string()), x, out)),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}
