//! File formats for graphs, complexes and models.
//!
//! Graph file:
//! `{"vertices":[..], "edges":[{"id","tail","head"}..], "faces":[{"id","boundary":[["e3",-1],..]}..], "embedding":"plane"|"sphere"}`
//! with `faces` and `embedding` optional together.
//!
//! Model file:
//! `{"graph": <path or inline graph>, "alphabet": "Z2",
//!   "weights": {"kind":"ising"|"potts", "beta": b, "J": j | {"e1": j1, ..}} | {"kind":"table", "tables": {"e1": [..], ..}},
//!   "field": {"v1": [..], ..}}`
//! A relative graph path is resolved against the model file's directory.

use crate::error::{invalid, Error, Result};
use crate::group::{FiniteAbelianGroup, GroupFunction};
use crate::ising::{ising_weights, potts_weights, IsingTypeModel};
use crate::topo::{Embedding, OrientedGraph, PlanarComplex};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub id: String,
    pub tail: String,
    pub head: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaceSpec {
    pub id: String,
    pub boundary: Vec<(String, i8)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub faces: Vec<FaceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<Embedding>,
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&read(path)?)
    }

    pub fn graph(&self) -> Result<OrientedGraph> {
        let es: Vec<(&str, &str, &str)> = self
            .edges
            .iter()
            .map(|e| (e.id.as_str(), e.tail.as_str(), e.head.as_str()))
            .collect();
        let vs: Vec<&str> = self.vertices.iter().map(String::as_str).collect();
        OrientedGraph::new(&vs, &es)
    }

    /// The complex, when faces are given.
    pub fn complex(&self) -> Result<Option<PlanarComplex>> {
        match (self.faces.is_empty(), self.embedding) {
            (true, None) => Ok(None),
            (false, None) => Err(invalid(
                "faces given without an embedding (plane or sphere)",
            )),
            (_, Some(emb)) => {
                let faces: Vec<(String, Vec<(String, i8)>)> = self
                    .faces
                    .iter()
                    .map(|f| (f.id.clone(), f.boundary.clone()))
                    .collect();
                PlanarComplex::new(self.graph()?, &faces, emb).map(Some)
            }
        }
    }

    pub fn from_graph(g: &OrientedGraph) -> Self {
        GraphFile {
            vertices: g.vertices().to_vec(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeSpec {
                    id: e.id.clone(),
                    tail: g.vertices()[e.tail].clone(),
                    head: g.vertices()[e.head].clone(),
                })
                .collect(),
            faces: Vec::new(),
            embedding: None,
        }
    }

    pub fn from_complex(k: &PlanarComplex) -> Self {
        let mut f = Self::from_graph(k.graph());
        let labels = k.graph().edge_labels();
        f.faces = k
            .faces()
            .iter()
            .map(|face| FaceSpec {
                id: face.id.clone(),
                boundary: face
                    .boundary
                    .iter()
                    .map(|&(e, s)| (labels[e].clone(), s))
                    .collect(),
            })
            .collect();
        f.embedding = Some(k.embedding());
        f
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphRef {
    Path(String),
    Inline(GraphFile),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coupling {
    Uniform(f64),
    PerEdge(BTreeMap<String, f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum WeightSpec {
    Ising {
        beta: f64,
        #[serde(rename = "J", default = "unit_coupling")]
        j: Coupling,
    },
    Potts {
        beta: f64,
        #[serde(rename = "J", default = "unit_coupling")]
        j: Coupling,
    },
    Table {
        tables: BTreeMap<String, Vec<f64>>,
    },
}

fn unit_coupling() -> Coupling {
    Coupling::Uniform(1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub graph: GraphRef,
    pub alphabet: String,
    pub weights: WeightSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<BTreeMap<String, Vec<f64>>>,
}

/// A model together with its complex, when the graph file has faces.
#[derive(Debug, Clone)]
pub struct LoadedModel {
    pub model: IsingTypeModel,
    pub complex: Option<PlanarComplex>,
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<LoadedModel> {
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Self::parse(&read(path)?)?.build(&base)
    }

    pub fn build(&self, base: &Path) -> Result<LoadedModel> {
        let gf = match &self.graph {
            GraphRef::Inline(g) => g.clone(),
            GraphRef::Path(p) => {
                let p = PathBuf::from(p);
                GraphFile::load(&if p.is_absolute() { p } else { base.join(p) })?
            }
        };
        let graph = gf.graph()?;
        let complex = gf.complex()?;
        let alphabet: FiniteAbelianGroup = self.alphabet.parse()?;
        let per_edge = |j: &Coupling| -> Result<Vec<f64>> {
            match j {
                Coupling::Uniform(x) => Ok(vec![*x; graph.num_edges()]),
                Coupling::PerEdge(map) => {
                    check_keys(map.keys(), &graph.edge_labels(), "coupling")?;
                    Ok(graph.edges().iter().map(|e| map[&e.id]).collect())
                }
            }
        };
        let (weights, beta) = match &self.weights {
            WeightSpec::Ising { beta, j } => {
                if alphabet.cyclic_orders() != [2] {
                    return Err(invalid(format!(
                        "Ising weights need alphabet Z2, got {alphabet}"
                    )));
                }
                (ising_weights(*beta, &per_edge(j)?)?, Some(*beta))
            }
            WeightSpec::Potts { beta, j } => {
                let &[q] = alphabet.cyclic_orders() else {
                    return Err(invalid(format!(
                        "Potts weights need a cyclic alphabet Zq, got {alphabet}"
                    )));
                };
                (potts_weights(*beta, &per_edge(j)?, q)?, Some(*beta))
            }
            WeightSpec::Table { tables } => {
                check_keys(tables.keys(), &graph.edge_labels(), "weight table")?;
                let w = graph
                    .edges()
                    .iter()
                    .map(|e| GroupFunction::from_real(alphabet.clone(), &tables[&e.id]))
                    .collect::<Result<Vec<_>>>()?;
                (w, None)
            }
        };
        let mut model = IsingTypeModel::new(graph, alphabet.clone(), weights)?;
        model.beta = beta;
        if let Some(field) = &self.field {
            check_keys(field.keys(), model.graph.vertices(), "field")?;
            let g = model
                .graph
                .vertices()
                .iter()
                .map(|v| GroupFunction::from_real(alphabet.clone(), &field[v]))
                .collect::<Result<Vec<_>>>()?;
            model = model.with_field(g)?;
        }
        Ok(LoadedModel { model, complex })
    }
}

fn check_keys<'a>(
    keys: impl Iterator<Item = &'a String>,
    expected: &[String],
    what: &str,
) -> Result<()> {
    let keys: Vec<&String> = keys.collect();
    if let Some(k) = keys.iter().find(|k| !expected.contains(k)) {
        return Err(Error::UnknownLabel(format!("{k} (in {what})")));
    }
    if let Some(missing) = expected.iter().find(|e| !keys.contains(e)) {
        return Err(invalid(format!("{what} has no entry for `{missing}`")));
    }
    Ok(())
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn graph_round_trip() {
        let k = fixtures::example1_complex(Embedding::Sphere, false);
        let f = GraphFile::from_complex(&k);
        let text = serde_json::to_string(&f).unwrap();
        let back = GraphFile::parse(&text).unwrap();
        assert_eq!(back.complex().unwrap().unwrap(), k);
        let plain = GraphFile::from_graph(&fixtures::example1());
        assert!(GraphFile::parse(&serde_json::to_string(&plain).unwrap())
            .unwrap()
            .complex()
            .unwrap()
            .is_none());
    }

    #[test]
    fn self_loop_is_named() {
        let text = r#"{"vertices":["a","b"],"edges":[{"id":"e1","tail":"a","head":"a"}]}"#;
        let err = GraphFile::parse(text).unwrap().graph().unwrap_err();
        assert!(err.to_string().contains("no self-loops"));
    }

    #[test]
    fn model_with_inline_graph_and_field() {
        let text = r#"{
            "graph": {"vertices":["a","b"],"edges":[{"id":"e1","tail":"a","head":"b"}]},
            "alphabet": "Z2",
            "weights": {"kind":"ising","beta":0.5,"J":{"e1":2.0}},
            "field": {"a":[1.0,2.0],"b":[1.0,1.0]}
        }"#;
        let m = ModelFile::parse(text)
            .unwrap()
            .build(Path::new("."))
            .unwrap()
            .model;
        assert!((m.edge_weights[0].values[0].re - 1f64.exp()).abs() < 1e-12);
        assert_eq!(m.vertex_weights.unwrap()[0].values[1].re, 2.0);
    }

    #[test]
    fn model_errors_name_the_problem() {
        let g = r#"{"vertices":["a","b"],"edges":[{"id":"e1","tail":"a","head":"b"}]}"#;
        let bad_alpha =
            format!(r#"{{"graph":{g},"alphabet":"Z3","weights":{{"kind":"ising","beta":1}}}}"#);
        assert!(ModelFile::parse(&bad_alpha)
            .unwrap()
            .build(Path::new("."))
            .is_err());
        let missing = format!(
            r#"{{"graph":{g},"alphabet":"Z2","weights":{{"kind":"table","tables":{{}}}}}}"#
        );
        let err = ModelFile::parse(&missing)
            .unwrap()
            .build(Path::new("."))
            .unwrap_err();
        assert!(err.to_string().contains("e1"));
    }
}
