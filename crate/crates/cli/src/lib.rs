//! Subcommands of the `dualnfg` binary, callable as library functions.

pub mod report;

use dualnfg_core::ising::{
    importance_sampling, partition_dual, partition_exact, partition_primal, partition_with_field,
    planar_representations, planar_representations_on_dual,
};
use dualnfg_core::nr::space_realization;
use dualnfg_core::verify::{self, Suite};
use dualnfg_core::{
    analyze, Construction, Error, FieldMethod, FiniteAbelianGroup, GraphFile, Limits, ModelFile,
    PartitionValue, VerifyOptions,
};
use report::*;
use std::path::Path;
use std::time::Instant;

/// Settings shared by every subcommand.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub limits: Limits,
    pub seed: u64,
    pub tree: Option<Vec<String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Exact,
    Primal,
    Dual,
    FieldPrimal,
    FieldDual,
    Hybrid,
    Planar4,
}

pub fn topo(path: &Path, cfg: &RunConfig) -> Result<TopoReport, Error> {
    let file = GraphFile::load(path)?;
    let g = file.graph()?;
    let complex = file.complex()?;
    let t = g.tree_or_default(cfg.tree.as_deref())?;
    let mut r = TopoReport {
        vertices: g.vertices().to_vec(),
        edges: g.edge_labels(),
        connection_matrix: g.connection_matrix(),
        betti: g.betti(),
        spanning_tree: t.tree_labels.clone(),
        fundamental_cut_sets: g
            .fundamental_cut_sets(&t)?
            .into_iter()
            .map(|(_, set)| set)
            .collect(),
        fundamental_cycles: g.fundamental_cycles(&t)?,
        faces: None,
        second_connection_matrix: None,
        dual_graph: None,
    };
    if let Some(k) = complex {
        r.faces = Some(k.face_labels());
        r.second_connection_matrix = Some(k.second_connection_matrix());
        if let Ok(d) = k.dual_graph() {
            r.dual_graph = Some(DualGraphReport {
                vertices: d.graph().vertices().to_vec(),
                connection_matrix: d.graph().connection_matrix(),
                betti: d.graph().betti(),
            });
        }
    }
    Ok(r)
}

pub fn spaces(path: &Path, alphabet: &str, cfg: &RunConfig) -> Result<SpacesReport, Error> {
    let g = GraphFile::load(path)?.graph()?;
    let a: FiniteAbelianGroup = alphabet.parse()?;
    let s = g.cochain_spaces(&a, cfg.limits.cap)?;
    let spaces = [("Z0", &s.z0), ("B1", &s.b1), ("Z1", &s.z1), ("B0", &s.b0)]
        .into_iter()
        .map(|(name, c)| {
            Ok(SpaceReport {
                name: name.into(),
                size: c.size()?,
                generators: c.generators().to_vec(),
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let realizations = [
        ("Z0", Construction::Z0),
        ("B1", Construction::B1),
        ("Z1", Construction::Z1),
        ("B0", Construction::B0),
    ]
    .into_iter()
    .map(|(name, c)| {
        let b = analyze(&space_realization(&g, &a, c)?, &cfg.limits)?;
        Ok(RealizationRow {
            construction: name.into(),
            unobservability: b.unobservable_size,
            uncontrollability: b.controllability_degree(),
            observable: b.is_observable(),
            controllable: b.is_controllable(),
        })
    })
    .collect::<Result<Vec<_>, Error>>()?;
    Ok(SpacesReport {
        alphabet: a.to_string(),
        vertex_labels: g.vertices().to_vec(),
        edge_labels: g.edge_labels(),
        spaces,
        realizations,
    })
}

pub fn partition(path: &Path, method: Method, cfg: &RunConfig) -> Result<PartitionReport, Error> {
    let loaded = ModelFile::load(path)?;
    let m = &loaded.model;
    let lim = &cfg.limits;
    let tree = match &cfg.tree {
        Some(labels) => Some(m.graph.tree_from_labels(labels)?),
        None => None,
    };
    let tree = tree.as_ref();
    let start = Instant::now();
    let one = |v: PartitionValue| vec![v];
    let mut dual_graph_values = Vec::new();
    let values = match method {
        Method::Exact => one(partition_exact(m, lim)?),
        Method::Primal => one(partition_primal(m, tree, lim)?),
        Method::Dual => one(partition_dual(m, tree, lim)?),
        Method::FieldPrimal => one(partition_with_field(m, FieldMethod::PrimalW01, tree, lim)?),
        Method::FieldDual => one(partition_with_field(m, FieldMethod::DualW10, tree, lim)?),
        Method::Hybrid => one(partition_with_field(m, FieldMethod::Hybrid, tree, lim)?),
        Method::Planar4 => {
            let k = loaded.complex.as_ref().ok_or_else(|| {
                Error::IncompatibleMethod(
                    "planar4 needs a graph file with faces and an embedding".into(),
                )
            })?;
            let (_, on_dual) = planar_representations_on_dual(m, k, lim)?;
            dual_graph_values = on_dual.iter().map(ValueReport::from).collect();
            planar_representations(m, k, lim)?
        }
    };
    Ok(PartitionReport {
        model: path.display().to_string(),
        method: method_name(method),
        values: values.iter().map(ValueReport::from).collect(),
        dual_graph_values,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

pub fn mc(path: &Path, samples: u64, cfg: &RunConfig) -> Result<McReport, Error> {
    let m = ModelFile::load(path)?.model;
    let tree = match &cfg.tree {
        Some(labels) => Some(m.graph.tree_from_labels(labels)?),
        None => None,
    };
    let start = Instant::now();
    let e = importance_sampling(&m, tree.as_ref(), samples, cfg.seed, &cfg.limits)?;
    Ok(McReport::new(
        path.display().to_string(),
        &e,
        start.elapsed().as_secs_f64() * 1e3,
    ))
}

pub fn verify(suites: &[Suite], cfg: &RunConfig) -> VerifyReport {
    let opts = VerifyOptions {
        limits: cfg.limits,
        seed: cfg.seed,
        ..VerifyOptions::default()
    };
    let suites = verify::run_all(suites, &opts);
    let passed = suites.iter().all(|s| s.passed());
    VerifyReport { suites, passed }
}

pub fn method_name(m: Method) -> String {
    use clap::ValueEnum;
    m.to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default()
}

/// Exit status for an error: 2 for an exceeded cap, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => 2,
        _ => 1,
    }
}
