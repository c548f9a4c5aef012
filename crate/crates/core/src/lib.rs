//! Group codes and normal realizations on oriented graphs, normal factor
//! graphs with their Fourier duals, and Ising-type partition functions
//! computed through primal, dual, hybrid and planar representations.

pub mod config;
pub mod error;
pub mod gcode;
pub mod group;
pub mod numeric;

pub use config::{Limits, DEFAULT_CAP};
pub use error::{Error, Result};
pub use gcode::{GroupCode, IOMap, Word};
pub use group::{FiniteAbelianGroup, GroupElement, GroupFunction, Phase};
pub use numeric::Scale;
pub mod fixtures;
pub mod topo;
pub use topo::{Embedding, FundamentalCycle, OrientedGraph, PlanarComplex, SpanningTree};
pub mod nr;
pub use nr::{
    analyze, build_w01, BehaviorSummary, Construction, IoKind, NodeKind, NormalRealization,
};
pub mod nfg;
pub use nfg::{
    dual_ewnfg, evaluate_ewnfg, EdgeWeightedNfg, NormalFactorGraph, PartitionValue, Strategy,
};
pub mod ising;
pub use ising::{FieldMethod, IsingTypeModel, McEstimate};
pub mod io;
pub use io::{GraphFile, ModelFile};
pub mod verify;
pub use verify::{Suite, SuiteReport, VerifyOptions};
